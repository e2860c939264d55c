import math

import pytest

import mapfnav


def test_gaps_map_has_single_passage():
    g = mapfnav.build_map("gaps:16:1")
    assert (g.width, g.height) == (16, 16)
    wall = [r for r in range(16) if not g.blocked(8, r)]
    assert len(wall) == 1


def test_map_round_trip():
    g = mapfnav.build_map("warehouse:32:4")
    assert mapfnav.GridMap.from_string(g.to_string()).to_string() == g.to_string()


def test_theta_star_straight_line_on_empty_map():
    g = mapfnav.GridMap(10, 10)
    path = mapfnav.plan_theta_star(g, (0, 0), (9, 9))
    assert path[0] == (0.5, 0.5)
    assert path[-1] == (9.5, 9.5)
    assert len(path) == 2
    assert mapfnav.line_of_sight(g, path[0], path[-1])


def test_line_of_sight_blocked_by_wall():
    g = mapfnav.GridMap(5, 5)
    for r in range(5):
        g.set_blocked(2, r)
    assert not mapfnav.line_of_sight(g, (0.5, 2.5), (4.5, 2.5))


def test_unknown_map_spec_raises():
    with pytest.raises(Exception):
        mapfnav.build_map("no-such-kind:3")


def test_swap_in_corridor_with_bay():
    # Two agents exchange ends of a corridor that has one side bay.
    g = mapfnav.GridMap(5, 2)
    for c in (0, 1, 3, 4):
        g.set_blocked(c, 1)
    inst = mapfnav.mapf_instance(g, [(0, 0), (4, 0)], [(4, 0), (0, 0)])
    opt = mapfnav.solve_optimal(inst)
    ecbs = mapfnav.solve_ecbs(inst, w=1.0)
    pr = mapfnav.solve_push_and_rotate(inst)
    assert opt["status"] == "solved"
    assert ecbs["flowtime"] == opt["flowtime"]
    assert pr["status"] == "solved"
    assert pr["flowtime"] >= opt["flowtime"]
    for res in (opt, ecbs, pr):
        assert mapfnav.validate_solution(inst, res["plans"]) == []


def test_validator_reports_edge_conflict():
    g = mapfnav.GridMap(2, 1)
    inst = mapfnav.mapf_instance(g, [(0, 0), (1, 0)], [(1, 0), (0, 0)])
    errors = mapfnav.validate_solution(inst, [[(0, 0), (1, 0)], [(1, 0), (0, 0)]])
    assert errors


def test_instance_json_round_trip():
    g = mapfnav.GridMap(4, 4)
    inst = mapfnav.mapf_instance(g, [(0, 0), (3, 3)], [(3, 3), (0, 0)])
    again = mapfnav.MAPFInstance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()
    assert again.n_agents == 2


def test_run_small_scenario_reaches_goals():
    g = mapfnav.build_map("gaps:16:2")
    starts, goals = mapfnav.generate_instance(g, "halls", 4, 1)
    res = mapfnav.run(g, starts, goals, seed=1, pr_expansions=20000, ecbs_expansions=20000)
    assert res["success"]
    assert res["reason"] == "all-goals"
    assert res["collisions"] == 0
    assert res["audit_violations"] == 0
    again = mapfnav.run(g, starts, goals, seed=1, pr_expansions=20000, ecbs_expansions=20000)
    assert again["trajectory_hash"] == res["trajectory_hash"]
    assert math.isfinite(res["mean_mapf_agents"])
