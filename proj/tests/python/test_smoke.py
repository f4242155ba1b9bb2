import json
import math

import pytest

import costquery as cq


def four_uniform():
    return cq.Instance(
        ["h0", "h1", "h2", "h3"],
        [0.25] * 4,
        [
            cq.Question("q1", 1.0, [0, 0, 1, 1]),
            cq.Question("q2", 0.4, [0, 1, 1, 1]),
            cq.Question("q3", 1.0, [0, 0, 0, 1]),
        ],
    )


def test_greedy_prefers_the_cheap_question():
    inst = four_uniform()
    tree = cq.greedy_tree(inst)
    assert json.loads(tree.to_json(inst))["question"] == "q2"
    assert cq.validate_tree(tree, inst) == []
    assert cq.shrinkage(inst, [0, 1, 2, 3], 1) == pytest.approx((0.375, 0.9375))


def test_epsilon_and_optimal():
    inst = four_uniform()
    greedy = cq.greedy_tree(inst)
    assert cq.epsilon_greedy_tree(inst, 0.0).to_json(inst) == greedy.to_json(inst)
    assert json.loads(cq.epsilon_greedy_tree(inst, 0.5).to_json(inst))["question"] == "q1"
    _, c_star = cq.optimal_tree(inst)
    assert c_star <= cq.tree_cost(greedy, inst) + 1e-9
    with pytest.raises(cq.PreconditionError):
        cq.epsilon_greedy_tree(inst, 1.0)


def test_rounding_and_bounds_on_random_instances():
    for seed in range(20):
        inst = cq.gen_random(seed=seed, n=7, m=8, k=3, cost_low=0.1, cost_high=10.0, concentration=0.3)
        assert cq.validate(inst)["ok"]
        _, c_star = cq.optimal_tree(inst)
        greedy_cost = cq.tree_cost(cq.greedy_tree(inst), inst)
        assert c_star - 1e-9 <= greedy_cost <= 12 * c_star * math.log(1 / min(inst.prior)) + 1e-6
        rounded = cq.round_distribution(inst)
        assert min(rounded["mass"]) >= rounded["threshold"] - 1e-12
        tree, cost = cq.greedy_rounded_tree(inst)
        shifted = cq.tree_cost(tree, inst, rounded["mass"])
        assert 0.5 * cost - 1e-9 <= shifted <= 1.5 * cost + 1e-9


def test_compression_matches_huffman():
    inst = cq.gen_compression([0.5, 0.25, 0.125, 0.125])
    _, c_star = cq.optimal_tree(inst)
    assert c_star == pytest.approx(cq.huffman_cost(inst.prior))
    assert c_star == pytest.approx(cq.entropy(inst.prior))


def test_simulation_and_sessions():
    inst = four_uniform()
    tree = cq.greedy_tree(inst)
    mean, stderr = cq.simulate(tree, inst, trials=20000, seed=3)
    assert abs(mean - cq.tree_cost(tree, inst)) <= 4 * stderr
    for h in range(inst.n):
        _, cost = cq.play(inst, h)
        assert cost == cq.path_cost(tree, inst, h)


def test_json_round_trip_and_errors(tmp_path):
    inst = four_uniform()
    path = tmp_path / "inst.json"
    inst.save(str(path))
    again = cq.Instance.load(str(path))
    assert again.to_json() == inst.to_json()
    tree = cq.greedy_tree(inst)
    assert cq.QueryTree.from_json(tree.to_json(inst), inst).to_json(inst) == tree.to_json(inst)
    assert tree.to_dot(inst).startswith("digraph QueryTree")
    with pytest.raises(cq.InvalidInstance):
        cq.Instance.from_json("{not json")
    with pytest.raises(cq.IoError):
        cq.Instance.load(str(tmp_path / "missing.json"))
