import math

import pytest

from pathmin import adversary
from pathmin.errors import EnumerationLimitError, InvalidArgumentError, OutOfRangeError
from pathmin.index import preprocess
from pathmin.oracle import CountingOracle


def test_smallest_instance():
    inst = adversary.generate_instance(1, 1)
    assert inst.tree.n == 3 and inst.tree.height == 2
    assert adversary.choice_count(1, 1) == 1
    assert adversary.answer_vector(inst) == (None,)


def test_shape_and_spine_order():
    inst = adversary.generate_instance(4, 3)
    assert inst.tree.n == 1 + 2 * 3 * 4
    assert inst.tree.height == 5
    w = inst.weights
    for c, spine in enumerate(inst.spine):
        assert all(w[a] < w[b] for a, b in zip(spine, spine[1:]))
        assert inst.tree.parent_of(spine[0]) == 0
    # copies occupy disjoint value ranges
    lo_hi = [(min(w[x] for x in s + l), max(w[x] for x in s + l))
             for s, l in zip(inst.spine, inst.leaves)]
    assert all(a[1] < b[0] for a, b in zip(lo_hi, lo_hi[1:]))


def test_choice_counts():
    assert adversary.choice_count(2, 1) == 2
    assert adversary.choice_count(3, 2) == 36
    assert sum(1 for _ in adversary.enumerate_choices(3, 2)) == 36


def test_answer_vector_labels():
    # leaf 1 must be below b1; leaf 2 above b1; leaf 3 above b2
    inst = adversary.generate_instance(3, 1, [[0, 1, 2]])
    b = inst.spine[0]
    assert adversary.answer_vector(inst) == (None, b[0], b[1])
    inst = adversary.generate_instance(3, 1, [[0, 0, 1]])
    assert adversary.answer_vector(inst) == (None, None, b[0])


def test_all_max_choice_maps_to_previous_spine_node():
    X = 5
    inst = adversary.generate_instance(X, 2, [list(range(X))] * 2)
    vec = adversary.answer_vector(inst)
    labels = iter(vec)
    for spine in inst.spine:
        for i in range(X):
            assert next(labels) == (spine[i - 1] if i else None)


@pytest.mark.parametrize("X, q, choice", [
    (1, 1, [[1]]),
    (2, 1, [[0, 2]]),
    (1, 1, [[0], [0]]),
    (2, 1, [[0]]),
])
def test_malformed_choice(X, q, choice):
    with pytest.raises(InvalidArgumentError):
        adversary.generate_instance(X, q, choice)


def test_padding():
    inst = adversary.generate_instance(2, 2, pad_to=15)
    assert inst.tree.n == 15 and inst.tree.height == 3
    pads = [v for v in range(9, 15)]
    assert all(inst.tree.parent_of(v) == 0 for v in pads)
    assert len({int(inst.weights[v]) for v in pads}) == len(pads)
    with pytest.raises(InvalidArgumentError):
        adversary.generate_instance(2, 2, pad_to=8)


@pytest.mark.parametrize("X, q, expected", [(2, 1, 2), (3, 1, 6), (3, 2, 36), (2, 2, 4)])
def test_distinguishability(X, q, expected):
    rep = adversary.check_distinguishability(X, q)
    assert rep.ok and rep.vectors == expected


def test_enumeration_guard():
    with pytest.raises(EnumerationLimitError):
        adversary.check_distinguishability(9, 1)


@pytest.mark.parametrize("X, q, floor", [(1, 1, 0), (1, 5, 0), (2, 1, 1), (3, 2, 6), (4, 3, 14)])
def test_info_lower_bound(X, q, floor):
    assert adversary.info_lower_bound(X, q) == floor
    assert floor == math.ceil(q * math.log2(math.factorial(X)) - 1e-12)


@pytest.mark.parametrize("n, h, X, q", [(100, 20, 10, 4), (64, 64, 16, 1), (17, 8, 4, 2)])
def test_parameter_choice(n, h, X, q):
    assert adversary.parameter_choice(n, h) == (X, q)
    inst = adversary.generate_instance(X, q)
    assert inst.tree.n <= n and inst.tree.height <= h


def test_parameter_choice_fits_everywhere():
    for n in range(8, 120):
        for h in range(8, n + 1):
            X, q = adversary.parameter_choice(n, h)
            assert 1 + 2 * q * X <= n and X + 1 <= h


@pytest.mark.parametrize("n, h", [(100, 7), (10, 11)])
def test_parameter_choice_range(n, h):
    with pytest.raises(OutOfRangeError):
        adversary.parameter_choice(n, h)


def test_index_recovers_nearest_smaller_and_beats_floor():
    for choice in adversary.enumerate_choices(3, 2):
        inst = adversary.generate_instance(3, 2, choice)
        counter = CountingOracle(inst.oracle())
        index = preprocess(inst.tree, counter)
        assert counter.calls >= adversary.info_lower_bound(3, 2)
        snap = counter.snapshot_calls()
        rec = tuple(adversary.recover_nearest_smaller(lambda v, l: index.query(v, l).node,
                                                      inst.tree, leaf)
                    for leaf in inst.all_leaves())
        assert rec == adversary.answer_vector(inst)
        assert counter.assert_no_calls_since(snap)


def test_height_two_family():
    tree, w = adversary.generate_height_two([0, 1, 1])
    assert tree.n == 7 and tree.height == 2
    for s in range(1, 11):
        distinct, expected = adversary.check_height_two(s)
        assert distinct == expected == 2**s
