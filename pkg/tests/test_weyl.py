import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from nsverlinde.exact import SingularMatrixError
from nsverlinde.rootdata import build_root_datum
from nsverlinde.weyl import (
    NotDominantError,
    WeylBudgetError,
    coxeter_element,
    dual_weight,
    element_order,
    enumerate_weyl,
    from_word,
    identity_element,
    longest_element,
    simple_reflection,
    solve_one_minus_w,
    to_dominant_labels,
)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


def test_group_orders():
    assert enumerate_weyl(build_root_datum("A2")).order == 6
    assert enumerate_weyl(build_root_datum("B2")).order == 8
    a1 = enumerate_weyl(build_root_datum("A1"))
    assert a1.order == 2 and sorted(a1.signs.tolist()) == [-1, 1]


def test_budget():
    with pytest.raises(WeylBudgetError):
        enumerate_weyl(build_root_datum("E8"))
    with pytest.raises(WeylBudgetError):
        enumerate_weyl(build_root_datum("A3"), max_order=10)


@pytest.mark.parametrize("name", SMALL)
def test_elements_are_isometries_permuting_roots(name):
    rd = build_root_datum(name)
    group = enumerate_weyl(rd)
    gram = np.array([[float(x) for x in r] for r in rd.weight_form])
    for m, s in zip(group.matrices, group.signs):
        assert np.allclose(m.T @ gram @ m, gram)
        assert round(np.linalg.det(m)) == s
    # all elements distinct
    assert len({m.tobytes() for m in group.matrices}) == group.order


@pytest.mark.parametrize("name", SMALL)
def test_simple_reflections_are_involutions(name):
    rd = build_root_datum(name)
    for i in range(1, rd.rank + 1):
        s = simple_reflection(rd, i)
        assert (s * s).is_identity()
        assert element_order(s) == 2
        assert s.sign == -1


def test_reflection_negates_coroot():
    rd = build_root_datum("A1")
    s = simple_reflection(rd, 1)
    (a,) = rd.simple_coroots
    assert s.act(a) == tuple(-x for x in a)


@pytest.mark.parametrize("name,h", [("A1", 2), ("A2", 3), ("B3", 6), ("D4", 6), ("E6", 12), ("E8", 30)])
def test_coxeter_order(name, h):
    rd = build_root_datum(name)
    assert element_order(coxeter_element(rd)) == h
    assert element_order(identity_element(rd)) == 1


def test_a2_product_of_reflections():
    rd = build_root_datum("A2")
    assert element_order(from_word(rd, (1, 2))) == 3


def test_dual_weights():
    a1 = build_root_datum("A1")
    assert dual_weight(a1, (3,)) == (3,)
    a2 = build_root_datum("A2")
    assert dual_weight(a2, (1, 0)) == (0, 1)
    d4 = build_root_datum("D4")
    for labels in itertools.product(range(2), repeat=4):
        assert dual_weight(d4, labels) == labels
    e6 = build_root_datum("E6")
    assert dual_weight(e6, (1, 0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0, 1)
    with pytest.raises(NotDominantError):
        dual_weight(a2, (-1, 0))


@pytest.mark.parametrize("name", SMALL)
def test_longest_element_maps_rho_to_minus_rho(name):
    rd = build_root_datum(name)
    w0 = longest_element(rd)
    ones = (1,) * rd.rank
    assert w0.act_labels(ones) == tuple(-x for x in ones)


@pytest.mark.parametrize("name", SMALL)
def test_to_dominant(name):
    rd = build_root_datum(name)
    group = enumerate_weyl(rd)
    rng = random.Random(5)
    for _ in range(10):
        lab = tuple(rng.randrange(0, 4) for _ in range(rd.rank))
        u = group.element(rng.randrange(group.order))
        moved = u.act_labels(lab)
        dom, w = to_dominant_labels(rd, moved)
        assert dom == lab
        assert w.act_labels(moved) == lab


def test_one_minus_w_rank_one():
    rd = build_root_datum("A1")
    (a,) = rd.simple_coroots
    assert solve_one_minus_w(coxeter_element(rd), a) == rd.fundamental_coweights[0]


@pytest.mark.parametrize("l", range(1, 7))
def test_one_minus_coxeter_type_a(l):
    rd = build_root_datum(f"A{l}")
    x = solve_one_minus_w(coxeter_element(rd), rd.fundamental_coweights[0])
    assert x == tuple(r / (l + 1) for r in rd.rho_check)


@pytest.mark.parametrize("l", range(2, 7))
def test_one_minus_coxeter_type_b(l):
    rd = build_root_datum(f"B{l}")
    x = solve_one_minus_w(coxeter_element(rd), rd.fundamental_coweights[0])
    assert x == (Fraction(1, 2),) * l


def test_one_minus_w_singular():
    rd = build_root_datum("A2")
    with pytest.raises(SingularMatrixError):
        solve_one_minus_w(identity_element(rd), rd.simple_coroots[0])


@pytest.mark.parametrize("name", SMALL)
def test_inverse_and_coweight_action(name):
    rd = build_root_datum(name)
    group = enumerate_weyl(rd)
    rng = random.Random(11)
    for _ in range(10):
        w = group.element(rng.randrange(group.order))
        assert (w * w.inverse()).is_identity()
        coords = tuple(Fraction(rng.randrange(-3, 4), 2) for _ in range(rd.rank))
        ambient = w.act(rd.coweight(coords))
        assert rd.coweight_coords(ambient) == w.act_coweight_coords(coords)
