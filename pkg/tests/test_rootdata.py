from fractions import Fraction

import pytest

from nsverlinde.rootdata import InvalidTypeError, LieType, build_root_datum

ALL_TYPES = (
    [f"A{l}" for l in range(1, 8)]
    + [f"B{l}" for l in range(2, 7)]
    + [f"C{l}" for l in range(2, 7)]
    + [f"D{l}" for l in range(4, 8)]
    + ["E6", "E7", "E8", "F4", "G2"]
)

# (h, h_dual) from the standard tables
COXETER = {
    "A2": (3, 3), "B2": (4, 3), "B3": (6, 5), "C3": (6, 4), "D4": (6, 6),
    "E6": (12, 12), "E7": (18, 18), "E8": (30, 30), "F4": (12, 9), "G2": (6, 4),
}


@pytest.mark.parametrize("name", ALL_TYPES)
def test_structural_invariants(name):
    rd = build_root_datum(name)
    rd.check_invariants()
    assert sum(rd.marks) + 1 == rd.coxeter_number
    assert sum(rd.comarks) + 1 == rd.dual_coxeter_number
    assert 2 * rd.num_positive_roots == rd.rank * rd.coxeter_number


@pytest.mark.parametrize("name,expect", sorted(COXETER.items()))
def test_coxeter_numbers(name, expect):
    rd = build_root_datum(name)
    assert (rd.coxeter_number, rd.dual_coxeter_number) == expect


def test_rank_one_normalization():
    rd = build_root_datum("A1")
    (w,) = rd.fundamental_coweights
    (a,) = rd.simple_coroots
    assert w == tuple(x / 2 for x in a)
    assert rd.pairing_basic(w, w) == Fraction(1, 2)
    assert rd.pairing_basic(a, a) == 2


@pytest.mark.parametrize("name", ALL_TYPES)
def test_highest_coroot_has_length_two(name):
    rd = build_root_datum(name)
    assert rd.pairing_basic(rd.highest_coroot, rd.highest_coroot) == 2
    zero = tuple(Fraction(0) for _ in range(rd.ambient_dim))
    assert rd.pairing_basic(zero, rd.highest_coroot) == 0


def test_d4_fundamental_coweight_products():
    rd = build_root_datum("D4")
    w = rd.fundamental_coweights
    got = [rd.pairing_basic(w[0], w[j]) for j in range(4)]
    assert got == [1, 1, Fraction(1, 2), Fraction(1, 2)]


@pytest.mark.parametrize("l", [4, 5, 6, 7])
def test_d_spin_coweight_products(l):
    rd = build_root_datum(f"D{l}")
    w = rd.fundamental_coweights
    got = [rd.pairing_basic(w[l - 2], w[j]) for j in range(l)]
    expect = [Fraction(j + 1, 2) for j in range(l - 2)] + [Fraction(l, 4), Fraction(l - 2, 4)]
    assert got == expect


def test_alcove_vertices():
    rd = build_root_datum("A2")
    assert rd.alcove_vertices()[1:] == list(rd.fundamental_coweights)
    c2 = build_root_datum("C2")
    assert len(c2.minuscule_indices()) == 1
    assert len(build_root_datum("A1").alcove_vertices()) == 2


@pytest.mark.parametrize("name", ALL_TYPES)
def test_alcove_vertices_on_walls(name):
    rd = build_root_datum(name)
    for v in rd.alcove_vertices():
        assert rd.pairing(rd.highest_root, v) in (0, 1)
        assert all(rd.pairing(a, v) >= 0 for a in rd.simple_roots)


@pytest.mark.parametrize("text", ["D2", "E9", "A0", "F3", "G3", "X4", "B1", ""])
def test_invalid_types(text):
    with pytest.raises(InvalidTypeError):
        build_root_datum(text)


def test_parse_forms():
    assert LieType.parse("a3") == LieType.parse("A_3") == LieType("A", 3)
    assert str(LieType.parse(" E8 ")) == "E8"


def test_label_and_coordinate_roundtrip():
    rd = build_root_datum("B3")
    assert rd.labels(rd.weight((1, 2, 3))) == (1, 2, 3)
    assert rd.coweight_coords(rd.coweight((1, 0, 2))) == (1, 0, 2)
