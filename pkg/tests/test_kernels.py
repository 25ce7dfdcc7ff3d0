import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsverlinde import _kernels
from nsverlinde.fusion import level_weights
from nsverlinde.rootdata import build_root_datum
from nsverlinde.weyl import enumerate_weyl

needs_numba = pytest.mark.skipif(_kernels._histogram_numba is None, reason="numba not installed")


def inputs(name, k):
    rd = build_root_datum(name)
    group = enumerate_weyl(rd)
    table = level_weights(rd, k)
    nums = np.array(table.weights, dtype=np.int64).reshape(len(table), rd.rank) + 1
    return group.matrices, group.signs, nums, table.points.ys, table.points.modulus


@needs_numba
@pytest.mark.parametrize("name,k", [("A1", 4), ("A2", 3), ("B2", 3), ("G2", 2), ("D4", 2)])
def test_backends_agree_exactly(name, k):
    args = inputs(name, k)
    a = _kernels.residue_histogram(*args, backend="numpy")
    b = _kernels.residue_histogram(*args, backend="numba")
    assert a.dtype == b.dtype == np.int64
    assert np.array_equal(a, b)


@needs_numba
@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=2, max_size=2),
    st.lists(st.integers(-50, 50), min_size=2, max_size=2),
    st.integers(1, 40),
)
def test_backends_agree_on_arbitrary_inputs(nums, ys, modulus):
    group = enumerate_weyl(build_root_datum("B2"))
    a = _kernels.residue_histogram(group.matrices, group.signs, nums, ys, modulus, backend="numpy")
    b = _kernels.residue_histogram(group.matrices, group.signs, nums, ys, modulus, backend="numba")
    assert np.array_equal(a, b)


def test_histogram_totals():
    mats, signs, nums, ys, m = inputs("A2", 2)
    hist = _kernels.residue_histogram(mats, signs, nums, ys, m, backend="numpy")
    assert hist.shape == (len(nums), len(ys), m)
    assert (hist.sum(axis=2) == int(signs.sum())).all()


def test_sums_match_direct_evaluation():
    mats, signs, nums, ys, m = inputs("A2", 3)
    got = _kernels.alternating_sums(mats, signs, nums, ys, m)
    direct = np.zeros((len(nums), len(ys)), dtype=complex)
    for w, s in zip(mats, signs):
        direct += s * np.exp(2j * np.pi * ((nums @ w.T) @ ys.T) / m)
    assert np.abs(np.asarray(got, dtype=complex) - direct).max() < 1e-10


def test_roots_of_unity_exact_on_axes():
    r = _kernels.roots_of_unity(8)
    assert r[0] == 1 and r[2] == 1j and r[4] == -1 and r[6] == -1j
    assert abs(complex(_kernels.unit_phase(1, 3)) - np.exp(2j * np.pi / 3)) < 1e-15
    assert _kernels.unit_phase(-1, 4) == -1j


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("NSVERLINDE_DISABLE_NUMBA", "1")
    assert _kernels.active_backend() == "numpy"
    monkeypatch.delenv("NSVERLINDE_DISABLE_NUMBA")
    expect = "numba" if _kernels._histogram_numba is not None else "numpy"
    assert _kernels.active_backend() == expect


def test_bad_arguments():
    with pytest.raises(ValueError):
        _kernels.residue_histogram(np.eye(1, dtype=np.int64)[None], [1], [[1]], [[1]], 0)
    with pytest.raises(ValueError):
        _kernels.residue_histogram(np.eye(1, dtype=np.int64)[None], [1], [[1]], [[1]], 3, backend="cuda")


def test_env_flag_end_to_end():
    import json
    import os
    import subprocess
    import sys

    argv = [sys.executable, "-m", "nsverlinde", "verlinde", "--type", "A3", "--k", "4", "--genus", "2"]
    docs = []
    for flag in ("1", "0"):
        env = dict(os.environ, NSVERLINDE_DISABLE_NUMBA=flag)
        out = subprocess.run(argv, capture_output=True, text=True, check=True, env=env).stdout
        docs.append(json.loads(out))
    assert docs[0]["diagnostics"]["backend"] == "numpy"
    assert docs[0]["rows"] == docs[1]["rows"]
    assert docs[0]["diagnostics"]["max_residual"] == docs[1]["diagnostics"]["max_residual"]
