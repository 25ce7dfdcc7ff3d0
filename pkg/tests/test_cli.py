import io
import json
import subprocess
import sys

import pytest

from nsverlinde.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == 1 and "diagnostics" in doc
    return doc


def test_levels():
    doc = run_json("levels", "--type", "A3", "--center", "full")
    assert (doc["Z"], doc["k0"], doc["k1"]) == ("Z4", 4, 4)
    doc = run_json("levels", "--type", "D4", "--gen", "w1")
    assert (doc["k0"], doc["k1"]) == (1, 2)
    doc = run_json("levels", "--type", "E8", "--center", "full")
    assert (doc["Z"], doc["k0"], doc["k1"]) == ("1", 1, 1)


def test_delta_type_b():
    doc = run_json("delta", "--type", "B3", "--k", "5")
    row = next(r for r in doc["rows"] if r["c1"] != "e" and r["c2"] != "e")
    assert row["exponent"] == "1/2" and row["value"] == [-1.0, 0.0]
    assert row["agrees"]


def test_delta_type_c():
    doc = run_json("delta", "--type", "C3", "--k", "2")
    row = next(r for r in doc["rows"] if r["c1"] != "e" and r["c2"] != "e")
    # the lattice value is -1; the tabulated closed form says 1
    assert row["exponent"] == "1/2"
    assert row["closed_form"] == "1/2" and row["closed_form_as_printed"] == "0"


def test_delta_type_a():
    doc = run_json("delta", "--type", "A2", "--center", "full", "--k", "3")
    assert all(r["exponent"] == "0" for r in doc["rows"])


@pytest.mark.parametrize(
    "args,q",
    [
        (("--type", "A2", "--center", "full", "--k", "3", "--genus", "1", "--mu", "0,0"), 2),
        (("--type", "A1", "--center", "trivial", "--k", "2", "--genus", "2", "--mu", "0"), 10),
        (("--type", "A1", "--center", "trivial", "--k", "1", "--genus", "1", "--mu", "1"), 0),
        (("--type", "A2", "--k", "3", "--genus", "1", "--mu", "0,0", "--phi", "1;0"), 1),
    ],
)
def test_verlinde(args, q):
    doc = run_json("verlinde", *args)
    (row,) = doc["rows"]
    assert row["Q"] == q
    assert doc["diagnostics"]["max_residual"] < 1e-6


def test_verlinde_all_twists():
    doc = run_json("verlinde", "--type", "A1", "--k", "2", "--genus", "1", "--all-phi")
    assert len(doc["rows"]) == 4 * 3


def test_smatrix():
    doc = run_json("smatrix", "--type", "A1", "--k", "2")
    assert len(doc["rows"]) == 3
    assert doc["diagnostics"]["unitarity_residual"] < 1e-9
    assert doc["diagnostics"]["torus_order"] == 8


def test_rootdata_csv():
    code, text = run("rootdata", "--type", "G2", "--format", "csv")
    assert code == 0
    header, row = text.strip().splitlines()
    assert header.startswith("type,rank,h,h_dual")
    assert row.startswith("G2,2,6,4")


def test_output_is_deterministic():
    args = ("verlinde", "--type", "A3", "--k", "4", "--genus", "1")
    assert run(*args) == run(*args)


@pytest.mark.parametrize(
    "argv,code",
    [
        (("levels", "--type", "D2"), 2),
        (("levels", "--type", "A3", "--center", "bogus"), 2),
        (("levels", "--type", "A3", "--gen", "w9"), 2),
        (("verlinde", "--type", "A2", "--k", "3", "--genus", "1", "--mu", "1"), 2),
        (("verlinde", "--type", "A2", "--k", "3", "--genus", "1", "--phi", "1"), 2),
        (("verlinde", "--type", "A2", "--k", "3", "--genus", "1", "--phi", "0;0", "--all-phi"), 2),
        (("nonsense",), 2),
        (("delta", "--type", "A3", "--k", "2"), 3),
        (("verlinde", "--type", "A3", "--k", "2", "--genus", "1"), 3),
        (("verlinde", "--type", "A2", "--k", "3", "--genus", "1", "--mu", "4,0"), 3),
        (("verlinde", "--type", "A2", "--k", "3", "--genus", "2", "--tol", "1e-30"), 4),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nsverlinde", "levels", "--type", "A3"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["k0"] == 4
