"""Regression against stored CLI output; regenerate with ``python tests/test_golden.py``."""
import io
import json
import re
from pathlib import Path

import pytest

from nsverlinde.cli import main

GOLDEN = Path(__file__).parent / "golden"

COMMANDS = [
    "levels --type A3 --center full",
    "levels --type D4 --gen w1",
    "levels --type E8 --center full",
    "delta --type B3 --k 5",
    "delta --type C3 --k 2",
    "delta --type A2 --center full --k 3",
    "delta --type D4 --k 2",
    "smatrix --type A1 --k 2",
    "verlinde --type A2 --center full --k 3 --genus 1 --mu 0,0",
    "verlinde --type A1 --center trivial --k 2 --genus 2 --mu 0",
    "verlinde --type A1 --center trivial --k 1 --genus 1 --mu 1",
    "verlinde --type A1 --k 2 --genus 1 --all-phi",
    "verlinde --type D4 --k 2 --genus 1 --mu 0,0,0,0 --all-phi",
]


def path_for(command):
    return GOLDEN / (re.sub(r"[^A-Za-z0-9]+", "_", command).strip("_") + ".json")


def render(command):
    out = io.StringIO()
    assert main(command.split(), out=out) == 0
    doc = json.loads(out.getvalue())
    # the backend name depends on the environment, not on the result
    doc["diagnostics"].pop("backend", None)
    return doc


@pytest.mark.parametrize("command", COMMANDS)
def test_matches_golden(command):
    expected = json.loads(path_for(command).read_text())
    assert expected["argv"] == command
    got = render(command)
    residual_keys = ("max_residual", "symmetry_residual", "unitarity_residual")
    for key in residual_keys:
        if key in expected["output"]["diagnostics"]:
            assert got["diagnostics"].pop(key) < 1e-9
            expected["output"]["diagnostics"].pop(key)
    assert got == expected["output"]


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for command in COMMANDS:
        path_for(command).write_text(json.dumps({"argv": command, "output": render(command)}, indent=1) + "\n")
