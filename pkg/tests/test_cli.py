"""End-to-end tests of the command line interface.

Each case runs the installed module in a subprocess and checks stdout JSON,
stderr notices, and exit codes.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

_BASE = [sys.executable, "-m", "hurwitzlab"]


def _run(*args: str, env_extra: dict | None = None) -> subprocess.CompletedProcess:
    env = os.environ.copy()
    env.update(env_extra or {})
    return subprocess.run(
        _BASE + list(args), capture_output=True, text=True, env=env, timeout=600
    )


def _stdout_json(proc: subprocess.CompletedProcess) -> dict:
    return json.loads(proc.stdout)


def _stderr_json(proc: subprocess.CompletedProcess) -> dict:
    return json.loads(proc.stderr.strip().splitlines()[-1])


# -- compute -----------------------------------------------------------------


def test_compute_example_both_methods(tmp_path):
    proc = _run(
        "compute", "-g", "0", "-x", "7,1,-2,-3,-3", "--method", "both", "--no-cache"
    )
    assert proc.returncode == 0
    payload = _stdout_json(proc)
    assert payload["value"] == "294"
    assert payload["r"] == 3
    assert payload["method"] == "both"
    assert payload["stats"]["oracle"]["tuples_accepted"] == 1029


def test_compute_trivial_cover():
    proc = _run("compute", "-g", "0", "-x", "1,-1", "--no-cache")
    assert proc.returncode == 0
    assert _stdout_json(proc)["value"] == "1"


def test_compute_rejects_nonzero_sum():
    proc = _run("compute", "-g", "0", "-x", "1,1,-1", "--no-cache")
    assert proc.returncode == 2
    assert _stderr_json(proc)["error"] == "INVALID_PROFILE"


def test_compute_budget_exceeded():
    proc = _run(
        "compute",
        "-g",
        "0",
        "-x",
        "9,4,-5,-5,-3",
        "--method",
        "oracle",
        "--budget",
        "1000",
        "--no-cache",
    )
    assert proc.returncode == 3
    assert _stderr_json(proc)["error"] == "BUDGET_EXCEEDED"


def test_compute_fractional_value():
    proc = _run("compute", "-g", "0", "-x", "2,-2", "--no-cache")
    assert proc.returncode == 0
    assert _stdout_json(proc)["value"] == "1/2"


def test_compute_deterministic_output_modulo_timing():
    args = (
        "compute", "-g", "0", "-x", "2,1,-3", "--no-cache", "--json",
        "--method", "frobenius",
    )
    first, second = _run(*args), _run(*args)
    assert first.returncode == second.returncode == 0

    def scrub(raw: str) -> dict:
        payload = json.loads(raw)
        payload["stats"].pop("elapsed_seconds")
        return payload

    assert scrub(first.stdout) == scrub(second.stdout)


# -- cache ---------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    cache = str(tmp_path / "cache.jsonl")
    args = ("compute", "-g", "0", "-x", "7,1,-2,-3,-3", "--cache", cache)
    cold = _run(*args)
    assert cold.returncode == 0
    assert os.path.exists(cache)
    record = json.loads(open(cache).read().splitlines()[-1])
    assert record["key"] == "g=0;pos=7,1;neg=-3,-3,-2"
    assert record["value"] == "294"

    warm = _run(*args)
    assert warm.returncode == 0
    assert _stdout_json(warm)["value"] == "294"
    assert _stdout_json(warm).get("cached") is True
    assert "cache hit" in warm.stderr

    verified = _run(*args, "--verify")
    assert verified.returncode == 0
    assert _stdout_json(verified)["value"] == "294"
    assert _stdout_json(verified).get("cached") is None


def test_cache_env_var(tmp_path):
    cache = str(tmp_path / "env-cache.jsonl")
    proc = _run(
        "compute", "-g", "0", "-x", "1,1,-2",
        env_extra={"HURWITZ_CACHE": cache},
    )
    assert proc.returncode == 0
    assert os.path.exists(cache)


# -- fit --------------------------------------------------------------------------


def test_fit_first_example_chamber():
    proc = _run("fit", "-g", "0", "-x", "7,1,-2,-3,-3")
    assert proc.returncode == 0
    payload = _stdout_json(proc)
    assert payload["display"] == "6*x1^2"
    assert payload["polynomial"]["terms"] == {"2,0,0,0": "6"}
    assert payload["signature"].count("+") == 1
    assert len(payload["validation"]) == 5


def test_fit_on_wall_point_rejected():
    proc = _run("fit", "-g", "0", "-x", "4,1,-1,-1,-3")
    assert proc.returncode == 2
    err = _stderr_json(proc)
    assert err["error"] == "ON_WALL"
    assert err["wall"] == [2, 3]


def test_fit_genus_one_cubic():
    proc = _run("fit", "-g", "1", "-x", "1,-1")
    assert proc.returncode == 0
    payload = _stdout_json(proc)
    assert payload["display"] == "1/12*x1^3 - 1/12*x1"
    assert payload["degree_bound"] == 3


def test_fit_two_part_genus_zero_refused():
    proc = _run("fit", "-g", "0", "-x", "1,-1")
    assert proc.returncode == 2
    assert _stderr_json(proc)["error"] == "UNSTABLE_CASE"


# -- wallcross ----------------------------------------------------------------------


def test_wallcross_example_pair():
    proc = _run("wallcross", "-g", "0", "-x", "7,1,-2,-3,-3", "--wall", "2,5")
    assert proc.returncode == 0
    payload = _stdout_json(proc)
    assert payload["wall"] == [2, 5]
    assert payload["polynomial"]["terms"] == {
        "2,0,0,0": "-6",
        "1,0,1,0": "-6",
        "1,0,0,1": "-6",
    }
    assert payload["factored"] == "(x2 + x5) * (6*x1)"
    formula = payload["product_formula"]
    assert formula["matching"] == ["C(r,r1)"]
    assert formula["conventions"]["C(r,r1)"] == formula["wc_value"]


def test_wallcross_normalizes_complement_input():
    proc = _run("wallcross", "-g", "0", "-x", "7,1,-2,-3,-3", "--wall", "1,3,4")
    assert proc.returncode == 0
    assert "normalized wall" in proc.stderr
    assert _stdout_json(proc)["wall"] == [2, 5]


def test_wallcross_adjacency_not_found():
    proc = _run(
        "wallcross", "-g", "0", "--profile=-1,3,-2", "--wall", "2",
        "--budget", "3000",
    )
    assert proc.returncode == 5
    assert _stderr_json(proc)["error"] == "ADJACENCY_NOT_FOUND"


# -- selftest --------------------------------------------------------------------------


def test_selftest_reduced_grid_passes():
    proc = _run("selftest", "--r-max", "10", "--grid-max-d", "3", "--json")
    assert proc.returncode == 0
    payload = _stdout_json(proc)
    assert payload["ok"] is True
    names = {check["name"] for check in payload["checks"]}
    assert "oracle vs character sum" in names
    assert "documented example values" in names


def test_selftest_mutated_normalization_fails():
    proc = _run(
        "selftest", "--r-max", "5", "--grid-max-d", "2", "--mutate-normalization",
        "--json",
    )
    assert proc.returncode == 1
    payload = _stdout_json(proc)
    assert payload["ok"] is False
    bad = [c for c in payload["checks"] if not c["ok"]]
    assert any(c["name"] == "documented example values" for c in bad)


# -- in-process contract details ---------------------------------------------------


def test_fit_oversample_flag_controls_validation_size():
    proc = _run("fit", "-g", "0", "-x", "2,1,-3", "--oversample", "7")
    assert proc.returncode == 0
    assert len(_stdout_json(proc)["validation"]) == 7


def test_cache_keys_are_collision_free():
    from hurwitzlab.cli import cache_key
    from hurwitzlab.hurwitz import enumerate_profiles

    seen: dict[str, tuple] = {}
    for n in (2, 3, 4):
        for profile in enumerate_profiles(n, 3):
            for g in (0, 1):
                identity = (
                    g,
                    tuple(sorted(profile.positives())),
                    tuple(sorted(profile.negatives())),
                )
                key = cache_key(g, profile)
                assert seen.setdefault(key, identity) == identity
    assert len(seen) == len(set(seen))


def test_exit_code_mapping(capsys):
    from hurwitzlab.cli import _emit_error
    from hurwitzlab.errors import (
        AdjacencyNotFoundError,
        BudgetExceededError,
        NotPolynomialError,
        UnstableCaseError,
    )

    assert _emit_error(NotPolynomialError("held-out mismatch")) == 4
    assert _emit_error(AdjacencyNotFoundError("nothing within budget")) == 5
    assert _emit_error(BudgetExceededError("too big")) == 3
    assert _emit_error(UnstableCaseError("1/d")) == 2
    captured = capsys.readouterr()
    assert '"error": "NOT_POLYNOMIAL"' in captured.err
