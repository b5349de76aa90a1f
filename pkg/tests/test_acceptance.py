"""Acceptance criteria 1-11, each with its time limit.

Every test records one pass/fail line, printed at the end of the run.
"""

import subprocess
import sys
import time
import warnings
from contextlib import contextmanager

from conftest import ACCEPTANCE
from helpers import same
from matroidkit import catalog, uniform, vamos
from matroidkit.build import VAMOS_PAIRS
from matroidkit.core import contract, delete
from matroidkit.extensions import CutViolation, enumerate_modular_cuts, extend_by, extension_cut, guts_cut
from matroidkit.modularity import is_modular_matroid
from matroidkit.quotients import quotient_to_projection
from matroidkit.verify import run_suite


@contextmanager
def criterion(number: int, limit: float, note: str):
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        # overwritten below if the body completed
        ACCEPTANCE[number] = (False, elapsed, note)
    ok = elapsed < limit
    ACCEPTANCE[number] = (ok, elapsed, note)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s, limit {limit:.0f}s)")
    assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def passing(suite_id: str, max_size: int) -> None:
    rep = run_suite(suite_id, max_size, seed=0)
    assert rep.status == "pass", rep
    assert rep.regime == "exhaustive", rep
    assert rep.instances > 0


def test_1_axiom_soundness():
    with criterion(1, 60, "axioms on corpus(8) and derived matroids"):
        passing("axioms", 8)


def test_2_modular_pair_iff_mutual_basis():
    with criterion(2, 120, "modpairiffbasis exhaustive, |E| <= 6"):
        passing("modpairiffbasis", 6)


def test_3_extension_census():
    with criterion(3, 10, "cut counts 3 and 6, round trips, distinct extensions"):
        assert len(enumerate_modular_cuts(uniform(1, 2))) == 3
        assert len(enumerate_modular_cuts(uniform(2, 3))) == 6
        for m in (uniform(1, 2), uniform(2, 3)):
            exts = []
            for cut in enumerate_modular_cuts(m):
                ext = extend_by(m, "e", cut, check=True)
                assert extension_cut(ext, "e") == cut
                assert not any(same(ext, other) for other in exts)
                exts.append(ext)


def test_4_vamos_counterexample():
    with criterion(4, 5, "Vamos guts family fails the modular-pair clause at (S3, S4, {})"):
        v = vamos()
        s = [frozenset(p) for p in VAMOS_PAIRS]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = guts_cut(v, [s[0], s[1]], allow_partial=True)
        assert isinstance(result, CutViolation)
        assert s[2] in result.members and s[3] in result.members
        assert result.witness_for("modular-pair") == (s[2], s[3], frozenset())
        assert run_suite("vamos-guts", 8).status == "expected-failure"


def test_5_quotient_characterizations():
    with criterion(5, 120, "seven quotient conditions unanimous, |E| <= 5"):
        passing("quotequiv", 5)


def test_6_quotient_is_projection():
    with criterion(6, 120, "reconstruction P\\K = M, P/K = N, |K| = discrepancy, |E| <= 5"):
        passing("quotientisproject", 5)
        w = quotient_to_projection(uniform(1, 3), uniform(2, 3))
        assert len(w.k) == 1
        (k,) = w.k
        assert same(w.p, uniform(2, 4, labels=("a", "b", "c", k)))
        assert same(delete(w.p, w.k), uniform(2, 3)) and same(contract(w.p, w.k), uniform(1, 3))


def test_7_guts_iteration_counts():
    with criterion(7, 300, "guts iterations = dual connectivity, <= 3 parts, |E| <= 6"):
        passing("lambdadualeq", 6)
        passing("gpsub", 6)


def test_8_connectivity_identities():
    with criterion(8, 300, "self-duality, relative rank form, local conn, nullity, |E| <= 6"):
        for suite_id in ("connselfdual", "conneqrelrank", "lcmod", "nullity-supermod"):
            passing(suite_id, 6)


def test_9_modularity_verdicts():
    with criterion(9, 120, "modular verdicts and line-hyperplane criterion, |E| <= 7"):
        assert is_modular_matroid(catalog.get("fano"))
        assert is_modular_matroid(catalog.get("pg_2_3"))
        assert not is_modular_matroid(uniform(3, 4))
        assert not is_modular_matroid(vamos())
        passing("modularlinehyperplane", 7)


def test_10_splice():
    with criterion(10, 120, "splice with |C|, |D| <= 2, |E| <= 5"):
        passing("majorofminor", 5)


def test_11_determinism(tmp_path):
    with criterion(11, 600, "two verify runs byte-identical"):
        argv = [sys.executable, "-m", "matroidkit.cli", "verify", "--suite", "all",
                "--max-size", "6", "--seed", "0", "--format", "machine"]
        runs = [subprocess.run(argv, capture_output=True, check=True, cwd=tmp_path).stdout for _ in range(2)]
        assert runs[0] == runs[1]
        rows = runs[0].decode().splitlines()
        assert len(rows) == 18
        assert all(r.endswith("\tpass") or r.startswith("vamos-guts\t") for r in rows)
