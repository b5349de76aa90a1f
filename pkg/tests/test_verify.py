import pytest

from matroidkit.errors import UnknownSuite
from matroidkit.verify import SUITES, run_suite
from matroidkit.verify.oracles import Brute
from matroidkit.verify.suites import set_partitions


def test_connselfdual_passes():
    assert run_suite("connselfdual", 6, 0).status == "pass"


def test_vamos_counterexample_is_expected():
    rep = run_suite("vamos-guts", 8, 0)
    assert rep.status == "expected-failure" and rep.instances == 1


def test_quotequiv_at_five():
    rep = run_suite("quotequiv", 5, 0)
    assert rep.status == "pass" and rep.regime == "exhaustive"


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nonsense", 4)


def test_sampling_is_seeded():
    a = run_suite("modpairiffbasis", 6, seed=3, exhaustive_up_to=4, samples=20)
    b = run_suite("modpairiffbasis", 6, seed=3, exhaustive_up_to=4, samples=20)
    assert a == b and a.regime == "sampled"


def test_every_suite_passes_small():
    for suite_id, suite in SUITES.items():
        rep = run_suite(suite_id, 4 if not suite.expected_failure else 8, 0)
        assert rep.status == ("expected-failure" if suite.expected_failure else "pass"), rep


def test_set_partitions_count():
    # Stirling numbers S(4,1) + S(4,2) + S(4,3) = 1 + 7 + 6
    assert len(set_partitions(4, 3)) == 14


def test_brute_oracle(get):
    b = Brute(get("fano"))
    assert b.r == 3 and len(b.flats) == 16 and len(b.circuits) == 14
    assert b.is_modular()
