import random

import pytest

from eideals.selftest import SUITES, bundled_certificates, is_rejected, random_epoly, run_selftest


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_on_small_scale(name):
    (res,) = run_selftest(seed=7, only=[name], scale=0.1)
    assert res.ok, res.failures
    assert res.cases > 0


def test_same_seed_same_cases():
    a = [random_epoly(random.Random(3)) for _ in range(5)]
    b = [random_epoly(random.Random(3)) for _ in range(5)]
    assert a == b


def test_bundled_certificates_accepted():
    for doc, pres, target, radical in bundled_certificates():
        assert not is_rejected(doc, pres, target, radical)
