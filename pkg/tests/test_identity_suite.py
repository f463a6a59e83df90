import itertools
import math

import pytest

from fgcap.errors import DomainError
from fgcap.exact_capacity import phi
from fgcap.identity_suite import (
    REGISTRY,
    FuzzReport,
    IdentityId,
    check_identity,
    fuzz_identities,
    tolerance,
)
from fgcap.special_fn import EULER_GAMMA_30, ExactValue, digamma, digamma_exact, harmonic


def test_registry_is_exhaustive():
    assert set(REGISTRY) == set(IdentityId)
    for id, entry in REGISTRY.items():
        assert entry.sample is not None, id
        assert tolerance(id) == (1e-6 if id.value.startswith("PGNA") else 1e-9)


class TestExamples:
    def test_b1(self):
        r = check_identity(IdentityId.B1, {"a": 0, "m": 3})
        # -3*gamma + 5/2 on both sides
        assert r.lhs == pytest.approx(-3 * 0.5772156649015329 + 2.5, rel=1e-14)
        assert r.residual < 1e-12

    def test_ofgi(self):
        r = check_identity(IdentityId.OFGI, {"a": 1, "b": 1, "m": 2})
        assert r.lhs == pytest.approx(1.0, rel=1e-14)
        assert r.rhs == 1.0

    def test_parity(self):
        r = check_identity("PARITY", {"k": 3, "a": 1, "b": 2, "x": 0.4})
        assert r.residual < 1e-12

    def test_lemma4(self):
        r = check_identity(IdentityId.LEMMA4, {"a": 1.3, "b": 0.7, "c": 2, "d": 3, "m": 4})
        assert r.residual < 1e-10

    def test_b12_and_phi_rearrangement(self):
        b12 = check_identity(IdentityId.B12, {"m": 3, "n": 5})
        assert b12.residual < 1e-12
        # dividing B12 through by n!/m! gives the alternative form of phi(3, 2)
        alt = check_identity(IdentityId.PHI_ALT, {"c": 3, "d": 2})
        assert alt.residual < 1e-12
        assert alt.lhs == pytest.approx(float(phi(3, 2)), rel=1e-15)
        assert b12.lhs == pytest.approx(alt.lhs * math.factorial(5) / math.factorial(3), rel=1e-14)

    def test_pgna1(self):
        r = check_identity(IdentityId.PGNA1, {"l": 2, "eps": 1e-5})
        assert abs(r.lhs - r.rhs) < 1e-8


class TestDomain:
    @pytest.mark.parametrize(
        "id, params, needle",
        [
            (IdentityId.B6, {"a": 1.0, "b": 1.0, "m": 2}, "a != b"),
            (IdentityId.B8, {"a": 1.5, "m": 2}, "a > m"),
            (IdentityId.B10, {"m": 3, "n": 3}, "n > m"),
            (IdentityId.LEMMA1, {"a": -0.5, "b": 1.0, "c": 1.0, "m": 2}, "a > 0"),
            (IdentityId.SI_AC, {"a": 1.0, "b": -1.0, "c": 1.0, "k": 2}, "b > -1"),
            (IdentityId.PGNA2, {"l": 1, "eps": 0.1}, "eps"),
            (IdentityId.DUPLICATION_PSI0, {"k": 1.0, "q": 5}, "q in"),
        ],
    )
    def test_constraint_is_named(self, id, params, needle):
        with pytest.raises(DomainError, match="constraint") as info:
            check_identity(id, params)
        assert needle in str(info.value)

    def test_integer_required(self):
        with pytest.raises(DomainError, match="integer"):
            check_identity(IdentityId.B4, {"m": 2.5})

    def test_missing_parameter(self):
        with pytest.raises(DomainError, match="missing"):
            check_identity(IdentityId.B1, {"a": 1.0})

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            check_identity("B99", {})


def test_digamma_finite_sum_exact():
    gamma = ExactValue(0, 1, 0)
    for l in range(1, 101):
        assert digamma_exact(l) + gamma - harmonic(l - 1) == ExactValue()


def test_digamma_finite_sum_float_route():
    for l in (1, 2, 17, 100):
        assert digamma(l) == pytest.approx(float(harmonic(l - 1)) - float(EULER_GAMMA_30), abs=1e-13)


@pytest.mark.parametrize("c", [0, 1, 2, 3, 0.5, 1.7])
def test_integral_identity_ac(c):
    for a, b in itertools.product(range(4), repeat=2):
        for k in range(6):
            r = check_identity(IdentityId.SI_AC, {"a": a, "b": b, "c": c, "k": k})
            assert abs(r.lhs - r.rhs) < 1e-9, (a, b, c, k)


def test_orthogonality_off_diagonal_is_zero():
    r = check_identity(IdentityId.ORTHOGONALITY, {"a": 0.3, "b": 2.2, "k": 2, "l": 5})
    assert r.rhs == 0.0 and abs(r.lhs) < 1e-12


@pytest.fixture(scope="module")
def report():
    return fuzz_identities(100, seed=42)


class TestFuzz:
    def test_all_pass(self, report):
        assert isinstance(report, FuzzReport)
        assert [e.id for e in report.entries] == list(IdentityId)
        assert report.passed, report.failures()

    def test_records(self, report):
        recs = report.to_records()
        assert len(recs) == len(IdentityId)
        assert all(r["n_draws"] == 100 and math.isfinite(r["max_residual"]) for r in recs)

    def test_subset_reproduces_full_run(self, report):
        sub = fuzz_identities(100, seed=42, ids=[IdentityId.LEMMA3, "B9"])
        full = {e.id: e for e in report.entries}
        for e in sub.entries:
            assert e == full[e.id]

    def test_bad_draws(self):
        with pytest.raises(DomainError):
            fuzz_identities(0, seed=1)
