"""Tests for the Stab dichotomy on diagonal operators and weighted shifts."""

import cmath
import logging
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, seed, settings as hyp_settings
from hypothesis import strategies as st

from core.contracts.enums import StabVerdict
from core.contracts.weights import SampledWeights
from core.errors import DichotomyViolationError, DimensionMismatchError, PreconditionError
from core.services.stab import (
    basis_decay_profile,
    dichotomy_check,
    stab_normal_diag,
    stab_similarity_consistency,
)
from core.services.weights import TailStructure, scale_weights, tail_structure
from tests.corpus import CORPUS, NOT_SIMILAR, SIMILAR, M, P, S

_GAP = 1e-3
_UNIT = (1, 1j, -1, -1j)
_FRACTIONS = [Fraction(n, d) for n, d in ((1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1))]


def _random_diagonal(rng: np.random.Generator) -> tuple[list[complex], list[complex]]:
    dim = int(rng.integers(1, 7))
    lambdas, x = [], []
    for _ in range(dim):
        draw = rng.random()
        if draw < 0.15:
            # exact unit modulus
            lambdas.append(complex(_UNIT[int(rng.integers(0, 4))]))
        else:
            modulus = rng.uniform(0.1, 1 - _GAP) if draw < 0.6 else rng.uniform(1 + _GAP, 1.2)
            lambdas.append(cmath.rect(modulus, rng.uniform(-math.pi, math.pi)))
        x.append(0j if rng.random() < 0.3 else cmath.rect(1.0, rng.uniform(-math.pi, math.pi)))
    return lambdas, x


class TestStabNormalDiag:
    @pytest.mark.parametrize("rng_seed", range(50))
    def test_matches_long_horizon(self, rng_seed):
        lambdas, x = _random_diagonal(np.random.default_rng(rng_seed))
        # |x_i| is 0 or 1: a surviving coordinate stays >= 1, a decaying one <= (1-gap)^500
        largest = max(abs(xi) * abs(lam) ** 500 for lam, xi in zip(lambdas, x))
        decayed = largest <= (1 - _GAP) ** 500 * (1 + 1e-9)
        assert stab_normal_diag(lambdas, x) == decayed

    def test_unit_circle_does_not_decay(self):
        assert not stab_normal_diag([1j, 0.5], [1, 1])
        assert stab_normal_diag([1j, 0.5], [0, 1])

    def test_zero_vector(self):
        assert stab_normal_diag([2, 3], [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            stab_normal_diag([0.5], [1, 1])


class TestBasisDecayProfile:
    def test_constant(self):
        np.testing.assert_allclose(basis_decay_profile(P(2), 0, 3), [2, 4, 8], rtol=1e-14)

    def test_starts_at_k(self):
        profile = basis_decay_profile(M(P(1), {0: 2}), -1, 3)
        np.testing.assert_allclose(profile, [1, 2, 2], rtol=1e-14)

    def test_overflow_reads_inf(self):
        profile = basis_decay_profile(P(1e300), 0, 3)
        assert profile[0] == pytest.approx(1e300, rel=1e-12)
        assert math.isinf(profile[-1])

    def test_horizon_must_be_positive(self):
        with pytest.raises(ValueError):
            basis_decay_profile(P(1), 0, 0)


class TestDichotomyCheck:
    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_never_mixed(self, name):
        report = dichotomy_check(CORPUS[name])
        assert report.rigorous
        assert report.verdict in (StabVerdict.ZERO, StabVerdict.DENSE)
        assert len(set(report.per_basis_decay.values())) == 1
        assert sorted(report.per_basis_decay) == list(range(-5, 6))

    @pytest.mark.parametrize(
        "seq, expected",
        [
            (P(0.5), StabVerdict.DENSE),
            (P(1), StabVerdict.ZERO),
            (P(2), StabVerdict.ZERO),
            (P(0.25, 4), StabVerdict.ZERO),
            (P(0.5, 1.5), StabVerdict.DENSE),
            (S(P(2), P(0.5), -2), StabVerdict.DENSE),
            (S(P(0.5), P(2)), StabVerdict.ZERO),
            (M(P(0.5), {0: 1000}), StabVerdict.DENSE),
        ],
    )
    def test_right_tail_decides(self, seq, expected):
        assert dichotomy_check(seq).verdict == expected

    def test_asymptotic_rate(self):
        report = dichotomy_check(P(1, 0.25), k_range=range(0, 2), horizon=10)
        assert report.asymptotic_rate == pytest.approx(0.5, rel=1e-14)
        assert report.horizon == 10
        assert report.observed_rates[0] == pytest.approx(0.5, rel=1e-12)

    def test_empty_range(self):
        with pytest.raises(ValueError):
            dichotomy_check(P(1), k_range=range(0))

    @pytest.mark.parametrize("name", sorted(CORPUS))
    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_each_orbit_matches_its_profile(self, name, r):
        seq = scale_weights(CORPUS[name], r)
        report = dichotomy_check(seq, k_range=range(-8, 9))
        p = tail_structure(seq).right_period
        for k, decays in report.per_basis_decay.items():
            # Deep in the right tail the profile repeats its period factor.
            profile = basis_decay_profile(seq, k, 60 + 2 * p)
            factor = profile[-1] / profile[-1 - p]
            assert decays == (factor < 1 - 1e-9)

    def test_disagreeing_orbits_raise(self, monkeypatch):
        # A right boundary placed before the override lets e_3 see only 0.5.
        monkeypatch.setattr(
            "core.services.stab.tail_structure", lambda seq: TailStructure(-100, 1, -100, 1)
        )
        with pytest.raises(DichotomyViolationError, match="disagree"):
            dichotomy_check(M(P(1), {3: 0.5}))

    @hyp_settings(max_examples=60, deadline=None)
    @seed(20240611)
    @given(st.lists(st.sampled_from(_FRACTIONS), min_size=1, max_size=6))
    def test_all_or_none(self, moduli):
        report = dichotomy_check(P(*(float(m) for m in moduli)), k_range=range(-10, 11))
        assert len(set(report.per_basis_decay.values())) == 1
        decays = math.prod(moduli) < 1
        assert (report.verdict == StabVerdict.DENSE) == decays


class TestSampledDichotomy:
    def test_decaying_table(self):
        report = dichotomy_check(SampledWeights(k_min=0, values=(0.5,) * 5))
        assert report.verdict == StabVerdict.DENSE
        assert not report.rigorous
        assert report.asymptotic_rate is None

    def test_growing_table(self):
        report = dichotomy_check(SampledWeights(k_min=0, values=(2.0, 1.0)))
        assert report.verdict == StabVerdict.ZERO
        assert not report.rigorous

    def test_mixed_within_horizon(self, caplog):
        seq = SampledWeights(k_min=0, values=(1.0, 0.1))
        with caplog.at_level(logging.WARNING):
            report = dichotomy_check(seq, k_range=range(-20, 2), horizon=10)
        assert report.verdict == StabVerdict.MIXED_VIOLATION
        assert not report.per_basis_decay[-20]
        assert report.per_basis_decay[1]
        assert "mixed decay" in caplog.text


class TestStabSimilarityConsistency:
    @pytest.mark.parametrize("name", sorted(SIMILAR))
    def test_consistent(self, name):
        assert stab_similarity_consistency(SIMILAR[name])

    @pytest.mark.parametrize("name", sorted(NOT_SIMILAR))
    def test_requires_similar(self, name):
        with pytest.raises(PreconditionError):
            stab_similarity_consistency(CORPUS[name])
