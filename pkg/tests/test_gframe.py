"""Family model, frame operator, bounds, duals, and classification."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gweave import linalg
from gweave.errors import Empty, NotAFrame, ShapeMismatch
from gweave.gframe import (
    apply,
    canonical_dual,
    classify,
    coefficient_energy,
    compose_right,
    frame_operator,
    is_dual_pair,
    is_g_exact,
    is_g_orthonormal_basis,
    is_g_riesz_basis,
    new_gframe,
    optimal_bounds,
    parseval_transform,
)
from gweave.suite import build_nonunitary_operators, build_projection_family, random_unitary

from conftest import random_frame, random_gframe
from oracles import rayleigh_sample_range

GOLDEN = (3.0 - math.sqrt(5.0)) / 2.0, (3.0 + math.sqrt(5.0)) / 2.0


class TestConstruction:
    def test_rows_of_identity(self):
        frame = new_gframe(3, [np.eye(3)[i] for i in range(3)])
        assert frame.n_blocks == 3
        assert frame.block_rows == (1, 1, 1)

    def test_column_mismatch_rejected(self):
        with pytest.raises(ShapeMismatch):
            new_gframe(3, [np.zeros((2, 4))])

    def test_empty_rejected(self):
        with pytest.raises(Empty):
            new_gframe(3, [])

    def test_blocks_frozen(self):
        frame = new_gframe(2, [np.eye(2)])
        with pytest.raises(ValueError):
            frame.blocks[0][0, 0] = 5.0

    def test_zero_row_block_allowed(self):
        frame = new_gframe(2, [np.zeros((0, 2)), np.eye(2)])
        assert frame.block_rows == (0, 2)
        assert optimal_bounds(frame).is_frame


class TestApply:
    def test_projection_locality(self):
        frame = build_projection_family(4, 3)
        coeffs = apply(frame, np.eye(4)[1])
        norms = [float(np.linalg.norm(c)) for c in coeffs]
        assert norms[1] == pytest.approx(1.0)
        assert sum(norms) == pytest.approx(1.0)

    def test_zero_vector(self):
        frame = build_projection_family(3)
        assert all(np.allclose(c, 0) for c in apply(frame, np.zeros(3)))

    @pytest.mark.parametrize("seed", range(4))
    def test_energy_identity(self, seed):
        rng = np.random.default_rng(seed)
        frame = random_gframe(rng, complex_mode=seed % 2 == 1)
        h = rng.standard_normal(frame.domain_dim)
        energy = coefficient_energy(frame, h)
        s = frame_operator(frame).s
        quadratic = float(np.real(np.vdot(h, s @ h)))
        assert energy == pytest.approx(quadratic, rel=1e-9)

    def test_wrong_length_rejected(self):
        with pytest.raises(ShapeMismatch):
            apply(build_projection_family(3), np.zeros(4))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), d=st.integers(2, 5), n=st.integers(1, 5))
def test_energy_identity_property(seed, d, n):
    rng = np.random.default_rng(seed)
    frame = random_gframe(rng, d=d, n=n)
    h = rng.standard_normal(d)
    s = frame_operator(frame).s
    assert coefficient_energy(frame, h) == pytest.approx(
        float(np.real(np.vdot(h, s @ h))), rel=1e-9, abs=1e-12
    )


class TestFrameOperator:
    def test_projection_family_is_tight(self):
        fo = frame_operator(build_projection_family(5, 3))
        np.testing.assert_allclose(fo.s, np.eye(5), atol=1e-14)
        assert (fo.lower, fo.upper) == (pytest.approx(1.0), pytest.approx(1.0))

    def test_two_by_two_hand_example(self):
        frame = new_gframe(2, [np.array([1.0, 0.0]), np.array([1.0, 1.0])])
        fo = frame_operator(frame)
        np.testing.assert_allclose(fo.s, [[2.0, 1.0], [1.0, 1.0]])
        assert fo.lower == pytest.approx(GOLDEN[0])
        assert fo.upper == pytest.approx(GOLDEN[1])

    def test_witnesses_attain_bounds(self):
        rng = np.random.default_rng(17)
        frame = random_gframe(rng, d=4, n=4)
        fo = frame_operator(frame)
        assert linalg.rayleigh(fo.s, fo.witness_low) == pytest.approx(fo.lower, abs=1e-9)
        assert linalg.rayleigh(fo.s, fo.witness_high) == pytest.approx(fo.upper, abs=1e-9)


class TestOptimalBounds:
    def test_zero_family_is_not_a_frame(self):
        rep = optimal_bounds(new_gframe(2, [np.zeros((1, 2))]))
        assert (rep.lower, rep.upper) == (pytest.approx(0.0, abs=1e-15), pytest.approx(0.0, abs=1e-15))
        assert not rep.is_frame

    @pytest.mark.parametrize("seed", [0, 1])
    def test_bracket_rayleigh_sampling(self, seed):
        rng = np.random.default_rng(seed)
        frame = random_gframe(rng, d=4, n=4)
        rep = optimal_bounds(frame)
        lo, hi, _ = rayleigh_sample_range(frame_operator(frame).s, 1000, seed)
        assert rep.lower - 1e-9 <= lo and hi <= rep.upper + 1e-9


class TestDuals:
    def test_onb_is_self_dual(self):
        frame = build_projection_family(4, 1)
        dual = canonical_dual(frame)
        assert all(np.allclose(a, b) for a, b in zip(frame.blocks, dual.blocks))

    def test_scalar_pair(self):
        frame = new_gframe(1, [np.array([[1.0]]), np.array([[1.0]])])
        dual = canonical_dual(frame)
        np.testing.assert_allclose(dual.blocks[0], [[0.5]])
        np.testing.assert_allclose(dual.blocks[1], [[0.5]])

    @pytest.mark.parametrize("seed", range(3))
    def test_canonical_dual_reconstructs_identity(self, seed):
        rng = np.random.default_rng(seed)
        frame = random_frame(rng, complex_mode=seed == 2)
        dual = canonical_dual(frame)
        mixed = sum(f.conj().T @ g for f, g in zip(frame.blocks, dual.blocks))
        assert linalg.frobenius(mixed - np.eye(frame.domain_dim)) <= 1e-8
        assert is_dual_pair(frame, dual)
        assert is_dual_pair(dual, frame)

    def test_non_parseval_family_is_not_self_dual(self):
        frame = new_gframe(1, [np.array([[1.0]]), np.array([[1.0]])])
        assert not is_dual_pair(frame, frame)

    @pytest.mark.parametrize("seed", range(5))
    def test_dual_verdict_is_symmetric(self, seed):
        rng = np.random.default_rng(seed)
        d, n = 3, 3
        first = random_gframe(rng, d=d, n=n)
        second = new_gframe(d, [b + 0.1 * rng.standard_normal(b.shape) for b in first.blocks])
        assert is_dual_pair(first, second) == is_dual_pair(second, first)

    def test_not_a_frame_rejected(self):
        with pytest.raises(NotAFrame):
            canonical_dual(new_gframe(2, [np.array([1.0, 0.0])]))


class TestExactness:
    def test_projection_family_exact(self):
        rep = is_g_exact(build_projection_family(4, 1))
        assert rep.is_exact
        assert rep.witness is None
        assert all(lo <= rep.threshold for lo in rep.removal_lower_bounds)

    def test_redundant_family_not_exact(self):
        frame = new_gframe(2, [np.eye(2), np.array([1.0, 0.0])])
        rep = is_g_exact(frame)
        assert not rep.is_exact
        assert rep.witness == 2
        assert rep.removal_lower_bounds[1] > rep.threshold


class TestRiesz:
    def test_hand_example(self):
        frame = new_gframe(2, [np.array([1.0, 0.0]), np.array([1.0, 1.0])])
        rep = is_g_riesz_basis(frame)
        assert rep.is_riesz
        assert rep.lower == pytest.approx(GOLDEN[0])
        assert rep.upper == pytest.approx(GOLDEN[1])

    def test_too_many_vectors(self):
        frame = new_gframe(2, [np.eye(2), np.array([1.0, 1.0])])
        rep = is_g_riesz_basis(frame)
        assert not rep.is_riesz
        assert rep.vector_count == 3
        assert rep.lower == 0.0


class TestOnb:
    def test_projection_family(self):
        assert is_g_orthonormal_basis(build_projection_family(4, 1)).is_onb

    def test_scaled_family_fails(self):
        frame = compose_right(build_projection_family(4, 1), 2.0 * np.eye(4))
        rep = is_g_orthonormal_basis(frame)
        assert not rep.is_onb
        assert rep.parseval_residual > 1.0

    def test_duplicate_blocks_fail_cross_gram(self):
        frame = new_gframe(2, [np.eye(2), np.eye(2)])
        rep = is_g_orthonormal_basis(frame)
        assert not rep.is_onb
        assert rep.cross_gram_residual > 1.0


class TestCompose:
    def test_identity_composition(self):
        frame = build_projection_family(3, 1)
        composed = compose_right(frame, np.eye(3))
        assert all(np.allclose(a, b) for a, b in zip(frame.blocks, composed.blocks))

    def test_doubling_scales_bounds(self):
        frame = compose_right(build_projection_family(4, 1), 2.0 * np.eye(4))
        rep = optimal_bounds(frame)
        assert (rep.lower, rep.upper) == (pytest.approx(4.0), pytest.approx(4.0))

    def test_shift_creates_zero_induced_vector(self):
        d = 5
        _, shift = build_nonunitary_operators(d)
        frame = compose_right(build_projection_family(d, 1), shift)
        rep = is_g_orthonormal_basis(frame)
        assert not rep.is_onb
        assert rep.first_zero_row == (1, 1)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_unitary_invariance_of_bounds(self, seed):
        rng = np.random.default_rng(seed)
        frame = random_gframe(rng, d=4, n=4)
        u = random_unitary(4, seed)
        a = optimal_bounds(frame)
        b = optimal_bounds(compose_right(frame, u))
        assert b.lower == pytest.approx(a.lower, abs=1e-9)
        assert b.upper == pytest.approx(a.upper, abs=1e-9)


class TestParsevalTransform:
    def test_parseval_input_unchanged(self):
        frame = build_projection_family(4, 1)
        out = parseval_transform(frame)
        assert all(np.allclose(a, b, atol=1e-12) for a, b in zip(frame.blocks, out.blocks))

    def test_doubled_family_rescaled(self):
        frame = new_gframe(2, [np.eye(2), np.eye(2)])
        out = parseval_transform(frame)
        for b in out.blocks:
            np.testing.assert_allclose(b, np.eye(2) / math.sqrt(2.0), atol=1e-12)
        rep = optimal_bounds(out)
        assert (rep.lower, rep.upper) == (pytest.approx(1.0), pytest.approx(1.0))

    @pytest.mark.parametrize("seed", range(3))
    def test_random_family_becomes_parseval(self, seed):
        rng = np.random.default_rng(seed)
        frame = random_frame(rng, complex_mode=seed == 1)
        out = parseval_transform(frame)
        s = frame_operator(out).s
        assert linalg.frobenius(s - np.eye(frame.domain_dim)) <= 1e-8


class TestClassification:
    def test_chain_on_corpus(self):
        corpus = [
            build_projection_family(4, 1),
            build_projection_family(4, 3),
            new_gframe(2, [np.array([1.0, 0.0]), np.array([1.0, 1.0])]),
            new_gframe(2, [np.eye(2), np.eye(2)]),
            new_gframe(2, [np.array([1.0, 0.0])]),
        ]
        rng = np.random.default_rng(5)
        corpus += [random_gframe(rng) for _ in range(5)]
        for frame in corpus:
            cls = classify(frame)
            if cls.is_g_onb:
                assert cls.is_g_riesz
                rep = is_g_riesz_basis(frame)
                assert rep.lower == pytest.approx(1.0, abs=1e-9)
                assert rep.upper == pytest.approx(1.0, abs=1e-9)
            if cls.is_g_riesz:
                assert cls.is_g_frame and cls.is_g_exact

    def test_onb_classification(self):
        cls = classify(build_projection_family(3, 1))
        assert cls.is_g_frame and cls.is_g_exact and cls.is_g_riesz and cls.is_g_onb
