import math

import numpy as np
import pytest

from gleason_lab.errors import InvalidWeights, NotAFrameFunction, NotHermitian, NotPositive
from gleason_lab.gleason import (
    DensityOperator,
    FrameFunction,
    LatticeMeasure,
    convex_mix,
    convex_unit_lemma,
    dim2_counterexample,
    extremal_split,
    is_extremal,
    lattice_join,
    measure_from_state,
    measure_transcript,
    pure_state,
    random_density,
    random_orthogonal_decomposition,
    reconstruct_state,
    separation_check,
    sigma_additivity_gap,
)
from gleason_lab.linalg import (
    Matrix,
    Projector,
    Vector,
    inner,
    outer,
    projector_onto,
    random_phase,
    random_projector,
    random_unit_vector,
    random_unitary,
)
from gleason_lab.rng import SplitMix64
from gleason_lab.scalars import Algebra
from gleason_lab.trace import real_trace

from conftest import ALGEBRAS


class TestDensityOperator:
    def test_maximally_mixed_state(self):
        T = DensityOperator(Matrix.identity(4, Algebra.H) * 0.25)
        assert T.rank() == 4
        assert math.isclose(real_trace(T.matrix), 1.0)

    def test_rejects_non_hermitian(self):
        bad = Matrix.from_rows([[0.5, 1.0], [0.0, 0.5]], Algebra.R)
        with pytest.raises(NotHermitian):
            DensityOperator(bad)

    def test_rejects_negative_operators(self):
        with pytest.raises(NotPositive):
            DensityOperator(Matrix.diag([1.5, -0.5], Algebra.C))

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError):
            DensityOperator(Matrix.identity(2, Algebra.C))

    def test_json_carries_certification(self):
        T = random_density(3, Algebra.C, SplitMix64(80))
        payload = T.to_json()
        assert payload["certified"] is True
        assert payload["algebra"] == "C"


class TestLatticeJoin:
    def test_join_with_zero_projector(self):
        P = random_projector(3, 1, Algebra.H, SplitMix64(81))
        joined = lattice_join([P, Projector.zero(3, Algebra.H)])
        assert joined.matrix.approx_eq(P.matrix, tol=1e-9)

    def test_join_with_complement_is_identity(self):
        P = random_projector(4, 2, Algebra.C, SplitMix64(82))
        joined = lattice_join([P, P.complement()])
        assert joined.matrix.approx_eq(Matrix.identity(4, Algebra.C), tol=1e-9)

    def test_join_of_overlapping_lines(self):
        e1 = Vector.basis_vector(0, 3, Algebra.R)
        e2 = Vector.basis_vector(1, 3, Algebra.R)
        P = projector_onto([e1])
        Q = projector_onto([e1 + e2])
        joined = lattice_join([P, Q])
        assert joined.rank == 2

    def test_orthogonal_join_equals_sum(self):
        rng = SplitMix64(83)
        parts = random_orthogonal_decomposition(5, Algebra.H, rng)
        total = Matrix.zeros(5, 5, Algebra.H)
        for P in parts:
            total = total + P.matrix
        assert lattice_join(parts).matrix.approx_eq(total, tol=1e-9)


class TestMeasureFromState:
    def test_uniform_state_scores_rank_over_n(self):
        rng = SplitMix64(84)
        for algebra in ALGEBRAS:
            T = DensityOperator(Matrix.identity(4, algebra) * 0.25)
            mu = measure_from_state(T)
            for rank in (1, 2, 3):
                P = random_projector(4, rank, algebra, rng)
                assert math.isclose(mu(P), rank / 4.0, abs_tol=1e-10)

    def test_pure_state_scores_one_on_its_own_line(self):
        psi = random_unit_vector(3, Algebra.H, SplitMix64(85))
        mu = measure_from_state(pure_state(psi))
        assert math.isclose(mu(projector_onto([psi])), 1.0, abs_tol=1e-10)

    def test_equivalent_trace_forms(self):
        from gleason_lab.linalg import gram_schmidt, random_matrix
        from gleason_lab.scalars import Quaternion
        from gleason_lab.trace import trace_n

        rng = SplitMix64(86)
        for algebra in ALGEBRAS:
            T = random_density(4, algebra, rng)
            P = random_projector(4, 2, algebra, rng)
            a = real_trace(P.matrix @ T.matrix)
            b = real_trace(T.matrix @ P.matrix)
            sandwiched = P.matrix @ T.matrix @ P.matrix
            c = real_trace(sandwiched)
            assert math.isclose(a, b, abs_tol=1e-10)
            assert math.isclose(a, c, abs_tol=1e-10)
            assert sandwiched.is_hermitian(1e-9)
            # the sandwiched trace is basis independent and already real
            basis = gram_schmidt(random_matrix(4, 4, algebra, rng).columns())
            assert abs(trace_n(sandwiched, basis) - Quaternion(a)) < 1e-10

    def test_sigma_additivity_over_random_decompositions(self):
        rng = SplitMix64(87)
        for algebra in ALGEBRAS:
            for _ in range(10):
                mu = measure_from_state(random_density(5, algebra, rng))
                parts = random_orthogonal_decomposition(5, algebra, rng)
                assert abs(sum(mu(P) for P in parts) - 1.0) < 1e-9
                assert sigma_additivity_gap(mu, parts) < 1e-9

    def test_values_stay_in_unit_interval(self):
        rng = SplitMix64(88)
        for algebra in ALGEBRAS:
            mu = measure_from_state(random_density(4, algebra, rng))
            for rank in (1, 2, 3):
                v = mu(random_projector(4, rank, algebra, rng))
                assert -1e-10 <= v <= 1.0 + 1e-10

    def test_probe_harness_with_default_knobs(self):
        from gleason_lab.gleason import probe_measure

        rng = SplitMix64(880)
        mu = measure_from_state(random_density(4, Algebra.H, rng))
        rows = probe_measure(mu, 4, Algebra.H, rng, probes=30)
        assert len(rows) == 30
        assert {row["projector_rank"] for row in rows} == {1, 2, 3}
        bad = LatticeMeasure.oracle_backed(lambda P: 1.5)
        with pytest.raises(ValueError):
            probe_measure(bad, 3, Algebra.C, rng, probes=5)


class TestReconstruction:
    @pytest.mark.parametrize("algebra", ALGEBRAS)
    @pytest.mark.parametrize("n", [3, 4])
    def test_round_trip(self, algebra, n):
        rng = SplitMix64(900 + n)
        T = random_density(n, algebra, rng)
        f = FrameFunction.from_measure(measure_from_state(T))
        rebuilt = reconstruct_state(f, n, algebra, rng=rng)
        assert (rebuilt.matrix - T.matrix).max_abs() < 1e-9

    def test_constant_frame_function_gives_uniform_state(self):
        f = FrameFunction(evaluate=lambda x: x.norm() ** 2 / 3.0)
        T = reconstruct_state(f, 3, Algebra.C)
        assert T.matrix.approx_eq(Matrix.identity(3, Algebra.C) * (1.0 / 3.0), tol=1e-10)

    def test_quaternionic_three_dim_many_seeds(self):
        worst = 0.0
        for seed in range(10):
            rng = SplitMix64(seed)
            T = random_density(3, Algebra.H, rng)
            f = FrameFunction.from_measure(measure_from_state(T))
            rebuilt = reconstruct_state(f, 3, Algebra.H, rng=rng)
            worst = max(worst, (rebuilt.matrix - T.matrix).max_abs())
        assert worst < 1e-8

    def test_frame_function_weight_one_on_every_basis(self):
        rng = SplitMix64(89)
        T = random_density(4, Algebra.H, rng)
        f = FrameFunction.from_measure(measure_from_state(T))
        from gleason_lab.linalg import gram_schmidt, random_matrix

        for _ in range(5):
            basis = gram_schmidt(random_matrix(4, 4, Algebra.H, rng).columns())
            assert math.isclose(f.basis_weight(basis), 1.0, abs_tol=1e-9)

    def test_phase_dependent_oracle_is_rejected(self):
        def ev(x: Vector) -> float:
            # depends on the representative, not the line: not a frame function
            return max(x.comps[0, 0], 0.0)

        with pytest.raises(NotAFrameFunction):
            reconstruct_state(FrameFunction(evaluate=ev), 3, Algebra.C)

    def test_non_quadratic_oracle_is_rejected(self):
        def ev(x: Vector) -> float:
            p = inner(x, x).real
            return abs(x.entry(0) * x.entry(0).conjugate()).real ** 2 / max(p, 1e-12)

        with pytest.raises(NotAFrameFunction):
            reconstruct_state(FrameFunction(evaluate=ev), 3, Algebra.C)

    def test_indefinite_quadratic_form_is_rejected_as_not_positive(self):
        T0 = Matrix.diag([1.5, -0.5, 0.0], Algebra.C)

        def ev(x: Vector) -> float:
            return inner(x, T0 @ x).real

        with pytest.raises(NotPositive):
            reconstruct_state(FrameFunction(evaluate=ev), 3, Algebra.C)


class TestExtremality:
    def test_pure_states_are_extremal(self):
        rng = SplitMix64(90)
        for algebra in ALGEBRAS:
            psi = random_unit_vector(4, algebra, rng)
            assert is_extremal(pure_state(psi))

    def test_uniform_state_is_not_extremal(self):
        for n in (2, 3):
            T = DensityOperator(Matrix.identity(n, Algebra.C) * (1.0 / n))
            assert not is_extremal(T)

    def test_split_reproduces_the_state(self):
        rng = SplitMix64(91)
        for algebra in ALGEBRAS:
            T = random_density(4, algebra, rng, rank=3)
            assert not is_extremal(T)
            w, T1, T2 = extremal_split(T)
            assert 0.0 < w < 1.0
            assert is_extremal(T1)
            mixed = convex_mix([T1, T2], [w, 1.0 - w])
            assert (mixed.matrix - T.matrix).max_abs() < 1e-9

    def test_split_refuses_pure_states(self):
        psi = random_unit_vector(3, Algebra.R, SplitMix64(92))
        with pytest.raises(ValueError):
            extremal_split(pure_state(psi))


class TestConvexMix:
    def test_single_state_identity_mix(self):
        T = random_density(3, Algebra.H, SplitMix64(93))
        assert convex_mix([T], [1.0]).matrix.approx_eq(T.matrix, tol=0.0)

    def test_equal_mix_of_orthogonal_pure_states(self):
        U = random_unitary(3, Algebra.C, SplitMix64(94))
        T = convex_mix([pure_state(U.col(0)), pure_state(U.col(1))], [0.5, 0.5])
        values = sorted(T.eigen().values, reverse=True)
        assert np.allclose(values[:2], [0.5, 0.5], atol=1e-10)

    def test_spectral_resolution_remixes_to_the_state(self):
        rng = SplitMix64(95)
        T = random_density(4, Algebra.H, rng)
        dec = T.eigen()
        parts = [pure_state(u) for u in dec.basis]
        weights = [max(float(s), 0.0) for s in dec.values]
        weights = [w / sum(weights) for w in weights]
        remixed = convex_mix(parts, weights)
        assert (remixed.matrix - T.matrix).max_abs() < 1e-9

    def test_measures_mix_affinely(self):
        rng = SplitMix64(96)
        t1, t2 = (random_density(3, Algebra.C, rng) for _ in range(2))
        mixed = convex_mix([t1, t2], [0.3, 0.7])
        P = random_projector(3, 2, Algebra.C, rng)
        lhs = measure_from_state(mixed)(P)
        rhs = 0.3 * measure_from_state(t1)(P) + 0.7 * measure_from_state(t2)(P)
        assert math.isclose(lhs, rhs, abs_tol=1e-12)

    def test_invalid_weights(self):
        T = random_density(2, Algebra.R, SplitMix64(97))
        with pytest.raises(InvalidWeights):
            convex_mix([T, T], [0.7, 0.7])
        with pytest.raises(InvalidWeights):
            convex_mix([T, T], [1.5, -0.5])


class TestPhaseClasses:
    def test_quaternionic_phases_leave_pure_states_fixed(self):
        rng = SplitMix64(98)
        psi = random_unit_vector(3, Algebra.H, rng)
        for _ in range(10):
            q = random_phase(Algebra.H, rng)
            assert pure_state(psi.scale_right(q)).matrix.approx_eq(pure_state(psi).matrix, tol=1e-10)

    def test_real_case_is_up_to_sign(self):
        psi = random_unit_vector(3, Algebra.R, SplitMix64(99))
        assert pure_state(psi.scale_right(-1.0)).matrix.approx_eq(pure_state(psi).matrix, tol=1e-12)


class TestSeparation:
    def test_equal_projectors_are_not_separated(self):
        P = random_projector(3, 1, Algebra.H, SplitMix64(100))
        assert not separation_check(P, P)

    def test_standard_lines_are_separated(self):
        P = projector_onto([Vector.basis_vector(0, 3, Algebra.C)])
        Q = projector_onto([Vector.basis_vector(1, 3, Algebra.C)])
        assert separation_check(P, Q)
        # the e1 witness itself distinguishes them maximally
        mu = measure_from_state(pure_state(Vector.basis_vector(0, 3, Algebra.C)))
        assert math.isclose(mu(P) - mu(Q), 1.0, abs_tol=1e-12)

    def test_random_distinct_projectors_are_separated(self):
        rng = SplitMix64(101)
        for algebra in ALGEBRAS:
            P = random_projector(4, 2, algebra, rng)
            Q = random_projector(4, 2, algebra, rng)
            if (P.matrix - Q.matrix).max_abs() > 1e-6:
                assert separation_check(P, Q)


class TestConvexUnitLemma:
    def test_textbook_case(self):
        assert convex_unit_lemma([0.5, 0.5], [1.0, 1.0])

    def test_out_of_range_q_is_flagged(self):
        with pytest.raises(ValueError):
            convex_unit_lemma([0.5, 0.5], [0.9, 1.1])
        with pytest.raises(ValueError):
            convex_unit_lemma([0.5, 0.5, 0.0], [1.0, 1.0, 1.0])

    def test_sampler_finds_no_violations(self):
        rng = SplitMix64(102)
        checked = 0
        for _ in range(10_000):
            count = 2 + rng.integer(6)
            raw = rng.uniform_block(count)
            ps = raw / raw.sum()
            if ps.min() <= 0.0 or ps.max() >= 1.0:
                continue
            qs = np.ones(count) if rng.uniform() < 0.5 else 1.0 - rng.uniform_block(count)
            assert convex_unit_lemma(list(ps), list(qs))
            checked += 1
        assert checked > 9000


class TestDim2Counterexample:
    def test_poles_and_additivity(self):
        mu, cert = dim2_counterexample()
        north = projector_onto([Vector.basis_vector(0, 2, Algebra.C)])
        assert math.isclose(mu(north), 1.0, abs_tol=1e-12)
        south = projector_onto([Vector.basis_vector(1, 2, Algebra.C)])
        assert math.isclose(mu(south), 0.0, abs_tol=1e-12)
        assert cert.additivity_gap < 1e-12
        assert math.isclose(cert.identity_value, 1.0, abs_tol=1e-12)

    def test_antipodal_pairs_sum_to_one(self):
        mu, _ = dim2_counterexample()
        rng = SplitMix64(103)
        for _ in range(100):
            P = projector_onto([random_unit_vector(2, Algebra.C, rng)])
            assert math.isclose(mu(P) + mu(P.complement()), 1.0, abs_tol=1e-12)

    def test_no_trace_form_fits(self):
        _, cert = dim2_counterexample()
        assert cert.best_fit_max_error > 0.05
        assert cert.best_fit.is_hermitian(1e-9)

    def test_transcript_rows(self):
        mu, cert = dim2_counterexample()
        assert all(set(row) == {"projector_rank", "value"} for row in cert.transcript)
        rng = SplitMix64(104)
        probes = [random_projector(2, 1, Algebra.C, rng) for _ in range(5)]
        rows = measure_transcript(mu, probes)
        assert [row["projector_rank"] for row in rows] == [1] * 5
