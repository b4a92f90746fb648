"""Basis traces, the real trace, and the trace norm.

Over R and C the basis trace sum_{u in N} <u|Au> does not depend on N.  Over
H it does (left multiplication by j on the one-dimensional space is the
canonical witness) unless A is Hermitian, but its REAL PART is always basis
independent and cyclic, which is what every downstream probability formula
uses.  The trace norm is the sum of singular values; in finite dimension
every operator is trace class and the norm is the nuclear norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Basis, Matrix, inner
from .scalars import Algebra, Quaternion, scalar_to_json
from .spectral import op_norm, singular_values


def trace_n(A: Matrix, basis: Basis) -> Quaternion:
    """Basis trace sum_{u in N} <u|Au>, summed in the basis order."""
    if not A.is_square:
        raise ValueError("trace needs a square matrix")
    if len(basis) != A.n:
        raise ValueError(f"basis has {len(basis)} vectors, space dimension is {A.n}")
    total = Quaternion.ZERO
    for u in basis:
        total = total + inner(u, A @ u)
    return total


def real_trace(A: Matrix) -> float:
    """Re tr_N(A) for any basis N; the standard basis gives the diagonal sum."""
    if not A.is_square:
        raise ValueError("trace needs a square matrix")
    n = A.n
    return float(A.comps[np.arange(n), np.arange(n), 0].sum())


def trace_norm(A: Matrix) -> float:
    """Sum of singular values; equals sum_{u in M} <u| |A| u> for every basis M."""
    if not A.is_square:
        raise ValueError("trace norm needs a square matrix")
    return float(singular_values(A).sum())


def absolute_diagonal_sum(A: Matrix, basis: Basis) -> float:
    """sum_{u in N} |<u|Au>|, the quantity bounded by the trace norm over C and H."""
    return float(sum(abs(inner(u, A @ u)) for u in basis))


@dataclass(frozen=True)
class NormInequalityReport:
    """Slacks for the product and adjoint trace-norm inequalities.

    Each slack is (bound - value); the inequality holds when it is >= 0 up to
    rounding.
    """

    slack_ab: float
    slack_ba: float
    adjoint_gap: float
    op_vs_trace_slack: float

    def all_hold(self, tol: float = 1e-9) -> bool:
        return (
            self.slack_ab >= -tol
            and self.slack_ba >= -tol
            and abs(self.adjoint_gap) <= tol
            and self.op_vs_trace_slack >= -tol
        )


def check_norm_inequalities(A: Matrix, B: Matrix) -> NormInequalityReport:
    """||AB||_1 <= ||A||_1 ||B||, ||BA||_1 <= ||A||_1 ||B||, ||A||_1 = ||A*||_1,
    ||A|| <= ||A||_1."""
    a1 = trace_norm(A)
    b_op = op_norm(B)
    scale = max(1.0, a1 * max(1.0, b_op))
    return NormInequalityReport(
        slack_ab=(a1 * b_op - trace_norm(A @ B)) / scale,
        slack_ba=(a1 * b_op - trace_norm(B @ A)) / scale,
        adjoint_gap=(trace_norm(A.adjoint()) - a1) / max(1.0, a1),
        op_vs_trace_slack=(a1 - op_norm(A)) / max(1.0, a1),
    )


def real_trace_cyclic_gap(A: Matrix, B: Matrix) -> float:
    """|Re tr(AB) - Re tr(BA)|; vanishes in all three algebras."""
    return abs(real_trace(A @ B) - real_trace(B @ A))


def full_trace_cyclic_gap(A: Matrix, B: Matrix, basis: Basis | None = None) -> float:
    """|tr_N(AB) - tr_N(BA)|; generally nonzero over H."""
    basis = basis or Basis.standard(A.n, A.algebra)
    return abs(trace_n(A @ B, basis) - trace_n(B @ A, basis))


@dataclass(frozen=True)
class AdaptedTraceCheck:
    """Both sides of tr_N(A) = Re tr(A) + (imag_unit / 2) tr|A - A*| on a basis
    adapted to the polar direction J of the anti-Hermitian part."""

    basis_trace: Quaternion
    real_part: float
    skew_trace_norm: float
    imag_unit: Quaternion
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def quaternionic_trace_formula_check(A: Matrix, imag_unit: Quaternion) -> AdaptedTraceCheck:
    """Evaluate the adapted-basis trace identity for a quaternionic matrix."""
    from .spectral import adapted_basis, make_J

    J = make_J(A)
    basis = adapted_basis(J, imag_unit)
    lhs = trace_n(A, basis)
    skew_norm = trace_norm(A - A.adjoint())
    rhs = Quaternion(real_trace(A)) + imag_unit * (skew_norm / 2.0)
    tol = 1e-8 * (1.0 + trace_norm(A))
    return AdaptedTraceCheck(
        basis_trace=lhs,
        real_part=real_trace(A),
        skew_trace_norm=skew_norm,
        imag_unit=imag_unit,
        residual=abs(lhs - rhs),
        tolerance=tol,
    )


# ---------------------------------------------------------------------------
# realification: the same space viewed as a real Hilbert space of dimension 4n
# ---------------------------------------------------------------------------

def _left_mult_block(q: np.ndarray) -> np.ndarray:
    """4x4 real matrix of left multiplication by q on coordinates (1, i, j, k)."""
    a, b, c, d = q
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ]
    )


def realify(A: Matrix) -> Matrix:
    """Real 4n x 4n matrix of a quaternionic operator on the realified space.

    The realified space uses the basis {u, ui, uj, uk} per quaternionic basis
    vector u and the real scalar product Re<.|.>.
    """
    if A.algebra is not Algebra.H:
        raise ValueError("realification applies to quaternionic matrices")
    n, m = A.n, A.m
    out = np.zeros((4 * n, 4 * m, 4))
    for r in range(n):
        for c in range(m):
            out[4 * r : 4 * r + 4, 4 * c : 4 * c + 4, 0] = _left_mult_block(A.comps[r, c])
    return Matrix(Algebra.R, out)


@dataclass(frozen=True)
class RealificationCheck:
    trace_norm_h: float
    trace_norm_real: float
    real_trace_h: float
    trace_real: float

    @property
    def trace_norm_gap(self) -> float:
        return abs(self.trace_norm_h - self.trace_norm_real / 4.0)

    @property
    def trace_gap(self) -> float:
        return abs(self.real_trace_h - self.trace_real / 4.0)


def realification_check(A: Matrix) -> RealificationCheck:
    """Both quarter identities: ||A||_1 over H is a quarter of the realified
    trace norm, and Re tr(A) is a quarter of the realified trace."""
    AR = realify(A)
    return RealificationCheck(
        trace_norm_h=trace_norm(A),
        trace_norm_real=trace_norm(AR),
        real_trace_h=real_trace(A),
        trace_real=real_trace(AR),
    )


@dataclass(frozen=True)
class TraceReport:
    basis_id: str
    value: Quaternion
    real_value: float
    trace_norm: float
    algebra: Algebra

    def to_json(self) -> dict:
        return {
            "basis": self.basis_id,
            "trace": scalar_to_json(self.value, self.algebra),
            "real_trace": self.real_value,
            "trace_norm": self.trace_norm,
        }


def trace_report(A: Matrix, basis: Basis, basis_id: str) -> TraceReport:
    return TraceReport(
        basis_id=basis_id,
        value=trace_n(A, basis),
        real_value=real_trace(A),
        trace_norm=trace_norm(A),
        algebra=A.algebra,
    )
