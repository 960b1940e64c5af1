"""Dense spectral primitives used by every other module.

Matrices are plain numpy arrays, float64 in real mode and complex128
otherwise.  All residual tolerances are relative to the Frobenius norm of
the input with an absolute floor of 1e-12, so rescaling a problem does not
change which inputs are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NonHermitian, ShapeMismatch, Singular

ABS_FLOOR = 1e-12
HERMITIAN_RTOL = 1e-8
RANK_RTOL = 1e-10


def as_matrix(m, square: bool = False) -> np.ndarray:
    """Coerce to a finite 2-d float64/complex128 array; 1-d input becomes a row."""
    a = np.asarray(m)
    if a.ndim == 1:
        a = a[np.newaxis, :]
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got an array of ndim {a.ndim}")
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    a = a.astype(dtype, copy=False)
    if a.size and not np.isfinite(a).all():
        raise NonFinite("matrix contains NaN or Inf entries")
    if square and a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def hermitian_defect(a) -> float:
    return float(np.linalg.norm(a - a.conj().T))


def _require_hermitian(m, rtol: float) -> np.ndarray:
    a = as_matrix(m, square=True)
    if hermitian_defect(a) > max(rtol * max(1.0, frobenius(a)), ABS_FLOOR):
        raise NonHermitian(
            f"symmetry residual {hermitian_defect(a):.3e} exceeds tolerance"
        )
    return (a + a.conj().T) / 2.0


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its first significant component is real positive.

    This pins the gauge freedom of eigenvectors and makes repeated
    decompositions of the same matrix byte-identical.
    """
    out = np.array(vectors)
    for j in range(out.shape[1]):
        col = out[:, j]
        mags = np.abs(col)
        peak = mags.max(initial=0.0)
        if peak == 0.0:
            continue
        i = int(np.argmax(mags > 1e-12 * peak))
        pivot = col[i]
        if np.iscomplexobj(out):
            out[:, j] = col * (np.conj(pivot) / abs(pivot))
        elif pivot < 0:
            out[:, j] = -col
    return out


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues in ascending order and the matching unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m, sym_rtol: float = HERMITIAN_RTOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square matrix with symmetry residual below ``sym_rtol`` relative to
        its Frobenius norm.
    sym_rtol : float, optional
        Relative symmetry tolerance; violation raises :class:`NonHermitian`.

    Returns
    -------
    HermitianEig
        Ascending eigenvalues and unitary eigenvectors with a deterministic
        phase convention (first significant component real positive).
    """
    a = _require_hermitian(m, sym_rtol)
    w, v = np.linalg.eigh(a)
    return HermitianEig(eigenvalues=w, eigenvectors=_fix_phases(v))


def eigvalsh_range(m, sym_rtol: float = HERMITIAN_RTOL) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a Hermitian matrix."""
    a = _require_hermitian(m, sym_rtol)
    w = np.linalg.eigvalsh(a)
    return float(w[0]), float(w[-1])


def rayleigh(m, x) -> float:
    """Real Rayleigh quotient x*Mx / x*x."""
    x = np.asarray(x).ravel()
    num = np.vdot(x, np.asarray(m) @ x)
    den = np.vdot(x, x)
    return float(num.real / den.real)


def svd(m):
    """Thin singular value decomposition.

    Returns ``(s, u, v)`` with ``s`` descending and ``m = u @ diag(s) @ v.conj().T``.
    """
    a = as_matrix(m)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return s, u, vh.conj().T


def solve_spd(m, rhs, rank_rtol: float = RANK_RTOL):
    """Solve ``m @ x = rhs`` for Hermitian positive definite ``m``.

    Raises :class:`Singular` when the smallest eigenvalue falls below
    ``rank_rtol`` times the largest.
    """
    a = _require_hermitian(m, HERMITIAN_RTOL)
    w = np.linalg.eigvalsh(a)
    lo, hi = float(w[0]), float(w[-1])
    if lo <= max(rank_rtol * hi, ABS_FLOOR):
        raise Singular(f"smallest eigenvalue {lo:.3e} below rank tolerance")
    b = np.asarray(rhs)
    vector = b.ndim == 1
    if vector:
        b = b[:, np.newaxis]
    if b.shape[0] != a.shape[0]:
        raise ShapeMismatch(
            f"rhs has {b.shape[0]} rows, matrix is {a.shape[0]}x{a.shape[1]}"
        )
    x = np.linalg.solve(a, b.astype(np.result_type(a.dtype, b.dtype)))
    return x[:, 0] if vector else x


def inv_sqrt_psd(m, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    """Inverse square root of a Hermitian positive definite matrix.

    The result ``r`` is Hermitian, commutes with ``m`` and satisfies
    ``r @ m @ r = I`` up to the documented residuals.
    """
    a = _require_hermitian(m, HERMITIAN_RTOL)
    w, v = np.linalg.eigh(a)
    lo, hi = float(w[0]), float(w[-1])
    if lo <= max(rank_rtol * hi, ABS_FLOOR):
        raise Singular(f"smallest eigenvalue {lo:.3e} below rank tolerance")
    r = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    return (r + r.conj().T) / 2.0
