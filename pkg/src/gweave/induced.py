"""Bridge between block families and ordinary vector frames.

Pulling a frame of each coefficient space back through the block adjoints
produces a family of vectors in the domain; frame, Riesz, and orthonormality
questions can then be answered on either side and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels, linalg
from .errors import EnvelopeViolation, LengthMismatch, ShapeMismatch, TooManyBlocks
from .gframe import (
    DEFAULT_TOL,
    BoundsReport,
    GFrame,
    OnbReport,
    RieszReport,
    frame_operator,
    is_g_orthonormal_basis,
    is_g_riesz_basis,
)
from .weaving import (
    CHECK_EPS,
    UniversalReport,
    VerificationRecord,
    WeavingSelection,
    effective_cap,
    universal_bounds_exhaustive,
)


@dataclass(frozen=True)
class VectorFamily:
    """Vectors in the domain, grouped by the block index they came from."""

    domain_dim: int
    groups: tuple  # tuple of tuples of 1-d arrays

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def flat(self) -> tuple:
        """All vectors in (group, position) lexicographic order."""
        return tuple(v for group in self.groups for v in group)


def make_vector_family(domain_dim: int, groups) -> VectorFamily:
    d = int(domain_dim)
    frozen = []
    for gi, group in enumerate(groups):
        vecs = []
        for v in group:
            arr = np.asarray(v).ravel()
            if arr.shape[0] != d:
                raise ShapeMismatch(
                    f"group {gi + 1} has a vector of length {arr.shape[0]},"
                    f" domain dimension is {d}"
                )
            arr = arr.astype(
                np.complex128 if np.iscomplexobj(arr) else np.float64, copy=True
            )
            arr.setflags(write=False)
            vecs.append(arr)
        frozen.append(tuple(vecs))
    return VectorFamily(domain_dim=d, groups=tuple(frozen))


@dataclass(frozen=True)
class SubspaceFrameSpec:
    """Per block, a frame of the block's coefficient space.

    Per-block bounds are computed from the vectors, never asserted, and the
    declared envelope must contain all of them.  ``strict_envelope`` records
    whether the envelope inequalities are strict; a tight spec (equal lower
    and upper envelope) is accepted but flagged.
    """

    groups: tuple  # tuple of tuples of 1-d arrays, group m lives in C^{d_m}
    per_block_bounds: tuple  # (lower, upper) per nonempty group, None for empty
    envelope: tuple  # (lower, upper)
    strict_envelope: bool


def make_subspace_spec(groups, envelope: Optional[tuple] = None) -> SubspaceFrameSpec:
    """Compute per-block bounds and validate them against the envelope."""
    frozen = []
    bounds = []
    for gi, group in enumerate(groups):
        vecs = [np.asarray(v).ravel() for v in group]
        dims = {v.shape[0] for v in vecs}
        if len(dims) > 1:
            raise ShapeMismatch(f"group {gi + 1} mixes vector lengths {sorted(dims)}")
        if not vecs or vecs[0].shape[0] == 0:
            frozen.append(tuple())
            bounds.append(None)
            continue
        dm = vecs[0].shape[0]
        op = np.zeros((dm, dm), dtype=np.result_type(np.float64, *(v.dtype for v in vecs)))
        fixed = []
        for v in vecs:
            v = v.astype(op.dtype, copy=True)
            op += np.outer(v, v.conj())
            v.setflags(write=False)
            fixed.append(v)
        w = np.linalg.eigvalsh(op)
        bounds.append((float(w[0]), float(w[-1])))
        frozen.append(tuple(fixed))
    present = [b for b in bounds if b is not None]
    if envelope is None:
        if not present:
            envelope = (1.0, 1.0)
        else:
            envelope = (min(b[0] for b in present), max(b[1] for b in present))
    lo, hi = float(envelope[0]), float(envelope[1])
    if lo <= 0:
        raise EnvelopeViolation(f"envelope lower bound must be positive, got {lo}")
    for gi, b in enumerate(bounds):
        if b is None:
            continue
        if not (lo <= b[0] + CHECK_EPS and b[1] <= hi + CHECK_EPS):
            raise EnvelopeViolation(
                f"group {gi + 1} bounds ({b[0]:.6g}, {b[1]:.6g}) escape the"
                f" envelope ({lo:.6g}, {hi:.6g})"
            )
    return SubspaceFrameSpec(
        groups=tuple(frozen),
        per_block_bounds=tuple(bounds),
        envelope=(lo, hi),
        strict_envelope=lo < hi,
    )


def onb_families(dims: Sequence[int], scale: float = 1.0) -> SubspaceFrameSpec:
    """Canonical (optionally scaled) orthonormal bases of each coefficient space."""
    groups = []
    for dm in dims:
        groups.append([scale * np.eye(int(dm))[j] for j in range(int(dm))])
    return make_subspace_spec(groups, envelope=(scale**2, scale**2))


def induced_vectors(frame: GFrame, spec: SubspaceFrameSpec) -> VectorFamily:
    """Pull the per-block vectors back through the block adjoints."""
    if len(spec.groups) != frame.n_blocks:
        raise LengthMismatch(
            f"spec has {len(spec.groups)} groups, family has {frame.n_blocks} blocks"
        )
    groups = []
    for i, (block, group) in enumerate(zip(frame.blocks, spec.groups)):
        adj = block.conj().T
        vecs = []
        for v in group:
            if v.shape[0] != block.shape[0]:
                raise ShapeMismatch(
                    f"group {i + 1} vector length {v.shape[0]} does not match"
                    f" block rows {block.shape[0]}"
                )
            vecs.append(adj @ v)
        groups.append(vecs)
    return make_vector_family(frame.domain_dim, groups)


def vector_frame_operator(family: VectorFamily) -> np.ndarray:
    """Sum of rank-one contributions of all vectors."""
    d = family.domain_dim
    dtype = np.result_type(np.float64, *(v.dtype for v in family.flat)) if family.flat else np.float64
    op = np.zeros((d, d), dtype=dtype)
    for v in family.flat:
        op += np.outer(v, v.conj())
    return op


def frame_bounds_vectors(family: VectorFamily, tol: float = DEFAULT_TOL) -> BoundsReport:
    """Optimal ordinary-frame bounds of the vector family."""
    eig = linalg.hermitian_eig(vector_frame_operator(family))
    lower = float(eig.eigenvalues[0])
    upper = float(eig.eigenvalues[-1])
    threshold = tol * upper
    return BoundsReport(
        lower=lower,
        upper=upper,
        witness_low=eig.eigenvectors[:, 0],
        witness_high=eig.eigenvectors[:, -1],
        is_frame=lower > threshold,
        threshold=threshold,
    )


def _synthesis(family: VectorFamily) -> np.ndarray:
    vecs = family.flat
    if not vecs:
        return np.zeros((family.domain_dim, 0))
    return np.column_stack(vecs)


def is_riesz_basis_vectors(family: VectorFamily, tol: float = DEFAULT_TOL) -> RieszReport:
    """Riesz test on the synthesis matrix of the flattened family."""
    t = _synthesis(family)
    count = t.shape[1]
    if count == 0:
        return RieszReport(False, 0.0, 0.0, 0, 0.0)
    s, _, _ = linalg.svd(t)
    upper = float(s[0] ** 2)
    lower = 0.0 if count > family.domain_dim else float(s[-1] ** 2)
    min_sv = float(s[-1]) if count <= family.domain_dim else 0.0
    ok = count == family.domain_dim and lower > tol * upper
    return RieszReport(ok, lower, upper, count, min_sv)


def is_onb_vectors(family: VectorFamily, tol: float = DEFAULT_TOL) -> OnbReport:
    """Orthonormal-basis test: Gram and frame operator both equal the identity."""
    t = _synthesis(family)
    count = t.shape[1]
    gram = linalg.frobenius(t.conj().T @ t - np.eye(count))
    parseval = linalg.frobenius(t @ t.conj().T - np.eye(family.domain_dim))
    upper = float(np.linalg.norm(t, 2) ** 2) if t.size else 0.0
    abs_tol = tol * max(1.0, upper)
    zero = None
    for gi, group in enumerate(family.groups):
        for vi, v in enumerate(group):
            if float(np.linalg.norm(v)) <= abs_tol:
                zero = (gi + 1, vi + 1)
                break
        if zero:
            break
    ok = gram <= abs_tol and parseval <= abs_tol and zero is None
    return OnbReport(ok, gram, parseval, zero)


def _group_grams(family: VectorFamily) -> np.ndarray:
    d = family.domain_dim
    dtype = np.result_type(np.float64, *(v.dtype for v in family.flat)) if family.flat else np.float64
    out = np.zeros((family.n_groups, d, d), dtype=dtype)
    for gi, group in enumerate(family.groups):
        for v in group:
            out[gi] += np.outer(v, v.conj())
    return out


def universal_bounds_vectors(
    first: VectorFamily,
    second: VectorFamily,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> UniversalReport:
    """Exhaustive universal bounds where selections move whole groups.

    All vectors coming from one block index travel together, matching the
    double-sum structure of the block-level weaving.
    """
    if first.n_groups != second.n_groups:
        raise LengthMismatch(
            f"{first.n_groups} groups versus {second.n_groups}"
        )
    if first.domain_dim != second.domain_dim:
        raise ShapeMismatch("domain dimensions differ")
    n = first.n_groups
    limit = effective_cap(cap)
    if n > limit:
        raise TooManyBlocks(f"{n} groups exceeds exhaustive cap {limit}")
    p = _group_grams(first)
    q = _group_grams(second)
    dtype = np.result_type(p.dtype, q.dtype)
    base = np.ascontiguousarray(q.sum(axis=0).astype(dtype))
    deltas = np.ascontiguousarray((p - q).astype(dtype))
    lower, amin, upper, amax = _kernels.weaving_scan(base, deltas)
    b1 = float(np.linalg.eigvalsh(p.sum(axis=0))[-1])
    b2 = float(np.linalg.eigvalsh(q.sum(axis=0))[-1])
    threshold = tol * max(b1, b2)
    return UniversalReport(
        lower=lower,
        upper=upper,
        argmin=WeavingSelection(n, amin),
        argmax=WeavingSelection(n, amax),
        woven=lower > threshold,
        method="exhaustive",
        subsets_examined=1 << n,
        threshold=threshold,
    )


def check_operator_identity(frame: GFrame, tol: float = 1e-12) -> VerificationRecord:
    """The block frame operator equals the induced-vector frame operator.

    Both are the same sum of rank-one terms, so the entrywise difference must
    sit at rounding level, and the Riesz and orthonormality verdicts computed
    on either side must agree.
    """
    spec = onb_families(frame.block_rows)
    vectors = induced_vectors(frame, spec)
    s_blocks = frame_operator(frame).s
    s_vectors = vector_frame_operator(vectors)
    diff = float(np.max(np.abs(s_blocks - s_vectors))) if s_blocks.size else 0.0
    riesz_b = is_g_riesz_basis(frame).is_riesz
    riesz_v = is_riesz_basis_vectors(vectors).is_riesz
    onb_b = is_g_orthonormal_basis(frame).is_onb
    onb_v = is_onb_vectors(vectors).is_onb
    ok = diff <= tol and riesz_b == riesz_v and onb_b == onb_v
    return VerificationRecord(
        name="operator-identity",
        passed=ok,
        computed={
            "max_entry_difference": diff,
            "riesz_blocks": riesz_b,
            "riesz_vectors": riesz_v,
            "onb_blocks": onb_b,
            "onb_vectors": onb_v,
        },
        expected={"max_entry_difference_at_most": tol, "verdicts_match": True},
    )


def check_weaving_transfer(
    first: GFrame,
    second: GFrame,
    spec_first: SubspaceFrameSpec,
    spec_second: SubspaceFrameSpec,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """Woven-ness transfers between block level and induced-vector level.

    The verdicts must agree, and when both sides are woven the optimal
    universal bounds satisfy the four envelope-scaled inequalities coming
    from the per-block frame bounds.
    """
    a1, b1 = spec_first.envelope
    a2, b2 = spec_second.envelope
    vf = induced_vectors(first, spec_first)
    vg = induced_vectors(second, spec_second)
    g_rep = universal_bounds_exhaustive(first, second, tol, cap)
    v_rep = universal_bounds_vectors(vf, vg, tol, cap)
    computed = {
        "block_woven": g_rep.woven,
        "vector_woven": v_rep.woven,
        "block_bounds": (g_rep.lower, g_rep.upper),
        "vector_bounds": (v_rep.lower, v_rep.upper),
    }
    ok = g_rep.woven == v_rep.woven
    detail = ""
    if not spec_first.strict_envelope or not spec_second.strict_envelope:
        detail = "tight envelope (equal lower and upper) accepted but flagged"
    if ok and g_rep.woven:
        a_g, b_g = g_rep.lower, g_rep.upper
        a_v, b_v = v_rep.lower, v_rep.upper
        ok = (
            a_v >= a_g * min(a1, a2) - CHECK_EPS
            and b_v <= b_g * max(b1, b2) + CHECK_EPS
            and a_g >= a_v / max(b1, b2) - CHECK_EPS
            and b_g <= b_v / min(a1, a2) + CHECK_EPS
        )
    return VerificationRecord(
        name="weaving-transfer",
        passed=ok,
        computed=computed,
        expected={
            "verdicts_match": True,
            "envelope_first": (a1, b1),
            "envelope_second": (a2, b2),
        },
        detail=detail,
    )
