"""Weavings of two block families: construction, universal bounds, checks.

A weaving picks block ``m`` from the first family when ``m`` lies in the
selection and from the second family otherwise.  Universal bounds are the
extrema over all selections of the mixed frame operator spectrum; computed
exhaustively up to a configurable cap and by seeded sampling with one-bit
local search beyond it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels, linalg
from .errors import (
    LengthMismatch,
    NotAFrame,
    NotUnitary,
    NotWoven,
    ShapeMismatch,
    TooManyBlocks,
)
from .gframe import (
    DEFAULT_TOL,
    BoundsReport,
    GFrame,
    block_grams,
    canonical_dual,
    frame_operator,
    is_g_orthonormal_basis,
    is_g_riesz_basis,
    new_gframe,
    optimal_bounds,
)

DEFAULT_EXHAUSTIVE_CAP = 20
ENV_CAP = "GWEAVE_EXHAUSTIVE_CAP"

# Margin used by the inequality checks below; the underlying statements are
# exact, the margin only absorbs floating-point noise.
CHECK_EPS = 1e-9


def effective_cap(cap: Optional[int] = None) -> int:
    """Exhaustive enumeration cap: explicit argument, else env override, else 20."""
    if cap is not None:
        return int(cap)
    raw = os.environ.get(ENV_CAP, "").strip()
    if not raw:
        return DEFAULT_EXHAUSTIVE_CAP
    try:
        return int(raw)
    except ValueError:
        raise TooManyBlocks(f"{ENV_CAP} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class WeavingSelection:
    """Subset of block positions encoded as a bitmask.

    Bit ``i`` (0-based) set means block ``i + 1`` in 1-based reporting is
    drawn from the first family.  ``indices`` and the printed forms are
    1-based to match the rest of the reporting surface.
    """

    n_blocks: int
    mask: int

    def __post_init__(self):
        if self.n_blocks < 1:
            raise LengthMismatch("selection needs at least one block")
        if not 0 <= self.mask < (1 << self.n_blocks):
            raise ShapeMismatch(
                f"mask {self.mask:#x} does not fit in {self.n_blocks} bits"
            )

    @classmethod
    def from_indices(cls, n_blocks: int, indices) -> "WeavingSelection":
        mask = 0
        for ix in indices:
            if not 1 <= ix <= n_blocks:
                raise ShapeMismatch(f"index {ix} outside 1..{n_blocks}")
            mask |= 1 << (ix - 1)
        return cls(n_blocks, mask)

    @property
    def indices(self) -> tuple:
        return tuple(
            i + 1 for i in range(self.n_blocks) if (self.mask >> i) & 1
        )

    @property
    def complement(self) -> "WeavingSelection":
        full = (1 << self.n_blocks) - 1
        return WeavingSelection(self.n_blocks, self.mask ^ full)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def contains(self, index: int) -> bool:
        return bool((self.mask >> (index - 1)) & 1)

    def bitmask_string(self) -> str:
        """Binary rendering where bit position m stands for block m (1-based).

        Bit position 0 is printed but never set, so block 1 is the
        second digit from the right.
        """
        bits = "".join(
            "1" if self.contains(m) else "0" for m in range(self.n_blocks, 0, -1)
        )
        return "0b" + bits + "0"

    def __str__(self) -> str:
        inner = ",".join(str(i) for i in self.indices)
        return "{" + inner + "}"


def _check_pair(first: GFrame, second: GFrame):
    if first.n_blocks != second.n_blocks:
        raise LengthMismatch(
            f"{first.n_blocks} blocks versus {second.n_blocks}"
        )
    if first.domain_dim != second.domain_dim:
        raise ShapeMismatch(
            f"domain dimensions differ: {first.domain_dim} versus"
            f" {second.domain_dim}"
        )


def weave(first: GFrame, second: GFrame, selection: WeavingSelection) -> GFrame:
    """The mixed family for one selection.

    Per-block row counts may differ between the two families; a weaving only
    selects blocks, it never adds them, so matching codomains per block are
    not required.
    """
    _check_pair(first, second)
    if selection.n_blocks != first.n_blocks:
        raise LengthMismatch(
            f"selection covers {selection.n_blocks} blocks, families have"
            f" {first.n_blocks}"
        )
    blocks = [
        first.blocks[i] if selection.contains(i + 1) else second.blocks[i]
        for i in range(first.n_blocks)
    ]
    labels = None
    if first.labels is not None and second.labels is not None:
        labels = tuple(
            first.labels[i] if selection.contains(i + 1) else second.labels[i]
            for i in range(first.n_blocks)
        )
    return new_gframe(first.domain_dim, blocks, labels=labels)


def weaving_bounds(
    first: GFrame,
    second: GFrame,
    selection: WeavingSelection,
    tol: float = DEFAULT_TOL,
) -> BoundsReport:
    """Optimal bounds of one particular weaving."""
    return optimal_bounds(weave(first, second, selection), tol)


@dataclass(frozen=True)
class UniversalReport:
    lower: float
    upper: float
    argmin: WeavingSelection
    argmax: WeavingSelection
    woven: bool
    method: str  # "exhaustive" or "search"
    subsets_examined: int
    threshold: float


def _pair_kernel_inputs(first: GFrame, second: GFrame):
    p = block_grams(first)
    q = block_grams(second)
    dtype = np.result_type(p.dtype, q.dtype)
    p = p.astype(dtype, copy=False)
    q = q.astype(dtype, copy=False)
    base = np.ascontiguousarray(q.sum(axis=0))
    deltas = np.ascontiguousarray(p - q)
    return base, deltas


def _woven_threshold(first: GFrame, second: GFrame, tol: float) -> float:
    b1 = float(np.linalg.eigvalsh(block_grams(first).sum(axis=0))[-1])
    b2 = float(np.linalg.eigvalsh(block_grams(second).sum(axis=0))[-1])
    return tol * max(b1, b2)


def _scan_pair(first: GFrame, second: GFrame, tol: float) -> UniversalReport:
    n = first.n_blocks
    base, deltas = _pair_kernel_inputs(first, second)
    lower, amin, upper, amax = _kernels.weaving_scan(base, deltas)
    threshold = _woven_threshold(first, second, tol)
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


def universal_bounds_exhaustive(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> UniversalReport:
    """Exact universal bounds over all 2**n selections.

    Ties for the recorded minimizer resolve to the smallest mask; ties for
    the maximizer resolve to the largest, so the two witnesses come from
    opposite ends of the enumeration order.
    """
    _check_pair(first, second)
    limit = effective_cap(cap)
    if first.n_blocks > limit:
        raise TooManyBlocks(
            f"{first.n_blocks} blocks exceeds exhaustive cap {limit};"
            " use universal_bounds_search"
        )
    return _scan_pair(first, second, tol)


def universal_bounds_search(
    first: GFrame,
    second: GFrame,
    budget: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> UniversalReport:
    """Sampled universal bounds with one-bit local search.

    ``budget`` seeds are drawn uniformly; from each one a steepest single-bit
    descent runs on the smallest eigenvalue and an ascent on the largest.
    The reported lower value over-estimates the true universal lower bound
    and the upper value under-estimates the true upper bound.  When the
    budget covers the whole selection space the full enumeration runs
    instead and the result equals the exhaustive report.
    """
    _check_pair(first, second)
    if budget < 1:
        raise ShapeMismatch(f"budget must be at least 1, got {budget}")
    n = first.n_blocks
    if n > 62:
        raise TooManyBlocks("masks beyond 62 blocks do not fit in int64")
    total = 1 << n
    if budget >= total:
        return _scan_pair(first, second, tol)

    base, deltas = _pair_kernel_inputs(first, second)
    cache: dict = {}

    def evaluate(masks):
        new = [m for m in dict.fromkeys(masks) if m not in cache]
        if new:
            lo, hi = _kernels.mask_spectra(base, deltas, np.array(new, dtype=np.int64))
            for m, a, b in zip(new, lo, hi):
                cache[m] = (float(a), float(b))
        return [cache[m] for m in masks]

    rng = np.random.default_rng(seed)
    samples = [int(m) for m in rng.integers(0, total, size=budget)]
    evaluate(samples)

    def descend(start: int, want_min: bool) -> None:
        current = start
        value = cache[current][0 if want_min else 1]
        while True:
            neighbors = [current ^ (1 << i) for i in range(n)]
            scores = evaluate(neighbors)
            best_value = value
            best_mask = None
            for m, (lo, hi) in zip(neighbors, scores):
                v = lo if want_min else hi
                improves = v < best_value if want_min else v > best_value
                if improves:
                    best_value = v
                    best_mask = m
            if best_mask is None:
                return
            current, value = best_mask, best_value

    for s in samples:
        descend(s, want_min=True)
        descend(s, want_min=False)

    masks = np.array(sorted(cache), dtype=np.int64)
    lo = np.array([cache[int(m)][0] for m in masks])
    hi = np.array([cache[int(m)][1] for m in masks])
    i = int(np.argmin(lo))  # first occurrence: smallest mask among ties
    j = len(hi) - 1 - int(np.argmax(hi[::-1]))  # last occurrence: largest mask
    threshold = _woven_threshold(first, second, tol)
    return UniversalReport(
        lower=float(lo[i]),
        upper=float(hi[j]),
        argmin=WeavingSelection(n, int(masks[i])),
        argmax=WeavingSelection(n, int(masks[j])),
        woven=float(lo[i]) > threshold,
        method="search",
        subsets_examined=len(masks),
        threshold=threshold,
    )


@dataclass(frozen=True)
class WovenVerdict:
    woven: bool
    certificate: WeavingSelection
    report: UniversalReport


def is_woven(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    strategy: str = "exhaustive",
    budget: int = 1024,
    seed: int = 0,
    cap: Optional[int] = None,
) -> WovenVerdict:
    """Woven certification.

    Under the exhaustive strategy the verdict is exact either way.  Under the
    search strategy a negative verdict is conclusive (the certificate is a
    concrete failing selection) while a positive verdict only means no
    counterexample was found within the budget.
    """
    if strategy == "exhaustive":
        report = universal_bounds_exhaustive(first, second, tol, cap)
    elif strategy == "search":
        report = universal_bounds_search(first, second, budget, seed, tol)
    else:
        raise ShapeMismatch(f"unknown strategy {strategy!r}")
    return WovenVerdict(woven=report.woven, certificate=report.argmin, report=report)


@dataclass(frozen=True)
class VerificationRecord:
    name: str
    passed: bool
    computed: dict
    expected: dict
    detail: str = ""


def check_additive_upper_bound(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """The sum of the two upper bounds dominates every weaving's upper bound."""
    b1 = optimal_bounds(first, tol)
    b2 = optimal_bounds(second, tol)
    rep = universal_bounds_exhaustive(first, second, tol, cap)
    allowed = b1.upper + b2.upper + CHECK_EPS
    return VerificationRecord(
        name="additive-upper-bound",
        passed=rep.upper <= allowed,
        computed={"universal_upper": rep.upper},
        expected={"at_most": allowed, "upper_1": b1.upper, "upper_2": b2.upper},
    )


def check_universal_envelope(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """Universal bounds always envelop each family's own optimal bounds."""
    rep = universal_bounds_exhaustive(first, second, tol, cap)
    if not rep.woven:
        raise NotWoven(f"universal lower bound {rep.lower:.3e} below threshold")
    b1 = optimal_bounds(first, tol)
    b2 = optimal_bounds(second, tol)
    ok = (
        rep.lower <= min(b1.lower, b2.lower) + CHECK_EPS
        and rep.upper >= max(b1.upper, b2.upper) - CHECK_EPS
    )
    return VerificationRecord(
        name="universal-envelope",
        passed=ok,
        computed={"universal_lower": rep.lower, "universal_upper": rep.upper},
        expected={
            "lower_at_most": min(b1.lower, b2.lower),
            "upper_at_least": max(b1.upper, b2.upper),
        },
    )


def check_strict_sum_gap(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """Sums of per-family optimal bounds are never the optimal universal bounds."""
    rep = universal_bounds_exhaustive(first, second, tol, cap)
    if not rep.woven:
        raise NotWoven(f"universal lower bound {rep.lower:.3e} below threshold")
    b1 = optimal_bounds(first, tol)
    b2 = optimal_bounds(second, tol)
    ok = (
        rep.lower < b1.lower + b2.lower - CHECK_EPS
        and rep.upper < b1.upper + b2.upper - CHECK_EPS
    )
    return VerificationRecord(
        name="strict-sum-gap",
        passed=ok,
        computed={"universal_lower": rep.lower, "universal_upper": rep.upper},
        expected={
            "lower_strictly_below": b1.lower + b2.lower,
            "upper_strictly_below": b1.upper + b2.upper,
        },
    )


def check_dual_weaving(
    frame: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """A family and its canonical dual weave with guaranteed bounds.

    The guaranteed universal lower bound is ``min(1/(2 B1), 1/(2 B2))`` and
    the guaranteed upper bound is ``B1 + B2`` for the two upper bounds.
    """
    bounds = optimal_bounds(frame, tol)
    if not bounds.is_frame:
        raise NotAFrame("dual weaving requires a frame")
    dual = canonical_dual(frame, tol)
    b1 = bounds.upper
    b2 = optimal_bounds(dual, tol).upper
    rep = universal_bounds_exhaustive(frame, dual, tol, cap)
    floor = min(1.0 / (2.0 * b1), 1.0 / (2.0 * b2))
    ok = rep.lower >= floor - CHECK_EPS and rep.upper <= b1 + b2 + CHECK_EPS
    return VerificationRecord(
        name="dual-weaving",
        passed=ok,
        computed={"universal_lower": rep.lower, "universal_upper": rep.upper},
        expected={"lower_at_least": floor, "upper_at_most": b1 + b2},
        detail=f"upper bounds: {b1:.6g} and {b2:.6g}",
    )


def check_parseval_transform_weaving(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """Composing both families with the first one's inverse-root operator keeps them woven.

    If the original pair has universal bounds (A, B), the transformed pair
    has universal bounds inside [A/B, B/A].
    """
    rep = universal_bounds_exhaustive(first, second, tol, cap)
    if not rep.woven:
        raise NotWoven(f"universal lower bound {rep.lower:.3e} below threshold")
    root = linalg.inv_sqrt_psd(frame_operator(first).s)
    t_first = new_gframe(first.domain_dim, [b @ root for b in first.blocks])
    t_second = new_gframe(second.domain_dim, [b @ root for b in second.blocks])
    rep2 = universal_bounds_exhaustive(t_first, t_second, tol, cap)
    floor = rep.lower / rep.upper
    ceil = rep.upper / rep.lower
    ok = (
        rep2.woven
        and rep2.lower >= floor - CHECK_EPS
        and rep2.upper <= ceil + CHECK_EPS
    )
    return VerificationRecord(
        name="parseval-transform-weaving",
        passed=ok,
        computed={
            "transformed_lower": rep2.lower,
            "transformed_upper": rep2.upper,
        },
        expected={"lower_at_least": floor, "upper_at_most": ceil},
        detail=f"original universal bounds ({rep.lower:.6g}, {rep.upper:.6g})",
    )


@dataclass(frozen=True)
class WeavingBasisReport:
    holds: bool
    witness: Optional[WeavingSelection]
    lower: float
    upper: float


def is_weaving_g_riesz(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> WeavingBasisReport:
    """Whether every weaving is a Riesz basis; returns the first failing selection."""
    _check_pair(first, second)
    n = first.n_blocks
    limit = effective_cap(cap)
    if n > limit:
        raise TooManyBlocks(f"{n} blocks exceeds exhaustive cap {limit}")
    lower = np.inf
    upper = -np.inf
    for mask in range(1 << n):
        sel = WeavingSelection(n, mask)
        rep = is_g_riesz_basis(weave(first, second, sel), tol)
        if not rep.is_riesz:
            return WeavingBasisReport(False, sel, rep.lower, rep.upper)
        lower = min(lower, rep.lower)
        upper = max(upper, rep.upper)
    return WeavingBasisReport(True, None, float(lower), float(upper))


def is_weaving_g_onb(
    first: GFrame,
    second: GFrame,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> WeavingBasisReport:
    """Whether every weaving is an orthonormal basis family."""
    _check_pair(first, second)
    n = first.n_blocks
    limit = effective_cap(cap)
    if n > limit:
        raise TooManyBlocks(f"{n} blocks exceeds exhaustive cap {limit}")
    for mask in range(1 << n):
        sel = WeavingSelection(n, mask)
        rep = is_g_orthonormal_basis(weave(first, second, sel), tol)
        if not rep.is_onb:
            return WeavingBasisReport(False, sel, 0.0, 0.0)
    return WeavingBasisReport(True, None, 1.0, 1.0)


def check_unitary_weaving_invariance(
    first: GFrame,
    second: GFrame,
    u,
    tol: float = DEFAULT_TOL,
    cap: Optional[int] = None,
) -> VerificationRecord:
    """Composing a weaving pair of orthonormal families with a unitary keeps the property.

    Raises :class:`NotUnitary` when either the isometry residual ``u*u - I``
    or the surjectivity residual ``u u* - I`` is too large.  When the input
    pair is not itself a weaving orthonormal pair the implication is vacuous
    and the record says so.
    """
    mat = linalg.as_matrix(u, square=True)
    d = first.domain_dim
    if mat.shape[0] != d:
        raise ShapeMismatch(f"operator is {mat.shape[0]}x{mat.shape[0]}, need {d}x{d}")
    eye = np.eye(d)
    iso = linalg.frobenius(mat.conj().T @ mat - eye)
    sur = linalg.frobenius(mat @ mat.conj().T - eye)
    abs_tol = tol * max(1.0, float(d))
    if iso > abs_tol or sur > abs_tol:
        failing = []
        if iso > abs_tol:
            failing.append(f"isometry residual {iso:.3e}")
        if sur > abs_tol:
            failing.append(f"surjectivity residual {sur:.3e}")
        raise NotUnitary("; ".join(failing))
    from .gframe import compose_right

    base = is_weaving_g_onb(first, second, tol, cap)
    composed = is_weaving_g_onb(
        compose_right(first, mat), compose_right(second, mat), tol, cap
    )
    passed = composed.holds if base.holds else True
    detail = "" if base.holds else "input pair is not a weaving orthonormal pair"
    return VerificationRecord(
        name="unitary-weaving-invariance",
        passed=passed,
        computed={
            "input_pair_holds": base.holds,
            "composed_pair_holds": composed.holds,
        },
        expected={"composed_pair_holds": True},
        detail=detail,
    )
