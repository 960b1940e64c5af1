"""Hot subset-enumeration kernels with a numba fast path and a numpy fallback.

A weaving of two block families is encoded by a bitmask: bit ``i`` set means
block position ``i`` (0-based) is drawn from the first family.  Given

    base   = sum of the second family's d x d Gram contributions,
    deltas = per-block difference of Gram contributions (first minus second),

the mixed frame operator for mask ``s`` is ``base + sum(deltas[i] for i in s)``
and the kernels report extreme eigenvalues across masks.

Backend selection: numba is used when importable unless the environment
variable ``GWEAVE_DISABLE_NUMBA`` is set to a truthy value, in which case the
pure-numpy batched path runs instead.  Both backends apply identical
reductions: argmin ties resolve to the smallest mask, argmax ties to the
largest, so results do not depend on the backend for exactly tied spectra.
"""

from __future__ import annotations

import os

import numpy as np

ENV_DISABLE = "GWEAVE_DISABLE_NUMBA"
_CHUNK = 2048

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False


def _disabled_by_env() -> bool:
    return os.environ.get(ENV_DISABLE, "").strip().lower() in {"1", "true", "yes", "on"}


def backend() -> str:
    """Name of the backend the dispatchers will use right now."""
    return "numba" if (HAVE_NUMBA and not _disabled_by_env()) else "numpy"


def _mask_bits(masks: np.ndarray, n_blocks: int) -> np.ndarray:
    return (masks[:, np.newaxis] >> np.arange(n_blocks, dtype=np.int64)) & 1


def weaving_scan_numpy(base: np.ndarray, deltas: np.ndarray):
    """Full scan of all 2**n masks, batched over chunks of masks."""
    n = deltas.shape[0]
    total = 1 << n
    lower = np.inf
    upper = -np.inf
    argmin_mask = 0
    argmax_mask = 0
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        bits = _mask_bits(masks, n).astype(base.dtype)
        stack = base[np.newaxis] + np.einsum("sm,mij->sij", bits, deltas)
        w = np.linalg.eigvalsh(stack)
        lo = w[:, 0]
        hi = w[:, -1]
        i = int(np.argmin(lo))
        if lo[i] < lower:
            lower = float(lo[i])
            argmin_mask = int(masks[i])
        j = len(hi) - 1 - int(np.argmax(hi[::-1]))
        if hi[j] >= upper:
            upper = float(hi[j])
            argmax_mask = int(masks[j])
    return lower, argmin_mask, upper, argmax_mask


def mask_spectra_numpy(base: np.ndarray, deltas: np.ndarray, masks: np.ndarray):
    """Extreme eigenvalues of the mixed operator for each given mask."""
    n = deltas.shape[0]
    masks = np.asarray(masks, dtype=np.int64)
    lo = np.empty(len(masks))
    hi = np.empty(len(masks))
    for start in range(0, len(masks), _CHUNK):
        part = masks[start : start + _CHUNK]
        bits = _mask_bits(part, n).astype(base.dtype)
        stack = base[np.newaxis] + np.einsum("sm,mij->sij", bits, deltas)
        w = np.linalg.eigvalsh(stack)
        lo[start : start + _CHUNK] = w[:, 0]
        hi[start : start + _CHUNK] = w[:, -1]
    return lo, hi


if HAVE_NUMBA:

    @njit(cache=True)
    def _scan_jit(base, deltas, total, n):  # pragma: no cover - compiled
        # Serial ascending scan; the mask loop is trivially parallelizable
        # but thread-layer overhead beats the gain at desk scale.
        lower = np.inf
        upper = -np.inf
        argmin_mask = 0
        argmax_mask = 0
        s = np.empty_like(base)
        for mask in range(total):
            s[:, :] = base
            for i in range(n):
                if (mask >> i) & 1:
                    s += deltas[i]
            w = np.linalg.eigvalsh(s)
            lo = w[0]
            hi = w[w.shape[0] - 1]
            if lo < lower:
                lower = lo
                argmin_mask = mask
            if hi >= upper:
                upper = hi
                argmax_mask = mask
        return lower, argmin_mask, upper, argmax_mask

    @njit(cache=True)
    def _spectra_jit(base, deltas, masks, n):  # pragma: no cover - compiled
        lo = np.empty(masks.shape[0])
        hi = np.empty(masks.shape[0])
        for k in range(masks.shape[0]):
            mask = masks[k]
            s = base.copy()
            for i in range(n):
                if (mask >> i) & 1:
                    s += deltas[i]
            w = np.linalg.eigvalsh(s)
            lo[k] = w[0]
            hi[k] = w[w.shape[0] - 1]
        return lo, hi

    def weaving_scan_numba(base, deltas):
        n = deltas.shape[0]
        lower, amin, upper, amax = _scan_jit(
            np.ascontiguousarray(base), np.ascontiguousarray(deltas), 1 << n, n
        )
        return float(lower), int(amin), float(upper), int(amax)

    def mask_spectra_numba(base, deltas, masks):
        masks = np.ascontiguousarray(np.asarray(masks, dtype=np.int64))
        return _spectra_jit(
            np.ascontiguousarray(base),
            np.ascontiguousarray(deltas),
            masks,
            deltas.shape[0],
        )

else:  # pragma: no cover - exercised only without numba installed

    def weaving_scan_numba(base, deltas):
        raise RuntimeError("numba is not available")

    def mask_spectra_numba(base, deltas, masks):
        raise RuntimeError("numba is not available")


def weaving_scan(base: np.ndarray, deltas: np.ndarray):
    """Dispatch the full 2**n scan to the active backend.

    Returns ``(lower, argmin_mask, upper, argmax_mask)``.
    """
    if deltas.shape[0] > 62:
        raise OverflowError("masks beyond 62 blocks do not fit in int64")
    if backend() == "numba":
        return weaving_scan_numba(base, deltas)
    return weaving_scan_numpy(base, deltas)


def mask_spectra(base: np.ndarray, deltas: np.ndarray, masks):
    """Dispatch per-mask extreme eigenvalues to the active backend."""
    if backend() == "numba":
        return mask_spectra_numba(base, deltas, masks)
    return mask_spectra_numpy(base, deltas, masks)
