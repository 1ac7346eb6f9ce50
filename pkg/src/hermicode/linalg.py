"""Gaussian elimination over the ambient field.

Matrices are 2-D integer arrays of field encodings.  A matrix whose entries
all lie in a subfield stays in that subfield under every routine here, so the
same code serves F_t and F_{t^2}.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx


def matmul(ctx: FieldCtx, a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if b.ndim == 1:
        return np.asarray(ctx.dot(a, b))
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    # (..., k, 1) * (k, m) summed over k
    return np.asarray(ctx.sum(ctx.mul(a[..., :, None], b), axis=-2))


def conj_transpose(ctx: FieldCtx, a) -> np.ndarray:
    return np.asarray(ctx.conj(np.asarray(a, dtype=np.int64).T))


def rref(ctx: FieldCtx, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    m = np.array(a, dtype=np.int64)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = ctx.mul(m[r], ctx.inv(int(m[r, c])))
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = ctx.sub(m[i], ctx.mul(int(m[i, c]), m[r]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(ctx: FieldCtx, a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(ctx, a)[1])


def row_basis(ctx: FieldCtx, a) -> np.ndarray:
    """Nonzero rows of the RREF: canonical basis of the row space."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1])
    r, piv = rref(ctx, a)
    return r[: len(piv)]


def nullspace(ctx: FieldCtx, a, cols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : a x = 0}, one vector per free column."""
    a = np.asarray(a, dtype=np.int64)
    if cols is None:
        cols = a.shape[1]
    a = a.reshape(-1, cols)
    r, piv = rref(ctx, a)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = ctx.neg(int(r[i, fc]))
    return basis


def solve(ctx: FieldCtx, a, b) -> np.ndarray | None:
    """One solution of a x = b (free variables set to zero), or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    rows, cols = a.shape
    r, piv = rref(ctx, np.hstack([a, b]))
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def is_invertible(ctx: FieldCtx, a) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(ctx, a) == a.shape[0]
