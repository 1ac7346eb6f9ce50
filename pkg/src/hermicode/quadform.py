"""Descent of a hermitian form on F_{t^2}^N to a quadratic form on F_t^{2N}.

iota pairs coordinates, (x_1, ..., x_2N) -> (x_1 + alpha x_2, ..., x_{2N-1} + alpha x_2N),
and f(x) = H(iota x, iota x).  The bilinear form B(x, y) = f(x+y) - f(x) - f(y)
equals Tr_{F_t^2/F_t} H(iota x, iota y).  With the plain dot product on
F_t^{2N}, the endomorphism T with B(x, y) = T(x) . y has the matrix of B.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import FieldCtx
from .hermitian import HermitianForm, Subspace, diagonal_form


def iota(ctx: FieldCtx, x) -> np.ndarray:
    """F_t^{2N} -> F_{t^2}^N; batched over leading axes."""
    x = np.asarray(x, dtype=np.int64)
    if x.shape[-1] % 2:
        raise ValueError("iota needs an even number of coordinates")
    ctx.check_in(x, "t")
    return np.asarray(ctx.add(x[..., 0::2], ctx.mul(ctx.alpha, x[..., 1::2])))


def iota_inv(ctx: FieldCtx, y) -> np.ndarray:
    """Inverse of :func:`iota`: y = u + alpha v with u, v in F_t."""
    y = np.asarray(y, dtype=np.int64)
    alpha = ctx.alpha
    # conj(y) = u + conj(alpha) v, so v = (y - conj y) / (alpha - conj alpha)
    v = ctx.div(ctx.sub(y, ctx.conj(y)), ctx.sub(alpha, ctx.conj(alpha)))
    u = ctx.sub(y, ctx.mul(alpha, v))
    out = np.empty(y.shape[:-1] + (2 * y.shape[-1],), dtype=np.int64)
    out[..., 0::2] = u
    out[..., 1::2] = v
    return out


@dataclass(frozen=True, eq=False)
class QuadHermForm:
    """f(x) = H(iota x, iota x) on F_t^{2N}, with its bilinear form B.

    ``rho`` is rank(H); rank(B) = 2 rho.
    """

    H: HermitianForm
    B: np.ndarray
    rho: int

    @classmethod
    def from_hermitian(cls, H: HermitianForm) -> QuadHermForm:
        ctx = H.ctx
        eye = np.eye(2 * H.n, dtype=np.int64)
        y = iota(ctx, eye)
        h = H.evaluate(y[:, None, :], y[None, :, :])
        B = np.asarray(ctx.trace(h, "t2", "t"))
        B.setflags(write=False)
        return cls(H, B, H.rank())

    @property
    def ctx(self) -> FieldCtx:
        return self.H.ctx

    @property
    def dim(self) -> int:
        return 2 * self.H.n

    def __call__(self, x):
        return f_eval(self, x)

    @functools.cached_property
    def values(self) -> np.ndarray:
        """f at every point of F_t^{2N}, in ``ctx.points`` order."""
        vals = np.asarray(f_eval(self, self.ctx.points(self.dim, "t")))
        vals.setflags(write=False)
        return vals

    @property
    def T(self) -> np.ndarray:
        return self.B

    def scale(self, c: int) -> QuadHermForm:
        """c f for c in F_t*; the bilinear form scales the same way."""
        return QuadHermForm.from_hermitian(self.H.scale(c))


def f_eval(q: QuadHermForm, x):
    x = np.asarray(x, dtype=np.int64)
    if x.shape[-1] != q.dim:
        raise ValueError(f"points must have {q.dim} coordinates")
    y = iota(q.ctx, x)
    return q.H.quad(y)


def bilinear_B(q: QuadHermForm, x, y):
    """f(x + y) - f(x) - f(y)."""
    ctx = q.ctx
    return ctx.sub(ctx.sub(f_eval(q, ctx.add(x, y)), f_eval(q, x)), f_eval(q, y))


def bilinear_B_trace(q: QuadHermForm, x, y):
    """Tr_{F_t^2/F_t} H(iota x, iota y)."""
    ctx = q.ctx
    return ctx.trace(q.H.evaluate(iota(ctx, x), iota(ctx, y)), "t2", "t")


@dataclass(frozen=True)
class TMap:
    T: np.ndarray
    kernel: Subspace
    image: Subspace
    kernel_perp: Subspace  # (Ker B)^perp for the dot product


def t_map(q: QuadHermForm) -> TMap:
    ctx, d = q.ctx, q.dim
    T = q.T
    ker = Subspace(ctx, d, linalg.nullspace(ctx, T))
    # columns of T span the image of x -> T x
    image = Subspace(ctx, d, T.T)
    return TMap(T, ker, image, ker.annihilator())


def apply_T(q: QuadHermForm, x):
    """T(x) as the vector with T(x) . y = B(x, y)."""
    return linalg.matmul(q.ctx, np.asarray(x, dtype=np.int64), q.T)


def solve_T(q: QuadHermForm, v) -> np.ndarray | None:
    """Some u with T(u) = v (free coordinates zero), or None if v is not in Im T."""
    return linalg.solve(q.ctx, q.T, v)


def standard_form(ctx: FieldCtx, N: int, rho: int) -> QuadHermForm:
    """Descent of diag(1, ..., 1, 0, ..., 0): f(x) = sum_{i <= rho} N(x_{2i-1} + alpha x_{2i})."""
    return QuadHermForm.from_hermitian(diagonal_form(ctx, N, rho))
