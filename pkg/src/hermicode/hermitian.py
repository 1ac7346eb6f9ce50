"""Hermitian forms on F_{t^2}^N and the orthogonality geometry they induce.

A hermitian form is stored as its matrix M with M* = M, where * is the
conjugate transpose for the involution x -> x^t.  Evaluation is
H(x, y) = X* M Y: semi-linear in x, linear in y.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .gf import FieldCtx


_POLAR_CHECK_LIMIT = 4096


class NotHermitianError(ValueError):
    pass


class Subspace:
    """Subspace of F^dim stored by its reduced-echelon basis.

    Two subspaces are equal exactly when their bases are equal.
    """

    def __init__(self, ctx: FieldCtx, dim: int, vectors=()):
        self.ctx = ctx
        self.dim = dim
        vecs = np.array(vectors, dtype=np.int64).reshape(-1, dim)
        self.basis = linalg.row_basis(ctx, vecs)
        self.basis.setflags(write=False)

    @classmethod
    def whole(cls, ctx: FieldCtx, dim: int) -> Subspace:
        return cls(ctx, dim, np.eye(dim, dtype=np.int64))

    @classmethod
    def zero(cls, ctx: FieldCtx, dim: int) -> Subspace:
        return cls(ctx, dim)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.dim)
        return linalg.rank(self.ctx, np.vstack([self.basis, v])) == self.dimension

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.ctx, self.dim, np.vstack([self.basis, other.basis]))

    def annihilator(self) -> Subspace:
        """{x : v . x = 0 for all v in self} for the plain dot product."""
        return Subspace(self.ctx, self.dim, linalg.nullspace(self.ctx, self.basis, self.dim))

    def __and__(self, other: Subspace) -> Subspace:
        return (self.annihilator() + other.annihilator()).annihilator()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dimension} in {self.dim}, basis={self.basis.tolist()})"


@dataclass(frozen=True, eq=False)
class HermitianForm:
    ctx: FieldCtx
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("a hermitian form needs a square matrix")
        if not np.array_equal(linalg.conj_transpose(self.ctx, m), m):
            raise NotHermitianError("matrix is not hermitian (M* != M)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def evaluate(self, x, y):
        """H(x, y) = X* M Y; x and y may carry leading batch axes."""
        ctx = self.ctx
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if x.shape[-1] != self.n or y.shape[-1] != self.n:
            raise ValueError(f"vectors must have length {self.n}")
        my = ctx.dot(self.matrix, y[..., None, :])
        return ctx.dot(ctx.conj(x), my)

    def quad(self, x):
        """q(x) = H(x, x), an element of F_t."""
        return self.evaluate(x, x)

    def kernel(self) -> Subspace:
        # H(x, .) = 0  <=>  M* x = 0  <=>  M x = 0
        return Subspace(self.ctx, self.n, linalg.nullspace(self.ctx, self.matrix))

    def rank(self) -> int:
        return linalg.rank(self.ctx, self.matrix)

    def is_degenerate(self) -> bool:
        return self.rank() < self.n

    def __add__(self, other: HermitianForm) -> HermitianForm:
        return HermitianForm(self.ctx, self.ctx.add(self.matrix, other.matrix))

    def scale(self, c: int) -> HermitianForm:
        """c * H for c in F_t (other scalars break hermitian symmetry)."""
        return HermitianForm(self.ctx, self.ctx.mul(c, self.matrix))

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.ctx is other.ctx and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def to_list(self) -> list[list[int]]:
        return self.matrix.tolist()

    def __repr__(self):
        return f"HermitianForm({self.matrix.tolist()})"


def eval_H(H: HermitianForm, x, y):
    return H.evaluate(x, y)


def change_basis(H: HermitianForm, P) -> HermitianForm:
    """Matrix of H in the basis given by the columns of P: P* M P."""
    ctx = H.ctx
    P = np.asarray(P, dtype=np.int64)
    if not linalg.is_invertible(ctx, P):
        raise ValueError("change of basis matrix is singular")
    return HermitianForm(ctx, linalg.matmul(ctx, linalg.conj_transpose(ctx, P), linalg.matmul(ctx, H.matrix, P)))


def kernel_rank(H: HermitianForm) -> tuple[Subspace, int]:
    ker = H.kernel()
    return ker, H.n - ker.dimension


def diagonal_form(ctx: FieldCtx, n: int, rho: int) -> HermitianForm:
    """diag(1, ..., 1, 0, ..., 0) with rho ones."""
    if not 0 <= rho <= n:
        raise ValueError(f"rank {rho} out of range for dimension {n}")
    m = np.zeros((n, n), dtype=np.int64)
    m[np.arange(rho), np.arange(rho)] = 1
    return HermitianForm(ctx, m)


def orthogonalize(H: HermitianForm) -> tuple[np.ndarray, list[int]]:
    """H-orthogonal basis with H(e_i, e_i) in {0, 1}.

    Returns ``(P, diag)`` where the columns of P are the basis vectors,
    P* M P = diag(diag), and the ones come first.  Each step picks the first
    non-isotropic vector of the current subspace in enumeration order,
    normalises it with a norm preimage, and recurses on its orthogonal
    hyperplane.  A subspace of isotropic vectors carries the zero form.
    """
    ctx, n = H.ctx, H.n
    els = ctx.elements("t2")
    current = np.eye(n, dtype=np.int64)  # rows span the remaining subspace
    found: list[np.ndarray] = []
    while current.shape[0]:
        k = current.shape[0]
        x = None
        for coeffs in itertools.product(els, repeat=k):
            if not any(coeffs):
                continue
            cand = linalg.matmul(ctx, np.array(coeffs, dtype=np.int64), current)
            if H.quad(cand) != 0:
                x = cand
                break
        if x is None:
            break
        b = H.quad(x)
        a = ctx.norm_preimage(b)
        found.append(np.asarray(ctx.div(x, a)))
        # y = c . current with H(x, y) = sum_j c_j H(x, current_j) = 0
        hx = np.asarray(H.evaluate(x, current)).reshape(1, k)
        coeff_basis = linalg.nullspace(ctx, hx, k)
        current = linalg.matmul(ctx, coeff_basis, current) if coeff_basis.size else coeff_basis.reshape(0, n)
    rest = [row for row in current]
    cols = found + rest
    P = np.array(cols, dtype=np.int64).T.reshape(n, n)
    return P, [1] * len(found) + [0] * len(rest)


def polar_form(ctx: FieldCtx, q: Callable[[np.ndarray], int], n: int) -> HermitianForm:
    """Recover the hermitian form H with H(x, x) = q(x) by polarization.

    H(x,y) = 1/4 [q(x+y) - q(x-y)] + 1/(2(alpha - conj alpha)) [q(x + alpha y) - q(x + conj(alpha) y)],
    evaluated at pairs of standard basis vectors.
    """
    alpha = ctx.alpha
    abar = ctx.conj(alpha)
    quarter = ctx.inv(ctx.scalar(4))
    c2 = ctx.inv(ctx.mul(ctx.scalar(2), ctx.sub(alpha, abar)))
    eye = np.eye(n, dtype=np.int64)
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            x, y = eye[i], eye[j]
            sym = ctx.sub(q(ctx.add(x, y)), q(ctx.sub(x, y)))
            skew = ctx.sub(q(ctx.add(x, ctx.mul(alpha, y))), q(ctx.add(x, ctx.mul(abar, y))))
            m[i, j] = ctx.add(ctx.mul(quarter, sym), ctx.mul(c2, skew))
    try:
        H = HermitianForm(ctx, m)
    except NotHermitianError:
        raise NotHermitianError("q is not a quadratic hermitian form: its polar form is not hermitian") from None
    # the polar form must give back q; exhaustive on small spaces, a fixed sample otherwise
    if ctx.q**n <= _POLAR_CHECK_LIMIT:
        pts = ctx.points(n, "t2")
    else:
        pts = np.random.default_rng(0).choice(ctx.elements("t2"), size=(_POLAR_CHECK_LIMIT, n))
    if any(H.quad(x) != q(x) for x in pts):
        raise NotHermitianError("q is not a quadratic hermitian form: H(x, x) != q(x)")
    return H


def are_equivalent(H1: HermitianForm, H2: HermitianForm) -> bool:
    if H1.n != H2.n:
        raise ValueError("forms live on spaces of different dimension")
    return H1.rank() == H2.rank()


def orth_complement(H: HermitianForm, F: Subspace) -> Subspace:
    """F^perp = {x : H(x, y) = 0 for all y in F}."""
    ctx = H.ctx
    if F.dim != H.n:
        raise ValueError("subspace and form dimensions differ")
    if F.dimension == 0:
        return Subspace.whole(ctx, H.n)
    # H(x, f) = sum_i conj(x_i) (M f)_i = 0  <=>  sum_i x_i conj((M f)_i) = 0
    mf = linalg.matmul(ctx, H.matrix, F.basis.T)
    return Subspace(ctx, H.n, linalg.nullspace(ctx, linalg.conj_transpose(ctx, mf), H.n))


def is_isotropic(H: HermitianForm, F: Subspace) -> bool:
    """True when F meets F^perp outside 0."""
    return (F & orth_complement(H, F)).dimension > 0


def is_isotropic_vector(H: HermitianForm, x) -> bool:
    return H.quad(x) == 0


def hermitian_basis(ctx: FieldCtx, n: int) -> list[HermitianForm]:
    """F_t-basis of the N^2-dimensional space of hermitian N x N matrices:
    E_ii, then E_ij + E_ji and alpha E_ij + conj(alpha) E_ji for i < j."""
    out = []
    for i in range(n):
        m = np.zeros((n, n), dtype=np.int64)
        m[i, i] = 1
        out.append(HermitianForm(ctx, m))
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = m[j, i] = 1
            out.append(HermitianForm(ctx, m))
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = ctx.alpha
            m[j, i] = ctx.conj(ctx.alpha)
            out.append(HermitianForm(ctx, m))
    return out


def random_hermitian(ctx: FieldCtx, n: int, rng: np.random.Generator) -> HermitianForm:
    ft, ft2 = ctx.elements("t"), ctx.elements("t2")
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        m[i, i] = rng.choice(ft)
        for j in range(i + 1, n):
            m[i, j] = rng.choice(ft2)
            m[j, i] = ctx.conj(int(m[i, j]))
    return HermitianForm(ctx, m)


def random_invertible(ctx: FieldCtx, n: int, rng: np.random.Generator) -> np.ndarray:
    ft2 = ctx.elements("t2")
    while True:
        P = rng.choice(ft2, size=(n, n))
        if linalg.is_invertible(ctx, P):
            return P


def hermitian_from_combination(ctx: FieldCtx, forms: Sequence[HermitianForm], coeffs) -> HermitianForm:
    """sum_i coeffs[i] * forms[i] with coefficients in F_t."""
    n = forms[0].n
    m = np.zeros((n, n), dtype=np.int64)
    for c, f in zip(coeffs, forms):
        if c:
            m = ctx.add(m, ctx.mul(int(c), f.matrix))
    return HermitianForm(ctx, m)
