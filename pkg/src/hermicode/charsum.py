"""Additive characters with exact values in Z[zeta_p].

Character values are p-th roots of unity, so every exponential sum is an
element of Z[zeta_p].  :class:`CycInt` stores such an element in the basis
1, zeta, ..., zeta^(p-2); zeta^(p-1) is rewritten as -(1 + ... + zeta^(p-2)).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx


@dataclass(frozen=True)
class CycInt:
    """Exact element of Z[zeta_p]."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"expected {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_counts(cls, p: int, counts) -> CycInt:
        """sum_k counts[k] * zeta^k for k in 0..p-1 (or any longer list, read mod p)."""
        full = np.zeros(p, dtype=object)
        for k, c in enumerate(counts):
            full[k % p] += int(c)
        return cls(p, tuple(int(c - full[p - 1]) for c in full[: p - 1]))

    @classmethod
    def integer(cls, p: int, n: int) -> CycInt:
        return cls(p, (int(n),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CycInt:
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_counts(p, counts)

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("mismatched cyclotomic rings")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycInt(self.p, tuple(int(other) * a for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prod = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[(i + j) % p] += a * b
        return CycInt.from_counts(p, prod)

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        """Complex conjugation, the Galois action zeta -> zeta^-1."""
        full = self._full()
        return CycInt.from_counts(self.p, [full[(-k) % self.p] for k in range(self.p)])

    def is_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return "CycInt(" + (" + ".join(terms) or "0") + ")"


# -- characters ---------------------------------------------------------------


def psi_exponent(ctx: FieldCtx, x, field: str = "t"):
    """Exponent c with psi(x) = zeta_p^c, i.e. Tr_{field/F_p}(x) as an integer."""
    # F_p elements encode as their constant term, so the encoding is the integer.
    return ctx.trace(x, field, "p")


def psi(ctx: FieldCtx, x: int, field: str = "t") -> CycInt:
    return CycInt.zeta(ctx.p, psi_exponent(ctx, x, field))


def exp_sum(p: int, exponents) -> CycInt:
    """sum_i zeta^exponents[i]."""
    exponents = np.asarray(exponents, dtype=np.int64).ravel()
    return CycInt.from_counts(p, np.bincount(exponents % p, minlength=p))


def character_table(ctx: FieldCtx, field: str = "s") -> np.ndarray:
    """Exponents of psi_c(x) = psi(c x); row c and column x follow ``ctx.elements(field)``."""
    els = ctx.elements(field)
    return np.asarray(psi_exponent(ctx, ctx.mul(els[:, None], els[None, :]), field))


def char_sum_linear(ctx: FieldCtx, coeffs) -> CycInt:
    """Brute-force sum over y in F_t^m of psi(l(y)) for l(y) = sum l_i y_i."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    ctx.check_in(coeffs, "t")
    pts = ctx.points(len(coeffs), "t")
    return exp_sum(ctx.p, psi_exponent(ctx, ctx.dot(pts, coeffs), "t"))


def norm_char_sum(ctx: FieldCtx, m: int) -> CycInt:
    """Brute-force sum over x in F_{t^m} of psi(N_{F_{t^m}/F_t}(x)), m in {1, 2}."""
    if m not in (1, 2):
        raise ValueError("only F_t and F_{t^2} are available in the ambient field")
    tag = "t" if m == 1 else "t2"
    norms = ctx.norm(ctx.elements(tag), tag, "t")
    return exp_sum(ctx.p, psi_exponent(ctx, norms, "t"))


def count_via_characters(
    ctx: FieldCtx,
    evaluate: Callable[[object], int],
    domain: Iterable,
    a: int,
    field: str = "s",
) -> int:
    """Number of x in domain with evaluate(x) = a, computed as
    (1/|G|) sum_{chars} sum_x chi(evaluate(x) - a) over G = (F_field, +)."""
    values = np.array([evaluate(x) for x in domain], dtype=np.int64)
    ctx.check_in(values, field)
    ctx.check_in(a, field)
    shifted = ctx.sub(values, a)
    els = ctx.elements(field)
    total = exp_sum(ctx.p, psi_exponent(ctx, ctx.mul(els[:, None], shifted[None, :]), field))
    n = int(total)
    order = ctx.order(field)
    if n % order:
        raise ArithmeticError(f"character count {n} not divisible by |G| = {order}")
    return n // order
