"""Finite field tower F_p < F_s < F_t < F_{t^2} in one ambient representation.

Every element lives in the ambient field F_{t^2} = F_p[x]/(m(x)) with
deg m = 2ab.  An element is encoded as the integer sum(c_i * p**i) of the
coefficients of its polynomial representative (constant term first), so
encodings run over 0 .. t^2 - 1.  Subfields are Frobenius fixed points of the
ambient field; there is no separate representation for F_s or F_t.

Arithmetic methods accept Python ints or integer numpy arrays and act
elementwise.  Scalars in, Python ints out.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

Tag = Literal["p", "s", "t", "t2"]
TAGS: tuple[str, ...] = ("p", "s", "t", "t2")

_ADD_TABLE_MAX = 2500


class TowerError(ValueError):
    """Invalid tower parameters."""


class SubfieldError(ValueError):
    """An element does not lie in the subfield an operation requires."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, constant term first ---------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod(prod, m, p)


def _poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    f = _trim(list(poly))
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        raise ValueError("expected a monic polynomial of positive degree")
    if n == 1:
        return True
    x = [0, 1]
    frob = {}
    h = x
    for k in range(1, n + 1):
        h = _poly_powmod(h, p, f, p)
        frob[k] = h
    if _trim([(u - v) % p for u, v in _zip_pad(frob[n], x)]):
        return False
    for r in prime_factors(n):
        diff = _trim([(u - v) % p for u, v in _zip_pad(frob[n // r], x)])
        if len(_poly_gcd(f, diff, p)) != 1:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def find_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Least monic irreducible of the given degree, ordered by sum(c_i p^i)."""
    for code in range(p**degree):
        coeffs = [(code // p**i) % p for i in range(degree)]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs + [1], p):
            return tuple(coeffs + [1])
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- the tower ---------------------------------------------------------------


@dataclass(frozen=True)
class TowerSpec:
    """Parameters of the tower: s = p^a, t = s^b, ambient F_{t^2}; N is the
    geometric dimension used by the forms and codes built on top."""

    p: int
    a: int = 1
    b: int = 1
    N: int = 1

    def __post_init__(self):
        for name in ("p", "a", "b", "N"):
            val = getattr(self, name)
            if not isinstance(val, (int, np.integer)) or isinstance(val, bool):
                raise TowerError(f"{name} must be an integer, got {val!r}")
        if not is_prime(self.p):
            raise TowerError(f"p = {self.p} is not prime")
        if self.p == 2:
            raise TowerError("even characteristic is not supported (t must be odd)")
        if self.a < 1 or self.b < 1 or self.N < 1:
            raise TowerError("a, b and N must be positive")

    @property
    def s(self) -> int:
        return self.p**self.a

    @property
    def t(self) -> int:
        return self.p ** (self.a * self.b)

    @property
    def q(self) -> int:
        return self.t**2

    @property
    def degree(self) -> int:
        return 2 * self.a * self.b


def _unwrap(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


class FieldCtx:
    """The ambient field F_{t^2} with its subfield chain.

    Built by :func:`build_tower`; treat instances as immutable.
    """

    def __init__(self, spec: TowerSpec):
        self.spec = spec
        p, n = spec.p, spec.degree
        self.p, self.s, self.t, self.q = p, spec.s, spec.t, spec.q
        self.degree = n
        self.modulus = find_modulus(p, n)

        q = self.q
        self._radix = np.array([p**i for i in range(n)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._digits = np.stack([(codes // p**i) % p for i in range(n)], axis=1)

        self.g = self._find_generator()
        mod = list(self.modulus)
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1]
        gpoly = self._poly(self.g)
        for k in range(q - 1):
            exp[k] = self._encode(cur)
            cur = _poly_mulmod(cur, gpoly, mod, p)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._exp, self._log = exp, log
        for arr in (self._radix, self._digits, self._exp, self._log):
            arr.setflags(write=False)

        self._neg = ((-self._digits) % p) @ self._radix
        if q <= _ADD_TABLE_MAX:
            table = np.empty((q, q), dtype=np.int64)
            for x in range(q):
                table[x] = ((self._digits[x] + self._digits) % p) @ self._radix
            table.setflags(write=False)
            self._add = table
        else:
            self._add = None

        self._member = {tag: self.power(codes, self.order(tag)) == codes for tag in TAGS}
        non_t = np.flatnonzero(~self._member["t"])
        self.alpha = int(non_t[0])
        self._enum_cache: dict[str, np.ndarray] = {}
        self._index_cache: dict[str, np.ndarray] = {}

    # -- construction helpers
    def _poly(self, x: int) -> list[int]:
        return _trim([int(c) for c in self._digits[x]])

    def _encode(self, coeffs) -> int:
        return int(sum(int(c) * self.p**i for i, c in enumerate(coeffs)))

    def _find_generator(self) -> int:
        mod = list(self.modulus)
        order = self.q - 1
        exps = [order // r for r in prime_factors(order)]
        for cand in range(2, self.q):
            poly = self._poly(cand)
            if all(_poly_powmod(poly, e, mod, self.p) != [1] for e in exps):
                return cand
        raise AssertionError("no generator found")  # pragma: no cover

    # -- tags
    def tag_degree(self, tag: str) -> int:
        a, b = self.spec.a, self.spec.b
        try:
            return {"p": 1, "s": a, "t": a * b, "t2": 2 * a * b}[tag]
        except KeyError:
            raise ValueError(f"unknown subfield tag {tag!r}") from None

    def order(self, tag: str) -> int:
        return self.p ** self.tag_degree(tag)

    # -- encodings
    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[x])

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        return self._encode([c % self.p for c in coeffs])

    def scalar(self, k: int) -> int:
        """Image of the integer k in the prime field."""
        return k % self.p

    # -- arithmetic
    def add(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        if self._add is not None:
            return _unwrap(self._add[x, y])
        return _unwrap(((self._digits[x] + self._digits[y]) % self.p) @ self._radix)

    def neg(self, x):
        return _unwrap(self._neg[np.asarray(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        r = self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]
        return _unwrap(np.where((x == 0) | (y == 0), 0, r))

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return _unwrap(self._exp[(-self._log[x]) % (self.q - 1)])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def power(self, x, e: int):
        x = np.asarray(x)
        zero = x == 0
        if e == 0:
            return _unwrap(np.ones_like(x))
        if e < 0 and np.any(zero):
            raise ZeroDivisionError("negative power of zero")
        r = self._exp[(self._log[x] * (e % (self.q - 1))) % (self.q - 1)]
        return _unwrap(np.where(zero, 0, r))

    def sum(self, x, axis: int = -1):
        """Field sum along one axis."""
        x = np.moveaxis(np.asarray(x), axis, 0)
        acc = np.zeros(x.shape[1:], dtype=np.int64)
        for row in x:
            acc = self.add(acc, row)
        return _unwrap(acc)

    def dot(self, x, y):
        """Sum of x_i * y_i over the last axis (broadcasting)."""
        return self.sum(self.mul(x, y), axis=-1)

    # -- Frobenius, conjugation, trace, norm
    def frobenius(self, x, k: int = 1):
        return self.power(x, self.p**k)

    def conj(self, x):
        """x -> x^t, the involution of F_{t^2} fixing F_t."""
        return self.power(x, self.t)

    def contains(self, x, tag: str):
        return _unwrap(self._member[tag][np.asarray(x)])

    def check_in(self, x, tag: str) -> None:
        if not np.all(self._member[tag][np.asarray(x)]):
            raise SubfieldError(f"element not in F_{self.order(tag)}")

    def _relative(self, frm: str, to: str) -> tuple[int, int]:
        df, dt = self.tag_degree(frm), self.tag_degree(to)
        if df % dt:
            raise ValueError(f"F_{self.order(to)} is not a subfield of F_{self.order(frm)}")
        return df // dt, self.order(to)

    def trace(self, x, frm: str = "t", to: str = "p"):
        """Relative trace Tr_{frm/to}: sum of the conjugates x^{q^i}, i < m."""
        self.check_in(x, frm)
        m, qq = self._relative(frm, to)
        x = np.asarray(x)
        acc = x.copy()
        for i in range(1, m):
            acc = self.add(acc, self.power(x, qq**i))
        return _unwrap(acc)

    def norm(self, x, frm: str = "t2", to: str = "t"):
        """Relative norm x^{(Q-1)/(q-1)} for F_Q / F_q."""
        self.check_in(x, frm)
        _, qq = self._relative(frm, to)
        return self.power(x, (self.order(frm) - 1) // (qq - 1))

    def norm_preimage(self, b: int) -> int:
        """Least-encoded a in F_{t^2} with a^{t+1} = b, for b in F_t*."""
        if b == 0:
            raise ValueError("norm preimage of zero is not a unit")
        self.check_in(b, "t")
        cand = np.arange(1, self.q)
        hits = np.flatnonzero(self.power(cand, self.t + 1) == b)
        return int(cand[hits[0]])

    # -- enumeration
    def generator(self, tag: str) -> int:
        """Canonical generator of the multiplicative group of a subfield."""
        return self.power(self.g, (self.q - 1) // (self.order(tag) - 1))

    def elements(self, tag: str = "t2") -> np.ndarray:
        """0 followed by g'^0, g'^1, ... for the subfield generator g'."""
        if tag not in self._enum_cache:
            k = self.order(tag)
            step = (self.q - 1) // (k - 1)
            arr = np.concatenate(([0], self._exp[(step * np.arange(k - 1)) % (self.q - 1)]))
            arr.setflags(write=False)
            self._enum_cache[tag] = arr
        return self._enum_cache[tag]

    def index(self, tag: str = "t2") -> np.ndarray:
        """Inverse of :meth:`elements`: position of each encoding, -1 if absent."""
        if tag not in self._index_cache:
            idx = np.full(self.q, -1, dtype=np.int64)
            els = self.elements(tag)
            idx[els] = np.arange(len(els))
            idx.setflags(write=False)
            self._index_cache[tag] = idx
        return self._index_cache[tag]

    def points(self, m: int, tag: str = "t") -> np.ndarray:
        """All of F^m as rows, mixed-radix over :meth:`elements` (first
        coordinate most significant)."""
        els = self.elements(tag)
        k = len(els)
        if m == 0:
            return np.zeros((1, 0), dtype=np.int64)
        digits = np.unravel_index(np.arange(k**m), (k,) * m)
        return els[np.stack(digits, axis=1)]

    def basis_over(self, frm: str = "t", to: str = "s") -> np.ndarray:
        """{1, tau, ..., tau^(m-1)} with tau the canonical generator of frm."""
        m, _ = self._relative(frm, to)
        tau = self.generator(frm)
        return np.array([self.power(tau, i) for i in range(m)], dtype=np.int64)

    # -- description
    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "a": self.spec.a,
            "b": self.spec.b,
            "N": self.spec.N,
            "s": self.s,
            "t": self.t,
            "modulus": list(self.modulus),
            "g": self.g,
            "alpha": self.alpha,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        sp = self.spec
        return f"FieldCtx(p={sp.p}, a={sp.a}, b={sp.b}, N={sp.N})"


@functools.lru_cache(maxsize=None)
def _build(spec: TowerSpec) -> FieldCtx:
    return FieldCtx(spec)


def build_tower(spec: TowerSpec | None = None, **kwargs) -> FieldCtx:
    """Build (or fetch the cached) field context for a tower.

    >>> ctx = build_tower(p=3)
    >>> ctx.modulus, ctx.alpha
    ((1, 0, 1), 3)
    """
    if spec is None:
        spec = TowerSpec(**kwargs)
    elif kwargs:
        raise TypeError("pass either a TowerSpec or keyword parameters")
    return _build(spec)
