"""Slow, independent reference arithmetic used only by the tests.

Elements are coefficient tuples over F_p, multiplied by schoolbook
polynomial products and reduced by long division.  Nothing here calls the
package's field tables.
"""

from __future__ import annotations

import cmath
import itertools


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def poly_rem(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return a


def is_irreducible_naive(m, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(m) - 1
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            div = list(low) + [1]
            if not any(poly_rem(m, div, p)):
                return False
    return True


def least_irreducible(p, d):
    """Least monic irreducible of degree d, ordered by sum c_i p^i of its coefficients."""
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        if is_irreducible_naive(low + [1], p):
            return tuple(low + [1])
    raise AssertionError


class NaiveField:
    def __init__(self, p, modulus):
        self.p = p
        self.m = list(modulus)
        self.d = len(modulus) - 1
        self.q = p**self.d

    def dec(self, x):
        return [(x // self.p**i) % self.p for i in range(self.d)]

    def enc(self, c):
        c = list(c) + [0] * (self.d - len(c))
        return sum(int(v) * self.p**i for i, v in enumerate(c[: self.d]))

    def add(self, x, y):
        return self.enc([(u + v) % self.p for u, v in zip(self.dec(x), self.dec(y))])

    def neg(self, x):
        return self.enc([(-u) % self.p for u in self.dec(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        return self.enc(poly_rem(poly_mul(self.dec(x), self.dec(y), self.p), self.m, self.p))

    def pow(self, x, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, x)
        return r

    def fastpow(self, x, e):
        r, b = 1, x
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def inv(self, x):
        return self.fastpow(x, self.q - 2)

    def order(self, x):
        r, k = x, 1
        while r != 1:
            r = self.mul(r, x)
            k += 1
        return k

    def subfield(self, size):
        return [x for x in range(self.q) if self.fastpow(x, size) == x]

    def trace(self, x, big, small):
        """Tr_{F_big/F_small}(x) = sum of x^(small^i)."""
        acc, y, k = 0, x, 0
        while small**k < big:
            acc = self.add(acc, y)
            y = self.fastpow(y, small)
            k += 1
        return acc

    def norm(self, x, big, small):
        return self.fastpow(x, (big - 1) // (small - 1))

    def trace_to_int(self, x):
        """Tr_{F_q/F_p}(x) as an integer in [0, p)."""
        return self.dec(self.trace(x, self.q, self.p))[0]


def psi_complex(p, k):
    return cmath.exp(2j * cmath.pi * k / p)


def cyc_to_complex(c):
    """Evaluate a CycInt numerically (coefficients of zeta^0 .. zeta^{p-2})."""
    return sum(v * psi_complex(c.p, i) for i, v in enumerate(c.to_list()))


def herm_value(F, M, y):
    """sum_ij conj(y_i) M_ij y_j in naive arithmetic, conj = x^t."""
    t = int(round(F.q**0.5))
    acc = 0
    n = len(y)
    for i in range(n):
        ci = F.fastpow(y[i], t)
        for j in range(n):
            acc = F.add(acc, F.mul(ci, F.mul(int(M[i][j]), y[j])))
    return acc


def naive_f_values(F, M, alpha, points):
    """f(x) = H(iota x, iota x) for every point (rows of integer encodings)."""
    out = []
    for x in points:
        y = [F.add(int(x[2 * i]), F.mul(alpha, int(x[2 * i + 1]))) for i in range(len(x) // 2)]
        out.append(herm_value(F, M, y))
    return out
