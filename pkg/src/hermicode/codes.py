"""The trace codes Gamma and C over F_s, and the Reed-Muller comparison.

Gamma is the image of (f, v) -> (Tr_{F_t/F_s}(f(x) + v . x))_x and C the image
of (f, a) -> (Tr_{F_t/F_s}(f(x)) - a)_x, with x running over F_t^{2N} in
``ctx.points`` order.  Parameters come from full enumeration of the code.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import linalg
from .counting import TheoremMismatch, _exact_div
from .gf import FieldCtx
from .hermitian import HermitianForm, hermitian_basis, hermitian_from_combination
from .quadform import QuadHermForm

DEFAULT_BUDGET = 10**7
_BLOCK = 1 << 20


class BudgetExceeded(RuntimeError):
    """Full enumeration would exceed the configured budget."""


def default_budget() -> int:
    env = os.environ.get("HERMICODE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class RowSource:
    """What a generator row encodes: a hermitian form, a linear form, or the constant."""

    H: HermitianForm | None = None
    v: tuple[int, ...] | None = None
    const: int | None = None


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx
    label: str
    generator: np.ndarray
    sources: tuple[RowSource, ...]

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def rank(self) -> int:
        return linalg.rank(self.ctx, self.generator)

    def encode(self, message) -> np.ndarray:
        """sum_i m_i G_i for a message over F_s."""
        ctx = self.ctx
        message = np.asarray(message, dtype=np.int64)
        ctx.check_in(message, "s")
        return np.asarray(ctx.sum(ctx.mul(message[:, None], self.generator), axis=0))

    def decompose(self, message) -> tuple[HermitianForm, np.ndarray, int]:
        """The (H, v, a) whose evaluation the message encodes.

        For C the codeword is Tr(f(x)) - a, so a is minus the constant part.
        """
        ctx = self.ctx
        N = ctx.spec.N
        forms, fcoef = [], []
        v = np.zeros(2 * N, dtype=np.int64)
        const = 0
        for m, src in zip(message, self.sources):
            m = int(m)
            if src.H is not None:
                forms.append(src.H)
                fcoef.append(m)
            elif src.v is not None:
                v = np.asarray(ctx.add(v, ctx.mul(m, np.array(src.v))))
            else:
                const = ctx.add(const, ctx.mul(m, src.const))
        H = hermitian_from_combination(ctx, forms, fcoef) if forms else HermitianForm(ctx, np.zeros((N, N), dtype=np.int64))
        return H, v, ctx.neg(const)

    def iter_weight_blocks(self):
        """Weights of all s^K codewords, yielded in blocks (messages in mixed-radix order)."""
        ctx = self.ctx
        els = ctx.elements("s")
        s, n, G = len(els), self.n, self.generator
        inner = 0
        while inner < self.k and s ** (inner + 1) * n <= _BLOCK:
            inner += 1
        split = self.k - inner
        # all combinations of the last `inner` rows, reused under every outer prefix
        span = np.zeros((1, n), dtype=np.int64)
        for row in G[split:]:
            span = np.asarray(ctx.add(span[:, None, :], ctx.mul(els[None, :, None], row)))
            span = span.reshape(-1, n)
        for msg in ctx.points(split, "s"):
            offset = np.asarray(ctx.sum(ctx.mul(msg[:, None], G[:split]), axis=0)) if split else 0
            yield np.count_nonzero(ctx.add(offset, span), axis=1)


@dataclass
class CodeParams:
    label: str
    n: int
    k: int
    d_min: int
    w_max: int | None = None
    weight_distribution: dict[int, int] = field(default_factory=dict)
    attained: dict[str, bool] = field(default_factory=dict)

    @property
    def disparity(self) -> Fraction | None:
        return None if self.w_max is None else Fraction(self.w_max, self.d_min)

    @property
    def lam(self) -> Fraction:
        """K/n + d/n."""
        return Fraction(self.k, self.n) + Fraction(self.d_min, self.n)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def reliability(self) -> Fraction:
        return Fraction(self.d_min, self.n)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "k": self.k,
            "d_min": self.d_min,
            "w_max": self.w_max,
            "disparity": _frac(self.disparity),
            "lambda": _frac(self.lam),
            "weight_distribution": {str(w): c for w, c in sorted(self.weight_distribution.items())},
            "bounds_attained": dict(self.attained),
        }

    def distribution_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["weight", "count"])
        for w, c in sorted(self.weight_distribution.items()):
            writer.writerow([w, c])
        return buf.getvalue()


def _frac(x: Fraction | None):
    return None if x is None else [x.numerator, x.denominator]


# -- theorem formulas ---------------------------------------------------------


def _log_s_t(s: int, t: int) -> int:
    b, acc = 0, 1
    while acc < t:
        acc *= s
        b += 1
    if acc != t:
        raise ValueError(f"{t} is not a power of {s}")
    return b


def gamma_weight_bounds(s: int, t: int, N: int) -> tuple[int, int]:
    n = t ** (2 * N)
    low = n - _exact_div(n + t ** (2 * N - 1), s)
    high = n - _exact_div(n - (s - 1) * t ** (2 * N - 1), s)
    return low, high


def c_weight_bounds(s: int, t: int, N: int) -> tuple[int, int]:
    return gamma_weight_bounds(s, t, N)[0], t ** (2 * N)


def gamma_formula(s: int, t: int, N: int) -> dict:
    low, high = gamma_weight_bounds(s, t, N)
    return {
        "n": t ** (2 * N),
        "k": (N * N + 2 * N) * _log_s_t(s, t),
        "d_min": low,
        "w_max": high,
        "disparity": Fraction((s - 1) * (t + 1), s * t - t - 1),
    }


def c_formula(s: int, t: int, N: int) -> dict:
    low, high = c_weight_bounds(s, t, N)
    return {
        "n": t ** (2 * N),
        "k": 1 + N * N * _log_s_t(s, t),
        "d_min": low,
        "w_max": high,
        "disparity": Fraction(s * t, s * t - t - 1),
    }


# -- construction ---------------------------------------------------------------


def _form_rows(ctx: FieldCtx) -> tuple[list[np.ndarray], list[RowSource]]:
    N = ctx.spec.N
    rows, sources = [], []
    for H0 in hermitian_basis(ctx, N):
        for tau in ctx.basis_over("t", "s"):
            H = H0.scale(int(tau))
            vals = QuadHermForm.from_hermitian(H).values
            rows.append(np.asarray(ctx.trace(vals, "t", "s")))
            sources.append(RowSource(H=H))
    return rows, sources


def build_gamma(ctx: FieldCtx) -> LinearCode:
    N = ctx.spec.N
    rows, sources = _form_rows(ctx)
    pts = ctx.points(2 * N, "t")
    for i in range(2 * N):
        for tau in ctx.basis_over("t", "s"):
            rows.append(np.asarray(ctx.trace(ctx.mul(int(tau), pts[:, i]), "t", "s")))
            v = [0] * (2 * N)
            v[i] = int(tau)
            sources.append(RowSource(v=tuple(v)))
    G = np.array(rows, dtype=np.int64)
    G.setflags(write=False)
    return LinearCode(ctx, "Gamma", G, tuple(sources))


def build_C(ctx: FieldCtx) -> LinearCode:
    rows, sources = _form_rows(ctx)
    rows.append(np.ones(ctx.t ** (2 * ctx.spec.N), dtype=np.int64))
    sources.append(RowSource(const=1))
    G = np.array(rows, dtype=np.int64)
    G.setflags(write=False)
    return LinearCode(ctx, "C", G, tuple(sources))


def weight_distribution(code: LinearCode, budget: int | None = None, check: bool = True) -> CodeParams:
    """Enumerate every codeword, tally weights and check the weight bounds."""
    ctx = code.ctx
    budget = default_budget() if budget is None else budget
    cost = ctx.s**code.k * code.n
    if cost > budget:
        raise BudgetExceeded(f"{ctx.s}^{code.k} codewords x length {code.n} = {cost} exceeds budget {budget}")
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for weights in code.iter_weight_blocks():
        counts += np.bincount(weights, minlength=code.n + 1)
    dist = {int(w): int(c) for w, c in enumerate(counts) if c}
    nonzero = [w for w in dist if w > 0]
    params = CodeParams(code.label, code.n, code.k, min(nonzero), max(nonzero), dist)
    if check and code.label in ("Gamma", "C"):
        s, t, N = ctx.s, ctx.t, ctx.spec.N
        low, high = (gamma_weight_bounds if code.label == "Gamma" else c_weight_bounds)(s, t, N)
        if params.d_min < low or params.w_max > high:
            raise TheoremMismatch(
                f"{code.label} weights [{params.d_min}, {params.w_max}] escape the bounds [{low}, {high}]"
            )
        params.attained = {"lower": low in dist, "upper": high in dist}
    return params


def rm_params(N: int, t: int) -> CodeParams:
    """Parameters of the generalized Reed-Muller code R(2, 2N) over F_t (formulas only)."""
    if t <= 2:
        raise ValueError("the dimension formula needs t > 2")
    k = 2 * N * N + 3 * N + 1
    assert k == comb(2 * N + 2, 2)
    n = t ** (2 * N)
    return CodeParams("RM(2,2N)", n, k, n - 2 * t ** (2 * N - 1))


def compare(P: CodeParams, Q: CodeParams) -> dict:
    """Rates, reliabilities and lambda of two codes of equal length, with differences P - Q."""
    if P.n != Q.n:
        raise ValueError(f"lengths differ: {P.n} vs {Q.n}")
    return {
        "labels": [P.label, Q.label],
        "n": P.n,
        "rate": [P.rate, Q.rate],
        "reliability": [P.reliability, Q.reliability],
        "lambda": [P.lam, Q.lam],
        "d_diff": P.d_min - Q.d_min,
        "rate_diff": Q.rate - P.rate,
        "lambda_diff": P.lam - Q.lam,
    }


def comparison_formulas(t: int, N: int) -> dict:
    """Closed forms for Gamma and C against R(2, 2N) when s = t."""
    n = t ** (2 * N)
    return {
        "gamma_d_diff": t ** (2 * N - 1) - t ** (2 * N - 2),
        "gamma_rate_diff": Fraction(N * N + N + 1, n),
        "gamma_lambda_diff": Fraction(t ** (2 * N - 1) - t ** (2 * N - 2) - N * N - N - 1, n),
        "c_d_diff": t ** (2 * N - 2) * (t - 1),
        "c_rate_diff": Fraction(N * N + 3 * N, n),
    }


def jsonable(obj):
    """Fractions become [num, den]; containers are converted recursively."""
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj
