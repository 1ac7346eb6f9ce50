"""Exponential sums S(c f, v) and solution counts of trace equations.

Every quantity has two routes: a closed form from the rank of f and the
map T, and a brute-force pass over all t^{2N} points.  Reports carry both.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .charsum import CycInt, exp_sum, psi_exponent
from .quadform import QuadHermForm, f_eval, solve_T


class TheoremMismatch(AssertionError):
    """A closed form disagreed with its brute-force count."""


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise TheoremMismatch(f"{num} is not divisible by {den}")
    return num // den


def dot_products(q: QuadHermForm, v) -> np.ndarray:
    """v . x for every point x (rows of ``ctx.points``); v may be a batch of vectors."""
    ctx = q.ctx
    pts = ctx.points(q.dim, "t")
    v = np.asarray(v, dtype=np.int64)
    return np.asarray(ctx.dot(v[..., None, :], pts))


def _check_vector(q: QuadHermForm, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (q.dim,):
        raise ValueError(f"v must have {q.dim} coordinates")
    q.ctx.check_in(v, "t")
    return v


def _check_scalar_s(q: QuadHermForm, c: int, nonzero: bool) -> None:
    q.ctx.check_in(c, "s")
    if nonzero and c == 0:
        raise ValueError("scalar must be a nonzero element of F_s")


def brute_S(q: QuadHermForm, v, c: int = 1) -> CycInt:
    """sum over x in F_t^{2N} of psi(c f(x) + v . x)."""
    ctx = q.ctx
    v = _check_vector(q, v)
    _check_scalar_s(q, c, nonzero=True)
    vals = ctx.add(ctx.mul(c, q.values), dot_products(q, v))
    return exp_sum(ctx.p, psi_exponent(ctx, vals, "t"))


def brute_S_all(q: QuadHermForm, c: int = 1) -> np.ndarray:
    """brute_S for every v at once, v in ``ctx.points`` order (object array of CycInt)."""
    ctx = q.ctx
    pts = ctx.points(q.dim, "t")
    vals = ctx.add(ctx.mul(c, q.values)[None, :], dot_products(q, pts))
    exps = np.asarray(psi_exponent(ctx, vals, "t")) % ctx.p
    out = np.empty(len(pts), dtype=object)
    for i, row in enumerate(exps):
        out[i] = CycInt.from_counts(ctx.p, np.bincount(row, minlength=ctx.p))
    return out


def closed_S(q: QuadHermForm, v, a: int = 1) -> CycInt:
    """(-1)^rho t^{2N-rho} psi(-f(u)/a) when v = T(u); 0 when v is outside Im T."""
    ctx = q.ctx
    v = _check_vector(q, v)
    _check_scalar_s(q, a, nonzero=True)
    u = solve_T(q, v)
    if u is None:
        return CycInt.integer(ctx.p, 0)
    N, rho, t = q.H.n, q.rho, ctx.t
    arg = ctx.neg(ctx.div(f_eval(q, u), a))
    scale = (-1) ** rho * t ** (2 * N - rho)
    return CycInt.zeta(ctx.p, psi_exponent(ctx, arg, "t")) * scale


def A_value(q: QuadHermForm, u) -> int:
    """s - 1 if Tr_{F_t/F_s} f(u) = 0, else -1."""
    ctx = q.ctx
    return ctx.s - 1 if ctx.trace(f_eval(q, u), "t", "s") == 0 else -1


@dataclass
class CountReport:
    kind: str
    p: int
    a: int
    b: int
    N: int
    rho: int
    H: list
    v: list | None
    scalar: int | None
    closed_form: int
    brute_force: int
    branch: str
    A_value: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.closed_form == self.brute_force

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _base(q: QuadHermForm) -> dict:
    sp = q.ctx.spec
    return dict(p=sp.p, a=sp.a, b=sp.b, N=sp.N, rho=q.rho, H=q.H.to_list())


def _trace_values(q: QuadHermForm, v) -> np.ndarray:
    ctx = q.ctx
    return np.asarray(ctx.trace(ctx.add(q.values, dot_products(q, v)), "t", "s"))


def brute_count_general(q: QuadHermForm, v, a: int) -> int:
    """#{x : Tr_{F_t/F_s}(f(x) + v . x) = a}, by enumeration only."""
    v = _check_vector(q, v)
    _check_scalar_s(q, a, nonzero=False)
    return int(np.count_nonzero(_trace_values(q, v) == a))


def closed_count_affine(q: QuadHermForm, v) -> tuple[int, str, int | None]:
    ctx = q.ctx
    t, s, N, rho = ctx.t, ctx.s, q.H.n, q.rho
    u = solve_T(q, v)
    if u is None:
        return _exact_div(t ** (2 * N), s), "v not in Im T", None
    A = A_value(q, u)
    m = _exact_div(t ** (2 * N) + (-1) ** rho * A * t ** (2 * N - rho), s)
    return m, "v in Im T", A


def count_trace_affine(q: QuadHermForm, v) -> CountReport:
    """Solutions of Tr_{F_t/F_s}(f(x) + v . x) = 0, closed form and enumeration."""
    v = _check_vector(q, v)
    closed, branch, A = closed_count_affine(q, v)
    brute = brute_count_general(q, v, 0)
    return CountReport(
        kind="trace_affine",
        v=v.tolist(),
        scalar=None,
        closed_form=closed,
        brute_force=brute,
        branch=branch,
        A_value=A,
        **_base(q),
    )


def closed_count_level(q: QuadHermForm, a: int) -> tuple[int, str]:
    ctx = q.ctx
    t, s, N, rho = ctx.t, ctx.s, q.H.n, q.rho
    if a != 0:
        return _exact_div(t ** (2 * N) - (-1) ** rho * t ** (2 * N - rho), s), "a != 0"
    return _exact_div(t ** (2 * N) + (-1) ** rho * (s - 1) * t ** (2 * N - rho), s), "a = 0"


def count_trace_level(q: QuadHermForm, a: int) -> CountReport:
    """Solutions of Tr_{F_t/F_s}(f(x)) = a, closed form and enumeration."""
    _check_scalar_s(q, a, nonzero=False)
    closed, branch = closed_count_level(q, a)
    brute = brute_count_general(q, np.zeros(q.dim, dtype=np.int64), a)
    return CountReport(
        kind="trace_level",
        v=None,
        scalar=int(a),
        closed_form=closed,
        brute_force=brute,
        branch=branch,
        **_base(q),
    )


def scaled_T_matches(q: QuadHermForm, a: int) -> bool:
    """The bilinear map of a f is a T."""
    ctx = q.ctx
    return np.array_equal(q.scale(a).T, np.asarray(ctx.mul(a, q.T)))

