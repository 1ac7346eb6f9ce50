"""Exhaustive closed-form-versus-enumeration sweeps for one tower.

Each check returns a :class:`CheckResult` with the number of instances it
examined and a (truncated) list of mismatching instances.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .charsum import (
    CycInt,
    char_sum_linear,
    character_table,
    count_via_characters,
    exp_sum,
    norm_char_sum,
)
from .counting import (
    brute_S_all,
    closed_S,
    count_trace_affine,
    count_trace_level,
    scaled_T_matches,
)
from .gf import FieldCtx
from .hermitian import (
    change_basis,
    orthogonalize,
    polar_form,
    random_invertible,
)
from .quadform import QuadHermForm, apply_T, f_eval, iota, standard_form, t_map

MAX_REPORTED = 10


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    mismatches: list = field(default_factory=list)
    failures: int = 0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, passed: bool, detail=None) -> None:
        self.instances += 1
        if not passed:
            self.failures += 1
            if len(self.mismatches) < MAX_REPORTED:
                self.mismatches.append(detail)

    def merge(self, other: CheckResult) -> None:
        self.instances += other.instances
        self.failures += other.failures
        room = MAX_REPORTED - len(self.mismatches)
        self.mismatches.extend(other.mismatches[:room])

    def to_dict(self) -> dict:
        return {"name": self.name, "instances": self.instances, "mismatches": self.failures, "examples": self.mismatches}


def sweep_forms(ctx: FieldCtx, variants: int = 10, seed: int = 0) -> list[QuadHermForm]:
    """For every rank 1..N: the standard form and `variants` random changes of basis of it."""
    N = ctx.spec.N
    rng = np.random.default_rng(seed)
    forms = []
    for rho in range(1, N + 1):
        std = standard_form(ctx, N, rho)
        forms.append(std)
        for _ in range(variants):
            P = random_invertible(ctx, N, rng)
            forms.append(QuadHermForm.from_hermitian(change_basis(std.H, P)))
    return forms


def _map(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _merged(name: str, parts: list[CheckResult]) -> CheckResult:
    out = CheckResult(name)
    for part in parts:
        out.merge(part)
    return out


# -- per-form checks -------------------------------------------------------------


def check_exponential_sums(q: QuadHermForm) -> CheckResult:
    """brute_S(a f, v) = closed_S for all v and all a in F_s*."""
    ctx = q.ctx
    res = CheckResult("exponential_sum")
    pts = ctx.points(q.dim, "t")
    N, rho = q.H.n, q.rho
    for a in ctx.elements("s")[1:]:
        brute = brute_S_all(q, int(a))
        for v, b in zip(pts, brute):
            c = closed_S(q, v, int(a))
            res.record(b == c, {"H": q.H.to_list(), "v": v.tolist(), "a": int(a), "brute": b.to_list(), "closed": c.to_list()})
    # sum over a of S(a f, v) = (-1)^rho t^(2N-rho) A(s, v) when v is in Im T
    for v in pts:
        u = linalg.solve(ctx, q.T, v)
        if u is None:
            continue
        total = CycInt.integer(ctx.p, 0)
        for a in ctx.elements("s")[1:]:
            total = total + closed_S(q, v, int(a))
        A = ctx.s - 1 if ctx.trace(f_eval(q, u), "t", "s") == 0 else -1
        expect = (-1) ** rho * ctx.t ** (2 * N - rho) * A
        res.record(total == expect, {"H": q.H.to_list(), "v": v.tolist(), "sum_over_a": total.to_list(), "expected": expect})
    return res


def check_affine_counts(q: QuadHermForm) -> CheckResult:
    res = CheckResult("trace_affine_count")
    for v in q.ctx.points(q.dim, "t"):
        rep = count_trace_affine(q, v)
        res.record(rep.ok, rep.to_dict())
    return res


def check_level_counts(q: QuadHermForm) -> CheckResult:
    res = CheckResult("trace_level_count")
    for a in q.ctx.elements("s"):
        rep = count_trace_level(q, int(a))
        res.record(rep.ok, rep.to_dict())
    # the level count at a = 0 is the affine count at v = 0
    zero = np.zeros(q.dim, dtype=np.int64)
    res.record(count_trace_level(q, 0).closed_form == count_trace_affine(q, zero).closed_form, {"H": q.H.to_list()})
    return res


def check_scaling(q: QuadHermForm) -> CheckResult:
    res = CheckResult("scaled_T")
    for a in q.ctx.elements("s")[1:]:
        res.record(scaled_T_matches(q, int(a)), {"H": q.H.to_list(), "a": int(a)})
    return res


def check_parseval(q: QuadHermForm) -> CheckResult:
    """S(f, v) conj(S(f, 0)) = 0 whenever v is outside (Ker B)^perp."""
    res = CheckResult("parseval")
    tm = t_map(q)
    brute = brute_S_all(q, 1)
    s0 = brute[0]
    for v, sv in zip(q.ctx.points(q.dim, "t"), brute):
        if tm.kernel_perp.contains(v):
            continue
        res.record(sv * s0.conj() == 0, {"H": q.H.to_list(), "v": v.tolist()})
    return res


def check_polarization(q: QuadHermForm) -> CheckResult:
    res = CheckResult("polarization_round_trip")
    H = q.H
    rebuilt = polar_form(H.ctx, H.quad, H.n)
    res.record(rebuilt == H, {"H": H.to_list(), "rebuilt": rebuilt.to_list()})
    return res


def check_orthogonal_basis(q: QuadHermForm) -> CheckResult:
    res = CheckResult("orthogonal_basis")
    H = q.H
    P, diag = orthogonalize(H)
    D = change_basis(H, P)
    ok = np.array_equal(D.matrix, np.diag(diag)) and sum(diag) == H.rank()
    res.record(ok, {"H": H.to_list(), "P": P.tolist(), "diag": diag})
    return res


def check_rank_relation(q: QuadHermForm) -> CheckResult:
    """rank B = 2 rank H and iota maps Ker B exactly onto Ker H."""
    ctx, H = q.ctx, q.H
    res = CheckResult("rank_relation")
    res.record(linalg.rank(ctx, q.B) == 2 * H.rank(), {"H": H.to_list()})
    tm = t_map(q)
    kdim = tm.kernel.dimension
    coeffs = ctx.points(kdim, "t")
    kernel_vectors = linalg.matmul(ctx, coeffs, tm.kernel.basis) if kdim else np.zeros((1, q.dim), dtype=np.int64)
    images = iota(ctx, kernel_vectors)
    in_ker = np.all(np.asarray(linalg.matmul(ctx, images, H.matrix.T)) == 0, axis=-1)
    distinct = len({tuple(row) for row in images.tolist()})
    res.record(bool(np.all(in_ker)) and distinct == ctx.q ** H.kernel().dimension, {"H": H.to_list()})
    return res


def check_t_map(q: QuadHermForm) -> CheckResult:
    """Im T = (Ker B)^perp, Ker T in f^-1(0), T(u) . y = B(u, y), and f constant on T-fibres."""
    ctx = q.ctx
    res = CheckResult("t_map")
    tm = t_map(q)
    res.record(tm.image == tm.kernel_perp, {"H": q.H.to_list(), "what": "image"})
    kdim = tm.kernel.dimension
    coeffs = ctx.points(kdim, "t")
    kvecs = linalg.matmul(ctx, coeffs, tm.kernel.basis) if kdim else np.zeros((1, q.dim), dtype=np.int64)
    res.record(bool(np.all(np.asarray(f_eval(q, kvecs)) == 0)), {"H": q.H.to_list(), "what": "kernel in zero set"})

    pts = ctx.points(q.dim, "t")
    images = np.asarray(apply_T(q, pts))
    idx = ctx.index("t")
    keys = (idx[images] * (ctx.t ** np.arange(q.dim)[::-1])).sum(axis=1)
    pairs = np.unique(np.stack([keys, q.values]), axis=1)
    res.record(len(np.unique(pairs[0])) == pairs.shape[1], {"H": q.H.to_list(), "what": "fibre constancy"})
    return res


def check_bilinear_routes(q: QuadHermForm) -> CheckResult:
    """f(x+y) - f(x) - f(y) equals x^T B y for all pairs (the trace formula gives B)."""
    ctx = q.ctx
    res = CheckResult("bilinear_routes")
    pts = ctx.points(q.dim, "t")
    vals = q.values
    idx_of = {tuple(r): i for i, r in enumerate(pts.tolist())}
    ok = True
    for i, x in enumerate(pts):
        sums = np.asarray(ctx.add(x[None, :], pts))
        js = [idx_of[tuple(r)] for r in sums.tolist()]
        lhs = ctx.sub(ctx.sub(vals[js], vals[i]), vals)
        rhs = ctx.dot(linalg.matmul(ctx, x, q.B)[None, :], pts)
        ok &= bool(np.array_equal(lhs, rhs))
    res.record(ok, {"H": q.H.to_list()})
    return res


def check_counting_by_characters(q: QuadHermForm) -> CheckResult:
    ctx = q.ctx
    res = CheckResult("count_via_characters")
    tr = np.asarray(ctx.trace(q.values, "t", "s"))
    for a in ctx.elements("s"):
        got = count_via_characters(ctx, lambda i: int(tr[i]), range(len(tr)), int(a))
        res.record(got == int(np.count_nonzero(tr == a)), {"H": q.H.to_list(), "a": int(a)})
    return res


PER_FORM_CHECKS: dict[str, Callable[[QuadHermForm], CheckResult]] = {
    "exponential_sum": check_exponential_sums,
    "trace_affine_count": check_affine_counts,
    "trace_level_count": check_level_counts,
    "scaled_T": check_scaling,
    "parseval": check_parseval,
    "polarization_round_trip": check_polarization,
    "orthogonal_basis": check_orthogonal_basis,
    "rank_relation": check_rank_relation,
    "t_map": check_t_map,
    "bilinear_routes": check_bilinear_routes,
    "count_via_characters": check_counting_by_characters,
}


# -- field-level checks ------------------------------------------------------------


def check_norm_fibres(ctx: FieldCtx) -> CheckResult:
    res = CheckResult("norm_fibres")
    for frm, to in [("t2", "t"), ("t2", "s"), ("t2", "p"), ("t", "s"), ("t", "p"), ("s", "p")]:
        Q, qq = ctx.order(frm), ctx.order(to)
        norms = np.asarray(ctx.norm(ctx.elements(frm)[1:], frm, to))
        counts = np.bincount(ctx.index(to)[norms], minlength=qq)
        expect = (Q - 1) // (qq - 1)
        res.record(counts[0] == 0 and bool(np.all(counts[1:] == expect)), {"from": frm, "to": to, "counts": counts.tolist()})
    return res


def check_norm_sums(ctx: FieldCtx) -> CheckResult:
    res = CheckResult("norm_character_sum")
    t = ctx.t
    for m in (1, 2):
        got = norm_char_sum(ctx, m)
        res.record(got == (t - t**m) // (t - 1), {"m": m, "got": got.to_list()})
    return res


def check_linear_sums(ctx: FieldCtx, max_dim: int = 2) -> CheckResult:
    res = CheckResult("linear_character_sum")
    t = ctx.t
    for m in range(1, max_dim + 1):
        for l in ctx.points(m, "t"):
            got = char_sum_linear(ctx, l)
            expect = t**m if not np.any(l) else 0
            res.record(got == expect, {"l": l.tolist(), "got": got.to_list()})
    return res


def check_orthogonality(ctx: FieldCtx) -> CheckResult:
    """Orthogonality relations I and II for the additive characters of F_s and F_t."""
    res = CheckResult("character_orthogonality")
    p = ctx.p
    for tag in ("s", "t"):
        table = character_table(ctx, tag)  # [c, x]
        order = table.shape[0]
        for c in range(order):
            row_sum = exp_sum(p, table[c])
            res.record(row_sum == (order if c == 0 else 0), {"field": tag, "char": c})
            col_sum = exp_sum(p, table[:, c])
            res.record(col_sum == (order if c == 0 else 0), {"field": tag, "point": c})
        # sum_x psi_c(x) conj(psi_d(x)): exponents subtract
        diff = (table[:, None, :] - table[None, :, :]) % p
        for c, d in itertools.product(range(order), repeat=2):
            got = exp_sum(p, diff[c, d])
            res.record(got == (order if c == d else 0), {"field": tag, "pair": [c, d]})
        # sum_c psi_c(x) conj(psi_c(y))
        dual = (table.T[:, None, :] - table.T[None, :, :]) % p
        for x, y in itertools.product(range(order), repeat=2):
            got = exp_sum(p, dual[x, y])
            res.record(got == (order if x == y else 0), {"field": tag, "points": [x, y]})
    return res


def check_norm_trace_counts(ctx: FieldCtx) -> CheckResult:
    """Solutions of Tr_{F_t/F_s}(N(x)) = a on F_{t^2}, by characters and directly."""
    res = CheckResult("norm_trace_count")
    els = ctx.elements("t2")
    vals = np.asarray(ctx.trace(ctx.norm(els, "t2", "t"), "t", "s"))
    for a in ctx.elements("s"):
        got = count_via_characters(ctx, lambda x: int(vals[x]), range(len(els)), int(a))
        res.record(got == int(np.count_nonzero(vals == a)), {"a": int(a)})
    return res


def check_frobenius(ctx: FieldCtx) -> CheckResult:
    res = CheckResult("frobenius")
    els = ctx.elements("t2")
    x, y = np.meshgrid(els, els)
    lhs = ctx.frobenius(ctx.add(x, y))
    rhs = ctx.add(ctx.frobenius(x), ctx.frobenius(y))
    res.record(bool(np.array_equal(lhs, rhs)), "additivity")
    c = ctx.conj(els)
    res.record(bool(np.array_equal(ctx.conj(c), els)), "involution")
    res.record(int(np.count_nonzero(c == els)) == ctx.t, "fixed field")
    return res


FIELD_CHECKS: dict[str, Callable[[FieldCtx], CheckResult]] = {
    "frobenius": check_frobenius,
    "norm_fibres": check_norm_fibres,
    "norm_character_sum": check_norm_sums,
    "linear_character_sum": check_linear_sums,
    "character_orthogonality": check_orthogonality,
    "norm_trace_count": check_norm_trace_counts,
}


def run_verify(ctx: FieldCtx, variants: int = 10, seed: int = 0, threads: int = 1) -> dict:
    """Run every sweep; the report is a deterministic function of the arguments."""
    forms = sweep_forms(ctx, variants, seed)
    results = []
    for name, check in FIELD_CHECKS.items():
        results.append(check(ctx))
    for name, check in PER_FORM_CHECKS.items():
        results.append(_merged(name, _map(check, forms, threads)))
    return {
        "tower": ctx.to_dict(),
        "forms": len(forms),
        "variants": variants,
        "seed": seed,
        "checks": [r.to_dict() for r in results],
        "total_mismatches": sum(r.failures for r in results),
        "ok": all(r.ok for r in results),
    }
