import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermicode.gf import SubfieldError, TowerError, TowerSpec, build_tower, find_modulus, is_irreducible

from .oracle import NaiveField, is_irreducible_naive, least_irreducible

TOWERS = [(3, 1, 1, 1), (3, 1, 2, 1), (3, 2, 1, 1), (5, 1, 1, 1), (7, 1, 1, 1)]


@pytest.fixture(params=TOWERS, ids=lambda s: "p{}a{}b{}N{}".format(*s))
def tower(request):
    p, a, b, N = request.param
    ctx = build_tower(p=p, a=a, b=b, N=N)
    return ctx, NaiveField(p, ctx.modulus)


def test_three_one_one_one_is_f9_with_x2_plus_1(f9):
    assert f9.modulus == (1, 0, 1)
    assert f9.alpha == 3  # the polynomial x
    assert f9.mul(f9.alpha, f9.alpha) == f9.neg(1)


@pytest.mark.parametrize("p,d", [(3, 2), (3, 4), (5, 2), (7, 2), (3, 3), (5, 4)])
def test_modulus_is_least_irreducible(p, d):
    assert tuple(find_modulus(p, d)) == least_irreducible(p, d)


@pytest.mark.parametrize("p,d", [(3, 2), (3, 3), (5, 2)])
def test_rabin_agrees_with_trial_division(p, d):
    for low in itertools.product(range(p), repeat=d):
        poly = list(low) + [1]
        assert is_irreducible(poly, p) == is_irreducible_naive(poly, p)


def test_arithmetic_matches_naive(tower):
    ctx, F = tower
    xs = np.arange(ctx.q)
    sample = xs if ctx.q <= 81 else xs[:: max(1, ctx.q // 40)]
    for x in sample:
        x = int(x)
        for y in sample:
            y = int(y)
            assert ctx.add(x, y) == F.add(x, y)
            assert ctx.mul(x, y) == F.mul(x, y)
        assert ctx.neg(x) == F.neg(x)
        if x:
            assert ctx.inv(x) == F.inv(x)


def test_generator_is_least_primitive(tower):
    ctx, F = tower
    primitive = [x for x in range(1, ctx.q) if F.order(x) == ctx.q - 1]
    assert ctx.g == primitive[0]


def test_alpha_is_least_outside_ft(tower):
    ctx, F = tower
    ft = set(F.subfield(ctx.t))
    assert ctx.alpha == min(x for x in range(ctx.q) if x not in ft)


def test_subfields_are_frobenius_fixed_points(tower):
    ctx, F = tower
    for tag in ("p", "s", "t", "t2"):
        expect = sorted(F.subfield(ctx.order(tag)))
        assert sorted(ctx.elements(tag).tolist()) == expect
        assert ctx.elements(tag)[0] == 0
        assert np.all(ctx.contains(np.array(expect), tag))


def test_trace_and_norm_match_naive(tower):
    ctx, F = tower
    pairs = [("t2", "t"), ("t2", "s"), ("t2", "p"), ("t", "s"), ("t", "p"), ("s", "p")]
    for frm, to in pairs:
        big, small = ctx.order(frm), ctx.order(to)
        for x in ctx.elements(frm)[:: max(1, big // 30)]:
            x = int(x)
            assert ctx.trace(x, frm, to) == F.trace(x, big, small)
            assert ctx.norm(x, frm, to) == F.norm(x, big, small)


def test_trace_is_surjective_and_balanced(tower):
    ctx, _ = tower
    tr = np.asarray(ctx.trace(ctx.elements("t2"), "t2", "t"))
    counts = np.bincount(ctx.index("t")[tr])
    assert np.all(counts == ctx.t)


def test_conj_is_involution_fixing_ft(tower):
    ctx, _ = tower
    els = ctx.elements("t2")
    assert np.array_equal(ctx.conj(ctx.conj(els)), els)
    ft = ctx.elements("t")
    assert np.array_equal(ctx.conj(ft), ft)


def test_norm_preimage_is_least(tower):
    ctx, F = tower
    for b in ctx.elements("t")[1:]:
        a = ctx.norm_preimage(int(b))
        assert F.fastpow(a, ctx.t + 1) == b
        assert all(F.fastpow(c, ctx.t + 1) != b for c in range(1, a))


def test_points_order_first_coordinate_most_significant(f9):
    pts = f9.points(2, "t")
    els = f9.elements("t")
    assert pts.shape == (9, 2)
    assert pts[:3].tolist() == [[0, int(els[0])], [0, int(els[1])], [0, int(els[2])]]
    assert len({tuple(r) for r in pts.tolist()}) == 9


def test_basis_over_spans(f81):
    basis = f81.basis_over("t", "s")
    combos = {int(f81.add(f81.mul(int(a), int(basis[0])), f81.mul(int(b), int(basis[1])))) for a in f81.elements("s") for b in f81.elements("s")}
    assert combos == set(f81.elements("t").tolist())


@pytest.mark.parametrize("kwargs", [dict(p=2), dict(p=4), dict(p=3, a=0), dict(p=3, N=0), dict(p=9)])
def test_invalid_towers_rejected(kwargs):
    with pytest.raises(TowerError):
        TowerSpec(**kwargs)


def test_membership_errors(f9):
    with pytest.raises(SubfieldError):
        f9.check_in(f9.alpha, "t")
    with pytest.raises(ZeroDivisionError):
        f9.inv(0)


def test_build_is_deterministic():
    a = build_tower(p=3, a=1, b=2, N=1)
    b = build_tower(TowerSpec(3, 1, 2, 1))
    assert a is b
    assert a.to_json() == b.to_json()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_field_axioms_f81(x, y, z):
    ctx = build_tower(p=3, a=1, b=2, N=1)
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.frobenius(ctx.mul(x, y)) == ctx.mul(ctx.frobenius(x), ctx.frobenius(y))
    assert ctx.power(x, ctx.q) == x
