from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction as F

import pytest

from padictiles.cyclotomic import (
    CyclotomicSum,
    NotIndicator,
    NotVanishing,
    decompose_vanishing,
    vanishing_level_set,
)
from padictiles.padic import PrimeContext


def _numeric(s: CyclotomicSum) -> complex:
    q = s.context.p**s.n
    return sum(a * cmath.exp(2j * math.pi * j / q) for j, a in s.coeffs.items())


def test_make_reduces_and_merges():
    ctx = PrimeContext(2)
    s = CyclotomicSum.make(ctx, 2, [(0, 1), (4, 2), (1, 1), (1, -1)])
    assert s.coeffs == {0: 3}
    assert s.n == 2
    assert CyclotomicSum.make(ctx, 1, {0: 0}).coeffs == {}
    with pytest.raises(ValueError):
        CyclotomicSum.make(ctx, -1, {})


def test_is_zero_frozen_cases():
    c2, c3 = PrimeContext(2), PrimeContext(3)
    assert CyclotomicSum.make(c3, 1, {0: 1, 1: 1, 2: 1}).is_zero()
    assert CyclotomicSum.make(c2, 2, {0: 1, 2: 1}).is_zero()  # 1 + i^2
    assert not CyclotomicSum.make(c2, 2, {0: 1, 1: 1}).is_zero()  # 1 + i
    assert CyclotomicSum.make(c2, 0, {}).is_zero()
    assert not CyclotomicSum.constant(c2, 3).is_zero()
    # zero test is valid at a non-minimal declared order
    assert CyclotomicSum.make(c3, 2, {0: 1, 3: 1, 6: 1}).is_zero()


def test_is_zero_agrees_with_numeric_oracle():
    rng = random.Random(101)
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        for _ in range(800):
            n = rng.randint(0, 3)
            q = p**n
            coeffs = {rng.randrange(q): rng.randint(-3, 3) for _ in range(rng.randint(0, 6))}
            s = CyclotomicSum.make(ctx, n, coeffs)
            assert s.is_zero() == (abs(_numeric(s)) < 1e-9)


def test_vanishing_constructions_are_zero():
    # integer combinations of full cosets of the index-p subgroup span the
    # whole relation module, at any declared order
    rng = random.Random(103)
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        for _ in range(150):
            n = rng.randint(1, 3)
            q = p ** (n - 1)
            coeffs: dict[int, int] = {}
            for _ in range(rng.randint(1, 3)):
                r = rng.randrange(q)
                a = rng.randint(-2, 2)
                for t in range(p):
                    j = r + t * q
                    coeffs[j] = coeffs.get(j, 0) + a
            s = CyclotomicSum.make(ctx, n, coeffs)
            assert s.is_zero()
            assert abs(_numeric(s)) < 1e-9


def test_arithmetic_matches_numeric():
    rng = random.Random(107)
    ctx = PrimeContext(3)
    for _ in range(150):
        a = CyclotomicSum.make(
            ctx, rng.randint(0, 2), {rng.randrange(9): rng.randint(-2, 2) for _ in range(3)}
        )
        b = CyclotomicSum.make(
            ctx, rng.randint(0, 2), {rng.randrange(9): rng.randint(-2, 2) for _ in range(3)}
        )
        assert abs(_numeric(a + b) - (_numeric(a) + _numeric(b))) < 1e-9
        assert abs(_numeric(a - b) - (_numeric(a) - _numeric(b))) < 1e-9
        assert abs(_numeric(a * b) - _numeric(a) * _numeric(b)) < 1e-9
        assert abs(_numeric(a * 5) - 5 * _numeric(a)) < 1e-9
        assert abs(_numeric(a.conjugate()) - _numeric(a).conjugate()) < 1e-9


def test_from_roots_uses_common_order():
    from padictiles.padic import RootOfUnity, character

    ctx = PrimeContext(2)
    roots = [RootOfUnity.make(ctx, 1, 1), RootOfUnity.make(ctx, 2, 1)]
    s = CyclotomicSum.from_roots(ctx, roots)
    assert s.n == 2
    assert s.coeffs == {2: 1, 1: 1}
    xi = ctx.scalar(F(1, 4))
    t = CyclotomicSum.from_roots(ctx, [character(xi, ctx.scalar(c)) for c in (0, 1, 2, 3)])
    assert t.is_zero()


def test_scale_exponents_is_a_galois_action():
    rng = random.Random(109)
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        for _ in range(120):
            n = rng.randint(1, 3)
            s = CyclotomicSum.make(
                ctx, n, {rng.randrange(p**n): rng.randint(-2, 2) for _ in range(4)}
            )
            u = rng.choice([x for x in range(1, p**n) if x % p])
            scaled = s.scale_exponents(u)
            # sigma_u maps w -> w^u; evaluate both sides numerically
            q = p**n
            expected = sum(
                a * cmath.exp(2j * math.pi * (j * u % q) / q) for j, a in s.coeffs.items()
            )
            assert abs(_numeric(scaled) - expected) < 1e-9
            assert s.is_zero() == scaled.is_zero()
        with pytest.raises(ValueError):
            CyclotomicSum.make(ctx, 1, {0: 1}).scale_exponents(p)


def test_value_if_integer():
    ctx = PrimeContext(2)
    s = CyclotomicSum.make(ctx, 2, {0: 5, 1: 2, 3: 2})  # 5 + 2i - 2i = 5
    assert s.value_if_integer() == 5
    assert s.equals_int(5)
    assert not s.equals_int(4)
    assert CyclotomicSum.make(ctx, 2, {0: 1, 1: 1}).value_if_integer() is None
    assert CyclotomicSum.make(ctx, 3, {}).value_if_integer() == 0
    ctx3 = PrimeContext(3)
    # 2 - w - w^2 = 3 at order 3
    s = CyclotomicSum.make(ctx3, 1, {0: 2, 1: -1, 2: -1})
    assert s.value_if_integer() == 3


def test_semantic_equality():
    ctx = PrimeContext(3)
    a = CyclotomicSum.make(ctx, 1, {0: 1, 1: 1, 2: 1})
    assert a == CyclotomicSum.constant(ctx, 0)
    b = CyclotomicSum.make(ctx, 1, {0: 3, 1: 2, 2: 2})  # 3 + 2(w + w^2) = 1
    assert b == CyclotomicSum.constant(ctx, 1)
    assert b != CyclotomicSum.constant(ctx, 2)


def test_normalize_minimizes_order():
    ctx = PrimeContext(2)
    s = CyclotomicSum.make(ctx, 3, {0: 1, 4: 1})  # lives at order 2: 1 + w8^4 = 1 - 1
    t = s.normalize()
    assert t.n <= 1
    assert s.is_zero() and t.is_zero()
    u = CyclotomicSum.make(ctx, 2, {2: 7}).normalize()
    assert (u.n, u.coeffs) == (1, {1: 7})


def test_json_round_trip():
    ctx = PrimeContext(5)
    s = CyclotomicSum.make(ctx, 2, {0: 1, 7: -2, 13: 4})
    t = CyclotomicSum.from_json_dict(s.to_json_dict())
    assert t.n == s.n and t.coeffs == s.coeffs and t.context == s.context


def test_decompose_vanishing_frozen_cases():
    c2, c3 = PrimeContext(2), PrimeContext(3)
    s = CyclotomicSum.make(c2, 2, {0: 1, 1: 1, 2: 1, 3: 1})
    assert decompose_vanishing(s) == [(0, 2), (1, 3)]
    s = CyclotomicSum.make(c3, 2, {0: 1, 3: 1, 6: 1})
    assert decompose_vanishing(s) == [(0, 3, 6)]
    s = CyclotomicSum.make(c2, 1, {0: 1, 1: 1})
    assert decompose_vanishing(s) == [(0, 1)]


def test_decompose_vanishing_rejections():
    ctx = PrimeContext(2)
    with pytest.raises(NotVanishing):
        decompose_vanishing(CyclotomicSum.make(ctx, 1, {0: 1}))
    with pytest.raises(NotIndicator):
        decompose_vanishing(CyclotomicSum.make(ctx, 1, {0: 2, 1: 2}))


def test_decompose_vanishing_random_unions_of_cosets():
    rng = random.Random(113)
    for p in (2, 3, 5):
        ctx = PrimeContext(p)
        for _ in range(80):
            n = rng.randint(1, 3)
            q = p ** (n - 1)
            residues = rng.sample(range(q), rng.randint(1, min(4, q)))
            support = {r + t * q for r in residues for t in range(p)}
            s = CyclotomicSum.make(ctx, n, {j: 1 for j in support})
            blocks = decompose_vanishing(s)
            assert [b for b in blocks] == [
                tuple(r + t * q for t in range(p)) for r in sorted(residues)
            ]
            assert len(support) % p == 0
            for block in blocks:
                assert CyclotomicSum.make(ctx, n, {j: 1 for j in block}).is_zero()


def test_vanishing_level_set_frozen():
    c2 = PrimeContext(2)
    assert vanishing_level_set(c2, [0, 3], range(-3, 1)) == frozenset({-1})
    c5 = PrimeContext(5)
    assert vanishing_level_set(c5, range(5), range(-2, 1)) == frozenset({-1})
    # scaling the set shifts the level set
    assert vanishing_level_set(c2, [0, 6], range(-4, 1)) == frozenset({-2})
