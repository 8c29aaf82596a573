"""Exact p-adic scalar arithmetic: valuations, fractional parts, characters, balls.

Everything here is computed over the rationals.  Floating point never enters:
a p-adic absolute value is carried as its exponent, a unit root as an exact
exponent pair, a ball as an integer triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = [
    "PrimeContext",
    "PAdicScalar",
    "RootOfUnity",
    "Ball",
    "BallRelation",
    "valuation",
    "frac_part",
    "character",
    "ball_member",
    "ball_relation",
]

# Valuation of 0.  math.inf compares correctly against every int, which is all
# the ordering the callers need.
INF = math.inf


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _int_valuation(p: int, n: int) -> int:
    """Exponent of p in a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class PrimeContext:
    """The prime p that every object in a computation is pinned to.

    Mixing objects from different contexts is a bug, not a coercion; all
    binary operations check for it.
    """

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")

    def pow(self, e: int) -> Fraction:
        """p**e as an exact rational; e may be negative."""
        return Fraction(self.p) ** e

    def valuation(self, x: Fraction | int) -> int | float:
        """v_p(x); math.inf for x = 0."""
        x = Fraction(x)
        if x == 0:
            return INF
        return _int_valuation(self.p, x.numerator) - _int_valuation(self.p, x.denominator)

    def abs_exp(self, x: Fraction | int) -> int | float:
        """Exponent e with |x|_p = p**e (so -valuation); -inf for 0."""
        return -self.valuation(x)

    def residue(self, x: Fraction | int, m: int) -> int:
        """x mod p**m as an integer in [0, p**m), for x with v_p(x) >= 0.

        The denominator of x is a unit mod p**m, so its inverse is exact.
        """
        x = Fraction(x)
        q = self.p**m
        if x.denominator % self.p == 0:
            raise ValueError(f"residue undefined: v_{self.p}({x}) < 0")
        return (x.numerator * pow(x.denominator, -1, q)) % q if q > 1 else 0

    def frac_part(self, x: Fraction | int) -> Fraction:
        """The p-adic fractional part of x: a rational in [0, 1).

        Digit extraction on the negative-valuation tail: strip one power of p
        at a time, emitting the digit of the unit part.  {x} has denominator
        exactly p**(-v_p(x)) when v_p(x) < 0, and is 0 otherwise.
        """
        x = Fraction(x)
        v = self.valuation(x)
        if v >= 0:
            return Fraction(0)
        out = Fraction(0)
        while x != 0:
            v = self.valuation(x)
            if v >= 0:
                break
            # digit of p**v: residue mod p of the unit part x / p**v
            u = x * self.pow(-v)
            a = u.numerator * pow(u.denominator, -1, self.p) % self.p
            out += a * self.pow(v)
            x -= a * self.pow(v)
        return out

    def scalar(self, value: Fraction | int | str) -> "PAdicScalar":
        if isinstance(value, str):
            value = Fraction(value)
        return PAdicScalar(self, Fraction(value))


@dataclass(frozen=True, slots=True)
class PAdicScalar:
    """A rational number viewed inside Q_p (exact; the embedding is the identity)."""

    context: PrimeContext
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def _check(self, other: "PAdicScalar") -> None:
        if self.context != other.context:
            raise ValueError("PAdicScalar contexts differ")

    def __add__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check(other)
        return PAdicScalar(self.context, self.value + other.value)

    def __sub__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check(other)
        return PAdicScalar(self.context, self.value - other.value)

    def __mul__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check(other)
        return PAdicScalar(self.context, self.value * other.value)

    def __truediv__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero scalar")
        return PAdicScalar(self.context, self.value / other.value)

    def __neg__(self) -> "PAdicScalar":
        return PAdicScalar(self.context, -self.value)

    def valuation(self) -> int | float:
        return self.context.valuation(self.value)

    def frac_part(self) -> Fraction:
        return self.context.frac_part(self.value)


def valuation(x: PAdicScalar) -> int | float:
    """v_p(x) as an integer; math.inf for 0."""
    return x.valuation()


def frac_part(x: PAdicScalar) -> Fraction:
    """p-adic fractional part, a rational in [0, 1)."""
    return x.frac_part()


@dataclass(frozen=True, slots=True)
class RootOfUnity:
    """exp(2*pi*i * k / p**n), stored as the exact exponent pair (n, k).

    Canonical form: 0 <= k < p**n and (n == 0 or p does not divide k), so the
    order is exactly p**n and equality is plain field equality.
    """

    context: PrimeContext
    n: int
    k: int

    @classmethod
    def make(cls, context: PrimeContext, n: int, k: int) -> "RootOfUnity":
        if n < 0:
            raise ValueError("order exponent must be >= 0")
        p = context.p
        k %= p**n
        if k == 0:
            return cls(context, 0, 0)
        while k % p == 0:
            k //= p
            n -= 1
        return cls(context, n, k)

    def exponent(self) -> Fraction:
        """The exponent k / p**n in [0, 1)."""
        return Fraction(self.k, self.context.p**self.n)

    def mul(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.context != other.context:
            raise ValueError("RootOfUnity contexts differ")
        n = max(self.n, other.n)
        p = self.context.p
        k = self.k * p ** (n - self.n) + other.k * p ** (n - other.n)
        return RootOfUnity.make(self.context, n, k)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity.make(self.context, self.n, -self.k)

    def is_one(self) -> bool:
        return self.n == 0

    def numeric(self) -> complex:
        """Float approximation; for reporting and numeric cross-checks only."""
        return complex(math.cos(2 * math.pi * self.k / self.context.p**self.n),
                       math.sin(2 * math.pi * self.k / self.context.p**self.n))


def character(xi: PAdicScalar, x: PAdicScalar) -> RootOfUnity:
    """The standard unitary character of Q_p at xi*x: exp(2*pi*i*{xi*x})."""
    xi._check(x)
    ctx = xi.context
    f = ctx.frac_part(xi.value * x.value)
    if f == 0:
        return RootOfUnity(ctx, 0, 0)
    # denominator of {y} is exactly p**m with m = -v_p(y) > 0
    m = _int_valuation(ctx.p, f.denominator)
    return RootOfUnity.make(ctx, m, f.numerator * ctx.p**m // f.denominator)


class BallRelation(Enum):
    EQUAL = "equal"
    FIRST_INSIDE_SECOND = "first-inside-second"
    SECOND_INSIDE_FIRST = "second-inside-first"
    DISJOINT = "disjoint"


@dataclass(frozen=True, slots=True)
class Ball:
    """The closed-open ball p**v * (c + p**M Z_p), radius p**-(v+M).

    Canonical form: 0 <= c < p**M, and p does not divide c unless c == 0;
    when c == 0 the depth M is 0 (a ball around 0 is determined by its
    radius alone).  make() reduces any triple to this form, so equality of
    canonical balls is equality of the sets.
    """

    context: PrimeContext
    v: int
    M: int
    c: int

    @classmethod
    def make(cls, context: PrimeContext, v: int, M: int, c: int) -> "Ball":
        if M < 0:
            raise ValueError("ball depth M must be >= 0")
        p = context.p
        c %= p**M
        while c != 0 and c % p == 0:
            c //= p
            v += 1
            M -= 1
        if c == 0:
            v += M
            M = 0
        return cls(context, v, M, c)

    @classmethod
    def around(cls, x: PAdicScalar, radius_exp: int) -> "Ball":
        """The ball of p-adic radius p**radius_exp around x."""
        ctx = x.context
        vm = -radius_exp  # v + M of the result
        xv = ctx.valuation(x.value)
        if xv >= vm:
            return cls.make(ctx, vm, 0, 0)
        # x = p**xv * unit; digits of the unit below the radius cutoff survive
        M = vm - xv
        return cls.make(ctx, xv, M, ctx.residue(x.value * ctx.pow(-xv), M))

    def center(self) -> PAdicScalar:
        return PAdicScalar(self.context, self.c * self.context.pow(self.v))

    def radius_exp(self) -> int:
        """Exponent r with radius = p**r."""
        return -(self.v + self.M)

    def measure(self) -> Fraction:
        """Haar measure, normalized so Z_p has measure 1."""
        return self.context.pow(-(self.v + self.M))


def ball_member(x: PAdicScalar, b: Ball) -> bool:
    """Exact membership test: v_p(x - center) >= v + M."""
    if x.context != b.context:
        raise ValueError("contexts differ")
    return x.context.valuation(x.value - b.c * x.context.pow(b.v)) >= b.v + b.M


def ball_relation(a: Ball, b: Ball) -> BallRelation:
    """Ultrametric dichotomy: two balls are nested or disjoint, never partial.

    Driven entirely by radius exponents and one center-distance valuation.
    """
    if a.context != b.context:
        raise ValueError("contexts differ")
    ctx = a.context
    ra, rb = a.radius_exp(), b.radius_exp()
    d = ctx.valuation(a.c * ctx.pow(a.v) - b.c * ctx.pow(b.v))
    # centers within the larger radius <=> the smaller ball sits inside
    if d >= -max(ra, rb):
        if ra == rb:
            return BallRelation.EQUAL
        if ra < rb:
            return BallRelation.FIRST_INSIDE_SECOND
        return BallRelation.SECOND_INSIDE_FIRST
    return BallRelation.DISJOINT
