"""Compact open subsets of Q_p as canonical frames, with exact Fourier data.

A compact open set is a finite union of balls; here it is always reduced to
the canonical form p**v * (digits + p**M Z_p): a scale exponent v, a depth M,
and a set of digits in [0, p**M).  Canonical means M is minimal and the digit
set is not uniformly divisible by p, so equal sets have equal frames.

Fourier values of indicators are p-power multiples of cyclotomic integer
sums (ScaledCyclotomic); autocorrelations are exact rationals obtained by
counting digit overlaps.  No floating point anywhere on the decision paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cyclotomic import CyclotomicSum
from .padic import Ball, PAdicScalar, PrimeContext, character

__all__ = [
    "EmptySet",
    "CompactOpenSet",
    "ScaledCyclotomic",
    "DigitTree",
    "normalize_set",
    "indicator_fourier",
    "autocorrelation",
    "local_constancy_parameter",
    "digit_tree",
    "frame_branching_set",
    "is_p_homogeneous",
]


class EmptySet(ValueError):
    """Raised when an operation needs a nonempty union of balls."""


def _as_fraction(x: PAdicScalar | Fraction | int) -> Fraction:
    if isinstance(x, PAdicScalar):
        return x.value
    return Fraction(x)


@dataclass(frozen=True, slots=True)
class CompactOpenSet:
    """p**v * (c + p**M Z_p) over the digit set, in canonical frame form."""

    context: PrimeContext
    v: int
    M: int
    digits: tuple[int, ...]

    @classmethod
    def make(
        cls, context: PrimeContext, v: int, M: int, digits: Iterable[int]
    ) -> "CompactOpenSet":
        """Validate and reduce to the canonical frame.

        Two reductions run to a fixpoint: merge a level when every digit
        class mod p**(M-1) is present with all p children or none, and shift
        the scale when every digit is divisible by p.
        """
        if M < 0:
            raise ValueError("frame depth M must be >= 0")
        p = context.p
        ds = set()
        for d in digits:
            d = int(d)
            if not 0 <= d < p**M:
                raise ValueError(f"digit {d} outside [0, p**M)")
            ds.add(d)
        if not ds:
            raise EmptySet("a compact open set needs at least one digit")
        while M >= 1:
            q = p ** (M - 1)
            groups: dict[int, int] = {}
            for d in ds:
                groups[d % q] = groups.get(d % q, 0) + 1
            if all(n == p for n in groups.values()):
                ds = set(groups)
                M -= 1
                continue
            if all(d % p == 0 for d in ds):
                ds = {d // p for d in ds}
                v += 1
                M -= 1
                continue
            break
        return cls(context, v, M, tuple(sorted(ds)))

    def measure(self) -> Fraction:
        return len(self.digits) * self.context.pow(-(self.v + self.M))

    def member(self, x: PAdicScalar | Fraction | int) -> bool:
        ctx = self.context
        r = _as_fraction(x) * ctx.pow(-self.v)
        if ctx.valuation(r) < 0:
            return False
        return ctx.residue(r, self.M) in self.digits

    def digits_in_frame(self, v2: int, M2: int) -> tuple[int, ...]:
        """The same set written with frame (v2, M2); must be a refinement."""
        if v2 > self.v or v2 + M2 < self.v + self.M:
            raise ValueError("target frame does not refine the canonical frame")
        p = self.context.p
        f = p ** (self.v - v2)
        tail = p ** ((v2 + M2) - (self.v + self.M))
        step = f * p**self.M
        return tuple(
            sorted(c * f + t * step for c in self.digits for t in range(tail))
        )

    def balls(self) -> list[Ball]:
        """The digit cells as canonical balls (pairwise disjoint, union = set)."""
        return [Ball.make(self.context, self.v, self.M, c) for c in self.digits]

    def to_json_dict(self) -> dict:
        return {
            "p": self.context.p,
            "v": self.v,
            "M": self.M,
            "digits": list(self.digits),
        }

    @classmethod
    def from_json_dict(cls, d: dict, warn=None) -> "CompactOpenSet":
        """Parse and canonicalize; warn(message) is called if the input was not canonical."""
        ctx = PrimeContext(int(d["p"]))
        out = cls.make(ctx, int(d["v"]), int(d["M"]), [int(x) for x in d["digits"]])
        raw = (int(d["v"]), int(d["M"]), tuple(sorted(int(x) for x in d["digits"])))
        if warn is not None and raw != (out.v, out.M, out.digits):
            warn(f"input frame (v={raw[0]}, M={raw[1]}) was not canonical; "
                 f"reduced to (v={out.v}, M={out.M})")
        return out


def normalize_set(context: PrimeContext, balls: Iterable[Ball]) -> CompactOpenSet:
    """Union of balls -> canonical compact open set."""
    balls = list(balls)
    if not balls:
        raise EmptySet("empty union of balls")
    for b in balls:
        if b.context != context:
            raise ValueError("ball context differs")
    p = context.p
    v = min(b.v for b in balls)
    M = max(b.v + b.M for b in balls) - v
    ds: set[int] = set()
    for b in balls:
        f = p ** (b.v - v)
        tail = p ** ((v + M) - (b.v + b.M))
        step = f * p**b.M
        for t in range(tail):
            ds.add(b.c * f + t * step)
    return CompactOpenSet.make(context, v, M, ds)


@dataclass(frozen=True, slots=True)
class ScaledCyclotomic:
    """p**power times a cyclotomic integer sum: the exact value of 1̂ at a point."""

    power: int
    sum: CyclotomicSum

    @property
    def context(self) -> PrimeContext:
        return self.sum.context

    def is_zero(self) -> bool:
        return self.sum.is_zero()

    def equals_rational(self, q: Fraction | int) -> bool:
        """Exact comparison against a rational.

        The sum is an algebraic integer, so the value can only equal q when
        q * p**-power is a rational integer.
        """
        r = Fraction(q) * self.context.pow(-self.power)
        if r.denominator != 1:
            return False
        return self.sum.equals_int(r.numerator)

    def value_if_rational(self) -> Fraction | None:
        r = self.sum.value_if_integer()
        if r is None:
            return None
        return r * self.context.pow(self.power)

    def conjugate(self) -> "ScaledCyclotomic":
        return ScaledCyclotomic(self.power, self.sum.conjugate())

    def __mul__(self, other: "ScaledCyclotomic") -> "ScaledCyclotomic":
        return ScaledCyclotomic(self.power + other.power, self.sum * other.sum)

    def __add__(self, other: "ScaledCyclotomic") -> "ScaledCyclotomic":
        e = min(self.power, other.power)
        p = self.context.p
        left = self.sum * p ** (self.power - e)
        right = other.sum * p ** (other.power - e)
        return ScaledCyclotomic(e, left + right)

    def numeric(self) -> complex:
        """Float value; report/cross-check aid only."""
        return float(self.context.pow(self.power)) * self.sum.numeric()

    def to_json_dict(self) -> dict:
        return {"power": self.power, "sum": self.sum.to_json_dict()}


def indicator_fourier(
    omega: CompactOpenSet, xi: PAdicScalar | Fraction | int
) -> ScaledCyclotomic:
    """1̂_Ω(ξ) = p**-(v+M) * sum over digits c of χ(-ξ p**v c); zero beyond p**(v+M).

    The support cutoff |ξ|_p <= p**(v+M) is exact: past it the value is the
    empty sum.
    """
    ctx = omega.context
    x = _as_fraction(xi)
    e = -(omega.v + omega.M)
    if x != 0 and ctx.valuation(x) < e:
        return ScaledCyclotomic(e, CyclotomicSum.make(ctx, 0, {}))
    scale = ctx.pow(omega.v)
    xs = ctx.scalar(x)
    roots = [character(xs, ctx.scalar(-scale * c)) for c in omega.digits]
    return ScaledCyclotomic(e, CyclotomicSum.from_roots(ctx, roots))


def autocorrelation(
    omega: CompactOpenSet, xi: PAdicScalar | Fraction | int
) -> Fraction:
    """Measure of Ω ∩ (Ω + ξ), exactly, by digit-shift overlap counting."""
    ctx = omega.context
    x = _as_fraction(xi)
    if x == 0:
        return omega.measure()
    vx = ctx.valuation(x)
    v2 = min(omega.v, vx)
    M2 = omega.v + omega.M - v2
    ds = set(omega.digits_in_frame(v2, M2))
    q = ctx.p**M2
    s = ctx.residue(x * ctx.pow(-v2), M2)
    hit = sum(1 for d in ds if (d + s) % q in ds)
    return hit * ctx.pow(-(v2 + M2))


def local_constancy_parameter(omega: CompactOpenSet) -> int:
    """The exponent ℓ with sup over Ω of |x|_p = p**-ℓ.

    1̂_Ω is then constant on every ball of radius p**ℓ, which is what window
    verifications use to pick representatives.
    """
    ctx = omega.context
    out = None
    for c in omega.digits:
        e = omega.v + omega.M if c == 0 else omega.v + ctx.valuation(c)
        out = e if out is None else min(out, e)
    return out


def frame_branching_set(p: int, M: int, digits: Iterable[int]) -> frozenset[int] | None:
    """Levels where the digit tree branches fully, or None if any level is mixed.

    Level i is branching when every residue mod p**i present extends to
    exactly p residues mod p**(i+1); unary when every one extends to exactly
    one.  Anything else disqualifies the set.
    """
    digits = list(digits)
    levels = set()
    for i in range(M):
        q = p**i
        qq = q * p
        children: dict[int, set[int]] = {}
        for d in digits:
            children.setdefault(d % q, set()).add(d % qq)
        counts = {len(ch) for ch in children.values()}
        if counts == {p}:
            levels.add(i)
        elif counts != {1}:
            return None
    return frozenset(levels)


@dataclass(frozen=True, slots=True)
class DigitTree:
    """Residue tree of a canonical digit set: level i holds residues mod p**(i+1)."""

    context: PrimeContext
    depth: int
    levels: tuple[tuple[int, ...], ...]
    child_counts: tuple[tuple[tuple[int, int], ...], ...]

    def leaf_count(self) -> int:
        return len(self.levels[-1]) if self.depth else 1

    def branching_set(self) -> frozenset[int] | None:
        levels = set()
        for i, row in enumerate(self.child_counts):
            counts = {n for _, n in row}
            if counts == {self.context.p}:
                levels.add(i)
            elif counts != {1}:
                return None
        return frozenset(levels)


def digit_tree(omega: CompactOpenSet) -> DigitTree:
    p = omega.context.p
    levels = []
    counts = []
    for i in range(omega.M):
        q = p**i
        qq = q * p
        children: dict[int, set[int]] = {}
        for d in omega.digits:
            children.setdefault(d % q, set()).add(d % qq)
        levels.append(tuple(sorted(set(d % qq for d in omega.digits))))
        counts.append(tuple((r, len(children[r])) for r in sorted(children)))
    return DigitTree(omega.context, omega.M, tuple(levels), tuple(counts))


def is_p_homogeneous(omega: CompactOpenSet) -> tuple[bool, frozenset[int] | None]:
    """Whether the canonical digit tree branches fully-or-not-at-all per level.

    Returns (flag, branching levels); the levels refer to the canonical frame
    (a set equal to all of Z_p reduces to depth 0 with no levels at all).
    """
    levels = frame_branching_set(omega.context.p, omega.M, omega.digits)
    return (levels is not None, levels)
