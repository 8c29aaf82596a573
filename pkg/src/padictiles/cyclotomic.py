"""Exact integer combinations of p-power roots of unity, with a decidable zero test.

A sum is stored against a declared order p**n; the zero test never consults
floating point.  For prime-power order the integer relations among the roots
are spanned by the "full coset" sums (each coset of the index-p subgroup adds
to zero), so vanishing is equivalent to the coefficient function being
constant on every such coset.  That criterion is applied verbatim.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Mapping

from .padic import PAdicScalar, PrimeContext, RootOfUnity, character

__all__ = [
    "CyclotomicSum",
    "NotVanishing",
    "NotIndicator",
    "decompose_vanishing",
    "vanishing_level_set",
]


class NotVanishing(ValueError):
    """Raised when a decomposition is requested for a sum that is not zero."""


class NotIndicator(ValueError):
    """Raised when a decomposition is requested for a sum with coefficients outside {0, 1}."""


class CyclotomicSum:
    """sum_j a_j * w**j with w = exp(2*pi*i / p**n) and integer a_j.

    Exponents live in Z/p**n; construction merges duplicates and drops zero
    coefficients but keeps the declared order (normalize() minimizes it).
    Because the zero value has many reduced representations, __eq__ is
    semantic: a - b is tested for zero.
    """

    __slots__ = ("context", "n", "coeffs")

    def __init__(self, context: PrimeContext, n: int, coeffs: dict[int, int]):
        # trusted constructor; use make() for unreduced input
        self.context = context
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def make(
        cls,
        context: PrimeContext,
        n: int,
        coeffs: Mapping[int, int] | Iterable[tuple[int, int]],
    ) -> "CyclotomicSum":
        if n < 0:
            raise ValueError("order exponent must be >= 0")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        q = context.p**n
        acc: dict[int, int] = {}
        for j, a in items:
            if a != int(a):
                raise ValueError("coefficients must be integers")
            j %= q
            acc[j] = acc.get(j, 0) + int(a)
        return cls(context, n, {j: a for j, a in acc.items() if a != 0})

    @classmethod
    def constant(cls, context: PrimeContext, a: int) -> "CyclotomicSum":
        return cls(context, 0, {0: a} if a else {})

    @classmethod
    def from_roots(cls, context: PrimeContext, roots: Iterable[RootOfUnity]) -> "CyclotomicSum":
        """Sum of unit roots (each with coefficient 1), at the least common order."""
        roots = list(roots)
        n = max((r.n for r in roots), default=0)
        p = context.p
        acc: dict[int, int] = {}
        for r in roots:
            if r.context != context:
                raise ValueError("root context differs")
            j = r.k * p ** (n - r.n)
            acc[j] = acc.get(j, 0) + 1
        return cls(context, n, {j: a for j, a in acc.items() if a != 0})

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def normalize(self) -> "CyclotomicSum":
        """Equal sum at the least order: divide exponents by p while possible."""
        n, coeffs = self.n, self.coeffs
        if not coeffs:
            return CyclotomicSum(self.context, 0, {})
        p = self.context.p
        while n >= 1 and all(j % p == 0 for j in coeffs):
            n -= 1
            coeffs = {j // p: a for j, a in coeffs.items()}
        return CyclotomicSum(self.context, n, dict(coeffs))

    def is_zero(self) -> bool:
        """Exact zero test: constant coefficients on every coset of the index-p subgroup.

        Valid at the declared order (minimality not required): the relation
        module of roots of exact order p**n is the integer span of the full
        coset vectors {r + t*p**(n-1) : 0 <= t < p}.
        """
        if not self.coeffs:
            return True
        if self.n == 0:
            return False
        p = self.context.p
        q = p ** (self.n - 1)
        coeffs = self.coeffs
        checked: set[int] = set()
        for j in coeffs:
            r = j % q
            if r in checked:
                continue
            checked.add(r)
            a = coeffs.get(r, 0)
            for t in range(1, p):
                if coeffs.get(r + t * q, 0) != a:
                    return False
        return True

    def _lift(self, n: int) -> dict[int, int]:
        f = self.context.p ** (n - self.n)
        return {j * f: a for j, a in self.coeffs.items()}

    def __add__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        self._check(other)
        n = max(self.n, other.n)
        acc = self._lift(n)
        for j, a in other._lift(n).items():
            acc[j] = acc.get(j, 0) + a
        return CyclotomicSum(self.context, n, {j: a for j, a in acc.items() if a})

    def __neg__(self) -> "CyclotomicSum":
        return CyclotomicSum(self.context, self.n, {j: -a for j, a in self.coeffs.items()})

    def __sub__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        return self + (-other)

    def __mul__(self, other: "CyclotomicSum | int") -> "CyclotomicSum":
        if isinstance(other, int):
            if other == 0:
                return CyclotomicSum(self.context, self.n, {})
            return CyclotomicSum(self.context, self.n, {j: a * other for j, a in self.coeffs.items()})
        self._check(other)
        n = max(self.n, other.n)
        q = self.context.p**n
        left, right = self._lift(n), other._lift(n)
        acc: dict[int, int] = {}
        for j1, a1 in left.items():
            for j2, a2 in right.items():
                j = (j1 + j2) % q
                acc[j] = acc.get(j, 0) + a1 * a2
        return CyclotomicSum(self.context, n, {j: a for j, a in acc.items() if a})

    __rmul__ = __mul__

    def scale_exponents(self, u: int) -> "CyclotomicSum":
        """Apply the Galois action w -> w**u; u must be a unit mod p (u = -1 conjugates)."""
        if math.gcd(u, self.context.p) != 1:
            raise ValueError("exponent scale must be a unit mod p")
        if self.n == 0:
            return self
        q = self.context.p**self.n
        return CyclotomicSum(self.context, self.n, {(u * j) % q: a for j, a in self.coeffs.items()})

    def conjugate(self) -> "CyclotomicSum":
        return self.scale_exponents(-1)

    def value_if_integer(self) -> int | None:
        """The sum's value when it is rational (hence a rational integer), else None."""
        s = self.normalize()
        if not s.coeffs:
            return 0
        if s.n == 0:
            return s.coeffs.get(0, 0)
        # if the value is an integer r, (s - r) vanishes, which pins r down on
        # the coset of 0: r = a_0 - a_(p**(n-1))
        q = s.context.p ** (s.n - 1)
        r = s.coeffs.get(0, 0) - s.coeffs.get(q, 0)
        return r if s.equals_int(r) else None

    def equals_int(self, r: int) -> bool:
        return (self - CyclotomicSum.constant(self.context, r)).is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicSum):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # semantic equality; not hashable

    def __repr__(self) -> str:
        return f"CyclotomicSum(p={self.context.p}, n={self.n}, coeffs={dict(sorted(self.coeffs.items()))})"

    def numeric(self) -> complex:
        """Float approximation; cross-check and report aid, never a decision input."""
        q = self.context.p**self.n
        return sum(a * cmath.exp(2j * cmath.pi * j / q) for j, a in self.coeffs.items())

    def to_json_dict(self) -> dict:
        return {
            "p": self.context.p,
            "n": self.n,
            "coeffs": {str(j): a for j, a in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CyclotomicSum":
        ctx = PrimeContext(int(d["p"]))
        return cls.make(ctx, int(d["n"]), {int(j): int(a) for j, a in d["coeffs"].items()})

    def _check(self, other: "CyclotomicSum") -> None:
        if self.context != other.context:
            raise ValueError("CyclotomicSum contexts differ")


def decompose_vanishing(s: CyclotomicSum) -> list[tuple[int, ...]]:
    """Partition the support of a vanishing 0/1-coefficient sum into full cosets.

    Each returned block is a coset {r + t*p**(n-1)} of size p in the declared
    order's exponent group, and the sub-sum over each block is itself zero.
    Blocks are sorted by their residue.
    """
    for a in s.coeffs.values():
        if a != 1:
            raise NotIndicator(f"coefficient {a} outside {{0, 1}}")
    if not s.is_zero():
        raise NotVanishing("sum is not zero")
    if not s.coeffs:
        return []
    p = s.context.p
    q = p ** (s.n - 1)  # s.n >= 1 here: a nonzero constant cannot vanish
    groups: dict[int, list[int]] = {}
    for j in s.coeffs:
        groups.setdefault(j % q, []).append(j)
    blocks = []
    for r in sorted(groups):
        block = tuple(sorted(groups[r]))
        if len(block) != p:  # guaranteed by the zero test; belt and braces
            raise NotVanishing(f"coset of {r} is not full")
        blocks.append(block)
    return blocks


def vanishing_level_set(
    context: PrimeContext,
    elements: Iterable[PAdicScalar],
    levels: Iterable[int],
) -> frozenset[int]:
    """The levels i (from the given candidates) where sum_c of chi(p**i * c) vanishes.

    chi is the standard character; the sums are exact cyclotomic sums and the
    zero test is exact.
    """
    elems = [e if isinstance(e, PAdicScalar) else context.scalar(e) for e in elements]
    out = set()
    for i in levels:
        xi = context.scalar(context.pow(i))
        s = CyclotomicSum.from_roots(context, (character(xi, c) for c in elems))
        if s.is_zero():
            out.add(i)
    return frozenset(out)
