"""Window-exact analysis of discrete sets in Q_p against compact open sets.

The infinite objects (spectra, tiling complements) enter as declared
truncations: a finite element list plus the exponent of the ball the list is
claimed to exhaust.  Every check here is then exact on an explicit window —
zero-sphere scans of the counting measure's Fourier data, density and
uniformity counts, tiling coverage, the spectral quadratic identity, and the
construction of a tiling complement from a spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .copen import (
    CompactOpenSet,
    ScaledCyclotomic,
    frame_branching_set,
    autocorrelation,
    indicator_fourier,
    local_constancy_parameter,
)
from .cyclotomic import CyclotomicSum
from .decide import (
    ConstructionFailed,
    DigitSet,
    complement_from_homogeneity,
    spectrum_from_homogeneity,
)
from .padic import Ball, PAdicScalar, PrimeContext, character

__all__ = [
    "WindowTooSmall",
    "NotASpectrumEvidence",
    "SphereStatus",
    "UniformDiscreteSet",
    "Failure",
    "PairReport",
    "l_truncation",
    "n_f_of",
    "zero_sphere_scan",
    "zero_bound_check",
    "density",
    "uniformity_check",
    "verify_tiling_pair",
    "verify_spectral_pair",
    "spectrum_to_tiling_complement",
    "lifted_spectrum",
    "lifted_tiling_complement",
]


class WindowTooSmall(ValueError):
    """The declared truncation window cannot support the requested computation."""


class NotASpectrumEvidence(RuntimeError):
    """A sphere's truncated sums vanished and then stopped vanishing.

    For a genuine spectrum each sphere's sums are eventually zero or never
    zero; a zero followed by a nonzero at a deeper truncation is evidence the
    input is not a spectrum (or the window is lying).  Carries the sphere
    level and the offending truncation exponent.
    """

    def __init__(self, level: int, truncation: int, message: str):
        super().__init__(message)
        self.level = level
        self.truncation = truncation


class SphereStatus(Enum):
    IN_ZERO_SET = "InZeroSet"
    NOT_IN_ZERO_SET = "NotInZeroSet"


def _as_fraction(x) -> Fraction:
    if isinstance(x, PAdicScalar):
        return x.value
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, slots=True)
class UniformDiscreteSet:
    """A declared truncation: elements are exactly E ∩ B(0, p**window_exp)."""

    context: PrimeContext
    window_exp: int
    elements: tuple[Fraction, ...]

    @classmethod
    def make(cls, context: PrimeContext, window_exp: int, elements: Iterable) -> "UniformDiscreteSet":
        elems = sorted({_as_fraction(x) for x in elements})
        if not elems:
            raise ValueError("truncation must contain at least one element")
        for x in elems:
            if x != 0 and context.valuation(x) < -window_exp:
                raise WindowTooSmall(
                    f"element {x} lies outside the declared window B(0, p**{window_exp})"
                )
        return cls(context, window_exp, tuple(elems))

    def n_E(self) -> int | None:
        """Largest valuation of a pairwise difference; None for a singleton."""
        best: int | None = None
        elems = self.elements
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                v = self.context.valuation(elems[i] - elems[j])
                best = v if best is None else max(best, v)
        return best

    def count_in_ball(self, center, radius_exp: int) -> int:
        c = _as_fraction(center)
        return sum(
            1 for x in self.elements if self.context.valuation(x - c) >= -radius_exp
        )

    def to_json_dict(self) -> dict:
        return {
            "p": self.context.p,
            "window_exp": self.window_exp,
            "elements": [_rat(x) for x in self.elements],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "UniformDiscreteSet":
        ctx = PrimeContext(int(d["p"]))
        return cls.make(ctx, int(d["window_exp"]), [Fraction(s) for s in d["elements"]])


def l_truncation(context: PrimeContext, k: int) -> tuple[Fraction, ...]:
    """The canonical representatives {j / p**k : 0 <= j < p**k} of Q_p/Z_p up to p**k.

    This is the depth-k truncation of the standard complete representative
    set of Q_p/Z_p (every coset with a representative of absolute value
    <= p**k appears exactly once; 0 represents Z_p itself).
    """
    if k < 0:
        raise ValueError("truncation depth must be >= 0")
    q = context.p**k
    return tuple(Fraction(j, q) for j in range(q))


@dataclass(frozen=True, slots=True)
class Failure:
    xi: Fraction
    lhs: object  # Fraction, or ScaledCyclotomic when the exact value is irrational
    rhs: Fraction

    def to_json_dict(self) -> dict:
        if isinstance(self.lhs, ScaledCyclotomic):
            r = self.lhs.value_if_rational()
            if r is not None:
                lhs = _rat(r)
            else:
                lhs = self.lhs.to_json_dict()
                lhs["numeric_hint"] = repr(self.lhs.numeric())
        else:
            lhs = _rat(self.lhs)
        return {"xi": _rat(self.xi), "lhs": lhs, "rhs": _rat(self.rhs)}


@dataclass(frozen=True, slots=True)
class PairReport:
    kind: str
    verified_window: Ball
    checked_points: int
    failure: Failure | None
    derived: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "Verified" if self.failure is None else "FailedAt"

    def to_json_dict(self) -> dict:
        win = self.verified_window
        derived = {}
        for key, val in sorted(self.derived.items()):
            if isinstance(val, Fraction):
                derived[key] = _rat(val)
            elif isinstance(val, (list, tuple)):
                derived[key] = list(val)
            else:
                derived[key] = val
        return {
            "kind": self.kind,
            "verified_window": {"v": win.v, "M": win.M, "c": win.c},
            "checked_points": self.checked_points,
            "status": self.status,
            "failure": None if self.failure is None else self.failure.to_json_dict(),
            "derived": derived,
        }


def n_f_of(omega: CompactOpenSet) -> int:
    """Least n such that the autocorrelation is positive on all of B(0, p**-n).

    Checked on one representative per cell of radius p**-(v+M), where the
    autocorrelation is constant.  The scan starts below any possible answer
    (the smaller of -(v+M)-1 and the diameter exponent) and walks up; it
    terminates by n = v+M, where only the cell of 0 remains.
    """
    ctx = omega.context
    p = ctx.p
    vm = omega.v + omega.M
    n = min(-vm - 1, local_constancy_parameter(omega))
    while True:
        reps = p ** max(vm - n, 0)
        if all(autocorrelation(omega, t * ctx.pow(n)) > 0 for t in range(reps)):
            return n
        n += 1


def _sphere_status(e: UniformDiscreteSet, n: int) -> SphereStatus:
    ctx = e.context
    if n > e.window_exp:
        raise WindowTooSmall(
            f"sphere level {n} needs the truncation at p**{n}, window is p**{e.window_exp}"
        )
    # Truncations at or below the sphere level contribute only full-character
    # terms (every summand is 1), so the informative range starts at level n;
    # clamp to the first nonempty truncation.
    if 0 in e.elements:
        first_nonempty = -e.window_exp
    else:
        first_nonempty = -max(ctx.valuation(x) for x in e.elements if x != 0)
    k_first = max(n, first_nonempty)
    xi = ctx.scalar(ctx.pow(n))
    seen_zero = False
    last_zero = False
    for k in range(k_first, e.window_exp + 1):
        roots = [
            character(xi, ctx.scalar(x))
            for x in e.elements
            if ctx.valuation(x) >= -k
        ]
        s = CyclotomicSum.from_roots(ctx, roots)
        last_zero = s.is_zero()
        if last_zero:
            seen_zero = True
        elif seen_zero:
            raise NotASpectrumEvidence(
                n,
                k,
                f"sphere level {n}: truncated sum vanished then came back nonzero at p**{k}",
            )
    return SphereStatus.IN_ZERO_SET if last_zero else SphereStatus.NOT_IN_ZERO_SET


def zero_sphere_scan(e: UniformDiscreteSet, levels: Iterable[int]) -> dict[int, SphereStatus]:
    """Classify each sphere S(0, p**-n) against the zero set of the measure's transform.

    One representative ξ = p**n per sphere suffices (unit scaling permutes
    exponents of each truncated sum without changing vanishing).  A sum is
    tested at every truncation from the first informative one (the later of
    B(0, p**-n) and the first nonempty ball) out to the window.
    """
    return {n: _sphere_status(e, n) for n in sorted(set(levels))}


def zero_bound_check(e: UniformDiscreteSet) -> bool:
    """No zero sphere at radius p**(n_E + 2) or beyond, within the window.

    Vacuously true for a singleton (no pairwise valuations; flagged as such
    in reports rather than here).
    """
    ne = e.n_E()
    if ne is None:
        return True
    levels = range(-e.window_exp, -(ne + 2) + 1)
    statuses = zero_sphere_scan(e, levels)
    return all(s is SphereStatus.NOT_IN_ZERO_SET for s in statuses.values())


def density(e: UniformDiscreteSet, x0, k_range: Iterable[int]) -> list[tuple[int, Fraction]]:
    """Exact count-over-measure ratios Card(E ∩ B(x0, p**k)) / p**k per k."""
    ctx = e.context
    c = _as_fraction(x0)
    out = []
    for k in sorted(set(k_range)):
        reach = k if c == 0 else max(k, -ctx.valuation(c))
        if reach > e.window_exp:
            raise WindowTooSmall(
                f"ball B({c}, p**{k}) is not contained in the declared window"
            )
        out.append((k, e.count_in_ball(c, k) * ctx.pow(-k)))
    return out


def uniformity_check(e: UniformDiscreteSet, n: int, probes: Iterable) -> bool:
    """Card(E ∩ B(probe, p**n)) equals p**n times the stabilized density, per probe."""
    ctx = e.context
    dens = len(e.elements) * ctx.pow(-e.window_exp)
    expected = ctx.pow(n) * dens
    for probe in probes:
        c = _as_fraction(probe)
        reach = n if c == 0 else max(n, -ctx.valuation(c))
        if reach > e.window_exp:
            raise WindowTooSmall(f"probe {c} at radius p**{n} leaves the window")
        if e.count_in_ball(c, n) != expected:
            return False
    return True


def verify_tiling_pair(
    omega: CompactOpenSet, t_set: UniformDiscreteSet, window_exp: int
) -> PairReport:
    """Exact coverage check of sum over translates of 1_Ω on B(0, p**window_exp).

    Every point of the window lies in cells of radius p**-s (s = the finer of
    the frame resolution and the window), and each translate Ω + t is a union
    of such cells, so coverage is a finite digit count.  Translates that
    cannot touch the window (|t| above both the window and the diameter of Ω)
    are irrelevant; the declared window of T must reach everything relevant.
    """
    ctx = omega.context
    p = ctx.p
    ell = local_constancy_parameter(omega)
    need = max(window_exp, -ell)
    if t_set.window_exp < need:
        raise WindowTooSmall(
            f"tiling translates declared to p**{t_set.window_exp}, need p**{need}"
        )
    rel = [t for t in t_set.elements if t == 0 or ctx.valuation(t) >= -need]
    s_res = max(omega.v + omega.M, -window_exp)
    v2 = min(
        [omega.v, -window_exp]
        + [ctx.valuation(t) for t in rel if t != 0]
    )
    m2 = s_res - v2
    q = p**m2
    base = omega.digits_in_frame(v2, m2)
    step = p ** max(0, -window_exp - v2)
    targets = range(0, q, step)
    counts = dict.fromkeys(targets, 0)
    for t in rel:
        shift = ctx.residue(t * ctx.pow(-v2), m2)
        for d in base:
            cell = (d + shift) % q
            if cell in counts:
                counts[cell] += 1
    failure = None
    for cell in targets:
        if counts[cell] != 1:
            failure = Failure(
                xi=cell * ctx.pow(v2), lhs=Fraction(counts[cell]), rhs=Fraction(1)
            )
            break
    return PairReport(
        kind="tiling",
        verified_window=Ball.make(ctx, -window_exp, 0, 0),
        checked_points=len(targets),
        failure=failure,
    )


def verify_spectral_pair(
    omega: CompactOpenSet, lam: UniformDiscreteSet, window_exp: int
) -> PairReport:
    """Exact check of the quadratic identity sum over λ of |1̂_Ω|²(ξ-λ) = 𝔪(Ω)².

    The left side is constant on balls of radius p**ℓ (ℓ the diameter
    exponent of Ω), so one representative per such cell of the window
    decides.  Each term is an exact scaled cyclotomic product; the identity
    holds iff the assembled integer sum equals Card(digits)².
    """
    ctx = omega.context
    p = ctx.p
    vm = omega.v + omega.M
    ell = local_constancy_parameter(omega)
    need = max(window_exp, vm)
    if lam.window_exp < need:
        raise WindowTooSmall(
            f"spectrum declared to p**{lam.window_exp}, need p**{need}"
        )
    reps = [t * ctx.pow(-window_exp) for t in range(p ** max(window_exp - ell, 0))]
    target = len(omega.digits) ** 2
    mu2 = omega.measure() ** 2
    failure = None
    for xi in reps:
        total = CyclotomicSum.make(ctx, 0, {})
        for x in lam.elements:
            if ctx.valuation(xi - x) >= -vm:
                f = indicator_fourier(omega, xi - x)
                total = total + f.sum * f.sum.conjugate()
        if not total.equals_int(target):
            failure = Failure(xi=xi, lhs=ScaledCyclotomic(-2 * vm, total), rhs=mu2)
            break
    return PairReport(
        kind="spectral",
        verified_window=Ball.make(ctx, -window_exp, 0, 0),
        checked_points=len(reps),
        failure=failure,
        derived={"density": len(lam.elements) * ctx.pow(-lam.window_exp)},
    )


def spectrum_to_tiling_complement(
    omega: CompactOpenSet, lam: UniformDiscreteSet, verify_window_exp: int = 3
) -> tuple[tuple[int, ...], PairReport]:
    """Build a tiling complement from a spectrum by sphere classification.

    Scans the spheres S(0, p**-n) for 0 <= n < n_f against the zero set of
    the spectrum's transform data; levels split into I (inside) and J
    (disjoint) or the scan raises.  U collects all digit sums over J; the
    candidate complement U + L must tile, and Card(U)·𝔪(Ω) = 1 exactly.
    """
    ctx = omega.context
    p = ctx.p
    if omega.v < 0:
        raise ValueError("the compact open set must sit inside Z_p (v >= 0); rescale first")
    nf = n_f_of(omega)
    statuses = zero_sphere_scan(lam, range(0, nf))
    inside = sorted(n for n, s in statuses.items() if s is SphereStatus.IN_ZERO_SET)
    disjoint = sorted(n for n, s in statuses.items() if s is SphereStatus.NOT_IN_ZERO_SET)
    u = [0]
    for j in disjoint:
        w = p**j
        u = [x + a * w for x in u for a in range(p)]
    u = sorted(u)
    mu = omega.measure()
    if len(u) * mu != 1:
        raise ConstructionFailed(
            f"Card(U)·measure = {len(u)}·{mu} = {len(u) * mu} != 1; "
            f"I={inside}, J={disjoint}, n_f={nf}"
        )
    k = max(verify_window_exp, 0)
    tail = l_truncation(ctx, k)
    t_set = UniformDiscreteSet.make(ctx, k, [x + l for x in u for l in tail])
    report = verify_tiling_pair(omega, t_set, verify_window_exp)
    derived = dict(report.derived)
    derived.update(
        {
            "n_f": nf,
            "I": inside,
            "J": disjoint,
            "card_U": len(u),
            "measure": mu,
            "spectrum_count_at_n_f": lam.count_in_ball(0, nf),
        }
    )
    report = PairReport(
        kind=report.kind,
        verified_window=report.verified_window,
        checked_points=report.checked_points,
        failure=report.failure,
        derived=derived,
    )
    return tuple(u), report


def _full_frame_digit_set(omega: CompactOpenSet) -> tuple[DigitSet, frozenset[int]]:
    if omega.v < 0:
        raise ValueError("lift requires a subset of Z_p (v >= 0)")
    ctx = omega.context
    mf = omega.v + omega.M
    digits_f = omega.digits_in_frame(0, mf)
    levels = frame_branching_set(ctx.p, mf, digits_f)
    if levels is None:
        raise ConstructionFailed("set is not p-homogeneous; no closed-form witness to lift")
    return DigitSet.make(ctx, mf, digits_f), levels


def lifted_spectrum(omega: CompactOpenSet, extra_exp: int = 3) -> UniformDiscreteSet:
    """Q_p spectrum truncation for a homogeneous Ω ⊆ Z_p.

    The finite witness Λ₀ on the full frame M_f = v+M scales into the dual
    window: Λ = p**-M_f · (Λ₀ + L), truncated at window M_f + extra_exp.  The
    element list is exactly the infinite spectrum's intersection with that
    window.
    """
    ctx = omega.context
    ds, levels = _full_frame_digit_set(omega)
    w0 = spectrum_from_homogeneity(ds, levels)
    if extra_exp < 0:
        raise ValueError("extra_exp must be >= 0")
    scale = ctx.pow(-ds.M)
    elems = [
        (x + l) * scale for x in w0.elements for l in l_truncation(ctx, extra_exp)
    ]
    return UniformDiscreteSet.make(ctx, ds.M + extra_exp, elems)


def lifted_tiling_complement(omega: CompactOpenSet, extra_exp: int = 3) -> UniformDiscreteSet:
    """Q_p tiling-complement truncation for a homogeneous Ω ⊆ Z_p: U₀ + L."""
    ctx = omega.context
    ds, levels = _full_frame_digit_set(omega)
    w0 = complement_from_homogeneity(ds, levels)
    if extra_exp < 0:
        raise ValueError("extra_exp must be >= 0")
    elems = [x + l for x in w0.elements for l in l_truncation(ctx, extra_exp)]
    return UniformDiscreteSet.make(ctx, extra_exp, elems)
