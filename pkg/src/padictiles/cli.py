"""Command-line surface: set algebra, deciders, constructors, verification, census.

Exit codes: 0 success/verified; 1 usage or parse error; 2 a property failed
(not a tile, not spectral, not homogeneous, FailedAt, failed construction);
3 insufficient window or inconsistent truncation evidence.

All output is deterministic for a fixed invocation: iteration orders are
canonical, the only randomness is the --seed value (default 0), and machine
output (--json, JSON-lines files) is emitted with sorted keys.  No colors,
no environment configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .copen import (
    CompactOpenSet,
    EmptySet,
    autocorrelation,
    frame_branching_set,
    indicator_fourier,
    is_p_homogeneous,
    local_constancy_parameter,
    normalize_set,
)
from .decide import (
    Census,
    ConstructionFailed,
    DigitSet,
    EquivalenceViolation,
    ScopeTooLarge,
    classify_all,
    complement_from_homogeneity,
    is_spectral_zmod,
    is_tile_zmod,
    spectrum_from_homogeneity,
)
from .padic import Ball, PrimeContext
from .pairs import (
    NotASpectrumEvidence,
    UniformDiscreteSet,
    WindowTooSmall,
    density,
    lifted_spectrum,
    lifted_tiling_complement,
    spectrum_to_tiling_complement,
    uniformity_check,
    verify_spectral_pair,
    verify_tiling_pair,
    zero_bound_check,
    zero_sphere_scan,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_WINDOW = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors by default; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit(args, obj: dict, human: str) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human)


def _parse_int_list(text: str, flag: str) -> list[int]:
    text = text.strip()
    try:
        if text.startswith("["):
            vals = json.loads(text)
            return [int(v) for v in vals]
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except (ValueError, TypeError) as e:
        raise ValueError(f"{flag}: cannot parse {text!r} as a comma list or JSON array of integers ({e})")


def _parse_fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{flag}: cannot parse {text!r} as a rational a/b ({e})")


def _parse_fraction_list(text: str, flag: str) -> list[Fraction]:
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"{flag}: invalid JSON array at position {e.pos}: {e.msg}")
        return [_parse_fraction(str(v), f"{flag}[{i}]") for i, v in enumerate(vals)]
    return [
        _parse_fraction(part, f"{flag}[{i}]")
        for i, part in enumerate(text.split(","))
        if part.strip() != ""
    ]


def _parse_levels(text: str, flag: str) -> list[int]:
    """'a:b' is the inclusive integer range; otherwise a comma list."""
    text = text.strip()
    if ":" in text:
        lo_s, _, hi_s = text.partition(":")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ValueError(f"{flag}: cannot parse range {text!r} as A:B")
        return list(range(lo, hi + 1))
    return _parse_int_list(text, flag)


def _infer_depth(p: int, digits: list[int]) -> int:
    m = 0
    top = max(digits)
    while p**m <= top:
        m += 1
    return m


def _omega_from_args(args) -> CompactOpenSet:
    if getattr(args, "stdin", False):
        doc = json.load(sys.stdin)
        return CompactOpenSet.from_json_dict(
            doc, warn=lambda msg: print(f"warning: {msg}", file=sys.stderr)
        )
    if args.set is None:
        raise ValueError("--set is required (or pass a JSON document with --stdin)")
    ctx = PrimeContext(args.p)
    digits = _parse_int_list(args.set, "--set")
    if not digits:
        raise EmptySet("--set: digit list is empty")
    m = args.M if args.M is not None else _infer_depth(args.p, digits)
    return CompactOpenSet.make(ctx, args.v, m, digits)


def _digitset_from_args(args) -> DigitSet:
    ctx = PrimeContext(args.p)
    digits = _parse_int_list(args.set, "--set")
    if not digits:
        raise ValueError("--set: digit list is empty")
    m = args.M if args.M is not None else _infer_depth(args.p, digits)
    return DigitSet.make(ctx, m, digits)


def _eset_from_args(args, ctx: PrimeContext, flag="--elements") -> UniformDiscreteSet:
    if args.elements is None or args.window is None:
        raise ValueError(f"{flag} and --window are both required")
    elems = _parse_fraction_list(args.elements, flag)
    return UniformDiscreteSet.make(ctx, args.window, elems)


def _add_omega_flags(sp, need_p=True):
    sp.add_argument("--p", type=int, default=None if not need_p else None,
                    help="the prime p (required unless --stdin supplies a document)")
    sp.add_argument("--set", help="digit set: comma list '0,3' or JSON '[0,3]'")
    sp.add_argument("--v", type=int, default=0, help="frame scale exponent (default 0)")
    sp.add_argument("--M", type=int, default=None,
                    help="frame depth (default: smallest depth holding the largest digit)")
    sp.add_argument("--stdin", action="store_true",
                    help="read the set as a JSON document {p, v, M, digits} from stdin")


def _require_p(args) -> None:
    if not getattr(args, "stdin", False) and args.p is None:
        raise ValueError("--p is required")


# ---------------------------------------------------------------- commands


def cmd_normalize(args) -> int:
    if args.stdin:
        doc = json.load(sys.stdin)
        ctx = PrimeContext(int(doc["p"]))
        balls = [
            Ball.make(ctx, int(b["v"]), int(b["M"]), int(b["c"]))
            for b in doc["balls"]
        ]
    else:
        if args.p is None or args.balls is None:
            raise ValueError("--p and --balls are required (or use --stdin)")
        ctx = PrimeContext(args.p)
        balls = []
        for i, part in enumerate(args.balls.split(";")):
            trip = _parse_int_list(part, f"--balls[{i}]")
            if len(trip) != 3:
                raise ValueError(f"--balls[{i}]: expected v,M,c — got {part!r}")
            balls.append(Ball.make(ctx, *trip))
    omega = normalize_set(ctx, balls)
    _emit(
        args,
        omega.to_json_dict(),
        f"p={omega.context.p} v={omega.v} M={omega.M} digits={','.join(map(str, omega.digits))}",
    )
    return EXIT_OK


def cmd_measure(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    mu = omega.measure()
    _emit(args, {"measure": _rat(mu)}, _rat(mu))
    return EXIT_OK


def cmd_fourier(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    xi = _parse_fraction(args.xi, "--xi")
    val = indicator_fourier(omega, xi)
    rational = val.value_if_rational()
    obj = val.to_json_dict()
    obj["rational"] = None if rational is None else _rat(rational)
    num = val.numeric()
    obj["numeric_hint"] = f"{num.real:+.12e}{num.imag:+.12e}i"
    if rational is not None:
        human = f"1̂(ξ) = {_rat(rational)}"
    else:
        human = (
            f"1̂(ξ) = p^{val.power} · {dict(sorted(val.sum.coeffs.items()))} "
            f"(order exponent {val.sum.n}); numeric ≈ {num.real:+.6f}{num.imag:+.6f}i"
        )
    _emit(args, obj, human)
    return EXIT_OK


def cmd_autocorr(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    xi = _parse_fraction(args.xi, "--xi")
    val = autocorrelation(omega, xi)
    _emit(args, {"autocorrelation": _rat(val)}, _rat(val))
    return EXIT_OK


def cmd_homogeneity(args) -> int:
    _require_p(args)
    if args.declared_frame:
        ds = _digitset_from_args(args)
        levels = frame_branching_set(ds.context.p, ds.M, ds.C)
        flag = levels is not None
        frame = {"v": 0, "M": ds.M, "digits": list(ds.C)}
    else:
        omega = _omega_from_args(args)
        flag, levels = is_p_homogeneous(omega)
        frame = {"v": omega.v, "M": omega.M, "digits": list(omega.digits)}
    lv = None if levels is None else sorted(levels)
    obj = {"is_homogeneous": flag, "I": lv}
    obj.update(frame)
    _emit(
        args,
        obj,
        f"homogeneous: {'yes' if flag else 'no'}"
        + (f"; branching levels I = {lv}" if flag else ""),
    )
    return EXIT_OK if flag else EXIT_FAILED


def cmd_is_tile(args) -> int:
    ds = _digitset_from_args(args)
    w = is_tile_zmod(ds)
    if w is None:
        _emit(args, {"is_tile": False, "witness": None}, "not a tile")
        return EXIT_FAILED
    _emit(
        args,
        {"is_tile": True, "witness": w.to_json_dict()},
        f"tile; witness T = {{{', '.join(map(str, w.elements))}}}",
    )
    return EXIT_OK


def cmd_is_spectral(args) -> int:
    ds = _digitset_from_args(args)
    w = is_spectral_zmod(ds)
    if w is None:
        _emit(args, {"is_spectral": False, "witness": None}, "not spectral")
        return EXIT_FAILED
    _emit(
        args,
        {"is_spectral": True, "witness": w.to_json_dict()},
        f"spectral; witness Λ = {{{', '.join(map(str, w.elements))}}}",
    )
    return EXIT_OK


def _constructor_command(args, builder, label: str) -> int:
    ds = _digitset_from_args(args)
    levels = frame_branching_set(ds.context.p, ds.M, ds.C)
    if levels is None:
        print(f"set is not p-homogeneous on the declared frame; no {label} construction",
              file=sys.stderr)
        return EXIT_FAILED
    w = builder(ds, levels)
    _emit(
        args,
        {"witness": w.to_json_dict(), "I": sorted(levels)},
        f"{label} = {{{', '.join(map(str, w.elements))}}} (I = {sorted(levels)})",
    )
    return EXIT_OK


def cmd_make_spectrum(args) -> int:
    return _constructor_command(args, spectrum_from_homogeneity, "spectrum")


def cmd_make_complement(args) -> int:
    return _constructor_command(args, complement_from_homogeneity, "tiling complement")


def _report_exit(report) -> int:
    return EXIT_OK if report.failure is None else EXIT_FAILED


def _report_human(report) -> str:
    if report.failure is None:
        return f"Verified on window B(0, p^{-report.verified_window.v}) ({report.checked_points} cells)"
    f = report.failure.to_json_dict()
    return (
        f"FailedAt ξ = {f['xi']}: lhs = {f['lhs']}, rhs = {f['rhs']} "
        f"(checked {report.checked_points} cells)"
    )


def cmd_verify_tiling(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    tset = _eset_from_args(args, omega.context)
    report = verify_tiling_pair(omega, tset, args.window_exp)
    _emit(args, report.to_json_dict(), _report_human(report))
    return _report_exit(report)


def cmd_verify_spectral(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    lam = _eset_from_args(args, omega.context)
    report = verify_spectral_pair(omega, lam, args.window_exp)
    _emit(args, report.to_json_dict(), _report_human(report))
    return _report_exit(report)


def cmd_spectrum_to_tiling(args) -> int:
    _require_p(args)
    omega = _omega_from_args(args)
    if args.elements is not None:
        lam = _eset_from_args(args, omega.context)
    else:
        lam = lifted_spectrum(omega, args.lift_exp)
    u, report = spectrum_to_tiling_complement(omega, lam, args.window_exp)
    obj = {"U": list(u), "report": report.to_json_dict()}
    d = report.derived
    human = (
        f"n_f = {d['n_f']}, I = {d['I']}, J = {d['J']}, U = {list(u)}; "
        f"{_report_human(report)}"
    )
    _emit(args, obj, human)
    return _report_exit(report)


def cmd_scan_zeros(args) -> int:
    ctx = PrimeContext(args.p)
    eset = _eset_from_args(args, ctx)
    obj: dict = {"n_E": eset.n_E(), "window_exp": eset.window_exp}
    lines = []
    if eset.n_E() is None:
        lines.append("n_E undefined (singleton); zero-set bound is vacuous")
    else:
        lines.append(f"n_E = {eset.n_E()}")
    code = EXIT_OK
    if args.levels is not None:
        levels = _parse_levels(args.levels, "--levels")
        statuses = zero_sphere_scan(eset, levels)
        obj["statuses"] = {str(n): s.value for n, s in sorted(statuses.items())}
        for n, s in sorted(statuses.items()):
            lines.append(f"sphere |ξ| = p^{-n}: {s.value}")
    if args.bound:
        ok = zero_bound_check(eset)
        obj["zero_bound"] = ok
        lines.append(f"zero-set bound (no zero sphere at radius ≥ p^(n_E+2)): {'holds' if ok else 'VIOLATED'}")
        if not ok:
            code = EXIT_FAILED
    if args.levels is None and not args.bound:
        raise ValueError("nothing to do: pass --levels and/or --bound")
    _emit(args, obj, "\n".join(lines))
    return code


def cmd_density(args) -> int:
    ctx = PrimeContext(args.p)
    eset = _eset_from_args(args, ctx)
    x0 = _parse_fraction(args.x0, "--x0")
    ks = _parse_levels(args.k_range, "--k-range")
    rows = density(eset, x0, ks)
    obj: dict = {"densities": [[k, _rat(r)] for k, r in rows]}
    lines = [f"k = {k}: Card/​p^k = {_rat(r)}" for k, r in rows]
    code = EXIT_OK
    if args.probes is not None:
        if args.uniformity_n is None:
            raise ValueError("--probes needs --uniformity-n")
        probes = _parse_fraction_list(args.probes, "--probes")
        ok = uniformity_check(eset, args.uniformity_n, probes)
        obj["uniform"] = ok
        lines.append(f"uniformity at n = {args.uniformity_n}: {'holds' if ok else 'FAILS'}")
        if not ok:
            code = EXIT_FAILED
    _emit(args, obj, "\n".join(lines))
    return code


def _census_summary_obj(census: Census) -> dict:
    return {
        "p": census.p,
        "M": census.M,
        "mode": census.mode,
        "total": census.total,
        "positive": census.positive,
        "counts_by_card": {str(k): v for k, v in sorted(census.counts_by_card.items())},
        "counts_by_I": {
            ",".join(map(str, key)): v
            for key, v in sorted(census.counts_by_branching.items())
        },
    }


def _census_summary_human(census: Census) -> str:
    lines = [
        f"classify p={census.p} M={census.M} mode={census.mode}",
        f"sets visited: {census.total}",
        f"tile = spectral = homogeneous on every set; positive: {census.positive}",
    ]
    if census.counts_by_card:
        lines.append(
            "by cardinality: "
            + ", ".join(f"{k}: {v}" for k, v in sorted(census.counts_by_card.items()))
        )
    if census.counts_by_branching:
        lines.append(
            "by branching set: "
            + ", ".join(
                "{" + ",".join(map(str, key)) + "}" + f": {v}"
                for key, v in sorted(census.counts_by_branching.items())
            )
        )
    return "\n".join(lines)


def _write_census_rows(census: Census, stream) -> None:
    for row in census.rows:
        stream.write(json.dumps(row.to_json_dict(), sort_keys=True))
        stream.write("\n")


def cmd_classify(args) -> int:
    if args.exhaustive and args.sample is not None:
        raise ValueError("pick one of --exhaustive / --sample K")
    if not args.exhaustive and args.sample is None:
        raise ValueError("pick a mode: --exhaustive or --sample K")
    if args.exhaustive:
        census = classify_all(args.p, args.M, "exhaustive", jobs=args.jobs)
    else:
        census = classify_all(
            args.p, args.M, "sample", sample_size=args.sample, seed=args.seed, jobs=args.jobs
        )
    if args.out == "-":
        _write_census_rows(census, sys.stdout)
        return EXIT_OK
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_census_rows(census, fh)
    _emit(args, _census_summary_obj(census), _census_summary_human(census))
    return EXIT_OK


_GALLERY_CENSUSES = ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2))
_GALLERY_PIPELINES = ((2, 2, (0, 3)), (2, 3, (0, 1, 4, 5)), (3, 2, (0, 3, 6)))


def cmd_gallery(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    summaries = []
    for p, m in _GALLERY_CENSUSES:
        census = classify_all(p, m, "exhaustive", jobs=args.jobs)
        path = outdir / f"census_p{p}_M{m}.jsonl"
        with open(path, "w", encoding="utf-8") as fh:
            _write_census_rows(census, fh)
        written.append(path)
        summaries.append(_census_summary_obj(census))
    pipe_rows = []
    for p, m, digits in _GALLERY_PIPELINES:
        ctx = PrimeContext(p)
        omega = CompactOpenSet.make(ctx, 0, m, digits)
        lam = lifted_spectrum(omega, 3)
        u, report = spectrum_to_tiling_complement(omega, lam, 3)
        spectral = verify_spectral_pair(omega, lam, 2)
        pipe_rows.append(
            {
                "p": p,
                "declared_M": m,
                "declared_digits": list(digits),
                "spectrum": lam.to_json_dict(),
                "U": list(u),
                "tiling_report": report.to_json_dict(),
                "spectral_report": spectral.to_json_dict(),
            }
        )
    path = outdir / "pipelines.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for row in pipe_rows:
            fh.write(json.dumps(row, sort_keys=True))
            fh.write("\n")
    written.append(path)

    md = ["# Example gallery", "", "## Censuses", ""]
    md.append("| p | M | sets | positive |")
    md.append("|---|---|------|----------|")
    for s in summaries:
        md.append(f"| {s['p']} | {s['M']} | {s['total']} | {s['positive']} |")
    md += ["", "## Spectrum-to-complement pipelines", ""]
    md.append("| p | M | digits | n_f | I | J | U | tiling | spectral |")
    md.append("|---|---|--------|-----|---|---|---|--------|----------|")
    for row in pipe_rows:
        d = row["tiling_report"]["derived"]
        md.append(
            f"| {row['p']} | {row['declared_M']} | {row['declared_digits']} | {d['n_f']} "
            f"| {d['I']} | {d['J']} | {row['U']} | {row['tiling_report']['status']} "
            f"| {row['spectral_report']['status']} |"
        )
    md.append("")
    path = outdir / "summary.md"
    path.write_text("\n".join(md), encoding="utf-8")
    written.append(path)
    for w in written:
        print(w)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _build_parser() -> _Parser:
    top = _Parser(
        prog="padictiles",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def new(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable JSON output")
        sp.set_defaults(func=fn)
        return sp

    sp = new("normalize", cmd_normalize, "reduce a union of balls to the canonical frame")
    sp.add_argument("--p", type=int)
    sp.add_argument("--balls", help="semicolon-separated v,M,c triples, e.g. '0,2,3;1,0,0'")
    sp.add_argument("--stdin", action="store_true",
                    help="read {p, balls:[{v,M,c},...]} JSON from stdin")

    for name, fn, help_text in (
        ("measure", cmd_measure, "Haar measure of a compact open set (exact rational)"),
        ("autocorr", cmd_autocorr, "measure of Ω ∩ (Ω+ξ), exact"),
        ("fourier", cmd_fourier, "exact Fourier value of the indicator at ξ"),
    ):
        sp = new(name, fn, help_text)
        _add_omega_flags(sp)
        if name in ("autocorr", "fourier"):
            sp.add_argument("--xi", required=True, help="rational point, e.g. 3/4")

    sp = new("homogeneity", cmd_homogeneity,
             "p-homogeneity of the digit tree; exit 2 when not homogeneous")
    _add_omega_flags(sp)
    sp.add_argument("--declared-frame", action="store_true",
                    help="answer on the given (v=0, M) frame instead of the canonical one")

    for name, fn, help_text in (
        ("is-tile", cmd_is_tile, "decide tiling of Z/p^M; prints a complement witness"),
        ("is-spectral", cmd_is_spectral, "decide spectrality in Z/p^M; prints a spectrum witness"),
        ("make-spectrum", cmd_make_spectrum, "construct the spectrum of a homogeneous set"),
        ("make-complement", cmd_make_complement, "construct the tiling complement of a homogeneous set"),
    ):
        sp = new(name, fn, help_text)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--set", required=True, help="digit set: comma list or JSON array")
        sp.add_argument("--M", type=int, default=None,
                        help="group depth (default: smallest depth holding the largest digit)")

    for name, fn in (("verify-tiling", cmd_verify_tiling), ("verify-spectral", cmd_verify_spectral)):
        sp = new(name, fn, f"{name.replace('-', ' ')} on an explicit window")
        _add_omega_flags(sp)
        sp.add_argument("--elements", help="translate/spectrum elements: comma list of rationals")
        sp.add_argument("--window", type=int, help="declared truncation exponent of the element list")
        sp.add_argument("--window-exp", type=int, default=3,
                        help="verification window exponent (default 3)")

    sp = new("spectrum-to-tiling", cmd_spectrum_to_tiling,
             "derive a tiling complement from a spectrum (sphere classification)")
    _add_omega_flags(sp)
    sp.add_argument("--elements", help="spectrum truncation; omit to lift the constructed one")
    sp.add_argument("--window", type=int, help="declared truncation exponent")
    sp.add_argument("--window-exp", type=int, default=3, help="verification window (default 3)")
    sp.add_argument("--lift-exp", type=int, default=3,
                    help="representative depth when lifting the constructed spectrum (default 3)")

    sp = new("scan-zeros", cmd_scan_zeros, "classify spheres against the zero set of μ̂_E")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--elements", required=True, help="comma list of rationals")
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--levels", help="sphere levels: 'a:b' inclusive range or comma list")
    sp.add_argument("--bound", action="store_true",
                    help="also check the zero-set bound (no zero sphere at radius ≥ p^(n_E+2))")

    sp = new("density", cmd_density, "exact density ratios (and optional uniformity check)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--elements", required=True)
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--x0", default="0", help="ball center (default 0)")
    sp.add_argument("--k-range", required=True, help="'a:b' inclusive range or comma list")
    sp.add_argument("--probes", help="probe centers for the uniformity check")
    sp.add_argument("--uniformity-n", type=int, help="ball exponent for the uniformity check")

    sp = new("classify", cmd_classify, "census over nonempty subsets of Z/p^M")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true",
                    help="visit every nonempty subset (p=2 M<=4, p=3 M<=2)")
    sp.add_argument("--sample", type=int, default=None, metavar="K",
                    help="visit K distinct random subsets instead")
    sp.add_argument("--seed", type=int, default=0,
                    help="RNG seed for --sample (default 0)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sp.add_argument("--out", help="write JSON-lines rows to this file ('-' = stdout, no summary)")

    sp = new("gallery", cmd_gallery, "emit the standard example suite (censuses + pipelines)")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for the censuses")

    return top


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else EXIT_OK
    try:
        return args.func(args)
    except (WindowTooSmall, NotASpectrumEvidence) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_WINDOW
    except (ConstructionFailed, EquivalenceViolation) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ScopeTooLarge, EmptySet, ValueError, KeyError, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
