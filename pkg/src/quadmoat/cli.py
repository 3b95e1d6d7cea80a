"""Command-line front end.

    quadmoat primes  --d -1 --boundary 20 [--format csv|json] [--svg out.svg]
    quadmoat moats   --d -1 --k-max sqrt:8 [--format table|csv|json] [--svg out.svg]
    quadmoat density --d -3 --radius 1000 [--format table|csv|json] [--classes]
    quadmoat plot    --kind moats --svg fig.svg [--d -1 --d -3 ...]
    quadmoat bench   --d -1 [--sizes 1000,10000,...]

Exit status is 0 on success, 2 for an invalid configuration and 3 when the
moat search hits its boundary ceiling (the validated prefix is still
written, followed by a marker line).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Sequence

from . import __version__
from .quadring import STARK_VALUES, format_element, get_field

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CEILING = 3

INCOMPLETE_MARKER = "# INCOMPLETE"


class ConfigError(ValueError):
    pass


def parse_k(text: str) -> int:
    """Radicand k**2 from ``sqrt:N`` or a decimal k (rounded down to a radicand)."""
    text = text.strip()
    if text.startswith("sqrt:"):
        try:
            n = int(text[5:])
        except ValueError:
            raise ConfigError(f"bad k value {text!r}: expected sqrt:<integer>") from None
    else:
        try:
            x = float(text)
        except ValueError:
            raise ConfigError(f"bad k value {text!r}: expected a number or sqrt:N") from None
        if not math.isfinite(x):
            raise ConfigError(f"bad k value {text!r}")
        n = math.floor(x * x + 1e-9) if x > 0 else 0
    if n <= 0:
        raise ConfigError(f"k must be positive, got {text!r}")
    return n


def _field(d: int):
    if d not in STARK_VALUES:
        raise ConfigError(f"--d must be one of {', '.join(map(str, STARK_VALUES))}; got {d}")
    return get_field(d)


def provenance(args: argparse.Namespace) -> str:
    """One comment line echoing the resolved flags, in a fixed order."""
    parts = [f"# quadmoat {__version__} {args.command}"]
    for key in sorted(vars(args)):
        if key in ("command", "output", "func", "verbose"):
            continue
        val = getattr(args, key)
        if val is None or val is False:
            continue
        flag = "--" + key.replace("_", "-")
        if val is True:
            parts.append(flag)
        elif isinstance(val, list):
            parts.extend(f"{flag} {x}" for x in val)
        else:
            parts.append(f"{flag} {val}")
    return " ".join(parts)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_primes(args) -> int:
    from .lattice import Sector, generate_sector_primes

    f = _field(args.d)
    if args.boundary < 0:
        raise ConfigError("--boundary must be non-negative")
    primes = generate_sector_primes(Sector(f, args.boundary), padded=False)
    rows = [(f.d, int(a), int(b), int(n)) for a, b, n in
            zip(primes.a.tolist(), primes.b.tolist(), primes.norm.tolist())]
    if args.format == "json":
        text = json.dumps([{"d": d, "a": a, "b": b, "norm": n} for d, a, b, n in rows],
                          indent=1) + "\n"
    else:
        lines = [provenance(args), "d,a,b,norm"]
        lines += [f"{d},{a},{b},{n}" for d, a, b, n in rows]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if args.svg:
        from .plotting import plot_primes

        plot_primes(f, args.boundary, args.svg)
    return EXIT_OK


def _moat_table(f, recs) -> list[str]:
    head = f"{'k':>10}  {'farthest prime':<18}  {'distance':>12}  {'size':>8}  {'C':>6}"
    out = [head]
    for r in recs:
        out.append(f"{r.k_label():>10}  {format_element(f, r.farthest_prime):<18}  "
                   f"{r.distance:>12.3f}  {r.component_size:>8}  {r.C_used:>6}")
    return out


def _search(args, d: int):
    from .moats import find_moats_up_to

    f = _field(d)
    k2 = parse_k(args.k_max)
    C0 = args.initial_boundary
    ceiling = args.max_boundary
    if ceiling is None:
        ceiling = 1 << 16 if getattr(args, "large", False) else 1 << 14
    if C0 < 2:
        raise ConfigError("--initial-boundary must be at least 2")
    if C0 > ceiling:
        raise ConfigError("--initial-boundary exceeds --max-boundary")
    return f, find_moats_up_to(f, k2, C0=C0, C_ceiling=ceiling)


def cmd_moats(args) -> int:
    from .moats import record_to_dict

    f, res = _search(args, args.d)
    marker = (f"{INCOMPLETE_MARKER}: boundary ceiling C={res.C_used} reached; "
              f"moats beyond the rows above are not certified")
    if args.format == "json":
        text = json.dumps([record_to_dict(f, r) for r in res.records], indent=1) + "\n"
        if not res.complete:
            print(marker, file=sys.stderr)
    else:
        lines = [provenance(args)]
        if args.format == "csv":
            lines.append("k_squared,k,farthest_a,farthest_b,farthest,distance,"
                         "component_size,validated,C_used")
            for r in res.records:
                lines.append(f"{r.k_squared},{r.k:.3f},{r.farthest_prime.a},"
                             f"{r.farthest_prime.b},{format_element(f, r.farthest_prime)},"
                             f"{r.distance:.3f},{r.component_size},"
                             f"{str(r.validated).lower()},{r.C_used}")
        else:
            lines += _moat_table(f, res.records)
        if not res.complete:
            lines.append(marker)
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if args.svg:
        from .plotting import plot_moat_curves

        plot_moat_curves({f.d: res.records}, args.svg)
    return EXIT_OK if res.complete else EXIT_CEILING


def cmd_density(args) -> int:
    from .density import class_counts, density_report, residue_classes

    f = _field(args.d)
    if args.radius is None or not math.isfinite(args.radius) or args.radius < 2:
        raise ConfigError("--radius must be a number >= 2")
    rep = density_report(f, args.radius)
    data = rep.as_dict()
    classes = None
    if args.classes:
        split_cls, inert_cls, m = residue_classes(f)
        R2 = math.floor(args.radius ** 2 + 1e-9)
        big, small = class_counts(m, R2), class_counts(m, math.isqrt(R2))
        classes = [{"residue": r, "modulus": m,
                    "kind": "inert" if r in inert_cls else "split",
                    "primes_upto_R2": big[r], "primes_upto_R": small[r]}
                   for r in sorted(big)]
    if args.format == "json":
        if classes is not None:
            data["classes"] = classes
        text = json.dumps(data, indent=1) + "\n"
    elif args.format == "csv":
        keys = list(data)
        lines = [provenance(args), ",".join(keys), ",".join(str(data[k]) for k in keys)]
        if classes is not None:
            lines.append("")
            lines.append("residue,modulus,kind,primes_upto_R2,primes_upto_R")
            lines += [f"{c['residue']},{c['modulus']},{c['kind']},"
                      f"{c['primes_upto_R2']},{c['primes_upto_R']}" for c in classes]
        text = "\n".join(lines) + "\n"
    else:
        width = max(len(k) for k in data)
        lines = [provenance(args)]
        for k, v in data.items():
            v = f"{v:.6g}" if isinstance(v, float) else v
            lines.append(f"{k:<{width}}  {v}")
        if classes is not None:
            lines.append("")
            lines.append(f"{'class':>8}  {'kind':<6}  {'p <= R^2':>10}  {'p <= R':>8}")
            for c in classes:
                lines.append(f"{c['residue']:>3} mod {c['modulus']:<2}  {c['kind']:<6}  "
                             f"{c['primes_upto_R2']:>10}  {c['primes_upto_R']:>8}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


_PLOT_DEFAULT_D = {"primes": [-1], "emst": [-3], "moats": [-1, -2, -3, -7]}


def cmd_plot(args) -> int:
    from . import plotting

    ds = args.d or _PLOT_DEFAULT_D[args.kind]
    fields = [_field(d) for d in ds]
    if args.kind == "moats":
        series, status = {}, EXIT_OK
        for f in fields:
            _, res = _search(args, f.d)
            series[f.d] = res.records
            if not res.complete:
                print(f"{INCOMPLETE_MARKER}: d={f.d} stopped at C={res.C_used}",
                      file=sys.stderr)
                status = EXIT_CEILING
        plotting.plot_moat_curves(series, args.svg)
        return status
    if len(fields) != 1:
        raise ConfigError(f"--kind {args.kind} takes a single --d")
    if args.boundary < 1:
        raise ConfigError("--boundary must be at least 1")
    if args.kind == "primes":
        plotting.plot_primes(fields[0], args.boundary, args.svg)
    else:
        plotting.plot_emst(fields[0], args.boundary, args.svg)
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench

    f = _field(args.d)
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if not sizes or min(sizes) < 0:
        raise ConfigError("--sizes must list non-negative integers")
    rep = run_bench(f, sizes, complete_limit=args.complete_limit, repeat=args.repeat)
    _emit(args, rep.to_csv(provenance(args)))
    big = [r for r in rep.rows if r.n >= 10_000]
    if len(big) >= 2:
        print(f"log-log slope over n >= 10000: {rep.slope(10_000, max(r.n for r in big)):.3f}",
              file=sys.stderr)
    top = rep.largest_corun()
    if top is not None:
        print(f"largest co-run n={top.n}: weights agree={top.agree}", file=sys.stderr)
    if any(r.agree is False for r in rep.rows):
        print("error: MST weight sequences differ", file=sys.stderr)
        return 1
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadmoat",
                                description="Prime moats in imaginary quadratic UFDs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=None, default=None):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.add_argument("--sieve-limit", type=int, default=None,
                        help="rational sieve size (Miller-Rabin above it)")
        sp.add_argument("-v", "--verbose", action="store_true")
        if formats:
            sp.add_argument("--format", choices=formats, default=default)

    def search_flags(sp, k_default=None):
        sp.add_argument("--k-max", default=k_default, required=k_default is None,
                        help='step bound: "sqrt:N" or a decimal')
        sp.add_argument("--initial-boundary", type=int, default=64)
        sp.add_argument("--max-boundary", type=int, default=None,
                        help="boundary ceiling (default 16384, 65536 with --large)")
        sp.add_argument("--large", action="store_true",
                        help="allow the search to grow to a much larger boundary")

    sp = sub.add_parser("primes", help="list ring primes in the search sector")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--boundary", type=int, required=True, help="sector bound C")
    sp.add_argument("--svg")
    common(sp, ["csv", "json"], "csv")
    sp.set_defaults(func=cmd_primes)

    sp = sub.add_parser("moats", help="find every moat up to a step bound")
    sp.add_argument("--d", type=int, required=True)
    search_flags(sp)
    sp.add_argument("--svg")
    common(sp, ["table", "csv", "json"], "table")
    sp.set_defaults(func=cmd_moats)

    sp = sub.add_parser("density", help="prime counts against the asymptotic estimate")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--classes", action="store_true",
                    help="also list rational prime counts per residue class")
    common(sp, ["table", "csv", "json"], "table")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("plot", help="render a figure to SVG")
    sp.add_argument("--kind", choices=["primes", "emst", "moats"], required=True)
    sp.add_argument("--d", type=int, action="append")
    sp.add_argument("--boundary", type=int, default=30)
    sp.add_argument("--svg", required=True)
    search_flags(sp, "sqrt:8")
    common(sp)
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("bench", help="time Delaunay MST against complete-graph Kruskal")
    sp.add_argument("--d", type=int, default=-1)
    sp.add_argument("--sizes", default="500,1000,2000,3000,10000,20000,40000,70000,100000")
    sp.add_argument("--complete-limit", type=int, default=3000)
    sp.add_argument("--repeat", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.sieve_limit is not None:
            if args.sieve_limit < 2:
                raise ConfigError("--sieve-limit must be at least 2")
            from .primality import set_sieve_limit

            set_sieve_limit(args.sieve_limit)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
