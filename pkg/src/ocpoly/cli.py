"""Command-line front end.

Polynomials come from a file (JSON or the text form "(1)x^2 + (i)x + (j - k)");
octonion arguments use the element text format "c0 + c1 i + ... + c7 kl".
Output JSON is emitted with sorted keys so runs can be diffed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render as render_mod
from .algebra import AlgebraParams, Octonion, parse_octonion
from .dynamics import (classify_fixed, classify_pseudo_periodic,
                       detect_pseudo_period, fixed_points, orbit)
from .errors import (OcpolyError, ParseError, ResourceLimit)
from .opoly import OPolynomial, parse_opolynomial
from .roots import (lmr_contains, lmr_describe, lmr_sample, rmr_classes,
                    rmr_contains, rmr_witness, roots)
from .scalars import Field

DEFAULT_SEED = 0xC0FFEE

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MATH = 3
EXIT_RESOURCE = 4
EXIT_SELFTEST = 5


def _field(args) -> Field:
    return Field(exact=(args.mode == "exact"), eps=args.eps)


def _load_poly(path: str, field: Field) -> OPolynomial:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
        return OPolynomial.from_json(data, field)
    params = AlgebraParams.octonions(field)
    return parse_opolynomial(text, params)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_roots(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    _emit(roots(f, seed=args.seed).to_json(fld))
    return EXIT_OK


def cmd_companion(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    comp = f.companion()
    _emit({"coeffs": [fld.to_json(c) for c in comp.coeffs]})
    return EXIT_OK


def cmd_rmr(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    if args.element is None:
        _emit({"classes": [c.to_json(fld)
                           for c in rmr_classes(f, seed=args.seed)]})
        return EXIT_OK
    mu = parse_octonion(args.element, f.params)
    out = {"contains": rmr_contains(f, mu, seed=args.seed)}
    if out["contains"] and args.witness:
        out["witness"] = rmr_witness(f, mu, seed=args.seed).to_json()
    _emit(out)
    return EXIT_OK


def cmd_lmr(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    descs = lmr_describe(f, seed=args.seed)
    if args.contains is not None:
        mu = parse_octonion(args.contains, f.params)
        _emit({"contains": any(lmr_contains(d, mu) for d in descs)})
        return EXIT_OK
    if args.sample:
        points = []
        for d in descs:
            if d.kind == "whole-class":
                continue
            points.extend(p.to_json()
                          for p in lmr_sample(d, args.sample, seed=args.seed))
        _emit(points)
        return EXIT_OK
    _emit([d.to_json() for d in descs])
    return EXIT_OK


def cmd_classify(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    if args.alpha is not None:
        alpha = parse_octonion(args.alpha, f.params)
        period = detect_pseudo_period(f, alpha, args.max_period)
        if period is not None and period > 1:
            _emit(classify_pseudo_periodic(f, alpha, period).to_json())
        else:
            _emit(classify_fixed(f, alpha).to_json())
        return EXIT_OK
    fp = fixed_points(f, seed=args.seed)
    reports = [classify_fixed(f, lam).to_json() for lam, _ in fp.isolated]
    _emit({"fixed_points": fp.to_json(fld), "reports": reports})
    return EXIT_OK


def cmd_orbit(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    start = parse_octonion(args.start, f.params)
    rec = orbit(f, start, args.max_iter,
                escape_radius=args.escape_radius, tol=args.tol)
    text = rec.to_csv()
    if rec.detected_period is not None:
        text += f"# detected_period,{rec.detected_period}\n"
    if rec.escaped:
        text += "# escaped,1\n"
    _write_or_print(text, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    fld = _field(args)
    f = _load_poly(args.poly, fld)
    params = f.params
    spec = render_mod.SliceSpec(
        base=parse_octonion(args.base, params),
        dir_u=parse_octonion(args.dir_u, params),
        dir_v=parse_octonion(args.dir_v, params),
        width=args.width, height=args.height, scale=args.scale,
        max_iter=args.max_iter, escape_radius=args.escape_radius)
    render_mod.render(f, spec, args.out, backend=args.backend)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest
    results = run_selftest()
    width = max(len(r[0]) for r in results)
    failed = 0
    for cid, expected, got, ok in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {cid:<{width}}  expected={expected}  got={got}")
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ocpoly",
        description="octonion polynomial roots and dynamics")
    ap.add_argument("--mode", choices=("exact", "real"), default="real",
                    help="scalar arithmetic mode (default: real)")
    ap.add_argument("--eps", type=float, default=1e-9,
                    help="comparison tolerance in real mode")
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                    help="seed for randomized steps (default 0xC0FFEE)")
    sub = ap.add_subparsers(dest="command", required=True)

    def poly_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("poly", help="polynomial file (JSON or text form)")
        p.set_defaults(fn=fn)
        return p

    poly_cmd("roots", cmd_roots, "root set organized by conjugacy class")
    poly_cmd("companion", cmd_companion, "central companion polynomial")

    p = poly_cmd("rmr", cmd_rmr, "right-scalar-multiple root classes")
    p.add_argument("--element", help="membership query element")
    p.add_argument("--witness", action="store_true",
                   help="also emit a right-multiplier witness")

    p = poly_cmd("lmr", cmd_lmr, "left-scalar-multiple root descriptions")
    p.add_argument("--sample", type=int, metavar="N",
                   help="emit N seeded sample points per class")
    p.add_argument("--contains", metavar="ELT", help="membership query")

    p = poly_cmd("classify", cmd_classify, "fixed-point classification")
    p.add_argument("--alpha", help="classify this point instead of all")
    p.add_argument("--max-period", type=int, default=32)

    p = poly_cmd("orbit", cmd_orbit, "substitution orbit as CSV")
    p.add_argument("--start", required=True)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--escape-radius", type=float, default=1e6)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")

    p = poly_cmd("render", cmd_render, "escape-time slice image (PGM)")
    p.add_argument("--base", default="0")
    p.add_argument("--dir-u", default="1")
    p.add_argument("--dir-v", default="i")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--scale", type=float, default=4 / 256)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--escape-radius", type=float, default=2.0)
    p.add_argument("--backend", choices=("auto", "numba", "numpy"),
                   default="auto")
    p.add_argument("--out", required=True)

    p = sub.add_parser("selftest", help="re-run the reference examples")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OcpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
