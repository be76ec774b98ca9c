"""Command-line interface: classify, verify, figure, roots.

Exit status 0 on success, 1 on an integrity failure, 2 on a usage error.
Integrity failures are also reported on stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import certificate as cert
from . import classifier as C
from . import model as M
from .interval import decimal_digits
from .upoly import decimal_bracket, isolate_roots

EXIT_OK, EXIT_INTEGRITY, EXIT_USAGE = 0, 1, 2


class UnknownTarget(ValueError):
    pass


class UsageError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Accepts 3/25, 0.12, 1e-4 or 10^-4."""
    text = text.strip()
    m = re.fullmatch(r"10\^(-?\d+)", text)
    if m:
        return Fraction(10) ** int(m.group(1))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {text!r}") from e


def width_exponent(width: Fraction) -> int:
    """k with 10^-k the largest power of ten not above ``width``."""
    if width <= 0 or width >= 1:
        raise UsageError("precision width must lie in (0, 1)")
    k = 0
    while Fraction(1, 10**k) > width:
        k += 1
    return k


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _integrity(kind: str, message: str, details=None) -> int:
    rec = {"integrity_failure": kind, "message": message}
    if details:
        rec["details"] = details
    sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")
    return EXIT_INTEGRITY


# -- commands ----------------------------------------------------------------

def cmd_classify(args) -> int:
    cfg = C.ClassifierConfig(cache_dir=args.cache_dir)
    if args.precision is not None:
        k = width_exponent(parse_rational(args.precision))
        cfg = C.ClassifierConfig(last_exponent=max(k, cfg.first_exponent), cache_dir=args.cache_dir)
    res = C.classify(cfg, cross_check=args.cross_check)
    doc = cert.build_document(res)
    _write(cert.dumps(doc), args.out)
    s = doc["summary"]
    sys.stderr.write(f"certified: {', '.join(s['certified']) or 'none'}; states: {s['states']}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        doc = cert.loads(Path(args.path).read_text())
    except FileNotFoundError:
        return _integrity("MissingCertificate", f"no such file: {args.path}")
    except cert.CertificateFormatError as e:
        return _integrity("CertificateFormatError", str(e))
    fails = cert.verify_document(doc)
    if fails:
        for f in fails:
            sys.stdout.write(f"FAIL {f}\n")
        return _integrity("VerificationFailed", f"{len(fails)} record(s) failed", [str(f) for f in fails])
    sys.stdout.write(f"OK: {len(doc['candidates'])} candidates, {len(doc['solutions'])} solutions re-verified\n")
    return EXIT_OK


def cmd_figure(args) -> int:
    doc = None
    if args.certificate:
        try:
            doc = cert.loads(Path(args.certificate).read_text())
        except FileNotFoundError:
            return _integrity("MissingCertificate", f"no such file: {args.certificate}")
    try:
        _write(cert.figure_table(args.which, doc), args.out)
    except cert.MissingCertificate as e:
        return _integrity("MissingCertificate", str(e))
    return EXIT_OK


def _named_range(name: str | None, target: str):
    if name is None:
        return None
    if name in ("T'", "Tprime", "T"):
        cfg = C.ClassifierConfig()
        return cfg.t_lo, cfg.t_hi
    if name == "S":
        lo, hi = C._S_bounds()
        return lo.hi, hi.lo
    raise UsageError(f"unknown range {name!r} (use T' or S)")


def root_table(target: str, lo=None, hi=None, cache_dir=None, digits: int = 12) -> list[tuple]:
    """(label, factor, interval) rows for the real roots of ``target`` in (lo, hi)."""
    mp = M.build_model_polynomials()
    if target == "R60":
        parts = {"R60": mp.appendixB_R60}
    elif target in ("P", "p120", "p132"):
        el = C.eliminate(cache_dir)
        ex = C.extract_p120(el.cofactor, mp.appendixB_R60)
        facs = C.model_factors(el, ex)
        parts = facs if target == "P" else {target: facs[target]}
    elif target == "Q":
        parts = C.q_factors(cache_dir)[1]
    else:
        raise UnknownTarget(f"unknown target {target!r}")
    if target == "Q" and lo is not None:
        # endpoint enclosures of S must be root-free
        for f in parts.values():
            C.count_in_S(f)
    rows = []
    for name, f in parts.items():
        for r in isolate_roots(f, lo, hi, name):
            rows.append((name, decimal_bracket(r, digits + 1).interval))
    rows.sort(key=lambda x: x[1].lo)
    return [(j, name, iv) for j, (name, iv) in enumerate(rows, 1)]


def cmd_roots(args) -> int:
    rng = _named_range(args.range, args.target)
    lo = parse_rational(args.lo) if args.lo else (rng[0] if rng else None)
    hi = parse_rational(args.hi) if args.hi else (rng[1] if rng else None)
    rows = root_table(args.target, lo, hi, args.cache_dir, args.digits)
    lines = ["index,factor,lo,hi,decimal"]
    for j, name, iv in rows:
        lines.append(f"{j},{name},{cert.q2s(iv.lo)},{cert.q2s(iv.hi)},{decimal_digits(iv, args.digits)[0]}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqpentagon", description="Certified classification of equilateral pentagonal central configurations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="run the full pipeline and emit a certificate")
    c.add_argument("--precision", help="finest t-interval width of the refinement schedule (default 1e-30)")
    c.add_argument("--out", help="certificate path (default stdout)")
    c.add_argument("--cross-check", action="store_true", help="also eliminate t and report the Q(s) factor pattern")
    c.add_argument("--cache-dir", help="directory for the cached eliminant")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="re-verify a certificate without re-running the elimination")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figure", help="vertex coordinates as comma-separated text")
    f.add_argument("which", choices=["regular", "concave", "gallery"])
    f.add_argument("--certificate", help="certificate for the regular and concave tables")
    f.add_argument("--out")
    f.set_defaults(func=cmd_figure)

    r = sub.add_parser("roots", help="isolating intervals of P, p120, p132, R60 or Q")
    r.add_argument("target", choices=["P", "p120", "p132", "R60", "Q"])
    r.add_argument("--range", choices=["T'", "S"], help="named range: T' = (3/25, 1) in t, S in s")
    r.add_argument("--lo")
    r.add_argument("--hi")
    r.add_argument("--digits", type=int, default=10)
    r.add_argument("--cache-dir")
    r.add_argument("--out")
    r.set_defaults(func=cmd_roots)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownTarget) as e:
        sys.stderr.write(f"eqpentagon: error: {e}\n")
        return EXIT_USAGE
    except (C.IntegrityError, M.AppendixMismatch, M.DataIntegrityError) as e:
        return _integrity(type(e).__name__, str(e))


if __name__ == "__main__":
    sys.exit(main())
