"""Run the full pipeline, write a certificate and print the candidate table."""
import argparse
from pathlib import Path

from eqpentagon import certificate as cert
from eqpentagon import classifier as C


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="certificate.json")
    ap.add_argument("--cache-dir", default=".eqpentagon-cache")
    ap.add_argument("--last-exponent", type=int, default=30, help="finest width 10^-k")
    ap.add_argument("--cross-check", action="store_true")
    args = ap.parse_args()

    cfg = C.ClassifierConfig(last_exponent=args.last_exponent, cache_dir=args.cache_dir)
    res = C.classify(cfg, cross_check=args.cross_check)
    doc = cert.build_document(res)
    Path(args.out).write_text(cert.dumps(doc))

    print(f"{'cand':>6} {'factor':>6} {'state':>18} {'k':>3}  reason")
    for c in res.candidates:
        print(f"{c.label:>6} {c.factor:>6} {c.state:>18} {c.width_exponent:>3}  {c.reason}")
    for s in res.solutions:
        v = next(r for r in doc["solutions"] if r["label"] == s.label)["values"]
        print(f"\n{s.label} ({s.geometry.shape})")
        for name in ("x3", "y3", "y5", "m1", "m3", "m5", "lambda"):
            print(f"  {name:>6} = {v[name]['decimal']}")
    print(f"\nelapsed {res.seconds:.1f} s; certificate written to {args.out}")


if __name__ == "__main__":
    main()
