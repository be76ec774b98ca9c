"""Isolating intervals of the eliminant factors on (3/25, 1), named as in the classification."""
import argparse
from fractions import Fraction

from eqpentagon import classifier as C
from eqpentagon.interval import decimal_digits
from eqpentagon.upoly import refine_root, sturm_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cache-dir", default=".eqpentagon-cache")
    ap.add_argument("--digits", type=int, default=12)
    args = ap.parse_args()

    cfg = C.ClassifierConfig(cache_dir=args.cache_dir)
    el = C.eliminate(cfg.cache_dir)
    ex = C.extract_p120(el.cofactor)
    factors = C.model_factors(el, ex)
    for hi in (Fraction(1), Fraction(100)):
        counts = [sturm_count(factors[n], cfg.t_lo, hi) for n in C.FACTOR_ORDER]
        print(f"roots in (3/25, {hi}): " + ", ".join(f"{n}={k}" for n, k in zip(C.FACTOR_ORDER, counts)))
    roots, owners = C.isolate_candidates(factors, cfg)
    width = Fraction(1, 10 ** (args.digits + 2))
    for j, (r, f) in enumerate(zip(roots, owners), 1):
        iv = refine_root(r, width).interval
        print(f"t{j:<3} {f:>5}  {decimal_digits(iv, args.digits)[0]}")


if __name__ == "__main__":
    main()
