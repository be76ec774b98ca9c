"""Eliminate t instead of s and compare Q(s) with the certified solutions."""
import argparse
import json

from eqpentagon import classifier as C


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cache-dir", default=".eqpentagon-cache")
    args = ap.parse_args()

    res = C.classify(C.ClassifierConfig(cache_dir=args.cache_dir))
    report = C.cross_check_Q(res.solutions, args.cache_dir)
    print(json.dumps(report, indent=1, default=str))


if __name__ == "__main__":
    main()
