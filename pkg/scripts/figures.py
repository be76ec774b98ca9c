"""Plot the certified pentagons and the boundary gallery (needs matplotlib)."""
import argparse
import csv
import io
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from eqpentagon import certificate as cert  # noqa: E402

ORDER = [0, 2, 4, 3, 1]  # boundary walk: 1, 3, 5, 4, 2


def _tables(doc):
    out = defaultdict(list)
    for which in ("regular", "concave", "gallery"):
        text = cert.figure_table(which, doc)
        for row in csv.DictReader(io.StringIO(text)):
            out[row["configuration"]].append(row)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("certificate")
    ap.add_argument("--out", default="pentagons.png")
    args = ap.parse_args()

    doc = cert.loads(Path(args.certificate).read_text())
    tables = _tables(doc)
    fig, axes = plt.subplots(1, len(tables), figsize=(3 * len(tables), 3.2))
    for ax, (name, rows) in zip(axes, tables.items()):
        pts = [(float(r["x"]), float(r["y"])) for r in rows]
        ring = [pts[i] for i in ORDER] + [pts[ORDER[0]]]
        ax.plot(*zip(*ring), "-", color="0.4")
        ax.plot(*zip(*pts), "o", color="C0" if not rows[0]["flag"] else "C3")
        ax.set_title(f"{name}\n{rows[0]['shape']}", fontsize=8)
        ax.set_aspect("equal")
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
