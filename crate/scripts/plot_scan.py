"""Plot template for `flatband scan` CSV output: exact levels as points,
WKB levels as lines, one colour per parity.

    flatband scan --alpha-min -3 --alpha-max -0.05 --alpha-steps 60 --regime neg > scan.csv
    python3 scripts/plot_scan.py scan.csv scan.png

Requires matplotlib. Edit the STYLE block to adapt.
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# STYLE
COLOURS = {"odd": "tab:blue", "even": "tab:red"}
FIGSIZE = (6.0, 4.5)
YLABEL = "E / m"
XLABEL = "alpha"


def load(path):
    series = defaultdict(lambda: {"alpha": [], "exact": [], "wkb": []})
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row["status"] == "failed":
                continue
            key = (row["parity"], int(row["n"]))
            s = series[key]
            s["alpha"].append(float(row["alpha"]))
            s["exact"].append(float(row["E_exact_over_m"]))
            s["wkb"].append(float(row["E_wkb_over_m"]) if row["E_wkb_over_m"] else float("nan"))
    return series


def main(src, dst):
    series = load(src)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for (parity, n), s in sorted(series.items()):
        colour = COLOURS.get(parity, "k")
        ax.plot(s["alpha"], s["exact"], "o", ms=2.5, color=colour)
        ax.plot(s["alpha"], s["wkb"], "-", lw=0.8, color=colour)
    for parity, colour in COLOURS.items():
        ax.plot([], [], "o-", color=colour, label=parity)
    ax.set_xlabel(XLABEL)
    ax.set_ylabel(YLABEL)
    ax.legend(title="points: exact, lines: WKB", fontsize="small")
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: plot_scan.py SCAN_CSV OUTPUT_IMAGE")
    main(sys.argv[1], sys.argv[2])
