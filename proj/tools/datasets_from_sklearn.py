#!/usr/bin/env python3
"""Write iris.data, wdbc.data and wine.data in the UCI column layouts.

Used when the UCI archive is unreachable: scikit-learn bundles the same
three tables. WDBC has no patient ID column there, so the row number
(1-based) is written in its place; the loader ignores that column.
"""
import argparse
import csv
import os

import sklearn

SRC = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data")


def read(name):
    with open(os.path.join(SRC, name), newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    header, rows = read("iris.csv")
    names = ["Iris-" + n for n in header[2:]]
    with open(os.path.join(args.out, "iris.data"), "w") as fh:
        for r in rows:
            fh.write(",".join(r[:4] + [names[int(r[4])]]) + "\n")

    _, rows = read("breast_cancer.csv")
    with open(os.path.join(args.out, "wdbc.data"), "w") as fh:
        for i, r in enumerate(rows, start=1):
            # sklearn: 0 = malignant, 1 = benign
            diag = "M" if r[30] == "0" else "B"
            fh.write(",".join([str(i), diag] + r[:30]) + "\n")

    _, rows = read("wine_data.csv")
    with open(os.path.join(args.out, "wine.data"), "w") as fh:
        for r in rows:
            fh.write(",".join([str(int(r[13]) + 1)] + r[:13]) + "\n")


if __name__ == "__main__":
    main()
