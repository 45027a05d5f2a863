#!/usr/bin/env python3
"""Write the benchmark datasets as CSV files in UCI layout.

WBC  : MASS::biopsy (Wolberg's original breast-cancer-wisconsin data) from the
       `rdatasets` package. Missing values are written as "?" like the UCI file.
WDBC : the diagnostic breast cancer set shipped with scikit-learn.
Parkinsons: not bundled by any offline package; download parkinsons.data from
       the UCI repository and pass it with --parkinsons.
"""
import argparse
import csv
import shutil
from pathlib import Path

WBC_COLUMNS = [
    "id", "clump_thickness", "cell_size_uniformity", "cell_shape_uniformity",
    "marginal_adhesion", "single_epithelial_cell_size", "bare_nuclei",
    "bland_chromatin", "normal_nucleoli", "mitoses", "class",
]


def write_wbc(out: Path) -> None:
    import rdatasets

    df = rdatasets.data("MASS", "biopsy")
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(WBC_COLUMNS)
        for row in df.itertuples(index=False):
            values = [row.ID]
            for name in ["V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "V9"]:
                v = getattr(row, name)
                values.append("?" if v != v else str(int(v)))
            values.append(2 if row._11 == "benign" else 4)
            w.writerow(values)


def write_wdbc(out: Path) -> None:
    from sklearn.datasets import load_breast_cancer

    b = load_breast_cancer()
    names = [n.replace(" ", "_") for n in b.feature_names]
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "diagnosis"] + names)
        for i, (x, y) in enumerate(zip(b.data, b.target)):
            # sklearn encodes malignant as 0
            w.writerow([i + 1, "M" if y == 0 else "B"] + [repr(float(v)) for v in x])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--parkinsons", help="path to UCI parkinsons.data")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_wbc(out / "wbc.csv")
    write_wdbc(out / "wdbc.csv")
    if args.parkinsons:
        shutil.copyfile(args.parkinsons, out / "parkinsons.csv")


if __name__ == "__main__":
    main()
