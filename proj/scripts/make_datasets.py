#!/usr/bin/env python3
"""Regenerates the benchmark datasets under data/.

Every file is derived deterministically from the classic sklearn corpora:

  wdbc.libsvm        breast-cancer diagnostic, standardized, PCA to 10 dims
  digits_3v8.libsvm  handwritten digits restricted to {3, 8}, PCA to 10 dims
  digits_7v9.libsvm  same for {7, 9}
  digits_2v3.libsvm  same for {2, 3}
  digits_4v9.libsvm  same for {4, 9}
  wine_01.libsvm     wine cultivars 1 vs 2, standardized (13 dims)
  wine_12.libsvm     wine cultivars 2 vs 3, standardized (13 dims)
  iris_vv.libsvm     iris versicolor vs virginica (4 dims)
  iris3.csv          all three iris classes, CSV with a `label` header column
  synth_small.libsvm tiny synthetic two-cluster set for quick CLI smoke runs

The four digit pairs are the visually confusable ones; together with wdbc and
the overlapping wine cultivars they form the benchmark suite the acceptance
gate runs (problems hard enough that selection strategies separate).

Binary libsvm files use +1/-1 labels (the loader maps them to {1, 0});
feature indices are 1-based. Rows are shuffled with a fixed seed so file
order carries no class structure.
"""

from pathlib import Path

import numpy as np
from sklearn import datasets
from sklearn.decomposition import PCA
from sklearn.preprocessing import StandardScaler

OUT = Path(__file__).resolve().parent.parent / "data"
SEED = 20240817


def write_libsvm(path: Path, x: np.ndarray, y: np.ndarray) -> None:
    lines = []
    for row, label in zip(x, y):
        feats = " ".join(f"{d + 1}:{v:.10g}" for d, v in enumerate(row))
        lines.append(f"{'+1' if label == 1 else '-1'} {feats}")
    path.write_text("\n".join(lines) + "\n")
    print(f"  {path.name}: {x.shape[0]} rows, {x.shape[1]} dims")


def write_csv(path: Path, x: np.ndarray, y: np.ndarray) -> None:
    names = [f"f{d}" for d in range(x.shape[1])] + ["label"]
    lines = [",".join(names)]
    for row, label in zip(x, y):
        lines.append(",".join(f"{v:.10g}" for v in row) + f",{label}")
    path.write_text("\n".join(lines) + "\n")
    print(f"  {path.name}: {x.shape[0]} rows, {x.shape[1]} dims, {len(set(y))} classes")


def shuffled(x: np.ndarray, y: np.ndarray, seed: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.random.default_rng(seed).permutation(len(y))
    return x[order], y[order]


def standardize_pca(x: np.ndarray, dims: int) -> np.ndarray:
    x = StandardScaler().fit_transform(x)
    if dims < x.shape[1]:
        x = PCA(n_components=dims, random_state=SEED).fit_transform(x)
    return x


def binary_subset(x: np.ndarray, y: np.ndarray, neg: int, pos: int) -> tuple[np.ndarray, np.ndarray]:
    keep = (y == neg) | (y == pos)
    return x[keep], (y[keep] == pos).astype(int)


def main() -> None:
    OUT.mkdir(exist_ok=True)

    wdbc = datasets.load_breast_cancer()
    x, y = shuffled(standardize_pca(wdbc.data, 10), wdbc.target, SEED + 1)
    write_libsvm(OUT / "wdbc.libsvm", x, y)

    digits = datasets.load_digits()
    for neg, pos in [(3, 8), (7, 9), (2, 3), (4, 9)]:
        xs, ys = binary_subset(digits.data, digits.target, neg, pos)
        xs = standardize_pca(xs, 10)
        xs, ys = shuffled(xs, ys, SEED + 10 * neg + pos)
        write_libsvm(OUT / f"digits_{neg}v{pos}.libsvm", xs, ys)

    wine = datasets.load_wine()
    xs, ys = binary_subset(wine.data, wine.target, 0, 1)
    xs = StandardScaler().fit_transform(xs)
    xs, ys = shuffled(xs, ys, SEED + 99)
    write_libsvm(OUT / "wine_01.libsvm", xs, ys)

    xs, ys = binary_subset(wine.data, wine.target, 1, 2)
    xs = StandardScaler().fit_transform(xs)
    xs, ys = shuffled(xs, ys, SEED + 2)
    write_libsvm(OUT / "wine_12.libsvm", xs, ys)

    iris = datasets.load_iris()
    xs, ys = binary_subset(iris.data, iris.target, 1, 2)
    xs, ys = shuffled(xs, ys, SEED + 3)
    write_libsvm(OUT / "iris_vv.libsvm", xs, ys)

    xs, ys = shuffled(iris.data, iris.target, SEED + 4)
    write_csv(OUT / "iris3.csv", xs, ys)

    rng = np.random.default_rng(SEED + 5)
    n = 40
    centers = np.array([[-2.0, 0.0], [2.0, 0.0]])
    labels = rng.integers(0, 2, size=n)
    points = centers[labels] + rng.normal(size=(n, 2))
    write_libsvm(OUT / "synth_small.libsvm", points, labels)


if __name__ == "__main__":
    main()
