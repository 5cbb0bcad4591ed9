"""Planetoid distribution -> neutral dataset directory.

The input is the standard seven-file pickle distribution plus the test
index file (``ind.<name>.{x,y,tx,ty,allx,ally,graph}`` and
``ind.<name>.test.index``).  The output directory contains ``meta.json``,
``features.f32`` (raw little-endian float32), ``edges.txt`` (one
undirected edge per line), ``labels.txt`` (-1 for unlabeled), and
``masks.json``; see the consumer's format contract.

Conversion reorders the shuffled test block back to vertex order via the
test index file.  Test-index spans with gaps (Citeseer) get zero feature
and label rows inserted at the isolated indices, the standard fix; those
vertices end up unlabeled and outside every mask.  Feature rows are
normalized to unit sum (the citation-benchmark protocol's standard
preprocessing; all-zero rows stay zero).  Output is byte-for-byte
deterministic.
"""

from __future__ import annotations

import json
import pickle
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

PARTS = ("x", "y", "tx", "ty", "allx", "ally", "graph")
DATASETS = ("cora", "citeseer", "pubmed")


class ConversionError(Exception):
    pass


@dataclass
class PlanetoidBundle:
    x: sp.spmatrix
    y: np.ndarray
    tx: sp.spmatrix
    ty: np.ndarray
    allx: sp.spmatrix
    ally: np.ndarray
    graph: dict
    test_index: np.ndarray


@dataclass
class ConversionReport:
    name: str
    num_vertices: int
    num_features: int
    num_classes: int
    directed_entries: int
    self_loop_entries: int
    undirected_edges: int
    isolated_test_vertices: int
    train_size: int
    val_size: int
    test_size: int

    def lines(self) -> list:
        return [
            f"{self.name}: {self.num_vertices} vertices, "
            f"{self.undirected_edges} undirected edges, "
            f"{self.num_features} features, {self.num_classes} classes",
            f"  raw adjacency: {self.directed_entries} directed entries "
            f"({self.self_loop_entries} self-loops dropped)",
            f"  isolated test vertices patched: {self.isolated_test_vertices}",
            f"  masks: train={self.train_size} val={self.val_size} "
            f"test={self.test_size}",
        ]


def read_bundle(input_dir, name: str) -> PlanetoidBundle:
    input_dir = Path(input_dir)
    loaded = {}
    for part in PARTS:
        path = input_dir / f"ind.{name}.{part}"
        if not path.is_file():
            raise ConversionError(f"missing distribution file: {path}")
        try:
            with open(path, "rb") as f, warnings.catch_warnings():
                # the distribution pickles reference pre-1.8 scipy.sparse
                # module paths; unpickling them is expected here
                warnings.simplefilter("ignore", DeprecationWarning)
                loaded[part] = pickle.load(f, encoding="latin1")
        except Exception as e:
            raise ConversionError(f"corrupt distribution file {path}: {e}") from None
    index_path = input_dir / f"ind.{name}.test.index"
    if not index_path.is_file():
        raise ConversionError(f"missing distribution file: {index_path}")
    with open(index_path, "r", encoding="utf-8") as f:
        test_index = np.array([int(line) for line in f if line.strip()], dtype=np.int64)
    return PlanetoidBundle(test_index=test_index, **loaded)


def _as_dense_f32(m) -> np.ndarray:
    if sp.issparse(m):
        return np.asarray(m.todense(), dtype=np.float32)
    return np.asarray(m, dtype=np.float32)


def assemble(bundle: PlanetoidBundle):
    """Stitch the labeled/unlabeled/test blocks into vertex order."""
    test_sorted = np.sort(bundle.test_index)
    span = np.arange(test_sorted.min(), test_sorted.max() + 1)
    isolated = np.setdiff1d(span, test_sorted)

    tx = _as_dense_f32(bundle.tx)
    ty = np.asarray(bundle.ty, dtype=np.float64)
    if isolated.size:
        tx_full = np.zeros((span.size, tx.shape[1]), dtype=np.float32)
        tx_full[test_sorted - span[0]] = tx
        tx = tx_full
        ty_full = np.zeros((span.size, ty.shape[1]))
        ty_full[test_sorted - span[0]] = ty
        ty = ty_full

    allx = _as_dense_f32(bundle.allx)
    features = np.vstack([allx, tx])
    onehot = np.vstack([np.asarray(bundle.ally, dtype=np.float64), ty])
    n = len(bundle.graph)
    if features.shape[0] != n:
        raise ConversionError(
            f"feature rows ({features.shape[0]}) do not match graph size ({n})")
    if bundle.test_index.min() < 0 or bundle.test_index.max() >= n:
        raise ConversionError("test index outside vertex range")

    # the stacked test block is in shuffled order; restore vertex order
    features[bundle.test_index] = features[test_sorted]
    onehot[bundle.test_index] = onehot[test_sorted]

    # protocol preprocessing: normalize each feature row to unit sum
    row_sums = features.sum(axis=1, keepdims=True)
    row_sums[row_sums == 0] = 1.0
    features = features / row_sums

    labels = np.where(onehot.sum(axis=1) > 0, onehot.argmax(axis=1), -1).astype(np.int64)

    num_train = np.asarray(bundle.y).shape[0]
    train_idx = np.arange(num_train, dtype=np.int64)
    # validation: the next 500 featured vertices after the train block
    # (capped for graphs smaller than the standard benchmark layout)
    val_end = min(num_train + 500, allx.shape[0])
    val_idx = np.arange(num_train, val_end, dtype=np.int64)
    test_idx = test_sorted
    return features, labels, train_idx, val_idx, test_idx, isolated.size


def extract_edges(graph: dict):
    """Unique undirected pairs, self-loops dropped; returns the pairs plus
    raw directed-entry and self-loop counts for the report."""
    directed = 0
    self_loops = 0
    pairs = set()
    for u, neighbors in graph.items():
        for v in neighbors:
            directed += 1
            if u == v:
                self_loops += 1
            else:
                pairs.add((u, v) if u < v else (v, u))
    return sorted(pairs), directed, self_loops


def convert(input_dir, name: str, output_dir) -> ConversionReport:
    if name not in DATASETS:
        raise ConversionError(f"unknown dataset '{name}' (expected one of {DATASETS})")
    bundle = read_bundle(input_dir, name)
    features, labels, train_idx, val_idx, test_idx, isolated = assemble(bundle)
    edges, directed, self_loops = extract_edges(bundle.graph)
    num_classes = np.asarray(bundle.ally).shape[1]

    for split_name, idx in (("train", train_idx), ("val", val_idx), ("test", test_idx)):
        bad = idx[(labels[idx] < 0) | (labels[idx] >= num_classes)]
        if bad.size:
            raise ConversionError(
                f"{split_name} vertex {bad[0]} has no valid label after assembly")

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "num_vertices": int(features.shape[0]),
        "num_features": int(features.shape[1]),
        "num_classes": int(num_classes),
        "name": name,
    }
    with open(out / "meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, sort_keys=True, indent=2)
        f.write("\n")
    features.astype("<f4").tofile(out / "features.f32")
    with open(out / "edges.txt", "w", encoding="utf-8") as f:
        for u, v in edges:
            f.write(f"{u} {v}\n")
    with open(out / "labels.txt", "w", encoding="utf-8") as f:
        for label in labels:
            f.write(f"{label}\n")
    with open(out / "masks.json", "w", encoding="utf-8") as f:
        json.dump({"train": train_idx.tolist(), "val": val_idx.tolist(),
                   "test": test_idx.tolist()}, f, sort_keys=True)
        f.write("\n")

    return ConversionReport(
        name=name, num_vertices=int(features.shape[0]),
        num_features=int(features.shape[1]), num_classes=int(num_classes),
        directed_entries=directed, self_loop_entries=self_loops,
        undirected_edges=len(edges), isolated_test_vertices=isolated,
        train_size=len(train_idx), val_size=len(val_idx), test_size=len(test_idx))
