"""Exhaustive labelling-search kernels: numba-jitted with a numpy fallback.

The brute-force oracle enumerates all k**m edge-label vectors of a graph in
lexicographic order (first edge is the most significant digit, labels start
at 1) and returns the index of the first vector whose vertex products are
proper, or -1.  Products are compared through per-vertex prime-exponent
sums, so overflow never occurs.

Kernel selection: the environment variable ``PRODLABEL_KERNEL`` may be set
to ``numba`` or ``numpy``; unset, the jitted kernel is used when numba
imports.  Both kernels scan in the same order and return identical indices.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_PRIMES = (2, 3, 5, 7, 11, 13)

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


def kernel_choice() -> str:
    choice = os.environ.get("PRODLABEL_KERNEL", "").strip().lower()
    if choice in ("numba", "numpy"):
        return choice
    if choice:
        raise ValueError(f"PRODLABEL_KERNEL must be 'numba' or 'numpy', got {choice!r}")
    return "numba" if HAS_NUMBA else "numpy"


def label_weights(k: int) -> np.ndarray:
    """weights[lab][p] = exponent of the p-th prime in label lab (lab 0 unused)."""
    primes = [p for p in _PRIMES if p <= k]
    w = np.zeros((k + 1, max(len(primes), 1)), dtype=np.int64)
    for lab in range(2, k + 1):
        rest = lab
        for pi, p in enumerate(primes):
            while rest % p == 0:
                w[lab, pi] += 1
                rest //= p
        if rest != 1:
            raise ValueError(f"label {lab} has a prime factor above {_PRIMES[-1]}")
    return w


@njit(cache=True)
def _search_njit(eu, ev, n, k, weights):  # pragma: no cover - exercised via wrapper
    m = eu.shape[0]
    np_ = weights.shape[1]
    labels = np.ones(m, np.int64)
    acc = np.zeros((n, np_), np.int64)
    index = np.int64(0)
    while True:
        ok = True
        for j in range(m):
            a = eu[j]
            b = ev[j]
            same = True
            for p in range(np_):
                if acc[a, p] != acc[b, p]:
                    same = False
                    break
            if same:
                ok = False
                break
        if ok:
            return index
        pos = m - 1
        while pos >= 0:
            lab = labels[pos]
            a = eu[pos]
            b = ev[pos]
            if lab < k:
                labels[pos] = lab + 1
                for p in range(np_):
                    d = weights[lab + 1, p] - weights[lab, p]
                    acc[a, p] += d
                    acc[b, p] += d
                break
            labels[pos] = 1
            for p in range(np_):
                d = weights[1, p] - weights[lab, p]
                acc[a, p] += d
                acc[b, p] += d
            pos -= 1
        if pos < 0:
            return np.int64(-1)
        index += 1


def _search_numpy(eu, ev, n, k, weights, chunk: int = 1 << 14) -> int:
    m = eu.shape[0]
    total = k ** m
    divisors = k ** np.arange(m - 1, -1, -1, dtype=np.int64)
    np_ = weights.shape[1]
    inc = np.zeros((m, n), dtype=np.int64)
    inc[np.arange(m), eu] += 1
    inc[np.arange(m), ev] += 1
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        labels = (idx[:, None] // divisors) % k + 1
        ok = np.ones(idx.shape[0], dtype=bool)
        accs = [weights[labels, p] @ inc for p in range(np_)]
        for j in range(m):
            a, b = eu[j], ev[j]
            eq = np.ones(idx.shape[0], dtype=bool)
            for acc in accs:
                eq &= acc[:, a] == acc[:, b]
            ok &= ~eq
        hits = np.flatnonzero(ok)
        if hits.size:
            return int(start + hits[0])
        start = stop
    return -1


def search_first_proper(g, k: int, kernel: str | None = None) -> int:
    """Index of the first proper k-labelling in lexicographic order, or -1."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.m == 0:
        return 0
    if k ** g.m > 1 << 31:
        raise ValueError(f"enumeration of {k}^{g.m} labellings exceeds the supported bound")
    ends = np.asarray(g.edges, dtype=np.int64)
    eu, ev = ends[:, 0].copy(), ends[:, 1].copy()
    weights = label_weights(k)
    choice = kernel or kernel_choice()
    if choice == "numba":
        return int(_search_njit(eu, ev, g.n, k, weights))
    return _search_numpy(eu, ev, g.n, k, weights)


def decode_labels(index: int, m: int, k: int) -> list[int]:
    """Label vector at a given enumeration index."""
    out = []
    for pos in range(m - 1, -1, -1):
        out.append((index // k ** pos) % k + 1)
    return out
