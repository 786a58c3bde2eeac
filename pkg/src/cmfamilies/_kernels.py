"""Integer kernels for group enumeration and fake-degree sums.

Cyclotomic numbers enter these kernels as integer coordinate vectors of
length phi(n); a product of two such vectors is a length ``2*phi - 1``
convolution folded back through ``red``, whose row ``e`` holds the
coordinates of ``zeta_n^e``.

Each kernel has a numba implementation and a numpy implementation with the
same signature. Setting ``CMFAMILIES_DISABLE_NUMBA=1`` (or running without
numba installed) selects the numpy path.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_DISABLED = os.environ.get("CMFAMILIES_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
USE_NUMBA = numba is not None and not NUMBA_DISABLED


def reduction_table(power_rows, phi: int) -> np.ndarray:
    """Rows 0 .. 2*phi-2 of the power table as an int64 array."""
    n = len(power_rows)
    return np.array([power_rows[e % n] for e in range(2 * phi - 1)], dtype=np.int64)


# ---------------------------------------------------------------- numpy path


def _np_matmul_batch(a, b, red):
    """a: (k,d,d,phi), b: (d,d,phi) -> (k,d,d,phi) integer product a @ b."""
    phi = a.shape[-1]
    full = np.zeros(a.shape[:3] + (2 * phi - 1,), dtype=np.int64)
    for p in range(phi):
        for q in range(phi):
            full[..., p + q] += np.einsum("bik,kj->bij", a[..., p], b[..., q])
    return full @ red


def _np_cayley_from_words(right, parent, gen, identity):
    """Multiplication table T[x, y] = x*y from right-multiplication maps.

    ``right[g, x]`` is the index of x*g. Elements are in BFS order, so
    ``parent[y]`` precedes y and ``y = parent[y] * generators[gen[y]]``.
    """
    n = right.shape[1]
    table = np.empty((n, n), dtype=np.int64)
    table[:, identity] = np.arange(n)
    for y in range(n):
        if y == identity:
            continue
        table[:, y] = right[gen[y], table[:, parent[y]]]
    return table


def _np_class_labels(table, gens, gen_invs):
    """Least element index in each conjugacy class, per element."""
    n = table.shape[0]
    labels = np.arange(n, dtype=np.int64)
    conj = [table[table[gi, :], g] for g, gi in zip(gens, gen_invs)]
    changed = True
    while changed:
        changed = False
        for c in conj:
            lo = np.minimum(labels, labels[c])
            np.minimum.at(lo, c, labels)
            lo = lo[lo]
            if not np.array_equal(lo, labels):
                labels = lo
                changed = True
    return labels


def _np_series(charpolys, length, red):
    """Power series of 1/det(1 - w t) per class.

    charpolys: (c, r+1, phi) integer coordinates of det(1 - w t), constant
    term 1. Returns (c, length, phi).
    """
    c, deg1, phi = charpolys.shape
    out = np.zeros((c, length, phi), dtype=np.int64)
    out[:, 0, 0] = 1
    for k in range(1, length):
        acc = np.zeros((c, 2 * phi - 1), dtype=np.int64)
        for i in range(1, min(k, deg1 - 1) + 1):
            for p in range(phi):
                acc[:, p:p + phi] -= charpolys[:, i, p:p + 1] * out[:, k - i, :]
        out[:, k, :] = acc @ red
    return out


def _np_weighted_sum(weights, values, series, red):
    """sum_c weights[c] * values[c] * series[c]; values (c, phi), series (c, L, phi)."""
    c, length, phi = series.shape
    full = np.zeros((length, 2 * phi - 1), dtype=np.int64)
    for p in range(phi):
        wv = weights * values[:, p]
        full[:, p:p + phi] += np.einsum("c,clq->lq", wv, series)
    return full @ red


# ---------------------------------------------------------------- numba path

if numba is not None:

    @numba.njit(cache=True)
    def _nb_matmul_batch(a, b, red):
        k, d, _, phi = a.shape
        out = np.zeros((k, d, d, phi), dtype=np.int64)
        full = np.zeros(2 * phi - 1, dtype=np.int64)
        for t in range(k):
            for i in range(d):
                for j in range(d):
                    full[:] = 0
                    for m in range(d):
                        for p in range(phi):
                            x = a[t, i, m, p]
                            if x == 0:
                                continue
                            for q in range(phi):
                                full[p + q] += x * b[m, j, q]
                    for e in range(2 * phi - 1):
                        f = full[e]
                        if f != 0:
                            for r in range(phi):
                                out[t, i, j, r] += f * red[e, r]
        return out

    @numba.njit(cache=True)
    def _nb_cayley_from_words(right, parent, gen, identity):
        n = right.shape[1]
        table = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            table[x, identity] = x
        for y in range(n):
            if y == identity:
                continue
            py = parent[y]
            g = gen[y]
            for x in range(n):
                table[x, y] = right[g, table[x, py]]
        return table

    @numba.njit(cache=True)
    def _nb_find(uf, x):
        root = x
        while uf[root] != root:
            root = uf[root]
        while uf[x] != root:
            nxt = uf[x]
            uf[x] = root
            x = nxt
        return root

    @numba.njit(cache=True)
    def _nb_class_labels(table, gens, gen_invs):
        n = table.shape[0]
        uf = np.arange(n)
        for t in range(gens.shape[0]):
            g = gens[t]
            gi = gen_invs[t]
            for x in range(n):
                y = table[table[gi, x], g]
                rx = _nb_find(uf, x)
                ry = _nb_find(uf, y)
                if rx < ry:
                    uf[ry] = rx
                elif ry < rx:
                    uf[rx] = ry
        labels = np.empty(n, dtype=np.int64)
        for x in range(n):
            labels[x] = _nb_find(uf, x)
        return labels

    @numba.njit(cache=True)
    def _nb_series(charpolys, length, red):
        c, deg1, phi = charpolys.shape
        out = np.zeros((c, length, phi), dtype=np.int64)
        full = np.zeros(2 * phi - 1, dtype=np.int64)
        for w in range(c):
            out[w, 0, 0] = 1
            for k in range(1, length):
                full[:] = 0
                top = min(k, deg1 - 1)
                for i in range(1, top + 1):
                    for p in range(phi):
                        x = charpolys[w, i, p]
                        if x == 0:
                            continue
                        for q in range(phi):
                            full[p + q] -= x * out[w, k - i, q]
                for e in range(2 * phi - 1):
                    f = full[e]
                    if f != 0:
                        for r in range(phi):
                            out[w, k, r] += f * red[e, r]
        return out

    @numba.njit(cache=True)
    def _nb_weighted_sum(weights, values, series, red):
        c, length, phi = series.shape
        full = np.zeros((length, 2 * phi - 1), dtype=np.int64)
        for w in range(c):
            for p in range(phi):
                x = weights[w] * values[w, p]
                if x == 0:
                    continue
                for k in range(length):
                    for q in range(phi):
                        full[k, p + q] += x * series[w, k, q]
        out = np.zeros((length, phi), dtype=np.int64)
        for k in range(length):
            for e in range(2 * phi - 1):
                f = full[k, e]
                if f != 0:
                    for r in range(phi):
                        out[k, r] += f * red[e, r]
        return out


def _pick(name):
    if USE_NUMBA:
        return globals()["_nb_" + name]
    return globals()["_np_" + name]


def matmul_batch(a: np.ndarray, b: np.ndarray, red: np.ndarray) -> np.ndarray:
    return _pick("matmul_batch")(np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64), red)


def cayley_from_words(right, parent, gen, identity: int) -> np.ndarray:
    return _pick("cayley_from_words")(
        np.ascontiguousarray(right, dtype=np.int64),
        np.ascontiguousarray(parent, dtype=np.int64),
        np.ascontiguousarray(gen, dtype=np.int64),
        int(identity),
    )


def class_labels(table, gens, gen_invs) -> np.ndarray:
    return _pick("class_labels")(
        np.ascontiguousarray(table, dtype=np.int64),
        np.asarray(gens, dtype=np.int64),
        np.asarray(gen_invs, dtype=np.int64),
    )


def series(charpolys, length: int, red) -> np.ndarray:
    return _pick("series")(np.ascontiguousarray(charpolys, dtype=np.int64), int(length), red)


def weighted_sum(weights, values, series_, red) -> np.ndarray:
    return _pick("weighted_sum")(
        np.asarray(weights, dtype=np.int64),
        np.ascontiguousarray(values, dtype=np.int64),
        np.ascontiguousarray(series_, dtype=np.int64),
        red,
    )


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
