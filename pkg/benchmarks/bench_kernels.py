"""Time the numba kernels against their numpy fallbacks on G26 and G10 data.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Numba timings exclude the first (compiling) call.
"""
import argparse
import time

import numpy as np

from cmfamilies import _kernels
from cmfamilies.chardata import _series_setup, _values_array
from cmfamilies.exact.cyclotomic import power_table, totient
from cmfamilies.pipeline import load_group, load_table


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(name):
    g = load_group(name)
    t = load_table(g)
    n = g.conductor
    phi = totient(n)
    red = _kernels.reduction_table(power_table(n), phi)
    gens = np.array(list(g.generator_index.values()))
    invs = np.array([int(g.inverse[i]) for i in gens])
    right = np.stack([g.table[:, gi] for gi in gens])

    rng = np.random.default_rng(0)
    a = rng.integers(-3, 4, size=(g.order, g.dim, g.dim, phi))
    b = rng.integers(-3, 4, size=(g.dim, g.dim, phi))

    _, series, _, length = _series_setup(g)
    cps = np.zeros((len(g.classes), g.dim + 1, phi), dtype=np.int64)
    for c in g.classes:
        for i, x in enumerate(c.charpoly):
            cps[c.index, i] = [int(v) for v in x.to_conductor(n).coeffs]
    sizes = np.array([c.size for c in g.classes], dtype=np.int64)
    vals = _values_array(t.values, n)[-1]

    return {
        "matmul_batch": (a, b, red),
        "cayley_from_words": (right, g.parent, g.via, 0),
        "class_labels": (g.table, gens, invs),
        "series": (cps, length, red),
        "weighted_sum": (sizes, vals, series, red),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--groups", nargs="*", default=["G10", "G26"])
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'group':6} {'kernel':18} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name in args.groups:
        for kernel, kargs in cases(name).items():
            np_fn = getattr(_kernels, f"_np_{kernel}")
            nb_fn = getattr(_kernels, f"_nb_{kernel}")
            nb_fn(*kargs)  # compile
            t_np, out_np = best_of(np_fn, kargs, args.repeat)
            t_nb, out_nb = best_of(nb_fn, kargs, args.repeat)
            assert np.array_equal(out_np, out_nb), f"{name} {kernel}: backends disagree"
            print(f"{name:6} {kernel:18} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
