"""Time each hot kernel on its numba and pure-numpy implementations.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are imported side by side from ``IMPLEMENTATIONS``, so one
process compares them; outputs are checked equal before timing.
"""

import argparse
import timeit

import numpy as np

from stoneduality import _accel
from stoneduality.algebra import PowerSetAlgebra


def cylinders(n):
    """Basic open sets of ``2^B`` for an ``n``-element base: one per partial assignment."""
    pts = np.arange(1 << n)
    out = set()
    for fixed in range(3**n):
        mask = np.ones(pts.size, dtype=bool)
        for a in range(n):
            v = (fixed // 3**a) % 3
            if v < 2:
                mask &= ((pts >> a) & 1) == v
        out.add(int(np.sum(1 << pts[mask].astype(np.int64))))
    return np.array(sorted(out), dtype=np.int64)


def workloads():
    J8, M8, _ = (np.ascontiguousarray(t, dtype=np.int64) for t in PowerSetAlgebra(range(8)).tables)
    P4 = PowerSetAlgebra(range(4))
    leq = np.ascontiguousarray(P4.order, dtype=np.bool_)
    M4 = np.ascontiguousarray(P4.tables[1], dtype=np.int64)
    cyl16 = cylinders(4)
    opens8 = _accel.IMPLEMENTATIONS["numpy"]["union_closure"](cylinders(3), 8)
    return [
        ("assoc_violation", "join table, 256 elements", (J8,)),
        ("distrib_violation", "meet over join, 256 elements", (M8, J8)),
        ("filter_families", "all families of P(4), 2^16", (leq, M4)),
        ("union_closure", f"{cyl16.size} cylinders of 2^B, 16 points", (cyl16, 16)),
        ("topology_violation", f"{opens8.size} opens, 8 points", (opens8, 8)),
    ]


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return tuple(int(v) for v in a) == tuple(int(v) for v in b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<20} {'workload':<32} {'numba ms':>10} {'numpy ms':>10} {'speed-up':>9}")
    for name, what, inputs in workloads():
        fast = _accel.IMPLEMENTATIONS["numba"][name]
        slow = _accel.IMPLEMENTATIONS["numpy"][name]
        assert _same(fast(*inputs), slow(*inputs)), f"{name}: paths disagree"
        t_fast = min(timeit.repeat(lambda: fast(*inputs), number=1, repeat=args.repeat)) * 1e3
        t_slow = min(timeit.repeat(lambda: slow(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<20} {what:<32} {t_fast:>10.3f} {t_slow:>10.3f} {t_slow / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
