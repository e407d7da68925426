"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so one process times both. Outputs
are compared before timing; a mismatch aborts the run.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from schreierlab import _pykernels
from schreierlab.algebra import _perms_fixing_zero, catalog

try:
    from schreierlab import _ckernels
except ImportError:
    sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")


def _enum_monoids(impl):
    return impl.enumerate_unital(5, True, _perms_fixing_zero(5))


def _enum_magmas(impl):
    return impl.enumerate_unital(4, False, np.zeros((0, 4), dtype=np.int32))


def _homs(impl, algebras):
    def run():
        total = 0
        for A in algebras:
            pins = np.full(A.size, -1, dtype=np.int32)
            pins[A.zero] = 0
            for B in algebras:
                total += impl.hom_search(A.binary_array, B.binary_array, A.unary_array,
                                         B.unary_array, pins, B.size).shape[0]
        return total
    return run


def _closures(impl, algebras):
    def run():
        out = []
        for A in algebras:
            for x in A.elements:
                mask = np.zeros(A.size, dtype=np.uint8)
                mask[x] = mask[A.zero] = 1
                out.append(int(np.asarray(impl.closure(A.binary_array, A.unary_array, mask)).sum()))
        return out
    return run


def _assoc(impl, tables):
    def run():
        return [impl.assoc_violation(t) for t in tables]
    return run


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    algebras = catalog("monoid", 4)
    magmas = list(_ckernels.enumerate_unital(4, False, np.zeros((0, 4), dtype=np.int32))[::16])
    cases = {
        "enumerate monoids n=5 (up to iso)": (lambda: _enum_monoids(_pykernels), lambda: _enum_monoids(_ckernels)),
        "enumerate unitary magmas n=4 (all)": (lambda: _enum_magmas(_pykernels), lambda: _enum_magmas(_ckernels)),
        f"hom search, {len(algebras)}x{len(algebras)} monoids": (_homs(_pykernels, algebras), _homs(_ckernels, algebras)),
        "closure of every singleton": (_closures(_pykernels, algebras), _closures(_ckernels, algebras)),
        f"associativity scan, {len(magmas)} magmas": (_assoc(_pykernels, magmas), _assoc(_ckernels, magmas)),
    }
    print(f"{'kernel':<40}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, (py, cy) in cases.items():
        a, b = py(), cy()
        same = np.array_equal(np.asarray(a), np.asarray(b)) if not isinstance(a, (int, list)) else a == b
        if not same:
            sys.exit(f"backends disagree on {name!r}")
        tp, tc = timeit(py, args.repeat), timeit(cy, args.repeat)
        print(f"{name:<40}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
