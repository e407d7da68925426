import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schreierlab import _pykernels, kernels
from schreierlab.algebra import catalog

try:
    from schreierlab import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("SCHREIERLAB_PURE", "") == "":
        assert kernels.BACKEND == "cython"


def test_pure_switch_selects_fallback():
    env = dict(os.environ, SCHREIERLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from schreierlab import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _perms(n):
    from schreierlab.algebra import _perms_fixing_zero
    return _perms_fixing_zero(n)


@pytest.mark.parametrize("impl", [_pykernels, pytest.param(_ckernels, marks=needs_ext)],
                         ids=["python", "cython"])
@pytest.mark.parametrize("n,assoc,iso,count", [
    (1, True, False, 1), (2, True, False, 2), (2, False, False, 2),
    (3, True, True, 7), (4, True, True, 35), (3, False, True, 45),
])
def test_enumeration_counts(impl, n, assoc, iso, count):
    perms = _perms(n) if iso else np.zeros((0, n), dtype=np.int32)
    assert impl.enumerate_unital(n, assoc, perms).shape[0] == count


@needs_ext
@pytest.mark.parametrize("n,assoc", [(3, True), (3, False), (4, True)])
def test_enumeration_parity(n, assoc):
    for perms in (np.zeros((0, n), dtype=np.int32), _perms(n)):
        a = _pykernels.enumerate_unital(n, assoc, perms)
        b = _ckernels.enumerate_unital(n, assoc, perms)
        assert np.array_equal(a, b)


tables = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))


@needs_ext
@settings(max_examples=200, deadline=None)
@given(tables)
def test_assoc_violation_parity(t):
    arr = np.ascontiguousarray(np.array(t, dtype=np.int32))
    a = _pykernels.assoc_violation(arr)
    b = _ckernels.assoc_violation(arr)
    assert a == b
    n = len(t)
    first = next(((x, y, z) for x in range(n) for y in range(n) for z in range(n)
                  if t[t[x][y]][z] != t[x][t[y][z]]), None)
    assert (None if a is None else tuple(a)) == first


@needs_ext
@settings(max_examples=100, deadline=None)
@given(st.data())
def test_closure_parity(data):
    algs = catalog("monoid", 4)
    A = data.draw(st.sampled_from(algs))
    seed = data.draw(st.sets(st.integers(0, A.size - 1)))
    mask = np.zeros(A.size, dtype=np.uint8)
    for x in seed:
        mask[x] = 1
    a = _pykernels.closure(A.binary_array, A.unary_array, mask.copy())
    b = _ckernels.closure(A.binary_array, A.unary_array, mask.copy())
    assert np.array_equal(np.asarray(a), np.asarray(b))


@needs_ext
def test_hom_search_parity():
    algs = catalog("monoid", 3)
    for A in algs:
        for B in algs:
            fixed = np.full(A.size, -1, dtype=np.int32)
            a = _pykernels.hom_search(A.binary_array, B.binary_array, A.unary_array, B.unary_array,
                                      fixed, B.size)
            b = _ckernels.hom_search(A.binary_array, B.binary_array, A.unary_array, B.unary_array,
                                     fixed, B.size)
            assert np.array_equal(np.asarray(a), np.asarray(b))
