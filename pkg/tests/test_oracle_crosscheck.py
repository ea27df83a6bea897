"""Homology dimensions against a Groebner-free linear-algebra oracle."""
import pytest

from frobflat import frobenius_functor, koszul_complex, minimal_free_resolution
from frobflat.homological import homology
from frobflat.hilbert import hilbert_function
from frobflat.invariants import find_sop
from corpus import modules
from oracle import homology_dim


def check(C, i):
    """Compare the Hilbert function of H_i(C) with the oracle in low degrees."""
    H = homology(C, i)
    num = H.presentation.hilbert_numerator()
    n = C.ring.n
    top = max(max(C.shifts(j), default=0) for j in range(C.lo, C.hi + 1)) + 4
    for d in range(min(C.shifts(i), default=0), top + 1):
        assert homology_dim(C, i, d) == hilbert_function(num, n, d), (i, d)


@pytest.mark.parametrize("ring_name, label, M", list(modules()), ids=lambda v: str(v)[:24])
def test_frobenius_tor_dimensions(ring_name, label, M):
    F = minimal_free_resolution(M, 3, probe=False).complex
    FF = frobenius_functor(F, 1)
    for i in range(1, min(FF.hi, 2) + 1):
        check(FF, i)


@pytest.mark.parametrize("ring_name, label, M", list(modules()), ids=lambda v: str(v)[:24])
def test_koszul_homology_on_sop(ring_name, label, M):
    y = list(find_sop(M.ring).elements)
    K = koszul_complex(y, M.ring)
    for i in range(K.lo, K.hi + 1):
        check(K, i)
