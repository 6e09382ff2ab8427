import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcore import _kernels as K
from qcore import series as S
from qcore.eta import fk_series
from qcore.series import EXACT, CoefficientRing, NonUnitError, RingMismatchError

M5 = CoefficientRing.mod(5)


def ser(coeffs, ring=EXACT, order=None):
    return S.from_coeffs(coeffs, ring, order)


# --- examples ---------------------------------------------------------------


def test_add_examples():
    assert (ser([1, -1]) + ser([0, 1])).tolist() == [1, 0]
    assert (ser([1, 1, 2]) + ser([0, 0, 0])).tolist() == [1, 1, 2]
    assert (ser([4, 3], M5) + ser([4, 3], M5)).tolist() == [3, 1]


def test_mul_examples():
    geo = ser([1] * 10)
    assert (ser([1, -1], order=10) * geo).tolist() == [1] + [0] * 9
    f1 = fk_series(1, EXACT, 50)
    assert S.mul(f1, S.invert(f1)) == S.one(EXACT, 50)
    p = S.invert(f1)
    assert (p * p)[2] == 5


def test_invert_examples():
    assert S.invert(fk_series(1, EXACT, 6)).tolist() == [1, 1, 2, 3, 5, 7]
    assert S.invert(S.one(EXACT, 5)) == S.one(EXACT, 5)
    assert S.invert(ser([2, 1], M5)).tolist() == [3, 1]


def test_invert_rejects_non_unit():
    with pytest.raises(NonUnitError):
        S.invert(ser([2, 1]))
    with pytest.raises(NonUnitError):
        S.invert(ser([5, 1], M5))


def test_power_examples():
    assert (fk_series(1, EXACT, 10) ** 2)[2] == -1
    assert S.power(ser([3, 7, 1]), 0) == S.one(EXACT, 3)
    assert S.power(ser([1, 1], order=8), -1).tolist() == [1, -1, 1, -1, 1, -1, 1, -1]


def test_subst_examples():
    assert S.subst_qk(ser([1, -1], order=8), 5).tolist() == [1, 0, 0, 0, 0, -1, 0, 0]
    a = ser([1, 2, 3, 4])
    assert S.subst_qk(a, 1) == a


def test_subst_refuses_undetermined_order():
    with pytest.raises(ValueError):
        S.subst_qk(ser([1, 2]), 3, order=7)
    assert S.subst_qk(ser([1, 2]), 3, order=6).tolist() == [1, 0, 0, 2, 0, 0]


def test_dissect_examples():
    p = S.invert(fk_series(1, EXACT, 15))
    assert S.dissect(p, 5, 4).tolist() == [5, 30, 135]
    one = S.one(EXACT, 20)
    assert S.dissect(one, 5, 0).tolist() == [1, 0, 0, 0]
    assert S.dissect(one, 5, 3).tolist() == [0, 0, 0, 0]


def test_dissect_order():
    a = ser(range(23))
    for r in range(5):
        assert S.dissect(a, 5, r).order == -(-(23 - r) // 5)


def test_shift_examples():
    assert S.shift(ser([1, 2, 3]), 1).tolist() == [0, 1, 2]
    a = ser([4, 5, 6])
    assert S.shift(a, 0) == a


def test_reduce_mod_examples():
    assert S.reduce_mod(ser([4, 550, 12500]), 5).tolist() == [4, 0, 0]
    assert S.reduce_mod(S.zero(EXACT, 4), 7) == S.zero(CoefficientRing.mod(7), 4)
    assert S.reduce_mod(ser([-1]), 5).tolist() == [4]


def test_reduce_mod_between_rings():
    a = ser([7, 24, 130], CoefficientRing.mod(125))
    assert S.reduce_mod(a, 5).tolist() == [2, 4, 0]
    with pytest.raises(RingMismatchError):
        S.reduce_mod(a, 7)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        ser([1]) + ser([1], M5)


def test_ring_validation():
    with pytest.raises(ValueError):
        CoefficientRing.mod(1)
    with pytest.raises(ValueError):
        CoefficientRing.mod(S.MAX_MODULUS + 1)


def test_series_is_immutable():
    a = ser([1, 2])
    with pytest.raises(AttributeError):
        a.ring = M5
    with pytest.raises(ValueError):
        a.coeffs[0] = 5


def test_order_is_min():
    assert (ser([1, 2, 3]) * ser([1, 1])).order == 2
    assert (ser([1, 2, 3]) + ser([1, 1])).order == 2


def test_big_integer_coefficients_stay_exact():
    # 1/(1 - 10^30 q): coefficients are powers of 10^30, far beyond int64
    a = ser([1, -(10**30)], order=6)
    inv = S.invert(a)
    assert inv.tolist() == [10 ** (30 * n) for n in range(6)]


# --- properties ---------------------------------------------------------------

ints = st.integers(min_value=-(10**20), max_value=10**20)
coeff_lists = st.lists(ints, min_size=1, max_size=60)
rings = st.sampled_from([EXACT, CoefficientRing.mod(5), CoefficientRing.mod(3125), CoefficientRing.mod(2**61 - 1)])


def _triple(draw_lists, ring):
    n = min(len(x) for x in draw_lists)
    return [ser(x[:n], ring) for x in draw_lists]


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists, rings)
def test_ring_axioms(x, y, z, ring):
    a, b, c = _triple([x, y, z], ring)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == S.zero(ring, a.order)
    assert a * S.one(ring, a.order) == a


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists, rings)
def test_fast_mul_matches_schoolbook(x, y, ring):
    a, b = _triple([x, y], ring)
    assert S.mul(a, b) == S.mul_schoolbook(a, b)


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=1, max_size=80), st.sampled_from([1, -1]), rings)
def test_inverse_roundtrip(tail, a0, ring):
    a = ser([a0] + tail, ring)
    inv = S.invert(a)
    assert a * inv == S.one(ring, a.order)
    assert inv == S.invert_triangular(a)


@settings(max_examples=40, deadline=None)
@given(coeff_lists, st.integers(min_value=1, max_value=7))
def test_dissection_reassembles(x, p):
    a = ser(x)
    total = S.zero(EXACT, a.order)
    for r in range(p):
        part = S.dissect(a, p, r)
        spread = S.subst_qk(part, p, order=min(a.order, p * part.order))
        spread = S.from_coeffs(spread.tolist(), EXACT, a.order)
        total = total + S.shift(spread, r)
    assert total == a


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, st.sampled_from([2, 5, 125, 3125, 7**10]))
def test_reduction_commutes(x, y, m):
    a, b = _triple([x, y], EXACT)
    assert S.reduce_mod(a * b, m) == S.reduce_mod(a, m) * S.reduce_mod(b, m)
    assert S.reduce_mod(a + b, m) == S.reduce_mod(a, m) + S.reduce_mod(b, m)
    if a[0] in (1, -1):
        assert S.reduce_mod(S.invert(a), m) == S.invert(S.reduce_mod(a, m))


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(min_value=1, max_value=6))
def test_subst_is_multiplicative(x, y, k):
    a, b = _triple([x, y], EXACT)
    assert S.subst_qk(a * b, k) == S.subst_qk(a, k) * S.subst_qk(b, k)


# --- kernels ------------------------------------------------------------------


@pytest.mark.parametrize("m", [5, 3125, 5**10])
def test_kernel_backends_agree(m):
    rng = np.random.default_rng(1)
    order = 700
    if not K.fits_int64(m, order):
        pytest.skip("modulus too large for the int64 kernels")
    a = rng.integers(0, m, order, dtype=np.int64)
    b = rng.integers(0, m, order, dtype=np.int64)
    a[0] = 1
    np_mul = K.mul_mod_numpy(a, b, m, order)
    np_inv = K.inv_mod_numpy(a, m, order, 1)
    ref = S.mul_schoolbook(S.from_coeffs(a.tolist(), m), S.from_coeffs(b.tolist(), m))
    assert np_mul.tolist() == ref.tolist()
    if K.HAS_NUMBA:
        assert np.array_equal(K.mul_mod_numba(a, b, m, order), np_mul)
        assert np.array_equal(K.inv_mod_numba(a, m, order, 1), np_inv)
    check = K.mul_mod_numpy(a, np_inv, m, order)
    assert check[0] == 1 and not check[1:].any()


def test_large_modulus_falls_back_to_bigint():
    m = 2**61 - 1
    assert not K.fits_int64(m, 100)
    a = S.reduce_mod(fk_series(1, EXACT, 100), m)
    assert S.reduce_mod(S.invert(fk_series(1, EXACT, 100)), m) == S.invert(a)


def test_backend_name():
    assert K.backend_name() in ("numba", "numpy")
