"""
Truncated formal power series in q.

A ``TruncatedSeries`` stores the coefficients of q^0 .. q^(T-1) over either
the integers (arbitrary precision) or Z/mZ.  Every binary operation returns
the smaller of the two truncation orders, so a coefficient is never reported
unless it is fully determined by the inputs.

Exact products use Kronecker substitution (pack both coefficient vectors into
one big integer, multiply with GMP, unpack).  Modular products go through the
int64 kernels in ``_kernels`` whenever the accumulator cannot overflow.
"""

from dataclasses import dataclass
from math import gcd

import gmpy2
import numpy as np

from . import _kernels

# below this order schoolbook multiplication beats the packing overhead
_SCHOOLBOOK_CUTOFF = 24

# residues are stored as int64; sums of two must not overflow
MAX_MODULUS = 2**62


class RingMismatchError(ValueError):
    pass


class NonUnitError(ValueError):
    """Raised when inverting a series whose constant term is not a unit."""


@dataclass(frozen=True)
class CoefficientRing:
    kind: str = "exact"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.modulus is not None:
                raise ValueError("exact ring carries no modulus")
        elif self.kind == "mod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError(f"modulus must be >= 2, got {self.modulus!r}")
            if self.modulus > MAX_MODULUS:
                raise ValueError(f"modulus {self.modulus} exceeds the int64 storage limit")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def mod(cls, m):
        return cls("mod", int(m))

    @property
    def is_exact(self):
        return self.kind == "exact"

    def __str__(self):
        return "ZZ" if self.is_exact else f"ZZ/{self.modulus}"


EXACT = CoefficientRing()


def _as_ring(ring):
    if ring is None:
        return EXACT
    if isinstance(ring, CoefficientRing):
        return ring
    return CoefficientRing.mod(ring)


class TruncatedSeries:
    """Coefficients of q^0 .. q^(order-1); immutable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        ring = _as_ring(ring)
        if ring.is_exact:
            arr = np.empty(len(coeffs), dtype=object)
            arr[:] = [int(c) for c in coeffs]
        else:
            m = ring.modulus
            if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
                arr = coeffs % m
            else:
                arr = np.array([int(c) % m for c in coeffs], dtype=np.int64)
        arr.flags.writeable = False
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return int(self.coeffs[n])

    def tolist(self):
        return [int(c) for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.tolist() == other.tolist()

    def __hash__(self):
        return hash((self.ring, tuple(self.tolist())))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.tolist()[:8])
        more = ", ..." if self.order > 8 else ""
        return f"TruncatedSeries({self.ring}, order={self.order}, [{head}{more}])"

    def __add__(self, other):
        return add(self, _promote(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _promote(other, self))

    def __rsub__(self, other):
        return sub(_promote(other, self), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __pow__(self, e):
        return power(self, e)


def _promote(x, like):
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, int):
        return constant(x, like.ring, like.order)
    raise TypeError(f"cannot combine TruncatedSeries with {type(x).__name__}")


def _check_same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


# ---------------------------------------------------------------------------
# constructors


def from_coeffs(coeffs, ring=None, order=None):
    """Series with the given leading coefficients, zero-padded or cut to ``order``."""
    coeffs = list(coeffs)
    if order is None:
        order = len(coeffs)
    coeffs = coeffs[:order] + [0] * max(0, order - len(coeffs))
    return TruncatedSeries(ring, coeffs)


def zero(ring, order):
    return from_coeffs([], ring, order)


def constant(c, ring, order):
    return from_coeffs([c], ring, order) if order > 0 else zero(ring, 0)


def one(ring, order):
    return constant(1, ring, order)


def monomial(j, ring, order, c=1):
    """c * q^j truncated at ``order``."""
    return shift(constant(c, ring, order), j)


# ---------------------------------------------------------------------------
# exact multiplication


def _schoolbook(a, b, order):
    out = [0] * order
    nb = len(b)
    for i, ai in enumerate(a[:order]):
        if ai:
            for j in range(min(nb, order - i)):
                out[i + j] += ai * b[j]
    return out


def _pack(vals, nbytes):
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in vals)
    negs = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in vals)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(negs, "little"))


def _unpack(value, nbytes, count):
    # add 2^(8*nbytes-1) to every slot so each slot is a nonnegative digit
    total = nbytes * count
    slot = b"\x00" * (nbytes - 1) + b"\x80"
    bias = int.from_bytes(slot * count, "little")
    w = (int(value) + bias) & ((1 << (8 * total)) - 1)
    raw = w.to_bytes(total, "little")
    half = 1 << (8 * nbytes - 1)
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half for i in range(count)]


def kronecker_mul(a, b, order):
    """Exact truncated product of two int lists via Kronecker substitution."""
    same = a is b
    a = a[:order]
    b = b[:order]
    if not a or not b:
        return [0] * order
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, order)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * order
    # |c_n| <= min(len) * ma * mb < 2^(bits-1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    pa = _pack(a, nbytes)
    prod = pa * pa if same else pa * _pack(b, nbytes)
    return _unpack(prod, nbytes, order)


# ---------------------------------------------------------------------------
# ring operations


def add(a, b):
    _check_same_ring(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries(a.ring, a.coeffs[:n] + b.coeffs[:n])


def sub(a, b):
    _check_same_ring(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries(a.ring, a.coeffs[:n] - b.coeffs[:n])


def neg(a):
    return TruncatedSeries(a.ring, -a.coeffs)


def scale(a, c):
    """Multiply every coefficient by the integer ``c``."""
    if a.ring.is_exact:
        return TruncatedSeries(a.ring, a.coeffs * int(c))
    m = a.ring.modulus
    c = int(c) % m
    if _kernels.fits_int64(m, 1):
        return TruncatedSeries(a.ring, (a.coeffs * c) % m)
    return TruncatedSeries(a.ring, [int(x) * c for x in a.coeffs])


def mul(a, b):
    """Cauchy product truncated at min(a.order, b.order)."""
    _check_same_ring(a, b)
    n = min(a.order, b.order)
    if a.ring.is_exact:
        al = a.tolist()
        bl = al if a is b else b.tolist()
        return TruncatedSeries(a.ring, kronecker_mul(al, bl, n))
    m = a.ring.modulus
    if _kernels.fits_int64(m, n):
        return TruncatedSeries(a.ring, _kernels.mul_mod(a.coeffs, b.coeffs, m, n))
    al = a.tolist()
    bl = al if a is b else b.tolist()
    return TruncatedSeries(a.ring, kronecker_mul(al, bl, n))


def _unit_inverse(a0, ring):
    if ring.is_exact:
        if a0 not in (1, -1):
            raise NonUnitError(f"constant term {a0} is not a unit in ZZ")
        return a0
    m = ring.modulus
    if gcd(a0, m) != 1:
        raise NonUnitError(f"constant term {a0} is not a unit modulo {m}")
    return pow(a0, -1, m)


def _newton_inverse(a, order, inv0, reduce=None):
    c = [inv0]
    n = 1
    while n < order:
        n2 = min(2 * n, order)
        ac = kronecker_mul(a[:n2], c, n2)
        e = [-x for x in ac]
        e[0] += 2
        c = kronecker_mul(c, e, n2)
        if reduce is not None:
            c = [x % reduce for x in c]
        n = n2
    return c


def invert(a):
    """Multiplicative inverse; the constant term must be a unit of the ring."""
    if a.order == 0:
        return a
    a0 = a[0]
    inv0 = _unit_inverse(a0, a.ring)
    T = a.order
    if a.ring.is_exact:
        return TruncatedSeries(a.ring, _newton_inverse(a.tolist(), T, inv0))
    m = a.ring.modulus
    if _kernels.fits_int64(m, T):
        return TruncatedSeries(a.ring, _kernels.inv_mod(a.coeffs, m, T, inv0))
    return TruncatedSeries(a.ring, _newton_inverse(a.tolist(), T, inv0, reduce=m))


def invert_triangular(a):
    """Reference inverse by the recurrence c_n = -a0^{-1} sum_{j>=1} a_j c_{n-j}."""
    inv0 = _unit_inverse(a[0], a.ring)
    al = a.tolist()
    c = [inv0]
    m = None if a.ring.is_exact else a.ring.modulus
    for n in range(1, a.order):
        s = sum(al[j] * c[n - j] for j in range(1, n + 1))
        v = -inv0 * s
        c.append(v % m if m else v)
    return TruncatedSeries(a.ring, c)


def mul_schoolbook(a, b):
    """Reference O(T^2) product, used to cross-check the fast paths."""
    _check_same_ring(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries(a.ring, _schoolbook(a.tolist(), b.tolist(), n))


def power(a, e):
    """a**e by repeated squaring; negative ``e`` inverts first."""
    e = int(e)
    if e < 0:
        a = invert(a)
        e = -e
    if e == 0:
        return one(a.ring, a.order)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def subst_qk(a, k, order=None):
    """Substitute q -> q^k.

    The result keeps ``a.order`` unless a larger ``order`` is requested; at
    most ``k*a.order`` coefficients are determined by ``a``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if order is None:
        order = a.order
    if order > k * a.order:
        raise ValueError(f"order {order} not determined by a series of order {a.order} under q -> q^{k}")
    if a.ring.is_exact:
        out = np.zeros(order, dtype=object)
        out[:] = 0
    else:
        out = np.zeros(order, dtype=np.int64)
    out[::k] = a.coeffs[: -(-order // k)]
    return TruncatedSeries(a.ring, out)


def dissect(a, p, r):
    """Coefficients a_{pn+r}, n >= 0; order ceil((a.order - r)/p)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if not 0 <= r < p:
        raise ValueError(f"residue {r} not in [0, {p})")
    return TruncatedSeries(a.ring, a.coeffs[r::p])


def shift(a, j):
    """Multiply by q^j, keeping the order."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    T = a.order
    if a.ring.is_exact:
        out = np.zeros(T, dtype=object)
        out[:] = 0
    else:
        out = np.zeros(T, dtype=np.int64)
    if j < T:
        out[j:] = a.coeffs[: T - j]
    return TruncatedSeries(a.ring, out)


def reduce_mod(a, m):
    """Coefficientwise reduction into [0, m).

    Exact series reduce directly; a series already modulo M may be reduced
    further when m divides M.
    """
    m = int(m)
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if not a.ring.is_exact and a.ring.modulus % m:
        raise RingMismatchError(f"cannot reduce {a.ring} to ZZ/{m}")
    return TruncatedSeries(CoefficientRing.mod(m), [int(x) % m for x in a.coeffs])


def truncate(a, order):
    if order > a.order:
        raise ValueError(f"cannot extend order {a.order} to {order}")
    return TruncatedSeries(a.ring, a.coeffs[:order])


def first_difference(a, b):
    """Smallest index where a and b differ on their common order, else None."""
    n = min(a.order, b.order)
    for i, (x, y) in enumerate(zip(a.tolist()[:n], b.tolist()[:n])):
        if x != y:
            return i
    return None
