"""
Brute-force partition combinatorics.

Everything here works from the definitions (Ferrers diagrams and hook
numbers) and never touches the q-series machinery, so it can serve as an
independent check on the generating functions.
"""

from dataclasses import dataclass
from itertools import product

DEFAULT_CAP = 40


class EnumerationCapError(ValueError):
    pass


def _check_cap(n, cap):
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds the enumeration cap {cap}")


def _gen(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def partitions_of(n, cap=DEFAULT_CAP):
    """All partitions of n as weakly decreasing tuples, in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_cap(n, cap)
    return list(_gen(n, n))


def is_partition(parts):
    return all(p >= 1 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def conjugate(parts):
    """Conjugate partition: column lengths of the Ferrers diagram."""
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


def hook_numbers(parts):
    """Hook numbers of every cell, sorted in decreasing order."""
    conj = conjugate(parts)
    hooks = [
        (row - j) + (conj[j] - i) - 1
        for i, row in enumerate(parts)
        for j in range(row)
    ]
    return tuple(sorted(hooks, reverse=True))


def is_t_core(parts, t):
    if t < 2:
        raise ValueError("t must be >= 2")
    return all(h % t for h in hook_numbers(parts))


def t_cores_of(n, t, cap=DEFAULT_CAP):
    return [lam for lam in partitions_of(n, cap) if is_t_core(lam, t)]


def count_t_cores(n, t, cap=DEFAULT_CAP):
    return len(t_cores_of(n, t, cap))


@dataclass(frozen=True)
class TupleCountTable:
    t: int
    k: int
    counts: tuple

    def __post_init__(self):
        if self.counts and self.counts[0] != 1:
            raise ValueError("counts[0] must be 1")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")


def tuple_counts_oracle(t, k, max_n, cap=DEFAULT_CAP):
    """A_{t,k}(n) for n <= max_n by k-fold convolution of the t-core counts."""
    _check_cap(max_n, cap)
    single = [count_t_cores(n, t, cap) for n in range(max_n + 1)]
    counts = [1] + [0] * max_n
    for _ in range(k):
        counts = [sum(counts[j] * single[n - j] for j in range(n + 1)) for n in range(max_n + 1)]
    return TupleCountTable(t, k, tuple(counts))


def tuple_counts_direct(t, k, max_n, cap=DEFAULT_CAP):
    """A_{t,k}(n) by listing every k-tuple of t-cores; only sensible for tiny n and k."""
    _check_cap(max_n, cap)
    cores = [t_cores_of(n, t, cap) for n in range(max_n + 1)]
    counts = [0] * (max_n + 1)
    for sizes in product(range(max_n + 1), repeat=k):
        total = sum(sizes)
        if total > max_n:
            continue
        for _tuple in product(*(cores[s] for s in sizes)):
            counts[total] += 1
    return TupleCountTable(t, k, tuple(counts))


def tuple_counts_gf(t, k, max_n):
    """A_{t,k}(n) for n <= max_n as coefficients of f_t^(tk)/f_1^k over ZZ."""
    from .eta import eval_expr, tuple_gf_expr

    s = eval_expr(tuple_gf_expr(t, k), order=max_n + 1)
    return TupleCountTable(t, k, tuple(s.tolist()))
