"""
Congruence claims for A_{t,k}(n) and p(n): modelling, expansion of the
known families into finite claim lists, verification against computed
coefficients, and a brute-force miner.

A claim ``A(t,k; M n + r) % p^N == 0`` is checked by computing
f_t^(tk)/f_1^k modulo p^N to a truncation order T and inspecting every
coefficient whose index is r mod M.  Verification to a bound is evidence,
never a proof.
"""

import random
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import series as S
from .arith import is_prime, legendre, prime_power
from .eta import eval_expr, fk_series, tuple_gf_expr
from .report import VerificationReport
from .series import EXACT, CoefficientRing

DEFAULT_ORDER = 2000
DEFAULT_MIN_HITS = 40
# exact spot checks are limited to moderate k so the integers stay small
SPOT_CHECK_MAX_K = 32


class ClaimSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceClaim:
    """``A_{t,k}(M n + r) == 0 (mod p^N)`` for every r in ``residues``.

    ``t is None`` stands for the ordinary partition function (k = 1).
    ``hypothesis`` is set for conditional instances: the claim only counts
    once the hypothesis claim has been verified.
    """

    t: int | None
    k: int
    period: int
    residues: tuple
    p: int
    N: int
    status: str = "proved"
    source: str = ""
    max_index: int | None = None
    hypothesis: "CongruenceClaim | None" = field(default=None, compare=False)

    def __post_init__(self):
        if self.t is not None and self.t < 2:
            raise ValueError("t must be >= 2")
        if self.t is None and self.k != 1:
            raise ValueError("the partition-function claim form needs k = 1")
        if self.k < 1 or self.period < 1:
            raise ValueError("k and the period must be positive")
        if not self.residues:
            raise ValueError("need at least one residue")
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError(f"residues must lie in [0, {self.period})")
        if not is_prime(self.p) or self.N < 1:
            raise ValueError("modulus must be p^N with p prime and N >= 1")
        if self.status not in ("proved", "conjecture", "classical"):
            raise ValueError(f"bad status {self.status!r}")
        object.__setattr__(self, "residues", tuple(sorted(set(self.residues))))

    @property
    def modulus(self):
        return self.p**self.N

    @property
    def key(self):
        return (self.t, self.k, self.period, self.residues, self.p, self.N)

    @property
    def id(self):
        res = ",".join(str(r) for r in self.residues)
        mod = f"{self.p}^{self.N}" if self.N > 1 else str(self.p)
        if self.t is None:
            return f"p({self.period}n+{res}) % {mod} == 0"
        return f"A({self.t},{self.k}; {self.period}n+{res}) % {mod} == 0"

    def indices(self, order):
        """Coefficient indices covered by the claim below ``order`` (and max_index)."""
        bound = order if self.max_index is None else min(order, self.max_index + 1)
        idx = [i for r in self.residues for i in range(r, bound, self.period)]
        return sorted(idx)


_CLAIM_A = re.compile(r"^A\((\d+),(\d+);(\d*)n(?:\+([\d,]+))?\)%(\d+)(?:\^(\d+))?==0$")
_CLAIM_P = re.compile(r"^p\((\d*)n(?:\+([\d,]+))?\)%(\d+)(?:\^(\d+))?==0$")


def _modulus(base, exp):
    base = int(base)
    if exp is not None:
        if not is_prime(base):
            raise ClaimSyntaxError(f"{base} is not prime")
        return base, int(exp)
    try:
        return prime_power(base)
    except ValueError as e:
        raise ClaimSyntaxError(str(e)) from None


def parse_claim(text):
    """Parse ``A(t,k; Mn+r1,r2) % p^N == 0`` or ``p(Mn+r) % m == 0``.

    Known paper claims come back with their recorded status and source;
    anything else is marked as a conjecture from the user.
    """
    compact = re.sub(r"\s+", "", text)
    m = _CLAIM_A.match(compact)
    try:
        if m:
            t, k, period, res, base, exp = m.groups()
            p, N = _modulus(base, exp)
            claim = CongruenceClaim(
                int(t), int(k), int(period or 1), _residues(res), p, N, "conjecture", "user"
            )
        else:
            m = _CLAIM_P.match(compact)
            if not m:
                raise ClaimSyntaxError(f"cannot parse claim {text!r}")
            period, res, base, exp = m.groups()
            p, N = _modulus(base, exp)
            claim = CongruenceClaim(None, 1, int(period or 1), _residues(res), p, N, "conjecture", "user")
    except ClaimSyntaxError:
        raise
    except ValueError as e:
        raise ClaimSyntaxError(str(e)) from None
    known = _known_claims().get(claim.key)
    return known if known is not None else claim


def _residues(text):
    if not text:
        return (0,)
    return tuple(int(x) for x in text.split(",") if x)


# ---------------------------------------------------------------------------
# quadratic-residue criteria


def residues_thm_1_2(p):
    """r in [1, p-1] with 24r+1 a quadratic nonresidue mod p."""
    _check_prime_ge5(p)
    return frozenset(r for r in range(1, p) if legendre(24 * r + 1, p) == -1)


def residues_thm_1_3(p):
    """r in [1, p-1] with 8r+1 a quadratic nonresidue mod p."""
    _check_prime_ge5(p)
    return frozenset(r for r in range(1, p) if legendre(8 * r + 1, p) == -1)


def residue_thm_1_4(p):
    """The unique r in [1, p-1] with 8r+1 = 0 mod p."""
    _check_prime_ge5(p)
    return (-pow(8, -1, p)) % p


def _check_prime_ge5(p):
    if p < 5 or not is_prime(p):
        raise ValueError(f"need a prime p >= 5, got {p}")


def residue_soundness(p):
    """Brute-force check that the nonresidue classes miss every pentagonal/triangular index.

    Returns a list of problems (empty when sound).
    """
    pent = {m * (3 * m - 1) // 2 % p for m in range(-p, p)}
    tri = {m * (m + 1) // 2 % p for m in range(p)}
    problems = []
    for r in residues_thm_1_2(p):
        if r in pent:
            problems.append(("pentagonal", p, r))
    for r in residues_thm_1_3(p):
        if r in tri:
            problems.append(("triangular", p, r))
    r = residue_thm_1_4(p)
    if (8 * r + 1) % p:
        problems.append(("8r+1", p, r))
    return problems


# ---------------------------------------------------------------------------
# families


def _claim(k, period, residues, p, N, status, source, t=5, hypothesis=None):
    if isinstance(residues, int):
        residues = (residues,)
    return CongruenceClaim(t, k, period, tuple(residues), p, N, status, source, hypothesis=hypothesis)


def _fam_eq_d(alphas=(1, 2, 3)):
    return [_claim(2, 5**a, 5**a - 2, 5, a, "proved", f"A_{{5,2}}(5^a n + 5^a - 2) mod 5^a, a={a}") for a in alphas]


def _fam_eq_f(alphas=(1, 2, 3)):
    return [_claim(3, 5**a, 5**a - 3, 5, a, "proved", f"A_{{5,3}}(5^a n + 5^a - 3) mod 5^a, a={a}") for a in alphas]


def _fam_thm_1_1(alphas=(1, 2)):
    out = []
    for a in alphas:
        if a < 1:
            raise ValueError("the A_{5,4} family starts at alpha = 1")
        M = 5 ** (a + 1)
        out.append(_claim(4, M, M - 4, 5, a + 4, "proved", f"A_{{5,4}}(5^(a+1) n + 5^(a+1) - 4) mod 5^(a+4), a={a}"))
    return out


def _fam_qnr(residue_fn, shift, label, primes=(5, 7, 11, 13), Ns=(1, 2), i_values=(1, 2)):
    out = []
    for p in primes:
        for N in Ns:
            for i in i_values:
                k = p**N * i - shift
                for r in sorted(residue_fn(p)):
                    out.append(_claim(k, p, r, p, N, "proved", f"{label}, p={p}, N={N}, i={i}", t=p))
    return out


def _fam_thm_1_2(**kw):
    return _fam_qnr(residues_thm_1_2, 1, "k = p^N i - 1, 24r+1 nonresidue", **kw)


def _fam_thm_1_3(**kw):
    return _fam_qnr(residues_thm_1_3, 3, "k = p^N i - 3, 8r+1 nonresidue", **kw)


def _fam_thm_1_4(primes=(5, 7, 11, 13), i_values=(1, 2, 3)):
    out = []
    for p in primes:
        r = residue_thm_1_4(p)
        for i in i_values:
            out.append(_claim(p * i - 3, p, r, p, 1, "proved", f"k = p i - 3, 8r+1 = 0 mod p, p={p}, i={i}", t=p))
    return out


_THM_1_5 = (
    (2, 25, 23, 2),
    (2, 125, 123, 3),
    (3, 25, 22, 1),
    (3, 125, 122, 2),
    (4, 25, 21, 5),
    (4, 125, 121, 6),
)


def _fam_thm_1_5():
    return [_claim(k, M, r, 5, N, "proved", "individual A_{5,k} congruence") for k, M, r, N in _THM_1_5]


def propagate(base, i):
    """Conditional instance k -> p^(M+N-1) i + k of a claim with period p^M."""
    p = base.p
    Mexp = _log_p(base.period, p)
    if Mexp is None:
        raise ValueError(f"period {base.period} is not a power of {p}")
    if base.t != p:
        raise ValueError("propagation needs t = p")
    k = p ** (Mexp + base.N - 1) * i + base.k
    return replace(
        base,
        k=k,
        status="proved",
        source=f"propagated from {base.id} with i={i}",
        hypothesis=base,
    )


def _log_p(n, p):
    e = 0
    while n > 1 and n % p == 0:
        n //= p
        e += 1
    return e if n == 1 and e >= 1 else None


def _fam_thm_1_6(bases=None, i_values=(1,)):
    if bases is None:
        bases = (
            _fam_thm_1_5()
            + _fam_eq_d((1, 2))
            + _fam_sec7_proved(i_values=(0,))[:4]
            + [_claim(4, 5, 3, 5, 1, "proved", "k = p^N i - 1, p=5")]
        )
    return [propagate(b, i) for b in bases for i in i_values]


# (k0, step, period, residues, N): A_{5, step*i + k0}(period n + r) mod 5^N
_COR_1_8 = (
    (2, 25, 25, (23,), 1),
    (2, 125, 25, (23,), 2),
    (2, 3125, 125, (123,), 3),
    (3, 25, 25, (22,), 1),
    (3, 625, 125, (122,), 2),
    (4, 5, 5, (3, 4), 1),
    (4, 125, 25, (21,), 2),
    (4, 25, 25, (21,), 1),
    (4, 125, 25, (21,), 2),
    (4, 625, 25, (21,), 3),
    (4, 3125, 25, (21,), 4),
    (4, 15625, 25, (21,), 5),
    (4, 390625, 125, (121,), 6),
)

_SEC7_PROVED = (
    (6, 0, 25, (14, 19, 24), 2),
    (6, 0, 125, (119,), 3),
    (7, 0, 25, (13, 18, 23), 2),
    (7, 0, 125, (118,), 3),
    (6, 25, 25, (14, 19, 24), 1),
    (6, 125, 25, (14, 19, 24), 2),
    (6, 3125, 125, (119,), 3),
    (7, 25, 25, (13, 18, 23), 1),
    (7, 125, 25, (13, 18, 23), 2),
    (7, 3125, 125, (118,), 3),
)

_SEC7_CONJ = (
    (1, 5, 25, (24,), 2),
    (2, 25, 25, (23,), 2),
    (2, 125, 125, (123,), 3),
    (3, 125, 125, (122,), 2),
    (4, 625, 125, (121,), 5),
    (4, 3125, 125, (121,), 6),
    (6, 25, 25, (14, 19), 2),
    (6, 25, 125, (119,), 3),
    (7, 25, 25, (13, 18, 23), 2),
    (7, 125, 125, (118,), 3),
)


def _from_table(table, status, label, i_values):
    out = []
    for k0, step, M, res, N in table:
        for i in i_values if step else (0,):
            k = step * i + k0
            if k < 1:
                continue
            form = f"A_{{5,{step}i+{k0}}}" if step else f"A_{{5,{k0}}}"
            out.append(_claim(k, M, res, 5, N, status, f"{label}: {form}, i={i}"))
    return out


def _fam_cor_1_8(i_values=(0, 1)):
    return _from_table(_COR_1_8, "proved", "propagated family", i_values)


def _fam_sec7_proved(i_values=(0, 1)):
    return _from_table(_SEC7_PROVED, "proved", "further A_{5,k} congruence", i_values)


def _fam_sec7_conjectures(i_values=(0, 1)):
    return _from_table(_SEC7_CONJ, "conjecture", "conjectured family", i_values)


def _fam_ramanujan():
    return [
        CongruenceClaim(None, 1, 5, (4,), 5, 1, "classical", "Ramanujan"),
        CongruenceClaim(None, 1, 7, (5,), 7, 1, "classical", "Ramanujan"),
        CongruenceClaim(None, 1, 11, (6,), 11, 1, "classical", "Ramanujan"),
    ]


FAMILIES = {
    "ramanujan-classical": _fam_ramanujan,
    "eq-d": _fam_eq_d,
    "eq-f": _fam_eq_f,
    "thm-1.1": _fam_thm_1_1,
    "thm-1.2": _fam_thm_1_2,
    "thm-1.3": _fam_thm_1_3,
    "thm-1.4": _fam_thm_1_4,
    "thm-1.5": _fam_thm_1_5,
    "thm-1.6": _fam_thm_1_6,
    "cor-1.8": _fam_cor_1_8,
    "sec7-proved": _fam_sec7_proved,
    "sec7-conjectures": _fam_sec7_conjectures,
}


def dedupe(claims):
    """Drop repeated claims (same t, k, progression and modulus), merging sources."""
    seen = {}
    for c in claims:
        prev = seen.get(c.key)
        if prev is None:
            seen[c.key] = c
        elif c.source not in prev.source.split("; "):
            seen[c.key] = replace(prev, source=f"{prev.source}; {c.source}")
    return list(seen.values())


def expand_family(family_id, **params):
    try:
        fn = FAMILIES[family_id]
    except KeyError:
        raise KeyError(f"unknown family {family_id!r}") from None
    return dedupe(fn(**params))


SUITES = {
    "paper-proved": (
        "ramanujan-classical",
        "eq-d",
        "eq-f",
        "thm-1.1",
        "thm-1.2",
        "thm-1.3",
        "thm-1.4",
        "thm-1.5",
        "thm-1.6",
        "cor-1.8",
        "sec7-proved",
    ),
    "paper-conjectures": ("sec7-conjectures",),
    "general-theorems": ("thm-1.2", "thm-1.3", "thm-1.4", "thm-1.6"),
}
SUITES["paper-all"] = SUITES["paper-proved"] + SUITES["paper-conjectures"]


def suite_claims(suite_id):
    try:
        families = SUITES[suite_id]
    except KeyError:
        raise KeyError(f"unknown suite {suite_id!r}") from None
    return dedupe([c for f in families for c in FAMILIES[f]()])


@lru_cache(maxsize=1)
def _known_claims():
    return {c.key: c for c in suite_claims("paper-all")}


# ---------------------------------------------------------------------------
# verification


@lru_cache(maxsize=256)
def claim_series(t, k, modulus, order):
    """Coefficients of f_t^(tk)/f_1^k (or 1/f_1 when t is None) modulo ``modulus``."""
    ring = CoefficientRing.mod(modulus)
    if t is None:
        return S.invert(fk_series(1, ring, order))
    return eval_expr(tuple_gf_expr(t, k), ring, order)


def exact_claim_series(t, k, order):
    if t is None:
        return S.invert(fk_series(1, EXACT, order))
    return eval_expr(tuple_gf_expr(t, k), EXACT, order)


def verify_claim(c, order=DEFAULT_ORDER, detail_count=0):
    """Check every coefficient of the claim's progression below ``order``."""
    t0 = time.perf_counter()
    proof_status = c.status

    def report(**kw):
        return VerificationReport(
            id=c.id, kind="claim", source=c.source, proof_status=proof_status,
            elapsed=time.perf_counter() - t0, **kw
        )

    if c.hypothesis is not None:
        hyp = verify_claim(c.hypothesis, order)
        if not hyp.ok:
            return report(status="skipped", checked=0, reason=f"hypothesis {c.hypothesis.id} not verified ({hyp.status})")
    idx = c.indices(order)
    if not idx:
        return report(status="skipped", checked=0, reason=f"no index of the progression below order {order}")
    coeffs = claim_series(c.t, c.k, c.modulus, order).coeffs
    vals = coeffs[np.array(idx)]
    bad = np.flatnonzero(vals)
    detail = tuple((i, int(coeffs[i])) for i in idx[:detail_count])
    if bad.size:
        j = idx[int(bad[0])]
        return report(
            status="counterexample",
            checked=int(bad[0]) + 1,
            failure_index=j,
            failure_value=str(int(coeffs[j])),
            detail=detail,
        )
    return report(status="verified", checked=len(idx), detail=detail)


@dataclass
class SuiteResult:
    suite: str
    order: int
    reports: list
    spot_check: dict | None = None

    @property
    def ok(self):
        return all(r.ok for r in self.reports)


def spot_check(claims, order, seed=0):
    """Recompute one random claim's series over ZZ and compare with the modular path."""
    pool = [c for c in claims if c.t is None or c.k <= SPOT_CHECK_MAX_K]
    if not pool:
        return None
    c = random.Random(seed).choice(pool)
    exact = S.reduce_mod(exact_claim_series(c.t, c.k, order), c.modulus)
    modular = claim_series(c.t, c.k, c.modulus, order)
    return {"claim": c.id, "order": order, "agree": exact == modular}


def run_suite(suite_id, order=DEFAULT_ORDER, jobs=1, seed=0, check_exact=True, detail_count=0):
    claims = suite_claims(suite_id)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda c: verify_claim(c, order, detail_count), claims))
    else:
        reports = [verify_claim(c, order, detail_count) for c in claims]
    spot = spot_check(claims, order, seed) if check_exact else None
    return SuiteResult(suite_id, order, reports, spot)


# ---------------------------------------------------------------------------
# mining


@dataclass(frozen=True)
class MinedClaim:
    claim: CongruenceClaim
    hits: int


def mine(t, k_range, periods, moduli, order=DEFAULT_ORDER, min_hits=DEFAULT_MIN_HITS):
    """Every residue class r mod M whose coefficients (at least ``min_hits`` of
    them below ``order``) all vanish modulo p^N.

    ``t=None`` mines the partition function 1/f_1 (k is ignored).  Output is
    sorted by k, period, prime, descending exponent, residue.
    """
    by_prime = {}
    for m in moduli:
        p, N = prime_power(m)
        by_prime.setdefault(p, set()).add(N)
    ks = [1] if t is None else sorted(set(k_range))
    found = []
    for k in ks:
        for p, exps in sorted(by_prime.items()):
            top = claim_series(t, k, p ** max(exps), order).coeffs
            for N in sorted(exps, reverse=True):
                res = top % (p**N)
                for M in sorted(set(periods)):
                    for r in range(M):
                        vals = res[r::M]
                        if len(vals) >= min_hits and not vals.any():
                            c = CongruenceClaim(t, k, M, (r,), p, N, "conjecture", "mined")
                            found.append(MinedClaim(c, len(vals)))
    found.sort(key=lambda m: (m.claim.k, m.claim.period, m.claim.p, -m.claim.N, m.claim.residues))
    return found


def single_residue_claims(claims):
    """Split multi-residue claims into one claim per residue."""
    return [replace(c, residues=(r,)) for c in claims for r in c.residues]


def implied_by(c, known):
    """True when some claim in ``known`` already covers ``c``: same series,
    a period dividing c's, every residue of c inside it, and at least the
    same power of p."""
    for k in known:
        if (k.t, k.k, k.p) != (c.t, c.k, c.p) or k.N < c.N or c.period % k.period:
            continue
        if all(r % k.period in k.residues for r in c.residues):
            return True
    return False


def negative_controls(claims, order=DEFAULT_ORDER, within=5):
    """Shift each residue of each claim by +1 mod M and verify the result.

    Shifted claims that another claim in the list already implies are true
    statements, not controls, and are left out.  Returns the controls and
    how many of them failed within the first ``within`` checked indices.
    """
    base = [c for c in claims if c.hypothesis is None]
    shifted = dedupe(
        replace(c, residues=((c.residues[0] + 1) % c.period,), status="conjecture", source=f"shifted from {c.id}")
        for c in single_residue_claims(base)
    )
    controls = [c for c in shifted if not implied_by(c, base)]
    reports = [verify_claim(c, order) for c in controls]
    caught = sum(r.status == "counterexample" and r.checked <= within for r in reports)
    return reports, caught
