"""
Registry of q-series identities checked coefficient by coefficient, and the
integer recurrence that drives the A_{5,4} structure identity.

Each identity has two sides, each a function ``(ring, order) -> series``.
Most sides are expressions in the ``eta`` language, optionally followed by a
chain of dissections ("keep the terms q^(pn+r), divide by q^r, replace
q^p by q").
"""

import time
from dataclasses import dataclass

from . import series as S
from .arith import nu_p
from .eta import eval_expr, f1_cubed_series, parse_expr
from .report import VerificationReport
from .series import EXACT, CoefficientRing

MAX_ALPHA = 64


# ---------------------------------------------------------------------------
# the A/B/C/D recurrence


@dataclass(frozen=True)
class RecurrenceState:
    alpha: int
    A: int
    B: int
    C: int
    D: int


BASE_STATE = RecurrenceState(0, 4, 550, 12500, 78125)


def recurrence_step(s):
    return RecurrenceState(
        s.alpha + 1,
        -s.C + 4 * s.D,
        -125 * s.B + 550 * s.D,
        -15625 * s.A + 12500 * s.D,
        78125 * s.D,
    )


@dataclass(frozen=True)
class RecurrenceRow:
    state: RecurrenceState
    valuations: tuple
    # None at alpha = 0, where no bound is asserted
    theorem_bound_ok: bool | None
    paper_display_ok: bool | None

    def to_dict(self):
        s = self.state
        return {
            "alpha": s.alpha,
            "A": str(s.A),
            "B": str(s.B),
            "C": str(s.C),
            "D": str(s.D),
            "nu5": [v if v != float("inf") else None for v in self.valuations],
            "theorem_bound_ok": self.theorem_bound_ok,
            "paper_display_ok": self.paper_display_ok,
        }


def recurrence_table(alpha_max):
    """States for alpha = 0..alpha_max with 5-adic valuations and bound flags.

    ``theorem_bound_ok``: all four valuations are >= alpha + 4, which is what
    the congruence modulo 5^(alpha+4) needs.  ``paper_display_ok``: the
    sharper column-wise bounds (alpha+4, alpha+5, alpha+5, alpha+6).
    """
    if not 0 <= alpha_max <= MAX_ALPHA:
        raise ValueError(f"alpha_max must be in [0, {MAX_ALPHA}]")
    rows = []
    s = BASE_STATE
    for alpha in range(alpha_max + 1):
        vals = tuple(nu_p(x, 5) for x in (s.A, s.B, s.C, s.D))
        if alpha == 0:
            thm = disp = None
        else:
            thm = min(vals) >= alpha + 4
            disp = all(v >= alpha + d for v, d in zip(vals, (4, 5, 5, 6)))
        rows.append(RecurrenceRow(s, vals, thm, disp))
        s = recurrence_step(s)
    return rows


def recurrence_state(alpha):
    s = BASE_STATE
    for _ in range(alpha):
        s = recurrence_step(s)
    return s


def structure_rhs_text(s):
    """A f5^2 f1^14 + B q f5^8 f1^8 + C q^2 f5^14 f1^2 + D q^3 f5^20/f1^4 as expression text."""

    def term(c, body):
        sign = "-" if c < 0 else "+"
        return f" {sign} {abs(c)}*{body}"

    text = (
        term(s.A, "f5^2*f1^14")
        + term(s.B, "q*f5^8*f1^8")
        + term(s.C, "q^2*f5^14*f1^2")
        + term(s.D, "q^3*f5^20/f1^4")
    )
    text = text.strip()
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------------------------------------------------------------------------
# sides and specs


@dataclass(frozen=True)
class Side:
    text: str
    fn: object

    def __call__(self, ring, order):
        return self.fn(ring, order)


def expr_side(text):
    tree = parse_expr(text)
    return Side(text, lambda ring, order: eval_expr(tree, ring, order))


def base_order(steps, order):
    """Order of the undissected series needed for ``order`` coefficients after ``steps``."""
    for p, r in reversed(steps):
        order = p * order + r
    return order


def dissected_side(text, steps):
    tree = parse_expr(text)
    steps = tuple(steps)

    def fn(ring, order):
        s = eval_expr(tree, ring, base_order(steps, order))
        for p, r in steps:
            s = S.dissect(s, p, r)
        return s

    desc = text
    for p, r in steps:
        desc = f"[{desc}]_({p}n+{r})"
    return Side(desc, fn)


def product_side(a, b):
    return Side(f"({a.text})*({b.text})", lambda ring, order: S.mul(a(ring, order), b(ring, order)))


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    lhs: Side
    rhs: Side
    ring: CoefficientRing
    default_order: int
    source: str
    form: str = "inversion"


def _compare(ident, order):
    t0 = time.perf_counter()
    lhs = ident.lhs(ident.ring, order)
    rhs = ident.rhs(ident.ring, order)
    n = min(lhs.order, rhs.order)
    idx = S.first_difference(lhs, rhs)
    value = None if idx is None else f"lhs {lhs[idx]} != rhs {rhs[idx]}"
    return VerificationReport(
        id=ident.id,
        kind="identity",
        status="verified" if idx is None else "counterexample",
        checked=n,
        source=ident.source,
        proof_status="proved",
        failure_index=idx,
        failure_value=value,
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# the registry

REGISTRY = {}
GROUPS = {}


def register(spec):
    if spec.id in REGISTRY or spec.id in GROUPS:
        raise ValueError(f"duplicate identity id {spec.id}")
    REGISTRY[spec.id] = spec
    return spec


def _reg(id, lhs, rhs, order, source, ring=EXACT, form="inversion"):
    lhs = expr_side(lhs) if isinstance(lhs, str) else lhs
    rhs = expr_side(rhs) if isinstance(rhs, str) else rhs
    return register(IdentitySpec(id, lhs, rhs, ring, order, source, form))


R5 = "sub(R,5)"
N5 = "sub(P(1,5)*P(4,5),5)"
D5 = "sub(P(2,5)*P(3,5),5)"

# 1/f1 = f25^5/f5^6 * sum_j c_j q^j R(q^5)^(j-4)
_INV_F1_COEFFS = (1, 1, 2, 3, 5, -3, 2, -1, 1)


def _signed_sum(terms):
    out = ""
    for c, body in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 and body else f"{abs(c)}"
        piece = mag + ("*" if mag and body else "") + body
        out += f" {sign} {piece}"
    out = out.strip()
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _qpow(j):
    return "" if j == 0 else ("q" if j == 1 else f"q^{j}")


def _join(*factors):
    return "*".join(f for f in factors if f)


def _inv_f1_rhs():
    terms = []
    for j, c in enumerate(_INV_F1_COEFFS):
        e = j - 4
        rpart = "" if e == 0 else (R5 if e == 1 else f"{R5}^{e}")
        terms.append((c, _join(_qpow(j), rpart)))
    return f"f25^5/f5^6*({_signed_sum(terms)})"


def _inv_f1_crossmul():
    # multiply through by f1 * f5^6 * R(q^5)^4 * D5^8, with R(q^5) = N5/D5
    terms = []
    for j, c in enumerate(_INV_F1_COEFFS):
        n_part = "" if j == 0 else (N5 if j == 1 else f"{N5}^{j}")
        d_part = "" if j == 8 else (D5 if j == 7 else f"{D5}^{8 - j}")
        terms.append((c, _join(_qpow(j), n_part, d_part)))
    return f"f5^6*{N5}^4*{D5}^4", f"f1*f25^5*({_signed_sum(terms)})"


def _build_registry():
    _reg("pent-f1", "P(1,1)", "f1", 200, "pentagonal number theorem (product vs sum)")
    _reg(
        "jacobi-f1cubed",
        "f1^3",
        Side("jacobi-sum", lambda ring, order: f1_cubed_series(ring, order)),
        200,
        "Jacobi's series for f1^3",
    )
    _reg("dissect-inv-f1", "1/f1", _inv_f1_rhs(), 200, "5-dissection of 1/f1")
    lhs, rhs = _inv_f1_crossmul()
    _reg("dissect-inv-f1-xmul", lhs, rhs, 200, "5-dissection of 1/f1, division-free form", form="cross-multiplied")
    _reg("dissect-f1", "f1", f"f25*({R5}^-1 - q - q^2*{R5})", 200, "5-dissection of f1")
    _reg(
        "dissect-f1-xmul",
        f"f1*{N5}*{D5}",
        f"f25*({D5}^2 - q*{N5}*{D5} - q^2*{N5}^2)",
        200,
        "5-dissection of f1, division-free form",
        form="cross-multiplied",
    )
    _reg("rr-relation", "R^-5 - 11*q - q^2*R^5", "f1^6/f5^6", 300, "quintic relation between R(q) and f1^6/f5^6")
    _reg(
        "lemma-P4",
        dissected_side("1/f1^4", [(5, 1)]),
        "4*f5^2/f1^6 + 550*q*f5^8/f1^12 + 12500*q^2*f5^14/f1^18 + 78125*q^3*f5^20/f1^24",
        200,
        "5n+1 dissection of 1/f1^4",
    )
    _reg(
        "lemma-P4-interm",
        dissected_side("1/f1^4", [(5, 1)]),
        "f5^20/f1^24*(4*R^-15 + 418*q*R^-10 + 1840*q^2*R^-5 + 1015*q^3"
        " - 1840*q^4*R^5 + 418*q^5*R^10 - 4*q^6*R^15)",
        200,
        "5n+1 dissection of 1/f1^4, R(q) form",
    )
    _reg("lemma-Q4", dissected_side("f5^2*f1^14", [(5, 4)]), "-15625*q^2*f5^14*f1^2", 200, "5n+4 dissection of f5^2 f1^14")
    _reg("lemma-Q5", dissected_side("q*f5^8*f1^8", [(5, 4)]), "-125*q*f5^8*f1^8", 200, "5n+4 dissection of q f5^8 f1^8")
    _reg("lemma-Q6", dissected_side("q^2*f5^14*f1^2", [(5, 4)]), "-f5^2*f1^14", 200, "5n+4 dissection of q^2 f5^14 f1^2")
    _reg(
        "eq19",
        dissected_side("f5^20/f1^4", [(5, 1)]),
        structure_rhs_text(BASE_STATE),
        200,
        "A_{5,4}(5n+1) generating function",
    )
    for alpha in (1, 2):
        _reg(
            f"eq18-alpha-{alpha}",
            dissected_side("f5^20/f1^4", [(5, 1)] + [(5, 4)] * alpha),
            structure_rhs_text(recurrence_state(alpha)),
            60,
            f"A_{{5,4}}(5^{alpha + 1}n+5^{alpha + 1}-4) structure identity, recurrence coefficients",
        )
    GROUPS["eq18"] = ("eq18-alpha-1", "eq18-alpha-2")

    sec5 = [
        ("sec5-A52-25", "f5^10/f1^2", [(5, 3), (5, 4)], "25*(48*f1^4*f5^4 + 625*q*f5^10/f1^2)", "A_{5,2}(25n+23)"),
        (
            "sec5-A52-125",
            "f5^10/f1^2",
            [(5, 3), (5, 4), (5, 4)],
            "125*(1202*f1^4*f5^4 + 15625*q*f5^10/f1^2)",
            "A_{5,2}(125n+123)",
        ),
        (
            "sec5-A53-25",
            "f5^15/f1^3",
            [(5, 2), (5, 4)],
            "5*(5838*f1^9*f5^3 + 233250*q*f1^3*f5^9 + 1953125*q^2*f5^15/f1^3)",
            "A_{5,3}(25n+22)",
        ),
        (
            "sec5-A53-125",
            "f5^15/f1^3",
            [(5, 2), (5, 4), (5, 4)],
            "25*(3643791*f1^9*f5^3 + 145754625*q*f1^3*f5^9 + 1220703125*q^2*f5^15/f1^3)",
            "A_{5,3}(125n+122)",
        ),
        (
            "sec5-A54-25",
            "f5^20/f1^4",
            [(5, 1), (5, 4)],
            "3125*(96*f1^14*f5^2 + 13728*q*f1^8*f5^8 + 312480*q^2*f1^2*f5^14 + 1953125*q^3*f5^20/f1^4)",
            "A_{5,4}(25n+21)",
        ),
        (
            "sec5-A54-125",
            "f5^20/f1^4",
            [(5, 1), (5, 4), (5, 4)],
            "15625*(1500004*f1^14*f5^2 + 214500550*q*f1^8*f5^8 + 4882512500*q^2*f1^2*f5^14"
            " + 30517578125*q^3*f5^20/f1^4)",
            "A_{5,4}(125n+121)",
        ),
    ]
    for id, base, steps, rhs, what in sec5:
        _reg(id, dissected_side(base, steps), rhs, 150, f"{what} generating function")
    GROUPS["sec5"] = tuple(x[0] for x in sec5)

    fresh = []
    for p in (2, 3, 5, 7):
        for k in (1, 2, 3):
            id = f"freshman-p{p}-k{k}"
            _reg(
                id,
                f"f1^{p**k}",
                f"f{p}^{p ** (k - 1)}",
                200,
                f"f1^(p^k) = f_p^(p^(k-1)) mod p^k, p={p}, k={k}",
                ring=CoefficientRing.mod(p**k),
            )
            fresh.append(id)
    GROUPS["freshman"] = tuple(fresh)

    cor2 = []
    for p, N, i, k, r in cor2_grid():
        id = f"cor2-p{p}-N{N}-i{i}-k{k}-r{r}"
        big = p**N * i + k
        lhs = dissected_side(f"f{p}^{p * big}/f1^{big}", [(p, r)])
        rhs = product_side(
            expr_side(f"f1^{p ** (N - 1) * (p * p - 1) * i}"),
            dissected_side(f"f{p}^{p * k}/f1^{k}", [(p, r)]),
        )
        _reg(
            id,
            lhs,
            rhs,
            200,
            f"k-tuple shift k -> p^N i + k modulo p^N (p={p}, N={N}, i={i}, k={k}, r={r})",
            ring=CoefficientRing.mod(p**N),
        )
        cor2.append(id)
    GROUPS["cor2-sample"] = tuple(cor2)


def cor2_grid():
    grid = []
    for p in (2, 3, 5):
        for N in (1, 2):
            for i in (1, 2):
                for k in (1, 2):
                    for r in range(1, p):
                        grid.append((p, N, i, k, r))
    grid.extend((7, 1, 1, 1, r) for r in range(1, 7))
    return grid


_build_registry()
GROUPS["all"] = tuple(REGISTRY)


def identity_ids():
    return list(REGISTRY)


def verify_identity(id, order=None):
    """Check one registered identity (or a named group) to ``order`` coefficients."""
    if id in REGISTRY:
        spec = REGISTRY[id]
        return _compare(spec, order or spec.default_order)
    if id in GROUPS:
        return _verify_group(id, order)
    raise KeyError(f"unknown identity id {id!r}")


def _verify_group(gid, order):
    t0 = time.perf_counter()
    members = [verify_identity(m, order) for m in GROUPS[gid]]
    checked = sum(r.checked for r in members)
    bad = next((r for r in members if not r.ok), None)
    return VerificationReport(
        id=gid,
        kind="identity",
        status="verified" if bad is None else "counterexample",
        checked=checked,
        source=f"group of {len(members)} identities",
        proof_status="proved",
        failure_index=None if bad is None else bad.failure_index,
        failure_value=None if bad is None else f"{bad.id}: {bad.failure_value}",
        elapsed=time.perf_counter() - t0,
        detail=tuple(members),
    )
