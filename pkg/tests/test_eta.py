import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcore import series as S
from qcore.eta import (
    FK,
    PARAM_LIMIT,
    RR,
    Add,
    Div,
    ExprSyntaxError,
    IntLit,
    Mul,
    Neg,
    Pochhammer,
    Pow,
    Q,
    Sub,
    Subst,
    eval_expr,
    f1_cubed_series,
    fk_series,
    format_expr,
    parse_expr,
    pochhammer_series,
    rr_series,
    tuple_gf_expr,
)
from qcore.series import EXACT, CoefficientRing, NonUnitError


def test_f1_is_pentagonal():
    f1 = pochhammer_series(1, 1, EXACT, 15)
    nonzero = {n: c for n, c in enumerate(f1.tolist()) if c}
    assert nonzero == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}
    assert fk_series(1, EXACT, 8).tolist() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert fk_series(1, EXACT, 200) == pochhammer_series(1, 1, EXACT, 200)


def test_fk_matches_product_definition():
    for k in (2, 3, 5, 7):
        assert fk_series(k, EXACT, 120) == pochhammer_series(k, k, EXACT, 120)


def test_five_core_counts():
    s = S.mul(S.power(fk_series(5, EXACT, 7), 5), S.invert(fk_series(1, EXACT, 7)))
    assert s.tolist() == [1, 1, 2, 3, 5, 2, 6]


def test_f1_cubed():
    s = f1_cubed_series(EXACT, 11)
    assert [s[n] for n in (0, 1, 3, 6, 10)] == [1, -3, 5, -7, 9]
    assert s[2] == 0
    assert f1_cubed_series(EXACT, 300) == S.power(fk_series(1, EXACT, 300), 3)


def test_rr_series():
    r = rr_series(EXACT, 50)
    assert r[0] == 1
    assert r[1] == -1


def test_parse_examples():
    assert parse_expr("f5^20 / f1^4") == Div(Pow(FK(5), 20), Pow(FK(1), 4))
    assert parse_expr("sub(R,5)") == Subst(RR(), 5)
    assert parse_expr("q^2 * f5^14 * f1^2") == Mul(Mul(Pow(Q(), 2), Pow(FK(5), 14)), Pow(FK(1), 2))
    assert parse_expr("P(1,5)") == Pochhammer(1, 5)
    assert parse_expr("-f1^2") == Neg(Pow(FK(1), 2))
    assert parse_expr("1 - q + 3") == Add(Sub(IntLit(1), Q()), IntLit(3))
    assert parse_expr("f1^-3") == Pow(FK(1), -3)


def test_eval_examples():
    assert eval_expr("f5^20/f1^4", EXACT, 5).tolist() == [1, 4, 14, 40, 105]
    assert eval_expr("f5^10/f1^2", EXACT, 4)[3] == 10
    assert eval_expr("1", EXACT, 4).tolist() == [1, 0, 0, 0]


def test_eval_mod_ring_matches_reduction():
    for text in ("f5^20/f1^4", "q*f5^8*f1^8 - 3*R^5", "sub(f1^3/f2,5)*P(2,7)"):
        exact = eval_expr(text, EXACT, 150)
        assert eval_expr(text, CoefficientRing.mod(125), 150) == S.reduce_mod(exact, 125)


def test_fk_power_shortcut_matches_general_path():
    direct = S.power(fk_series(5, EXACT, 300), 7)
    assert eval_expr("f5^7", EXACT, 300) == direct
    assert eval_expr("f5^-3", EXACT, 300) == S.power(fk_series(5, EXACT, 300), -3)


def test_tuple_gf_expr():
    assert format_expr(tuple_gf_expr(5, 4)) == "f5^20/f1^4"


@pytest.mark.parametrize(
    "text,pos",
    [
        ("f5^", 3),
        ("f1 +", 4),
        ("f1^^2", 3),
        ("f0", 1),
        ("x", 0),
        ("P(3,2)", 0),
        ("f1^2^3", 4),
        ("(f1", 3),
        ("sub(f1 5)", 7),
        ("f1 f2", 3),
    ],
)
def test_parse_errors_report_positions(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_overflowing_parameters_rejected():
    with pytest.raises(ExprSyntaxError, match="overflow"):
        parse_expr(f"f{PARAM_LIMIT + 1}")
    with pytest.raises(ExprSyntaxError, match="overflow"):
        parse_expr(f"f1^{PARAM_LIMIT * 10}")


def test_non_unit_division():
    with pytest.raises(NonUnitError):
        eval_expr("1/(2*f1)", EXACT, 10)
    with pytest.raises(NonUnitError):
        eval_expr("1/(q*f1)", EXACT, 10)


# --- round trip ----------------------------------------------------------------

small = st.integers(min_value=1, max_value=30)
atoms = st.one_of(
    small.map(FK),
    st.builds(lambda a, d: Pochhammer(a, a + d), small, st.integers(0, 5)),
    st.just(RR()),
    st.just(Q()),
    st.integers(0, 99).map(IntLit),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Div, children, children),
        st.builds(Pow, children, st.integers(-6, 6)),
        st.builds(Subst, children, small),
    )


exprs = st.recursive(atoms, _extend, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(exprs)
def test_format_parse_roundtrip(e):
    assert parse_expr(format_expr(e)) == e


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 8), st.integers(-4, 4)), min_size=1, max_size=4))
def test_eta_quotient_laws(factors):
    # a product of f_k powers evaluates the same whichever way it is grouped
    order = 80
    text = "*".join(f"f{k}^{e}" for k, e in factors)
    s = eval_expr(text, EXACT, order)
    ref = S.one(EXACT, order)
    for k, e in factors:
        ref = ref * S.power(fk_series(k, EXACT, order), e)
    assert s == ref
    assert s[0] == 1
