from dataclasses import replace

import pytest

from qcore import congruences as C
from qcore.congruences import CongruenceClaim, parse_claim, verify_claim
from qcore.partitions import tuple_counts_oracle


def ids(claims):
    return [c.id for c in claims]


# --- residue criteria ---------------------------------------------------------


def test_residue_examples():
    assert C.residues_thm_1_2(5) == {3, 4}
    assert C.residues_thm_1_2(7) == {r for r in range(1, 7) if (24 * r + 1) % 7 in (3, 5, 6)}
    assert C.residues_thm_1_3(5) == {2, 4}
    assert 3 not in C.residues_thm_1_3(5)
    assert C.residues_thm_1_3(7)
    assert C.residue_thm_1_4(5) == 3
    assert C.residue_thm_1_4(7) == 6


def test_residue_sets_never_contain_zero_symbol():
    for p in (5, 7, 11, 13, 17, 19, 23):
        assert all((24 * r + 1) % p for r in C.residues_thm_1_2(p))
        assert all((8 * r + 1) % p for r in C.residues_thm_1_3(p))
        assert sum((8 * r + 1) % p == 0 for r in range(1, p)) == 1


def test_residue_soundness_up_to_97():
    for p in range(5, 98):
        if all(p % d for d in range(2, p)):
            assert C.residue_soundness(p) == []


# --- claim model and parsing -----------------------------------------------------


def test_parse_claim_roundtrip():
    c = parse_claim("A(5,4; 25n+21) % 5^5 == 0")
    assert (c.t, c.k, c.period, c.residues, c.p, c.N) == (5, 4, 25, (21,), 5, 5)
    assert c.status == "proved"
    assert parse_claim(c.id) == c
    assert parse_claim("A( 5 , 6 ; 25 n + 14,19,24 ) % 25 == 0").residues == (14, 19, 24)
    p = parse_claim("p(5n+4) % 5 == 0")
    assert p.t is None and p.status == "classical"


def test_unknown_claim_is_a_user_conjecture():
    c = parse_claim("A(5,2; 5n+1) % 5 == 0")
    assert c.status == "conjecture"
    assert c.source == "user"


@pytest.mark.parametrize(
    "text",
    ["A(5,4; 25n+21) % 6 == 0", "A(5,4; 25n+30) % 5 == 0", "A(5,4 25n+21) % 5 == 0", "B(5,4; 5n) % 5 == 0", "A(5,4; 5n+1) % 4^2 == 0"],
)
def test_bad_claims(text):
    with pytest.raises((C.ClaimSyntaxError, ValueError)):
        parse_claim(text)


def test_claim_indices_respect_max_index():
    c = CongruenceClaim(5, 2, 5, (3,), 5, 1, max_index=20)
    assert c.indices(100) == [3, 8, 13, 18]


# --- families ---------------------------------------------------------------------


def test_expand_family_examples():
    assert ids(C.expand_family("thm-1.2", primes=(5,), Ns=(1,), i_values=(1,))) == [
        "A(5,4; 5n+3) % 5 == 0",
        "A(5,4; 5n+4) % 5 == 0",
    ]
    assert ids(C.expand_family("thm-1.4", primes=(5,), i_values=(1,))) == ["A(5,2; 5n+3) % 5 == 0"]
    eqd = C.expand_family("eq-d", alphas=(1, 2, 3))
    assert [c.modulus for c in eqd] == [5, 25, 125]


def test_thm_1_4_consistent_with_eq_d():
    (a,) = C.expand_family("thm-1.4", primes=(5,), i_values=(1,))
    b = C.expand_family("eq-d", alphas=(1,))[0]
    assert a.key == b.key
    assert verify_claim(a, 2000).ok and verify_claim(b, 2000).ok


def test_family_sizes():
    assert len(C.expand_family("thm-1.5")) == 6
    assert len(C.expand_family("ramanujan-classical")) == 3
    # one listed congruence repeats another, so dedupe leaves 12 per i
    assert len(C.expand_family("cor-1.8", i_values=(1,))) == 12
    assert len(C.expand_family("sec7-proved", i_values=(1,))) == 10
    conj = C.expand_family("sec7-conjectures", i_values=(1,))
    assert len(conj) == 10
    assert all(c.status == "conjecture" for c in conj)


def test_unknown_family():
    with pytest.raises(KeyError):
        C.expand_family("thm-9.9")


def test_dedupe_merges_sources():
    a = CongruenceClaim(5, 2, 5, (3,), 5, 1, source="x")
    b = replace(a, source="y")
    (m,) = C.dedupe([a, b, a])
    assert m.source == "x; y"


# --- verification ---------------------------------------------------------------


def test_verify_examples():
    r = verify_claim(parse_claim("A(5,2; 5n+3) % 5 == 0"), 2000)
    assert r.status == "verified" and r.checked == 400
    assert verify_claim(parse_claim("A(5,4; 25n+21) % 3125 == 0"), 2000).ok


def test_falsified_claim():
    r = verify_claim(parse_claim("A(5,2; 5n+1) % 5 == 0"), 2000)
    assert r.status == "counterexample"
    assert r.failure_index == 1
    assert r.failure_value == "2"
    assert r.checked == 1


def test_counterexample_value_matches_oracle():
    counts = tuple_counts_oracle(5, 3, 25).counts
    r = verify_claim(parse_claim("A(5,3; 25n+22) % 25 == 0"), 500)
    assert r.status == "counterexample"
    assert r.failure_index == 22
    assert int(r.failure_value) == counts[22] % 25 != 0


def test_skip_when_no_index_in_range():
    r = verify_claim(parse_claim("A(5,4; 125n+121) % 5^6 == 0"), 100)
    assert r.status == "skipped"
    assert "no index" in r.reason


def test_thm_1_6_skips_on_false_hypothesis():
    false_base = CongruenceClaim(5, 2, 5, (1,), 5, 1, source="false on purpose")
    inst = C.propagate(false_base, 1)
    assert inst.k == 5 + 2
    r = verify_claim(inst, 500)
    assert r.status == "skipped"
    assert "hypothesis" in r.reason


def test_thm_1_6_verifies_on_true_hypothesis():
    base = parse_claim("A(5,4; 25n+21) % 5^5 == 0")
    inst = C.propagate(base, 1)
    assert inst.k == 5 ** (2 + 5 - 1) + 4
    assert verify_claim(inst, 1000).ok


def test_partition_function_claims():
    for c in C.expand_family("ramanujan-classical"):
        assert verify_claim(c, 2000).ok


def test_spot_check_agrees():
    sc = C.spot_check(C.expand_family("thm-1.5"), 400, seed=3)
    assert sc["agree"]


def test_determinism():
    a = C.run_suite("general-theorems", 600, seed=1)
    b = C.run_suite("general-theorems", 600, jobs=4, seed=1)
    assert [r.to_dict() for r in a.reports] == [r.to_dict() for r in b.reports]
    assert a.spot_check == b.spot_check


def test_negative_controls():
    reports, caught = C.negative_controls(C.suite_claims("paper-proved"), 2000)
    assert len(reports) > 100
    assert caught / len(reports) >= 0.9


def test_implied_by():
    known = [CongruenceClaim(5, 4, 5, (3, 4), 5, 1)]
    assert C.implied_by(CongruenceClaim(5, 4, 25, (23,), 5, 1), known)
    assert not C.implied_by(CongruenceClaim(5, 4, 25, (22,), 5, 1), known)
    assert not C.implied_by(CongruenceClaim(5, 4, 5, (4,), 5, 2), known)


# --- mining ---------------------------------------------------------------------


def _mined_ids(found):
    return {m.claim.id for m in found}


def test_mine_examples():
    assert "p(5n+4) % 5 == 0" in _mined_ids(C.mine(None, [1], [5], [5], 2000))
    got = _mined_ids(C.mine(5, [2], [5, 25], [5, 25, 125], 2000))
    assert {"A(5,2; 5n+3) % 5 == 0", "A(5,2; 25n+23) % 5^2 == 0"} <= got
    got = _mined_ids(C.mine(5, [6], [25], [25], 2000))
    assert {f"A(5,6; 25n+{r}) % 5^2 == 0" for r in (14, 19, 24)} <= got


def test_mine_threshold_and_empty_space():
    assert C.mine(5, [], [5], [5], 500) == []
    assert C.mine(5, [2], [5], [5], 200, min_hits=100000) == []


def test_mine_is_sorted_and_deterministic():
    a = C.mine(5, [3, 1, 2], [25, 5], [125, 5, 25], 1000)
    b = C.mine(5, [1, 2, 3], [5, 25], [5, 25, 125], 1000)
    assert a == b
    keys = [(m.claim.k, m.claim.period, m.claim.p, -m.claim.N, m.claim.residues) for m in a]
    assert keys == sorted(keys)


def test_mining_completeness_small_box():
    box = [
        c
        for c in C.single_residue_claims(C.suite_claims("paper-proved"))
        if c.t == 5 and c.k <= 7 and c.period <= 25 and c.modulus <= 125 and c.hypothesis is None
    ]
    true_in_box = [c for c in box if verify_claim(c, 2000).ok]
    found = _mined_ids(C.mine(5, range(1, 8), [5, 25], [5, 25, 125], 2000, 40))
    missing = [c.id for c in true_in_box if c.id not in found]
    assert not missing


def test_paper_proved_suite_at_3000():
    # the A_{5,3}(5^a n + 5^a - 3) family is refuted modulo 5^a (A_{5,3}(2) = 9);
    # everything else in the suite verifies and the exact spot check agrees
    res = C.run_suite("paper-proved", 3000, jobs=4)
    bad = {r.id for r in res.reports if not r.ok}
    eq_f = {c.id for c in C.expand_family("eq-f")}
    assert bad == eq_f
    assert all(r.status == "counterexample" for r in res.reports if r.id in eq_f)
    assert res.spot_check["agree"]
