import dataclasses

import pytest

from eccfrog.curve import IDENTITY, CurveParams
from eccfrog.derivation import DerivationConfig
from eccfrog.primes import is_probable_prime
from eccfrog.registry import FROG_FACTS, FROG_TWIST_ORDER, P256
from eccfrog.verification import (
    CHECK_ORDER,
    FAIL,
    INFO,
    PASS,
    SKIP,
    CheckResult,
    TwistEvidence,
    check_anti_mov,
    check_base_point,
    check_consistency,
    check_j_invariant,
    check_primes,
    check_twist,
    cm_squarefree_result,
    emit_facts_csv,
    facts_rows,
    format_report,
    run_full_verification,
    twist_order_of,
)

from oracles import all_points, double_and_add
from test_counting import euler_count


def supersingular_toy():
    # y^2 = x^3 + x over F_163 has 164 = 4 * 41 points
    p = 163
    pts = all_points(p, 1, 0)
    assert len(pts) == p + 1
    G = next(Q for Q in (double_and_add(4, P, 1, p) for P in pts[1:]) if Q is not None)
    return CurveParams("ss163", p, 1, 0, G[0], G[1], 41, 4)


def prime_twist_toy():
    for p in range(1009, 5000, 4):
        if not is_probable_prime(p):
            continue
        for b in range(1, 50):
            n = euler_count(p, -3 % p, b)
            if is_probable_prime(n) and is_probable_prime(2 * p + 2 - n):
                pts = all_points(p, -3 % p, b)
                return CurveParams("twisty", p, -3, b, pts[1][0], pts[1][1], n)
    raise AssertionError("no toy curve with prime twist")


def test_report_is_complete(frog_report):
    assert [c.name for c in frog_report.checks] == list(CHECK_ORDER)
    assert frog_report.overall
    for name in CHECK_ORDER:
        if name in ("j_invariant",):
            assert frog_report.get(name).status == INFO
        else:
            assert frog_report.get(name).status == PASS, name
    assert frog_report.environment["params_source"] == "re-derived"


def test_twist_factor_bits(frog_report):
    values = frog_report.get("twist").values
    assert 500 <= int(values["twist_factor_bits"]) <= 510
    assert values["twist_small_factors"] == "3^1*26647^1"
    assert int(values["twist_factor"]) * 3 * 26647 == FROG_TWIST_ORDER


def test_anti_mov_catches_supersingular():
    C = supersingular_toy()
    res = check_anti_mov(C, 200)
    assert res.status == FAIL and res.values["embedding_degree"] == "2"
    assert check_base_point(C).passed


def test_anti_mov_vacuous_range(frog):
    res = check_anti_mov(frog, 0)
    assert res.status == PASS and res.warnings


def test_cm_squarefree_examples():
    assert cm_squarefree_result(-12).status == FAIL
    assert cm_squarefree_result(-12).values["cm_square_prime"] == "2"
    assert cm_squarefree_result(-15).status == PASS
    assert cm_squarefree_result(-(101**2) * 7, bound=100).status == PASS
    assert cm_squarefree_result(-(101**2) * 7, bound=101).status == FAIL


def test_twist_claim_rejected(frog):
    bad = check_twist(frog, TwistEvidence(FROG_TWIST_ORDER, 4), FROG_FACTS.twist_factor_bits_range)
    assert bad.status == FAIL
    assert "not prime" in bad.detail


def test_twist_claim_accepted(frog_report, frog):
    q = int(frog_report.get("twist").values["twist_factor"])
    ok = check_twist(frog, TwistEvidence(FROG_TWIST_ORDER, q), FROG_FACTS.twist_factor_bits_range)
    assert ok.status == PASS


def test_twist_evidence_consistency():
    with pytest.raises(ValueError):
        TwistEvidence(100, 7, 14)
    assert TwistEvidence(98, 7, 14).factor_bits == 3


def test_prime_twist_has_cofactor_one():
    C = prime_twist_toy()
    res = check_twist(C, TwistEvidence(twist_order_of(C)), bits_range=(1, 64))
    assert res.status == PASS
    assert res.values["twist_cofactor"] == "1"


def test_no_claim_is_informational():
    res = check_twist(P256, TwistEvidence(twist_order_of(P256)))
    assert res.status == INFO


def test_base_point_failures(frog):
    assert check_base_point(frog, IDENTITY).status == FAIL
    assert check_base_point(frog, -frog.G).status == PASS
    off = frog.point(frog.gx, frog.gy + 1)
    assert check_base_point(frog, off).status == FAIL


def test_consistency_detects_wrong_claim(frog):
    wrong = dataclasses.replace(FROG_FACTS, trace=FROG_FACTS.trace + 1)
    rows = {c.name: c for c in check_consistency(frog, wrong)}
    assert rows["trace"].status == FAIL
    assert rows["cm_discriminant"].status == FAIL
    assert rows["twist_order"].status == FAIL
    assert rows["hasse"].status == PASS


def test_bit_width_mismatch_only_warns(frog):
    odd = dataclasses.replace(FROG_FACTS, claimed_p_bits=521)
    bits = check_primes(frog, odd)[-1]
    assert bits.status == PASS and bits.warnings


def test_j_invariant_reference(frog):
    j = int(check_j_invariant(frog).values["j_invariant"])
    assert check_j_invariant(frog, j).status == PASS
    assert check_j_invariant(frog, j + 1).status == FAIL


def test_unresolved_derivation_still_passes(frog):
    wrong_space = [DerivationConfig(seed=b"not-the-seed")]
    report = run_full_verification(frog, cfg_space=wrong_space)
    assert report.get("derivation").status == SKIP
    assert report.environment["params_source"] == "published"
    assert report.overall


def test_curve_without_facts(frog):
    report = run_full_verification(P256)
    assert report.overall
    for name in ("trace", "cm_discriminant", "twist_order", "derivation"):
        assert report.get(name).status == SKIP


def test_failed_result_needs_reason():
    with pytest.raises(ValueError):
        CheckResult("x", FAIL)
    with pytest.raises(ValueError):
        CheckResult("x", "maybe", "why")


def test_facts_csv(frog_report, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_facts_csv(frog_report, a)
    emit_facts_csv(run_full_verification(frog_report.params), b)
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("key,value\n")
    rows = dict(facts_rows(frog_report))
    assert rows["cofactor"] == "1"
    assert rows["anti_mov_max_k"] == "200"
    assert rows["overall"] == PASS
    assert rows["p_is_probable_prime"] == "true"
    keys = [k for k, _ in facts_rows(frog_report)]
    assert keys == sorted(keys)


def test_format_report(frog_report):
    text = format_report(frog_report)
    assert text.splitlines()[-1] == "OVERALL: PASS"
    assert all(name in text for name in CHECK_ORDER)
