from parcoh.exactla import Mat
from parcoh.exactnum import cyc_embed, omega
from parcoh.scenarios import (PICARD_TARGETS, build_klein_rep, galois_descent, klein_k_form,
                              psl2_order, scenario_picard)


def test_klein_generators():
    S, T, Z = build_klein_rep()
    assert (S ** 7).is_identity()
    assert (T * T).is_identity()
    assert Z == Mat.scalar(cyc_embed(omega(), 21), 3)


def test_k_form_is_conjugate_and_rational():
    S, T, Z = build_klein_rep(verify=False)
    S2, T2, Z2, P = klein_k_form(S, T, Z)
    assert P * S * P.inv() == S2 and P * T * P.inv() == T2
    for m in (S2, T2):
        for r in m.e:
            for x in r:
                assert x.galois(4) == x and x.galois(16) == x
    assert S2.trace() == S.trace()


def test_descent_needs_unique_intertwiner():
    import pytest
    M = Mat([[0, 1], [1, 0]]).at(21)   # reducible: many intertwiners
    with pytest.raises(ArithmeticError):
        galois_descent([M], 4)


def test_psl2_order():
    assert psl2_order(7) == 168
    assert psl2_order(121) == 885720 == 121 * 120 * 122 // 2


def test_picard_scenario():
    rep = scenario_picard()
    assert rep.passed, rep.to_text()
    assert rep.artifacts["orientation"] == "B M B^-1"
    assert rep.artifacts["omega_in_B"] == "conjugate omega"
    assert rep.timing["total"] < 5
    assert len(PICARD_TARGETS) == 5


def test_psl2_checks_individually(psl2_report):
    rep = psl2_report
    for c in rep.checks:
        assert c.passed, "%s: %s %s" % (c.name, c.detail, c.witness)
    assert rep.artifacts["cusp_widths"].count(4) == 5
    assert len(rep.scalars) == 17
    assert rep.artifacts["full_image"]["order"] == 885720


def test_psl2_split_primes(psl2_report):
    split = psl2_report.artifacts["split_primes"]
    from sympy import primerange
    assert split == [p for p in primerange(11, 200) if p % 21 in (1, 4, 16)]
    assert [r["p"] for r in psl2_report.artifacts["residual"]] == list(primerange(11, 200))
    for row in psl2_report.artifacts["residual"]:
        assert row["split_in_K"] == (row["p_mod_21"] in (1, 4, 16))
        assert all(pair is not None for pair in row["pairs"])


def test_json_report(psl2_report):
    import json
    obj = json.loads(json.dumps(psl2_report.to_json()))
    assert obj["passed"] is True
    assert {c["name"] for c in obj["checks"]} == {c.name for c in psl2_report.checks}
