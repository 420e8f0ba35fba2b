import random

import pytest

from folclass.errors import FieldMismatchError
from folclass.finite_field import GF, FieldSpec
from folclass.polynomial import Poly, parse_poly
from folclass.derivation import (
    DerivationTriple,
    LieCase,
    chart_at_infinity,
    delta_squared,
    failed_conditions,
    is_p_closed,
    is_valid_foliation,
    oracle_delta_squared,
    satisfies_C1,
    satisfies_C2,
    scale,
)
from folclass.enumerator import enumerate_triples


def triple(case, a, b, c, spec):
    return DerivationTriple(
        LieCase[case], parse_poly(a, spec), parse_poly(b, spec), parse_poly(c, spec)
    )


def test_lie_cases_are_exactly_four():
    assert [c.name for c in LieCase] == ["I", "II", "III", "IV"]
    assert (LieCase.I.alpha_sq, LieCase.I.beta_sq) == ("zero", "zero")
    assert (LieCase.II.alpha_sq, LieCase.II.beta_sq) == ("alpha", "beta")
    assert (LieCase.III.alpha_sq, LieCase.III.beta_sq) == ("alpha", "zero")
    assert (LieCase.IV.alpha_sq, LieCase.IV.beta_sq) == ("beta", "zero")
    assert LieCase.from_name("ii") is LieCase.II
    with pytest.raises(ValueError):
        LieCase.from_name("V")


def test_triple_construction_guards(F4, F8):
    with pytest.raises(ValueError):
        triple("I", "0", "0", "0", F4)
    with pytest.raises(FieldMismatchError):
        DerivationTriple(LieCase.I, Poly.one(F4), Poly.one(F8), Poly.zero(F4))
    with pytest.raises(ValueError):
        F9 = GF(9)
        DerivationTriple(LieCase.I, Poly.one(F9), Poly.one(F9), Poly.zero(F9))


def test_delta_squared_case_ii_idempotent(F4):
    d = triple("II", "1", "t", "t^2+t", F4)
    sq = delta_squared(d)
    assert (sq.A, sq.B, sq.C) == (d.a, d.b, d.c)  # delta^2 = delta


def test_delta_squared_case_i_czero(F4):
    d = triple("I", "u*t+1", "t+u", "0", F4)
    assert delta_squared(d).is_zero()  # every term carries a factor c


def test_delta_squared_case_iv_example(F2):
    d = triple("IV", "1", "t", "1", F2)
    sq = delta_squared(d)
    assert sq.is_zero()  # B = a^2 + c*b' = 1 + 1 = 0 in char 2


def test_oracle_agrees_exhaustively_over_gf2(F2):
    for case in LieCase:
        for d in enumerate_triples(F2, case):
            assert delta_squared(d) == oracle_delta_squared(d)


def test_oracle_agrees_on_gf4_sample(F4):
    rng = random.Random(3)
    polys1 = [Poly(F4, (rng.randrange(4), rng.randrange(4))) for _ in range(400)]
    polys3 = [Poly(F4, tuple(rng.randrange(4) for _ in range(4))) for _ in range(400)]
    for case in LieCase:
        for a, b, c in zip(polys1, polys1[1:] + polys1[:1], polys3):
            if not (a or b or c):
                continue
            d = DerivationTriple(case, a, b, c)
            assert delta_squared(d) == oracle_delta_squared(d)


def test_oracle_object_fallback_on_large_field():
    # GF(2^11) has no flat tables, forcing the object-arithmetic engine
    big = FieldSpec(2, 11)
    t = Poly.t(big)
    one = Poly.one(big)
    d = DerivationTriple(LieCase.II, one, t, t * t + t)
    sq = oracle_delta_squared(d)
    assert (sq.A, sq.B, sq.C) == (d.a, d.b, d.c)
    assert delta_squared(d) == sq


def test_c1_examples(F2):
    assert satisfies_C1(triple("I", "1", "t", "0", F2))
    assert not satisfies_C1(triple("I", "t", "t^2", "t^3", F2))
    assert satisfies_C1(triple("I", "t", "t+1", "0", F2))


def test_c2_examples(F4):
    assert satisfies_C2(triple("II", "1", "t", "t^2+t", F4))
    assert not satisfies_C2(triple("II", "1", "1", "t", F4))  # no equality attained
    assert not satisfies_C2(triple("II", "0", "1", "t^4", F4))  # deg c > 3


def test_p_closed_examples(F4, F2):
    closed, h = is_p_closed(triple("II", "1", "t", "t^2+t", F4))
    assert closed and h == Poly.one(F4)
    closed, _h = is_p_closed(triple("II", "1", "t", "0", F4))
    assert not closed  # minor A*b + B*a = t + t^2 != 0
    closed, h = is_p_closed(triple("I", "1", "t", "0", F2))
    assert closed and h == Poly.zero(F2)  # delta^2 = 0 is proportional to anything


def test_p_closed_without_primitivity_gives_no_multiplier(F2):
    # (t, t^2, 0) squares to zero but fails C1, so no polynomial multiplier
    d = triple("I", "t", "t^2", "0", F2)
    closed, h = is_p_closed(d)
    assert closed and h is None


def test_nonconstant_multiplier(F4):
    # a=(t+t2), b=(t+t1), c=(t+t1)(t+t2) squares to (t1+t2)*delta
    u = F4.generator
    d = triple("II", "t+u", "t", "t^2+u*t", F4)
    closed, h = is_p_closed(d)
    assert closed and h == Poly.constant(u)


def test_valid_foliation_examples(F2):
    assert is_valid_foliation(triple("I", "1", "t", "0", F2))
    assert is_valid_foliation(triple("III", "t", "1", "t^2", F2))
    assert not is_valid_foliation(triple("II", "1", "1", "1", F2))
    # (1, 1, t) in case II is p-closed and primitive but misses every degree bound
    assert failed_conditions(triple("II", "1", "1", "t", F2)) == [
        "C2 (degree bounds with at least one equality)"
    ]


def test_chart_examples(F4):
    ch = chart_at_infinity(triple("II", "1", "t", "t^2+t", F4))
    s = Poly.t(F4)
    assert ch.a_bar == s
    assert ch.b_bar == Poly.one(F4)
    assert ch.c_bar == s + s * s
    assert ch.regular and ch.nonvanishing_at_s0

    ch = chart_at_infinity(triple("II", "1", "1", "t", F4))
    assert ch.regular and not ch.nonvanishing_at_s0

    ch = chart_at_infinity(triple("II", "0", "0", "t^4", F4))
    assert not ch.regular and ch.c_bar is None


def test_c2_iff_chart_regular_nonvanishing_gf2(F2):
    for d in enumerate_triples(F2, LieCase.I):
        ch = chart_at_infinity(d)
        assert satisfies_C2(d) == (ch.regular and ch.nonvanishing_at_s0)


def test_chart_matches_pointwise_substitution(F4, F8):
    # s^w * f(1/s) evaluated at any nonzero point equals the chart component
    rng = random.Random(53)
    for spec in (F4, F8):
        q = spec.order
        for _ in range(200):
            a = Poly(spec, (rng.randrange(q), rng.randrange(q)))
            b = Poly(spec, (rng.randrange(q), rng.randrange(q)))
            c = Poly(spec, tuple(rng.randrange(q) for _ in range(rng.randrange(1, 6))))
            if not (a or b or c):
                continue
            d = DerivationTriple(LieCase.I, a, b, c)
            ch = chart_at_infinity(d)
            for s0 in spec.elements():
                if not s0:
                    continue
                inv = s0.inverse()
                if ch.a_bar is not None:
                    assert ch.a_bar.eval(s0) == s0 * d.a.eval(inv)
                if ch.b_bar is not None:
                    assert ch.b_bar.eval(s0) == s0 * d.b.eval(inv)
                if ch.c_bar is not None:
                    assert ch.c_bar.eval(s0) == s0 * s0 * s0 * d.c.eval(inv)


def test_multiplier_reproduces_square(F4, gf4_reports):
    # on primitive p-closed triples, delta^2 = h * delta componentwise
    for case, report in gf4_reports.items():
        for d, _matches in report.class_matches:
            closed, h = is_p_closed(d)
            assert closed and h is not None
            sq = delta_squared(d)
            assert sq.A == h * d.a and sq.B == h * d.b and sq.C == h * d.c


def test_scale(F4):
    u = F4.generator
    d = triple("I", "1", "t", "0", F4)
    assert scale(F4.one, d) == d
    sd = scale(u, d)
    assert (str(sd.a), str(sd.b), str(sd.c)) == ("u", "u*t", "0")
    with pytest.raises(ZeroDivisionError):
        scale(F4.zero, d)


def test_scaling_covariance_of_delta_squared(F2, F4):
    # delta^2(lam * d) = lam^2 * delta^2(d)
    for case in LieCase:
        for d in enumerate_triples(F2, case):
            sq = delta_squared(d)
            for lam in F2.elements():
                if not lam:
                    continue
                sq2 = delta_squared(scale(lam, d))
                lam2 = lam * lam
                assert sq2.A == sq.A.scale(lam2)
                assert sq2.B == sq.B.scale(lam2)
                assert sq2.C == sq.C.scale(lam2)
    rng = random.Random(5)
    nonzero = [x for x in F4.elements() if x]
    for _ in range(300):
        a = Poly(F4, (rng.randrange(4), rng.randrange(4)))
        b = Poly(F4, (rng.randrange(4), rng.randrange(4)))
        c = Poly(F4, tuple(rng.randrange(4) for _ in range(4)))
        if not (a or b or c):
            continue
        d = DerivationTriple(LieCase[rng.choice(["I", "II", "III", "IV"])], a, b, c)
        sq = delta_squared(d)
        lam = rng.choice(nonzero)
        sq2 = delta_squared(scale(lam, d))
        lam2 = lam * lam
        assert (sq2.A, sq2.B, sq2.C) == (sq.A.scale(lam2), sq.B.scale(lam2), sq.C.scale(lam2))


def test_validity_invariant_under_scaling_gf2(F2):
    for case in LieCase:
        for d in enumerate_triples(F2, case):
            v = is_valid_foliation(d)
            for lam in F2.elements():
                if lam:
                    assert is_valid_foliation(scale(lam, d)) == v


def test_triple_json_shape(F4):
    d = triple("II", "1", "t", "t^2+t", F4)
    assert d.to_json_dict() == {
        "case": "II",
        "a": "1",
        "b": "t",
        "c": "t^2+t",
        "field": "GF(4)",
    }
