"""Tests for multiplication tables, twisting, and the normalizer."""

import random

import pytest

from yangalg.laurent import Z, LaurentPoly, UnitA
from yangalg.algebra import (
    OctonionElt,
    cd_oct_mul,
    iso_cd_to_yang,
    norm,
    random_oct,
    trace,
    yang_mul,
)
from yangalg.multable import (
    EquivCertificate,
    LagrangeError,
    MulTable,
    NormalizationError,
    align_triple_products,
    check_lagrange,
    compose_twists,
    elduque_check,
    kaplansky_unitize,
    normalize,
    straighten_scalar_action,
    table_of,
    twist,
    verify_certificate,
    yang_table,
)
from yangalg.ortho import OrthoNF, TBASIS, random_nf

E = OctonionElt.e
ID = UnitA.identity()
IDENTITY_NF = OrthoNF.identity()


def tau_k(k):
    return OrthoNF.tau(tuple(i == k for i in range(4)))


def negated_entry_table(i=1, j=2) -> MulTable:
    entries = [list(row) for row in yang_table().c]
    entries[i][j] = -entries[i][j]
    return MulTable(entries)


def test_yang_table_entries():
    yt = yang_table()
    assert yt.c[1][2] == E(3)
    assert yt.c[1][1] == -E(0)
    assert yt.c[0][5] == Z * E(1)


def test_cd_table_differs_by_coordinate3_conjugation():
    cd = table_of(cd_oct_mul)
    yt = yang_table()
    assert cd != yt
    # the difference is exactly the last-coordinate conjugation twist
    for i, bi in enumerate(TBASIS):
        for j, bj in enumerate(TBASIS):
            assert iso_cd_to_yang(cd.c[i][j]) == \
                yang_mul(iso_cd_to_yang(bi), iso_cd_to_yang(bj))


def test_eval_is_bilinear_extension():
    yt = yang_table()
    rng = random.Random(40)
    y = random_oct(rng)
    assert yt.eval(E(0), y) == y
    assert yt.eval(Z * E(1), Z * E(2)) == LaurentPoly.term(1, -2) * E(3)
    for _ in range(200):
        x, y = random_oct(rng), random_oct(rng)
        assert yt.eval(x, y) == yang_mul(x, y)


def test_eval_matches_tabulated_function():
    cd = table_of(cd_oct_mul)
    rng = random.Random(41)
    for _ in range(50):
        x, y = random_oct(rng), random_oct(rng)
        assert cd.eval(x, y) == cd_oct_mul(x, y)


def test_twist_identity_and_inverse():
    yt = yang_table()
    assert twist(yt, IDENTITY_NF, IDENTITY_NF, IDENTITY_NF) == yt
    cd = table_of(cd_oct_mul)
    assert twist(cd, IDENTITY_NF, IDENTITY_NF, IDENTITY_NF) == cd
    rng = random.Random(42)
    s1, s2, t = (random_nf(rng, 3) for _ in range(3))
    tw = twist(yt, s1, s2, t)
    back = twist(tw, s1.invert(), s2.invert(), t.invert())
    assert back == yt


def test_twist_unit_example():
    u = UnitA(1, 1)  # the unit z
    sigma = OrthoNF.sigma((ID, ID, ID, u))
    tw = twist(yang_table(), sigma, sigma, sigma.invert())
    assert tw.c[1][2] == u.conj().to_poly() * E(3)


def test_twist_action_composes():
    yt = yang_table()
    rng = random.Random(43)
    c1 = EquivCertificate(*(random_nf(rng, 2) for _ in range(3)))
    c2 = EquivCertificate(*(random_nf(rng, 2) for _ in range(3)))
    once = twist(twist(yt, c1.sigma1, c1.sigma2, c1.tau),
                 c2.sigma1, c2.sigma2, c2.tau)
    combined = compose_twists(c1, c2)
    assert once == twist(yt, combined.sigma1, combined.sigma2, combined.tau)


def test_check_lagrange_pass_and_fail():
    yt = MulTable(yang_table().c)
    report = check_lagrange(yt, trials=50, rng=random.Random(44))
    assert report.ok and yt.lagrange_checked

    rng = random.Random(45)
    tw = twist(yang_table(), *(random_nf(rng, 2) for _ in range(3)))
    assert check_lagrange(tw, trials=50, rng=random.Random(46)).ok

    bad = negated_entry_table()
    report = check_lagrange(bad, trials=200, rng=random.Random(47))
    assert not report.ok
    assert report.counterexample is not None
    x, y = report.counterexample
    assert norm(bad.eval(x, y)) != norm(x) * norm(y)
    assert not bad.lagrange_checked


def test_kaplansky_on_yang_is_trivial():
    out, cert = kaplansky_unitize(yang_table())
    assert out == yang_table()
    assert cert == EquivCertificate.identity()


def test_kaplansky_restores_identity():
    rng = random.Random(48)
    for _ in range(5):
        s1, s2 = random_nf(rng, 2), random_nf(rng, 2)
        tw = twist(yang_table(), s1, s2, IDENTITY_NF)
        out, cert = kaplansky_unitize(tw)
        for j, b in enumerate(TBASIS):
            assert out.c[0][j] == b
            assert out.c[j][0] == b
        assert out.c[0][0] == E(0)
        replay = twist(tw, cert.sigma1, cert.sigma2, cert.tau)
        assert replay == out


def test_straighten_on_yang_is_trivial():
    out, cert = straighten_scalar_action(yang_table())
    assert out == yang_table()
    assert cert == EquivCertificate.identity()


def test_straighten_recovers_tau():
    t1 = tau_k(1)
    tw = twist(yang_table(), t1, t1, t1)
    out, cert = straighten_scalar_action(tw)
    assert cert == EquivCertificate(t1, t1, t1)
    assert out == yang_table()
    for j, b in enumerate(TBASIS):
        assert out.c[4][j] == Z * b


def test_align_on_yang_is_trivial():
    out, cert = align_triple_products(yang_table())
    assert out == yang_table()
    assert cert == EquivCertificate.identity()


def test_align_recovers_unit():
    u = UnitA(1, 1)
    sigma = OrthoNF.sigma((ID, ID, ID, u))
    tw = twist(yang_table(), sigma, sigma, sigma.invert())
    out, cert = align_triple_products(tw)
    assert out.c[1][2] == E(3)
    assert out.c[2][1] == -E(3)
    assert out == yang_table()


def test_normalize_yang_gives_identity_certificate():
    cert = normalize(yang_table())
    assert cert == EquivCertificate.identity()


def test_normalize_round_trip():
    rng = random.Random(49)
    for _ in range(10):
        triple = tuple(random_nf(rng, 3) for _ in range(3))
        tw = twist(yang_table(), *triple)
        cert = normalize(tw, trials=30, rng=random.Random(50))
        assert verify_certificate(tw, cert)


def test_normalize_cd_table():
    cd_via_iso = table_of(
        lambda x, y: iso_cd_to_yang(cd_oct_mul(iso_cd_to_yang(x), iso_cd_to_yang(y))))
    cert = normalize(cd_via_iso, trials=30, rng=random.Random(51))
    assert cert == EquivCertificate.identity()

    raw_cd = table_of(cd_oct_mul)
    cert = normalize(raw_cd, trials=30, rng=random.Random(52))
    t3 = tau_k(3)
    assert cert == EquivCertificate(t3, t3, t3)
    assert verify_certificate(raw_cd, cert)


def test_normalize_opposite_multiplication():
    # x, y -> y*x is Lagrange-valid but not built as a twist of the Yang
    # table; the normalizer must still reduce it
    opp = table_of(lambda x, y: yang_mul(y, x))
    cert = normalize(opp, trials=50, rng=random.Random(57))
    assert verify_certificate(opp, cert)
    flip = OrthoNF(
        (ID, ID, ID, UnitA(-1, 0)),
        (0, 1, 2, 3),
        (False, True, True, True),
    )
    assert cert == EquivCertificate(flip, flip, flip)


def test_normalize_conjugated_multiplication():
    from yangalg.algebra import oct_conj

    conj_mul = table_of(lambda x, y: oct_conj(yang_mul(x, y)))
    cert = normalize(conj_mul, trials=50, rng=random.Random(58))
    assert cert != EquivCertificate.identity()
    assert verify_certificate(conj_mul, cert)

    rng = random.Random(59)
    tw = twist(conj_mul, *(random_nf(rng, 3) for _ in range(3)))
    cert = normalize(tw, trials=50, rng=random.Random(60))
    assert verify_certificate(tw, cert)


def test_normalize_rejects_bad_table():
    bad = negated_entry_table()
    with pytest.raises(LagrangeError):
        normalize(bad, trials=200, rng=random.Random(53))
    # forcing the flag skips the probabilistic gate; the passes or the final
    # comparison must still reject
    bad.lagrange_checked = True
    with pytest.raises(NormalizationError):
        normalize(bad)


def test_normalize_quadratic_identity_after_unitize():
    rng = random.Random(54)
    tw = twist(yang_table(), random_nf(rng, 2), random_nf(rng, 2), IDENTITY_NF)
    out, _ = kaplansky_unitize(tw)
    for _ in range(30):
        x = random_oct(rng, 2, 4)
        lhs = out.eval(x, x) - trace(x) * x + norm(x) * E(0)
        assert lhs == OctonionElt.zero()


def test_verify_certificate():
    assert verify_certificate(yang_table(), EquivCertificate.identity())
    t1 = tau_k(1)
    assert not verify_certificate(yang_table(),
                                  EquivCertificate(IDENTITY_NF, IDENTITY_NF, t1))
    rng = random.Random(55)
    cert = EquivCertificate(*(random_nf(rng, 2) for _ in range(3)))
    tw = twist(yang_table(), cert.sigma1, cert.sigma2, cert.tau)
    # the inverse triple sends the twisted table back to Yang
    inverse = EquivCertificate(cert.sigma1.invert(), cert.sigma2.invert(),
                               cert.tau.invert())
    assert verify_certificate(tw, inverse)


def test_elduque_checks():
    report = elduque_check(yang_table())
    assert all(report.values())
    assert set(report) == {
        "table_is_yang", "p_closed", "e2_Ae1_in_Ae3", "e2_Ae3_in_Ae1",
        "e2_Ae0_in_Ae2", "e2P_spans_Ae2", "e2P_spans_Ae3",
    }
    assert yang_mul(E(2), E(1)) == -E(3)
    assert yang_mul(E(2), Z * E(1)) == -Z.conj() * E(3)
    report = elduque_check(table_of(cd_oct_mul))
    assert not report["table_is_yang"]


def test_table_json_round_trip():
    yt = yang_table()
    data = yt.to_json()
    assert MulTable.from_json(data) == yt
    assert MulTable.from_json(data).lagrange_checked
    with pytest.raises(ValueError):
        MulTable.from_json({"basis": "other", "c": data["c"],
                            "lagrange_checked": False})
    with pytest.raises(ValueError):
        MulTable.from_json({"basis": data["basis"], "c": data["c"][:7],
                            "lagrange_checked": False})


def test_certificate_json_round_trip():
    rng = random.Random(56)
    cert = EquivCertificate(*(random_nf(rng, 3) for _ in range(3)))
    assert EquivCertificate.from_json(cert.to_json()) == cert
    with pytest.raises(ValueError):
        EquivCertificate.from_json({"sigma1": cert.sigma1.to_json()})
