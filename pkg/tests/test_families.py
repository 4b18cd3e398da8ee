from fractions import Fraction

import pytest

from cbcseries.families import (
    ALL_FAMILIES,
    FamilySpec,
    PhiValue,
    SignPattern,
    SurdValue,
    four_alpha_pow_cmp,
    list_families,
    sign,
)
from cbcseries.precision import UsageError


def test_sign_patterns_first_period():
    assert [sign(SignPattern.CEIL_HALF, n) for n in range(8)] == [1, -1, -1, 1, 1, -1, -1, 1]
    assert [sign(SignPattern.FLOOR_HALF, n) for n in range(8)] == [1, 1, -1, -1, 1, 1, -1, -1]
    assert [sign(SignPattern.ALTERNATING, n) for n in range(4)] == [1, -1, 1, -1]
    assert [sign(SignPattern.PLUS, n) for n in range(4)] == [1, 1, 1, 1]
    with pytest.raises(UsageError):
        sign(SignPattern.PLUS, -1)


def test_sign_period_four():
    for pat in (SignPattern.CEIL_HALF, SignPattern.FLOOR_HALF):
        for n in range(200):
            assert sign(pat, n) == sign(pat, n + 4)


def test_surd_value():
    s = SurdValue(Fraction(1, 2), Fraction(2))
    assert s.squared() == Fraction(1, 2)
    assert s.as_rational() is None
    assert SurdValue(Fraction(3, 2), Fraction(4)).as_rational() == 3
    assert SurdValue(Fraction(1, 3), Fraction(9, 4)).as_rational() == Fraction(1, 2)
    assert SurdValue(Fraction(0), Fraction(7)).as_rational() == 0
    with pytest.raises(UsageError):
        SurdValue(Fraction(1), Fraction(-2))


def test_phi_value():
    assert PhiValue(Fraction(1, 4), True).bounded_by_quarter_pi()
    assert not PhiValue(Fraction(1, 3), True).bounded_by_quarter_pi()
    assert PhiValue(Fraction(7853981, 10**7)).bounded_by_quarter_pi()
    assert not PhiValue(Fraction(7853982, 10**7)).bounded_by_quarter_pi()
    assert str(PhiValue(Fraction(-1, 5), True)) == "-pi/5"
    assert str(PhiValue(Fraction(1), True)) == "pi"
    assert str(PhiValue(Fraction(3, 10))) == "3/10"
    assert PhiValue(Fraction(0)).is_zero()


def test_four_alpha_pow_cmp():
    # 4*alpha ~ 6.4721
    assert four_alpha_pow_cmp(Fraction(13, 2), 1) == 1
    assert four_alpha_pow_cmp(Fraction(32, 5), 1) == -1
    assert four_alpha_pow_cmp(Fraction(4), 0) == 0
    assert four_alpha_pow_cmp(Fraction(5), 0) == 1
    # 4*alpha^2 ~ 10.4721, sign of m irrelevant
    assert four_alpha_pow_cmp(Fraction(21, 2), 2) == 1
    assert four_alpha_pow_cmp(Fraction(21, 2), -2) == 1
    assert four_alpha_pow_cmp(Fraction(10), 2) == -1


def test_family_validation_domains():
    FamilySpec("F3", x=Fraction(1))
    with pytest.raises(UsageError):
        FamilySpec("F3", x=Fraction(2))
    with pytest.raises(UsageError):
        FamilySpec("F3", x=0.5)  # floats are not exact parameters
    with pytest.raises(UsageError):
        FamilySpec("T1", phi=PhiValue(Fraction(0)))
    FamilySpec("T3", phi=PhiValue(Fraction(0)))
    with pytest.raises(UsageError):
        FamilySpec("T2", phi=PhiValue(Fraction(1, 3), True))
    FamilySpec("C1", x=Fraction(1, 2))
    with pytest.raises(UsageError):
        FamilySpec("C1", x=Fraction(3, 5))
    with pytest.raises(UsageError):
        FamilySpec("H2", x=Fraction(1))
    FamilySpec("I1", r=0)
    with pytest.raises(UsageError):
        FamilySpec("I1", r=3)
    with pytest.raises(UsageError):
        FamilySpec("I2", r=0)
    with pytest.raises(UsageError):
        FamilySpec("Q7", x=Fraction(1, 2))


def test_family_parameter_presence():
    with pytest.raises(UsageError):
        FamilySpec("F3")
    with pytest.raises(UsageError):
        FamilySpec("I3", x=Fraction(1, 2))
    with pytest.raises(UsageError):
        FamilySpec("F3", x=Fraction(1, 2), r=2)
    FamilySpec("J1")
    FamilySpec("I3")


def test_g_family_validation():
    spec = FamilySpec("G1", m=1, s=0, p=Fraction(8))
    assert spec.seq == "F"  # filled in from the id
    FamilySpec("G2", m=1, s=0, p=Fraction(8), seq="L")
    with pytest.raises(UsageError):
        FamilySpec("G1", m=1, s=0, p=Fraction(8), seq="L")
    with pytest.raises(UsageError):
        FamilySpec("G1", m=1, s=0, p=Fraction(6))  # below 4*alpha
    FamilySpec("G5", m=1, s=0, p=Fraction(7))  # 7 > 4*alpha ~ 6.4721
    with pytest.raises(UsageError):
        FamilySpec("G5", m=1, s=0, p=8)  # p must be a Fraction, not int


def test_shape_helpers():
    assert FamilySpec("F5", x=Fraction(1, 2)).first_index() == 1
    assert FamilySpec("F3", x=Fraction(1, 2)).first_index() == 0
    assert FamilySpec("G9", m=1, s=0, p=Fraction(8)).first_index() == 1
    assert FamilySpec("F1", x=Fraction(1, 2)).weight() == "recip"
    assert FamilySpec("F5", x=Fraction(1, 2)).weight() == "linear"
    assert FamilySpec("J1").weight() == "harmonic"
    assert FamilySpec("H1", x=Fraction(1, 2)).sign_pattern() is SignPattern.ALTERNATING
    assert FamilySpec("H2", x=Fraction(1, 2)).sign_pattern() is SignPattern.PLUS
    g = FamilySpec("G10", m=2, s=1, p=Fraction(12))
    assert g.g_shape() == (SignPattern.FLOOR_HALF, "linear", "L")
    with pytest.raises(UsageError):
        FamilySpec("F3", x=Fraction(1, 2)).g_shape()


def test_certification_boundary():
    assert FamilySpec("F3", x=Fraction(1)).at_certification_boundary()
    assert FamilySpec("F1", x=SurdValue(Fraction(1, 2), Fraction(4))).at_certification_boundary()
    assert not FamilySpec("F3", x=Fraction(9, 10)).at_certification_boundary()
    assert FamilySpec("T4", phi=PhiValue(Fraction(1, 4), True)).at_certification_boundary()
    assert not FamilySpec("T4", phi=PhiValue(Fraction(1, 8), True)).at_certification_boundary()
    assert not FamilySpec("C1", x=Fraction(1, 2)).at_certification_boundary()
    assert not FamilySpec("G1", m=1, s=0, p=Fraction(7)).at_certification_boundary()
    assert not FamilySpec("I1", r=8).at_certification_boundary()
    assert not FamilySpec("J1").at_certification_boundary()


def test_describe():
    assert FamilySpec("F3", x=Fraction(1, 2)).describe() == "F3 x=1/2"
    assert "phi=pi/6" in FamilySpec("T1", phi=PhiValue(Fraction(1, 6), True)).describe()
    text = FamilySpec("G4", m=1, s=2, p=Fraction(9)).describe()
    assert "m=1" in text and "s=2" in text and "p=9" in text and "seq=L" in text


def test_list_families_catalog():
    rows = list_families()
    assert len(rows) == len(ALL_FAMILIES) == 34
    ids = [row["id"] for row in rows]
    assert len(set(ids)) == 34
    by_id = {row["id"]: row for row in rows}
    assert by_id["F5"]["starts_at"] == 1
    assert by_id["C1"]["sign"] == "alternating"
    assert by_id["J1"]["parameters"] == ""
    assert "r" in by_id["I2"]["parameters"]
