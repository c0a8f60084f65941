from fractions import Fraction

import pytest

from soinv.errors import InputError, UnsupportedFieldError
from soinv.fields import (
    GroundField,
    PrimeField,
    QuadExt,
    Rationals,
    context_friendliness,
    ext_is_square_fp2,
    ext_is_square_rational,
    ext_sign_real,
    hasse_symbol,
    hilbert_symbol,
    least_nonresidue,
    legendre,
    real_signature,
    squarefree_part,
    tonelli_shanks,
)

F = Fraction


def test_parse_round_trip():
    for text in ["Q", "R", "closed", "Fp:5", "Qp:3", "Qp:2"]:
        assert str(GroundField.parse(text)) == text


def test_parse_rejects_junk():
    for text in ["C", "Fp:4", "Fp:2", "Qp:6", "Fp:", "Qp:x", "q"]:
        with pytest.raises(InputError):
            GroundField.parse(text)


def test_prime_field_arithmetic():
    k = PrimeField(7)
    assert k.mul(3, 5) == 1
    assert k.inv(3) == 5
    assert k.div(1, 2) == 4
    assert k.neg(2) == 5
    with pytest.raises(InputError):
        PrimeField(2)


def test_quad_ext_is_a_field():
    # F_9 = F_3[sqrt(2)]
    ext = QuadExt(PrimeField(3), 2)
    w = ext.omega()
    assert ext.mul(w, w) == ext.from_int(2)
    x = (1, 2)
    assert ext.eq(ext.mul(x, ext.inv(x)), ext.one())
    # multiplicative order of the unit group is 8
    from soinv.fields import domain_pow

    assert ext.eq(domain_pow(ext, x, 8), ext.one())


def test_quad_ext_over_rationals():
    ext = QuadExt(Rationals(), F(3))
    x = (F(1, 2), F(-1, 2))
    n = ext.norm(x)
    assert n == F(1, 4) - F(3, 4) == F(-1, 2)
    assert ext.eq(ext.mul(x, ext.conj(x)), ext.embed(n))


def test_legendre_and_nonresidues():
    assert [legendre(a, 5) for a in (1, 2, 3, 4)] == [1, -1, -1, 1]
    assert least_nonresidue(3) == 2
    assert least_nonresidue(5) == 2
    assert least_nonresidue(7) == 3
    assert least_nonresidue(13) == 2


def test_tonelli_shanks():
    for p in (3, 5, 7, 13, 17, 41):
        for a in range(p):
            r = tonelli_shanks(a, p)
            if legendre(a, p) >= 0:
                assert r is not None and r * r % p == a % p
            else:
                assert r is None


def test_squarefree_part():
    assert squarefree_part(18) == 2
    assert squarefree_part(-18) == -2
    assert squarefree_part(1) == 1
    assert squarefree_part(360) == 10


def test_square_classes_q():
    k = GroundField("Q")
    assert k.square_class(F(8, 9)) == 2
    assert k.square_class(F(-3, 4)) == -3
    assert k.is_square(F(49, 4))
    assert not k.is_square(F(-49, 4))
    assert k.sqrt_exact(F(49, 4)) == F(7, 2)


def test_square_classes_fp():
    k = GroundField("Fp", 7)
    assert k.square_class(3) == 3  # delta_7 = 3
    assert k.square_class(2) == 1
    assert k.square_class_reps() == [1, 3]


def test_square_classes_qp_odd():
    k5 = GroundField("Qp", 5)
    assert k5.square_class_reps() == [1, 2, 5, 10]
    # 18 = 2 * 3^2 over Q_3: odd part is the unit 2, a nonresidue mod 3
    k3 = GroundField("Qp", 3)
    assert k3.square_class(F(18)) == 2
    assert k3.square_class(F(1, 3)) == 3
    assert k5.is_square(F(4, 9))
    assert not k5.is_square(F(5))
    assert k5.is_square(F(25))


def test_square_classes_q2():
    k = GroundField("Qp", 2)
    reps = k.square_class_reps()
    assert sorted(reps) == sorted(F(x) for x in (1, -1, 2, -2, 3, -3, 6, -6))
    assert k.square_class(F(17)) == 1  # 17 = 1 mod 8
    assert k.square_class(F(5)) == -3  # 5 = -3 mod 8
    assert k.square_class(F(7)) == -1
    assert k.square_class(F(14)) == -2
    assert k.is_square(F(17))
    assert not k.is_square(F(5))
    # each element lies in the class of its representative
    for r in reps:
        assert k.square_class(r * 9) == r


def test_hilbert_odd_p_frozen_values():
    assert hilbert_symbol(5, 2, 5) == -1
    assert hilbert_symbol(5, 10, 5) == -1
    assert hilbert_symbol(2, 10, 5) == -1
    assert hilbert_symbol(2, 3, 5) == 1
    assert hilbert_symbol(5, 5, 5) == 1  # (5,5)_5 = (5,-1)_5 = leg(-1|5) = +1
    assert hilbert_symbol(3, 3, 3) == -1  # leg(-1|3) = -1
    assert hilbert_symbol(F(1, 5), 2, 5) == -1  # valuation parity is what counts


def test_hilbert_two_adic_frozen_values():
    table = {
        (-1, -1): -1,
        (2, 2): 1,
        (-2, -2): -1,
        (3, -6): -1,
        (-2, 3): 1,
        (-2, -6): -1,
        (2, 3): -1,
        (-1, 6): -1,
        (2, -2): 1,
        (3, 3): -1,
        (-3, -3): 1,
        (6, 6): -1,
        (-6, -6): 1,
        (-1, -3): 1,
        (-1, 2): 1,
    }
    for (a, b), want in table.items():
        assert hilbert_symbol(a, b, 2) == want, (a, b)
        assert hilbert_symbol(b, a, 2) == want, (b, a)


def test_hilbert_bilinearity_spot_checks():
    # (a, b)(a, c) = (a, bc) at various primes
    cases = [(3, 5, 7, 3), (2, 3, 5, 2), (10, 3, 7, 5), (6, -2, -3, 2)]
    for a, b, c, p in cases:
        assert hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p) == hilbert_symbol(
            a, b * c, p
        )


def test_hasse_conventions_differ_by_det_term():
    diag = [F(5), F(2), F(10)]
    s = hasse_symbol(diag, 5, "serre")
    j = hasse_symbol(diag, 5, "jones")
    det = F(5) * 2 * 10
    assert j == s * hilbert_symbol(det, -1, 5)
    assert s == -1  # (5,2)(5,10)(2,10) = (-1)(-1)(-1)
    assert j == -1


def test_hasse_rejects_unknown_convention():
    with pytest.raises(InputError):
        hasse_symbol([F(1)], 3, "ita")


def test_real_signature():
    assert real_signature([F(2), F(-3), F(1, 2)]) == (2, 1)
    with pytest.raises(ValueError):
        real_signature([F(0)])


def test_friendliness_closed_form():
    k = GroundField("Q")
    for r in (F(3), F(-5), F(7, 2)):
        x, y = k.friendly_witness(r)
        assert x * x + r * y * y == 1 and y != 0
    x, y = k.friendly_witness(F(-1))
    assert (x, y) == (F(5, 3), F(4, 3))
    assert x * x - y * y == 1


def test_friendliness_fp():
    k5 = GroundField("Fp", 5)
    assert k5.friendly_witness(4) == (0, 2)  # ratio -1 over F_5
    k3 = GroundField("Fp", 3)
    assert k3.friendly_witness(2) is None  # ratio -1 over F_3: no witness
    x, y = k3.friendly_witness(1)
    assert (x * x + y * y) % 3 == 1 and y % 3 != 0
    for p in (5, 7, 11, 13):
        k = GroundField("Fp", p)
        for r in range(1, p):
            x, y = k.friendly_witness(r)
            assert (x * x + r * y * y) % p == 1 and y % p != 0


def test_context_friendliness():
    k3 = GroundField("Fp", 3)
    ok, failures, _ = context_friendliness(k3, [1, 1, 2])
    assert not ok and failures == [2]
    ok, _, wit = context_friendliness(k3, [1, 1, 1])
    assert ok and wit
    kq = GroundField("Q")
    ok, failures, wit = context_friendliness(kq, [F(1), F(-1), F(3)])
    assert ok and not failures
    dom = kq.domain()
    for r, (x, y) in wit.items():
        assert x * x + r * y * y == 1 and y != 0


def test_ext_square_fp2():
    ext = QuadExt(PrimeField(3), 2)  # F_9
    # squares of all elements
    squares = set()
    for a in range(3):
        for b in range(3):
            squares.add(ext.mul((a, b), (a, b)))
    for a in range(3):
        for b in range(3):
            assert ext_is_square_fp2(ext, (a, b)) == ((a, b) in squares)


def test_ext_square_rational():
    ext = QuadExt(Rationals(), F(3))
    # (1 + sqrt(3))^2 = 4 + 2 sqrt(3)
    assert ext_is_square_rational(ext, (F(4), F(2)))
    assert not ext_is_square_rational(ext, (F(2), F(0)))  # 2 is not a square there
    assert ext_is_square_rational(ext, (F(3), F(0)))  # 3 = sqrt(3)^2
    assert ext_is_square_rational(ext, (F(4), F(0)))
    assert not ext_is_square_rational(ext, (F(0), F(1)))  # sqrt(3) itself
    # random squares round-trip
    for u, v in [(F(1), F(1)), (F(2), F(-1)), (F(1, 2), F(3))]:
        sq = ext.mul((u, v), (u, v))
        assert ext_is_square_rational(ext, sq)


def test_ext_sign_real():
    ext = QuadExt(Rationals(), F(2))
    assert ext_sign_real(ext, (F(1), F(1))) == 1
    assert ext_sign_real(ext, (F(-1), F(1))) == 1  # sqrt(2) > 1
    assert ext_sign_real(ext, (F(-3), F(2))) == -1  # 2 sqrt(2) < 3
    assert ext_sign_real(ext, (F(-1), F(1)), embedding=-1) == -1
    assert ext_sign_real(ext, (F(0), F(0))) == 0


def test_square_class_reps_unsupported_over_q():
    with pytest.raises(UnsupportedFieldError):
        GroundField("Q").square_class_reps()
