"""Bounds, representative families and p-adic tables."""

from fractions import Fraction

import pytest

from soinv import _published as pub
from soinv import census
from soinv import linalg as la
from soinv.errors import PreconditionError, UnsupportedFieldError
from soinv.fields import GroundField, hasse_symbol, least_nonresidue
from soinv.forms import FormContext

CLOSED = GroundField.parse("closed")
REAL = GroundField.parse("R")
F5 = GroundField.parse("Fp:5")
Q5 = GroundField.parse("Qp:5")
Q2 = GroundField.parse("Qp:2")
RAT = GroundField.parse("Q")


class TestTauCounts:
    def test_tau1_values(self):
        assert census.tau1(CLOSED) == 0
        assert census.tau1(REAL) == 1
        assert census.tau1(F5) == 1
        assert census.tau1(Q5) == 3
        assert census.tau1(Q2) == 7

    def test_tau1_rejects_rationals(self):
        with pytest.raises(UnsupportedFieldError):
            census.tau1(RAT)

    def test_tau2_values(self):
        assert census.tau2(1, CLOSED) == 1
        assert census.tau2(3, REAL) == 4
        assert census.tau2(4, F5) == 2
        assert census.tau2(2, Q5) == 7
        assert census.tau2(10, Q2) == 128

    def test_tau2_caps(self):
        # 2^3 and 2^7 subsets once the dimension exceeds the class count
        assert census.tau2(3, Q5) == 8
        assert census.tau2(50, Q5) == 8
        assert census.tau2(7, Q2) == 128
        assert census.tau2(50, Q2) == 128

    def test_tau2_needs_positive_dimension(self):
        with pytest.raises(PreconditionError):
            census.tau2(0, REAL)

    def test_tau2_rejects_rationals(self):
        with pytest.raises(UnsupportedFieldError):
            census.tau2(3, RAT)


class TestClassBounds:
    def test_closed_field(self):
        assert census.class_bounds(4, CLOSED) == census.ClassBounds(
            n=4, field=CLOSED, c1=2, c2=0, c3=1, c4=0
        )
        assert census.class_bounds(5, CLOSED).c1 == 2
        assert census.class_bounds(9, CLOSED).c1 == 4
        assert census.class_bounds(10, CLOSED).c1 == 5

    def test_real_examples(self):
        b4 = census.class_bounds(4, REAL)
        assert (b4.c1, b4.c2, b4.c3, b4.c4) == (14, 6, 1, 1)
        b6 = census.class_bounds(6, REAL)
        assert (b6.c1, b6.c2, b6.c3, b6.c4) == (37, 10, 1, 1)
        assert census.class_bounds(7, REAL).c1 == 52

    def test_finite_field_examples(self):
        b4 = census.class_bounds(4, F5)
        assert (b4.c1, b4.c2, b4.c3, b4.c4) == (7, 3, 1, 1)
        assert census.class_bounds(6, F5).c1 == 11
        # odd dimension: the generic summation gives 2n-2
        assert census.class_bounds(5, F5).c1 == 8
        assert census.class_bounds(7, F5).c1 == 12

    def test_padic_example(self):
        b = census.class_bounds(4, Q5)
        assert (b.c1, b.c2, b.c3, b.c4) == (60, 84, 1, 3)

    def test_odd_dimension_kills_types_2_3_4(self):
        for f in (CLOSED, REAL, F5, Q5):
            b = census.class_bounds(9, f)
            assert (b.c2, b.c3, b.c4) == (0, 0, 0)

    def test_real_closed_forms_match_summations(self):
        # class_bounds raises InternalError on any disagreement, so a
        # clean sweep is the assertion
        for n in range(3, 51):
            b = census.class_bounds(n, REAL)
            assert b.c1 == census.real_c1_closed_form(n)
            if n % 2 == 0:
                assert b.c2 == census.real_c2_closed_form(n)

    def test_dimension_gate(self):
        with pytest.raises(PreconditionError):
            census.class_bounds(2, REAL)


class TestTwoSquareRep:
    def test_examples(self):
        assert census.find_two_square_rep(2, 5) == (1, 1)
        assert census.find_two_square_rep(2, 3) == (1, 1)
        assert census.find_two_square_rep(3, 7) == (1, 3)


class TestFqRepresentatives:
    @pytest.mark.parametrize(
        "n,q,count",
        [(3, 3, 4), (3, 5, 4), (4, 3, 6), (4, 5, 6), (5, 7, 6), (6, 3, 8)],
    )
    def test_standard_counts(self, n, q, count):
        reps = census.fq_type1_representatives(n, q, "standard")
        assert reps.count == count
        assert len(reps.matrices) == count
        assert reps.duplicates == ()
        assert reps.verified_by == "isomorphy-module"

    def test_standard_contains_both_central_matrices(self):
        reps = census.fq_type1_representatives(4, 5, "standard")
        dom = GroundField.parse("Fp:5").domain()
        scalars = sorted(
            la.is_scalar_mat(dom, m)
            for m in reps.matrices
            if la.is_scalar_mat(dom, m) is not None
        )
        assert scalars == [1, 4]

    @pytest.mark.parametrize("n,q", [(3, 3), (3, 5), (5, 7)])
    def test_delta_odd_dimension_no_collisions(self, n, q):
        reps = census.fq_type1_representatives(n, q, "delta_twisted")
        assert reps.count == n + 1
        assert reps.duplicates == ()

    @pytest.mark.parametrize("n,q", [(4, 3), (4, 5), (6, 3), (6, 5)])
    def test_delta_even_dimension_collides_at_half(self, n, q):
        # the two families meet where the flipped space has half the
        # dimension, so the advertised n+2 overcounts by one there
        reps = census.fq_type1_representatives(n, q, "delta_twisted")
        assert reps.count == n + 2
        assert reps.duplicates == ((n // 2, n + 1),)
        assert any("double-counts" in note for note in reps.notes)

    def test_delta_form_carries_the_nonsquare(self):
        reps = census.fq_type1_representatives(4, 5, "delta_twisted")
        assert reps.form_diag == (1, 1, 1, 2)

    def test_f3_delta_falls_back_to_block_invariants(self):
        reps = census.fq_type1_representatives(5, 3, "delta_twisted")
        assert reps.verified_by == "block-invariants"
        assert reps.duplicates == ()

    def test_f5_delta_uses_isomorphy_module(self):
        reps = census.fq_type1_representatives(5, 5, "delta_twisted")
        assert reps.verified_by == "isomorphy-module"

    @pytest.mark.parametrize("variant", ["standard", "delta_twisted"])
    def test_matrices_are_orthogonal_involutions(self, variant):
        reps = census.fq_type1_representatives(4, 5, variant)
        field = GroundField.parse("Fp:5")
        ctx = FormContext.build(field, 4, list(reps.form_diag))
        dom = ctx.domain
        for m in reps.matrices:
            assert la.mat_mul(dom, m, m) == la.identity(dom, 4)
            gram = la.mat_mul(
                dom, la.transpose(m), la.mat_mul(dom, ctx.matrix, m)
            )
            assert gram == ctx.matrix

    def test_prime_power_census_only(self):
        reps = census.fq_type1_representatives(3, 9, "standard")
        assert reps.count == 4
        assert reps.matrices is None
        assert reps.verified_by is None
        assert any("census-only" in note for note in reps.notes)
        even = census.fq_type1_representatives(4, 25, "delta_twisted")
        assert even.count == 6
        assert even.matrices is None

    def test_input_gates(self):
        with pytest.raises(PreconditionError):
            census.fq_type1_representatives(2, 5)
        with pytest.raises(PreconditionError):
            census.fq_type1_representatives(4, 4)
        with pytest.raises(PreconditionError):
            census.fq_type1_representatives(4, 15)
        with pytest.raises(PreconditionError):
            census.fq_type1_representatives(4, 5, "twisted")


def _tail_invariants(field, p, tail):
    prod = Fraction(1)
    for t in tail:
        prod *= Fraction(t)
    cls = field.square_class(prod)
    c = hasse_symbol(tail, p, convention="jones") if tail else 1
    return cls, c


def _row_key(det_class, tail1, c1, tail2, c2):
    return (
        det_class,
        frozenset({(tuple(sorted(tail1)), c1), (tuple(sorted(tail2)), c2)}),
    )


def _published_rows(p, table):
    np_ = Fraction(least_nonresidue(p))
    sym = {"p": Fraction(p), "N": np_, "pN": Fraction(p) * np_}
    det = {"1": Fraction(1), **sym}
    out = set()
    for x1, x2, d, c1, c2 in table:
        out.add(_row_key(
            det[d],
            tuple(sym[t] for t in x1), c1,
            tuple(sym[t] for t in x2), c2,
        ))
    return out


class TestQpInvariantTable:
    def test_row_counts(self):
        assert len(census.qp_type1_invariant_table(5)) == 12
        assert len(census.qp_type1_invariant_table(13)) == 12
        assert len(census.qp_type1_invariant_table(3)) == 8
        assert len(census.qp_type1_invariant_table(7)) == 8

    @pytest.mark.parametrize("p", [3, 5, 7, 13])
    def test_rows_recompute_to_their_declared_invariants(self, p):
        field = GroundField.parse(f"Qp:{p}")
        for row in census.qp_type1_invariant_table(p):
            d1, c1 = _tail_invariants(field, p, row.x1_tail)
            d2, c2 = _tail_invariants(field, p, row.x2_tail)
            assert d1 == d2 == row.det_class
            assert (c1, c2) == (row.c1, row.c2)

    @pytest.mark.parametrize("p", [5, 13])
    def test_matches_published_table_when_minus_one_is_square(self, p):
        generated = {
            _row_key(r.det_class, r.x1_tail, r.c1, r.x2_tail, r.c2)
            for r in census.qp_type1_invariant_table(p)
        }
        assert generated == _published_rows(p, pub.QP_TABLE1)

    @pytest.mark.parametrize("p", [3, 7])
    def test_matches_published_table_when_minus_one_is_not(self, p):
        generated = {
            _row_key(r.det_class, r.x1_tail, r.c1, r.x2_tail, r.c2)
            for r in census.qp_type1_invariant_table(p)
        }
        assert generated == _published_rows(p, pub.QP_TABLE2)

    def test_realizability_when_minus_one_is_square(self):
        # identity-form congruence needs symbol +1, and the det factor
        # drops out, so exactly the mixed-symbol rows stay open
        rows = census.qp_type1_invariant_table(5)
        unknown = {(r.det_class, r.c1, r.c2) for r in rows
                   if r.realizable == "unknown"}
        assert unknown == {
            (Fraction(1), 1, -1), (Fraction(2), 1, -1),
            (Fraction(5), 1, -1), (Fraction(10), 1, -1),
        }

    def test_realizability_when_minus_one_is_not_square(self):
        # here (d, d)_p = -1 for d in {p, pN}, flipping the criterion
        rows = census.qp_type1_invariant_table(3)
        unknown = {(r.det_class, r.c1, r.c2) for r in rows
                   if r.realizable == "unknown"}
        assert unknown == {
            (Fraction(3), 1, 1), (Fraction(3), -1, -1),
            (Fraction(6), 1, 1), (Fraction(6), -1, -1),
        }

    def test_rejects_composite_modulus(self):
        with pytest.raises(PreconditionError):
            census.qp_type1_invariant_table(9)


class TestQ2InvariantCells:
    def test_every_pair_is_covered(self):
        cells = census.qp_type1_invariant_table(2)
        assert len(cells) == 16
        seen = {(c.det_class, c.hasse) for c in cells}
        assert seen == {
            (d, c) for d in Q2.square_class_reps() for c in (1, -1)
        }

    def test_cells_recompute_to_their_declared_invariants(self):
        for cell in census.qp_type1_invariant_table(2):
            d, c = _tail_invariants(Q2, 2, cell.tail)
            assert d == cell.det_class
            assert c == cell.hasse

    def test_identity_cell_and_its_twin(self):
        cells = {(c.det_class, c.hasse): c.tail
                 for c in census.qp_type1_invariant_table(2)}
        assert cells[(Fraction(1), 1)] == ()
        assert cells[(Fraction(1), -1)] == (Fraction(-1), Fraction(-1))

    def test_class_bound(self):
        assert census.q2_class_bound() == 24
        assert census.q2_class_bound() == pub.Q2_CLASS_BOUND
