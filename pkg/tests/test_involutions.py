"""Normalization and decomposition tests against the worked examples."""

from fractions import Fraction as F

import pytest

from soinv import _published as pub
from soinv import linalg as la
from soinv.errors import (
    IdentityAutomorphismError,
    NotAnInvolutionError,
    PreconditionError,
    UnfriendlyContextError,
)
from soinv.fields import GroundField, QuadExt
from soinv.forms import FormContext
from soinv.involutions import (
    classify_involution,
    decompose_type1,
    decompose_type2,
    decompose_type3,
    decompose_type4,
    normalize_inner,
)
from soinv.oracle import orthogonal_group


def ctx_q(n):
    return FormContext.build(GroundField.parse("Q"), n)


def ctx_fp(p, n, form="standard"):
    return FormContext.build(GroundField.parse(f"Fp:{p}"), n, form)


def frows(rows):
    return tuple(tuple(F(x) for x in row) for row in rows)


class TestNormalizeRejections:
    def test_scalar_is_identity_automorphism(self):
        ctx = ctx_q(3)
        with pytest.raises(IdentityAutomorphismError):
            normalize_inner(frows([[2, 0, 0], [0, 2, 0], [0, 0, 2]]), ctx)
        with pytest.raises(IdentityAutomorphismError):
            normalize_inner(la.identity(ctx.domain, 3), ctx)
        with pytest.raises(IdentityAutomorphismError):
            normalize_inner(
                la.mat_neg(ctx.domain, la.identity(ctx.domain, 3)), ctx
            )

    def test_singular(self):
        ctx = ctx_q(3)
        with pytest.raises(PreconditionError, match="singular"):
            normalize_inner(frows([[1, 0, 0], [0, 1, 0], [1, 1, 0]]), ctx)

    def test_wrong_shape(self):
        ctx = ctx_q(3)
        with pytest.raises(PreconditionError, match="shape"):
            normalize_inner(frows([[1, 0], [0, 1]]), ctx)

    def test_not_a_similitude(self):
        ctx = ctx_q(3)
        with pytest.raises(PreconditionError, match="similitude"):
            normalize_inner(frows([[1, 0, 0], [0, 2, 0], [0, 0, 3]]), ctx)

    def test_similitude_but_not_involution(self):
        # order-4 rotation: A^T A = I yet A^2 = diag(-1,-1,1) is not scalar
        ctx = ctx_q(3)
        with pytest.raises(NotAnInvolutionError):
            normalize_inner(frows([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]), ctx)

    def test_mixed_extension_entries(self):
        ctx = ctx_q(4)
        one = F(1)
        zero = F(0)
        rows = []
        for i in range(4):
            row = []
            for j in range(4):
                if i == j == 0:
                    row.append((one, one))
                else:
                    row.append((one if i == j else zero, zero))
            rows.append(tuple(row))
        with pytest.raises(PreconditionError, match="mix"):
            normalize_inner(tuple(rows), ctx, alpha=F(3))

    def test_pairs_without_alpha(self):
        ctx = ctx_q(3)
        a = tuple(
            tuple((F(1) if i == j else F(0), F(0)) for j in range(3))
            for i in range(3)
        )
        with pytest.raises(PreconditionError, match="alpha"):
            normalize_inner(a, ctx)

    def test_unfriendly_context_refused(self):
        # over F_3 the ratio of the two square classes has no friendly
        # witness, so any form mixing them is out of scope
        ctx = ctx_fp(3, 3, [1, 1, 2])
        assert not ctx.friendly
        with pytest.raises(UnfriendlyContextError):
            normalize_inner(
                tuple(
                    tuple(1 if i == j else 0 for j in range(3))
                    for i in range(3)
                ),
                ctx,
            )


class TestType1:
    def test_householder_reflection(self):
        """Reflection in the hyperplane of (1, 1, 0), odd n.

        The input has determinant -1, so normalization flips the sign to
        land in SO; the decomposition flips back to keep s <= t, which
        is why `negated` reads true.  The published worked version of
        this example lists X2 = diag(2, 1) from a hand-picked basis; the
        deterministic column choice here gives diag(2, 4), the same
        square classes.
        """
        ctx = ctx_q(3)
        a = frows([[0, -1, 0], [-1, 0, 0], [0, 0, 1]])
        inv, data = classify_involution(a, ctx)
        assert inv.inv_type == 1
        assert inv.alpha is None and inv.alpha_class is None
        assert inv.epsilon == 1
        assert inv.coeff == la.mat_neg(ctx.domain, a)
        assert (data.s, data.t, data.negated) == (1, 2, True)
        assert data.x1 == (F(2),)
        assert data.x2 == (F(2), F(4))
        assert data.x == frows([[1, -1, 0], [1, 1, 0], [0, 0, -2]])

    def test_odd_dimension_forced_into_so(self):
        ctx = ctx_q(3)
        inv = normalize_inner(
            frows([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]), ctx
        )
        assert inv.inv_type == 1
        assert inv.coeff == frows([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
        d = decompose_type1(inv)
        assert (d.s, d.t, d.negated) == (1, 2, True)
        assert d.x1 == (F(4),)
        assert d.x2 == (F(4), F(4))

    def test_diag_signature_no_negation(self):
        ctx = ctx_q(4)
        inv = normalize_inner(
            frows([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            ctx,
        )
        d = decompose_type1(inv)
        assert (d.s, d.t, d.negated) == (1, 3, False)
        assert d.x1 == (F(4),)

    def test_type1_over_formal_extension(self):
        """A nonsquare positive similitude factor over R.

        gamma = 2 cannot be folded into an exact rational, so the data
        carries alpha = 2 with a trivial class and the eigenbasis is
        computed over the formal extension by sqrt(2).
        """
        ctx = FormContext.build(GroundField.parse("R"), 4)
        a = frows(
            [[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]]
        )
        inv = normalize_inner(a, ctx)
        assert inv.inv_type == 1
        assert inv.alpha == F(2) and inv.alpha_class is None
        assert inv.scale == F(2)
        d = decompose_type1(inv)
        assert (d.s, d.t) == (2, 2)
        assert d.ext_alpha == F(2)


class TestType2:
    def test_rational_worked_example(self):
        """The alpha = 3 example over Q reproduces the printed data.

        The canonical eigenbasis of E(A, -1) comes out exactly as the
        printed v_1, v_2, hence X matches entry for entry, and the Gram
        blocks are X1 = diag(3/2, 3/2) (the printed version shows "3/3"
        there, a typo for 3/2) and X2 = diag(-1/2, 1/2).
        """
        ctx = ctx_q(4)
        inv = normalize_inner(pub.RAT2_COEFF, ctx, alpha=pub.RAT2_ALPHA)
        assert inv.inv_type == 2
        assert inv.alpha == F(3) and inv.alpha_class == F(3)
        assert inv.epsilon == 1
        assert inv.scale == F(1, 3)
        assert inv.coeff == pub.RAT2_COEFF
        d = decompose_type2(inv)
        assert d.x == pub.RAT2_X
        assert d.x1 == pub.RAT2_X1
        assert d.x2 == pub.RAT2_X2

    def test_rational_example_eigenvectors(self):
        ctx = ctx_q(4)
        inv = normalize_inner(pub.RAT2_COEFF, ctx, alpha=pub.RAT2_ALPHA)
        ext = QuadExt(ctx.domain, F(3))
        _, a, _ = inv.ambient()
        minus, _plus = la.eig_basis_order2(ext, a)
        rows, _ = la.reversed_rref(ext, tuple(tuple(v) for v in minus))
        assert la.vec_parts(ext, rows[0]) == pub.RAT2_V1
        assert la.vec_parts(ext, rows[1]) == pub.RAT2_V2

    def test_finite_worked_pair(self):
        """Both F_3 matrices of the worked pair classify as Type 2."""
        ctx = ctx_fp(3, 4)
        inv_a = normalize_inner(pub.FIN2_A_COEFF, ctx, alpha=2)
        assert inv_a.inv_type == 2
        assert inv_a.alpha == 2
        assert inv_a.scale == 2
        # the canonical representative absorbs the similitude factor:
        # the stored coefficient is 2x the printed one
        assert inv_a.coeff == tuple(
            tuple((2 * x) % 3 for x in row) for row in pub.FIN2_A_COEFF
        )
        d = decompose_type2(inv_a)
        assert d.x1 == (2, 2)
        assert d.x2 == (2, 2)
        inv_b = normalize_inner(pub.FIN2_B_COEFF, ctx, alpha=2)
        assert inv_b.inv_type == 2
        assert inv_b.alpha == 2
        db = decompose_type2(inv_b)
        assert db.x1 == (1, 1)
        assert db.x2 == (0, 0)

    def test_printed_finite_gram_identities(self):
        # the printed X and Y bases satisfy the Gram claims made for
        # them even though this package's deterministic basis differs
        dom = ctx_fp(3, 4).domain
        m = la.identity(dom, 4)
        yty = la.gram(dom, m, la.mat_cols(pub.FIN2_Y))
        assert la.diag_of(yty) == pub.FIN2_YTY_DIAG
        assert la.is_diagonal(dom, yty)

    def test_real_indefinite_type2(self):
        """epsilon = +1 with alpha = -1 needs an indefinite real form."""
        ctx = FormContext.build(
            GroundField.parse("R"), 4, [1, 1, -1, -1]
        )
        b = frows(
            [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
        )
        inv = normalize_inner(b, ctx)
        assert inv.inv_type == 2
        assert inv.alpha == F(-1) and inv.alpha_class == F(-1)
        d = decompose_type2(inv)
        assert len(d.x1) == 2


class TestType3:
    def test_real_rotation_example(self):
        """The block rotation over R, published with basis e4, e2, e3, e1.

        The deterministic seeds give the pairs (e1, -e2), (e3, -e4)
        instead; both satisfy U^T U = I_4 and the same block model, so
        the printed claims are checked for the printed basis separately.
        """
        ctx = FormContext.build(GroundField.parse("R"), 4)
        inv, d = classify_involution(pub.REAL3_A, ctx)
        assert inv.inv_type == 3
        assert inv.alpha is None
        assert d.case == "i_not_in_k"
        assert d.block == (F(1), F(1))
        assert tuple(la.mat_cols(d.x)) == (
            (F(1), F(0), F(0), F(0)),
            (F(0), F(0), F(1), F(0)),
            (F(0), F(-1), F(0), F(0)),
            (F(0), F(0), F(0), F(-1)),
        )

    def test_real_rotation_printed_basis(self):
        dom = FormContext.build(GroundField.parse("R"), 4).domain
        m = la.identity(dom, 4)
        g = la.gram(dom, m, la.mat_cols(pub.REAL3_U))
        assert g == la.identity(dom, 4)
        k = frows(
            [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
        )
        lhs = la.mat_mul(dom, pub.REAL3_A, pub.REAL3_U)
        rhs = la.mat_mul(dom, pub.REAL3_U, k)
        assert la.mat_eq(dom, lhs, rhs)

    def test_isotropic_eigenbasis_when_i_exists(self):
        """Over F_5 the eigenvalues +-i live in the field itself."""
        ctx = ctx_fp(5, 4)
        j = tuple(
            tuple(x % 5 for x in row)
            for row in [[0, 1, 0, 0], [-1, 0, 0, 0],
                        [0, 0, 0, 1], [0, 0, -1, 0]]
        )
        inv, d = classify_involution(j, ctx)
        assert inv.inv_type == 3
        assert d.case == "i_in_k"
        assert d.i_value == 2
        assert d.block == (2, 2)
        # columns split into E(A, -i) then E(A, i)
        assert tuple(la.mat_cols(d.x)) == (
            (3, 4, 0, 0), (0, 0, 3, 4), (2, 4, 0, 0), (0, 0, 2, 4)
        )

    def test_paired_construction_when_i_absent_mod_p(self):
        ctx = ctx_fp(3, 4)
        j = tuple(
            tuple(x % 3 for x in row)
            for row in [[0, 1, 0, 0], [-1, 0, 0, 0],
                        [0, 0, 0, 1], [0, 0, -1, 0]]
        )
        inv, d = classify_involution(j, ctx)
        assert inv.inv_type == 3
        assert d.case == "i_not_in_k"
        assert d.block == (1, 1)


class TestType4:
    def test_finite_worked_example(self):
        """The F_3 example: Gram diag(1, 1, 2, 2), sqrt(-alpha) in k."""
        ctx = ctx_fp(3, 4)
        inv = normalize_inner(pub.FIN4_COEFF, ctx, alpha=pub.FIN4_ALPHA)
        assert inv.inv_type == 4
        assert inv.alpha == 2
        assert inv.epsilon == -1
        assert inv.scale == 2
        d = decompose_type4(inv)
        assert d.case == "sqrt_minus_alpha_in_k"
        assert d.u1 == (1, 1)
        g = la.gram(ctx.domain, ctx.matrix, la.mat_cols(d.u))
        assert la.diag_of(g) == pub.FIN4_XTX_DIAG
        assert tuple(la.mat_cols(d.u)) == (
            (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 1, 2)
        )

    def test_printed_finite_basis_gram(self):
        dom = ctx_fp(3, 4).domain
        g = la.gram(dom, la.identity(dom, 4), la.mat_cols(pub.FIN4_X))
        assert la.is_diagonal(dom, g)
        assert la.diag_of(g) == pub.FIN4_XTX_DIAG

    def test_rational_worked_example(self):
        """The alpha = 2 example over Q: Gram diag(1, 1, 1/2, 1/2)."""
        ctx = ctx_q(4)
        inv = normalize_inner(pub.RAT4_COEFF, ctx, alpha=pub.RAT4_ALPHA)
        assert inv.inv_type == 4
        assert inv.alpha == F(2)
        assert inv.scale == F(1, 2)
        assert inv.coeff == pub.RAT4_COEFF
        d = decompose_type4(inv)
        assert d.case == "not_in_k"
        assert d.u1 == (F(1), F(1))
        g = la.gram(ctx.domain, ctx.matrix, la.mat_cols(d.u))
        assert la.diag_of(g) == pub.RAT4_UTU_DIAG
        assert tuple(la.mat_cols(d.u)) == (
            (F(1), F(0), F(0), F(0)),
            (F(0), F(1), F(0), F(0)),
            (F(0), F(0), F(-1, 2), F(-1, 2)),
            (F(0), F(0), F(-1, 2), F(1, 2)),
        )

    def test_printed_rational_basis_coherent_up_to_sign(self):
        # the printed pairs use b_j = (-B) a_j, the other coefficient
        # sign for the same inner automorphism; their Gram claim holds
        ctx = ctx_q(4)
        dom = ctx.domain
        g = la.gram(dom, ctx.matrix, la.mat_cols(pub.RAT4_U))
        assert la.is_diagonal(dom, g)
        assert la.diag_of(g) == pub.RAT4_UTU_DIAG
        cols = la.mat_cols(pub.RAT4_U)
        b = la.mat_neg(dom, pub.RAT4_COEFF)
        for j in range(2):
            assert la.mat_vec(dom, b, cols[j]) == cols[2 + j]

    def test_real_indefinite_type4(self):
        ctx = FormContext.build(
            GroundField.parse("R"), 4, [1, 1, -1, -1]
        )
        c = frows(
            [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
        )
        inv = normalize_inner(c, ctx)
        assert inv.inv_type == 4
        assert inv.alpha == F(-1)
        d = decompose_type4(inv)
        assert d.case == "sqrt_minus_alpha_in_k"
        assert d.u1 == (F(1), F(1))


class TestPublishedTable:
    """The SO(4, F_p) example table, recomputed entry by entry."""

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_type2_entries_normalize(self, p):
        alpha, coeff = pub.SO_FP_TYPE2[p]
        ctx = ctx_fp(p, 4)
        inv = normalize_inner(coeff, ctx, alpha=alpha)
        assert inv.inv_type == 2
        assert inv.alpha == alpha

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_type2_entry_scales(self, p):
        # p = 3 squares to its own similitude factor as printed; the
        # p = 5 and p = 7 entries carry redundant scalar factors that
        # normalization strips (similitude factors 2 and 3)
        alpha, coeff = pub.SO_FP_TYPE2[p]
        inv = normalize_inner(coeff, ctx_fp(p, 4), alpha=alpha)
        assert inv.scale == {3: 2, 5: 2, 7: 3}[p]

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_type4_entries_are_not_involutions(self, p):
        # none of the printed Type 4 matrices squares to a scalar; the
        # verification command reports these against the discrepancy
        # manifest, and the oracle supplies genuine replacements
        alpha, coeff = pub.SO_FP_TYPE4[p]
        with pytest.raises(NotAnInvolutionError):
            normalize_inner(coeff, ctx_fp(p, 4), alpha=alpha)


class TestInvariants:
    def test_renormalizing_output_is_stable(self):
        ctx = ctx_q(4)
        for coeff, alpha in [
            (pub.RAT2_COEFF, pub.RAT2_ALPHA),
            (pub.RAT4_COEFF, pub.RAT4_ALPHA),
        ]:
            inv = normalize_inner(coeff, ctx, alpha=alpha)
            again = normalize_inner(inv.coeff, ctx, alpha=inv.alpha)
            assert again.inv_type == inv.inv_type
            assert again.alpha == inv.alpha
            assert again.epsilon == inv.epsilon
            assert again.coeff in (
                inv.coeff, la.mat_neg(ctx.domain, inv.coeff)
            )

    def test_renormalizing_base_output_is_stable(self):
        ctx = ctx_q(3)
        inv = normalize_inner(
            frows([[0, -1, 0], [-1, 0, 0], [0, 0, 1]]), ctx
        )
        again = normalize_inner(inv.coeff, ctx)
        assert again.coeff == inv.coeff
        assert again.inv_type == 1

    def test_embedded_base_matrix_with_alpha(self):
        # extension-pair entries whose omega parts all vanish take the
        # plain base route; the alpha tag is irrelevant noise then
        ctx = ctx_q(3)
        plain = frows([[0, -1, 0], [-1, 0, 0], [0, 0, 1]])
        paired = tuple(
            tuple((x, F(0)) for x in row) for row in plain
        )
        inv = normalize_inner(paired, ctx, alpha=F(3))
        ref = normalize_inner(plain, ctx)
        assert inv.coeff == ref.coeff
        assert inv.inv_type == ref.inv_type == 1

    def test_conjugation_preserves_type_and_alpha(self):
        ctx = ctx_fp(3, 4)
        dom = ctx.domain
        q = tuple(
            tuple(x % 3 for x in row)
            for row in [[1, 0, 0, 0], [0, 1, 0, 0],
                        [0, 0, 1, 0], [0, 0, 0, 2]]
        )
        qi = la.inverse(dom, q)
        for coeff, alpha in [
            (pub.FIN2_A_COEFF, 2),
            (pub.FIN4_COEFF, 2),
        ]:
            inv = normalize_inner(coeff, ctx, alpha=alpha)
            moved = la.mat_mul(dom, qi, la.mat_mul(dom, inv.coeff, q))
            conj = normalize_inner(moved, ctx, alpha=inv.alpha)
            assert conj.inv_type == inv.inv_type
            assert conj.alpha == inv.alpha
            assert conj.epsilon == inv.epsilon

    def test_inner_automorphism_trivial_iff_scalar(self):
        """Exhaustively over O(3, F_3): Inn_A = id exactly for A = +-I."""
        group = orthogonal_group(3, 3, (1, 1, 1))
        elements = [tuple(tuple(r) for r in g) for g in group]
        dom = ctx_fp(3, 3).domain
        scalars = 0
        for a in elements:
            commutes = all(
                la.mat_eq(dom, la.mat_mul(dom, a, g), la.mat_mul(dom, g, a))
                for g in elements
            )
            central = la.is_scalar_mat(dom, a) is not None
            assert commutes == central
            scalars += central
        assert scalars == 2

    def test_classify_dispatch(self):
        ctx = ctx_q(4)
        inv, data = classify_involution(
            pub.RAT4_COEFF, ctx, alpha=pub.RAT4_ALPHA
        )
        assert inv.inv_type == 4
        assert data.alpha == inv.alpha
        with pytest.raises(PreconditionError):
            decompose_type2(inv)
        with pytest.raises(PreconditionError):
            decompose_type1(inv)
        with pytest.raises(PreconditionError):
            decompose_type3(inv)
