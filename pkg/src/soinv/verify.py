"""Recompute every concrete claim of the published worked examples.

The data in `_published` is a verbatim transcript of the source text's
examples and tables.  This module re-derives each claim with the
package's own exact arithmetic and reports one CheckResult per claim.
A few printed identities are genuinely wrong (transcription slips in
the source, not in this package); those checks fail by design and are
listed in data/known_discrepancies.json with an explanation of what the
correct statement is.  `summarize` folds the manifest into the results:
a failing check that the manifest lists is an expected discrepancy, a
failing check it does not list is a real failure, and the exit code is
zero exactly when there are no real failures.

Nothing in here trusts the constructions it is checking: Gram matrices,
eigenvectors, conjugators and congruences are all multiplied out from
the printed data, and the group-level claims are settled by the
brute-force oracle.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb

from . import _published as pub
from . import census
from . import linalg as la
from . import oracle
from .errors import InternalError, NotAnInvolutionError
from .fields import (
    GroundField,
    PrimeField,
    QuadExt,
    Rationals,
    hasse_symbol,
    hilbert_symbol,
    least_nonresidue,
)
from .forms import FormContext
from .involutions import normalize_inner

F = Fraction
QQ = Rationals()


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one recomputed claim."""

    check_id: str
    description: str
    passed: bool
    computed: str
    printed: str


def _check(out, check_id, description, ok, computed, printed):
    out.append(CheckResult(check_id, description, bool(ok), computed, printed))


# -- small matrix helpers ----------------------------------------------------


def _omega_mult(ext, coeff):
    """sqrt(alpha) * coeff as a matrix over the extension."""
    return la.mat_scale(ext, ext.omega(), la.mat_embed(ext, coeff))


def _conjugate(dom, x, m):
    return la.mat_mul(dom, x, la.mat_mul(dom, m, la.inverse(dom, x)))


def _anti_blocks(dom, k, upper, lower):
    """[[0, upper*I_k], [lower*I_k, 0]] as a 2k x 2k matrix."""
    rows = []
    for i in range(k):
        row = [dom.zero()] * (2 * k)
        row[k + i] = upper
        rows.append(tuple(row))
    for i in range(k):
        row = [dom.zero()] * (2 * k)
        row[i] = lower
        rows.append(tuple(row))
    return tuple(rows)


def _ext_vec(ext, base_part, omega_part):
    return tuple(zip(base_part, omega_part))


def _conj_vec(ext, v):
    return tuple(ext.conj(x) for x in v)


def _eigenvalue_sign(ext, a, v):
    """+1 or -1 when a*v = (+-omega)*v, None otherwise."""
    got = la.mat_vec(ext, a, v)
    if la.vec_eq(ext, got, la.vec_scale(ext, ext.omega(), v)):
        return 1
    if la.vec_eq(ext, got, la.vec_scale(ext, ext.neg(ext.omega()), v)):
        return -1
    return None


def _is_isometric_involution(dom, m, a):
    aa = la.mat_mul(dom, a, a)
    gram = la.mat_mul(dom, la.transpose(a), la.mat_mul(dom, m, a))
    return la.mat_eq(dom, aa, la.identity(dom, len(a))) and la.mat_eq(
        dom, gram, m
    )


# -- worked example: type 2 over Q, alpha = 3 --------------------------------


def checks_rational_type2():
    out = []
    ctx = FormContext.build("Q", 4, "standard")
    ext = QuadExt(QQ, pub.RAT2_ALPHA)
    a = _omega_mult(ext, pub.RAT2_COEFF)
    ident = la.identity(ext, 4)

    inv = normalize_inner(pub.RAT2_COEFF, ctx, alpha=pub.RAT2_ALPHA)
    _check(
        out, "rat2-classification",
        "A = (sqrt(3)/3) M classifies as type 2 in square class 3",
        inv.inv_type == 2 and inv.alpha_class == F(3) and inv.epsilon == 1,
        f"type {inv.inv_type}, class {inv.alpha_class}, epsilon {inv.epsilon}",
        "type 2, alpha = 3",
    )

    sym = la.mat_eq(ext, a, la.transpose(a))
    orth = la.mat_eq(ext, la.mat_mul(ext, la.transpose(a), a), ident)
    sq = la.mat_eq(ext, la.mat_mul(ext, a, a), ident)
    _check(
        out, "rat2-involution",
        "A is symmetric, orthogonal and squares to I over Q[sqrt(3)]",
        sym and orth and sq,
        f"A^T = A: {sym}, A^T A = I: {orth}, A^2 = I: {sq}",
        "a symmetric orthogonal involution",
    )

    v1 = _ext_vec(ext, *pub.RAT2_V1)
    v2 = _ext_vec(ext, *pub.RAT2_V2)
    minus, _plus = la.eig_basis_order2(ext, a)
    neg_one = ext.neg(ext.one())
    in_minus = all(
        la.vec_eq(ext, la.mat_vec(ext, a, v), la.vec_scale(ext, neg_one, v))
        for v in (v1, v2)
    )
    perp = ext.is_zero(la.bilin(ext, ident, v1, v2))
    conj_plus = all(
        la.vec_eq(ext, la.mat_vec(ext, a, _conj_vec(ext, v)), _conj_vec(ext, v))
        for v in (v1, v2)
    )
    _check(
        out, "rat2-eigenspace",
        "E(A, -1) is 2-dimensional with the printed orthogonal basis",
        len(minus) == 2 and in_minus and perp and conj_plus,
        f"dim {len(minus)}; A v_j = -v_j: {in_minus}; beta(v_1, v_2) = 0: "
        f"{perp}; conjugates are +1 eigenvectors: {conj_plus}",
        "v_1, v_2 span E(A, -1), pairwise orthogonal",
    )

    xtx = la.mat_mul(QQ, la.transpose(pub.RAT2_X), pub.RAT2_X)
    head = pub.RAT2_CORRECTED_XTX_DIAG_HEAD
    corrected = tuple(
        tuple(
            head if (i == j and i < 2) else pub.RAT2_XTX_REST[i][j]
            for j in range(4)
        )
        for i in range(4)
    )
    x1 = tuple(xtx[i][i] for i in range(2))
    x2 = tuple(xtx[i][i + 2] for i in range(2))
    tail = tuple(xtx[i][i] for i in range(2, 4))
    block_identity = tail == tuple(x / 3 for x in x1)
    _check(
        out, "rat2-gram-blocks",
        "X^T X matches the printed matrix up to the corrected 3/2 heads",
        la.mat_eq(QQ, xtx, corrected)
        and x1 == pub.RAT2_X1 and x2 == pub.RAT2_X2 and block_identity,
        f"X1 = diag{x1}, X2 = diag{x2}, tail block = X1/3: {block_identity}",
        "blocks [[X1, X2], [X2, X1/3]] with the printed X2 and off-blocks",
    )

    mid = _anti_blocks(QQ, 2, F(1), F(3))
    recon = la.mat_scale(
        ext, (F(0), F(-1, 3)),
        la.mat_embed(ext, _conjugate(QQ, pub.RAT2_X, mid)),
    )
    _check(
        out, "rat2-reconstruction",
        "A = -(sqrt(3)/3) X [[0, I], [3I, 0]] X^-1 holds as printed",
        la.mat_eq(ext, recon, a),
        "identity verified exactly",
        "A = -(sqrt(3)/3) X [[0, I], [3I, 0]] X^-1",
    )

    printed = tuple(
        tuple(
            pub.RAT2_PRINTED_XTX_DIAG_HEAD
            if (i == j and i < 2) else pub.RAT2_XTX_REST[i][j]
            for j in range(4)
        )
        for i in range(4)
    )
    _check(
        out, "rat2-printed-gram-head",
        "the printed X^T X with 3/3 heads equals the recomputed Gram matrix",
        la.mat_eq(QQ, xtx, printed),
        "leading diagonal entries recompute to 3/2",
        "leading diagonal entries printed as 3/3",
    )
    return out


# -- worked example: the type 2 pair over F_3 --------------------------------


def checks_f3_pair():
    out = []
    p = pub.FIN2_P
    f3 = PrimeField(p)
    ctx = FormContext.build(f"Fp:{p}", 4, "standard")
    ext = QuadExt(f3, pub.FIN2_ALPHA)
    i9 = ext.omega()
    a = _omega_mult(ext, pub.FIN2_A_COEFF)
    b = _omega_mult(ext, pub.FIN2_B_COEFF)
    ident9 = la.identity(ext, 4)

    inv_a = normalize_inner(pub.FIN2_A_COEFF, ctx, alpha=pub.FIN2_ALPHA)
    inv_b = normalize_inner(pub.FIN2_B_COEFF, ctx, alpha=pub.FIN2_ALPHA)
    genuine = all(
        la.mat_eq(ext, la.mat_mul(ext, m, m), ident9)
        and la.mat_eq(ext, la.mat_mul(ext, la.transpose(m), m), ident9)
        for m in (a, b)
    )
    _check(
        out, "f3-pair-classification",
        "A = i C and B = i D are both type 2 involutions in class 2",
        genuine
        and inv_a.inv_type == 2 and inv_b.inv_type == 2
        and inv_a.alpha_class == 2 and inv_b.alpha_class == 2,
        f"A: type {inv_a.inv_type} class {inv_a.alpha_class}; "
        f"B: type {inv_b.inv_type} class {inv_b.alpha_class}",
        "two type 2 involutions, alpha = 2",
    )

    xtx = la.mat_mul(f3, la.transpose(pub.FIN2_X), pub.FIN2_X)
    yty = la.mat_mul(f3, la.transpose(pub.FIN2_Y), pub.FIN2_Y)
    want_xtx = ((1, 0, 2, 0), (0, 1, 0, 2), (2, 0, 2, 0), (0, 2, 0, 2))
    want_yty = la.diag_mat(f3, pub.FIN2_YTY_DIAG)
    _check(
        out, "f3-pair-gram-blocks",
        "X^T X = [[I, 2I], [2I, 2I]] and Y^T Y = diag(1, 1, 2, 2)",
        la.mat_eq(f3, xtx, want_xtx) and la.mat_eq(f3, yty, want_yty),
        f"X^T X = {xtx}, Y^T Y = {yty}",
        "the two printed Gram matrices",
    )

    x9 = la.mat_embed(ext, pub.FIN2_X)
    y9 = la.mat_embed(ext, pub.FIN2_Y)
    j9 = la.mat_embed(ext, pub.FIN2_J)
    right_a = la.mat_eq(ext, la.mat_scale(ext, i9, _conjugate(ext, x9, j9)), a)
    right_b = la.mat_eq(ext, la.mat_scale(ext, i9, _conjugate(ext, y9, j9)), b)
    _check(
        out, "f3-pair-reconstruction",
        "A = i X J X^-1 and B = i Y J Y^-1 with the printed X, Y, J",
        right_a and right_b,
        f"A: {right_a}, B: {right_b}",
        "both factorizations through J = [[0, I], [2I, 0]]",
    )

    xinv = la.inverse(ext, x9)
    yinv = la.inverse(ext, y9)
    asis_a = la.mat_eq(
        ext,
        la.mat_scale(ext, i9, la.mat_mul(ext, xinv, la.mat_mul(ext, j9, x9))),
        a,
    )
    asis_b = la.mat_eq(
        ext,
        la.mat_scale(ext, i9, la.mat_mul(ext, yinv, la.mat_mul(ext, j9, y9))),
        b,
    )
    _check(
        out, "f3-pair-reconstruction-as-printed",
        "the printed order A = i X^-1 J X (and B likewise) recomputes",
        asis_a and asis_b,
        f"A as printed: {asis_a}, B as printed: {asis_b}; both hold with "
        "the inverse moved to the right factor",
        "A = i X^-1 J X and B = i Y^-1 J Y",
    )

    q = pub.FIN2_Q
    q_orth = la.mat_eq(
        f3, la.mat_mul(f3, la.transpose(q), q), la.identity(f3, 4)
    )
    q_det = la.det(f3, q)
    q9 = la.mat_embed(ext, q)
    conj_ok = la.mat_eq(
        ext, la.mat_mul(ext, la.inverse(ext, q9), la.mat_mul(ext, a, q9)), b
    )
    _check(
        out, "f3-pair-conjugator",
        "the printed Q lies in O \\ SO and conjugates A to B",
        q_orth and q_det != 1 and conj_ok,
        f"Q^T Q = I: {q_orth}, det Q = {q_det}, Q^-1 A Q = B: {conj_ok}",
        "Q in O(4, F_3) \\ SO(4, F_3) with Q^-1 A Q = B",
    )

    r = pub.FIN2_R
    cong = la.mat_eq(
        f3, la.mat_mul(f3, la.transpose(r), la.mat_mul(f3, xtx, r)), yty
    )
    _check(
        out, "f3-pair-congruence",
        "the printed R satisfies the isomorphy condition "
        "R^T (X^T X) R = Y^T Y",
        cong,
        "congruence verified exactly",
        "R assembled from R1 = I, R2 = [[1, 1], [2, 1]]",
    )

    cong_asis = la.mat_eq(
        f3, la.mat_mul(f3, la.transpose(r), la.mat_mul(f3, yty, r)), xtx
    )
    _check(
        out, "f3-pair-congruence-as-printed",
        "the printed orientation R^T (Y^T Y) R = X^T X recomputes",
        cong_asis,
        "fails; the congruence holds with X and Y exchanged",
        "R^T (Y^T Y) R = X^T X",
    )

    mdiag = tuple([1] * 4)
    w = oracle.conjugate_in_group(
        4, p, mdiag, pub.FIN2_A_COEFF, pub.FIN2_B_COEFF,
        det_value=1, allow_negation=True,
    )
    _check(
        out, "f3-pair-so-separation",
        "no element of SO(4, F_3) conjugates A to B (exhaustive sweep)",
        w is None,
        "no conjugator found over all 576 special elements",
        "the pair is isomorphic in O but not in SO",
    )

    sample = pub.FIN2_COMMUTING_SAMPLE
    c = pub.FIN2_A_COEFF
    sample_comm = oracle.mat_mul_p(sample, c, p) == oracle.mat_mul_p(c, sample, p)
    sample_orth = la.mat_eq(
        f3, la.mat_mul(f3, la.transpose(sample), sample), la.identity(f3, 4)
    )
    group = oracle.orthogonal_group(4, p, mdiag)
    commuting = [
        g for g in group
        if oracle.mat_mul_p(g, c, p) == oracle.mat_mul_p(c, g, p)
    ]
    dets = {oracle.det_p(g, p) for g in commuting}
    _check(
        out, "f3-pair-centralizer",
        "every orthogonal matrix commuting with A's coefficient has det 1",
        sample_comm and sample_orth and len(group) == 1152 and dets == {1},
        f"sample commutes: {sample_comm}; {len(commuting)} of {len(group)} "
        f"group elements commute, determinants {sorted(dets)}",
        "the centralizer of A meets only SO, so Q cannot be repaired",
    )
    return out


# -- worked example: type 3 over R -------------------------------------------


def checks_real_type3():
    out = []
    a = pub.REAL3_A
    ident = la.identity(QQ, 4)
    sq_neg = la.mat_eq(QQ, la.mat_mul(QQ, a, a), la.mat_neg(QQ, ident))
    skew = la.mat_eq(QQ, la.transpose(a), la.mat_neg(QQ, a))
    orth = la.mat_eq(QQ, la.mat_mul(QQ, la.transpose(a), a), ident)
    _check(
        out, "real3-involution",
        "A is skew, orthogonal and squares to -I",
        sq_neg and skew and orth,
        f"A^2 = -I: {sq_neg}, A^T = -A: {skew}, A^T A = I: {orth}",
        "a skew orthogonal matrix of order 4",
    )

    ctx = FormContext.build("R", 4, "standard")
    inv = normalize_inner(a, ctx)
    _check(
        out, "real3-classification",
        "the block rotation classifies as type 3",
        inv.inv_type == 3 and inv.epsilon == -1,
        f"type {inv.inv_type}, epsilon {inv.epsilon}",
        "type 3 (A^2 = -I, trivial class)",
    )

    ext = QuadExt(QQ, F(-1))
    ai = la.mat_embed(ext, a)
    v1 = _ext_vec(ext, (F(0), F(0), F(0), F(1)), (F(0), F(0), F(1), F(0)))
    v2 = _ext_vec(ext, (F(0), F(1), F(0), F(0)), (F(1), F(0), F(0), F(0)))
    s1 = _eigenvalue_sign(ext, ai, v1)
    s2 = _eigenvalue_sign(ext, ai, v2)
    c1 = _eigenvalue_sign(ext, ai, _conj_vec(ext, v1))
    c2 = _eigenvalue_sign(ext, ai, _conj_vec(ext, v2))
    _check(
        out, "real3-eigenvectors",
        "e_4 + i e_3 and e_2 + i e_1 share an eigenvalue in {i, -i}, "
        "their conjugates the other",
        s1 is not None and s1 == s2 and c1 == c2 == -s1,
        f"eigenvalues {s1}i, {s2}i; conjugates {c1}i, {c2}i",
        "a conjugate pair of 2-dimensional eigenspaces",
    )

    utu = la.mat_mul(QQ, la.transpose(pub.REAL3_U), pub.REAL3_U)
    _check(
        out, "real3-gram",
        "U^T U = I_4 for the printed basis pairs",
        la.mat_eq(QQ, utu, ident),
        f"U^T U = {utu}",
        "the identity Gram matrix",
    )

    mid = _anti_blocks(QQ, 2, F(-1), F(1))
    _check(
        out, "real3-reconstruction",
        "A = U [[0, -I], [I, 0]] U^-1 holds as printed",
        la.mat_eq(QQ, _conjugate(QQ, pub.REAL3_U, mid), a),
        "identity verified exactly",
        "A = U [[0, -I], [I, 0]] U^-1",
    )
    return out


# -- worked example: type 4 over F_3 -----------------------------------------


def checks_f3_type4():
    out = []
    p = pub.FIN4_P
    f3 = PrimeField(p)
    ctx = FormContext.build(f"Fp:{p}", 4, "standard")
    ext = QuadExt(f3, pub.FIN4_ALPHA)
    i9 = ext.omega()
    c = pub.FIN4_COEFF
    a = _omega_mult(ext, c)
    ident9 = la.identity(ext, 4)

    sq_neg = la.mat_eq(
        ext, la.mat_mul(ext, a, a), la.mat_neg(ext, ident9)
    )
    orth = la.mat_eq(ext, la.mat_mul(ext, la.transpose(a), a), ident9)
    inv = normalize_inner(c, ctx, alpha=pub.FIN4_ALPHA)
    _check(
        out, "f3-type4-classification",
        "A = i C is an orthogonal matrix with A^2 = -I, type 4 in class 2",
        sq_neg and orth and inv.inv_type == 4 and inv.alpha_class == 2,
        f"A^2 = -I: {sq_neg}, A^T A = I: {orth}, "
        f"type {inv.inv_type}, class {inv.alpha_class}",
        "type 4, alpha = 2",
    )

    vs = [tuple(ext.embed(x) for x in v) for v in pub.FIN4_V]
    signs = [_eigenvalue_sign(ext, a, v) for v in vs]
    _check(
        out, "f3-type4-eigenvectors",
        "v_1, v_2 share an eigenvalue in {i, -i}, v_3, v_4 the conjugate",
        None not in signs and signs[0] == signs[1] == -signs[2]
        and signs[2] == signs[3],
        f"eigenvalues {signs[0]}i, {signs[1]}i, {signs[2]}i, {signs[3]}i",
        "v_1, v_2 against v_3, v_4 as a conjugate pair of eigenbases",
    )

    cols = la.mat_cols(pub.FIN4_X)
    pairs_ok = all(
        la.vec_eq(f3, la.mat_vec(f3, c, cols[j]), cols[j + 2])
        for j in range(2)
    )
    _check(
        out, "f3-type4-basis-pairs",
        "the printed pairs satisfy b_j = (1/sqrt(2)) A a_j, i.e. b_j = C a_j",
        pairs_ok,
        f"C a_j = b_j for j = 1, 2: {pairs_ok}",
        "hyperbolic-style pairs following the decomposition convention",
    )

    xtx = la.mat_mul(f3, la.transpose(pub.FIN4_X), pub.FIN4_X)
    want = la.diag_mat(f3, pub.FIN4_XTX_DIAG)
    tail_is_scaled_head = all(
        xtx[i + 2][i + 2] == f3.mul(f3.inv(pub.FIN4_ALPHA), xtx[i][i])
        for i in range(2)
    )
    _check(
        out, "f3-type4-gram",
        "X^T X = diag(1, 1, 2, 2) with tail block (1/2) * head block",
        la.mat_eq(f3, xtx, want) and tail_is_scaled_head,
        f"X^T X = {xtx}",
        "diag(1, 1, 2, 2)",
    )

    mid = _anti_blocks(f3, 2, 1, 1)
    recon = la.mat_scale(
        ext, i9, la.mat_embed(ext, _conjugate(f3, pub.FIN4_X, mid))
    )
    _check(
        out, "f3-type4-reconstruction",
        "A = i X [[0, I], [I, 0]] X^-1, the general identity at alpha = 2",
        la.mat_eq(ext, recon, a),
        "identity verified exactly (over F_3, -alpha = 1 and "
        "-(sqrt(alpha)/alpha) = i)",
        "the decomposition through the printed X",
    )

    neg_i = ext.neg(i9)
    mid_printed = tuple(
        tuple(
            ext.one() if (i < 2 and j == i + 2)
            else (neg_i if (i >= 2 and j == i - 2) else ext.zero())
            for j in range(4)
        )
        for i in range(4)
    )
    x9 = la.mat_embed(ext, pub.FIN4_X)
    recon_printed = la.mat_scale(ext, neg_i, _conjugate(ext, x9, mid_printed))
    _check(
        out, "f3-type4-reconstruction-as-printed",
        "the printed display with mixed i entries recomputes",
        la.mat_eq(ext, recon_printed, a),
        "fails; the middle factor is rational throughout, "
        "[[0, I], [I, 0]] with outer coefficient i",
        "A = -i X [[0, 0, 1, 0], [0, 0, 0, 1], [-i, 0, 0, 0], "
        "[0, -i, 0, 0]] X^-1",
    )
    return out


# -- worked example: type 4 over Q, alpha = 2 --------------------------------


def checks_rational_type4():
    out = []
    ctx = FormContext.build("Q", 4, "standard")
    ext = QuadExt(QQ, pub.RAT4_ALPHA)
    m = pub.RAT4_INT
    a = _omega_mult(ext, pub.RAT4_COEFF)
    ident = la.identity(ext, 4)

    sq_neg = la.mat_eq(ext, la.mat_mul(ext, a, a), la.mat_neg(ext, ident))
    orth = la.mat_eq(ext, la.mat_mul(ext, la.transpose(a), a), ident)
    inv = normalize_inner(pub.RAT4_COEFF, ctx, alpha=pub.RAT4_ALPHA)
    _check(
        out, "rat4-classification",
        "A = (sqrt(2)/2) M is orthogonal with A^2 = -I, type 4 in class 2",
        sq_neg and orth and inv.inv_type == 4 and inv.alpha_class == F(2),
        f"A^2 = -I: {sq_neg}, A^T A = I: {orth}, "
        f"type {inv.inv_type}, class {inv.alpha_class}",
        "type 4, alpha = 2",
    )

    # A v = (+-i) v translates to M v = (+-sqrt(-2)) v, which keeps the
    # computation inside Q[sqrt(-2)].
    extm = QuadExt(QQ, F(-2))
    mm = la.mat_embed(extm, m)
    cols = la.mat_cols(pub.RAT4_U)
    v1 = _ext_vec(extm, cols[0], cols[2])
    v2 = _ext_vec(extm, cols[1], cols[3])
    s1 = _eigenvalue_sign(extm, mm, v1)
    s2 = _eigenvalue_sign(extm, mm, v2)
    c1 = _eigenvalue_sign(extm, mm, _conj_vec(extm, v1))
    c2 = _eigenvalue_sign(extm, mm, _conj_vec(extm, v2))
    omega_i = la.identity(extm, 4)
    shifted = la.mat_sub(
        extm, mm, la.mat_scale(extm, extm.omega(), omega_i)
    )
    dim = 4 - la.rank(extm, shifted)
    _check(
        out, "rat4-eigenvectors",
        "a_j + sqrt(-2) b_j fill one 2-dimensional eigenspace of the "
        "conjugate pair",
        s1 is not None and s1 == s2 and c1 == c2 == -s1 and dim == 2,
        f"M v_j = {s1}w v_j (w = sqrt(-2)); conjugates get {c1}w; "
        f"eigenspace dimension {dim}",
        "v_1, v_2 span a 2-dimensional eigenspace, conjugates the other",
    )

    half_m = la.mat_scale(QQ, F(-1, 2), m)
    pairs_flip = all(
        la.vec_eq(QQ, la.mat_vec(QQ, half_m, cols[j]), cols[j + 2])
        for j in range(2)
    )
    _check(
        out, "rat4-basis-pairs",
        "the printed pairs satisfy b_j = -(1/sqrt(2)) A a_j, the reversed "
        "sign of the decomposition convention",
        pairs_flip,
        f"-(1/2) M a_j = b_j for j = 1, 2: {pairs_flip}; the sign flip is "
        "what reverses the printed display's outer sign",
        "pairs compatible with the displayed reconstruction",
    )

    utu = la.mat_mul(QQ, la.transpose(pub.RAT4_U), pub.RAT4_U)
    want = la.diag_mat(QQ, pub.RAT4_UTU_DIAG)
    _check(
        out, "rat4-gram",
        "U^T U = diag(1, 1, 1/2, 1/2) with tail block (1/2) * head block",
        la.mat_eq(QQ, utu, want),
        f"U^T U = {utu}",
        "diag(1, 1, 1/2, 1/2)",
    )

    mid = _anti_blocks(QQ, 2, F(1), F(-2))
    recon = la.mat_scale(
        ext, (F(0), F(1, 2)),
        la.mat_embed(ext, _conjugate(QQ, pub.RAT4_U, mid)),
    )
    _check(
        out, "rat4-reconstruction",
        "A = +(sqrt(2)/2) U [[0, I], [-2I, 0]] U^-1 (sign adjusted to the "
        "printed pairs)",
        la.mat_eq(ext, recon, a),
        "identity verified exactly",
        "the decomposition through the printed U",
    )

    neg_omega = ext.neg(ext.omega())
    mid_printed = tuple(
        tuple(
            ext.one() if (i < 2 and j == i + 2)
            else (neg_omega if (i >= 2 and j == i - 2) else ext.zero())
            for j in range(4)
        )
        for i in range(4)
    )
    u9 = la.mat_embed(ext, pub.RAT4_U)
    recon_printed = la.mat_scale(
        ext, (F(0), F(-1, 2)), _conjugate(ext, u9, mid_printed)
    )
    _check(
        out, "rat4-reconstruction-as-printed",
        "the printed display with -sqrt(2) entries and reversed sign "
        "recomputes",
        la.mat_eq(ext, recon_printed, a),
        "fails; -alpha = -2 belongs where -sqrt(2) is printed, and the "
        "overall sign is reversed",
        "A = -(sqrt(2)/2) U [[0, 0, 1, 0], [0, 0, 0, 1], "
        "[-sqrt(2), 0, 0, 0], [0, -sqrt(2), 0, 0]] U^-1",
    )
    return out


# -- the SO(4, F_p) example table --------------------------------------------


def _scal_str(ext, s):
    if s is None:
        return "not scalar"
    base, om = s
    if ext.base.is_zero(om):
        return f"{base}"
    return f"{base} + {om} w"


def checks_so_fp_table():
    out = []
    for p in sorted(pub.SO_FP_TYPE2):
        alpha, coeff = pub.SO_FP_TYPE2[p]
        fp = PrimeField(p)
        ext = QuadExt(fp, alpha)
        a = _omega_mult(ext, coeff)
        sq = la.mat_mul(ext, a, a)
        gram = la.mat_mul(ext, la.transpose(a), a)
        ident = la.identity(ext, 4)
        ok = la.mat_eq(ext, sq, ident) and la.mat_eq(ext, gram, ident)
        _check(
            out, f"so-fp-type2-entry-f{p}",
            f"the printed type 2 entry for F_{p} is an orthogonal involution "
            "as written",
            ok,
            f"A^2 = ({_scal_str(ext, la.is_scalar_mat(ext, sq))}) I, "
            f"A^T A = ({_scal_str(ext, la.is_scalar_mat(ext, gram))}) I",
            "a genuine type 2 involution",
        )

    normalized = {}
    for p in sorted(pub.SO_FP_TYPE2):
        alpha, coeff = pub.SO_FP_TYPE2[p]
        ctx = FormContext.build(f"Fp:{p}", 4, "standard")
        inv = normalize_inner(coeff, ctx, alpha=alpha)
        normalized[p] = (inv.inv_type, inv.scale)
    _check(
        out, "so-fp-type2-normalized",
        "all three entries normalize to genuine type 2 involutions "
        "(similitude factors stripped)",
        all(t == 2 for t, _s in normalized.values()),
        "; ".join(
            f"F_{p}: type {t}, scale {s}" for p, (t, s) in normalized.items()
        ),
        "one type 2 class per field",
    )

    for p in sorted(pub.SO_FP_TYPE4):
        alpha, coeff = pub.SO_FP_TYPE4[p]
        fp = PrimeField(p)
        sq = la.mat_mul(fp, coeff, coeff)
        scal = la.is_scalar_mat(fp, sq)
        _check(
            out, f"so-fp-type4-entry-f{p}",
            f"the printed type 4 entry for F_{p} squares to a scalar "
            "as a type 4 coefficient must",
            scal is not None,
            "B^2 is not a scalar matrix",
            "A = sqrt(alpha) B with A^2 = -I",
        )

    rejections = []
    for p in sorted(pub.SO_FP_TYPE4):
        alpha, coeff = pub.SO_FP_TYPE4[p]
        ctx = FormContext.build(f"Fp:{p}", 4, "standard")
        try:
            normalize_inner(coeff, ctx, alpha=alpha)
            rejections.append(False)
        except NotAnInvolutionError:
            rejections.append(True)
    _check(
        out, "so-fp-type4-rejection",
        "normalization refuses each printed type 4 entry with a clear error",
        all(rejections),
        f"NotAnInvolutionError raised: {rejections}",
        "(replacements come from the enumeration oracle)",
    )

    mdiag = (1, 1, 1, 1)
    delta, cands = oracle.involution_candidates(4, 3, mdiag, 4)
    ctx3 = FormContext.build("Fp:3", 4, "standard")
    first_type = (
        normalize_inner(cands[0], ctx3, alpha=delta).inv_type
        if cands else None
    )
    _check(
        out, "so-fp-type4-existence",
        "genuine type 4 involutions of SO(4, F_3) exist",
        len(cands) > 0 and first_type == 4,
        f"{len(cands)} candidate coefficients enumerated; the first "
        f"classifies as type {first_type}",
        "the table's row is realizable, just not by the printed matrix",
    )

    n2 = oracle.count_classes_bruteforce(4, 3, mdiag, 2)
    n4 = oracle.count_classes_bruteforce(4, 3, mdiag, 4)
    _check(
        out, "so-fp-conjecture-f3",
        "SO(4, F_3) has exactly one class each of types 2 and 4",
        n2 == 1 and n4 == 1,
        f"type 2 classes: {n2}, type 4 classes: {n4}",
        "C_2 = C_4 = 1 (the machine-checked case of the stated conjecture)",
    )

    n3 = oracle.count_classes_bruteforce(4, 3, mdiag, 3)
    _check(
        out, "so-fp-type3-class",
        "SO(4, F_3) has exactly one type 3 class",
        n3 == 1,
        f"type 3 classes: {n3}",
        "C_3 = 1",
    )
    return out


# -- class-count bounds ------------------------------------------------------


def checks_counting():
    out = []
    closed = GroundField.parse("closed")
    real = GroundField.parse("R")
    fq = GroundField.parse("Fp:5")
    qp = GroundField.parse("Qp:5")
    q2 = GroundField.parse("Qp:2")

    t1 = tuple(census.tau1(f) for f in (closed, real, fq, qp, q2))
    _check(
        out, "tau1-values",
        "tau_1 over (closed, R, F_q, Q_p, Q_2) = (0, 1, 1, 3, 7)",
        t1 == (0, 1, 1, 3, 7),
        f"tau_1 = {t1}",
        "(0, 1, 1, 3, 7)",
    )

    def qp_printed(m, slots):
        if m >= slots:
            return 2 ** slots
        return sum(comb(slots, j) for j in range(m + 1))

    tau2_ok = all(
        census.tau2(m, closed) == 1
        and census.tau2(m, real) == m + 1
        and census.tau2(m, fq) == 2
        and census.tau2(m, qp) == qp_printed(m, 3)
        and census.tau2(m, q2) == qp_printed(m, 7)
        for m in range(1, 9)
    )
    _check(
        out, "tau2-values",
        "tau_2(m) matches the printed table, including the 2^3 and 2^7 caps",
        tau2_ok,
        "all m = 1..8 agree over the five fields",
        "1; m + 1; 2; sum C(3, j) capped at 8; sum C(7, j) capped at 128",
    )

    closed_ok = True
    for n in range(3, 13):
        cb = census.class_bounds(n, closed)
        if n % 2:
            closed_ok &= (cb.c1, cb.c2, cb.c3, cb.c4) == ((n - 1) // 2, 0, 0, 0)
        else:
            closed_ok &= (cb.c1, cb.c2, cb.c3, cb.c4) == (n // 2, 0, 1, 0)
    _check(
        out, "closed-field-bounds",
        "closed-field bounds: C_1 = (n-1)/2 or n/2, C_2 = C_4 = 0, "
        "C_3 = 1 for even n",
        closed_ok,
        "n = 3..12 all agree",
        "the printed closed-field row",
    )

    real_ok = True
    for n in range(3, 51):
        cb = census.class_bounds(n, real)
        if n % 2:
            real_ok &= cb.c1 == (n**3 + 6 * n**2 - n - 6) // 12
        else:
            real_ok &= cb.c1 == (n**3 + 6 * n**2 + 2 * n) // 12
            real_ok &= cb.c2 == (n**2 + 6 * n + 8) // 8
            real_ok &= cb.c3 == 1 and cb.c4 == 1
    _check(
        out, "real-bound-closed-forms",
        "real bounds match the printed cubic and quadratic closed forms "
        "for n <= 50",
        real_ok,
        "summations equal the polynomials at every n = 3..50",
        "(n^3 + 6n^2 - n - 6)/12, (n^3 + 6n^2 + 2n)/12, (n^2 + 6n + 8)/8",
    )

    even_ok = all(
        census.class_bounds(n, fq).c1 == 2 * n - 1 for n in range(4, 13, 2)
    )
    _check(
        out, "fq-even-bound",
        "finite-field C_1 bound for even n is 2n - 1",
        even_ok,
        "n = 4..12 even all give 2n - 1",
        "2n - 1",
    )

    odd_values = {n: census.class_bounds(n, fq).c1 for n in range(3, 12, 2)}
    _check(
        out, "fq-c1-odd-printed-bound",
        "finite-field C_1 bound for odd n equals the printed 2n - 6",
        all(v == 2 * n - 6 for n, v in odd_values.items()),
        "the summation gives 2n - 2 at every odd n (n = 3: 4, n = 5: 8); "
        "2n - 6 is even smaller than the n + 1 distinct classes",
        "2n - 6",
    )

    type_ok = all(
        (census.class_bounds(n, fq).c2, census.class_bounds(n, fq).c3,
         census.class_bounds(n, fq).c4) == (3, 1, 1)
        for n in range(4, 13, 2)
    )
    _check(
        out, "fq-type-bounds",
        "finite-field bounds C_2 = 3, C_3 = 1, C_4 = 1 for even n",
        type_ok,
        "n = 4..12 even all agree",
        "(3, 1, 1)",
    )
    return out


# -- finite-field representative families ------------------------------------


def checks_fq_census():
    out = []
    standard_ok = True
    details = []
    for q in (3, 5, 7):
        for n in range(3, 7):
            reps = census.fq_type1_representatives(n, q, "standard")
            want = n + 1 if n % 2 else n + 2
            standard_ok &= reps.count == want and reps.duplicates == ()
            details.append(f"({n},{q}):{reps.count}")
    _check(
        out, "fq-standard-counts",
        "standard-form class lists have n + 1 (odd) or n + 2 (even) "
        "pairwise distinct entries",
        standard_ok,
        "; ".join(details),
        "n + 1 or n + 2 distinct classes",
    )

    oracle_pairs = []
    for n, p in ((3, 3), (3, 5)):
        reps = census.fq_type1_representatives(n, p, "standard")
        brute = oracle.count_classes_bruteforce(n, p, tuple([1] * n), 1)
        oracle_pairs.append((n, p, reps.count, brute))
    _check(
        out, "fq-standard-oracle",
        "list lengths agree with brute-force class counts over the "
        "full group",
        all(c == b for _n, _p, c, b in oracle_pairs),
        "; ".join(f"SO({n}, F_{p}): list {c}, oracle {b}"
                  for n, p, c, b in oracle_pairs),
        "the same count both ways",
    )

    validity = True
    for q in (3, 5, 7):
        for variant in ("standard", "delta_twisted"):
            reps = census.fq_type1_representatives(4, q, variant)
            ctx = FormContext.build(
                f"Fp:{q}", 4, list(reps.form_diag)
            )
            validity &= all(
                _is_isometric_involution(ctx.domain, ctx.matrix, m)
                for m in reps.matrices
            )
    _check(
        out, "fq-representative-validity",
        "every listed representative is an involutive isometry of its form",
        validity,
        "rechecked by direct multiplication at n = 4, q = 3, 5, 7, "
        "both variants",
        "entries of O(n, F_q, beta) squaring to I",
    )

    delta_ok = True
    delta_details = []
    for q in (3, 5):
        for n in (3, 4, 5, 6):
            reps = census.fq_type1_representatives(n, q, "delta_twisted")
            if n % 2:
                delta_ok &= reps.duplicates == ()
            else:
                delta_ok &= len(reps.duplicates) == 1
                delta_details.append(f"({n},{q}):{reps.duplicates[0]}")
    _check(
        out, "fq-delta-counts",
        "delta-form lists collide exactly once for even n and never for odd",
        delta_ok,
        "collisions " + "; ".join(delta_details),
        "one double-counted class per even dimension",
    )

    even_dups = [
        census.fq_type1_representatives(n, q, "delta_twisted").duplicates
        for q in (3, 5) for n in (4, 6)
    ]
    _check(
        out, "fq-delta-family-distinctness",
        "the printed delta-form list of n + 2 classes is pairwise distinct "
        "for even n",
        all(d == () for d in even_dups),
        "the half-dimension plain split and the matching tail flip are "
        "isomorphic (the eigenspace blocks swap), leaving n + 1 classes",
        "n + 2 pairwise non-isomorphic classes",
    )

    pairs = {
        (2, 5): census.find_two_square_rep(2, 5),
        (2, 3): census.find_two_square_rep(2, 3),
        (3, 7): census.find_two_square_rep(3, 7),
    }
    subst = all(
        (a * a + b * b) % q == d % q for (d, q), (a, b) in pairs.items()
    )
    _check(
        out, "two-square-reps",
        "two-square representations of the nonsquare class recompute",
        subst and pairs == {(2, 5): (1, 1), (2, 3): (1, 1), (3, 7): (1, 3)},
        "; ".join(f"{d} = {a}^2 + {b}^2 mod {q}"
                  for (d, q), (a, b) in pairs.items()),
        "(1, 1), (1, 1), (1, 3)",
    )
    return out


# -- p-adic invariant tables -------------------------------------------------


def _row_key(det_class, tail1, c1, tail2, c2):
    return (
        det_class,
        frozenset({(tuple(sorted(tail1)), c1), (tuple(sorted(tail2)), c2)}),
    )


def _published_qp_rows(p, table):
    npu = F(least_nonresidue(p))
    sym = {"p": F(p), "N": npu, "pN": F(p) * npu}
    det = {"1": F(1), **sym}
    rows = set()
    for x1, x2, d, c1, c2 in table:
        rows.add(_row_key(
            det[d],
            tuple(sym[t] for t in x1), c1,
            tuple(sym[t] for t in x2), c2,
        ))
    return rows


def _generated_qp_rows(p):
    return {
        _row_key(r.det_class, r.x1_tail, r.c1, r.x2_tail, r.c2)
        for r in census.qp_type1_invariant_table(p)
    }


def checks_qp_tables():
    out = []
    eq1 = all(
        _generated_qp_rows(p) == _published_qp_rows(p, pub.QP_TABLE1)
        for p in (5, 13)
    )
    _check(
        out, "qp-table-p5",
        "the 12-row table for -1 a square matches the generated rows "
        "(p = 5 and 13)",
        eq1,
        "set equality including witness tails",
        "12 rows",
    )

    eq2 = all(
        _generated_qp_rows(p) == _published_qp_rows(p, pub.QP_TABLE2)
        for p in (3, 7)
    )
    _check(
        out, "qp-table-p3",
        "the 8-row table for -1 a nonsquare matches the generated rows "
        "(p = 3 and 7)",
        eq2,
        "set equality including witness tails",
        "8 rows",
    )

    recompute_ok = True
    for p, table in ((5, pub.QP_TABLE1), (3, pub.QP_TABLE2)):
        field = GroundField.parse(f"Qp:{p}")
        npu = F(least_nonresidue(p))
        sym = {"p": F(p), "N": npu, "pN": F(p) * npu}
        det = {"1": F(1), **sym}
        for x1, x2, d, c1, c2 in table:
            t1 = tuple(sym[t] for t in x1)
            t2 = tuple(sym[t] for t in x2)
            # the det column describes each block, so both blocks share it
            p1 = F(1)
            for x in t1:
                p1 *= x
            p2 = F(1)
            for x in t2:
                p2 *= x
            recompute_ok &= field.square_class(p1) == det[d]
            recompute_ok &= field.square_class(p2) == det[d]
            recompute_ok &= (
                hasse_symbol(t1, p, convention="jones") if t1 else 1
            ) == c1
            recompute_ok &= (
                hasse_symbol(t2, p, convention="jones") if t2 else 1
            ) == c2
    _check(
        out, "qp-row-recompute",
        "every printed row's determinant classes and Hasse symbols "
        "recompute from its tails",
        recompute_ok,
        "all rows agree under the inclusive-pair product convention",
        "the tabulated (det, c_p, c_p) triples",
    )

    rows5 = census.qp_type1_invariant_table(5)
    unk5 = {(r.det_class, r.c1, r.c2)
            for r in rows5 if r.realizable == "unknown"}
    want5 = {(F(1), 1, -1), (F(2), 1, -1), (F(5), 1, -1), (F(10), 1, -1)}
    rows3 = census.qp_type1_invariant_table(3)
    unk3 = {(r.det_class, r.c1, r.c2)
            for r in rows3 if r.realizable == "unknown"}
    want3 = {(F(3), 1, 1), (F(3), -1, -1), (F(6), 1, 1), (F(6), -1, -1)}
    _check(
        out, "qp-realizability-flags",
        "exactly the identity-incongruent rows stay flagged unknown",
        unk5 == want5 and unk3 == want3,
        f"p = 5: {len(unk5)} unknown rows, p = 3: {len(unk3)}",
        "mixed-symbol rows (p = 1 mod 4) and the p-class rows (p = 3 mod 4)",
    )

    c33 = hilbert_symbol(F(3), F(3), 3)
    claim_holds = c33 == 1
    _check(
        out, "qp-realizability-claim",
        "square-determinant blocks always carry c_p = 1 when -1 is a "
        "nonsquare (the stated realizability argument)",
        claim_holds,
        "diag(p, p) has square determinant but c_p = (p, p)_p = "
        f"{c33} at p = 3 (under either convention)",
        "c_p = 1 for every block of square determinant",
    )

    cells = census.q2_invariant_cells()
    field2 = GroundField.parse("Qp:2")
    keys = {(c.det_class, c.hasse) for c in cells}
    all_keys = {
        (d, s) for d in field2.square_class_reps() for s in (1, -1)
    }
    cells_ok = len(cells) == 16 and keys == all_keys
    for c in cells:
        prod = F(1)
        for x in c.tail:
            prod *= x
        cells_ok &= field2.square_class(prod) == c.det_class
        cells_ok &= (
            hasse_symbol(c.tail, 2, convention="jones") if c.tail else 1
        ) == c.hasse
    bound = census.q2_class_bound()
    _check(
        out, "q2-cells",
        "all 16 (det class, symbol) cells over Q_2 have verified witness "
        "tails, giving the bound 24",
        cells_ok and bound == pub.Q2_CLASS_BOUND == 24,
        f"16 cells rechecked; 3 * 8 = {bound}",
        "every cell realizable, at most 24 type 1 classes",
    )

    good_jones = 0
    good_serre = 0
    total = 0
    for det_str, (plus_tail, minus_tail) in sorted(pub.Q2_TABLE.items()):
        target_det = field2.square_class(F(int(det_str)))
        for target_c, tail in ((1, plus_tail), (-1, minus_tail)):
            total += 1
            entries = tuple(F(int(t)) for t in tail)
            prod = F(1)
            for x in entries:
                prod *= x
            det_ok = field2.square_class(prod) == target_det
            cj = hasse_symbol(entries, 2, convention="jones") if entries else 1
            cs = hasse_symbol(entries, 2, convention="serre") if entries else 1
            good_jones += det_ok and cj == target_c
            good_serre += det_ok and cs == target_c
    _check(
        out, "q2-printed-table-cells",
        "the printed Q_2 witness table recomputes cell by cell",
        good_jones == total,
        f"{good_jones} of {total} cells verify under the inclusive-pair "
        f"product, {good_serre} of {total} under the strict one; the "
        "(-3, +1) witness multiplies out to determinant class 3",
        "a consistent witness diagonal for each of the 16 cells",
    )
    return out


# -- friendliness witnesses --------------------------------------------------


def checks_friendliness():
    out = []
    field_q = GroundField.parse("Q")
    formula_ok = True
    for r in (F(2), F(3), F(7, 2), F(-3), F(5)):
        x = (r - 1) / (r + 1)
        y = 2 / (r + 1)
        formula_ok &= x * x + r * y * y == 1 and y != 0
        w = field_q.friendly_witness(r)
        formula_ok &= w is not None and w[0] ** 2 + r * w[1] ** 2 == 1
    field_f7 = GroundField.parse("Fp:7")
    for r in (2, 3, 5):
        w = field_f7.friendly_witness(r)
        formula_ok &= w is not None and (w[0] ** 2 + r * w[1] ** 2) % 7 == 1
        formula_ok &= w[1] % 7 != 0
    _check(
        out, "friendly-witness-formula",
        "the uniform witness ((r-1)/(r+1), 2/(r+1)) solves x^2 + r y^2 = 1",
        formula_ok,
        "substitution verified over Q and F_7 for sample ratios",
        "a witness with y != 0 for every ratio away from -1",
    )

    x, y = F(5, 3), F(4, 3)
    printed_ok = x * x - y * y == 1
    w = field_q.friendly_witness(F(-1))
    _check(
        out, "friendly-witness-r-minus-one",
        "r = -1 over Q keeps a witness: the printed (5/3, 4/3) solves "
        "x^2 - y^2 = 1",
        printed_ok and w is not None and w[0] ** 2 - w[1] ** 2 == 1
        and w[1] != 0,
        f"(5/3)^2 - (4/3)^2 = 1: {printed_ok}; the field also produces "
        f"its own witness {w}",
        "(5/3, 4/3)",
    )

    ctx = FormContext.build("Fp:3", 4, "diag:1,1,1,-1")
    no_witness = all(
        (x * x + 2 * y * y) % 3 != 1
        for x in range(3) for y in range(1, 3)
    )
    _check(
        out, "f3-unfriendly-form",
        "diag(1, 1, 1, -1) over F_3 falls outside the friendliness "
        "assumptions",
        not ctx.friendly and ctx.friendly_failures == (2,) and no_witness,
        f"friendly: {ctx.friendly}, failing ratio classes "
        f"{ctx.friendly_failures}; x^2 + 2 y^2 = 1 has no y != 0 solution "
        "over F_3 (all 6 candidates checked)",
        "the stated example of an unfriendly context",
    )

    f3_stuck = GroundField.parse("Fp:3").friendly_witness(2) is None
    w5 = GroundField.parse("Fp:5").friendly_witness(4)
    w7 = GroundField.parse("Fp:7").friendly_witness(6)
    bigger_ok = (
        w5 is not None and (w5[0] ** 2 - w5[1] ** 2) % 5 == 1
        and w7 is not None and (w7[0] ** 2 - w7[1] ** 2) % 7 == 1
    )
    _check(
        out, "char3-ratio-minus-one",
        "the ratio -1 witness exists over F_5 and F_7 but not over F_3",
        f3_stuck and bigger_ok,
        f"F_3: no witness; F_5: {w5}; F_7: {w7}",
        "characteristic 3 is the lone finite-field exception",
    )
    return out


# -- oracle cross-checks -----------------------------------------------------


def checks_oracle_infrastructure():
    out = []
    orders = {
        (2, 3): oracle.group_order(2, 3, (1, 1)),
        (3, 3): oracle.group_order(3, 3, (1, 1, 1)),
        (3, 5): oracle.group_order(3, 5, (1, 1, 1)),
        (4, 3): oracle.group_order(4, 3, (1, 1, 1, 1)),
    }
    bfs_33 = len(oracle.orthogonal_group_bfs(3, 3, (1, 1, 1)))
    _check(
        out, "orthogonal-group-orders",
        "small orthogonal group orders agree between backtracking and "
        "reflection closure",
        orders == {(2, 3): 8, (3, 3): 48, (3, 5): 240, (4, 3): 1152}
        and bfs_33 == 48,
        f"orders {orders}, closure |O(3, F_3)| = {bfs_33}",
        "|O(2,3)| = 8, |O(3,3)| = 48, |O(3,5)| = 240, |O(4,3)| = 1152",
    )

    mdiag = (1, 1, 1, 1)
    d2, cands2 = oracle.involution_candidates(4, 3, mdiag, 2)
    d4, cands4 = oracle.involution_candidates(4, 3, mdiag, 4)
    in2 = pub.FIN2_A_COEFF in set(cands2)
    in4 = pub.FIN4_COEFF in set(cands4)
    _check(
        out, "f3-enumeration-contains-examples",
        "the enumeration recovers both worked-example coefficient matrices "
        "over F_3",
        d2 == 2 and d4 == 2 and in2 and in4,
        f"type 2: {len(cands2)} candidates, pair coefficient present: {in2}; "
        f"type 4: {len(cands4)} candidates, example coefficient present: "
        f"{in4}",
        "the printed matrices arise among the enumerated involutions",
    )
    return out


# -- assembly, manifest, reporting -------------------------------------------

GROUPS = (
    ("type 2 over Q (worked example)", checks_rational_type2),
    ("type 2 pair over F_3 (worked example)", checks_f3_pair),
    ("type 3 over R (worked example)", checks_real_type3),
    ("type 4 over F_3 (worked example)", checks_f3_type4),
    ("type 4 over Q (worked example)", checks_rational_type4),
    ("SO(4, F_p) example table", checks_so_fp_table),
    ("class-count bounds", checks_counting),
    ("finite-field representative families", checks_fq_census),
    ("p-adic invariant tables", checks_qp_tables),
    ("friendliness witnesses", checks_friendliness),
    ("oracle cross-checks", checks_oracle_infrastructure),
)


def all_checks(progress=None):
    """Run every group and return the flat result tuple."""
    results = []
    for label, fn in GROUPS:
        if progress is not None:
            progress(label)
        results.extend(fn())
    ids = [r.check_id for r in results]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise InternalError(f"duplicate check ids: {dup}")
    return tuple(results)


def load_known_discrepancies():
    """The manifest of checks that fail because the source text misprints."""
    text = (
        resources.files("soinv")
        .joinpath("data/known_discrepancies.json")
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


@dataclass(frozen=True)
class VerifyReport:
    """Results joined against the discrepancy manifest."""

    results: tuple
    statuses: dict
    stale_manifest_ids: tuple
    exit_code: int

    def counts(self):
        tallies = {"pass": 0, "expected-discrepancy": 0, "FAIL": 0,
                   "unexpected-pass": 0}
        for status in self.statuses.values():
            tallies[status] += 1
        return tallies


def summarize(results, manifest=None):
    """Join check results with the manifest and settle the exit code.

    A failing check listed in the manifest is an expected discrepancy; a
    failing check that is not listed is a genuine failure.  A listed
    check that passes is flagged (the manifest is then out of date) but
    does not fail the run.  Manifest entries with no matching check make
    the run fail: they mean a recorded discrepancy is no longer being
    exercised at all.
    """
    if manifest is None:
        manifest = load_known_discrepancies()
    entries = manifest.get("entries", {})
    statuses = {}
    for r in results:
        if r.passed:
            status = "unexpected-pass" if r.check_id in entries else "pass"
        else:
            status = (
                "expected-discrepancy" if r.check_id in entries else "FAIL"
            )
        statuses[r.check_id] = status
    stale = tuple(sorted(set(entries) - {r.check_id for r in results}))
    failures = [i for i, s in statuses.items() if s == "FAIL"]
    exit_code = 0 if not failures and not stale else 1
    return VerifyReport(
        results=tuple(results),
        statuses=statuses,
        stale_manifest_ids=stale,
        exit_code=exit_code,
    )


_STATUS_TAGS = {
    "pass": "pass",
    "expected-discrepancy": "DISC",
    "FAIL": "FAIL",
    "unexpected-pass": "pass?",
}


def run_report(stream=None):
    """Run all checks, print the report, and return the exit code."""
    if stream is None:
        stream = sys.stdout
    manifest = load_known_discrepancies()
    entries = manifest.get("entries", {})
    results = []
    for label, fn in GROUPS:
        print(f"-- {label}", file=stream)
        group_results = fn()
        results.extend(group_results)
        for r in group_results:
            status = (
                ("pass" if r.check_id not in entries else "unexpected-pass")
                if r.passed
                else ("expected-discrepancy" if r.check_id in entries
                      else "FAIL")
            )
            tag = _STATUS_TAGS[status]
            print(f"  [{tag:>5}] {r.check_id}: {r.description}", file=stream)
            if status != "pass":
                print(f"          computed: {r.computed}", file=stream)
                print(f"          printed:  {r.printed}", file=stream)
    report = summarize(results, manifest)

    print("-- known discrepancies", file=stream)
    for check_id, entry in entries.items():
        status = report.statuses.get(check_id, "not exercised")
        print(f"  [{check_id}] ({status})", file=stream)
        print(f"      printed:  {entry['printed']}", file=stream)
        print(f"      computed: {entry['computed']}", file=stream)
    for check_id in report.stale_manifest_ids:
        print(
            f"  [{check_id}] listed in the manifest but never exercised",
            file=stream,
        )

    tallies = report.counts()
    print(
        f"-- {len(report.results)} checks: {tallies['pass']} passed, "
        f"{tallies['expected-discrepancy']} expected discrepancies, "
        f"{tallies['FAIL']} failures, "
        f"{tallies['unexpected-pass']} unexpected passes",
        file=stream,
    )
    return report.exit_code
