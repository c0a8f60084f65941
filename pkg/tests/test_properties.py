"""Hypothesis suites for the structural invariants.

Four properties carry the weight of the whole construction: the type
of an involution is a conjugation invariant, isomorphy behaves as an
equivalence relation, the Hasse symbol does not care which
diagonalization of a form it is read from, and the friendliness
witnesses really solve their defining equation.  Everything runs in
exact arithmetic, so a failure here is a logic bug, never noise.
"""

from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from soinv import linalg as la
from soinv import oracle
from soinv.fields import GroundField, Rationals, hasse_symbol
from soinv.forms import FormContext, diagonalize_congruence
from soinv.involutions import normalize_inner
from soinv.isomorphy import isomorphic

QQ = Rationals()

# (n, p, type) cases with every type that exists at that size; n = 3
# only carries type 1
CASES = ((3, 3, 1), (3, 5, 1), (4, 3, 1), (4, 3, 2), (4, 3, 3), (4, 3, 4))

_pools = {}
_contexts = {}
_mirrors = {}


def pool(n, p, itype):
    key = (n, p, itype)
    if key not in _pools:
        _, cands = oracle.involution_candidates(n, p, (1,) * n, itype)
        _pools[key] = cands
    return _pools[key]


def context(n, p):
    if (n, p) not in _contexts:
        _contexts[n, p] = FormContext.build(
            GroundField.parse(f"Fp:{p}"), n, "standard"
        )
    return _contexts[n, p]


def mirrors(n, p):
    if (n, p) not in _mirrors:
        _mirrors[n, p] = oracle.reflections(n, p, (1,) * n)
    return _mirrors[n, p]


# -- conjugation stability --------------------------------------------------


@st.composite
def conjugation_case(draw):
    n, p, itype = draw(st.sampled_from(CASES))
    a = draw(st.sampled_from(pool(n, p, itype)))
    picks = draw(st.lists(st.sampled_from(mirrors(n, p)), max_size=4))
    w = oracle.mat_eye(n)
    for r in picks:
        w = oracle.mat_mul_p(w, r, p)
    return n, p, itype, a, w


@settings(max_examples=1000, deadline=None)
@given(conjugation_case())
def test_conjugation_preserves_the_type(case):
    n, p, itype, a, w = case
    ctx = context(n, p)
    winv = oracle.orth_inverse(w, (1,) * n, p)
    b = oracle.mat_mul_p(winv, oracle.mat_mul_p(a, w, p), p)
    assert normalize_inner(a, ctx).inv_type == itype
    assert normalize_inner(b, ctx).inv_type == itype


# -- isomorphy as an equivalence relation -----------------------------------


@st.composite
def involution_triple(draw):
    n, p, itype = draw(st.sampled_from(CASES))
    cands = pool(n, p, itype)
    picks = [draw(st.sampled_from(cands)) for _ in range(3)]
    return n, p, picks


@settings(max_examples=120, deadline=None)
@given(involution_triple())
def test_isomorphy_is_an_equivalence_relation(case):
    n, p, mats = case
    ctx = context(n, p)
    a, b, c = (normalize_inner(m, ctx) for m in mats)
    assert isomorphic(a, a).isomorphic
    same_ab = isomorphic(a, b).isomorphic
    assert isomorphic(b, a).isomorphic == same_ab
    same_bc = isomorphic(b, c).isomorphic
    if same_ab and same_bc:
        assert isomorphic(a, c).isomorphic


# -- Hasse symbol under re-diagonalization ----------------------------------


nonzero_rational = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9).filter(bool),
    st.integers(min_value=1, max_value=9),
)


@st.composite
def congruent_presentation(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    diag = tuple(draw(nonzero_rational) for _ in range(n))
    t = tuple(
        tuple(
            Fraction(draw(st.integers(min_value=-3, max_value=3)))
            for _ in range(n)
        )
        for _ in range(n)
    )
    assume(la.det(QQ, t) != 0)
    return diag, t


@settings(max_examples=500, deadline=None)
@given(congruent_presentation())
def test_hasse_symbol_survives_rediagonalization(case):
    diag, t = case
    s = la.mat_mul(
        QQ, la.transpose(t), la.mat_mul(QQ, la.diag_mat(QQ, diag), t)
    )
    _, d = diagonalize_congruence(QQ, s)
    rediag = la.diag_of(d)
    for p in (2, 3, 5, 7):
        for convention in ("serre", "jones"):
            assert hasse_symbol(rediag, p, convention) == hasse_symbol(
                diag, p, convention
            )


# -- friendliness witnesses -------------------------------------------------


WITNESS_FIELDS = (
    "Q", "R", "closed", "Fp:3", "Fp:5", "Fp:7", "Fp:11", "Qp:2", "Qp:3",
)


@st.composite
def witness_case(draw):
    field = GroundField.parse(draw(st.sampled_from(WITNESS_FIELDS)))
    if field.kind == "Fp":
        r = draw(st.integers(min_value=1, max_value=field.p - 1))
    else:
        r = draw(st.one_of(nonzero_rational, st.just(Fraction(-1))))
    return field, r


@settings(max_examples=200, deadline=None)
@given(witness_case())
def test_friendliness_witnesses_solve_their_equation(case):
    field, r = case
    witness = field.friendly_witness(r)
    if witness is None:
        # the one genuine gap: ratio -1 over F_3
        assert (field.kind, field.p, r) == ("Fp", 3, 2)
        return
    x, y = witness
    dom = field.domain()
    lhs = dom.add(dom.mul(x, x), dom.mul(r, dom.mul(y, y)))
    assert dom.eq(lhs, dom.one())
    assert not dom.is_zero(y)
