"""Deciding when two inner involutions are isomorphic.

Isomorphy here means conjugacy of the induced automorphisms: Inn_A and
Inn_B are isomorphic over O(n, k, beta) exactly when some Q in the group
conjugates A to B or to -B.  The decision runs on congruence invariants
of the restricted forms, so no group search is involved except as an
optional witness or SO-refinement step over small finite fields:

    Type 1   dimensions (s, t) plus congruence of the two restricted
             forms, with a swapped comparison when s = t (the negation)
    Type 2   equality of the square class of alpha, then congruence
             over k[sqrt(alpha)] of the reduced diagonal forms
    Type 3   always isomorphic
    Type 4   equality of the square class of alpha

Over Q(sqrt(alpha)) the implemented extension invariants (determinant
class, real signatures when they exist, entrywise square-ratio
matching) are complete in rank one and frequently decisive in higher
rank, but they are not a full classification; when they all agree
without producing a proof either way the comparison raises
UndecidedError rather than guessing.  The same honest refusal applies
to SO-level comparisons of types 2, 3 and 4, which need finer data than
the O-level invariants; over small finite fields an exhaustive group
search settles those instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InternalError, PreconditionError, UndecidedError
from .fields import (
    PrimeField,
    QuadExt,
    ext_is_square_fp2,
    ext_is_square_rational,
    ext_sign_real,
    hasse_symbol,
    least_nonresidue,
    legendre,
    prime_factors,
    real_signature,
    tonelli_shanks,
    two_square_rep,
)
from .involutions import (
    decompose_type1,
    decompose_type2,
    decompose_type3,
    decompose_type4,
)
from .oracle import conjugate_in_group

DEFAULT_GROUP_CAP = 30000


@dataclass(frozen=True)
class IsomorphyVerdict:
    isomorphic: bool
    route: str
    invariants: tuple
    witness: object = None

    def with_notes(self, *notes, witness=None):
        return IsomorphyVerdict(
            isomorphic=self.isomorphic,
            route=self.route,
            invariants=self.invariants + notes,
            witness=self.witness if witness is None else witness,
        )


def diag_congruent(field, d1, d2):
    """Congruence of diag(d1) and diag(d2) over the ground field."""
    if len(d1) != len(d2):
        return False
    kind = field.kind
    if kind == "closed":
        return True
    if kind == "R":
        return real_signature(d1) == real_signature(d2)
    if kind == "Fp":
        p = field.p
        det1 = det2 = 1
        for d in d1:
            det1 = det1 * int(d) % p
        for d in d2:
            det2 = det2 * int(d) % p
        return legendre(det1, p) == legendre(det2, p)
    if kind == "Qp":
        p = field.p
        if field.square_class(_prod(d1)) != field.square_class(_prod(d2)):
            return False
        return hasse_symbol(d1, p) == hasse_symbol(d2, p)
    if kind == "Q":
        if real_signature(d1) != real_signature(d2):
            return False
        if field.square_class(_prod(d1)) != field.square_class(_prod(d2)):
            return False
        return all(
            hasse_symbol(d1, p) == hasse_symbol(d2, p)
            for p in _support_primes(d1, d2)
        )
    raise PreconditionError(f"no congruence test for field kind {kind!r}")


def _prod(diag):
    out = None
    for d in diag:
        out = d if out is None else out * d
    return out


def _support_primes(d1, d2):
    """Finite places where a Hasse symbol of either form can differ.

    At an odd prime dividing no entry every Hilbert factor pairs two
    units and is trivial, so {2} plus the primes of the entries covers
    everything.
    """
    primes = {2}
    for d in tuple(d1) + tuple(d2):
        f = Fraction(d)
        primes.update(prime_factors(f.numerator))
        primes.update(prime_factors(f.denominator))
    return sorted(primes)


def _perm_square_matchable(ext, items1, items2, is_square):
    """A bijection matching entries with square ratios, by backtracking."""
    if len(items1) != len(items2):
        return False
    used = [False] * len(items2)

    def place(i):
        if i == len(items1):
            return True
        for j, cand in enumerate(items2):
            if used[j]:
                continue
            if is_square(ext.div(items1[i], cand)):
                used[j] = True
                if place(i + 1):
                    return True
                used[j] = False
        return False

    return place(0)


def diag_congruent_ext(field, alpha, d1, d2):
    """Congruence over k[sqrt(alpha)] of diagonals with entries in it.

    Entries are (base, omega) pairs.  Decisive for finite fields, the
    algebraically closed field and R (where the extension by a
    nontrivial class is C); over Q complete invariants are implemented
    only in special shapes, and p-adic extension square classes not at
    all, so those paths can refuse with UndecidedError.
    """
    if len(d1) != len(d2):
        return False
    kind = field.kind
    if kind in ("closed", "R"):
        return True
    dom = field.domain()
    ext = QuadExt(dom, alpha)
    if kind == "Fp":
        ratio = ext.div(_ext_prod(ext, d1), _ext_prod(ext, d2))
        return ext_is_square_fp2(ext, ratio)
    if kind == "Q":
        if _perm_square_matchable(
            ext, d1, d2, lambda x: ext_is_square_rational(ext, x)
        ):
            return True
        det_ratio = ext.div(_ext_prod(ext, d1), _ext_prod(ext, d2))
        if not ext_is_square_rational(ext, det_ratio):
            return False
        if Fraction(alpha) > 0:
            for emb in (1, -1):
                s1 = sorted(ext_sign_real(ext, x, emb) for x in d1)
                s2 = sorted(ext_sign_real(ext, x, emb) for x in d2)
                if s1 != s2:
                    return False
        raise UndecidedError(
            "the implemented invariants over the quadratic extension of Q "
            "(determinant class, real signatures, entrywise square ratios) "
            "all agree but do not decide congruence at this rank"
        )
    if kind == "Qp":
        if _perm_square_matchable(
            ext, d1, d2, lambda x: ext.eq(x, ext.one())
        ):
            return True
        raise UndecidedError(
            "square classes of the quadratic extension of a p-adic field "
            "are not computed exactly; only entrywise equal diagonals are "
            "decided"
        )
    raise PreconditionError(f"no extension congruence test for {kind!r}")


def _ext_prod(ext, items):
    out = ext.one()
    for x in items:
        out = ext.mul(out, x)
    return out


def _and3(a, b):
    """Three-valued conjunction with None for undecided."""
    if a is False or b is False:
        return False
    if a is True and b is True:
        return True
    return None


def _or3(a, b):
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return None


def _tri(fn, *args):
    """Run a True/False/Undecided comparison, mapping refusal to None."""
    try:
        return fn(*args)
    except UndecidedError:
        return None


def _type1_block_congruent(field, alpha_a, da, alpha_b, db):
    """Congruence of type 1 blocks, whose entries may live in a formal
    extension when the similitude scale was not an exact square."""
    if len(da) != len(db):
        return False
    if alpha_a is None and alpha_b is None:
        return diag_congruent(field, da, db)
    kind = field.kind
    if kind == "closed":
        return True
    if kind == "R":
        sgns = []
        for alpha, diag in ((alpha_a, da), (alpha_b, db)):
            if alpha is None:
                sgns.append(sorted(1 if x > 0 else -1 for x in diag))
            else:
                ext = QuadExt(field.domain(), alpha)
                sgns.append(sorted(ext_sign_real(ext, x, 1) for x in diag))
        return sgns[0] == sgns[1]
    if kind == "Qp":
        dom = field.domain()
        base = []
        for alpha, diag in ((alpha_a, da), (alpha_b, db)):
            if alpha is None:
                base.append(diag)
            elif all(dom.is_zero(x[1]) for x in diag):
                base.append(tuple(x[0] for x in diag))
            else:
                raise UndecidedError(
                    "p-adic type 1 blocks with entries outside the base "
                    "field are not compared exactly"
                )
        return diag_congruent(field, base[0], base[1])
    raise InternalError(
        f"type 1 data over {kind} should never carry a formal extension"
    )


def isomorphic(inv_a, inv_b, group="O", max_group_elements=DEFAULT_GROUP_CAP):
    """Decide isomorphy of two normalized involutions.

    Both must come from the same context (same field, dimension and
    given form matrix).  group selects where the conjugating element may
    come from, "O" or "SO".  Returns an IsomorphyVerdict; raises
    UndecidedError when the implemented invariants cannot settle the
    comparison, rather than ever guessing.
    """
    if group not in ("O", "SO"):
        raise PreconditionError(f"group must be O or SO, not {group!r}")
    if not inv_a.ctx.same_group(inv_b.ctx):
        raise PreconditionError(
            "the involutions live on different orthogonal groups "
            "(field, dimension and form matrix must all agree)"
        )
    if inv_a.inv_type != inv_b.inv_type:
        return IsomorphyVerdict(
            isomorphic=False,
            route="type_mismatch",
            invariants=(
                f"types differ: {inv_a.inv_type} vs {inv_b.inv_type}",
            ),
        )
    itype = inv_a.inv_type
    if itype == 1:
        return _isomorphic_type1(inv_a, inv_b, group)
    if itype == 2:
        return _isomorphic_type2(inv_a, inv_b, group, max_group_elements)
    if itype == 3:
        verdict = IsomorphyVerdict(
            isomorphic=True,
            route="type3_always",
            invariants=(
                "epsilon -1 with a trivial class: all such involutions of "
                "one group are isomorphic",
            ),
        )
        if inv_a.ctx.field.kind == "Fp":
            verdict = _attach_type34_witness(
                inv_a, inv_b, verdict, max_group_elements
            )
        return _refine_so(inv_a, inv_b, verdict, group, max_group_elements)
    field = inv_a.ctx.field
    same = field.domain().eq(inv_a.alpha_class, inv_b.alpha_class)
    verdict = IsomorphyVerdict(
        isomorphic=same,
        route="type4_alpha_class",
        invariants=(
            f"alpha classes: {inv_a.alpha_class} vs {inv_b.alpha_class}",
        ),
    )
    if not same:
        return verdict
    if field.kind == "Fp":
        verdict = _attach_type34_witness(
            inv_a, inv_b, verdict, max_group_elements
        )
    return _refine_so(inv_a, inv_b, verdict, group, max_group_elements)


def _isomorphic_type1(inv_a, inv_b, group):
    field = inv_a.ctx.field
    da = decompose_type1(inv_a)
    db = decompose_type1(inv_b)
    notes = [f"dimension pairs: ({da.s}, {da.t}) vs ({db.s}, {db.t})"]
    if group == "SO":
        notes.append("type 1: O- and SO-isomorphy coincide")
    if (da.s, da.t) != (db.s, db.t):
        return IsomorphyVerdict(
            isomorphic=False, route="type1_blocks", invariants=tuple(notes),
        )
    direct = _and3(
        _tri(_type1_block_congruent, field, da.ext_alpha, da.x1,
             db.ext_alpha, db.x1),
        _tri(_type1_block_congruent, field, da.ext_alpha, da.x2,
             db.ext_alpha, db.x2),
    )
    notes.append(f"restricted form match (direct): {direct}")
    if direct:
        witness = _type1_witness(inv_a, inv_b, da, db, swapped=False,
                                 group=group)
        return IsomorphyVerdict(
            isomorphic=True, route="type1_blocks",
            invariants=tuple(notes), witness=witness,
        )
    swapped = False
    if da.s == da.t:
        swapped = _and3(
            _tri(_type1_block_congruent, field, da.ext_alpha, da.x1,
                 db.ext_alpha, db.x2),
            _tri(_type1_block_congruent, field, da.ext_alpha, da.x2,
                 db.ext_alpha, db.x1),
        )
        notes.append(f"restricted form match (swapped): {swapped}")
        if swapped:
            witness = _type1_witness(inv_a, inv_b, da, db, swapped=True,
                                     group=group)
            return IsomorphyVerdict(
                isomorphic=True, route="type1_swap",
                invariants=tuple(notes), witness=witness,
            )
    if _or3(direct, swapped) is None:
        raise UndecidedError(
            "type 1 block congruences could not all be decided: "
            + "; ".join(notes)
        )
    return IsomorphyVerdict(
        isomorphic=False, route="type1_blocks", invariants=tuple(notes),
    )


def _isomorphic_type2(inv_a, inv_b, group, max_group_elements):
    field = inv_a.ctx.field
    dom = field.domain()
    cls_a, cls_b = inv_a.alpha_class, inv_b.alpha_class
    notes = [f"alpha classes: {cls_a} vs {cls_b}"]
    if not dom.eq(cls_a, cls_b):
        return IsomorphyVerdict(
            isomorphic=False, route="type2_reduction",
            invariants=tuple(notes),
        )
    if field.kind not in ("R", "closed") and not dom.eq(
        inv_a.alpha, inv_b.alpha
    ):
        raise UndecidedError(
            "equal square classes but different exact alphas: comparing "
            "forms across two presentations of the extension needs an "
            "exact square root that this field kind does not provide"
        )
    da = decompose_type2(inv_a)
    db = decompose_type2(inv_b)
    minus_a, plus_a = _reduced_ext_diags(dom, da)
    minus_b, plus_b = _reduced_ext_diags(dom, db)
    alpha = inv_a.alpha
    direct = _and3(
        _tri(diag_congruent_ext, field, alpha, minus_a, minus_b),
        _tri(diag_congruent_ext, field, alpha, plus_a, plus_b),
    )
    swapped = _and3(
        _tri(diag_congruent_ext, field, alpha, minus_a, plus_b),
        _tri(diag_congruent_ext, field, alpha, plus_a, minus_b),
    )
    notes.append(
        f"extension form match: direct {direct}, swapped {swapped}"
    )
    if direct or swapped:
        verdict = IsomorphyVerdict(
            isomorphic=True, route="type2_reduction",
            invariants=tuple(notes),
        )
        if field.kind == "Fp":
            verdict = _attach_search_witness(
                inv_a, inv_b, verdict, max_group_elements
            )
        return _refine_so(inv_a, inv_b, verdict, group, max_group_elements)
    if _or3(direct, swapped) is None:
        raise UndecidedError(
            "type 2 extension congruences could not be decided: "
            + "; ".join(notes)
        )
    return IsomorphyVerdict(
        isomorphic=False, route="type2_reduction", invariants=tuple(notes),
    )


def _reduced_ext_diags(dom, data):
    """The restricted forms on the two eigenspaces over the extension.

    beta(v_j, v_j) = 2(X1_j + omega X2_j) on E(A, -1); the conjugate
    diagonal describes E(A, +1).  The factor 2 is a square scaling of
    the whole form and drops out of congruence comparisons.
    """
    minus = tuple(
        (x1, x2) for x1, x2 in zip(data.x1, data.x2)
    )
    plus = tuple(
        (x1, dom.neg(x2)) for x1, x2 in zip(data.x1, data.x2)
    )
    return minus, plus


def _refine_so(inv_a, inv_b, o_verdict, group, max_group_elements):
    """Upgrade an O-level True verdict to the requested group."""
    if group == "O" or not o_verdict.isomorphic:
        return o_verdict
    if o_verdict.witness is not None and _witness_in_so(
        inv_a.ctx, o_verdict.witness
    ):
        return o_verdict.with_notes(
            "the O-level witness already has determinant 1"
        )
    field = inv_a.ctx.field
    if field.kind != "Fp":
        raise UndecidedError(
            "SO-level isomorphy for types 2, 3 and 4 needs invariants "
            "beyond the O-level ones; over this field the package has "
            "no exact test"
        )
    mdiag = tuple(int(x) for x in la.diag_of(inv_a.ctx.matrix))
    try:
        w = conjugate_in_group(
            inv_a.n, field.p, mdiag, inv_a.coeff, inv_b.coeff,
            det_value=1, allow_negation=True,
            max_elements=max_group_elements,
        )
    except PreconditionError as exc:
        raise UndecidedError(
            "SO-level isomorphy for types 2, 3 and 4 needs group search "
            f"here, and the group is too large: {exc}"
        ) from None
    if w is None:
        return IsomorphyVerdict(
            isomorphic=False, route="so_search",
            invariants=o_verdict.invariants
            + ("no element of SO conjugates the pair",),
        )
    _check_witness(inv_a, inv_b, w)
    return IsomorphyVerdict(
        isomorphic=True, route="so_search",
        invariants=o_verdict.invariants, witness=w,
    )


def _witness_in_so(ctx, w):
    return ctx.domain.eq(la.det(ctx.domain, w), ctx.domain.one())


def _attach_search_witness(inv_a, inv_b, verdict, max_group_elements):
    """Find a concrete conjugator by exhaustive search when feasible."""
    field = inv_a.ctx.field
    mdiag = tuple(int(x) for x in la.diag_of(inv_a.ctx.matrix))
    try:
        w = conjugate_in_group(
            inv_a.n, field.p, mdiag, inv_a.coeff, inv_b.coeff,
            allow_negation=True, max_elements=max_group_elements,
        )
    except PreconditionError:
        return verdict.with_notes("witness search skipped: group too large")
    if w is None:
        raise InternalError(
            "invariants prove isomorphy but the exhaustive search found "
            "no conjugator"
        )
    _check_witness(inv_a, inv_b, w)
    return verdict.with_notes(witness=w)


def _attach_type34_witness(inv_a, inv_b, verdict, max_group_elements):
    """Constructive conjugator for types 3 and 4 over a prime field.

    The paired-basis blocks of the two sides need not be congruent (only
    their determinant squares are pinned), so the direct transport can
    fail for isomorphic involutions; the exhaustive search covers that
    case when the group is small enough.
    """
    dom = inv_a.ctx.domain
    p = inv_a.ctx.field.p
    if inv_a.inv_type == 3:
        da = decompose_type3(inv_a)
        db = decompose_type3(inv_b)
        if da.case == "i_in_k":
            h = inv_a.n // 2
            t = [[dom.zero()] * inv_a.n for _ in range(inv_a.n)]
            for j in range(h):
                t[j][j] = dom.one()
                t[h + j][h + j] = dom.div(db.block[j], da.block[j])
            q = _assemble_witness(dom, da.x, t, db.x)
            _check_witness(inv_a, inv_b, q)
            return verdict.with_notes(witness=q)
        xa, xb = da.x, db.x
        block_a, block_b = da.block, db.block
    else:
        da = decompose_type4(inv_a)
        db = decompose_type4(inv_b)
        xa, xb = da.u, db.u
        block_a, block_b = da.u1, db.u1
    r = _fp_congruence_transform(p, block_a, block_b)
    if r is None:
        return _attach_search_witness(
            inv_a, inv_b, verdict, max_group_elements
        )
    h = inv_a.n // 2
    t = [[dom.zero()] * inv_a.n for _ in range(inv_a.n)]
    for i in range(h):
        for j in range(h):
            t[i][j] = r[i][j]
            t[h + i][h + j] = r[i][j]
    q = _assemble_witness(dom, xa, t, xb)
    _check_witness(inv_a, inv_b, q)
    return verdict.with_notes(witness=q)


def _assemble_witness(dom, xa, t_rows, xb):
    t = tuple(tuple(row) for row in t_rows)
    return la.mat_mul(dom, xa, la.mat_mul(dom, t, la.inverse(dom, xb)))


def _type1_witness(inv_a, inv_b, da, db, swapped, group):
    """Constructive conjugator for type 1 over a prime field, else None."""
    field = inv_a.ctx.field
    if field.kind != "Fp":
        return None
    dom = inv_a.ctx.domain
    p = field.p
    xb = db.x
    b1, b2 = db.x1, db.x2
    if swapped:
        cols = la.mat_cols(db.x)
        xb = la.mat_from_cols(cols[db.s:] + cols[:db.s])
        b1, b2 = db.x2, db.x1
    r1 = _fp_congruence_transform(p, da.x1, b1)
    r2 = _fp_congruence_transform(p, da.x2, b2)
    if r1 is None or r2 is None:
        raise InternalError("congruent type 1 blocks with no transform")
    s, n = da.s, inv_a.n
    t = [[dom.zero()] * n for _ in range(n)]
    for i in range(s):
        for j in range(s):
            t[i][j] = r1[i][j]
    for i in range(n - s):
        for j in range(n - s):
            t[s + i][s + j] = r2[i][j]
    q = _assemble_witness(dom, da.x, t, xb)
    if group == "SO" and not _witness_in_so(inv_a.ctx, q):
        # negating one column of a congruence factor flips the witness
        # determinant without disturbing the block diagonals
        for i in range(s):
            t[i][0] = dom.neg(t[i][0])
        q = _assemble_witness(dom, da.x, t, xb)
    _check_witness(inv_a, inv_b, q)
    return q


def _fp_congruence_transform(p, d1, d2):
    """R over F_p with R^T diag(d1) R = diag(d2), or None.

    Built by pushing both diagonals to the canonical diag(1, ..., 1)
    or diag(1, ..., 1, nonsquare) and composing; exists exactly when
    the determinant classes agree.
    """
    if len(d1) != len(d2):
        return None
    det1 = det2 = 1
    for x in d1:
        det1 = det1 * int(x) % p
    for x in d2:
        det2 = det2 * int(x) % p
    if legendre(det1, p) != legendre(det2, p):
        return None
    dom = PrimeField(p)
    c1 = _fp_canonical_transform(p, d1)
    c2 = _fp_canonical_transform(p, d2)
    return la.mat_mul(dom, c1, la.inverse(dom, c2))


def _fp_canonical_transform(p, diag):
    """C with C^T diag(diag) C = diag(1, .., 1[, nonsquare])."""
    n = len(diag)
    delta = least_nonresidue(p)
    dom = PrimeField(p)
    cols = [
        [dom.one() if i == j else dom.zero() for i in range(n)]
        for j in range(n)
    ]
    entries = []
    for j, d in enumerate(diag):
        d = int(d) % p
        root = tonelli_shanks(d, p)
        if root is None:
            root = tonelli_shanks(d * pow(delta, p - 2, p) % p, p)
            entries.append(delta)
        else:
            entries.append(1)
        scale = dom.inv(root)
        cols[j] = [dom.mul(scale, x) for x in cols[j]]
    nonsquare_at = [j for j, e in enumerate(entries) if e == delta]
    while len(nonsquare_at) >= 2:
        i, j = nonsquare_at[0], nonsquare_at[1]
        x, y = two_square_rep(dom.inv(delta), p)
        ci, cj = cols[i], cols[j]
        cols[i] = [dom.add(dom.mul(x, a), dom.mul(y, b))
                   for a, b in zip(ci, cj)]
        cols[j] = [dom.add(dom.mul(dom.neg(y), a), dom.mul(x, b))
                   for a, b in zip(ci, cj)]
        nonsquare_at = nonsquare_at[2:]
    if nonsquare_at and nonsquare_at[0] != n - 1:
        j = nonsquare_at[0]
        cols[j], cols[n - 1] = cols[n - 1], cols[j]
    return la.mat_from_cols([tuple(c) for c in cols])


def _check_witness(inv_a, inv_b, q):
    """Constructed witnesses must verify exactly or something is broken."""
    dom = inv_a.ctx.domain
    m = inv_a.ctx.matrix
    if not la.mat_eq(
        dom, la.mat_mul(dom, la.transpose(q), la.mat_mul(dom, m, q)), m
    ):
        raise InternalError("witness is not orthogonal for the form")
    conj = la.mat_mul(
        dom, la.inverse(dom, q), la.mat_mul(dom, inv_a.coeff, q)
    )
    if not (
        la.mat_eq(dom, conj, inv_b.coeff)
        or la.mat_eq(dom, conj, la.mat_neg(dom, inv_b.coeff))
    ):
        raise InternalError("witness does not conjugate the pair")
