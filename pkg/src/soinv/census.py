"""Counting machinery: class-count bounds, representative families, tables.

Three independent services live here.  `tau1`/`tau2`/`class_bounds`
evaluate the closed-form upper bounds on the number of isomorphy classes
per type over each supported field.  `fq_type1_representatives` builds
the explicit matrices representing every type 1 class over a finite
field, in both the standard-form and twisted-form flavors, and checks
them against the isomorphy machinery.  `qp_type1_invariant_table`
enumerates the p-adic invariant triples (determinant class plus a Hasse
symbol for each eigenspace block) together with concrete witness
diagonals.

Counting conventions follow the published class lists: the two central
matrices I and -I are carried as distinct degenerate entries even though
both induce the identity automorphism.  The brute-force oracle uses the
same convention, so list lengths and oracle counts are comparable.

Hasse symbols in this module always use the "jones" product convention
(over pairs i <= j); it is the one under which the published p-adic
rows are internally consistent.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb

from . import linalg as la
from .errors import (
    InternalError,
    PreconditionError,
    UnsupportedFieldError,
)
from .fields import (
    GroundField,
    hasse_symbol,
    hilbert_symbol,
    is_prime,
    least_nonresidue,
    prime_factors,
    two_square_rep,
)
from .forms import FormContext, beta_orthogonal_basis
from .involutions import normalize_inner
from .isomorphy import isomorphic

# -- tau counts and class bounds --------------------------------------------


def tau1(field):
    """Number of nontrivial square classes of the field."""
    if field.kind == "closed":
        return 0
    if field.kind in ("R", "Fp"):
        return 1
    if field.kind == "Qp":
        return 7 if field.p == 2 else 3
    raise UnsupportedFieldError(
        "tau_1 needs a field with finitely many square classes"
    )


def tau2(m, field):
    """Congruence classes of invertible symmetric m x m matrices."""
    if m < 1:
        raise PreconditionError(f"tau_2 needs a positive dimension, got {m}")
    if field.kind == "closed":
        return 1
    if field.kind == "R":
        return m + 1
    if field.kind == "Fp":
        return 2
    if field.kind == "Qp":
        slots = 7 if field.p == 2 else 3
        return sum(comb(slots, j) for j in range(min(m, slots) + 1))
    raise UnsupportedFieldError(
        "tau_2 needs a field with finitely many square classes"
    )


@dataclass(frozen=True)
class ClassBounds:
    """Upper bounds on the isomorphy class counts of the four types."""

    n: int
    field: GroundField
    c1: int
    c2: int
    c3: int
    c4: int


def real_c1_closed_form(n):
    """Polynomial form of the real type 1 bound."""
    if n % 2:
        num = n**3 + 6 * n**2 - n - 6
    else:
        num = n**3 + 6 * n**2 + 2 * n
    if num % 12:
        raise InternalError(f"real c1 closed form not integral at n={n}")
    return num // 12


def real_c2_closed_form(n):
    """Polynomial form of the real type 2 bound (even n)."""
    if n % 2:
        return 0
    num = n**2 + 6 * n + 8
    if num % 8:
        raise InternalError(f"real c2 closed form not integral at n={n}")
    return num // 8


def class_bounds(n, field):
    """Evaluate the four class-count bounds at dimension n.

    Odd dimensions admit only type 1, so the other three bounds are
    zero there.  Over the reals the polynomial forms of the bounds are
    recomputed and compared against the defining summations.
    """
    if n < 3:
        raise PreconditionError(f"class bounds need n >= 3, got {n}")

    def t2(m):
        return tau2(m, field)

    if n % 2:
        c1 = sum(t2(n - m) * t2(m) for m in range(1, (n - 1) // 2 + 1))
        c2 = c3 = c4 = 0
    else:
        half = n // 2
        mixed = sum(t2(n - m) * t2(m) for m in range(1, half))
        paired = t2(half) * (t2(half) + 1) // 2
        c1 = mixed + paired
        c2 = tau1(field) * paired
        c3 = 1
        c4 = tau1(field)

    if field.kind == "R":
        if c1 != real_c1_closed_form(n):
            raise InternalError(
                f"real type 1 bound: summation {c1} != closed form at n={n}"
            )
        if n % 2 == 0 and c2 != real_c2_closed_form(n):
            raise InternalError(
                f"real type 2 bound: summation {c2} != closed form at n={n}"
            )

    return ClassBounds(n=n, field=field, c1=c1, c2=c2, c3=c3, c4=c4)


# -- finite-field type 1 representatives ------------------------------------


def find_two_square_rep(delta, q):
    """The first (a, b) with a^2 + b^2 = delta over F_q, by direct search."""
    return two_square_rep(delta, q)


@dataclass(frozen=True)
class FqRepresentatives:
    """Type 1 representative matrices over a finite field.

    `matrices` is None in census-only mode (prime powers beyond our
    matrix arithmetic); `duplicates` lists index pairs that the
    isomorphy test identifies despite being printed as distinct classes
    in the source lists; `verified_by` records which distinctness check
    ran ("isomorphy-module", "block-invariants", or None).
    """

    n: int
    q: int
    variant: str
    count: int
    form_diag: tuple | None
    matrices: tuple | None
    duplicates: tuple
    verified_by: str | None
    notes: tuple


def _plain_split(n, m, p):
    """diag(I_{n-m}, -I_m): the plain split with an m-dimensional flip."""
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 1 if i < n - m else (p - 1)
        rows.append(tuple(row))
    return tuple(rows)


def _twisted_split(n, m, p, delta):
    """The twisted flip: -I_{m-1} plus a norm-delta reflection plane.

    The reflection fixes the hyperplane orthogonal to v = a e_m + b e_n
    where a^2 + b^2 = delta, so the flipped subspace has Gram matrix
    diag(I_{m-1}, delta), landing in the other congruence class than the
    plain split of the same dimension.
    """
    if m < 1:
        raise PreconditionError("twisted split needs m >= 1")
    a, b = two_square_rep(delta, p)
    dinv = pow(delta, p - 2, p)
    rows = [[0] * n for _ in range(n)]
    for i in range(m - 1):
        rows[i][i] = p - 1
    for i in range(m, n - 1):
        rows[i][i] = 1
    rows[m - 1][m - 1] = (1 - 2 * a * a * dinv) % p
    rows[n - 1][n - 1] = (1 - 2 * b * b * dinv) % p
    rows[m - 1][n - 1] = rows[n - 1][m - 1] = 2 * a * b * dinv % p
    return tuple(tuple(r) for r in rows)


def _tail_flip(n, m, p):
    """diag(-I_{n-m-1}, I_m, -1): the flip family adapted to the
    delta-weighted form, where the last coordinate carries the nonsquare
    weight."""
    rows = []
    for i in range(n):
        row = [0] * n
        if i < n - m - 1 or i == n - 1:
            row[i] = p - 1
        else:
            row[i] = 1
        rows.append(tuple(row))
    return tuple(rows)


def _type1_block_profile(ctx, mat):
    """(m, minus disc, plus disc) with the minus space no bigger than half.

    A direct reading of the type 1 invariants that does not go through
    the normalization front door, so it stays usable on contexts outside
    the friendliness assumptions (where normalize_inner refuses to run).
    """
    dom = ctx.domain
    minus, plus = la.eig_basis_order2(dom, mat)
    if len(minus) > len(plus):
        neg = tuple(tuple(dom.neg(x) for x in row) for row in mat)
        minus, plus = la.eig_basis_order2(dom, neg)

    def disc(vectors):
        basis = beta_orthogonal_basis(vectors, ctx=ctx)
        prod = dom.one()
        for v in basis:
            prod = dom.mul(prod, ctx.bilin(v, v))
        return ctx.field.square_class(prod)

    return (len(minus), disc(minus), disc(plus))


def _profiles_match(n, pa, pb):
    if pa[0] != pb[0]:
        return False
    direct = pa[1] == pb[1] and pa[2] == pb[2]
    swapped = 2 * pa[0] == n and pa[1] == pb[2] and pa[2] == pb[1]
    return direct or swapped


def fq_type1_representatives(n, q, variant="standard"):
    """All type 1 class representatives over F_q for one form variant.

    The "standard" variant works over the identity form and returns the
    plain splits, the twisted splits, and both central matrices: n+1
    matrices for odd n, n+2 for even.  The "delta_twisted" variant works
    over diag(I_{n-1}, delta) and returns the two families adapted to
    that form (the central matrices arise inside the families there).
    The published list for the delta variant double-counts one class in
    even dimension; the colliding pair is reported in `duplicates`
    rather than silently dropped, so the advertised count still holds.
    """
    if n < 3:
        raise PreconditionError(f"representatives need n >= 3, got {n}")
    if variant not in ("standard", "delta_twisted"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if q < 3 or q % 2 == 0:
        raise PreconditionError(f"need an odd prime power q >= 3, got {q}")
    base_primes = prime_factors(q)
    if len(base_primes) != 1:
        raise PreconditionError(f"{q} is not a prime power")

    count = n + 1 if n % 2 else n + 2
    if not is_prime(q):
        return FqRepresentatives(
            n=n, q=q, variant=variant, count=count, form_diag=None,
            matrices=None, duplicates=(), verified_by=None,
            notes=(
                "census-only mode: matrix arithmetic supports prime q only",
            ),
        )

    p = q
    field = GroundField.parse(f"Fp:{p}")
    delta = least_nonresidue(p)
    notes = []

    if variant == "standard":
        form_diag = tuple([1] * n)
        mats = [_plain_split(n, m, p) for m in range(0, n // 2 + 1)]
        mats += [_twisted_split(n, m, p, delta) for m in range(1, n // 2 + 1)]
        mats.append(_plain_split(n, n, p))
        notes.append(
            "central matrices I and -I counted as two degenerate entries"
        )
    else:
        form_diag = tuple([1] * (n - 1) + [delta])
        mats = [_plain_split(n, m, p) for m in range(0, n // 2 + 1)]
        mats += [_tail_flip(n, m, p) for m in range(0, n // 2 + 1)]

    if len(mats) != count:
        raise InternalError(
            f"representative list has {len(mats)} entries, expected {count}"
        )

    ctx = FormContext.build(field, n, list(form_diag))
    dom = ctx.domain
    for mat in mats:
        gram = la.mat_mul(dom, la.transpose(mat), la.mat_mul(dom, ctx.matrix, mat))
        if gram != ctx.matrix:
            raise InternalError("representative fails the isometry check")
        if la.mat_mul(dom, mat, mat) != la.identity(dom, n):
            raise InternalError("representative is not an involution")

    nonscalar = {
        i: mat for i, mat in enumerate(mats)
        if la.is_scalar_mat(dom, mat) is None
    }
    if ctx.friendly:
        verified_by = "isomorphy-module"
        invs = {i: normalize_inner(mat, ctx) for i, mat in nonscalar.items()}
        dups = tuple(
            (i, j) for i, j in combinations(sorted(invs), 2)
            if isomorphic(invs[i], invs[j]).isomorphic
        )
    else:
        verified_by = "block-invariants"
        notes.append(
            "context outside the friendliness assumptions; distinctness "
            "checked on eigenspace block invariants directly"
        )
        profiles = {
            i: _type1_block_profile(ctx, mat) for i, mat in nonscalar.items()
        }
        dups = tuple(
            (i, j) for i, j in combinations(sorted(profiles), 2)
            if _profiles_match(n, profiles[i], profiles[j])
        )

    if variant == "delta_twisted" and n % 2 == 0:
        expected = ((n // 2, n // 2 + 1 + n // 2),)
        if dups != expected:
            raise InternalError(
                f"delta variant collisions {dups} differ from the known "
                f"half-dimension pair {expected}"
            )
        notes.append(
            "published delta-variant list double-counts the half-dimension "
            "class: the two families meet there via the block swap"
        )
    elif dups:
        raise InternalError(f"unexpected representative collisions: {dups}")

    return FqRepresentatives(
        n=n, q=q, variant=variant, count=count, form_diag=form_diag,
        matrices=tuple(mats), duplicates=dups, verified_by=verified_by,
        notes=tuple(notes),
    )


# -- p-adic invariant tables -------------------------------------------------


@dataclass(frozen=True)
class QpTableRow:
    """One possible type 1 class over Q_p: shared determinant class and a
    Hasse symbol per block, with concrete witness tails.

    A tail lists the non-unit diagonal entries; the witness block is the
    tail appended to an identity block of whatever size the ambient
    dimension leaves (unit entries change neither the determinant class
    nor the symbol).  `realizable` is "yes" when diag(X1, X2) is
    congruent to the identity form, which hands us the change of basis
    realizing the class; otherwise "unknown", deferring to the source
    text's open question rather than asserting nonexistence.
    """

    x1_tail: tuple
    x2_tail: tuple
    det_class: Fraction
    c1: int
    c2: int
    realizable: str


@dataclass(frozen=True)
class Q2TableCell:
    """A witness diagonal tail over Q_2 for one (det class, symbol) pair."""

    det_class: Fraction
    hasse: int
    tail: tuple


def _jones(entries, p):
    if not entries:
        return 1
    return hasse_symbol(tuple(entries), p, convention="jones")


def qp_type1_invariant_table(p):
    """Invariant rows for type 1 classes over Q_p.

    For odd p: every achievable (det class, {c_p(X1), c_p(X2)}) triple
    with one row per unordered symbol pair; 12 rows when -1 is a square
    (p = 1 mod 4), 8 rows when it is not.  For p = 2 the dedicated path
    returns 16 single-diagonal cells instead, one per (det class,
    symbol) pair.
    """
    if p == 2:
        return q2_invariant_cells()
    if not is_prime(p):
        raise PreconditionError(f"need a prime, got {p}")

    field = GroundField.parse(f"Qp:{p}")
    npu = Fraction(least_nonresidue(p))
    atoms = (Fraction(p), npu, Fraction(p) * npu)

    by_class = {}
    for size in range(len(atoms) + 1):
        for tail in combinations(atoms, size):
            prod = Fraction(1)
            for x in tail:
                prod *= x
            cls = field.square_class(prod)
            by_class.setdefault(cls, []).append((_jones(tail, p), tail))

    rows = []
    for cls in field.square_class_reps():
        options = by_class[cls]
        witness = {}
        for c, tail in options:
            if c not in witness or len(tail) < len(witness[c]):
                witness[c] = tail
        cs = sorted(witness, reverse=True)
        pairs = [(a, b) for a in cs for b in cs if a >= b]
        for c1, c2 in sorted(pairs, reverse=True):
            block = c1 * c2 * hilbert_symbol(cls, cls, p)
            rows.append(QpTableRow(
                x1_tail=witness[c1], x2_tail=witness[c2],
                det_class=cls, c1=c1, c2=c2,
                realizable="yes" if block == 1 else "unknown",
            ))
    return tuple(rows)


def q2_invariant_cells():
    """Shortest witness tails for every (det class, symbol) pair over Q_2."""
    field = GroundField.parse("Qp:2")
    reps = field.square_class_reps()
    entries = [r for r in reps if r != 1]

    cells = {}
    for size in range(5):
        for tail in combinations_with_replacement(entries, size):
            prod = Fraction(1)
            for x in tail:
                prod *= x
            key = (field.square_class(prod), _jones(tail, 2))
            if key not in cells:
                cells[key] = tail
    out = []
    for d in reps:
        for c in (1, -1):
            if (d, c) not in cells:
                raise InternalError(f"no Q_2 witness tail for {(d, c)}")
            out.append(Q2TableCell(det_class=d, hasse=c, tail=cells[(d, c)]))
    return tuple(out)


def q2_class_bound():
    """At most three unordered symbol pairs for each of the 8 det classes."""
    field = GroundField.parse("Qp:2")
    return 3 * len(field.square_class_reps())
