"""Bilinear form contexts.

A FormContext bundles the ground field, the dimension and the symmetric
nondegenerate matrix M defining beta(x, y) = x^T M y.  The working matrix
is always diagonal: a non-diagonal input is congruence-diagonalized on
ingestion and the change-of-basis matrix kept on the context, so every
later computation can assume diagonal M.  Matrices handed to the library
alongside such a context are understood in the ingested coordinates and
get conjugated through the stored transform on entry.

Friendliness of the form (every ratio of represented diagonal values
admits a solution of x^2 + r y^2 = 1 with y != 0) is checked once,
eagerly, when the context is built and recorded on it; the normalization
step later refuses unfriendly contexts, because the identity
1 = x^2 + r y^2 is exactly what its eigenvector bookkeeping consumes.
Only small prime fields can actually fail, and among the diagonal forms
only those mixing the square classes of F_3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InputError, PreconditionError
from .fields import GroundField, context_friendliness


def parse_scalar(field, text):
    """Parse one scalar from CLI or JSON text for the given field."""
    if isinstance(text, str):
        text = text.strip()
    try:
        if field.kind == "Fp":
            return int(text) % field.p
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {text!r} for field {field}: {exc}") from None


def diagonalize_congruence(dom, s):
    """(q, d) with q^T s q = d diagonal, for symmetric invertible s.

    Thin validating front for the congruence engine: rejects
    non-symmetric input and singular input before diagonalizing, so the
    result is a genuine base change between nondegenerate forms.
    """
    n, c = la.mat_dims(s)
    if n != c or not la.mat_eq(dom, s, la.transpose(s)):
        raise InputError("congruence diagonalization needs a symmetric matrix")
    if dom.is_zero(la.det(dom, s)):
        raise PreconditionError("congruence diagonalization of a singular matrix")
    return la.congruence_diagonalize(dom, s)


@dataclass(frozen=True)
class MembershipVerdict:
    """Where a matrix sits relative to the orthogonal group of a form.

    category is one of "SO", "O_minus_SO", "GO_proper", "none"; factor is
    the similitude factor (1 for the first two, the proper factor for
    GO_proper, None otherwise).
    """

    category: str
    factor: object = None


class FormContext:
    """The group SO(n, k, beta) we are classifying involutions of."""

    def __init__(self, field, n, matrix):
        if n < 3:
            raise PreconditionError(
                f"the classification assumes n > 2, got n = {n}"
            )
        dom = field.domain()
        if la.mat_dims(matrix) != (n, n):
            raise InputError(
                f"form matrix has shape {la.mat_dims(matrix)}, expected ({n}, {n})"
            )
        if not la.mat_eq(dom, matrix, la.transpose(matrix)):
            raise InputError("form matrix must be symmetric")
        if dom.is_zero(la.det(dom, matrix)):
            raise PreconditionError("form matrix is degenerate")
        self.field = field
        self.n = n
        self.domain = dom
        self.given_matrix = matrix
        if la.is_diagonal(dom, matrix):
            self.matrix = matrix
            self.ingest_transform = None
        else:
            t, d = la.congruence_diagonalize(dom, matrix)
            self.matrix = d
            self.ingest_transform = t
        self.diag = la.diag_of(self.matrix)
        ok, failures, witnesses = context_friendliness(field, self.diag)
        self.friendly = ok
        self.friendly_failures = tuple(failures)
        self.friendly_witnesses = witnesses

    @classmethod
    def build(cls, field, n, form="standard"):
        """Build a context from a form spec.

        Accepts "standard", "diag:<comma separated entries>", a list of
        diagonal entries, or a full matrix (list of rows).
        """
        if isinstance(field, str):
            field = GroundField.parse(field)
        dom = field.domain()
        if form in (None, "standard"):
            return cls(field, n, la.identity(dom, n))
        if isinstance(form, str):
            if not form.startswith("diag:"):
                raise InputError(f"cannot parse form spec {form!r}")
            entries = [parse_scalar(field, t) for t in form[5:].split(",")]
            if len(entries) != n:
                raise InputError(
                    f"diag form has {len(entries)} entries, expected {n}"
                )
            return cls(field, n, la.diag_mat(dom, tuple(entries)))
        form = list(form)
        if form and not isinstance(form[0], (list, tuple)):
            entries = [parse_scalar(field, t) for t in form]
            if len(entries) != n:
                raise InputError(
                    f"diag form has {len(entries)} entries, expected {n}"
                )
            return cls(field, n, la.diag_mat(dom, tuple(entries)))
        matrix = tuple(
            tuple(parse_scalar(field, t) for t in row) for row in form
        )
        return cls(field, n, matrix)

    def ingest(self, a):
        """Move a matrix given in the original coordinates into the
        diagonal working coordinates (no-op for diagonal input forms)."""
        if self.ingest_transform is None:
            return a
        t = self.ingest_transform
        tinv = la.inverse(self.domain, t)
        return la.mat_mul(self.domain, tinv, la.mat_mul(self.domain, a, t))

    def emit(self, a):
        """Inverse of ingest: map a working-coordinate matrix back."""
        if self.ingest_transform is None:
            return a
        t = self.ingest_transform
        tinv = la.inverse(self.domain, t)
        return la.mat_mul(self.domain, t, la.mat_mul(self.domain, a, tinv))

    def bilin(self, u, v):
        return la.bilin(self.domain, self.matrix, u, v)

    def gram(self, vecs):
        return la.gram(self.domain, self.matrix, vecs)

    def same_group(self, other):
        return (
            self.field == other.field
            and self.n == other.n
            and la.mat_eq(self.domain, self.given_matrix, other.given_matrix)
        )

    def __repr__(self):
        if all(self.domain.eq(d, self.domain.one()) for d in self.diag):
            shape = "standard"
        elif self.ingest_transform is None:
            shape = "diag"
        else:
            shape = "diagonalized"
        return f"FormContext({self.field}, n={self.n}, {shape})"


def classify_membership(a, ctx):
    """Locate a matrix relative to O(n, k, beta).

    Returns a MembershipVerdict: "SO" or "O_minus_SO" when a^T M a = M
    (split by determinant), "GO_proper" with the factor when
    a^T M a = alpha M for some other alpha != 0, and "none" otherwise.
    """
    dom = ctx.domain
    if la.mat_dims(a) != (ctx.n, ctx.n):
        raise InputError(
            f"matrix has shape {la.mat_dims(a)}, expected ({ctx.n}, {ctx.n})"
        )
    m = ctx.matrix
    t = la.mat_mul(dom, la.transpose(a), la.mat_mul(dom, m, a))
    # With diagonal M the similitude condition t = alpha*M is a direct
    # entrywise comparison once a candidate alpha is read off.
    alpha = None
    for j in range(ctx.n):
        if not dom.is_zero(m[j][j]):
            alpha = dom.div(t[j][j], m[j][j])
            break
    if alpha is None or dom.is_zero(alpha):
        return MembershipVerdict("none")
    if not la.mat_eq(dom, t, la.mat_scale(dom, alpha, m)):
        return MembershipVerdict("none")
    if dom.eq(alpha, dom.one()):
        d = la.det(dom, a)
        if dom.eq(d, dom.one()):
            return MembershipVerdict("SO", dom.one())
        return MembershipVerdict("O_minus_SO", dom.one())
    return MembershipVerdict("GO_proper", alpha)


def is_friendly(ctx):
    """The context's friendliness verdict with its witness table.

    The verdict is computed once when the context is built; this just
    reads it back in the (bool, witnesses) shape.  witnesses maps each
    checked diagonal ratio to a pair (x, y), y != 0, with
    x^2 + ratio * y^2 = 1; failed ratios are listed on
    ctx.friendly_failures instead.
    """
    return ctx.friendly, ctx.friendly_witnesses


def beta_orthogonal_basis(vectors, ctx=None, dom=None, m=None):
    """A beta-orthogonal basis of the span of the given vectors.

    Works over the context's field by default; callers doing extension
    arithmetic can pass an explicit domain and form matrix instead.  The
    input must be linearly independent and span a subspace on which beta
    restricts nondegenerately; a degenerate restriction is reported with
    the offending radical vector spelled out.
    """
    if ctx is not None:
        dom = ctx.domain
        m = ctx.matrix
    vectors = list(vectors)
    if not vectors:
        return []
    if la.rank(dom, la.mat_from_cols(vectors)) != len(vectors):
        raise InputError("beta_orthogonal_basis needs independent vectors")
    g = la.gram(dom, m, vectors)
    c, d = la.congruence_diagonalize(dom, g)
    out = []
    for j in range(len(vectors)):
        w = vectors[0]
        w = la.vec_scale(dom, c[0][j], w)
        for i in range(1, len(vectors)):
            w = la.vec_add(dom, w, la.vec_scale(dom, c[i][j], vectors[i]))
        out.append(w)
    for j in range(len(vectors)):
        if dom.is_zero(d[j][j]):
            raise PreconditionError(
                "beta restricts degenerately to the span: "
                f"{out[j]} is beta-orthogonal to every vector in it"
            )
    return out
