"""Exact linear algebra, generic over the arithmetic domains.

Matrices are tuples of row tuples whose entries are raw domain elements
(Fractions, ints mod p, or extension pairs); every function takes the
domain as its first argument.  Nothing here ever touches floating
point.  The routines are plain Gaussian elimination with deterministic
pivoting, which matters: the decomposition code leans on the fact that
the same input always produces the same basis.
"""

from __future__ import annotations

from .errors import InternalError, PreconditionError


# -- construction and shape -------------------------------------------------


def mat_dims(a):
    return (len(a), len(a[0]) if a else 0)


def identity(dom, n):
    one, zero = dom.one(), dom.zero()
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def zeros(dom, r, c):
    zero = dom.zero()
    return tuple(tuple(zero for _ in range(c)) for _ in range(r))


def mat_from_cols(cols):
    n = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(n))


def mat_col(a, j):
    return tuple(row[j] for row in a)


def mat_cols(a):
    return [mat_col(a, j) for j in range(len(a[0]))]


# -- arithmetic -------------------------------------------------------------


def mat_add(dom, a, b):
    return tuple(
        tuple(dom.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(dom, a, b):
    return tuple(
        tuple(dom.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_neg(dom, a):
    return tuple(tuple(dom.neg(x) for x in row) for row in a)


def mat_scale(dom, c, a):
    return tuple(tuple(dom.mul(c, x) for x in row) for row in a)


def mat_mul(dom, a, b):
    bt = transpose(b)
    out = []
    for row in a:
        out.append(
            tuple(_dot(dom, row, col) for col in bt)
        )
    return tuple(out)


def _dot(dom, u, v):
    acc = dom.zero()
    for x, y in zip(u, v):
        acc = dom.add(acc, dom.mul(x, y))
    return acc


def mat_vec(dom, a, v):
    return tuple(_dot(dom, row, v) for row in a)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def trace(dom, a):
    acc = dom.zero()
    for i in range(len(a)):
        acc = dom.add(acc, a[i][i])
    return acc


def mat_eq(dom, a, b):
    if mat_dims(a) != mat_dims(b):
        return False
    return all(
        dom.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero_mat(dom, a):
    return all(dom.is_zero(x) for row in a for x in row)


def is_scalar_mat(dom, a):
    """Return the scalar c if a == c*I, else None."""
    n = len(a)
    c = a[0][0]
    for i in range(n):
        for j in range(n):
            want = c if i == j else dom.zero()
            if not dom.eq(a[i][j], want):
                return None
    return c


# -- vectors ----------------------------------------------------------------


def vec_add(dom, u, v):
    return tuple(dom.add(x, y) for x, y in zip(u, v))


def vec_sub(dom, u, v):
    return tuple(dom.sub(x, y) for x, y in zip(u, v))


def vec_scale(dom, c, v):
    return tuple(dom.mul(c, x) for x in v)


def vec_eq(dom, u, v):
    return all(dom.eq(x, y) for x, y in zip(u, v))


def vec_is_zero(dom, v):
    return all(dom.is_zero(x) for x in v)


# -- elimination ------------------------------------------------------------


def rref(dom, a):
    """Reduced row echelon form with leftmost pivots.

    Returns (rows, pivot_columns).  Zero rows are dropped.
    """
    rows = [list(r) for r in a]
    nr, nc = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not dom.is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = dom.inv(rows[r][c])
        rows[r] = [dom.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and not dom.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in rows[:r]), pivots


def reversed_rref(dom, a):
    """Row reduction that picks pivots from the rightmost column inward.

    The output rows are ordered by pivot position, highest column first,
    each pivot scaled to 1 and cleared from every other row.  Like rref
    this is a canonical form of the row space, just anchored at the other
    end; it is the normalization under which the worked eigenbasis
    examples in the source material come out verbatim.
    """
    rows = [list(r) for r in a]
    nr, nc = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc - 1, -1, -1):
        pr = next((i for i in range(r, nr) if not dom.is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = dom.inv(rows[r][c])
        rows[r] = [dom.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and not dom.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in rows[:r]), pivots


def rank(dom, a):
    return len(rref(dom, a)[0])


def det(dom, a):
    n = len(a)
    rows = [list(r) for r in a]
    out = dom.one()
    for c in range(n):
        pr = next((i for i in range(c, n) if not dom.is_zero(rows[i][c])), None)
        if pr is None:
            return dom.zero()
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            out = dom.neg(out)
        out = dom.mul(out, rows[c][c])
        inv = dom.inv(rows[c][c])
        for i in range(c + 1, n):
            if not dom.is_zero(rows[i][c]):
                f = dom.mul(rows[i][c], inv)
                rows[i] = [
                    dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[i], rows[c])
                ]
    return out


def inverse(dom, a):
    n = len(a)
    rows = [list(r) + list(ir) for r, ir in zip(a, identity(dom, n))]
    for c in range(n):
        pr = next((i for i in range(c, n) if not dom.is_zero(rows[i][c])), None)
        if pr is None:
            raise ValueError("singular matrix")
        rows[c], rows[pr] = rows[pr], rows[c]
        inv = dom.inv(rows[c][c])
        rows[c] = [dom.mul(inv, x) for x in rows[c]]
        for i in range(n):
            if i != c and not dom.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[i], rows[c])
                ]
    return tuple(tuple(row[n:]) for row in rows)


def column_space_basis(dom, a):
    """The leftmost independent columns of a, as a list of vectors."""
    _, pivots = rref(dom, a)
    return [mat_col(a, j) for j in pivots]


def independent_subset(dom, vecs):
    """Greedy left-to-right independent subset of a list of vectors."""
    if not vecs:
        return []
    m = mat_from_cols(vecs)
    _, pivots = rref(dom, m)
    return [vecs[j] for j in pivots]


# -- bilinear forms ---------------------------------------------------------


def bilin(dom, m, u, v):
    return _dot(dom, u, mat_vec(dom, m, v))


def gram(dom, m, vecs):
    mv = [mat_vec(dom, m, v) for v in vecs]
    return tuple(
        tuple(_dot(dom, u, w) for w in mv) for u in vecs
    )


def is_diagonal(dom, a):
    n, c = mat_dims(a)
    return all(
        dom.is_zero(a[i][j]) for i in range(n) for j in range(c) if i != j
    )


def diag_of(a):
    return tuple(a[i][i] for i in range(len(a)))


def diag_mat(dom, entries):
    n = len(entries)
    zero = dom.zero()
    return tuple(
        tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)
    )


def congruence_diagonalize(dom, s):
    """(c, d) with c^T s c = d diagonal, for symmetric s, char != 2.

    If s is already diagonal, c is the identity; downstream code depends
    on that to keep canonical bases untouched.  Otherwise symmetric
    Gaussian congruence with the usual repair step: when no nonzero
    diagonal entry is available, add a column (and row) to create one,
    which works because 2 is invertible.
    """
    n = len(s)
    if is_diagonal(dom, s):
        return identity(dom, n), s
    work = [list(row) for row in s]
    c = [list(row) for row in identity(dom, n)]

    def add_col(dst, src, f):
        # column dst += f * column src, symmetrically, tracking c
        for i in range(n):
            work[i][dst] = dom.add(work[i][dst], dom.mul(f, work[i][src]))
        for j in range(n):
            work[dst][j] = dom.add(work[dst][j], dom.mul(f, work[src][j]))
        for i in range(n):
            c[i][dst] = dom.add(c[i][dst], dom.mul(f, c[i][src]))

    def swap_cols(i, j):
        for r in range(n):
            work[r][i], work[r][j] = work[r][j], work[r][i]
        work[i], work[j] = work[j], work[i]
        for r in range(n):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    for i in range(n):
        if dom.is_zero(work[i][i]):
            j = next(
                (k for k in range(i + 1, n) if not dom.is_zero(work[k][k])), None
            )
            if j is not None:
                swap_cols(i, j)
            else:
                found = None
                for r in range(i, n):
                    for l in range(r + 1, n):
                        if not dom.is_zero(work[r][l]):
                            found = (r, l)
                            break
                    if found:
                        break
                if found is None:
                    continue  # remaining block is zero
                r, l = found
                add_col(r, l, dom.one())
                if r != i:
                    swap_cols(i, r)
        piv = work[i][i]
        if dom.is_zero(piv):
            continue
        for j in range(i + 1, n):
            if not dom.is_zero(work[i][j]):
                add_col(j, i, dom.neg(dom.div(work[i][j], piv)))

    cmat = tuple(tuple(row) for row in c)
    d = mat_mul(dom, mat_mul(dom, transpose(cmat), s), cmat)
    if not is_diagonal(dom, d):
        raise InternalError("congruence diagonalization failed")
    return cmat, d


# -- quadratic extension plumbing -------------------------------------------


def mat_embed(ext, a):
    return tuple(tuple(ext.embed(x) for x in row) for row in a)


def mat_parts(ext, a):
    """Split a matrix over k[omega] into its base and omega parts."""
    first = tuple(tuple(x[0] for x in row) for row in a)
    second = tuple(tuple(x[1] for x in row) for row in a)
    return first, second


def entries_pure_base(ext, a):
    return all(ext.base.is_zero(x[1]) for row in a for x in row)


def entries_pure_omega(ext, a):
    return all(ext.base.is_zero(x[0]) for row in a for x in row)


def vec_parts(ext, v):
    return tuple(x[0] for x in v), tuple(x[1] for x in v)


# -- eigenbases of finite-order matrices ------------------------------------


def eig_basis_order2(dom, a):
    """Bases of the -1 and +1 eigenspaces of a matrix squaring to I.

    Returns (minus, plus), each a list of column vectors: the leftmost
    independent columns of a - I span ker(a + I), and vice versa, because
    (a - I)(a + I) = 0 and the two kernels fill the whole space.  The
    counts add up to n, which is re-checked here.

    Raises PreconditionError when a*a != I or when a is +-I (a scalar
    matrix has a single eigenspace and nothing to decompose).
    """
    n, c = mat_dims(a)
    if n != c:
        raise PreconditionError("eigenbasis of a non-square matrix")
    ii = identity(dom, n)
    if not mat_eq(dom, mat_mul(dom, a, a), ii):
        raise PreconditionError("matrix does not square to the identity")
    if is_scalar_mat(dom, a) is not None:
        raise PreconditionError(
            "matrix is a scalar; its only eigenspace is the whole space"
        )
    minus = column_space_basis(dom, mat_sub(dom, a, ii))
    plus = column_space_basis(dom, mat_add(dom, a, ii))
    if len(minus) + len(plus) != n:
        raise InternalError("order-2 eigenspace dimensions do not fill k^n")
    return minus, plus


def eig_basis_order4(dom, a, mode, i_value=None, alpha=None):
    """Pairs (x_j, y_j) describing the i-eigenspaces of a matrix of order 4.

    For a with a*a = -I the eigenvalues are +-i, which may or may not live
    in the coefficient field.  The output is n/2 pairs of vectors over dom
    such that u_j = x_j + w*y_j spans E(a, -i), with w depending on mode:

    * "i_in_field": i_value is an element of dom with square -1; the pairs
      are (z, a z) and u_j = z + i(a z) stays inside dom^n.
    * "i_adjoined": same pairs, but u_j lives over dom[sqrt(-1)] and
      independence is checked there.
    * "sqrt_minus_alpha": a is not given directly; instead `a` is the
      coefficient matrix b of A = sqrt(alpha) b, and w = sqrt(-alpha).
      Here u_j = (sqrt(alpha) A - w I) z = (alpha b - w I) z, so the pairs
      are (alpha b z, -z).  Independence is checked over dom[w], or over
      dom itself when i_value (a square root of -alpha in dom) is supplied.

    In every mode the number of pairs is exactly n/2.
    """
    from .fields import QuadExt

    n, c = mat_dims(a)
    if n != c:
        raise PreconditionError("eigenbasis of a non-square matrix")
    ii = identity(dom, n)
    if mode in ("i_in_field", "i_adjoined"):
        if not mat_eq(dom, mat_mul(dom, a, a), mat_neg(dom, ii)):
            raise PreconditionError("matrix does not square to -I")
        if mode == "i_in_field":
            if i_value is None or not dom.is_zero(
                dom.add(dom.mul(i_value, i_value), dom.one())
            ):
                raise PreconditionError("i_value must square to -1")
            span = mat_add(dom, ii, mat_scale(dom, i_value, a))
            _, pivots = rref(dom, span)
        else:
            ext = QuadExt(dom, dom.neg(dom.one()))
            span = mat_add(
                ext,
                mat_embed(ext, ii),
                mat_scale(ext, ext.omega(), mat_embed(ext, a)),
            )
            _, pivots = rref(ext, span)
        pairs = [(mat_col(ii, j), mat_col(a, j)) for j in pivots]
    elif mode == "sqrt_minus_alpha":
        if alpha is None:
            raise PreconditionError("sqrt_minus_alpha mode needs alpha")
        inv_alpha = dom.inv(alpha)
        want = mat_scale(dom, dom.neg(inv_alpha), ii)
        if not mat_eq(dom, mat_mul(dom, a, a), want):
            raise PreconditionError(
                "coefficient matrix does not square to -(1/alpha) I"
            )
        ab = mat_scale(dom, alpha, a)
        if i_value is not None:
            if not dom.eq(
                dom.mul(i_value, i_value), dom.neg(alpha)
            ):
                raise PreconditionError("i_value must square to -alpha")
            span = mat_sub(dom, ab, mat_scale(dom, i_value, ii))
            _, pivots = rref(dom, span)
        else:
            ext = QuadExt(dom, dom.neg(alpha))
            span = mat_sub(
                ext,
                mat_embed(ext, ab),
                mat_scale(ext, ext.omega(), mat_embed(ext, ii)),
            )
            _, pivots = rref(ext, span)
        pairs = [
            (mat_col(ab, j), vec_scale(dom, dom.neg(dom.one()), mat_col(ii, j)))
            for j in pivots
        ]
    else:
        raise PreconditionError(f"unknown eigenbasis mode {mode!r}")
    if 2 * len(pairs) != n:
        raise InternalError("order-4 eigenspace does not have dimension n/2")
    return pairs
