"""Brute force over small finite orthogonal groups.

This module is the independent check the rest of the package is tested
against, so it deliberately shares no code with linalg.py or fields.py:
matrices are tuples of row tuples of ints mod p, and the handful of
helpers it needs (dot products, determinants, Legendre symbols) are
written out here again.  If the library and this file agree, they agree
for structural reasons, not because they call the same routine.

Two routes to each group are kept: direct column-by-column backtracking
over all matrices X with X^T M X = M, and closure of a reflection set
under multiplication.  Tests require the two to produce the same order.
"""

from __future__ import annotations

from .errors import InternalError, PreconditionError


# -- scalar and matrix helpers ---------------------------------------------


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonsquare(p):
    for r in range(2, p):
        if _legendre(r, p) == -1:
            return r
    raise InternalError(f"no nonsquare mod {p}")  # pragma: no cover


def mat_mul_p(a, b, p):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_neg_p(a, p):
    return tuple(tuple((-x) % p for x in row) for row in a)


def mat_eye(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def det_p(a, p):
    n = len(a)
    rows = [list(r) for r in a]
    out = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] % p), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            out = -out
        out = out * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return out % p


def orth_inverse(x, mdiag, p):
    """Inverse of an M-orthogonal matrix: M^-1 X^T M, entrywise."""
    n = len(x)
    return tuple(
        tuple(
            x[j][i] * mdiag[j] % p * pow(mdiag[i], p - 2, p) % p for j in range(n)
        )
        for i in range(n)
    )


def _wdot(u, wv, p):
    return sum(a * b for a, b in zip(u, wv)) % p


def _weight(v, mdiag, p):
    return tuple(a * m % p for a, m in zip(v, mdiag))


def _all_vectors(n, p):
    vecs = [()]
    for _ in range(n):
        vecs = [v + (c,) for v in vecs for c in range(p)]
    return vecs


# -- group enumeration ------------------------------------------------------


def _columns_backtrack(n, p, mdiag, collect, det_value=None, max_elements=None,
                       progress=None):
    """Shared engine: count or collect all X with X^T M X = M.

    Enumerates orthogonal column tuples; at the leaf either bumps a
    counter or stores the matrix (rows), optionally filtered by
    determinant.  Raises PreconditionError when max_elements is hit.
    """
    norms = {}
    for v in _all_vectors(n, p):
        norms.setdefault(_wdot(v, _weight(v, mdiag, p), p), []).append(v)
    needed = set(mdiag)
    pools = {m: norms.get(m, []) for m in needed}
    out = [] if collect else None
    count = 0

    def rec(level, chosen, pools):
        nonlocal count
        if level == n:
            if det_value is not None:
                x = tuple(zip(*chosen))  # rows from columns
                if det_p(x, p) != det_value % p:
                    return
            count += 1
            if max_elements is not None and count > max_elements:
                raise PreconditionError(
                    f"group has more than max-elements={max_elements} elements"
                )
            if collect:
                out.append(tuple(zip(*chosen)))
            return
        target = mdiag[level]
        cands = pools[target]
        for idx, v in enumerate(cands):
            if progress is not None and level == 0:
                progress(f"column 1: candidate {idx + 1}/{len(cands)}")
            wv = _weight(v, mdiag, p)
            sub = {
                m: [u for u in pool if _wdot(u, wv, p) == 0]
                for m, pool in pools.items()
            }
            rec(level + 1, chosen + (v,), sub)

    rec(0, (), pools)
    return count if not collect else out


def group_order(n, p, mdiag, max_elements=None, progress=None):
    """|O(n, F_p, diag(mdiag))| by exhaustive backtracking."""
    return _columns_backtrack(
        n, p, mdiag, collect=False, max_elements=max_elements, progress=progress
    )


def orthogonal_group(n, p, mdiag, det_value=None, max_elements=None):
    """All of O (or, with det_value, one coset/subgroup) as row-tuple mats."""
    return _columns_backtrack(
        n, p, mdiag, collect=True, det_value=det_value, max_elements=max_elements
    )


def reflections(n, p, mdiag):
    """All reflections r_v for nonisotropic v, one per projective point.

    These generate the orthogonal group (any isometry is a product of
    reflections in characteristic != 2), which is what the conjugacy
    closure below relies on.
    """
    out = []
    seen = set()
    for v in _all_vectors(n, p):
        if all(c == 0 for c in v):
            continue
        lead = next(c for c in v if c)
        if lead != 1:
            continue  # one representative per line
        norm = _wdot(v, _weight(v, mdiag, p), p)
        if norm == 0:
            continue
        ninv = pow(norm, p - 2, p)
        r = tuple(
            tuple(
                ((1 if i == j else 0) - 2 * v[i] * v[j] * mdiag[j] * ninv) % p
                for j in range(n)
            )
            for i in range(n)
        )
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def orthogonal_group_bfs(n, p, mdiag, max_elements=None):
    """The same group, as the multiplicative closure of the reflections."""
    gens = reflections(n, p, mdiag)
    seen = {mat_eye(n)}
    frontier = [mat_eye(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul_p(x, g, p)
                if y not in seen:
                    if max_elements is not None and len(seen) >= max_elements:
                        raise PreconditionError(
                            f"group has more than max-elements={max_elements}"
                        )
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- involution candidates --------------------------------------------------


def involution_candidates(n, p, mdiag, itype, progress=None):
    """All coefficient matrices for inner involutions of the given type.

    Returns (delta, candidates).  For types 1 and 3 delta is 1 and the
    candidates are the involution matrices themselves (scalars excluded
    for type 1).  For types 2 and 4 delta is the canonical nonsquare and
    a candidate B encodes A = sqrt(delta) * B.

    The enumeration walks columns left to right.  Self- or
    skew-adjointness with respect to M pins every entry above the
    diagonal once the columns to its left are fixed, so column j has
    only its last n - j coordinates free; the Gram conditions
    beta(b_i, b_j) = delta^-1 m_i delta_ij prune as we go and B^2 is
    checked at the leaf.
    """
    if itype in (1, 3):
        delta = 1
        eps = 1 if itype == 1 else -1
    elif itype in (2, 4):
        delta = least_nonsquare(p)
        eps = 1 if itype == 2 else -1
    else:
        raise PreconditionError(f"unknown involution type {itype}")
    dinv = pow(delta, p - 2, p)
    minv = [pow(m, p - 2, p) for m in mdiag]
    target_sq = [[(eps * dinv if i == j else 0) % p for j in range(n)] for i in range(n)]

    suffixes = {}

    def suffix_vectors(k):
        if k not in suffixes:
            suffixes[k] = _all_vectors(k, p)
        return suffixes[k]

    found = []

    def rec(cols):
        j = len(cols)
        if j == n:
            b = tuple(zip(*cols))
            sq = mat_mul_p(b, b, p)
            if any(
                sq[i][k] != target_sq[i][k] for i in range(n) for k in range(n)
            ):
                return
            if itype == 1:
                if all(b[i][k] == (0 if i != k else b[0][0]) for i in range(n) for k in range(n)):
                    return  # scalar
            found.append(b)
            return
        # entries forced by adjointness: m_i B_ij = eps m_j B_ji
        head = tuple(
            eps * mdiag[j] % p * cols[i][j] % p * minv[i] % p for i in range(j)
        )
        want_norm = dinv * mdiag[j] % p
        wcols = [_weight(c, mdiag, p) for c in cols]
        for tail in suffix_vectors(n - j):
            v = head + tail
            wv = _weight(v, mdiag, p)
            if _wdot(v, wv, p) != want_norm:
                continue
            if any(_wdot(v, wc, p) != 0 for wc in wcols):
                continue
            if progress is not None and j == 0:
                progress(f"type {itype}: anchored column {v}")
            rec(cols + (v,))

    rec(())
    return delta, found


# -- conjugacy --------------------------------------------------------------


def _canon(b, p, plus_minus):
    flat = tuple(x for row in b for x in row)
    if not plus_minus:
        return flat
    neg = tuple((-x) % p for x in flat)
    return min(flat, neg)


def conjugacy_classes(n, p, mdiag, candidates, plus_minus=True):
    """Partition candidates into orbits under conjugation by O(n, p, M).

    Conjugation closure under the full reflection set; with plus_minus
    the keys identify B with -B, matching isomorphy of the induced
    involutions rather than plain matrix conjugacy.
    """
    gens = reflections(n, p, mdiag)
    universe = {_canon(b, p, plus_minus): b for b in candidates}
    unseen = dict(universe)
    classes = []
    while unseen:
        key, rep = next(iter(unseen.items()))
        orbit = {key}
        del unseen[key]
        frontier = [rep]
        while frontier:
            nxt = []
            for b in frontier:
                for r in gens:
                    # reflections are their own inverses: conj = r b r
                    y = mat_mul_p(r, mat_mul_p(b, r, p), p)
                    k = _canon(y, p, plus_minus)
                    if k not in orbit:
                        if k not in universe:
                            raise InternalError(
                                "conjugation left the candidate set"
                            )
                        orbit.add(k)
                        del unseen[k]
                        nxt.append(y)
            frontier = nxt
        classes.append(orbit)
    return classes


def count_classes_bruteforce(n, p, mdiag, itype, include_degenerate=True,
                             progress=None):
    """Number of isomorphy classes of the given type, by brute force.

    For type 1 the reference counts include the two degenerate scalar
    classes {I} and {-I} (conjugation by anything fixes them, and as
    automorphisms both induce the identity); include_degenerate keeps
    that convention.  Types 2, 3, 4 have no scalar members.
    """
    _, cands = involution_candidates(n, p, mdiag, itype, progress=progress)
    classes = conjugacy_classes(n, p, mdiag, cands)
    extra = 2 if (itype == 1 and include_degenerate) else 0
    return len(classes) + extra


def conjugate_in_group(n, p, mdiag, a, b, det_value=None, allow_negation=True,
                       max_elements=None):
    """Search W with W^-1 a W = b (or -b) over O, SO or the other coset.

    Exhaustive over the whole (sub)group; returns a witness W or None.
    """
    nb = mat_neg_p(b, p)
    group = orthogonal_group(
        n, p, mdiag, det_value=det_value, max_elements=max_elements
    )
    for w in group:
        winv = orth_inverse(w, mdiag, p)
        conj = mat_mul_p(winv, mat_mul_p(a, w, p), p)
        if conj == b or (allow_negation and conj == nb):
            return w
    return None
