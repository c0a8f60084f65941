"""Ground fields and exact scalar arithmetic.

Everything in this package computes with exact representatives: rationals
(fractions) stand in for elements of Q, R, Q_p and algebraically closed
fields of characteristic 0, and small nonnegative ints stand in for
elements of F_p.  A quadratic extension k[sqrt(alpha)] is modelled by
pairs (a, b) meaning a + b*omega with omega^2 = alpha.

Two layers live here.  The *domain* classes (Rationals, PrimeField,
QuadExt) know only how to add and multiply and are what the linear
algebra is generic over.  The GroundField class sits on top and answers
the field-theoretic questions that depend on which completion the
rationals are standing in for: is this element a square, what is its
square class, what are the square class representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UnsupportedFieldError

# ---------------------------------------------------------------------------
# arithmetic domains


class Rationals:
    """Field of rational numbers; elements are Fraction instances."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / x

    def div(self, x, y):
        return x / y

    def is_zero(self, x):
        return x == 0

    def eq(self, x, y):
        return x == y


class PrimeField:
    """F_p for an odd prime p; elements are ints in range(p)."""

    def __init__(self, p):
        if not is_prime(p) or p == 2:
            raise InputError(f"prime field needs an odd prime, got {p}")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def div(self, x, y):
        return (x * self.inv(y)) % self.p

    def is_zero(self, x):
        return x % self.p == 0

    def eq(self, x, y):
        return (x - y) % self.p == 0


class QuadExt:
    """k[omega] with omega^2 = alpha, for a base domain k.

    Elements are pairs (a, b) of base elements, read as a + b*omega.
    alpha must be a nonsquare for this to be a field, but we do not
    check that here; callers that care (all of them, hopefully) pick
    alpha from a square-class computation.
    """

    def __init__(self, base, alpha):
        self.base = base
        self.alpha = alpha
        self.name = f"{base.name}[sqrt]"

    def zero(self):
        return (self.base.zero(), self.base.zero())

    def one(self):
        return (self.base.one(), self.base.zero())

    def omega(self):
        return (self.base.zero(), self.base.one())

    def embed(self, x):
        return (x, self.base.zero())

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def sub(self, x, y):
        return (self.base.sub(x[0], y[0]), self.base.sub(x[1], y[1]))

    def mul(self, x, y):
        a, b = x
        c, d = y
        k = self.base
        return (
            k.add(k.mul(a, c), k.mul(self.alpha, k.mul(b, d))),
            k.add(k.mul(a, d), k.mul(b, c)),
        )

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def conj(self, x):
        return (x[0], self.base.neg(x[1]))

    def norm(self, x):
        """a^2 - alpha*b^2, an element of the base domain."""
        k = self.base
        return k.sub(k.mul(x[0], x[0]), k.mul(self.alpha, k.mul(x[1], x[1])))

    def inv(self, x):
        n = self.norm(x)
        if self.base.is_zero(n):
            raise ZeroDivisionError("inverse of 0 (or alpha is a square)")
        ninv = self.base.inv(n)
        return (self.base.mul(x[0], ninv), self.base.neg(self.base.mul(x[1], ninv)))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def eq(self, x, y):
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])


def domain_pow(domain, x, k):
    """x^k by repeated squaring, k a nonnegative int."""
    result = domain.one()
    base = x
    while k:
        if k & 1:
            result = domain.mul(result, base)
        base = domain.mul(base, base)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# small number theory helpers


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a, p):
    """Legendre symbol (a|p) for odd p; 0 if p divides a."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def least_nonresidue(p):
    """Smallest positive nonsquare mod the odd prime p."""
    for r in range(2, p):
        if legendre(r, p) == -1:
            return r
    raise RuntimeError(f"no nonresidue below {p}?")  # pragma: no cover


def tonelli_shanks(a, p):
    """A square root of a mod odd prime p, or None if a is a nonsquare."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def two_square_rep(a, p):
    """The lexicographically first (x, y) with x^2 + y^2 = a mod p.

    Always solvable over a finite prime field (the squares and
    a-minus-squares both have more than p/2 elements counting 0).
    """
    a %= p
    for x in range(p):
        y = tonelli_shanks((a - x * x) % p, p)
        if y is not None:
            return (x, min(y, (p - y) % p) if y else 0)
    raise RuntimeError(f"{a} is not a sum of two squares mod {p}?")


def squarefree_part(n):
    """The squarefree part of a nonzero integer, sign included."""
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                out *= d
        d += 1 if d == 2 else 2
    return sign * out * n


def prime_factors(n):
    """Sorted distinct prime factors of a nonzero integer."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# p-adic valuations and symbols


def padic_val(x, p):
    """v_p of a nonzero Fraction (or int)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p):
    """u with x = p^v * u and v_p(u) = 0, as a Fraction."""
    v = padic_val(x, p)
    return Fraction(x) / Fraction(p) ** v


def _unit_mod(u, p):
    """A fractional p-adic unit reduced mod p (or mod 8 when p == 2)."""
    m = 8 if p == 2 else p
    num = u.numerator % m
    den = u.denominator % m
    if p == 2:
        # odd den: den^2 = 1 mod 8, so den^-1 = den
        return num * den % 8
    return num * pow(den, p - 2, p) % p


def hilbert_symbol(a, b, p):
    """The Hilbert symbol (a, b)_p for nonzero rationals, p a prime.

    Odd p uses the valuation/Legendre formula, p = 2 the mod-8 one;
    both are the usual closed forms one finds in any treatment of
    quadratic forms over local fields.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    alpha, beta = padic_val(a, p), padic_val(b, p)
    u, v = unit_part(a, p), unit_part(b, p)
    if p != 2:
        e = ((p - 1) // 2) % 2
        sign = (-1) ** (alpha * beta * e)
        lu = legendre(_unit_mod(u, p), p)
        lv = legendre(_unit_mod(v, p), p)
        return sign * (lu**beta) * (lv**alpha)
    um, vm = _unit_mod(u, 2), _unit_mod(v, 2)
    eps_u, eps_v = (um - 1) // 2 % 2, (vm - 1) // 2 % 2
    om_u, om_v = (um * um - 1) // 8 % 2, (vm * vm - 1) // 8 % 2
    return (-1) ** (eps_u * eps_v + alpha * om_v + beta * om_u)


HASSE_CONVENTIONS = ("serre", "jones")


def hasse_symbol(diag, p, convention="serre"):
    """Hasse symbol of diag(d_1, ..., d_n) at p.

    Two products are in circulation: over the strictly upper pairs
    (i < j), and over all pairs including the diagonal (i <= j).  They
    differ by the factor (det, -1)_p.  The strict product is the default;
    the tables of involution invariants pin the inclusive one because
    that is the only convention their printed p = 3 mod 4 rows satisfy.
    """
    if convention not in HASSE_CONVENTIONS:
        raise InputError(f"unknown hasse convention {convention!r}")
    diag = [Fraction(d) for d in diag]
    if any(d == 0 for d in diag):
        raise ValueError("hasse symbol of a degenerate diagonal")
    out = 1
    for i in range(len(diag)):
        start = i if convention == "jones" else i + 1
        for j in range(start, len(diag)):
            out *= hilbert_symbol(diag[i], diag[j], p)
    return out


def real_signature(diag):
    """(positives, negatives) of a nonzero rational diagonal."""
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    if pos + neg != len(diag):
        raise ValueError("signature of a degenerate diagonal")
    return (pos, neg)


# ---------------------------------------------------------------------------
# the ground field layer


FIELD_KINDS = ("Q", "R", "Fp", "Qp", "closed")


@dataclass(frozen=True)
class GroundField:
    """Which field the exact representatives are standing in for."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise InputError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not is_prime(self.p) or self.p == 2:
                raise InputError(f"Fp needs an odd prime, got {self.p}")
        elif self.kind == "Qp":
            if self.p is None or not is_prime(self.p):
                raise InputError(f"Qp needs a prime, got {self.p}")
        elif self.p is not None:
            raise InputError(f"field kind {self.kind} takes no prime")

    @classmethod
    def parse(cls, text):
        """Parse 'Q', 'R', 'closed', 'Fp:5' or 'Qp:7'."""
        text = text.strip()
        if text in ("Q", "R", "closed"):
            return cls(text)
        for prefix in ("Fp", "Qp"):
            if text.startswith(prefix + ":"):
                try:
                    p = int(text[len(prefix) + 1 :])
                except ValueError:
                    raise InputError(f"bad prime in field string {text!r}") from None
                return cls(prefix, p)
        raise InputError(f"cannot parse field string {text!r}")

    def __str__(self):
        if self.p is not None:
            return f"{self.kind}:{self.p}"
        return self.kind

    def domain(self):
        if self.kind == "Fp":
            return PrimeField(self.p)
        return Rationals()

    # -- squares ----------------------------------------------------------

    def is_square(self, x):
        """Is the domain element x a square in this field?  x may be 0."""
        if self.kind == "Fp":
            return legendre(x, self.p) >= 0
        x = Fraction(x)
        if x == 0:
            return True
        if self.kind == "closed":
            return True
        if self.kind == "R":
            return x > 0
        if self.kind == "Q":
            return rational_sqrt(x) is not None
        # Qp
        if padic_val(x, self.p) % 2 != 0:
            return False
        u = _unit_mod(unit_part(x, self.p), self.p)
        if self.p == 2:
            return u % 8 == 1
        return legendre(u, self.p) == 1

    def square_class(self, x):
        """Canonical representative of x's square class, a domain element.

        Nonzero x only.  The representative of the trivial class is 1.
        """
        if self.kind == "Fp":
            if x % self.p == 0:
                raise ValueError("square class of 0")
            return 1 if legendre(x, self.p) == 1 else least_nonresidue(self.p)
        x = Fraction(x)
        if x == 0:
            raise ValueError("square class of 0")
        if self.kind == "closed":
            return Fraction(1)
        if self.kind == "R":
            return Fraction(1) if x > 0 else Fraction(-1)
        if self.kind == "Q":
            return Fraction(squarefree_part(x.numerator * x.denominator))
        p = self.p
        v = padic_val(x, p) % 2
        u = _unit_mod(unit_part(x, p), p)
        if p == 2:
            unit_rep = {1: 1, 3: 3, 5: -3, 7: -1}[u % 8]
        else:
            unit_rep = 1 if legendre(u, p) == 1 else least_nonresidue(p)
        return Fraction(unit_rep * (p if v else 1))

    def square_class_reps(self):
        """All square class representatives, when there are finitely many."""
        if self.kind == "closed":
            return [Fraction(1)]
        if self.kind == "R":
            return [Fraction(1), Fraction(-1)]
        if self.kind == "Fp":
            return [1, least_nonresidue(self.p)]
        if self.kind == "Qp":
            p = self.p
            if p == 2:
                return [Fraction(s * u) for u in (1, 2, 3, 6) for s in (1, -1)]
            np_ = least_nonresidue(p)
            return [Fraction(r) for r in (1, np_, p, p * np_)]
        raise UnsupportedFieldError("Q has infinitely many square classes")

    def sqrt_exact(self, x):
        """A domain element with square x, or None if there is none
        *representable in the domain*.  Over R, Qp and closed fields an
        element can be a square of the field without having a square
        root among our rational representatives; callers fall back to a
        quadratic extension in that case."""
        if self.kind == "Fp":
            return tonelli_shanks(x, self.p)
        return rational_sqrt(Fraction(x))

    # -- friendliness ------------------------------------------------------

    def friendly_witness(self, r):
        """(x, y) with x^2 + r y^2 = 1 and y != 0, or None.

        For ratios away from -1 there is a uniform witness
        ((r-1)/(r+1), 2/(r+1)); for r = -1 characteristic 0 has
        (5/3, 4/3), and over F_p we search, which can genuinely fail
        (F_3 has no witness for ratio -1).
        """
        if self.kind == "Fp":
            p = self.p
            r = r % p
            if r == 0:
                raise ValueError("friendliness ratio must be nonzero")
            if r != p - 1:
                inv2 = pow((r + 1) % p, p - 2, p)
                return ((r - 1) * inv2 % p, 2 * inv2 % p)
            for y in range(1, p):
                rhs = (1 - r * y * y) % p
                x = tonelli_shanks(rhs, p)
                if x is not None:
                    return (x, y)
            return None
        r = Fraction(r)
        if r == 0:
            raise ValueError("friendliness ratio must be nonzero")
        if r == -1:
            return (Fraction(5, 3), Fraction(4, 3))
        return ((r - 1) / (r + 1), 2 / (r + 1))


def context_friendliness(field, diag):
    """Check all pairwise ratios of a diagonal form for witnesses.

    Returns (friendly, failures, witnesses) where failures lists the
    ratio square classes with no witness and witnesses maps each checked
    ratio to one witness pair.  Only F_p can ever fail.
    """
    dom = field.domain()
    ratios = {}
    for ms in diag:
        for mt in diag:
            r = dom.div(ms, mt)
            ratios.setdefault(field.square_class(r), r)
    failures = []
    witnesses = {}
    for cls, r in sorted(ratios.items(), key=lambda kv: str(kv[0])):
        w = field.friendly_witness(r)
        if w is None:
            failures.append(cls)
        else:
            witnesses[r] = w
    return (not failures, failures, witnesses)


# ---------------------------------------------------------------------------
# squares in quadratic extensions


def ext_is_square_fp2(ext, x):
    """Squareness of x in F_{p^2} presented as F_p[sqrt(nonsquare)]."""
    p = ext.base.p
    if ext.is_zero(x):
        return True
    r = domain_pow(ext, x, (p * p - 1) // 2)
    return ext.eq(r, ext.one())


def ext_is_square_rational(ext, x):
    """Squareness of x = u + v*sqrt(d) in Q(sqrt(d)), d a nonsquare rational.

    If (s + t sqrt(d))^2 = u + v sqrt(d) then s^2 and d t^2 are the two
    roots of X^2 - uX + d(v/2)^2, whose discriminant is the norm
    u^2 - d v^2.  So x is a square iff the norm is a rational square w^2
    and one of (u +- w)/2 is a rational square (with the v = 0 case
    degenerating to u or u/d being one)."""
    u, v = Fraction(x[0]), Fraction(x[1])
    d = Fraction(ext.alpha)
    if u == 0 and v == 0:
        return True
    if v == 0:
        return rational_sqrt(u) is not None or rational_sqrt(u / d) is not None
    w = rational_sqrt(u * u - d * v * v)
    if w is None:
        return False
    return any(rational_sqrt((u + s * w) / 2) is not None for s in (1, -1))


def ext_sign_real(ext, x, embedding=1):
    """Sign of u + v*sqrt(d) under a real embedding (d > 0 rational).

    embedding=+1 sends omega to the positive root, -1 to the negative."""
    d = Fraction(ext.alpha)
    if d <= 0:
        raise ValueError("real sign needs a positive alpha")
    u, v = Fraction(x[0]), Fraction(x[1]) * embedding
    if u == 0 and v == 0:
        return 0
    if u >= 0 and v >= 0:
        return 1
    if u <= 0 and v <= 0:
        return -1
    # opposite signs: compare u^2 against d v^2
    big_u = u * u > d * v * v
    if big_u:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1
