"""Sparse multivariate polynomials with exact coefficients.

Coefficients live in a small "domain" (rationals, a FieldTower, or F_p)
exposing zero/one/coerce; polynomial arithmetic never leaves the domain.
Monomials are exponent tuples; the global order is graded lexicographic,
which fixes canonical printing, the leading term used by exact division,
and the witness monomial reported when two polynomials fail to be
proportional.

The resultant here is the classical Sylvester determinant with the rows of
the first form on top and coefficients listed with the leading power of the
first variable first.  Under that convention Res(u, v) = +1 for the two
coordinate forms, and every scalar recorded by the verification suites is
stated relative to it.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .field import (
    FieldElement,
    FieldTower,
    GFElement,
    PrimeField,
    _ElementParser,
    element_to_str,
)


class RationalDomain:
    """Plain Q with raw Fraction values (fast path, no tower overhead)."""

    __slots__ = ()

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, FieldElement):
            return x.rational_value()
        raise ValueError(f"cannot coerce {x!r} into Q")

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("RationalDomain")

    def __repr__(self):
        return "Q"


QQ = RationalDomain()


def default_names(nvars: int) -> tuple:
    if nvars <= 4:
        return ("x", "y", "z", "w")[:nvars]
    return tuple(f"x{i}" for i in range(nvars))


def _grlex_key(exps: tuple):
    return (sum(exps), exps)


class MultiPoly:
    """Exact sparse polynomial; immutable by convention."""

    __slots__ = ("nvars", "terms", "domain", "_hash")

    def __init__(self, nvars: int, terms: dict, domain, *, _clean=False):
        self.nvars = nvars
        self.domain = domain
        if _clean:
            self.terms = terms
        else:
            clean = {}
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"monomial arity {len(exps)} != {nvars}")
                c = domain.coerce(c)
                if c:
                    clean[exps] = c
            self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(nvars: int, domain=QQ) -> "MultiPoly":
        return MultiPoly(nvars, {}, domain, _clean=True)

    @staticmethod
    def constant(nvars: int, c, domain=QQ) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: c}, domain)

    @staticmethod
    def variable(index: int, nvars: int, domain=QQ) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return MultiPoly(nvars, {tuple(exps): domain.one()}, domain, _clean=True)

    @staticmethod
    def variables(nvars: int, domain=QQ) -> tuple:
        return tuple(MultiPoly.variable(i, nvars, domain) for i in range(nvars))

    # -- basic queries ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(monomial, coefficient) that is graded-lex largest."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def coefficient(self, exps: tuple):
        return self.terms.get(tuple(exps), self.domain.zero())

    def monomials_desc(self):
        return sorted(self.terms, key=_grlex_key, reverse=True)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.domain.zero()
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def is_term(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic ------------------------------------------------------------

    def _check_compatible(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomial arity mismatch")
        if self.domain != other.domain:
            raise ValueError("coefficient domain mismatch")

    def _coerce_other(self, other):
        if isinstance(other, MultiPoly):
            self._check_compatible(other)
            return other
        try:
            c = self.domain.coerce(other)
        except (ValueError, TypeError):
            return None
        return MultiPoly.constant(self.nvars, c, self.domain)

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = c
            else:
                acc = acc + c
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        return MultiPoly(self.nvars, terms, self.domain, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.nvars,
            {e: -c for e, c in self.terms.items()},
            self.domain,
            _clean=True,
        )

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = self.domain.coerce(other)
            except (ValueError, TypeError):
                return NotImplemented
            if not c:
                return MultiPoly.zero(self.nvars, self.domain)
            return MultiPoly(
                self.nvars,
                {e: k * c for e, k in self.terms.items()},
                self.domain,
                _clean=True,
            )
        self._check_compatible(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(exps)
                if acc is None:
                    out[exps] = c
                else:
                    acc = acc + c
                    if acc:
                        out[exps] = acc
                    else:
                        del out[exps]
        return MultiPoly(self.nvars, out, self.domain, _clean=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; exact polynomial division is divide_exact
        try:
            c = self.domain.coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        inv = _domain_inverse(c)
        return self * inv

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.constant(self.nvars, self.domain.one(), self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                self.nvars == other.nvars
                and self.domain == other.domain
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            try:
                c = self.domain.coerce(other)
            except (ValueError, TypeError):
                return NotImplemented
            if not c:
                return not self.terms
            return self.terms == {(0,) * self.nvars: c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.nvars, frozenset(self.terms.items()))
            )
        return self._hash

    def __repr__(self):
        return poly_to_str(self)

    # -- calculus ----------------------------------------------------------------

    def derivative(self, var: int) -> "MultiPoly":
        out = {}
        for exps, c in self.terms.items():
            k = exps[var]
            if k == 0:
                continue
            e = list(exps)
            e[var] = k - 1
            e = tuple(e)
            add = c * k
            acc = out.get(e)
            out[e] = add if acc is None else acc + add
        return MultiPoly(self.nvars, out, self.domain)

    def gradient(self, vars: Sequence[int] = None) -> tuple:
        if vars is None:
            vars = range(self.nvars)
        return tuple(self.derivative(v) for v in vars)

    # -- substitution --------------------------------------------------------------

    def substitute(self, images: Sequence["MultiPoly"], *, check_homogeneous=False):
        if len(images) != self.nvars:
            raise ValueError(
                f"need {self.nvars} images, got {len(images)}"
            )
        if not images:
            raise ValueError("cannot substitute into a 0-variable polynomial")
        out_nvars = images[0].nvars
        domain = images[0].domain
        for g in images:
            if g.nvars != out_nvars or g.domain != domain:
                raise ValueError("substitution images disagree in arity or domain")
        if check_homogeneous:
            degs = {g.degree() for g in images}
            if len(degs) != 1 or not all(g.is_homogeneous() for g in images):
                raise ValueError("substitution images are not equi-homogeneous")
        if all(g.is_term() or not g for g in images):
            return self._substitute_monomial(images, out_nvars, domain)
        powers = [{0: MultiPoly.constant(out_nvars, domain.one(), domain)} for _ in images]

        def power(v: int, k: int) -> MultiPoly:
            cache = powers[v]
            got = cache.get(k)
            if got is None:
                got = power(v, k - 1) * images[v]
                cache[k] = got
            return got

        acc = MultiPoly.zero(out_nvars, domain)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(out_nvars, coerce_between(c, self.domain, domain), domain)
            for v, k in enumerate(exps):
                if k:
                    term = term * power(v, k)
            acc = acc + term
        return acc

    def _substitute_monomial(self, images, out_nvars, domain):
        # every image is a single term (or zero): map exponent vectors directly
        out: dict = {}
        for exps, c in self.terms.items():
            cc = coerce_between(c, self.domain, domain)
            dead = False
            acc_e = [0] * out_nvars
            for v, k in enumerate(exps):
                if k == 0:
                    continue
                if not images[v]:
                    dead = True
                    break
                (ge, gc), = images[v].terms.items()
                for idx, ev in enumerate(ge):
                    acc_e[idx] += ev * k
                cc = cc * gc ** k
            if dead:
                continue
            e = tuple(acc_e)
            prev = out.get(e)
            out[e] = cc if prev is None else prev + cc
        return MultiPoly(out_nvars, out, domain)

    def evaluate(self, values: Sequence):
        """Exact value at a point; `values` are domain elements."""
        if len(values) != self.nvars:
            raise ValueError(f"need {self.nvars} values, got {len(values)}")
        vals = [self.domain.coerce(v) for v in values]
        acc = self.domain.zero()
        powers = [{0: self.domain.one()} for _ in vals]

        def power(v, k):
            cache = powers[v]
            got = cache.get(k)
            if got is None:
                got = power(v, k - 1) * vals[v]
                cache[k] = got
            return got

        for exps, c in self.terms.items():
            term = c
            for v, k in enumerate(exps):
                if k:
                    term = term * power(v, k)
            acc = acc + term
        return acc

    # -- structure ---------------------------------------------------------------

    def collect(self, var: int) -> dict:
        """Coefficients of powers of one variable, as polynomials with that
        variable's exponent zeroed: {power: MultiPoly}."""
        out: dict = {}
        for exps, c in self.terms.items():
            k = exps[var]
            e = list(exps)
            e[var] = 0
            bucket = out.setdefault(k, {})
            bucket[tuple(e)] = c
        return {
            k: MultiPoly(self.nvars, terms, self.domain, _clean=True)
            for k, terms in out.items()
        }

    def map_coefficients(self, fn, domain) -> "MultiPoly":
        return MultiPoly(
            self.nvars, {e: fn(c) for e, c in self.terms.items()}, domain
        )


def coerce_between(c, src_domain, dst_domain):
    if src_domain == dst_domain:
        return c
    return dst_domain.coerce(c)


def _domain_inverse(c):
    if isinstance(c, Fraction):
        return 1 / c
    return c.inverse()


def convert_domain(f: MultiPoly, domain) -> MultiPoly:
    return MultiPoly(f.nvars, dict(f.terms), domain)


# ---------------------------------------------------------------------------
# named operations (harness entry points)
# ---------------------------------------------------------------------------


def poly_arith(f: MultiPoly, g: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(f: MultiPoly, var: int) -> MultiPoly:
    return f.derivative(var)


def hessian_determinant(f: MultiPoly, vars: Sequence[int] = (0, 1, 2)) -> MultiPoly:
    """Determinant of the 3x3 matrix of second partials in the given
    variables.  Extra variables (pencil parameters) ride along in the
    coefficients."""
    if len(vars) != 3:
        raise ValueError("hessian_determinant works on exactly 3 variables")
    second = [[f.derivative(a).derivative(b) for b in vars] for a in vars]
    return det_generic(second)


def substitute(f: MultiPoly, images: Sequence[MultiPoly], **kw) -> MultiPoly:
    return f.substitute(images, **kw)


def proportionality(f: MultiPoly, g: MultiPoly):
    """Scalar c with f = c*g if one exists.

    Returns (c, None) on success and (None, witness_monomial) otherwise;
    the witness is the graded-lex largest monomial where the claim breaks.
    """
    f._check_compatible(g)
    if not g:
        if not f:
            return f.domain.one(), None
        return None, f.leading()[0]
    if not f:
        return f.domain.zero(), None
    support = sorted(set(f.terms) | set(g.terms), key=_grlex_key, reverse=True)
    for m in support:
        if m not in f.terms or m not in g.terms:
            return None, m
    lead = support[0]
    c = f.terms[lead] * _domain_inverse(g.terms[lead])
    for m in support:
        if f.terms[m] != c * g.terms[m]:
            return None, m
    return c, None


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when division is exact; raises ValueError otherwise."""
    f._check_compatible(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    nvars, domain = f.nvars, f.domain
    glead, gcoef = g.leading()
    ginv = _domain_inverse(gcoef)
    q = MultiPoly.zero(nvars, domain)
    r = f
    while r:
        rlead, rcoef = r.leading()
        exps = tuple(a - b for a, b in zip(rlead, glead))
        if min(exps) < 0:
            raise ValueError(f"inexact division: remainder leading monomial {rlead}")
        t = MultiPoly(nvars, {exps: rcoef * ginv}, domain)
        q = q + t
        r = r - t * g
    return q


def poly_remainder(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Normal form of f modulo g in graded-lex order.

    A single divisor generates its ideal as a Groebner basis, so the
    remainder is zero exactly when g divides f, and f -> remainder is
    linear in f for fixed g.
    """
    f._check_compatible(g)
    if not g:
        raise ZeroDivisionError("polynomial reduction by zero")
    nvars, domain = f.nvars, f.domain
    glead, gcoef = g.leading()
    ginv = _domain_inverse(gcoef)
    rem: dict = {}
    r = f
    while r:
        rlead, rcoef = r.leading()
        exps = tuple(a - b for a, b in zip(rlead, glead))
        if min(exps) >= 0:
            t = MultiPoly(nvars, {exps: rcoef * ginv}, domain)
            r = r - t * g
        else:
            rem[rlead] = rcoef
            r = r - MultiPoly(nvars, {rlead: rcoef}, domain)
    return MultiPoly(nvars, rem, domain, _clean=True)


def poly_sqrt(h: MultiPoly) -> MultiPoly:
    """Exact square root of a polynomial square (rational coefficients)."""
    if not h:
        return h
    lead, c = h.leading()
    if any(e % 2 for e in lead):
        raise ValueError("leading monomial is not a square")
    croot = _fraction_sqrt(_as_fraction(c))
    g = MultiPoly(
        h.nvars, {tuple(e // 2 for e in lead): h.domain.coerce(croot)}, h.domain
    )
    # peel terms: maintain r = h - g^2 and fix g's next term from r's lead
    r = h - g * g
    glead = tuple(e // 2 for e in lead)
    twice_lead_coef = h.domain.coerce(2 * croot)
    while r:
        rlead, rcoef = r.leading()
        exps = tuple(a - b for a, b in zip(rlead, glead))
        if min(exps) < 0:
            raise ValueError("not a polynomial square")
        t = MultiPoly(h.nvars, {exps: rcoef * _domain_inverse(twice_lead_coef)}, h.domain)
        g = g + t
        r = h - g * g
    return g


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, FieldElement):
        return c.rational_value()
    raise ValueError("square root supported for rational coefficients only")


def _fraction_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise ValueError("negative leading coefficient is not a rational square")
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise ValueError(f"{q} is not a rational square")
    return Fraction(rn, rd)


def strip_monomial_content(f: MultiPoly):
    """Factor out the largest monomial dividing every term: (exps, cofactor)."""
    if not f:
        return (0,) * f.nvars, f
    gcd = None
    for exps in f.terms:
        gcd = exps if gcd is None else tuple(map(min, gcd, exps))
    if not any(gcd):
        return gcd, f
    terms = {
        tuple(a - b for a, b in zip(e, gcd)): c for e, c in f.terms.items()
    }
    return gcd, MultiPoly(f.nvars, terms, f.domain, _clean=True)


def rational_content(f: MultiPoly) -> Fraction:
    """gcd of the coefficients of a Q-polynomial, signed by the leading term."""
    if not f:
        return Fraction(1)
    nums = [ _as_fraction(c) for c in f.terms.values() ]
    g = Fraction(
        math.gcd(*(abs(q.numerator) for q in nums)) if len(nums) > 1 else abs(nums[0].numerator),
        math.lcm(*(q.denominator for q in nums)) if len(nums) > 1 else nums[0].denominator,
    )
    _, lead = f.leading()
    if _as_fraction(lead) < 0:
        g = -g
    return g


# ---------------------------------------------------------------------------
# determinants and resultants
# ---------------------------------------------------------------------------


def det_generic(rows):
    """Determinant over any commutative ring, by expansion along the first
    row with memoization on column subsets.  Entries may be MultiPolys,
    FieldElements or Fractions; they only need +, -, * and truthiness."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    memo: dict = {}

    def minor(depth: int, cols: tuple):
        if len(cols) == 1:
            return rows[depth][cols[0]]
        got = memo.get((depth, cols))
        if got is not None:
            return got
        acc = None
        for k, c in enumerate(cols):
            a = rows[depth][c]
            if not a:
                continue
            sub = minor(depth + 1, cols[:k] + cols[k + 1 :])
            if not sub:
                continue
            term = a * sub
            if k % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = rows[depth][cols[0]] * 0
        memo[(depth, cols)] = acc
        return acc

    return minor(0, tuple(range(n)))


def binary_coeff_list(f: MultiPoly):
    """Descending coefficient list of a homogeneous binary form: index k
    holds the coefficient of x^(d-k) y^k."""
    if f.nvars != 2:
        raise ValueError("binary form must have 2 variables")
    if not f:
        raise ValueError("zero binary form")
    if not f.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    d = f.degree()
    return [f.coefficient((d - k, k)) for k in range(d + 1)]


def sylvester_matrix(fc: list, gc: list, zero):
    """Sylvester matrix from descending coefficient lists, f rows on top."""
    m = len(fc) - 1
    n = len(gc) - 1
    if m < 0 or n < 0:
        raise ValueError("zero polynomial in resultant")
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant_binary(f: MultiPoly, g: MultiPoly):
    """Sylvester resultant of two homogeneous binary forms (coefficient)."""
    fc = binary_coeff_list(f)
    gc = binary_coeff_list(g)
    if len(fc) == 1 and len(gc) == 1:
        return f.domain.one()
    if len(fc) == 1:
        return fc[0] ** (len(gc) - 1)
    if len(gc) == 1:
        return gc[0] ** (len(fc) - 1)
    return det_generic(sylvester_matrix(fc, gc, f.domain.zero()))


def _strip_leading_zeros(coeffs: list) -> list:
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return coeffs[i:]


def _list_mod(a: list, b: list, domain) -> list:
    """Remainder of descending univariate coefficient lists (b[0] != 0)."""
    a = list(a)
    inv = _domain_inverse(b[0])
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return _strip_leading_zeros(a)
    for shift in range(da - db + 1):
        c = a[shift] * inv
        if c == 0:
            continue
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
    return _strip_leading_zeros(a[da - db + 1 :])


def binary_form_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd of two nonzero homogeneous binary forms over a field."""
    ef, f1 = strip_monomial_content(f)
    eg, g1 = strip_monomial_content(g)
    common = tuple(map(min, ef, eg))
    # the stripped forms have nonzero ends, so degree in x equals form degree
    fa = binary_coeff_list(f1)
    fb = binary_coeff_list(g1)
    while fb:
        fa, fb = fb, _list_mod(fa, fb, f.domain)
    inv = _domain_inverse(fa[0])
    d = len(fa) - 1
    terms = {
        (common[0] + d - k, common[1] + k): c * inv
        for k, c in enumerate(fa)
        if c != 0
    }
    return MultiPoly(2, terms, f.domain, _clean=True)


def resultant_in_var(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Resultant of f, g viewed as polynomials in one variable; the result
    is a polynomial in the remaining variables (same arity, var unused)."""
    f._check_compatible(g)
    cf = f.collect(var)
    cg = g.collect(var)
    if not cf or not cg:
        raise ValueError("zero polynomial in resultant")
    df, dg = max(cf), max(cg)
    zero = MultiPoly.zero(f.nvars, f.domain)
    fc = [cf.get(df - k, zero) for k in range(df + 1)]
    gc = [cg.get(dg - k, zero) for k in range(dg + 1)]
    if df == 0 and dg == 0:
        return MultiPoly.constant(f.nvars, f.domain.one(), f.domain)
    if df == 0:
        return fc[0] ** dg
    if dg == 0:
        return gc[0] ** df
    return det_generic(sylvester_matrix(fc, gc, zero))


# ---------------------------------------------------------------------------
# linear algebra over the coefficient domain
# ---------------------------------------------------------------------------


def field_rref(matrix: list, domain):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _domain_inverse(rows[r][c])
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                factor = rows[k][c]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def field_linsolve(matrix: list, rhs: list, domain):
    """One exact solution of A x = b, or None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = field_rref(aug, domain)
    ncols = len(matrix[0]) if matrix else 0
    if ncols in pivots:
        return None  # pivot in the rhs column
    x = [domain.zero()] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return x


def field_nullspace(matrix: list, domain) -> list:
    """Basis of the right nullspace of A, exact."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = field_rref(matrix, domain)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [domain.zero()] * ncols
        v[fcol] = domain.one()
        for r, c in enumerate(pivots):
            v[c] = -rows[r][fcol]
        basis.append(v)
    return basis


def express_in_subring(f: MultiPoly, gens: Sequence[MultiPoly]):
    """Write a homogeneous f as a polynomial in homogeneous gens.

    Returns {exponent_tuple: coefficient} over the gen list, or None when no
    exact expression exists at that degree.
    """
    if not f:
        return {}
    if not f.is_homogeneous():
        raise ValueError("express_in_subring expects homogeneous input")
    degs = [g.degree() for g in gens]
    if any(d <= 0 or not g.is_homogeneous() for d, g in zip(degs, gens)):
        raise ValueError("generators must be homogeneous of positive degree")
    target = f.degree()
    combos = [
        c
        for c in _bounded_exponents(degs, target)
    ]
    if not combos:
        return None
    products = []
    for combo in combos:
        p = MultiPoly.constant(f.nvars, f.domain.one(), f.domain)
        for g, k in zip(gens, combo):
            if k:
                p = p * g ** k
        products.append(p)
    support = sorted(
        set(f.terms) | set().union(*(set(p.terms) for p in products)),
        key=_grlex_key,
    )
    matrix = [[p.coefficient(m) for p in products] for m in support]
    rhs = [f.coefficient(m) for m in support]
    sol = field_linsolve(matrix, rhs, f.domain)
    if sol is None:
        return None
    return {
        combo: c for combo, c in zip(combos, sol) if c
    }


def _bounded_exponents(degs: Sequence[int], target: int):
    """All exponent tuples e with sum e_i * degs_i == target."""
    if not degs:
        if target == 0:
            yield ()
        return
    d = degs[0]
    for k in range(target // d + 1):
        for rest in _bounded_exponents(degs[1:], target - k * d):
            yield (k,) + rest


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------


class _PolyParser(_ElementParser):
    """Element grammar extended with polynomial variables."""

    def __init__(self, nvars: int, domain, names: Sequence[str]):
        self.nvars = nvars
        self.pdomain = domain
        self.names = {n: i for i, n in enumerate(names)}
        tower = domain if isinstance(domain, FieldTower) else None
        super().__init__(tower, atom_hook=self._variable)

    def _variable(self, name: str):
        idx = self.names.get(name)
        if idx is None:
            return None
        return MultiPoly.variable(idx, self.nvars, self.pdomain)

    def _const(self, n: int):
        return MultiPoly.constant(self.nvars, n, self.pdomain)

    def _symbol(self, name: str):
        if self.tower is None:
            raise ValueError(f"unknown name {name!r}")
        return MultiPoly.constant(
            self.nvars, self.tower.symbol_element(name), self.pdomain
        )

    def _divide(self, a, b):
        if isinstance(b, MultiPoly):
            if not b.is_constant():
                raise ValueError("division by a non-constant polynomial")
            b = b.constant_value()
        return a * _domain_inverse(a.domain.coerce(b))


def parse_poly(text: str, nvars: int, domain=QQ, names: Sequence[str] = None) -> MultiPoly:
    names = names or default_names(nvars)
    val = _PolyParser(nvars, domain, names).parse(text)
    if not isinstance(val, MultiPoly):
        val = MultiPoly.constant(nvars, val, domain)
    return val


def _coeff_to_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, FieldElement):
        return element_to_str(c)
    return str(c)


def poly_to_str(f: MultiPoly, names: Sequence[str] = None) -> str:
    if not f:
        return "0"
    names = names or default_names(f.nvars)
    parts = []
    for exps in f.monomials_desc():
        c = f.terms[exps]
        monos = []
        for name, k in zip(names, exps):
            if k == 1:
                monos.append(name)
            elif k > 1:
                monos.append(f"{name}^{k}")
        mono = "*".join(monos)
        ctext = _coeff_to_str(c)
        simple = "/" not in ctext and not any(
            ch in ctext[1:] for ch in "+-*"
        )
        if not mono:
            text = ctext if simple else f"({ctext})"
        elif ctext == "1":
            text = mono
        elif ctext == "-1":
            text = f"-{mono}"
        elif simple:
            text = f"{ctext}*{mono}"
        else:
            text = f"({ctext})*{mono}"
        parts.append(text)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
