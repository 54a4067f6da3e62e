"""Towers of number fields over Q with exact arithmetic and certified embeddings.

A tower Q = K0 < K1 < ... < Kn is built one simple extension at a time: each
level adjoins a root of a monic polynomial whose coefficients live in the
previous level.  Elements are stored as coordinate vectors over Q in the
lexicographic power basis of the whole tower, so two elements are equal
exactly when their coordinate tuples are identical.

Each level carries a numeric hint that selects one complex root of its
minimal polynomial; the induced embedding is evaluated in midpoint-radius
ball arithmetic, so `embed_complex` returns a value together with an error
bound that is honoured by every arithmetic step.

Irreducibility of user-supplied minimal polynomials is *not* verified; the
built-in towers (`tower_eps`, `tower_eps_i`, `tower_eps_i_cbrt2`,
`tower_zeta9`) use classical irreducible polynomials.  A caller who supplies
a reducible polynomial gets a ring with zero divisors and inversions may
fail.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath as mp

Rational = Fraction

RationalLike = Union[int, Fraction]


class TowerError(ValueError):
    """Raised for malformed towers, mixed-tower arithmetic and bad hints."""


# ---------------------------------------------------------------------------
# complex ball arithmetic
# ---------------------------------------------------------------------------


def _round_eps() -> mp.mpf:
    # a few guard bits above the working-precision ulp
    return mp.mpf(2) ** (4 - mp.mp.prec)


class ComplexBall:
    """Complex enclosure mid +- rad; every operation pads for rounding."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=0):
        self.mid = mp.mpc(mid)
        self.rad = mp.mpf(rad)

    @staticmethod
    def from_rational(q: Fraction) -> "ComplexBall":
        if q == 0:
            return ComplexBall(0, 0)
        mid = mp.mpf(q.numerator) / mp.mpf(q.denominator)
        return ComplexBall(mid, abs(mid) * _round_eps())

    def __add__(self, other: "ComplexBall") -> "ComplexBall":
        mid = self.mid + other.mid
        rad = self.rad + other.rad + abs(mid) * _round_eps()
        return ComplexBall(mid, rad)

    def __mul__(self, other: "ComplexBall") -> "ComplexBall":
        mid = self.mid * other.mid
        rad = (
            abs(self.mid) * other.rad
            + abs(other.mid) * self.rad
            + self.rad * other.rad
            + abs(mid) * _round_eps()
        )
        return ComplexBall(mid, rad)

    def __repr__(self):
        return f"ComplexBall({self.mid}, rad={self.rad})"


# ---------------------------------------------------------------------------
# nested (recursive) representation helpers
#
# A level-0 value is a Fraction.  A level-k value is a list of exactly
# deg_k level-(k-1) values: the coefficients of powers of the k-th
# generator.  The flat coordinate vector interleaves these lists so that
# the exponent of the *first* generator is the most significant index.
# ---------------------------------------------------------------------------


def _nzero(degrees: Sequence[int], lvl: int):
    if lvl == 0:
        return Fraction(0)
    return [_nzero(degrees, lvl - 1) for _ in range(degrees[lvl - 1])]


def _niszero(a, lvl: int) -> bool:
    if lvl == 0:
        return a == 0
    return all(_niszero(c, lvl - 1) for c in a)


def _nadd(a, b, lvl: int):
    if lvl == 0:
        return a + b
    return [_nadd(x, y, lvl - 1) for x, y in zip(a, b)]


def _nneg(a, lvl: int):
    if lvl == 0:
        return -a
    return [_nneg(x, lvl - 1) for x in a]


def _nested_from_flat(coords: Sequence[Fraction], degrees: Sequence[int], lvl: int):
    # flat index = e_1 + d_1*(e_2 + d_2*(...)): first generator varies fastest
    if lvl == 0:
        return coords[0]
    d = degrees[lvl - 1]
    block = len(coords) // d
    return [
        _nested_from_flat(coords[e * block : (e + 1) * block], degrees, lvl - 1)
        for e in range(d)
    ]


def _flat_from_nested(a, degrees: Sequence[int], lvl: int) -> list:
    if lvl == 0:
        return [a]
    out = []
    for c in a:
        out.extend(_flat_from_nested(c, degrees, lvl - 1))
    return out


class _Level:
    """One extension step: symbol, degree, minpoly and embedding hint.

    `minpoly_nested` holds the ascending coefficients of the monic minimal
    polynomial as nested values of the *previous* level.
    """

    __slots__ = ("symbol", "degree", "minpoly_coords", "minpoly_nested", "hint")

    def __init__(self, symbol, degree, minpoly_coords, minpoly_nested, hint):
        self.symbol = symbol
        self.degree = degree
        self.minpoly_coords = minpoly_coords  # tuple of flat prefix coord tuples
        self.minpoly_nested = minpoly_nested
        self.hint = hint


class ExtensionSpec:
    """Input description of one tower level.

    minpoly: ascending coefficients, monic; entries may be ints, Fractions
    or FieldElements of the tower built so far.
    """

    __slots__ = ("symbol", "minpoly", "embedding_hint")

    def __init__(self, symbol: str, minpoly: Sequence, embedding_hint: complex):
        self.symbol = symbol
        self.minpoly = tuple(minpoly)
        self.embedding_hint = complex(embedding_hint)


class FieldTower:
    """A tower of simple extensions of Q with exact coordinate arithmetic."""

    def __init__(self, levels: tuple):
        self._levels = levels
        self._degrees = tuple(l.degree for l in levels)
        self.total_degree = 1
        for d in self._degrees:
            self.total_degree *= d
        self._table = None
        self._roots: dict = {}
        self._fingerprint = hash(
            tuple((l.symbol, l.degree, l.minpoly_coords, l.hint) for l in levels)
        )

    # -- identity ----------------------------------------------------------

    @property
    def levels(self):
        return self._levels

    @property
    def symbols(self):
        return tuple(l.symbol for l in self._levels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldTower):
            return NotImplemented
        return [
            (l.symbol, l.degree, l.minpoly_coords, l.hint) for l in self._levels
        ] == [(l.symbol, l.degree, l.minpoly_coords, l.hint) for l in other._levels]

    def __hash__(self):
        return self._fingerprint

    def __repr__(self):
        if not self._levels:
            return "FieldTower(Q)"
        return "FieldTower(Q(%s))" % ", ".join(self.symbols)

    # -- element constructors ----------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.total_degree)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def from_rational(self, q: RationalLike) -> "FieldElement":
        coords = [Fraction(0)] * self.total_degree
        coords[0] = Fraction(q)
        return FieldElement(self, tuple(coords))

    def gen(self, level: int) -> "FieldElement":
        """The generator adjoined at `level` (0-based), as a tower element."""
        if not 0 <= level < len(self._levels):
            raise TowerError(f"no level {level} in {self!r}")
        coords = [Fraction(0)] * self.total_degree
        coords[self._stride(level)] = Fraction(1)
        return FieldElement(self, tuple(coords))

    def symbol_element(self, symbol: str) -> "FieldElement":
        for k, l in enumerate(self._levels):
            if l.symbol == symbol:
                return self.gen(k)
        raise TowerError(f"symbol {symbol!r} not in {self!r}")

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.tower is self or x.tower == self:
                return x
            raise TowerError(f"element of {x.tower!r} used in {self!r}")
        if isinstance(x, (int, Fraction)):
            return self.from_rational(x)
        raise TowerError(f"cannot coerce {x!r} into {self!r}")

    # -- internal layout ----------------------------------------------------

    def _stride(self, level: int) -> int:
        """Flat-coordinate stride of generator `level` (exponent 1 step)."""
        s = 1
        for d in self._degrees[:level]:
            s *= d
        return s

    def basis_exponents(self, index: int) -> tuple:
        """Exponent tuple (e_1,...,e_n) of flat basis element `index`."""
        exps = []
        for d in self._degrees:
            exps.append(index % d)
            index //= d
        return tuple(exps)

    # -- nested arithmetic ---------------------------------------------------

    def _nested(self, coords):
        return _nested_from_flat(list(coords), self._degrees, len(self._levels))

    def _flat(self, nested) -> tuple:
        return tuple(_flat_from_nested(nested, self._degrees, len(self._levels)))

    def _nmul(self, a, b, lvl: int):
        if lvl == 0:
            return a * b
        d = self._degrees[lvl - 1]
        prod = [_nzero(self._degrees, lvl - 1) for _ in range(2 * d - 1)]
        for i, ai in enumerate(a):
            if _niszero(ai, lvl - 1):
                continue
            for j, bj in enumerate(b):
                if _niszero(bj, lvl - 1):
                    continue
                prod[i + j] = _nadd(prod[i + j], self._nmul(ai, bj, lvl - 1), lvl - 1)
        return self._nreduce(prod, lvl)

    def _nreduce(self, coeffs, lvl: int):
        """Reduce an ascending coefficient list modulo the level's minpoly."""
        d = self._degrees[lvl - 1]
        m = self._levels[lvl - 1].minpoly_nested  # ascending, monic, len d+1
        coeffs = list(coeffs)
        for e in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[e]
            if _niszero(c, lvl - 1):
                continue
            for i in range(d):
                term = self._nmul(c, m[i], lvl - 1)
                coeffs[e - d + i] = _nadd(coeffs[e - d + i], _nneg(term, lvl - 1), lvl - 1)
            coeffs[e] = _nzero(self._degrees, lvl - 1)
        return coeffs[:d]

    def _ninv(self, a, lvl: int):
        if lvl == 0:
            if a == 0:
                raise ZeroDivisionError("division by zero field element")
            return 1 / a
        # extended gcd of a (as a polynomial in the level's generator) with
        # the minimal polynomial, tracking only the Bezout factor of a
        d = self._degrees[lvl - 1]
        low = lvl - 1
        mpoly = list(self._levels[lvl - 1].minpoly_nested)
        apoly = self._pstrip([c for c in a], low)
        if not apoly:
            raise ZeroDivisionError("division by zero field element")
        r0, r1 = mpoly, apoly
        t0: list = []
        t1 = [self._none(low)]
        while True:
            q, r = self._pdivmod(r0, r1, low)
            r0, r1 = r1, r
            t0, t1 = t1, self._psub(t0, self._pmul(q, t1, low), low)
            if not r1:
                break
        if len(r0) != 1:
            raise ZeroDivisionError(
                "non-invertible element (reducible minimal polynomial?)"
            )
        scale = self._ninv(r0[0], low)
        inv = [self._nmul(scale, c, low) for c in t0]
        inv += [_nzero(self._degrees, low) for _ in range(d - len(inv))]
        return inv

    # polynomial helpers over level-`lvl` values (ascending coeff lists)

    def _none(self, lvl: int):
        if lvl == 0:
            return Fraction(1)
        out = _nzero(self._degrees, lvl)
        ref = out
        for k in range(lvl, 1, -1):
            ref = ref[0]
        ref[0] = Fraction(1)
        return out

    def _pstrip(self, p: list, lvl: int) -> list:
        while p and _niszero(p[-1], lvl):
            p.pop()
        return p

    def _padd(self, f, g, lvl: int):
        n = max(len(f), len(g))
        out = []
        for k in range(n):
            a = f[k] if k < len(f) else _nzero(self._degrees, lvl)
            b = g[k] if k < len(g) else _nzero(self._degrees, lvl)
            out.append(_nadd(a, b, lvl))
        return self._pstrip(out, lvl)

    def _psub(self, f, g, lvl: int):
        return self._padd(f, [_nneg(c, lvl) for c in g], lvl)

    def _pmul(self, f, g, lvl: int):
        if not f or not g:
            return []
        out = [_nzero(self._degrees, lvl) for _ in range(len(f) + len(g) - 1)]
        for i, a in enumerate(f):
            if _niszero(a, lvl):
                continue
            for j, b in enumerate(g):
                out[i + j] = _nadd(out[i + j], self._nmul(a, b, lvl), lvl)
        return self._pstrip(out, lvl)

    def _pdivmod(self, f, g, lvl: int):
        f = self._pstrip(list(f), lvl)
        g = self._pstrip(list(g), lvl)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = self._ninv(g[-1], lvl)
        q = [_nzero(self._degrees, lvl) for _ in range(max(0, len(f) - len(g) + 1))]
        r = f
        while len(r) >= len(g):
            c = self._nmul(r[-1], inv_lead, lvl)
            k = len(r) - len(g)
            q[k] = c
            for i, gi in enumerate(g):
                r[k + i] = _nadd(r[k + i], _nneg(self._nmul(c, gi, lvl), lvl), lvl)
            r = self._pstrip(r, lvl)
        return q, r

    # -- multiplication table -------------------------------------------------

    def _mul_table(self):
        if self._table is None:
            n = self.total_degree
            lvl = len(self._levels)
            table = [[None] * n for _ in range(n)]
            basis = []
            for i in range(n):
                coords = [Fraction(0)] * n
                coords[i] = Fraction(1)
                basis.append(self._nested(coords))
            for i in range(n):
                for j in range(i, n):
                    prod = self._nmul(basis[i], basis[j], lvl)
                    flat = self._flat(prod)
                    entry = tuple((k, c) for k, c in enumerate(flat) if c)
                    table[i][j] = entry
                    table[j][i] = entry
            self._table = table
        return self._table

    # -- embeddings ------------------------------------------------------------

    def _root_ball(self, level: int, prec: int) -> ComplexBall:
        key = (level, prec)
        cached = self._roots.get(key)
        if cached is not None:
            return cached
        lev = self._levels[level]
        with mp.workprec(prec):
            coeff_balls = [
                self._eval_prefix_ball(c, level, prec) for c in lev.minpoly_coords
            ]
            centers = [b.mid for b in coeff_balls]
            x = mp.mpc(lev.hint)
            for _ in range(prec):
                fx = _horner(centers, x)
                dfx = _horner_derivative(centers, x)
                if dfx == 0:
                    raise TowerError(f"singular Newton step for {lev.symbol!r}")
                step = fx / dfx
                x = x - step
                if abs(step) < mp.mpf(2) ** (8 - prec) * max(1, abs(x)):
                    break
            # residual-based radius for a simple root, padded by the
            # coefficient enclosure widths
            ball_res = ComplexBall(0, 0)
            xb = ComplexBall(x, 0)
            for b in reversed(coeff_balls):
                ball_res = ball_res * xb + b
            dfx = _horner_derivative(centers, x)
            rad = 2 * (abs(ball_res.mid) + ball_res.rad) / abs(dfx)
            ball = ComplexBall(x, rad)
        self._roots[key] = ball
        return ball

    def _eval_prefix_ball(self, coords, level: int, prec: int) -> ComplexBall:
        """Evaluate a flat prefix-tower coordinate tuple at the embedding."""
        degrees = self._degrees[:level]
        nested = _nested_from_flat(list(coords), degrees, level)
        return self._eval_nested_ball(nested, level, prec)

    def _eval_nested_ball(self, nested, lvl: int, prec: int) -> ComplexBall:
        if lvl == 0:
            return ComplexBall.from_rational(nested)
        root = self._root_ball(lvl - 1, prec)
        acc = ComplexBall(0, 0)
        for c in reversed(nested):
            acc = acc * root + self._eval_nested_ball(c, lvl - 1, prec)
        return acc

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> str:
        levels = []
        for k, lev in enumerate(self._levels):
            prefix = FieldTower(self._levels[:k])
            coeffs = [
                element_to_str(FieldElement(prefix, c)) for c in lev.minpoly_coords
            ]
            levels.append(
                {
                    "symbol": lev.symbol,
                    "minpoly_coeffs": coeffs,
                    "hint_re": float(lev.hint.real),
                    "hint_im": float(lev.hint.imag),
                }
            )
        return json.dumps({"levels": levels}, indent=2)

    @staticmethod
    def from_json(text: str) -> "FieldTower":
        data = json.loads(text)
        tower = FieldTower(())
        for lev in data["levels"]:
            coeffs = [parse_element(s, tower) for s in lev["minpoly_coeffs"]]
            spec = ExtensionSpec(
                lev["symbol"], coeffs, complex(lev["hint_re"], lev["hint_im"])
            )
            tower = _extend(tower, spec)
        return tower


def _horner(coeffs, x):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _horner_derivative(coeffs, x):
    acc = mp.mpc(0)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * x + k * coeffs[k]
    return acc


def _extend(tower: FieldTower, spec: ExtensionSpec) -> FieldTower:
    coeffs = [tower.coerce(c) for c in spec.minpoly]
    degree = len(coeffs) - 1
    if degree < 2:
        raise TowerError(f"extension degree must be >= 2, got {degree}")
    if coeffs[-1] != tower.one():
        raise TowerError(f"minimal polynomial for {spec.symbol!r} is not monic")
    if spec.symbol in tower.symbols:
        raise TowerError(f"duplicate symbol {spec.symbol!r}")
    # the hint must select exactly one root of the minimal polynomial
    with mp.workprec(200):
        centers = [
            tower._eval_prefix_ball(c.coords, len(tower.levels), 200).mid
            for c in coeffs
        ]
        roots = mp.polyroots(list(reversed(centers)), maxsteps=200, extraprec=120)
        hint = mp.mpc(spec.embedding_hint)
        close = [r for r in roots if abs(r - hint) < mp.mpf("1e-3")]
    if len(close) == 0:
        raise TowerError(f"embedding hint for {spec.symbol!r} is not near any root")
    if len(close) > 1:
        raise TowerError(f"embedding hint for {spec.symbol!r} is ambiguous")
    minpoly_coords = tuple(c.coords for c in coeffs)
    degrees = tower._degrees
    nested = tuple(
        _nested_from_flat(list(c), degrees, len(tower.levels)) for c in minpoly_coords
    )
    level = _Level(spec.symbol, degree, minpoly_coords, nested, spec.embedding_hint)
    return FieldTower(tower.levels + (level,))


def tower_create(specs: Iterable[ExtensionSpec]) -> FieldTower:
    """Build a tower from extension specs, validating shape and hints."""
    tower = FieldTower(())
    for spec in specs:
        tower = _extend(tower, spec)
    return tower


class FieldElement:
    """Element of a FieldTower: exact coordinates in the tower power basis."""

    __slots__ = ("tower", "coords", "_hash")

    def __init__(self, tower: FieldTower, coords: tuple):
        self.tower = tower
        self.coords = coords
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise TowerError("mixed-tower arithmetic")
        if isinstance(other, (int, Fraction)):
            return self.tower.from_rational(other)
        return None

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise TowerError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.tower, tuple(a + b for a, b in zip(self.coords, o.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(
            self.tower, tuple(a - b for a, b in zip(self.coords, o.coords))
        )

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.tower.zero()
            q = Fraction(other)
            return FieldElement(self.tower, tuple(a * q for a in self.coords))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        table = self.tower._mul_table()
        acc = [Fraction(0)] * self.tower.total_degree
        for i, a in enumerate(self.coords):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    acc[k] += c * ab
        return FieldElement(self.tower, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("division by zero field element")
        if self.is_rational():
            return self.tower.from_rational(1 / self.coords[0])
        t = self.tower
        nested = t._nested(self.coords)
        inv = t._ninv(nested, len(t.levels))
        return FieldElement(t, t._flat(inv))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, FieldElement):
            if other.tower is not self.tower and other.tower != self.tower:
                return False
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tower._fingerprint, self.coords))
        return self._hash

    def __repr__(self):
        return element_to_str(self)

    # -- embedding ------------------------------------------------------------

    def embed_complex(self, precision_bits: int = 128):
        """Complex value of the element plus a guaranteed error radius."""
        if precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        t = self.tower
        with mp.workprec(precision_bits + 48):
            nested = t._nested(self.coords)
            ball = t._eval_nested_ball(nested, len(t.levels), precision_bits + 48)
            return mp.mpc(ball.mid), mp.mpf(ball.rad)


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact +, -, *, / dispatch; kept as a named entry point for the harness."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def embed_complex(a: FieldElement, precision_bits: int = 128):
    return a.embed_complex(precision_bits)


# ---------------------------------------------------------------------------
# prime fields (coefficient domain for characteristic-p checks)
# ---------------------------------------------------------------------------


class GFElement:
    """Element of F_p with the usual operator protocol."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed characteristic")
            return other
        if isinstance(other, int):
            return GFElement(self.p, other)
        if isinstance(other, Fraction):
            return GFElement(self.p, other.numerator) / GFElement(self.p, other.denominator)
        return None

    def __bool__(self):
        return self.v != 0

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GFElement(self.p, self.v * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GFElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GFElement(self.p, pow(self.v, -1, self.p))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        return GFElement(self.p, pow(self.v, n, self.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, GFElement):
            return self.p == other.p and self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash(("GF", self.p, self.v))

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    """Coefficient domain F_p; mirrors the small FieldTower domain surface."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p

    def zero(self):
        return GFElement(self.p, 0)

    def one(self):
        return GFElement(self.p, 1)

    def coerce(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("mixed characteristic")
            return x
        if isinstance(x, int):
            return GFElement(self.p, x)
        if isinstance(x, Fraction):
            return GFElement(self.p, x.numerator) / GFElement(self.p, x.denominator)
        raise ValueError(f"cannot coerce {x!r} into F_{self.p}")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# element text grammar
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := atom ('^' int)?
#   atom   := rational | symbol | '(' expr ')' | '-' atom
#
# Printing emits one term per nonzero basis coordinate, which the parser
# reads back exactly.
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"bad character {ch!r} in {text!r}")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok


class _ElementParser:
    """Recursive-descent parser for the element grammar over a tower."""

    def __init__(self, tower: FieldTower, atom_hook=None):
        self.tower = tower
        self.atom_hook = atom_hook  # lets the polynomial grammar add variables

    def parse(self, text: str):
        toks = _Tokens(text)
        val = self._expr(toks)
        if toks.peek()[0] is not None:
            raise ValueError(f"trailing input in {text!r}")
        return val

    def _expr(self, toks):
        val = self._term(toks)
        while toks.peek()[0] in ("+", "-"):
            op = toks.next()[0]
            rhs = self._term(toks)
            val = val + rhs if op == "+" else val - rhs
        return val

    def _term(self, toks):
        val = self._factor(toks)
        while toks.peek()[0] in ("*", "/"):
            op = toks.next()[0]
            rhs = self._factor(toks)
            val = val * rhs if op == "*" else self._divide(val, rhs)
        return val

    def _divide(self, a, b):
        return a / b

    def _factor(self, toks):
        val = self._atom(toks)
        if toks.peek()[0] == "^":
            toks.next()
            neg = False
            if toks.peek()[0] == "-":
                toks.next()
                neg = True
            kind, text = toks.next()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            n = int(text)
            val = val ** (-n if neg else n)
        return val

    def _atom(self, toks):
        kind, text = toks.peek()
        if kind == "-":
            toks.next()
            return -self._atom(toks)
        if kind == "int":
            toks.next()
            return self._const(int(text))
        if kind == "name":
            toks.next()
            if self.atom_hook is not None:
                hooked = self.atom_hook(text)
                if hooked is not None:
                    return hooked
            return self._symbol(text)
        if kind == "(":
            toks.next()
            val = self._expr(toks)
            if toks.next()[0] != ")":
                raise ValueError("unbalanced parentheses")
            return val
        raise ValueError(f"unexpected token {text!r}")

    def _const(self, n: int):
        return self.tower.from_rational(n)

    def _symbol(self, name: str):
        return self.tower.symbol_element(name)


def parse_element(text: str, tower: FieldTower) -> FieldElement:
    return _ElementParser(tower).parse(text)


def element_to_str(e: FieldElement) -> str:
    t = e.tower
    parts = []
    for idx, q in enumerate(e.coords):
        if not q:
            continue
        exps = t.basis_exponents(idx)
        monos = []
        for sym, k in zip(t.symbols, exps):
            if k == 1:
                monos.append(sym)
            elif k > 1:
                monos.append(f"{sym}^{k}")
        mono = "*".join(monos)
        if not mono:
            text = str(q)
        elif q == 1:
            text = mono
        elif q == -1:
            text = f"-{mono}"
        else:
            text = f"{q}*{mono}"
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# built-in towers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def tower_rationals() -> FieldTower:
    """The trivial tower Q."""
    return FieldTower(())


@lru_cache(maxsize=None)
def tower_eps() -> FieldTower:
    """Q(eps) with eps^2 + eps + 1 = 0, eps = exp(2*pi*i/3)."""
    return tower_create(
        [ExtensionSpec("eps", [1, 1, 1], complex(-0.5, 0.8660254037844386))]
    )


@lru_cache(maxsize=None)
def tower_eps_i() -> FieldTower:
    """Q(eps, i) with i^2 + 1 = 0, i in the upper half plane."""
    return tower_create(
        [
            ExtensionSpec("eps", [1, 1, 1], complex(-0.5, 0.8660254037844386)),
            ExtensionSpec("i", [1, 0, 1], complex(0.0, 1.0)),
        ]
    )


@lru_cache(maxsize=None)
def tower_eps_i_cbrt2() -> FieldTower:
    """Q(eps, i, cbrt2): degree 12, cbrt2 the real cube root of 2."""
    return tower_create(
        [
            ExtensionSpec("eps", [1, 1, 1], complex(-0.5, 0.8660254037844386)),
            ExtensionSpec("i", [1, 0, 1], complex(0.0, 1.0)),
            ExtensionSpec("cbrt2", [-2, 0, 0, 1], complex(1.2599210498948732, 0.0)),
        ]
    )


@lru_cache(maxsize=None)
def tower_zeta9() -> FieldTower:
    """Q(zeta9) with zeta9^6 + zeta9^3 + 1 = 0, zeta9 = exp(2*pi*i/9)."""
    return tower_create(
        [
            ExtensionSpec(
                "zeta9",
                [1, 0, 0, 1, 0, 0, 1],
                complex(0.766044443118978, 0.6427876096865393),
            )
        ]
    )
