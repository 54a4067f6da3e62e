"""Projective plane geometry over an exact field.

Points and lines are canonicalized by scaling the first nonzero coordinate
to 1, so equality and incidence reduce to exact coordinate comparisons.
Singularities are classified from the local expansion in the affine chart
of the point's first nonzero coordinate; the class is a projective notion,
so any chart gives the same answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .multipoly import MultiPoly, QQ, divide_exact, _domain_inverse


class SingularityClass(enum.Enum):
    SMOOTH = "smooth"
    NODE = "node"
    CUSP = "cusp"
    HIGHER = "higher"


def _canonicalize(coords, domain):
    vals = [domain.coerce(c) for c in coords]
    if len(vals) != 3:
        raise ValueError("projective coordinates must have length 3")
    lead = next((v for v in vals if v), None)
    if lead is None:
        raise ValueError("all coordinates are zero")
    inv = _domain_inverse(lead)
    return tuple(v * inv for v in vals)


class ProjPoint:
    """Point of P^2, unique canonical representative."""

    __slots__ = ("coords", "domain", "_hash")

    def __init__(self, coords, domain=QQ):
        self.coords = _canonicalize(coords, domain)
        self.domain = domain
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("pt", self.coords))
        return self._hash

    def __repr__(self):
        return "(" + " : ".join(repr(c) for c in self.coords) + ")"


class ProjLine:
    """Line a*x + b*y + c*z = 0, coefficients canonicalized like a point."""

    __slots__ = ("coeffs", "domain", "_hash")

    def __init__(self, coeffs, domain=QQ):
        self.coeffs = _canonicalize(coeffs, domain)
        self.domain = domain
        self._hash = None

    def contains(self, p: ProjPoint) -> bool:
        acc = self.domain.zero()
        for a, x in zip(self.coeffs, p.coords):
            acc = acc + a * x
        return not acc

    def basis_points(self):
        """Two distinct points spanning the line, chosen deterministically."""
        a, b, c = self.coeffs
        if a:
            p0, p1 = (b, -a, self.domain.zero()), (c, self.domain.zero(), -a)
        elif b:
            one = self.domain.one()
            p0, p1 = (one, self.domain.zero(), self.domain.zero()), (
                self.domain.zero(),
                c,
                -b,
            )
        else:
            one, zero = self.domain.one(), self.domain.zero()
            p0, p1 = (one, zero, zero), (zero, one, zero)
        return ProjPoint(p0, self.domain), ProjPoint(p1, self.domain)

    def equation(self) -> MultiPoly:
        x, y, z = MultiPoly.variables(3, self.domain)
        a, b, c = self.coeffs
        return a * x + b * y + c * z

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("ln", self.coeffs))
        return self._hash

    def __repr__(self):
        return "[" + " : ".join(repr(c) for c in self.coeffs) + "]"


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The unique line through two distinct points (cross product)."""
    (a1, a2, a3), (b1, b2, b3) = p.coords, q.coords
    coeffs = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    if not any(coeffs):
        raise ValueError("points coincide; the line is not unique")
    return ProjLine(coeffs, p.domain)


def lines_meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    (a1, a2, a3), (b1, b2, b3) = l1.coeffs, l2.coeffs
    coords = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    if not any(coords):
        raise ValueError("lines coincide; the intersection is not a point")
    return ProjPoint(coords, l1.domain)


class PlaneCurve:
    """Projective plane curve defined by a homogeneous equation."""

    __slots__ = ("equation", "degree")

    def __init__(self, equation: MultiPoly):
        if equation.nvars != 3:
            raise ValueError("plane curves live in 3 homogeneous variables")
        if not equation:
            raise ValueError("zero equation does not define a curve")
        if not equation.is_homogeneous():
            raise ValueError("curve equation must be homogeneous")
        self.equation = equation
        self.degree = equation.degree()

    @property
    def domain(self):
        return self.equation.domain

    def contains(self, p: ProjPoint) -> bool:
        return not self.equation.evaluate(p.coords)

    def gradient_at(self, p: ProjPoint):
        return tuple(
            self.equation.derivative(v).evaluate(p.coords) for v in range(3)
        )

    def __repr__(self):
        return f"PlaneCurve({self.equation!r})"


def tangent_line(curve: PlaneCurve, p: ProjPoint) -> ProjLine:
    """Tangent at a smooth point: coefficients are the gradient at p."""
    if not curve.contains(p):
        raise ValueError(f"{p!r} is not on the curve")
    grad = curve.gradient_at(p)
    if not any(grad):
        raise ValueError(f"{p!r} is a singular point; no unique tangent")
    return ProjLine(grad, curve.domain)


def classify_point(curve: PlaneCurve, p: ProjPoint) -> SingularityClass:
    """Local type of a curve point: smooth, node, cusp or worse.

    A singular point is expanded in the affine chart of its first nonzero
    coordinate with p at the origin.  The quadratic jet decides: two distinct
    tangent directions give a node; a repeated direction gives a cusp exactly
    when the cubic jet is not divisible by the repeated factor.
    """
    if not curve.contains(p):
        raise ValueError(f"{p!r} is not on the curve")
    if any(curve.gradient_at(p)):
        return SingularityClass.SMOOTH
    domain = curve.domain
    chart = next(i for i, c in enumerate(p.coords) if c)
    u, v = MultiPoly.variables(2, domain)
    images = []
    locals_ = [u, v]
    for i, c in enumerate(p.coords):
        if i == chart:
            images.append(MultiPoly.constant(2, domain.one(), domain))
        else:
            images.append(locals_.pop(0) + MultiPoly.constant(2, c, domain))
    local = curve.equation.substitute(images)
    jets: dict = {}
    for exps, coef in local.terms.items():
        jets.setdefault(sum(exps), {})[exps] = coef
    quad = MultiPoly(2, jets.get(2, {}), domain)
    if not quad:
        return SingularityClass.HIGHER
    a = quad.coefficient((2, 0))
    b = quad.coefficient((1, 1))
    c = quad.coefficient((0, 2))
    disc = b * b - 4 * a * c
    if disc:
        return SingularityClass.NODE
    # quad = (repeated linear factor)^2 up to scale
    if a:
        factor = 2 * a * u + b * v
    else:
        factor = b * u + 2 * c * v  # here b = 0, so this is v up to scale
    cubic = MultiPoly(2, jets.get(3, {}), domain)
    if not cubic:
        return SingularityClass.HIGHER
    try:
        divide_exact(cubic, factor)
    except ValueError:
        return SingularityClass.CUSP
    return SingularityClass.HIGHER


@dataclass
class IncidenceTable:
    matrix: list  # matrix[i][j] = point i on line j
    point_counts: list  # lines through each point
    line_counts: list  # points on each line

    def counts_multiset(self):
        return sorted(self.point_counts), sorted(self.line_counts)


def incidence_table(points: Sequence[ProjPoint], lines: Sequence[ProjLine]) -> IncidenceTable:
    matrix = [[line.contains(p) for line in lines] for p in points]
    point_counts = [sum(row) for row in matrix]
    line_counts = [sum(matrix[i][j] for i in range(len(points))) for j in range(len(lines))]
    return IncidenceTable(matrix, point_counts, line_counts)


def restrict_to_line(curve: PlaneCurve, line: ProjLine) -> MultiPoly:
    """Binary form of the curve along the line's canonical parametrization.

    The parameter (s, t) maps to s*P0 + t*P1 with (P0, P1) = basis_points.
    """
    p0, p1 = line.basis_points()
    domain = curve.domain
    s, t = MultiPoly.variables(2, domain)
    images = [
        s * MultiPoly.constant(2, a, domain) + t * MultiPoly.constant(2, b, domain)
        for a, b in zip(p0.coords, p1.coords)
    ]
    form = curve.equation.substitute(images)
    if not form:
        raise ValueError("line is a component of the curve")
    return form


def line_parameter(line: ProjLine, p: ProjPoint):
    """(s, t) with p = s*P0 + t*P1 in the line's canonical parametrization."""
    if not line.contains(p):
        raise ValueError(f"{p!r} is not on {line!r}")
    p0, p1 = line.basis_points()
    # p0 and p1 are independent, so some 2x2 coordinate minor is invertible
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            det = p0.coords[i] * p1.coords[j] - p0.coords[j] * p1.coords[i]
            if det:
                inv = _domain_inverse(det)
                s = (p.coords[i] * p1.coords[j] - p.coords[j] * p1.coords[i]) * inv
                t = (p0.coords[i] * p.coords[j] - p0.coords[j] * p.coords[i]) * inv
                return s, t
    raise ValueError("degenerate line basis")


def root_multiplicity(form: MultiPoly, s0, t0) -> int:
    """Multiplicity of the root (s0 : t0) in a binary form."""
    if form.nvars != 2:
        raise ValueError("binary form expected")
    domain = form.domain
    s, t = MultiPoly.variables(2, domain)
    linear = t0 * s - s0 * t
    if not linear:
        raise ValueError("(0, 0) is not a projective parameter")
    mult = 0
    while form:
        try:
            form = divide_exact(form, linear)
        except ValueError:
            break
        mult += 1
    return mult
