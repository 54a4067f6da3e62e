"""Chord-tangent group law on smooth pencil members.

The exact layer never solves a polynomial of degree above one: a line
through known curve points restricts the member to a binary cubic whose
known roots are divided out, so the leftover root is linear in the input
coordinates.  Loci that genuinely require root extraction (doubling a
transcendental point, order-nine contact points) go through a numeric
backend with certified working precision.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .field import FieldElement, tower_eps
from .hesse import (
    PencilParameter,
    PropertyResult,
    hesse_data,
    hessian_parameter,
    pencil_member,
    weierstrass_data,
)
from .multipoly import MultiPoly, divide_exact, proportionality, resultant_in_var
from .plane import (
    ProjPoint,
    line_parameter,
    line_through,
    restrict_to_line,
    tangent_line,
)


# ---------------------------------------------------------------------------
# exact layer
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurveContext:
    """A smooth pencil member with a marked base point as group origin."""

    parameter: PencilParameter
    origin_index: int
    member: object
    domain: object

    @property
    def origin(self) -> ProjPoint:
        return hesse_data().base_points[self.origin_index]


def curve_context(parameter, origin_index: int = 0) -> CurveContext:
    """Group-law context on the member at `parameter` with origin p_i.

    The parameter may be a PencilParameter or an affine value; it is
    coerced into the cube-root tower where the base points live.
    """
    K = tower_eps()
    if not isinstance(parameter, PencilParameter):
        parameter = PencilParameter.from_affine(K.coerce(parameter), K)
    elif parameter.domain is not K:
        parameter = parameter.to_domain(K)
    if not 0 <= origin_index < 9:
        raise ValueError("origin must be one of the nine base points")
    if weierstrass_data(parameter).singular:
        raise ValueError("singular member has no group law")
    return CurveContext(parameter, origin_index, pencil_member(parameter), K)


@dataclass(frozen=True, eq=False)
class CurvePoint:
    context: CurveContext
    point: ProjPoint

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.context is other.context and self.point == other.point

    def __hash__(self):
        return hash((id(self.context), self.point))


def curve_point(ctx: CurveContext, coords) -> CurvePoint:
    p = coords if isinstance(coords, ProjPoint) else ProjPoint(coords, ctx.domain)
    if not ctx.member.contains(p):
        raise ValueError(f"{p!r} is not on the member")
    return CurvePoint(ctx, p)


def base_curve_point(ctx: CurveContext, index: int) -> CurvePoint:
    return CurvePoint(ctx, hesse_data().base_points[index])


def third_intersection(ctx: CurveContext, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """The remaining intersection of the member with the chord p q (the
    tangent at p when p = q), computed by dividing the known roots out of
    the restricted binary cubic."""
    a, b = p.point, q.point
    line = tangent_line(ctx.member, a) if a == b else line_through(a, b)
    form = restrict_to_line(ctx.member, line)
    s, t = MultiPoly.variables(2, ctx.domain)
    for r in (a, b):
        s0, t0 = line_parameter(line, r)
        form = divide_exact(form, t0 * s - s0 * t)
    # the leftover linear form c_s*s + c_t*t vanishes at (c_t, -c_s)
    c_s = form.coefficient((1, 0))
    c_t = form.coefficient((0, 1))
    p0, p1 = line.basis_points()
    coords = tuple(c_t * u - c_s * v for u, v in zip(p0.coords, p1.coords))
    return CurvePoint(ctx, ProjPoint(coords, ctx.domain))


def neg(ctx: CurveContext, p: CurvePoint) -> CurvePoint:
    # the origin is an inflection point, so reflecting through it is the
    # chord through the origin
    return third_intersection(ctx, CurvePoint(ctx, ctx.origin), p)


def add(ctx: CurveContext, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    r = third_intersection(ctx, p, q)
    return third_intersection(ctx, CurvePoint(ctx, ctx.origin), r)


def scalar_mul(ctx: CurveContext, n: int, p: CurvePoint) -> CurvePoint:
    if n < 0:
        return scalar_mul(ctx, -n, neg(ctx, p))
    acc = CurvePoint(ctx, ctx.origin)
    run = p
    while n:
        if n & 1:
            acc = add(ctx, acc, run)
        n >>= 1
        if n:
            run = add(ctx, run, run)
    return acc


# ---------------------------------------------------------------------------
# three-torsion structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionTable:
    parameter: PencilParameter
    table: tuple  # table[i][j] = k with p_i + p_j = p_k, origin p_0
    holds: bool  # sums match the (Z/3)^2 labels of the base points


def three_torsion_table(parameter) -> TorsionTable:
    """Addition table of the nine base points, checked against labels."""
    ctx = curve_context(parameter, origin_index=0)
    data = hesse_data()
    pts = [base_curve_point(ctx, i) for i in range(9)]
    index = {p.point: i for i, p in enumerate(pts)}
    rows = []
    holds = True
    for i in range(9):
        row = []
        for j in range(9):
            total = add(ctx, pts[i], pts[j])
            k = index.get(total.point)
            if k is None:
                raise ValueError("base points are not closed under addition")
            row.append(k)
            li, lj, lk = data.labels[i], data.labels[j], data.labels[k]
            if ((li[0] + lj[0]) % 3, (li[1] + lj[1]) % 3) != lk:
                holds = False
        rows.append(tuple(row))
    return TorsionTable(ctx.parameter, tuple(rows), holds)


def translation_compatibility_check(parameter) -> PropertyResult:
    """The two order-3 generators fixing every member act on the base
    points as translations by 3-torsion points of the group law."""
    from .groups import hessian_group_generators

    ctx = curve_context(parameter, origin_index=0)
    data = hesse_data()
    pts = [base_curve_point(ctx, i) for i in range(9)]
    index = {p.point: i for i, p in enumerate(pts)}
    gens = hessian_group_generators(ctx.domain)
    assignments = {}
    for name in ("cycle", "scale"):
        g = gens[name]
        perm = tuple(index[g.apply(p.point)] for p in pts)
        found = None
        for k in range(9):
            if all(index[add(ctx, pts[i], pts[k]).point] == perm[i] for i in range(9)):
                found = k
                break
        if found is None:
            return PropertyResult(False, witness=f"{name} is not a translation")
        assignments[name] = found
    la, lb = data.labels[assignments["cycle"]], data.labels[assignments["scale"]]
    independent = (la[0] * lb[1] - la[1] * lb[0]) % 3 != 0
    return PropertyResult(independent, {"assignments": assignments})


def contact_pair_vertices_check() -> PropertyResult:
    """The first and fifth contact cubics meet exactly in the nine
    vertices of the non-coordinate triangles.

    Completeness is mechanical: eliminating either variable yields the
    cube of a Fermat-type binary cubic, so every common zero satisfies
    x^3 = z^3 and y^3 = z^3, and all nine such points are checked to lie
    on both cubics.
    """
    data = hesse_data()
    K = data.domain
    b1, b5 = data.halphen_cubics[0], data.halphen_cubics[4]
    x, y, z = MultiPoly.variables(3, K)
    elim_y = resultant_in_var(b1, b5, 1)
    elim_x = resultant_in_var(b1, b5, 0)
    c1, _ = proportionality(elim_y, (x**3 - z**3) ** 3)
    c2, _ = proportionality(elim_x, (y**3 - z**3) ** 3)
    if c1 is None or c2 is None:
        return PropertyResult(False, witness="elimination has extra factors")
    common = [
        v
        for v in data.vertices
        if b1.evaluate(v.coords) == 0 and b5.evaluate(v.coords) == 0
    ]
    expected = set(data.vertices[3:12])
    holds = len(common) == 9 and set(common) == expected
    return PropertyResult(
        holds, {"count": len(common), "coordinate_vertices_excluded": 3}
    )


# ---------------------------------------------------------------------------
# numeric backend
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericPoint:
    coords: tuple  # mpc triple, scaled to max modulus 1
    precision_bits: int
    residual: object  # bound on the member equation at the point


def _to_mpc(value, precision_bits):
    if isinstance(value, FieldElement):
        mid, _ = value.embed_complex(precision_bits=precision_bits)
        return mid
    if isinstance(value, Fraction):
        return mpmath.mpc(value.numerator) / value.denominator
    return mpmath.mpc(value)


def _embed_poly(poly: MultiPoly, precision_bits) -> dict:
    return {e: _to_mpc(c, precision_bits) for e, c in poly.terms.items()}


def _eval_embedded(terms: dict, coords) -> object:
    acc = mpmath.mpc(0)
    for exps, c in terms.items():
        term = c
        for v, e in zip(coords, exps):
            term *= v**e
        acc += term
    return acc


def _scale(coords):
    m = max(abs(c) for c in coords)
    return tuple(c / m for c in coords)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _proj_distance(u, v):
    """Chordal distance |u x v| / (|u| |v|); zero iff proportional."""
    cx = _cross(u, v)
    nu = mpmath.sqrt(sum(abs(c) ** 2 for c in u))
    nv = mpmath.sqrt(sum(abs(c) ** 2 for c in v))
    return mpmath.sqrt(sum(abs(c) ** 2 for c in cx)) / (nu * nv)


class _NumericLaw:
    """Chord-tangent arithmetic on one member with embedded coefficients."""

    def __init__(self, parameter: PencilParameter, origin_index, precision_bits):
        self.precision_bits = precision_bits
        self.t0 = _to_mpc(parameter.t0, precision_bits)
        self.t1 = _to_mpc(parameter.t1, precision_bits)
        self.tol = mpmath.mpf(2) ** -(precision_bits // 2)
        origin = hesse_data().base_points[origin_index]
        self.origin = _scale(
            tuple(_to_mpc(c, precision_bits) for c in origin.coords)
        )

    def member_value(self, p):
        x, y, z = p
        return self.t0 * (x**3 + y**3 + z**3) + self.t1 * x * y * z

    def gradient(self, p):
        x, y, z = p
        return (
            3 * self.t0 * x**2 + self.t1 * y * z,
            3 * self.t0 * y**2 + self.t1 * x * z,
            3 * self.t0 * z**2 + self.t1 * x * y,
        )

    def _restrict(self, p, q):
        """Coefficients (s^3, s^2 t, s t^2, t^3) of the member along
        s*p + t*q."""

        def cube(a, b):
            return [a**3, 3 * a**2 * b, 3 * a * b**2, b**3]

        coeffs = [mpmath.mpc(0)] * 4
        for a, b in zip(p, q):
            for k, c in enumerate(cube(a, b)):
                coeffs[k] += self.t0 * c
        prod = [mpmath.mpc(1)]
        for a, b in zip(p, q):
            nxt = [mpmath.mpc(0)] * (len(prod) + 1)
            for k, c in enumerate(prod):
                nxt[k] += c * a
                nxt[k + 1] += c * b
            prod = nxt
        for k, c in enumerate(prod):
            coeffs[k] += self.t1 * c
        return coeffs

    def tangent_third(self, p):
        """Remaining intersection of the tangent line at p."""
        grad = self.gradient(p)
        candidates = [_cross(grad, basis) for basis in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        r = max(candidates, key=lambda c: sum(abs(v) ** 2 for v in _cross(p, c)))
        r = _scale(r)
        g = self._restrict(p, r)
        # double root at (1, 0): the form is t^2 (c s + d t) up to noise
        c, d = g[2], g[3]
        return _scale(tuple(d * a - c * b for a, b in zip(p, r)))

    def third(self, p, q):
        if _proj_distance(p, q) < self.tol:
            return self.tangent_third(p)
        g = self._restrict(p, q)
        # roots at (1, 0) and (0, 1): the form is s t (a s + b t) up to noise
        a, b = g[1], g[2]
        return _scale(tuple(b * u - a * v for u, v in zip(p, q)))

    def add(self, p, q):
        return self.third(self.origin, self.third(p, q))

    def triple(self, p):
        return self.add(self.add(p, p), p)


def _poly_roots(coeffs, precision_bits):
    """Roots of a univariate polynomial given by descending mpc
    coefficients: companion-matrix eigenvalues refined by Newton."""
    lead = coeffs[0]
    monic = [c / lead for c in coeffs[1:]]
    deg = len(monic)
    if deg == 0:
        return []
    if deg == 1:
        return [-monic[0]]
    comp = mpmath.matrix(deg)
    for i in range(1, deg):
        comp[i, i - 1] = 1
    for i in range(deg):
        comp[i, deg - 1] = -monic[deg - 1 - i]
    approx = mpmath.eig(comp, left=False, right=False)

    def horner(x):
        val, der = mpmath.mpc(1), mpmath.mpc(0)
        for c in monic:
            der = der * x + val
            val = val * x + c
        return val, der

    roots = []
    for x in approx:
        x = mpmath.mpc(x)
        for _ in range(max(8, precision_bits // 8)):
            val, der = horner(x)
            if abs(der) == 0:
                break
            step = val / der
            x -= step
            if abs(step) < mpmath.mpf(2) ** -(precision_bits + 16):
                break
        roots.append(x)
    return roots


def _binary_form_roots(form: MultiPoly, precision_bits):
    """Projective roots (s : t) of an exact binary form, embedded."""
    deg = form.degree()
    coeffs = [
        _to_mpc(form.coefficient((deg - k, k)), precision_bits)
        for k in range(deg + 1)
    ]
    # exact leading-coefficient test: (1 : 0) is a root iff the s-degree drops
    roots = []
    lead_zero = form.coefficient((deg, 0)) == 0
    if lead_zero:
        roots.append((mpmath.mpc(1), mpmath.mpc(0)))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    for u in _poly_roots(coeffs, precision_bits):
        roots.append((u, mpmath.mpc(1)))
    return roots


# ---------------------------------------------------------------------------
# numeric reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoTorsionReport:
    holds: bool
    parameter: PencilParameter
    line_index: int
    precision_bits: int
    tolerance: object
    points: tuple  # the three residual intersections with the harmonic polar
    tangent_residuals: tuple  # incidence of the marked point with each tangent
    doubling_residuals: tuple  # distance from each tangential point to the origin


def two_torsion_polar_check(parameter, line_index, precision_bits=128) -> TwoTorsionReport:
    """On the member, the harmonic polar of p_i cuts the three points whose
    doubling (with origin p_i) is the origin; equivalently the tangent
    there passes through p_i.  Both facts are measured independently."""
    ctx = curve_context(parameter, origin_index=line_index)
    data = hesse_data()
    polar = data.harmonic_polars[line_index]
    form = restrict_to_line(ctx.member, polar)
    with mpmath.workprec(precision_bits + 48):
        tol = mpmath.mpf(10) ** -25 if precision_bits >= 128 else mpmath.mpf(2) ** -(
            precision_bits // 2
        )
        law = _NumericLaw(ctx.parameter, line_index, precision_bits)
        p0, p1 = polar.basis_points()
        b0 = _scale(tuple(_to_mpc(c, precision_bits) for c in p0.coords))
        b1 = _scale(tuple(_to_mpc(c, precision_bits) for c in p1.coords))
        marked = law.origin
        points, tangent_res, doubling_res = [], [], []
        for s, t in _binary_form_roots(form, precision_bits):
            q = _scale(tuple(s * a + t * b for a, b in zip(b0, b1)))
            residual = abs(law.member_value(q))
            points.append(NumericPoint(q, precision_bits, residual))
            grad = law.gradient(q)
            norm = mpmath.sqrt(sum(abs(c) ** 2 for c in grad))
            incidence = abs(sum(g * m for g, m in zip(grad, marked))) / norm
            tangent_res.append(incidence)
            doubling_res.append(_proj_distance(law.tangent_third(q), marked))
        holds = (
            len(points) == 3
            and all(p.residual < tol for p in points)
            and all(r < tol for r in tangent_res)
            and all(r < tol for r in doubling_res)
        )
        return TwoTorsionReport(
            holds,
            ctx.parameter,
            line_index,
            precision_bits,
            tol,
            tuple(points),
            tuple(tangent_res),
            tuple(doubling_res),
        )


@dataclass(frozen=True)
class NineTorsionReport:
    holds: bool
    parameter: PencilParameter
    cubic_index: int
    precision_bits: int
    tolerance: object
    points: tuple  # nine NumericPoint cut out by the contact cubic
    triple_indices: tuple  # base point hit by 3*p, never the origin
    triple_residuals: tuple
    nine_residuals: tuple  # chord of 3*p and 6*p against the origin
    chain_residual: object  # closure of three successive tangent steps


def nine_torsion_check(parameter, cubic_index, precision_bits=128) -> NineTorsionReport:
    """The chosen contact cubic meets the member in nine points of exact
    order nine for the group law with origin p_0."""
    if not 1 <= cubic_index <= 8:
        raise ValueError("contact cubic index must be in 1..8")
    ctx = curve_context(parameter, origin_index=0)
    data = hesse_data()
    contact = data.halphen_cubics[cubic_index - 1]
    member_eq = ctx.member.equation
    with mpmath.workprec(precision_bits + 48):
        tol = mpmath.mpf(10) ** -25 if precision_bits >= 128 else mpmath.mpf(2) ** -(
            precision_bits // 2
        )
        law = _NumericLaw(ctx.parameter, 0, precision_bits)
        points = _transverse_intersection(
            member_eq, contact, precision_bits, tol
        )
        base_embed = [
            _scale(tuple(_to_mpc(c, precision_bits) for c in p.coords))
            for p in data.base_points
        ]
        contact_terms = _embed_poly(contact, precision_bits)
        numeric_points, triple_idx, triple_res, nine_res = [], [], [], []
        for p in points:
            residual = max(abs(law.member_value(p)), abs(_eval_embedded(contact_terms, p)))
            numeric_points.append(NumericPoint(p, precision_bits, residual))
            q = law.triple(p)
            dists = [_proj_distance(q, b) for b in base_embed]
            k = min(range(9), key=lambda i: dists[i])
            triple_idx.append(k)
            triple_res.append(dists[k])
            # the chord through 3p and 6p meets the member at -9p
            nine_res.append(_proj_distance(law.third(q, law.add(q, q)), law.origin))
        chain = points[0]
        for _ in range(3):
            chain = law.tangent_third(chain)
        chain_residual = _proj_distance(chain, points[0])
        holds = (
            len(points) == 9
            and all(np.residual < tol for np in numeric_points)
            and all(k != 0 for k in triple_idx)
            and all(r < tol for r in triple_res)
            and all(r < tol for r in nine_res)
            and chain_residual < tol
        )
        return NineTorsionReport(
            holds,
            ctx.parameter,
            cubic_index,
            precision_bits,
            tol,
            tuple(numeric_points),
            tuple(triple_idx),
            tuple(triple_res),
            tuple(nine_res),
            chain_residual,
        )


def _transverse_intersection(f: MultiPoly, g: MultiPoly, precision_bits, tol):
    """All common zeros of two plane cubics meeting transversely in the
    chart z = 1, via a resultant in x followed by matching y-roots and a
    bivariate Newton polish.  Raises when the count differs from nine."""
    K = f.domain
    if g.domain is not K:
        raise ValueError("curves live over different domains")
    x2, y2 = MultiPoly.variables(2, K)
    one2 = MultiPoly.constant(2, K.one(), K)
    fa = f.substitute([x2, y2, one2])
    ga = g.substitute([x2, y2, one2])
    res = resultant_in_var(fa, ga, 1)
    deg = res.degree()
    if deg != 9:
        raise ValueError("intersection is degenerate at infinity")
    rc = [_to_mpc(res.coefficient((deg - k, 0)), precision_bits) for k in range(deg + 1)]
    f_terms = _embed_poly(fa, precision_bits)
    g_terms = _embed_poly(ga, precision_bits)

    def eval2(terms, x, y):
        acc = mpmath.mpc(0)
        for (i, j), c in terms.items():
            acc += c * x**i * y**j
        return acc

    def partials(terms, x, y):
        dx = dy = mpmath.mpc(0)
        for (i, j), c in terms.items():
            if i:
                dx += c * i * x ** (i - 1) * y**j
            if j:
                dy += c * j * x**i * y ** (j - 1)
        return dx, dy

    coarse = mpmath.sqrt(tol)
    found = []
    for x0 in _poly_roots(rc, precision_bits):
        yc = [mpmath.mpc(0)] * 4
        for (i, j), c in f_terms.items():
            yc[3 - j] += c * x0**i
        while yc and abs(yc[0]) < coarse:
            yc.pop(0)
        for y0 in _poly_roots(yc, precision_bits):
            if abs(eval2(g_terms, x0, y0)) > coarse:
                continue
            x, y = x0, y0
            for _ in range(max(8, precision_bits // 8)):
                fv, gv = eval2(f_terms, x, y), eval2(g_terms, x, y)
                fx, fy = partials(f_terms, x, y)
                gx, gy = partials(g_terms, x, y)
                det = fx * gy - fy * gx
                if abs(det) == 0:
                    raise ValueError("intersection is not transverse")
                dx = (fv * gy - gv * fy) / det
                dy = (gv * fx - fv * gx) / det
                x, y = x - dx, y - dy
                if abs(dx) + abs(dy) < mpmath.mpf(2) ** -(precision_bits + 16):
                    break
            candidate = _scale((x, y, mpmath.mpc(1)))
            if all(_proj_distance(candidate, seen) > coarse for seen in found):
                found.append(candidate)
    if len(found) != 9:
        raise ValueError(f"expected nine transverse intersections, found {len(found)}")
    return found


@dataclass(frozen=True)
class TangentSectionReport:
    holds: bool
    parameter: PencilParameter
    hessian_param: PencilParameter
    precision_bits: int
    tolerance: object
    points: tuple  # the two residual tangent-line intersections
    sextic_residuals: tuple  # cuspidal sextic evaluated there
    count_on_sextic: int
    off_base_points: bool
    swap_symmetric: bool


def prop62_check(parameter, precision_bits=128) -> TangentSectionReport:
    """The cuspidal sextic meets the member in exactly two points beyond
    the cusps, and they lie on the tangent at p_0 to the Hessian of the
    member.

    The tangent line cuts the member in p_0 plus two residual points;
    those are computed numerically and tested against the sextic.
    """
    ctx = curve_context(parameter, origin_index=0)
    data = hesse_data()
    K = ctx.domain
    hess_param = hessian_parameter(PencilParameter(ctx.parameter.t0, ctx.parameter.t1, K))
    hess_member = pencil_member(hess_param)
    p0 = data.base_points[0]
    tangent = tangent_line(hess_member, p0)
    form = restrict_to_line(ctx.member, tangent)
    s, t = MultiPoly.variables(2, K)
    s0, t0 = line_parameter(tangent, p0)
    quadratic = divide_exact(form, t0 * s - s0 * t)
    sextic = data.invariants["cuspidal_sextic"]
    with mpmath.workprec(precision_bits + 48):
        tol = mpmath.mpf(10) ** -20 if precision_bits >= 128 else mpmath.mpf(2) ** -(
            precision_bits // 3
        )
        law = _NumericLaw(ctx.parameter, 0, precision_bits)
        b0, b1 = tangent.basis_points()
        e0 = _scale(tuple(_to_mpc(c, precision_bits) for c in b0.coords))
        e1 = _scale(tuple(_to_mpc(c, precision_bits) for c in b1.coords))
        sextic_terms = _embed_poly(sextic, precision_bits)
        scale6 = max(abs(c) for c in sextic_terms.values())
        base_embed = [
            _scale(tuple(_to_mpc(c, precision_bits) for c in p.coords))
            for p in data.base_points
        ]
        points, residuals = [], []
        for s_val, t_val in _binary_form_roots(quadratic, precision_bits):
            q = _scale(tuple(s_val * a + t_val * b for a, b in zip(e0, e1)))
            member_res = abs(law.member_value(q))
            points.append(NumericPoint(q, precision_bits, member_res))
            residuals.append(abs(_eval_embedded(sextic_terms, q)) / scale6)
        count = sum(1 for r in residuals if r < tol)
        off_base = all(
            min(_proj_distance(p.coords, b) for b in base_embed) > mpmath.sqrt(tol)
            for p in points
        )
        swapped = False
        if len(points) == 2:
            u = points[0].coords
            mirrored = (u[0], u[2], u[1])
            swapped = bool(_proj_distance(mirrored, points[1].coords) < mpmath.sqrt(tol))
        holds = len(points) == 2 and count == 2
        return TangentSectionReport(
            holds,
            ctx.parameter,
            hess_param,
            precision_bits,
            tol,
            tuple(points),
            tuple(residuals),
            count,
            off_base,
            swapped,
        )
