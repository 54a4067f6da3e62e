"""Plane projective transformations and the finite groups they generate.

Transformations are 3x3 matrices over a field tower, compared up to
scalar via a canonical representative (first nonzero entry scaled to
one) while keeping the exact linear lift that was supplied.  Groups are
built by breadth-first closure with canonical deduplication, and the
module records how the groups act on points, on polynomial forms, on
the pencil parameter, and on the holomorphic 2-form of the double cover
w^2 + (degree-six invariant) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .field import FieldElement, tower_eps, tower_zeta9
from .hesse import RationalSelfMap, hesse_data, pencil_forms
from .multipoly import MultiPoly, QQ, convert_domain, field_linsolve, proportionality
from .plane import ProjPoint


# ---------------------------------------------------------------------------
# bare 3x3 matrix arithmetic over a field tower
# ---------------------------------------------------------------------------


def _mat_coerce(rows, domain) -> tuple:
    out = tuple(tuple(domain.coerce(v) for v in row) for row in rows)
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("expected a 3x3 matrix")
    return out


def _mat_mul(a: tuple, b: tuple) -> tuple:
    return tuple(
        tuple(
            a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]
            for j in range(3)
        )
        for i in range(3)
    )


def _mat_det(m: tuple):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _mat_inv(m: tuple) -> tuple:
    det = _mat_det(m)
    if det == 0:
        raise ValueError("singular matrix")
    cof = [
        [
            m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
            - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
            for j in range(3)
        ]
        for i in range(3)
    ]
    return tuple(tuple(cof[j][i] / det for j in range(3)) for i in range(3))


def _mat_canonical(m: tuple) -> tuple:
    for row in m:
        for v in row:
            if v != 0:
                inv = v.inverse() if isinstance(v, FieldElement) else 1 / v
                return tuple(tuple(x * inv for x in row) for row in m)
    raise ValueError("zero matrix")


def _mat_identity(domain) -> tuple:
    one, zero = domain.one(), domain.zero()
    return (
        (one, zero, zero),
        (zero, one, zero),
        (zero, zero, one),
    )


# ---------------------------------------------------------------------------
# projective transformations
# ---------------------------------------------------------------------------


class ProjTransform:
    """An invertible map of the projective plane.

    ``rows`` is the canonical scalar representative used for equality
    and hashing; ``lift`` is the matrix exactly as supplied, so scaled
    copies of one projective map carry distinct linear data.
    """

    __slots__ = ("rows", "lift", "domain")

    def __init__(self, rows, domain):
        lift = _mat_coerce(rows, domain)
        if _mat_det(lift) == 0:
            raise ValueError("transformation must be invertible")
        object.__setattr__(self, "lift", lift)
        object.__setattr__(self, "rows", _mat_canonical(lift))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("ProjTransform is immutable")

    def scaled(self, c) -> "ProjTransform":
        """Same projective map with the lift multiplied by c."""
        c = self.domain.coerce(c)
        return ProjTransform(
            tuple(tuple(c * v for v in row) for row in self.lift), self.domain
        )

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        """self after other, composing the lifts."""
        return ProjTransform(_mat_mul(self.lift, other.lift), self.domain)

    def inverse(self) -> "ProjTransform":
        return ProjTransform(_mat_inv(self.lift), self.domain)

    def det(self):
        return _mat_det(self.lift)

    def apply(self, p: ProjPoint) -> ProjPoint:
        m = self.rows
        coords = tuple(
            m[i][0] * p.coords[0] + m[i][1] * p.coords[1] + m[i][2] * p.coords[2]
            for i in range(3)
        )
        return ProjPoint(coords, self.domain)

    def pullback(self, f: MultiPoly, use_lift: bool = False) -> MultiPoly:
        """f composed with the map, i.e. substitute the linear images."""
        if f.domain != self.domain:
            f = convert_domain(f, self.domain)
        m = self.lift if use_lift else self.rows
        x, y, z = MultiPoly.variables(3, self.domain)
        images = [m[i][0] * x + m[i][1] * y + m[i][2] * z for i in range(3)]
        return f.substitute(images)

    def __eq__(self, other):
        if not isinstance(other, ProjTransform):
            return NotImplemented
        return self.domain == other.domain and self.rows == other.rows

    def __hash__(self):
        return hash((ProjTransform, self.rows))

    def __repr__(self):
        return f"ProjTransform({self.rows!r})"


def hessian_group_generators(domain=None) -> dict:
    """The five classical plane transformations preserving the pencil.

    swap:    (x, y, z) -> (x, z, y)
    cycle:   (x, y, z) -> (y, z, x)
    scale:   diag(1, e, e^2)        for e a primitive cube root of unity
    fourier: the symmetric matrix of cube roots (rows 1,1,1 / 1,e,e^2 /
             1,e^2,e); its square is swap
    dilate:  diag(1, e, e)
    """
    K = domain if domain is not None else tower_eps()
    e = K.symbol_element("eps")
    e2 = e * e
    one, zero = K.one(), K.zero()
    return {
        "swap": ProjTransform(
            ((one, zero, zero), (zero, zero, one), (zero, one, zero)), K
        ),
        "cycle": ProjTransform(
            ((zero, one, zero), (zero, zero, one), (one, zero, zero)), K
        ),
        "scale": ProjTransform(
            ((one, zero, zero), (zero, e, zero), (zero, zero, e2)), K
        ),
        "fourier": ProjTransform(
            ((one, one, one), (one, e, e2), (one, e2, e)), K
        ),
        "dilate": ProjTransform(
            ((one, zero, zero), (zero, e, zero), (zero, zero, e)), K
        ),
    }


def normalized_fourier(domain=None) -> ProjTransform:
    """The fourier generator scaled to determinant one by 1/(e - e^2)."""
    K = domain if domain is not None else tower_eps()
    e = K.symbol_element("eps")
    g = hessian_group_generators(K)["fourier"]
    return g.scaled((e - e * e).inverse())


def unit_determinant_generators() -> dict:
    """Lifts of the four group generators inside the determinant-one
    matrices over Q(zeta9): cycle and scale as they stand, fourier scaled
    by 1/(e-e^2) and dilate scaled by zeta9."""
    K = tower_zeta9()
    z9 = K.symbol_element("zeta9")
    e = z9 * z9 * z9
    e2 = e * e
    one, zero = K.one(), K.zero()
    cycle = ProjTransform(((zero, one, zero), (zero, zero, one), (one, zero, zero)), K)
    scale = ProjTransform(((one, zero, zero), (zero, e, zero), (zero, zero, e2)), K)
    fourier = ProjTransform(((one, one, one), (one, e, e2), (one, e2, e)), K).scaled(
        (e - e2).inverse()
    )
    dilate = ProjTransform(((one, zero, zero), (zero, e, zero), (zero, zero, e)), K).scaled(z9)
    return {"cycle": cycle, "scale": scale, "fourier": fourier, "dilate": dilate}


# ---------------------------------------------------------------------------
# group closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixGroup:
    elements: frozenset  # matrices as row tuples
    gens: tuple
    projective: bool
    domain: object

    @property
    def order(self) -> int:
        return len(self.elements)

    def norm(self, m: tuple) -> tuple:
        return _mat_canonical(m) if self.projective else m

    def identity(self) -> tuple:
        return self.norm(_mat_identity(self.domain))


def generate_closure(
    gens: Sequence[ProjTransform], projective: bool = True, cap: int = 2000
) -> MatrixGroup:
    """Breadth-first closure of the generators under multiplication."""
    if not gens:
        raise ValueError("need at least one generator")
    domain = gens[0].domain
    base = tuple(g.rows if projective else g.lift for g in gens)
    norm = _mat_canonical if projective else (lambda m: m)
    els = {norm(_mat_identity(domain))}
    els.update(base)
    frontier = list(els)
    while frontier:
        new = []
        for a in frontier:
            for g in base:
                b = norm(_mat_mul(a, g))
                if b not in els:
                    els.add(b)
                    new.append(b)
                    if len(els) > cap:
                        raise ValueError(f"group closure exceeded cap {cap}")
        frontier = new
    return MatrixGroup(frozenset(els), base, projective, domain)


def _element_order(G: MatrixGroup, m: tuple) -> int:
    ident = G.identity()
    power = m
    k = 1
    while power != ident:
        power = G.norm(_mat_mul(power, m))
        k += 1
        if k > 2 * G.order:
            raise RuntimeError("order computation runaway")
    return k


def group_facts(G: MatrixGroup, sub: Optional[MatrixGroup] = None) -> dict:
    """Exact combinatorial facts: order, center, element orders, normality."""
    abelian = all(
        _mat_mul(a, b) == _mat_mul(b, a) or G.norm(_mat_mul(a, b)) == G.norm(_mat_mul(b, a))
        for a in G.gens
        for b in G.gens
    )
    center = [
        m
        for m in G.elements
        if all(G.norm(_mat_mul(m, g)) == G.norm(_mat_mul(g, m)) for g in G.gens)
    ]
    histogram: dict = {}
    for m in G.elements:
        k = _element_order(G, m)
        histogram[k] = histogram.get(k, 0) + 1
    facts = {
        "order": G.order,
        "center_order": len(center),
        "order_histogram": dict(sorted(histogram.items())),
        "abelian": abelian,
    }
    if sub is not None:
        if not sub.elements <= G.elements:
            raise ValueError("sub is not contained in G")
        facts["is_normal_sub"] = all(
            G.norm(_mat_mul(_mat_mul(g, h), _mat_inv(g))) in sub.elements
            for g in G.gens
            for h in sub.elements
        )
    return facts


# ---------------------------------------------------------------------------
# actions on points, forms and the pencil parameter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermImage:
    perms: tuple  # sorted permutation tuples
    faithful: bool
    orbits: tuple  # orbits of point indices, each sorted
    two_transitive: bool


def _orbits_under(perms: Sequence[tuple], n: int) -> tuple:
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for p in perms:
                j = p[i]
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        for i in orbit:
            seen[i] = True
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


def _pair_transitive(perms: Sequence[tuple], n: int) -> bool:
    if n < 2:
        return False
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    index = {p: k for k, p in enumerate(pairs)}
    pair_perms = [
        tuple(index[(p[i], p[j])] for (i, j) in pairs) for p in perms
    ]
    return len(_orbits_under(pair_perms, len(pairs))) == 1


def action_on_points(G: MatrixGroup, pts: Sequence[ProjPoint]) -> PermImage:
    """Permutation image of the group on a labeled point list."""
    lookup = {p: i for i, p in enumerate(pts)}
    perms = set()
    for rows in G.elements:
        g = ProjTransform(rows, G.domain)
        images = []
        for p in pts:
            q = g.apply(p)
            if q not in lookup:
                raise ValueError("group element does not permute the points")
            images.append(lookup[q])
        perms.add(tuple(images))
    perms = tuple(sorted(perms))
    return PermImage(
        perms,
        faithful=len(perms) == G.order,
        orbits=_orbits_under(perms, len(pts)),
        two_transitive=_pair_transitive(perms, len(pts)),
    )


def form_permutation(
    g: ProjTransform, forms: Sequence[MultiPoly]
) -> tuple:
    """How the map permutes a list of forms by pushforward.

    Returns (perm, scalars) where form[i] composed with the inverse map
    is scalars[i] times form[perm[i]]; raises if some image is missing.
    """
    h = g.inverse()
    perm = []
    scalars = []
    for f in forms:
        image = h.pullback(f)
        hit = None
        for j, candidate in enumerate(forms):
            c, _ = proportionality(image, candidate)
            if c is not None:
                hit = (j, c)
                break
        if hit is None:
            raise ValueError("map does not permute the forms")
        perm.append(hit[0])
        scalars.append(hit[1])
    return tuple(perm), tuple(scalars)


def _pencil_coordinates(f: MultiPoly, s: MultiPoly, t: MultiPoly, domain):
    monomials = sorted(set(s.terms) | set(t.terms) | set(f.terms))
    matrix = [
        [s.terms.get(m, domain.zero()), t.terms.get(m, domain.zero())]
        for m in monomials
    ]
    rhs = [f.terms.get(m, domain.zero()) for m in monomials]
    return field_linsolve(matrix, rhs, domain)


def parameter_action(g: ProjTransform) -> RationalSelfMap:
    """The Moebius map induced on the pencil parameter by pushing members
    forward through the transformation."""
    domain = g.domain
    s, t = pencil_forms(domain)
    h = g.inverse()
    s_image = h.pullback(s)
    t_image = h.pullback(t)
    fit_s = _pencil_coordinates(s_image, s, t, domain)
    fit_t = _pencil_coordinates(t_image, s, t, domain)
    if fit_s is None or fit_t is None:
        raise ValueError("not pencil-preserving")
    a, b = fit_s
    c, d = fit_t
    t0, t1 = MultiPoly.variables(2, domain)
    return RationalSelfMap(b * t0 + d * t1, a * t0 + c * t1)


def _mobius_matrix(m: RationalSelfMap) -> tuple:
    if m.num.degree() != 1:
        raise ValueError("expected a degree-one parameter map")
    den, num = m.den, m.num
    e10, e01 = (1, 0), (0, 1)
    domain = num.domain
    rows = (
        (den.terms.get(e10, domain.zero()), den.terms.get(e01, domain.zero())),
        (num.terms.get(e10, domain.zero()), num.terms.get(e01, domain.zero())),
    )
    for row in rows:
        for v in row:
            if v != 0:
                inv = v.inverse() if isinstance(v, FieldElement) else 1 / v
                return tuple(tuple(x * inv for x in r) for r in rows)
    raise ValueError("zero parameter map")


def parameter_image_order(transforms: Sequence[ProjTransform], cap: int = 200) -> int:
    """Order of the subgroup of parameter Moebius maps the transformations
    generate."""
    gens = [_mobius_matrix(parameter_action(g)) for g in transforms]

    def mul(a, b):
        return tuple(
            tuple(
                a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)
            )
            for i in range(2)
        )

    def canon(m):
        for row in m:
            for v in row:
                if v != 0:
                    inv = v.inverse() if isinstance(v, FieldElement) else 1 / v
                    return tuple(tuple(x * inv for x in r) for r in m)
        raise ValueError("zero matrix")

    els = set(canon(g) for g in gens)
    frontier = list(els)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = canon(mul(a, g))
                if b not in els:
                    els.add(b)
                    new.append(b)
                    if len(els) > cap:
                        raise ValueError("parameter image exceeded cap")
        frontier = new
    return len(els)


def invariance_factor(f: MultiPoly, g: ProjTransform, use_lift: bool = False):
    """Scalar c with (f composed with g) = c*f; raises when f is not a
    relative invariant of g."""
    pull = g.pullback(f, use_lift=use_lift)
    c, witness = proportionality(pull, f)
    if c is None:
        raise ValueError(f"not a relative invariant; first mismatch at {witness}")
    return c


# ---------------------------------------------------------------------------
# symplectic ratio on the double cover w^2 + (sextic invariant) = 0
# ---------------------------------------------------------------------------


DEFAULT_SAMPLES = (
    (Fraction(1, 3), Fraction(1, 7)),
    (Fraction(2, 5), Fraction(-3, 4)),
    (Fraction(-1, 2), Fraction(5, 6)),
)


def cover_automorphisms() -> dict:
    """Named lifts of plane transformations to the double cover, as
    (transform, w scalar) pairs.

    The translation generators, the determinant-one fourier lift and its
    dilate-conjugate leave the sextic invariant and lift with w fixed;
    they generate the subgroup acting trivially on the 2-form.  The two
    dilate lifts also fix the sextic exactly (the cube roots cancel), so
    the cover constraint forces their w scalar to 1; their 2-form ratios
    are the two primitive cube roots of unity.
    """
    K = tower_eps()
    e = K.symbol_element("eps")
    one, zero = K.one(), K.zero()
    gens = hessian_group_generators(K)
    nf = normalized_fourier(K)
    twisted = gens["dilate"].compose(nf).compose(gens["dilate"].inverse())
    dilate_square = ProjTransform(
        ((one, zero, zero), (zero, e * e, zero), (zero, zero, e * e)), K
    )
    return {
        "cycle": (gens["cycle"], one),
        "scale": (gens["scale"], one),
        "fourier": (nf, one),
        "twisted_fourier": (twisted, one),
        "dilate": (gens["dilate"], one),
        "dilate_square": (dilate_square, one),
    }


def _embed(value, precision_bits: int):
    if isinstance(value, FieldElement):
        mid, _ = value.embed_complex(precision_bits=precision_bits)
        return mpmath.mpc(mid)
    if isinstance(value, Fraction):
        return mpmath.mpc(value.numerator) / value.denominator
    return mpmath.mpc(value)


def _phi6_numeric(x, y, z):
    return (
        x**6
        + y**6
        + z**6
        - 10 * (x**3 * y**3 + x**3 * z**3 + y**3 * z**3)
    )


def symplectic_ratio(
    g: ProjTransform,
    w_scalar,
    samples: Sequence = DEFAULT_SAMPLES,
    precision_bits: int = 128,
):
    """Pullback ratio of the 2-form dx^dy/(dF/dw) on the double cover.

    The cover is w^2 + (sextic invariant) = 0 with w of weight three; the
    map acts by the matrix lift on (x, y, z) and multiplies w by
    ``w_scalar``.  Evaluates the ratio numerically at the affine samples
    (chart z = 1) and returns (ratio, spread); all samples must agree.
    """
    with mpmath.workprec(precision_bits + 48):
        tol = mpmath.mpf(2) ** (-(precision_bits // 2))
        m = [[_embed(v, precision_bits) for v in row] for row in g.lift]
        cw = _embed(w_scalar, precision_bits)
        ratios = []
        for sx, sy in samples:
            x = _embed(sx, precision_bits)
            y = _embed(sy, precision_bits)
            phi = _phi6_numeric(x, y, mpmath.mpc(1))
            if abs(phi) < tol:
                raise ValueError("sample point lies on the branch locus")
            w = mpmath.sqrt(-phi)
            px = m[0][0] * x + m[0][1] * y + m[0][2]
            py = m[1][0] * x + m[1][1] * y + m[1][2]
            pz = m[2][0] * x + m[2][1] * y + m[2][2]
            if abs(pz) < tol:
                raise ValueError("sample maps to the line at infinity")
            ix, iy = px / pz, py / pz
            iw = cw * w / pz**3
            residual = abs(iw**2 + _phi6_numeric(ix, iy, mpmath.mpc(1)))
            scalefree = residual / max(abs(iw) ** 2, mpmath.mpf(1))
            if scalefree > tol:
                raise ValueError(
                    "image point left the double cover; wrong w scalar"
                )
            # Jacobian of ((m00 x + m01 y + m02)/pz, (m10 x + m11 y + m12)/pz)
            dxdx = (m[0][0] * pz - px * m[2][0]) / pz**2
            dxdy = (m[0][1] * pz - px * m[2][1]) / pz**2
            dydx = (m[1][0] * pz - py * m[2][0]) / pz**2
            dydy = (m[1][1] * pz - py * m[2][1]) / pz**2
            jac = dxdx * dydy - dxdy * dydx
            ratios.append(jac * w / iw)
        spread = max(
            abs(a - b) for a in ratios for b in ratios
        )
        if spread > tol:
            raise ValueError("pullback ratio is not constant across samples")
        return ratios[0], spread
