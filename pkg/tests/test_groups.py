"""Matrix group closures, actions, invariance factors, cover ratios."""

from fractions import Fraction

import mpmath
import pytest

from hesse_lab.field import tower_eps
from hesse_lab.hesse import PencilParameter, hesse_data, identity_self_map
from hesse_lab.groups import (
    MatrixGroup,
    ProjTransform,
    action_on_points,
    cover_automorphisms,
    form_permutation,
    generate_closure,
    group_facts,
    hessian_group_generators,
    invariance_factor,
    normalized_fourier,
    parameter_action,
    parameter_image_order,
    symplectic_ratio,
    unit_determinant_generators,
)

K = tower_eps()
EPS = K.symbol_element("eps")
GENS = hessian_group_generators(K)
DATA = hesse_data()

TRANSLATIONS = generate_closure([GENS["cycle"], GENS["scale"]])
KERNEL = generate_closure([GENS["swap"], GENS["cycle"], GENS["scale"]])
HESSIAN_GROUP = generate_closure(
    [GENS["cycle"], GENS["scale"], GENS["fourier"], GENS["dilate"]]
)
STABILIZER = generate_closure([GENS["fourier"], GENS["dilate"]])


def test_transform_equality_up_to_scalar():
    nf = normalized_fourier(K)
    assert nf == GENS["fourier"]
    assert nf.lift != GENS["fourier"].lift
    assert hash(nf) == hash(GENS["fourier"])
    with pytest.raises(AttributeError):
        nf.rows = ()


def test_transform_apply_matches_pullback():
    g = GENS["fourier"]
    f = DATA.invariants["sextic"]
    p = DATA.vertices[4]
    image = g.apply(p)
    pulled = g.pullback(f)
    lhs = pulled.evaluate(p.coords)
    rhs = f.evaluate(image.coords)
    # pullback evaluates f at the image point, up to the scalar lost by
    # point canonicalization; both sides vanish or not together
    assert (lhs == 0) == (rhs == 0)


def test_singular_matrix_rejected():
    one, zero = K.one(), K.zero()
    with pytest.raises(ValueError):
        ProjTransform(((one, one, zero), (one, one, zero), (zero, zero, one)), K)


def test_projective_group_orders():
    assert TRANSLATIONS.order == 9
    assert KERNEL.order == 18
    assert HESSIAN_GROUP.order == 216
    assert STABILIZER.order == 24


def test_translation_group_facts():
    facts = group_facts(TRANSLATIONS)
    assert facts["order"] == 9
    assert facts["abelian"]
    assert facts["order_histogram"] == {1: 1, 3: 8}


def test_stabilizer_is_binary_tetrahedral():
    facts = group_facts(STABILIZER)
    assert facts["order"] == 24
    assert not facts["abelian"]
    assert facts["order_histogram"] == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}


def test_translations_normal_in_hessian_group():
    facts = group_facts(HESSIAN_GROUP, sub=TRANSLATIONS)
    assert facts["is_normal_sub"]
    facts = group_facts(HESSIAN_GROUP, sub=KERNEL)
    assert facts["is_normal_sub"]


def test_subgroup_containment_checked():
    with pytest.raises(ValueError):
        group_facts(TRANSLATIONS, sub=STABILIZER)


def test_closure_cap():
    with pytest.raises(ValueError):
        generate_closure(list(GENS.values()), cap=100)


def test_heisenberg_lift():
    heis = generate_closure([GENS["cycle"], GENS["scale"]], projective=False)
    facts = group_facts(heis)
    assert facts["order"] == 27
    assert not facts["abelian"]
    assert facts["center_order"] == 3
    assert facts["order_histogram"] == {1: 1, 3: 26}


def test_unit_determinant_closure():
    lifts = unit_determinant_generators()
    for t in lifts.values():
        assert t.det() == t.domain.one()
    big = generate_closure(list(lifts.values()), projective=False)
    assert big.order == 648


def test_seventy_two_normal_subgroup():
    twisted = GENS["dilate"].compose(GENS["fourier"]).compose(GENS["dilate"].inverse())
    h72 = generate_closure([GENS["cycle"], GENS["scale"], GENS["fourier"], twisted])
    assert h72.order == 72
    assert group_facts(HESSIAN_GROUP, sub=h72)["is_normal_sub"]


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------


def test_base_point_action_two_transitive():
    image = action_on_points(HESSIAN_GROUP, DATA.base_points)
    assert len(image.perms) == 216
    assert image.faithful
    assert image.two_transitive
    assert (3, 0, 6, 1, 7, 4, 8, 5, 2) in image.perms  # (031)(475)(682)
    assert (0, 4, 8, 3, 7, 2, 6, 1, 5) in image.perms  # (147)(285)


def test_vertex_orbits_under_translations():
    image = action_on_points(TRANSLATIONS, DATA.vertices)
    assert sorted(len(o) for o in image.orbits) == [3, 3, 3, 3]
    assert not image.two_transitive


def test_action_requires_closed_point_set():
    with pytest.raises(ValueError):
        action_on_points(TRANSLATIONS, DATA.base_points[:2])


def test_contact_cubic_permutations():
    perm, scalars = form_permutation(GENS["fourier"], DATA.halphen_cubics)
    assert perm == (1, 4, 7, 2, 5, 0, 3, 6)  # (121'2')(434'3')
    perm, scalars = form_permutation(GENS["dilate"], DATA.halphen_cubics)
    assert perm == (0, 3, 1, 2, 4, 7, 5, 6)  # (243)(2'4'3')
    perm, scalars = form_permutation(GENS["swap"], DATA.halphen_cubics)
    assert perm == (4, 5, 6, 7, 0, 1, 2, 3)  # pairs swap


# ---------------------------------------------------------------------------
# parameter action
# ---------------------------------------------------------------------------


def test_kernel_acts_trivially_on_parameters():
    for name in ("swap", "cycle", "scale"):
        act = parameter_action(GENS[name])
        ok, _ = act.same_map(identity_self_map())
        assert ok, name


def test_parameter_image_order_twelve():
    order = parameter_image_order(
        [GENS["cycle"], GENS["scale"], GENS["fourier"], GENS["dilate"]]
    )
    assert order == 12


def test_parameter_action_permutes_special_sets():
    triangle = set(DATA.triangle_parameters)
    equi = set(DATA.equianharmonic_parameters)
    for name in ("fourier", "dilate"):
        act = parameter_action(GENS[name])
        assert {act.apply(p) for p in triangle} == triangle
        assert {act.apply(p) for p in equi} == equi


def test_parameter_action_orders():
    sq = parameter_action(GENS["fourier"]).compose(parameter_action(GENS["fourier"]))
    ok, _ = sq.same_map(identity_self_map())
    assert ok
    d = parameter_action(GENS["dilate"])
    ok, _ = d.compose(d).compose(d).same_map(identity_self_map())
    assert ok


def test_non_pencil_preserving_rejected():
    one, zero = K.one(), K.zero()
    shear = ProjTransform(((one, one, zero), (zero, one, zero), (zero, zero, one)), K)
    with pytest.raises(ValueError):
        parameter_action(shear)


# ---------------------------------------------------------------------------
# invariance factors
# ---------------------------------------------------------------------------


def test_sextic_invariance_factors():
    sextic = DATA.invariants["sextic"]
    for name in ("cycle", "scale", "dilate"):
        assert invariance_factor(sextic, GENS[name]) == K.one()
    assert invariance_factor(sextic, normalized_fourier(K), use_lift=True) == K.one()
    assert invariance_factor(sextic, GENS["fourier"]) == -27 * K.one()


def test_polar_product_factors():
    nonic = DATA.invariants["polar_product"]
    assert invariance_factor(nonic, GENS["swap"]) == -K.one()
    assert invariance_factor(nonic, GENS["cycle"]) == K.one()
    assert invariance_factor(nonic, GENS["dilate"]) == K.one()


def test_twelve_line_form_strictly_relative():
    lines = DATA.invariants["inflection_line_product"]
    assert invariance_factor(lines, GENS["scale"]) == K.one()
    assert invariance_factor(lines, GENS["dilate"]) == EPS * EPS
    assert invariance_factor(lines, normalized_fourier(K), use_lift=True) == K.one()


def test_equianharmonic_product_invariant():
    quartic = DATA.invariants["equianharmonic_product"]
    for name in ("swap", "cycle", "scale", "dilate"):
        assert invariance_factor(quartic, GENS[name]) == K.one()


def test_factors_multiplicative():
    lines = DATA.invariants["inflection_line_product"]
    g, h = GENS["dilate"], GENS["fourier"]
    combined = invariance_factor(lines, g.compose(h))
    assert combined == invariance_factor(lines, g) * invariance_factor(lines, h)


def test_invariance_failure_witness():
    from hesse_lab.multipoly import MultiPoly

    x, _, _ = MultiPoly.variables(3, K)
    with pytest.raises(ValueError):
        invariance_factor(x**3, GENS["fourier"])


# ---------------------------------------------------------------------------
# symplectic ratios on the double cover
# ---------------------------------------------------------------------------


def test_symplectic_generators_ratio_one():
    lifts = cover_automorphisms()
    tol = mpmath.mpf("1e-25")
    for name in ("cycle", "scale", "fourier", "twisted_fourier"):
        transform, w_scalar = lifts[name]
        ratio, spread = symplectic_ratio(transform, w_scalar)
        assert abs(ratio - 1) < tol, name
        assert spread < tol


def test_dilate_lifts_are_non_symplectic_cube_roots():
    lifts = cover_automorphisms()
    with mpmath.workprec(160):
        tol = mpmath.mpf("1e-25")
        eps_embed, _ = EPS.embed_complex(precision_bits=160)
        ratio, _ = symplectic_ratio(*lifts["dilate"])
        assert abs(ratio - eps_embed**2) < tol
        ratio_sq, _ = symplectic_ratio(*lifts["dilate_square"])
        assert abs(ratio_sq - eps_embed) < tol
        assert abs(ratio * ratio_sq - 1) < tol


def test_wrong_cover_scalar_rejected():
    with pytest.raises(ValueError):
        symplectic_ratio(GENS["dilate"], EPS)
