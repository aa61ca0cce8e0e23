import random

from fractions import Fraction

import pytest

from logdiv.cohomology import (
    CEComplex,
    Cocycle,
    QuotientSlice,
    build_slice,
    cocycle_check,
    deformation_equation,
    ft1,
    ft1_plane_curve,
    h0,
    is_coboundary,
    jacobian_degree_bound,
    lft1,
)
from logdiv.errors import NotLinear, NotWeightedHomogeneous
from logdiv.groebner import buchberger
from logdiv.logder import (
    SaitoBasis,
    VectorField,
    compute_der_log,
    find_saito_basis,
    structure_constants,
    verify_saito,
)
from logdiv.poly import (
    Polynomial,
    WeightSystem,
    partial_derivative,
    poly_from_text,
    poly_to_text,
)

R2 = ("x", "y")
R3 = ("x", "y", "z")
R5 = ("x1", "x2", "x3", "x4", "x5")


def P(text, ring=R2):
    return poly_from_text(text, ring)


def field(ring, *texts):
    return VectorField(ring, [poly_from_text(t, ring) for t in texts])


def saito_for(f):
    return find_saito_basis(compute_der_log(f), f)


def tjurina_gb(f):
    gens = [f] + [partial_derivative(f, i) for i in range(len(f.ring))]
    return buchberger(gens)


FIVE_VAR_F = poly_from_text(
    "x4^4*x5 - 2*x3*x4^2*x5^2 + x3^2*x5^3 + 2*x2*x4*x5^3 - 2*x1*x5^4", R5)

FIVE_VAR_ROWS = [
    ["x4", "x3", "x2", "x1", "0"],
    ["x5", "x4", "0", "0", "x2"],
    ["0", "x5", "2*x4", "-x3", "2*x3"],
    ["0", "0", "x5", "-2*x4", "3*x4"],
    ["0", "0", "0", "-3*x5", "4*x5"],
]


@pytest.fixture(scope="module")
def five_var_saito():
    mat = [[poly_from_text(t, R5) for t in row] for row in FIVE_VAR_ROWS]
    fields = [VectorField(R5, [mat[r][c] for r in range(5)]) for c in range(5)]
    res = verify_saito(fields, FIVE_VAR_F)
    assert res.ok
    return SaitoBasis(fields, FIVE_VAR_F, res.unit)


@pytest.fixture(scope="module")
def five_var_ce(five_var_saito):
    saito = five_var_saito
    w = WeightSystem((1,) * 5, 5)
    sc = structure_constants(saito)
    slice0 = QuotientSlice(saito, saito.field_weights(w), w, 0)
    return CEComplex(saito, sc, slice0)


class TestFt1PlaneCurves:
    def test_quartic(self):
        rep = ft1(P("x^3*y - x*y^3"))
        assert rep.dimension == 1
        assert [poly_to_text(p) for p in rep.deformed_equations] == ["x^2*y^2"]
        assert rep.notes["h0"] == 0
        assert (rep.notes["dim_c0"], rep.notes["dim_c1"], rep.notes["dim_c2"]) \
            == (3, 7, 4)
        assert rep.notes["field_weights"] == [0, 2]

    @pytest.mark.parametrize("text,expected", [
        ("x + y", 0),
        ("x^2 - y^2", 0),
        ("x^2*y + x*y^2", 0),
        ("x^3*y - x*y^3", 1),
        ("x^4*y + 2*x^3*y^2 - x^2*y^3 - 2*x*y^4", 2),
        ("x^5*y - 5*x^3*y^3 + 4*x*y^5", 3),
    ])
    def test_concurrent_lines(self, text, expected):
        assert ft1(P(text)).dimension == expected

    def test_quasi_homogeneous_curve(self):
        assert ft1(P("x^5 + y^4")).dimension == 0

    @pytest.mark.parametrize("text", [
        "x^3*y - x*y^3",
        "x^5 + y^4",
        "x^5*y - 5*x^3*y^3 + 4*x*y^5",
    ])
    def test_agrees_with_plane_curve_shortcut(self, text):
        f = P(text)
        full = ft1(f)
        quick = ft1_plane_curve(f)
        assert full.dimension == quick.dimension
        assert sorted(poly_to_text(p) for p in full.deformed_equations) \
            == sorted(poly_to_text(p) for p in quick.deformed_equations)

    def test_refuses_non_weighted_homogeneous(self):
        f = poly_from_text("x^2*y^2 + x*y^3 + x^3*y*z + x^2*y^2*z", R3)
        with pytest.raises(NotWeightedHomogeneous):
            ft1(f)


class TestBoundsAndH0:
    @pytest.mark.parametrize("text,ring,bound", [
        ("x^3*y - x*y^3", R2, 1),
        ("x^5*y - 5*x^3*y^3 + 4*x*y^5", R2, 3),
        ("4*x^3*y^2 - 16*x^4*z + 27*y^4 - 144*x*y^2*z + 128*x^2*z^2"
         " - 256*z^3", R3, 3),
    ])
    def test_jacobian_degree_bound(self, text, ring, bound):
        f = poly_from_text(text, ring)
        assert jacobian_degree_bound(f) == bound
        assert ft1(f).dimension <= bound

    def test_discriminant_bound_not_attained(self):
        f = poly_from_text(
            "4*x^3*y^2 - 16*x^4*z + 27*y^4 - 144*x*y^2*z + 128*x^2*z^2"
            " - 256*z^3", R3)
        assert ft1(f).dimension == 0

    @pytest.mark.parametrize("text,ring", [
        ("x*y", R2),
        ("x^3*y - x*y^3", R2),
        ("x^5 + y^4", R2),
        ("y^2*z + x*z^2", R3),
    ])
    def test_h0_vanishes(self, text, ring):
        assert h0(poly_from_text(text, ring)) == 0


class TestPaperQuarticCocycle:
    def test_deformation_equation_of_displayed_cocycle(self):
        f = P("x^3*y - x*y^3")
        fields = [field(R2, "x", "y"), field(R2, "0", "x^2*y - y^3")]
        res = verify_saito(fields, f)
        saito = SaitoBasis(fields, f, res.unit)
        psi = [field(R2, "0", "0"), field(R2, "0", "x*y^2 - y^3")]
        fprime = deformation_equation(psi, saito)
        assert poly_to_text(fprime) == "x^2*y^2 - x*y^3"
        sc = structure_constants(saito)
        assert cocycle_check(psi, saito, sc)
        gb = tjurina_gb(f)
        assert not gb.reduces_to_zero(fprime)

    def test_failing_cochain_is_flagged(self):
        f = P("x^3*y - x*y^3")
        saito = saito_for(f)
        sc = structure_constants(saito)
        bad = [field(R2, "1", "0"), field(R2, "0", "0")]
        assert not cocycle_check(bad, saito, sc)


class TestCoboundariesLandInTjurina:
    @pytest.mark.parametrize("text,ring", [
        ("x^3*y - x*y^3", R2),
        ("y^2*z + x*z^2", R3),
    ])
    def test_random_coboundaries(self, text, ring):
        from logdiv.poly import detect_weight_system

        f = poly_from_text(text, ring)
        saito = saito_for(f)
        sc = structure_constants(saito)
        w = detect_weight_system(f)
        cx = build_slice(saito, sc, w)
        gb = tjurina_gb(f)
        rng = random.Random(411)
        for _ in range(10):
            sigma = [Fraction(rng.randint(-4, 4)) for _ in range(cx.dim_c0)]
            psi_vec = cx.apply_d0(sigma)
            assert all(x == 0 for x in cx.apply_d1(psi_vec))
            fields = cx.lift_cocycle(psi_vec)
            fprime = deformation_equation(fields, saito)
            assert gb.reduces_to_zero(fprime)
            assert is_coboundary(psi_vec, cx) is not None


class TestLft1:
    @pytest.mark.parametrize("text,ring", [
        ("x*y", R2),
        ("x*y*z", R3),
    ])
    def test_reductive_members_are_rigid(self, text, ring):
        rep = lft1(poly_from_text(text, ring))
        assert rep.dimension == 0

    def test_cone_example(self):
        rep = lft1(poly_from_text("y^2*z + x*z^2", R3))
        assert rep.dimension == 0
        assert rep.notes["h0"] == 0
        assert rep.notes["h2"] == 0
        assert (rep.notes["dim_m0"], rep.notes["dim_c1"], rep.notes["dim_c2"]) \
            == (6, 18, 18)

    def test_rejects_nonlinear(self):
        with pytest.raises(NotLinear):
            lft1(P("x^3*y - x*y^3"))

    @pytest.mark.parametrize("text,ring", [
        ("x*y", R2),
        ("x*y*z", R3),
        ("y^2*z + x*z^2", R3),
    ])
    def test_agrees_with_ft1_on_linear_members(self, text, ring):
        f = poly_from_text(text, ring)
        assert lft1(f).dimension == ft1(f).dimension


class TestFiveVariableExample:
    def test_dimension_and_representative(self, five_var_saito):
        rep = lft1(FIVE_VAR_F, saito=five_var_saito)
        assert rep.dimension == 1
        assert [poly_to_text(p) for p in rep.deformed_equations] \
            == ["x3*x4^2*x5^2"]
        assert rep.notes == {"h0": 0, "h2": 2, "dim_m0": 20,
                             "dim_c1": 100, "dim_c2": 200}

    def test_displayed_cocycle_spans_the_space(self, five_var_saito, five_var_ce):
        saito = five_var_saito
        ce = five_var_ce
        alpha_field = field(R5, "0", "2*x3", "-2*x4", "0", "0")
        psi = [VectorField(R5, [Polynomial.zero(R5)] * 5) for _ in range(5)]
        psi[2] = alpha_field
        sc = ce.sc
        assert cocycle_check(psi, saito, sc)
        coords = [Fraction(0)] * ce.dim_c1
        block = ce.slice0.project(alpha_field)
        for t, v in enumerate(block):
            coords[2 * ce.m + t] = v
        alpha = Cocycle(ce, coords)
        assert alpha.is_cocycle()
        assert is_coboundary(alpha, ce) is None
        fprime = deformation_equation(psi, saito)
        assert poly_to_text(fprime) == "-2*x4^4*x5"
        gb = tjurina_gb(FIVE_VAR_F)
        assert not gb.reduces_to_zero(fprime)

    def test_graded_slice_path_agrees(self, five_var_saito):
        rep = ft1(FIVE_VAR_F, saito=five_var_saito)
        assert rep.dimension == 1
        assert [poly_to_text(p) for p in rep.deformed_equations] \
            == ["x3*x4^2*x5^2"]
        assert rep.notes["field_weights"] == [0, 0, 0, 0, 0]


class TestSliceInternals:
    def test_quartic_slice_dimensions(self):
        f = P("x^3*y - x*y^3")
        saito = saito_for(f)
        sc = structure_constants(saito)
        w = WeightSystem((1, 1), 4)
        cx = build_slice(saito, sc, w)
        assert (cx.dim_c0, cx.dim_c1, cx.dim_c2) == (3, 7, 4)
        assert cx.h0_dimension() == 0
        assert cx.h1_dimension() == 1

    def test_d2_after_d1_vanishes(self):
        f = poly_from_text("y^2*z + x*z^2", R3)
        saito = saito_for(f)
        sc = structure_constants(saito)
        w = WeightSystem((1, 1, 1), 3)
        cx = build_slice(saito, sc, w)
        d2 = cx.build_d2()
        for pos in range(cx.dim_c1):
            vec = [Fraction(0)] * cx.dim_c1
            vec[pos] = Fraction(1)
            img = cx.apply_d1(vec)
            out = [sum(row[c] * img[c] for c in range(cx.dim_c2))
                   for row in d2]
            assert all(x == 0 for x in out)
