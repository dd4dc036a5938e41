"""Tests for the point distance density and distribution."""

import math
from collections.abc import Callable

import numpy as np
import pytest

from polygauge import (
    ChordLaw,
    DistanceLaw,
    PolygaugeInvalidParameterError,
    RegularPolygon,
    cdf_distance,
    mean_chord,
    mean_distance,
    new_polygon,
    pdf_distance,
    piefke_check,
    triangle_pdf_closed,
)
from polygauge.chord_law import h, thetas
from polygauge.distance_law import (
    circle_chord_cdf,
    circle_distance_pdf,
    h_ring,
    h_star,
    normalization,
    quadrature_cdf,
    stieltjes_mean_chord,
)
from polygauge.numerics import central_diff, integrate
from polygauge.verification import interior_grid

LawFactory = Callable[..., DistanceLaw]

TRIANGLE_MEAN = math.sqrt(3.0) / 20.0 * (4.0 + 3.0 * math.log(3.0))
SQUARE_MEAN = 0.5214054331647207 * math.sqrt(2.0)  # unit-side constant scaled by side


def test_h_star_zero_cases(pentagon: RegularPolygon) -> None:
    """Test h_star vanishes for k = 0 and at t = 0."""
    assert h_star(pentagon, 0, 1.0, 0.5, 0.3) == 0.0
    assert h_star(pentagon, 1, 0.0, 0.0, 0.3) == 0.0
    assert h_ring(pentagon, 0, 1.0, 0.5, 0.3) == 0.0
    assert h_ring(pentagon, 1, 0.0, 0.0, 0.3) == 0.0


def test_tower_arguments_validated(pentagon: RegularPolygon) -> None:
    """Test negative distances and a > t are rejected."""
    with pytest.raises(PolygaugeInvalidParameterError, match="Distance"):
        h_star(pentagon, 1, -0.1, 0.0, 0.3)
    with pytest.raises(PolygaugeInvalidParameterError, match="exceeds"):
        h_ring(pentagon, 1, 0.5, 0.9, 0.3)


def test_towers_at_t_equal_a(pentagon: RegularPolygon) -> None:
    """Test the tower bases where the radicals vanish and arcsin is pi/2."""
    law = ChordLaw(pentagon)
    a, b = law.a1[1], law.b1[1]
    t1, t2, t3, t4 = thetas(pentagon, 1, a, b)
    star = t1 * a**2 / 2 + t2 * math.log(a) + t3 * a * math.pi / 2
    star += t4 * a**2 * math.pi / 4
    ring = t1 * a**4 / 8 + t2 * a**2 / 4 * (2 * math.log(a) - 1)
    ring += t3 * a**3 * math.pi / 4 + t4 * a**4 * math.pi / 16
    assert h_star(pentagon, 1, a, a, b) == pytest.approx(star, abs=1e-12)
    assert h_ring(pentagon, 1, a, a, b) == pytest.approx(ring, abs=1e-12)


def test_tower_derivatives(pentagon: RegularPolygon) -> None:
    """Test h_star is an antiderivative of h and h_ring one of t h_star."""
    law = ChordLaw(pentagon)
    a, b = law.a1[1], law.b1[1]
    step = 1e-5
    for t in np.linspace(a + 0.02, pentagon.max_chord, 20).tolist():
        star = central_diff(lambda x: h_star(pentagon, 1, x, a, b), t, step)
        exact = h(pentagon, 1, t, a, b)
        assert star == pytest.approx(exact, rel=1e-6, abs=1e-6)
        ring = central_diff(lambda x: h_ring(pentagon, 1, x, a, b), t, step)
        exact_ring = t * h_star(pentagon, 1, t, a, b)
        assert ring == pytest.approx(exact_ring, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_branch_star_continuous_at_lambda(make_law: LawFactory, n: int) -> None:
    """Test the odd-n correction keeps H_K* continuous at lambda."""
    dlaw = make_law(n)
    poly = dlaw.poly
    eps = 1e-9
    below = dlaw.branch_star(poly.K, poly.lam - eps)[0]
    above = dlaw.branch_star(poly.K, poly.lam + eps)[0]
    assert abs(above - below) < 1e-8


def test_branch_star_square_top(make_law: LawFactory) -> None:
    """Test the last even branch is finite at the longest chord."""
    dlaw = make_law(4)
    assert math.isfinite(dlaw.branch_star(1, 2.0)[0])
    with pytest.raises(PolygaugeInvalidParameterError, match="outside branch"):
        dlaw.branch_star(0, 2.0)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 12, 19, 40])
@pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
def test_cdf_endpoints(make_law: LawFactory, n: int, r: float) -> None:
    """Test G is 0 at 0 and tends to 1 at the longest chord."""
    dlaw = make_law(n, r)
    top = dlaw.poly.max_chord
    assert cdf_distance(dlaw, 0.0) == 0.0
    assert cdf_distance(dlaw, -0.5) == 0.0
    assert cdf_distance(dlaw, top) == 1.0
    assert dlaw.cdf(float(np.nextafter(top, 0.0))) == pytest.approx(1.0, abs=1e-8)


def test_pdf_support(make_law: LawFactory) -> None:
    """Test g vanishes at 0 and outside [0, ell_{K+1})."""
    dlaw = make_law(6)
    top = dlaw.poly.max_chord
    assert pdf_distance(dlaw, 0.0) == 0.0
    assert pdf_distance(dlaw, top) == 0.0
    assert pdf_distance(dlaw, -1.0) == 0.0
    assert pdf_distance(dlaw, 0.5 * top) > 0.0


def test_pdf_small_distances(make_law: LawFactory) -> None:
    """Test g(t)/t tends to 2 pi/A as t goes to 0."""
    dlaw = make_law(5)
    poly = dlaw.poly
    t = 1e-6
    expected = 2.0 * math.pi / poly.A
    assert dlaw.pdf(t) / t == pytest.approx(expected, rel=1e-5)


@pytest.mark.parametrize("n", range(3, 13))
def test_laws_continuous_at_breakpoints(make_law: LawFactory, n: int) -> None:
    """Test g and G agree on both sides of every interior breakpoint."""
    dlaw = make_law(n)
    for x in dlaw.poly.breakpoints[1:-1]:
        below = float(np.nextafter(x, 0.0))
        assert dlaw.pdf(x) == pytest.approx(dlaw.pdf(below), abs=1e-8)
        assert dlaw.cdf(x) == pytest.approx(dlaw.cdf(below), abs=1e-8)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8])
def test_derivative_oracles(make_law: LawFactory, n: int) -> None:
    """Test phi_star' = F, phi_ring' = t phi_star and G' = g."""
    dlaw = make_law(n)
    step = 1e-5
    for t in interior_grid(dlaw.poly, 4):
        star = dlaw.phi_star(t)
        d_star = central_diff(dlaw.phi_star, t, step)
        assert d_star == pytest.approx(dlaw.chord.cdf(t), rel=1e-6, abs=1e-6)
        d_ring = central_diff(dlaw.phi_ring, t, step)
        assert d_ring == pytest.approx(t * star, rel=1e-6, abs=1e-6)
        d_cdf = central_diff(dlaw.cdf, t, step)
        assert d_cdf == pytest.approx(dlaw.pdf(t), rel=1e-5, abs=1e-6)


def test_tower_prefix_starts_at_zero(make_law: LawFactory) -> None:
    """Test both towers vanish at t = 0."""
    dlaw = make_law(7)
    assert dlaw.phi_star(0.0) == 0.0
    assert dlaw.phi_ring(0.0) == 0.0
    assert dlaw.star_prefix[0] == 0.0


def test_triangle_closed_form(make_law: LawFactory) -> None:
    """Test the triangle density against its elementary closed form."""
    for r in (1.0, 2.5):
        dlaw = make_law(3, r)
        grid = np.linspace(0.0, dlaw.poly.max_chord, 101)[:-1].tolist()
        for t in grid:
            assert dlaw.pdf(t) * r == pytest.approx(
                triangle_pdf_closed(r, t) * r, abs=1e-10
            )


def test_triangle_closed_form_support() -> None:
    """Test the closed form vanishes outside [0, sqrt(3) r) and is continuous."""
    root3 = math.sqrt(3.0)
    assert triangle_pdf_closed(1.0, 0.0) == 0.0
    assert triangle_pdf_closed(1.0, root3) == 0.0
    assert triangle_pdf_closed(1.0, 2.0) == 0.0
    seam = 1.5
    below = triangle_pdf_closed(1.0, float(np.nextafter(seam, 0.0)))
    assert triangle_pdf_closed(1.0, seam) == pytest.approx(below, abs=1e-8)
    with pytest.raises(PolygaugeInvalidParameterError, match="Circumradius"):
        triangle_pdf_closed(0.0, 0.5)


def test_triangle_mean_distance(make_law: LawFactory) -> None:
    """Test the triangle mean distance, also in terms of the side length."""
    assert mean_distance(make_law(3)) == pytest.approx(TRIANGLE_MEAN, abs=1e-9)
    side = 2.0
    r = side / math.sqrt(3.0)
    expected = side / 20.0 * (4.0 + 3.0 * math.log(3.0))
    assert mean_distance(make_law(3, r)) == pytest.approx(expected, abs=1e-9)


def test_square_mean_distance(make_law: LawFactory) -> None:
    """Test the square mean distance against the unit-square constant."""
    assert mean_distance(make_law(4)) == pytest.approx(SQUARE_MEAN, abs=1e-9)


@pytest.mark.parametrize("n", range(3, 13))
def test_normalization(make_law: LawFactory, n: int) -> None:
    """Test g integrates to 1."""
    assert normalization(make_law(n)) == pytest.approx(1.0, abs=1e-6)


def test_cdf_matches_integral_of_pdf(make_law: LawFactory) -> None:
    """Test G equals the quadrature of g pointwise."""
    dlaw = make_law(6)
    for t in np.linspace(0.05, dlaw.poly.max_chord - 0.05, 12).tolist():
        assert dlaw.cdf(t) == pytest.approx(quadrature_cdf(dlaw, t), abs=1e-6)


def test_cdf_nondecreasing(make_law: LawFactory) -> None:
    """Test G never decreases on a fine grid."""
    for n in (3, 4, 7, 10):
        dlaw = make_law(n)
        values = dlaw.cdf_array(np.linspace(0.0, dlaw.poly.max_chord, 500))
        assert np.all(np.diff(values) >= 0.0)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8])
def test_piefke_matches_density(make_law: LawFactory, n: int) -> None:
    """Test the tail integral of the chord law reproduces g."""
    dlaw = make_law(n)
    for t in interior_grid(dlaw.poly, 4):
        g = dlaw.pdf(t)
        assert piefke_check(dlaw, t) == pytest.approx(g, rel=1e-5, abs=1e-8)


def test_piefke_near_top(make_law: LawFactory) -> None:
    """Test the tail integral vanishes towards the longest chord."""
    dlaw = make_law(4)
    top = dlaw.poly.max_chord
    assert abs(piefke_check(dlaw, top - 1e-4)) < 1e-3
    with pytest.raises(PolygaugeInvalidParameterError, match="outside"):
        piefke_check(dlaw, 0.0)


@pytest.mark.parametrize("n", range(3, 13))
def test_mean_chord_identity(n: int) -> None:
    """Test the Stieltjes mean of F equals pi A / u."""
    law = ChordLaw(new_polygon(n))
    assert stieltjes_mean_chord(law) == pytest.approx(
        mean_chord(law.poly), rel=1e-6
    )


def test_mean_chord_values(square: RegularPolygon, triangle: RegularPolygon) -> None:
    """Test mean chords of the square and the triangle."""
    assert mean_chord(square) == pytest.approx(math.pi / (2.0 * math.sqrt(2.0)))
    assert mean_chord(square) == pytest.approx(1.110720, abs=1e-6)
    assert mean_chord(triangle) == pytest.approx(math.pi / 4.0)


def test_circle_reference_laws() -> None:
    """Test the disc laws used as plotting references."""
    assert circle_chord_cdf(1.0, 1.0) == pytest.approx(1.0 - math.sqrt(3.0) / 2.0)
    assert circle_chord_cdf(1.0, [0.0, 2.0, 3.0]) == pytest.approx([0.0, 1.0, 1.0])
    assert circle_distance_pdf(1.0, [0.0, 2.0, 2.5]) == pytest.approx([0.0, 0.0, 0.0])
    total = integrate(lambda t: circle_distance_pdf(2.0, t), 0.0, 4.0, 1e-10)
    assert total.value == pytest.approx(1.0, abs=1e-8)
    mean = integrate(lambda t: t * circle_distance_pdf(2.0, t), 0.0, 4.0, 1e-10)
    assert mean.value == pytest.approx(128.0 * 2.0 / (45.0 * math.pi), abs=1e-8)


def test_distance_law_shared_between_polygons() -> None:
    """Test laws for different radii scale as lengths."""
    unit = DistanceLaw(ChordLaw(new_polygon(6)))
    big = DistanceLaw(ChordLaw(new_polygon(6, 2.0)))
    assert big.cdf(1.0) == pytest.approx(unit.cdf(0.5), abs=1e-12)
    assert big.pdf(1.0) == pytest.approx(unit.pdf(0.5) / 2.0, abs=1e-12)
