import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squaremap import radial_maps as rm
from squaremap.core import DomainError
from squaremap.radial_maps import NUMERIC_PROFILES, RadialProfile

from conftest import square_lattice

H = math.sqrt(0.5)

CLOSED_PAIRS = {
    "stretch": (rm.stretch_square_to_disc, rm.stretch_disc_to_square),
    "fg": (rm.fgs_square_to_disc, rm.fgs_disc_to_square),
    "two": (rm.two_sq_square_to_disc, rm.two_sq_disc_to_square),
    "three": (rm.three_sq_square_to_disc, rm.three_sq_disc_to_square),
}


def profile_pair(p):
    return (lambda x, y: rm.profile_square_to_disc(p, x, y), lambda u, v: rm.profile_disc_to_square(p, u, v))


ALL_PAIRS = dict(CLOSED_PAIRS, **{p.tag: profile_pair(p) for p in NUMERIC_PROFILES})


def close(got, want, tol):
    assert np.allclose(np.asarray(got, dtype=float), want, rtol=0.0, atol=tol), (got, want)


# values below were computed independently with mpmath at 40 digits from the
# printed closed forms, then frozen


class TestSimpleStretch:
    def test_axis(self):
        close(rm.stretch_disc_to_square(1.0, 0.0), (1.0, 0.0), 0)
        close(rm.stretch_square_to_disc(0.0, -0.7), (0.0, -0.7), 0)

    def test_rim_diagonal_to_corner(self):
        close(rm.stretch_disc_to_square(H, H), (1.0, 1.0), 1e-15)
        close(rm.stretch_square_to_disc(1.0, 1.0), (H, H), 1e-15)

    def test_generic_disc_point(self):
        close(rm.stretch_disc_to_square(0.3, 0.1), (0.31622776601683794, 0.10540925533894598), 1e-15)

    def test_generic_square_point(self):
        close(rm.stretch_square_to_disc(0.5, 0.25), (0.4472136, 0.2236068), 1e-7)
        close(rm.stretch_square_to_disc(0.5, 0.25), (0.4472135954999579, 0.22360679774997896), 1e-15)

    def test_four_wall_piecewise(self, rng):
        # brute-force the four wall cases and compare with the signum form
        x, y = rng.uniform(-1, 1, (2, 2000))
        r = np.hypot(x, y)
        wall = np.where(np.abs(x) >= np.abs(y), np.abs(x), np.abs(y))
        close(rm.stretch_square_to_disc(x, y), (x * wall / r, y * wall / r), 1e-15)

    def test_circles_to_squares(self):
        th = np.linspace(0, 2 * np.pi, 721)
        for t in (0.2, 0.5, 0.9):
            x, y = rm.stretch_disc_to_square(t * np.cos(th), t * np.sin(th))
            assert np.max(np.abs(np.maximum(np.abs(x), np.abs(y)) - t)) < 1e-12


class TestFgSquircular:
    def test_corner(self):
        close(rm.fgs_square_to_disc(1.0, 1.0), (H, H), 1e-15)
        close(rm.fgs_disc_to_square(H, H), (1.0, 1.0), 1e-9)

    def test_axis(self):
        close(rm.fgs_square_to_disc(0.8, 0.0), (0.8, 0.0), 0)
        close(rm.fgs_disc_to_square(0.0, 0.3), (0.0, 0.3), 0)

    def test_half_half(self):
        close(rm.fgs_square_to_disc(0.5, 0.5), (0.46770717334674267,) * 2, 1e-15)
        close(rm.fgs_disc_to_square(0.46770717334674267, 0.46770717334674267), (0.5, 0.5), 1e-12)

    def test_out_of_disc_rejected(self):
        with pytest.raises(DomainError):
            rm.fgs_disc_to_square(0.9, 0.9)


class TestTwoSquircular:
    def test_examples(self):
        close(rm.two_sq_square_to_disc(1.0, 1.0), (H, H), 1e-15)
        close(rm.two_sq_square_to_disc(0.6, 0.0), (0.6, 0.0), 0)
        close(rm.two_sq_square_to_disc(0.5, 0.5), (0.48507125007266594,) * 2, 1e-15)

    def test_inverse_examples(self):
        close(rm.two_sq_disc_to_square(H, H), (1.0, 1.0), 1e-9)
        close(rm.two_sq_disc_to_square(0.0, 0.0), (0.0, 0.0), 0)
        close(rm.two_sq_disc_to_square(0.48507125007266594, 0.48507125007266594), (0.5, 0.5), 1e-12)

    def test_matches_literal_inverse_away_from_cancellation(self, rng):
        # the printed sgn(uv)/(v sqrt2) sqrt(1 - sqrt(1 - 4u^2v^2)) form is accurate when 4u^2v^2 is not tiny
        th = rng.uniform(0.2, np.pi / 2 - 0.2, 500) + rng.integers(0, 4, 500) * np.pi / 2
        r = rng.uniform(0.4, 1.0, 500)
        u, v = r * np.cos(th), r * np.sin(th)
        lit = np.sign(u * v) / (v * math.sqrt(2)) * np.sqrt(1 - np.sqrt(1 - 4 * u * u * v * v))
        close(rm.two_sq_disc_to_square(u, v)[0], lit, 1e-9)


class TestThreeSquircular:
    def test_examples(self):
        close(rm.three_sq_square_to_disc(1.0, 1.0), (H, H), 1e-15)
        close(rm.three_sq_square_to_disc(0.4, 0.0), (0.4, 0.0), 0)
        close(rm.three_sq_square_to_disc(0.5, 0.5), (0.49258571550470803,) * 2, 1e-15)

    def test_inverse_examples(self):
        close(rm.three_sq_disc_to_square(H, H), (1.0, 1.0), 1e-8)
        close(rm.three_sq_disc_to_square(0.0, 0.9), (0.0, 0.9), 0)
        close(rm.three_sq_disc_to_square(0.49258571550470803, 0.49258571550470803), (0.5, 0.5), 1e-12)

    def test_t_solves_biquadratic(self, rng):
        x, y = rng.uniform(-1, 1, (2, 1000))
        u, v = rm.three_sq_square_to_disc(x, y)
        t = np.hypot(u, v)
        assert np.max(np.abs(x * x * y * y * t**4 + t * t - x * x - y * y)) < 1e-14


class TestProfiles:
    def test_three_halves_corner(self):
        close(rm.profile_square_to_disc(RadialProfile.THREE_HALVES, 1.0, 1.0), (H, H), 1e-15)
        close(rm.profile_disc_to_square(RadialProfile.THREE_HALVES, H, H), (1.0, 1.0), 1e-9)

    def test_half_on_axis(self):
        close(rm.profile_square_to_disc(RadialProfile.HALF, 1.0, 0.0), (1.0, 0.0), 0)

    def test_fourth_corner_and_centre(self):
        close(rm.profile_square_to_disc(RadialProfile.FOURTH, 1.0, 1.0), (H, H), 1e-15)
        close(rm.profile_disc_to_square(RadialProfile.FOURTH, 0.0, 0.0), (0.0, 0.0), 0)

    def test_half_inverse_is_forward_consistent(self):
        x, y = rm.profile_disc_to_square(RadialProfile.HALF, 0.485, 0.485)
        close(rm.profile_square_to_disc(RadialProfile.HALF, x, y), (0.485, 0.485), 1e-10)

    # mpmath Newton on the continuum equation, seeded at the FG level
    FROZEN = [
        (RadialProfile.THREE_HALVES, 0.5, 0.5, 0.4783909561518881, 0.4783909561518881),
        (RadialProfile.THREE_HALVES, 0.9, -0.3, 0.8660845500523228, -0.28869485001744094),
        (RadialProfile.THREE_HALVES, -0.2, 0.99, -0.19615607903424112, 0.9709725912194935),
        (RadialProfile.HALF, 0.5, 0.5, 0.44796455502634297, 0.44796455502634297),
        (RadialProfile.HALF, 0.9, -0.3, 0.8587912557062867, -0.2862637519020956),
        (RadialProfile.HALF, -0.2, 0.99, -0.1960804282719171, 0.9705981199459898),
        (RadialProfile.FOURTH, 0.5, 0.5, 0.49625212560524384, 0.49625212560524384),
        (RadialProfile.FOURTH, 0.9, -0.3, 0.8769618032269106, -0.29232060107563684),
        (RadialProfile.FOURTH, -0.2, 0.99, -0.19631700826170073, 0.9717691908954186),
    ]

    @pytest.mark.parametrize("profile, x, y, u, v", FROZEN, ids=lambda p: getattr(p, "tag", None))
    def test_frozen_points(self, profile, x, y, u, v):
        close(rm.profile_square_to_disc(profile, x, y), (u, v), 2e-15)
        close(rm.profile_disc_to_square(profile, u, v), (x, y), 1e-12)

    def test_half_matches_trigonometric_cubic(self, rng):
        # Viete's form of the largest root of t^3 - rho^2 t + x^2 y^2 = 0
        x, y = rng.uniform(-1, 1, (2, 2000))
        p, q = -(x * x + y * y), x * x * y * y
        m = 2.0 * np.sqrt(-p / 3.0)
        ang = np.arccos(np.clip(3.0 * q / (p * m), -1.0, 1.0)) / 3.0
        close(RadialProfile.HALF.forward_t(x, y), m * np.cos(ang), 1e-13)

    def test_fourth_matches_cardano(self, rng):
        # x^2y^2 tau^3 + tau - rho^2 = 0 has a real Cardano radicand everywhere
        x, y = rng.uniform(0.3, 1, (2, 2000)) * rng.choice([-1, 1], (2, 2000))
        a = x * x * y * y
        p, q = 1.0 / a, -(x * x + y * y) / a
        d = np.sqrt(q * q / 4.0 + p**3 / 27.0)
        tau = np.cbrt(-q / 2.0 + d) + np.cbrt(-q / 2.0 - d)
        close(RadialProfile.FOURTH.forward_t(x, y), np.sqrt(tau), 1e-12)

    def test_three_halves_quadratic(self, rng):
        x, y = rng.uniform(-1, 1, (2, 2000))
        a = x * x * y * y
        close(RadialProfile.THREE_HALVES.forward_t(x, y), (np.sqrt(a * a + 4 * (x * x + y * y)) - a) / 2, 1e-15)

    @pytest.mark.parametrize("profile", NUMERIC_PROFILES, ids=lambda p: p.tag)
    def test_inverse_matches_closed_radius(self, profile, rng):
        # on a ray (c, s) with level t the square radius solves c^2s^2 t^(2n-2) rho^4 - rho^2 + t^2 = 0
        th = rng.uniform(0, 2 * np.pi, 2000)
        t = rng.uniform(0.01, 0.999, 2000)
        c, s = np.cos(th), np.sin(th)
        k = (c * s) ** 2 * t ** (2 * profile.exponent)
        rho = t * np.sqrt(2.0 / (1.0 + np.sqrt(1.0 - 4.0 * k)))
        x, y = rm.profile_disc_to_square(profile, t * c, t * s)
        close(np.hypot(x, y), rho, 1e-12)

    @pytest.mark.parametrize("profile", NUMERIC_PROFILES, ids=lambda p: p.tag)
    def test_monotone_along_rays(self, profile):
        th = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        c, s = np.cos(th), np.sin(th)
        reach = 1.0 / np.maximum(np.abs(c), np.abs(s))
        steps = np.linspace(0.0, 1.0, 1001)[:, None] * reach
        t = profile.forward_t(steps * c, steps * s)
        assert np.all(np.diff(t, axis=0) > 0)
        assert np.all(t >= 0) and np.all(t <= 1 + 1e-12)

    def test_closed_forms_rejected_in_numeric_path(self):
        with pytest.raises(ValueError):
            rm.profile_square_to_disc(RadialProfile.LINEAR, 0.1, 0.2)

    @pytest.mark.parametrize("profile", list(RadialProfile), ids=lambda p: p.tag)
    def test_forward_t_corners_and_edges(self, profile):
        close(profile.forward_t(np.array([1.0, -1.0, 1.0, 0.3]), np.array([1.0, 1.0, -0.4, 1.0])), 1.0, 1e-14)


class TestAllRadial:
    @pytest.mark.parametrize("name", ALL_PAIRS)
    def test_roundtrip_grid(self, name):
        fwd, inv = ALL_PAIRS[name]
        x, y = square_lattice(201, 0.001)
        tol = 1e-12 if name in CLOSED_PAIRS else 1e-10
        a, b = inv(*fwd(x, y))
        assert max(np.max(np.abs(a - x)), np.max(np.abs(b - y))) < tol

    @pytest.mark.parametrize("name", ALL_PAIRS)
    def test_radial_constraint(self, name, rng):
        fwd, inv = ALL_PAIRS[name]
        x, y = rng.uniform(-1, 1, (2, 3000))
        u, v = fwd(x, y)
        assert np.max(np.abs(np.arctan2(v, u) - np.arctan2(y, x))) < 1e-12
        th = rng.uniform(-np.pi, np.pi, 3000)
        r = rng.uniform(0.01, 1, 3000)
        a, b = inv(r * np.cos(th), r * np.sin(th))
        assert np.max(np.abs(np.arctan2(b, a) - th)) < 1e-12

    @pytest.mark.parametrize("name", ALL_PAIRS)
    def test_boundary_to_boundary(self, name):
        fwd, inv = ALL_PAIRS[name]
        th = np.linspace(0, 2 * np.pi, 720, endpoint=False)
        c, s = np.cos(th), np.sin(th)
        m = np.maximum(np.abs(c), np.abs(s))
        u, v = fwd(c / m, s / m)
        assert np.max(np.abs(np.hypot(u, v) - 1)) < 1e-9
        x, y = inv(c, s)
        assert np.max(np.abs(np.maximum(np.abs(x), np.abs(y)) - 1)) < 1e-9

    @pytest.mark.parametrize("name", ALL_PAIRS)
    def test_axis_identity(self, name):
        fwd, inv = ALL_PAIRS[name]
        a = np.array([0.0, 0.0, 0.37, -0.9, 0.0])
        b = np.array([0.0, -0.6, 0.0, 0.0, 1.0])
        close(fwd(a, b), (a, b), 0)
        close(inv(a, b), (a, b), 0)

    @pytest.mark.parametrize("name", ALL_PAIRS)
    @settings(max_examples=200, deadline=None)
    @given(th=st.floats(-math.pi, math.pi), r=st.floats(0.0, 1.0))
    def test_roundtrip_property(self, name, th, r):
        fwd, inv = ALL_PAIRS[name]
        u, v = r * math.cos(th), r * math.sin(th)
        a, b = fwd(*inv(u, v))
        assert abs(a - u) < 1e-10 and abs(b - v) < 1e-10


@pytest.mark.parametrize(
    "fn, smooth",
    [
        (rm.fgs_disc_to_square, True),
        (rm.two_sq_disc_to_square, True),
        (rm.three_sq_disc_to_square, True),
        (rm.stretch_disc_to_square, False),
    ],
    ids=["fg", "two", "three", "stretch"],
)
def test_diagonal_tangent(fn, smooth):
    # image of a circle: compare one-sided tangents on either side of the diagonal
    d = 1e-5
    worst = 0.0
    for r in (0.3, 0.6, 0.9):
        for diag in (np.pi / 4, 3 * np.pi / 4, -np.pi / 4):
            th = diag + d * np.arange(-2, 3)
            x, y = fn(r * np.cos(th), r * np.sin(th))
            p = np.stack([x, y])
            left = (3 * p[:, 2] - 4 * p[:, 1] + p[:, 0]) / (2 * d)
            right = (-3 * p[:, 2] + 4 * p[:, 3] - p[:, 4]) / (2 * d)
            jump = abs(math.remainder(math.atan2(left[1], left[0]) - math.atan2(right[1], right[0]), 2 * math.pi))
            worst = max(worst, jump)
    if smooth:
        assert worst < 1e-6
    else:
        assert worst > 0.1


@pytest.mark.parametrize("power, fn", [(2, rm.two_sq_square_to_disc), (4, rm.three_sq_square_to_disc)])
def test_continuum_residual(power, fn):
    x, y = square_lattice(201, 0.0)
    u, v = fn(x, y)
    t = np.hypot(u, v)
    assert np.max(np.abs(x * x + y * y - t**power * x * x * y * y - t * t)) < 1e-12


def test_fg_squircularity_grid():
    x, y = square_lattice(201, 0.0)
    u, v = rm.fgs_square_to_disc(x, y)
    assert np.max(np.abs(u * u + v * v - (x * x + y * y - x * x * y * y))) < 1e-12


def test_scalar_in_scalar_out():
    u, v = rm.fgs_square_to_disc(0.2, 0.3)
    assert isinstance(u, float) and isinstance(v, float)


def test_fg_literal_form_agrees_where_well_conditioned(rng):
    th = rng.uniform(0.2, np.pi / 2 - 0.2, 2000) + rng.integers(0, 4, 2000) * np.pi / 2
    r = rng.uniform(0.3, 1.0, 2000)
    u, v = r * np.cos(th), r * np.sin(th)
    close(rm.fgs_disc_to_square(u, v), rm.fgs_disc_to_square_literal(u, v), 1e-11)
