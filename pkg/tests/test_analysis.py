import cmath
import math

import numpy as np
import pytest

from relscatter import (
    Geometry,
    Model,
    ParticleSpec,
    PotentialProfile,
    SmoothPotential,
    WidthRule,
    dirac_step_limit,
    figure_curves,
    find_total_transmissions,
    integrate_coupled_components,
    jump_gap,
    massless_phase_solution,
    resonance_amplitudes,
    small_mass_bound,
    solve_numeric,
    sweep,
)
from relscatter.core import InvalidProfileError

SPEC = ParticleSpec(1.0, 1.3)


def grid_for(spec, count=201, top=4.0):
    e, m = spec.energy, spec.mass_energy
    pts = list(np.linspace(0.0, top * e, count))
    for s in (e - m, e, e + m, 2.0 * e):
        if s not in pts:
            pts.append(s)
    return pts


class TestSweep:
    def test_step_curve_features(self):
        curve = sweep(Model.DIRAC, Geometry.STEP, SPEC, grid_for(SPEC))
        e, m = 1.3, 1.0
        assert curve.gap == (e - m, e + m)
        by_v0 = {s.v0: s for s in curve.samples}
        # platform
        for s in curve.samples:
            if e - m <= s.v0 <= e + m:
                assert s.r == 1.0
        # alley annotated and exact
        assert by_v0[2.0 * e].annotation == "alley"
        assert by_v0[2.0 * e].r < 1e-12
        # rising toward the infinite-height limit (from below)
        tail = [s.r for s in curve.samples if s.v0 > 3.0 * e]
        assert tail == sorted(tail)
        assert tail[-1] < dirac_step_limit(SPEC)

    def test_kg_step_symmetry(self):
        curve = sweep(Model.KLEIN_GORDON, Geometry.STEP, SPEC, grid_for(SPEC))
        e = 1.3
        for s in curve.samples:
            if 0.0 < s.v0 < 2.0 * e:
                mirrored = [
                    t.r for t in curve.samples if abs(t.v0 - (2 * e - s.v0)) < 1e-12
                ]
                if mirrored:
                    assert abs(s.r - mirrored[0]) < 1e-12

    def test_massless_sweep_is_flat_zero(self):
        spec = ParticleSpec(0.0, 1.0)
        grid = [v for v in np.linspace(0.0, 4.0, 41) if v != spec.energy]
        curve = sweep(Model.DIRAC, Geometry.STEP, spec, grid)
        assert curve.gap is None
        assert all(s.r < 1e-12 for s in curve.samples)

    def test_dirac_barrier_emits_both_crossing_rows(self):
        curve = sweep(Model.DIRAC, Geometry.BARRIER, SPEC, grid_for(SPEC), 1.0)
        rows = [s for s in curve.samples if s.v0 == 1.3]
        assert [r.annotation for r in rows] == ["jump-", "jump+"]
        assert rows[0].r != rows[1].r
        assert curve.jump == pytest.approx(abs(rows[0].r - rows[1].r), rel=1e-12)

    def test_kg_barrier_no_jump_rows(self):
        curve = sweep(Model.KLEIN_GORDON, Geometry.BARRIER, SPEC, grid_for(SPEC), 1.0)
        rows = [s for s in curve.samples if s.v0 == 1.3]
        assert len(rows) == 1
        assert curve.jump is None

    def test_barrier_needs_width(self):
        with pytest.raises(InvalidProfileError):
            sweep(Model.DIRAC, Geometry.BARRIER, SPEC, [0.1, 0.2])

    def test_csv_round_trip(self):
        curve = sweep(Model.DIRAC, Geometry.STEP, SPEC, grid_for(SPEC, count=41))
        text = curve.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "V0,R,regime,annotation"
        assert len(lines) == len(curve.samples) + 1
        for line, s in zip(lines[1:], curve.samples):
            v0_text, r_text, regime, annotation = line.split(",")
            assert float(v0_text) == s.v0  # 17 significant digits round-trip
            assert float(r_text) == s.r
            assert regime == s.regime.value
            assert annotation == s.annotation


class TestFigures:
    def test_step_figures(self):
        curves = figure_curves(2, count=101)
        assert set(curves) == {
            "fig2_dirac_step_E1.3.csv",
            "fig2_dirac_step_E3.csv",
        }
        for name, curve in curves.items():
            assert all(0.0 <= s.r <= 1.0 for s in curve.samples)

    def test_barrier_figure_widths_follow_caption_rule(self):
        curves = figure_curves(5, count=101)
        curve = curves["fig5_dirac_barrier_E1.3.csv"]
        rule = curve.width
        assert rule.evanescent == pytest.approx(0.5 * math.log(3.0), rel=1e-12)
        assert rule.propagating == pytest.approx(math.atan(2.0) / SPEC.q, rel=1e-12)
        assert any(s.annotation == "jump-" for s in curve.samples)
        assert any(s.annotation == "jump+" for s in curve.samples)

    def test_kg_barrier_figure_continuous_at_energy(self):
        curves = figure_curves(6, count=101)
        curve = curves["fig6_kg_barrier_E1.3.csv"]
        at = [s for s in curve.samples if s.v0 == 1.3]
        assert len(at) == 1
        near = min(
            (s for s in curve.samples if s.v0 != 1.3),
            key=lambda s: abs(s.v0 - 1.3),
        )
        assert abs(near.r - at[0].r) < 0.05

    def test_unknown_figure_rejected(self):
        with pytest.raises(ValueError):
            figure_curves(4)


class TestFinders:
    def test_step_alley(self):
        found = find_total_transmissions(
            Model.DIRAC, Geometry.STEP, ParticleSpec(1.0, 3.0)
        )
        assert found.alley_v0 == 6.0
        assert not found.all_transparent

    def test_barrier_width_ladder(self):
        v0 = 0.2
        p = math.sqrt((1.3 - v0) ** 2 - 1.0)
        found = find_total_transmissions(
            Model.KLEIN_GORDON, Geometry.BARRIER, SPEC, v0=v0, n_max=4
        )
        assert found.resonant_widths == tuple(
            n * math.pi / p for n in range(1, 5)
        )

    def test_barrier_resonant_heights_verified(self):
        found = find_total_transmissions(
            Model.DIRAC, Geometry.BARRIER, SPEC, width=4.0, v0_max=6.0
        )
        assert found.resonant_v0
        for v in found.resonant_v0:
            assert 0.0 < v <= 6.0

    def test_massless_flag(self):
        found = find_total_transmissions(
            Model.DIRAC, Geometry.STEP, ParticleSpec(0.0, 1.0)
        )
        assert found.all_transparent

    def test_gap_height_rejected_for_widths(self):
        with pytest.raises(InvalidProfileError):
            find_total_transmissions(
                Model.DIRAC, Geometry.BARRIER, SPEC, v0=1.0
            )


class TestResonanceAmplitudes:
    @pytest.mark.parametrize("v0,n", [(0.15, 1), (0.25, 3), (3.0, 1), (4.1, 2)])
    def test_matches_matcher(self, v0, n):
        res = resonance_amplitudes(SPEC, v0, n)
        assert res.b == 0.0
        assert abs(abs(res.g) - 1.0) < 1e-14
        numeric = solve_numeric(
            PotentialProfile.barrier(v0, res.width), SPEC, Model.DIRAC
        )
        assert numeric.R < 1e-12
        assert numeric.F1 == pytest.approx(res.f1, rel=1e-9, abs=1e-11)
        assert numeric.F2 == pytest.approx(res.f2, rel=1e-9, abs=1e-11)
        assert numeric.G == pytest.approx(res.g, rel=1e-9)

    def test_gap_interior_rejected(self):
        with pytest.raises(InvalidProfileError):
            resonance_amplitudes(SPEC, 1.0, 1)

    def test_swapped_factor_variant_fails_the_interface_conditions(self):
        # the widely quoted strong-branch coefficient list carries
        # p / (E - m) where the interface conditions demand its reciprocal;
        # record the discrepancy by checking both against the conditions
        e, m, q = 1.3, 1.0, SPEC.q
        v0 = 3.0
        p = math.sqrt((e - v0) ** 2 - m * m)
        d = v0 - e + m
        res = resonance_amplitudes(SPEC, v0, 1)
        # with B = 0 the conditions read q = d (F1 + F2), (E - m) = p (F1 - F2)
        assert d * (res.f1 + res.f2) == pytest.approx(q, rel=1e-12)
        assert p * (res.f1 - res.f2) == pytest.approx(e - m, rel=1e-12)
        f1_alt = (q / d + p / (e - m)) / 2.0
        f2_alt = (q / d - p / (e - m)) / 2.0
        assert abs(p * (f1_alt - f2_alt) - (e - m)) > 0.1


class TestJumpAndBounds:
    def test_massless_jump_zero(self):
        assert jump_gap(ParticleSpec(0.0, 1.0), 1.0) == 0.0

    def test_conventional_width_jump_positive(self):
        width = 0.5 * math.log(3.0)  # coth(m a) = 2
        assert jump_gap(SPEC, width) > 0.1

    def test_jump_decays_monotonically_past_its_peak(self):
        # the mismatch rises from zero width to a single maximum near
        # k a ~ 0.7 and decays monotonically beyond it
        widths = np.linspace(1.5, 20.0, 75)
        values = [jump_gap(SPEC, float(a)) for a in widths]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-8

    def test_small_mass_bound_values(self):
        assert small_mass_bound(ParticleSpec(1.0, 100.0)) == pytest.approx(1e-4)
        assert small_mass_bound(ParticleSpec(0.0, 2.0)) == 0.0
        bound = small_mass_bound(SPEC)
        assert bound == pytest.approx((1.0 / 1.3) ** 2, rel=1e-15)
        assert dirac_step_limit(SPEC) < bound


class TestMasslessPhase:
    def test_free_particle_plane_wave(self):
        pot = SmoothPotential(lambda x: 0.0, (0.0, 5.0))
        for x in (0.7, 2.0, 4.5):
            assert massless_phase_solution(pot, 1.1, 0.0, x) == pytest.approx(
                cmath.exp(1j * 1.1 * x), rel=1e-12
            )
            assert massless_phase_solution(pot, 1.1, 0.0, x, sign=-1) == pytest.approx(
                cmath.exp(-1j * 1.1 * x), rel=1e-12
            )

    def test_linear_potential_closed_phase(self):
        b, e = 0.8, 1.3
        pot = SmoothPotential.linear(b, (0.0, 3.0))
        for x in (0.5, 1.2, 2.9):
            expected = cmath.exp(1j * (e * x - 0.5 * b * x * x))
            assert massless_phase_solution(pot, e, 0.0, x) == pytest.approx(
                expected, rel=1e-10
            )

    def test_amplitude_exactly_constant(self):
        pot = SmoothPotential(lambda x: 0.4 * math.sin(3.0 * x) + 0.2 * x, (0.0, 6.0))
        for x in np.linspace(0.3, 6.0, 17):
            amp = abs(massless_phase_solution(pot, 0.9, 0.0, float(x)))
            assert abs(amp - 1.0) < 1e-12

    def test_matches_coupled_integration(self):
        rng = np.random.default_rng(31)
        coeffs = rng.uniform(-0.4, 0.4, 4)
        pot = SmoothPotential(
            lambda x: coeffs[0] + coeffs[1] * x + coeffs[2] * x**2 + coeffs[3] * x**3,
            (0.0, 2.5),
        )
        e = 1.2
        for x in (0.8, 1.6, 2.5):
            for sign in (+1, -1):
                phase = massless_phase_solution(pot, e, 0.0, x, sign=sign)
                phi, chi = integrate_coupled_components(
                    pot, e, 0.0, 0.0, x, sign=sign
                )
                assert abs(phase - phi) < 1e-8
                assert abs(chi - sign * phi) < 1e-10

    def test_sampled_potential(self):
        xs = np.linspace(0.0, 3.0, 61)
        pot = SmoothPotential((xs, 0.5 * xs), (0.0, 3.0))
        expected = massless_phase_solution(
            SmoothPotential.linear(0.5, (0.0, 3.0)), 1.0, 0.0, 2.0
        )
        assert massless_phase_solution(pot, 1.0, 0.0, 2.0) == pytest.approx(
            expected, rel=1e-9
        )

    def test_width_rule_validation(self):
        with pytest.raises(ValueError):
            WidthRule.caption_rule(ParticleSpec(0.0, 1.0))
        rule = WidthRule.caption_rule(SPEC)
        assert rule.width_at(1.3, 1.0, 0.1) == rule.propagating
        assert rule.width_at(1.3, 1.0, 1.0) == rule.evanescent
