import cmath
import math

import numpy as np
import pytest

from relscatter import (
    Branch,
    Model,
    ParticleSpec,
    PotentialProfile,
    kg_barrier_solve,
    kg_branch,
    kg_step_solve,
    kg_wavefunction,
    solve_numeric,
)

SPEC = ParticleSpec(1.0, 1.3)


def momentum(spec, v0):
    return math.sqrt((spec.energy - v0) ** 2 - spec.mass_energy**2)


class TestBranchSelection:
    def test_positive_below(self):
        assert kg_branch(1.3, 0.0, 1.0) is Branch.POSITIVE

    def test_negative_above(self):
        assert kg_branch(1.3, 3.0, 1.0) is Branch.NEGATIVE

    def test_tie_goes_negative(self):
        assert kg_branch(1.3, 1.3, 1.0) is Branch.NEGATIVE


class TestStep:
    def test_transparent_at_zero_height(self):
        sol = kg_step_solve(SPEC, 0.0)
        assert sol.R == 0.0
        for x in (-2.0, 0.0, 1.7):
            psi = kg_wavefunction(sol, x)
            assert psi.value == pytest.approx(cmath.exp(1j * SPEC.q * x), rel=1e-12)

    def test_propagating_reflection_formula(self):
        # both propagating ranges: R = ((q - p) / (q + p))^2
        for v0 in (0.2, 2.7, 4.0, 1e6):
            p = momentum(SPEC, v0)
            expected = ((SPEC.q - p) / (SPEC.q + p)) ** 2
            assert kg_step_solve(SPEC, v0).R == pytest.approx(expected, rel=1e-13)

    def test_alley(self):
        assert kg_step_solve(SPEC, 2.6).R < 1e-12

    def test_gap_total_reflection(self):
        for v0 in np.linspace(0.3, 2.3, 25):
            assert kg_step_solve(SPEC, float(v0)).R == 1.0

    def test_huge_step_reflects(self):
        assert kg_step_solve(SPEC, 1e6).R > 0.999

    def test_exchange_symmetry(self):
        rng = np.random.default_rng(2)
        for v0 in rng.uniform(1e-3, 0.3 - 1e-3, 64):
            assert abs(
                kg_step_solve(SPEC, float(v0)).R
                - kg_step_solve(SPEC, 2.6 - float(v0)).R
            ) < 1e-12


class TestBarrier:
    def test_resonances(self):
        for v0 in (0.2, 2.8):
            p = momentum(SPEC, v0)
            for n in (1, 3):
                assert kg_barrier_solve(SPEC, v0, n * math.pi / p).R < 1e-12

    def test_reflection_maxima(self):
        for v0 in (0.2, 2.8, 3.6):
            p, q = momentum(SPEC, v0), SPEC.q
            expected = ((p * p - q * q) / (p * p + q * q)) ** 2
            for n in (0, 2):
                width = (n + 0.5) * math.pi / p
                assert kg_barrier_solve(SPEC, v0, width).R == pytest.approx(
                    expected, abs=1e-12
                )

    def test_continuation_identity(self):
        # substituting k -> ip turns the propagating amplitude formula into
        # the evanescent one; evaluate both as written and compare
        q = SPEC.q
        for k, a in ((0.4, 0.7), (0.9, 1.9)):
            gap = (k * k + q * q) / complex(
                q * q - k * k, 2.0 * k * q / math.tanh(k * a)
            )
            p = 1j * k
            s, c = cmath.sin(p * a), cmath.cos(p * a)
            continued = (q * q - p * p) * s / ((p * p + q * q) * s + 2j * p * q * c)
            assert continued == pytest.approx(gap, rel=1e-12)

    def test_curve_continuous_at_particle_energy(self):
        e = SPEC.energy
        width = 0.8
        r_at = kg_barrier_solve(SPEC, e, width).R
        for delta in (1e-13, -1e-13):
            assert abs(kg_barrier_solve(SPEC, e * (1.0 + delta), width).R - r_at) < 1e-12

    def test_gap_edge_finite_limit(self):
        # at the edges the interior is linear; amplitude limit is
        # B = -i q a / (2 - i q a)
        q = SPEC.q
        for v0 in (SPEC.energy - 1.0, SPEC.energy + 1.0):
            for width in (0.5, 2.0):
                expected = -1j * q * width / complex(2.0, -q * width)
                sol = kg_barrier_solve(SPEC, v0, width)
                assert sol.B == pytest.approx(expected, rel=1e-12)
                assert sol.R < 1.0

    def test_edge_joins_gap_interior_continuously(self):
        width = 1.1
        lower = SPEC.energy - SPEC.mass_energy
        edge = kg_barrier_solve(SPEC, lower, width).R
        near = kg_barrier_solve(SPEC, lower + 1e-7, width).R
        assert abs(edge - near) < 1e-5

    def test_wide_gap_barrier_totally_reflects(self):
        v0 = 1.0
        k = math.sqrt(1.0 - 0.3**2)
        assert kg_barrier_solve(SPEC, v0, 10.0 / k).R == pytest.approx(1.0, abs=1e-6)

    def test_deeply_evanescent_width_stays_finite(self):
        sol = kg_barrier_solve(SPEC, 1.3, 1e6)
        assert sol.R == pytest.approx(1.0, abs=1e-12)
        assert sol.T == pytest.approx(0.0, abs=1e-12)


class TestWavefunction:
    @pytest.mark.parametrize("v0", [0.2, 0.3, 0.9, 1.3, 2.0, 2.3, 3.0])
    def test_value_and_derivative_continuous(self, v0):
        width = 1.2
        sol = kg_barrier_solve(SPEC, v0, width)
        for x0 in (0.0, width):
            eps = 1e-10
            a = kg_wavefunction(sol, x0 - eps)
            b = kg_wavefunction(sol, x0 + eps)
            assert abs(a.value - b.value) < 1e-8
            assert abs(a.derivative - b.derivative) < 1e-8

    def test_gap_interior_is_exponential_mixture(self):
        sol = kg_barrier_solve(SPEC, 1.0, 1.5)
        k = sol.regions[1].kin.k
        f1, f2 = sol.F1, sol.F2  # growing, decaying
        for x in (0.2, 0.8, 1.3):
            psi = kg_wavefunction(sol, x)
            expected = f1 * math.exp(k * x) + f2 * math.exp(-k * x)
            assert psi.value == pytest.approx(expected, rel=1e-12)

    def test_flux_conservation(self):
        for v0 in (0.2, 1.0, 2.0, 3.1):
            sol = kg_barrier_solve(SPEC, v0, 0.9)
            js = []
            for x in (-1.5, 0.4, 2.2):
                psi = kg_wavefunction(sol, x)
                js.append((psi.value.conjugate() * psi.derivative).imag)
            for j in js[1:]:
                assert abs(j - js[0]) < 1e-10 * SPEC.q
            assert js[-1] / SPEC.q == pytest.approx(sol.T, abs=1e-10)


class TestOracle:
    def test_step_and_barrier_match_matcher(self):
        for v0 in np.linspace(0.02, 3.9, 40):
            closed = kg_step_solve(SPEC, float(v0))
            numeric = solve_numeric(
                PotentialProfile.step(float(v0)), SPEC, Model.KLEIN_GORDON
            )
            assert closed.R == pytest.approx(numeric.R, rel=1e-10, abs=1e-12)
        for width in (0.5, 1.7):
            for v0 in np.linspace(0.02, 3.9, 45):
                closed = kg_barrier_solve(SPEC, float(v0), width)
                numeric = solve_numeric(
                    PotentialProfile.barrier(float(v0), width), SPEC, Model.KLEIN_GORDON
                )
                assert closed.R == pytest.approx(numeric.R, rel=1e-10, abs=1e-12)
                assert closed.B == pytest.approx(numeric.B, rel=1e-9, abs=1e-11)
