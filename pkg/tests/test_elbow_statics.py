"""Static chain: gravity torque, pin/yoke forces, torque-vs-mass sweep."""
import math

import numpy as np
import pytest

from tsa_exo import (
    DomainError,
    ForearmLoad,
    LinkageGeometry,
    gravity_torque,
    required_torque_curve,
    string_force,
    tangential_pin_force,
    yoke_force,
)

LOAD = ForearmLoad(mass=2.5, com_distance=0.1)  # default gravity 9.81
GEOMETRY = LinkageGeometry(
    beta=math.radians(60.0), pin_radius=0.01, lever_factor=1.0, string_count=2
)

# Independent high-precision evaluations of the chain at the point above.
TANGENTIAL_AT_60 = 61.312500000000005  # N
YOKE_AT_60 = 70.797576759377859  # N


class TestGravityTorque:
    def test_reference_load(self):
        torque = gravity_torque(LOAD)
        assert torque == 2.5 * 9.81 * 0.1  # same product, same rounding
        assert torque == pytest.approx(2.45250, abs=1e-9)

    def test_massless_forearm(self):
        assert gravity_torque(ForearmLoad(0.0, 0.1)) == 0.0

    def test_heavier_mass_reconciliation_point(self):
        # 2.82 kg is the mass that would produce roughly the reported 2.77 Nm.
        assert gravity_torque(ForearmLoad(2.82, 0.1)) == pytest.approx(
            2.76642, abs=1e-9
        )

    def test_exactly_linear_in_each_factor(self):
        rng = np.random.default_rng(1201)
        for _ in range(200):
            mass = rng.uniform(0.1, 10.0)
            distance = rng.uniform(0.01, 1.0)
            gravity = rng.uniform(1.0, 20.0)
            scale = rng.uniform(0.1, 10.0)
            base = gravity_torque(ForearmLoad(mass, distance, gravity))
            assert gravity_torque(
                ForearmLoad(scale * mass, distance, gravity)
            ) == pytest.approx(scale * base, rel=1e-14)
            assert gravity_torque(
                ForearmLoad(mass, scale * distance, gravity)
            ) == pytest.approx(scale * base, rel=1e-14)
            assert gravity_torque(
                ForearmLoad(mass, distance, scale * gravity)
            ) == pytest.approx(scale * base, rel=1e-14)
            # Doubling is exact in binary floating point.
            assert gravity_torque(ForearmLoad(2.0 * mass, distance, gravity)) == (
                2.0 * base
            )

    def test_invalid_loads(self):
        with pytest.raises(DomainError):
            ForearmLoad(-0.1, 0.1)
        with pytest.raises(DomainError):
            ForearmLoad(2.5, 0.0)
        with pytest.raises(DomainError):
            ForearmLoad(2.5, 0.1, gravity=0.0)


class TestLinkageGeometry:
    @pytest.mark.parametrize(
        "beta", [0.0, -0.1, math.pi / 2.0, math.pi / 2.0 + 0.1]
    )
    def test_beta_open_interval(self, beta):
        with pytest.raises(DomainError):
            LinkageGeometry(beta=beta, pin_radius=0.01)

    def test_other_invariants(self):
        with pytest.raises(DomainError):
            LinkageGeometry(beta=1.0, pin_radius=0.0)
        with pytest.raises(DomainError):
            LinkageGeometry(beta=1.0, pin_radius=0.01, lever_factor=0.0)
        with pytest.raises(DomainError):
            LinkageGeometry(beta=1.0, pin_radius=0.01, string_count=0)


class TestTangentialPinForce:
    def test_reference_point(self):
        assert tangential_pin_force(LOAD, GEOMETRY) == pytest.approx(
            TANGENTIAL_AT_60, rel=1e-13
        )

    def test_vanishes_as_beta_approaches_perpendicular(self):
        nearly_perpendicular = LinkageGeometry(
            beta=math.pi / 2.0 - 1e-9, pin_radius=0.01, string_count=2
        )
        assert tangential_pin_force(LOAD, nearly_perpendicular) < 1e-6

    def test_algebraic_inverse_recovers_torque(self):
        rng = np.random.default_rng(2303)
        for _ in range(200):
            load = ForearmLoad(
                rng.uniform(0.1, 5.0), rng.uniform(0.05, 0.5), rng.uniform(5.0, 15.0)
            )
            geometry = LinkageGeometry(
                beta=rng.uniform(0.05, math.pi / 2.0 - 0.05),
                pin_radius=rng.uniform(0.001, 0.05),
                lever_factor=rng.uniform(0.5, 2.0),
                string_count=int(rng.integers(1, 5)),
            )
            tangential = tangential_pin_force(load, geometry)
            recovered = (
                tangential
                * (geometry.pin_radius * geometry.lever_factor * geometry.string_count)
                / math.cos(geometry.beta)
            )
            assert recovered == pytest.approx(gravity_torque(load), rel=1e-12)


class TestYokeForce:
    def test_half_sine_doubles(self):
        assert yoke_force(10.0, math.radians(30.0)) == pytest.approx(20.0, rel=1e-12)

    def test_zero_tangential(self):
        assert yoke_force(0.0, 1.0) == 0.0

    def test_reference_point(self):
        assert yoke_force(TANGENTIAL_AT_60, math.radians(60.0)) == pytest.approx(
            YOKE_AT_60, rel=1e-13
        )

    def test_never_below_tangential_equality_at_perpendicular(self):
        rng = np.random.default_rng(3405)
        for _ in range(200):
            tangential = rng.uniform(0.0, 100.0)
            beta = rng.uniform(1e-3, math.pi / 2.0)
            assert yoke_force(tangential, beta) >= tangential
        # sin(pi/2) is exactly 1.0, so perpendicular pull passes through.
        assert yoke_force(42.5, math.pi / 2.0) == 42.5

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            yoke_force(10.0, 0.0)
        with pytest.raises(DomainError):
            yoke_force(10.0, math.pi / 2.0 + 1e-6)
        with pytest.raises(DomainError):
            yoke_force(-1.0, 1.0)

    def test_full_chain_composition(self):
        assert string_force(LOAD, GEOMETRY) == yoke_force(
            tangential_pin_force(LOAD, GEOMETRY), GEOMETRY.beta
        )


class TestRequiredTorqueCurve:
    def test_reference_sweep(self):
        masses, torques = required_torque_curve(1.5, 3.0, 16, LOAD)
        assert masses.shape == (16,)
        assert masses[0] == 1.5 and masses[-1] == 3.0  # endpoints inclusive
        assert torques[0] == pytest.approx(1.4715, rel=1e-12)
        assert torques[-1] == pytest.approx(2.943, rel=1e-12)
        assert np.all(np.diff(torques) > 0.0)

    def test_rows_match_scalar_function_exactly(self):
        masses, torques = required_torque_curve(0.5, 4.0, 29, LOAD)
        for mass, torque in zip(masses, torques):
            assert torque == gravity_torque(
                ForearmLoad(float(mass), LOAD.com_distance, LOAD.gravity)
            )

    def test_two_step_degenerate_grid(self):
        masses, torques = required_torque_curve(0.0, 1.0, 2, LOAD)
        assert list(masses) == [0.0, 1.0]
        assert torques[0] == 0.0
        assert torques[1] == pytest.approx(0.981, rel=1e-12)

    def test_range_validation(self):
        with pytest.raises(DomainError):
            required_torque_curve(2.5, 2.5, 16, LOAD)
        with pytest.raises(DomainError):
            required_torque_curve(-0.1, 1.0, 16, LOAD)
        with pytest.raises(DomainError):
            required_torque_curve(1.0, 2.0, 1, LOAD)
