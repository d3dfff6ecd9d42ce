"""Motor ratings, catalog selection, encoder counting."""
import json
import math

import numpy as np
import pytest

from tsa_exo import (
    BUILTIN_CATALOG,
    ConfigError,
    DomainError,
    EncoderState,
    MotorSpec,
    NoFeasibleMotorError,
    encoder_count,
    encoder_state,
    load_motor_catalog,
    select_motor,
    torque_from_power,
)

TWO_PI = 2.0 * math.pi


def motor(name, torque, power=50.0, speed=3.0, voltage=12.0, ppr=11, gear=1.0):
    return MotorSpec(
        name=name,
        rated_power=power,
        rated_speed=speed,
        rated_torque=torque,
        supply_voltage=voltage,
        encoder_ppr=ppr,
        gear_ratio=gear,
    )


class TestTorqueFromPower:
    def test_direct_ratios(self):
        assert torque_from_power(29.2, 10.0) == 2.92
        assert torque_from_power(0.0, 5.0) == 0.0
        assert torque_from_power(36.0, 12.0) == 3.0

    def test_linearity_in_power(self):
        rng = np.random.default_rng(1807)
        for _ in range(200):
            power = rng.uniform(0.1, 100.0)
            speed = rng.uniform(0.1, 50.0)
            scale = rng.uniform(0.1, 10.0)
            assert torque_from_power(scale * power, speed) == pytest.approx(
                scale * torque_from_power(power, speed), rel=1e-15
            )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            torque_from_power(10.0, 0.0)
        with pytest.raises(DomainError):
            torque_from_power(10.0, -1.0)
        with pytest.raises(DomainError):
            torque_from_power(-1.0, 1.0)


class TestMotorSpecValidation:
    def test_rating_budget_enforced(self):
        with pytest.raises(DomainError):
            motor("hot", torque=3.0, power=12.0, speed=5.0)  # 15 W from 12 W

    def test_builtin_catalog_is_self_consistent(self):
        assert len(BUILTIN_CATALOG) == 3
        for entry in BUILTIN_CATALOG:
            assert (
                entry.rated_torque * entry.rated_speed
                <= entry.rated_power * (1.0 + 1e-9)
            )

    def test_positive_fields_required(self):
        with pytest.raises(DomainError):
            motor("bad", torque=0.0)
        with pytest.raises(DomainError):
            motor("bad", torque=1.0, ppr=0)
        with pytest.raises(DomainError):
            motor("bad", torque=1.0, gear=0.0)


class TestSelectMotor:
    def test_reference_selection(self):
        chosen = select_motor(list(BUILTIN_CATALOG), 2.4525)
        assert chosen.name == "GM37-520"
        assert chosen.rated_torque == 3.0

    def test_boundary_is_inclusive(self):
        assert select_motor(list(BUILTIN_CATALOG), 3.0).rated_torque == 3.0
        only = motor("only", torque=3.0)
        assert select_motor([only], 3.0) is only

    def test_infeasible_catalog(self):
        with pytest.raises(NoFeasibleMotorError) as excinfo:
            select_motor([motor("small", torque=2.0)], 2.5)
        assert excinfo.value.category == "no-feasible-motor"
        with pytest.raises(NoFeasibleMotorError):
            select_motor(list(BUILTIN_CATALOG), 10.0)

    def test_order_independent(self):
        rng = np.random.default_rng(2909)
        catalog = list(BUILTIN_CATALOG) + [motor("extra", torque=2.5)]
        expected = select_motor(catalog, 2.2)
        for _ in range(10):
            shuffled = [catalog[i] for i in rng.permutation(len(catalog))]
            assert select_motor(shuffled, 2.2) == expected

    def test_tie_breaking(self):
        lean = motor("b-lean", torque=3.0, power=10.0)
        thirsty = motor("a-thirsty", torque=3.0, power=20.0)
        assert select_motor([thirsty, lean], 2.0) is lean  # lower power wins
        twin_a = motor("alpha", torque=3.0, power=10.0)
        twin_b = motor("beta", torque=3.0, power=10.0)
        assert select_motor([twin_b, twin_a], 2.0) is twin_a  # then name

    def test_empty_catalog(self):
        with pytest.raises(DomainError):
            select_motor([], 1.0)


class TestEncoderCount:
    def test_three_revolutions(self):
        assert encoder_count(TWO_PI, 3.0, 11, 1.0) == 33

    def test_zero_speed(self):
        assert encoder_count(0.0, 7.0, 11, 1.0) == 0

    def test_sign_symmetry_reference(self):
        assert encoder_count(-TWO_PI, 3.0, 11, 1.0) == -33

    def test_sign_symmetry_is_exact(self):
        rng = np.random.default_rng(3111)
        for _ in range(300):
            speed = rng.uniform(0.01, 20.0)
            duration = rng.uniform(0.0, 100.0)
            ppr = int(rng.integers(1, 64))
            gear = rng.uniform(0.5, 50.0)
            assert encoder_count(-speed, duration, ppr, gear) == -encoder_count(
                speed, duration, ppr, gear
            )

    def test_half_pulses_round_to_even(self):
        # pi rad/s for 1 s is half a revolution: 5.5 pulses at 11 ppr.
        assert encoder_count(math.pi, 1.0, 11, 1.0) == 6
        assert encoder_count(math.pi, 1.0, 9, 1.0) == 4  # 4.5 -> 4
        assert encoder_count(-math.pi, 1.0, 9, 1.0) == -4

    def test_additive_up_to_one_pulse(self):
        rng = np.random.default_rng(4213)
        for _ in range(300):
            speed = rng.uniform(-10.0, 10.0)
            first = rng.uniform(0.0, 50.0)
            second = rng.uniform(0.0, 50.0)
            whole = encoder_count(speed, first + second, 11, 1.0)
            split = encoder_count(speed, first, 11, 1.0) + encoder_count(
                speed, second, 11, 1.0
            )
            assert abs(whole - split) <= 1

    def test_gear_ratio_scales_resolution(self):
        assert encoder_count(TWO_PI, 1.0, 11, 30.0) == 330

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            encoder_count(1.0, -0.1, 11, 1.0)
        with pytest.raises(DomainError):
            encoder_count(1.0, 1.0, 0, 1.0)
        with pytest.raises(DomainError):
            encoder_count(1.0, 1.0, 11, 0.0)


class TestEncoderState:
    def test_direction_follows_speed(self):
        forward = encoder_state(TWO_PI, 3.0, 11)
        assert (forward.count, forward.direction) == (33, 1)
        backward = encoder_state(-TWO_PI, 3.0, 11)
        assert (backward.count, backward.direction) == (-33, -1)

    def test_zero_speed_has_no_direction(self):
        with pytest.raises(DomainError):
            encoder_state(0.0, 1.0, 11)

    def test_direction_flag_validated(self):
        with pytest.raises(DomainError):
            EncoderState(count=5, direction=0)


class TestCatalogLoading:
    def make_record(self, name="M1", torque=2.0):
        return {
            "name": name,
            "rated_power_w": 10.0,
            "rated_speed_rad_s": 3.0,
            "rated_torque_nm": torque,
            "voltage_v": 12.0,
            "ppr": 11,
            "gear_ratio": 1.0,
        }

    def test_round_trip(self, tmp_path):
        path = tmp_path / "catalog.json"
        path.write_text(json.dumps([self.make_record(), self.make_record("M2", 3.0)]))
        catalog = load_motor_catalog(path)
        assert [m.name for m in catalog] == ["M1", "M2"]
        assert catalog[1].rated_torque == 3.0
        assert catalog[0].gear_ratio == 1.0

    def test_gear_ratio_optional(self, tmp_path):
        record = self.make_record()
        del record["gear_ratio"]
        path = tmp_path / "catalog.json"
        path.write_text(json.dumps([record]))
        assert load_motor_catalog(path)[0].gear_ratio == 1.0

    def test_error_paths(self, tmp_path):
        bad_json = tmp_path / "bad.json"
        bad_json.write_text("{nope")
        with pytest.raises(ConfigError):
            load_motor_catalog(bad_json)

        not_list = tmp_path / "obj.json"
        not_list.write_text("{}")
        with pytest.raises(ConfigError):
            load_motor_catalog(not_list)

        unknown = self.make_record()
        unknown["color"] = "red"
        extra = tmp_path / "extra.json"
        extra.write_text(json.dumps([unknown]))
        with pytest.raises(ConfigError, match="unknown keys"):
            load_motor_catalog(extra)

        missing = self.make_record()
        del missing["ppr"]
        gone = tmp_path / "gone.json"
        gone.write_text(json.dumps([missing]))
        with pytest.raises(ConfigError, match="ppr"):
            load_motor_catalog(gone)

        negative = self.make_record(torque=-1.0)
        neg = tmp_path / "neg.json"
        neg.write_text(json.dumps([negative]))
        with pytest.raises(ConfigError):
            load_motor_catalog(neg)
