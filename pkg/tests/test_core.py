from __future__ import annotations

import math

import pytest

from squashfitts import (CourtGeometry, DEFAULT_COURT, DomainError, ShotKind,
                         TrialRecord, ball_speed, derive_trial,
                         index_of_difficulty, information_rate,
                         real_time_from_slowmo, validate_against_court)

import oracles


class TestShotKind:
    def test_exactly_four_members_in_presentation_order(self):
        assert [k.value for k in ShotKind] == ["Drive", "Drop", "Lob", "Boast"]

    @pytest.mark.parametrize("label,expected", [
        ("Drive", ShotKind.DRIVE), ("drive", ShotKind.DRIVE),
        ("DROP", ShotKind.DROP), ("  lob ", ShotKind.LOB),
        ("Boast", ShotKind.BOAST),
    ])
    def test_parse_case_insensitive(self, label, expected):
        assert ShotKind.parse(label) is expected

    @pytest.mark.parametrize("label", ["smash", "", "driv", "42"])
    def test_parse_rejects_unknown(self, label):
        with pytest.raises(DomainError):
            ShotKind.parse(label)


class TestTrialRecord:
    def test_valid_construction_and_key(self):
        rec = TrialRecord(1, ShotKind.DRIVE, 1, 586, 0.197, 374, 1.22)
        assert rec.key == (1, ShotKind.DRIVE, 1)

    @pytest.mark.parametrize("field,value", [
        ("person_id", 0), ("trial_index", -1), ("ball_distance_cm", 0.0),
        ("ball_time_s", -0.1), ("player_distance_cm", 0.0),
        ("movement_time_s", 0.0),
    ])
    def test_rejects_non_positive_fields(self, field, value):
        kwargs = dict(person_id=1, shot=ShotKind.DRIVE, trial_index=1,
                      ball_distance_cm=586.0, ball_time_s=0.197,
                      player_distance_cm=374.0, movement_time_s=1.22)
        kwargs[field] = value
        with pytest.raises(DomainError) as exc:
            TrialRecord(**kwargs)
        assert exc.value.field == field


class TestBallSpeed:
    def test_reference_row_one(self):
        assert ball_speed(586, 0.197) == pytest.approx(29.75, abs=0.01)

    def test_unit_conversion_identity(self):
        assert ball_speed(100, 1.0) == 1.0

    def test_reference_boast(self):
        assert ball_speed(999, 0.964) == pytest.approx(10.36, abs=0.01)

    @pytest.mark.parametrize("d,t,field", [
        (0, 1.0, "ball_distance_cm"), (100, 0, "ball_time_s"),
        (-5, 1.0, "ball_distance_cm"),
    ])
    def test_domain_errors_name_the_field(self, d, t, field):
        with pytest.raises(DomainError) as exc:
            ball_speed(d, t)
        assert exc.value.field == field


class TestRealTimeFromSlowmo:
    def test_default_factor_division(self):
        assert real_time_from_slowmo(1.97, 10) == pytest.approx(0.197)

    def test_identity_factor(self):
        assert real_time_from_slowmo(0.5, 1) == 0.5

    def test_reconstructs_reference_ball_time(self):
        # the bundled boast row's t_s of 0.792 corresponds to 7.92 observed
        assert real_time_from_slowmo(7.92, 10) == pytest.approx(0.792)

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            real_time_from_slowmo(0.0)
        with pytest.raises(DomainError):
            real_time_from_slowmo(1.0, 0.0)


class TestIndexOfDifficulty:
    def test_reference_row_one(self):
        assert index_of_difficulty(29.75, 3.74) == pytest.approx(6.80, abs=0.01)

    def test_unit_product_is_zero_bits(self):
        assert index_of_difficulty(1.0, 1.0) == 0.0

    def test_reference_boast(self):
        assert index_of_difficulty(8.97, 4.90) == pytest.approx(5.46, abs=0.01)

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            index_of_difficulty(0.0, 1.0)
        with pytest.raises(DomainError):
            index_of_difficulty(1.0, -2.0)


class TestInformationRate:
    def test_reference_row_one(self):
        assert information_rate(6.8, 1.22) == pytest.approx(5.57, abs=0.01)

    def test_unit_denominator(self):
        assert information_rate(5.0, 1.0) == 5.0

    def test_reference_boast(self):
        assert information_rate(5.91, 1.013) == pytest.approx(5.83, abs=0.01)

    def test_rejects_non_positive_mt(self):
        with pytest.raises(DomainError):
            information_rate(5.0, 0.0)


class TestDeriveTrial:
    def test_reference_row_one(self):
        rec = TrialRecord(1, ShotKind.DRIVE, 1, 586, 0.197, 374, 1.22)
        d = derive_trial(rec)
        assert d.ball_speed_mps == pytest.approx(29.75, abs=0.01)
        assert d.id_bits == pytest.approx(6.80, abs=0.01)
        assert d.info_rate_bps == pytest.approx(5.57, abs=0.01)
        expected = oracles.FROZEN_DERIVED_SPOTS[(1, "Drive", 1)]
        assert d.ball_speed_mps == pytest.approx(expected[0], abs=1e-12)
        assert d.id_bits == pytest.approx(expected[1], abs=1e-12)
        assert d.info_rate_bps == pytest.approx(expected[2], abs=1e-12)

    def test_degenerate_synthetic_row(self):
        rec = TrialRecord(9, ShotKind.DROP, 1, 100, 1.0, 100, 1.0)
        d = derive_trial(rec)
        assert d.ball_speed_mps == 1.0
        assert d.id_bits == 0.0
        assert d.info_rate_bps == 0.0

    def test_reference_drop(self):
        rec = TrialRecord(2, ShotKind.DROP, 1, 636, 0.446, 260, 1.12)
        d = derive_trial(rec)
        assert d.ball_speed_mps == pytest.approx(14.26, abs=0.01)
        assert d.id_bits == pytest.approx(5.21, abs=0.01)
        assert d.info_rate_bps == pytest.approx(4.65, abs=0.01)

    def test_raw_fields_pass_through_unchanged(self):
        rec = TrialRecord(1, ShotKind.LOB, 2, 665, 0.3625, 402, 1.63)
        assert derive_trial(rec).base is rec

    def test_deterministic_and_pure(self):
        rec = TrialRecord(3, ShotKind.BOAST, 3, 969, 1.08, 490, 1.44)
        a, b = derive_trial(rec), derive_trial(rec)
        assert (a.ball_speed_mps, a.id_bits, a.info_rate_bps) == \
               (b.ball_speed_mps, b.id_bits, b.info_rate_bps)
        assert a == b

    def test_component_errors_annotated_with_trial_key(self):
        # a record that dodged construction-time validation (e.g. built by
        # deserialization code gone wrong) still fails loudly, with context
        rec = TrialRecord.__new__(TrialRecord)
        for name, value in (("person_id", 2), ("shot", ShotKind.LOB),
                            ("trial_index", 3), ("ball_distance_cm", -1.0),
                            ("ball_time_s", 0.2), ("player_distance_cm", 300.0),
                            ("movement_time_s", 1.5)):
            object.__setattr__(rec, name, value)
        with pytest.raises(DomainError) as exc:
            derive_trial(rec)
        msg = str(exc.value)
        assert "person=2" in msg and "Lob" in msg and "trial=3" in msg
        assert exc.value.field == "ball_distance_cm"


class TestCourtGeometry:
    def test_default_dimensions(self):
        assert DEFAULT_COURT.t_to_front_m == 5.55
        assert DEFAULT_COURT.t_to_back_m == 4.2
        assert DEFAULT_COURT.t_to_side_m == 3.2

    def test_max_reach_is_front_corner_distance(self):
        assert DEFAULT_COURT.max_player_reach_m == pytest.approx(
            math.sqrt(5.55 ** 2 + 3.2 ** 2), abs=1e-12)
        assert DEFAULT_COURT.max_player_reach_m == pytest.approx(6.41, abs=0.01)

    def test_rejects_non_positive_dimension(self):
        with pytest.raises(DomainError):
            CourtGeometry(t_to_front_m=0.0)


class TestValidateAgainstCourt:
    def _rec(self, dp_cm=374.0, db_cm=586.0, t_s=0.197):
        return TrialRecord(1, ShotKind.DRIVE, 1, db_cm, t_s, dp_cm, 1.22)

    def test_plausible_trial_has_no_warnings(self):
        assert validate_against_court(self._rec()) == []

    def test_player_distance_beyond_reach_warns(self):
        warnings = validate_against_court(self._rec(dp_cm=800.0))
        assert len(warnings) == 1
        assert "reach" in warnings[0]

    def test_implausible_speed_warns(self):
        # 150 m/s: 15000 cm covered in 1 s
        warnings = validate_against_court(self._rec(db_cm=15000.0, t_s=1.0))
        assert any("plausible band" in w for w in warnings)

    def test_non_positive_difficulty_warns_but_does_not_reject(self):
        # v = 0.5 m/s over 1 m: v*D = 0.5 -> negative difficulty
        rec = TrialRecord(1, ShotKind.DROP, 1, 50, 1.0, 100, 1.0)
        warnings = validate_against_court(rec)
        assert any("non-positive difficulty" in w for w in warnings)
        assert derive_trial(rec).id_bits < 0  # still derivable
