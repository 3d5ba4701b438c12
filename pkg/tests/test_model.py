import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scramblefit.errors import InputError
from scramblefit.model import (
    DifficultyCategory,
    DifficultyModel,
    FeatureVector,
    GameplayRecord,
    classify_iwd,
    extract_features,
    features_from_records,
)

# Golden fixtures: computed once from the shipped default config and frozen.
# Any change to the default membership functions or rules must re-derive them.
GOLDEN = {
    ("ue", 2, 15): 0.39086031294431106,
    ("ue", 10, 60): 0.84765104015179,
    ("ue", 0, 0): 0.1523489598482083,
    ("cow", 5, 0.1): 0.41509790614594105,
    ("cow", 10, 0.9): 0.824571378367144,
}


class TestClassifyIwd:
    def test_band_edges(self):
        assert classify_iwd(4.4999) is DifficultyCategory.EASY
        assert classify_iwd(4.5) is DifficultyCategory.MEDIUM
        assert classify_iwd(5.5) is DifficultyCategory.MEDIUM
        assert classify_iwd(5.5001) is DifficultyCategory.HARD

    def test_reference_centers(self):
        assert classify_iwd(1.6) is DifficultyCategory.EASY
        assert classify_iwd(5.0) is DifficultyCategory.MEDIUM
        assert classify_iwd(8.9) is DifficultyCategory.HARD

    def test_category_order(self):
        assert DifficultyCategory.EASY < DifficultyCategory.MEDIUM < DifficultyCategory.HARD

    def test_labels_round_trip(self):
        for cat in DifficultyCategory:
            assert DifficultyCategory.from_label(cat.label) is cat
        with pytest.raises(InputError):
            DifficultyCategory.from_label("impossible")


class TestGameplayRecord:
    def test_solved_needs_a_guess(self):
        with pytest.raises(InputError):
            GameplayRecord("p", "water", "tarew", 10.0, 0, False, 5, 1)

    def test_skip_with_zero_guesses_ok(self):
        rec = GameplayRecord("p", "water", "tarew", 10.0, 0, True, 5, 1)
        assert rec.was_skipped and rec.num_guesses == 0

    def test_urd_range_enforced(self):
        with pytest.raises(InputError):
            GameplayRecord("p", "water", "tarew", 10.0, 1, False, 0, 1)
        with pytest.raises(InputError):
            GameplayRecord("p", "water", "tarew", 10.0, 1, False, 11, 1)

    def test_urd_absent_is_legal(self):
        rec = GameplayRecord("p", "water", "tarew", 10.0, 1, False, None, 1)
        assert rec.urd is None

    def test_negative_time_rejected(self):
        with pytest.raises(InputError):
            GameplayRecord("p", "water", "tarew", -1.0, 1, False, 5, 1)

    def test_json_round_trip(self):
        rec = GameplayRecord("p7", "khaki", "khika", 12.5, 3, False, 6, 5)
        assert GameplayRecord.from_json_dict(rec.to_json_dict()) == rec


class TestExtractFeatures:
    def test_reference_record(self):
        rec = GameplayRecord("p", "water", "tarew", 15.0, 2, False, None, 1)
        fv = extract_features(rec)
        assert fv == FeatureVector(
            time_taken=15.0,
            num_guesses=2.0,
            word_length=5.0,
            degree_of_scramble=0.65625,
            was_skipped=0.0,
        )

    def test_time_clamped_to_universe(self):
        rec = GameplayRecord("p", "water", "tarew", 300.0, 2, False, None, 1)
        assert extract_features(rec).time_taken == 60.0

    def test_guess_count_clamped(self):
        rec = GameplayRecord("p", "water", "tarew", 10.0, 25, False, None, 1)
        assert extract_features(rec).num_guesses == 10.0

    def test_skip_embeds_as_one(self):
        rec = GameplayRecord("p", "water", "tarew", 10.0, 0, True, None, 1)
        fv = extract_features(rec)
        assert fv.was_skipped == 1.0 and fv.num_guesses == 0.0


class TestStageAnchors:
    def test_ue_low_effort_anchor(self, model):
        # calibration anchor: 2 guesses in 15 seconds is low-moderate effort
        assert model.compute_ue(2, 15) == pytest.approx(0.348, abs=0.05)
        assert model.compute_ue(2, 15) == pytest.approx(GOLDEN[("ue", 2, 15)], rel=1e-12)

    def test_ue_extremes(self, model):
        high = model.compute_ue(10, 60)
        low = model.compute_ue(0, 0)
        assert high == pytest.approx(GOLDEN[("ue", 10, 60)], rel=1e-12) and high > 0.5
        assert low == pytest.approx(GOLDEN[("ue", 0, 0)], rel=1e-12) and low < 0.5

    def test_cow_regions(self, model):
        low = model.compute_cow(5, 0.1)
        high = model.compute_cow(10, 0.9)
        assert low == pytest.approx(GOLDEN[("cow", 5, 0.1)], rel=1e-12) and low < 0.5
        assert high == pytest.approx(GOLDEN[("cow", 10, 0.9)], rel=1e-12) and high > 0.5

    def test_cow_midpoint_inputs_in_range(self, model):
        assert 0.0 <= model.compute_cow(8, 0.5) <= 1.0

    def test_iwd_easy_region(self, model):
        assert model.compute_iwd(0.1, 0.1, 0) < 4.5

    def test_iwd_skip_with_complex_word_is_hard(self, model):
        for ue in (0.0, 0.25, 0.5, 0.75, 1.0):
            for cow in (0.75, 0.9, 1.0):
                assert model.compute_iwd(ue, cow, 1) > 5.5

    def test_skip_flag_peaks(self, default_config):
        ws = default_config.variables["was_skipped"]
        assert ws.mf("true").evaluate(1.0) == 1.0
        assert ws.mf("false").evaluate(0.0) == 1.0


class TestPipeline:
    def test_identical_records_identical_categories(self, model):
        rec = GameplayRecord("p", "gargoyle", "gayrgeol", 41.0, 4, False, 7, 18)
        a, b = model.score_record(rec), model.score_record(rec)
        assert a == b

    @settings(max_examples=60, deadline=None)
    @given(
        ue=st.floats(0, 1),
        cow=st.floats(0, 1),
    )
    def test_skipping_never_reduces_difficulty(self, model, ue, cow):
        assert model.compute_iwd(ue, cow, 1) >= model.compute_iwd(ue, cow, 0)

    def test_every_record_gets_a_category(self, model, sim_records):
        scores = model.score_records(sim_records[:200])
        assert len(scores) == 200
        assert all(isinstance(s.category, DifficultyCategory) for s in scores)
        assert not any(s.degenerate for s in scores)

    def test_batch_equals_per_record_bitwise(self, model, sim_records):
        records = sim_records[:100]
        batch = model.batch_score(features_from_records(records))
        for i, rec in enumerate(records):
            single = model.score_record(rec)
            assert single.iwd == batch["iwd"][i]
            assert single.ue == batch["ue"][i]
            assert single.cow == batch["cow"][i]

    def test_crisp_iwd_stays_on_rating_scale(self, model, sim_records):
        out = model.batch_score(features_from_records(sim_records))
        assert np.all(out["iwd"] >= 0.0) and np.all(out["iwd"] <= 10.0)

    def test_default_model_loads_from_package_data(self):
        m = DifficultyModel.default()
        assert m.version == "heuristic-default-1"
