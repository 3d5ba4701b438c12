import numpy as np
import pytest

from scramblefit.errors import InputError
from scramblefit.evaluation import (
    CLASSES,
    ConfusionMatrix,
    EvaluationReport,
    leave_one_out,
    map_urd,
    prf,
    render_report_csv,
    render_report_text,
    resubstitution,
)
from scramblefit.ga import GaSettings
from scramblefit.model import DifficultyCategory, GameplayRecord, classify_iwd

E, M, H = DifficultyCategory.EASY, DifficultyCategory.MEDIUM, DifficultyCategory.HARD

# worked example used throughout: 25 ratings, most confusion around Medium
HAND_COUNTS = ((8, 2, 0), (1, 3, 1), (0, 2, 8))


class TestMapUrd:
    def test_full_mapping(self):
        expected = [E, E, E, E, M, H, H, H, H, H]
        assert [map_urd(u) for u in range(1, 11)] == expected

    def test_agrees_with_crisp_classification_on_integers(self):
        for u in range(1, 11):
            assert classify_iwd(float(u)) is map_urd(u)

    def test_numpy_integers_accepted(self):
        assert map_urd(np.int64(5)) is M

    def test_rejects_bool(self):
        with pytest.raises(InputError):
            map_urd(True)

    def test_rejects_floats_and_out_of_range(self):
        with pytest.raises(InputError):
            map_urd(5.0)
        with pytest.raises(InputError):
            map_urd(0)
        with pytest.raises(InputError):
            map_urd(11)


class TestConfusionMatrix:
    def test_shape_and_sign_validation(self):
        with pytest.raises(InputError):
            ConfusionMatrix(((1, 2), (3, 4)))
        with pytest.raises(InputError):
            ConfusionMatrix(((0, 0, 0), (0, -1, 0), (0, 0, 0)))

    def test_from_pairs_counts(self):
        pairs = [(E, E), (E, M), (M, M), (H, H), (H, E), (H, E)]
        cm = ConfusionMatrix.from_pairs(pairs)
        assert cm.counts == ((1, 1, 0), (0, 1, 0), (2, 0, 1))
        assert cm.total == 6

    def test_row_accessor(self):
        cm = ConfusionMatrix(HAND_COUNTS)
        assert cm.row(M) == (1, 3, 1)

    def test_accuracy_is_trace_over_total(self):
        cm = ConfusionMatrix(HAND_COUNTS)
        assert cm.accuracy() == (8 + 3 + 8) / 25

    def test_add(self):
        cm = ConfusionMatrix(HAND_COUNTS) + ConfusionMatrix(HAND_COUNTS)
        assert cm.counts == tuple(tuple(2 * c for c in row) for row in HAND_COUNTS)

    def test_empty_matrix_accuracy_zero(self):
        cm = ConfusionMatrix(((0, 0, 0),) * 3)
        assert cm.accuracy() == 0.0


class TestPrf:
    def test_hand_example_medium(self):
        cm = ConfusionMatrix(HAND_COUNTS)
        r = prf(cm, M)
        assert abs(r.precision - 3 / 7) < 1e-12
        assert abs(r.recall - 3 / 5) < 1e-12
        assert abs(r.f_measure - 0.5) < 1e-12
        assert not r.degenerate

    def test_hand_example_easy_and_hard(self):
        cm = ConfusionMatrix(HAND_COUNTS)
        for cls in (E, H):
            r = prf(cm, cls)
            assert abs(r.precision - 8 / 9) < 1e-12
            assert abs(r.recall - 8 / 10) < 1e-12

    def test_perfect_diagonal(self):
        cm = ConfusionMatrix(((4, 0, 0), (0, 7, 0), (0, 0, 2)))
        for cls in CLASSES:
            r = prf(cm, cls)
            assert (r.precision, r.recall, r.f_measure, r.degenerate) == (1.0, 1.0, 1.0, False)
        assert cm.accuracy() == 1.0

    def test_absent_class_is_degenerate_zeros(self):
        cm = ConfusionMatrix(((5, 0, 0), (0, 0, 0), (0, 0, 5)))
        r = prf(cm, M)
        assert (r.precision, r.recall, r.f_measure) == (0.0, 0.0, 0.0)
        assert r.degenerate

    def test_never_predicted_class(self):
        cm = ConfusionMatrix(((0, 5, 0), (0, 5, 0), (0, 5, 5)))
        r = prf(cm, E)
        assert r.precision == 0.0 and r.recall == 0.0 and r.degenerate

    def test_micro_recall_equals_accuracy(self):
        cm = ConfusionMatrix(HAND_COUNTS)
        tp = sum(cm.counts[i][i] for i in range(3))
        support = [sum(cm.row(c)) for c in CLASSES]
        micro = sum(prf(cm, c).recall * s for c, s in zip(CLASSES, support)) / sum(support)
        assert micro == pytest.approx(cm.accuracy(), rel=1e-12)
        assert tp / cm.total == cm.accuracy()


class TestResubstitution:
    def test_matches_per_record_oracle(self, model, sim_records):
        records = sim_records[:300]
        report = resubstitution(model, records)
        pairs = [
            (map_urd(r.urd), model.score_record(r).category)
            for r in records
            if r.urd is not None
        ]
        assert report.confusion == ConfusionMatrix.from_pairs(pairs)
        assert report.n_scored == len(pairs)
        assert report.n_unrated == len(records) - len(pairs)

    def test_needs_a_rated_record(self, model):
        unrated = [GameplayRecord("p", "water", "tarew", 5.0, 1, False, None, 1)]
        with pytest.raises(InputError):
            resubstitution(model, unrated)

    def test_report_has_all_classes(self, model, sim_records):
        report = resubstitution(model, sim_records[:300])
        assert set(report.per_class) == set(CLASSES)


class TestLeaveOneOut:
    def test_heuristic_pass_equals_resubstitution(self, model, default_config, sim_records):
        records = sim_records[: 6 * 28]
        loo = leave_one_out(default_config, records, mode="participant", train=None)
        resub = resubstitution(model, records)
        assert loo.confusion == resub.confusion
        assert loo.n_unrated == resub.n_unrated

    def test_record_mode_heuristic_also_matches(self, model, default_config, sim_records):
        records = sim_records[:50]
        loo = leave_one_out(default_config, records, mode="record", train=None)
        assert loo.confusion == resubstitution(model, records).confusion

    def test_single_fold_rejected(self, default_config, sim_records):
        one_participant = [r for r in sim_records if r.participant_id == sim_records[0].participant_id]
        with pytest.raises(InputError):
            leave_one_out(default_config, one_participant, mode="participant")

    def test_unknown_mode_rejected(self, default_config, sim_records):
        with pytest.raises(InputError):
            leave_one_out(default_config, sim_records[:56], mode="session")

    def test_word_mode_requires_two_words(self, default_config, sim_records):
        first = sim_records[0]
        same_word = [r for r in sim_records if (r.word, r.scramble) == (first.word, first.scramble)]
        with pytest.raises(InputError):
            leave_one_out(default_config, same_word, mode="word")

    def test_tuned_folds_score_every_rated_record(self, default_config, sim_records):
        records = sim_records[: 2 * 28]
        settings = GaSettings(seed=4, population_size=8, max_generations=2, stall_generations=2)
        report = leave_one_out(default_config, records, mode="participant", train=settings)
        rated = [r for r in records if r.urd is not None]
        assert report.n_scored == len(rated)
        assert 0.0 <= report.confusion.accuracy() <= 1.0


class TestRendering:
    @pytest.fixture()
    def blocks(self, model, sim_records):
        report = resubstitution(model, sim_records[:300])
        return {"Resubstitution": report, "Leave-One-Out": report}

    def test_text_layout(self, blocks):
        text = render_report_text(blocks)
        assert "Resubstitution" in text and "Leave-One-Out" in text
        for label in ("Easy", "Medium", "Hard"):
            assert text.count(label) == 2
        assert "Precision" in text and "Recall" in text and "F Measure" in text

    def test_csv_layout(self, blocks):
        lines = render_report_csv(blocks).strip().splitlines()
        assert lines[0] == "protocol,class,precision,recall,f_measure,degenerate"
        assert len(lines) == 1 + 2 * 3
        for line in lines[1:]:
            protocol, cls, p, r, f, flag = line.split(",")
            assert float(p) >= 0 and float(r) >= 0 and float(f) >= 0
            assert flag in ("True", "False")

    def test_degenerate_classes_flagged_in_text(self):
        cm = ConfusionMatrix(((5, 0, 0), (0, 0, 0), (0, 0, 5)))
        text = render_report_text({"X": EvaluationReport.from_confusion(cm)})
        medium_line = next(l for l in text.splitlines() if l.startswith("Medium"))
        assert medium_line.endswith("*")
