"""
Pruebas de las métricas de evaluación y de los reportes en lote
"""

import json
from collections import Counter
from functools import lru_cache
from itertools import combinations

import pandas as pd
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.action_sequence import ActionTypeSequence, MetricsError, SequenceFormatError
from src.reporting import (
    BatchReporter,
    EmptyGroundTruthError,
    HumanJudgment,
    evaluate_batch,
    evaluate_pair,
    lcs_length,
    lcs_ratio,
    levenshtein,
    precision_recall,
)

symbols = st.lists(st.sampled_from(["T", "L", "G"]), max_size=8)
non_empty = st.lists(st.sampled_from(["T", "L", "G"]), min_size=1, max_size=8)


def edit_distance_oracle(a, b):
    a, b = tuple(a), tuple(b)

    @lru_cache(maxsize=None)
    def distance(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(
            distance(i + 1, j) + 1,
            distance(i, j + 1) + 1,
            distance(i + 1, j + 1) + (a[i] != b[j]),
        )

    return distance(0, 0)


def is_subsequence(candidate, sequence):
    remaining = iter(sequence)
    return all(symbol in remaining for symbol in candidate)


def lcs_oracle(a, b):
    for size in range(len(a), 0, -1):
        for indices in combinations(range(len(a)), size):
            if is_subsequence([a[i] for i in indices], b):
                return size
    return 0


class TestLevenshtein:

    @pytest.mark.parametrize("pred,truth,expected", [("TTG", "TTG", 0), ("TTG", "TG", 1), ("", "TLG", 3), ("TLG", "GLT", 2)])
    def test_examples(self, pred, truth, expected):
        assert levenshtein(pred, truth) == expected

    def test_extended_symbols_are_atomic(self):
        assert levenshtein("G2T", "G3T") == 1
        assert levenshtein(ActionTypeSequence.parse("G2"), "G") == 1

    @given(symbols, symbols)
    def test_matches_recursive_oracle(self, a, b):
        assert levenshtein(a, b) == edit_distance_oracle(a, b)

    @given(symbols, symbols, symbols)
    def test_metric_axioms(self, a, b, c):
        assert levenshtein(a, a) == 0
        assert levenshtein(a, b) == levenshtein(b, a)
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)
        if a != b:
            assert levenshtein(a, b) > 0


class TestLcs:

    def test_identical(self):
        assert lcs_ratio("TTGL", "TTGL") == 1.0

    def test_disjoint(self):
        assert lcs_ratio("TTT", "GGL") == 0.0

    def test_interleaved(self):
        assert lcs_length("TGTG", "TTG") == lcs_oracle("TGTG", "TTG") == 3
        assert lcs_ratio("TGTG", "TTG") == 1.0
        assert lcs_ratio("GT", "TTG") == pytest.approx(1 / 3)

    def test_empty_truth(self):
        with pytest.raises(EmptyGroundTruthError):
            lcs_ratio("T", "")

    @given(symbols, symbols)
    def test_matches_subsequence_oracle(self, a, b):
        assert lcs_length(a, b) == lcs_oracle(a, b)

    @given(non_empty, st.sampled_from(["T", "L", "G"]))
    def test_monotone_under_matched_append(self, a, extra):
        truth = a + [extra]
        assert lcs_ratio(a + [extra], truth) == 1.0
        assert lcs_ratio(a, truth) <= lcs_ratio(a + [extra], truth)


class TestPrecisionRecall:

    def test_perfect_bag(self):
        scores = precision_recall("TTTGG", "GTGTT")
        assert scores.per_type["T"].precision == scores.per_type["T"].recall == 1.0
        assert scores.per_type["G"].precision == scores.per_type["G"].recall == 1.0
        assert scores.macro_precision == scores.macro_recall == 1.0

    def test_missing_prediction(self):
        scores = precision_recall("TT", "TTT")
        assert scores.per_type["T"].recall == pytest.approx(2 / 3)
        assert scores.per_type["T"].precision == 1.0

    def test_type_absent_from_both_not_averaged(self):
        scores = precision_recall("TG", "TT")
        assert set(scores.per_type) == {"T", "G"}
        assert scores.macro_precision == pytest.approx((1.0 + 0.0) / 2)
        assert scores.macro_recall == pytest.approx((0.5 + 0.0) / 2)

    def test_both_empty(self):
        scores = precision_recall("", "")
        assert scores.macro_precision == scores.macro_recall == 1.0

    @given(symbols, symbols)
    def test_matches_counting_oracle(self, pred, truth):
        scores = precision_recall(pred, truth)
        pred_counts, truth_counts = Counter(pred), Counter(truth)
        assert set(scores.per_type) == set(pred_counts) | set(truth_counts)
        for symbol, score in scores.per_type.items():
            tp = min(pred_counts[symbol], truth_counts[symbol])
            assert score.true_positives == tp
            assert score.true_positives + score.false_negatives == truth_counts[symbol]
            assert 0.0 <= score.precision <= 1.0
            assert 0.0 <= score.recall <= 1.0


class TestEvaluateBatch:

    def test_single_identical_pair(self):
        batch = evaluate_batch([("TTG", "TTG")])
        assert (batch.mean_levenshtein, batch.mean_lcs_ratio, batch.mean_precision, batch.mean_recall) == (0, 1.0, 1.0, 1.0)
        assert batch.success_rate is None

    def test_mean_distance(self):
        batch = evaluate_batch([("TTG", "TG"), ("T", "TLL")], scenario_ids=["a", "b"])
        assert [r.levenshtein for r in batch.reports] == [1, 2]
        assert batch.mean_levenshtein == 1.5

    def test_means_are_arithmetic(self):
        pairs = [("TGL", "TGGL"), ("G2T", "GT"), ("LLT", "TLL"), ("T", "T")]
        batch = evaluate_batch(pairs, workers=3)
        reports = [evaluate_pair(p, t) for p, t in pairs]
        assert batch.mean_lcs_ratio == pytest.approx(sum(r.lcs_ratio for r in reports) / 4)
        assert batch.mean_precision == pytest.approx(sum(r.macro_precision for r in reports) / 4)
        assert [r.scenario_id for r in batch.reports] == ["0", "1", "2", "3"]

    def test_judgments_recorded(self):
        judgments = {"a": HumanJudgment(True, 2), "b": HumanJudgment(False, 5)}
        batch = evaluate_batch([("TTG", "TTG"), ("T", "TL")], ["a", "b"], judgments)
        assert batch.success_rate == 0.5
        assert batch.mean_faithful_fraction == pytest.approx((2 / 3 + 1.0) / 2)
        assert batch.reports[0].to_dict()["reproduced"] is True

    def test_empty_batch(self):
        with pytest.raises(MetricsError):
            evaluate_batch([])

    def test_empty_truth_in_batch(self):
        with pytest.raises(EmptyGroundTruthError):
            evaluate_batch([("T", "")])

    def test_ids_must_match_pairs(self):
        with pytest.raises(MetricsError):
            evaluate_batch([("T", "T")], scenario_ids=["a", "b"])


class TestBatchReporter:

    @pytest.fixture
    def batch(self):
        return evaluate_batch([("TTG", "TTG"), ("TG", "TLG")], ["s1", "s2"], {"s1": HumanJudgment(True, 3)})

    def test_json_report(self, batch, tmp_path):
        path = BatchReporter(batch).generar_reporte_json(tmp_path / "metrics.json")
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["summary"]["pairs"] == 2
        assert data["summary"]["mean_levenshtein"] == 0.5
        assert data["pairs"][1]["per_type"]["L"] == {"tp": 0, "fp": 0, "fn": 1, "precision": 0.0, "recall": 0.0}

    def test_text_table(self, batch):
        table = BatchReporter(batch).generar_tabla_texto()
        lines = table.splitlines()
        assert "levenshtein" in lines[0]
        assert lines[1].split()[0] == "s1"
        assert any(line.split() and line.split()[0] == "MEAN" for line in lines)
        assert "success_rate: 1.000" in table

    def test_excel_report(self, batch, tmp_path):
        path = BatchReporter(batch).generar_reporte_excel(tmp_path / "metrics.xlsx")
        sheets = pd.read_excel(path, sheet_name=None)
        assert list(sheets) == ["Resumen", "Detalle", "Por Tipo"]
        assert list(sheets["Detalle"]["scenario"]) == ["s1", "s2"]

    def test_stats_per_type(self, batch):
        stats = BatchReporter(batch).get_estadisticas_por_tipo()
        assert stats["T"] == {"tp": 3, "fp": 0, "fn": 0}
        assert stats["L"] == {"tp": 0, "fp": 0, "fn": 1}

    def test_unwritable_report(self, batch, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        with pytest.raises(MetricsError):
            BatchReporter(batch).generar_resumen_texto(blocker / "metrics.txt")


class TestActionTypeSequence:

    def test_parse_extended(self):
        assert ActionTypeSequence.parse("TG2L10").symbols == ("T", "G2", "L10")
        assert str(ActionTypeSequence.parse("G2T").basic()) == "GT"

    @pytest.mark.parametrize("text", ["TX", "G11", "G0", "tg"])
    def test_invalid(self, text):
        with pytest.raises(SequenceFormatError):
            ActionTypeSequence.parse(text)
