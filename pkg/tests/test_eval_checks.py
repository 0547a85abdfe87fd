"""Per-case checks and outcome classification."""

from __future__ import annotations

import pytest

from nl2chart.engine import TranslateResult, translate
from nl2chart.evalharness import (
    GroundTruth,
    OutcomeKind,
    SortRequirement,
    check_chart_type,
    check_data,
    check_execution,
    check_order,
    check_surface_form,
    classify_outcome,
    parse_score,
)
from nl2chart.evalharness.checks import CheckResult
from nl2chart.evalharness.readability import ScoreParseError
from nl2chart.engine import spec_to_dict
from nl2chart.vql import VisType, parse_vql
from nl2chart.agents.orchestrator import FailureReport, RefinementTrace


def _spec_dict(catalog, vql: str) -> dict:
    outcome = translate(parse_vql(vql), catalog)
    assert isinstance(outcome, TranslateResult)
    return spec_to_dict(outcome.spec)


@pytest.fixture(scope="module")
def pie_spec(dorm_catalog):
    return _spec_dict(
        dorm_catalog, "Visualize PIE SELECT sex, COUNT(stuid) FROM Student GROUP BY sex"
    )


PIE_GT = GroundTruth(
    chart_types=(VisType.PIE,), rows=(("F", 3), ("M", 4))
)


class TestExecutionCheck:
    def test_failure_report_fails_with_last_error(self):
        report = FailureReport(
            last_error="MissingGroupBy: x", trace=RefinementTrace()
        )
        result = check_execution(report)
        assert not result.passed
        assert result.detail == "MissingGroupBy: x"


class TestSurfaceForm:
    def test_well_formed_pie(self, pie_spec):
        assert check_surface_form(pie_spec).passed

    def test_complex_mark_missing_group(self, pie_spec):
        corrupted = dict(pie_spec)
        corrupted["mark"] = "stacked bar"
        result = check_surface_form(corrupted)
        assert not result.passed
        assert "group" in result.detail

    def test_spec_version_mismatch(self, pie_spec):
        corrupted = dict(pie_spec)
        corrupted["spec_version"] = 2
        result = check_surface_form(corrupted)
        assert not result.passed
        assert result.detail == "unsupported spec version"


class TestChartType:
    def test_exact_match(self, pie_spec):
        assert check_chart_type(pie_spec, PIE_GT).passed

    def test_complex_is_not_simple(self, retail_catalog):
        spec = _spec_dict(
            retail_catalog,
            "Visualize STACKED BAR SELECT O.order_date, SUM(O.total_amount), "
            "C.customer_type FROM Orders O JOIN Customers C "
            "ON O.customer_id = C.customer_id GROUP BY C.customer_type",
        )
        gt = GroundTruth(chart_types=(VisType.BAR,), rows=(("x", 1),))
        assert not check_chart_type(spec, gt).passed

    def test_set_membership(self, pie_spec):
        gt = GroundTruth(
            chart_types=(VisType.PIE, VisType.BAR), rows=PIE_GT.rows
        )
        assert check_chart_type(pie_spec, gt).passed


class TestDataCheck:
    def test_row_order_irrelevant(self, pie_spec):
        shuffled = GroundTruth(
            chart_types=(VisType.PIE,), rows=(("M", 4), ("F", 3))
        )
        assert check_data(pie_spec, shuffled).passed

    def test_channel_swap_when_unpinned(self, pie_spec):
        transposed = GroundTruth(
            chart_types=(VisType.PIE,), rows=((3, "F"), (4, "M"))
        )
        assert check_data(pie_spec, transposed).passed

    def test_channel_swap_refused_when_pinned(self, pie_spec):
        transposed = GroundTruth(
            chart_types=(VisType.PIE,),
            rows=((3, "F"), (4, "M")),
            channels_pinned=True,
        )
        assert not check_data(pie_spec, transposed).passed

    def test_off_by_one_count_names_tuple(self, pie_spec):
        wrong = GroundTruth(
            chart_types=(VisType.PIE,), rows=(("F", 3), ("M", 5))
        )
        result = check_data(pie_spec, wrong)
        assert not result.passed
        assert "first mismatched tuple" in result.detail
        assert "5" in result.detail and "4" in result.detail

    def test_numeric_tolerance(self, pie_spec):
        close = GroundTruth(
            chart_types=(VisType.PIE,),
            rows=(("F", 3.0000000001), ("M", 4)),
        )
        assert check_data(pie_spec, close).passed

    def test_date_day_precision(self, retail_catalog):
        spec = _spec_dict(
            retail_catalog,
            "Visualize LINE SELECT order_date, COUNT(order_id) FROM Orders "
            "GROUP BY order_date BIN order_date BY DAY",
        )
        gt = GroundTruth(
            chart_types=(VisType.LINE,),
            rows=(
                ("2023-01-15", 1), ("2023-01-20", 1), ("2023-02-10", 1),
                ("2023-02-14", 1), ("2023-02-20", 1), ("2023-03-05", 1),
            ),
        )
        assert check_data(spec, gt).passed

    def test_text_trimmed(self, pie_spec):
        padded = GroundTruth(
            chart_types=(VisType.PIE,), rows=((" F ", 3), ("M ", 4))
        )
        assert check_data(pie_spec, padded).passed

    def test_swap_symmetry_on_both_orientations(self, dorm_catalog):
        spec = _spec_dict(
            dorm_catalog,
            "Visualize BAR SELECT sex, COUNT(stuid) FROM Student GROUP BY sex",
        )
        orientation_a = GroundTruth(chart_types=(VisType.BAR,), rows=(("F", 3), ("M", 4)))
        orientation_b = GroundTruth(chart_types=(VisType.BAR,), rows=((3, "F"), (4, "M")))
        assert check_data(spec, orientation_a).passed
        assert check_data(spec, orientation_b).passed


class TestOrderCheck:
    def test_absent_sort_auto_passes(self, pie_spec):
        assert check_order(pie_spec, PIE_GT).passed

    def test_y_desc_satisfied(self, dorm_catalog):
        spec = _spec_dict(
            dorm_catalog,
            'Visualize BAR SELECT "city code", COUNT(stuid) FROM Student '
            'GROUP BY "city code" ORDER BY Y DESC',
        )
        gt = GroundTruth(
            chart_types=(VisType.BAR,),
            rows=(
                ("PIT", 2), ("BAL", 1), ("HKG", 1),
                ("NYC", 1), ("PHL", 1), ("WAS", 1),
            ),
            sort=SortRequirement("y", "desc"),
        )
        assert check_order(spec, gt).passed

    def test_ascending_when_desc_required_fails(self, dorm_catalog):
        spec = _spec_dict(
            dorm_catalog,
            'Visualize BAR SELECT "city code", COUNT(stuid) FROM Student '
            'GROUP BY "city code" ORDER BY Y ASC',
        )
        gt = GroundTruth(
            chart_types=(VisType.BAR,),
            rows=(("PIT", 2),),
            sort=SortRequirement("y", "desc"),
        )
        assert not check_order(spec, gt).passed

    def test_ties_tolerated(self, pie_spec):
        gt = GroundTruth(
            chart_types=(VisType.PIE,),
            rows=PIE_GT.rows,
            sort=SortRequirement("x", "asc"),
        )
        assert check_order(pie_spec, gt).passed


class TestClassifyOutcome:
    def test_execution_failure_is_invalid_with_zero_quality(self):
        checks = [CheckResult("Execution", False, "boom")]
        outcome = classify_outcome(checks, readability=4.0)
        assert outcome.kind is OutcomeKind.INVALID
        assert outcome.quality == 0.0

    def test_data_failure_is_illegal_with_zero_quality(self):
        checks = [
            CheckResult("Execution", True),
            CheckResult("SurfaceForm", True),
            CheckResult("ChartType", True),
            CheckResult("Data", False, "mismatch"),
        ]
        outcome = classify_outcome(checks)
        assert outcome.kind is OutcomeKind.ILLEGAL
        assert outcome.quality == 0.0

    def test_all_passed_quality_equals_readability(self):
        checks = [CheckResult(name, True) for name in (
            "Execution", "SurfaceForm", "ChartType", "Data", "Order"
        )]
        outcome = classify_outcome(checks, readability=3.5)
        assert outcome.kind is OutcomeKind.PASS
        assert outcome.quality == 3.5

    def test_pass_without_readability_has_no_quality(self):
        checks = [CheckResult("Execution", True)]
        outcome = classify_outcome(checks)
        assert outcome.kind is OutcomeKind.PASS
        assert outcome.quality is None

    def test_every_input_maps_to_exactly_one_outcome(self):
        import itertools

        for flags in itertools.product([True, False], repeat=5):
            checks = [
                CheckResult(name, flag)
                for name, flag in zip(
                    ("Execution", "SurfaceForm", "ChartType", "Data", "Order"),
                    flags,
                )
            ]
            outcome = classify_outcome(checks)
            assert outcome.kind in (
                OutcomeKind.INVALID, OutcomeKind.ILLEGAL, OutcomeKind.PASS
            )


class TestReadabilityParsing:
    def test_plain_number(self):
        assert parse_score("4") == 4.0

    def test_first_in_range_wins(self):
        assert parse_score("Score: 5 - excellent") == 5.0

    def test_out_of_range_clamped(self):
        assert parse_score("I rate it 9 out of 10") == 5.0

    def test_no_digit_raises(self):
        with pytest.raises(ScoreParseError):
            parse_score("no numerals at all")

    def test_judge_with_scripted_client(self, dorm_catalog):
        from nl2chart.engine import TranslateResult, translate as run_translate
        from nl2chart.evalharness import judge_readability
        from nl2chart.vql import parse_vql as parse

        outcome = run_translate(
            parse("Visualize PIE SELECT sex, COUNT(stuid) FROM Student GROUP BY sex"),
            dorm_catalog,
        )
        assert isinstance(outcome, TranslateResult)

        class FixedJudge:
            def __init__(self):
                self.prompts = []

            def complete(self, prompt, *, temperature=0.0, max_tokens=2048):
                self.prompts.append(prompt)
                return "4"

        judge = FixedJudge()
        assert judge_readability(judge, spec=outcome.spec) == 4.0
        # the scoring instructions and the spec JSON both reach the judge
        assert "Scoring Scale" in judge.prompts[0]
        assert '"mark": "pie"' in judge.prompts[0]

    def test_judge_requires_spec_or_image(self):
        from nl2chart.evalharness import judge_readability

        with pytest.raises(ValueError):
            judge_readability(object())
