"""Render stability for validation and coverage reports."""

import json
import random
from fractions import Fraction

import pytest

from croissant_rai import (
    RenderOptions,
    ReportFormat,
    ValidationMode,
    builtin,
    compute_coverage,
    format_fraction,
    from_value,
    parse,
    render_coverage,
    render_validation,
    validate,
    validation_report_from_json,
)

from conftest import FIXTURES
from synth import random_document

TEXT = RenderOptions()
JSON_OPTS = RenderOptions(format=ReportFormat.JSON)


def test_clean_report_single_line():
    report = validate(
        from_value({"dct:conformsTo": "mlcommons.org/croissant/RAI/1.0"}),
        builtin(),
        ValidationMode.LENIENT,
    )
    assert render_validation(report, TEXT) == (
        "conformant: true (0 errors, 0 warnings, 0 infos)\n"
    )


def test_hls_text_render_contains_code_path_and_suggestion(fixture_docs):
    report = validate(fixture_docs["hls-burn-scars"], builtin(), ValidationMode.LENIENT)
    text = render_validation(report, TEXT)
    line = text.splitlines()[0]
    assert "RAI002 /rai:dataProcessing" in line
    assert "did you mean rai:dataPreprocessingProtocol" in line
    assert text.splitlines()[1] == "conformant: false (1 errors, 0 warnings, 0 infos)"


def test_text_line_shape():
    report = validate(
        from_value({"rai:dataCollection": ["a", "b"]}),
        builtin(),
        ValidationMode.LENIENT,
    )
    lines = render_validation(report, TEXT).splitlines()
    assert lines[0].startswith("INFO RAI001 /dct:conformsTo: ")
    assert lines[1].startswith("WARNING RAI003 /rai:dataCollection: ")
    assert lines[-1] == "conformant: true (0 errors, 1 warnings, 1 infos)"


def test_color_and_width_options():
    report = validate(from_value({}), builtin(), ValidationMode.LENIENT)
    colored = render_validation(report, RenderOptions(color=True))
    assert "\x1b[36mINFO\x1b[0m" in colored

    narrow = render_validation(report, RenderOptions(max_message_width=10))
    first = narrow.splitlines()[0]
    message = first.split(": ", 1)[1]
    assert len(message) == 10
    assert message.endswith("…")


def test_json_render_matches_goldens(fixture_bytes):
    cases = {
        "hls-burn-scars": ("hls-validate-lenient.json", ValidationMode.LENIENT),
        "dices-350": ("dices-validate-lenient.json", ValidationMode.LENIENT),
        "bigscience-roots": ("bigscience-validate-strict.json", ValidationMode.STRICT),
    }
    for fixture, (golden, mode) in cases.items():
        report = validate(parse(fixture_bytes[fixture]), builtin(), mode)
        rendered = render_validation(report, JSON_OPTS)
        assert rendered == (FIXTURES / "reports" / golden).read_text(encoding="utf-8")


def test_json_render_round_trip_equals_report():
    rng = random.Random(3)
    for _ in range(50):
        report = validate(
            from_value(random_document(rng, allow_nested=True)),
            builtin(),
            rng.choice((ValidationMode.LENIENT, ValidationMode.STRICT)),
        )
        rendered = render_validation(report, JSON_OPTS)
        assert validation_report_from_json(rendered) == report


def test_json_key_order_is_fixed():
    report = validate(from_value({"rai:dataProcessing": "x"}), builtin(), ValidationMode.LENIENT)
    payload = json.loads(render_validation(report, JSON_OPTS))
    assert list(payload) == ["conformant", "mode", "registryVersion", "counts", "diagnostics"]
    assert list(payload["counts"]) == ["errors", "warnings", "infos"]
    assert list(payload["diagnostics"][1]) == [
        "severity",
        "code",
        "path",
        "message",
        "suggestion",
    ]


def test_coverage_text_empty_document():
    report = compute_coverage(from_value({}), builtin())
    assert render_coverage(report, TEXT) == (
        "data-life-cycle: 0/6 (0.00%)\n"
        "data-labeling: 0/6 (0.00%)\n"
        "participatory-data: not mappable\n"
        "ai-safety-fairness: 0/4 (0.00%)\n"
        "regulatory-compliance: 0/4 (0.00%)\n"
    )


def test_coverage_text_dices_line(fixture_docs):
    report = compute_coverage(fixture_docs["dices-350"], builtin())
    assert "data-labeling: 4/6 (66.67%)" in render_coverage(report, TEXT).splitlines()


def test_coverage_json_matches_goldens(fixture_docs):
    for fixture, golden in (
        ("dices-350", "dices-coverage.json"),
        ("bigscience-roots", "bigscience-coverage.json"),
    ):
        report = compute_coverage(fixture_docs[fixture], builtin())
        rendered = render_coverage(report, JSON_OPTS)
        assert rendered == (FIXTURES / "reports" / golden).read_text(encoding="utf-8")


def test_coverage_json_ratio_tokens_have_four_digits(fixture_docs):
    report = compute_coverage(fixture_docs["dices-350"], builtin())
    rendered = render_coverage(report, JSON_OPTS)
    ratio_lines = [l for l in rendered.splitlines() if '"ratio"' in l]
    assert len(ratio_lines) == 5
    for line in ratio_lines:
        token = line.split(": ")[1].rstrip(",")
        assert len(token.split(".")[1]) == 4
    payload = json.loads(rendered)
    labeling = [u for u in payload["useCases"] if u["useCase"] == "data-labeling"][0]
    assert labeling["ratio"] == 0.6667


def test_coverage_json_is_valid_and_ordered(fixture_docs):
    report = compute_coverage(fixture_docs["bigscience-roots"], builtin())
    payload = json.loads(render_coverage(report, JSON_OPTS))
    assert list(payload) == ["registryVersion", "documentedTotal", "useCases"]
    assert [u["useCase"] for u in payload["useCases"]] == [
        "data-life-cycle",
        "data-labeling",
        "participatory-data",
        "ai-safety-fairness",
        "regulatory-compliance",
    ]
    for entry in payload["useCases"]:
        assert list(entry) == ["useCase", "status", "present", "missing", "ratio"]


def test_coverage_json_indentation_matches_standard_serializer(fixture_docs):
    # The hand-assembled wire form must be reserializable to itself once
    # ratio tokens are normalized, proving the layout matches json.dumps.
    report = compute_coverage(fixture_docs["dices-350"], builtin())
    rendered = render_coverage(report, JSON_OPTS)
    payload = json.loads(rendered)
    redumped = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    def normalize(text: str) -> str:
        return "\n".join(
            line.split(': ')[0] + ": <num>" if '"ratio"' in line else line
            for line in text.splitlines()
        )

    assert normalize(rendered) == normalize(redumped)


@pytest.mark.parametrize(
    "value,digits,expected",
    [
        (Fraction(2, 3), 4, "0.6667"),
        (Fraction(1, 2), 4, "0.5000"),
        (Fraction(0), 4, "0.0000"),
        (Fraction(1), 4, "1.0000"),
        (Fraction(1, 3) * 100, 2, "33.33"),
        (Fraction(2, 3) * 100, 2, "66.67"),
        (Fraction(25, 1000), 2, "0.02"),
        (Fraction(35, 1000), 2, "0.04"),
        (Fraction(5, 10), 0, "0"),
        (Fraction(15, 10), 0, "2"),
        (Fraction(25, 10), 0, "2"),
        (Fraction(-15, 10), 0, "-2"),
        (Fraction(-25, 1000), 2, "-0.02"),
        (Fraction(1, 8), 2, "0.12"),
        (Fraction(3, 8), 2, "0.38"),
    ],
)
def test_format_fraction_round_half_even(value, digits, expected):
    assert format_fraction(value, digits) == expected


def test_format_fraction_matches_decimal_oracle():
    import decimal

    rng = random.Random(11)
    for _ in range(500):
        numerator = rng.randint(0, 10000)
        denominator = rng.randint(1, 500)
        digits = rng.choice((0, 2, 4))
        value = Fraction(numerator, denominator)
        with decimal.localcontext() as ctx:
            ctx.prec = 80
            ctx.rounding = decimal.ROUND_HALF_EVEN
            oracle = str(
                (decimal.Decimal(numerator) / decimal.Decimal(denominator)).quantize(
                    decimal.Decimal(1).scaleb(-digits)
                )
            )
        assert format_fraction(value, digits) == oracle, (numerator, denominator, digits)


def test_text_output_is_ascii_digits_lf_only(fixture_docs):
    report = compute_coverage(fixture_docs["dices-350"], builtin())
    text = render_coverage(report, TEXT)
    assert "\r" not in text
    assert text.endswith("\n")
    for ch in text:
        assert ch == "\n" or ch.isprintable()
