"""Validation rules, suggestion logic, and date parsing."""

import json
import random

import pytest

from croissant_rai import (
    Severity,
    ValidationMode,
    builtin,
    check_datetime,
    from_value,
    levenshtein,
    parse,
    suggest_property,
    validate,
)

from synth import random_document

LENIENT = ValidationMode.LENIENT
STRICT = ValidationMode.STRICT

CONFORMING_BASE = {"dct:conformsTo": "mlcommons.org/croissant/RAI/1.0"}


def _validate(payload: dict, mode=LENIENT):
    return validate(from_value(payload), builtin(), mode)


def _codes(report):
    return [d.code for d in report.diagnostics]


def test_clean_document_has_no_diagnostics():
    report = _validate(
        {**CONFORMING_BASE, "rai:dataBiases": ["b"], "rai:dataCollection": "c"},
        STRICT,
    )
    assert report.conformant
    assert report.diagnostics == ()
    assert (report.counts.errors, report.counts.warnings, report.counts.infos) == (0, 0, 0)


def test_rai001_missing_conformance():
    lenient = _validate({"name": "x"})
    assert _codes(lenient) == ["RAI001"]
    diagnostic = lenient.diagnostics[0]
    assert diagnostic.severity is Severity.INFO
    assert diagnostic.path == "/dct:conformsTo"
    assert "mlcommons.org/croissant/RAI/1.0" in diagnostic.message
    assert lenient.conformant

    strict = _validate({"name": "x"}, STRICT)
    assert strict.diagnostics[0].severity is Severity.ERROR
    assert not strict.conformant


def test_rai001_accepts_any_position_and_scheme():
    for value in (
        "mlcommons.org/croissant/RAI/1.0",
        "https://mlcommons.org/croissant/RAI/1.0",
        "http://mlcommons.org/croissant/RAI/1.0/",
        ["something.example", "mlcommons.org/croissant/RAI/1.0"],
    ):
        report = _validate({"dct:conformsTo": value}, STRICT)
        assert "RAI001" not in _codes(report), value


def test_rai001_rejects_other_ids():
    report = _validate({"dct:conformsTo": "mlcommons.org/croissant/1.0"})
    assert _codes(report) == ["RAI001"]


def test_rai002_unknown_property_is_error_in_both_modes():
    for mode in (LENIENT, STRICT):
        report = _validate({**CONFORMING_BASE, "rai:dataProcessing": "p"}, mode)
        assert _codes(report) == ["RAI002"]
        diagnostic = report.diagnostics[0]
        assert diagnostic.severity is Severity.ERROR
        assert diagnostic.path == "/rai:dataProcessing"
        assert diagnostic.suggestion == "rai:dataPreprocessingProtocol"
        assert not report.conformant


def test_rai002_without_suggestion():
    report = _validate({**CONFORMING_BASE, "rai:zzzzzzzzzzzz": "x"})
    assert _codes(report) == ["RAI002"]
    assert report.diagnostics[0].suggestion is None


def test_rai002_skips_type_and_cardinality_checks():
    report = _validate({**CONFORMING_BASE, "rai:dataMystery": [1, 2]})
    assert _codes(report) == ["RAI002"]


def test_rai002_profile_checks_still_apply():
    report = _validate({**CONFORMING_BASE, "rai:dataMystery": ["", {"x": 1}]})
    assert _codes(report) == ["RAI002", "RAI006", "RAI007"]


def test_rai003_cardinality():
    payload = {**CONFORMING_BASE, "rai:dataCollection": ["a", "b"]}
    lenient = _validate(payload)
    assert _codes(lenient) == ["RAI003"]
    assert lenient.diagnostics[0].severity is Severity.WARNING
    assert lenient.diagnostics[0].path == "/rai:dataCollection"
    assert lenient.conformant

    strict = _validate(payload, STRICT)
    assert strict.diagnostics[0].severity is Severity.ERROR
    assert not strict.conformant


def test_rai003_never_fires_for_many_cardinality():
    payload = {**CONFORMING_BASE, "rai:dataBiases": ["a", "b", "c", "d", "e"]}
    assert _validate(payload, STRICT).diagnostics == ()


def test_rai003_single_value_array_is_fine():
    payload = {**CONFORMING_BASE, "rai:dataCollection": ["a"]}
    assert _validate(payload, STRICT).diagnostics == ()


def test_rai004_text_type_mismatch():
    report = _validate({**CONFORMING_BASE, "rai:dataBiases": [1, True, None, "ok"]})
    codes_paths = [(d.code, d.path) for d in report.diagnostics]
    assert codes_paths == [
        ("RAI004", "/rai:dataBiases/0"),
        ("RAI004", "/rai:dataBiases/1"),
        ("RAI004", "/rai:dataBiases/2"),
    ]
    assert all(d.severity is Severity.ERROR for d in report.diagnostics)


def test_rai004_datetime_values():
    good = {**CONFORMING_BASE, "rai:dataCollectionTimeframe": ["2013-01-01"]}
    assert _validate(good, STRICT).diagnostics == ()
    bad = {**CONFORMING_BASE, "rai:dataCollectionTimeframe": "Jan 2013"}
    report = _validate(bad)
    assert _codes(report) == ["RAI004"]
    assert report.diagnostics[0].path == "/rai:dataCollectionTimeframe"
    assert "Jan 2013" in report.diagnostics[0].message


def test_rai005_recommended_values():
    ok = {**CONFORMING_BASE, "rai:dataCollectionType": ["Web Scraping", "surveys "]}
    assert _validate(ok, STRICT).diagnostics == ()

    report = _validate({**CONFORMING_BASE, "rai:dataCollectionType": "Telepathy"})
    assert _codes(report) == ["RAI005"]
    assert report.diagnostics[0].severity is Severity.WARNING
    # Warning in strict mode as well, so the document stays conformant.
    strict = _validate({**CONFORMING_BASE, "rai:dataCollectionType": "Telepathy"}, STRICT)
    assert strict.diagnostics[0].severity is Severity.WARNING
    assert strict.conformant


def test_rai005_literal_others_is_accepted():
    report = _validate({**CONFORMING_BASE, "rai:dataCollectionType": "others"})
    assert report.diagnostics == ()


def test_rai006_empty_string_suppresses_other_value_rules():
    report = _validate(
        {
            **CONFORMING_BASE,
            "rai:dataCollectionTimeframe": "",
            "rai:dataCollectionType": [""],
        },
        STRICT,
    )
    assert _codes(report) == ["RAI006", "RAI006"]
    assert [d.path for d in report.diagnostics] == [
        "/rai:dataCollectionTimeframe",
        "/rai:dataCollectionType/0",
    ]
    assert all(d.severity is Severity.WARNING for d in report.diagnostics)
    assert report.conformant


def test_rai006_empty_array():
    report = _validate({**CONFORMING_BASE, "rai:dataBiases": []}, STRICT)
    assert _codes(report) == ["RAI006"]
    assert report.diagnostics[0].path == "/rai:dataBiases"


def test_rai007_nested_values():
    report = _validate(
        {
            **CONFORMING_BASE,
            "rai:dataCollection": {"nested": True},
            "rai:dataBiases": [["nested"]],
        },
        STRICT,
    )
    codes_paths = [(d.code, d.path) for d in report.diagnostics]
    assert codes_paths == [
        ("RAI007", "/rai:dataBiases/0"),
        ("RAI007", "/rai:dataCollection"),
    ]
    assert all(d.severity is Severity.ERROR for d in report.diagnostics)


def test_non_rai_properties_are_not_validated():
    report = _validate(
        {
            **CONFORMING_BASE,
            "sc:weird": {"nested": 1},
            "cr:thing": [1, 2, 3],
            "plain": None,
        },
        STRICT,
    )
    assert report.diagnostics == ()


def test_diagnostics_sorted_by_path_then_code():
    report = _validate(
        {
            "rai:zzzUnknown": "x",
            "rai:dataCollection": ["a", "b"],
            "rai:dataBiases": [1],
        }
    )
    ordered = [(d.path, d.code) for d in report.diagnostics]
    assert ordered == sorted(ordered)
    assert ordered[0][0] == "/dct:conformsTo"


def test_validate_is_deterministic_across_runs():
    rng = random.Random(7)
    payloads = [random_document(rng, allow_nested=True) for _ in range(50)]
    first = [
        validate(from_value(p), builtin(), STRICT).diagnostics for p in payloads
    ]
    second = [
        validate(from_value(p), builtin(), STRICT).diagnostics for p in payloads
    ]
    assert first == second


def test_mode_monotonicity_on_random_documents():
    rng = random.Random(99)
    for _ in range(300):
        doc = from_value(random_document(rng, allow_nested=True))
        lenient = validate(doc, builtin(), LENIENT)
        strict = validate(doc, builtin(), STRICT)
        lenient_errors = {
            (d.code, d.path) for d in lenient.diagnostics if d.severity is Severity.ERROR
        }
        strict_errors = {
            (d.code, d.path) for d in strict.diagnostics if d.severity is Severity.ERROR
        }
        assert lenient_errors <= strict_errors


def test_report_registry_version(registry):
    report = _validate({})
    assert report.registry_version == registry.version


def test_levenshtein_basics():
    assert levenshtein("", "") == 0
    assert levenshtein("abc", "") == 3
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("dataBiase", "dataBiases") == 1


def _oracle_levenshtein(a: str, b: str) -> int:
    rows = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        rows[i][0] = i
    for j in range(len(b) + 1):
        rows[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            rows[i][j] = min(
                rows[i - 1][j] + 1,
                rows[i][j - 1] + 1,
                rows[i - 1][j - 1] + (a[i - 1] != b[j - 1]),
            )
    return rows[-1][-1]


def test_levenshtein_matches_full_matrix_oracle():
    rng = random.Random(13)
    alphabet = "abcDEF"
    for _ in range(300):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        assert levenshtein(a, b) == _oracle_levenshtein(a, b)


def test_suggest_property_examples(registry):
    assert suggest_property(registry, "rai:dataProcessing") == (
        "rai:dataPreprocessingProtocol"
    )
    assert suggest_property(registry, "rai:dataBiase") == "rai:dataBiases"
    assert suggest_property(registry, "rai:zzzzzzzzzzzz") is None


def _oracle_suggest(registry, unknown: str):
    local = unknown.split(":", 1)[1]
    eligible = []
    for name in registry.entries:
        other = name.split(":", 1)[1]
        distance = _oracle_levenshtein(local, other)
        if distance / max(len(local), len(other)) <= 0.5:
            eligible.append((distance, name))
    return min(eligible)[1] if eligible else None


def test_suggest_property_matches_brute_force(registry):
    rng = random.Random(21)
    tokens = ["rai:dataProcessing", "rai:dataBiase", "rai:zzzzzzzzzzzz"]
    base_locals = [n.split(":", 1)[1] for n in registry.entries]
    for _ in range(200):
        local = list(rng.choice(base_locals))
        for _ in range(rng.randint(0, 6)):
            op = rng.random()
            pos = rng.randrange(max(len(local), 1)) if local else 0
            if op < 0.4 and local:
                del local[pos]
            elif op < 0.7:
                local.insert(pos, rng.choice("abcXYZ"))
            elif local:
                local[pos] = rng.choice("abcXYZ")
        token = "rai:" + "".join(local)
        if token in registry.entries:
            continue
        tokens.append(token)
    for token in tokens:
        assert suggest_property(registry, token) == _oracle_suggest(registry, token), token


@pytest.mark.parametrize(
    "value,expected",
    [
        ("2013-01-01", True),
        ("2023-05-01T00:00:00Z", True),
        ("2020-02-29", True),
        ("2021-06-30T23:59:60Z", True),
        ("2018-11-05T08:15:30.25+02:00", True),
        ("2018-11-05t08:15:30z", True),
        ("2013-13-01", False),
        ("2019-02-29", False),
        ("1900-02-29", False),
        ("2000-02-29", True),
        ("Jan 2013", False),
        ("2013-1-01", False),
        ("2013-01-01T00:00", False),
        ("2013-01-01T24:00:00Z", False),
        ("2013-01-01T00:00:00", False),
        ("2013-01-01T00:00:00+24:00", False),
        ("2013-01-01T00:00:00+02:60", False),
        ("2013-01-0", False),
        ("", False),
        ("2013-01-01 ", False),
        (" 2013-01-01", False),
    ],
)
def test_check_datetime(value, expected):
    assert check_datetime(value) is expected


def test_validate_stable_under_key_permutation():
    rng = random.Random(5)
    payload = {
        **CONFORMING_BASE,
        "rai:dataCollection": ["a", "b"],
        "rai:dataBiases": [1],
        "rai:unknownThing": "x",
        "name": "perm",
    }
    base = validate(from_value(payload), builtin(), STRICT)
    for _ in range(10):
        items = list(payload.items())
        rng.shuffle(items)
        shuffled = validate(from_value(dict(items)), builtin(), STRICT)
        assert shuffled.diagnostics == base.diagnostics


def test_json_render_shape_has_suggestion_only_for_rai002():
    from croissant_rai import RenderOptions, ReportFormat, render_validation

    report = _validate({"rai:dataProcessing": "x", "rai:dataCollection": ["a", "b"]})
    payload = json.loads(render_validation(report, RenderOptions(format=ReportFormat.JSON)))
    for diagnostic in payload["diagnostics"]:
        assert ("suggestion" in diagnostic) == (diagnostic["code"] == "RAI002")
