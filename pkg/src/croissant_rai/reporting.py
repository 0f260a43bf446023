"""Stable text and JSON rendering of validation and coverage reports.

The JSON forms here are the wire shapes: the CLI's --format json output
and the service response bodies are produced by these exact functions,
so equality of reports implies byte equality of renders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .coverage import CoverageReport, CoverageStatus
from .validator import (
    Diagnostic,
    Severity,
    SeverityCounts,
    ValidationMode,
    ValidationReport,
)


class ReportFormat(Enum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class RenderOptions:
    format: ReportFormat = ReportFormat.TEXT
    color: bool = False
    #: 0 means unlimited; otherwise messages are truncated to this width.
    max_message_width: int = 0


_SEVERITY_COLORS = {
    Severity.ERROR: "\x1b[31m",
    Severity.WARNING: "\x1b[33m",
    Severity.INFO: "\x1b[36m",
}
_RESET = "\x1b[0m"


def format_fraction(value: Fraction, digits: int) -> str:
    """Render an exact rational with *digits* fractional digits,
    round-half-even, using only integer arithmetic."""
    scaled = value * 10**digits
    whole = scaled.numerator // scaled.denominator
    remainder = scaled - whole
    if remainder * 2 > 1 or (remainder * 2 == 1 and whole % 2 == 1):
        whole += 1
    sign = "-" if whole < 0 else ""
    magnitude = abs(whole)
    if digits == 0:
        return f"{sign}{magnitude}"
    integral, fractional = divmod(magnitude, 10**digits)
    return f"{sign}{integral}.{fractional:0{digits}d}"


def _diagnostic_json(diagnostic: Diagnostic) -> dict:
    payload = {
        "severity": diagnostic.severity.value,
        "code": diagnostic.code,
        "path": diagnostic.path,
        "message": diagnostic.message,
    }
    if diagnostic.suggestion is not None:
        payload["suggestion"] = diagnostic.suggestion
    return payload


def render_validation(report: ValidationReport, opts: RenderOptions) -> str:
    if opts.format is ReportFormat.JSON:
        payload = {
            "conformant": report.conformant,
            "mode": report.mode.value,
            "registryVersion": report.registry_version,
            "counts": {
                "errors": report.counts.errors,
                "warnings": report.counts.warnings,
                "infos": report.counts.infos,
            },
            "diagnostics": [_diagnostic_json(d) for d in report.diagnostics],
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    lines = []
    for diagnostic in report.diagnostics:
        message = diagnostic.message
        if opts.max_message_width and len(message) > opts.max_message_width:
            message = message[: opts.max_message_width - 1] + "…"
        if diagnostic.suggestion is not None:
            message += f" (did you mean {diagnostic.suggestion}?)"
        severity = diagnostic.severity.name
        if opts.color:
            severity = f"{_SEVERITY_COLORS[diagnostic.severity]}{severity}{_RESET}"
        lines.append(f"{severity} {diagnostic.code} {diagnostic.path}: {message}")
    lines.append(
        f"conformant: {'true' if report.conformant else 'false'} "
        f"({report.counts.errors} errors, {report.counts.warnings} warnings, "
        f"{report.counts.infos} infos)"
    )
    return "\n".join(lines) + "\n"


def validation_report_from_json(text: str) -> ValidationReport:
    """Inverse of the JSON render; raises ValueError on shape mismatch."""
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise ValueError("validation report must be a JSON object")
    diagnostics = tuple(
        Diagnostic(
            severity=Severity(d["severity"]),
            code=d["code"],
            path=d["path"],
            message=d["message"],
            suggestion=d.get("suggestion"),
        )
        for d in payload["diagnostics"]
    )
    counts = payload["counts"]
    return ValidationReport(
        conformant=payload["conformant"],
        mode=ValidationMode(payload["mode"]),
        diagnostics=diagnostics,
        counts=SeverityCounts(
            errors=counts["errors"],
            warnings=counts["warnings"],
            infos=counts["infos"],
        ),
        registry_version=payload["registryVersion"],
    )


def render_coverage(report: CoverageReport, opts: RenderOptions) -> str:
    if opts.format is ReportFormat.JSON:
        # Ratio tokens carry exactly four fractional digits (0.6667,
        # 0.5000); the standard serializer cannot print floats that way,
        # so the wire form is assembled directly.
        lines = [
            "{",
            f'  "registryVersion": {json.dumps(report.registry_version, ensure_ascii=False)},',
            f'  "documentedTotal": {report.documented_total},',
            '  "useCases": [',
        ]
        for index, entry in enumerate(report.per_use_case):
            lines.append("    {")
            lines.append(f'      "useCase": "{entry.use_case.value}",')
            lines.append(f'      "status": "{entry.status.value}",')
            lines.extend(_json_name_list("present", entry.present))
            lines.extend(_json_name_list("missing", entry.missing))
            lines.append(f'      "ratio": {format_fraction(entry.ratio, 4)}')
            comma = "," if index + 1 < len(report.per_use_case) else ""
            lines.append("    }" + comma)
        lines.append("  ]")
        lines.append("}")
        return "\n".join(lines) + "\n"

    lines = []
    for entry in report.per_use_case:
        if entry.status is CoverageStatus.NOT_MAPPABLE:
            lines.append(f"{entry.use_case.value}: not mappable")
            continue
        total = len(entry.present) + len(entry.missing)
        percent = format_fraction(entry.ratio * 100, 2)
        lines.append(
            f"{entry.use_case.value}: {len(entry.present)}/{total} ({percent}%)"
        )
    return "\n".join(lines) + "\n"


def _json_name_list(key: str, names: tuple[str, ...]) -> list[str]:
    # Matches the standard serializer's 2-space-indent list layout.
    if not names:
        return [f'      "{key}": [],']
    lines = [f'      "{key}": [']
    for index, name in enumerate(names):
        comma = "," if index + 1 < len(names) else ""
        lines.append(f"        {json.dumps(name, ensure_ascii=False)}{comma}")
    lines.append("      ],")
    return lines
