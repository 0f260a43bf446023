"""
Validating dataset metadata documents
=====================================

Walks the bundled fixture corpus through the validator in both modes and
shows how diagnostics, severities, and conformance verdicts behave.
"""

from pathlib import Path

from croissant_rai import (
    RenderOptions,
    ValidationMode,
    builtin,
    parse,
    render_validation,
    validate,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

registry = builtin()
print(f"registry version {registry.version}, {len(registry.entries)} properties")
print()

# --- a conformant document -------------------------------------------------
# The DICES-350 description documents its labeling pipeline thoroughly:
# annotation protocol, platform, rater demographics, and per-item counts.

dices = parse((FIXTURES / "dices-350.json").read_bytes())
report = validate(dices, registry, ValidationMode.LENIENT)
print("dices-350, lenient:")
print(render_validation(report, RenderOptions()))

# --- a typo caught by the unknown-property rule ------------------------------
# The HLS Burn Scar Scenes description uses a property name that is not in
# the vocabulary.  RAI002 flags it and suggests the nearest real property.

hls = parse((FIXTURES / "hls-burn-scars.json").read_bytes())
report = validate(hls, registry, ValidationMode.LENIENT)
print("hls-burn-scars, lenient:")
print(render_validation(report, RenderOptions()))

# --- a cardinality hint that escalates in strict mode ------------------------
# The BigScience ROOTS description supplies two values for a property the
# vocabulary declares as single-valued.  Lenient mode treats that as a
# warning (the document stays conformant); strict mode makes it an error.

big = parse((FIXTURES / "bigscience-roots.json").read_bytes())
for mode in (ValidationMode.LENIENT, ValidationMode.STRICT):
    report = validate(big, registry, mode)
    print(f"bigscience-roots, {mode.value}:")
    print(render_validation(report, RenderOptions()))
