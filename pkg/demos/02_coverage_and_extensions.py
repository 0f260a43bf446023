"""
Scoring documentation coverage by use case
==========================================

Coverage asks a different question than validation: not "are the supplied
values well-formed" but "how much of each use case's vocabulary did this
dataset actually document".  The demo scores the corpus, then loads a
vocabulary extension to make the participatory-data use case scorable.
"""

from pathlib import Path

from croissant_rai import (
    RenderOptions,
    builtin,
    compute_coverage,
    extend,
    parse,
    parse_extension,
    render_coverage,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

registry = builtin()

# --- corpus scores -----------------------------------------------------------
# Ratios are exact fractions under the hood; the text render shows
# present/total and a percentage per use case.

for name in ("hls-burn-scars", "dices-350", "bigscience-roots"):
    doc = parse((FIXTURES / f"{name}.json").read_bytes())
    report = compute_coverage(doc, registry)
    print(f"{name}:")
    print(render_coverage(report, RenderOptions()))

# The built-in vocabulary maps no properties to participatory-data, so that
# use case reports "not mappable" rather than a misleading 0%.

# --- widening the vocabulary -------------------------------------------------
# An extension file adds properties without touching the built-in registry.
# Here the extension contributes one participatory-data property, which
# makes the fifth use case scorable.

extension_bytes = (FIXTURES / "extension-participatory.json").read_bytes()
extended = extend(registry, parse_extension(extension_bytes))
print(f"extended registry has {len(extended.entries)} properties")
print()

doc = parse(
    b"""{
  "dct:conformsTo": "mlcommons.org/croissant/RAI/1.0",
  "name": "community-mapped imagery",
  "rai:dataCollectorDemographics": ["local volunteer mappers, ages 18-70"]
}"""
)
report = compute_coverage(doc, extended)
print("community-mapped imagery, extended vocabulary:")
print(render_coverage(report, RenderOptions()))
