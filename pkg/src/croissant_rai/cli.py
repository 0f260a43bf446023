"""Command-line interface: validate, coverage, fmt, init, vocab, serve.

Exit codes: 0 success (and conformant for validate, unchanged for
fmt --check); 1 validation Errors or fmt --check drift; 2 usage, I/O,
or parse failures (details on standard error).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from typing import Sequence

from . import service as service_mod
from .coverage import compute_coverage
from .document import (
    CanonicalizationError,
    MetadataDocument,
    ParseError,
    canonicalize,
    from_value,
    parse,
)
from .reporting import (
    RenderOptions,
    ReportFormat,
    render_coverage,
    render_validation,
)
from .validator import ValidationMode, validate
from .vocabulary import (
    CONFORMANCE_ID,
    Cardinality,
    UseCase,
    VocabularyError,
    VocabularyRegistry,
    builtin,
    extend,
    parse_extension,
    properties_for_use_case,
    registry_to_json,
)

_ENV_VOCAB_EXT = "RAI_VOCAB_EXT"


def _build_registry(vocab_ext: str | None) -> VocabularyRegistry:
    path = vocab_ext or os.environ.get(_ENV_VOCAB_EXT)
    registry = builtin()
    if path:
        with open(path, "rb") as handle:
            registry = extend(registry, parse_extension(handle.read()))
    return registry


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _parse_input(path: str) -> MetadataDocument:
    return parse(_read_input(path), source_path=None if path == "-" else path)


def _render_options(format_token: str) -> RenderOptions:
    return RenderOptions(format=ReportFormat(format_token))


def _cmd_validate(args: argparse.Namespace) -> int:
    registry = _build_registry(args.vocab_ext)
    doc = _parse_input(args.file)
    mode = ValidationMode.STRICT if args.strict else ValidationMode.LENIENT
    report = validate(doc, registry, mode)
    sys.stdout.write(render_validation(report, _render_options(args.format)))
    return 0 if report.conformant else 1


def _cmd_coverage(args: argparse.Namespace) -> int:
    registry = _build_registry(args.vocab_ext)
    doc = _parse_input(args.file)
    report = compute_coverage(doc, registry)
    sys.stdout.write(render_coverage(report, _render_options(args.format)))
    return 0


def _cmd_fmt(args: argparse.Namespace) -> int:
    registry = _build_registry(None)
    data = _read_input(args.file)
    doc = parse(data, source_path=None if args.file == "-" else args.file)
    canonical = canonicalize(doc, registry)
    if args.check:
        return 0 if canonical == data else 1
    if args.write:
        if args.file == "-":
            print("error: --write requires a file path", file=sys.stderr)
            return 2
        directory = os.path.dirname(os.path.abspath(args.file))
        fd, temp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(canonical)
            os.replace(temp_path, args.file)
        except BaseException:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise
        return 0
    sys.stdout.buffer.write(canonical)
    sys.stdout.buffer.flush()
    return 0


def _cmd_init(args: argparse.Namespace) -> int:
    registry = _build_registry(None)
    if args.use_case:
        names: list[str] = []
        for token in args.use_case:
            use_case = UseCase.from_id(token)
            names.extend(
                d.name
                for d in properties_for_use_case(registry, use_case)
                if d.name not in names
            )
    else:
        names = sorted(registry.entries)

    payload: dict = {
        "@type": "schema.org/Dataset",
        "name": args.name,
        "dct:conformsTo": CONFORMANCE_ID,
    }
    for name in names:
        descriptor = registry.entries[name]
        payload[name] = "" if descriptor.cardinality is Cardinality.ONE else [""]
    skeleton = canonicalize(from_value(payload), registry)

    if args.output:
        with open(args.output, "wb") as handle:
            handle.write(skeleton)
    else:
        sys.stdout.buffer.write(skeleton)
        sys.stdout.buffer.flush()
    return 0


def _cmd_vocab(args: argparse.Namespace) -> int:
    registry = _build_registry(None)
    if args.format == "json":
        sys.stdout.write(service_mod.vocabulary_json(registry).decode("utf-8"))
        return 0
    lines = []
    for entry in registry_to_json(registry):
        lines.append(
            "  ".join(
                (
                    entry["name"],
                    entry["expectedType"],
                    entry["useCase"],
                    entry["cardinality"],
                )
            )
        )
        if entry.get("description"):
            lines.append("  " + entry["description"])
        if entry.get("recommendedValues"):
            lines.append("  recommended: " + "; ".join(entry["recommendedValues"]))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    registry = _build_registry(None)
    try:
        server = service_mod.create_server(args.bind, args.port, registry)
    except OSError as exc:
        print(f"error: cannot bind {args.bind}:{args.port}: {exc}", file=sys.stderr)
        return 2
    address = server.server_address
    print(f"serving on http://{address[0]}:{address[1]}/v1", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="croissant-rai",
        description="Validate, score, and format responsible-AI dataset metadata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a document against the vocabulary")
    p.add_argument("file", help='input path, or "-" for standard input')
    p.add_argument("--strict", action="store_true", help="escalate conformance and cardinality findings to errors")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--vocab-ext", help="path to a vocabulary extension document")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("coverage", help="score use-case documentation coverage")
    p.add_argument("file", help='input path, or "-" for standard input')
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--vocab-ext", help="path to a vocabulary extension document")
    p.set_defaults(handler=_cmd_coverage)

    p = sub.add_parser("fmt", help="canonicalize a document")
    p.add_argument("file", help='input path, or "-" for standard input')
    group = p.add_mutually_exclusive_group()
    group.add_argument("--write", action="store_true", help="rewrite the file in place (atomic)")
    group.add_argument("--check", action="store_true", help="exit 1 when the file is not canonical")
    p.set_defaults(handler=_cmd_fmt)

    p = sub.add_parser("init", help="emit a skeleton document to fill in")
    p.add_argument("--name", default="", help="dataset name for the skeleton")
    p.add_argument("--use-case", action="append", metavar="ID", help="restrict to one use case (repeatable)")
    p.add_argument("--output", help="write to a file instead of standard output")
    p.set_defaults(handler=_cmd_init)

    p = sub.add_parser("vocab", help="dump the property registry")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(handler=_cmd_vocab)

    p = sub.add_parser("serve", help="run the validation service")
    p.add_argument("--port", type=int, default=8990)
    p.add_argument("--bind", default="127.0.0.1")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except (ParseError, CanonicalizationError, VocabularyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
