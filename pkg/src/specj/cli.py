"""Command-line frontend.

Exit status: 0 on a true verdict or a successful command, 1 on a false
verdict or a corpus with flagged components, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .conformance import VerifyOptions
from .corpus import CorpusRecipe, generate_corpus, run_corpus, verify_file
from .errors import SpecjError
from .source import parse_source
from .spec_diff import diff_specs
from .spec_model import SpecDocument, parse_spec, validate_spec
from .xclass import compile_command, emit_xclass

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, verify_opts: bool = True) -> None:
    p.add_argument("--format", choices=("text", "structured"), default="text",
                   help="report format (structured = JSON)")
    p.add_argument("--out", help="write the report here instead of stdout")
    if verify_opts:
        p.add_argument("--provided-lib", action="append", default=[],
                       metavar="LIB", help="library supplied by the deployment container")
        p.add_argument("--classpath", action="append", default=[], metavar="ENTRY",
                       help="classpath entry: dotted name, file or directory, "
                            "optionally suffixed with #sub-type")
        p.add_argument("--strict", action="store_true",
                       help="dependencies must also resolve on the classpath")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specj", description="Check components against SpecJ physical properties")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one component source file")
    p.add_argument("--spec", required=True)
    p.add_argument("--component", required=True)
    _add_common(p)

    p = sub.add_parser("corpus", help="verify every component in a directory")
    p.add_argument("--spec", required=True)
    p.add_argument("--dir", required=True)
    p.add_argument("--recursive", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("emit-xclass", help="generate the checker harness for a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--component", help="component source; its type name is used")
    p.add_argument("--type-name", help="component type name (overrides --component)")
    p.add_argument("--classpath", action="append", default=[], metavar="ENTRY")
    p.add_argument("--print-command", action="store_true",
                   help="print the external compile command to stderr")
    _add_common(p, verify_opts=False)

    p = sub.add_parser("diff", help="modification plan between two specs")
    p.add_argument("--spec", action="append", required=True,
                   help="give twice: FROM then TO")
    _add_common(p, verify_opts=False)

    p = sub.add_parser("gen-corpus", help="write a seeded synthetic corpus")
    p.add_argument("--spec", required=True)
    p.add_argument("--recipe", required=True,
                   help="key=value list (e.g. conformant=45,missing_method=3) "
                        "or a JSON file")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def load_spec(path: str) -> SpecDocument:
    with open(path, "rb") as fh:
        doc = parse_spec(fh.read())
    problems = validate_spec(doc)
    if problems:
        raise UsageError(f"{path}: invalid spec: " + "; ".join(map(str, problems)))
    return doc


def _options(args) -> VerifyOptions:
    try:
        return VerifyOptions(frozenset(args.provided_lib), tuple(args.classpath),
                             args.strict)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text: str, doc: dict | None) -> None:
    if args.format == "structured":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_recipe(text: str) -> CorpusRecipe:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            data = json.load(fh)
        return CorpusRecipe(**data)
    return CorpusRecipe.parse(text)


def _cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    report = verify_file(spec, args.component, _options(args), use_sidecar=False)
    _emit(args, report.render_text(), report.to_dict())
    return EXIT_OK if report.verdict else EXIT_FALSE


def _cmd_corpus(args) -> int:
    spec = load_spec(args.spec)
    report = run_corpus(args.dir, spec, _options(args), recursive=args.recursive,
                        jobs=args.jobs)
    _emit(args, report.render_text(), report.to_dict())
    return EXIT_OK if report.flagged == 0 else EXIT_FALSE


def _cmd_emit(args) -> int:
    spec = load_spec(args.spec)
    type_name = args.type_name
    if type_name is None:
        if args.component is None:
            raise UsageError("emit-xclass needs --component or --type-name")
        with open(args.component, "rb") as fh:
            type_name = parse_source(fh.read(), args.component).type_name
    harness = emit_xclass(spec, type_name)
    if args.print_command:
        cmd = compile_command(harness, args.component or f"{type_name}.java",
                              args.classpath)
        print(" ".join(cmd), file=sys.stderr)
    if args.out and os.path.isdir(args.out):
        args.out = os.path.join(args.out, harness.filename)
    _emit(args, harness.text, {
        "class_name": harness.class_name, "text": harness.text,
        "imports": list(harness.imports),
        "probes": [{"block": p.block, "line": p.line} for p in harness.probes]})
    return EXIT_OK


def _cmd_diff(args) -> int:
    if len(args.spec) != 2:
        raise UsageError("diff needs exactly two --spec arguments (FROM, TO)")
    a, b = (load_spec(p) for p in args.spec)
    plan = diff_specs(a, b)
    _emit(args, plan.render_text(), plan.to_dict())
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = load_spec(args.spec)
    recipe = _load_recipe(args.recipe)
    if args.seed is not None:
        recipe = CorpusRecipe(args.seed, recipe.conformant, recipe.missing_method,
                              recipe.missing_import, recipe.container_dep)
    entries = generate_corpus(recipe, spec, args.out)
    if args.format == "structured":
        doc = {"out": args.out, "seed": recipe.seed,
               "components": [e.__dict__ for e in entries]}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"wrote {len(entries)} components to {args.out}\n")
    return EXIT_OK


_COMMANDS = {"verify": _cmd_verify, "corpus": _cmd_corpus, "emit-xclass": _cmd_emit,
             "diff": _cmd_diff, "gen-corpus": _cmd_gen}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, SpecjError, OSError, ValueError, TypeError) as exc:
        print(f"specj {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
