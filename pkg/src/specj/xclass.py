"""Emit a checker harness ("XClass") for a spec.

The harness imports every dependency, holds a reference of the component's
type and invokes each required method with default-initialized arguments.
Compiling it together with the component is the link-level check; this
module only produces the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidIdentifier
from .source import KEYWORDS, PRIMITIVES, parse_type
from .spec_model import SpecDocument, is_identifier

_DEFAULTS = {"boolean": "false", "char": "'\\0'", "byte": "0", "short": "0",
             "int": "0", "long": "0L", "float": "0f", "double": "0d"}

INDENT = "    "


@dataclass(frozen=True)
class Probe:
    block: str
    line: int  # 1-based line of the invocation in the harness text


@dataclass(frozen=True)
class HarnessSource:
    class_name: str
    text: str
    probes: tuple[Probe, ...]
    imports: tuple[str, ...]

    @property
    def filename(self) -> str:
        return self.class_name + ".java"


def harness_class_name(spec_name: str) -> str:
    return "XClass_" + re.sub(r"[^\w$]", "_", spec_name)


def default_value(type_text: str) -> str:
    t = parse_type(type_text)
    if t.array_dims == 0 and len(t.segments) == 1 and t.segments[0] in _DEFAULTS:
        return _DEFAULTS[t.segments[0]]
    return "null"


def emit_xclass(spec: SpecDocument, component_type_name: str) -> HarnessSource:
    if not is_identifier(component_type_name) or component_type_name in KEYWORDS \
            or component_type_name in PRIMITIVES:
        raise InvalidIdentifier(f"not a valid type identifier: {component_type_name!r}")
    class_name = harness_class_name(spec.name)
    lines: list[str] = []
    for lib in spec.dependencies:
        lines.append(f"import {lib};")
    if lines:
        lines.append("")
    lines.append(f"public class {class_name} {{")
    lines.append(f"{INDENT}private {component_type_name} target;")
    lines.append("")
    lines.append(f"{INDENT}public void verify() {{")
    probes = []
    for i, block in enumerate(spec.blocks):
        body = INDENT * 2
        args = []
        for j, t in enumerate(block.data_input.types):
            var = f"p{i}_{j}"
            decl = t or "Object"
            lines.append(f"{body}{decl} {var} = {default_value(decl)};")
            args.append(var)
        call = f"target.{block.name}({', '.join(args)});"
        ret = block.return_type
        if ret and not parse_type(ret).is_void:
            call = f"{ret} r{i} = {call}"
        if block.failure:
            lines.append(f"{body}try {{")
            lines.append(f"{body}{INDENT}{call}")
            probes.append(Probe(block.name, len(lines)))
            lines.append(f"{body}}} catch ({block.failure} e{i}) {{")
            lines.append(f"{body}{INDENT}throw new RuntimeException(e{i});")
            lines.append(f"{body}}}")
        else:
            lines.append(f"{body}{call}")
            probes.append(Probe(block.name, len(lines)))
    lines.append(f"{INDENT}}}")
    lines.append("}")
    return HarnessSource(class_name, "\n".join(lines) + "\n", tuple(probes),
                         tuple(spec.dependencies))


def compile_command(harness: HarnessSource, component_path: str,
                    classpath: list[str] | tuple[str, ...] = ()) -> list[str]:
    """Command line an external Java toolchain would run to link the harness."""
    cmd = ["javac"]
    if classpath:
        cmd += ["-cp", ":".join(classpath)]
    return cmd + [harness.filename, component_path]
