"""Property-by-property conformance of a component model against a spec."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import ParseError
from .scale import TIERS, CompatLevel, PropertyKind, Status, classify
from .source import SOURCE_FORMAT, ComponentModel, MethodSig, TypeName, parse_type
from .spec_model import Block, SpecDocument, entry_point_kind, is_dotted_name

SOURCE_EXTENSIONS = (".java", ".class")


@dataclass(frozen=True)
class Finding:
    code: str
    message: str
    subject: str

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "subject": self.subject}


@dataclass(frozen=True)
class PropertyResult:
    kind: PropertyKind
    status: Status
    findings: tuple[Finding, ...] = ()
    sequence: tuple[str, ...] = ()  # required activation order, Design only

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "status": self.status.value,
             "findings": [f.to_dict() for f in self.findings]}
        if self.sequence:
            d["sequence"] = list(self.sequence)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> PropertyResult:
        return cls(PropertyKind(d["kind"]), Status(d["status"]),
                   tuple(Finding(**f) for f in d.get("findings", ())),
                   tuple(d.get("sequence", ())))


def _result(kind: PropertyKind, specified: bool, findings: Iterable[Finding] = (),
            sequence: Iterable[str] = ()) -> PropertyResult:
    findings = tuple(findings)
    if not specified:
        status = Status.NOT_SPECIFIED
    else:
        status = Status.FAIL if findings else Status.PASS
    return PropertyResult(kind, status, findings, tuple(sequence))


@dataclass(frozen=True)
class MatchReport:
    component: str
    spec_name: str
    results: tuple[PropertyResult, ...]
    verdict: bool
    level: CompatLevel

    def result(self, kind: PropertyKind) -> PropertyResult:
        for r in self.results:
            if r.kind is kind:
                return r
        raise KeyError(kind)

    @property
    def failing(self) -> list[PropertyKind]:
        return [r.kind for r in self.results if r.status is Status.FAIL]

    @property
    def findings(self) -> list[Finding]:
        return [f for r in self.results for f in r.findings]

    def to_dict(self) -> dict:
        return {"component": self.component, "spec": self.spec_name,
                "verdict": self.verdict, "level": self.level.label,
                "results": [r.to_dict() for r in self.results]}

    @classmethod
    def from_dict(cls, d: dict) -> MatchReport:
        return cls(d["component"], d["spec"],
                   tuple(PropertyResult.from_dict(r) for r in d["results"]),
                   bool(d["verdict"]), CompatLevel.from_label(d["level"]))

    def render_text(self) -> str:
        lines = [f"component: {self.component}",
                 f"spec:      {self.spec_name}",
                 f"verdict:   {str(self.verdict).lower()}",
                 f"level:     {self.level.label}{_level_note(self)}"]
        for r in self.results:
            lines.append(f"  {r.kind.value:<13} {r.status.value}")
            if r.sequence:
                lines.append(f"      sequence: {' -> '.join(r.sequence)}")
            for f in r.findings:
                lines.append(f"      {f.code}({f.subject}): {f.message}")
        return "\n".join(lines) + "\n"


def _level_note(report: MatchReport) -> str:
    failing = set(report.failing)
    for tier, kinds in TIERS:
        broken = sorted(k.value for k in kinds & failing)
        if broken:
            return f" ({tier.label} tier failed: {', '.join(broken)})"
    return ""


@dataclass(frozen=True)
class VerifyOptions:
    provided_libs: frozenset[str] = frozenset()
    classpath: tuple[str, ...] = ()
    strict_dependencies: bool = False

    def __post_init__(self):
        object.__setattr__(self, "provided_libs", frozenset(self.provided_libs))
        object.__setattr__(self, "classpath", tuple(self.classpath))
        bad = sorted(p for p in self.provided_libs if not is_dotted_name(p))
        if bad:
            raise ValueError(f"provided libs must be dotted names: {bad}")


class Classpath:
    """Resolution view over classpath entries.

    An entry is a dotted library name, a file path or a directory path,
    optionally suffixed with ``#<sub-type>`` to annotate a file's kind.
    Directories contribute the files they directly contain and resolve a
    library whose path form (``a/b/C.java`` or ``.class``) exists below them.
    """

    def __init__(self, entries: Iterable[str] = ()):
        self.files: dict[str, set[str]] = {}
        self.libs: set[str] = set()
        self.path_names: list[str] = []
        self.dirs: list[str] = []
        for entry in entries:
            path, _, sub = entry.partition("#")
            base = os.path.basename(path.rstrip("/\\"))
            self.files.setdefault(base, set())
            if sub:
                self.files[base].add(sub)
            if is_dotted_name(path):
                self.libs.add(path)
            stem, ext = os.path.splitext(path)
            if ext in SOURCE_EXTENSIONS:
                self.path_names.append(stem.replace("\\", "/").replace("/", "."))
            if os.path.isdir(path):
                self.dirs.append(path)
                try:
                    names = os.listdir(path)
                except OSError:
                    names = []
                for name in names:
                    if os.path.isfile(os.path.join(path, name)):
                        self.files.setdefault(name, set())

    def resolves(self, lib: str) -> bool:
        if lib in self.libs:
            return True
        if any(p == lib or p.endswith("." + lib) for p in self.path_names):
            return True
        rel = lib.replace(".", os.sep)
        return any(os.path.isfile(os.path.join(d, rel + ext))
                   for d in self.dirs for ext in SOURCE_EXTENSIONS)

    def has_file(self, name: str, sub_type: str | None = None) -> bool:
        if name not in self.files:
            return False
        return sub_type is None or sub_type in self.files[name]


@lru_cache(maxsize=1024)
def _spec_type(text: str) -> TypeName:
    try:
        return parse_type(text)
    except ParseError:
        return TypeName((text,))


def _params_ok(block: Block, m: MethodSig) -> bool:
    required = block.data_input.types
    if len(required) != len(m.params):
        return False
    return all(not r or _spec_type(r).matches(p) for r, p in zip(required, m.params))


def _return_ok(block: Block, m: MethodSig) -> bool:
    ret = block.return_type
    if not ret:
        return True
    return m.return_type is not None and _spec_type(ret).matches(m.return_type)


def _throws_ok(block: Block, m: MethodSig) -> bool:
    if not block.failure:
        return True
    want = _spec_type(block.failure)
    return any(want.matches(t) for t in m.throws)


def find_method(block: Block, model: ComponentModel) -> MethodSig | None:
    """First method in source order satisfying ``block``, if any."""
    for m in model.methods_named(block.name):
        if _params_ok(block, m) and _return_ok(block, m) and _throws_ok(block, m):
            return m
    return None


def match_block(block: Block, model: ComponentModel) -> list[Finding]:
    candidates = model.methods_named(block.name)
    if not candidates:
        return [Finding("MissingMethod", f"no method named {block.name}", block.name)]
    if find_method(block, model) is not None:
        return []
    shaped = [m for m in candidates if _params_ok(block, m)]
    want_in = "(" + ", ".join(t or "?" for t in block.data_input.types) + ")"
    if any(_return_ok(block, m) for m in shaped):
        return [Finding("MissingThrows",
                        f"{block.name}{want_in} does not declare throws {block.failure}",
                        block.name)]
    if shaped:
        got = ", ".join(str(m.return_type) if m.return_type else "<constructor>"
                        for m in shaped)
        return [Finding("WrongReturn",
                        f"{block.name} must return {block.return_type}, found {got}",
                        block.name)]
    got = "; ".join(m.render() for m in candidates)
    return [Finding("WrongParams", f"expected {block.name}{want_in}, found {got}",
                    block.name)]


def match_dependencies(spec: SpecDocument, model: ComponentModel,
                       opts: VerifyOptions, classpath: Classpath | None = None
                       ) -> PropertyResult:
    deps = spec.dependencies
    if classpath is None:
        classpath = Classpath(opts.classpath)
    imports = set(model.imports)
    findings = []
    for lib in deps:
        if lib not in imports:
            findings.append(Finding("MissingImport", f"{lib} is not imported", lib))
        if opts.strict_dependencies and lib not in opts.provided_libs \
                and not classpath.resolves(lib):
            findings.append(Finding("UnresolvedDependency",
                                    f"{lib} is neither on the classpath nor provided",
                                    lib))
    return _result(PropertyKind.DEPENDENCIES, bool(deps), findings)


def match_entry_point(spec: SpecDocument, model: ComponentModel,
                      opts: VerifyOptions, classpath: Classpath | None = None
                      ) -> PropertyResult:
    entry = spec.properties.entry_point
    if entry is None:
        return _result(PropertyKind.ENTRY_POINT, False)
    kind = entry_point_kind(entry, spec.properties)
    findings = []
    if kind == "main":
        if not model.has_standalone_entry:
            findings.append(Finding("MissingMain",
                                    "no public static void main(String[]) method", entry))
    elif kind == "block":
        if match_block(spec.properties.block(entry), model):
            findings.append(Finding("EntryPointUnsatisfied",
                                    f"entry block {entry} is not implemented", entry))
    elif kind == "manifest":
        if classpath is None:
            classpath = Classpath(opts.classpath)
        if not classpath.has_file(entry):
            findings.append(Finding("MissingManifest",
                                    f"{entry} is not on the classpath", entry))
    else:
        findings.append(Finding("UnresolvedEntryPoint",
                                f"entry point {entry} names no block or file", entry))
    return _result(PropertyKind.ENTRY_POINT, True, findings)


def _accessor_suffixes(spec: SpecDocument) -> list[str]:
    names = [b.name for b in spec.blocks]
    present = set(names)
    return [n[3:] for n in names
            if n.startswith("set") and len(n) > 3 and "get" + n[3:] in present]


def match_encapsulation(spec: SpecDocument, model: ComponentModel) -> list[Finding]:
    findings = []
    for b in spec.blocks:
        st = b.storage
        if st is None:
            continue
        want = _spec_type(st.type)
        if not any(f.name == st.name and want.matches(f.type) for f in model.fields):
            findings.append(Finding("MissingStorageField",
                                    f"no field {st.type} {st.name}", st.name))
    for suffix in _accessor_suffixes(spec):
        has_set = bool(model.methods_named("set" + suffix))
        has_get = bool(model.methods_named("get" + suffix))
        if has_set != has_get:
            missing = "get" if has_set else "set"
            prop = suffix[:1].lower() + suffix[1:]
            findings.append(Finding("DataAccessorPairing",
                                    f"{missing}{suffix} missing for accessor pair of {prop}",
                                    prop))
    return findings


def match_files(spec: SpecDocument, opts: VerifyOptions,
                classpath: Classpath | None = None) -> list[Finding]:
    if classpath is None:
        classpath = Classpath(opts.classpath)
    findings = []
    for b in spec.blocks:
        req = b.file
        if req is None:
            continue
        if not classpath.has_file(req.filename, req.sub_type):
            what = req.filename + (f" ({req.sub_type})" if req.sub_type else "")
            findings.append(Finding("MissingFile", f"{what} is not on the classpath",
                                    req.filename))
    return findings


def match_design(spec: SpecDocument, model: ComponentModel) -> PropertyResult:
    order = spec.properties.design_order
    if order is None:
        return _result(PropertyKind.DESIGN, False)
    findings = [Finding("MissingDesignStep", f"activation step {n} has no method", n)
                for n in order if not model.methods_named(n)]
    return _result(PropertyKind.DESIGN, True, findings, order)


def control_blocks(spec: SpecDocument) -> set[str]:
    """Blocks that pass control: no input, void output, named in the design order."""
    order = set(spec.properties.design_order or ())
    return {b.name for b in spec.blocks
            if b.name in order and not b.data_input.types
            and b.return_type is not None and _spec_type(b.return_type).is_void}


def match_format(spec: SpecDocument) -> PropertyResult:
    fmt = spec.properties.format
    if fmt is None:
        return _result(PropertyKind.FORMAT, False)
    findings = []
    if fmt.strip().lower() != SOURCE_FORMAT:
        findings.append(Finding("FormatMismatch",
                                f"component format is {SOURCE_FORMAT}, spec requires {fmt}",
                                fmt))
    return _result(PropertyKind.FORMAT, True, findings)


def verify_component(spec: SpecDocument, model: ComponentModel,
                     opts: VerifyOptions | None = None) -> MatchReport:
    """Check every physical property and assemble a :class:`MatchReport`."""
    opts = opts or VerifyOptions()
    classpath = Classpath(opts.classpath)
    control = control_blocks(spec)
    data, fault, flow = [], [], []
    for b in spec.blocks:
        for f in match_block(b, model):
            if f.code == "MissingThrows":
                fault.append(f)
            elif b.name in control:
                flow.append(f)
            else:
                data.append(f)
    data += match_encapsulation(spec, model)
    data += match_files(spec, opts, classpath)
    data_specified = any(
        b.name not in control or b.file is not None or b.storage is not None
        for b in spec.blocks)
    results = (
        match_format(spec),
        match_entry_point(spec, model, opts, classpath),
        _result(PropertyKind.FAULT_HANDLER, any(b.failure for b in spec.blocks), fault),
        match_dependencies(spec, model, opts, classpath),
        _result(PropertyKind.DATA_IO, data_specified, data),
        _result(PropertyKind.CONTROL_FLOW, bool(control), flow),
        match_design(spec, model),
    )
    verdict = all(r.status is not Status.FAIL for r in results)
    return MatchReport(model.path, spec.name, results, verdict, classify(results))


def unparseable_report(spec: SpecDocument, path: str, error: Exception) -> MatchReport:
    """Report for a component whose source could not be parsed: a Format
    failure, every other property left unassessed."""
    results = tuple(
        PropertyResult(k, Status.FAIL, (Finding("ParseError", str(error), path),))
        if k is PropertyKind.FORMAT else PropertyResult(k, Status.NOT_SPECIFIED)
        for k in PropertyKind)
    return MatchReport(path, spec.name, results, False, classify(results))
