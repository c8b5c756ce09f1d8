"""SpecJ document model, XML codec and structural validation.

The XML dialect uses the SpecJ tag vocabulary with a fixed parent/child
table (see ``_CHILDREN``). Three optional extension tags sit under
``<Physical_Properties>``: ``<Format>``, ``<Entry_Point>`` and
``<Design_Order>``. Parameter entries inside a ``<sequence>`` are written as
``<parameters>`` elements holding a ``<type>`` and a ``<value>``.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.parsers import expat

from .errors import DuplicateBlock, MalformedXml, ParseError, SchemaError

NULL = "null"

_IDENT_RE = re.compile(r"(?:[^\W\d]|\$)(?:\w|\$)*")
_LIBREF_RE = re.compile(r"{0}(?:\.{0})*".format(_IDENT_RE.pattern))
# characters XML 1.0 cannot carry
_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff\ud800-\udfff]")


@dataclass(frozen=True)
class Param:
    type: str = ""
    value: str = NULL


@dataclass(frozen=True)
class ParamSeq:
    params: tuple[Param, ...] = ()

    @property
    def types(self) -> tuple[str, ...]:
        """Declared parameter types; a lone untyped ``null`` entry means none."""
        if len(self.params) == 1 and self.params[0] == Param("", NULL):
            return ()
        return tuple(p.type for p in self.params)

    @classmethod
    def of(cls, *types: str) -> ParamSeq:
        return cls(tuple(Param(t) for t in types))


@dataclass(frozen=True)
class FileReq:
    name: str
    type: str = ""
    sub_type: str | None = None

    @property
    def filename(self) -> str:
        if not self.type or self.name.endswith("." + self.type):
            return self.name
        return f"{self.name}.{self.type}"


@dataclass(frozen=True)
class StorageReq:
    name: str
    type: str


@dataclass(frozen=True)
class Block:
    name: str
    data_input: ParamSeq = ParamSeq()
    data_output: ParamSeq = ParamSeq()
    failure: str | None = None
    file: FileReq | None = None
    storage: StorageReq | None = None

    @property
    def return_type(self) -> str | None:
        types = self.data_output.types
        return types[0] if types else None


@dataclass(frozen=True)
class PhysicalProperties:
    blocks: tuple[Block, ...] = ()
    dependencies: tuple[str, ...] = ()
    format: str | None = None
    entry_point: str | None = None
    design_order: tuple[str, ...] | None = None

    def block(self, name: str) -> Block | None:
        for b in self.blocks:
            if b.name == name:
                return b
        return None


@dataclass(frozen=True)
class SpecDocument:
    name: str
    properties: PhysicalProperties = field(default_factory=PhysicalProperties)

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.properties.blocks

    @property
    def dependencies(self) -> tuple[str, ...]:
        return self.properties.dependencies


# --- parsing ---------------------------------------------------------------

# tag -> allowed child tags; text-only tags map to an empty set
_CHILDREN = {
    "SpecJ": {"name", "Physical_Properties"},
    "Physical_Properties": {"Block", "Dependencies", "Format", "Entry_Point",
                            "Design_Order"},
    "Block": {"name", "Data_Input", "Data_Output", "Failure", "File", "Storage"},
    "Data_Input": {"sequence"},
    "Data_Output": {"sequence"},
    "sequence": {"parameters"},
    "parameters": {"type", "value"},
    "Failure": {"type"},
    "File": {"name", "type"},
    "Storage": {"name", "type"},
    "Dependencies": {"lib"},
    "Design_Order": {"name"},
}
_REPEATABLE = {("Physical_Properties", "Block"), ("sequence", "parameters"),
               ("Dependencies", "lib"), ("Design_Order", "name")}


def _text(el: ET.Element) -> str:
    return (el.text or "").strip()


def _check(el: ET.Element, path: str, parent_allows_subtype: bool = False) -> None:
    """Enforce the tag table recursively."""
    if el.attrib:
        raise SchemaError(f"{path}: attributes are not allowed")
    allowed = _CHILDREN.get(el.tag, set())
    if el.tag == "type" and parent_allows_subtype:
        allowed = {"sub-type"}
    if allowed and el.tag in _CHILDREN and _text(el):
        raise SchemaError(f"{path}: unexpected text {_text(el)!r}")
    seen = set()
    for child in el:
        where = f"{path}/{child.tag}"
        if child.tag not in allowed:
            raise SchemaError(f"{where}: tag not allowed under <{el.tag}>")
        if child.tag in seen and (el.tag, child.tag) not in _REPEATABLE:
            raise SchemaError(f"{where}: repeated tag")
        seen.add(child.tag)
        if (child.tail or "").strip():
            raise SchemaError(f"{where}: unexpected text after element")
        _check(child, where, parent_allows_subtype=(el.tag == "File"))


def _opt_text(el: ET.Element | None) -> str | None:
    return None if el is None else _text(el)


def _param_seq(el: ET.Element | None) -> ParamSeq:
    if el is None:
        return ParamSeq()
    seq = el.find("sequence")
    if seq is None:
        return ParamSeq()
    params = []
    for p in seq.findall("parameters"):
        t = p.find("type")
        v = p.find("value")
        params.append(Param(_text(t) if t is not None else "",
                            _text(v) if v is not None else NULL))
    return ParamSeq(tuple(params))


def _block(el: ET.Element) -> Block:
    name_el = el.find("name")
    if name_el is None or not _text(name_el):
        raise SchemaError("Block: missing <name>")
    failure = None
    f = el.find("Failure")
    if f is not None and f.find("type") is not None and _text(f.find("type")):
        failure = _text(f.find("type"))
    file_req = None
    fe = el.find("File")
    if fe is not None and (fe.find("name") is not None or fe.find("type") is not None):
        t = fe.find("type")
        sub = t.find("sub-type") if t is not None else None
        file_req = FileReq(_opt_text(fe.find("name")) or "",
                           _text(t) if t is not None else "",
                           _text(sub) if sub is not None else None)
    storage = None
    se = el.find("Storage")
    if se is not None and (se.find("name") is not None or se.find("type") is not None):
        storage = StorageReq(_opt_text(se.find("name")) or "",
                             _opt_text(se.find("type")) or "")
    return Block(_text(name_el), _param_seq(el.find("Data_Input")),
                 _param_seq(el.find("Data_Output")), failure, file_req, storage)


def parse_spec(text: str | bytes) -> SpecDocument:
    """Parse SpecJ XML text into a :class:`SpecDocument`.

    Raises :class:`MalformedXml` for text that is not well-formed XML,
    :class:`SchemaError` for tags outside the allowed nesting and
    :class:`DuplicateBlock` for repeated block names.
    """
    try:
        root = ET.fromstring(text)
    except (ET.ParseError, expat.ExpatError) as exc:
        raise MalformedXml(str(exc)) from None
    except (ValueError, TypeError, UnicodeError, LookupError) as exc:
        raise MalformedXml(f"cannot decode document: {exc}") from None
    if root.tag != "SpecJ":
        raise SchemaError(f"root element must be <SpecJ>, found <{root.tag}>")
    _check(root, "SpecJ")
    name_el = root.find("name")
    if name_el is None or not _text(name_el):
        raise SchemaError("SpecJ: missing <name>")
    pp = root.find("Physical_Properties")
    if pp is None:
        raise SchemaError("SpecJ: missing <Physical_Properties>")
    blocks = []
    seen = set()
    for b in pp.findall("Block"):
        blk = _block(b)
        if blk.name in seen:
            raise DuplicateBlock(blk.name)
        seen.add(blk.name)
        blocks.append(blk)
    deps_el = pp.find("Dependencies")
    deps = tuple(_text(lib) for lib in deps_el.findall("lib")) if deps_el is not None else ()
    design = pp.find("Design_Order")
    props = PhysicalProperties(
        blocks=tuple(blocks),
        dependencies=deps,
        format=_opt_text(pp.find("Format")),
        entry_point=_opt_text(pp.find("Entry_Point")),
        design_order=(tuple(_text(n) for n in design.findall("name"))
                      if design is not None else None),
    )
    return SpecDocument(_text(name_el), props)


# --- serialization ---------------------------------------------------------

def _sub(parent: ET.Element, tag: str, text: str | None = None) -> ET.Element:
    el = ET.SubElement(parent, tag)
    if text:
        el.text = text
    return el


def _emit_seq(parent: ET.Element, tag: str, seq: ParamSeq) -> None:
    el = _sub(parent, tag)
    s = _sub(el, "sequence")
    for p in seq.params:
        pe = _sub(s, "parameters")
        _sub(pe, "type", p.type)
        _sub(pe, "value", p.value)


def serialize_spec(doc: SpecDocument) -> str:
    """Render ``doc`` as canonical, indented SpecJ XML (deterministic)."""
    root = ET.Element("SpecJ")
    _sub(root, "name", doc.name)
    pp = _sub(root, "Physical_Properties")
    props = doc.properties
    if props.format is not None:
        _sub(pp, "Format", props.format)
    if props.entry_point is not None:
        _sub(pp, "Entry_Point", props.entry_point)
    if props.design_order is not None:
        d = _sub(pp, "Design_Order")
        for n in props.design_order:
            _sub(d, "name", n)
    for b in props.blocks:
        be = _sub(pp, "Block")
        _sub(be, "name", b.name)
        _emit_seq(be, "Data_Input", b.data_input)
        _emit_seq(be, "Data_Output", b.data_output)
        if b.failure is not None:
            f = _sub(be, "Failure")
            _sub(f, "type", b.failure)
        if b.file is not None:
            fe = _sub(be, "File")
            _sub(fe, "name", b.file.name)
            t = _sub(fe, "type", b.file.type)
            if b.file.sub_type is not None:
                _sub(t, "sub-type", b.file.sub_type)
        if b.storage is not None:
            se = _sub(be, "Storage")
            _sub(se, "name", b.storage.name)
            _sub(se, "type", b.storage.type)
    if props.dependencies:
        deps = _sub(pp, "Dependencies")
        for lib in props.dependencies:
            _sub(deps, "lib", lib)
    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="unicode") + "\n"


# --- validation ------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    code: str
    subject: str
    message: str = ""

    def __str__(self) -> str:
        return f"{self.code}({self.subject!r})" + (f": {self.message}" if self.message else "")


def is_identifier(name: str) -> bool:
    return bool(_IDENT_RE.fullmatch(name))


def is_dotted_name(path: str) -> bool:
    return bool(_LIBREF_RE.fullmatch(path))


def _type_ok(text: str) -> bool:
    from .source import parse_type
    try:
        parse_type(text)
    except ParseError:
        return False
    return True


def _texts(doc: SpecDocument):
    yield "name", doc.name
    p = doc.properties
    for t in (p.format, p.entry_point):
        if t is not None:
            yield "extension", t
    for n in p.design_order or ():
        yield "Design_Order", n
    for lib in p.dependencies:
        yield "lib", lib
    for b in p.blocks:
        yield "Block", b.name
        for prm in b.data_input.params + b.data_output.params:
            yield b.name, prm.type
            yield b.name, prm.value
        if b.failure is not None:
            yield b.name, b.failure
        if b.file is not None:
            yield b.name, b.file.name
            yield b.name, b.file.type
            if b.file.sub_type is not None:
                yield b.name, b.file.sub_type
        if b.storage is not None:
            yield b.name, b.storage.name
            yield b.name, b.storage.type


def entry_point_kind(entry: str, props: PhysicalProperties) -> str:
    """Classify an entry point as ``main``, ``block``, ``manifest`` or ``unresolved``."""
    if entry == "main":
        return "main"
    if props.block(entry) is not None:
        return "block"
    if "." in entry:
        return "manifest"
    return "unresolved"


def validate_spec(doc: SpecDocument) -> list[Diagnostic]:
    """Return one :class:`Diagnostic` per violated invariant (empty if valid)."""
    out: list[Diagnostic] = []
    if not doc.name or any(c.isspace() for c in doc.name):
        out.append(Diagnostic("InvalidName", doc.name, "type name must be non-empty without whitespace"))
    props = doc.properties
    seen: set[str] = set()
    for b in props.blocks:
        if not b.name:
            out.append(Diagnostic("EmptyBlockName", b.name))
        elif not is_identifier(b.name):
            out.append(Diagnostic("InvalidBlockName", b.name))
        if b.name in seen:
            out.append(Diagnostic("DuplicateBlock", b.name))
        seen.add(b.name)
        if len(b.data_output.types) > 1:
            out.append(Diagnostic("MultipleOutputs", b.name, "at most one output parameter"))
        types = [p.type for p in b.data_input.params + b.data_output.params if p.type]
        if b.failure is not None:
            types.append(b.failure)
        if b.storage is not None:
            if not b.storage.name or not b.storage.type:
                out.append(Diagnostic("IncompleteStorage", b.name))
            elif not is_identifier(b.storage.name):
                out.append(Diagnostic("InvalidStorageName", b.name, b.storage.name))
            else:
                types.append(b.storage.type)
        for t in types:
            if not _type_ok(t):
                out.append(Diagnostic("InvalidTypeName", b.name, t))
        if b.failure == "":
            out.append(Diagnostic("EmptyFailure", b.name))
        if b.file is not None and not b.file.name:
            out.append(Diagnostic("EmptyFileName", b.name))
        if b.file is not None and b.file.sub_type == "":
            out.append(Diagnostic("EmptySubType", b.name))
    if props.entry_point is not None and \
            entry_point_kind(props.entry_point, props) == "unresolved":
        out.append(Diagnostic("UnresolvedEntryPoint", props.entry_point))
    for n in props.design_order or ():
        if n not in seen:
            out.append(Diagnostic("UnresolvedDesignBlock", n))
    deps_seen: set[str] = set()
    for lib in props.dependencies:
        if not is_dotted_name(lib):
            out.append(Diagnostic("InvalidLibRef", lib))
        if lib in deps_seen:
            out.append(Diagnostic("DuplicateDependency", lib))
        deps_seen.add(lib)
    for where, t in _texts(doc):
        if t != t.strip() or _XML_ILLEGAL.search(t):
            out.append(Diagnostic("UnstableText", where, repr(t)))
    return out
