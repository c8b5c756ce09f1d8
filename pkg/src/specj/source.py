"""Structural parser for component source written in a Java-like subset.

Only the facts needed for conformance checking are kept: package, imports,
the first top-level class or interface, its supertypes, method signatures
and field declarations. Method bodies, initializers and nested types are
skipped by balanced-brace scanning and never reach the model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ParseError

SOURCE_FORMAT = "java"

MODIFIERS = ("public", "protected", "private", "abstract", "static", "final",
             "synchronized")
# tolerated but not recorded
_OTHER_MODIFIERS = frozenset({"native", "transient", "volatile", "strictfp",
                              "default", "sealed", "non-sealed"})

PRIMITIVES = frozenset({"boolean", "byte", "char", "short", "int", "long",
                        "float", "double", "void"})

KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue
default do double else enum extends final finally float for goto if
implements import instanceof int interface long native new package private
protected public return short static strictfp super switch synchronized this
throw throws transient try void volatile while true false null
""".split())


@dataclass(frozen=True)
class TypeName:
    segments: tuple[str, ...]
    array_dims: int = 0
    args: str = ""  # generic argument text, whitespace-normalized

    def __str__(self) -> str:
        return ".".join(self.segments) + self.args + "[]" * self.array_dims

    @property
    def simple(self) -> str:
        return self.segments[-1]

    @property
    def is_void(self) -> bool:
        return self.segments == ("void",) and not self.array_dims

    def matches(self, other: TypeName) -> bool:
        """Case-sensitive match where a qualified name also matches its
        own last segment. Generic arguments only constrain when present on
        ``self``."""
        if self.array_dims != other.array_dims:
            return False
        if self.args and self.args != other.args:
            return False
        a, b = self.segments, other.segments
        if a == b:
            return True
        if len(a) == 1 or len(b) == 1:
            return a[-1] == b[-1]
        return False


@dataclass(frozen=True)
class MethodSig:
    name: str
    modifiers: frozenset[str] = frozenset()
    return_type: TypeName | None = None  # None for constructors
    params: tuple[TypeName, ...] = ()
    throws: tuple[TypeName, ...] = ()

    @property
    def is_constructor(self) -> bool:
        return self.return_type is None

    def render(self) -> str:
        parts = [m for m in MODIFIERS if m in self.modifiers]
        if self.return_type is not None:
            parts.append(str(self.return_type))
        parts.append(f"{self.name}({', '.join(map(str, self.params))})")
        line = " ".join(parts)
        if self.throws:
            line += " throws " + ", ".join(map(str, self.throws))
        return line


@dataclass(frozen=True)
class FieldSig:
    name: str
    type: TypeName
    modifiers: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ComponentModel:
    type_name: str
    path: str = "<string>"
    package: str | None = None
    imports: tuple[str, ...] = ()
    kind: str = "class"
    super_types: tuple[TypeName, ...] = ()
    methods: tuple[MethodSig, ...] = ()
    fields: tuple[FieldSig, ...] = field(default=())

    @property
    def has_standalone_entry(self) -> bool:
        return any(_is_main(m) for m in self.methods)

    def methods_named(self, name: str) -> list[MethodSig]:
        return [m for m in self.methods if m.name == name]


def _is_main(m: MethodSig) -> bool:
    return (m.name == "main"
            and {"public", "static"} <= m.modifiers
            and m.return_type is not None and m.return_type.is_void
            and len(m.params) == 1 and m.params[0].array_dims > 0)


# --- lexer -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<badcomment>/\*)
  | (?P<str>\"\"\"(?:[^\\]|\\.)*?\"\"\"|"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<badstr>["'])
  | (?P<ident>(?:[^\W\d]|\$)(?:\w|\$)*)
  | (?P<num>\.?\d(?:[eEpP][+-]|[\w.])*)
  | (?P<ell>\.\.\.)
  | (?P<op>.)
""", re.S | re.X)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, num, str, op, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        start = m.start()
        if kind in ("badcomment", "badstr"):
            what = "comment" if kind == "badcomment" else "literal"
            raise ParseError(f"unterminated {what}", line, start - line_start + 1)
        if kind not in ("ws", "comment"):
            if kind == "ell":
                kind = "op"
            tokens.append(Token(kind, m.group(), line, start - line_start + 1))
        nl = text.count("\n", start, m.end())
        if nl:
            line += nl
            line_start = text.rindex("\n", start, m.end()) + 1
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# --- parser ----------------------------------------------------------------

_CLOSERS = {"(": ")", "[": "]", "{": "}"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "ident")

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message: str, expected: Iterable[str] = ()) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"{message}, found {found}", t.line, t.col,
                          frozenset(expected))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}", {text})
        return self.advance()

    def ident(self, what: str = "identifier") -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error(f"expected {what}", {what})
        self.advance()
        return t.text

    def qualified(self, allow_star: bool = False) -> str:
        parts = [self.ident()]
        while self.at("."):
            self.advance()
            if allow_star and self.at("*"):
                self.advance()
                parts.append("*")
                break
            parts.append(self.ident())
        return ".".join(parts)

    def skip_balanced(self) -> None:
        """Skip from an opening bracket to its matching closer."""
        stack = []
        while True:
            t = self.advance()
            if t.kind == "eof":
                raise ParseError("unbalanced braces: unexpected end of input",
                                 t.line, t.col, frozenset(stack[-1:]))
            if t.kind != "op":
                continue
            if t.text in _CLOSERS:
                stack.append(_CLOSERS[t.text])
            elif t.text in ")]}":
                if not stack or stack[-1] != t.text:
                    raise ParseError(f"unbalanced {t.text!r}", t.line, t.col,
                                     frozenset(stack[-1:]))
                stack.pop()
                if not stack:
                    return

    def skip_until(self, stops: set[str]) -> None:
        """Skip an expression up to (not including) a stop token at depth 0."""
        while True:
            t = self.tok
            if t.kind == "eof":
                raise self.error("unexpected end of input", stops)
            if t.kind == "op":
                if t.text in stops:
                    return
                if t.text in _CLOSERS:
                    self.skip_balanced()
                    continue
                if t.text in ")]}":
                    raise self.error(f"unbalanced {t.text!r}", stops)
            self.advance()

    # grammar

    def annotation(self) -> None:
        self.expect("@")
        self.qualified()
        if self.at("("):
            self.skip_balanced()

    def modifiers(self) -> frozenset[str]:
        mods = set()
        while True:
            t = self.tok
            if t.text == "@" and t.kind == "op":
                if self.peek().text == "interface":
                    break
                self.annotation()
            elif t.kind == "ident" and t.text in MODIFIERS:
                mods.add(t.text)
                self.advance()
            elif t.kind == "ident" and t.text in _OTHER_MODIFIERS:
                self.advance()
            elif (t.text == "non" and self.peek().text == "-"
                  and self.peek(2).text == "sealed"):
                self.i += 3
            else:
                break
        return frozenset(mods)

    def type_args(self) -> str:
        out: list[Token] = []
        depth = 0
        while True:
            t = self.tok
            if t.kind == "eof" or t.text in (";", "{", "}", "(", ")", "="):
                raise self.error("unterminated type arguments", {">"})
            self.advance()
            out.append(t)
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
                if depth == 0:
                    break
        text = []
        prev = None
        for t in out:
            if prev is not None and t.kind == "ident" and (
                    prev.kind == "ident" or prev.text == "?"):
                text.append(" ")
            text.append(t.text)
            prev = t
        return "".join(text)

    def type(self) -> TypeName:
        while self.at("@"):
            self.annotation()
        t = self.tok
        if t.kind != "ident" or (t.text in KEYWORDS and t.text not in PRIMITIVES):
            raise self.error("expected type", {"type"})
        self.advance()
        segments = [t.text]
        args = ""
        if self.at("<"):
            args += self.type_args()
        while self.at(".") and self.peek().kind == "ident":
            self.advance()
            segments.append(self.ident("type name"))
            if self.at("<"):
                args += self.type_args()
        return TypeName(tuple(segments), self.dims(), args)

    def dims(self) -> int:
        n = 0
        while self.at("[") and self.peek().text == "]":
            self.i += 2
            n += 1
        return n

    def type_list(self) -> list[TypeName]:
        out = [self.type()]
        while self.at(","):
            self.advance()
            out.append(self.type())
        return out

    def compilation_unit(self) -> dict:
        while self.at("@") and self.peek().text != "interface":
            self.annotation()
        package = None
        if self.at("package"):
            self.advance()
            package = self.qualified()
            self.expect(";")
        imports = []
        while self.at("import") or self.at(";"):
            if self.advance().text == ";":
                continue
            if self.at("static"):
                self.advance()
            imports.append(self.qualified(allow_star=True))
            self.expect(";")
        self.modifiers()
        if not (self.at("class") or self.at("interface")):
            raise self.error("expected type declaration", {"class", "interface"})
        kind = self.advance().text
        name = self.ident("type name")
        if self.at("<"):
            self.type_args()
        supers: list[TypeName] = []
        while self.at("extends") or self.at("implements"):
            self.advance()
            supers.extend(self.type_list())
        if self.at("permits"):
            self.advance()
            self.type_list()
        self.expect("{")
        methods: list[MethodSig] = []
        fields: list[FieldSig] = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("unbalanced braces: unterminated type body", {"}"})
            self.member(name, methods, fields)
        self.advance()
        return dict(package=package, imports=tuple(imports), kind=kind,
                    type_name=name, super_types=tuple(supers),
                    methods=tuple(methods), fields=tuple(fields))

    def _nested_start(self) -> bool:
        t = self.tok
        if t.kind == "op" and t.text == "@" and self.peek().text == "interface":
            return True
        if t.kind != "ident":
            return False
        if t.text in ("class", "interface", "enum"):
            return True
        return (t.text == "record" and self.peek().kind == "ident"
                and self.peek(2).text in ("(", "<"))

    def member(self, type_name: str, methods: list, fields: list) -> None:
        if self.at(";"):
            self.advance()
            return
        mods = self.modifiers()
        if self.at("{"):
            self.skip_balanced()
            return
        if self._nested_start():
            while not self.at("{"):
                if self.tok.kind == "eof" or self.at(";") or self.at("}"):
                    raise self.error("malformed nested type", {"{"})
                if self.at("(") or self.at("["):
                    self.skip_balanced()
                else:
                    self.advance()
            self.skip_balanced()
            return
        if self.at("<"):
            self.type_args()
        if self.tok.text == type_name and self.peek().text == "(":
            self.advance()
            params = self.params()
            throws = self.throws()
            self.method_tail()
            methods.append(MethodSig(type_name, mods, None, params, throws))
            return
        rtype = self.type()
        name = self.ident("member name")
        if self.at("("):
            params = self.params()
            extra = self.dims()
            if extra:
                rtype = TypeName(rtype.segments, rtype.array_dims + extra, rtype.args)
            throws = self.throws()
            self.method_tail()
            methods.append(MethodSig(name, mods, rtype, params, throws))
            return
        while True:
            dims = self.dims()
            ftype = rtype
            if dims:
                ftype = TypeName(rtype.segments, rtype.array_dims + dims, rtype.args)
            fields.append(FieldSig(name, ftype, mods))
            if self.at("="):
                self.advance()
                self._skip_initializer()
            if self.at(";"):
                self.advance()
                return
            self.expect(",")
            name = self.ident("field name")

    def _skip_initializer(self) -> None:
        while True:
            self.skip_until({",", ";"})
            if self.at(";"):
                return
            # a comma inside generic arguments does not start a new declarator
            if (self.peek().kind == "ident"
                    and self.peek(2).text in ("=", ",", ";", "[")):
                return
            self.advance()

    def params(self) -> tuple[TypeName, ...]:
        self.expect("(")
        out = []
        if self.at(")"):
            self.advance()
            return ()
        while True:
            self.modifiers()
            ptype = self.type()
            if self.at("..."):
                self.advance()
                ptype = TypeName(ptype.segments, ptype.array_dims + 1, ptype.args)
            if self.at("this"):
                self.advance()  # receiver parameter
            else:
                self.ident("parameter name")
                dims = self.dims()
                if dims:
                    ptype = TypeName(ptype.segments, ptype.array_dims + dims, ptype.args)
                out.append(ptype)
            if self.at(")"):
                self.advance()
                return tuple(out)
            if not self.at(","):
                raise self.error("malformed parameter list", {",", ")"})
            self.advance()

    def throws(self) -> tuple[TypeName, ...]:
        if not self.at("throws"):
            return ()
        self.advance()
        return tuple(self.type_list())

    def method_tail(self) -> None:
        if self.at("{"):
            self.skip_balanced()
        elif self.at(";"):
            self.advance()
        elif self.at("default"):
            self.advance()
            self.skip_until({";"})
            self.advance()
        else:
            raise self.error("expected method body", {"{", ";"})


def _decode(text: str | bytes) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 (byte {exc.start})") from None
    return text.lstrip("\ufeff")


def parse_source(text: str | bytes, path: str = "<string>") -> ComponentModel:
    """Parse component source into a :class:`ComponentModel`.

    Raises :class:`ParseError` for anything outside the accepted subset.
    """
    parts = _Parser(tokenize(_decode(text))).compilation_unit()
    return ComponentModel(path=path, **parts)


def parse_type(text: str) -> TypeName:
    """Parse a standalone type expression such as ``java.util.List<String>[]``."""
    p = _Parser(tokenize(_decode(text)))
    t = p.type()
    if p.tok.kind != "eof":
        raise p.error("trailing input after type", {"end of input"})
    return t


def extract_signatures(model: ComponentModel) -> str:
    """One sorted line per method signature; empty string for no methods."""
    lines = sorted(m.render() for m in model.methods)
    return "".join(line + "\n" for line in lines)
