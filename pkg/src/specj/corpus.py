"""Batch verification of component directories and seeded synthetic corpora.

Corpus layout: each component is a ``<Name>.java`` file. A component may
ship a sidecar ``<Name>.classpath`` listing the classpath entries it brings
along (one per line, ``#`` annotations allowed); ``run_corpus`` appends
those entries to the shared classpath for that component only. Generated
corpora also carry ``MANIFEST.tsv`` with the ground truth for every file.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .conformance import (Classpath, MatchReport, VerifyOptions, control_blocks,
                          unparseable_report, verify_component)
from .errors import CorpusError, ParseError
from .scale import PropertyKind
from .source import SOURCE_FORMAT, parse_source
from .spec_model import SpecDocument
from .xclass import default_value

MANIFEST_NAME = "MANIFEST.tsv"
SIDECAR_SUFFIX = ".classpath"

CATEGORIES = ("conformant", "missing_method", "missing_import", "container_dep")


@dataclass(frozen=True)
class CorpusReport:
    total: int
    matched: int
    flagged: int
    dependency_only_failures: int
    reports: tuple[MatchReport, ...] = ()

    @classmethod
    def from_reports(cls, reports) -> CorpusReport:
        reports = tuple(sorted(reports, key=lambda r: r.component))
        matched = sum(r.verdict for r in reports)
        dep_only = sum(r.failing == [PropertyKind.DEPENDENCIES] for r in reports)
        return cls(len(reports), matched, len(reports) - matched, dep_only, reports)

    def to_dict(self) -> dict:
        return {"total": self.total, "matched": self.matched, "flagged": self.flagged,
                "dependency_only_failures": self.dependency_only_failures,
                "reports": [r.to_dict() for r in self.reports]}

    @classmethod
    def from_dict(cls, d: dict) -> CorpusReport:
        return cls(d["total"], d["matched"], d["flagged"],
                   d["dependency_only_failures"],
                   tuple(MatchReport.from_dict(r) for r in d["reports"]))

    def render_text(self) -> str:
        lines = [f"total: {self.total}", f"matched: {self.matched}",
                 f"flagged: {self.flagged}",
                 f"dependency-only failures: {self.dependency_only_failures}"]
        for r in self.reports:
            if r.verdict:
                continue
            why = "; ".join(f"{f.code}({f.subject})" for f in r.findings)
            lines.append(f"  FLAGGED {r.component} [{r.level.label}] {why}")
        return "\n".join(lines) + "\n"


def _component_files(root: str, recursive: bool) -> list[str]:
    if not recursive:
        names = sorted(os.listdir(root))
        return [n for n in names
                if n.endswith(".java") and os.path.isfile(os.path.join(root, n))]
    out = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        rel = os.path.relpath(dirpath, root)
        for n in sorted(filenames):
            if n.endswith(".java"):
                out.append(n if rel == "." else os.path.join(rel, n))
    return sorted(p.replace(os.sep, "/") for p in out)


def read_sidecar(source_path: str) -> list[str]:
    side = os.path.splitext(source_path)[0] + SIDECAR_SUFFIX
    if not os.path.isfile(side):
        return []
    base = os.path.dirname(side)
    entries = []
    with open(side, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("//"):
                continue
            path, sep, sub = line.partition("#")
            joined = os.path.join(base, path)
            if os.path.exists(joined):
                line = joined + sep + sub
            entries.append(line)
    return entries


def verify_file(spec: SpecDocument, path: str, opts: VerifyOptions,
                label: str | None = None, use_sidecar: bool = True) -> MatchReport:
    """Parse and verify one source file. Unparseable files yield a Format failure."""
    label = label or path
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        model = parse_source(data, label)
    except ParseError as exc:
        return unparseable_report(spec, label, exc)
    if use_sidecar:
        extra = read_sidecar(path)
        if extra:
            opts = replace(opts, classpath=opts.classpath + tuple(extra))
    return verify_component(spec, model, opts)


def run_corpus(directory: str, spec: SpecDocument, opts: VerifyOptions | None = None,
               recursive: bool = False, jobs: int = 1) -> CorpusReport:
    opts = opts or VerifyOptions()
    try:
        files = _component_files(directory, recursive)
    except OSError as exc:
        raise CorpusError(f"cannot read corpus directory {directory}: {exc}") from None

    def one(rel: str) -> MatchReport:
        try:
            return verify_file(spec, os.path.join(directory, rel), opts, label=rel)
        except OSError as exc:
            raise CorpusError(f"cannot read {rel}: {exc}") from None

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, files))
    else:
        reports = [one(f) for f in files]
    return CorpusReport.from_reports(reports)


# --- synthetic corpora -----------------------------------------------------

@dataclass(frozen=True)
class CorpusRecipe:
    seed: int = 0
    conformant: int = 0
    missing_method: int = 0
    missing_import: int = 0
    container_dep: int = 0
    count: int | None = None

    def __post_init__(self):
        counts = [self.conformant, self.missing_method, self.missing_import,
                  self.container_dep]
        if any(c < 0 for c in counts):
            raise CorpusError("recipe counts must be non-negative")
        if self.count is None:
            object.__setattr__(self, "count", sum(counts))
        elif self.count != sum(counts):
            raise CorpusError(f"recipe counts sum to {sum(counts)}, not {self.count}")

    def categories(self) -> list[str]:
        return [c for c in CATEGORIES for _ in range(getattr(self, c))]

    @classmethod
    def parse(cls, text: str) -> CorpusRecipe:
        """Build from ``key=value`` pairs separated by commas or whitespace."""
        kwargs = {}
        for item in text.replace(",", " ").split():
            key, sep, val = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in ("seed", "count") + CATEGORIES:
                raise CorpusError(f"bad recipe item {item!r}")
            try:
                kwargs[key] = int(val)
            except ValueError:
                raise CorpusError(f"bad recipe value {item!r}") from None
        return cls(**kwargs)


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    category: str
    strict: bool  # expected verdict with strict dependencies, nothing provided
    lenient: bool  # expected verdict with dependencies not resolved


def expected_verdict(entry: ManifestEntry, spec: SpecDocument,
                     opts: VerifyOptions) -> bool:
    """Ground-truth verdict for a generated component under ``opts``."""
    if entry.category == "container_dep" and opts.strict_dependencies:
        cp = Classpath(opts.classpath)
        return all(d in opts.provided_libs or cp.resolves(d) for d in spec.dependencies)
    return entry.lenient


def write_manifest(entries, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# path\tcategory\tstrict\tlenient\n")
        for e in entries:
            fh.write(f"{e.path}\t{e.category}\t{str(e.strict).lower()}\t"
                     f"{str(e.lenient).lower()}\n")


def read_manifest(path: str) -> list[ManifestEntry]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4 or parts[1] not in CATEGORIES:
                raise CorpusError(f"{path}:{n}: malformed manifest record")
            out.append(ManifestEntry(parts[0], parts[1], parts[2] == "true",
                                     parts[3] == "true"))
    return out


_WORDS = ("Account", "Order", "Cart", "Ledger", "Invoice", "Session", "Catalog",
          "Payment", "Report", "Inventory", "Customer", "Shipping")
_EXTRA_TYPES = ("int", "long", "String", "boolean", "double", "java.util.List<String>")


def _removable_block(spec: SpecDocument, rng: random.Random) -> str:
    p = spec.properties
    pinned = set(p.design_order or ()) | control_blocks(spec) | {p.entry_point}
    names = [b.name for b in p.blocks]
    for n in names:
        if n.startswith(("set", "get")) and len(n) > 3:
            pinned.add(n)
    eligible = [n for n in names if n not in pinned] or names
    return rng.choice(eligible)


def _noise_body(rng: random.Random, indent: str) -> list[str]:
    stmts = [
        'String s = "{not a brace}";',
        "int[] xs = {1, 2, 3};",
        "for (int i = 0; i < 3; i++) { count += i; }",
        "if (count > 2) { count = 0; } else { count--; }",
        "Runnable r = new Runnable() { public void run() {} };",
        "char c = '}';",
        "// trailing comment }",
    ]
    return [indent + s for s in rng.sample(stmts, rng.randint(0, 3))]


def _component_source(spec: SpecDocument, name: str, category: str,
                      rng: random.Random, drop_block: str | None,
                      drop_import: str | None) -> str:
    p = spec.properties
    ind = "    "
    imports = [d for d in p.dependencies if d != drop_import]
    extras = rng.sample(["java.util.List", "java.io.Serializable", "java.util.Map"],
                        rng.randint(0, 2))
    # noise imports must never restore a dependency the category drops
    extras = [e for e in extras if e not in p.dependencies]
    lines = ["package corpus.generated;", ""]
    lines += [f"import {i};" for i in imports + extras]
    lines += ["", f"/** Generated {category} component. */",
              f"public class {name} {{", f"{ind}private int count;"]
    for b in p.blocks:
        if b.storage is not None:
            lines.append(f"{ind}private {b.storage.type} {b.storage.name};")
    for _ in range(rng.randint(0, 2)):
        t = rng.choice(_EXTRA_TYPES)
        lines.append(f"{ind}protected {t} extra{rng.randint(0, 999)};")
    lines.append("")
    lines.append(f"{ind}public {name}() {{}}")
    methods = []
    for b in p.blocks:
        if b.name == drop_block:
            continue
        params = [f"{t or 'Object'} a{j}" for j, t in enumerate(b.data_input.types)]
        ret = b.return_type or "void"
        head = f"{ind}public {ret} {b.name}({', '.join(params)})"
        if b.failure:
            head += f" throws {b.failure}"
        body = _noise_body(rng, ind * 2)
        if ret != "void":
            body.append(f"{ind * 2}return {default_value(ret)};")
        methods.append([head + " {"] + body + [ind + "}"])
        if rng.random() < 0.3:
            # a non-matching overload must not disturb block matching
            extra = params + ["long overloadArg"]
            methods.append([f"{ind}public void {b.name}({', '.join(extra)}) {{}}"])
    if p.entry_point == "main":
        methods.append([f"{ind}public static void main(String[] args) {{",
                        f"{ind * 2}new {name}();", f"{ind}}}"])
    for _ in range(rng.randint(0, 2)):
        methods.append([f"{ind}private int helper{rng.randint(0, 999)}(int v) {{",
                        f"{ind * 2}return v + count;", f"{ind}}}"])
    rng.shuffle(methods)
    for m in methods:
        lines += [""] + m
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sidecar_entries(spec: SpecDocument, category: str) -> list[str]:
    p = spec.properties
    entries = [] if category == "container_dep" else list(p.dependencies)
    for b in p.blocks:
        if b.file is not None:
            sub = f"#{b.file.sub_type}" if b.file.sub_type else ""
            entries.append(b.file.filename + sub)
    if p.entry_point and p.entry_point != "main" and p.block(p.entry_point) is None:
        entries.append(p.entry_point)
    return entries


def generate_corpus(recipe: CorpusRecipe, spec: SpecDocument,
                    out: str) -> list[ManifestEntry]:
    """Write ``recipe.count`` components plus ``MANIFEST.tsv`` into ``out``.

    The same seed always produces byte-identical files.
    """
    if recipe.missing_method and not spec.blocks:
        raise CorpusError("missing_method components need a spec with blocks")
    if (recipe.missing_import or recipe.container_dep) and not spec.dependencies:
        raise CorpusError("missing_import/container_dep components need dependencies")
    fmt = spec.properties.format
    if fmt is not None and fmt.strip().lower() != SOURCE_FORMAT:
        raise CorpusError(f"generated sources cannot satisfy format {fmt!r}")
    rng = random.Random(recipe.seed)
    cats = recipe.categories()
    rng.shuffle(cats)
    width = max(3, len(str(len(cats))))
    try:
        os.makedirs(out, exist_ok=True)
        entries = []
        for i, cat in enumerate(cats):
            name = f"{rng.choice(_WORDS)}Bean{i:0{width}d}"
            drop_block = _removable_block(spec, rng) if cat == "missing_method" else None
            drop_import = rng.choice(spec.dependencies) if cat == "missing_import" else None
            text = _component_source(spec, name, cat, rng, drop_block, drop_import)
            with open(os.path.join(out, name + ".java"), "w", encoding="utf-8",
                      newline="\n") as fh:
                fh.write(text)
            side = _sidecar_entries(spec, cat)
            if side:
                with open(os.path.join(out, name + SIDECAR_SUFFIX), "w",
                          encoding="utf-8", newline="\n") as fh:
                    fh.write("".join(e + "\n" for e in side))
            good = cat in ("conformant", "container_dep")
            entries.append(ManifestEntry(name + ".java", cat,
                                         strict=cat == "conformant", lenient=good))
        entries.sort(key=lambda e: e.path)
        write_manifest(entries, os.path.join(out, MANIFEST_NAME))
    except OSError as exc:
        raise CorpusError(f"cannot write corpus to {out}: {exc}") from None
    return entries
