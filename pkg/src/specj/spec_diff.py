"""Modification plans between two SpecJ documents.

Blocks are keyed by name and dependencies by path; there is no rename
detection. Applying ``diff_specs(a, b)`` to ``a`` yields ``b`` up to block
and dependency order (compare with :func:`canonical`).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from .errors import PlanConflict
from .spec_model import Block, FileReq, Param, ParamSeq, SpecDocument, StorageReq


@dataclass(frozen=True)
class Extensions:
    format: str | None = None
    entry_point: str | None = None
    design_order: tuple[str, ...] | None = None

    @classmethod
    def of(cls, spec: SpecDocument) -> Extensions:
        p = spec.properties
        return cls(p.format, p.entry_point, p.design_order)


@dataclass(frozen=True)
class BlockChange:
    name: str
    block: Block


@dataclass(frozen=True)
class ModificationPlan:
    add_blocks: tuple[Block, ...] = ()
    remove_blocks: tuple[str, ...] = ()
    change_blocks: tuple[BlockChange, ...] = ()
    add_deps: tuple[str, ...] = ()
    remove_deps: tuple[str, ...] = ()
    set_extensions: Extensions | None = None
    rename: str | None = None

    @property
    def is_empty(self) -> bool:
        return self == ModificationPlan()

    def to_dict(self) -> dict:
        return {
            "rename": self.rename,
            "add_blocks": [_block_dict(b) for b in self.add_blocks],
            "remove_blocks": list(self.remove_blocks),
            "change_blocks": [{"name": c.name, "block": _block_dict(c.block)}
                              for c in self.change_blocks],
            "add_deps": list(self.add_deps),
            "remove_deps": list(self.remove_deps),
            "set_extensions": (None if self.set_extensions is None
                               else asdict(self.set_extensions)),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ModificationPlan:
        ext = d.get("set_extensions")
        if ext is not None:
            order = ext.get("design_order")
            ext = Extensions(ext.get("format"), ext.get("entry_point"),
                             None if order is None else tuple(order))
        return cls(
            add_blocks=tuple(_block_from(b) for b in d.get("add_blocks", ())),
            remove_blocks=tuple(d.get("remove_blocks", ())),
            change_blocks=tuple(BlockChange(c["name"], _block_from(c["block"]))
                                for c in d.get("change_blocks", ())),
            add_deps=tuple(d.get("add_deps", ())),
            remove_deps=tuple(d.get("remove_deps", ())),
            set_extensions=ext,
            rename=d.get("rename"),
        )

    def render_text(self) -> str:
        lines = []
        if self.rename is not None:
            lines.append(f"rename type -> {self.rename}")
        lines += [f"- block {n}" for n in self.remove_blocks]
        lines += [f"+ block {_sig(b)}" for b in self.add_blocks]
        lines += [f"~ block {c.name} -> {_sig(c.block)}" for c in self.change_blocks]
        lines += [f"- lib {d}" for d in self.remove_deps]
        lines += [f"+ lib {d}" for d in self.add_deps]
        if self.set_extensions is not None:
            e = self.set_extensions
            order = None if e.design_order is None else " -> ".join(e.design_order)
            lines.append(f"= extensions format={e.format} entry_point={e.entry_point} "
                         f"design_order={order}")
        return "".join(line + "\n" for line in lines) or "no changes\n"


def _sig(b: Block) -> str:
    ret = b.return_type or "?"
    text = f"{ret} {b.name}({', '.join(t or '?' for t in b.data_input.types)})"
    if b.failure:
        text += f" throws {b.failure}"
    return text


def _block_dict(b: Block) -> dict:
    return asdict(b)


def _block_from(d: dict) -> Block:
    def seq(s):
        return ParamSeq(tuple(Param(**p) for p in s["params"]))
    return Block(
        d["name"], seq(d["data_input"]), seq(d["data_output"]), d.get("failure"),
        FileReq(**d["file"]) if d.get("file") else None,
        StorageReq(**d["storage"]) if d.get("storage") else None,
    )


def diff_specs(a: SpecDocument, b: SpecDocument) -> ModificationPlan:
    old = {blk.name: blk for blk in a.blocks}
    new = {blk.name: blk for blk in b.blocks}
    old_deps, new_deps = set(a.dependencies), set(b.dependencies)
    ext_a, ext_b = Extensions.of(a), Extensions.of(b)
    return ModificationPlan(
        add_blocks=tuple(blk for blk in b.blocks if blk.name not in old),
        remove_blocks=tuple(blk.name for blk in a.blocks if blk.name not in new),
        change_blocks=tuple(BlockChange(blk.name, blk) for blk in b.blocks
                            if blk.name in old and old[blk.name] != blk),
        add_deps=tuple(d for d in b.dependencies if d not in old_deps),
        remove_deps=tuple(d for d in a.dependencies if d not in new_deps),
        set_extensions=None if ext_a == ext_b else ext_b,
        rename=None if a.name == b.name else b.name,
    )


def _check_plan(plan: ModificationPlan) -> None:
    names = ([b.name for b in plan.add_blocks] + list(plan.remove_blocks)
             + [c.name for c in plan.change_blocks])
    seen = set()
    for n in names:
        if n in seen:
            raise PlanConflict(n, "block named in more than one edit")
        seen.add(n)
    both = set(plan.add_deps) & set(plan.remove_deps)
    if both:
        raise PlanConflict(sorted(both)[0], "dependency both added and removed")


def apply_plan(spec: SpecDocument, plan: ModificationPlan) -> SpecDocument:
    """Return a new document with ``plan`` applied; ``spec`` is not modified."""
    _check_plan(plan)
    blocks = {b.name: b for b in spec.blocks}
    for name in plan.remove_blocks:
        if name not in blocks:
            raise PlanConflict(name, "no such block to remove")
    for c in plan.change_blocks:
        if c.name not in blocks:
            raise PlanConflict(c.name, "no such block to change")
        if c.block.name != c.name:
            raise PlanConflict(c.name, "changed block must keep its name")
    for b in plan.add_blocks:
        if b.name in blocks and b.name not in plan.remove_blocks:
            raise PlanConflict(b.name, "block already exists")
    deps = list(spec.dependencies)
    for d in plan.remove_deps:
        if d not in deps:
            raise PlanConflict(d, "no such dependency to remove")
    for d in plan.add_deps:
        if d in deps and d not in plan.remove_deps:
            raise PlanConflict(d, "dependency already present")

    removed = set(plan.remove_blocks)
    changed = {c.name: c.block for c in plan.change_blocks}
    new_blocks = [changed.get(b.name, b) for b in spec.blocks if b.name not in removed]
    new_blocks += plan.add_blocks
    dropped = set(plan.remove_deps)
    new_deps = [d for d in deps if d not in dropped] + list(plan.add_deps)
    props = spec.properties
    if plan.set_extensions is not None:
        e = plan.set_extensions
        props = replace(props, format=e.format, entry_point=e.entry_point,
                        design_order=e.design_order)
    props = replace(props, blocks=tuple(new_blocks), dependencies=tuple(new_deps))
    name = spec.name if plan.rename is None else plan.rename
    return SpecDocument(name, props)


def canonical(spec: SpecDocument) -> SpecDocument:
    """Same document with blocks sorted by name and dependencies sorted."""
    p = spec.properties
    return SpecDocument(spec.name, replace(
        p, blocks=tuple(sorted(p.blocks, key=lambda b: b.name)),
        dependencies=tuple(sorted(p.dependencies))))
