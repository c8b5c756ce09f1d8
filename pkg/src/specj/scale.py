"""Compatibility scale classification.

Properties are grouped into three cumulative tiers. A tier holds when none
of its properties failed; the reported level is the highest tier reached
with every lower tier also holding.

    CompileTime  Format, Dependencies
    RunTime      DataIO (signatures, files, storage), FaultHandler
    Usage        EntryPoint, ControlFlow, Design

``FULLY_COMPATIBLE`` needs behavioural evidence and is never returned.
"""

from __future__ import annotations

import enum
from collections import Counter
from typing import Iterable

from .errors import MalformedResults


class PropertyKind(str, enum.Enum):
    FORMAT = "Format"
    ENTRY_POINT = "EntryPoint"
    FAULT_HANDLER = "FaultHandler"
    DEPENDENCIES = "Dependencies"
    DATA_IO = "DataIO"
    CONTROL_FLOW = "ControlFlow"
    DESIGN = "Design"


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_SPECIFIED = "not-specified"


class CompatLevel(enum.IntEnum):
    NOT_COMPATIBLE = 0
    COMPILE_TIME = 1
    RUN_TIME = 2
    USAGE = 3
    FULLY_COMPATIBLE = 4

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> CompatLevel:
        for level, text in _LABELS.items():
            if text == label:
                return level
        raise ValueError(f"unknown compatibility level {label!r}")


_LABELS = {
    CompatLevel.NOT_COMPATIBLE: "NotCompatible",
    CompatLevel.COMPILE_TIME: "CompileTime",
    CompatLevel.RUN_TIME: "RunTime",
    CompatLevel.USAGE: "Usage",
    CompatLevel.FULLY_COMPATIBLE: "FullyCompatible",
}

TIERS: tuple[tuple[CompatLevel, frozenset[PropertyKind]], ...] = (
    (CompatLevel.COMPILE_TIME,
     frozenset({PropertyKind.FORMAT, PropertyKind.DEPENDENCIES})),
    (CompatLevel.RUN_TIME,
     frozenset({PropertyKind.DATA_IO, PropertyKind.FAULT_HANDLER})),
    (CompatLevel.USAGE,
     frozenset({PropertyKind.ENTRY_POINT, PropertyKind.CONTROL_FLOW,
                PropertyKind.DESIGN})),
)


def classify_statuses(statuses: dict[PropertyKind, Status]) -> CompatLevel:
    if set(statuses) != set(PropertyKind):
        missing = sorted(k.value for k in set(PropertyKind) - set(statuses))
        raise MalformedResults(f"missing property kinds: {missing}")
    level = CompatLevel.NOT_COMPATIBLE
    for tier, kinds in TIERS:
        if any(statuses[k] is Status.FAIL for k in kinds):
            break
        level = tier
    return level


def classify(results: Iterable) -> CompatLevel:
    """Level for a list of property results (objects with ``kind``/``status``)."""
    results = list(results)
    counts = Counter(PropertyKind(r.kind) for r in results)
    dupes = sorted(k.value for k, n in counts.items() if n > 1)
    if dupes:
        raise MalformedResults(f"duplicated property kinds: {dupes}")
    return classify_statuses({PropertyKind(r.kind): Status(r.status) for r in results})
