"""Static verification of component source against SpecJ physical properties."""

from importlib import resources

from .conformance import (Classpath, Finding, MatchReport, PropertyResult,
                          VerifyOptions, match_block, match_dependencies,
                          match_design, match_encapsulation, match_entry_point,
                          match_files, verify_component)
from .corpus import (CorpusRecipe, CorpusReport, ManifestEntry, generate_corpus,
                     run_corpus)
from .errors import (DuplicateBlock, InvalidIdentifier, MalformedResults,
                     MalformedXml, ParseError, PlanConflict, SchemaError, SpecError)
from .scale import CompatLevel, PropertyKind, Status, classify
from .source import ComponentModel, MethodSig, TypeName, extract_signatures, parse_source
from .spec_diff import ModificationPlan, apply_plan, diff_specs
from .spec_model import (Block, Diagnostic, FileReq, Param, ParamSeq, PhysicalProperties,
                         SpecDocument, StorageReq, parse_spec, serialize_spec,
                         validate_spec)
from .xclass import HarnessSource, emit_xclass

__version__ = "0.1.0"

__all__ = [
    "Block", "Classpath", "CompatLevel", "ComponentModel", "CorpusRecipe", "CorpusReport",
    "Diagnostic", "DuplicateBlock", "FileReq", "Finding", "HarnessSource",
    "InvalidIdentifier", "MalformedResults", "MalformedXml", "ManifestEntry",
    "MatchReport", "MethodSig", "ModificationPlan", "Param", "ParamSeq", "ParseError",
    "PhysicalProperties", "PlanConflict", "PropertyKind", "PropertyResult", "SchemaError",
    "SpecDocument", "SpecError", "Status", "StorageReq", "TypeName", "VerifyOptions",
    "apply_plan", "classify", "diff_specs", "ejb_spec_text", "emit_xclass",
    "extract_signatures", "generate_corpus", "match_block", "match_dependencies",
    "match_design", "match_encapsulation", "match_entry_point", "match_files",
    "parse_source", "parse_spec", "run_corpus", "serialize_spec", "validate_spec",
    "verify_component",
]


def ejb_spec_text() -> str:
    """The bundled EJB session-bean spec (two lifecycle blocks, two libraries)."""
    return resources.files(__name__).joinpath("data/ejb.specj.xml").read_text("utf-8")
