import json
import os
import random

import pytest

from specj import (CorpusRecipe, CorpusReport, ManifestEntry, PropertyKind, SpecDocument,
                   VerifyOptions, generate_corpus, run_corpus)
from specj.corpus import MANIFEST_NAME, expected_verdict, read_manifest, write_manifest
from specj.errors import CorpusError

from specgen import random_spec

EJB_LIBS = frozenset({"javax.ejb.SessionBean", "javax.ejb.SessionContext"})
STRICT = VerifyOptions(strict_dependencies=True)
PROVIDED = VerifyOptions(provided_libs=EJB_LIBS, strict_dependencies=True)


def _tree(path):
    out = {}
    for name in sorted(os.listdir(path)):
        with open(os.path.join(path, name), "rb") as fh:
            out[name] = fh.read()
    return out


def test_empty_directory(tmp_path, ejb_spec):
    report = run_corpus(str(tmp_path), ejb_spec)
    assert (report.total, report.matched, report.flagged,
            report.dependency_only_failures) == (0, 0, 0, 0)


def test_missing_directory(tmp_path, ejb_spec):
    with pytest.raises(CorpusError):
        run_corpus(str(tmp_path / "nope"), ejb_spec)


def test_false_negative_mechanism(tmp_path, ejb_spec):
    recipe = CorpusRecipe(seed=3, conformant=15, missing_method=3, container_dep=2)
    entries = generate_corpus(recipe, ejb_spec, str(tmp_path))
    assert len(entries) == 20
    strict = run_corpus(str(tmp_path), ejb_spec, STRICT)
    assert (strict.total, strict.matched, strict.flagged,
            strict.dependency_only_failures) == (20, 15, 5, 2)
    provided = run_corpus(str(tmp_path), ejb_spec, PROVIDED)
    assert (provided.matched, provided.flagged, provided.dependency_only_failures) == (17, 3, 0)
    by_path = {r.component: r for r in strict.reports}
    for e in entries:
        report = by_path[e.path]
        assert report.verdict == e.strict
        if e.category == "container_dep":
            assert report.failing == [PropertyKind.DEPENDENCIES]
        if e.category == "missing_method":
            assert report.failing == [PropertyKind.DATA_IO]
            assert [f.code for f in report.findings] == ["MissingMethod"]


def test_missing_import_category(tmp_path, ejb_spec):
    recipe = CorpusRecipe(seed=8, conformant=2, missing_import=3, container_dep=1)
    generate_corpus(recipe, ejb_spec, str(tmp_path))
    lenient = run_corpus(str(tmp_path), ejb_spec)
    assert (lenient.matched, lenient.flagged) == (3, 3)
    strict = run_corpus(str(tmp_path), ejb_spec, STRICT)
    provided = run_corpus(str(tmp_path), ejb_spec, PROVIDED)
    # providing the container libraries removes exactly the container_dep failures
    assert strict.dependency_only_failures - provided.dependency_only_failures == 1
    assert provided.dependency_only_failures == 3


def test_generation_is_deterministic(tmp_path, ejb_spec):
    recipe = CorpusRecipe(seed=42, conformant=4, missing_method=2, missing_import=1,
                          container_dep=2)
    generate_corpus(recipe, ejb_spec, str(tmp_path / "a"))
    generate_corpus(recipe, ejb_spec, str(tmp_path / "b"))
    generate_corpus(CorpusRecipe(seed=43, conformant=4, missing_method=2, missing_import=1,
                                 container_dep=2), ejb_spec, str(tmp_path / "c"))
    assert _tree(tmp_path / "a") == _tree(tmp_path / "b")
    assert _tree(tmp_path / "a") != _tree(tmp_path / "c")


@pytest.mark.parametrize("category", ["conformant", "missing_method", "missing_import",
                                      "container_dep"])
def test_single_component_recipes(tmp_path, ejb_spec, category):
    recipe = CorpusRecipe(seed=1, **{category: 1})
    (entry,) = generate_corpus(recipe, ejb_spec, str(tmp_path))
    assert entry.category == category
    for opts in (VerifyOptions(), STRICT, PROVIDED):
        report = run_corpus(str(tmp_path), ejb_spec, opts)
        assert report.matched == int(expected_verdict(entry, ejb_spec, opts))


def test_ground_truth_on_random_specs(tmp_path):
    rng = random.Random(31)
    checked = 0
    for i in range(25):
        spec = random_spec(rng)
        if spec.properties.format not in (None, "java", "Java"):
            continue
        kw = {"conformant": rng.randint(0, 3)}
        if spec.blocks:
            kw["missing_method"] = rng.randint(0, 2)
        if spec.dependencies:
            kw["missing_import"] = rng.randint(0, 2)
            kw["container_dep"] = rng.randint(0, 2)
        out = tmp_path / f"c{i}"
        entries = generate_corpus(CorpusRecipe(seed=i, **kw), spec, str(out))
        for opts in (VerifyOptions(), STRICT):
            report = run_corpus(str(out), spec, opts)
            got = {r.component: r.verdict for r in report.reports}
            for e in entries:
                assert got[e.path] == expected_verdict(e, spec, opts), (e, spec)
                checked += 1
    assert checked > 50


def test_jobs_do_not_change_result(tmp_path, ejb_spec):
    generate_corpus(CorpusRecipe(seed=5, conformant=6, missing_method=2, container_dep=2),
                    ejb_spec, str(tmp_path))
    assert run_corpus(str(tmp_path), ejb_spec, STRICT, jobs=4) == \
        run_corpus(str(tmp_path), ejb_spec, STRICT)


def test_manifest_round_trip(tmp_path, ejb_spec):
    entries = generate_corpus(CorpusRecipe(seed=2, conformant=2, container_dep=1), ejb_spec,
                              str(tmp_path))
    assert read_manifest(str(tmp_path / MANIFEST_NAME)) == entries
    other = [ManifestEntry("X.java", "missing_import", False, False)]
    write_manifest(other, str(tmp_path / "m.tsv"))
    assert read_manifest(str(tmp_path / "m.tsv")) == other
    (tmp_path / "bad.tsv").write_text("X.java\tweird\ttrue\ttrue\n")
    with pytest.raises(CorpusError):
        read_manifest(str(tmp_path / "bad.tsv"))


def test_unparseable_component_is_flagged(tmp_path, ejb_spec):
    (tmp_path / "Broken.java").write_text("public class Broken { void f( }")
    report = run_corpus(str(tmp_path), ejb_spec)
    assert (report.total, report.flagged) == (1, 1)
    (r,) = report.reports
    assert r.failing == [PropertyKind.FORMAT]
    assert r.findings[0].code == "ParseError"


def test_recursive_listing(tmp_path, ejb_spec):
    generate_corpus(CorpusRecipe(seed=1, conformant=2), ejb_spec, str(tmp_path / "sub"))
    assert run_corpus(str(tmp_path), ejb_spec).total == 0
    report = run_corpus(str(tmp_path), ejb_spec, recursive=True)
    assert report.total == 2 and report.matched == 2
    assert all(r.component.startswith("sub/") for r in report.reports)


def test_report_serialization(tmp_path, ejb_spec):
    generate_corpus(CorpusRecipe(seed=9, conformant=2, missing_method=1), ejb_spec,
                    str(tmp_path))
    report = run_corpus(str(tmp_path), ejb_spec)
    again = CorpusReport.from_dict(json.loads(json.dumps(report.to_dict())))
    assert again == report
    text = report.render_text()
    assert "flagged: 1" in text and "MissingMethod" in text


def test_recipe_validation(ejb_spec, tmp_path):
    assert CorpusRecipe.parse("seed=4, conformant=2 container-dep=1") == \
        CorpusRecipe(seed=4, conformant=2, container_dep=1)
    for bad in ("conformant=-1", "oops=2", "conformant", "conformant=x"):
        with pytest.raises(CorpusError):
            CorpusRecipe.parse(bad)
    with pytest.raises(CorpusError):
        CorpusRecipe(conformant=1, count=3)
    with pytest.raises(CorpusError):
        generate_corpus(CorpusRecipe(missing_method=1), SpecDocument("E"), str(tmp_path))
