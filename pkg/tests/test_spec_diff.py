import copy
import json
import random

import pytest

from specj import (Block, ModificationPlan, ParamSeq, PhysicalProperties, PlanConflict,
                   SpecDocument, apply_plan, diff_specs, parse_spec, serialize_spec)
from specj.spec_diff import BlockChange, Extensions, canonical

from specgen import mutate_spec, random_spec


def test_identity(ejb_spec):
    plan = diff_specs(ejb_spec, ejb_spec)
    assert plan.is_empty
    assert plan.render_text() == "no changes\n"
    assert apply_plan(ejb_spec, plan) == ejb_spec


def test_ejb_to_android(ejb_spec, android_spec):
    plan = diff_specs(ejb_spec, android_spec)
    assert plan.rename == "Android"
    assert plan.remove_blocks == ("ejbCreate", "ejbRemove")
    assert [b.name for b in plan.add_blocks] == ["onCreate", "onStart", "onRestart",
                                                 "onResume", "onPause", "onStop", "onDestroy"]
    assert plan.change_blocks == ()
    assert plan.remove_deps == ("javax.ejb.SessionBean", "javax.ejb.SessionContext")
    assert plan.add_deps == ("android.intent.action.MAIN",)
    assert plan.set_extensions is None
    assert apply_plan(ejb_spec, plan) == android_spec
    text = plan.render_text()
    assert "- block ejbCreate\n" in text
    assert "+ block void onCreate(Bundle)\n" in text
    assert "+ lib android.intent.action.MAIN\n" in text


def test_changed_block_and_extensions(ejb_spec):
    p = ejb_spec.properties
    changed = Block("ejbCreate", ParamSeq.of("String"), ParamSeq.of("void"),
                    failure="CreateException")
    b = SpecDocument("EJB", PhysicalProperties(
        blocks=(changed, p.blocks[1]), dependencies=p.dependencies,
        format="java", entry_point="main"))
    plan = diff_specs(ejb_spec, b)
    assert plan.change_blocks == (BlockChange("ejbCreate", changed),)
    assert plan.set_extensions == Extensions("java", "main", None)
    assert plan.rename is None
    assert apply_plan(ejb_spec, plan) == b


def test_random_round_trips():
    rng = random.Random(2024)
    for i in range(150):
        a = random_spec(rng)
        b = mutate_spec(rng, a) if i % 2 else random_spec(rng)
        plan = diff_specs(a, b)
        assert canonical(apply_plan(a, plan)) == canonical(b)
        assert ModificationPlan.from_dict(json.loads(json.dumps(plan.to_dict()))) == plan
        assert plan.is_empty == (a == b)


def test_conflicts(ejb_spec):
    with pytest.raises(PlanConflict) as info:
        apply_plan(ejb_spec, ModificationPlan(remove_blocks=("foo",)))
    assert info.value.subject == "foo"
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(change_blocks=(BlockChange("foo", Block("foo")),)))
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(add_blocks=(Block("ejbCreate"),)))
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(remove_blocks=("ejbCreate",),
                                              change_blocks=(BlockChange("ejbCreate",
                                                                         Block("ejbCreate")),)))
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(remove_deps=("a.b.C",)))
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(add_deps=("javax.ejb.SessionBean",)))
    with pytest.raises(PlanConflict):
        apply_plan(ejb_spec, ModificationPlan(add_deps=("a.B",), remove_deps=("a.B",)))


def test_input_not_mutated(ejb_spec, android_spec):
    before = serialize_spec(ejb_spec)
    snapshot = copy.deepcopy(ejb_spec)
    apply_plan(ejb_spec, diff_specs(ejb_spec, android_spec))
    assert ejb_spec == snapshot
    assert serialize_spec(ejb_spec) == before


def test_applied_result_serializes(ejb_spec, android_spec):
    out = apply_plan(ejb_spec, diff_specs(ejb_spec, android_spec))
    assert parse_spec(serialize_spec(out)) == out
