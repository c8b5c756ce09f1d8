from pathlib import Path

import pytest

from specj import parse_source, parse_spec

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def ejb_spec():
    return parse_spec(fixture_text("ejb.specj.xml"))


@pytest.fixture
def lifecycle_spec():
    return parse_spec(fixture_text("android_lifecycle.specj.xml"))


@pytest.fixture
def android_spec():
    return parse_spec(fixture_text("android.specj.xml"))


@pytest.fixture
def bean_model():
    return parse_source(fixture_text("MyBean.java"), "MyBean.java")


@pytest.fixture
def lifecycle_model():
    return parse_source(fixture_text("Lifecycle.java"), "Lifecycle.java")
