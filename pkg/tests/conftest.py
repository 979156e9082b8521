import json
from pathlib import Path

import pytest

from kernelforms import jsonio

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    with open(FIXTURES / name, "r", encoding="utf-8") as handle:
        return jsonio.problem_from_json(json.load(handle))[1]


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def space_deg211():
    return load_fixture("space_deg211.json")


@pytest.fixture
def kernel_deg211():
    return load_fixture("kernel_deg211.json")


@pytest.fixture
def space_deg31():
    return load_fixture("space_deg31_indefinite.json")


@pytest.fixture
def space_deg31_euclidean():
    return load_fixture("space_deg31_euclidean.json")


@pytest.fixture
def space_even_scalar():
    return load_fixture("space_even_scalar.json")


@pytest.fixture
def space_gapped():
    return load_fixture("space_gapped.json")


@pytest.fixture
def space_zcolumn():
    return load_fixture("space_zcolumn.json")
