import pytest

from src.domain.errors import ParseError
from src.repository.configurations import ConfigurationRepository
from src.schemas import SearchParams
from src.services.finder import (
    find_configuration,
    quadruple_configuration,
    verify_configuration,
)
from src.services.groups import make_group
from src.services.triples import full_system


@pytest.fixture(scope="module")
def full_z25():
    return full_system(make_group([25]))


@pytest.fixture(scope="module")
def found(full_z25):
    return find_configuration(full_z25, SearchParams(t=2))


@pytest.fixture
def path(tmp_path):
    return tmp_path / "config.txt"


@pytest.fixture
def repository(path):
    return ConfigurationRepository(path)


def test_save_then_load(repository, full_z25, found):
    # Setup
    report = verify_configuration(full_z25, found)

    # Call method
    repository.save(found, report)
    result = repository.load()

    # Assertions
    assert result == found
    assert verify_configuration(full_z25, result) == report


def test_file_layout(repository, path):
    # Setup
    system = full_system(make_group([31]))
    cfg = quadruple_configuration(system, (1, 5, 11, 26))
    report = verify_configuration(system, cfg)

    # Call method
    repository.save(cfg, report)

    # Assertions
    lines = path.read_text().splitlines()
    assert lines[:8] == ["GROUP", "Z31", "T", "1", "Y_VECTORS", "16 6 27", "LAYERS", "L1"]
    assert lines[8] == "1 5 11 26"
    assert lines[9:11] == ["ELEMENTS", "1 5 6 11 16 26 27"]
    assert lines[-2] == "SUMMARY"
    assert lines[-1] == f"nu=7, spanned={report.spanned}, required=4, pass=true"


def test_truncated_file_is_rejected(repository, path, full_z25, found):
    # Setup
    repository.save(found, verify_configuration(full_z25, found))
    text = path.read_text()
    path.write_text(text[: text.index("TRIPLES") + 20])

    # Call method
    with pytest.raises(ParseError) as excinfo:
        repository.load()

    # Assertions
    assert "SUMMARY" in excinfo.value.detail


@pytest.mark.parametrize(
    "text",
    [
        "T\n1\nGROUP\nZ5\n",
        "GROUP\nZ5\nT\n1\nY_VECTORS\n0 1\nLAYERS\nL1\n0 1 4 2\nELEMENTS\n0 1 2 4\n"
        "TRIPLES\nSUMMARY\nnu=4, spanned=1, required=1, pass=true\n",
        "GROUP\nZ5\nT\n1\nY_VECTORS\n0 1 2\nLAYERS\nL2\n0 1 4 2\nELEMENTS\n0 1 2 4\n"
        "TRIPLES\nSUMMARY\nnu=4, spanned=1, required=1, pass=true\n",
        "GROUP\nZ5\nT\n1\nY_VECTORS\n0 1 2\nLAYERS\nL1\n0 1 4 2\nELEMENTS\n0 1 2 4\n"
        "TRIPLES\nSUMMARY\nnu=4\n",
        "GROUP\nZ5\nZ7\nT\n1\nY_VECTORS\nLAYERS\nELEMENTS\nTRIPLES\nSUMMARY\n"
        "nu=0, spanned=0, required=0, pass=false\n",
        "1 2 3\nGROUP\nZ5\n",
    ],
    ids=["order", "short-vector", "layer-number", "summary", "two-groups", "leading-content"],
)
def test_malformed_files_are_rejected(repository, path, text):
    # Setup
    path.write_text(text)

    # Call method
    with pytest.raises(ParseError):
        repository.load()
