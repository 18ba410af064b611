import json

import pytest

from main import run
from src.repository.hypergraphs import HypergraphRepository
from src.repository.triples import TripleSystemRepository
from src.services.groups import make_group
from src.services.hypergraphs import fano_plane
from src.services.triples import build_system, full_system


@pytest.fixture
def full_file(tmp_path):
    def write(n: int):
        path = tmp_path / f"full_z{n}.txt"
        TripleSystemRepository(path).save(full_system(make_group([n])))
        return str(path)

    return write


@pytest.fixture
def empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    TripleSystemRepository(path).save(build_system(make_group([9]), []))
    return str(path)


def stdout_of(capsys) -> str:
    return capsys.readouterr().out


def test_gen_full(tmp_path, capsys):
    # Setup
    output = tmp_path / "z7.txt"

    # Call method
    code = run(["gen", "--group", "Z7", "--full", "--output", str(output)])

    # Assertions
    assert code == 0
    assert stdout_of(capsys).strip() == "n=7 edges=49 density=1.000000"
    assert len(TripleSystemRepository(output).load()) == 49


def test_gen_random(tmp_path, capsys):
    # Setup
    output = tmp_path / "random.txt"

    # Call method
    code = run(
        ["gen", "--group", "Z2xZ5", "--density", "0.4", "--seed", "1", "--output", str(output)]
    )

    # Assertions
    assert code == 0
    assert "edges=40" in stdout_of(capsys)
    assert output.read_text().splitlines()[1] == "# sampler=pcg64-choice seed=1 density=0.4"
    assert len(TripleSystemRepository(output).load()) == 40


def test_gen_to_stdout(capsys):
    # Call method
    code = run(["gen", "--group", "Z3", "--full"])

    # Assertions
    lines = stdout_of(capsys).splitlines()
    assert code == 0
    assert lines[0] == "Z3"
    assert lines[1] == "# n=3 edges=9 density=1.000000"
    assert len(lines) == 11


def test_gen_rejects_bad_group(capsys):
    # Call method
    code = run(["gen", "--group", "Z0", "--full"])

    # Assertions
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_gen_rejects_bad_density(capsys):
    assert run(["gen", "--group", "Z5", "--density", "1.5"]) == 2


def test_gen_rejects_negative_seed(tmp_path, capsys):
    # Setup
    output = tmp_path / "random.txt"

    # Call method
    code = run(
        ["gen", "--group", "Z5", "--density", "0.5", "--seed", "-1", "--output", str(output)]
    )

    # Assertions
    assert code == 2
    assert "seed -1 is negative" in capsys.readouterr().err
    assert not output.exists()


def test_missing_required_flag_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run(["gen", "--full"])
    assert excinfo.value.code == 2


@pytest.mark.parametrize(
    "n, expected",
    [
        (5, "total=100 buckets=20 qmax=5 vector=0 1 2"),
        (7, "total=294 buckets=42 qmax=7 vector=0 1 2"),
    ],
)
def test_quads_full(full_file, capsys, n, expected):
    # Call method
    code = run(["quads", "--input", full_file(n)])

    # Assertions
    assert code == 0
    assert stdout_of(capsys).strip() == expected


def test_quads_empty(empty_file, capsys):
    assert run(["quads", "--input", empty_file]) == 0
    assert stdout_of(capsys).strip() == "total=0 buckets=0 qmax=0 vector=-"


def test_quads_histogram_and_dump(full_file, capsys):
    # Call method
    code = run(["quads", "--input", full_file(5), "--histogram", "--dump"])

    # Assertions
    lines = stdout_of(capsys).splitlines()
    assert code == 0
    assert lines[1] == "0 1 2 5"
    assert len(lines) == 1 + 20 + 20 + 100
    assert lines[21] == "bucket 0 1 2 5"
    assert lines[22] == "0 1 4 2"


def test_quads_reports_parse_error_line(tmp_path, capsys):
    # Setup
    path = tmp_path / "bad.txt"
    path.write_text("Z5\n0 1\n0 x\n")

    # Call method
    code = run(["quads", "--input", str(path)])

    # Assertions
    assert code == 2
    assert "line 3" in capsys.readouterr().err


def test_find_then_verify(full_file, tmp_path, capsys):
    # Setup
    source = full_file(25)
    config = tmp_path / "config.txt"

    # Call method
    found = run(["find", "--input", source, "--t", "2", "--output", str(config)])
    found_out = stdout_of(capsys)
    verified = run(["verify", "--input", source, "--config", str(config)])

    # Assertions
    assert found == 0
    assert found_out.strip().endswith("pass=true")
    assert config.read_text().splitlines()[-1].endswith("pass=true")
    assert verified == 0
    assert "layer_bounds_ok=true pass=true" in stdout_of(capsys)


@pytest.mark.slow
def test_find_on_full_z101(full_file, capsys):
    assert run(["find", "--input", full_file(101), "--t", "2"]) == 0
    assert stdout_of(capsys).splitlines()[-1].endswith("pass=true")


def test_find_on_empty_system(empty_file, capsys):
    # Call method
    code = run(["find", "--input", empty_file, "--t", "2"])

    # Assertions
    assert code == 3
    assert stdout_of(capsys).strip() == "not-found reason=no-quadruples level=0"


@pytest.mark.parametrize("flags", [["--t", "0"], ["--t", "2", "--min-bucket", "0"]])
def test_find_rejects_bad_parameters(full_file, flags):
    assert run(["find", "--input", full_file(5), *flags]) == 2


def test_verify_fails_when_a_triple_is_missing(full_file, tmp_path, capsys):
    # Setup
    source = full_file(25)
    config = tmp_path / "config.txt"
    run(["find", "--input", source, "--t", "2", "--output", str(config)])
    a, b, _ = config.read_text().split("TRIPLES\n")[1].splitlines()[0].split()
    sparser = tmp_path / "sparser.txt"
    full = TripleSystemRepository(source).load()
    TripleSystemRepository(sparser).save(
        build_system(full.group, full.edges - {(int(a), int(b))})
    )
    capsys.readouterr()

    # Call method
    code = run(["verify", "--input", str(sparser), "--config", str(config)])

    # Assertions
    assert code == 1
    assert "pass=false" in stdout_of(capsys)


def test_verify_rejects_truncated_file(full_file, tmp_path):
    # Setup
    source = full_file(25)
    config = tmp_path / "config.txt"
    run(["find", "--input", source, "--t", "2", "--output", str(config)])
    config.write_text(config.read_text()[:40])

    # Call method
    code = run(["verify", "--input", source, "--config", str(config)])

    # Assertions
    assert code == 2


def test_span_subset(full_file, capsys):
    assert run(["span", "--input", full_file(5), "--subset", "0"]) == 0
    assert stdout_of(capsys).strip() == "spanned=1"


def test_span_fano_file(tmp_path, capsys):
    # Setup
    path = tmp_path / "fano.txt"
    HypergraphRepository(path).save(fano_plane())

    # Call method
    code = run(["span", "--input", str(path), "--m", "6"])

    # Assertions
    assert code == 0
    assert stdout_of(capsys).strip() == "k_max=4 witness=0 1 2 3 4 5"


def test_span_hypergraph_subset(tmp_path, capsys):
    # Setup
    path = tmp_path / "fano.txt"
    HypergraphRepository(path).save(fano_plane())

    # Call method
    code = run(["span", "--input", str(path), "--subset", "0,1,2"])

    # Assertions
    assert code == 0
    assert stdout_of(capsys).strip() == "spanned=1"


def test_span_budget_guard(full_file, capsys):
    # Call method
    code = run(["span", "--input", full_file(31), "--m", "30"])

    # Assertions
    assert code == 2
    assert "exceeds the subset size limit" in capsys.readouterr().err


def test_gen_is_deterministic(tmp_path):
    # Setup
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"

    # Call method
    for output in (first, second):
        run(["gen", "--group", "Z3xZ4", "--density", "0.7", "--seed", "9", "--output", str(output)])

    # Assertions
    assert first.read_bytes() == second.read_bytes()


def test_replay_reproduces_output(full_file, tmp_path, capsys):
    # Setup
    source = full_file(27)
    config = tmp_path / "config.txt"
    manifest = tmp_path / "manifest.json"
    run(
        [
            "find",
            "--input",
            source,
            "--t",
            "2",
            "--output",
            str(config),
            "--save-manifest",
            str(manifest),
        ]
    )
    original = config.read_bytes()
    config.unlink()

    # Call method
    code = run(["replay", "--manifest", str(manifest)])

    # Assertions
    recorded = json.loads(manifest.read_text())
    assert code == 0
    assert recorded["command"] == "find"
    assert recorded["source"] == source
    assert recorded["params"] == {"input": source, "t": 2}
    assert config.read_bytes() == original


def test_replay_rejects_invalid_manifest(tmp_path):
    # Setup
    manifest = tmp_path / "manifest.json"
    manifest.write_text('{"params": {}}')

    # Call method
    code = run(["replay", "--manifest", str(manifest)])

    # Assertions
    assert code == 2
