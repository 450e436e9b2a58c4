import asyncio
import io
import json

import pytest

from Model import JobConfig, Model
from NPS import main
from analysis.Classifier import superclasses
from combinatorics.Poset import commutator, covers, example_hasse
from errors import ConfigError, PosetError
from source import PosetSourceHandler
from views.diagrams import hasse_dot
from views.formats import SUPERCLASS_COLUMNS, superclass_record, write_tsv


def run(argv):
    stdout = io.StringIO()
    status = asyncio.run(main(argv, stdout=stdout))
    return status, stdout.getvalue()


def read_lines(path):
    return path.read_text().splitlines()


def test_enumerate_writes_catalan_many_records():
    status, text = run(["enumerate", "--n", "4"])
    lines = text.splitlines()
    assert status == 0
    assert len(lines) == 15
    records = [json.loads(line) for line in lines]
    assert records[-1] == {"count": 14}
    assert records[0]["dyck_index"] == 0 and records[0]["boundary"] == [1, 2, 3, 4]


def test_enumerate_draws_hasse_diagrams(tmp_path):
    out = tmp_path / "normal.dot"
    assert run(["enumerate", "--n", "4", "--format", "dot", "--out", str(out)])[0] == 0
    dot = out.read_text()
    assert dot.count("digraph") == 14
    first = dot.split("}\n")[0]
    assert first.startswith('digraph "D0"')
    assert first.count("style=solid") == 3 and "style=dashed" not in first
    assert "style=dashed" in dot


def test_classify_commutator_poset(tmp_path):
    status, _ = run(["classify", "--n", "5", "--poset", "commutator", "--out", str(tmp_path)])
    assert status == 0
    classes = read_lines(tmp_path / "superclasses.jsonl")
    characters = read_lines(tmp_path / "supercharacters.jsonl")
    assert len(classes) == len(characters) == 40
    first = json.loads(characters[0])
    assert first["lam"] == "1|2|3|4|5" and first["degree"] == 1 and first["irreducible"]
    assert sum(json.loads(line)["size"] for line in classes) == 2**6


def test_classify_tsv_and_dot(tmp_path):
    assert run(["classify", "--n", "4", "--poset", "commutator", "--format", "tsv", "--out", str(tmp_path)])[0] == 0
    header, *rows = read_lines(tmp_path / "superclasses.tsv")
    assert header.split("\t") == SUPERCLASS_COLUMNS
    assert len(rows) == len(read_lines(tmp_path / "supercharacters.tsv")) - 1
    assert run(["classify", "--n", "4", "--poset", "commutator", "--format", "dot", "--out", str(tmp_path)])[0] == 0
    dot = (tmp_path / "representatives.dot").read_text()
    assert dot.count("digraph") == len(rows)


def test_classify_in_worker_processes(tmp_path):
    serial, parallel = tmp_path / "serial", tmp_path / "parallel"
    run(["classify", "--n", "4", "--poset", "full", "--out", str(serial)])
    run(["classify", "--n", "4", "--poset", "full", "--out", str(parallel), "--jobs", "2"])
    for name in ("superclasses.jsonl", "supercharacters.jsonl"):
        assert (serial / name).read_text() == (parallel / name).read_text()


def test_classify_rejects_non_normal_posets(tmp_path):
    status, _ = run(["classify", "--n", "5", "--poset", "p-index:3", "--out", str(tmp_path)])
    assert status == 2


def test_chartable(tmp_path):
    status, text = run(["chartable", "--n", "3", "--format", "tsv"])
    assert status == 0
    lines = text.splitlines()
    assert len(lines) == 6
    assert lines[1].split("\t")[1] == "1"
    out = tmp_path / "table.jsonl"
    assert run(["chartable", "--n", "3", "--out", str(out)])[0] == 0
    assert len(read_lines(out)) == 5


def test_chartable_respects_the_group_order_cap():
    status, _ = run(["chartable", "--n", "4", "--cap-group-order", "16"])
    assert status == 2
    # 7^6 is within the oracle cap but too large for a table
    status, _ = run(["chartable", "--n", "4", "--p", "7"])
    assert status == 2


def test_verify_negative_control():
    status, text = run(["verify", "--n", "5", "--poset", "p-index:3"])
    report = json.loads(text)
    assert status == 0
    assert report["passed"] and not report["normal"]


def test_verify_every_normal_poset():
    status, text = run(["verify", "--n", "3", "--quiet"])
    report = json.loads(text)
    assert status == 0
    assert len(report["posets"]) == 5


def test_poset_from_json_file(tmp_path):
    path = tmp_path / "poset.json"
    path.write_text(json.dumps(commutator(4).to_json()))
    assert run(["classify", "--poset", str(path), "--out", str(tmp_path / "out")])[0] == 0
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(["classify", "--poset", str(broken)])[0] == 2


@pytest.mark.parametrize("argv", [
    ["enumerate", "--n", "4", "--format", "tsv"],
    ["enumerate"],
    ["classify", "--n", "4", "--p", "4"],
    ["verify"],
    ["classify", "--n", "4", "--poset", "no-such-poset"],
    ["classify", "--poset", "full"],
])
def test_configuration_errors_exit_with_two(argv):
    assert run(argv)[0] == 2


def test_unknown_commands_are_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        run(["plot"])


def test_job_config_validation():
    with pytest.raises(ConfigError):
        JobConfig(command="classify", jobs=0)
    with pytest.raises(ConfigError):
        JobConfig(command="classify", p=19)
    assert JobConfig(command="classify", n=3).format == "json"


def test_model_enumerate_records():
    records = Model(JobConfig(command="enumerate", n=3)).enumerate_records()
    assert [r.get("dyck_index") for r in records[:-1]] == [0, 1, 2, 3, 4]


def test_source_handler():
    handler = PosetSourceHandler()
    assert "t-family" in handler.get_builtin_names()
    assert handler.create_poset("t-family:3,2").n == 5
    assert handler.create_poset("example-hasse", 7) == example_hasse()
    assert handler.create_poset("dyck-index:0", 3).relations == {(1, 2), (1, 3), (2, 3)}
    with pytest.raises(ConfigError):
        handler.create_poset("t-family:3")
    with pytest.raises(ConfigError):
        handler.create_poset("p-index:x", 5)
    with pytest.raises(ConfigError):
        handler.load_poset("/nonexistent/poset.json")


def test_source_handler_rejects_malformed_files(tmp_path):
    path = tmp_path / "poset.json"
    path.write_text(json.dumps({"n": 3, "relations": [[1, 2], [2, 3]]}))
    with pytest.raises(PosetError):
        PosetSourceHandler().create_poset(str(path))
    with pytest.raises(ConfigError):
        path.write_text(json.dumps({"n": 3, "relations": []}))
        PosetSourceHandler().create_poset(str(path), 4)


def test_tsv_cells_and_dot_output():
    P = commutator(4)
    stream = io.StringIO()
    write_tsv(SUPERCLASS_COLUMNS, [superclass_record(0, superclasses(P, 2)[0])], stream)
    assert stream.getvalue().splitlines()[1] == "0\t1|2|3|4\t-\t-\t1"
    dot = hasse_dot(P, covers(P).covers)
    assert dot.startswith('digraph "P"') and dot.count("->") == 3
