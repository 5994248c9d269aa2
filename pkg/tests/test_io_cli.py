import json
import subprocess
import sys

import pytest

from spandecomp.cli import run
from spandecomp.decomposer import decompose
from spandecomp.io import (MalformedInput, NameTable, decomposition_from_dict, decomposition_to_dict, dump_json,
                           format_bag_list, format_edge_list, parse_bag_list, parse_edge_list, to_dot)
from spandecomp.verification import gen_fig1, validate_suitable


def test_parse_edge_list_names_comments_and_declarations():
    g, names = parse_edge_list("# header\nalpha beta  # trailing\nv lonely\n\nbeta gamma\n")
    assert names.names == ["alpha", "beta", "lonely", "gamma"]
    assert g.vertices == {0, 1, 2, 3}
    assert g.edges == {(0, 1), (1, 3)}


@pytest.mark.parametrize("text", ["a\n", "a b c\n", "a a\n"])
def test_parse_edge_list_rejects_malformed(text):
    with pytest.raises(MalformedInput):
        parse_edge_list(text)


def test_parse_bag_list():
    g, names = parse_edge_list("a b\nb c\n")
    p = parse_bag_list("a b\n# comment\nb c\n", names)
    assert p.bags == (frozenset({0, 1}), frozenset({1, 2}))
    with pytest.raises(MalformedInput):
        parse_bag_list("a z\n", names)


def test_edge_and_bag_list_round_trip():
    g, p = gen_fig1(3)
    names = NameTable.identity(g.vertices)
    g2, names2 = parse_edge_list(format_edge_list(g, names))
    assert len(g2.vertices) == len(g.vertices) and len(g2.edges) == len(g.edges)
    p2 = parse_bag_list(format_bag_list(p, names), names2)
    back = {names2.lookup(names.name(v)): v for v in g.vertices}
    assert [{back[v] for v in bag} for bag in p2.bags] == [set(b) for b in p.bags]


def test_json_round_trip_and_schema():
    g, p = gen_fig1(2)
    names = NameTable.identity(g.vertices)
    d = decompose(g, p)
    obj = json.loads(dump_json(decomposition_to_dict(d, names, {"k": 3})))
    assert set(obj) == {"vertices", "tree_edges", "bags", "width", "meta"}
    assert obj["width"] == d.width and obj["meta"] == {"k": 3}
    d2 = decomposition_from_dict(obj, names)
    assert d2.forest == d.forest and dict(d2.bags) == dict(d.bags)


@pytest.mark.parametrize("obj", [[], {"vertices": []}, {"vertices": ["9"], "tree_edges": [], "bags": {}},
                                 {"vertices": [], "tree_edges": [["0"]], "bags": {}}])
def test_json_rejects_malformed(obj):
    names = NameTable.identity(range(3))
    with pytest.raises(MalformedInput):
        decomposition_from_dict(obj, names)


def test_dot_output():
    g, names = parse_edge_list("a b\n")
    d = decompose(g, parse_bag_list("a b\n", names))
    dot = to_dot(d, names)
    assert dot.splitlines() == ["graph decomposition {", '  n0 [label="a: {a, b}"];',
                                '  n1 [label="b: {a, b}"];', "  n0 -- n1;", "}"]


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_cli_fig1_end_to_end(tmp_path, capsys):
    ge, pb = str(tmp_path / "g.edges"), str(tmp_path / "p.bags")
    out, dot = str(tmp_path / "d.json"), str(tmp_path / "d.dot")
    assert run(["gen", "fig1", "--n", "4", "--out-graph", ge, "--out-pathdec", pb]) == 0
    assert run(["decompose", "--graph", ge, "--pathdec", pb, "--out", out, "--dot", dot]) == 0
    assert run(["validate", "--graph", ge, "--decomp", out]) == 0
    obj = json.loads(open(out).read())
    assert set(obj["meta"]) == {"k", "h", "semigroup_size", "bound", "global_bound"}
    assert obj["meta"]["bound"] == 3 * obj["meta"]["k"] * obj["meta"]["h"] - 1
    assert obj["width"] <= obj["meta"]["bound"]
    assert open(dot).read().startswith("graph decomposition {")


def test_cli_pathwidth(tmp_path, capsys):
    g = write(tmp_path, "p5.edges", "1 2\n2 3\n3 4\n4 5\n")
    assert run(["pathwidth", "--graph", g]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_decompose_without_pathdec(tmp_path):
    g = write(tmp_path, "c5.edges", "1 2\n2 3\n3 4\n4 5\n5 1\n")
    out = str(tmp_path / "d.json")
    assert run(["decompose", "--graph", g, "--out", out]) == 0
    assert run(["validate", "--graph", g, "--decomp", out]) == 0


def test_cli_disconnected_graph_is_malformed(tmp_path, capsys):
    g = write(tmp_path, "d.edges", "a b\nc d\n")
    assert run(["decompose", "--graph", g, "--out", str(tmp_path / "x.json")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("ERROR:2:") and "connected" in err


def test_cli_guard_violation(tmp_path, capsys):
    g = write(tmp_path, "big.edges", "".join(f"{i} {i + 1}\n" for i in range(13)))
    assert run(["pathwidth", "--graph", g]) == 3
    assert capsys.readouterr().err.startswith("ERROR:3:")
    assert run(["decompose", "--graph", g, "--out", str(tmp_path / "x.json")]) == 3


def test_cli_validation_failure(tmp_path, capsys):
    g = write(tmp_path, "p.edges", "a b\nb c\n")
    bad = {"vertices": ["a", "b", "c"], "tree_edges": [["a", "b"], ["b", "c"]],
           "bags": {"a": ["a"], "b": ["b"], "c": ["c"]}, "width": 0, "meta": {}}
    d = write(tmp_path, "bad.json", json.dumps(bad))
    assert run(["validate", "--graph", g, "--decomp", d]) == 1
    assert "ERROR:1:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["nonsense"], ["decompose"], ["gen", "fig1", "--n", "x"]])
def test_cli_bad_arguments(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err.startswith("ERROR:2:")


def test_cli_malformed_files(tmp_path, capsys):
    assert run(["pathwidth", "--graph", str(tmp_path / "missing.edges")]) == 2
    g = write(tmp_path, "g.edges", "a b\n")
    d = write(tmp_path, "d.json", "{not json")
    assert run(["validate", "--graph", g, "--decomp", d]) == 2
    assert all(line.startswith("ERROR:2:") for line in capsys.readouterr().err.splitlines())


def test_cli_gen_random_deterministic(tmp_path):
    texts = []
    for tag in "ab":
        ge, pb = str(tmp_path / f"{tag}.edges"), str(tmp_path / f"{tag}.bags")
        assert run(["gen", "random", "--k", "3", "--bags", "20", "--density", "0.4", "--seed", "5",
                    "--out-graph", ge, "--out-pathdec", pb]) == 0
        texts.append((open(ge).read(), open(pb).read()))
    assert texts[0] == texts[1]


def test_module_entry_point(tmp_path):
    g = write(tmp_path, "p.edges", "x y\n")
    proc = subprocess.run([sys.executable, "-m", "spandecomp", "pathwidth", "--graph", g],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
