import json

import pytest
from hypothesis import given

from steinergp import families as fam
from steinergp.edgelist import EdgeListError, dumps, graph_hash, loads, read, sidecar, write, write_sidecar
from strategies import graphs


@given(graphs(max_n=9))
def test_round_trip(g):
    assert loads(dumps(g)) == g
    assert dumps(loads(dumps(g))) == dumps(g)


def test_comments_and_blank_lines():
    g = loads("# header follows\n3 2\n\n0 1  # first\n2 1\n")
    assert g.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 x\n", 2),
        ("3 1\n0 0\n", 2),
        ("3 1\n0 5\n", 2),
        ("3 1 4\n", 1),
        ("2 1\n\n0 1 1\n", 3),
    ],
)
def test_malformed_lines_report_line_number(text, line):
    with pytest.raises(EdgeListError) as info:
        loads(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("text", ["", "# only a comment\n", "3 2\n0 1\n", "3 2\n0 1\n1 0\n"])
def test_header_problems(text):
    with pytest.raises(EdgeListError):
        loads(text)


def test_hash_depends_only_on_structure():
    a = fam.counterexample_gk(3)
    b = loads(dumps(a))
    assert graph_hash(a) == graph_hash(b)
    assert graph_hash(fam.path(4)) != graph_hash(fam.star(3))


def test_file_round_trip_with_sidecar(tmp_path):
    g = fam.counterexample_gk(3)
    path = tmp_path / "g3.edges"
    write(g, path)
    write_sidecar(g, path)
    again = read(path)
    assert again == g and again.labels == g.labels
    assert path.read_text() == dumps(again)


def test_grid_sidecar_has_coordinates(tmp_path):
    g, spec = fam.cartesian_grid(2)
    data = sidecar(g)
    assert len(data["coordinates"]) == 25
    assert data["coordinates"][spec.vertex(1, -2)] == [1, -2]
    path = tmp_path / "grid.edges"
    write(g, path)
    write_sidecar(g, path)
    assert read(path).meta["grid_radius"] == 2


def test_split_sidecar_keeps_partition(tmp_path):
    g = fam.make_split(3, [[0], [1, 2]])
    path = tmp_path / "split.edges"
    write(g, path)
    write_sidecar(g, path)
    assert json.loads((tmp_path / "split.edges.json").read_text())["split_r"] == 3
    assert read(path).meta["split_r"] == 3


def test_broken_sidecar(tmp_path):
    path = tmp_path / "p.edges"
    write(fam.path(3), path)
    (tmp_path / "p.edges.json").write_text("{not json")
    with pytest.raises(EdgeListError):
        read(path)
