import pytest
from hypothesis import given, strategies as st

from hadswitch import fixtures
from hadswitch.hadgraph import hadamard_graph
from hadswitch.io import (
    ParseError,
    emit_graph,
    emit_matrix,
    ingest_sloane,
    parse_graph,
    parse_matrices,
    parse_matrix,
    read_matrix,
)
from hadswitch.loopgraph import LoopGraph
from hadswitch.signmatrix import SignMatrix, is_hadamard


def _squash(text):
    return "\n".join("".join(line.split()) for line in text.strip().splitlines())


def test_two_by_two_plusminus():
    M = parse_matrix("++\n+-")
    assert M.to_lists() == [[1, 1], [1, -1]]
    assert M == fixtures.load("H2")
    assert emit_matrix(M) == "++\n+-\n"


def test_paperstyle_tokens():
    assert parse_matrix("1 1\n1 -\n", "paperstyle") == fixtures.load("H2")


def test_illegal_character_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix("+*")
    assert (exc.value.line, exc.value.column) == (1, 2)
    assert "line 1, column 2" in str(exc.value)


def test_illegal_paperstyle_token_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix("1 1\n1 x\n", "paperstyle")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_ragged_rows():
    with pytest.raises(ParseError) as exc:
        parse_matrix("++\n+-+\n")
    assert exc.value.line == 2


def test_unknown_format():
    with pytest.raises(ValueError):
        parse_matrix("++", "hex")


def test_blank_lines_separate_matrices():
    ms = parse_matrices("++\n+-\n\n\n+\n")
    assert [m.shape for m in ms] == [(2, 2), (1, 1)]
    with pytest.raises(ParseError):
        parse_matrix("++\n+-\n\n+\n")


@pytest.mark.parametrize("name", fixtures.NAMES)
@pytest.mark.parametrize("fmt", ["plusminus", "paperstyle"])
def test_fixture_roundtrip(name, fmt):
    M = fixtures.load(name)
    text = emit_matrix(M, fmt)
    assert parse_matrix(text, fmt) == M
    assert emit_matrix(parse_matrix(text, fmt), fmt) == text


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_stored_text_matches_emitted(name):
    assert _squash(emit_matrix(fixtures.load(name))) == _squash(fixtures.raw_text(name))


def test_h12_is_hadamard_from_paperstyle():
    text = emit_matrix(fixtures.load("H12"), "paperstyle")
    assert text.splitlines()[0].split()[:4] == ["1", "-", "-", "-"]
    assert is_hadamard(parse_matrix(text, "paperstyle"))


@given(st.integers(1, 9), st.integers(1, 9), st.data())
def test_random_sign_matrix_roundtrip(r, c, data):
    rows = data.draw(st.lists(st.lists(st.sampled_from([-1, 1]), min_size=c, max_size=c), min_size=r, max_size=r))
    M = SignMatrix(rows)
    for fmt in ("plusminus", "paperstyle"):
        assert parse_matrix(emit_matrix(M, fmt), fmt) == M


def test_read_matrix(tmp_path):
    p = tmp_path / "h.txt"
    p.write_text(emit_matrix(fixtures.load("H8")))
    assert read_matrix(p) == fixtures.load("H8")


def test_graph_roundtrip():
    G = hadamard_graph(fixtures.load("H4"))
    text = emit_graph(G)
    assert text.splitlines()[0] == "vertices 16"
    assert text.splitlines()[1].startswith("0 1: ")
    assert parse_graph(text) == G


def test_graph_isolated_vertex_line():
    G = LoopGraph.from_edges(3, [(0, 1)])
    assert emit_graph(G).splitlines()[3] == "2 0:"
    assert parse_graph(emit_graph(G)) == G


@pytest.mark.parametrize("text", [
    "0 1: 1\n",
    "vertices 2\n0 0: 1\n1 0:\n",
    "vertices 2\n0 0: 5\n1 0: 0\n",
    "vertices 2\n0 2: 1\n1 0: 0\n",
    "vertices 2\n0 0: 1\n",
    "vertices x\n",
])  # fmt: skip
def test_bad_graph_text(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_ingest_empty_directory(tmp_path):
    ing = ingest_sloane(tmp_path)
    assert ing.matrices == {} and ing.errors == {}


def test_ingest_collects_failures(tmp_path):
    (tmp_path / "good.txt").write_text(emit_matrix(fixtures.load("H8")))
    (tmp_path / "pair.txt").write_text(emit_matrix(fixtures.load("H4")) + "\n" + emit_matrix(fixtures.load("H2")))
    (tmp_path / "not_hadamard.txt").write_text("++\n++\n")
    (tmp_path / "garbage.txt").write_text("+?\n")
    (tmp_path / "empty.txt").write_text("")
    ing = ingest_sloane(tmp_path)
    assert sorted(ing.matrices) == ["good.txt", "pair.txt#1", "pair.txt#2"]
    assert sorted(ing.errors) == ["empty.txt", "garbage.txt", "not_hadamard.txt"]
    assert "column 2" in ing.errors["garbage.txt"]


def test_corpus_self_test():
    assert all(is_hadamard(M) for M in fixtures.all_fixtures().values())


def test_aliases():
    assert fixtures.load("H′36") == fixtures.load("H36-switched")
    with pytest.raises(KeyError):
        fixtures.load("H24")
