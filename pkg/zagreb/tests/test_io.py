import pytest
from hypothesis import given

from zagreb import io
from zagreb.common import DisconnectedTreeError, Graph6Error
from zagreb.families import star
from zagreb.tree import build_tree, canonical_code

from .strategies import trees


def test_write_graph6():
    assert io.write_graph6(build_tree([(0, 1)])) == "A_"


def test_read_graph6():
    assert io.read_graph6("A_") == build_tree([(0, 1)])
    assert io.read_graph6(b"A_\n") == build_tree([(0, 1)])
    assert io.read_graph6(">>graph6<<A_") == build_tree([(0, 1)])


@pytest.mark.parametrize("line", ["", "   ", ">>graph6<<"])
def test_read_graph6_empty(line):
    with pytest.raises(Graph6Error):
        io.read_graph6(line)


@pytest.mark.parametrize("line", ["A\u00e9", "C\u2603", b"A\xe9"])
def test_read_graph6_non_ascii(line):
    with pytest.raises(Graph6Error):
        io.read_graph6(line)


def test_read_graph6_not_a_tree():
    # two vertices, no edge
    with pytest.raises(DisconnectedTreeError):
        io.read_graph6("A?")


@given(trees(max_vertices=70))
def test_graph6_preserves_labels(t):
    assert io.read_graph6(io.write_graph6(t)) == t


class TestGraph6Files:
    @pytest.fixture
    def g6_file(self, tmp_path):
        fname = tmp_path / "trees.g6"
        count = io.save_graph6([star(n) for n in range(2, 6)], fname)
        assert count == 4
        return fname

    def test_load(self, g6_file):
        loaded = io.load_graph6(g6_file)
        assert [t.pendant_count for t in loaded] == [2, 3, 4, 5]
        assert canonical_code(loaded[2]) == canonical_code(star(4))

    def test_blank_lines_skipped(self, g6_file):
        with open(g6_file, "a") as f:
            f.write("\n\n")
        assert len(io.load_graph6(g6_file)) == 4

    def test_bad_line_reports_location(self, g6_file):
        with open(g6_file, "a") as f:
            f.write("A?\n")
        with pytest.raises(DisconnectedTreeError, match="trees.g6:5"):
            io.load_graph6(g6_file)


def test_write_dot():
    dot = io.write_dot(build_tree([(0, 1), (1, 2)]))
    assert dot.splitlines() == ["graph T {", "  0 -- 1;", "  1 -- 2;", "}"]
    dot = io.write_dot(star(3), degrees=True, name="claw")
    assert dot.startswith("graph claw {")
    assert '  0 [label="0 (d=3)"];' in dot
    assert dot.count(" -- ") == 3
