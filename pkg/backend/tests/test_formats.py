"""
Unit tests for the matrix, graph and interval text formats
"""

from fractions import Fraction

import pytest

from pmatrixcheck.core.exact_linalg import RationalMatrix
from pmatrixcheck.core.graph_maxcut import sorted_edges
from pmatrixcheck.formats import (
    FormatError,
    format_interval,
    format_matrix,
    parse_graph,
    parse_interval,
    parse_matrix,
    read_text,
)


@pytest.mark.unit
class TestMatrixFormat:
    """Test the matrix text format"""

    def test_parse(self):
        """Test parsing integers and p/q entries"""
        M = parse_matrix("2 2\n1 -1/2\n3/6 4\n")
        assert M.to_rows() == [[1, Fraction(-1, 2)], [Fraction(1, 2), 4]]

    def test_layout_is_free(self):
        """Test that line breaks carry no meaning"""
        assert parse_matrix("1 3 1 2 3") == parse_matrix("1 3\n1\n2\n3\n")

    def test_format(self):
        """Test writing a matrix back out"""
        M = RationalMatrix.from_rows([[1, "-1/2"], [0, 4]])
        assert format_matrix(M) == "2 2\n1 -1/2\n0 4\n"
        assert parse_matrix(format_matrix(M)) == M

    @pytest.mark.parametrize(
        "text",
        ["", "2", "2 x", "2 2\n1 2 3", "1 1\n0.5", "1 1\n1/0", "1 1\n1 2", "-1 1"],
    )
    def test_malformed(self, text):
        """Test malformed matrix texts"""
        with pytest.raises(FormatError):
            parse_matrix(text)


@pytest.mark.unit
class TestGraphFormat:
    """Test the graph text format"""

    def test_parse(self):
        """Test parsing a path on three vertices"""
        G = parse_graph("3 2\n1 2\n2 3\n")
        assert G.number_of_nodes() == 3
        assert sorted_edges(G) == ((1, 2), (2, 3))

    def test_edgeless(self):
        """Test a graph with no edge lines"""
        assert parse_graph("4 0\n").number_of_edges() == 0

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "3 2\n1 2\n",
            "3 1\n2 1\n",
            "3 1\n1 4\n",
            "3 2\n1 2\n1 2\n",
            "3 1\n1 a\n",
            "3 1\n1 2 3\n",
        ],
    )
    def test_malformed(self, text):
        """Test malformed graph texts"""
        with pytest.raises(FormatError):
            parse_graph(text)


@pytest.mark.unit
class TestIntervalFormat:
    """Test the interval text format"""

    def test_center_radius(self):
        """Test a center and radius block pair"""
        iv = parse_interval("center\n1 1\n1\nradius\n1 1\n2\n")
        assert iv.center.to_rows() == [[1]]
        assert iv.radius.to_rows() == [[2]]

    def test_lower_upper(self):
        """Test a lower and upper block pair"""
        iv = parse_interval("lower 1 1 0\nupper 1 1 3")
        assert iv.center.to_rows() == [[Fraction(3, 2)]]

    def test_roundtrip(self):
        """Test that a written interval parses back"""
        iv = parse_interval("CENTER 2 2 1 0 0 1 RADIUS 2 2 0 1/3 1/3 0")
        assert parse_interval(format_interval(iv)) == iv

    @pytest.mark.parametrize(
        "text",
        [
            "center 1 1 1",
            "center 1 1 1 center 1 1 2",
            "center 1 1 1 upper 1 1 2",
            "middle 1 1 1",
            "center 1 1 1 radius 1 1 -1",
            "lower 1 1 2 upper 1 1 1",
            "center 1 2 1 1 radius 1 2 0 0",
        ],
    )
    def test_malformed(self, text):
        """Test malformed interval texts"""
        with pytest.raises(FormatError):
            parse_interval(text)


@pytest.mark.unit
def test_read_text_missing_file(temp_dir):
    """Test that a missing file is a FormatError"""
    with pytest.raises(FormatError, match="Cannot read"):
        read_text(temp_dir / "absent.txt")
