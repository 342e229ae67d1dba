"""
Tests for the command-line front end and its exit codes
"""

import pytest

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.main import build_parser, main


@pytest.fixture(autouse=True)
def no_logging_setup(mocker):
    """Keep the CLI from reconfiguring the root logger during tests"""
    mocker.patch("pmatrixcheck.main.setup_logging")
    mocker.patch("pmatrixcheck.main.enable_debug_mode")
    mocker.patch("pmatrixcheck.main.enable_quiet_mode")


@pytest.mark.cli
class TestExitCodes:
    """Test the exit code of each outcome"""

    def test_yes(self, triangle_file, capsys):
        """Test exit code 0 on YES"""
        assert main(["maxcut", str(triangle_file), "2"]) == 0
        assert capsys.readouterr().out.startswith("YES\n")

    def test_no(self, triangle_file, capsys):
        """Test exit code 1 on NO"""
        assert main(["maxcut", str(triangle_file), "3"]) == 1
        assert capsys.readouterr().out.startswith("NO\n")

    def test_pipeline_consistent(self, single_edge_file, capsys):
        """Test exit code 0 on a consistent pipeline"""
        assert main(["pipeline", str(single_edge_file), "1"]) == 0
        assert capsys.readouterr().out.endswith("CONSISTENT\n")

    def test_malformed_input(self, write_file, capsys):
        """Test exit code 3 and the message for a malformed graph"""
        path = write_file("bad.txt", "3 2\n1 2\n")
        assert main(["maxcut", str(path), "1"]) == ExitCode.INPUT_ERROR
        assert capsys.readouterr().err.startswith("error: graph:")

    def test_missing_file(self, temp_dir, capsys):
        """Test exit code 3 for an absent file"""
        assert main(["pmatrix", str(temp_dir / "absent.txt")]) == 3
        assert "Cannot read" in capsys.readouterr().err

    def test_singular_reduction_input(self, write_file, capsys):
        """Test exit code 3 for a singular matrix handed to reduce-rnorm"""
        path = write_file("a.txt", "2 2\n1 2\n2 4\n")
        assert main(["reduce-rnorm", str(path), "1"]) == 3
        assert capsys.readouterr().err.startswith("error: ")

    def test_non_positive_threshold(self, write_file):
        """Test exit code 3 for K = 0"""
        path = write_file("a.txt", "1 1\n1\n")
        assert main(["reduce-rnorm", str(path), "0"]) == 3

    def test_usage_error(self, capsys):
        """Test that argparse errors become exit code 3"""
        assert main(["maxcut"]) == 3
        assert "usage:" in capsys.readouterr().err

    def test_help_is_not_an_error(self, capsys):
        """Test that --help exits with 0"""
        assert main(["--help"]) == 0
        assert "pipeline" in capsys.readouterr().out

    def test_unknown_suite(self, capsys):
        """Test exit code 3 for an unknown suite"""
        assert main(["suite", "nope"]) == 3
        assert "Unknown suite" in capsys.readouterr().err


@pytest.mark.cli
class TestCommands:
    """Test dispatch to each command"""

    def test_verify(self, write_file, capsys):
        """Test the verify command"""
        instance = write_file("m.txt", "2 2\n1 2\n3 1\n")
        cert = write_file("c.txt", "NOT_P index_set=1,2 minor=-5\n")
        assert main(["verify", "non-p-minor", str(instance), str(cert)]) == 0
        assert capsys.readouterr().out.startswith("VALID")

    def test_verify_with_threshold(self, triangle_file, write_file):
        """Test that --K is passed to verify"""
        cert = write_file("c.json", '{"kind": "cut", "side": [1, 2, 2], "cut_size": 2}')
        assert main(["verify", "cut", str(triangle_file), str(cert), "--K", "3"]) == 1

    def test_suite(self, capsys):
        """Test running two named suites"""
        assert main(["suite", "det_identity", "block", "--seed", "5", "--count", "2"]) == 0
        out = capsys.readouterr().out
        assert "det_identity" in out and "block" in out

    def test_reduce_maxcut_to_file(self, single_edge_file, temp_dir, capsys):
        """Test reduce-maxcut with -o"""
        out = temp_dir / "a.txt"
        assert main(["reduce-maxcut", str(single_edge_file), "1", "-o", str(out)]) == 0
        assert out.read_text() == "2 2\n3 -1\n-1 3\n"
        assert capsys.readouterr().out == "threshold=8 ell=3\n"

    def test_verbose_enables_debug(self, triangle_file):
        """Test that -v turns on debug logging"""
        import pmatrixcheck.main as cli

        main(["-v", "maxcut", str(triangle_file), "1"])
        cli.enable_debug_mode.assert_called_once()
        cli.enable_quiet_mode.assert_not_called()

    def test_verbose_and_quiet_exclusive(self, triangle_file):
        """Test that -v and -q cannot be combined"""
        assert main(["-v", "-q", "maxcut", str(triangle_file), "1"]) == 3


@pytest.mark.unit
def test_parser_knows_every_command():
    """Test that every subcommand parses"""
    parser = build_parser()
    for argv in (
        ["maxcut", "g", "1"],
        ["rnorm", "a", "1/2"],
        ["interval-sing", "i"],
        ["pmatrix", "m"],
        ["reduce-maxcut", "g", "1"],
        ["reduce-rnorm", "a", "3"],
        ["reduce-interval", "i"],
        ["pipeline", "g", "2", "--max-n", "2"],
        ["verify", "cut", "g", "c"],
        ["suite"],
    ):
        assert parser.parse_args(argv).command == argv[0]


@pytest.mark.cli
class TestIntervalMethod:
    """Test the --method option of interval-sing"""

    def test_default_is_vertex(self):
        """Test that the vertex oracle is the default"""
        assert build_parser().parse_args(["interval-sing", "i"]).method == "vertex"

    def test_psi(self, write_file, capsys):
        """Test deciding an interval through psi"""
        path = write_file("iv.txt", "lower 2 2 1 0 0 1\nupper 2 2 1 2 2 1\n")
        assert main(["interval-sing", str(path), "--method", "psi"]) == 0
        assert capsys.readouterr().out.startswith("YES\n")

    def test_unknown_method(self, write_file):
        """Test that an unknown method is a usage error"""
        path = write_file("iv.txt", "lower 1 1 1\nupper 1 1 3\n")
        assert main(["interval-sing", str(path), "--method", "newton"]) == 3
