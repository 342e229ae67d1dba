"""
Tests for independent certificate verification
"""

import pytest

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.commands.pipeline import run_pipeline
from pmatrixcheck.commands.verify import cmd_verify_certificate, verify_certificate
from pmatrixcheck.formats import FormatError

TRIANGLE = "3 3\n1 2\n1 3\n2 3\n"
NOT_P_MATRIX = "2 2\n1 2\n3 1\n"
INTERVAL = "center 1 1 1\nradius 1 1 2\n"


@pytest.mark.unit
class TestVerifyCertificate:
    """Test verify_certificate for every certificate kind"""

    def test_non_p_json(self):
        """Test a JSON non-P certificate"""
        cert = '{"kind": "non-p-minor", "index_set": [1, 2], "minor_value": "-5"}'
        assert verify_certificate("non-p-minor", NOT_P_MATRIX, cert) == (
            True,
            "principal minor on [1, 2] is -5 <= 0",
        )

    def test_non_p_text_line(self):
        """Test that a NOT_P line is accepted as a certificate"""
        valid, _ = verify_certificate("non-p-minor", NOT_P_MATRIX, "NOT_P index_set=1,2 minor=-5\n")
        assert valid

    def test_singular_matrix(self):
        """Test a singular matrix inside a 1x1 interval"""
        cert = '{"kind": "singular-matrix", "witness_matrix": [["0"]]}'
        assert verify_certificate("singular-matrix", INTERVAL, cert)[0]

    def test_cut(self):
        """Test a maximum cut of the triangle"""
        cert = '{"kind": "cut", "side": [1, 2, 2], "cut_size": 2}'
        assert verify_certificate("cut", TRIANGLE, cert, K="2")[0]

    def test_cut_below_threshold(self):
        """Test that a valid cut below K is rejected"""
        cert = '{"kind": "cut", "side": [1, 2, 2], "cut_size": 2}'
        valid, reason = verify_certificate("cut", TRIANGLE, cert, K="3")
        assert not valid
        assert "below K = 3" in reason

    def test_wrong_cut_size(self):
        """Test that a wrong claimed cut size is rejected"""
        cert = '{"kind": "cut", "side": [1, 2, 2], "cut_size": 3}'
        valid, reason = verify_certificate("cut", TRIANGLE, cert)
        assert not valid
        assert reason == "partition cuts 2 edges, certificate claims 3"

    def test_norm_witness(self):
        """Test a norm witness at and above its value"""
        cert = '{"kind": "norm-witness", "y": [1, -1], "z": [1, -1], "value": "8"}'
        assert verify_certificate("norm-witness", "2 2\n3 -1\n-1 3\n", cert, K="8")[0]
        assert not verify_certificate("norm-witness", "2 2\n3 -1\n-1 3\n", cert, K="17/2")[0]

    def test_malformed_certificate(self):
        """Test that schema errors become an invalid reason"""
        valid, reason = verify_certificate("cut", TRIANGLE, '{"kind": "cut", "side": [1, 5]}')
        assert not valid
        assert reason.startswith("malformed certificate:")

    def test_not_json(self):
        """Test that text that is not JSON is invalid"""
        valid, reason = verify_certificate("cut", TRIANGLE, "hello")
        assert not valid
        assert "malformed certificate" in reason

    def test_kind_mismatch(self):
        """Test that a certificate of another kind is rejected"""
        cert = '{"kind": "singular-matrix", "witness_matrix": [["0"]]}'
        valid, reason = verify_certificate("non-p-minor", NOT_P_MATRIX, cert)
        assert not valid
        assert "not 'non-p-minor'" in reason

    def test_unknown_kind(self):
        """Test that an unknown kind is an error"""
        with pytest.raises(ValueError, match="Unknown certificate kind"):
            verify_certificate("proof", TRIANGLE, "{}")

    def test_malformed_instance(self):
        """Test that a malformed instance raises FormatError"""
        cert = '{"kind": "cut", "side": [1, 2, 2], "cut_size": 2}'
        with pytest.raises(FormatError):
            verify_certificate("cut", "3 3\n1 2\n", cert)

    def test_pipeline_report(self, triangle):
        """Test that a pipeline report supplies the stage certificate of the asked kind"""
        report = run_pipeline(triangle, 2).model_dump_json()
        assert verify_certificate("cut", TRIANGLE, report, K="2") == (True, "partition cuts 2 edges")

    def test_pipeline_report_without_that_kind(self, single_edge):
        """Test that a NO report has no singular matrix to offer"""
        report = run_pipeline(single_edge, 2).model_dump_json()
        valid, reason = verify_certificate("singular-matrix", INTERVAL, report)
        assert not valid
        assert reason == "malformed certificate: pipeline report has no 'singular-matrix' certificate"


@pytest.mark.cli
class TestVerifyCommand:
    """Test the verify command output and exit codes"""

    def test_valid(self, write_file, capsys):
        """Test VALID and exit code 0"""
        instance = write_file("m.txt", NOT_P_MATRIX)
        cert = write_file("c.txt", "NOT_P index_set=1,2 minor=-5\n")
        assert cmd_verify_certificate("non-p-minor", instance, cert) == ExitCode.OK
        assert capsys.readouterr().out.startswith("VALID: ")

    def test_invalid(self, write_file, capsys):
        """Test INVALID and exit code 1"""
        instance = write_file("m.txt", NOT_P_MATRIX)
        cert = write_file("c.txt", "NOT_P index_set=1 minor=-5\n")
        assert cmd_verify_certificate("non-p-minor", instance, cert) == ExitCode.NO
        assert capsys.readouterr().out.startswith("INVALID: ")
