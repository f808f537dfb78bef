import json
import os
import sys

import pytest

from heckecert import certio
from heckecert.cli import EXIT_INPUT, EXIT_MATH, EXIT_OK, main


@pytest.fixture(scope="module")
def appendix_cert(tmp_path_factory):
    out = tmp_path_factory.mktemp("certs")
    rc = main(["prove", "--ell", "2", "--p", "3", "--m", "1",
               "--targets", "0=0", "--out", str(out)])
    assert rc == EXIT_OK
    return os.path.join(out, "cert_ell2_p3_m1.json")


def test_prove_writes_expected_file(appendix_cert):
    cf = certio.read_file(appendix_cert)
    assert cf.ell == 2 and cf.p == 3 and cf.m == 1
    assert len(cf.certificates) == 2
    assert not cf.failures


def test_prove_table_file_input(tmp_path):
    table = {"ell": 2, "p": 3, "m": 1, "targets": {"0": 0}}
    path = tmp_path / "table.json"
    path.write_text(json.dumps(table))
    rc = main(["prove", "--table", str(path), "--out", str(tmp_path)])
    assert rc == EXIT_OK


def test_prove_missing_args():
    assert main(["prove", "--ell", "2", "--p", "3"]) == EXIT_INPUT


def test_prove_impossible_table_exit(tmp_path):
    rc = main(["prove", "--ell", "2", "--p", "3", "--m", "1",
               "--targets", "0=1", "--budget-reps", "8",
               "--out", str(tmp_path)])
    assert rc == EXIT_MATH


def test_verify_fresh_output(appendix_cert):
    assert main(["verify", "--cert", appendix_cert]) == EXIT_OK


def test_verify_corrupted_alpha(appendix_cert, tmp_path):
    doc = json.load(open(appendix_cert))
    doc["certificates"][0]["terms"][0]["alpha"] = \
        (doc["certificates"][0]["terms"][0]["alpha"] % 2) + 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", "--cert", str(bad)]) == EXIT_MATH


def test_verify_wrong_modulus_header(appendix_cert, tmp_path):
    doc = json.load(open(appendix_cert))
    doc["p"] = 4  # not prime: malformed, distinct exit code
    mal = tmp_path / "mal.json"
    mal.write_text(json.dumps(doc))
    assert main(["verify", "--cert", str(mal)]) == EXIT_INPUT


def test_verify_missing_file(tmp_path):
    assert main(["verify", "--cert", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_search_mod4_cli(tmp_path):
    rc = main(["search", "--modulus", "4", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    lines = (tmp_path / "dcweak_mod4.csv").read_text().splitlines()
    assert len(lines) == 17  # header + 16 classes
    header = lines[0].split(",")
    assert header[:4] == ["a2", "a3", "a5", "a7"]
    weak_col = header.index("weak")
    weak = sum(int(line.split(",")[weak_col]) for line in lines[1:])
    assert weak == 8
    assert (tmp_path / "dcweak_mod4.md").exists()


def test_check_weights_small_range(capsys):
    rc = main(["check-weights", "--kmin", "12", "--kmax", "16",
               "--check", "a7mod9"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "ALL PASS" in out


def test_check_weights_odd_input():
    assert main(["check-weights", "--kmin", "13", "--kmax", "15"]) == EXIT_INPUT


def test_verifier_import_independence():
    # the verification path must not pull in the prover
    import subprocess

    code = ("import sys; import heckecert.verifier; "
            "sys.exit(1 if 'heckecert.prover' in sys.modules else 0)")
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True)
    assert proc.returncode == 0


def test_certio_roundtrip(appendix_cert):
    cf = certio.read_file(appendix_cert)
    text = certio.dumps(cf)
    again = certio.loads(text)
    assert certio.dumps(again) == text
