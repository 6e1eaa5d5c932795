import shlex

import pytest

from palfree.certificates import (Certificate, compare_certificates,
                                  parse_certificate, read_certificate)
from palfree.cli import main, run_command


def test_render_parse_roundtrip():
    cert = Certificate("optimality --pal 8", "pass")
    cert.put("nodes", 129)
    cert.put("max-depth", 8)
    cert.lists["longest-words"] = ["00101100", "00110100"]
    cert.wall_ms = 17
    back = parse_certificate(cert.render())
    assert back.comparable() == cert.comparable()
    assert back.wall_ms == 17


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_certificate("not a certificate\n")
    with pytest.raises(ValueError):
        parse_certificate("palfree certificate 99\ncommand: x\noutcome: pass\n")


def test_compare_certificates_notices_differences():
    a = Certificate("cmd", "pass", {"k": "1"})
    b = Certificate("cmd", "pass", {"k": "2"})
    rep = compare_certificates(a, b)
    assert not rep.matched
    assert any("k" in d for d in rep.differences)
    assert compare_certificates(a, a).matched


def test_replay_roundtrip(tmp_path, capsys):
    cmd = "optimality --alphabet 2 --pal 8 --cap 64 --symmetry"
    cert = run_command(shlex.split(cmd))
    path = tmp_path / "pal8.cert"
    cert.write(path)
    assert main(["replay", str(path)]) == 0
    out = capsys.readouterr().out
    assert "replay ok" in out


def test_replay_detects_tampering(tmp_path, capsys):
    cmd = "optimality --alphabet 2 --pal 8 --cap 64 --symmetry"
    cert = run_command(shlex.split(cmd))
    cert.evidence["max-depth-reached"] = "999"
    path = tmp_path / "tampered.cert"
    cert.write(path)
    assert main(["replay", str(path)]) == 1
    out = capsys.readouterr().out
    assert "MISMATCH" in out


def test_timing_not_compared():
    a = Certificate("cmd", "pass", {"k": "1"})
    a.wall_ms = 5
    b = Certificate("cmd", "pass", {"k": "1"})
    b.wall_ms = 50000
    assert compare_certificates(a, b).matched


def test_exit_code_contract():
    assert Certificate("c", "pass").exit_code == 0
    assert Certificate("c", "fail").exit_code == 1
    assert Certificate("c", "inconclusive").exit_code == 2
