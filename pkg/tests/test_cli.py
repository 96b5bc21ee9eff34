import csv

import pytest

from eccfrog.cli import main
from eccfrog.registry import FROG_B, FROG_B_INDEX


def test_verify_frog(capsys, tmp_path):
    out = tmp_path / "facts.csv"
    assert main(["-q", "verify", "--curve", "eccfrog522pp", "--facts-csv", str(out)]) == 0
    assert "OVERALL: PASS" in capsys.readouterr().out
    rows = dict(csv.reader(out.open()))
    assert rows["check.anti_mov"] == "pass"


def test_verify_vacuous_anti_mov(capsys):
    assert main(["-q", "verify", "--curve", "p256", "--anti-mov-max", "0"]) == 0
    assert "vacuous" in capsys.readouterr().out


def test_verify_bad_twist_factor_fails(capsys):
    assert main(["-q", "verify", "--curve", "frog", "--twist-factor", "4"]) == 1
    assert "OVERALL: FAIL" in capsys.readouterr().out


def test_unknown_curve_exits_nonzero(capsys):
    assert main(["-q", "verify", "--curve", "curve25519"]) == 2
    assert "unknown" in capsys.readouterr().err.lower()


def test_derive(capsys):
    assert main(["-q", "derive", "--what", "b", "--index", str(FROG_B_INDEX)]) == 0
    out = capsys.readouterr().out
    assert str(FROG_B) in out and "matches published: yes" in out
    assert main(["-q", "derive", "--what", "gx", "--index", "1"]) == 0
    assert "n/a" in capsys.readouterr().out


def test_minigen(capsys, tmp_path):
    tr = tmp_path / "t.csv"
    assert main(["-q", "minigen", "--bits", "16", "--transcript", str(tr)]) == 0
    out = capsys.readouterr().out
    assert "name = minifrog16" in out and "OVERALL: PASS" in out
    assert tr.read_text().startswith("index,status,reason\n")


def test_encrypt_decrypt_round_trip(tmp_path):
    key = tmp_path / "k"
    src, enc, dec = tmp_path / "m", tmp_path / "m.hf", tmp_path / "m.out"
    src.write_bytes(b"frog " * 1000)
    assert main(["-q", "keygen", "--curve", "eccfrog522pp", "--out", str(key)]) == 0
    assert (key.stat().st_mode & 0o777) == 0o600
    assert main(["-q", "encrypt", "--curve", "eccfrog522pp", "--pk", f"{key}.pub", "--in", str(src), "--out", str(enc)]) == 0
    assert main(["-q", "decrypt", "--sk", str(key), "--in", str(enc), "--out", str(dec)]) == 0
    assert dec.read_bytes() == src.read_bytes()

    tampered = bytearray(enc.read_bytes())
    tampered[-1] ^= 1
    enc.write_bytes(bytes(tampered))
    dec.unlink()
    assert main(["-q", "decrypt", "--sk", str(key), "--in", str(enc), "--out", str(dec)]) == 1
    assert not dec.exists()


def test_encrypt_curve_mismatch(tmp_path):
    key = tmp_path / "k"
    (tmp_path / "m").write_bytes(b"x")
    assert main(["-q", "keygen", "--curve", "p256", "--out", str(key)]) == 0
    rc = main(["-q", "encrypt", "--curve", "p384", "--pk", f"{key}.pub", "--in", str(tmp_path / "m"),
               "--out", str(tmp_path / "o")])
    assert rc == 1


def test_bench_cli(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["-q", "bench", "--curves", "p256", "--iters", "10", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
