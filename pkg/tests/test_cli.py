from click.testing import CliRunner

from bbfill.cli import main, split_certificates
from bbfill.corpus import corpus

from .conftest import ctx_for


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_build():
    res = run("build", "-c", "builtin:TRI")
    assert res.exit_code == 0
    assert "L = 2  K = 3" in res.output and "13n^2 + 36n + 10" in res.output


def test_fill_verify(tmp_path):
    ctx = ctx_for("TRI")
    words = corpus(ctx.P_H, 3, seed=1)
    wf = tmp_path / "w.txt"
    wf.write_text("\n".join(ctx.complex.alphabet.format(w) for w in words) + "\n")
    cert = tmp_path / "c.txt"
    assert run("fill", "-c", "builtin:TRI", "-w", str(wf), "-o", str(cert)).exit_code == 0
    assert len(split_certificates(cert.read_text())) == 3
    res = run("verify", "-c", "builtin:TRI", "--cert", str(cert))
    assert res.exit_code == 0 and res.output.count("PASS") == 3
    cert.write_text(cert.read_text().replace("\t+1\n", "\t-1\n", 1))
    assert run("verify", "-c", "builtin:TRI", "--cert", str(cert)).exit_code == 1


def test_fill_rejects_non_null(tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("u>v\n")
    res = run("fill", "-c", "builtin:TRI", "-w", str(wf), "-o", str(tmp_path / "c"))
    assert res.exit_code == 1


def test_oracle(tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("u>v v>u\nu>v v>w w>u\n")
    res = run("oracle", "-c", "builtin:TRI", "-w", str(wf), "--max-len", "5")
    assert res.exit_code == 0
    assert res.output.count("area=1\texact") == 2


def test_bench_exponent(tmp_path):
    out = tmp_path / "b.csv"
    assert run("bench", "-c", "builtin:GRID2", "--family", "brady", "--kmax", "4", "--csv", str(out)).exit_code == 0
    first = out.read_bytes()
    run("bench", "-c", "builtin:GRID2", "--kmax", "4", "--csv", str(out))
    assert out.read_bytes() == first
    res = run("exponent", "--csv", str(out))
    assert res.exit_code == 0 and res.output.startswith("slope")


def test_check(tmp_path):
    assert run("check", "-c", "builtin:OCTA").exit_code == 0
    res = run("check", "-c", "builtin:ANNULUS", "--max-states", "20000")
    assert res.exit_code == 1 and "UNKNOWN" in res.output and "obstructing cycle" in res.output


def test_json_complex(tmp_path):
    f = tmp_path / "sq.json"
    f.write_text('{"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"],["a","c"]], "base": "b"}')
    res = run("build", "-c", str(f))
    assert res.exit_code == 0 and "q = b" in res.output
