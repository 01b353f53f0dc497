import json
from pathlib import Path

import pytest

from gsss.access import AccessStructure
from gsss.cli import main
from gsss.scheme import PrimeShare, PublicPolynomial


def write(path: Path, data) -> str:
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def structure_file(tmp_path):
    return write(tmp_path / "gamma.json", {"participants": ["A", "B", "C"], "authorized_sets": [["A", "B"], ["B", "C"]]})


@pytest.fixture
def instance(tmp_path, structure_file):
    out = tmp_path / "inst"
    assert main(["deal", structure_file, "42", "--primes", "A=2,B=3,C=5", "--seed", "s", "--out-dir", str(out)]) == 0
    return out


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def snapshot(directory: Path):
    return {p.relative_to(directory).as_posix(): p.read_bytes() for p in sorted(directory.rglob("*")) if p.is_file()}


def test_deal_worked_instance(instance):
    public = json.loads((instance / "public.json").read_text())
    assert public == {"coefficients": ["132", "-21", "1"], "k": 2}
    meta = json.loads((instance / "metadata.json").read_text())
    assert meta["k"] == 2 and meta["n"] == 3 and meta["bit_length"] == 3
    assert sorted(p.name for p in (instance / "shares").iterdir()) == ["A.json", "B.json", "C.json"]


def test_deal_files_round_trip(instance):
    assert PublicPolynomial.from_json(json.loads((instance / "public.json").read_text())).k == 2
    for path in (instance / "shares").iterdir():
        share = PrimeShare.from_json(json.loads(path.read_text()))
        assert share.participant == path.stem
    s = AccessStructure.from_json(json.loads((instance / "structure.json").read_text()))
    assert s.validate().ok and s.k == 2


def test_deal_empty_structure(tmp_path, capsys):
    path = write(tmp_path / "g.json", {"participants": ["A"], "authorized_sets": []})
    code, out, err = run(["deal", path, "1", "--seed", "x", "--out-dir", str(tmp_path / "o")], capsys)
    assert code == 2
    assert "empty access structure" in err
    assert out == ""


def test_deal_malformed_json(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text("{not json")
    code, _, err = run(["deal", str(path), "1", "--out-dir", str(tmp_path / "o")], capsys)
    assert code == 2 and "not valid JSON" in err


def test_deal_prime_failure(tmp_path, capsys, structure_file):
    code, _, err = run(["deal", structure_file, "1", "--bits", "2", "--seed", "x", "--out-dir", str(tmp_path / "o")], capsys)
    assert code == 3 and "prime generation failed" in err


def test_deal_is_byte_identical(tmp_path, structure_file):
    for name in ("one", "two"):
        assert main(["deal", structure_file, "0xdeadbeef", "--bits", "64", "--seed", "fixed", "--out-dir", str(tmp_path / name)]) == 0
    assert snapshot(tmp_path / "one") == snapshot(tmp_path / "two")
    assert main(["deal", structure_file, "0xdeadbeef", "--bits", "64", "--seed", "other", "--out-dir", str(tmp_path / "three")]) == 0
    assert snapshot(tmp_path / "one") != snapshot(tmp_path / "three")


def test_seed_environment_overrides_flag(tmp_path, structure_file, monkeypatch):
    assert main(["deal", structure_file, "7", "--bits", "32", "--seed", "env", "--out-dir", str(tmp_path / "a")]) == 0
    monkeypatch.setenv("GSSS_SEED", "env")
    assert main(["deal", structure_file, "7", "--bits", "32", "--seed", "ignored", "--out-dir", str(tmp_path / "b")]) == 0
    assert snapshot(tmp_path / "a") == snapshot(tmp_path / "b")


def test_reconstruct(instance, capsys):
    shares = instance / "shares"
    code, out, _ = run(["reconstruct", str(instance / "public.json"), str(shares / "A.json"), str(shares / "B.json")], capsys)
    assert (code, out) == (0, "42\n")
    code, out, err = run(
        ["reconstruct", str(instance / "public.json"), str(shares / "A.json"), str(shares / "C.json"), "--expect", "42"], capsys
    )
    assert (code, out) == (0, "22\n")
    assert "does not match" in err
    code, out, _ = run(["reconstruct", str(instance / "public.json"), str(shares / "A.json"), str(shares / "A.json")], capsys)
    assert code == 4 and out == ""


def test_reconstruct_malformed(instance, tmp_path, capsys):
    bad = write(tmp_path / "bad.json", {"participant": "A"})
    code, _, _ = run(["reconstruct", str(instance / "public.json"), bad], capsys)
    assert code == 2
    bad_public = write(tmp_path / "pub.json", {"k": 3, "coefficients": ["1"]})
    code, _, _ = run(["reconstruct", bad_public, str(instance / "shares" / "A.json")], capsys)
    assert code == 2


def test_closure(tmp_path, capsys):
    src = write(tmp_path / "g.json", {"participants": ["A", "B", "C"], "authorized_sets": [["A", "B"]]})
    out = tmp_path / "closed.json"
    code, stdout, _ = run(["closure", src, "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text())["authorized_sets"] == [["A", "B"], ["A", "B", "C"]]
    report = json.loads(stdout)
    assert (report["k_before"], report["k_after"], report["n"]) == (1, 2, 3)

    code, stdout, _ = run(["closure", str(out)], capsys)
    assert code == 0
    assert json.loads(stdout) == json.loads(out.read_text())


def test_closure_too_large(tmp_path, capsys):
    src = write(tmp_path / "g.json", {"participants": list("ABCDEFGHIJ"), "authorized_sets": [["A"]]})
    code, _, err = run(["closure", src, "--cap", "64"], capsys)
    assert code == 5 and "closure too large" in err


def test_analyze_quadratic_with_figure(instance, tmp_path, capsys):
    fig = tmp_path / "fig.png"
    code, out, _ = run(["analyze", str(instance / "public.json"), "--metadata", str(instance / "metadata.json"),
                        "--plot", str(fig), "--secret", "42"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["delta2"] == "-87/4" and report["delta1"] == "-inf"
    assert {"delta1", "delta2", "secret_low", "secret_high", "width", "warnings"} <= set(report)
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_analyze_linear_and_cubic(tmp_path, capsys):
    linear = write(tmp_path / "lin.json", {"k": 1, "coefficients": ["36", "1"]})
    code, out, _ = run(["analyze", linear], capsys)
    report = json.loads(out)
    assert code == 0 and (report["delta1"], report["delta2"]) == ("-inf", "+inf")

    cubic = write(tmp_path / "cub.json", {"k": 3, "coefficients": ["-858", "300", "-31", "1"]})
    code, out, _ = run(["analyze", cubic, "--precision", "1e-6"], capsys)
    report = json.loads(out)
    from fractions import Fraction

    assert code == 0
    assert Fraction(report["secret_low"]) < 42 < Fraction(report["secret_high"])
    assert abs(float(Fraction(report["secret_high"])) - 70.550017054097) < 1e-6


def test_analyze_bad_precision(instance, capsys):
    code, _, _ = run(["analyze", str(instance / "public.json"), "--precision", "-1"], capsys)
    assert code == 2


def test_shamir_split_and_combine(tmp_path, capsys):
    out = tmp_path / "sh"
    code, _, _ = run(["shamir", "split", "42", "-n", "3", "-t", "2", "--q", "257", "--seed", "s", "--out-dir", str(out)], capsys)
    assert code == 0
    first = json.loads((out / "share_1.json").read_text())
    assert first["q"] == "257" and first["t"] == 2
    code, stdout, _ = run(["shamir", "combine", str(out / "share_1.json"), str(out / "share_3.json")], capsys)
    assert (code, stdout) == (0, "42\n")
    code, _, err = run(["shamir", "combine", str(out / "share_2.json")], capsys)
    assert code == 2 and "need 2 shares" in err
    code, _, _ = run(["shamir", "split", "300", "-n", "3", "-t", "2", "--q", "257", "--seed", "s", "--out-dir", str(out)], capsys)
    assert code == 2


def test_shamir_split_is_byte_identical(tmp_path):
    for name in ("a", "b"):
        assert main(["shamir", "split", "0x0102", "-n", "5", "-t", "3", "--seed", "z", "--out-dir", str(tmp_path / name)]) == 0
    assert snapshot(tmp_path / "a") == snapshot(tmp_path / "b")


def test_bench(tmp_path, capsys):
    code, out, _ = run(["bench", "--k-list", "50", "--repeat", "1"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "k,nanoseconds" and len(lines) == 2
    assert lines[1].startswith("50,")
    fig = tmp_path / "bench.png"
    code, out, _ = run(["bench", "--k-list", "10,20,40", "--repeat", "1", "--plot", str(fig)], capsys)
    assert code == 0 and len(out.strip().splitlines()) == 4 and fig.exists()
    code, _, _ = run(["bench", "--k-list", ""], capsys)
    assert code == 2
