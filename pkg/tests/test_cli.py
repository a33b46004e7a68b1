import pytest

from spfr.cli import main, random_tree_parens, read_perm_text


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gen_perm_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "gen", "perm", "--n", "8", "--seed", "1", "--out", str(a))
    run(capsys, "gen", "perm", "--n", "8", "--seed", "1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert read_perm_text(str(a)).n == 8


def test_gen_quad19(tmp_path, capsys):
    f = tmp_path / "f.txt"
    run(capsys, "gen", "func", "--formula", "quad19", "--out", str(f))
    lines = f.read_text().splitlines()
    assert lines[0] == "19 19"
    assert lines[1].split()[0] == "18"  # f(0) = -1 mod 19


def test_gen_tree_valid(tmp_path, capsys):
    t = tmp_path / "t.txt"
    run(capsys, "gen", "tree", "--n", "100", "--seed", "7", "--out", str(t))
    from spfr.bptree import BpTree

    assert BpTree(t.read_text().strip()).n == 100


def test_build_and_query_power(tmp_path, capsys):
    perm = tmp_path / "p.txt"
    perm.write_text("5\n1 2 0 4 3\n")
    cont = tmp_path / "p.bin"
    code, out = run(capsys, "build", "powers", "--in", str(perm), "--out", str(cont))
    assert code == 0 and "redundancy" in out
    code, out = run(capsys, "query", str(cont), "power", "--x", "0", "--k", "5")
    assert out.strip() == "2"


def test_query_inverse_with_count(tmp_path, capsys):
    perm = tmp_path / "c7.txt"
    perm.write_text("7\n" + " ".join(str((i + 1) % 7) for i in range(7)) + "\n")
    cont = tmp_path / "c7.bin"
    run(capsys, "build", "shortcut", "--in", str(perm), "--out", str(cont), "--t", "3")
    code, out = run(capsys, "query", str(cont), "inverse", "--x", "1", "--count")
    assert out.strip() == "0 evals=4"


def test_query_finv(tmp_path, capsys):
    f = tmp_path / "f.txt"
    run(capsys, "gen", "func", "--formula", "quad19", "--out", str(f))
    cont = tmp_path / "f.bin"
    run(capsys, "build", "func", "--in", str(f), "--out", str(cont))
    code, out = run(capsys, "query", str(cont), "finv", "--i", "18", "--k", "1")
    assert out.strip() == "0 17"


def test_benes_space_line(tmp_path, capsys):
    perm = tmp_path / "p.txt"
    cont = tmp_path / "p.bin"
    run(capsys, "gen", "perm", "--n", "1024", "--seed", "2", "--out", str(perm))
    code, out = run(capsys, "build", "benes", "--in", str(perm), "--out", str(cont), "--t", "1")
    assert "payload    : 9728 bits" in out


def test_verify_pass_and_mutation_fail(tmp_path, capsys):
    perm = tmp_path / "p.txt"
    cont = tmp_path / "p.bin"
    run(capsys, "gen", "perm", "--n", "64", "--seed", "3", "--out", str(perm))
    run(capsys, "build", "benes", "--in", str(perm), "--out", str(cont), "--t", "1")
    code, out = run(capsys, "verify", str(cont), "--data", str(perm))
    assert code == 0 and "passed" in out
    data = bytearray(cont.read_bytes())
    data[12 + 20 + 24] ^= 1  # first live switch bit of the BNS1 section
    bad = tmp_path / "bad.bin"
    bad.write_bytes(bytes(data))
    code, out = run(capsys, "verify", str(bad), "--data", str(perm))
    assert code == 1 and "FAIL" in out


def test_verify_func_and_tree(tmp_path, capsys):
    f = tmp_path / "f.txt"
    run(capsys, "gen", "func", "--n", "40", "--m", "13", "--seed", "5", "--out", str(f))
    cont = tmp_path / "f.bin"
    run(capsys, "build", "func", "--in", str(f), "--out", str(cont))
    code, out = run(capsys, "verify", str(cont), "--data", str(f), "--sample", "80")
    assert code == 0, out
    t = tmp_path / "t.txt"
    run(capsys, "gen", "tree", "--n", "300", "--seed", "6", "--out", str(t))
    tcont = tmp_path / "t.bin"
    run(capsys, "build", "tree", "--in", str(t), "--out", str(tcont))
    code, out = run(capsys, "query", str(tcont), "nextexcess", "--i", "0", "--k", "2")
    assert code == 0
    code, out = run(capsys, "verify", str(tcont), "--data", str(t), "--sample", "150")
    assert code == 0, out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "nonsense", "--in", "x", "--out", "y"])
    assert exc.value.code == 2


def test_space_command(tmp_path, capsys):
    perm = tmp_path / "p.txt"
    cont = tmp_path / "p.bin"
    run(capsys, "gen", "perm", "--n", "128", "--seed", "9", "--out", str(perm))
    run(capsys, "build", "powers", "--in", str(perm), "--out", str(cont), "--backend", "naive")
    code, out = run(capsys, "space", str(cont))
    assert code == 0 and "bound" in out and "redundancy" in out


def test_random_tree_wrapper_is_single_tree():
    for seed in range(5):
        s = random_tree_parens(50, seed)
        exc = 0
        for i, ch in enumerate(s):
            exc += 1 if ch == "(" else -1
            assert exc >= (1 if i < len(s) - 1 else 0)
        assert exc == 0
