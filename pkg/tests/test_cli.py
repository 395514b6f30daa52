import pytest

from relhom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip().splitlines(), out.err


def test_gldim_records(capsys):
    code, lines, _ = run(capsys, "gldim", "--algebra", "builtin:kronecker", "--machine")
    assert code == 0
    assert lines[-1].startswith("VERDICT gldim value=finite:1 bounds=d:6,B:16 witness=")


def test_kronecker_n_gldim_carries_caveats(capsys):
    code, lines, _ = run(capsys, "gldim", "--algebra", "builtin:kronecker", "--n", "1",
                         "--dim-bound", "3", "--machine")
    assert code == 2
    assert "value=finite:0" in lines[-1]
    assert lines[-1].endswith("certified=no caveats=fd-restriction,infinite-type-hereditary")
    code, lines, _ = run(capsys, "gldim", "--algebra", "builtin:kronecker", "--n", "1", "--dim-bound", "3")
    assert any(line.strip().startswith("caveat[infinite-type-hereditary]") for line in lines)


def test_module_commands(capsys, data_dir):
    s1 = str(data_dir / "a2_s1.mod")
    s2 = str(data_dir / "a2_s2.mod")
    code, lines, _ = run(capsys, "pd", "--module", s1, "--machine")
    assert code == 0 and "value=finite:1" in lines[-1]
    code, lines, _ = run(capsys, "ext", "--module", s1, "--module2", s2, "--i", "1", "--machine")
    assert "value=dim:1" in lines[-1]
    code, lines, _ = run(capsys, "npd", "--module", s1, "--n", "1", "--machine")
    assert "value=finite:0" in lines[-1]
    code, lines, _ = run(capsys, "nproj", "--module", s1, "--n", "0", "--machine")
    assert "value=no" in lines[-1]


def test_nexact_and_complexes(capsys, data_dir):
    seq = str(data_dir / "a2_nonsplit.seq")
    assert "value=no" in run(capsys, "nexact", "--seq", seq, "--n", "1", "--machine")[1][-1]
    assert "value=yes" in run(capsys, "nexact", "--seq", seq, "--n", "0", "--machine")[1][-1]
    cplx = str(data_dir / "a3_p3_p1.cplx")
    code, lines, _ = run(capsys, "cnpd", "--complex", cplx, "--n", "1", "--machine")
    assert code == 0 and "value=finite:0" in lines[-1]


def test_sing_and_recollement(capsys, data_dir):
    code, lines, _ = run(capsys, "sing", "--algebra", str(data_dir / "dual_numbers.alg"), "--n", "1", "--machine")
    assert code == 0 and "value=no" in lines[-1] and "witness=module:S(1)(1)" in lines[-1]
    code, lines, _ = run(capsys, "recollement", "--gluing", str(data_dir / "a2_point.glu"), "--n", "1", "--machine")
    assert code == 0 and lines[-1].startswith("VERDICT recollement[A2+point,n=1] value=yes")


def test_verify(capsys):
    code, lines, _ = run(capsys, "verify", "--theorem", "ext-oracle", "--algebra", "builtin:A2", "--n", "1",
                         "--machine")
    assert code == 0 and "value=pass" in lines[-1]


def test_errors(capsys, data_dir):
    code, _, err = run(capsys, "pd", "--algebra", "builtin:A3", "--module", str(data_dir / "a2_s1.mod"))
    assert code == 1 and "different algebra" in err
    code, _, err = run(capsys, "npd", "--module", str(data_dir / "a2_s1.mod"))
    assert code == 1 and "--n" in err
    with pytest.raises(SystemExit):
        main(["nosuch"])
