from pathlib import Path

import pytest

import main

GOLDEN = "2\n2 1\n1 1\n"
CYCLIC = "gen A\n2\n4 0\n0 0.25\n"
UNIPOTENT = "gen A\n2\n1 1\n0 1\n"

"""
    Pasta de trabalho temporária com os arquivos de entrada usados pelo CLI.
"""
@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "golden.txt").write_text(GOLDEN, encoding="utf-8")
    (tmp_path / "cyclic.txt").write_text(CYCLIC, encoding="utf-8")
    (tmp_path / "unipotent.txt").write_text(UNIPOTENT, encoding="utf-8")
    return tmp_path


def run_cli(workdir, *args):
    return main.main(list(args) + ["--output-dir", str(workdir / "out"), "--no-cache"])

"""
    Testa o comando `cartan`: vetor (2 ln phi, -2 ln phi) com 6 algarismos e tabela gravada.
"""
def test_cartan_command(workdir, capsys):
    assert run_cli(workdir, "cartan", "golden.txt") == 0
    assert capsys.readouterr().out.strip() == "0.962424 -0.962424"
    table = (workdir / "out" / "cartan_golden.csv").read_text(encoding="utf-8")
    assert table.startswith("# projeto_anosov ")
    assert "# command=cartan" in table

"""
    Testa `weyl thickenings` em d = 3: um único espessamento balanceado.
"""
def test_weyl_thickenings_command(workdir, capsys):
    assert run_cli(workdir, "weyl", "thickenings", "--d", "3") == 0
    assert capsys.readouterr().out.splitlines() == ["123|132|213", "count=1"]
    assert (workdir / "out" / "weyl_thickenings_d3_1-2.txt").is_file()

"""
    Testa `certify`: a cíclica diagonal é aprovada (saída 0) e a unipotente reprovada (saída 2).
"""
def test_certify_command_exit_codes(workdir, capsys):
    assert run_cli(workdir, "certify", "--rep", "cyclic.txt", "--radius", "12", "--min-slope", "0.1") == 0
    assert capsys.readouterr().out.startswith("pass=true c=2.77")
    report = (workdir / "out" / "certify_cyclic.txt").read_text(encoding="utf-8")
    assert "pass=true" in report
    assert "semantics=evidence at radius 12" in report
    assert run_cli(workdir, "certify", "--rep", "unipotent.txt", "--radius", "30", "--min-slope", "0.05") == 2
    assert capsys.readouterr().out.startswith("pass=false")

"""
    Testa os erros de uso (saída 1 via SystemExit) e de arquivo ausente (saída 1).
"""
def test_usage_and_missing_file_errors(workdir):
    with pytest.raises(SystemExit) as excinfo:
        main.main(["certify"])
    assert excinfo.value.code == 1
    assert run_cli(workdir, "certify", "--rep", "nao_existe.txt", "--radius", "3", "--min-slope", "0.1") == 1
    assert run_cli(workdir, "cartan", "golden.txt", "--rank-tol", "-1") == 1

"""
    Testa `schottky build` seguido de `certify` no arquivo gerado.
"""
def test_schottky_build_then_certify(workdir, capsys):
    out = str(workdir / "schottky.txt")
    args = ["schottky", "build", "--eigs", "4,1/4", "--conj-angle", "0.7853981633974483", "--out", out]
    assert run_cli(workdir, *args) == 0
    text = Path(out).read_text(encoding="utf-8")
    assert text.startswith("# projeto_anosov ")
    assert "gen A" in text and "gen B" in text
    assert run_cli(workdir, "certify", "--rep", out, "--radius", "6", "--min-slope", "0.1") == 0

"""
    Testa `schottky search` com o par fraco e teto 2: nenhuma potência aprovada (saída 2).
"""
def test_schottky_search_cap_exceeded(workdir, capsys):
    args = [
        "schottky", "search", "--eigs", "101/100,100/101", "--conj-angle", "0.7853981633974483",
        "--radius", "3", "--min-slope", "0.01", "--cap", "2", "--samples", "200",
    ]
    assert run_cli(workdir, *args) == 2
    assert capsys.readouterr().out.strip() == "threshold=none"

"""
    Testa `domain` numa execução pequena: todas as câmaras fora do espessamento {e} e censo gravado.
"""
def test_domain_command(workdir, capsys):
    args = [
        "domain", "--rep", "cyclic.txt", "--word-length", "1", "--power", "4", "--samples", "50",
        "--properness-radius", "3", "--compact-size", "5",
    ]
    assert run_cli(workdir, *args) == 0
    assert capsys.readouterr().out.strip() == "in=0 out=50 ambiguous=0"
    report = (workdir / "out" / "domain_cyclic.txt").read_text(encoding="utf-8")
    assert "thickening=12" in report
    assert "stabilized=" in report
    assert (workdir / "out" / "domain_cyclic_census.csv").is_file()

"""
    Testa `limitset` com séries de expansão e testemunhas, e o gráfico SVG.
"""
def test_limitset_command(workdir, capsys):
    out = str(workdir / "schottky.txt")
    build = ["schottky", "build", "--eigs", "4,1/4", "--conj-angle", "0.7853981633974483", "--out", out]
    assert run_cli(workdir, *build) == 0
    args = [
        "limitset", "--rep", out, "--word-length", "3", "--power", "20", "--rays", "3",
        "--expansion-radius", "2", "--plot",
    ]
    assert run_cli(workdir, *args) == 0
    assert capsys.readouterr().out.startswith("points=")
    report = (workdir / "out" / "limitset_schottky.txt").read_text(encoding="utf-8")
    assert "witnesses_missing=0" in report
    assert (workdir / "out" / "limitset_schottky.svg").is_file()

"""
    Testa `clean`: os arquivos gerados somem e a pasta de saída é mantida.
"""
def test_clean_command(workdir):
    assert run_cli(workdir, "cartan", "golden.txt") == 0
    assert any((workdir / "out").iterdir())
    assert run_cli(workdir, "clean") == 0
    assert (workdir / "out").is_dir()
    assert not any((workdir / "out").iterdir())

"""
    Testa que os arquivos gerados não dependem de --threads: mesmas execuções com
    1 e 2 workers produzem arquivos idênticos byte a byte.
"""
def test_outputs_are_independent_of_threads(workdir, capsys):
    args = [
        "domain", "--rep", "cyclic.txt", "--word-length", "1", "--power", "4", "--samples", "300",
        "--properness-radius", "3", "--compact-size", "5",
    ]
    outputs = []
    for threads in ("1", "2"):
        assert run_cli(workdir, *args, "--threads", threads) == 0
        assert run_cli(workdir, "certify", "--rep", "cyclic.txt", "--radius", "8", "--min-slope", "0.1",
                       "--threads", threads) == 0
        outputs.append({path.name: path.read_bytes() for path in sorted((workdir / "out").iterdir())})
    assert outputs[0] == outputs[1]
    assert b"threads" not in outputs[0]["domain_cyclic.txt"]
