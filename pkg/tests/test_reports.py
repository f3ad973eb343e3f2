import numpy as np
import pandas as pd
import pytest

from src import reports

HEADER = "# projeto_anosov 0.1.0\n# command=teste\n"

"""
    Testa a formatação de valores: %.<p>g para reais, true/false para booleanos.
"""
def test_format_value():
    assert reports.format_value(2 * np.log(4.0)) == "2.77259"
    assert reports.format_value(np.float64(0.1234567), precision=3) == "0.123"
    assert reports.format_value(True) == "true"
    assert reports.format_value(np.bool_(False)) == "false"
    assert reports.format_value(7) == "7"
    assert reports.format_value("A B") == "A B"

"""
    Testa o relatório key=value: cabeçalho primeiro, depois um par por linha, na ordem dada.
"""
def test_write_report(tmp_path, caplog):
    caplog.set_level("INFO")
    path = tmp_path / "saida" / "certify_A.txt"
    reports.write_report(str(path), HEADER, {"pass": True, "c": 1.5, "radius": 6})
    assert path.read_text(encoding="utf-8") == HEADER + "pass=true\nc=1.5\nradius=6\n"
    assert "Relatório salvo em" in caplog.text

"""
    Testa a tabela CSV: cabeçalho, colunas e números na precisão pedida.
"""
def test_write_table(tmp_path):
    path = tmp_path / "tabela.csv"
    table = pd.DataFrame({"length": [1, 2], "min_gap": [1 / 3, 2 / 3], "argmin_word": ["A", "AB"]})
    reports.write_table(str(path), HEADER, table, precision=4)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[:2] == HEADER.splitlines()
    assert lines[2:] == ["length,min_gap,argmin_word", "1,0.3333,A", "2,0.6667,AB"]

"""
    Testa o gráfico SVG: arquivo criado e idêntico byte a byte em duas execuções.
"""
def test_scatter_svg_is_deterministic(tmp_path):
    table = pd.DataFrame({"x": [0.0, 0.5, 1.0], "y": [1.0, 0.0, -1.0], "class": ["in", "out", "out"]})
    first, second = tmp_path / "a" / "plot.svg", tmp_path / "b" / "plot.svg"
    reports.scatter_svg(table, "x", "y", str(first), "Domínio", hue="class")
    reports.scatter_svg(table, "x", "y", str(second), "Domínio", hue="class")
    content = first.read_bytes()
    assert content.startswith(b"<?xml")
    assert content == second.read_bytes()
