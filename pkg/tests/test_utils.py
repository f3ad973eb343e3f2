import os
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd
import pytest

from src import utils
from src.errors import AnosovError
from src.representation import Representation
from src.weyl_group import FaceType

"""
    Aplica mocks nos modelos de nome de arquivo do módulo `utils`,
    permitindo testes independentes da configuração real.
"""
@pytest.fixture
def mock_config():
    with mock.patch("src.utils.REPORT_FILENAME_TEMPLATE", "{command}_{name}.txt"), \
         mock.patch("src.utils.TABLE_FILENAME_TEMPLATE", "{command}_{name}.csv"), \
         mock.patch("src.utils.PLOT_FILENAME_TEMPLATE", "{command}_{name}.svg"):
        yield

"""
    Testa a montagem dos caminhos de relatório, tabela e gráfico.
"""
def test_output_filepaths(mock_config):
    assert utils.get_report_filepath("saida", "certify", "A") == os.path.join("saida", "certify_A.txt")
    assert utils.get_table_filepath("saida", "domain", "rep") == os.path.join("saida", "domain_rep.csv")
    assert utils.get_plot_filepath("saida", "limitset", "rep") == os.path.join("saida", "limitset_rep.svg")

"""
    Testa o cabeçalho: versão na primeira linha, chaves ordenadas e nenhuma data.
"""
def test_render_header_is_sorted_and_deterministic():
    header = utils.render_header({"radius": 6, "command": "certify", "min_slope": 0.1})
    lines = header.splitlines()
    assert lines[0].startswith("# projeto_anosov ")
    assert lines[1:] == ["# command=certify", "# min_slope=0.1", "# radius=6"]
    assert header == utils.render_header({"min_slope": 0.1, "radius": 6, "command": "certify"})

"""
    Testa a leitura de listas numéricas com frações exatas.
"""
def test_parse_float_list():
    assert utils.parse_float_list("4,1/4") == [4.0, 0.25]
    assert utils.parse_float_list("2 1 0.5") == [2.0, 1.0, 0.5]
    with pytest.raises(AnosovError):
        utils.parse_float_list("")
    with pytest.raises(AnosovError):
        utils.parse_float_list("1/0")
    with pytest.raises(AnosovError):
        utils.parse_float_list("a,b")

"""
    Cria pastas temporárias de saída com arquivos dummy para testar a limpeza.
"""
@pytest.fixture
def pastas_saida(tmp_path):
    pastas = [tmp_path / "output", tmp_path / "reports", tmp_path / "plots"]
    for p in pastas:
        p.mkdir(parents=True, exist_ok=True)
        (p / "dummy.txt").write_text("teste")
    return [str(p) for p in pastas]

"""
    Testa a função `limpar_pastas_saida`: arquivos removidos, pastas mantidas.
"""
def test_limpar_pastas_saida(pastas_saida):
    utils.limpar_pastas_saida(pastas_saida)
    for pasta in pastas_saida:
        p = Path(pasta)
        assert p.is_dir()
        assert not any(p.iterdir())

"""
    Testa a limpeza com a pasta padrão do config (substituída por mock).
"""
def test_limpar_pastas_saida_default_folder(pastas_saida):
    with mock.patch("src.utils.OUTPUT_FOLDER", pastas_saida[0]):
        utils.limpar_pastas_saida()
    assert not any(Path(pastas_saida[0]).iterdir())
    assert (Path(pastas_saida[1]) / "dummy.txt").is_file()

"""
    Testa o cache em disco do perfil de gaps: a segunda chamada lê do cache e devolve a mesma tabela.
"""
def test_cached_gap_profile(tmp_path):
    rep = Representation({"A": np.diag([4.0, 0.25])})
    face = FaceType.full(2)
    first = utils.cached_gap_profile(rep, face, 4, cache_dir=str(tmp_path / "cache"))
    assert any((tmp_path / "cache").rglob("*.pkl"))
    with mock.patch("src.utils.gap_profile", side_effect=AssertionError("cache não utilizado")):
        second = utils.cached_gap_profile(rep, face, 4, n_jobs=2, cache_dir=str(tmp_path / "cache"))
    pd.testing.assert_frame_equal(first.table, second.table)
    uncached = utils.cached_gap_profile(rep, face, 4, cache_dir=None)
    pd.testing.assert_frame_equal(first.table, uncached.table)
