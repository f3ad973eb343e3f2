import numpy as np
import pytest

from src import matrix_io as mio
from src.errors import MatrixFormatError, NotUnimodular
from src.flag_geometry import flag_distance
from src.weyl_group import FaceType, Thickening

REP_TEXT = """# par de Schottky
gen A
2
4 0
0 0.25

gen B
2
2.125 1.875
1.875 2.125
"""

"""
    Testa a leitura de uma representação com cabeçalhos `gen X` e comentários.
"""
def test_parse_representation_named():
    rep = mio.parse_representation(REP_TEXT)
    assert rep.letters == ("A", "B")
    assert np.allclose(rep.generator_matrix("B"), [[2.125, 1.875], [1.875, 2.125]])

"""
    Testa geradores anônimos: os blocos recebem A, B, ... na ordem do arquivo.
"""
def test_parse_representation_anonymous():
    rep = mio.parse_representation("2\n2 1\n1 1\n\n2\n1 2\n0 1\n")
    assert rep.letters == ("A", "B")
    assert np.allclose(rep.generator_matrix("A"), [[2.0, 1.0], [1.0, 1.0]])

"""
    Testa os erros de formato com o número da linha na mensagem.

    Verifica:
        - linha com número errado de entradas;
        - entrada não numérica;
        - mistura de blocos com e sem cabeçalho;
        - letra repetida e cabeçalho inválido;
        - arquivo vazio.
"""
def test_parse_representation_format_errors():
    with pytest.raises(MatrixFormatError, match="linha 3"):
        mio.parse_representation("2\n1 0\n0\n")
    with pytest.raises(MatrixFormatError, match="linha 2"):
        mio.parse_representation("2\n1 x\n0 1\n")
    with pytest.raises(MatrixFormatError, match="gen X"):
        mio.parse_representation("gen A\n2\n1 0\n0 1\n\n2\n1 0\n0 1\n")
    with pytest.raises(MatrixFormatError, match="repetido"):
        mio.parse_representation("gen A\n2\n1 0\n0 1\n\ngen A\n2\n1 0\n0 1\n")
    with pytest.raises(MatrixFormatError, match="cabeçalho inválido"):
        mio.parse_representation("gen a\n2\n1 0\n0 1\n")
    with pytest.raises(MatrixFormatError):
        mio.parse_representation("# só comentários\n")

"""
    Testa que erros do domínio (determinante != 1) não são mascarados como erro de formato.
"""
def test_parse_representation_not_unimodular():
    with pytest.raises(NotUnimodular):
        mio.parse_representation("2\n2 0\n0 1\n")

"""
    Testa a gravação de uma representação com cabeçalho e a releitura exata (17 algarismos).
"""
def test_write_and_read_representation(tmp_path):
    rep = mio.parse_representation(REP_TEXT)
    path = tmp_path / "sub" / "rep.txt"
    mio.write_representation(path, rep, header="# projeto_anosov\n")
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# projeto_anosov\ngen A\n2\n")
    again = mio.read_representation(path)
    for letter in rep.letters:
        assert np.array_equal(again.generator_matrix(letter), rep.generator_matrix(letter))

"""
    Testa a leitura de flags com pivôs e a rejeição de cabeçalhos e pivôs inválidos.
"""
def test_parse_flags(tmp_path):
    flags = mio.parse_flags("pivots: 1\n3\n1 0 0\n2 1 0\n2 0 1\n\npivots: 1\n2\n0 1\n1 0\n")
    assert flags[0].face == FaceType(3, (1,))
    assert np.allclose(np.abs(flags[0].frame[:, 0]), [1 / 3, 2 / 3, 2 / 3])
    assert flags[1].face == FaceType(2, (1,))
    with pytest.raises(MatrixFormatError, match="pivots"):
        mio.parse_flags("2\n1 0\n0 1\n")
    with pytest.raises(MatrixFormatError, match="linha 1"):
        mio.parse_flags("pivots: 2\n2\n1 0\n0 1\n")
    path = tmp_path / "flags.txt"
    mio.write_flags(path, flags)
    again = mio.read_flags(path)
    assert all(flag_distance(a, b) < 1e-14 for a, b in zip(flags, again))

"""
    Testa a leitura de espessamentos, um por linha, e a mensagem com o número da linha.
"""
def test_parse_thickenings(tmp_path):
    thickenings = mio.parse_thickenings("# d = 3\n123|132|213\n\n123\n")
    assert thickenings == [Thickening.parse("123|132|213"), Thickening.parse("123")]
    with pytest.raises(MatrixFormatError, match="linha 2"):
        mio.parse_thickenings("123\n12x\n")
    with pytest.raises(MatrixFormatError):
        mio.parse_thickenings("")
    path = tmp_path / "th.txt"
    mio.write_thickenings(path, thickenings, header="# cabeçalho\n")
    assert path.read_text(encoding="utf-8") == "# cabeçalho\n123|132|213\n123\n"
    assert mio.read_thickenings(path) == thickenings

"""
    Testa a leitura e gravação de listas de matrizes.
"""
def test_read_and_write_matrices(tmp_path):
    matrices = [np.diag([4.0, 0.25]), np.array([[0.1, 1.0 / 3.0], [2.0, -7.5]])]
    path = tmp_path / "m.txt"
    mio.write_matrices(path, matrices)
    again = mio.read_matrices(path)
    assert len(again) == 2
    assert all(np.array_equal(a, b) for a, b in zip(matrices, again))
    with pytest.raises(MatrixFormatError, match="dimensão"):
        mio.parse_matrices("x\n1\n")
