import numpy as np
import pandas as pd
import pytest

from src import domains as dm
from src.errors import AnosovError, DimMismatch, FaceMismatch
from src.flag_geometry import Flag, standard_flag
from src.limit_sets import LimitSample, limit_set_sample
from src.representation import Representation, symmetric_square
from src.schottky import AxialPair, schottky_rep
from src.weyl_group import FaceType, Thickening, all_elements, bruhat_leq, simple_reflection

FACE_2 = FaceType.full(2)
FACE_3 = FaceType.full(3)


def line_flag(theta):
    c, s = np.cos(theta), np.sin(theta)
    return Flag(FACE_2, np.array([[c, -s], [s, c]]))

"""
    Conjunto limite da representação cíclica diag(4, 1/4) espessado por Th = {e}.
"""
@pytest.fixture
def cyclic_thickened():
    sample = LimitSample.from_flags([line_flag(0.0), line_flag(np.pi / 2)], words=["A", "a"])
    return dm.ThickenedLimitSet(Thickening.parse("12"), sample)

"""
    Testa a classificação em d = 2: só os próprios pontos limite estão no espessamento {e}.
"""
def test_in_thickening_d2(cyclic_thickened):
    membership = dm.in_thickening(line_flag(0.7), cyclic_thickened)
    assert membership.status == "out"
    assert not membership
    assert membership.margin == pytest.approx(np.sqrt(1 - np.cos(0.7)), rel=1e-9)
    inside = dm.in_thickening(line_flag(np.pi / 2), cyclic_thickened)
    assert inside
    assert inside.witness_word == "a"
    assert inside.witness_index == 1
    assert str(inside.position) == "12"

"""
    Testa a classificação das câmaras P_w sigma_std em d = 3 contra a câmara limite padrão.

    Com Th = {e, s1, s2}, a câmara P_w sigma_std está dentro sse w está na união das
    células de Bruhat de e, s1 e s2 (w <= s1 ou w <= s2), e a posição devolvida é w.
"""
def test_in_thickening_d3_permutation_chambers():
    sample = LimitSample.from_flags([standard_flag(FACE_3)])
    thickening = Thickening.parse("123|132|213")
    thickened = dm.ThickenedLimitSet(thickening, sample)
    s1, s2 = simple_reflection(3, 1), simple_reflection(3, 2)
    for w in all_elements(3):
        membership = dm.in_thickening(Flag(FACE_3, w.matrix()), thickened)
        in_cells = bruhat_leq(w, s1) or bruhat_leq(w, s2)
        assert bool(membership) == in_cells == (w in thickening)
        if in_cells:
            assert membership.position == w
        else:
            assert membership.status == "out"
            assert membership.margin > 0.5

"""
    Testa a faixa ambígua: com tolerância 1e-3, ângulo 0.005 é ambíguo e 0.0005 está dentro.
"""
def test_in_thickening_ambiguous_band():
    sample = LimitSample.from_flags([line_flag(0.0)])
    thickened = dm.ThickenedLimitSet(Thickening.parse("12"), sample, tolerance=1e-3)
    assert dm.in_thickening(line_flag(0.005), thickened).status == "ambiguous"
    assert dm.in_thickening(line_flag(0.0005), thickened).status == "in"
    assert dm.in_thickening(line_flag(0.3), thickened).status == "out"

"""
    Testa que apenas câmaras da mesma dimensão são classificadas.
"""
def test_in_thickening_requires_chamber(cyclic_thickened):
    with pytest.raises(FaceMismatch):
        dm.in_thickening(standard_flag(FACE_3), cyclic_thickened)
    with pytest.raises(FaceMismatch):
        dm.in_thickening(standard_flag(FaceType(3, (1,))), cyclic_thickened)

"""
    Testa a validação de `ThickenedLimitSet`.

    Verifica:
        - subconjunto não fechado para baixo;
        - dimensão diferente da amostra;
        - espessamento não invariante pelo estabilizador da face;
        - tolerância não positiva.
"""
def test_thickened_limit_set_validation():
    sample_2 = LimitSample.from_flags([line_flag(0.0)])
    with pytest.raises(AnosovError):
        dm.ThickenedLimitSet(Thickening.parse("21"), sample_2)
    with pytest.raises(DimMismatch):
        dm.ThickenedLimitSet(Thickening.parse("123"), sample_2)
    with pytest.raises(AnosovError):
        dm.ThickenedLimitSet(Thickening.parse("12"), sample_2, tolerance=0.0)
    partial = LimitSample.from_flags([standard_flag(FaceType(3, (1,)))])
    with pytest.raises(AnosovError):
        dm.ThickenedLimitSet(Thickening.parse("123"), partial)
    assert dm.ThickenedLimitSet(Thickening.parse("123|132"), partial)

"""
    Testa a nuvem classificada: colunas, independência do número de workers e contagem das classes.
"""
def test_domain_sample_is_independent_of_workers(cyclic_thickened):
    sequential = dm.domain_sample(cyclic_thickened, 300, seed=3, n_jobs=1)
    parallel = dm.domain_sample(cyclic_thickened, 300, seed=3, n_jobs=2)
    pd.testing.assert_frame_equal(sequential, parallel)
    assert list(sequential.columns) == [
        "chamber", "f_1_1", "f_1_2", "f_2_1", "f_2_2", "angle", "class", "witness_word", "margin",
    ]
    assert len(sequential) == 300
    assert (sequential["class"] == "out").all()
    with pytest.raises(AnosovError):
        dm.domain_sample(cyclic_thickened, 0)

"""
    Testa a estabilidade das proporções das classes entre sementes.

    Com tolerância 1e-2 em torno de {[e1], [e2]}, a câmara [v] (ângulo theta até o
    ponto mais próximo) está dentro se 1 - |cos theta| <= 1e-4 e é ambígua se
    1e-4 < 1 - |cos theta| <= 1e-2. Cada semente fica a 4 desvios das proporções
    exatas e duas sementes quaisquer a 3 desvios entre si.
"""
def test_domain_sample_class_proportions_are_seed_stable():
    sample = LimitSample.from_flags([line_flag(0.0), line_flag(np.pi / 2)], words=["A", "a"])
    thickened = dm.ThickenedLimitSet(Thickening.parse("12"), sample, tolerance=1e-2)
    inner, outer = np.arccos(1 - 1e-4), np.arccos(1 - 1e-2)
    expected = {"in": 4 * inner / np.pi, "ambiguous": 4 * (outer - inner) / np.pi}
    expected["out"] = 1 - expected["in"] - expected["ambiguous"]
    samples = 4000
    proportions = []
    for seed in (11, 12, 13):
        table = dm.domain_sample(thickened, samples, seed=seed)
        freq = table["class"].value_counts(normalize=True)
        proportions.append(freq)
        for status, p in expected.items():
            sigma = np.sqrt(p * (1 - p) / samples)
            assert abs(freq.get(status, 0.0) - p) <= 4 * sigma
    for status, p in expected.items():
        sigma_diff = np.sqrt(2 * p * (1 - p) / samples)
        values = [freq.get(status, 0.0) for freq in proportions]
        assert max(values) - min(values) <= 3 * sigma_diff

"""
    Testa a classificação do Schottky de rho = Sym^2 do par (4, 1/4) em d = 3 com
    Th = {e, s1, s2}.

    Verifica:
        - câmaras uniformes caem fora (Th(Lambda) tem codimensão positiva);
        - câmaras P_w tau construídas a partir de pontos limite tau, com w em Th,
          caem dentro, com testemunha;
        - a tabela das duas nuvens juntas tem as classes "in" e "out" não vazias.
"""
def test_sym2_schottky_domain_has_in_and_out_chambers():
    pair = AxialPair.from_eigenvalues([4.0, 0.25], np.pi / 4)
    rep = symmetric_square(schottky_rep(pair, 1, 1))
    limit = limit_set_sample(rep, FACE_3, 3, 20, max_points=30)
    assert len(limit.points) >= 6
    thickening = Thickening.parse("123|132|213")
    thickened = dm.ThickenedLimitSet(thickening, limit)

    uniform = dm.domain_sample(thickened, 200, seed=5)
    assert (uniform["class"] == "out").sum() > 0
    assert (uniform["class"] != "in").all()

    classes = list(uniform["class"])
    for point in limit.points[:6]:
        for w in thickening.members:
            chamber = Flag.from_basis(FACE_3, point.flag.frame @ w.matrix())
            membership = dm.in_thickening(chamber, thickened)
            assert membership
            assert membership.position in thickening
            assert membership.witness_word
            classes.append(membership.status)
    counts = pd.Series(classes).value_counts()
    assert counts["in"] == 18
    assert counts["out"] > 0

"""
    Testa o aviso para amostras do conjunto limite não certificadas.
"""
def test_domain_sample_warns_when_uncertified(caplog):
    sample = LimitSample.from_flags([line_flag(0.0)], certified=False)
    thickened = dm.ThickenedLimitSet(Thickening.parse("12"), sample)
    dm.domain_sample(thickened, 5)
    assert "não certificada" in caplog.text

"""
    Testa o censo de retornos da representação cíclica diagonal num compacto do domínio.

    Verifica:
        - só a palavra vazia retorna, logo o censo estabiliza;
        - número de palavras por comprimento (A^l e a^l).
"""
def test_properness_witness_cyclic_diag(cyclic_thickened):
    rep = Representation({"A": np.diag([4.0, 0.25])})
    chambers = [line_flag(theta) for theta in np.linspace(0.5, 1.0, 6)]
    census = dm.properness_witness(rep, cyclic_thickened, chambers, 5)
    assert census.outside == 0
    assert census.last_return_length == 0
    assert census.stabilized
    assert list(census.table["returns"]) == [1, 0, 0, 0, 0, 0]
    assert list(census.table["words_checked"]) == [1, 2, 2, 2, 2, 2]

"""
    Testa um compacto que contém um ponto limite: aviso, câmara fora do domínio e sem estabilização.
"""
def test_properness_witness_compact_touching_limit_set(cyclic_thickened, caplog):
    rep = Representation({"A": np.diag([4.0, 0.25])})
    chambers = [line_flag(0.0), line_flag(0.8)]
    census = dm.properness_witness(rep, cyclic_thickened, chambers, 4)
    assert census.outside == 1
    assert "fora do domínio" in caplog.text
    assert census.last_return_length == 4
    assert not census.stabilized

"""
    Testa a representação trivial: toda palavra retorna.
"""
def test_properness_witness_trivial_representation(cyclic_thickened):
    rep = Representation({"A": np.eye(2)})
    census = dm.properness_witness(rep, cyclic_thickened, [line_flag(0.8)], 3)
    table = census.table
    assert (table["returns"] == table["words_checked"]).all()
    assert not census.stabilized

"""
    Testa os erros do censo: compacto vazio e dimensões incompatíveis.
"""
def test_properness_witness_errors(cyclic_thickened):
    with pytest.raises(AnosovError):
        dm.properness_witness(Representation({"A": np.diag([4.0, 0.25])}), cyclic_thickened, [], 3)
    with pytest.raises(DimMismatch):
        dm.properness_witness(Representation({"A": np.eye(3)}), cyclic_thickened, [line_flag(0.8)], 3)
