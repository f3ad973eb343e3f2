from itertools import islice

import numpy as np
import pandas as pd
import pytest

from src import regularity as rg
from src.errors import AnosovError, DimMismatch, NotRegular
from src.flag_geometry import attracting_flag
from src.limit_sets import boundary_map_sample
from src.linear_algebra import root_gaps
from src.representation import Representation, ball_words, inverse_representation, inverse_word, symmetric_square
from src.schottky import rotation
from src.weyl_group import FaceType

FACE_2 = FaceType.full(2)

"""
    Representação cíclica A -> diag(4, 1/4): gaps exatamente 2 l ln 4.
"""
@pytest.fixture
def cyclic_diag():
    return Representation({"A": np.diag([4.0, 0.25])})

"""
    Representação cíclica unipotente: gaps da ordem de 2 ln l (regular, mas não uniformemente).
"""
@pytest.fixture
def unipotent():
    return Representation({"A": np.array([[1.0, 1.0], [0.0, 1.0]])})

"""
    Par de Schottky alpha = diag(4, 1/4), beta = alpha conjugado pela rotação de pi/4.
"""
@pytest.fixture
def schottky():
    alpha = np.diag([4.0, 0.25])
    c, s = np.cos(np.pi / 4), np.sin(np.pi / 4)
    r = np.array([[c, -s], [s, c]])
    return Representation({"A": alpha, "B": r @ alpha @ r.T})

"""
    Testa o perfil de gaps da representação cíclica diagonal.

    Verifica:
        - gaps 2 l ln 4 e normas sqrt(2) l ln 4;
        - palavra que realiza o mínimo é A^3 ou a^3.
"""
def test_gap_profile_cyclic_diag(cyclic_diag):
    profile = rg.gap_profile(cyclic_diag, FACE_2, 5)
    lengths = np.arange(1, 6)
    assert profile.radius == 5
    assert np.allclose(profile.gaps(), 2 * lengths * np.log(4.0))
    assert np.allclose(profile.norms(), np.sqrt(2) * lengths * np.log(4.0))
    assert profile.table.loc[2, "argmin_word"] in {"AAA", "aaa"}
    assert profile.is_divergent()

"""
    Testa que o perfil não depende do número de workers.
"""
def test_gap_profile_independent_of_workers(schottky):
    sequential = rg.gap_profile(schottky, FACE_2, 4, n_jobs=1)
    parallel = rg.gap_profile(schottky, FACE_2, 4, n_jobs=2)
    pd.testing.assert_frame_equal(sequential.table, parallel.table)

"""
    Testa a face de dimensão diferente da representação.
"""
def test_gap_profile_dim_mismatch(cyclic_diag):
    with pytest.raises(DimMismatch):
        rg.gap_profile(cyclic_diag, FaceType.full(3), 3)

"""
    Testa o ajuste da deriva pela última aresta do minorante convexo inferior.
"""
def test_fit_drift_last_hull_edge():
    hull = rg.lower_convex_minorant(np.array([1, 2, 3]), np.array([1.0, 2.0, 3.5]))
    assert hull == [(0.0, 0.0), (2.0, 2.0), (3.0, 3.5)]
    c, a = rg.fit_drift(np.array([1, 2, 3]), np.array([1.0, 2.0, 3.5]))
    assert c == pytest.approx(1.5)
    assert a == pytest.approx(1.0)

"""
    Testa a aprovação da representação cíclica diag(4, 1/4) com c dentro de 5% de 2 ln 4.
"""
def test_certify_uru_cyclic_diag_passes(cyclic_diag):
    certificate = rg.certify_uru(cyclic_diag, FACE_2, 12, min_slope=0.1)
    assert certificate.passed
    assert certificate.c == pytest.approx(2 * np.log(4.0), rel=0.05)
    assert certificate.c_qi > 0
    assert certificate.margin >= 0
    values = certificate.as_dict()
    assert values["pass"] is True
    assert values["semantics"] == "evidence at radius 12"

"""
    Testa a reprovação do gerador unipotente em L = 30 com min_slope = 0.05.

    A inclinação ajustada passa do mínimo, mas a guarda do último terço detecta
    o crescimento logarítmico.
"""
def test_certify_uru_unipotent_fails(unipotent):
    certificate = rg.certify_uru(unipotent, FACE_2, 30, min_slope=0.05)
    assert not certificate.passed
    assert certificate.c > 0.05
    assert certificate.margin < 0

"""
    Testa a reprovação de uma representação por rotações (gaps nulos).
"""
def test_certify_uru_rotation_fails():
    theta = 0.7
    r = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    rep = Representation({"A": r})
    certificate = rg.certify_uru(rep, FACE_2, 6, min_slope=0.01)
    assert not certificate.passed

"""
    Testa o reaproveitamento de um perfil já calculado.
"""
def test_certify_uru_reuses_profile(cyclic_diag):
    profile = rg.gap_profile(cyclic_diag, FACE_2, 6)
    certificate = rg.certify_uru(cyclic_diag, FACE_2, 6, min_slope=0.1, profile=profile)
    assert certificate.profile is profile

"""
    Testa o defeito de aditividade nulo para a representação cíclica diagonal.
"""
def test_additivity_defect_commuting_diagonal(cyclic_diag):
    table = rg.additivity_defect(cyclic_diag, FACE_2, 8)
    assert list(table.columns) == ["length", "max_defect", "argmax_word", "max_gap_defect"]
    assert table["max_defect"].max() < 1e-12

"""
    Testa a estabilização do defeito de aditividade do Schottky mergulhado em SL(3)
    pelo quadrado simétrico: o máximo em L = 10 excede o de L = 8 por menos de 10%.
"""
def test_additivity_defect_sym2_schottky_stabilizes(schottky):
    sym = symmetric_square(schottky)
    table = rg.additivity_defect(sym, FaceType.full(3), 10)
    up_to_8 = table.loc[table["length"] <= 8, "max_defect"].max()
    up_to_10 = table["max_defect"].max()
    assert up_to_8 > 0
    assert up_to_10 <= 1.1 * up_to_8

"""
    Testa a estabilidade: pequenas perturbações da representação cíclica diagonal continuam aprovadas.
"""
def test_stability_check(cyclic_diag, caplog):
    caplog.set_level("INFO")
    table = rg.stability_check(cyclic_diag, FACE_2, 8, min_slope=0.1, epsilon=1e-3, trials=3, seed=1)
    assert list(table.columns) == ["trial", "c", "margin", "pass"]
    assert len(table) == 3
    assert table["pass"].all()
    assert "Estabilidade: 3/3" in caplog.text
    with pytest.raises(AnosovError):
        rg.stability_check(cyclic_diag, FACE_2, 8, min_slope=0.1, epsilon=0.0)

"""
    Testa que a perturbação mantém o determinante 1.
"""
def test_perturb_representation_is_unimodular(schottky):
    perturbed = rg.perturb_representation(schottky, 1e-2, np.random.default_rng(0))
    for letter in perturbed.letters:
        assert np.linalg.det(perturbed.generator_matrix(letter)) == pytest.approx(1.0, abs=1e-6)
    assert not np.allclose(perturbed.generator_matrix("A"), schottky.generator_matrix("A"))

"""
    Testa a simetria por inversão: os gaps de rho(w^-1) são os gaps de rho(w) em
    ordem reversa (Sym^2 do Schottky, face cheia de SL(3)), logo o perfil de gaps
    da representação inversa coincide com o original.
"""
def test_gaps_of_inverse_word_are_reversed(schottky):
    sym = symmetric_square(schottky)
    face = FaceType.full(3)
    for word in islice(ball_words(sym.alphabet, 4), 1, None):
        gaps = root_gaps(sym.cartan(word), face)
        inverse_gaps = root_gaps(sym.cartan(inverse_word(word)), face)
        assert np.allclose(inverse_gaps, gaps[::-1], atol=1e-9)
    profile = rg.gap_profile(sym, face, 4)
    inverse_profile = rg.gap_profile(inverse_representation(sym), face, 4)
    assert np.allclose(inverse_profile.gaps(), profile.gaps(), atol=1e-9)

"""
    Testa o pareamento entre regularidade e convergência dos raios.

    Verifica:
        - Schottky: perfil divergente e raios do bordo convergentes;
        - par de rotações: gaps nulos (a menos de arredondamento), perfil sem
          divergência e palavras longas sem flag atrator (NotRegular).
"""
def test_divergent_profile_pairs_with_converging_rays(schottky):
    assert rg.gap_profile(schottky, FACE_2, 6).is_divergent()
    for prefix in ("AB" * 6, "Ab" * 6, "aaBB" * 3):
        assert boundary_map_sample(schottky, FACE_2, prefix).converged

    rotations = Representation({"A": rotation(0.3), "B": rotation(1.1)})
    profile = rg.gap_profile(rotations, FACE_2, 6)
    assert not profile.is_divergent()
    assert np.allclose(profile.gaps(), 0.0, atol=1e-9)
    with pytest.raises(NotRegular):
        attracting_flag(rotations.evaluate("AB" * 6), FACE_2, threshold=1e-9)
