import numpy as np
import pytest

from src import schottky as sc
from src.errors import (
    AnosovError,
    BadEigenvalues,
    CapExceeded,
    NeighborhoodsOverlap,
    NotGeneric,
    NotIotaInvariant,
    NotProximal,
    SingularInput,
)
from src.flag_geometry import Flag, flag_distance, standard_flag
from src.weyl_group import FaceType

FACE_2 = FaceType.full(2)

"""
    Par forte: autovalores (4, 1/4) e rotação de conjugação pi/4.
"""
@pytest.fixture
def strong_pair():
    return sc.AxialPair.from_eigenvalues([4.0, 0.25], np.pi / 4)

"""
    Par fraco: autovalores (1.01, 1/1.01); o ping-pong só passa em potências altas.
"""
@pytest.fixture
def weak_pair():
    return sc.AxialPair.from_eigenvalues([1.01, 1 / 1.01], np.pi / 4)

"""
    Testa `generic_rotation` em d = 2 (coincide com a rotação) e d = 3 (ortogonal, det 1).
"""
def test_generic_rotation():
    assert np.allclose(sc.generic_rotation(2, 0.7), sc.rotation(0.7))
    r = sc.generic_rotation(3, 0.4)
    assert np.allclose(r @ r.T, np.eye(3))
    assert np.linalg.det(r) == pytest.approx(1.0)

"""
    Testa a validação de `make_axial`.

    Verifica:
        - BadEigenvalues para autovalores negativos, fora de ordem ou de produto != 1;
        - SingularInput para conjugador singular;
        - autovalores do resultado iguais aos pedidos.
"""
def test_make_axial():
    with pytest.raises(BadEigenvalues):
        sc.make_axial([-2.0, -0.5], np.eye(2))
    with pytest.raises(BadEigenvalues):
        sc.make_axial([0.5, 2.0], np.eye(2))
    with pytest.raises(BadEigenvalues):
        sc.make_axial([3.0, 0.5], np.eye(2))
    with pytest.raises(BadEigenvalues):
        sc.make_axial([2.0, 0.5], np.eye(3))
    with pytest.raises(SingularInput):
        sc.make_axial([2.0, 0.5], np.ones((2, 2)))
    g = sc.make_axial([4.0, 1.0, 0.25], sc.generic_rotation(3, 0.3))
    assert np.allclose(np.sort(np.linalg.eigvals(g).real)[::-1], [4.0, 1.0, 0.25])

"""
    Testa o flag fixo atrator por quadrados sucessivos.

    Verifica:
        - diag(4, 1/4) atrai para e_1 e o inverso para e_2;
        - unipotente (caso parabólico) e rotação levantam NotProximal.
"""
def test_attracting_fixed_flag():
    tau = sc.attracting_fixed_flag(np.diag([4.0, 0.25]), FACE_2)
    assert flag_distance(tau, standard_flag(FACE_2)) < 1e-12
    repelling = sc.attracting_fixed_flag(np.diag([0.25, 4.0]), FACE_2)
    assert flag_distance(repelling, Flag(FACE_2, sc.rotation(np.pi / 2))) < 1e-12
    with pytest.raises(NotProximal):
        sc.attracting_fixed_flag(np.array([[1.0, 1.0], [0.0, 1.0]]), FACE_2)
    with pytest.raises(NotProximal):
        sc.attracting_fixed_flag(sc.rotation(0.3), FACE_2)

"""
    Testa a genericidade do par forte: margem mínima sin-ângulo pi/4, sqrt(1 - cos(pi/4)) ~ 0.5412.
"""
def test_genericity_strong_pair(strong_pair):
    result = sc.genericity_check(strong_pair, FACE_2)
    assert result
    assert result.margin == pytest.approx(np.sqrt(1 - np.cos(np.pi / 4)), abs=1e-9)
    assert len(result.margins) == 6

"""
    Testa pares degenerados: beta = alpha e beta = alpha^-1 não são genéricos.
"""
def test_genericity_degenerate_pairs(strong_pair):
    alpha = strong_pair.alpha
    assert not sc.genericity_check(sc.AxialPair(alpha, alpha), FACE_2)
    assert not sc.genericity_check(sc.AxialPair(alpha, np.linalg.inv(alpha)), FACE_2)
    with pytest.raises(NotGeneric):
        sc.find_min_powers(sc.AxialPair(alpha, alpha), FACE_2, 4, 0.1, cap=4)

"""
    Testa a exigência de face iota-invariante e de dimensões compatíveis.
"""
def test_genericity_requires_iota_invariant_face():
    pair = sc.AxialPair.from_eigenvalues([4.0, 1.0, 0.25], 0.5)
    with pytest.raises(NotIotaInvariant):
        sc.genericity_check(pair, FaceType(3, (1,)))
    with pytest.raises(AnosovError):
        sc.AxialPair(np.eye(2), np.eye(3))

"""
    Testa `schottky_rep`: A -> alpha^m, B -> beta^n, e potências inválidas.
"""
def test_schottky_rep(strong_pair):
    rep = sc.schottky_rep(strong_pair, 3, 2)
    assert np.allclose(rep.matrix("A"), np.linalg.matrix_power(strong_pair.alpha, 3))
    assert np.allclose(rep.matrix("b"), np.linalg.matrix_power(np.linalg.inv(strong_pair.beta), 2))
    with pytest.raises(AnosovError):
        sc.schottky_rep(strong_pair, 0, 1)

"""
    Testa o ping-pong do par forte.

    Verifica:
        - aprovado em m = 1 com raio 0.8 * (pi/4) / 2;
        - margens não decrescentes em m = 1, 2, 3.
"""
def test_pingpong_strong_pair(strong_pair):
    certificates = [sc.pingpong_certificate(sc.schottky_rep(strong_pair, m, m), FACE_2) for m in (1, 2, 3)]
    first = certificates[0]
    assert first.passed
    assert first.radius == pytest.approx(0.8 * np.pi / 8)
    assert first.margins["A"] > 0.1
    for earlier, later in zip(certificates, certificates[1:]):
        for letter in earlier.margins:
            assert later.margins[letter] >= earlier.margins[letter] - 1e-12
    values = first.as_dict()
    assert values["pass"] is True
    assert values["semantics"] == "sampled evidence (2000 flags)"

"""
    Testa a tabela das vizinhanças: bolas disjuntas (folga positiva).
"""
def test_pingpong_neighborhoods(strong_pair):
    certificate = sc.pingpong_certificate(sc.schottky_rep(strong_pair, 1, 1), FACE_2, samples=500)
    table = certificate.neighborhoods()
    assert list(table["letter"]) == ["A", "a", "B", "b"]
    assert (table["clearance"] > 0).all()

"""
    Testa que o multiplicador 1 (bolas encostadas) levanta NeighborhoodsOverlap.
"""
def test_pingpong_overlapping_neighborhoods(strong_pair):
    with pytest.raises(NeighborhoodsOverlap):
        sc.pingpong_certificate(sc.schottky_rep(strong_pair, 1, 1), FACE_2, radius_multiplier=1.0)
    with pytest.raises(AnosovError):
        sc.pingpong_certificate(sc.schottky_rep(strong_pair, 1, 1), FACE_2, radius_multiplier=0.0)

"""
    Testa a busca da potência mínima para o par forte: limiar 1.
"""
def test_find_min_powers_strong_pair(strong_pair):
    result = sc.find_min_powers(strong_pair, FACE_2, radius=6, min_slope=0.1, cap=8, samples=500)
    assert result.threshold == 1
    assert result.pingpong.passed
    assert result.certificate.passed
    assert list(result.history.columns) == ["m", "pingpong_margin", "pingpong_pass", "uru_c", "uru_pass"]

"""
    Testa o par fraco: ping-pong reprovado em m = 1 e CapExceeded com teto 4.
"""
def test_find_min_powers_weak_pair(weak_pair):
    assert sc.genericity_check(weak_pair, FACE_2)
    assert not sc.pingpong_certificate(sc.schottky_rep(weak_pair, 1, 1), FACE_2, samples=500).passed
    with pytest.raises(CapExceeded):
        sc.find_min_powers(weak_pair, FACE_2, radius=4, min_slope=0.01, cap=4, samples=500)
    with pytest.raises(AnosovError):
        sc.find_min_powers(weak_pair, FACE_2, radius=4, min_slope=0.01, cap=0)

"""
    Testa o limiar do par fraco: a busca passa acima de m = 1 e antes do teto,
    em m = 113, com os dois certificados aprovados nesse m.
"""
def test_find_min_powers_weak_pair_threshold(weak_pair):
    result = sc.find_min_powers(weak_pair, FACE_2, radius=6, min_slope=0.01, cap=256)
    assert 1 < result.threshold <= 256
    assert result.threshold == 113
    assert result.pingpong.passed
    assert result.certificate.passed
    assert not result.history["pingpong_pass"].iloc[0]
