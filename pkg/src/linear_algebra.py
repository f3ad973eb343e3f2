# -*- coding: utf-8 -*-
"""
Núcleo de Álgebra Linear para SL(d, R).

Este módulo concentra os kernels numéricos usados por todo o projeto:

-   **Tolerâncias:** o tipo imutável `Tolerances`, com padrões vindos do
    `config.py`.
-   **Projeção de Cartan e decomposição KAK:** logaritmos dos valores
    singulares ordenados (o vetor de distância Delta entre x0 = eK e g x0) e a
    decomposição g = k1 exp(diag(a)) k2.
-   **Gaps de raízes simples:** alpha_i(v) = v_i - v_{i+1} nos pivôs de uma face.
-   **Matrizes em escala logarítmica:** produtos longos são renormalizados para
    norma de Frobenius 1 e a escala é acumulada à parte, evitando overflow.
-   **Potências exteriores:** a imagem de uma palavra é guardada como a torre
    Lambda^k(g), k = 1..d. O maior valor singular de Lambda^k(g) é o produto
    sigma_1 ... sigma_k, calculado com precisão relativa mesmo quando a
    razão sigma_1 / sigma_d excede em muito a precisão dupla. Os vetores
    singulares dominantes dessas camadas são vetores de Plücker dos subespaços
    atratores e repulsores.

Os valores singulares são calculados com `scipy.linalg.svd` usando o driver
LAPACK `gesvd` (Golub-Kahan).
"""
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group

from config import (
    DEFAULT_SVD_TOL,
    DEFAULT_DET_TOL,
    DEFAULT_SUM_TOL,
    DEFAULT_RECOMPOSE_TOL,
    DEFAULT_RANK_TOL,
    DEFAULT_ANGLE_TOL,
)
from src.errors import AnosovError, BadFace, DimMismatch, NonFinite, NotUnimodular, SingularInput

if TYPE_CHECKING:
    from src.weyl_group import FaceType


@dataclass(frozen=True)
class Tolerances:
    """Tolerâncias numéricas, todas estritamente positivas."""

    svd_tol: float = DEFAULT_SVD_TOL
    det_tol: float = DEFAULT_DET_TOL
    sum_tol: float = DEFAULT_SUM_TOL
    recompose_tol: float = DEFAULT_RECOMPOSE_TOL
    rank_tol: float = DEFAULT_RANK_TOL
    angle_tol: float = DEFAULT_ANGLE_TOL

    def __post_init__(self):
        for name, value in vars(self).items():
            if not np.isfinite(value) or value <= 0:
                raise AnosovError(f"Tolerância '{name}' deve ser positiva, recebido {value}.")

    def with_overrides(self, **overrides: float) -> "Tolerances":
        """Retorna uma cópia com os valores não nulos de `overrides` aplicados."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_TOLERANCES = Tolerances()


def as_square_matrix(entries) -> np.ndarray:
    """
    Converte `entries` numa matriz quadrada d x d (d >= 2) de floats, somente leitura.

    Raises:
        NonFinite: se alguma entrada for NaN ou infinita.
        DimMismatch: se a matriz não for quadrada ou tiver d < 2.
    """
    g = np.array(entries, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 2:
        raise DimMismatch(f"Esperada matriz quadrada d x d com d >= 2, recebido shape {g.shape}.")
    if not np.all(np.isfinite(g)):
        raise NonFinite("A matriz contém entradas não finitas.")
    g.setflags(write=False)
    return g


def check_unimodular(g: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
    """Levanta `NotUnimodular` se det(g) não for 1 dentro de `det_tol`."""
    det = np.linalg.det(g)
    if abs(det - 1.0) > tolerances.det_tol:
        raise NotUnimodular(f"det = {det:.12g} difere de 1 por mais de {tolerances.det_tol}.")


def make_unimodular(entries, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Reescala uma matriz não singular para determinante 1.

    Em dimensão ímpar um determinante negativo é corrigido pelo sinal; em
    dimensão par isso é impossível e `NotUnimodular` é levantado.
    """
    g = as_square_matrix(entries)
    d = g.shape[0]
    det = np.linalg.det(g)
    if abs(det) <= tolerances.svd_tol:
        raise SingularInput(f"Matriz singular (det = {det:.3g}).")
    if det < 0 and d % 2 == 0:
        raise NotUnimodular("Determinante negativo em dimensão par não pode ser normalizado para 1.")
    scale = np.sign(det) * abs(det) ** (-1.0 / d)
    result = as_square_matrix(g * scale)
    check_unimodular(result, tolerances)
    return result


def singular_values(g: np.ndarray) -> np.ndarray:
    """Valores singulares em ordem decrescente (Golub-Kahan via LAPACK gesvd)."""
    return scipy.linalg.svd(g, compute_uv=False, lapack_driver="gesvd")


@dataclass(frozen=True, eq=False)
class CartanVector:
    """Logaritmos dos valores singulares, em ordem não crescente."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=float)
        if comps.ndim != 1 or comps.size < 2:
            raise AnosovError("Um vetor de Cartan precisa de pelo menos duas componentes.")
        if np.any(np.diff(comps) > 1e-9 * max(1.0, float(np.max(np.abs(comps))))):
            raise AnosovError(f"Componentes do vetor de Cartan não estão ordenadas: {comps}.")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return int(self.components.size)

    def norm(self) -> float:
        """Norma euclidiana, o comprimento ||d_Delta||."""
        return float(np.linalg.norm(self.components))

    def trace_defect(self) -> float:
        """Soma das componentes; zero (dentro de `sum_tol`) para g unimodular."""
        return float(np.sum(self.components))

    def opposite(self) -> "CartanVector":
        """Involução de oposição em Delta: inverte a ordem e troca o sinal."""
        return CartanVector(-self.components[::-1])

    def is_balanced(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return abs(self.trace_defect()) <= tolerances.sum_tol

    def __iter__(self):
        return iter(self.components.tolist())


@dataclass(frozen=True, eq=False)
class KAKDecomposition:
    """g = k1 @ diag(exp(a)) @ k2 com k1, k2 ortogonais."""

    k1: np.ndarray
    a: CartanVector
    k2: np.ndarray

    def recompose(self) -> np.ndarray:
        return self.k1 @ np.diag(np.exp(self.a.components)) @ self.k2

    def recomposition_error(self, g: np.ndarray) -> float:
        """Erro relativo de recomposição na norma de Frobenius."""
        g = np.asarray(g, dtype=float)
        return float(np.linalg.norm(self.recompose() - g) / max(np.linalg.norm(g), 1.0))


def cartan_projection(g, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CartanVector:
    """
    Calcula a projeção de Cartan de g: os logaritmos ordenados dos valores singulares.

    Aceita uma matriz densa ou uma torre `ExteriorPowers` (imagem de palavra em
    escala logarítmica). Para g unimodular a soma das componentes é zero.

    Raises:
        NonFinite: entradas não finitas.
        SingularInput: menor valor singular <= `svd_tol`.
    """
    if isinstance(g, ExteriorPowers):
        return g.cartan()
    if isinstance(g, LogScaledMatrix):
        return ExteriorPowers.from_matrix(g.matrix).shifted(g.log_scale).cartan()
    g = as_square_matrix(g)
    s = singular_values(g)
    if s[-1] <= tolerances.svd_tol:
        raise SingularInput(f"Menor valor singular {s[-1]:.3g} <= svd_tol = {tolerances.svd_tol}.")
    return CartanVector(np.log(s))


def kak(g, tolerances: Tolerances = DEFAULT_TOLERANCES) -> KAKDecomposition:
    """
    Decomposição de Cartan g = k1 exp(diag(a)) k2, com a = cartan_projection(g).

    A recomposição é verificada contra `recompose_tol`; uma violação é registrada
    no log como aviso (ocorre apenas perto do limite de condicionamento).
    """
    g = as_square_matrix(g)
    u, s, vt = scipy.linalg.svd(g, lapack_driver="gesvd")
    if s[-1] <= tolerances.svd_tol:
        raise SingularInput(f"Menor valor singular {s[-1]:.3g} <= svd_tol = {tolerances.svd_tol}.")
    decomposition = KAKDecomposition(k1=u, a=CartanVector(np.log(s)), k2=vt)
    error = decomposition.recomposition_error(g)
    if error > tolerances.recompose_tol:
        logging.warning(f"Erro de recomposição KAK {error:.3g} acima de {tolerances.recompose_tol}.")
    return decomposition


def root_gaps(v: CartanVector, face: "FaceType") -> np.ndarray:
    """
    Valores das raízes simples alpha_i(v) = v_i - v_{i+1} nos pivôs da face.

    Os pivôs são numerados de 1 a d-1, em ordem crescente; todos os valores são
    não negativos porque v é ordenado.
    """
    pivots = np.asarray(face.pivots, dtype=int)
    if pivots.size and (pivots.min() < 1 or pivots.max() > v.dim - 1):
        raise BadFace(f"Pivôs {face.pivots} fora de 1..{v.dim - 1}.")
    comps = v.components
    return comps[pivots - 1] - comps[pivots]


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Matriz ortogonal aleatória segundo a medida de Haar."""
    return ortho_group.rvs(dim, random_state=rng)


def random_unimodular(dim: int, rng: np.random.Generator, log_spread: float = 3.0) -> np.ndarray:
    """
    Matriz aleatória de SL(d, R) da forma k1 diag(exp(a)) k2.

    `a` tem traço zero e amplitude até `log_spread`, logo o número de condição
    é no máximo exp(2 * log_spread).
    """
    a = rng.uniform(-log_spread, log_spread, size=dim)
    a = a - a.mean()
    g = random_orthogonal(dim, rng) @ np.diag(np.exp(a)) @ random_orthogonal(dim, rng)
    return make_unimodular(g, Tolerances(det_tol=1e-6))


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> np.ndarray:
    return np.array(list(combinations(range(n), k)), dtype=int).reshape(-1, k)


def compound_matrix(a: np.ndarray, k: int) -> np.ndarray:
    """
    k-ésima matriz composta: os menores k x k de `a`, com linhas e colunas
    indexadas por k-subconjuntos em ordem lexicográfica.
    """
    a = np.asarray(a, dtype=float)
    n, m = a.shape
    if k == 0:
        return np.ones((1, 1))
    rows = _subsets(n, k)
    cols = _subsets(m, k)
    blocks = a[rows[:, None, :, None], cols[None, :, None, :]]
    return np.linalg.det(blocks)


def plucker_vector(basis: np.ndarray) -> np.ndarray:
    """Coordenadas de Plücker do subespaço gerado pelas colunas de `basis`."""
    return compound_matrix(basis, basis.shape[1])[:, 0]


@lru_cache(maxsize=None)
def _wedge_tables(dim: int, k: int) -> tuple:
    lower = {subset: idx for idx, subset in enumerate(combinations(range(dim), k))}
    rows, cols, signs, source = [], [], [], []
    for r, upper in enumerate(combinations(range(dim), k + 1)):
        for position, i in enumerate(upper):
            rest = upper[:position] + upper[position + 1 :]
            rows.append(r)
            cols.append(i)
            signs.append(-1.0 if position % 2 else 1.0)
            source.append(lower[rest])
    n_rows = len(list(combinations(range(dim), k + 1)))
    return n_rows, np.array(rows), np.array(cols), np.array(signs), np.array(source)


def plucker_to_subspace(omega: np.ndarray, dim: int, k: int) -> np.ndarray:
    """
    Reconstrói uma base ortonormal (dim x k) do subespaço com vetor de Plücker `omega`.

    O subespaço é o núcleo de v -> v ^ omega; para omega decomponível unitário
    os valores singulares não nulos desse operador são iguais a 1, então o
    núcleo é bem condicionado.
    """
    if k == dim:
        return np.eye(dim)
    n_rows, rows, cols, signs, source = _wedge_tables(dim, k)
    wedge = np.zeros((n_rows, dim))
    wedge[rows, cols] = signs * omega[source]
    _, _, vt = np.linalg.svd(wedge)
    return vt[-k:].T


@dataclass(frozen=True, eq=False)
class LogScaledMatrix:
    """Matriz guardada como `matrix` (norma de Frobenius 1) vezes exp(`log_scale`)."""

    matrix: np.ndarray
    log_scale: float = 0.0

    @classmethod
    def from_array(cls, a: np.ndarray, log_scale: float = 0.0) -> "LogScaledMatrix":
        a = np.asarray(a, dtype=float)
        norm = np.linalg.norm(a)
        if not np.isfinite(norm):
            raise NonFinite("Produto com entradas não finitas.")
        if norm == 0.0:
            raise SingularInput("Produto identicamente nulo.")
        return cls(matrix=a / norm, log_scale=log_scale + float(np.log(norm)))

    def __matmul__(self, other: "LogScaledMatrix") -> "LogScaledMatrix":
        return LogScaledMatrix.from_array(self.matrix @ other.matrix, self.log_scale + other.log_scale)

    def dense(self) -> np.ndarray:
        """Matriz explícita; pode estourar para escalas muito grandes."""
        return self.matrix * np.exp(self.log_scale)

    def log_norm(self) -> float:
        """log da norma espectral."""
        return self.log_scale + float(np.log(np.linalg.norm(self.matrix, 2)))


@dataclass(frozen=True, eq=False)
class ExteriorPowers:
    """
    Torre de potências exteriores de uma matriz: layers[k-1] = Lambda^k(g), k = 1..d.

    Produtos são feitos camada a camada (Cauchy-Binet), cada uma em escala
    logarítmica, e por isso as somas parciais log(sigma_1 ... sigma_k) ficam
    precisas mesmo para palavras longas.
    """

    layers: Tuple[LogScaledMatrix, ...]
    _cartan: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def from_matrix(cls, g) -> "ExteriorPowers":
        g = np.asarray(g, dtype=float)
        if not np.all(np.isfinite(g)):
            raise NonFinite("A matriz contém entradas não finitas.")
        scale = np.linalg.norm(g)
        if scale == 0.0:
            raise SingularInput("Matriz nula.")
        normalized = g / scale
        d = g.shape[0]
        layers = tuple(
            LogScaledMatrix.from_array(compound_matrix(normalized, k), k * float(np.log(scale)))
            for k in range(1, d + 1)
        )
        return cls(layers=layers)

    @classmethod
    def identity(cls, dim: int) -> "ExteriorPowers":
        return cls.from_matrix(np.eye(dim))

    @property
    def dim(self) -> int:
        return len(self.layers)

    @property
    def base(self) -> LogScaledMatrix:
        """A própria matriz (camada k = 1) em escala logarítmica."""
        return self.layers[0]

    def shifted(self, log_scale: float) -> "ExteriorPowers":
        """Multiplica g por exp(log_scale)."""
        return ExteriorPowers(
            tuple(
                LogScaledMatrix(layer.matrix, layer.log_scale + (k + 1) * log_scale)
                for k, layer in enumerate(self.layers)
            )
        )

    def __matmul__(self, other: "ExteriorPowers") -> "ExteriorPowers":
        return ExteriorPowers(tuple(a @ b for a, b in zip(self.layers, other.layers)))

    def power(self, exponent: int) -> "ExteriorPowers":
        """g^exponent por quadrados sucessivos (exponent >= 0)."""
        result = ExteriorPowers.identity(self.dim)
        square = self
        while exponent > 0:
            if exponent & 1:
                result = result @ square
            square = square @ square
            exponent >>= 1
        return result

    def log_partial_products(self) -> np.ndarray:
        """log(sigma_1 ... sigma_k) para k = 1..d."""
        return np.array([layer.log_norm() for layer in self.layers])

    def cartan(self) -> CartanVector:
        if not self._cartan:
            with np.errstate(divide="ignore"):
                partial = self.log_partial_products()
            if not np.all(np.isfinite(partial)):
                raise SingularInput("Potência exterior degenerada: a imagem da palavra é singular.")
            comps = np.diff(np.concatenate([[0.0], partial]))
            self._cartan.append(CartanVector(np.sort(comps)[::-1]))
        return self._cartan[0]

    def leading_subspace(self, k: int) -> np.ndarray:
        """Base ortonormal dos k vetores singulares à esquerda dominantes de g."""
        u, _, _ = np.linalg.svd(self.layers[k - 1].matrix)
        return plucker_to_subspace(u[:, 0], self.dim, k)

    def leading_right_subspace(self, k: int) -> np.ndarray:
        """Base ortonormal dos k vetores singulares à direita dominantes de g."""
        _, _, vt = np.linalg.svd(self.layers[k - 1].matrix)
        return plucker_to_subspace(vt[0], self.dim, k)

    def trailing_subspace(self, k: int) -> np.ndarray:
        """Base ortonormal dos k últimos vetores singulares à direita de g."""
        d = self.dim
        if k == d:
            return np.eye(d)
        return scipy.linalg.null_space(self.leading_right_subspace(d - k).T)

    def act_on_subspace(self, basis: np.ndarray) -> np.ndarray:
        """Base ortonormal de g(span(basis)), calculada no vetor de Plücker."""
        k = basis.shape[1]
        image = self.layers[k - 1].matrix @ plucker_vector(basis)
        norm = np.linalg.norm(image)
        if norm == 0.0 or not np.isfinite(norm):
            raise SingularInput("A imagem do subespaço degenerou.")
        return plucker_to_subspace(image / norm, self.dim, k)


def as_exterior_powers(g) -> ExteriorPowers:
    """Normaliza matrizes densas, `LogScaledMatrix` ou torres para `ExteriorPowers`."""
    if isinstance(g, ExteriorPowers):
        return g
    if isinstance(g, LogScaledMatrix):
        return ExteriorPowers.from_matrix(g.matrix).shifted(g.log_scale)
    return ExteriorPowers.from_matrix(as_square_matrix(g))


MatrixLike = Union[np.ndarray, LogScaledMatrix, ExteriorPowers]


def frame_from_subspaces(dim: int, pivots: Sequence[int], subspaces: Sequence[np.ndarray]) -> np.ndarray:
    """
    Monta um referencial ortonormal d x d cujas primeiras D_j colunas geram o j-ésimo subespaço.

    Os subespaços devem ser (numericamente) encaixados; cada um é projetado no
    complemento do anterior e completado pelos vetores singulares dominantes.
    """
    frame = np.zeros((dim, 0))
    for k, subspace in zip(pivots, subspaces):
        missing = k - frame.shape[1]
        projected = subspace - frame @ (frame.T @ subspace)
        u, _, _ = np.linalg.svd(projected, full_matrices=False)
        frame = np.hstack([frame, u[:, :missing]])
    if frame.shape[1] < dim:
        frame = np.hstack([frame, scipy.linalg.null_space(frame.T)])
    return frame
