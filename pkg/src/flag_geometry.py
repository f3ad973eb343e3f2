# -*- coding: utf-8 -*-
"""
Módulo de Geometria de Variedades de Flags.

Um flag de tipo tau_mod (pivôs D_1 < ... < D_k) é guardado como um
referencial ortonormal d x d cujas primeiras D_j colunas geram o j-ésimo
subespaço. Só os espaços gerados por bloco importam: dois referenciais que
geram os mesmos subespaços representam o mesmo flag.

Funcionalidades Principais:
-   **Ação de SL(d, R):** `act` para matrizes densas (via QR) e para torres de
    potências exteriores (via vetores de Plücker), além de versões em lote.
-   **Distância e antipodalidade:** distância pelo maior ângulo principal por
    pivô; antipodalidade pela menor singular dos blocos [V_i | W_{d-i}].
-   **Posição relativa:** permutação reconstruída a partir da tabela de
    dimensões de interseção dim(sigma_i n tau_j), com faixa de ambiguidade.
-   **Taxas de expansão:** menor valor singular do diferencial da ação em
    coordenadas normais ortonormais (métrica K-invariante), com a fórmula
    analítica e um oráculo de diferenças finitas com extrapolação de Richardson.
-   **Dinâmica de contração:** flags tau_+ e tau_- de uma sequência divergente
    e o relatório de decaimento sobre um compacto amostrado de C(tau_-).
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.linalg

from config import (
    CONTRACTION_GAP_THRESHOLD,
    CONTRACTION_SAMPLE_SIZE,
    COMPACT_MARGIN,
    DEFAULT_SEED,
    FD_STEP,
    RANK_AMBIGUITY_FACTOR,
)
from src.errors import AnosovError, DegeneratePosition, DimMismatch, FaceMismatch, NotRegular, SingularInput
from src.linear_algebra import (
    DEFAULT_TOLERANCES,
    ExteriorPowers,
    LogScaledMatrix,
    MatrixLike,
    Tolerances,
    as_exterior_powers,
    frame_from_subspaces,
    root_gaps,
)
from src.weyl_group import FaceType, WeylElement, relative_position_coset


@dataclass(frozen=True, eq=False)
class Flag:
    """Flag parcial de tipo `face`, representado por um referencial ortonormal."""

    face: FaceType
    frame: np.ndarray = field(repr=False)

    def __post_init__(self):
        frame = np.array(self.frame, dtype=float)
        d = self.face.dim
        if frame.shape != (d, d):
            raise DimMismatch(f"Referencial de shape {frame.shape} para flag em dimensão {d}.")
        if np.linalg.norm(frame.T @ frame - np.eye(d)) > 1e3 * DEFAULT_TOLERANCES.angle_tol:
            raise AnosovError("O referencial do flag não é ortonormal.")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @classmethod
    def from_basis(cls, face: FaceType, basis: np.ndarray) -> "Flag":
        """Ortonormaliza (QR) uma base cujas primeiras D_j colunas geram os subespaços."""
        basis = np.asarray(basis, dtype=float)
        q, r = scipy.linalg.qr(basis, mode="economic")
        if np.min(np.abs(np.diag(r))) <= DEFAULT_TOLERANCES.svd_tol * max(1.0, np.abs(r).max()):
            raise SingularInput("A base do flag é degenerada.")
        if q.shape[1] < face.dim:
            q = np.hstack([q, scipy.linalg.null_space(q.T)])
        return cls(face, q)

    @classmethod
    def from_subspaces(cls, face: FaceType, subspaces: Sequence[np.ndarray]) -> "Flag":
        return cls(face, frame_from_subspaces(face.dim, face.pivots, subspaces))

    @property
    def dim(self) -> int:
        return self.face.dim

    @property
    def is_chamber(self) -> bool:
        return self.face.is_full

    def subspace(self, k: int) -> np.ndarray:
        """Base ortonormal do subespaço de dimensão k (k deve ser pivô)."""
        if k not in self.face.pivots:
            raise FaceMismatch(f"{k} não é pivô da face {self.face.pivots}.")
        return self.frame[:, :k]

    def coarsen(self, face: FaceType) -> "Flag":
        """Esquece os subespaços cujos pivôs não estão em `face`."""
        if face.dim != self.dim or not set(face.pivots) <= set(self.face.pivots):
            raise FaceMismatch(f"Não é possível passar de {self.face.pivots} para {face.pivots}.")
        return Flag(face, self.frame)

    def __repr__(self) -> str:
        return f"Flag(pivots={self.face.pivots}, frame=\n{np.array2string(self.frame, precision=4)})"


Chamber = Flag


def standard_flag(face: FaceType) -> Flag:
    """Flag gerado pela base canônica e_1, ..., e_d."""
    return Flag(face, np.eye(face.dim))


def reversed_flag(face: FaceType) -> Flag:
    """Flag gerado por e_d, e_{d-1}, ..., e_1 (oposto ao padrão)."""
    return Flag(face, np.eye(face.dim)[:, ::-1])


def random_flag(face: FaceType, rng: np.random.Generator) -> Flag:
    """Flag aleatório uniforme: ortonormalização de uma matriz gaussiana."""
    q, r = np.linalg.qr(rng.standard_normal((face.dim, face.dim)))
    return Flag(face, q * np.sign(np.diag(r)))


def random_chamber(dim: int, rng: np.random.Generator) -> Flag:
    return random_flag(FaceType.full(dim), rng)


def _check_dim(g_dim: int, tau: Flag) -> None:
    if g_dim != tau.dim:
        raise DimMismatch(f"Matriz de dimensão {g_dim} agindo em flag de dimensão {tau.dim}.")


def act(g: MatrixLike, tau: Flag) -> Flag:
    """
    Ação de g sobre um flag: subespaços g V_i re-ortonormalizados.

    Torres `ExteriorPowers` (imagens de palavras longas) agem pelos vetores de
    Plücker, o que preserva a precisão mesmo com números de condição enormes.
    """
    if isinstance(g, (ExteriorPowers, LogScaledMatrix)):
        powers = as_exterior_powers(g)
        _check_dim(powers.dim, tau)
        subspaces = [powers.act_on_subspace(tau.frame[:, :k]) for k in tau.face.pivots]
        return Flag.from_subspaces(tau.face, subspaces)
    g = np.asarray(g, dtype=float)
    _check_dim(g.shape[0], tau)
    return Flag.from_basis(tau.face, g @ tau.frame)


def act_batch(g: np.ndarray, frames: np.ndarray) -> np.ndarray:
    """Aplica g a uma pilha (n, d, d) de referenciais, com QR em lote."""
    q, r = np.linalg.qr(np.einsum("ij,njk->nik", g, frames))
    diag = np.diagonal(r, axis1=1, axis2=2)
    if np.any(np.abs(diag) == 0.0):
        raise SingularInput("Imagem degenerada na ação em lote.")
    return q


def _check_faces(tau1: Flag, tau2: Flag) -> None:
    if tau1.face != tau2.face:
        raise FaceMismatch(f"Flags de tipos {tau1.face.pivots} e {tau2.face.pivots}.")


def flag_distance(tau1: Flag, tau2: Flag) -> float:
    """Máximo, sobre os pivôs, do maior ângulo principal entre os subespaços."""
    _check_faces(tau1, tau2)
    return max(
        float(scipy.linalg.subspace_angles(tau1.frame[:, :k], tau2.frame[:, :k])[0]) for k in tau1.face.pivots
    )


def frame_distances(frames: np.ndarray, reference: np.ndarray, pivots: Sequence[int]) -> np.ndarray:
    """Distâncias de uma pilha de referenciais a um referencial fixo (versão em lote de `flag_distance`)."""
    distances = np.zeros(frames.shape[0])
    for k in pivots:
        # seno do maior ângulo = maior valor singular da projeção no complemento
        ref = reference[:, :k]
        residual = frames[:, :, :k] - np.einsum("ij,njk->nik", ref @ ref.T, frames[:, :, :k])
        sines = np.linalg.svd(residual, compute_uv=False)[:, 0]
        distances = np.maximum(distances, np.arcsin(np.clip(sines, 0.0, 1.0)))
    return distances


@dataclass(frozen=True)
class Antipodality:
    antipodal: bool
    margin: float

    def __bool__(self) -> bool:
        return self.antipodal


def antipodality_margin(tau1: Flag, tau2: Flag) -> float:
    """Menor valor singular de [V_i | W_{d-i}] sobre os pivôs i de tau1."""
    if tau1.dim != tau2.dim or tau2.face != tau1.face.opposite():
        raise FaceMismatch(
            f"Antipodalidade exige faces opostas: {tau1.face.pivots} e {tau2.face.pivots}."
        )
    d = tau1.dim
    return min(
        float(np.linalg.svd(np.hstack([tau1.frame[:, :i], tau2.frame[:, : d - i]]), compute_uv=False)[-1])
        for i in tau1.face.pivots
    )


def is_antipodal(tau1: Flag, tau2: Flag, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Antipodality:
    """
    Testa se dois flags são opostos (todas as interseções complementares nulas).

    Raises:
        FaceMismatch: se os tipos não forem opostos (iguais, para faces iota-invariantes).
    """
    margin = antipodality_margin(tau1, tau2)
    return Antipodality(antipodal=margin > tolerances.rank_tol, margin=margin)


def pairwise_antipodality_margins(frames_a: np.ndarray, frames_b: np.ndarray, pivots: Sequence[int]) -> np.ndarray:
    """
    Matriz (n_a, n_b) de margens de antipodalidade entre duas pilhas de referenciais.

    `pivots` são os pivôs dos flags de `frames_a`; os de `frames_b` são os complementares.
    """
    n_a, n_b, d = frames_a.shape[0], frames_b.shape[0], frames_a.shape[1]
    margins = np.full((n_a, n_b), np.inf)
    for i in pivots:
        left = np.broadcast_to(frames_a[:, None, :, :i], (n_a, n_b, d, i))
        right = np.broadcast_to(frames_b[None, :, :, : d - i], (n_a, n_b, d, d - i))
        blocks = np.concatenate([left, right], axis=-1)
        margins = np.minimum(margins, np.linalg.svd(blocks, compute_uv=False)[..., -1])
    return margins


def _numeric_rank(block: np.ndarray, tol: float) -> Tuple[int, float]:
    """Posto numérico e menor valor singular contado como não nulo."""
    s = np.linalg.svd(block, compute_uv=False)
    ambiguous = (s > tol) & (s <= tol * RANK_AMBIGUITY_FACTOR)
    if np.any(ambiguous):
        raise DegeneratePosition(
            f"Valor singular {s[ambiguous][0]:.3g} na faixa ambígua ({tol:.1g}, {tol * RANK_AMBIGUITY_FACTOR:.1g}]."
        )
    nonzero = s[s > tol]
    return int(nonzero.size), float(nonzero.min()) if nonzero.size else np.inf


def relative_position_with_margin(
    sigma: Flag, tau: Flag, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[WeylElement, float]:
    """
    Posição relativa de uma câmara sigma em relação a um flag tau, com margem.

    Devolve o representante canônico v de W_tau * v com
    dim(sigma_i n tau_j) = #{b <= i : v(b) <= j}, e a margem (o menor valor
    singular tratado como não nulo em todas as tabelas de posto).

    Raises:
        FaceMismatch: se sigma não for câmara.
        DegeneratePosition: posto ambíguo ou tabela inconsistente.
    """
    if not sigma.is_chamber:
        raise FaceMismatch("O primeiro argumento de relative_position deve ser uma câmara.")
    if sigma.dim != tau.dim:
        raise DimMismatch(f"Dimensões {sigma.dim} e {tau.dim}.")
    d = sigma.dim
    levels = list(tau.face.pivots) + [d]
    counts = np.zeros((d + 1, len(levels)), dtype=int)
    margin = np.inf
    for i in range(1, d + 1):
        for col, j in enumerate(levels):
            if i == d or j == d:
                counts[i, col] = min(i, j)
                continue
            rank, smallest = _numeric_rank(np.hstack([sigma.frame[:, :i], tau.frame[:, :j]]), tolerances.rank_tol)
            counts[i, col] = i + j - rank
            margin = min(margin, smallest)
    increments = np.diff(counts, axis=0)
    blocks = tau.face.blocks()
    values = []
    used = [0] * len(blocks)
    for b in range(d):
        row = increments[b]
        if np.any(row < 0) or np.any(row > 1) or np.any(np.diff(row) < 0) or row[-1] != 1:
            raise DegeneratePosition("Tabela de dimensões de interseção inconsistente.")
        block = int(np.argmax(row))
        if used[block] >= len(blocks[block]):
            raise DegeneratePosition("Tabela de dimensões de interseção inconsistente.")
        values.append(blocks[block][used[block]])
        used[block] += 1
    position = relative_position_coset(WeylElement(tuple(values)), tau.face)
    return position, float(margin)


def relative_position(sigma: Flag, tau: Flag, tolerances: Tolerances = DEFAULT_TOLERANCES) -> WeylElement:
    """Posição relativa de sigma (câmara) em relação a tau; veja `relative_position_with_margin`."""
    return relative_position_with_margin(sigma, tau, tolerances)[0]


def _lower_block_entries(face: FaceType) -> List[Tuple[int, int]]:
    """Entradas (linha, coluna) abaixo da diagonal de blocos: coordenadas do espaço tangente."""
    bounds = (0,) + face.pivots + (face.dim,)
    block_of = np.zeros(face.dim, dtype=int)
    for m, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        block_of[lo:hi] = m
    return [(r, c) for c in range(face.dim) for r in range(face.dim) if block_of[r] > block_of[c]]


def projective_matrix(g: MatrixLike) -> np.ndarray:
    """
    Representante denso de g para a ação em flags.

    Torres e matrizes em escala logarítmica devolvem a camada k = 1 com norma
    de Frobenius 1: a ação e o diferencial não dependem de múltiplos escalares.
    """
    if isinstance(g, (ExteriorPowers, LogScaledMatrix)):
        return as_exterior_powers(g).base.matrix
    return np.asarray(g, dtype=float)


def push_forward(g: MatrixLike, tau: Flag) -> Tuple[Flag, np.ndarray]:
    """
    Imagem g tau e a matriz do diferencial de g em tau.

    As coordenadas normais ortonormais em g tau usam exatamente o referencial
    do flag devolvido, então diferenciais sucessivos podem ser encadeados.
    Com g F = F' R (QR), R é triangular superior e o diferencial é
    X -> parte estritamente inferior por blocos de R X R^{-1}.
    """
    g = projective_matrix(g)
    _check_dim(g.shape[0], tau)
    q, r = scipy.linalg.qr(g @ tau.frame)
    if np.min(np.abs(np.diag(r))) == 0.0:
        raise SingularInput("Matriz singular no cálculo do diferencial.")
    entries = _lower_block_entries(tau.face)
    rows, cols = np.array(entries).T
    columns = []
    for r_idx, c_idx in entries:
        x = np.zeros_like(r)
        x[r_idx, c_idx] = 1.0
        image = scipy.linalg.solve_triangular(r, (r @ x).T, trans="T").T  # (R X) R^{-1}
        columns.append(image[rows, cols])
    return Flag(tau.face, q), np.array(columns).T


def differential_matrix(g: MatrixLike, tau: Flag) -> np.ndarray:
    """Matriz do diferencial de g em tau, em coordenadas normais ortonormais em tau e em g tau."""
    return push_forward(g, tau)[1]


def _chart_coordinates(basis: np.ndarray, face: FaceType) -> np.ndarray:
    """Coordenadas do flag gerado por `basis` na carta X -> (I + X) em torno do flag padrão."""
    bounds = (0,) + face.pivots + (face.dim,)
    b = basis.copy()
    lower = np.zeros_like(b)
    for lo, hi in zip(bounds, bounds[1:]):
        pivot_block = b[lo:hi, lo:hi]
        below = b[hi:, lo:hi]
        factor = np.linalg.solve(pivot_block.T, below.T).T
        lower[hi:, lo:hi] = factor
        b[hi:, :] -= factor @ b[lo:hi, :]
    return lower[tuple(np.array(_lower_block_entries(face)).T)]


def differential_matrix_fd(g: MatrixLike, tau: Flag, step: float = FD_STEP) -> np.ndarray:
    """Diferencial por diferenças centrais com uma extrapolação de Richardson."""
    g = projective_matrix(g)
    _check_dim(g.shape[0], tau)
    image = act(g, tau)
    entries = _lower_block_entries(tau.face)
    transported = image.frame.T @ g @ tau.frame

    def central(h: float) -> np.ndarray:
        columns = []
        for r_idx, c_idx in entries:
            x = np.zeros((tau.dim, tau.dim))
            x[r_idx, c_idx] = h
            plus = _chart_coordinates(transported @ (np.eye(tau.dim) + x), tau.face)
            minus = _chart_coordinates(transported @ (np.eye(tau.dim) - x), tau.face)
            columns.append((plus - minus) / (2 * h))
        return np.array(columns).T

    return (4 * central(step / 2) - central(step)) / 3


def expansion_rate(g: MatrixLike, tau: Flag, method: str = "analytic") -> float:
    """
    Taxa de expansão eps(g, tau) = ||(d g_tau)^{-1}||^{-1}.

    Args:
        g: matriz não singular, densa ou em escala logarítmica (`ExteriorPowers`).
        tau: flag onde o diferencial é avaliado.
        method: "analytic" (fórmula na carta) ou "finite_difference".

    Returns:
        float: menor valor singular do diferencial; 1 para g ortogonal.
    """
    if method == "analytic":
        m = differential_matrix(g, tau)
    elif method == "finite_difference":
        m = differential_matrix_fd(g, tau)
    else:
        raise AnosovError(f"Método de diferencial desconhecido: '{method}'.")
    return float(np.linalg.svd(m, compute_uv=False)[-1])


@dataclass(frozen=True)
class ContractionLimits:
    tau_minus: Flag
    tau_plus: Flag
    decay: pd.DataFrame


def compact_sample(
    tau_minus: Flag, face: FaceType, size: int, rng: np.random.Generator, margin: float = COMPACT_MARGIN
) -> List[Flag]:
    """Amostra de flags de tipo `face` com margem de antipodalidade a tau_- acima de `margin`."""
    sample: List[Flag] = []
    attempts = 0
    while len(sample) < size:
        attempts += 1
        if attempts > 1000 * size:
            raise AnosovError("Não foi possível amostrar o compacto em C(tau_-).")
        candidate = random_flag(face, rng)
        if antipodality_margin(candidate, tau_minus) > margin:
            sample.append(candidate)
    return sample


def contraction_limits(
    gs: Sequence[MatrixLike],
    face: FaceType,
    threshold: float = CONTRACTION_GAP_THRESHOLD,
    sample_size: int = CONTRACTION_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
) -> ContractionLimits:
    """
    Extrai tau_+ e tau_- de uma sequência tau_mod-contratante e mede o decaimento.

    tau_+ vem dos subespaços singulares à esquerda dominantes do último termo;
    tau_- (do tipo oposto) dos subespaços singulares à direita finais. O
    relatório de decaimento traz, para cada termo, o supremo da distância de
    g_n sigma a tau_+ sobre um compacto amostrado de C(tau_-).

    Raises:
        NotRegular: se algum gap de raiz do último termo não exceder `threshold`.
    """
    if len(gs) < 2:
        raise AnosovError("contraction_limits exige pelo menos dois termos.")
    powers = [as_exterior_powers(g) for g in gs]
    if any(p.dim != face.dim for p in powers):
        raise DimMismatch(f"Sequência com dimensões diferentes de {face.dim}.")
    last = powers[-1]
    gaps = root_gaps(last.cartan(), face)
    if np.min(gaps) <= threshold:
        raise NotRegular(f"Gap mínimo {np.min(gaps):.4g} não excede o limiar {threshold}.")
    tau_plus = Flag.from_subspaces(face, [last.leading_subspace(k) for k in face.pivots])
    opposite = face.opposite()
    tau_minus = Flag.from_subspaces(opposite, [last.trailing_subspace(k) for k in opposite.pivots])

    rng = np.random.default_rng(seed)
    sample = compact_sample(tau_minus, face, sample_size, rng)
    records = []
    for n, powers_n in enumerate(powers, start=1):
        sup_distance = max(flag_distance(act(powers_n, sigma), tau_plus) for sigma in sample)
        records.append(
            {"step": n, "sup_distance": sup_distance, "min_gap": float(np.min(root_gaps(powers_n.cartan(), face)))}
        )
    decay = pd.DataFrame.from_records(records)
    logging.debug(f"Contração: distância final {decay['sup_distance'].iloc[-1]:.3g} após {len(gs)} termos.")
    return ContractionLimits(tau_minus=tau_minus, tau_plus=tau_plus, decay=decay)


def attracting_flag(g: MatrixLike, face: FaceType, threshold: float = 0.0) -> Flag:
    """Flag dos subespaços singulares à esquerda dominantes de g (sem relatório de decaimento)."""
    powers = as_exterior_powers(g)
    gaps = root_gaps(powers.cartan(), face)
    if np.min(gaps) <= threshold:
        raise NotRegular(f"Gap mínimo {np.min(gaps):.4g} não excede o limiar {threshold}.")
    return Flag.from_subspaces(face, [powers.leading_subspace(k) for k in face.pivots])


def nearest_distance(tau: Flag, others: Sequence[Flag]) -> Optional[float]:
    if not others:
        return None
    return min(flag_distance(tau, other) for other in others)
