# -*- coding: utf-8 -*-
"""
Módulo de Espessamentos do Conjunto Limite e Domínios de Descontinuidade.

Dado um espessamento balanceado Th de W e uma amostra finita do conjunto
limite, uma câmara sigma pertence ao espessamento amostrado quando sua
posição relativa a algum flag limite tau está em Th. O complemento é o
domínio Omega, onde a ação é propriamente descontínua.

Funcionalidades Principais:
-   **`ThickenedLimitSet`:** valida o espessamento (fechado para baixo e
    invariante pelo estabilizador da face da amostra).
-   **Classificação:** `in_thickening` devolve "in", "out" ou "ambiguous"
    (posto numérico na faixa ambígua), com a palavra testemunha e a margem.
-   **Nuvem classificada:** `domain_sample` sorteia câmaras uniformes com
    semente fixa e classifica em blocos com `joblib.Parallel`.
-   **Evidência de propriedade:** `properness_witness` conta, por
    comprimento, as palavras w com rho(w) K encontrando K.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from config import BALL_EVALUATION_BUDGET, DEFAULT_RANK_TOL, DEFAULT_SEED, DEFAULT_THREADS, PROPERNESS_TOL
from src.errors import AnosovError, DegeneratePosition, DimMismatch, FaceMismatch
from src.flag_geometry import Flag, act, frame_distances, random_chamber, relative_position_with_margin
from src.limit_sets import LimitSample, chart_coordinates
from src.linear_algebra import DEFAULT_TOLERANCES, ExteriorPowers
from src.representation import BallVisitor, Representation, enumerate_ball
from src.weyl_group import FaceType, Thickening, WeylElement, is_stabilizer_invariant, is_thickening

IN, OUT, AMBIGUOUS = "in", "out", "ambiguous"
DOMAIN_CHUNK_SIZE = 256


@dataclass(frozen=True, eq=False)
class ThickenedLimitSet:
    """
    Espessamento Th_Fu(Lambda) representado pela amostra finita do conjunto limite.

    `tolerance` é a tolerância de posto usada nas posições relativas: valores
    singulares abaixo dela contam como interseção, o que transforma cada
    ponto da amostra numa pequena bola.
    """

    thickening: Thickening
    limit_sample: LimitSample
    tolerance: float = DEFAULT_RANK_TOL

    def __post_init__(self):
        face = self.limit_sample.face
        if self.thickening.dim != face.dim:
            raise DimMismatch(f"Espessamento em dimensão {self.thickening.dim}, amostra em dimensão {face.dim}.")
        if not is_thickening(self.thickening):
            raise AnosovError(f"'{self.thickening}' não é fechado para baixo na ordem de Bruhat.")
        if not is_stabilizer_invariant(self.thickening, face):
            raise AnosovError(f"'{self.thickening}' não é invariante pelo estabilizador da face {face}.")
        if self.tolerance <= 0:
            raise AnosovError(f"A tolerância deve ser positiva, recebido {self.tolerance}.")

    @property
    def dim(self) -> int:
        return self.thickening.dim


@dataclass(frozen=True)
class Membership:
    status: str
    witness_word: str = ""
    witness_index: int = -1
    position: Optional[WeylElement] = None
    margin: float = float("nan")

    def __bool__(self) -> bool:
        return self.status == IN


def in_thickening(sigma: Flag, thickened: ThickenedLimitSet) -> Membership:
    """
    Classifica uma câmara em relação ao espessamento amostrado.

    "in" assim que algum tau da amostra tiver posição relativa em Th; senão
    "ambiguous" se alguma posição caiu na faixa de posto ambígua; senão
    "out", com margem igual à menor margem entre as posições calculadas.

    Raises:
        FaceMismatch: sigma não é câmara da mesma dimensão.
    """
    if not sigma.is_chamber or sigma.dim != thickened.dim:
        raise FaceMismatch(f"Esperava câmara em dimensão {thickened.dim}.")
    tolerances = DEFAULT_TOLERANCES.with_overrides(rank_tol=thickened.tolerance)
    ambiguous = False
    margin = np.inf
    for index, point in enumerate(thickened.limit_sample.points):
        try:
            position, point_margin = relative_position_with_margin(sigma, point.flag, tolerances)
        except DegeneratePosition:
            ambiguous = True
            continue
        if position in thickened.thickening:
            return Membership(IN, point.word, index, position, point_margin)
        margin = min(margin, point_margin)
    if ambiguous:
        return Membership(AMBIGUOUS)
    return Membership(OUT, margin=float(margin) if np.isfinite(margin) else float("nan"))


def _classify_chunk(frames: np.ndarray, thickened: ThickenedLimitSet) -> List[Membership]:
    face = FaceType.full(thickened.dim)
    return [in_thickening(Flag(face, frame), thickened) for frame in frames]


def domain_sample(
    thickened: ThickenedLimitSet,
    samples: int,
    seed: int = DEFAULT_SEED,
    n_jobs: int = DEFAULT_THREADS,
) -> pd.DataFrame:
    """
    Classifica `samples` câmaras pseudoaleatórias uniformes (ortonormalização de gaussianas).

    As câmaras são sorteadas em sequência a partir da semente; só a
    classificação é paralela, então a tabela não depende de `n_jobs`.

    Returns:
        pd.DataFrame: colunas chamber, f_i_j (referencial), angle ou
        chart_x/chart_y, class, witness_word, margin.
    """
    if samples < 1:
        raise AnosovError(f"O número de amostras deve ser >= 1, recebido {samples}.")
    if not thickened.limit_sample.certified:
        logging.warning("Classificando com uma amostra do conjunto limite não certificada.")
    rng = np.random.default_rng(seed)
    d = thickened.dim
    frames = np.array([random_chamber(d, rng).frame for _ in range(samples)])
    chunks = [frames[start : start + DOMAIN_CHUNK_SIZE] for start in range(0, samples, DOMAIN_CHUNK_SIZE)]
    results = Parallel(n_jobs=n_jobs)(delayed(_classify_chunk)(chunk, thickened) for chunk in chunks)
    memberships = [m for chunk in results for m in chunk]

    records = []
    for index, (frame, membership) in enumerate(zip(frames, memberships)):
        row = {"chamber": index}
        row.update({f"f_{i + 1}_{j + 1}": frame[i, j] for i in range(d) for j in range(d)})
        row.update(chart_coordinates(frame))
        row.update({"class": membership.status, "witness_word": membership.witness_word, "margin": membership.margin})
        records.append(row)
    table = pd.DataFrame.from_records(records)
    counts = table["class"].value_counts()
    logging.info(
        f"Domínio: {counts.get(IN, 0)} in, {counts.get(OUT, 0)} out, {counts.get(AMBIGUOUS, 0)} ambíguas "
        f"({len(thickened.limit_sample.points)} pontos limite, margem mínima {thickened.limit_sample.min_margin:.3g})."
    )
    return table


@dataclass
class _ReturnVisitor(BallVisitor):
    frames: np.ndarray
    tolerance: float
    checked: Dict[int, int] = field(default_factory=dict)
    returns: Dict[int, List[str]] = field(default_factory=dict)

    def visit(self, word: str, image: ExteriorPowers) -> None:
        length = len(word)
        self.checked[length] = self.checked.get(length, 0) + 1
        face = FaceType.full(self.frames.shape[1])
        pivots = face.pivots
        for frame in self.frames:
            moved = act(image, Flag(face, frame)).frame
            if frame_distances(self.frames, moved, pivots).min() <= self.tolerance:
                self.returns.setdefault(length, []).append(word)
                return

    def merge(self, other: "_ReturnVisitor") -> "_ReturnVisitor":
        merged = _ReturnVisitor(self.frames, self.tolerance, dict(self.checked), {})
        for length, count in other.checked.items():
            merged.checked[length] = merged.checked.get(length, 0) + count
        for length in set(self.returns) | set(other.returns):
            merged.returns[length] = sorted(self.returns.get(length, []) + other.returns.get(length, []))
        return merged


@dataclass(frozen=True, eq=False)
class PropernessCensus:
    table: pd.DataFrame
    last_return_length: int
    stabilized: bool
    outside: int


def properness_witness(
    rep: Representation,
    thickened: ThickenedLimitSet,
    chambers: Sequence[Flag],
    radius: int,
    tolerance: float = PROPERNESS_TOL,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
) -> PropernessCensus:
    """
    Censo das palavras reduzidas w, |w| <= radius, com rho(w) K a menos de `tolerance` de K.

    A palavra vazia sempre retorna. A evidência de descontinuidade própria é
    a estabilização: nenhum retorno novo nos comprimentos finais da bola.
    Câmaras de K fora do domínio são avisadas (não interrompem o censo).

    Returns:
        PropernessCensus: tabela (length, words_checked, returns, return_words),
        último comprimento com retorno, estabilização e número de câmaras de K
        que não foram classificadas como "out".
    """
    if not chambers:
        raise AnosovError("O compacto K está vazio.")
    if rep.dim != thickened.dim:
        raise DimMismatch(f"Representação em dimensão {rep.dim}, espessamento em dimensão {thickened.dim}.")
    outside = sum(in_thickening(sigma, thickened).status != OUT for sigma in chambers)
    if outside:
        logging.warning(f"{outside} câmara(s) de K fora do domínio (classe diferente de 'out').")
    frames = np.array([sigma.frame for sigma in chambers])
    visitor = enumerate_ball(rep, radius, lambda: _ReturnVisitor(frames, tolerance), n_jobs=n_jobs, budget=budget)

    records = [{"length": 0, "words_checked": 1, "returns": 1, "return_words": ""}]
    for length in range(1, radius + 1):
        words = visitor.returns.get(length, [])
        records.append(
            {
                "length": length,
                "words_checked": visitor.checked.get(length, 0),
                "returns": len(words),
                "return_words": " ".join(words[:10]),
            }
        )
    table = pd.DataFrame.from_records(records)
    last_return = int(table.loc[table["returns"] > 0, "length"].max())
    stabilized = last_return < radius
    logging.info(f"Censo de retornos: último retorno no comprimento {last_return}, estabilizado={stabilized}.")
    return PropernessCensus(table, last_return, stabilized, int(outside))
