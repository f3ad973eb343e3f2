# -*- coding: utf-8 -*-
"""
Módulo de Conjuntos Limite, Mapas de Bordo e Expansão.

Funcionalidades Principais:
-   **Amostra do conjunto limite:** flags atratores de potências altas de
    palavras ciclicamente reduzidas, deduplicados, com a margem mínima de
    antipodalidade entre pares.
-   **Mapa de bordo:** flags singulares dominantes ao longo de um raio
    geodésico (prefixos de uma palavra infinita) e seus incrementos.
-   **Série de expansão:** eps(q(k)^{-1}, beta(zeta)) ao longo do raio, obtida
    encadeando os diferenciais letra a letra (regra da cadeia) com escala
    logarítmica; inclinação por mínimos quadrados (`scipy.stats.linregress`).
-   **Expansão no conjunto limite:** para cada ponto amostrado, a primeira
    palavra da bola (ordem de comprimento e alfabeto) que expande nele.
"""
import logging
from dataclasses import dataclass
from itertools import islice
from math import ceil
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from config import (
    BOUNDARY_CONVERGENCE_TOL,
    CONTRACTION_GAP_THRESHOLD,
    EXPANSION_SLOPE_TOL,
    EXPANSION_WITNESS_MARGIN,
    LIMIT_DEDUP_DISTANCE,
)
from src.errors import AnosovError, DimMismatch, NoWitness, NotRegular
from src.flag_geometry import (
    Flag,
    attracting_flag,
    contraction_limits,
    push_forward,
    expansion_rate,
    flag_distance,
    pairwise_antipodality_margins,
)
from src.linear_algebra import LogScaledMatrix, frame_from_subspaces
from src.regularity import URUCertificate
from src.representation import Representation, ball_words, cyclically_reduced_words, inverse_letter
from src.weyl_group import FaceType

LIMIT_CONTRACTION_SAMPLE = 8


@dataclass(frozen=True)
class LimitPoint:
    word: str
    flag: Flag


@dataclass(frozen=True, eq=False)
class LimitSample:
    """Amostra finita do conjunto limite de tipo `face`."""

    face: FaceType
    points: List[LimitPoint]
    certified: bool = False
    skipped: int = 0
    min_margin: float = float("nan")
    mean_margin: float = float("nan")

    @classmethod
    def from_flags(
        cls, flags: Sequence[Flag], words: Optional[Sequence[str]] = None, certified: bool = True, skipped: int = 0
    ) -> "LimitSample":
        if not flags:
            raise AnosovError("Use LimitSample.empty para uma amostra vazia.")
        words = list(words) if words is not None else [f"#{k}" for k in range(len(flags))]
        face = flags[0].face
        points = [LimitPoint(w, f) for w, f in zip(words, flags)]
        min_margin, mean_margin = _margin_summary(face, points)
        return cls(face, points, certified, skipped, min_margin, mean_margin)

    @classmethod
    def empty(cls, face: FaceType) -> "LimitSample":
        return cls(face, [], certified=True)

    @property
    def dim(self) -> int:
        return self.face.dim

    @property
    def flags(self) -> List[Flag]:
        return [p.flag for p in self.points]

    @property
    def words(self) -> List[str]:
        return [p.word for p in self.points]

    def frames(self) -> np.ndarray:
        return np.array([p.flag.frame for p in self.points]).reshape(-1, self.dim, self.dim)

    def to_frame(self) -> pd.DataFrame:
        """Uma linha por ponto: palavra e coordenadas do referencial (f_i_j)."""
        frames = self.frames()
        records = []
        for word, frame in zip(self.words, frames):
            row = {"word": word}
            row.update({f"f_{i + 1}_{j + 1}": frame[i, j] for i in range(self.dim) for j in range(self.dim)})
            row.update(chart_coordinates(frame))
            records.append(row)
        return pd.DataFrame.from_records(records)


def chart_coordinates(frame: np.ndarray) -> dict:
    """Ângulo da reta (d = 2) ou carta afim (x/z, y/z) da reta do flag (d >= 3)."""
    line = frame[:, 0]
    if frame.shape[0] == 2:
        return {"angle": float(np.arctan2(line[1], line[0]) % np.pi)}
    with np.errstate(divide="ignore", invalid="ignore"):
        return {"chart_x": float(line[0] / line[-1]), "chart_y": float(line[1] / line[-1])}


def _margin_summary(face: FaceType, points: Sequence[LimitPoint]):
    if len(points) < 2 or not face.is_iota_invariant():
        return float("nan"), float("nan")
    frames = np.array([p.flag.frame for p in points])
    margins = pairwise_antipodality_margins(frames, frames, face.pivots)
    off_diagonal = margins[~np.eye(len(points), dtype=bool)]
    return float(off_diagonal.min()), float(off_diagonal.mean())


def limit_set_sample(
    rep: Representation,
    face: FaceType,
    word_length: int,
    power: int,
    certificate: Optional[URUCertificate] = None,
    max_points: Optional[int] = None,
    threshold: float = CONTRACTION_GAP_THRESHOLD,
) -> LimitSample:
    """
    Amostra o conjunto limite pelos flags atratores de rho(w)^N, w ciclicamente reduzida.

    Palavras não proximais (NotRegular em `contraction_limits`) são puladas e
    contadas; flags a menos de `LIMIT_DEDUP_DISTANCE` de um ponto já aceito
    são descartados.

    Args:
        rep: a representação.
        face: tipo de face.
        word_length: comprimento l0 das palavras.
        power: potência N (usa-se a sequência g^{ceil(N/2)}, g^N).
        certificate: certificado URU; ausente ou reprovado marca a amostra como não certificada.
        max_points: limite opcional do número de pontos.
        threshold: gap mínimo exigido no último termo.
    """
    if face.dim != rep.dim:
        raise DimMismatch(f"Face de dimensão {face.dim} para representação em dimensão {rep.dim}.")
    certified = certificate is not None and certificate.passed
    if not certified:
        logging.warning("Amostra do conjunto limite sem certificado URU aprovado: resultado não certificado.")
    accepted: List[LimitPoint] = []
    skipped = 0
    for word in cyclically_reduced_words(rep.alphabet, word_length):
        if max_points is not None and len(accepted) >= max_points:
            break
        g = rep.evaluate(word)
        try:
            limits = contraction_limits(
                [g.power(ceil(power / 2)), g.power(power)],
                face,
                threshold=threshold,
                sample_size=LIMIT_CONTRACTION_SAMPLE,
            )
        except NotRegular:
            skipped += 1
            continue
        flag = limits.tau_plus
        if any(flag_distance(flag, p.flag) < LIMIT_DEDUP_DISTANCE for p in accepted):
            continue
        accepted.append(LimitPoint(word, flag))
    if skipped:
        logging.warning(f"{skipped} palavra(s) não proximal(is) ignorada(s) na amostra do conjunto limite.")
    min_margin, mean_margin = _margin_summary(face, accepted)
    logging.info(f"Conjunto limite: {len(accepted)} ponto(s), margem mínima de antipodalidade {min_margin:.3g}.")
    return LimitSample(face, accepted, certified, skipped, min_margin, mean_margin)


@dataclass(frozen=True, eq=False)
class BoundaryRay:
    face: FaceType
    prefix: str
    flags: List[Flag]
    increments: np.ndarray

    @property
    def limit(self) -> Flag:
        return self.flags[-1]

    @property
    def converged(self) -> bool:
        return bool(self.increments.size) and float(self.increments[-1]) < BOUNDARY_CONVERGENCE_TOL


def boundary_map_sample(rep: Representation, face: FaceType, prefix: str, n: Optional[int] = None) -> BoundaryRay:
    """
    Flags beta_k = flag singular dominante de rho(prefix[:k]), k = 1..n.

    Raises:
        NotReduced, UnknownGenerator: prefixo inválido.
        NotRegular: algum prefixo tem gap de raiz nulo.
    """
    rep.validate_word(prefix)
    n = len(prefix) if n is None else n
    if not 1 <= n <= len(prefix):
        raise AnosovError(f"n = {n} fora de 1..{len(prefix)}.")
    flags = [attracting_flag(rep.evaluate(prefix[:k]), face) for k in range(1, n + 1)]
    increments = np.array([flag_distance(a, b) for a, b in zip(flags, flags[1:])])
    ray = BoundaryRay(face, prefix[:n], flags, increments)
    if not ray.converged:
        logging.warning(f"Raio '{prefix[:n]}' não convergiu (último incremento acima de {BOUNDARY_CONVERGENCE_TOL}).")
    return ray


def random_ray(rep: Representation, length: int, rng: np.random.Generator) -> str:
    """Palavra reduzida aleatória de comprimento `length` (prefixo de um raio)."""
    alphabet = rep.alphabet
    word = ""
    while len(word) < length:
        c = alphabet[rng.integers(len(alphabet))]
        if word and c == inverse_letter(word[-1]):
            continue
        word += c
    return word


@dataclass(frozen=True, eq=False)
class ExpansionSeries:
    table: pd.DataFrame
    slope: float
    intercept: float
    uniform: bool
    diverges: bool
    boundary_flag: Flag


def expansion_series(rep: Representation, face: FaceType, prefix: str, n: Optional[int] = None) -> ExpansionSeries:
    """
    Série eps_k = eps(rho(q_k)^{-1}, beta), q_k = prefix[:k], beta = flag de rho(prefix[:n]).

    Usa eps(q^{-1}, beta) = 1 / ||d(q) em q^{-1} beta||. Os pontos
    q_k^{-1} beta = rho(prefix[k:n]) R, com R o flag singular à direita de
    rho(prefix[:n]), são obtidos empurrando R para frente (direção
    contratante); os diferenciais por letra são encadeados com o mesmo
    referencial em cada ponto e o produto é mantido em escala logarítmica.

    Returns:
        ExpansionSeries: tabela (k, log_epsilon, epsilon), inclinação de
        log eps por mínimos quadrados, `uniform` (inclinação > EXPANSION_SLOPE_TOL)
        e `diverges` (máximo da segunda metade acima do da primeira).
    """
    rep.validate_word(prefix)
    n = len(prefix) if n is None else n
    if not 2 <= n <= len(prefix):
        raise AnosovError(f"A série de expansão exige 2 <= n <= {len(prefix)}, recebido {n}.")
    word = prefix[:n]
    powers = rep.evaluate(word)
    right = frame_from_subspaces(face.dim, face.pivots, [powers.leading_right_subspace(k) for k in face.pivots])
    # referenciais dos pontos tau_j = rho(word[j:]) R, j = n..0, e diferenciais de cada letra
    current = Flag(face, right)
    differentials = [None] * n
    for j in range(n, 0, -1):
        current, differentials[j - 1] = push_forward(rep.letter_image(word[j - 1]), current)
    boundary = current
    product = None
    records = []
    for k, step in enumerate(differentials, start=1):
        product = LogScaledMatrix.from_array(step) if product is None else product @ LogScaledMatrix.from_array(step)
        log_epsilon = -product.log_norm()
        records.append({"k": k, "log_epsilon": log_epsilon, "epsilon": float(np.exp(log_epsilon))})
    table = pd.DataFrame.from_records(records)
    fit = stats.linregress(table["k"], table["log_epsilon"])
    half = len(table) // 2
    log_epsilon = table["log_epsilon"]
    diverges = bool(log_epsilon.iloc[half:].max() > log_epsilon.iloc[:half].max() + EXPANSION_SLOPE_TOL)
    slope = float(fit.slope) if np.isfinite(fit.slope) else 0.0
    return ExpansionSeries(
        table=table,
        slope=slope,
        intercept=float(fit.intercept),
        uniform=slope > EXPANSION_SLOPE_TOL,
        diverges=diverges,
        boundary_flag=boundary,
    )


def expansion_at_limit_set(
    rep: Representation, sample: LimitSample, radius: int, margin: float = EXPANSION_WITNESS_MARGIN
) -> pd.DataFrame:
    """
    Procura, para cada ponto da amostra, gamma na bola de raio `radius` com eps(rho(gamma), tau) >= 1 + margin.

    A ausência de testemunha (NoWitness) é registrada na linha do ponto com
    status "NoWitness", sem interromper os demais.

    Returns:
        pd.DataFrame: colunas point, limit_word, witness_word, epsilon, status.
    """
    if not sample.points:
        raise AnosovError("A amostra do conjunto limite está vazia.")
    candidates = [(w, rep.evaluate(w)) for w in islice(ball_words(rep.alphabet, radius), 1, None)]
    records = []
    missing = 0
    for index, point in enumerate(sample.points):
        row = {"point": index, "limit_word": point.word, "witness_word": "", "epsilon": np.nan, "status": "ok"}
        try:
            row.update(_first_witness(candidates, point.flag, margin, radius))
        except NoWitness:
            row["status"] = "NoWitness"
            missing += 1
        records.append(row)
    if missing:
        logging.warning(f"{missing} ponto(s) do conjunto limite sem testemunha de expansão no raio {radius}.")
    return pd.DataFrame.from_records(records)


def _first_witness(candidates, tau: Flag, margin: float, radius: int) -> dict:
    best = 0.0
    for word, g in candidates:
        epsilon = expansion_rate(g, tau)
        best = max(best, epsilon)
        if epsilon >= 1 + margin:
            return {"witness_word": word, "epsilon": epsilon}
    raise NoWitness(f"Nenhum elemento da bola de raio {radius} expande no ponto (máximo {best:.6g}).")
