# -*- coding: utf-8 -*-
"""
Módulo de Certificação de Regularidade (URU).

Funcionalidades Principais:
-   **Perfil de gaps:** para cada comprimento l <= L, o mínimo exato (sobre
    todas as palavras reduzidas de comprimento l) do menor gap de raiz da
    face e da norma do vetor de Cartan, com as palavras que realizam os mínimos.
-   **Certificado URU:** ajuste da deriva linear gap(l) >= c l - a pela
    última aresta do minorante convexo inferior, com a guarda contra flutuações
    pré-assintóticas no último terço da bola. Um certificado aprovado é
    evidência no raio L, não uma prova.
-   **Defeito de aditividade:** ||d(w) - d(w1) - d(w2)||_inf com w = w1 w2
    dividida ao meio; defeito limitado é a assinatura de Morse.
-   **Estabilidade:** a certificação repetida em perturbações aleatórias dos
    geradores (abertura da condição de Anosov).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from config import BALL_EVALUATION_BUDGET, DEFAULT_SEED, DEFAULT_THREADS
from src.errors import AnosovError, DimMismatch
from src.linear_algebra import ExteriorPowers, Tolerances, make_unimodular, root_gaps
from src.representation import BallVisitor, Representation, ball_words, enumerate_ball
from src.weyl_group import FaceType


@dataclass
class _GapVisitor(BallVisitor):
    face: FaceType
    best_gap: Dict[int, Tuple[float, str]] = field(default_factory=dict)
    best_norm: Dict[int, Tuple[float, str]] = field(default_factory=dict)

    def visit(self, word: str, image: ExteriorPowers) -> None:
        cartan = image.cartan()
        length = len(word)
        gap = (float(np.min(root_gaps(cartan, self.face))), word)
        norm = (cartan.norm(), word)
        if length not in self.best_gap or gap < self.best_gap[length]:
            self.best_gap[length] = gap
        if length not in self.best_norm or norm < self.best_norm[length]:
            self.best_norm[length] = norm

    def merge(self, other: "_GapVisitor") -> "_GapVisitor":
        merged = _GapVisitor(self.face, dict(self.best_gap), dict(self.best_norm))
        for length, value in other.best_gap.items():
            merged.best_gap[length] = min(value, merged.best_gap.get(length, value))
        for length, value in other.best_norm.items():
            merged.best_norm[length] = min(value, merged.best_norm.get(length, value))
        return merged


@dataclass(frozen=True, eq=False)
class GapProfile:
    """Mínimos por comprimento: colunas length, min_gap, argmin_word, min_norm, argmin_norm_word."""

    face: FaceType
    table: pd.DataFrame

    @property
    def radius(self) -> int:
        return int(self.table["length"].max())

    def gaps(self) -> np.ndarray:
        return self.table["min_gap"].to_numpy()

    def norms(self) -> np.ndarray:
        return self.table["min_norm"].to_numpy()

    def is_divergent(self) -> bool:
        """Sinal de regularidade: gaps não decrescentes a partir de L/2 e estritamente maiores no fim."""
        gaps = self.gaps()
        tail = gaps[len(gaps) // 2 :]
        if tail.size < 2:
            return False
        return bool(np.all(np.diff(tail) >= -1e-12) and tail[-1] > tail[0] + 1e-9)


def gap_profile(
    rep: Representation,
    face: FaceType,
    radius: int,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
) -> GapProfile:
    """
    Calcula o perfil de gaps exato da bola de raio `radius`.

    Raises:
        BallTooLarge: se a bola exceder `budget` avaliações.
        DimMismatch: se a face não for da dimensão da representação.
    """
    if face.dim != rep.dim:
        raise DimMismatch(f"Face de dimensão {face.dim} para representação em dimensão {rep.dim}.")
    visitor = enumerate_ball(rep, radius, lambda: _GapVisitor(face), n_jobs=n_jobs, budget=budget)
    records = []
    for length in range(1, radius + 1):
        gap, gap_word = visitor.best_gap[length]
        norm, norm_word = visitor.best_norm[length]
        records.append(
            {
                "length": length,
                "min_gap": gap,
                "argmin_word": gap_word,
                "min_norm": norm,
                "argmin_norm_word": norm_word,
            }
        )
    return GapProfile(face, pd.DataFrame.from_records(records))


def lower_convex_minorant(lengths: np.ndarray, values: np.ndarray) -> List[Tuple[float, float]]:
    """Vértices do fecho convexo inferior de {(0, 0)} u {(l, valor)} (cadeia monótona)."""
    points = [(0.0, 0.0)] + [(float(x), float(y)) for x, y in zip(lengths, values)]
    hull: List[Tuple[float, float]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross > 0:
                break
            hull.pop()
        hull.append(p)
    return hull


def fit_drift(lengths: np.ndarray, values: np.ndarray) -> Tuple[float, float]:
    """
    Ajusta valor(l) >= c l - a pela última aresta do minorante convexo inferior.

    Como (0, 0) participa do fecho, a reta de suporte tem a >= 0.
    """
    hull = lower_convex_minorant(lengths, values)
    (x1, y1), (x2, y2) = hull[-2], hull[-1]
    slope = (y2 - y1) / (x2 - x1)
    intercept = slope * x2 - y2
    return float(slope), float(max(intercept, 0.0))


@dataclass(frozen=True, eq=False)
class URUCertificate:
    face: FaceType
    radius: int
    c: float
    a: float
    c_qi: float
    a_qi: float
    margin: float
    passed: bool
    profile: GapProfile

    def as_dict(self) -> Dict[str, object]:
        return {
            "pivots": str(self.face),
            "radius": self.radius,
            "c": self.c,
            "a": self.a,
            "c_qi": self.c_qi,
            "a_qi": self.a_qi,
            "margin": self.margin,
            "pass": self.passed,
            "semantics": f"evidence at radius {self.radius}",
        }


def _guard_margin(lengths: np.ndarray, gaps: np.ndarray, c: float) -> float:
    """Folga mínima de gap(l) - gap(l0) >= (c/2)(l - l0) sobre o último terço da bola."""
    radius = int(lengths[-1])
    third = max(1, radius // 3)
    start = radius - third
    by_length = dict(zip(lengths.astype(int), gaps))
    by_length[0] = 0.0
    base = by_length[start]
    return min(by_length[l] - base - 0.5 * c * (l - start) for l in range(start + 1, radius + 1))


def certify_uru(
    rep: Representation,
    face: FaceType,
    radius: int,
    min_slope: float,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
    profile: Optional[GapProfile] = None,
) -> URUCertificate:
    """
    Certifica (como evidência no raio L) que rho é uniformemente regular e não distorcida.

    Args:
        rep: a representação.
        face: tipo de face tau_mod.
        radius: raio L da bola.
        min_slope: inclinação mínima exigida para a deriva dos gaps.
        n_jobs: workers da enumeração.
        budget: orçamento de avaliações.
        profile: perfil já calculado (evita repetir a enumeração).

    Returns:
        URUCertificate: aprovado sse c >= min_slope, c > 0, c_qi > 0 e margem >= 0.
    """
    if profile is None:
        profile = gap_profile(rep, face, radius, n_jobs=n_jobs, budget=budget)
    lengths = profile.table["length"].to_numpy()
    c, a = fit_drift(lengths, profile.gaps())
    c_qi, a_qi = fit_drift(lengths, profile.norms())
    margin = _guard_margin(lengths, profile.gaps(), c)
    passed = c >= min_slope and c > 0 and c_qi > 0 and margin >= 0
    logging.info(f"URU no raio {radius}: c={c:.6g}, a={a:.6g}, c_qi={c_qi:.6g}, margem={margin:.6g}, aprovado={passed}")
    return URUCertificate(face, radius, c, a, c_qi, a_qi, float(margin), bool(passed), profile)


@dataclass
class _DefectVisitor(BallVisitor):
    face: FaceType
    halves: Dict[str, np.ndarray]
    worst: Dict[int, Tuple[float, str]] = field(default_factory=dict)
    worst_gap: Dict[int, float] = field(default_factory=dict)

    def visit(self, word: str, image: ExteriorPowers) -> None:
        split = len(word) // 2
        whole = image.cartan().components
        first, second = self.halves[word[:split]], self.halves[word[split:]]
        defect = whole - first - second
        value = (float(np.max(np.abs(defect))), word)
        pivots = np.asarray(self.face.pivots)
        gap_defect = float(np.max(np.abs(defect[pivots - 1] - defect[pivots])))
        length = len(word)
        if length not in self.worst or (-value[0], value[1]) < (-self.worst[length][0], self.worst[length][1]):
            self.worst[length] = value
        self.worst_gap[length] = max(gap_defect, self.worst_gap.get(length, 0.0))

    def merge(self, other: "_DefectVisitor") -> "_DefectVisitor":
        merged = _DefectVisitor(self.face, self.halves, dict(self.worst), dict(self.worst_gap))
        for length, value in other.worst.items():
            current = merged.worst.get(length)
            if current is None or (-value[0], value[1]) < (-current[0], current[1]):
                merged.worst[length] = value
        for length, value in other.worst_gap.items():
            merged.worst_gap[length] = max(value, merged.worst_gap.get(length, 0.0))
        return merged


def additivity_defect(
    rep: Representation,
    face: FaceType,
    radius: int,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
) -> pd.DataFrame:
    """
    Defeito máximo de aditividade por comprimento, com w dividida no meio.

    Returns:
        pd.DataFrame: colunas length, max_defect, argmax_word e max_gap_defect
        (o mesmo defeito medido nos gaps de raízes da face).
    """
    if face.dim != rep.dim:
        raise DimMismatch(f"Face de dimensão {face.dim} para representação em dimensão {rep.dim}.")
    half_radius = radius - radius // 2
    halves = {word: rep.cartan(word).components for word in ball_words(rep.alphabet, half_radius)}
    visitor = enumerate_ball(rep, radius, lambda: _DefectVisitor(face, halves), n_jobs=n_jobs, budget=budget)
    records = [
        {
            "length": length,
            "max_defect": visitor.worst[length][0],
            "argmax_word": visitor.worst[length][1],
            "max_gap_defect": visitor.worst_gap[length],
        }
        for length in range(1, radius + 1)
    ]
    return pd.DataFrame.from_records(records)


def perturb_representation(rep: Representation, epsilon: float, rng: np.random.Generator) -> Representation:
    """Multiplica cada gerador por (I + epsilon N), N gaussiana de norma 1, e renormaliza para det 1."""
    generators = {}
    for letter in rep.letters:
        noise = rng.standard_normal((rep.dim, rep.dim))
        noise /= np.linalg.norm(noise)
        perturbed = rep.generator_matrix(letter) @ (np.eye(rep.dim) + epsilon * noise)
        generators[letter] = make_unimodular(perturbed, Tolerances(det_tol=1e-6))
    return Representation(generators, tolerances=Tolerances(det_tol=1e-6))


def stability_check(
    rep: Representation,
    face: FaceType,
    radius: int,
    min_slope: float,
    epsilon: float,
    trials: int = 10,
    seed: int = DEFAULT_SEED,
    n_jobs: int = DEFAULT_THREADS,
) -> pd.DataFrame:
    """Repete `certify_uru` em `trials` perturbações de tamanho `epsilon`; uma linha por tentativa."""
    if epsilon <= 0:
        raise AnosovError(f"epsilon deve ser positivo, recebido {epsilon}.")
    rng = np.random.default_rng(seed)
    records = []
    for trial in range(trials):
        certificate = certify_uru(perturb_representation(rep, epsilon, rng), face, radius, min_slope, n_jobs=n_jobs)
        records.append({"trial": trial, "c": certificate.c, "margin": certificate.margin, "pass": certificate.passed})
    table = pd.DataFrame.from_records(records)
    logging.info(f"Estabilidade: {int(table['pass'].sum())}/{trials} perturbações aprovadas (epsilon={epsilon}).")
    return table
