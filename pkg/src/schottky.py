# -*- coding: utf-8 -*-
"""
Módulo de Construção de Grupos de Schottky.

A partir de um par de elementos axiais (alpha, beta) de SL(d, R), constrói as
representações rho_{m,n}: A -> alpha^m, B -> beta^n do grupo livre de posto 2
e procura a menor potência em que todo o pipeline de certificação é aprovado.

Funcionalidades Principais:
-   **Elementos axiais:** `make_axial` conjuga uma diagonal positiva de
    determinante 1; `AxialPair.from_eigenvalues` monta o par padrão com beta
    igual a alpha conjugado por uma rotação genérica.
-   **Flags fixos:** o flag atrator de um elemento proximal é o limite dos
    subespaços singulares dominantes de g^(2^j), calculados em potências
    exteriores (não depende de autovetores de matrizes mal condicionadas).
-   **Genericidade:** os quatro flags fixos (atratores de alpha, alpha^-1,
    beta, beta^-1) devem ser dois a dois antipodais.
-   **Ping-pong:** bolas métricas em torno dos flags atratores de cada letra;
    verificação amostral de que cada letra leva o complemento da bola
    repulsora para dentro da bola atratora.
-   **Busca da potência mínima:** galope e bisseção no ping-pong (monótono em
    m), seguidos de subida até `certify_uru` também aprovar.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd
import scipy.linalg

from config import (
    BALL_EVALUATION_BUDGET,
    BOUNDARY_CONVERGENCE_TOL,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    FIXED_FLAG_MAX_SQUARINGS,
    PINGPONG_RADIUS_MULTIPLIER,
    PINGPONG_SAMPLES,
    PROXIMAL_GAP_RATE,
)
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
from src.flag_geometry import Flag, act_batch, antipodality_margin, flag_distance, frame_distances, random_flag
from src.linear_algebra import (
    DEFAULT_TOLERANCES,
    ExteriorPowers,
    MatrixLike,
    Tolerances,
    as_exterior_powers,
    as_square_matrix,
    root_gaps,
)
from src.regularity import URUCertificate, certify_uru
from src.representation import Representation, inverse_letter
from src.weyl_group import FaceType


def rotation(theta: float) -> np.ndarray:
    return np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])


def generic_rotation(dim: int, theta: float) -> np.ndarray:
    """exp(theta S), S a matriz antissimétrica tridiagonal com S[i+1, i] = 1; em d = 2 é `rotation`."""
    generator = np.zeros((dim, dim))
    idx = np.arange(dim - 1)
    generator[idx + 1, idx] = 1.0
    generator[idx, idx + 1] = -1.0
    return scipy.linalg.expm(theta * generator)


def make_axial(
    eigenvalues: Sequence[float], conjugator: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """
    Elemento axial C diag(lambda) C^-1.

    Args:
        eigenvalues: autovalores positivos em ordem não crescente, produto 1.
        conjugator: matriz C inversível.

    Raises:
        BadEigenvalues: autovalores não positivos, fora de ordem ou com produto != 1.
        SingularInput: C singular.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.ndim != 1 or lam.size < 2:
        raise BadEigenvalues("São necessários pelo menos dois autovalores.")
    if np.any(lam <= 0) or not np.all(np.isfinite(lam)):
        raise BadEigenvalues(f"Autovalores devem ser positivos: {lam.tolist()}.")
    if np.any(np.diff(lam) > 0):
        raise BadEigenvalues(f"Autovalores devem estar em ordem não crescente: {lam.tolist()}.")
    if abs(np.sum(np.log(lam))) > tolerances.det_tol:
        raise BadEigenvalues(f"O produto dos autovalores é {np.prod(lam):.12g}, não 1.")
    c = as_square_matrix(conjugator)
    if c.shape[0] != lam.size:
        raise BadEigenvalues(f"{lam.size} autovalores para conjugador {c.shape[0]} x {c.shape[0]}.")
    if np.linalg.svd(c, compute_uv=False)[-1] <= tolerances.svd_tol:
        raise SingularInput("O conjugador é singular.")
    return c @ np.diag(lam) @ np.linalg.inv(c)


def attracting_fixed_flag(g: MatrixLike, face: FaceType) -> Flag:
    """
    Flag fixo atrator de um elemento proximal, por quadrados sucessivos.

    Para g proximal, os subespaços singulares dominantes de g^n convergem ao
    flag gerado pelos autovetores dominantes; a iteração para quando dois
    quadrados consecutivos ficam a menos de `BOUNDARY_CONVERGENCE_TOL`.

    Raises:
        NotProximal: sem convergência, ou gap de raiz crescendo mais devagar
            que `PROXIMAL_GAP_RATE` por unidade de potência (caso parabólico).
    """
    powers = as_exterior_powers(g)
    previous: Optional[Flag] = None
    exponent = 1
    for _ in range(FIXED_FLAG_MAX_SQUARINGS):
        gaps = root_gaps(powers.cartan(), face)
        if np.min(gaps) > 0:
            current = Flag.from_subspaces(face, [powers.leading_subspace(k) for k in face.pivots])
            if previous is not None and flag_distance(current, previous) < BOUNDARY_CONVERGENCE_TOL:
                rate = float(np.min(gaps)) / exponent
                if rate < PROXIMAL_GAP_RATE:
                    raise NotProximal(f"Gap por unidade de potência {rate:.3g} abaixo de {PROXIMAL_GAP_RATE}.")
                return current
            previous = current
        powers = powers @ powers
        exponent *= 2
    raise NotProximal(f"O flag dominante não convergiu após {FIXED_FLAG_MAX_SQUARINGS} quadrados.")


@dataclass(frozen=True, eq=False)
class AxialPair:
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha, beta = as_square_matrix(self.alpha), as_square_matrix(self.beta)
        if alpha.shape != beta.shape:
            raise AnosovError(f"alpha {alpha.shape} e beta {beta.shape} com dimensões diferentes.")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Sequence[float], conj_angle: float) -> "AxialPair":
        """alpha = diag(eigenvalues), beta = R alpha R^-1 com R = generic_rotation(d, conj_angle)."""
        d = len(eigenvalues)
        alpha = make_axial(eigenvalues, np.eye(d))
        beta = make_axial(eigenvalues, generic_rotation(d, conj_angle))
        return cls(alpha, beta)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def images(self) -> Dict[str, np.ndarray]:
        return {
            "A": self.alpha,
            "a": np.linalg.inv(self.alpha),
            "B": self.beta,
            "b": np.linalg.inv(self.beta),
        }

    def fixed_flags(self, face: FaceType) -> Dict[str, Flag]:
        """Flag atrator de cada letra; o de 'a' é o flag repulsor de alpha."""
        return {letter: attracting_fixed_flag(g, face) for letter, g in self.images().items()}


def _require_iota_invariant(face: FaceType) -> None:
    if not face.is_iota_invariant():
        raise NotIotaInvariant(f"Ping-pong e genericidade exigem face iota-invariante; recebido {face}.")


@dataclass(frozen=True, eq=False)
class Genericity:
    generic: bool
    margin: float
    margins: pd.DataFrame

    def __bool__(self) -> bool:
        return self.generic


def _pairwise_margins(flags: Dict[str, Flag]) -> pd.DataFrame:
    letters = list(flags)
    records = [
        {"first": a, "second": b, "margin": antipodality_margin(flags[a], flags[b])}
        for i, a in enumerate(letters)
        for b in letters[i + 1 :]
    ]
    return pd.DataFrame.from_records(records)


def genericity_check(pair: AxialPair, face: FaceType, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Genericity:
    """
    Verifica se os quatro flags fixos de alpha e beta são dois a dois antipodais.

    Raises:
        NotProximal: alpha ou beta não proximal para a face.
        NotIotaInvariant: face não iota-invariante.
    """
    _require_iota_invariant(face)
    margins = _pairwise_margins(pair.fixed_flags(face))
    margin = float(margins["margin"].min())
    generic = margin > tolerances.rank_tol
    logging.info(f"Genericidade na face {face}: margem mínima {margin:.6g}, genérico={generic}.")
    return Genericity(generic, margin, margins)


def schottky_rep(pair: AxialPair, m: int, n: int) -> Representation:
    """rho_{m,n}: A -> alpha^m, B -> beta^n, com potências em escala logarítmica."""
    if m < 1 or n < 1:
        raise AnosovError(f"Potências devem ser >= 1, recebido m={m}, n={n}.")
    images = {letter: ExteriorPowers.from_matrix(g) for letter, g in pair.images().items()}
    return Representation(
        {"A": images["A"].power(m), "B": images["B"].power(n)},
        inverses={"A": images["a"].power(m), "B": images["b"].power(n)},
    )


@dataclass(frozen=True, eq=False)
class PingPongCertificate:
    face: FaceType
    radius: float
    centers: Dict[str, Flag]
    margins: Dict[str, float]
    samples: int
    passed: bool

    def neighborhoods(self) -> pd.DataFrame:
        """Uma linha por letra: raio da bola, margem de inclusão e distância à bola vizinha mais próxima."""
        records = []
        for letter, center in self.centers.items():
            others = [flag_distance(center, other) for key, other in self.centers.items() if key != letter]
            records.append(
                {
                    "letter": letter,
                    "radius": self.radius,
                    "margin": self.margins[letter],
                    "clearance": min(others) - 2 * self.radius,
                }
            )
        return pd.DataFrame.from_records(records)

    def as_dict(self) -> Dict[str, object]:
        result: Dict[str, object] = {"pivots": str(self.face), "radius": self.radius, "samples": self.samples}
        result.update({f"margin_{letter}": value for letter, value in self.margins.items()})
        result["pass"] = self.passed
        result["semantics"] = f"sampled evidence ({self.samples} flags)"
        return result


def _sample_frames(face: FaceType, samples: int, seed: int) -> np.ndarray:
    """Grade de retas em d = 2; flags aleatórios (semente fixa) nas demais dimensões."""
    if face.dim == 2:
        angles = np.arange(samples) * np.pi / samples
        c, s = np.cos(angles), np.sin(angles)
        return np.stack([np.stack([c, -s], axis=-1), np.stack([s, c], axis=-1)], axis=1)
    rng = np.random.default_rng(seed)
    return np.array([random_flag(face, rng).frame for _ in range(samples)])


def pingpong_certificate(
    rep: Representation,
    face: FaceType,
    radius_multiplier: float = PINGPONG_RADIUS_MULTIPLIER,
    samples: int = PINGPONG_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> PingPongCertificate:
    """
    Certificado amostral de ping-pong no espaço de flags de tipo `face`.

    O raio comum das bolas é `radius_multiplier` vezes metade da menor
    distância entre os flags atratores das letras. Para cada letra c, a
    margem é r - max dist(c x, P_c) sobre as amostras x fora de U_{c^-1}.

    Raises:
        NeighborhoodsOverlap: bolas que se intersectam (multiplicador >= 1
            ou flags atratores coincidentes).
        NotProximal: alguma letra sem flag atrator.
    """
    _require_iota_invariant(face)
    if face.dim != rep.dim:
        raise AnosovError(f"Face de dimensão {face.dim} para representação em dimensão {rep.dim}.")
    if radius_multiplier <= 0:
        raise AnosovError(f"O multiplicador do raio deve ser positivo, recebido {radius_multiplier}.")
    centers = {c: attracting_fixed_flag(rep.letter_image(c), face) for c in rep.alphabet}
    letters = list(centers)
    min_distance = min(
        flag_distance(centers[a], centers[b]) for i, a in enumerate(letters) for b in letters[i + 1 :]
    )
    radius = radius_multiplier * min_distance / 2
    if min_distance <= DEFAULT_TOLERANCES.angle_tol or 2 * radius >= min_distance:
        raise NeighborhoodsOverlap(f"Bolas de raio {radius:.4g} com centros a distância {min_distance:.4g}.")

    frames = _sample_frames(face, samples, seed)
    distances = {c: frame_distances(frames, centers[c].frame, face.pivots) for c in letters}
    margins = {}
    for c in letters:
        outside = frames[distances[inverse_letter(c)] >= radius]
        if outside.shape[0] == 0:
            margins[c] = radius
            continue
        images = act_batch(rep.letter_image(c).base.matrix, outside)
        margins[c] = float(radius - frame_distances(images, centers[c].frame, face.pivots).max())
    passed = all(value > 0 for value in margins.values())
    logging.info(
        f"Ping-pong: raio {radius:.4g}, margem mínima {min(margins.values()):.4g}, aprovado={passed}."
    )
    return PingPongCertificate(face, float(radius), centers, margins, samples, passed)


@dataclass(frozen=True, eq=False)
class PowerSearchResult:
    threshold: int
    pingpong: PingPongCertificate
    certificate: URUCertificate
    history: pd.DataFrame


def find_min_powers(
    pair: AxialPair,
    face: FaceType,
    radius: int,
    min_slope: float,
    cap: int,
    radius_multiplier: float = PINGPONG_RADIUS_MULTIPLIER,
    samples: int = PINGPONG_SAMPLES,
    seed: int = DEFAULT_SEED,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
) -> PowerSearchResult:
    """
    Menor m = n <= cap em que o ping-pong e `certify_uru` são aprovados.

    O ping-pong é monótono em m: a busca galopa (1, 2, 4, ...) e bissecta até
    achar a menor potência aprovada, sem testar de novo potências abaixo de
    uma já aprovada; depois sobe até a certificação URU também passar.

    Returns:
        PowerSearchResult: limiar, certificados e o histórico
        (m, pingpong_margin, pingpong_pass, uru_c, uru_pass).

    Raises:
        NotGeneric: o par não é genérico para a face (antes da busca).
        CapExceeded: nenhuma potência <= cap aprovada.
    """
    if cap < 1:
        raise AnosovError(f"cap deve ser >= 1, recebido {cap}.")
    genericity = genericity_check(pair, face)
    if not genericity:
        raise NotGeneric(f"O par não é genérico na face {face} (margem {genericity.margin:.3g}).")

    history: Dict[int, dict] = {}
    pingpongs: Dict[int, PingPongCertificate] = {}

    def pingpong_at(m: int) -> bool:
        if m not in pingpongs:
            cert = pingpong_certificate(schottky_rep(pair, m, m), face, radius_multiplier, samples, seed)
            pingpongs[m] = cert
            history[m] = {
                "m": m,
                "pingpong_margin": min(cert.margins.values()),
                "pingpong_pass": cert.passed,
                "uru_c": np.nan,
                "uru_pass": np.nan,
            }
        return pingpongs[m].passed

    failed, m = 0, 1
    while m < cap and not pingpong_at(m):
        failed, m = m, 2 * m
    m = min(m, cap)
    if not pingpong_at(m):
        raise CapExceeded(f"Ping-pong não aprovado até a potência {cap}.")
    while m - failed > 1:
        middle = (failed + m) // 2
        if pingpong_at(middle):
            m = middle
        else:
            failed = middle
    logging.info(f"Limiar do ping-pong: m = {m}.")

    for power in range(m, cap + 1):
        pingpong_at(power)
        certificate = certify_uru(schottky_rep(pair, power, power), face, radius, min_slope, n_jobs, budget)
        history[power].update({"uru_c": certificate.c, "uru_pass": certificate.passed})
        if pingpongs[power].passed and certificate.passed:
            logging.info(f"Potência mínima aprovada: m = n = {power}.")
            table = pd.DataFrame.from_records([history[k] for k in sorted(history)])
            return PowerSearchResult(power, pingpongs[power], certificate, table)
    raise CapExceeded(f"certify_uru não aprovado para m entre {m} e {cap}.")
