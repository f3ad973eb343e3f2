# -*- coding: utf-8 -*-
"""
Módulo de Representações de Grupos Livres em SL(d, R).

Este módulo implementa o tipo `Representation` e toda a maquinaria de palavras
do grupo livre F_r:

-   **Palavras:** geradores são letras maiúsculas ('A', 'B', ...); o inverso
    de uma letra é a minúscula correspondente. Palavras reduzidas e
    ciclicamente reduzidas, inversão e contagem 2r (2r-1)^(l-1).
-   **Avaliação:** a imagem de uma palavra é uma torre `ExteriorPowers` em
    escala logarítmica, calculada letra a letra e guardada num cache LRU
    (excluído da serialização, de modo que cada processo tem o seu).
-   **Enumeração de bolas:** busca em profundidade sobre as palavras
    reduzidas de comprimento <= L, fatiada pela primeira letra e distribuída
    com `joblib.Parallel`. Cada fatia alimenta um visitante; os visitantes são
    combinados com reduções exatas (min/max com desempate pela palavra), então
    o resultado não depende do número de workers.
-   **Construções:** representação inversa, quadrado simétrico SL(2) -> SL(3)
    e a evidência de fidelidade (nenhuma palavra curta vira +-I).
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from config import BALL_EVALUATION_BUDGET, EVALUATION_CACHE_SIZE, DEFAULT_THREADS
from src.errors import AnosovError, BallTooLarge, DimMismatch, NotReduced, UnknownGenerator
from src.linear_algebra import (
    DEFAULT_TOLERANCES,
    ExteriorPowers,
    LogScaledMatrix,
    MatrixLike,
    Tolerances,
    as_exterior_powers,
    as_square_matrix,
    check_unimodular,
)


def inverse_letter(letter: str) -> str:
    return letter.swapcase()


def inverse_word(word: str) -> str:
    return "".join(inverse_letter(c) for c in reversed(word))


def is_reduced(word: str) -> bool:
    return all(b != inverse_letter(a) for a, b in zip(word, word[1:]))


def is_cyclically_reduced(word: str) -> bool:
    return is_reduced(word) and (len(word) <= 1 or word[0] != inverse_letter(word[-1]))


def count_reduced_words(rank: int, length: int) -> int:
    """Número de palavras reduzidas de comprimento exato `length` em F_rank."""
    if length == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (length - 1)


def count_ball(rank: int, radius: int) -> int:
    """Número de palavras não vazias de comprimento <= radius."""
    return sum(count_reduced_words(rank, length) for length in range(1, radius + 1))


def reduced_words(alphabet: Sequence[str], length: int) -> Iterator[str]:
    """Palavras reduzidas de comprimento exato `length`, na ordem do alfabeto."""
    if length == 0:
        yield ""
        return

    def extend(prefix: str) -> Iterator[str]:
        if len(prefix) == length:
            yield prefix
            return
        for c in alphabet:
            if prefix and c == inverse_letter(prefix[-1]):
                continue
            yield from extend(prefix + c)

    yield from extend("")


def cyclically_reduced_words(alphabet: Sequence[str], length: int) -> Iterator[str]:
    return (w for w in reduced_words(alphabet, length) if is_cyclically_reduced(w))


def ball_words(alphabet: Sequence[str], radius: int) -> Iterator[str]:
    """Todas as palavras reduzidas de comprimento <= radius, ordenadas por (comprimento, alfabeto)."""
    for length in range(radius + 1):
        yield from reduced_words(alphabet, length)


class Representation:
    """
    Representação rho: F_r -> SL(d, R) dada pelas imagens dos geradores.

    Args:
        generators: letra maiúscula -> matriz d x d unimodular (ou torre
            `ExteriorPowers`/`LogScaledMatrix` para potências grandes).
        inverses: imagens dos inversos, obrigatórias para geradores que não
            são matrizes densas; por padrão calculadas com `numpy.linalg.inv`.
        tolerances: tolerâncias usadas na validação.
        cache_size: tamanho do cache LRU de avaliação.
    """

    def __init__(
        self,
        generators: Mapping[str, MatrixLike],
        inverses: Optional[Mapping[str, MatrixLike]] = None,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
        cache_size: int = EVALUATION_CACHE_SIZE,
    ):
        if not generators:
            raise AnosovError("Uma representação precisa de pelo menos um gerador.")
        inverses = dict(inverses or {})
        self.tolerances = tolerances
        self.cache_size = cache_size
        self._images: Dict[str, ExteriorPowers] = {}
        dims = set()
        for letter in sorted(generators):
            if len(letter) != 1 or not letter.isascii() or not letter.isupper():
                raise AnosovError(f"Gerador '{letter}' deve ser uma única letra maiúscula.")
            image = generators[letter]
            if isinstance(image, (ExteriorPowers, LogScaledMatrix)):
                powers = as_exterior_powers(image)
                if letter not in inverses:
                    raise AnosovError(f"Gerador '{letter}' em escala logarítmica exige a imagem do inverso.")
                if abs(powers.layers[-1].log_norm()) > tolerances.det_tol:
                    raise AnosovError(f"Gerador '{letter}' não é unimodular.")
            else:
                matrix = as_square_matrix(image)
                check_unimodular(matrix, tolerances)
                powers = ExteriorPowers.from_matrix(matrix)
                inverses.setdefault(letter, np.linalg.inv(matrix))
            self._images[letter] = powers
            self._images[inverse_letter(letter)] = as_exterior_powers(inverses[letter])
            dims.add(powers.dim)
        if len(dims) != 1:
            raise DimMismatch(f"Geradores com dimensões diferentes: {sorted(dims)}.")
        self.dim = dims.pop()
        self.letters = tuple(sorted(generators))
        self._cache: "OrderedDict[str, ExteriorPowers]" = OrderedDict()

    @property
    def rank(self) -> int:
        return len(self.letters)

    @property
    def alphabet(self) -> List[str]:
        """Letras e inversos na ordem A, a, B, b, ..."""
        return [c for letter in self.letters for c in (letter, inverse_letter(letter))]

    def generator_matrix(self, letter: str) -> np.ndarray:
        """Matriz densa da imagem de uma letra (gerador ou inverso)."""
        return self.letter_image(letter).base.dense()

    def letter_image(self, letter: str) -> ExteriorPowers:
        try:
            return self._images[letter]
        except KeyError:
            raise UnknownGenerator(f"Letra '{letter}' não é gerador nem inverso de gerador.") from None

    def validate_word(self, word: str) -> None:
        for c in word:
            self.letter_image(c)
        if not is_reduced(word):
            raise NotReduced(f"A palavra '{word}' não é reduzida.")

    def evaluate(self, word: str) -> ExteriorPowers:
        """
        Imagem rho(word) em escala logarítmica.

        Raises:
            UnknownGenerator: letra desconhecida.
            NotReduced: a palavra contém um par cancelável.
        """
        self.validate_word(word)
        if word == "":
            return ExteriorPowers.identity(self.dim)
        cut = len(word)
        while cut > 0 and word[:cut] not in self._cache:
            cut -= 1
        image = self._cache[word[:cut]] if cut else ExteriorPowers.identity(self.dim)
        if cut:
            self._cache.move_to_end(word[:cut])
        for k in range(cut, len(word)):
            image = image @ self._images[word[k]]
            self._remember(word[: k + 1], image)
        return image

    def _remember(self, word: str, image: ExteriorPowers) -> None:
        self._cache[word] = image
        self._cache.move_to_end(word)
        while len(self._cache) > self.cache_size:
            self._cache.popitem(last=False)

    def matrix(self, word: str) -> np.ndarray:
        """Matriz densa de rho(word); pode estourar para palavras muito longas."""
        return self.evaluate(word).base.dense()

    def cartan(self, word: str):
        return self.evaluate(word).cartan()

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cache"] = OrderedDict()
        return state

    def __repr__(self) -> str:
        return f"Representation(d={self.dim}, geradores={''.join(self.letters)})"


def inverse_representation(rep: Representation) -> Representation:
    """A representação A -> rho(A)^{-1} (mesmo grupo, geradores invertidos)."""
    generators = {letter: rep.letter_image(inverse_letter(letter)) for letter in rep.letters}
    inverses = {letter: rep.letter_image(letter) for letter in rep.letters}
    return Representation(generators, inverses, rep.tolerances, rep.cache_size)


def sym2_matrix(g: np.ndarray) -> np.ndarray:
    """Quadrado simétrico de uma matriz 2 x 2 na base ortonormal (x^2, sqrt(2) xy, y^2)."""
    (a, b), (c, d) = np.asarray(g, dtype=float)
    r2 = np.sqrt(2.0)
    return np.array(
        [
            [a * a, r2 * a * b, b * b],
            [r2 * a * c, a * d + b * c, r2 * b * d],
            [c * c, r2 * c * d, d * d],
        ]
    )


def symmetric_square(rep: Representation) -> Representation:
    """Compõe uma representação em SL(2, R) com a representação irredutível SL(2) -> SL(3)."""
    if rep.dim != 2:
        raise DimMismatch(f"O quadrado simétrico exige d = 2, recebido d = {rep.dim}.")
    generators = {letter: sym2_matrix(rep.generator_matrix(letter)) for letter in rep.letters}
    inverses = {letter: sym2_matrix(rep.generator_matrix(inverse_letter(letter))) for letter in rep.letters}
    return Representation(generators, inverses, rep.tolerances, rep.cache_size)


class BallVisitor:
    """Acumulador alimentado pela enumeração de uma fatia da bola de palavras."""

    def visit(self, word: str, image: ExteriorPowers) -> None:  # pragma: no cover - interface
        raise NotImplementedError

    def merge(self, other: "BallVisitor") -> "BallVisitor":  # pragma: no cover - interface
        raise NotImplementedError


def _walk_shard(rep: Representation, first: str, radius: int, visitor: BallVisitor) -> BallVisitor:
    """Percorre em profundidade as palavras reduzidas que começam com `first`."""
    stack = [(first, rep.letter_image(first))]
    alphabet = rep.alphabet
    while stack:
        word, image = stack.pop()
        visitor.visit(word, image)
        if len(word) == radius:
            continue
        forbidden = inverse_letter(word[-1])
        for c in reversed(alphabet):
            if c != forbidden:
                stack.append((word + c, image @ rep.letter_image(c)))
    return visitor


def enumerate_ball(
    rep: Representation,
    radius: int,
    visitor_factory,
    n_jobs: int = DEFAULT_THREADS,
    budget: int = BALL_EVALUATION_BUDGET,
) -> BallVisitor:
    """
    Visita todas as palavras reduzidas não vazias de comprimento <= radius.

    Args:
        rep: a representação.
        radius: raio L da bola (>= 1).
        visitor_factory: callable sem argumentos que cria um visitante por fatia.
        n_jobs: número de workers do joblib.
        budget: máximo de avaliações permitidas.

    Returns:
        O visitante resultante da combinação das fatias, na ordem do alfabeto.

    Raises:
        BallTooLarge: se o número de palavras exceder `budget`.
    """
    if radius < 1:
        raise AnosovError(f"Raio da bola deve ser >= 1, recebido {radius}.")
    total = count_ball(rep.rank, radius)
    if total > budget:
        raise BallTooLarge(f"A bola de raio {radius} tem {total} palavras, acima do orçamento {budget}.")
    logging.info(f"Enumerando {total} palavras reduzidas até o comprimento {radius} com {n_jobs} worker(s).")
    shards = Parallel(n_jobs=n_jobs)(
        delayed(_walk_shard)(rep, first, radius, visitor_factory()) for first in rep.alphabet
    )
    result = shards[0]
    for shard in shards[1:]:
        result = result.merge(shard)
    return result


@dataclass
class _TrivialWordVisitor(BallVisitor):
    tolerance: float
    words_checked: int = 0
    trivial: List[str] = field(default_factory=list)

    def visit(self, word: str, image: ExteriorPowers) -> None:
        self.words_checked += 1
        if image.cartan().norm() > self.tolerance:
            return
        dense = image.base.dense()
        d = dense.shape[0]
        if min(np.linalg.norm(dense - np.eye(d)), np.linalg.norm(dense + np.eye(d))) <= self.tolerance:
            self.trivial.append(word)

    def merge(self, other: "_TrivialWordVisitor") -> "_TrivialWordVisitor":
        return _TrivialWordVisitor(
            self.tolerance, self.words_checked + other.words_checked, sorted(self.trivial + other.trivial)
        )


@dataclass(frozen=True)
class FaithfulnessReport:
    radius: int
    words_checked: int
    trivial_words: List[str]

    @property
    def passed(self) -> bool:
        return not self.trivial_words


def faithfulness_evidence(
    rep: Representation, radius: int, tolerance: float = 1e-8, n_jobs: int = DEFAULT_THREADS
) -> FaithfulnessReport:
    """Procura palavras reduzidas não triviais de comprimento <= radius com imagem +-I."""
    visitor = enumerate_ball(rep, radius, lambda: _TrivialWordVisitor(tolerance), n_jobs=n_jobs)
    if visitor.trivial:
        logging.warning(f"Palavras com imagem trivial: {visitor.trivial[:5]}")
    return FaithfulnessReport(radius, visitor.words_checked, visitor.trivial)
