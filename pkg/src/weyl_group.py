# -*- coding: utf-8 -*-
"""
Módulo de Combinatória do Grupo de Weyl (tipo A).

O grupo de Weyl de SL(d, R) é realizado concretamente como o grupo simétrico
S_d, com permutações em notação de uma linha (imagens de 1..d).

Funcionalidades Principais:
-   **Elementos de Weyl:** composição, inverso, comprimento (número de
    inversões), palavras reduzidas e matrizes de permutação.
-   **Ordem de Bruhat forte:** critério das matrizes de posto, com o oráculo
    da propriedade de subpalavra disponível para verificação.
-   **Tipos de face:** conjuntos de pivôs D em {1, ..., d-1}, o subgrupo
    estabilizador W_tau (gerado pelas reflexões simples fora de D) e a
    invariância pela involução de oposição.
-   **Espessamentos:** subconjuntos de W fechados para baixo na ordem de
    Bruhat, guardados como bitsets sobre a enumeração lexicográfica de S_d.
    Classificação (gordo, magro, balanceado, invariante pelo estabilizador) e
    enumeração dos espessamentos balanceados por busca com propagação.

Convenção de classes laterais: classes à esquerda W_tau * w, com o
representante de comprimento mínimo.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import AnosovError, BadFace, DimMismatch, NotIotaInvariant


@dataclass(frozen=True, order=True)
class WeylElement:
    """Permutação de {1, ..., d} em notação de uma linha."""

    perm: Tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)) or len(perm) < 2:
            raise AnosovError(f"{self.perm} não é uma permutação de 1..d com d >= 2.")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, dim: int) -> "WeylElement":
        return cls(tuple(range(1, dim + 1)))

    @classmethod
    def parse(cls, text: str) -> "WeylElement":
        """Lê '213' (d <= 9) ou '2,1,3'."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(x) for x in text.split(",")))
        return cls(tuple(int(c) for c in text))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composição (self * other)(i) = self(other(i))."""
        _check_same_dim(self, other)
        return WeylElement(tuple(self.perm[j - 1] for j in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.dim
        for position, value in enumerate(self.perm, start=1):
            inv[value - 1] = position
        return WeylElement(tuple(inv))

    def length(self) -> int:
        """Número de inversões, igual ao comprimento de Coxeter."""
        return sum(1 for a, b in combinations(self.perm, 2) if a > b)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.dim + 1))

    def matrix(self) -> np.ndarray:
        """Matriz de permutação P com P e_a = e_{w(a)}."""
        p = np.zeros((self.dim, self.dim))
        for a, value in enumerate(self.perm):
            p[value - 1, a] = 1.0
        return p

    def right_descents(self) -> List[int]:
        return [i for i in range(1, self.dim) if self.perm[i - 1] > self.perm[i]]

    def lower_covers(self) -> List["WeylElement"]:
        """Elementos cobertos por w na ordem de Bruhat (comprimento exatamente um a menos)."""
        covers = []
        perm = self.perm
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                if perm[a] < perm[b]:
                    continue
                if any(perm[b] < perm[c] < perm[a] for c in range(a + 1, b)):
                    continue
                swapped = list(perm)
                swapped[a], swapped[b] = swapped[b], swapped[a]
                covers.append(WeylElement(tuple(swapped)))
        return covers

    def __str__(self) -> str:
        if self.dim <= 9:
            return "".join(str(x) for x in self.perm)
        return ",".join(str(x) for x in self.perm)


def _check_same_dim(u: WeylElement, v: WeylElement) -> None:
    if u.dim != v.dim:
        raise DimMismatch(f"Elementos de S_{u.dim} e S_{v.dim} não podem ser combinados.")


def simple_reflection(dim: int, i: int) -> WeylElement:
    """A transposição simples s_i = (i i+1), 1 <= i <= d-1."""
    if not 1 <= i <= dim - 1:
        raise BadFace(f"Reflexão simples s_{i} não existe em S_{dim}.")
    perm = list(range(1, dim + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return WeylElement(tuple(perm))


def word_product(dim: int, word: Sequence[int]) -> WeylElement:
    """Produto s_{i1} * s_{i2} * ... de uma palavra nas reflexões simples."""
    result = WeylElement.identity(dim)
    for i in word:
        result = result * simple_reflection(dim, i)
    return result


def longest_element(dim: int) -> WeylElement:
    """O elemento mais longo w0: i -> d + 1 - i."""
    if dim < 2:
        raise AnosovError("O grupo de Weyl exige d >= 2.")
    return WeylElement(tuple(range(dim, 0, -1)))


def opposition(w: WeylElement) -> WeylElement:
    """Involução de oposição: conjugação por w0."""
    w0 = longest_element(w.dim)
    return w0 * w * w0


@lru_cache(maxsize=None)
def all_elements(dim: int) -> Tuple[WeylElement, ...]:
    """Todos os elementos de S_d em ordem lexicográfica da notação de uma linha."""
    return tuple(WeylElement(p) for p in permutations(range(1, dim + 1)))


@lru_cache(maxsize=None)
def _element_index(dim: int) -> Dict[WeylElement, int]:
    return {w: k for k, w in enumerate(all_elements(dim))}


def element_index(w: WeylElement) -> int:
    return _element_index(w.dim)[w]


def rank_matrix(w: WeylElement) -> np.ndarray:
    """r[i-1, j-1] = #{a <= i : w(a) >= j}."""
    d = w.dim
    indicator = np.zeros((d, d), dtype=int)
    for a, value in enumerate(w.perm):
        indicator[a, :value] = 1
    return np.cumsum(indicator, axis=0)


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """u <= v na ordem de Bruhat forte (critério das matrizes de posto)."""
    _check_same_dim(u, v)
    return bool(np.all(rank_matrix(u) <= rank_matrix(v)))


def reduced_words(w: WeylElement) -> List[Tuple[int, ...]]:
    """Todas as palavras reduzidas de w nas reflexões simples."""

    @lru_cache(maxsize=None)
    def _words(perm: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
        element = WeylElement(perm)
        if element.is_identity():
            return ((),)
        words = []
        for i in element.right_descents():
            shorter = element * simple_reflection(element.dim, i)
            words.extend(prefix + (i,) for prefix in _words(shorter.perm))
        return tuple(words)

    return list(_words(w.perm))


def bruhat_leq_subword(u: WeylElement, v: WeylElement) -> bool:
    """Oráculo da subpalavra: u <= v se u é produto de uma subpalavra de uma palavra reduzida de v."""
    _check_same_dim(u, v)
    word = reduced_words(v)[0]
    for size in range(len(word) + 1):
        for chosen in combinations(range(len(word)), size):
            if word_product(v.dim, [word[k] for k in chosen]) == u:
                return True
    return False


@dataclass(frozen=True)
class FaceType:
    """Tipo de face tau_mod: dimensão d e pivôs estritamente crescentes em 1..d-1."""

    dim: int
    pivots: Tuple[int, ...]

    def __post_init__(self):
        pivots = tuple(int(p) for p in self.pivots)
        if self.dim < 2:
            raise BadFace(f"Dimensão {self.dim} inválida; é preciso d >= 2.")
        if not pivots:
            raise BadFace("O conjunto de pivôs não pode ser vazio.")
        if any(b <= a for a, b in zip(pivots, pivots[1:])):
            raise BadFace(f"Pivôs {pivots} não são estritamente crescentes.")
        if pivots[0] < 1 or pivots[-1] > self.dim - 1:
            raise BadFace(f"Pivôs {pivots} fora de 1..{self.dim - 1}.")
        object.__setattr__(self, "pivots", pivots)

    @classmethod
    def full(cls, dim: int) -> "FaceType":
        return cls(dim, tuple(range(1, dim)))

    @classmethod
    def parse(cls, dim: int, text: str) -> "FaceType":
        """Lê pivôs como '1,2' ou '1 2'."""
        tokens = text.replace(",", " ").split()
        try:
            return cls(dim, tuple(int(t) for t in tokens))
        except ValueError as e:
            if isinstance(e, AnosovError):
                raise
            raise BadFace(f"Pivôs inválidos: '{text}'.") from e

    @property
    def is_full(self) -> bool:
        return len(self.pivots) == self.dim - 1

    def is_iota_invariant(self) -> bool:
        return set(self.pivots) == {self.dim - p for p in self.pivots}

    def opposite(self) -> "FaceType":
        return FaceType(self.dim, tuple(sorted(self.dim - p for p in self.pivots)))

    def blocks(self) -> List[range]:
        """Blocos de valores {D_{j-1}+1, ..., D_j} delimitados pelos pivôs."""
        bounds = (0,) + self.pivots + (self.dim,)
        return [range(lo + 1, hi + 1) for lo, hi in zip(bounds, bounds[1:])]

    def stabilizer_generators(self) -> List[int]:
        return [i for i in range(1, self.dim) if i not in self.pivots]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.pivots)


def face_stabilizer(face: FaceType) -> List[WeylElement]:
    """Subgrupo parabólico W_tau gerado por s_i, i fora dos pivôs, em ordem lexicográfica."""
    generators = [simple_reflection(face.dim, i) for i in face.stabilizer_generators()]
    identity = WeylElement.identity(face.dim)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for s in generators:
            nxt = current * s
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def relative_position_coset(w: WeylElement, face: FaceType) -> WeylElement:
    """
    Representante de comprimento mínimo da classe lateral à esquerda W_tau * w.

    W_tau age permutando os valores dentro de cada bloco da face; o mínimo
    atribui a cada bloco seus valores em ordem crescente de posição.
    """
    if w.dim != face.dim:
        raise DimMismatch(f"Elemento de S_{w.dim} com face de dimensão {face.dim}.")
    canonical = [0] * w.dim
    for block in face.blocks():
        positions = [b for b in range(w.dim) if w.perm[b] in block]
        for position, value in zip(positions, block):
            canonical[position] = value
    return WeylElement(tuple(canonical))


@dataclass(frozen=True)
class _WeylTables:
    """Tabelas de índices para operações com bitsets em S_d."""

    elements: Tuple[WeylElement, ...]
    lengths: Tuple[int, ...]
    lower: Tuple[Tuple[int, ...], ...]
    upper: Tuple[Tuple[int, ...], ...]
    w0_left: Tuple[int, ...]
    left_simple: Dict[int, Tuple[int, ...]]


@lru_cache(maxsize=None)
def _tables(dim: int) -> _WeylTables:
    elements = all_elements(dim)
    index = _element_index(dim)
    lower = tuple(tuple(index[c] for c in w.lower_covers()) for w in elements)
    upper_lists: List[List[int]] = [[] for _ in elements]
    for k, covers in enumerate(lower):
        for c in covers:
            upper_lists[c].append(k)
    w0 = longest_element(dim)
    left_simple = {
        i: tuple(index[simple_reflection(dim, i) * w] for w in elements) for i in range(1, dim)
    }
    return _WeylTables(
        elements=elements,
        lengths=tuple(w.length() for w in elements),
        lower=lower,
        upper=tuple(tuple(u) for u in upper_lists),
        w0_left=tuple(index[w0 * w] for w in elements),
        left_simple=left_simple,
    )


@dataclass(frozen=True)
class Thickening:
    """Subconjunto de S_d guardado como bitset (bit k = k-ésimo elemento lexicográfico)."""

    dim: int
    mask: int

    @classmethod
    def from_elements(cls, dim: int, elements: Sequence[WeylElement]) -> "Thickening":
        index = _element_index(dim)
        mask = 0
        for w in elements:
            if w.dim != dim:
                raise DimMismatch(f"Elemento {w} não pertence a S_{dim}.")
            mask |= 1 << index[w]
        return cls(dim, mask)

    @classmethod
    def parse(cls, text: str) -> "Thickening":
        """Lê a forma de uma linha '123|213|132'."""
        elements = [WeylElement.parse(token) for token in text.strip().split("|") if token]
        if not elements:
            raise AnosovError("Espessamento vazio.")
        return cls.from_elements(elements[0].dim, elements)

    def indices(self) -> List[int]:
        return [k for k in range(len(all_elements(self.dim))) if self.mask >> k & 1]

    @property
    def members(self) -> Tuple[WeylElement, ...]:
        elements = all_elements(self.dim)
        return tuple(elements[k] for k in self.indices())

    def bits(self) -> Tuple[int, ...]:
        return tuple(self.mask >> k & 1 for k in range(len(all_elements(self.dim))))

    def __contains__(self, w: WeylElement) -> bool:
        return w.dim == self.dim and bool(self.mask >> element_index(w) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def left_translate_by_longest(self) -> "Thickening":
        """O conjunto w0 * Th."""
        table = _tables(self.dim).w0_left
        mask = 0
        for k in self.indices():
            mask |= 1 << table[k]
        return Thickening(self.dim, mask)

    def __str__(self) -> str:
        return "|".join(str(w) for w in self.members)


def is_thickening(t: Thickening) -> bool:
    """Fechamento para baixo na ordem de Bruhat (basta verificar as coberturas)."""
    lower = _tables(t.dim).lower
    return all(t.mask >> c & 1 for k in t.indices() for c in lower[k])


def is_stabilizer_invariant(t: Thickening, face: FaceType) -> bool:
    """Invariância à esquerda: s_i * Th = Th para i fora dos pivôs."""
    if face.dim != t.dim:
        raise DimMismatch(f"Face de dimensão {face.dim} com espessamento em S_{t.dim}.")
    tables = _tables(t.dim)
    members = t.indices()
    return all(
        t.mask >> tables.left_simple[i][k] & 1 for i in face.stabilizer_generators() for k in members
    )


@dataclass(frozen=True)
class ThickeningClass:
    downward_closed: bool
    fat: bool
    slim: bool
    balanced: bool
    stabilizer_invariant: Optional[bool] = None


def classify_thickening(t: Thickening, face: Optional[FaceType] = None) -> ThickeningClass:
    """
    Classifica um subconjunto de W de forma exata.

    gordo: W = Th u w0 Th; magro: Th n w0 Th = vazio; balanceado: as duas
    condições juntas (uma partição). Com `face`, também testa a invariância
    à esquerda pelo estabilizador W_tau.
    """
    full_mask = (1 << len(all_elements(t.dim))) - 1
    translate = t.left_translate_by_longest().mask
    fat = (t.mask | translate) == full_mask
    slim = (t.mask & translate) == 0
    return ThickeningClass(
        downward_closed=is_thickening(t),
        fat=fat,
        slim=slim,
        balanced=fat and slim,
        stabilizer_invariant=None if face is None else is_stabilizer_invariant(t, face),
    )


def _propagate(assign: List[Optional[bool]], start: int, value: bool, tables: _WeylTables, gens: List[int]) -> bool:
    """Atribui `start` e propaga as consequências; retorna False em conflito."""
    queue = deque([(start, value)])
    while queue:
        k, val = queue.popleft()
        if assign[k] is not None:
            if assign[k] != val:
                return False
            continue
        assign[k] = val
        # fechamento para baixo (True) ou para cima (False)
        neighbours = tables.lower[k] if val else tables.upper[k]
        queue.extend((c, val) for c in neighbours)
        queue.extend((tables.left_simple[i][k], val) for i in gens)
        queue.append((tables.w0_left[k], not val))
    return True


def enumerate_balanced(dim: int, face: FaceType) -> List[Thickening]:
    """
    Enumera todos os espessamentos balanceados e W_tau-invariantes de S_d.

    A busca escolhe, para cada par {w, w0 w}, qual elemento entra; incluir w
    força seu ideal inferior e sua órbita por W_tau e exclui os transladados
    por w0. Resultado em ordem lexicográfica dos bitsets.

    Raises:
        NotIotaInvariant: se a face não for invariante pela oposição.
    """
    if face.dim != dim:
        raise DimMismatch(f"Face de dimensão {face.dim} para S_{dim}.")
    if not face.is_iota_invariant():
        raise NotIotaInvariant(f"Pivôs {face.pivots} não satisfazem D = d - D.")
    tables = _tables(dim)
    gens = face.stabilizer_generators()
    order = sorted(range(len(tables.elements)), key=lambda k: (tables.lengths[k], k))
    results: List[int] = []

    def search(assign: List[Optional[bool]]) -> None:
        pending = next((k for k in order if assign[k] is None), None)
        if pending is None:
            results.append(sum(1 << k for k, val in enumerate(assign) if val))
            return
        for value in (True, False):
            trial = list(assign)
            if _propagate(trial, pending, value, tables, gens):
                search(trial)

    search([None] * len(tables.elements))
    thickenings = [Thickening(dim, mask) for mask in results]
    thickenings.sort(key=lambda t: t.bits())
    logging.info(f"{len(thickenings)} espessamento(s) balanceado(s) em S_{dim} para pivôs {face.pivots}.")
    return thickenings


def enumerate_ideals(dim: int) -> Iterator[Thickening]:
    """Todos os ideais de ordem (conjuntos fechados para baixo) de S_d."""
    tables = _tables(dim)
    order = sorted(range(len(tables.elements)), key=lambda k: (tables.lengths[k], k))

    def walk(position: int, mask: int) -> Iterator[int]:
        if position == len(order):
            yield mask
            return
        k = order[position]
        yield from walk(position + 1, mask)
        if all(mask >> c & 1 for c in tables.lower[k]):
            yield from walk(position + 1, mask | 1 << k)

    for mask in walk(0, 0):
        yield Thickening(dim, mask)
