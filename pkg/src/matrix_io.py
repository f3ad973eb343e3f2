# -*- coding: utf-8 -*-
"""
Leitura e Escrita dos Formatos de Texto do Projeto.

Formato de matriz (compartilhado por todos os comandos): uma linha com `d`,
seguida de d linhas com d números decimais separados por espaços. Linhas que
começam com `#` são comentários; matrizes consecutivas são separadas por
linhas em branco. Sobre esse formato:

-   **Representações:** cada bloco começa com `gen A` (letra maiúscula do
    gerador). Sem cabeçalhos, os blocos recebem as letras A, B, C, ...
-   **Flags:** cada bloco começa com `pivots: i1 i2 ...` e traz o
    referencial d x d cujas primeiras colunas geram os subespaços.
-   **Espessamentos:** um por linha, elementos separados por `|`
    (por exemplo `123|213|132`).

Erros de formato levantam `MatrixFormatError` com o número da linha.
"""
from pathlib import Path
from string import ascii_uppercase
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import MatrixFormatError
from src.flag_geometry import Flag
from src.linear_algebra import DEFAULT_TOLERANCES, Tolerances
from src.representation import Representation
from src.weyl_group import FaceType, Thickening

Line = Tuple[int, str]


def _blocks(text: str) -> List[List[Line]]:
    """Agrupa as linhas não comentadas em blocos separados por linhas em branco."""
    blocks: List[List[Line]] = []
    current: List[Line] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((number, line))
    if current:
        blocks.append(current)
    return blocks


def _parse_matrix(lines: Sequence[Line]) -> np.ndarray:
    number, first = lines[0]
    try:
        d = int(first)
    except ValueError:
        raise MatrixFormatError(f"linha {number}: esperava a dimensão d, encontrado '{first}'.") from None
    if d < 1:
        raise MatrixFormatError(f"linha {number}: dimensão inválida {d}.")
    rows = lines[1:]
    if len(rows) != d:
        raise MatrixFormatError(f"linha {number}: esperava {d} linhas de entradas, encontradas {len(rows)}.")
    matrix = np.empty((d, d))
    for i, (row_number, row) in enumerate(rows):
        fields = row.split()
        if len(fields) != d:
            raise MatrixFormatError(f"linha {row_number}: esperava {d} entradas, encontradas {len(fields)}.")
        try:
            matrix[i] = [float(x) for x in fields]
        except ValueError:
            raise MatrixFormatError(f"linha {row_number}: entrada não numérica em '{row}'.") from None
    return matrix


def parse_matrices(text: str) -> List[np.ndarray]:
    blocks = _blocks(text)
    if not blocks:
        raise MatrixFormatError("linha 1: nenhuma matriz encontrada.")
    return [_parse_matrix(block) for block in blocks]


def format_matrix(matrix: np.ndarray) -> str:
    """Serializa uma matriz com 17 algarismos significativos (ida e volta exata)."""
    matrix = np.asarray(matrix, dtype=float)
    rows = [" ".join(f"{x:.17g}" for x in row) for row in matrix]
    return "\n".join([str(matrix.shape[0])] + rows)


def _write(path, body: Iterable[str], header: Optional[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = "\n\n".join(body) + "\n"
    if header:
        text = header + text
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def read_matrices(path) -> List[np.ndarray]:
    return parse_matrices(Path(path).read_text(encoding="utf-8"))


def write_matrices(path, matrices: Sequence[np.ndarray], header: Optional[str] = None) -> None:
    _write(path, (format_matrix(m) for m in matrices), header)


def parse_representation(text: str, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Representation:
    """
    Lê uma representação com cabeçalhos `gen X` (ou geradores anônimos A, B, ...).

    Raises:
        MatrixFormatError: cabeçalho malformado, letra repetida ou mistura de
            blocos com e sem cabeçalho.
        AnosovError: gerador inválido (não unimodular, dimensões diferentes, ...).
    """
    blocks = _blocks(text)
    if not blocks:
        raise MatrixFormatError("linha 1: nenhum gerador encontrado.")
    named = [block[0][1].lower().startswith("gen") for block in blocks]
    if any(named) and not all(named):
        number = blocks[named.index(False)][0][0]
        raise MatrixFormatError(f"linha {number}: todos os geradores precisam do cabeçalho 'gen X'.")
    generators = {}
    for index, block in enumerate(blocks):
        if named[index]:
            number, header = block[0]
            fields = header.split()
            if len(fields) != 2 or len(fields[1]) != 1 or not fields[1].isupper():
                raise MatrixFormatError(f"linha {number}: cabeçalho inválido '{header}', use 'gen A'.")
            letter, body = fields[1], block[1:]
            if not body:
                raise MatrixFormatError(f"linha {number}: gerador '{letter}' sem matriz.")
        else:
            number, letter, body = block[0][0], ascii_uppercase[index], block
        if letter in generators:
            raise MatrixFormatError(f"linha {number}: gerador '{letter}' repetido.")
        generators[letter] = _parse_matrix(body)
    return Representation(generators, tolerances=tolerances)


def read_representation(path, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Representation:
    return parse_representation(Path(path).read_text(encoding="utf-8"), tolerances)


def write_representation(path, rep: Representation, header: Optional[str] = None) -> None:
    body = (f"gen {letter}\n{format_matrix(rep.generator_matrix(letter))}" for letter in rep.letters)
    _write(path, body, header)


def parse_flags(text: str) -> List[Flag]:
    flags = []
    for block in _blocks(text):
        number, header = block[0]
        if not header.lower().startswith("pivots:"):
            raise MatrixFormatError(f"linha {number}: esperava o cabeçalho 'pivots: i1 i2 ...'.")
        if len(block) == 1:
            raise MatrixFormatError(f"linha {number}: flag sem referencial.")
        frame = _parse_matrix(block[1:])
        try:
            face = FaceType.parse(frame.shape[0], header.split(":", 1)[1])
            flags.append(Flag.from_basis(face, frame))
        except ValueError as exc:
            raise MatrixFormatError(f"linha {number}: {exc}") from None
    return flags


def read_flags(path) -> List[Flag]:
    return parse_flags(Path(path).read_text(encoding="utf-8"))


def write_flags(path, flags: Sequence[Flag], header: Optional[str] = None) -> None:
    body = (f"pivots: {' '.join(str(k) for k in flag.face.pivots)}\n{format_matrix(flag.frame)}" for flag in flags)
    _write(path, body, header)


def parse_thickenings(text: str) -> List[Thickening]:
    thickenings = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            thickenings.append(Thickening.parse(line))
        except ValueError as exc:
            raise MatrixFormatError(f"linha {number}: {exc}") from None
    if not thickenings:
        raise MatrixFormatError("linha 1: nenhum espessamento encontrado.")
    return thickenings


def read_thickenings(path) -> List[Thickening]:
    return parse_thickenings(Path(path).read_text(encoding="utf-8"))


def write_thickenings(path, thickenings: Sequence[Thickening], header: Optional[str] = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        if header:
            f.write(header)
        for t in thickenings:
            f.write(f"{t}\n")
