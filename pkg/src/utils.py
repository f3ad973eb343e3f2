# -*- coding: utf-8 -*-
"""
Módulo de Funções Utilitárias.

Este módulo contém funções auxiliares usadas pelo CLI e pelos relatórios:
montagem dos caminhos de saída a partir dos modelos de nome do `config.py`,
cabeçalho com a versão e a configuração completa, leitura de listas numéricas
das opções de linha de comando, limpeza das pastas de saída e o cache em disco
dos perfis de gaps.
"""
import logging
import os
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence

from joblib import Memory

from config import (
    CACHE_DIR,
    OUTPUT_FOLDER,
    PLOT_FILENAME_TEMPLATE,
    REPORT_FILENAME_TEMPLATE,
    TABLE_FILENAME_TEMPLATE,
)
from src import __version__
from src.errors import AnosovError
from src.regularity import GapProfile, gap_profile
from src.representation import Representation
from src.weyl_group import FaceType


def get_report_filepath(output_dir: str, command: str, name: str) -> str:
    """Caminho do relatório key=value de um comando (ex: 'certify_A.txt')."""
    return os.path.join(output_dir, REPORT_FILENAME_TEMPLATE.format(command=command, name=name))


def get_table_filepath(output_dir: str, command: str, name: str) -> str:
    return os.path.join(output_dir, TABLE_FILENAME_TEMPLATE.format(command=command, name=name))


def get_plot_filepath(output_dir: str, command: str, name: str) -> str:
    return os.path.join(output_dir, PLOT_FILENAME_TEMPLATE.format(command=command, name=name))


def render_header(config: Mapping[str, object]) -> str:
    """
    Cabeçalho '#' com a versão e a configuração em pares key=value ordenados.

    Não há carimbo de data: execuções idênticas produzem arquivos idênticos.
    """
    lines = [f"# projeto_anosov {__version__}"]
    lines += [f"# {key}={config[key]}" for key in sorted(config)]
    return "\n".join(lines) + "\n"


def parse_float_list(text: str) -> List[float]:
    """Lê '4,1/4' ou '2 1 0.5'; frações são avaliadas exatamente antes da conversão."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise AnosovError("Lista numérica vazia.")
    try:
        return [float(Fraction(t)) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise AnosovError(f"Lista numérica inválida: '{text}'.") from None


def limpar_pastas_saida(pastas: Optional[Sequence[str]] = None) -> None:
    """
    Remove todos os arquivos das pastas de saída, mantendo a estrutura.

    Por padrão limpa OUTPUT_FOLDER do config.py. O cache em disco
    (CACHE_DIR) não é afetado.
    """
    pastas_para_limpar = list(pastas) if pastas is not None else [OUTPUT_FOLDER]

    logging.info(f"Limpando arquivos das pastas: {', '.join(pastas_para_limpar)}")

    for pasta in pastas_para_limpar:
        for root, dirs, files in os.walk(pasta):
            for file in files:
                caminho = os.path.join(root, file)
                try:
                    os.remove(caminho)
                except Exception as e:
                    logging.warning(f"Falha ao remover {caminho}: {e}")


def _profile_table(generators, tolerances, pivots, radius, n_jobs):
    rep = Representation(generators, tolerances=tolerances)
    return gap_profile(rep, FaceType(rep.dim, tuple(pivots)), radius, n_jobs=n_jobs).table


def cached_gap_profile(
    rep: Representation, face: FaceType, radius: int, n_jobs: int = 1, cache_dir: Optional[str] = CACHE_DIR
) -> GapProfile:
    """
    `gap_profile` com cache em disco (joblib.Memory) indexado pelas matrizes geradoras.

    `cache_dir=None` desativa o cache. O número de workers não entra na chave,
    porque o perfil não depende dele.
    """
    generators = {letter: rep.generator_matrix(letter) for letter in rep.letters}
    memory = Memory(cache_dir, verbose=0)
    table = memory.cache(_profile_table, ignore=["n_jobs"])(
        generators, rep.tolerances, tuple(face.pivots), radius, n_jobs
    )
    return GapProfile(face, table)
