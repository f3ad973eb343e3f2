# -*- coding: utf-8 -*-
"""
Arquivo de Configuração Central do Projeto.

Este módulo centraliza todas as variáveis de configuração e parâmetros
utilizados nas diferentes etapas da certificação de representações Anosov.
O objetivo é facilitar a manutenção, a experimentação e a reprodutibilidade,
permitindo que as configurações sejam alteradas em um único local sem a
necessidade de modificar o código-fonte dos módulos principais.

As configurações estão agrupadas nas seguintes categorias:

- **Tolerâncias Numéricas:**
  - `DEFAULT_SVD_TOL`, `DEFAULT_DET_TOL`, `DEFAULT_SUM_TOL`, `DEFAULT_RECOMPOSE_TOL`,
    `DEFAULT_RANK_TOL`, `DEFAULT_ANGLE_TOL`: valores padrão do tipo `Tolerances`.
  - `RANK_AMBIGUITY_FACTOR`: um valor singular em (tol, tol * fator] torna o posto ambíguo.

- **Enumeração de Bolas de Palavras:**
  - `BALL_EVALUATION_BUDGET`: número máximo de avaliações de palavras por bola.
  - `EVALUATION_CACHE_SIZE`: tamanho do cache de avaliação por representação.

- **Dinâmica e Conjuntos Limite:**
  - `CONTRACTION_GAP_THRESHOLD`: gap mínimo de raízes para aceitar uma sequência contratante.
  - `CONTRACTION_SAMPLE_SIZE`, `COMPACT_MARGIN`: amostra do compacto em C(tau_-).
  - `LIMIT_DEDUP_DISTANCE`: distância abaixo da qual dois flags limite são o mesmo ponto.
  - `EXPANSION_WITNESS_MARGIN`, `EXPANSION_SLOPE_TOL`: testes de expansão.

- **Schottky:**
  - `PINGPONG_RADIUS_MULTIPLIER`, `PINGPONG_SAMPLES`.
  - `FIXED_FLAG_MAX_SQUARINGS`, `PROXIMAL_GAP_RATE`: iteração por quadrados que acha o
    flag fixo atrator de um gerador e o limiar de proximalidade (gap por unidade de potência).

- **Domínios:**
  - `DEFAULT_SEED`, `PROPERNESS_TOL`.

- **Saída, Cache e Log:**
  - Pastas de saída, precisão numérica, número de threads e `LOG_LEVEL`.
  - `CACHE_DIR`: pode ser sobrescrito pela variável de ambiente `ANOSOV_CACHE_DIR`
    (também lida de um arquivo `.env`, se existir).
"""
import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SVD_TOL = 1e-12
DEFAULT_DET_TOL = 1e-9
DEFAULT_SUM_TOL = 1e-9
DEFAULT_RECOMPOSE_TOL = 1e-8
DEFAULT_RANK_TOL = 1e-7
DEFAULT_ANGLE_TOL = 1e-7
RANK_AMBIGUITY_FACTOR = 10.0

BALL_EVALUATION_BUDGET = 5_000_000
EVALUATION_CACHE_SIZE = 4096

CONTRACTION_GAP_THRESHOLD = 3.0
CONTRACTION_SAMPLE_SIZE = 100
COMPACT_MARGIN = 0.1  # margem mínima de antipodalidade para o compacto em C(tau_-)
LIMIT_DEDUP_DISTANCE = 1e-6
BOUNDARY_CONVERGENCE_TOL = 1e-6
EXPANSION_WITNESS_MARGIN = 1e-6
EXPANSION_SLOPE_TOL = 1e-3
FD_STEP = 1e-5

PINGPONG_RADIUS_MULTIPLIER = 0.8
PINGPONG_SAMPLES = 2000
FIXED_FLAG_MAX_SQUARINGS = 40
PROXIMAL_GAP_RATE = 1e-4

DEFAULT_SEED = 0x5EED
PROPERNESS_TOL = 1e-3

OUTPUT_FOLDER = "data/output"
CACHE_DIR = os.environ.get("ANOSOV_CACHE_DIR", "data/cache")

REPORT_FILENAME_TEMPLATE = "{command}_{name}.txt"
TABLE_FILENAME_TEMPLATE = "{command}_{name}.csv"
PLOT_FILENAME_TEMPLATE = "{command}_{name}.svg"

DEFAULT_PRECISION = 6
DEFAULT_THREADS = 1

LOG_LEVEL = "INFO"
