# -*- coding: utf-8 -*-
"""
Geração de Relatórios, Tabelas e Gráficos.

Todo arquivo de saída começa com o cabeçalho de `utils.render_header` (versão
e configuração completa), sem datas, de modo que execuções idênticas gerem
arquivos idênticos byte a byte.

Funcionalidades Principais:
-   **Relatórios key=value:** certificados e resumos, um par por linha, com
    números em `%.<precisão>g`.
-   **Tabelas CSV:** DataFrames gravados com `DataFrame.to_csv` no mesmo
    formato numérico.
-   **Gráficos SVG:** dispersão estática com Matplotlib (backend Agg) e o
    tema whitegrid do Seaborn; o sal de hash do SVG e a data dos metadados
    são fixados para a saída ser reprodutível.
"""
import logging
import os
from typing import Mapping, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from config import DEFAULT_PRECISION  # noqa: E402

sns.set_theme(style="whitegrid")
SVG_HASH_SALT = "projeto_anosov"


def format_value(value: object, precision: int = DEFAULT_PRECISION) -> str:
    """Números reais em `%.<precision>g`; booleanos como true/false; o resto com str()."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    return str(value)


def write_report(
    path: str, header: str, values: Mapping[str, object], precision: int = DEFAULT_PRECISION
) -> None:
    """Grava um relatório estruturado key=value após o cabeçalho."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(header)
        for key, value in values.items():
            f.write(f"{key}={format_value(value, precision)}\n")
    logging.info(f"Relatório salvo em: {path}")


def write_table(path: str, header: str, table: pd.DataFrame, precision: int = DEFAULT_PRECISION) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(header)
        table.to_csv(f, index=False, float_format=f"%.{precision}g", lineterminator="\n")
    logging.info(f"Tabela salva em: {path} ({len(table)} linhas)")


def scatter_svg(
    table: pd.DataFrame,
    x: str,
    y: str,
    path: str,
    title: str,
    hue: Optional[str] = None,
) -> None:
    """
    Gráfico de dispersão estático em SVG.

    Args:
        table: dados a plotar.
        x, y: colunas dos eixos.
        path: arquivo .svg de destino (a pasta é criada se não existir).
        title: título do gráfico.
        hue: coluna categórica opcional para colorir os pontos.
    """
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=(8, 8))
    sns.scatterplot(data=table, x=x, y=y, hue=hue, s=12, linewidth=0, ax=ax)
    ax.set_title(title, fontsize=14)
    ax.set_xlabel(x, fontsize=12)
    ax.set_ylabel(y, fontsize=12)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logging.info(f"Gráfico salvo em: {path}")
