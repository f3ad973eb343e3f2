# -*- coding: utf-8 -*-
"""
Ponto de Entrada Principal e Orquestrador dos Pipelines.

Este script expõe, por subcomandos de linha de comando, todas as etapas da
certificação de representações Anosov de grupos livres em SL(d, R):

1.  **`cartan`:** projeção de Cartan de cada matriz de um arquivo.
2.  **`weyl thickenings`:** espessamentos balanceados de S_d para uma face.
3.  **`certify`:** perfil de gaps e certificado URU de uma representação
    (opcionalmente defeito de aditividade, estabilidade e fidelidade).
4.  **`schottky search` / `schottky build`:** busca da menor potência m = n
    aprovada para um par axial, ou gravação de rho_{m,n} em arquivo.
5.  **`limitset`:** amostra do conjunto limite, séries de expansão ao longo
    de raios e testemunhas de expansão.
6.  **`domain`:** classificação de câmaras em espessamento / domínio e o
    censo de retornos (evidência de descontinuidade própria).
7.  **`clean`:** remove os arquivos gerados da pasta de saída (o cache é mantido).

Códigos de saída: 0 sucesso, 1 erro (entrada inválida, arquivo ausente, uso
incorreto), 2 certificado reprovado. Todo arquivo gerado começa com a versão
e a configuração completa da execução.

Exemplo de uso:
    $ python main.py cartan data/golden.txt
    $ python main.py certify --rep data/schottky.txt --pivots 1 --radius 10 --min-slope 0.05
    $ python main.py schottky search --eigs 4,1/4 --conj-angle 0.7853981634 --radius 8 --min-slope 0.1 --cap 64
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import (
    CACHE_DIR,
    DEFAULT_PRECISION,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    LOG_LEVEL,
    OUTPUT_FOLDER,
    PINGPONG_RADIUS_MULTIPLIER,
    PINGPONG_SAMPLES,
)
from src.domains import OUT, ThickenedLimitSet, domain_sample, properness_witness
from src.errors import AnosovError, CapExceeded
from src.flag_geometry import Flag
from src.limit_sets import expansion_at_limit_set, expansion_series, limit_set_sample, random_ray
from src.linear_algebra import DEFAULT_TOLERANCES, Tolerances, cartan_projection
from src.matrix_io import (
    read_matrices,
    read_representation,
    read_thickenings,
    write_flags,
    write_representation,
    write_thickenings,
)
from src.regularity import additivity_defect, certify_uru, stability_check
from src.reports import format_value, scatter_svg, write_report, write_table
from src.representation import Representation, faithfulness_evidence, symmetric_square
from src.schottky import AxialPair, find_min_powers, schottky_rep
from src.utils import (
    cached_gap_profile,
    get_plot_filepath,
    get_report_filepath,
    get_table_filepath,
    limpar_pastas_saida,
    parse_float_list,
    render_header,
)
from src.weyl_group import FaceType, enumerate_balanced

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CERTIFICATE_FAILED = 2

TOLERANCE_FLAGS = ("svd_tol", "det_tol", "sum_tol", "recompose_tol", "rank_tol", "angle_tol")
INPUT_FILE_OPTIONS = ("matrix_file", "rep")


def setup_logging(level_str: str = "ERROR"):
    """
    Configura o sistema de logging global para a aplicação.

    Args:
        level_str (str, optional): O nível de logging desejado, em formato de string
                                   (ex: 'INFO', 'DEBUG', 'WARNING', 'ERROR').
                                   O padrão é 'ERROR'.
    """
    level = getattr(logging, level_str.upper(), logging.ERROR)
    logging.basicConfig(level=level, format="%(asctime)s - %(levelname)s - %(message)s", force=True)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser que reporta erros de uso em uma linha e sai com código 1."""

    def error(self, message: str):
        sys.stderr.write(f"{self.prog}: erro: {message}\n")
        sys.exit(EXIT_ERROR)


@dataclass(frozen=True)
class RunConfig:
    """Configuração completa de uma execução; ecoada no cabeçalho de todo arquivo de saída."""

    command: str
    options: Dict[str, object]
    tolerances: Tolerances = DEFAULT_TOLERANCES
    seed: int = DEFAULT_SEED
    precision: int = DEFAULT_PRECISION
    threads: int = DEFAULT_THREADS
    output_dir: str = OUTPUT_FOLDER
    use_cache: bool = True

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """
        Monta a configuração a partir dos argumentos já lidos.

        Raises:
            FileNotFoundError: arquivo de entrada inexistente.
            AnosovError: tolerância não positiva ou precisão inválida.
        """
        values = vars(args).copy()
        overrides = {name: values.pop(name) for name in TOLERANCE_FLAGS}
        tolerances = DEFAULT_TOLERANCES.with_overrides(**{k: v for k, v in overrides.items() if v is not None})
        for name in INPUT_FILE_OPTIONS:
            path = values.get(name)
            if path is not None and not os.path.isfile(path):
                raise FileNotFoundError(f"Arquivo de entrada não encontrado: {path}")
        thickening = values.get("thickening")
        if thickening is not None and not str(thickening).isdigit() and not os.path.isfile(thickening):
            raise FileNotFoundError(f"Arquivo de espessamento não encontrado: {thickening}")
        if values["precision"] < 1:
            raise AnosovError(f"--precision deve ser >= 1, recebido {values['precision']}.")
        return cls(
            command=values.pop("command"),
            tolerances=tolerances,
            seed=values.pop("seed"),
            precision=values.pop("precision"),
            threads=values.pop("threads"),
            output_dir=values.pop("output_dir"),
            use_cache=not values.pop("no_cache"),
            options=values,
        )

    def as_dict(self) -> Dict[str, object]:
        result: Dict[str, object] = {
            "command": self.command,
            "seed": self.seed,
            "precision": self.precision,
            "output_dir": self.output_dir,
            "cache": self.use_cache,
        }
        result.update({key: value for key, value in self.options.items() if key != "log_level"})
        result.update({name: getattr(self.tolerances, name) for name in TOLERANCE_FLAGS})
        return result

    def header(self) -> str:
        return render_header(self.as_dict())

    def opt(self, name: str):
        return self.options.get(name)

    def save_table(self, command: str, name: str, table: pd.DataFrame) -> None:
        write_table(get_table_filepath(self.output_dir, command, name), self.header(), table, self.precision)

    def save_report(self, command: str, name: str, values: Dict[str, object]) -> None:
        write_report(get_report_filepath(self.output_dir, command, name), self.header(), values, self.precision)


def _face(config: RunConfig, dim: int) -> FaceType:
    pivots = config.opt("pivots")
    return FaceType.parse(dim, pivots) if pivots else FaceType.full(dim)


def _stem(path: str) -> str:
    return Path(path).stem


def _load_rep(config: RunConfig) -> Representation:
    rep = read_representation(config.opt("rep"), config.tolerances)
    logging.info(f"Representação carregada: {rep}")
    return rep


def _certificate(config: RunConfig, rep: Representation, face: FaceType):
    """Certificado URU com o perfil de gaps em cache, ou None se --radius não foi dado."""
    radius = config.opt("radius")
    if radius is None:
        return None
    if config.opt("min_slope") is None:
        raise AnosovError("--radius exige --min-slope.")
    profile = cached_gap_profile(rep, face, radius, config.threads, CACHE_DIR if config.use_cache else None)
    return certify_uru(rep, face, radius, config.opt("min_slope"), n_jobs=config.threads, profile=profile)


def cmd_cartan(config: RunConfig) -> int:
    path = config.opt("matrix_file")
    matrices = read_matrices(path)
    records = []
    for index, g in enumerate(matrices):
        v = cartan_projection(g, config.tolerances)
        print(" ".join(format_value(float(x), config.precision) for x in v))
        row = {"matrix": index}
        row.update({f"v{i + 1}": float(x) for i, x in enumerate(v)})
        row["trace_defect"] = v.trace_defect()
        records.append(row)
    config.save_table("cartan", _stem(path), pd.DataFrame.from_records(records))
    return EXIT_OK


def cmd_weyl_thickenings(config: RunConfig) -> int:
    d = config.opt("d")
    face = _face(config, d)
    thickenings = enumerate_balanced(d, face)
    for t in thickenings:
        print(t)
    print(f"count={len(thickenings)}")
    path = get_report_filepath(config.output_dir, "weyl_thickenings", f"d{d}_{face}".replace(",", "-"))
    write_thickenings(path, thickenings, config.header())
    return EXIT_OK


def cmd_certify(config: RunConfig) -> int:
    rep = _load_rep(config)
    face = _face(config, rep.dim)
    name = _stem(config.opt("rep"))
    certificate = _certificate(config, rep, face)
    values = certificate.as_dict()
    values["divergent"] = certificate.profile.is_divergent()

    if config.opt("defect"):
        defect = additivity_defect(rep, face, certificate.radius, n_jobs=config.threads)
        config.save_table("certify", f"{name}_defect", defect)
        values["max_defect"] = float(defect["max_defect"].max())
    if config.opt("stability_trials"):
        stability = stability_check(
            rep,
            face,
            certificate.radius,
            config.opt("min_slope"),
            config.opt("epsilon"),
            trials=config.opt("stability_trials"),
            seed=config.seed,
            n_jobs=config.threads,
        )
        config.save_table("certify", f"{name}_stability", stability)
        values["stable_trials"] = int(stability["pass"].sum())
    if config.opt("faithfulness"):
        faithfulness = faithfulness_evidence(rep, certificate.radius, n_jobs=config.threads)
        values["faithful"] = faithfulness.passed
        values["trivial_words"] = " ".join(faithfulness.trivial_words)

    config.save_report("certify", name, values)
    config.save_table("certify", f"{name}_gaps", certificate.profile.table)
    if config.opt("plot"):
        scatter_svg(
            certificate.profile.table,
            "length",
            "min_gap",
            get_plot_filepath(config.output_dir, "certify", f"{name}_gaps"),
            f"Gap mínimo por comprimento - {name}",
        )
    print(f"pass={format_value(certificate.passed)} c={format_value(certificate.c, config.precision)}")
    return EXIT_OK if certificate.passed else EXIT_CERTIFICATE_FAILED


def _axial_pair(config: RunConfig) -> AxialPair:
    return AxialPair.from_eigenvalues(parse_float_list(config.opt("eigs")), config.opt("conj_angle"))


def cmd_schottky_search(config: RunConfig) -> int:
    pair = _axial_pair(config)
    face = _face(config, pair.dim)
    try:
        result = find_min_powers(
            pair,
            face,
            config.opt("radius"),
            config.opt("min_slope"),
            config.opt("cap"),
            radius_multiplier=config.opt("multiplier"),
            samples=config.opt("samples"),
            seed=config.seed,
            n_jobs=config.threads,
        )
    except CapExceeded as e:
        logging.error(f"Nenhuma potência aprovada: {e}")
        print("threshold=none")
        return EXIT_CERTIFICATE_FAILED
    values: Dict[str, object] = {"threshold": result.threshold}
    values.update({f"pingpong_{k}": v for k, v in result.pingpong.as_dict().items()})
    values.update({f"uru_{k}": v for k, v in result.certificate.as_dict().items()})
    config.save_report("schottky", "search", values)
    config.save_table("schottky", "history", result.history)
    config.save_table("schottky", "neighborhoods", result.pingpong.neighborhoods())
    print(f"threshold={result.threshold}")
    return EXIT_OK


def cmd_schottky_build(config: RunConfig) -> int:
    pair = _axial_pair(config)
    m = config.opt("m")
    n = config.opt("n") or m
    rep = schottky_rep(pair, m, n)
    if config.opt("sym2"):
        rep = symmetric_square(rep)
    write_representation(config.opt("out"), rep, config.header())
    logging.info(f"Representação rho_({m},{n}) salva em: {config.opt('out')}")
    return EXIT_OK


def _plot_flags(table, config: RunConfig, command: str, name: str, hue: Optional[str] = None) -> None:
    """Dispersão dos flags: círculo (cos 2theta, sin 2theta) em d = 2, carta afim da reta em d >= 3."""
    if "angle" in table.columns:
        table = table.assign(x=np.cos(2 * table["angle"]), y=np.sin(2 * table["angle"]))
        x, y = "x", "y"
    else:
        table = table.replace([np.inf, -np.inf], np.nan).dropna(subset=["chart_x", "chart_y"])
        x, y = "chart_x", "chart_y"
    scatter_svg(table, x, y, get_plot_filepath(config.output_dir, command, name), f"{command} - {name}", hue=hue)


def _limit_sample(config: RunConfig, rep: Representation, face: FaceType):
    certificate = _certificate(config, rep, face)
    sample = limit_set_sample(
        rep,
        face,
        config.opt("word_length"),
        config.opt("power"),
        certificate=certificate,
        max_points=config.opt("max_points"),
    )
    return sample, certificate


def cmd_limitset(config: RunConfig) -> int:
    rep = _load_rep(config)
    face = _face(config, rep.dim)
    name = _stem(config.opt("rep"))
    sample, certificate = _limit_sample(config, rep, face)
    table = sample.to_frame()
    values: Dict[str, object] = {
        "points": len(sample.points),
        "skipped": sample.skipped,
        "min_margin": sample.min_margin,
        "mean_margin": sample.mean_margin,
        "certified": sample.certified,
    }
    config.save_table("limitset", name, table)
    write_flags(
        get_report_filepath(config.output_dir, "limitset", f"{name}_flags"), sample.flags, config.header()
    )

    rays = config.opt("rays")
    if rays:
        rng = np.random.default_rng(config.seed)
        records = []
        for index in range(rays):
            prefix = random_ray(rep, config.opt("ray_length"), rng)
            series = expansion_series(rep, face, prefix)
            records.append({"ray": index, "prefix": prefix, "slope": series.slope, "uniform": series.uniform})
        expansion = pd.DataFrame.from_records(records)
        config.save_table("limitset", f"{name}_expansion", expansion)
        values["expansion_min_slope"] = float(expansion["slope"].min())
        values["expansion_mean_slope"] = float(expansion["slope"].mean())
    if config.opt("expansion_radius") and sample.points:
        witnesses = expansion_at_limit_set(rep, sample, config.opt("expansion_radius"))
        config.save_table("limitset", f"{name}_witnesses", witnesses)
        values["witnesses_missing"] = int((witnesses["status"] != "ok").sum())
    config.save_report("limitset", name, values)
    if config.opt("plot") and sample.points:
        _plot_flags(table, config, "limitset", name)
    print(f"points={len(sample.points)} min_margin={format_value(sample.min_margin, config.precision)}")
    if certificate is not None and not certificate.passed:
        return EXIT_CERTIFICATE_FAILED
    return EXIT_OK


def _thickening(config: RunConfig, face: FaceType):
    choice = str(config.opt("thickening"))
    if choice.isdigit():
        balanced = enumerate_balanced(face.dim, face)
        index = int(choice)
        if index >= len(balanced):
            raise AnosovError(
                f"--thickening {index} fora do intervalo: existem {len(balanced)} espessamentos balanceados."
            )
        return balanced[index]
    return read_thickenings(choice)[0]


def _compact_from_table(table, dim: int, size: int) -> List[Flag]:
    columns = [f"f_{i + 1}_{j + 1}" for i in range(dim) for j in range(dim)]
    rows = table.loc[table["class"] == OUT, columns].head(size).to_numpy()
    face = FaceType.full(dim)
    return [Flag.from_basis(face, row.reshape(dim, dim)) for row in rows]


def cmd_domain(config: RunConfig) -> int:
    rep = _load_rep(config)
    face = _face(config, rep.dim)
    name = _stem(config.opt("rep"))
    sample, certificate = _limit_sample(config, rep, face)
    tolerance = config.opt("tolerance") or config.tolerances.rank_tol
    thickened = ThickenedLimitSet(_thickening(config, face), sample, tolerance)
    table = domain_sample(thickened, config.opt("samples"), seed=config.seed, n_jobs=config.threads)
    counts = table["class"].value_counts()
    values: Dict[str, object] = {
        "thickening": str(thickened.thickening),
        "limit_points": len(sample.points),
        "limit_min_margin": sample.min_margin,
        "in": int(counts.get("in", 0)),
        "out": int(counts.get("out", 0)),
        "ambiguous": int(counts.get("ambiguous", 0)),
    }
    config.save_table("domain", name, table)

    properness_radius = config.opt("properness_radius")
    if properness_radius:
        chambers = _compact_from_table(table, rep.dim, config.opt("compact_size"))
        census = properness_witness(rep, thickened, chambers, properness_radius, n_jobs=config.threads)
        config.save_table("domain", f"{name}_census", census.table)
        values["last_return_length"] = census.last_return_length
        values["stabilized"] = census.stabilized
    config.save_report("domain", name, values)
    if config.opt("plot"):
        _plot_flags(table, config, "domain", name, hue="class")
    print(f"in={values['in']} out={values['out']} ambiguous={values['ambiguous']}")
    if certificate is not None and not certificate.passed:
        return EXIT_CERTIFICATE_FAILED
    return EXIT_OK


def cmd_clean(config: RunConfig) -> int:
    limpar_pastas_saida([config.output_dir])
    return EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="Algarismos significativos na saída.")
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="Workers do joblib.")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="Semente (aceita 0x...).")
    common.add_argument("--output-dir", type=str, default=OUTPUT_FOLDER, help="Pasta dos arquivos gerados.")
    common.add_argument("--log-level", type=str, default=LOG_LEVEL, help="Nível de log (DEBUG, INFO, ...).")
    common.add_argument("--no-cache", action="store_true", help="Desativa o cache em disco dos perfis de gaps.")
    for name in TOLERANCE_FLAGS:
        flag = f"--{name.replace('_', '-')}"
        common.add_argument(flag, dest=name, type=float, default=None, help=f"Sobrescreve {name}.")
    return common


def _certificate_options(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--pivots", type=str, default=None, help="Pivôs da face (ex: 1,2). Padrão: face cheia.")
    parser.add_argument("--radius", type=int, required=required, default=None, help="Raio L da bola de palavras.")
    parser.add_argument("--min-slope", type=float, required=required, default=None, help="Inclinação mínima c.")


def _limit_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rep", type=str, required=True, help="Arquivo da representação (cabeçalhos 'gen A').")
    _certificate_options(parser, required=False)
    parser.add_argument("--word-length", type=int, default=4, help="Comprimento das palavras ciclicamente reduzidas.")
    parser.add_argument("--power", type=int, default=20, help="Potência N das palavras.")
    parser.add_argument("--max-points", type=int, default=None, help="Máximo de pontos limite.")
    parser.add_argument("--plot", action="store_true", help="Gera o gráfico SVG.")


def build_parser() -> CliParser:
    common = _common_options()
    parser = CliParser(prog="anosov", description="Certificação de representações Anosov de grupos livres.")
    commands = parser.add_subparsers(dest="command", required=True)

    cartan = commands.add_parser("cartan", parents=[common], help="Projeção de Cartan.")
    cartan.add_argument("matrix_file", type=str, help="Arquivo no formato de matrizes.")

    weyl = commands.add_parser("weyl", help="Combinatória do grupo de Weyl.")
    weyl_commands = weyl.add_subparsers(dest="weyl_command", required=True)
    thick = weyl_commands.add_parser("thickenings", parents=[common], help="Espessamentos balanceados.")
    thick.add_argument("--d", type=int, required=True, help="Dimensão d.")
    thick.add_argument("--pivots", type=str, default=None, help="Pivôs da face. Padrão: face cheia.")

    certify = commands.add_parser("certify", parents=[common], help="Certificado URU.")
    certify.add_argument("--rep", type=str, required=True, help="Arquivo da representação.")
    _certificate_options(certify, required=True)
    certify.add_argument("--defect", action="store_true", help="Calcula o defeito de aditividade.")
    certify.add_argument("--stability-trials", type=int, default=0, help="Perturbações para o teste de estabilidade.")
    certify.add_argument("--epsilon", type=float, default=1e-3, help="Tamanho das perturbações.")
    certify.add_argument("--faithfulness", action="store_true", help="Procura palavras com imagem +-I.")
    certify.add_argument("--plot", action="store_true", help="Gera o gráfico SVG dos gaps.")

    schottky = commands.add_parser("schottky", help="Representações de Schottky.")
    schottky_commands = schottky.add_subparsers(dest="schottky_command", required=True)
    search = schottky_commands.add_parser("search", parents=[common], help="Menor potência aprovada.")
    search.add_argument("--eigs", type=str, required=True, help="Autovalores (ex: 4,1/4).")
    search.add_argument("--conj-angle", type=float, required=True, help="Ângulo da rotação que conjuga beta.")
    _certificate_options(search, required=True)
    search.add_argument("--cap", type=int, required=True, help="Maior potência testada.")
    search.add_argument("--multiplier", type=float, default=PINGPONG_RADIUS_MULTIPLIER, help="Multiplicador do raio.")
    search.add_argument("--samples", type=int, default=PINGPONG_SAMPLES, help="Amostras do ping-pong.")
    build = schottky_commands.add_parser("build", parents=[common], help="Grava rho_{m,n} em arquivo.")
    build.add_argument("--eigs", type=str, required=True, help="Autovalores (ex: 4,1/4).")
    build.add_argument("--conj-angle", type=float, required=True, help="Ângulo da rotação que conjuga beta.")
    build.add_argument("--m", type=int, default=1, help="Potência de alpha.")
    build.add_argument("--n", type=int, default=None, help="Potência de beta (padrão: m).")
    build.add_argument("--sym2", action="store_true", help="Mergulha em SL(3) pelo quadrado simétrico.")
    build.add_argument("--out", type=str, required=True, help="Arquivo de saída.")

    limitset = commands.add_parser("limitset", parents=[common], help="Amostra do conjunto limite.")
    _limit_options(limitset)
    limitset.add_argument("--rays", type=int, default=0, help="Raios aleatórios para as séries de expansão.")
    limitset.add_argument("--ray-length", type=int, default=12, help="Comprimento de cada raio.")
    limitset.add_argument("--expansion-radius", type=int, default=0, help="Raio da busca de testemunhas de expansão.")

    domain = commands.add_parser("domain", parents=[common], help="Classificação de câmaras.")
    _limit_options(domain)
    domain.add_argument("--thickening", type=str, default="0", help="Índice em enumerate_balanced ou arquivo.")
    domain.add_argument("--samples", type=int, default=1000, help="Número de câmaras sorteadas.")
    domain.add_argument("--tolerance", type=float, default=None, help="Tolerância de posto da classificação.")
    domain.add_argument("--properness-radius", type=int, default=0, help="Raio do censo de retornos (0 desativa).")
    domain.add_argument("--compact-size", type=int, default=20, help="Câmaras 'out' usadas como compacto K.")

    commands.add_parser("clean", parents=[common], help="Remove os arquivos gerados da pasta de saída.")
    return parser


HANDLERS = {
    "cartan": cmd_cartan,
    "weyl thickenings": cmd_weyl_thickenings,
    "certify": cmd_certify,
    "schottky search": cmd_schottky_search,
    "schottky build": cmd_schottky_build,
    "limitset": cmd_limitset,
    "domain": cmd_domain,
    "clean": cmd_clean,
}


def run(config: RunConfig) -> int:
    """
    Executa o subcomando da configuração.

    Returns:
        int: 0 sucesso, 1 erro, 2 certificado reprovado.
    """
    logging.info(f"Executando '{config.command}' com {config.threads} worker(s).")
    try:
        os.makedirs(config.output_dir, exist_ok=True)
        return HANDLERS[config.command](config)
    except (AnosovError, OSError) as e:
        logging.error(f"{config.command}: {e}")
        return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """
    Lê os argumentos, configura o log e executa o subcomando pedido.

    Returns:
        int: código de saída (0, 1 ou 2).
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    for nested in ("weyl_command", "schottky_command"):
        if hasattr(args, nested):
            args.command = f"{args.command} {getattr(args, nested)}"
            delattr(args, nested)
    try:
        config = RunConfig.from_args(args)
    except (AnosovError, OSError) as e:
        logging.error(str(e))
        return EXIT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
