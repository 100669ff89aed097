"""
main.py — Interface de Linha de Comando do tanglesim

Subcomandos:
    simulate  CSV com concorrências, foco contra o resto e residual por ponto da grade
    verify    suítes de verificação (formas fechadas × oráculos numéricos)
    sweep     janelas de morte súbita em função de α no cenário φ
    figures   fig2.csv e fig4.csv (curvas de referência)

Códigos de saída:
    0  sucesso
    1  configuração inválida ou erro de domínio (TangleSimError)
    2  erro de E/S ao gravar a saída
    3  alguma suíte de verificação falhou

Uso:
    python main.py simulate --scenario 2 --points 201 --out jc1.csv
    python main.py verify --suite roof,windows -v
    python main.py sweep --resolution 51
    python main.py figures --out figuras/
"""

from __future__ import annotations

import argparse
import logging
import sys

from cli.comandos import cmd_figures, cmd_simulate, cmd_sweep
from cli.config import ConfigError, build_config, load_config_file
from cli.verificacao import cmd_verify
from qstate.erros import TangleSimError

logger = logging.getLogger("tanglesim")

EXIT_CONFIG = 1
EXIT_IO = 2

FLAGS: tuple[tuple[str, dict], ...] = (
    ("--scenario", {"help": "jc-vacuum, jc-one-photon, double-jc-psi, double-jc-phi (ou 1–4), jc-vacuum-phi, jc-one-photon-phi"}),
    ("--alpha", {"help": "amplitude α (β = √(1 − α²) se omitido)"}),
    ("--beta", {"help": "amplitude β (precisa normalizar com α)"}),
    ("--beta-exact", {"help": "β não normalizado; o par é normalizado preservando α/β"}),
    ("--grid", {"help": "gt ou z"}),
    ("--points", {"help": "pontos da grade (padrão 501)"}),
    ("--bath", {"help": "single, markov ou comb"}),
    ("--gamma", {"help": "taxa markoviana γ (banhos markov e comb)"}),
    ("--g", {"help": "acoplamento do modo único"}),
    ("--modes", {"help": "número de modos do pente"}),
    ("--spacing", {"help": "espaçamento entre os modos do pente"}),
    ("--out", {"help": "arquivo (simulate, sweep) ou pasta (figures) de saída"}),
    ("--columns", {"help": "colunas separadas por vírgula"}),
    ("--source", {"help": "analytic ou measured"}),
    ("--roof-restarts", {"help": "reinícios aleatórios da busca do convex roof"}),
    ("--seed", {"help": "semente dos geradores aleatórios"}),
    ("--perturb", {"help": "ruído de amplitude injetado nos estados (autoteste)"}),
    ("--suite", {"help": "suítes de verify separadas por vírgula"}),
    ("--resolution", {"help": "linhas da varredura em α"}),
    ("--threads", {"help": "threads do pool (senão TANGLESIM_THREADS ou nº de CPUs)"}),
)


def build_parser() -> argparse.ArgumentParser:
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument("--config", help="arquivo key=value com valores padrão")
    for flag, opcoes in FLAGS:
        comum.add_argument(flag, default=None, **opcoes)
    comum.add_argument("--squares", action="store_const", const=True, default=None,
                       help="inclui as colunas C2_* em simulate")
    comum.add_argument("--roof", action="store_const", const=True, default=None,
                       help="convex roof com 4 estados na decomposição")
    comum.add_argument("-v", "--log", action="store_true", help="log detalhado (DEBUG)")

    parser = argparse.ArgumentParser(
        prog="tanglesim",
        description="Dinâmica de emaranhamento em Jaynes–Cummings: concorrência, residual e morte súbita.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for nome, ajuda in (
        ("simulate", "concorrências ao longo da grade de um cenário"),
        ("verify", "suítes de verificação"),
        ("sweep", "janelas de morte súbita em função de α"),
        ("figures", "fig2.csv e fig4.csv"),
    ):
        sub.add_parser(nome, parents=[comum], help=ajuda)
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log)

    valores = vars(args).copy()
    comando = valores.pop("command")
    arquivo = valores.pop("config")
    valores.pop("log")

    try:
        padroes = load_config_file(arquivo) if arquivo else {}
        config = build_config(comando, padroes, valores)
        if comando == "simulate":
            cmd_simulate(config)
        elif comando == "sweep":
            cmd_sweep(config)
        elif comando == "figures":
            cmd_figures(config)
        else:
            return cmd_verify(config)
    except ConfigError as exc:
        print(f"❌ configuração inválida ({exc.field}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TangleSimError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"❌ erro ao gravar a saída: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
