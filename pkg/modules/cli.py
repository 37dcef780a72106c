"""
DuplexVision - Linha de Comando
Comandos region, corners, dims, compare, sweep e verify

Resultados vão para stdout (ou --out); diagnósticos e logs vão para stderr.
Códigos de saída: 0 ok, 1 entrada/saída ou argumentos, 2 cenário inválido,
3 divergência na verificação numérica.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from modules.dof_region import (
    achievable_corners,
    bound_corners,
    compare,
    fd_bounds,
    fd_region,
    fdp_bounds,
    fdp_region,
    hd_region,
    sum_gain,
)
from modules.errors import (
    AmbiguousCornerError,
    ConfigError,
    InvalidScenarioError,
    NonIntegralGridError,
    ScenarioFormatError,
)
from modules.matrix_oracle import verify
from modules.network_scenario import Scenario, operator_dims
from modules.run_config import (
    EXIT_INVALID,
    EXIT_IO,
    EXIT_MISMATCH,
    EXIT_OK,
    OUTPUT_FORMATS,
    RunConfig,
    default_log_level,
)
from modules.scenario_io import format_rational, load_scenario, parse_psi, parse_rational
from modules.scenario_library import (
    BUILTIN_SCENARIOS,
    SweepGeometry,
    build_case,
    case_parameters,
    default_length_supports,
    length_sweep,
    overlap_sweep,
)
from utils.export import (
    aux_to_dataframe,
    bounds_to_dataframe,
    classification_to_dataframe,
    corners_payload,
    corners_to_dataframe,
    dataframe_to_csv,
    dataframe_to_text,
    dims_to_dataframe,
    export_sweep_excel,
    oracle_report_to_dataframe,
    oracle_report_to_dict,
    region_payload,
    regions_to_dataframe,
    sweep_to_dataframe,
    to_json,
)
from utils.validators import ScenarioValidator

logger = logging.getLogger(__name__)

CASE_PARAM_NAMES: List[str] = ["l", "l_bs", "l_usr", "psi", "psi_fwd", "psi_back"]

# opções cujo valor pode começar com "-" (suportes, comprimentos)
VALUE_OPTIONS = ("--l", "--l-bs", "--l-usr", "--psi", "--psi-fwd", "--psi-back")


class _Parser(argparse.ArgumentParser):
    """Erros de uso saem com o código de entrada/saída, não com o 2 do argparse"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: erro: {message}\n")


# ============================================
# ARGUMENTOS
# ============================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input_path", type=Path, help="arquivo JSON do cenário")
    common.add_argument("--case", help="cenário embutido ou caso a/b/c")
    common.add_argument("--l", help="meio comprimento comum (caso b, varredura de sobreposição)")
    common.add_argument("--l-bs", dest="l_bs", help="meio comprimento da estação base (lista na varredura)")
    common.add_argument("--l-usr", dest="l_usr", help="meio comprimento dos usuários")
    common.add_argument("--psi", help='suporte comum, ex. "0,1" ou "-1,-1/2;0,1"')
    common.add_argument("--psi-fwd", dest="psi_fwd", help="suporte direto")
    common.add_argument("--psi-back", dest="psi_back", help="suporte de interferência")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS)
    common.add_argument("--out", dest="output_path", type=Path, help="arquivo de saída (padrão: stdout)")
    common.add_argument("-v", "--verbose", action="store_true", help="log em nível DEBUG")

    parser = _Parser(prog="duplexvision", description="Regiões de graus de liberdade full-duplex")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (("region", "regiões HD, FD e FD' com classificação"),
                            ("corners", "pontos de canto explícitos e pelos limitantes"),
                            ("dims", "dimensões de espaços de sinal e operadores"),
                            ("compare", "relações de inclusão e retangularidade")):
        sub.add_parser(name, parents=[common], help=help_text)

    sweep = sub.add_parser("sweep", parents=[common], help="varredura de sobreposição ou de comprimento")
    kind = sweep.add_mutually_exclusive_group(required=True)
    kind.add_argument("--overlap", dest="sweep_kind", action="store_const", const="overlap")
    kind.add_argument("--length", dest="sweep_kind", action="store_const", const="length")
    sweep.add_argument("--steps", type=int, default=11)
    sweep.add_argument("--geometry", choices=[g.value for g in SweepGeometry], default="sliding")

    check = sub.add_parser("verify", parents=[common], help="verificação pelo oráculo matricial")
    check.add_argument("--trials", type=int, default=20)
    check.add_argument("--seed", type=int, default=None, help="semente inicial (padrão: FDX_SEED ou 0)")
    check.add_argument("--density", type=int, default=None, help="densidade G da grade")
    check.add_argument("--corrupt-field", dest="corrupt_field", help=argparse.SUPPRESS)

    return parser


def join_value_options(argv: List[str]) -> List[str]:
    """Reescreve `--psi-fwd -1/2,1/2` como `--psi-fwd=-1/2,1/2`

    O argparse trata um valor iniciado por "-" como outra opção.
    """
    joined: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in VALUE_OPTIONS and i + 1 < len(argv):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            joined.append(token)
            i += 1
    return joined


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: getattr(args, k) for k in CASE_PARAM_NAMES if getattr(args, k, None) is not None}
    output_format = args.output_format or ("csv" if args.command == "sweep" else "json")
    kwargs = dict(
        command=args.command,
        input_path=args.input_path,
        case=args.case,
        case_params=params,
        output_format=output_format,
        output_path=args.output_path,
    )
    if args.command == "sweep":
        kwargs.update(
            sweep_kind=args.sweep_kind,
            sweep_l=args.l,
            sweep_steps=args.steps,
            sweep_l_usr=args.l_usr,
            sweep_l_bs=[v for v in (args.l_bs or "").split(",") if v.strip()],
            sweep_geometry=args.geometry,
        )
    if args.command == "verify":
        kwargs.update(trials=args.trials, density=args.density, corrupt_field=args.corrupt_field)
        if args.seed is not None:
            kwargs["seed"] = args.seed
    return RunConfig(**kwargs)


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, default_log_level(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


# ============================================
# AUXILIARES
# ============================================
def load_config_scenario(config: RunConfig) -> Scenario:
    if config.input_path is not None:
        scenario = load_scenario(config.input_path)
    else:
        try:
            if config.case_params or config.case not in BUILTIN_SCENARIOS:
                missing = [p for p in case_parameters(config.case) if p not in config.case_params]
                if missing:
                    flags = ", ".join("--" + p.replace("_", "-") for p in missing)
                    raise ConfigError(f"Caso {config.case} exige {flags}")
            scenario = build_case(config.case, **config.case_params)
        except KeyError as e:
            raise ConfigError(str(e.args[0]))

    validator = ScenarioValidator(scenario)
    _, results = validator.validate_all()
    for result in results:
        if result.severity == 'warning':
            logger.warning("%s", result.message)
    logger.debug("Validação de %r: %s", scenario.label, validator.get_summary())
    return scenario


def write_output(config: RunConfig, content: Union[str, bytes]) -> None:
    if config.output_path is None:
        if isinstance(content, bytes):
            sys.stdout.buffer.write(content)
        else:
            sys.stdout.write(content)
        sys.stdout.flush()
        return
    if isinstance(content, bytes):
        config.output_path.write_bytes(content)
    else:
        config.output_path.write_text(content, encoding="utf-8")


def _run(config: RunConfig, body: Callable[[RunConfig], int]) -> int:
    """Traduz exceções no contrato de códigos de saída"""
    try:
        return body(config)
    except FileNotFoundError as e:
        print(f"Erro: arquivo não encontrado: {e.filename}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"Erro de E/S: {e}", file=sys.stderr)
        return EXIT_IO
    except (ScenarioFormatError, ConfigError) as e:
        print(f"Erro: {e}", file=sys.stderr)
        return EXIT_IO
    except (InvalidScenarioError, NonIntegralGridError) as e:
        print(f"Cenário inválido: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as e:
        print(f"Erro: {e}", file=sys.stderr)
        return EXIT_IO


# ============================================
# COMANDOS
# ============================================
def _region(config: RunConfig) -> int:
    s = load_config_scenario(config)
    regions = {"hd": hd_region(s), "fd": fd_region(s), "fdp": fdp_region(s)}
    bounds = {"fd": fd_bounds(s), "fdp": fdp_bounds(s)}
    classification = compare(s)

    if config.output_format == "json":
        prime, double_prime = bound_corners(s)
        corners = {"prime": [format_rational(x) for x in prime],
                   "double_prime": [format_rational(x) for x in double_prime]}
        write_output(config, to_json(region_payload(s, regions, bounds, corners, classification)))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(regions_to_dataframe(regions)))
    else:
        write_output(config, "\n".join([
            dataframe_to_text(regions_to_dataframe(regions), f"Regiões - {s.label or 'cenário'}"),
            dataframe_to_text(bounds_to_dataframe(bounds), "Limitantes"),
            f"Classificação: {classification.label}\n",
        ]))
    return EXIT_OK


def cmd_region(config: RunConfig) -> int:
    return _run(config, _region)


def _corners(config: RunConfig) -> int:
    s = load_config_scenario(config)
    bound = bound_corners(s)
    try:
        explicit, ambiguity = achievable_corners(s), ""
    except AmbiguousCornerError as e:
        explicit, ambiguity = None, str(e)

    if config.output_format == "json":
        write_output(config, to_json(corners_payload(explicit, bound, ambiguity)))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(corners_to_dataframe(explicit, bound, ambiguity)))
    else:
        parts = [dataframe_to_text(corners_to_dataframe(explicit, bound, ambiguity), "Pontos de canto")]
        if explicit is not None:
            parts.append(dataframe_to_text(aux_to_dataframe(explicit), "Quantidades auxiliares"))
        write_output(config, "\n".join(parts))
    return EXIT_OK


def cmd_corners(config: RunConfig) -> int:
    return _run(config, _corners)


def _dims(config: RunConfig) -> int:
    s = load_config_scenario(config)
    dims = operator_dims(s)
    if config.output_format == "json":
        write_output(config, to_json({k: format_rational(v) for k, v in dims.as_dict().items()}))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(dims_to_dataframe(dims)))
    else:
        write_output(config, dataframe_to_text(dims_to_dataframe(dims), "Dimensões"))
    return EXIT_OK


def cmd_dims(config: RunConfig) -> int:
    return _run(config, _dims)


def _compare(config: RunConfig) -> int:
    s = load_config_scenario(config)
    regions = {"hd": hd_region(s), "fd": fd_region(s), "fdp": fdp_region(s)}
    classification = compare(s)
    df = classification_to_dataframe(classification, regions)

    if config.output_format == "json":
        write_output(config, to_json({
            "classification": classification.label,
            "code": classification.code,
            "hd_fd": classification.hd_fd.value,
            "fd_fdp": classification.fd_fdp.value,
            "fd_rectangular": classification.fd_rectangular,
            "fdp_rectangular": classification.fdp_rectangular,
            "gain_fd_hd": format_rational(sum_gain(regions["fd"], regions["hd"])),
            "gain_fdp_hd": format_rational(sum_gain(regions["fdp"], regions["hd"])),
        }))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(df))
    else:
        write_output(config, dataframe_to_text(df.T.reset_index().set_axis(["campo", "valor"], axis=1),
                                               f"Comparação - {classification.label}"))
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    return _run(config, _compare)


def _sweep(config: RunConfig) -> int:
    if config.sweep_kind == "overlap":
        if config.sweep_l is None:
            raise ConfigError("--overlap exige --l")
        result = overlap_sweep(parse_rational(config.sweep_l, "l"), config.sweep_steps, config.sweep_geometry)
    else:
        if config.sweep_l_usr is None or not config.sweep_l_bs:
            raise ConfigError("--length exige --l-usr e --l-bs")
        fwd, back = default_length_supports()
        if "psi_fwd" in config.case_params:
            fwd = parse_psi(config.case_params["psi_fwd"], "psi_fwd")
        if "psi_back" in config.case_params:
            back = parse_psi(config.case_params["psi_back"], "psi_back")
        result = length_sweep(
            parse_rational(config.sweep_l_usr, "l_usr"),
            [parse_rational(v, "l_bs") for v in config.sweep_l_bs],
            fwd, back,
        )

    df = sweep_to_dataframe(result)
    if config.output_format == "xlsx":
        write_output(config, export_sweep_excel(result))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(df))
    elif config.output_format == "json":
        write_output(config, to_json({"parameter": result.parameter, "settings": result.settings,
                                      "rows": df.to_dict(orient="records")}))
    else:
        write_output(config, dataframe_to_text(df, f"Varredura de {result.parameter}"))
    return EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    return _run(config, _sweep)


def _verify(config: RunConfig) -> int:
    s = load_config_scenario(config)
    analytic = operator_dims(s)
    if config.corrupt_field is not None:
        if config.corrupt_field not in analytic.as_dict():
            raise ConfigError(f"Campo desconhecido: {config.corrupt_field}")
        analytic = replace(analytic, **{config.corrupt_field: getattr(analytic, config.corrupt_field) + 1})

    report = verify(s, trials=config.trials, seed=config.seed, density=config.density, analytic=analytic)

    if config.output_format == "json":
        write_output(config, to_json(oracle_report_to_dict(report)))
    elif config.output_format == "csv":
        write_output(config, dataframe_to_csv(oracle_report_to_dataframe(report)))
    else:
        status = "APROVADO" if report.passed else "REPROVADO"
        write_output(config, dataframe_to_text(
            oracle_report_to_dataframe(report),
            f"Verificação {status} - G={report.grid_density}, {report.trials} tentativas, semente {report.seed}",
        ))

    if not report.passed:
        for mismatch in report.mismatches[:10]:
            logger.warning("%s", mismatch)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    return _run(config, _verify)


HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    "region": cmd_region,
    "corners": cmd_corners,
    "dims": cmd_dims,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(join_value_options(list(argv)))
    configure_logging(args.verbose)

    try:
        config = config_from_args(args)
        config.check_scenario_source()
    except ConfigError as e:
        print(f"Erro: {e}", file=sys.stderr)
        return EXIT_IO

    return HANDLERS[config.command](config)
