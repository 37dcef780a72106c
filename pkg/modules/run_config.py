"""
DuplexVision - Configurações
Parâmetros do oráculo numérico, da linha de comando e variáveis de ambiente
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from modules.errors import ConfigError

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "FDX_SEED"
LOG_LEVEL_ENV_VAR = "FDX_LOG_LEVEL"

# Contrato de saída para scripts e CI
EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3

COMMANDS: List[str] = ["region", "corners", "dims", "compare", "sweep", "verify"]
OUTPUT_FORMATS: List[str] = ["json", "csv", "text", "xlsx"]


@dataclass(frozen=True)
class OracleSettings:
    """Limiares do oráculo matricial"""
    rank_rtol: float = 1e-8
    gap_ratio: float = 10.0
    angle_tol: float = 1e-6

    def rank_threshold(self, sigma_max: float) -> float:
        """Limiar absoluto de posto para um dado valor singular máximo"""
        return self.rank_rtol * sigma_max


DEFAULT_ORACLE_SETTINGS = OracleSettings()


def default_seed() -> int:
    """Semente padrão: 0, ou o valor de FDX_SEED"""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 0
    try:
        seed = int(raw)
    except ValueError:
        logger.warning("%s=%r não é inteiro; usando semente 0", SEED_ENV_VAR, raw)
        return 0
    if seed < 0:
        logger.warning("%s=%d negativo; usando semente 0", SEED_ENV_VAR, seed)
        return 0
    return seed


def default_log_level() -> str:
    return os.environ.get(LOG_LEVEL_ENV_VAR, "WARNING").upper()


@dataclass
class RunConfig:
    """Configuração de uma execução da linha de comando"""
    command: str
    input_path: Optional[Path] = None
    case: Optional[str] = None
    case_params: Dict[str, str] = field(default_factory=dict)
    output_format: str = "json"
    output_path: Optional[Path] = None
    trials: int = 20
    seed: int = field(default_factory=default_seed)
    density: Optional[int] = None
    # varreduras
    sweep_kind: Optional[str] = None
    sweep_l: Optional[str] = None
    sweep_steps: int = 11
    sweep_l_usr: Optional[str] = None
    sweep_l_bs: List[str] = field(default_factory=list)
    sweep_geometry: str = "sliding"
    # controle negativo do verify: soma 1 ao valor analítico deste campo
    corrupt_field: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Comando desconhecido: {self.command}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"Formato desconhecido: {self.output_format}")
        if self.output_format == "xlsx" and (self.command != "sweep" or self.output_path is None):
            raise ConfigError("Formato xlsx só vale para sweep com --out")
        if self.trials < 1:
            raise ConfigError("trials deve ser >= 1")
        if self.density is not None and self.density < 1:
            raise ConfigError("density deve ser >= 1")
        if self.seed < 0:
            raise ConfigError("seed deve ser >= 0")

    @property
    def needs_scenario(self) -> bool:
        return self.command != "sweep"

    def check_scenario_source(self) -> None:
        """Exige exatamente uma fonte de cenário"""
        if not self.needs_scenario:
            return
        sources = [self.input_path is not None, self.case is not None]
        if sum(sources) != 1:
            raise ConfigError("Informe exatamente uma fonte de cenário: --in ou --case")
