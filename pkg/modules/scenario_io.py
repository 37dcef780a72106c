"""
DuplexVision - Leitura e Escrita de Cenários
Documento JSON de cenário e conversão exata de números racionais

Formato:
    {"l_t1": "1/2", "l_t2": 1, "l_r1": 1, "l_r2": 0.5,
     "psi_t11": [[0, 1]], ..., "label": "meu cenário"}
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Union

from modules.errors import (
    InvalidScenarioError,
    MalformedPairError,
    OutOfRangeError,
    ScenarioFormatError,
)
from modules.interval_set import IntervalSet, normalize
from modules.network_scenario import LENGTH_FIELDS, SUPPORT_FIELDS, Scenario, ensure_valid

logger = logging.getLogger(__name__)


def parse_rational(value: Any, field: str = "valor") -> Fraction:
    """Aceita int, string decimal, string "p/q" ou float JSON (pela repr mais curta)"""
    if isinstance(value, bool) or value is None:
        raise ScenarioFormatError(field, f"número esperado, recebido {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ScenarioFormatError(field, f"número não finito: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ScenarioFormatError(field, f"número inválido: {value!r}")
    raise ScenarioFormatError(field, f"tipo não numérico: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Representação exata no formato p ou p/q"""
    return str(Fraction(value))


def parse_psi(text: str, field: str = "psi") -> IntervalSet:
    """Suporte no formato de linha de comando "lo,hi;lo,hi"

    String vazia é o conjunto vazio.
    """
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ScenarioFormatError(field, f"par inválido {chunk!r}; use lo,hi")
        pairs.append([parse_rational(p, field) for p in parts])
    return _normalize_field(pairs, field)


def format_psi(support: IntervalSet) -> str:
    return ";".join(f"{format_rational(lo)},{format_rational(hi)}" for lo, hi in support)


def _normalize_field(pairs: List[List[Fraction]], field: str) -> IntervalSet:
    try:
        return normalize(pairs)
    except (OutOfRangeError, MalformedPairError) as exc:
        raise InvalidScenarioError([f"{field}: {exc}"])


def parse_support(raw: Any, field: str) -> IntervalSet:
    """Lista JSON de pares [lo, hi]"""
    if raw is None:
        return IntervalSet()
    if not isinstance(raw, list):
        raise ScenarioFormatError(field, "lista de pares [lo, hi] esperada")
    pairs = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ScenarioFormatError(field, f"par inválido {item!r}")
        pairs.append([parse_rational(item[0], field), parse_rational(item[1], field)])
    return _normalize_field(pairs, field)


def scenario_from_dict(data: Dict[str, Any]) -> Scenario:
    """Constrói e valida um Scenario a partir do documento

    Raises:
        ScenarioFormatError: campo ausente ou ilegível
        InvalidScenarioError: valores fora das faixas permitidas
    """
    if not isinstance(data, dict):
        raise ScenarioFormatError("documento", "objeto JSON esperado")

    values: Dict[str, Any] = {}
    for name in LENGTH_FIELDS:
        if name not in data:
            raise ScenarioFormatError(name, "campo obrigatório ausente")
        values[name] = parse_rational(data[name], name)
    for name in SUPPORT_FIELDS:
        values[name] = parse_support(data.get(name), name)

    label = data.get("label", "")
    if not isinstance(label, str):
        raise ScenarioFormatError("label", "texto esperado")

    unknown = set(data) - set(LENGTH_FIELDS) - set(SUPPORT_FIELDS) - {"label"}
    if unknown:
        logger.debug("Campos ignorados no cenário: %s", sorted(unknown))

    return ensure_valid(Scenario(label=label, **values))


def scenario_to_dict(s: Scenario) -> Dict[str, Any]:
    """Documento JSON com racionais como strings exatas"""
    data: Dict[str, Any] = {name: format_rational(getattr(s, name)) for name in LENGTH_FIELDS}
    for name in SUPPORT_FIELDS:
        data[name] = [[format_rational(lo), format_rational(hi)] for lo, hi in getattr(s, name)]
    data["label"] = s.label
    return data


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Lê um cenário de arquivo

    Raises:
        FileNotFoundError: arquivo inexistente
        ScenarioFormatError: JSON inválido ou campo ilegível
        InvalidScenarioError: cenário fora das invariantes
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ScenarioFormatError(str(path), f"JSON inválido ({exc.msg}, linha {exc.lineno})")
    return scenario_from_dict(data)


def save_scenario(path: Union[str, Path], s: Scenario) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(scenario_to_dict(s), f, ensure_ascii=False, indent=2)
        f.write("\n")
