"""
DuplexVision - Cenário de Rede
Descrição da rede de três nós e dimensões dos espaços de sinal e dos operadores

Convenções:
- Fluxo 1: uplink, T1 (usuário 1) -> R1 (receptor da estação base)
- Fluxo 2: downlink, T2 (transmissor da estação base) -> R2 (usuário 2)
- H12 é a auto-interferência, H21 a interferência entre nós
- Os comprimentos guardados são MEIOS comprimentos L; toda fórmula escreve 2L
"""

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Dict, List

from modules.errors import InvalidScenarioError
from modules.interval_set import EMPTY, IntervalSet, RationalLike, as_rational

LENGTH_FIELDS: List[str] = ["l_t1", "l_t2", "l_r1", "l_r2"]
SUPPORT_FIELDS: List[str] = [
    "psi_t11", "psi_t21",
    "psi_t22", "psi_t12",
    "psi_r11", "psi_r12",
    "psi_r22", "psi_r21",
]

# Troca de rótulos fluxo 1 <-> fluxo 2
_SWAP_MAP: Dict[str, str] = {
    "l_t1": "l_t2", "l_t2": "l_t1",
    "l_r1": "l_r2", "l_r2": "l_r1",
    "psi_t11": "psi_t22", "psi_t22": "psi_t11",
    "psi_t21": "psi_t12", "psi_t12": "psi_t21",
    "psi_r11": "psi_r22", "psi_r22": "psi_r11",
    "psi_r12": "psi_r21", "psi_r21": "psi_r12",
}


def pos(x: Fraction) -> Fraction:
    """(x)+ = max(x, 0)"""
    return x if x > 0 else Fraction(0)


@dataclass(frozen=True)
class Scenario:
    """Rede completa: quatro meios comprimentos e oito suportes"""
    l_t1: Fraction
    l_t2: Fraction
    l_r1: Fraction
    l_r2: Fraction
    psi_t11: IntervalSet = EMPTY
    psi_t21: IntervalSet = EMPTY
    psi_t22: IntervalSet = EMPTY
    psi_t12: IntervalSet = EMPTY
    psi_r11: IntervalSet = EMPTY
    psi_r12: IntervalSet = EMPTY
    psi_r22: IntervalSet = EMPTY
    psi_r21: IntervalSet = EMPTY
    label: str = ""

    def supports(self) -> Dict[str, IntervalSet]:
        return {name: getattr(self, name) for name in SUPPORT_FIELDS}

    def lengths(self) -> Dict[str, Fraction]:
        return {name: getattr(self, name) for name in LENGTH_FIELDS}


@dataclass(frozen=True)
class OperatorDims:
    """Dimensões dos espaços de sinal e dos operadores H_ij"""
    dim_t1: Fraction
    dim_t2: Fraction
    dim_r1: Fraction
    dim_r2: Fraction
    rank_h11: Fraction
    rank_h12: Fraction
    rank_h21: Fraction
    rank_h22: Fraction
    null_h12: Fraction
    null_h21: Fraction
    perp_h11: Fraction
    perp_h22: Fraction

    def as_dict(self) -> Dict[str, Fraction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def swapped(self) -> "OperatorDims":
        """Campos correspondentes após trocar os rótulos dos fluxos"""
        return OperatorDims(
            dim_t1=self.dim_t2, dim_t2=self.dim_t1,
            dim_r1=self.dim_r2, dim_r2=self.dim_r1,
            rank_h11=self.rank_h22, rank_h22=self.rank_h11,
            rank_h12=self.rank_h21, rank_h21=self.rank_h12,
            null_h12=self.null_h21, null_h21=self.null_h12,
            perp_h11=self.perp_h22, perp_h22=self.perp_h11,
        )

    def scaled(self, c: RationalLike) -> "OperatorDims":
        factor = as_rational(c)
        return OperatorDims(**{k: v * factor for k, v in self.as_dict().items()})


def make_scenario(label: str = "", **values) -> Scenario:
    """Monta um Scenario convertendo comprimentos para Fraction"""
    kwargs = dict(values)
    for name in LENGTH_FIELDS:
        kwargs[name] = as_rational(kwargs[name])
    return Scenario(label=label, **kwargs)


def validate(s: Scenario) -> List[str]:
    """Lista todas as invariantes violadas (vazia quando o cenário é válido)"""
    violations = []
    for name in LENGTH_FIELDS:
        value = getattr(s, name)
        if not isinstance(value, Fraction) or isinstance(value, bool):
            violations.append(f"{name} deve ser racional (recebido {type(value).__name__})")
        elif value <= 0:
            violations.append(f"{name} deve ser > 0 (recebido {value})")
    for name in SUPPORT_FIELDS:
        if not isinstance(getattr(s, name), IntervalSet):
            violations.append(f"{name} deve ser IntervalSet")
    return violations


def ensure_valid(s: Scenario) -> Scenario:
    violations = validate(s)
    if violations:
        raise InvalidScenarioError(violations)
    return s


def p2p_dof(l_t: RationalLike, psi_t: IntervalSet, l_r: RationalLike, psi_r: IntervalSet) -> Fraction:
    """Graus de liberdade de um enlace ponto a ponto"""
    l_t, l_r = as_rational(l_t), as_rational(l_r)
    return min(2 * l_t * psi_t.measure, 2 * l_r * psi_r.measure)


def operator_dims(s: Scenario) -> OperatorDims:
    """Todas as dimensões de espaço de sinal e de operador, exatas"""
    ensure_valid(s)

    t11, t21, t22, t12 = s.psi_t11, s.psi_t21, s.psi_t22, s.psi_t12
    r11, r12, r22, r21 = s.psi_r11, s.psi_r12, s.psi_r22, s.psi_r21

    return OperatorDims(
        dim_t1=2 * s.l_t1 * (t11 | t21).measure,
        dim_t2=2 * s.l_t2 * (t22 | t12).measure,
        dim_r1=2 * s.l_r1 * (r11 | r12).measure,
        dim_r2=2 * s.l_r2 * (r22 | r21).measure,
        rank_h11=p2p_dof(s.l_t1, t11, s.l_r1, r11),
        rank_h12=p2p_dof(s.l_t2, t12, s.l_r1, r12),
        rank_h21=p2p_dof(s.l_t1, t21, s.l_r2, r21),
        rank_h22=p2p_dof(s.l_t2, t22, s.l_r2, r22),
        null_h12=(2 * s.l_t2 * (t22 - t12).measure
                  + 2 * pos(s.l_t2 * t12.measure - s.l_r1 * r12.measure)),
        null_h21=(2 * s.l_t1 * (t11 - t21).measure
                  + 2 * pos(s.l_t1 * t21.measure - s.l_r2 * r21.measure)),
        perp_h11=(2 * s.l_r1 * (r12 - r11).measure
                  + 2 * pos(s.l_r1 * r11.measure - s.l_t1 * t11.measure)),
        perp_h22=(2 * s.l_r2 * (r21 - r22).measure
                  + 2 * pos(s.l_r2 * r22.measure - s.l_t2 * t22.measure)),
    )


def swap_flows(s: Scenario) -> Scenario:
    """Troca T1<->T2 e R1<->R2, levando junto os suportes"""
    values = {name: getattr(s, _SWAP_MAP[name]) for name in LENGTH_FIELDS + SUPPORT_FIELDS}
    return Scenario(label=s.label, **values)


def scale_lengths(s: Scenario, c: RationalLike) -> Scenario:
    factor = as_rational(c)
    if factor <= 0:
        raise ValueError("Fator de escala deve ser > 0")
    return replace(s, **{name: getattr(s, name) * factor for name in LENGTH_FIELDS})
