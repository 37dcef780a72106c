"""
DuplexVision - Biblioteca de Cenários
Casos de referência, varreduras e gerador de cenários aleatórios

Convenção dos casos simétricos: os suportes diretos (T11, R11, T22, R22)
recebem Ψ_fwd e os de interferência (T12, R12, T21, R21) recebem Ψ_back.
Arranjos da estação base são T2 e R1; os dos usuários, T1 e R2.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from modules.dof_region import Classification, FdBounds, compare, fd_bounds, fdp_bounds
from modules.errors import InvalidScenarioError
from modules.interval_set import IntervalSet, RationalLike, as_rational, normalize
from modules.network_scenario import LENGTH_FIELDS, SUPPORT_FIELDS, Scenario, ensure_valid
from modules.scenario_io import parse_psi

logger = logging.getLogger(__name__)

PsiLike = Union[IntervalSet, str]


class CaseKind(Enum):
    FULLY_OVERLAPPED = "fully_overlapped"
    SYMMETRIC_SPREAD = "symmetric_spread"
    ASYMMETRIC_ARRAYS = "asymmetric_arrays"


CASE_ALIASES: Dict[str, CaseKind] = {
    "a": CaseKind.FULLY_OVERLAPPED,
    "b": CaseKind.SYMMETRIC_SPREAD,
    "c": CaseKind.ASYMMETRIC_ARRAYS,
}


class SweepGeometry(Enum):
    SLIDING = "sliding"      # Ψ_fwd = [-1+w, w) contra Ψ_back = [0, 1)
    MIRRORED = "mirrored"    # Ψ_back = [-1, 0) contra Ψ_fwd = [-w, 1-w)


# ============================================
# CASOS
# ============================================
def _as_psi(value: PsiLike, name: str) -> IntervalSet:
    return parse_psi(value, name) if isinstance(value, str) else value


def fully_overlapped(l_bs: RationalLike, l_usr: RationalLike, psi: PsiLike) -> Scenario:
    """Todos os oito suportes iguais a psi"""
    psi = _as_psi(psi, "psi")
    if psi.is_empty:
        raise InvalidScenarioError(["psi deve ser não vazio"])
    l_bs, l_usr = as_rational(l_bs), as_rational(l_usr)
    return ensure_valid(Scenario(
        l_t1=l_usr, l_t2=l_bs, l_r1=l_bs, l_r2=l_usr,
        **{name: psi for name in SUPPORT_FIELDS},
        label=f"fully_overlapped(l_bs={l_bs}, l_usr={l_usr}, psi={psi})",
    ))


def asymmetric_arrays(l_bs: RationalLike, l_usr: RationalLike,
                      psi_fwd: PsiLike, psi_back: PsiLike) -> Scenario:
    """Espalhamento simétrico com arranjos de tamanhos diferentes"""
    fwd, back = _as_psi(psi_fwd, "psi_fwd"), _as_psi(psi_back, "psi_back")
    l_bs, l_usr = as_rational(l_bs), as_rational(l_usr)
    return ensure_valid(Scenario(
        l_t1=l_usr, l_t2=l_bs, l_r1=l_bs, l_r2=l_usr,
        psi_t11=fwd, psi_r11=fwd, psi_t22=fwd, psi_r22=fwd,
        psi_t12=back, psi_r12=back, psi_t21=back, psi_r21=back,
        label=f"asymmetric_arrays(l_bs={l_bs}, l_usr={l_usr}, fwd={fwd}, back={back})",
    ))


def symmetric_spread(l: RationalLike, psi_fwd: PsiLike, psi_back: PsiLike) -> Scenario:
    """Espalhamento simétrico com os quatro arranjos iguais"""
    s = asymmetric_arrays(l, l, psi_fwd, psi_back)
    return replace(s, label=f"symmetric_spread(l={s.l_t1}, fwd={s.psi_t11}, back={s.psi_t12})")


_CASE_BUILDERS = {
    CaseKind.FULLY_OVERLAPPED: (fully_overlapped, ("l_bs", "l_usr", "psi")),
    CaseKind.SYMMETRIC_SPREAD: (symmetric_spread, ("l", "psi_fwd", "psi_back")),
    CaseKind.ASYMMETRIC_ARRAYS: (asymmetric_arrays, ("l_bs", "l_usr", "psi_fwd", "psi_back")),
}


def case_parameters(name: str) -> Tuple[str, ...]:
    return _CASE_BUILDERS[resolve_case(name)][1]


def resolve_case(name: str) -> CaseKind:
    key = name.strip().lower()
    if key in CASE_ALIASES:
        return CASE_ALIASES[key]
    try:
        return CaseKind(key)
    except ValueError:
        raise KeyError(f"Caso desconhecido: {name}")


def build_case(name: str, **params) -> Scenario:
    """Cenário por nome: embutido (sem parâmetros) ou caso paramétrico a/b/c

    Raises:
        KeyError: nome desconhecido
        InvalidScenarioError: parâmetro ausente ou inválido
    """
    if name in BUILTIN_SCENARIOS and not params:
        return BUILTIN_SCENARIOS[name]

    builder, expected = _CASE_BUILDERS[resolve_case(name)]
    missing = [p for p in expected if params.get(p) is None]
    if missing:
        raise InvalidScenarioError([f"parâmetro ausente: {p}" for p in missing])
    unexpected = sorted(set(params) - set(expected))
    if unexpected:
        logger.warning("Parâmetros ignorados para %s: %s", name, unexpected)
    return builder(*(params[p] for p in expected))


# ============================================
# FORMAS FECHADAS
# ============================================
def fully_overlapped_bounds(l_bs: RationalLike, l_usr: RationalLike,
                            psi: IntervalSet) -> Tuple[FdBounds, FdBounds]:
    """(FD, FD') em forma fechada para suportes totalmente sobrepostos"""
    l_bs, l_usr = as_rational(l_bs), as_rational(l_usr)
    size = psi.measure
    per_flow = size * min(2 * l_bs, 2 * l_usr)
    fd = FdBounds(per_flow, per_flow, per_flow)
    fdp = FdBounds(per_flow, per_flow, 2 * l_bs * size)
    return fd, fdp


def symmetric_spread_bounds(l: RationalLike, psi_fwd: IntervalSet, psi_back: IntervalSet) -> FdBounds:
    """FD (igual a FD') em forma fechada para arranjos iguais"""
    l = as_rational(l)
    per_flow = 2 * l * psi_fwd.measure
    d_sum = 2 * l * (2 * (psi_fwd - psi_back).measure + psi_back.measure)
    return FdBounds(per_flow, per_flow, d_sum)


def symmetric_spread_is_rectangular(psi_fwd: IntervalSet, psi_back: IntervalSet) -> bool:
    return (psi_back - psi_fwd).measure >= (psi_fwd & psi_back).measure


# ============================================
# CENÁRIOS EMBUTIDOS
# ============================================
def _mixed_support() -> Scenario:
    half_axis = normalize([("-1/2", "1/2")])
    return Scenario(
        l_t1=Fraction(1), l_r1=Fraction(1, 2), l_t2=Fraction(1), l_r2=Fraction(1),
        psi_t11=normalize([(0, 1)]), psi_r11=normalize([(0, 1)]),
        psi_r12=normalize([(0, "2/5")]),
        psi_t22=half_axis, psi_t12=normalize([(0, "1/2")]),
        psi_r22=half_axis,
        psi_r21=normalize([(0, "1/2")]), psi_t21=normalize([(0, "1/2")]),
        label="mixed_support",
    )


def _interference_free() -> Scenario:
    unit = normalize([(0, 1)])
    half = Fraction(1, 2)
    return Scenario(
        l_t1=half, l_t2=half, l_r1=half, l_r2=half,
        psi_t11=unit, psi_r11=unit, psi_t22=unit, psi_r22=unit,
        label="interference_free",
    )


BUILTIN_SCENARIOS: Dict[str, Scenario] = {
    "fully_overlapped": replace(fully_overlapped(1, "1/2", normalize([(0, 1)])), label="fully_overlapped"),
    "symmetric_spread": replace(
        symmetric_spread("1/2", normalize([("-1/2", "1/2")]), normalize([(0, 1)])), label="symmetric_spread"),
    "mixed_support": _mixed_support(),
    "interference_free": _interference_free(),
}


# ============================================
# CENÁRIOS ALEATÓRIOS
# ============================================
class ScenarioSampler:
    """Gerador de cenários racionais com denominadores limitados"""

    def __init__(self, rng: np.random.Generator, max_denominator: int = 8,
                 max_pieces: int = 2, max_length: int = 2):
        if max_denominator < 1:
            raise ValueError("max_denominator deve ser >= 1")
        self.rng = rng
        self.max_denominator = max_denominator
        self.max_pieces = max_pieces
        self.max_length = max_length

    def _grid_point(self) -> Fraction:
        den = self.max_denominator
        return Fraction(int(self.rng.integers(-den, den + 1)), den)

    def _support(self) -> IntervalSet:
        n_pieces = int(self.rng.integers(0, self.max_pieces + 1))
        pairs = []
        for _ in range(n_pieces):
            a, b = sorted((self._grid_point(), self._grid_point()))
            pairs.append((a, b))
        return normalize(pairs)

    def _length(self) -> Fraction:
        den = self.max_denominator
        return Fraction(int(self.rng.integers(1, self.max_length * den + 1)), den)

    def sample(self, label: str = "") -> Scenario:
        lengths = {name: self._length() for name in LENGTH_FIELDS}
        supports = {name: self._support() for name in SUPPORT_FIELDS}
        return Scenario(label=label, **lengths, **supports)

    def sample_many(self, n: int, prefix: str = "random") -> List[Scenario]:
        return [self.sample(f"{prefix}-{i}") for i in range(n)]


def random_scenario(rng: np.random.Generator, max_denominator: int = 8) -> Scenario:
    """Atalho para um único cenário aleatório"""
    return ScenarioSampler(rng, max_denominator).sample("random")


# ============================================
# VARREDURAS
# ============================================
@dataclass
class SweepRow:
    param: Fraction
    d1_max: Fraction
    d2_max: Fraction
    d_sum_fd: Fraction
    d_sum_fdp: Fraction
    classification: Classification
    rect_fd: bool
    scenario: Scenario


@dataclass
class SweepResult:
    parameter: str
    rows: List[SweepRow] = field(default_factory=list)
    settings: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        values = [row.param for row in self.rows]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("Valores do parâmetro devem ser estritamente crescentes")


def sweep_row(param: Fraction, s: Scenario) -> SweepRow:
    fd, fdp = fd_bounds(s), fdp_bounds(s)
    classification = compare(s)
    return SweepRow(
        param=param,
        d1_max=fd.d1_max,
        d2_max=fd.d2_max,
        d_sum_fd=fd.effective_sum,
        d_sum_fdp=fdp.effective_sum,
        classification=classification,
        rect_fd=classification.fd_rectangular,
        scenario=s,
    )


def overlap_supports(w: Fraction, geometry: SweepGeometry = SweepGeometry.SLIDING) -> Tuple[IntervalSet, IntervalSet]:
    """(Ψ_fwd, Ψ_back) de medida 1 cada, com sobreposição w"""
    if not 0 <= w <= 1:
        raise ValueError(f"Sobreposição deve estar em [0, 1] (recebido {w})")
    if geometry is SweepGeometry.SLIDING:
        return normalize([(w - 1, w)]), normalize([(0, 1)])
    return normalize([(-w, 1 - w)]), normalize([(-1, 0)])


def overlap_sweep(l: RationalLike, steps: int,
                  geometry: Union[SweepGeometry, str] = SweepGeometry.SLIDING) -> SweepResult:
    """Sobreposição w = 0 ... 1 em `steps` pontos igualmente espaçados"""
    if steps < 2:
        raise ValueError("steps deve ser >= 2")
    geometry = SweepGeometry(geometry)
    l = as_rational(l)

    rows = []
    for i in range(steps):
        w = Fraction(i, steps - 1)
        fwd, back = overlap_supports(w, geometry)
        rows.append(sweep_row(w, symmetric_spread(l, fwd, back)))
    logger.info("Varredura de sobreposição: %d pontos, L=%s, geometria %s", steps, l, geometry.value)
    return SweepResult("overlap", rows, {"l": str(l), "steps": str(steps), "geometry": geometry.value})


def length_sweep(l_usr: RationalLike, l_bs_values: Sequence[RationalLike],
                 psi_fwd: IntervalSet, psi_back: IntervalSet) -> SweepResult:
    """Uma linha por L_BS com L_USR fixo"""
    l_usr = as_rational(l_usr)
    values = [as_rational(v) for v in l_bs_values]
    if not values:
        raise ValueError("Informe ao menos um valor de l_bs")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("Valores de l_bs devem ser estritamente crescentes")

    rows = [sweep_row(l_bs, asymmetric_arrays(l_bs, l_usr, psi_fwd, psi_back)) for l_bs in values]
    return SweepResult("l_bs", rows, {
        "l_usr": str(l_usr),
        "psi_fwd": str(psi_fwd),
        "psi_back": str(psi_back),
    })


def default_length_supports() -> Tuple[IntervalSet, IntervalSet]:
    """Suportes totalmente sobrepostos em [0, 1)"""
    unit = normalize([(0, 1)])
    return unit, unit
