"""
DuplexVision - Oráculo Matricial
Verificação numérica independente das dimensões analíticas

O eixo de cossenos diretores é discretizado na resolução dos arranjos
(multiplicada pela densidade G). Cada canal H_ij vira uma matriz genérica
com entradas normais padrão apenas no bloco suportado; postos, nulidades e
complementos são obtidos por valores singulares e comparados com as
fórmulas exatas.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import subspace_angles, svd, svdvals

from modules.dof_region import achievable_corners, bound_corners, zero_forcing_conditions
from modules.errors import AmbiguousCornerError, IllConditionedError, NonIntegralGridError
from modules.interval_set import IntervalSet, breakpoints
from modules.network_scenario import OperatorDims, Scenario, ensure_valid, operator_dims
from modules.run_config import DEFAULT_ORACLE_SETTINGS, OracleSettings

logger = logging.getLogger(__name__)

# extremo -> (campo de comprimento, suporte do enlace direto, suporte de interferência)
ENDPOINTS: Dict[str, Tuple[str, str, str]] = {
    "T1": ("l_t1", "psi_t11", "psi_t21"),
    "T2": ("l_t2", "psi_t22", "psi_t12"),
    "R1": ("l_r1", "psi_r11", "psi_r12"),
    "R2": ("l_r2", "psi_r22", "psi_r21"),
}

# canal -> (receptor, suporte de chegada, transmissor, suporte de partida)
CHANNELS: Dict[str, Tuple[str, str, str, str]] = {
    "h11": ("R1", "psi_r11", "T1", "psi_t11"),
    "h12": ("R1", "psi_r12", "T2", "psi_t12"),
    "h21": ("R2", "psi_r21", "T1", "psi_t21"),
    "h22": ("R2", "psi_r22", "T2", "psi_t22"),
}


# ============================================
# DISCRETIZAÇÃO
# ============================================
@dataclass(frozen=True)
class Atom:
    """Intervalo elementar entre dois extremos consecutivos da sobreposição"""
    lo: Fraction
    hi: Fraction

    @property
    def measure(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class EndpointGrid:
    """Átomos de um extremo (transmissor ou receptor) e suas dimensões inteiras"""
    name: str
    length: Fraction
    support: IntervalSet
    atoms: Tuple[Atom, ...]
    dims: Tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.dims)

    def indices_in(self, support: IntervalSet) -> np.ndarray:
        """Índices de linha/coluna dos átomos contidos em support"""
        indices: List[int] = []
        offset = 0
        for atom, dim in zip(self.atoms, self.dims):
            if support.contains(atom.lo):
                indices.extend(range(offset, offset + dim))
            offset += dim
        return np.asarray(indices, dtype=int)


@dataclass(frozen=True)
class DiscretizedScenario:
    scenario: Scenario
    grid_density: int
    atoms: Tuple[Atom, ...]
    grids: Dict[str, EndpointGrid]


def _elementary_atoms(s: Scenario) -> List[Atom]:
    cuts = breakpoints(s.supports().values())
    return [Atom(lo, hi) for lo, hi in zip(cuts, cuts[1:])]


def _endpoint_atoms(s: Scenario, name: str, elementary: List[Atom]) -> Tuple[Fraction, IntervalSet, List[Atom]]:
    length_field, own, cross = ENDPOINTS[name]
    support = getattr(s, own) | getattr(s, cross)
    # átomos elementares estão inteiros dentro ou fora de cada suporte
    inside = [atom for atom in elementary if support.contains(atom.lo)]
    return getattr(s, length_field), support, inside


def suggest_density(s: Scenario) -> int:
    """Menor G que torna inteira toda dimensão de bloco 2L|átomo|G"""
    ensure_valid(s)
    elementary = _elementary_atoms(s)
    denominators = [1]
    for name in ENDPOINTS:
        length, _, atoms = _endpoint_atoms(s, name, elementary)
        denominators.extend((2 * length * atom.measure).denominator for atom in atoms)
    return reduce(math.lcm, denominators)


def discretize(s: Scenario, g: int) -> DiscretizedScenario:
    """Partição atômica de cada extremo na densidade g

    Raises:
        NonIntegralGridError: alguma dimensão de bloco não é inteira
    """
    ensure_valid(s)
    if g < 1:
        raise ValueError(f"Densidade deve ser >= 1 (recebido {g})")

    elementary = _elementary_atoms(s)
    grids: Dict[str, EndpointGrid] = {}
    for name in ENDPOINTS:
        length, support, atoms = _endpoint_atoms(s, name, elementary)
        dims = []
        for atom in atoms:
            value = 2 * length * atom.measure * g
            if value.denominator != 1:
                raise NonIntegralGridError(g, f"{name} [{atom.lo}, {atom.hi})", value, suggest_density(s))
            dims.append(int(value))
        grids[name] = EndpointGrid(name, length, support, tuple(atoms), tuple(dims))

    return DiscretizedScenario(s, g, tuple(elementary), grids)


# ============================================
# CANAIS GENÉRICOS
# ============================================
@dataclass(frozen=True)
class ChannelSet:
    h11: np.ndarray
    h12: np.ndarray
    h21: np.ndarray
    h22: np.ndarray

    def as_dict(self) -> Dict[str, np.ndarray]:
        return {"h11": self.h11, "h12": self.h12, "h21": self.h21, "h22": self.h22}


def sample_channels(d: DiscretizedScenario, seed: int) -> ChannelSet:
    """Matrizes H_ij com bloco suportado normal padrão e zeros fora dele

    A ordem de amostragem é fixa (H11, H12, H21, H22), então a mesma semente
    reproduz as mesmas matrizes.
    """
    rng = np.random.default_rng(seed)
    matrices = {}
    for key, (rx, rx_support, tx, tx_support) in CHANNELS.items():
        rx_grid, tx_grid = d.grids[rx], d.grids[tx]
        rows = rx_grid.indices_in(getattr(d.scenario, rx_support))
        cols = tx_grid.indices_in(getattr(d.scenario, tx_support))
        h = np.zeros((rx_grid.size, tx_grid.size))
        h[np.ix_(rows, cols)] = rng.standard_normal((len(rows), len(cols)))
        matrices[key] = h
    return ChannelSet(**matrices)


# ============================================
# ÁLGEBRA LINEAR NUMÉRICA
# ============================================
def numerical_rank(m: np.ndarray, settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
                   scale: Optional[float] = None) -> int:
    """Posto por valores singulares acima de rank_rtol * sigma_max

    Com `scale`, o limiar usa max(scale, sigma_max) como referência. Produtos
    como Q^T H que se anulam ficam com sigma_max de arredondamento; medidos
    contra a norma dos fatores, esse ruído não conta como posto.

    Raises:
        IllConditionedError: valor singular a menos de gap_ratio do limiar
    """
    if m.size == 0:
        return 0
    sv = svdvals(m)
    if sv[0] == 0.0:
        return 0
    reference = sv[0] if scale is None else max(scale, sv[0])
    threshold = settings.rank_threshold(reference)
    near = (sv > threshold / settings.gap_ratio) & (sv < threshold * settings.gap_ratio)
    if np.any(near):
        raise IllConditionedError(
            f"Valores singulares {sv[near].tolist()} perto do limiar {threshold:.3e}"
        )
    return int(np.count_nonzero(sv > threshold))


def range_basis(m: np.ndarray, settings: OracleSettings = DEFAULT_ORACLE_SETTINGS) -> np.ndarray:
    """Base ortonormal de R(m)"""
    rank = numerical_rank(m, settings)
    if rank == 0:
        return np.zeros((m.shape[0], 0))
    u, _, _ = svd(m, full_matrices=False)
    return u[:, :rank]


def null_basis(m: np.ndarray, settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
               scale: Optional[float] = None) -> np.ndarray:
    """Base ortonormal de N(m)"""
    n = m.shape[1]
    if n == 0:
        return np.zeros((0, 0))
    rank = numerical_rank(m, settings, scale)
    if rank == 0:
        return np.eye(n)
    _, _, vh = svd(m, full_matrices=True)
    return vh[rank:].T


def spectral_norm(m: np.ndarray) -> float:
    """Maior valor singular; 0 para matriz vazia"""
    return float(svdvals(m)[0]) if m.size else 0.0


def complement_basis(m: np.ndarray, settings: OracleSettings = DEFAULT_ORACLE_SETTINGS) -> np.ndarray:
    """Base ortonormal de R(m)^perp dentro do espaço de recepção"""
    return null_basis(m.T, settings)


def intersection_dim(a: np.ndarray, b: np.ndarray, settings: OracleSettings = DEFAULT_ORACLE_SETTINGS) -> int:
    """dim(span a ∩ span b) contando ângulos principais abaixo de angle_tol"""
    if a.shape[1] == 0 or b.shape[1] == 0:
        return 0
    angles = subspace_angles(a, b)
    return int(np.count_nonzero(angles < settings.angle_tol))


# ============================================
# DIMENSÕES
# ============================================
def _integer_dims(d: DiscretizedScenario, channels: ChannelSet, settings: OracleSettings) -> Dict[str, int]:
    sizes = {name: grid.size for name, grid in d.grids.items()}
    ranks = {key: numerical_rank(h, settings) for key, h in channels.as_dict().items()}
    return {
        "dim_t1": sizes["T1"],
        "dim_t2": sizes["T2"],
        "dim_r1": sizes["R1"],
        "dim_r2": sizes["R2"],
        "rank_h11": ranks["h11"],
        "rank_h12": ranks["h12"],
        "rank_h21": ranks["h21"],
        "rank_h22": ranks["h22"],
        "null_h12": sizes["T2"] - ranks["h12"],
        "null_h21": sizes["T1"] - ranks["h21"],
        "perp_h11": sizes["R1"] - ranks["h11"],
        "perp_h22": sizes["R2"] - ranks["h22"],
    }


def oracle_dims(d: DiscretizedScenario, seed: int,
                settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
                channels: Optional[ChannelSet] = None) -> OperatorDims:
    """Dimensões numéricas já divididas por G"""
    channels = channels if channels is not None else sample_channels(d, seed)
    counts = _integer_dims(d, channels, settings)
    logger.debug("Semente %d, G=%d: %s", seed, d.grid_density, counts)
    return OperatorDims(**{k: Fraction(v, d.grid_density) for k, v in counts.items()})


@dataclass(frozen=True)
class Flow2Probe:
    """Contagens inteiras da sonda do canto do fluxo 2"""
    preimage_dim: int
    direct_preimage_dim: int
    flow1_interference_dim: int
    recoverable_dim: int
    deliverable: int


def probe_flow2(d: DiscretizedScenario, seed: int,
                settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
                channels: Optional[ChannelSet] = None) -> Flow2Probe:
    """Quanto o fluxo 2 entrega com o fluxo 1 no máximo

    O fluxo 2 transmite na pré-imagem P12 de R(H11)^perp por H12, de modo que a
    auto-interferência cai fora do sinal de subida. O fluxo 1 usa N(H21) o
    quanto puder; o restante interfere em R2, que projeta essa interferência fora.
    """
    channels = channels if channels is not None else sample_channels(d, seed)
    h11, h12, h21, h22 = channels.h11, channels.h12, channels.h21, channels.h22
    s, g = d.scenario, d.grid_density

    # pré-imagem: N(H12) + (R(H11)^perp ∩ R(H12))
    rank_h12 = numerical_rank(h12, settings)
    perp_h11 = complement_basis(h11, settings)
    preimage_dim = (h12.shape[1] - rank_h12) + intersection_dim(perp_h11, range_basis(h12, settings), settings)

    q11 = range_basis(h11, settings)
    # Q11^T H12 pode ser zero com ruído de arredondamento: posto medido contra ||H12||
    p12 = null_basis(q11.T @ h12, settings, spectral_norm(h12))
    if p12.shape[1] != preimage_dim:
        logger.warning("dim P12 diverge (semente %d): ângulos=%d, núcleo direto=%d",
                       seed, preimage_dim, p12.shape[1])

    # fluxo 1 em d1_max com o máximo de streams em N(H21)
    rank_h11 = q11.shape[1]
    n21 = null_basis(h21, settings)
    inside = numerical_rank(h11 @ n21, settings, spectral_norm(h11)) if n21.shape[1] else 0
    extra = rank_h11 - inside

    r2_rows = h22.shape[0]
    if extra > 0:
        row21 = range_basis(h21.T, settings)
        mix = np.random.default_rng([seed, 1]).standard_normal((row21.shape[1], extra))
        q_int = range_basis(h21 @ row21 @ mix, settings)
    else:
        q_int = np.zeros((r2_rows, 0))
    projector = np.eye(r2_rows) - q_int @ q_int.T

    recoverable = 0
    if p12.shape[1]:
        recoverable = numerical_rank(projector @ h22 @ p12, settings, spectral_norm(h22))
    caps = (2 * s.l_t2 * s.psi_t22.measure * g, 2 * s.l_r2 * s.psi_r22.measure * g)
    deliverable = min([preimage_dim, recoverable] + [int(c) for c in caps])

    logger.debug("Semente %d: P12=%d, interferência=%d, recuperável=%d",
                 seed, preimage_dim, q_int.shape[1], recoverable)
    return Flow2Probe(preimage_dim, p12.shape[1], q_int.shape[1], recoverable, deliverable)


def oracle_corner_flow2(d: DiscretizedScenario, seed: int,
                        settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
                        channels: Optional[ChannelSet] = None) -> Fraction:
    """d'2 numérico: dimensão entregável do fluxo 2, dividida por G"""
    probe = probe_flow2(d, seed, settings, channels)
    return Fraction(probe.deliverable, d.grid_density)


# ============================================
# VERIFICAÇÃO
# ============================================
@dataclass
class OracleReport:
    analytic: OperatorDims
    numerical: Optional[OperatorDims]
    preimage_dim_numerical: Optional[Fraction]
    preimage_dim_analytic: Fraction
    seed: int
    max_rank_gap: int
    trials: int = 0
    grid_density: int = 1
    ill_conditioned_trials: int = 0
    corner_conditions_hold: bool = False
    corner_match: bool = True
    preimage_space_dim: Optional[Fraction] = None
    mismatches: List[str] = field(default_factory=list)

    @property
    def completed_trials(self) -> int:
        return self.trials - self.ill_conditioned_trials

    @property
    def passed(self) -> bool:
        return (self.max_rank_gap == 0
                and self.completed_trials > 0
                and (self.corner_match or not self.corner_conditions_hold))


def analytic_corner_flow2(s: Scenario) -> Fraction:
    """d'2 das fórmulas explícitas; no empate ambíguo, o dos limitantes"""
    try:
        return achievable_corners(s).prime[1]
    except AmbiguousCornerError as exc:
        logger.warning("Usando canto dos limitantes: %s", exc)
        return bound_corners(s)[0][1]


def verify(s: Scenario, trials: int = 20, seed: int = 0, density: Optional[int] = None,
           settings: OracleSettings = DEFAULT_ORACLE_SETTINGS,
           analytic: Optional[OperatorDims] = None) -> OracleReport:
    """Roda o oráculo em `trials` sementes consecutivas e compara com o analítico

    Divergências entram no relatório; nada aqui levanta por discordância.
    """
    ensure_valid(s)
    if trials < 1:
        raise ValueError("trials deve ser >= 1")

    g = density if density is not None else suggest_density(s)
    d = discretize(s, g)
    analytic = analytic if analytic is not None else operator_dims(s)
    expected = {k: v * g for k, v in analytic.as_dict().items()}
    corner_expected = analytic_corner_flow2(s)

    report = OracleReport(
        analytic=analytic,
        numerical=None,
        preimage_dim_numerical=None,
        preimage_dim_analytic=corner_expected,
        seed=seed,
        max_rank_gap=0,
        trials=trials,
        grid_density=g,
        corner_conditions_hold=zero_forcing_conditions(s),
    )

    for trial_seed in range(seed, seed + trials):
        channels = sample_channels(d, trial_seed)
        try:
            counts = _integer_dims(d, channels, settings)
            probe = probe_flow2(d, trial_seed, settings, channels)
        except IllConditionedError as exc:
            report.ill_conditioned_trials += 1
            logger.warning("Tentativa %d mal condicionada: %s", trial_seed, exc)
            continue

        for name, value in counts.items():
            gap = abs(Fraction(value) - expected[name])
            if gap:
                report.mismatches.append(f"seed={trial_seed} {name}: {value} != {expected[name]}")
            report.max_rank_gap = max(report.max_rank_gap, math.ceil(gap))

        corner = Fraction(probe.deliverable, g)
        if corner != corner_expected:
            report.corner_match = False
            report.mismatches.append(f"seed={trial_seed} corner_flow2: {corner} != {corner_expected}")

        if report.numerical is None:
            report.numerical = OperatorDims(**{k: Fraction(v, g) for k, v in counts.items()})
            report.preimage_dim_numerical = corner
            report.preimage_space_dim = Fraction(probe.preimage_dim, g)

    if not report.corner_match:
        level = logging.WARNING if report.corner_conditions_hold else logging.INFO
        logger.log(level, "Canto do fluxo 2 diverge em %r (condições de zero-forcing: %s)",
                   s.label, report.corner_conditions_hold)
    return report
