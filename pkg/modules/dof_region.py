"""
DuplexVision - Regiões de Graus de Liberdade
Constrói e compara as regiões full-duplex (FD), half-duplex (HD) e full-duplex
com apenas auto-interferência (FDP), além dos pontos de canto

Toda a aritmética é racional exata; não há tolerância em nenhum teste geométrico.
"""

import logging
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from modules.errors import AmbiguousCornerError
from modules.interval_set import RationalLike, as_rational
from modules.network_scenario import Scenario, ensure_valid, pos

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]
ZERO = Fraction(0)


# ============================================
# GEOMETRIA EXATA
# ============================================
def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> Tuple[Point, ...]:
    """Fecho convexo anti-horário sem vértices colineares (cadeia monótona)

    Começa no menor ponto lexicográfico, que é (0, 0) para regiões de DoF.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)

    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)

    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)

    return tuple(lower[:-1] + upper[:-1])


@dataclass(frozen=True)
class DofRegion:
    """Polígono convexo no primeiro quadrante com vértices racionais"""
    vertices: Tuple[Point, ...]

    @classmethod
    def from_points(cls, points: Iterable[Sequence[RationalLike]]) -> "DofRegion":
        pts = [(as_rational(x), as_rational(y)) for x, y in points]
        for x, y in pts:
            if x < 0 or y < 0:
                raise ValueError(f"Ponto fora do primeiro quadrante: ({x}, {y})")
        pts.append((ZERO, ZERO))
        return cls(convex_hull(pts))

    def contains(self, point: Sequence[RationalLike]) -> bool:
        p = (as_rational(point[0]), as_rational(point[1]))
        v = self.vertices
        if len(v) == 1:
            return p == v[0]
        if len(v) == 2:
            a, b = v
            return (_cross(a, b, p) == 0
                    and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
        return all(_cross(v[i], v[(i + 1) % len(v)], p) >= 0 for i in range(len(v)))

    @property
    def d1_extent(self) -> Fraction:
        return max(x for x, _ in self.vertices)

    @property
    def d2_extent(self) -> Fraction:
        return max(y for _, y in self.vertices)

    @property
    def max_sum(self) -> Fraction:
        """Maior d1 + d2 atingível na região"""
        return max(x + y for x, y in self.vertices)


class RegionRelation(Enum):
    PROPER_SUBSET = "proper_subset"
    EQUAL = "equal"
    NOT_SUBSET = "not_subset"


_RELATION_SYMBOLS = {
    RegionRelation.PROPER_SUBSET: ("⊂", "<"),
    RegionRelation.EQUAL: ("=", "="),
    RegionRelation.NOT_SUBSET: ("⊄", "!<"),
}


def region_subset(a: DofRegion, b: DofRegion) -> RegionRelation:
    """Relação de inclusão de a em b (convexidade: basta testar os vértices)"""
    if not all(b.contains(v) for v in a.vertices):
        return RegionRelation.NOT_SUBSET
    if all(a.contains(v) for v in b.vertices):
        return RegionRelation.EQUAL
    return RegionRelation.PROPER_SUBSET


def region_is_rectangular(r: DofRegion) -> bool:
    """A região é o produto [0, d1] x [0, d2] das suas próprias extensões"""
    x, y = r.d1_extent, r.d2_extent
    box = DofRegion.from_points([(x, ZERO), (x, y), (ZERO, y)])
    return r.vertices == box.vertices


def sum_gain(a: DofRegion, b: DofRegion) -> Fraction:
    """Ganho de soma de DoF de a sobre b"""
    return a.max_sum - b.max_sum


# ============================================
# LIMITANTES
# ============================================
@dataclass(frozen=True)
class FdBounds:
    d1_max: Fraction
    d2_max: Fraction
    d_sum_max: Fraction

    @property
    def effective_sum(self) -> Fraction:
        """Maior d1 + d2 dentro da região definida pelos três limitantes"""
        return min(self.d_sum_max, self.d1_max + self.d2_max)


def flow_maxima(s: Scenario) -> Tuple[Fraction, Fraction]:
    ensure_valid(s)
    d1_max = 2 * min(s.l_t1 * s.psi_t11.measure, s.l_r1 * s.psi_r11.measure)
    d2_max = 2 * min(s.l_t2 * s.psi_t22.measure, s.l_r2 * s.psi_r22.measure)
    return d1_max, d2_max


def sum_bound_terms(s: Scenario) -> Tuple[Fraction, Fraction]:
    """(termo da estação base, termo dos usuários) do limitante de soma, já com o fator 2"""
    ensure_valid(s)
    t11, t21, t22, t12 = s.psi_t11, s.psi_t21, s.psi_t22, s.psi_t12
    r11, r12, r22, r21 = s.psi_r11, s.psi_r12, s.psi_r22, s.psi_r21

    base_station = (s.l_t2 * (t22 - t12).measure
                    + s.l_r1 * (r11 - r12).measure
                    + max(s.l_t2 * t12.measure, s.l_r1 * r12.measure))
    users = (s.l_t1 * (t11 - t21).measure
             + s.l_r2 * (r22 - r21).measure
             + max(s.l_t1 * t21.measure, s.l_r2 * r21.measure))
    return 2 * base_station, 2 * users


def fd_bounds(s: Scenario) -> FdBounds:
    """Limitantes da região full-duplex com auto-interferência e interferência entre nós"""
    d1_max, d2_max = flow_maxima(s)
    base_station, users = sum_bound_terms(s)
    return FdBounds(d1_max, d2_max, min(base_station, users))


def fdp_bounds(s: Scenario) -> FdBounds:
    """Limitantes com apenas auto-interferência: só o termo da estação base"""
    d1_max, d2_max = flow_maxima(s)
    base_station, _ = sum_bound_terms(s)
    return FdBounds(d1_max, d2_max, base_station)


# ============================================
# PONTOS DE CANTO
# ============================================
@dataclass(frozen=True)
class CornerAux:
    """Quantidades auxiliares dos cantos atingíveis (podem ser negativas)"""
    d_t1: Fraction
    d_t2: Fraction
    d_r1: Fraction
    d_r2: Fraction
    delta_t1: Fraction
    delta_t2: Fraction
    delta_r1: Fraction
    delta_r2: Fraction

    def as_dict(self) -> Dict[str, Fraction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class CornerPoints:
    prime: Point
    double_prime: Point
    aux: CornerAux


def corner_aux(s: Scenario) -> CornerAux:
    """As oito quantidades auxiliares, com cada min/max/(.)+ exatamente como escritos"""
    ensure_valid(s)
    t11, t21, t22, t12 = s.psi_t11, s.psi_t21, s.psi_t22, s.psi_t12
    r11, r12, r22, r21 = s.psi_r11, s.psi_r12, s.psi_r22, s.psi_r21
    lt1, lt2, lr1, lr2 = s.l_t1, s.l_t2, s.l_r1, s.l_r2

    d_t2 = 2 * lt2 * (t22 - t12).measure + 2 * min(
        lt2 * (t22 & t12).measure,
        pos(lt2 * t12.measure - lr1 * r12.measure) + lr1 * (r12 - r11).measure)
    d_t1 = 2 * lt1 * (t11 - t21).measure + 2 * min(
        lt1 * (t11 & t21).measure,
        pos(lt1 * t21.measure - lr2 * r21.measure) + lr2 * (r21 - r22).measure)
    d_r1 = 2 * lr1 * (r11 - r12).measure + 2 * min(
        lr1 * (r11 & r12).measure,
        pos(lr1 * r12.measure - lt2 * t12.measure) + lt2 * (t12 - t22).measure)
    d_r2 = 2 * lr2 * (r22 - r21).measure + 2 * min(
        lr2 * (r22 & r21).measure,
        pos(lr2 * r21.measure - lt1 * t21.measure) + lt1 * (t21 - t11).measure)

    delta_t2 = 2 * lt2 * (t22 - t12).measure + 2 * min(
        lt2 * (t22 & t12).measure,
        lt2 * t12.measure - (lt1 * t11.measure
                             - (lr1 * (r11 - r12).measure
                                + pos(lr1 * r12.measure - lt2 * t12.measure))))
    delta_t1 = 2 * lt1 * (t11 - t21).measure + 2 * min(
        lt1 * (t11 & t21).measure,
        lt1 * t21.measure - (lt2 * t22.measure
                             - (lr2 * (r22 - r21).measure
                                + pos(lr2 * r21.measure - lt1 * t21.measure))))
    delta_r1 = 2 * lr1 * (r11 - r12).measure + 2 * min(
        lr1 * (r11 & r12).measure,
        lr1 * r12.measure - (lr2 * r22.measure
                             - (lt2 * (t22 - t12).measure
                                + pos(lt2 * t12.measure - lr1 * r12.measure))))
    delta_r2 = 2 * lr2 * (r22 - r21).measure + 2 * min(
        lr2 * (r22 & r21).measure,
        lr2 * r21.measure - (lr1 * r11.measure
                             - (lt1 * (t11 - t21).measure
                                + pos(lt1 * t21.measure - lr2 * r21.measure))))

    aux = CornerAux(d_t1, d_t2, d_r1, d_r2, delta_t1, delta_t2, delta_r1, delta_r2)
    negatives = {k: v for k, v in aux.as_dict().items() if v < 0}
    if negatives:
        logger.debug("Auxiliares negativos em %r: %s", s.label, negatives)
    return aux


def _clamp(value: Fraction, cap: Fraction) -> Fraction:
    return min(max(value, ZERO), cap)


def _indicator_branch(corner: str, lhs: Fraction, rhs: Fraction,
                      when_ge: Fraction, when_lt: Fraction, cap: Fraction) -> Fraction:
    """Seleciona o ramo pelo indicador; no empate os dois ramos precisam concordar"""
    ge, lt = _clamp(when_ge, cap), _clamp(when_lt, cap)
    if lhs > rhs:
        return ge
    if lhs < rhs:
        return lt
    if ge != lt:
        raise AmbiguousCornerError(corner, ge, lt)
    return ge


def achievable_corners(s: Scenario) -> CornerPoints:
    """Cantos pelas fórmulas explícitas do esquema atingível

    Levanta AmbiguousCornerError quando um indicador empata e os ramos divergem.
    """
    d1_max, d2_max = flow_maxima(s)
    aux = corner_aux(s)

    d2_prime = _indicator_branch(
        "prime",
        s.l_t1 * s.psi_t11.measure, s.l_r1 * s.psi_r11.measure,
        when_ge=min(aux.d_t2, aux.delta_r2),
        when_lt=min(aux.delta_t2, aux.d_r2),
        cap=d2_max,
    )
    d1_double = _indicator_branch(
        "double_prime",
        s.l_r2 * s.psi_r22.measure, s.l_t2 * s.psi_t22.measure,
        when_ge=min(aux.delta_t1, aux.d_r1),
        when_lt=min(aux.d_t1, aux.delta_r1),
        cap=d1_max,
    )
    return CornerPoints(prime=(d1_max, d2_prime), double_prime=(d1_double, d2_max), aux=aux)


def corners_from_bounds(bounds: FdBounds) -> Tuple[Point, Point]:
    prime = (bounds.d1_max,
             max(ZERO, min(bounds.d2_max, bounds.d_sum_max - bounds.d1_max)))
    double_prime = (max(ZERO, min(bounds.d1_max, bounds.d_sum_max - bounds.d2_max)),
                    bounds.d2_max)
    return prime, double_prime


def bound_corners(s: Scenario) -> Tuple[Point, Point]:
    """Cantos da região FD a partir dos três limitantes"""
    return corners_from_bounds(fd_bounds(s))


def zero_forcing_conditions(s: Scenario) -> bool:
    """Condições sob as quais a pré-imagem da auto-interferência dá exatamente d'2"""
    ensure_valid(s)
    aux = corner_aux(s)
    t22, t12 = s.psi_t22, s.psi_t12
    r11, r12 = s.psi_r11, s.psi_r12
    return (
        s.l_t1 * s.psi_t11.measure >= s.l_r1 * r11.measure
        and aux.d_t2 <= aux.delta_r2
        and s.l_t2 * (t22 & t12).measure
        >= pos(s.l_t2 * t12.measure - s.l_r1 * r12.measure) + s.l_r1 * (r12 - r11).measure
        and s.l_t2 * t12.measure >= s.l_r1 * r12.measure
    )


# ============================================
# REGIÕES
# ============================================
def region_from_bounds(bounds: FdBounds) -> DofRegion:
    prime, double_prime = corners_from_bounds(bounds)
    return DofRegion.from_points([
        (bounds.d1_max, ZERO), prime, double_prime, (ZERO, bounds.d2_max),
    ])


def fd_region(s: Scenario) -> DofRegion:
    return region_from_bounds(fd_bounds(s))


def fdp_region(s: Scenario) -> DofRegion:
    """Região full-duplex com apenas auto-interferência"""
    return region_from_bounds(fdp_bounds(s))


def hd_region(s: Scenario) -> DofRegion:
    """Compartilhamento de tempo: varredura de alpha em [0, 1]"""
    d1_max, d2_max = flow_maxima(s)
    return DofRegion.from_points([(d1_max, ZERO), (ZERO, d2_max)])


@dataclass(frozen=True)
class Classification:
    hd_fd: RegionRelation
    fd_fdp: RegionRelation
    fd_rectangular: bool
    fdp_rectangular: bool

    @property
    def label(self) -> str:
        first = _RELATION_SYMBOLS[self.hd_fd][0]
        second = _RELATION_SYMBOLS[self.fd_fdp][0]
        return f"HD {first} FD {second} FD'"

    @property
    def code(self) -> str:
        first = _RELATION_SYMBOLS[self.hd_fd][1]
        second = _RELATION_SYMBOLS[self.fd_fdp][1]
        return f"hd{first}fd{second}fdp"


def compare(s: Scenario) -> Classification:
    hd, fd, fdp = hd_region(s), fd_region(s), fdp_region(s)
    return Classification(
        hd_fd=region_subset(hd, fd),
        fd_fdp=region_subset(fd, fdp),
        fd_rectangular=region_is_rectangular(fd),
        fdp_rectangular=region_is_rectangular(fdp),
    )


# ============================================
# AUDITORIA DOS CANTOS
# ============================================
@dataclass
class CornerDiscrepancy:
    """Contraexemplo: fórmulas explícitas e limitantes discordam"""
    scenario: Scenario
    corner: str
    explicit: Optional[Point]
    bound: Optional[Point]
    detail: str = ""


def audit_corners(scenarios: Iterable[Scenario]) -> List[CornerDiscrepancy]:
    """Compara os cantos explícitos com os cantos dos limitantes

    Discordâncias viram dados (e avisos no log), nunca exceções.
    """
    found: List[CornerDiscrepancy] = []
    for s in scenarios:
        bound_prime, bound_double = bound_corners(s)
        try:
            explicit = achievable_corners(s)
        except AmbiguousCornerError as exc:
            found.append(CornerDiscrepancy(s, "ambiguous", None, None, str(exc)))
            logger.warning("Canto ambíguo em %r: %s", s.label, exc)
            continue

        pairs = [("prime", explicit.prime, bound_prime),
                 ("double_prime", explicit.double_prime, bound_double)]
        for corner, mine, theirs in pairs:
            if mine != theirs:
                found.append(CornerDiscrepancy(s, corner, mine, theirs))
                logger.warning("Canto %s diverge em %r: explícito=%s limitantes=%s",
                               corner, s.label, mine, theirs)
    return found
