"""
DuplexVision - Conjuntos de Intervalos
Álgebra exata de subconjuntos do eixo de cossenos diretores [-1, 1]

Cada suporte de espalhamento Ψ é uma união finita de intervalos semiabertos
[lo, hi) com extremos racionais. Pontos isolados têm medida zero e são
descartados.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from modules.errors import MalformedPairError, OutOfRangeError

RationalLike = Union[int, Fraction, str, float]
Piece = Tuple[Fraction, Fraction]

AXIS_LO = Fraction(-1)
AXIS_HI = Fraction(1)


def as_rational(value: RationalLike) -> Fraction:
    """Converte para Fraction sem perder exatidão

    Strings aceitam "0.25" e "1/3". Floats passam pela representação decimal
    mais curta, então 0.1 vira 1/10.
    """
    if isinstance(value, bool):
        raise TypeError(f"Booleano não é número: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"Número não finito: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Tipo não numérico: {type(value).__name__}")


@dataclass(frozen=True)
class IntervalSet:
    """União finita de intervalos [lo, hi) disjuntos e ordenados

    Construa sempre via normalize(); o construtor só confere a forma canônica.
    """
    pieces: Tuple[Piece, ...] = ()

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.pieces:
            if not (AXIS_LO <= lo < hi <= AXIS_HI):
                raise ValueError(f"Peça não canônica: [{lo}, {hi})")
            if prev_hi is not None and prev_hi >= lo:
                raise ValueError("Peças sobrepostas ou encostadas; use normalize()")
            prev_hi = hi

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return union(self, other)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return intersect(self, other)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return difference(self, other)

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def measure(self) -> Fraction:
        return measure(self)

    def contains(self, point: RationalLike) -> bool:
        x = as_rational(point)
        return any(lo <= x < hi for lo, hi in self.pieces)

    def endpoints(self) -> List[Fraction]:
        points = []
        for lo, hi in self.pieces:
            points.extend((lo, hi))
        return points

    def __str__(self) -> str:
        if not self.pieces:
            return "{}"
        return " ∪ ".join(f"[{lo}, {hi})" for lo, hi in self.pieces)


EMPTY = IntervalSet()
FULL_AXIS = IntervalSet(((AXIS_LO, AXIS_HI),))


def normalize(raw: Iterable[Sequence[RationalLike]]) -> IntervalSet:
    """Forma canônica a partir de pares (lo, hi)

    Funde peças sobrepostas ou encostadas e descarta pares degenerados.
    """
    pairs = []
    for pair in raw:
        if len(pair) != 2:
            raise MalformedPairError(pair, None, f"Par deve ter 2 elementos: {list(pair)!r}")
        lo, hi = as_rational(pair[0]), as_rational(pair[1])
        for endpoint in (lo, hi):
            if endpoint < AXIS_LO or endpoint > AXIS_HI:
                raise OutOfRangeError(endpoint)
        if lo > hi:
            raise MalformedPairError(lo, hi)
        if lo < hi:
            pairs.append((lo, hi))

    pairs.sort()
    merged: List[List[Fraction]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])

    return IntervalSet(tuple((lo, hi) for lo, hi in merged))


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return normalize(list(a.pieces) + list(b.pieces))


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    result = []
    i = j = 0
    while i < len(a.pieces) and j < len(b.pieces):
        a_lo, a_hi = a.pieces[i]
        b_lo, b_hi = b.pieces[j]
        lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
        if lo < hi:
            result.append((lo, hi))
        # avança quem termina primeiro
        if a_hi <= b_hi:
            i += 1
        else:
            j += 1
    return normalize(result)


def complement(a: IntervalSet) -> IntervalSet:
    """Complemento dentro de [-1, 1)"""
    gaps = []
    cursor = AXIS_LO
    for lo, hi in a.pieces:
        if cursor < lo:
            gaps.append((cursor, lo))
        cursor = hi
    if cursor < AXIS_HI:
        gaps.append((cursor, AXIS_HI))
    return normalize(gaps)


def difference(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return intersect(a, complement(b))


def measure(a: IntervalSet) -> Fraction:
    """Medida de Lebesgue exata"""
    return sum((hi - lo for lo, hi in a.pieces), Fraction(0))


def breakpoints(sets: Iterable[IntervalSet]) -> List[Fraction]:
    """Extremos ordenados e sem repetição de uma família de conjuntos"""
    points = set()
    for s in sets:
        points.update(s.endpoints())
    return sorted(points)
