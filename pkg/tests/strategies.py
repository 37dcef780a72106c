"""
Estratégias hypothesis para conjuntos de intervalos e cenários racionais
"""

from fractions import Fraction

from hypothesis import strategies as st

from modules.interval_set import normalize
from modules.network_scenario import LENGTH_FIELDS, SUPPORT_FIELDS, Scenario


def grid_points(den: int = 8):
    return st.integers(-den, den).map(lambda k: Fraction(k, den))


@st.composite
def interval_sets(draw, den: int = 8, max_pieces: int = 3):
    pairs = []
    for _ in range(draw(st.integers(0, max_pieces))):
        a, b = draw(grid_points(den)), draw(grid_points(den))
        pairs.append((min(a, b), max(a, b)))
    return normalize(pairs)


def half_lengths(den: int = 8, max_value: int = 2):
    return st.integers(1, max_value * den).map(lambda k: Fraction(k, den))


@st.composite
def scenarios(draw, den: int = 8, max_pieces: int = 2, length_den: int = 8, max_length: int = 2):
    values = {name: draw(half_lengths(length_den, max_length)) for name in LENGTH_FIELDS}
    values.update({name: draw(interval_sets(den, max_pieces)) for name in SUPPORT_FIELDS})
    return Scenario(label="hypothesis", **values)


# grade grossa para o oráculo: extremos em quartos, comprimentos em meios
coarse_scenarios = scenarios(den=4, max_pieces=2, length_den=2, max_length=1)
