"""
Fixtures compartilhadas dos testes do DuplexVision
"""

import sys
from pathlib import Path

import pytest

# Adiciona diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.scenario_library import BUILTIN_SCENARIOS


@pytest.fixture
def fully_overlapped():
    """L_BS = 1, L_USR = 1/2, todos os suportes [0, 1)"""
    return BUILTIN_SCENARIOS["fully_overlapped"]


@pytest.fixture
def symmetric_spread():
    """2L = 1, Ψ_fwd = [-1/2, 1/2), Ψ_back = [0, 1)"""
    return BUILTIN_SCENARIOS["symmetric_spread"]


@pytest.fixture
def mixed_support():
    return BUILTIN_SCENARIOS["mixed_support"]


@pytest.fixture
def interference_free():
    return BUILTIN_SCENARIOS["interference_free"]
