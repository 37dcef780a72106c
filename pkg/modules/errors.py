"""
DuplexVision - Erros
Hierarquia de exceções usada por todos os módulos
"""

from typing import List, Optional


class DuplexVisionError(ValueError):
    """Erro base da aplicação"""


class OutOfRangeError(DuplexVisionError):
    """Extremo de intervalo fora de [-1, 1]"""

    def __init__(self, value, message: Optional[str] = None):
        self.value = value
        super().__init__(message or f"Extremo {value} fora do intervalo [-1, 1]")


class MalformedPairError(DuplexVisionError):
    """Par (lo, hi) com lo > hi"""

    def __init__(self, lo, hi, message: Optional[str] = None):
        self.lo = lo
        self.hi = hi
        super().__init__(message or f"Par malformado: lo={lo} > hi={hi}")


class ScenarioFormatError(DuplexVisionError):
    """Documento de cenário ilegível (campo ausente, número inválido, JSON quebrado)"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class InvalidScenarioError(DuplexVisionError):
    """Cenário viola uma ou mais invariantes"""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("Cenário inválido: " + "; ".join(self.violations))


class NonIntegralGridError(DuplexVisionError):
    """Alguma dimensão de bloco não é inteira na densidade escolhida"""

    def __init__(self, grid_density: int, endpoint: str, value, suggested: int):
        self.grid_density = grid_density
        self.endpoint = endpoint
        self.value = value
        self.suggested = suggested
        super().__init__(
            f"Densidade {grid_density} não torna inteira a dimensão {value} em {endpoint}; "
            f"sugestão: {suggested}"
        )


class IllConditionedError(DuplexVisionError):
    """Valores singulares agrupados perto do limiar de posto"""


class AmbiguousCornerError(DuplexVisionError):
    """Empate no indicador com ramos que discordam"""

    def __init__(self, corner: str, first, second):
        self.corner = corner
        self.first = first
        self.second = second
        super().__init__(f"Canto {corner} ambíguo no empate: {first} != {second}")


class ConfigError(DuplexVisionError):
    """Argumentos de linha de comando contraditórios"""
