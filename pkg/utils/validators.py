"""
DuplexVision - Módulo de Validação de Cenários
Relatório de integridade de um cenário antes do cálculo das regiões
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from modules.dof_region import audit_corners, flow_maxima
from modules.matrix_oracle import suggest_density
from modules.network_scenario import Scenario, validate


@dataclass
class ValidationResult:
    """Resultado de uma validação"""
    is_valid: bool
    message: str
    severity: str  # 'error', 'warning', 'info'
    field: Optional[str] = None
    details: Dict = None


class ScenarioValidator:
    """Validador de cenários da rede de três nós"""

    # acima disso as matrizes do oráculo ficam grandes demais para rodar em segundos
    MAX_COMFORTABLE_DENSITY = 120

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.validation_results: List[ValidationResult] = []

    def validate_all(self) -> Tuple[bool, List[ValidationResult]]:
        """Executa todas as validações"""
        self.validation_results = []

        self._validate_invariants()
        if any(r.severity == 'error' for r in self.validation_results):
            return False, self.validation_results

        self._validate_signal_supports()
        self._validate_interference_paths()
        self._validate_grid_density()
        self._validate_corner_consistency()

        has_errors = any(r.severity == 'error' for r in self.validation_results)
        return not has_errors, self.validation_results

    def _validate_invariants(self):
        violations = validate(self.scenario)
        for violation in violations:
            self.validation_results.append(ValidationResult(
                is_valid=False,
                message=violation,
                severity='error',
                field=violation.split(" ", 1)[0],
            ))
        if not violations:
            self.validation_results.append(ValidationResult(
                is_valid=True,
                message="Comprimentos positivos e suportes canônicos",
                severity='info'
            ))

    def _validate_signal_supports(self):
        """Suporte direto vazio zera o fluxo inteiro"""
        d1_max, d2_max = flow_maxima(self.scenario)
        for flow, value, fields in ((1, d1_max, ("psi_t11", "psi_r11")),
                                    (2, d2_max, ("psi_t22", "psi_r22"))):
            empty = [name for name in fields if getattr(self.scenario, name).is_empty]
            if value == 0:
                self.validation_results.append(ValidationResult(
                    is_valid=True,
                    message=f"Fluxo {flow} sem graus de liberdade",
                    severity='warning',
                    field=empty[0] if empty else None,
                    details={'empty_supports': empty}
                ))

    def _validate_interference_paths(self):
        s = self.scenario
        self_interference = not (s.psi_t12.is_empty or s.psi_r12.is_empty)
        inter_node = not (s.psi_t21.is_empty or s.psi_r21.is_empty)
        self.validation_results.append(ValidationResult(
            is_valid=True,
            message=(f"Auto-interferência: {'sim' if self_interference else 'não'}; "
                     f"interferência entre nós: {'sim' if inter_node else 'não'}"),
            severity='info',
            details={'self_interference': self_interference, 'inter_node': inter_node}
        ))

    def _validate_grid_density(self):
        density = suggest_density(self.scenario)
        if density > self.MAX_COMFORTABLE_DENSITY:
            self.validation_results.append(ValidationResult(
                is_valid=True,
                message=f"Densidade sugerida {density} gera matrizes grandes no oráculo",
                severity='warning',
                details={'density': density}
            ))
        else:
            self.validation_results.append(ValidationResult(
                is_valid=True,
                message=f"Densidade sugerida para o oráculo: {density}",
                severity='info',
                details={'density': density}
            ))

    def _validate_corner_consistency(self):
        discrepancies = audit_corners([self.scenario])
        if discrepancies:
            self.validation_results.append(ValidationResult(
                is_valid=True,
                message=f"{len(discrepancies)} canto(s) com fórmulas explícitas divergentes dos limitantes",
                severity='warning',
                details={'corners': [d.corner for d in discrepancies]}
            ))

    def get_summary(self) -> Dict:
        """Retorna resumo das validações"""
        errors = sum(1 for r in self.validation_results if r.severity == 'error')
        warnings = sum(1 for r in self.validation_results if r.severity == 'warning')
        info = sum(1 for r in self.validation_results if r.severity == 'info')

        return {
            'total_validations': len(self.validation_results),
            'errors': errors,
            'warnings': warnings,
            'info': info,
            'passed': errors == 0
        }

