"""
DuplexVision - Módulo de Exportação
Tabelas, CSV, JSON e Excel dos resultados

Racionais saem sempre como "p/q" exato; as tabelas de texto e de regiões
trazem também uma coluna *_decimal.
"""

import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from modules.dof_region import (
    Classification,
    CornerPoints,
    DofRegion,
    FdBounds,
    Point,
    sum_gain,
)
from modules.matrix_oracle import OracleReport
from modules.network_scenario import OperatorDims
from modules.scenario_io import format_rational, scenario_to_dict
from modules.scenario_library import SweepResult

SWEEP_COLUMNS: List[str] = ["param", "d1_max", "d2_max", "d_sum_fd", "d_sum_fdp", "class", "rect_fd"]
DECIMAL_PLACES = 6


def _decimal(value: Fraction) -> float:
    return round(float(value), DECIMAL_PLACES)


def _point(p: Point) -> List[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def _flag(value: bool) -> str:
    return "true" if value else "false"


# ============================================
# DATAFRAMES
# ============================================
def region_to_dataframe(region: DofRegion, name: str) -> pd.DataFrame:
    """Lista de vértices, pronta para plotagem externa"""
    rows = []
    for i, (d1, d2) in enumerate(region.vertices):
        rows.append({
            'region': name,
            'vertex': i,
            'd1': format_rational(d1),
            'd2': format_rational(d2),
            'd1_decimal': _decimal(d1),
            'd2_decimal': _decimal(d2),
        })
    return pd.DataFrame(rows, columns=['region', 'vertex', 'd1', 'd2', 'd1_decimal', 'd2_decimal'])


def regions_to_dataframe(regions: Dict[str, DofRegion]) -> pd.DataFrame:
    frames = [region_to_dataframe(r, name) for name, r in regions.items()]
    return pd.concat(frames, ignore_index=True)


def bounds_to_dataframe(bounds: Dict[str, FdBounds]) -> pd.DataFrame:
    rows = []
    for name, b in bounds.items():
        for quantity in ('d1_max', 'd2_max', 'd_sum_max', 'effective_sum'):
            value = getattr(b, quantity)
            rows.append({
                'region': name,
                'quantity': quantity,
                'value': format_rational(value),
                'value_decimal': _decimal(value),
            })
    return pd.DataFrame(rows)


def dims_to_dataframe(dims: OperatorDims) -> pd.DataFrame:
    return pd.DataFrame([
        {'quantity': k, 'value': format_rational(v), 'value_decimal': _decimal(v)}
        for k, v in dims.as_dict().items()
    ])


def corners_to_dataframe(explicit: Optional[CornerPoints], bound: Tuple[Point, Point],
                         ambiguity: str = "") -> pd.DataFrame:
    """Cantos das fórmulas explícitas lado a lado com os dos limitantes"""
    rows = []
    sources = [("bounds", bound[0], bound[1])]
    if explicit is not None:
        sources.insert(0, ("explicit", explicit.prime, explicit.double_prime))
    for source, prime, double_prime in sources:
        for corner, p in (("prime", prime), ("double_prime", double_prime)):
            rows.append({
                'source': source,
                'corner': corner,
                'd1': format_rational(p[0]),
                'd2': format_rational(p[1]),
                'd1_decimal': _decimal(p[0]),
                'd2_decimal': _decimal(p[1]),
                'note': '',
            })
    if explicit is None:
        rows.append({'source': 'explicit', 'corner': 'ambiguous', 'd1': '', 'd2': '',
                     'd1_decimal': None, 'd2_decimal': None, 'note': ambiguity})
    return pd.DataFrame(rows)


def aux_to_dataframe(corners: CornerPoints) -> pd.DataFrame:
    return pd.DataFrame([
        {'quantity': k, 'value': format_rational(v), 'value_decimal': _decimal(v)}
        for k, v in corners.aux.as_dict().items()
    ])


def classification_to_dataframe(classification: Classification,
                                 regions: Dict[str, DofRegion]) -> pd.DataFrame:
    return pd.DataFrame([{
        'hd_fd': classification.hd_fd.value,
        'fd_fdp': classification.fd_fdp.value,
        'fd_rectangular': _flag(classification.fd_rectangular),
        'fdp_rectangular': _flag(classification.fdp_rectangular),
        'code': classification.code,
        'label': classification.label,
        'gain_fd_hd': format_rational(sum_gain(regions['fd'], regions['hd'])),
        'gain_fdp_hd': format_rational(sum_gain(regions['fdp'], regions['hd'])),
    }])


def sweep_to_dataframe(result: SweepResult) -> pd.DataFrame:
    """Colunas fixas param,d1_max,d2_max,d_sum_fd,d_sum_fdp,class,rect_fd"""
    rows = [{
        'param': format_rational(row.param),
        'd1_max': format_rational(row.d1_max),
        'd2_max': format_rational(row.d2_max),
        'd_sum_fd': format_rational(row.d_sum_fd),
        'd_sum_fdp': format_rational(row.d_sum_fdp),
        'class': row.classification.code,
        'rect_fd': _flag(row.rect_fd),
    } for row in result.rows]
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def oracle_report_to_dataframe(report: OracleReport) -> pd.DataFrame:
    """Tabela de aprovação por quantidade"""
    rows = []
    numerical = report.numerical.as_dict() if report.numerical is not None else {}
    for name, expected in report.analytic.as_dict().items():
        found = numerical.get(name)
        rows.append({
            'quantity': name,
            'analytic': format_rational(expected),
            'numerical': format_rational(found) if found is not None else '',
            'status': 'ok' if found == expected else 'FALHA',
        })
    found = report.preimage_dim_numerical
    rows.append({
        'quantity': 'corner_flow2',
        'analytic': format_rational(report.preimage_dim_analytic),
        'numerical': format_rational(found) if found is not None else '',
        'status': 'ok' if report.corner_match else ('FALHA' if report.corner_conditions_hold else 'aviso'),
    })
    return pd.DataFrame(rows)


# ============================================
# DICIONÁRIOS JSON
# ============================================
def bounds_to_dict(b: FdBounds) -> Dict[str, str]:
    return {
        'd1_max': format_rational(b.d1_max),
        'd2_max': format_rational(b.d2_max),
        'd_sum_max': format_rational(b.d_sum_max),
    }


def region_payload(scenario, regions: Dict[str, DofRegion], bounds: Dict[str, FdBounds],
                   corners: Dict[str, Any], classification: Classification) -> Dict[str, Any]:
    return {
        'scenario': scenario_to_dict(scenario),
        'regions': {name: {'vertices': [_point(v) for v in r.vertices]} for name, r in regions.items()},
        'bounds': {name: bounds_to_dict(b) for name, b in bounds.items()},
        'corners': corners,
        'classification': classification.label,
        'classification_code': classification.code,
    }


def corners_payload(explicit: Optional[CornerPoints], bound: Tuple[Point, Point],
                    ambiguity: str = "") -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        'bounds': {'prime': _point(bound[0]), 'double_prime': _point(bound[1])},
    }
    if explicit is None:
        payload['explicit'] = {'ambiguous': ambiguity}
    else:
        payload['explicit'] = {
            'prime': _point(explicit.prime),
            'double_prime': _point(explicit.double_prime),
            'aux': {k: format_rational(v) for k, v in explicit.aux.as_dict().items()},
        }
        payload['agree'] = (explicit.prime, explicit.double_prime) == tuple(bound)
    return payload


def oracle_report_to_dict(report: OracleReport) -> Dict[str, Any]:
    def exact(value: Optional[Fraction]) -> Optional[str]:
        return format_rational(value) if value is not None else None

    return {
        'passed': report.passed,
        'seed': report.seed,
        'trials': report.trials,
        'grid_density': report.grid_density,
        'ill_conditioned_trials': report.ill_conditioned_trials,
        'max_rank_gap': report.max_rank_gap,
        'analytic': {k: format_rational(v) for k, v in report.analytic.as_dict().items()},
        'numerical': ({k: format_rational(v) for k, v in report.numerical.as_dict().items()}
                      if report.numerical is not None else None),
        'corner_flow2': {
            'analytic': format_rational(report.preimage_dim_analytic),
            'numerical': exact(report.preimage_dim_numerical),
            'preimage_space_dim': exact(report.preimage_space_dim),
            'conditions_hold': report.corner_conditions_hold,
            'match': report.corner_match,
        },
        'mismatches': list(report.mismatches),
    }


# ============================================
# SAÍDAS
# ============================================
def to_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def dataframe_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False)


def dataframe_to_text(df: pd.DataFrame, title: str) -> str:
    """
    Formata uma tabela para o terminal
    """
    lines = ["=" * 50, title, "=" * 50, df.to_string(index=False), ""]
    return "\n".join(lines)


def export_sweep_excel(result: SweepResult) -> bytes:
    """
    Exporta a varredura para Excel

    Returns:
        bytes: Conteúdo do arquivo Excel
    """
    output = io.BytesIO()

    with pd.ExcelWriter(output, engine='xlsxwriter') as writer:
        workbook = writer.book

        header_format = workbook.add_format({
            'bold': True,
            'bg_color': '#1F4E79',
            'font_color': 'white',
            'border': 1,
            'align': 'center'
        })

        # Aba 1: linhas da varredura
        df_sweep = sweep_to_dataframe(result)
        df_sweep.to_excel(writer, sheet_name='Varredura', index=False, startrow=1)
        worksheet = writer.sheets['Varredura']
        worksheet.write(0, 0, f'DuplexVision - Varredura de {result.parameter}',
                        workbook.add_format({'bold': True, 'font_size': 14}))
        for col_num, column in enumerate(df_sweep.columns):
            worksheet.write(1, col_num, column, header_format)
            worksheet.set_column(col_num, col_num, 14)

        # Aba 2: parâmetros
        df_params = pd.DataFrame(
            [{'Parâmetro': k, 'Valor': v} for k, v in result.settings.items()]
            or [{'Parâmetro': 'parameter', 'Valor': result.parameter}]
        )
        df_params.to_excel(writer, sheet_name='Parâmetros', index=False)

    output.seek(0)
    return output.read()
