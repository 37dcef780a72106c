"""
Script de aceitação: propriedades exatas em cenários aleatórios e reprodução
dos casos de referência

Execute da raiz do projeto:
    python scripts/run_acceptance.py --scenarios 1000 --oracle-scenarios 200
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import numpy as np

# Adiciona o diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.dof_region import (
    DofRegion,
    RegionRelation,
    audit_corners,
    compare,
    fd_bounds,
    fd_region,
    fdp_region,
    hd_region,
    region_subset,
)
from modules.errors import NonIntegralGridError
from modules.interval_set import normalize
from modules.matrix_oracle import suggest_density, verify
from modules.network_scenario import operator_dims, scale_lengths, swap_flows
from modules.scenario_io import scenario_to_dict
from modules.scenario_library import (
    ScenarioSampler,
    overlap_sweep,
    symmetric_spread,
    symmetric_spread_bounds,
    symmetric_spread_is_rectangular,
)

logger = logging.getLogger("run_acceptance")

SCALE_FACTORS = (Fraction(1, 3), Fraction(2), Fraction(7))


class CounterexampleLog:
    """Acumula violações e as grava em JSON Lines"""

    def __init__(self):
        self.entries: List[Dict] = []

    def add(self, criterion: str, scenario, detail: str, exact: bool = True):
        self.entries.append({
            "criterion": criterion,
            "exact_property": exact,
            "scenario": scenario_to_dict(scenario),
            "detail": detail,
        })

    def violations(self) -> int:
        return sum(1 for e in self.entries if e["exact_property"])

    def write(self, path: Path):
        with open(path, "w", encoding="utf-8") as f:
            for entry in self.entries:
                f.write(json.dumps(entry, ensure_ascii=False) + "\n")


def check_nesting(scenarios, log: CounterexampleLog) -> int:
    for s in scenarios:
        hd, fd, fdp = hd_region(s), fd_region(s), fdp_region(s)
        if region_subset(hd, fd) is RegionRelation.NOT_SUBSET:
            log.add("nesting", s, "HD não contido em FD")
        if region_subset(fd, fdp) is RegionRelation.NOT_SUBSET:
            log.add("nesting", s, "FD não contido em FD'")
    return len(scenarios)


def check_corner_agreement(scenarios, log: CounterexampleLog) -> int:
    discrepancies = audit_corners(scenarios)
    for d in discrepancies:
        log.add("corner_agreement", d.scenario,
                f"{d.corner}: explícito={d.explicit} limitantes={d.bound} {d.detail}".strip(),
                exact=False)
    return len(discrepancies)


def check_oracle(scenarios, seeds: int, max_density: int, log: CounterexampleLog) -> int:
    checked = 0
    for s in scenarios:
        g = suggest_density(s)
        if g > max_density:
            logger.info("Pulando %s: densidade %d", s.label, g)
            continue
        try:
            report = verify(s, trials=seeds, seed=0, density=g)
        except NonIntegralGridError as exc:
            log.add("oracle", s, str(exc))
            continue
        checked += 1
        if report.max_rank_gap != 0 or report.completed_trials == 0:
            log.add("oracle", s, "; ".join(report.mismatches[:5]) or "sem tentativas completas")
        elif not report.corner_match:
            log.add("oracle_corner", s, "; ".join(report.mismatches[:3]),
                    exact=report.corner_conditions_hold)
    return checked


def check_overlap_sweep(log: CounterexampleLog) -> int:
    result = overlap_sweep(Fraction(1, 2), 21)
    for row in result.rows:
        w, c = row.param, row.classification
        if w == 1:
            ok = c.hd_fd is RegionRelation.EQUAL and c.fd_fdp is RegionRelation.EQUAL
        elif w > Fraction(1, 2):
            ok = (not row.rect_fd) and 1 < row.d_sum_fd < 2
        else:
            ok = row.rect_fd and row.d_sum_fd == 2
        if not ok:
            log.add("overlap_sweep", row.scenario, f"w={w} classe={c.code} soma={row.d_sum_fd}")
    return len(result.rows)


def check_case_b_grid(log: CounterexampleLog) -> int:
    n = 0
    for i in range(1, 21):
        for j in range(1, 21):
            fwd = normalize([(Fraction(i, 20) - 1, Fraction(i, 20))])
            back = normalize([(0, Fraction(j, 20))])
            s = symmetric_spread(Fraction(1, 2), fwd, back)
            c = compare(s)
            n += 1

            all_equal = c.hd_fd is RegionRelation.EQUAL and c.fd_fdp is RegionRelation.EQUAL
            if all_equal != (fwd == back):
                log.add("case_b_equality", s, f"igualdade={all_equal} fwd==back={fwd == back}")
            if c.fd_rectangular != symmetric_spread_is_rectangular(fwd, back):
                log.add("case_b_rectangular", s, f"retangular={c.fd_rectangular}")
            if fd_bounds(s) != symmetric_spread_bounds(Fraction(1, 2), fwd, back):
                log.add("case_b_closed_form", s, f"{fd_bounds(s)}")
    return n


def check_symmetry_scaling(scenarios, log: CounterexampleLog) -> int:
    for s in scenarios:
        swapped = swap_flows(s)
        mirrored = DofRegion.from_points([(y, x) for x, y in fd_region(s).vertices])
        if fd_region(swapped) != mirrored:
            log.add("flow_swap", s, "região FD não espelha")
        if operator_dims(swapped) != operator_dims(s).swapped():
            log.add("flow_swap", s, "dimensões não trocam")
        for c in SCALE_FACTORS:
            scaled = DofRegion.from_points([(c * x, c * y) for x, y in fd_region(s).vertices])
            if fd_region(scale_lengths(s, c)) != scaled:
                log.add("scaling", s, f"c={c}")
            if operator_dims(scale_lengths(s, c)) != operator_dims(s).scaled(c):
                log.add("scaling", s, f"dimensões c={c}")
    return len(scenarios)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Aceitação do DuplexVision")
    parser.add_argument("--scenarios", type=int, default=1000)
    parser.add_argument("--symmetry-scenarios", type=int, default=200)
    parser.add_argument("--oracle-scenarios", type=int, default=200)
    parser.add_argument("--oracle-seeds", type=int, default=10)
    parser.add_argument("--max-denominator", type=int, default=8)
    parser.add_argument("--max-density", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, default=Path("counterexamples.jsonl"))
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    sampler = ScenarioSampler(np.random.default_rng(args.seed), args.max_denominator)
    scenarios = sampler.sample_many(args.scenarios)
    log = CounterexampleLog()

    print("=" * 50)
    print("DuplexVision - Aceitação")
    print("=" * 50)

    n = check_nesting(scenarios, log)
    print(f"  📐 Aninhamento HD ⊆ FD ⊆ FD': {n} cenários")
    d = check_corner_agreement(scenarios, log)
    print(f"  {'⚠️ ' if d else '✅'} Cantos explícitos x limitantes: {d} divergência(s)")
    n = check_oracle(scenarios[:args.oracle_scenarios], args.oracle_seeds, args.max_density, log)
    print(f"  🔢 Oráculo matricial: {n} cenários x {args.oracle_seeds} sementes")
    n = check_overlap_sweep(log)
    print(f"  📈 Varredura de sobreposição: {n} pontos")
    n = check_case_b_grid(log)
    print(f"  🔲 Espalhamento simétrico: grade de {n} pontos")
    n = check_symmetry_scaling(scenarios[:args.symmetry_scenarios], log)
    print(f"  🔁 Simetria e escala: {n} cenários")

    log.write(args.out)
    violations = log.violations()

    print("\n" + "=" * 50)
    if violations:
        print(f"❌ {violations} violação(ões) de propriedades exatas; veja {args.out}")
    else:
        print(f"✅ Nenhuma violação; {len(log.entries)} aviso(s) em {args.out}")
    print("=" * 50)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
