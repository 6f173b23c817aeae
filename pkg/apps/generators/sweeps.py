"""Strategy-versus-oracle sweeps over instance families.

Each case is solved, re-verified and compared with the exhaustive optimum.
Cases run through joblib (one task per case) and the rows are collected into
a pandas DataFrame for tabulation.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional

import pandas as pd
from joblib import Parallel, delayed

from apps.classes.models import Modulator, ResidualClass
from apps.classes.services import bipartition, find_modulator, split_partition
from apps.coloring.models import Variant
from apps.coloring.services import verify
from apps.core.exceptions import (
    InfeasibleError,
    PreconditionError,
    SizeGuardError,
    SolverDefectError,
)
from apps.fpt.approx import approx_threshold
from apps.fpt.services import minimize_via_kernel
from apps.graphs.models import Graph
from apps.interval.models import IntervalRepresentation
from apps.interval.services import solve_interval
from apps.oracle.services import exact_cf
from apps.polysolve.services import (
    color_by_components,
    solve_auto,
    solve_bipartite_cfcn,
    solve_lemma1,
    solve_split_cfcn,
    solve_with_tree,
)

from .models import GenClass, GenSpec
from .services import enumerate_small, enumerate_split, gen_many

logger = logging.getLogger(__name__)

STRATEGIES = ('auto', 'bipartite', 'split', 'cograph', 'lemma1', 'interval', 'fpt', 'threshold')
FAMILIES = ('atlas', 'split', 'random')
STATUSES = ('ok', 'bound', 'defect', 'refused', 'infeasible', 'skipped')


@dataclass(frozen=True)
class SweepCase:
    label: str
    graph: Graph
    variant: Variant
    strategy: str
    representation: Optional[IntervalRepresentation] = None
    modulator: Optional[Modulator] = None


@dataclass(frozen=True)
class SweepConfig:
    oracle_limit: int = 16
    kernel_limit: int = 24
    budget: int = 6


def _modulator(case: SweepCase, residual_class: ResidualClass, budget: int) -> Modulator:
    if case.modulator is not None and case.modulator.residual_class is residual_class:
        return case.modulator
    found = find_modulator(case.graph, residual_class, budget)
    if found is None:
        raise PreconditionError(f"no {residual_class.value} modulator within {budget}")
    return found


def _solve(case: SweepCase, config: SweepConfig):
    """Returns (outcome, upper bound the strategy promises or None, extra row fields)"""
    g, variant, strategy = case.graph, case.variant, case.strategy
    closed = variant is Variant.CLOSED

    if strategy == 'auto':
        return solve_auto(g, variant, budget=config.budget, limit=config.oracle_limit), None, {}
    if strategy == 'bipartite':
        sides = bipartition(g)
        if not closed or sides is None:
            raise PreconditionError("bipartite strategy needs a bipartite graph and closed neighborhoods")
        return solve_bipartite_cfcn(g, sides), 2, {}
    if strategy == 'split':
        partition = split_partition(g)
        if not closed or partition is None:
            raise PreconditionError("split strategy needs a split graph and closed neighborhoods")
        return solve_split_cfcn(g, partition), 3, {}
    if strategy == 'cograph':
        return color_by_components(g, lambda sub: solve_with_tree(sub, variant)), 3, {}
    if strategy == 'interval':
        if case.representation is None:
            raise PreconditionError("interval strategy needs a representation")
        return solve_interval(g, case.representation, variant), 4, {}
    if strategy == 'lemma1':
        modulator = _modulator(case, ResidualClass.CLUSTER, config.budget)
        bound = modulator.d + 2 if closed else 2 * modulator.d + 2
        outcome = solve_lemma1(g, modulator, variant)
        if not closed and modulator.d == 0:
            bound = 3
        return outcome, bound, {'d': modulator.d}
    if strategy == 'fpt':
        modulator = _modulator(case, ResidualClass.CLUSTER, config.budget)
        return minimize_via_kernel(g, modulator, variant, limit=config.kernel_limit), None, {'d': modulator.d}
    if strategy == 'threshold':
        modulator = _modulator(case, ResidualClass.THRESHOLD, config.budget)
        approximation = approx_threshold(g, modulator, variant)
        extra = {
            'd': modulator.d,
            'partial_optimum': approximation.partial_optimum,
            'bound_guaranteed': approximation.bound_guaranteed,
        }
        return approximation.outcome, None, extra
    raise PreconditionError(f"unknown strategy {strategy!r}")


def evaluate_case(case: SweepCase, config: SweepConfig) -> Dict:
    row = {
        'label': case.label,
        'n': case.graph.n,
        'm': case.graph.m,
        'variant': case.variant.value,
        'strategy': case.strategy,
        'status': 'ok',
        'colors': None,
        'optimum': None,
        'gap': None,
        'exact_claimed': None,
        'detail': '',
    }
    try:
        outcome, bound, extra = _solve(case, config)
    except InfeasibleError as e:
        row.update(status='infeasible', detail=str(e))
        return row
    except SizeGuardError as e:
        row.update(status='refused', detail=str(e))
        return row
    except SolverDefectError as e:
        row.update(status='defect', detail=str(e))
        return row
    except PreconditionError as e:
        row.update(status='skipped', detail=str(e))
        return row

    row.update(extra)
    row.update(colors=outcome.colors_used, exact_claimed=outcome.is_exact, strategy_used=outcome.strategy)
    if not verify(outcome.coloring, case.variant):
        row.update(status='defect', detail='coloring failed verification')
        return row
    if bound is not None and outcome.colors_used > bound:
        row.update(status='bound', detail=f"{outcome.colors_used} colors above the promised {bound}")

    if case.graph.n <= config.oracle_limit:
        optimum = exact_cf(case.graph, case.variant, limit=config.oracle_limit).chromatic
        row['optimum'] = optimum
        if optimum is not None:
            row['gap'] = outcome.colors_used - optimum
            if row['gap'] < 0:
                row.update(status='defect', detail=f"fewer colors than the optimum {optimum}")
            elif outcome.is_exact and row['gap'] > 0:
                row.update(status='defect', detail=f"claimed exact but the optimum is {optimum}")
            elif case.strategy == 'threshold' and extra.get('bound_guaranteed'):
                allowed = 1 if case.variant is Variant.CLOSED else 2
                if row['gap'] > allowed:
                    row.update(status='bound', detail=f"gap {row['gap']} above the additive {allowed}")
    return row


def build_cases(family: str, strategy: str, variant, graph_class=None, min_n: int = 2, max_n: int = 5,
                count: int = 100, seed: int = 0, d: int = 0, p: float = 0.5) -> Iterator[SweepCase]:
    variant = Variant.parse(variant)
    if family == 'atlas':
        for i, g in enumerate(enumerate_small(max_n, graph_class, smallest=min_n)):
            yield SweepCase(f"atlas-{i}", g, variant, strategy)
    elif family == 'split':
        for n in range(min_n, max_n + 1):
            for i, (g, _) in enumerate(enumerate_split(n)):
                yield SweepCase(f"split-{n}-{i}", g, variant, strategy)
    elif family == 'random':
        if graph_class is None:
            raise PreconditionError("the random family needs --class")
        for offset in range(count):
            n = min_n + offset % (max_n - min_n + 1)
            spec = GenSpec(GenClass.parse(graph_class), n=n, seed=seed + offset, d=min(d, n), p=p, connected=True)
            instance = next(gen_many(spec, 1))
            yield SweepCase(
                f"{spec.graph_class.value}-n{n}-s{spec.seed}",
                instance.graph,
                variant,
                strategy,
                representation=instance.representation,
                modulator=instance.modulator,
            )
    else:
        raise PreconditionError(f"unknown family {family!r}")


def run_sweep(cases: List[SweepCase], config: SweepConfig, jobs: int = 1) -> pd.DataFrame:
    rows = Parallel(n_jobs=jobs)(delayed(evaluate_case)(case, config) for case in cases)
    frame = pd.DataFrame(rows)
    logger.info(f"swept {len(frame)} cases with {jobs} job(s)")
    return frame


def summarize(frame: pd.DataFrame) -> Dict[str, object]:
    summary: Dict[str, object] = {'cases': len(frame)}
    counts = frame['status'].value_counts() if len(frame) else pd.Series(dtype=int)
    for status in STATUSES:
        summary[f"status.{status}"] = int(counts.get(status, 0))
    gaps = frame['gap'].dropna().astype(int) if len(frame) else pd.Series(dtype=int)
    summary['compared'] = len(gaps)
    summary['max_gap'] = int(gaps.max()) if len(gaps) else 0
    summary['mean_gap'] = round(float(gaps.mean()), 4) if len(gaps) else 0.0
    for gap, total in gaps.value_counts().sort_index().items():
        summary[f"gap.{gap}"] = int(total)
    colors = frame['colors'].dropna() if len(frame) else pd.Series(dtype=int)
    summary['max_colors'] = int(colors.max()) if len(colors) else 0
    return summary
