"""
Benchmark service: op counts, wall time and resident memory per (k, n, algo) cell
"""
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import List, Optional, Sequence

import numpy as np

from core.field import FieldSpec
from core.logging import get_logger, log_performance
from core.monitoring import PHASE_ELIMINATE, PHASE_GENERATE, OpCounter, OperationTimer, process_rss_bytes
from core.stencil import random_stencil
from models import BenchCell
from services.sequence_service import ALGORITHMS

logger = get_logger(__name__)


def predicted_budget(k: int, n: int) -> int:
    """Generate-phase mul+div k(2k+1)n plus average eliminate muls k^2 n / 2"""
    return k * (2 * k + 1) * n + k * k * n // 2


def bench_stencil_rng(seed: int, k: int) -> np.random.Generator:
    """Every algorithm in a bench run sees the same stencil for a given k"""
    return np.random.default_rng([seed, k])


def run_cell(field: FieldSpec, k: int, n: int, algo: str, seed: int) -> BenchCell:
    """Measure one cell; module level so worker processes can pickle it"""
    stencil = random_stencil(field, k, bench_stencil_rng(seed, k), full_band=True)
    counter = OpCounter()
    with OperationTimer(f"bench {algo} k={k} n={n}") as timer:
        ALGORITHMS[algo](stencil, n, counter)

    return BenchCell(
        k=k,
        n=n,
        algo=algo,
        field=str(field),
        wall_ms=timer.duration_ms,
        generate_mul_div=counter[PHASE_GENERATE].mul_div,
        eliminate_muls=counter[PHASE_ELIMINATE].muls,
        checks=counter.checks,
        rss_bytes=process_rss_bytes(),
        predicted=predicted_budget(k, n) if algo == 'sliding' else None,
    )


class BenchService:

    def run(self,
            field: FieldSpec,
            ks: Sequence[int],
            ns: Sequence[int],
            algos: Sequence[str],
            seed: int = 1,
            workers: int = 1,
            executor: Optional[ProcessPoolExecutor] = None) -> List[BenchCell]:
        """All cells of the grid, ordered by (k, n, algo) whatever the completion order"""
        grid = list(product(ks, ns, algos))
        logger.info(f"Running {len(grid)} bench cells on {workers} worker(s)")

        if workers <= 1 and executor is None:
            cells = [run_cell(field, k, n, algo, seed) for k, n, algo in grid]
        else:
            pool = executor or ProcessPoolExecutor(max_workers=workers)
            try:
                futures = [pool.submit(run_cell, field, k, n, algo, seed) for k, n, algo in grid]
                cells = [future.result() for future in futures]
            finally:
                if executor is None:
                    pool.shutdown()

        for cell in cells:
            log_performance(logger, f"bench {cell.algo}", cell.wall_ms, k=cell.k, n=cell.n,
                            eliminate_muls=cell.eliminate_muls)
        return sorted(cells, key=lambda cell: cell.sort_key)


# Global instance
bench_service = BenchService()
