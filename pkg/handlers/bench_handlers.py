"""
Handler for the ``bench`` command
"""
import sys
from argparse import Namespace
from typing import Optional, TextIO

from config.settings import get_settings
from core.exceptions import EXIT_OK
from core.validators import BENCH_SCHEMA
from services.bench_service import bench_service
from templates.report_templates import BEST_EFFORT_NOTICE, format_bench_csv, format_bench_table


def handle_bench(args: Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    settings = get_settings()
    params = BENCH_SCHEMA.validate({
        'k': args.k,
        'n': args.n,
        'field': args.field,
        'algo': args.algo,
        'seed': args.seed,
        'workers': args.workers,
    })
    seed = params['seed'] if params['seed'] is not None else settings.bench.seed
    workers = params['workers'] or settings.bench.workers

    cells = bench_service.run(params['field'], params['k'], params['n'], params['algo'],
                              seed=seed, workers=workers)
    if args.csv:
        out.write(format_bench_csv(cells))
    else:
        print(format_bench_table(cells), file=out)
    if not params['field'].exact:
        print(BEST_EFFORT_NOTICE, file=sys.stderr)
    return EXIT_OK
