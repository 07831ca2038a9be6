"""
Handler for the ``seq`` command
"""
import sys
from argparse import Namespace
from typing import Optional, TextIO

from core.exceptions import EXIT_OK
from core.logging import get_logger
from core.stencil import read_stencil_argument
from core.validators import SEQ_SCHEMA
from services.sequence_service import sequence_service
from templates.report_templates import BEST_EFFORT_NOTICE, format_report

logger = get_logger(__name__)


def handle_seq(args: Namespace, out: Optional[TextIO] = None) -> int:
    """Print the invertibility sequence of M_1..M_n"""
    out = out or sys.stdout
    params = SEQ_SCHEMA.validate({
        'stencil': args.stencil,
        'field': args.field,
        'n': args.n,
        'algo': args.algo,
        'format': args.format,
    })
    stencil = read_stencil_argument(params['stencil'], params['field'])
    report = sequence_service.compute(stencil, params['n'], params['algo'])

    print(format_report(report, params['format']), file=out)
    if report.best_effort and params['format'] != 'json':
        print(BEST_EFFORT_NOTICE, file=sys.stderr)
    return EXIT_OK
