"""
Command line entry point: ``toeplitz-inv seq|verify|bench``

Exit codes: 0 success, 1 usage error, 2 invalid stencil or field spec,
3 verification mismatch.
"""
import argparse
import sys
from typing import Callable, Dict, List, NoReturn, Optional

from config.settings import get_settings
from core.exceptions import EXIT_USAGE, ToeplitzError, VerificationMismatch
from core.logging import LogContext, get_logger, log_error, setup_logging
from handlers.bench_handlers import handle_bench
from handlers.sequence_handlers import handle_seq
from handlers.verify_handlers import handle_verify
from templates.report_templates import format_counterexample
from utils.helpers import truncate_text

logger = get_logger(__name__)

HANDLERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'seq': handle_seq,
    'verify': handle_verify,
    'bench': handle_bench,
}


class CliArgumentParser(argparse.ArgumentParser):
    """argparse reports usage errors with exit status 1"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog='toeplitz-inv',
        description='Invertibility sequences of banded Toeplitz matrices',
    )
    subparsers = parser.add_subparsers(dest='command', parser_class=CliArgumentParser)
    subparsers.required = True

    seq = subparsers.add_parser('seq', help='invertibility of M_1..M_n for one stencil')
    seq.add_argument('--stencil', required=True, help='x_{-k},...,x_k or @file')
    seq.add_argument('--n', required=True, help='number of orders (>= 1)')
    seq.add_argument('--field', required=True, help='gf:<p>, rational or approx:<tol>')
    seq.add_argument('--algo', default='sliding', help='sliding (default) or naive')
    seq.add_argument('--format', default='bits', help='bits (default), runs or json')

    verify = subparsers.add_parser('verify', help='cross-check sliding, naive and dense results')
    verify.add_argument('--stencil', help='x_{-k},...,x_k or @file')
    verify.add_argument('--n', required=True, help='number of orders, or the maximum with --random')
    verify.add_argument('--field', required=True, help='gf:<p>, rational or approx:<tol>')
    verify.add_argument('--random', help='number of seeded random stencils')
    verify.add_argument('--k', help='maximum half-bandwidth with --random')
    verify.add_argument('--seed', help='random seed')
    verify.add_argument('--inject-fault', dest='inject_fault', help=argparse.SUPPRESS)

    bench = subparsers.add_parser('bench', help='op counts and wall time per (k, n, algo)')
    bench.add_argument('--k', required=True, help='comma separated half-bandwidths')
    bench.add_argument('--n', required=True, help='comma separated orders')
    bench.add_argument('--field', required=True, help='gf:<p>, rational or approx:<tol>')
    bench.add_argument('--algo', default='sliding', help='comma separated: sliding,naive')
    bench.add_argument('--seed', help='stencil seed')
    bench.add_argument('--workers', help='worker processes')
    bench.add_argument('--csv', action='store_true', help='RFC 4180 output with a header row')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code"""
    args = build_parser().parse_args(argv)

    try:
        settings = get_settings()
        settings.validate()
        setup_logging(
            level=settings.logging.level.value,
            structured=settings.logging.structured,
            file_path=settings.logging.file_path,
        )

        stencil_text = truncate_text(getattr(args, 'stencil', None) or '', 64)
        with LogContext(command=args.command, stencil=stencil_text):
            logger.debug(f"Running {args.command}")
            return HANDLERS[args.command](args)

    except VerificationMismatch as e:
        print(format_counterexample(e.counterexample))
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ToeplitzError as e:
        logger.debug(f"{args.command} failed: {e}", extra={'error': e.to_dict()})
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        log_error(logger, e, operation=args.command)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
