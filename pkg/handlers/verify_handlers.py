"""
Handler for the ``verify`` command
"""
import sys
from argparse import Namespace
from typing import Optional, TextIO

from config.settings import get_settings
from core.exceptions import EXIT_OK, ValidationError
from core.logging import get_logger
from core.stencil import read_stencil_argument
from core.validators import VERIFY_SCHEMA
from services.verification_service import verification_service
from templates.report_templates import format_verify_ok

logger = get_logger(__name__)


def handle_verify(args: Namespace, out: Optional[TextIO] = None) -> int:
    """Cross-check sliding, naive and dense sequences plus the block identity"""
    out = out or sys.stdout
    settings = get_settings()
    params = VERIFY_SCHEMA.validate({
        'stencil': args.stencil,
        'field': args.field,
        'n': args.n,
        'random': args.random,
        'k': args.k,
        'seed': args.seed,
        'inject_fault': args.inject_fault,
    })

    if params['n'] > settings.verify.max_n:
        raise ValidationError(f"n must be at most {settings.verify.max_n} for verify",
                              field='n', value=params['n'])

    if params['random'] is not None:
        if params['stencil'] is not None:
            raise ValidationError("use either --stencil or --random, not both", field='stencil')
        if params['k'] is None:
            raise ValidationError("--random needs --k", field='k')
        seed = params['seed'] if params['seed'] is not None else settings.verify.default_seed
        outcome = verification_service.verify_random(
            params['field'], params['random'], params['k'], params['n'], seed,
            inject_fault=params['inject_fault'],
        )
        print(format_verify_ok(outcome, single=False), file=out)
        return EXIT_OK

    if params['stencil'] is None:
        raise ValidationError("verify needs --stencil or --random", field='stencil')
    stencil = read_stencil_argument(params['stencil'], params['field'])
    outcome = verification_service.verify_stencil(stencil, params['n'], inject_fault=params['inject_fault'])
    print(format_verify_ok(outcome, single=True), file=out)
    return EXIT_OK
