"""
Standalone ``sumo`` entry point for projects without a Django project.

Usage:
    sumo [--verbosity N] <subcommand> [options]
"""
import argparse
import logging
import sys
from typing import List, Optional

import django
from django.conf import settings
from django.core.management import execute_from_command_line

LOG_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}


def configure_settings() -> None:
    if settings.configured:
        return
    settings.configure(
        INSTALLED_APPS=['solidity_mutator'],
        CACHES={
            'default': {
                'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
                'LOCATION': 'solidity-mutator',
            }
        },
        USE_TZ=True,
        LOGGING_CONFIG=None,
    )
    django.setup()


def configure_logging(verbosity: int) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger = logging.getLogger('solidity_mutator')
    logger.addHandler(handler)
    logger.setLevel(LOG_LEVELS.get(verbosity, logging.DEBUG))


def main(argv: Optional[List[str]] = None) -> None:
    argv = list(sys.argv[1:] if argv is None else argv)
    verbosity_parser = argparse.ArgumentParser(add_help=False)
    verbosity_parser.add_argument('-v', '--verbosity', type=int, default=1)
    known, _ = verbosity_parser.parse_known_args(argv)

    configure_settings()
    configure_logging(known.verbosity)
    execute_from_command_line(['sumo', 'sumo', *argv])


if __name__ == '__main__':
    main()
