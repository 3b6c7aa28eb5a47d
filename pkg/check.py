#!/usr/bin/env python3

import argparse
import json
import logging
import os
import sys

from config.config import Mode, RunConfig
from interlace_checker.errors import ConfigError, InputFormatError
from interlace_checker.generator import write_instances
from interlace_checker.results import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION
from interlace_checker.tester import Tester

FORMAT = '%(message)s'
DEFAULT_CONFIG_PATH = './config.json'

logger = logging.getLogger('InterlaceChecker')


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '-c', '--config',
        help=f'Path to a JSON config (default: {DEFAULT_CONFIG_PATH} if it exists)',
    )
    common.add_argument(
        '-v', '--console-mode', action='store_true',
        help='Use this flag to print details of failed trials',
    )
    common.add_argument(
        '-d', '--debug-mode', action='store_true',
        help='Use this flag to enable debug mode',
    )
    common.add_argument('--seed', type=int, help='Master seed, a 64-bit unsigned integer')
    common.add_argument('--trials', type=int, help='Trials per mode (matrix files for gen)')
    common.add_argument('--size-min', type=int, help='Smallest matrix size or degree of f')
    common.add_argument('--size-max', type=int, help='Largest matrix size or degree of f')
    common.add_argument('--bound', type=int, help='Bound on real and imaginary parts of generated entries')
    common.add_argument('--alphas', type=int, help='Number of random alphas per pencil scan')
    common.add_argument(
        '--mode', choices=[mode.value for mode in Mode],
        help='Suite to run: definition, pencil, identity, cauchy or all',
    )
    common.add_argument('--out', help='Report file for check, output directory for gen')
    common.add_argument('--width', help='Eigenvalue interval refinement width, such as 1/1048576')
    common.add_argument('--jobs', type=int, help='Worker processes for independent trials')

    parser = argparse.ArgumentParser(description='Interlace Checker')
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('gen', parents=[common], help='Write seeded Hermitian matrix files')
    check = subparsers.add_parser('check', parents=[common], help='Run the property suites')
    check.add_argument(
        'inputs', nargs='*',
        help='Matrix or polynomial-pair JSON files; instances are generated from the seed if omitted',
    )
    return parser


def load_config_json(path):
    if path is None:
        if not os.path.exists(DEFAULT_CONFIG_PATH):
            return {}
        path = DEFAULT_CONFIG_PATH
    try:
        with open(path, 'r', encoding='utf-8') as fs:
            data = json.load(fs)
    except (OSError, ValueError) as e:
        raise ConfigError(f'Cannot read config {path}: {e}') from e
    if not isinstance(data, dict):
        raise ConfigError(f'Config {path} must hold a JSON object, got {type(data).__name__}')
    return data


def cmd_gen(config: RunConfig):
    paths = write_instances(config)
    logger.info(f'Wrote {len(paths)} matrix files to {config.out_path}')
    return EXIT_OK


def cmd_check(config: RunConfig):
    tester = Tester(config=config)
    report = tester.test_trials()
    summary = report['summary']
    logger.info(
        f'Passed: {summary["passed"]}/{summary["total"]}. '
        f'Failed: {summary["failed"]}. Errors: {summary["errors"]}. Report: {config.out_path}'
    )
    return EXIT_OK if tester.is_results_ok() else EXIT_VIOLATION


def main(argv=None):
    args: argparse.Namespace = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug_mode else logging.INFO, format=FORMAT)

    try:
        config = RunConfig(cli_args=args, config_json=load_config_json(args.config))
        if config.command == 'gen':
            return cmd_gen(config)
        return cmd_check(config)
    except (ConfigError, InputFormatError) as e:
        logger.error(f'Input error: {e}')
    except OSError as e:
        logger.error(f'I/O error: {e}')
    return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
