import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from interlace_checker.errors import ConfigError
from interlace_checker.hermitian import DEFAULT_WIDTH
from interlace_checker.helpers.rng import MASK_64
from interlace_checker.interlace import DEFAULT_RANDOM_ALPHAS

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    DEFINITION = 'definition'
    PENCIL = 'pencil'
    IDENTITY = 'identity'
    CAUCHY = 'cauchy'
    ALL = 'all'


"""
Modes that work on matrices need at least a 2x2 matrix to delete a row from.
"""
MATRIX_MODES = (Mode.IDENTITY, Mode.CAUCHY, Mode.ALL)

"""
Where each subcommand writes by default: `gen` fills a directory with
matrix files, `check` writes one report.
"""
default_out_paths: dict = {
    'gen': './instances',
    'check': './results.json',
}


@dataclass
class RunConfig:
    """
    Interlace Checker configuration

    Sets configuration values in the following order:

    1. CLI arguments.
    2. Configuration values in a .json configuration file.
    3. Default values.
    """
    command: str  # Subcommand: gen or check

    # Parameters of the generated instances
    seed: int  # Master seed, 64-bit unsigned (CLI/config file or 0)
    trials: int  # Trials per mode, or matrix files for gen (CLI/config file or 20)
    size_min: int  # Smallest matrix size / degree of f (CLI/config file or 2)
    size_max: int  # Largest matrix size / degree of f (CLI/config file or 6)
    entry_bound: int  # Bound on real and imaginary parts of entries (CLI/config file or 10)
    alpha_count: int  # Random alphas per pencil scan (CLI/config file or 64)
    width: Fraction  # Eigenvalue interval refinement width (CLI/config file or 1/2^20)

    # Parameters to choose what runs and where results go
    mode: Mode  # Suite to run (CLI/config file or 'all')
    inputs: list  # Matrix or polynomial-pair files to check instead of generated instances
    out_path: str  # Report file for check, directory for gen
    jobs: int  # Worker processes for trials (CLI/config file or 1)

    # Parameters to choose the check modes
    console_mode: bool  # Print details of failed trials
    debug_mode: bool  # Run with the verbose messages

    def __init__(self, cli_args, config_json=None):
        config_json = config_json or {}

        def pick(arg_name, json_name, default):
            value = getattr(cli_args, arg_name, None)
            if value is not None:
                return value
            return config_json.get(json_name, default)

        self.command = getattr(cli_args, 'command', None) or 'check'

        try:
            self.seed = int(pick('seed', 'seed', 0))
            self.trials = int(pick('trials', 'trials', 20))
            self.size_min = int(pick('size_min', 'size_min', 2))
            self.size_max = int(pick('size_max', 'size_max', 6))
            self.entry_bound = int(pick('bound', 'entry_bound', 10))
            self.alpha_count = int(pick('alphas', 'alpha_count', DEFAULT_RANDOM_ALPHAS))
            self.width = Fraction(str(pick('width', 'width', DEFAULT_WIDTH)))
            self.jobs = int(pick('jobs', 'jobs', 1))
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ConfigError(f'Invalid numeric option: {e}') from e

        try:
            self.mode = Mode(pick('mode', 'mode', Mode.ALL.value))
        except ValueError as e:
            raise ConfigError(f'Unknown mode: {e}') from e

        inputs = getattr(cli_args, 'inputs', None) or config_json.get('inputs', [])
        if not isinstance(inputs, list):
            raise ConfigError(f'Inputs must be a list of file paths, got {inputs!r}')
        self.inputs = list(inputs)
        self.out_path = pick('out', 'out_path', default_out_paths.get(self.command, './results.json'))

        self.console_mode = bool(getattr(cli_args, 'console_mode', False))
        self.debug_mode = bool(getattr(cli_args, 'debug_mode', False))

        self.__validate()

        if self.debug_mode:
            logger.debug(self)

    def __validate(self):
        if not 0 <= self.seed <= MASK_64:
            raise ConfigError(f'Seed must be a 64-bit unsigned integer, got {self.seed}')
        if self.trials < 1:
            raise ConfigError(f'Trials must be >= 1, got {self.trials}')
        if self.entry_bound < 1:
            raise ConfigError(f'Entry bound must be >= 1, got {self.entry_bound}')
        if self.alpha_count < 1:
            raise ConfigError(f'Alpha count must be >= 1, got {self.alpha_count}')
        if self.jobs < 1:
            raise ConfigError(f'Jobs must be >= 1, got {self.jobs}')
        if self.width <= 0:
            raise ConfigError(f'Width must be positive, got {self.width}')
        if not isinstance(self.out_path, str):
            raise ConfigError(f'Output path must be a string, got {self.out_path!r}')
        if not all(isinstance(path, str) for path in self.inputs):
            raise ConfigError(f'Inputs must be a list of file paths, got {self.inputs!r}')
        if not 1 <= self.size_min <= self.size_max:
            raise ConfigError(f'Need 1 <= size-min <= size-max, got {self.size_min} and {self.size_max}')

        needs_matrices = self.command == 'gen' or self.mode in MATRIX_MODES
        if needs_matrices and self.size_min < 2:
            raise ConfigError(f'Mode {self.mode.value} needs size-min >= 2, got {self.size_min}')

    def to_dict(self):
        """The options that determine report content; jobs and log modes are left out."""
        return {
            'command': self.command,
            'seed': self.seed,
            'trials': self.trials,
            'size_min': self.size_min,
            'size_max': self.size_max,
            'entry_bound': self.entry_bound,
            'alpha_count': self.alpha_count,
            'width': str(self.width),
            'mode': self.mode.value,
            'inputs': list(self.inputs),
        }

    def __str__(self):
        return '\n'.join([f'{k}: {v}' for k, v in self.__dict__.items()])
