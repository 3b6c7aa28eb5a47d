import logging
import time
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

from config.config import Mode, RunConfig
from interlace_checker.errors import InputFormatError, InternalInconsistencyError
from interlace_checker.generator import (
    load_instance, random_interlacing_pair, random_swapped_pair, trial_matrix,
)
from interlace_checker.helpers.common import get_header_str, get_status_str
from interlace_checker.helpers.rng import SplitMix64, derive_seed
from interlace_checker.hermitian import (
    HermitianMatrix, bordered_identity, bordered_pencil_scan, cauchy_check,
)
from interlace_checker.interlace import (
    Consistency, InterlaceVerdict, default_alphas, hko_crosscheck, interlaces_exact,
)
from interlace_checker.poly_core import Polynomial, format_rational
from interlace_checker.results import Result, ResultsManager

logger = logging.getLogger(__name__)

IDENTITY_ALPHA_BOUND = 100
SHIFT_BOUND = 10
SUITE_ORDER = (Mode.DEFINITION, Mode.PENCIL, Mode.IDENTITY, Mode.CAUCHY)
PAIR_MODES = (Mode.DEFINITION, Mode.PENCIL)

TrialTask = namedtuple(
    typename='TrialTask',
    field_names=(
        'mode', 'index', 'seed', 'size_min', 'size_max', 'entry_bound', 'alpha_count', 'width',
        'source', 'instance',
    ),
)


def _pair(task, rng):
    if task.instance is not None:
        return None, Polynomial.from_json(task.instance['f']), Polynomial.from_json(task.instance['g'])
    return random_interlacing_pair(rng, rng.randint(task.size_min, task.size_max), task.entry_bound)


def _validate_pair(mode, path, data):
    f = Polynomial.from_json(data['f'], path, 'f')
    g = Polynomial.from_json(data['g'], path, 'g')
    for name, p in (('f', f), ('g', g)):
        if p.is_zero():
            raise InputFormatError('Zero polynomial has no roots to interlace', path, name)
    if mode == Mode.PENCIL and f.degree != g.degree + 1:
        raise InputFormatError(f'Pencil needs deg f = deg g + 1, got {f.degree} and {g.degree}', path, 'g')


def _matrix(task):
    if task.instance is not None:
        return SplitMix64(task.seed), HermitianMatrix.from_json(task.instance, task.source)
    rng = SplitMix64(task.seed)
    return rng, trial_matrix(rng, task.size_min, task.size_max, task.entry_bound)


def check_definition(task):
    rng = SplitMix64(task.seed)
    chain, f, g = _pair(task, rng)
    report = interlaces_exact(f, g)

    t = rng.rational(SHIFT_BOUND)
    shifted = interlaces_exact(f.shift(t), g.shift(t))
    c, d = abs(rng.rational(SHIFT_BOUND)) or 1, abs(rng.rational(SHIFT_BOUND)) or 1
    scaled = interlaces_exact(f * c, g * d)

    details = {
        'f': f.to_json(),
        'g': g.to_json(),
        'interlace': report.to_json(),
        'shift': format_rational(t),
        'shift_verdict': shifted.verdict.value,
        'scale_verdict': scaled.verdict.value,
    }
    ok = shifted.verdict == report.verdict and scaled.verdict == report.verdict

    if chain is not None:
        ok = ok and report.interlaces
        swapped = random_swapped_pair(rng, chain)
        if swapped is not None:
            swapped_report = interlaces_exact(*swapped)
            details['swapped'] = {
                'f': swapped[0].to_json(),
                'g': swapped[1].to_json(),
                'interlace': swapped_report.to_json(),
            }
            ok = ok and swapped_report.verdict == InterlaceVerdict.DOES_NOT_INTERLACE
    return ok, details


def check_pencil(task):
    rng = SplitMix64(task.seed)
    alphas = default_alphas(task.seed, task.alpha_count)
    chain, f, g = _pair(task, rng)

    check = hko_crosscheck(f, g, alphas)
    details = {'f': f.to_json(), 'g': g.to_json(), 'crosscheck': check.to_json()}
    ok = check.is_consistent

    if chain is not None:
        ok = ok and check.consistency == Consistency.CONSISTENT and check.pencil.all_real
        swapped = random_swapped_pair(rng, chain)
        if swapped is not None:
            swapped_check = hko_crosscheck(*swapped, alphas)
            details['swapped'] = {
                'f': swapped[0].to_json(),
                'g': swapped[1].to_json(),
                'crosscheck': swapped_check.to_json(),
            }
            ok = ok and swapped_check.is_consistent
    return ok, details


def check_identity(task):
    rng, matrix = _matrix(task)
    alpha = rng.rational(IDENTITY_ALPHA_BOUND)
    identity = bordered_identity(matrix, alpha)
    pencil = bordered_pencil_scan(matrix, [rng.rational(IDENTITY_ALPHA_BOUND) for _ in range(task.alpha_count)])

    details = {
        'matrix': matrix.to_json(),
        'identity': identity.to_json(),
        'pencil': pencil.to_json(),
    }
    return identity.exact_match and identity.pointwise_match and pencil.all_real, details


def check_cauchy(task):
    _, matrix = _matrix(task)
    reports = [cauchy_check(matrix, k, task.width) for k in range(matrix.n)]
    details = {
        'matrix': matrix.to_json(),
        'eigen_intervals': reports[0].eigen_intervals_A.to_json(),
        'deletions': [
            {
                'k': report.k,
                'verdict': report.interlace.verdict.value,
                'eigen_intervals': report.eigen_intervals_B.to_json(),
            }
            for report in reports
        ],
    }
    return all(report.interlace.interlaces for report in reports), details


TRIAL_CHECKS = {
    Mode.DEFINITION: check_definition,
    Mode.PENCIL: check_pencil,
    Mode.IDENTITY: check_identity,
    Mode.CAUCHY: check_cauchy,
}


def run_trial(task: TrialTask):
    """Runs one trial in isolation; a broken theorem is FAIL, anything unexpected is ERROR."""
    start = time.time()
    try:
        ok, details = TRIAL_CHECKS[task.mode](task)
        result = Result.OK if ok else Result.FAIL
    except InternalInconsistencyError as e:
        result = Result.FAIL
        details = {'error': str(e)}
        if e.report is not None:
            details['report'] = e.report.to_json()
    except Exception as e:
        result = Result.ERROR
        details = {'error': f'{type(e).__name__}: {e}'}

    return {
        'mode': task.mode.value,
        'trial': task.index,
        'seed': task.seed,
        'source': task.source,
        'result': result.value,
        'details': details,
        'elapsed': round(time.time() - start, 3),
    }


class Tester:

    def __init__(self, config: RunConfig):
        self.config: RunConfig = config

        self.__records = []
        self.__report = None

        self.__results_manager = ResultsManager(config=config)

    def __log(self, msg):
        if self.config.console_mode:
            logger.info(msg)

    def __modes(self):
        return SUITE_ORDER if self.config.mode == Mode.ALL else (self.config.mode,)

    def __task(self, mode, index, source=None, instance=None):
        return TrialTask(
            mode=mode,
            index=index,
            seed=derive_seed(self.config.seed, index),
            size_min=self.config.size_min,
            size_max=self.config.size_max,
            entry_bound=self.config.entry_bound,
            alpha_count=self.config.alpha_count,
            width=self.config.width,
            source=source,
            instance=instance,
        )

    def __input_tasks(self):
        loaded = [(path, *load_instance(path)) for path in self.config.inputs]
        tasks = []
        for mode in self.__modes():
            wanted = 'pair' if mode in PAIR_MODES else 'matrix'
            for index, (path, kind, data) in enumerate(loaded):
                if kind != wanted:
                    if self.config.mode != Mode.ALL:
                        raise InputFormatError(f'Mode {mode.value} needs a {wanted} file, got a {kind} file', path)
                    continue
                if kind == 'matrix' and data['n'] < 2:
                    raise InputFormatError('Matrix modes need n >= 2', path, 'n')
                if kind == 'pair':
                    _validate_pair(mode, path, data)
                tasks.append(self.__task(mode, index, source=path, instance=data))
        return tasks

    def __tasks(self):
        if self.config.inputs:
            return self.__input_tasks()
        return [
            self.__task(mode, index)
            for mode in self.__modes()
            for index in range(self.config.trials)
        ]

    def __record(self, record):
        status = get_status_str(record['mode'], record['trial'], record['elapsed'], record['result'])
        logger.info(status)
        if record['result'] != Result.OK.value:
            self.__log(get_header_str(status))
            self.__log(record['details'])
        self.__records.append(record)

    def test_trials(self):
        """Runs every trial, then builds and saves the report. Input errors propagate."""
        tasks = self.__tasks()
        start = time.time()

        done = 0
        try:
            if self.config.jobs > 1:
                with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                    for record in pool.map(run_trial, tasks):
                        self.__record(record)
                        done += 1
            else:
                for task in tasks:
                    self.__record(run_trial(task))
                    done += 1
        except KeyboardInterrupt:
            for task in tasks[done:]:
                self.__record({
                    'mode': task.mode.value,
                    'trial': task.index,
                    'seed': task.seed,
                    'source': task.source,
                    'result': Result.CANCELED.value,
                    'details': {},
                    'elapsed': 0.0,
                })

        self.__report = self.__results_manager.build_report(self.__records, time.time() - start)
        self.__results_manager.save_report(self.__report)
        return self.__report

    def is_results_ok(self):
        return self.__report is not None and self.__results_manager.is_results_ok(self.__report)
