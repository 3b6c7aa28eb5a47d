"""
Seeded instances: Hermitian matrices, interlacing pairs and swapped pairs.

Trial i of a run always uses SplitMix64(derive_seed(seed, i)), so `gen`
writes exactly the matrices that `check` generates for the same seed.
"""
import json
import logging
import os
from fractions import Fraction

from interlace_checker.errors import InputFormatError
from interlace_checker.hermitian import HermitianMatrix, random_hermitian
from interlace_checker.helpers.rng import SplitMix64, derive_seed
from interlace_checker.poly_core import Polynomial

logger = logging.getLogger(__name__)

ROOT_DENOMINATOR_MAX = 4
MATRIX_FILE_TEMPLATE = 'matrix_{:04d}.json'


def random_chain(rng, n, bound):
    """2n - 1 sorted rationals with small denominators; repeats make the chain weak."""
    return sorted(
        Fraction(rng.randint(-bound, bound), rng.randint(1, ROOT_DENOMINATOR_MAX))
        for _ in range(2 * n - 1)
    )


def pair_from_chain(chain):
    """Even chain positions are roots of f, odd positions roots of g."""
    return Polynomial.from_roots(chain[0::2]), Polynomial.from_roots(chain[1::2])


def random_interlacing_pair(rng, n, bound):
    chain = random_chain(rng, n, bound)
    f, g = pair_from_chain(chain)
    return chain, f, g


def swap_adjacent(chain, index):
    swapped = list(chain)
    swapped[index], swapped[index + 1] = swapped[index + 1], swapped[index]
    return pair_from_chain(swapped)


def random_swapped_pair(rng, chain):
    """Swaps a random pair of distinct neighbours; None when the chain is constant."""
    candidates = [i for i in range(len(chain) - 1) if chain[i] != chain[i + 1]]
    if not candidates:
        return None
    return swap_adjacent(chain, candidates[rng.randint(0, len(candidates) - 1)])


def trial_matrix(rng, size_min, size_max, bound):
    return random_hermitian(rng, rng.randint(size_min, size_max), bound)


def dump_json(data):
    return json.dumps(data, indent=4, sort_keys=True) + '\n'


def write_instances(config):
    """Writes one matrix file per trial into config.out_path; returns the paths."""
    os.makedirs(config.out_path, exist_ok=True)
    paths = []
    for trial in range(config.trials):
        rng = SplitMix64(derive_seed(config.seed, trial))
        matrix = trial_matrix(rng, config.size_min, config.size_max, config.entry_bound)
        path = os.path.join(config.out_path, MATRIX_FILE_TEMPLATE.format(trial))
        with open(path, mode='w', encoding='utf-8') as fs:
            fs.write(dump_json(matrix.to_json()))
        logger.debug('Wrote %dx%d matrix to %s', matrix.n, matrix.n, path)
        paths.append(path)
    return paths


def load_instance(path):
    """Reads a matrix file or a polynomial-pair file: ('matrix', data) or ('pair', data)."""
    with open(path, mode='r', encoding='utf-8') as fs:
        try:
            data = json.load(fs)
        except UnicodeDecodeError as e:
            raise InputFormatError(f'Not UTF-8 text: {e}', path) from e
        except json.decoder.JSONDecodeError as e:
            raise InputFormatError(f'Unreadable JSON: {e}', path) from e

    if isinstance(data, dict) and 'entries' in data:
        HermitianMatrix.from_json(data, path)
        return 'matrix', data
    if isinstance(data, dict) and 'f' in data and 'g' in data:
        Polynomial.from_json(data['f'], path, 'f')
        Polynomial.from_json(data['g'], path, 'g')
        return 'pair', data
    raise InputFormatError('Expected a matrix {"n", "entries"} or a pair {"f", "g"}', path)
