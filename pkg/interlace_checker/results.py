import os
from enum import Enum

from interlace_checker import __version__
from interlace_checker.generator import dump_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

"""
Fields that hold wall-clock timings; the only report content allowed to
differ between two runs with the same seed and config.
"""
TIMING_FIELDS = ('elapsed',)


class Result(str, Enum):
    OK = 'OK'
    FAIL = 'FAIL'
    ERROR = 'ERROR'
    CANCELED = 'CANCELED'


SUCCESS_RESULTS = [
    Result.OK,
]


def strip_timing(report):
    """Copy of a report without timing fields, for determinism comparisons."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k not in TIMING_FIELDS}
    if isinstance(report, list):
        return [strip_timing(item) for item in report]
    return report


class ResultsManager:
    def __init__(self, config):
        self.config = config

    def build_report(self, records, elapsed):
        summary = {result.value: 0 for result in Result}
        for record in records:
            summary[record['result']] += 1

        return {
            'version': __version__,
            'config': self.config.to_dict(),
            'summary': {
                'total': len(records),
                'passed': summary[Result.OK.value],
                'failed': summary[Result.FAIL.value],
                'errors': summary[Result.ERROR.value],
                'canceled': summary[Result.CANCELED.value],
            },
            'trials': records,
            'elapsed': round(elapsed, 3),
        }

    def save_report(self, report):
        directory = os.path.dirname(self.config.out_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.config.out_path, mode='w', encoding='utf-8') as fs:
            fs.write(dump_json(report))

    @staticmethod
    def is_results_ok(report):
        return report['summary']['total'] > 0 and all(map(
            lambda record: record['result'] in SUCCESS_RESULTS,
            report['trials'],
        ))
