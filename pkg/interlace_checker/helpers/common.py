def get_header_str(name):
    return '\n'.join([
        '=' * 80,
        name,
        '=' * 80,
        ''
    ])


def get_status_str(mode, trial, elapsed, result):
    return f'Mode: {mode}. Trial: {trial}. Elapsed time: {elapsed:.2f} sec. {result}'
