import sys
import logging


def init_logging(display_level=logging.INFO, file_level=logging.NOTSET, filename='ossieve.log'):
    """
    (Re)configures the ``ossieve`` logger.

    :param display_level: Level of the stdout handler.
    :param file_level: Level of the file handler; ``NOTSET`` writes no file.
    :param filename: Log file, opened on the first record.
    """
    logging_level = min(display_level, file_level) if file_level > logging.NOTSET else display_level

    ossieve_logger = logging.getLogger('ossieve')
    ossieve_logger.setLevel(logging_level)
    ossieve_logger.propagate = False
    ossieve_logger.display_level_ = display_level

    ossieve_logger.handlers = []

    ch = logging.StreamHandler(sys.stdout)
    ch.setLevel(display_level)
    ch.setFormatter(logging.Formatter('%(filename)s:%(lineno)d: %(message)s'))
    ossieve_logger.addHandler(ch)

    if file_level > logging.NOTSET:
        fh = logging.FileHandler(filename, mode='w', delay=True)
        fh.setLevel(file_level)
        fh.setFormatter(logging.Formatter('%(asctime)s %(filename)s:%(lineno)d: %(message)s'))
        ossieve_logger.addHandler(fh)

    return ossieve_logger


def progress_enabled(log=None):
    """True when the display level asks for INFO-level progress output (and nothing quieter)."""
    log = logger if log is None else log
    try:
        level = log.display_level_
    except AttributeError:
        level = log.getEffectiveLevel()
    return logging.INFO <= level < logging.WARN


def log_environment(jobs, log=None):
    """Writes the banner, library versions and the process count at DEBUG level."""
    from ossieve.release import __splash__, __version__
    from numba import __version__ as numba_version
    from numpy import __version__ as numpy_version
    from pathos.multiprocessing import cpu_count
    from scipy import __version__ as scipy_version

    log = logger if log is None else log
    log.debug('\n' + __splash__ + '\n')
    for name, version in [('ossieve', __version__), ('numba', numba_version), ('numpy', numpy_version),
                          ('python', '.'.join(map(str, sys.version_info[:3]))), ('scipy', scipy_version)]:
        log.debug('{:<10}{}'.format(name + ':', version))
    log.debug('Using {}/{} CPUs.'.format(jobs, cpu_count()))


def fit_string(s: str, width: int, justification='center') -> str:
    if len(s) > width:
        return s[:width - 3] + '...'
    elif justification == 'left':
        return s.ljust(width, ' ')
    elif justification == 'center':
        return s.center(width, ' ')
    elif justification == 'right':
        return s.rjust(width, ' ')
    else:
        raise ValueError('justification should be set to ''left'', ''right'', or ''center''')


logger = init_logging(display_level=logging.WARN)
