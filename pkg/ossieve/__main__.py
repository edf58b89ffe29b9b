#!/usr/bin/env python
"""Order-statistic sieve estimation.

Usage:
  ossieve simulate [options]
  ossieve estimate --data <file> [options]
  ossieve montecarlo [options]
  ossieve rossberg [options]
  ossieve (-v | --version)
  ossieve (-h | --help)

Options:
  -h, --help                show this screen and exit
  -v, --version             show version

  -c, --config <file>       flat YAML run configuration; defaults are used
                            for missing keys or when omitted
  -s, --seed <int>          master seed (overrides the configuration)
  -j, --jobs <int>          number of worker processes (overrides the
                            configuration)
  -o, --out <path>          output CSV file for simulate (data.csv), output
                            directory otherwise (results)
  --data <file>             observed sample, CSV with header x_r,x_s

  Logging options
  -l, --log <level>         specify minimum logging level [default: ERROR]
  --nolog                   suppress logging, equivalent to --log=off

  -q                        quiet mode, equivalent to --display=off
  -d, --display <level>     specify minimum verbose output level [default: INFO]

Arguments:
  <level>                   logging level [ALL, INFO, WARN, ERROR, CRITICAL, OFF]
                            or the shortcuts 0 to 4

Exit codes:
  0 success, 2 configuration error, 3 data error, 4 estimate did not converge
  (results are still written), 5 every optimizer start infeasible

Example:
  Generate a known-truth sample and estimate from it:
    ossieve simulate -c configs/estimate.yml -o data.csv
    ossieve estimate -c configs/estimate.yml --data data.csv -o fit

  Monte Carlo study on four processes, with debug output:
    ossieve montecarlo -c configs/montecarlo_n1000_k4.yml -j 4 -d0 -o mc1000

  Rossberg counterexample tables
    ossieve rossberg -c configs/rossberg.yml -o rossberg
"""
import os
import sys
import logging

import docopt

import ossieve
from ossieve.utils.config import load_config
from ossieve.utils.exceptions import ConfigurationError, DataError, DomainError, EstimationFailedError, \
    EXIT_CONFIG, EXIT_NOT_CONVERGED, EXIT_SUCCESS, exit_code
from ossieve.utils.logging import logger

levels = {'ALL': logging.DEBUG,
          'DEBUG': logging.DEBUG,
          '0': logging.DEBUG,
          'INFO': logging.INFO,
          '1': logging.INFO,
          'WARNING': logging.WARN,
          'WARN': logging.WARN,
          '2': logging.WARN,
          'ERROR': logging.ERROR,
          '3': logging.ERROR,
          'CRITICAL': logging.CRITICAL,
          '4': logging.CRITICAL,
          'OFF': logging.CRITICAL + 1}


def _integer_option(options, name):
    value = options[name]
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError('{} expects an integer, got {!r}'.format(name, value))


def _fail(error):
    code = exit_code(error)
    logger.error(str(error))
    print('ossieve: {}'.format(error), file=sys.stderr)
    return code


def main(argv=None):
    options = docopt.docopt(__doc__, argv=argv, version=ossieve.__version__)

    # Process logging options
    if options['--nolog']:
        options['--log'] = 'off'

    if options['--log'].upper() not in levels:
        print('Invalid value specified for logging level', file=sys.stderr)
        return EXIT_CONFIG
    logging_lvl = levels[options['--log'].upper()]

    # Process console output options
    if options['-q']:
        options['--display'] = 'off'

    if options['--display'].upper() not in levels:
        print('Invalid value specified for display level', file=sys.stderr)
        return EXIT_CONFIG
    display_lvl = levels[options['--display'].upper()]

    ossieve.add_logger(display_level=display_lvl, file_level=logging_lvl)

    out = options['--out']
    if out is None:
        out = 'data.csv' if options['simulate'] else 'results'
    out = os.path.abspath(out.strip())

    try:
        config = load_config(options['--config'], seed=_integer_option(options, '--seed'),
                             jobs=_integer_option(options, '--jobs'))
        if options['simulate']:
            ossieve.run_simulate(config, out)
        elif options['estimate']:
            result = ossieve.run_estimate(config, options['--data'], out)
            if not result.converged:
                logger.warning('Best start did not converge: {}'.format(result.message))
                return EXIT_NOT_CONVERGED
        elif options['montecarlo']:
            ossieve.run_montecarlo(config, out)
        elif options['rossberg']:
            ossieve.run_rossberg(config, out)
    except (ConfigurationError, DataError, DomainError, EstimationFailedError, OSError) as e:
        return _fail(e)

    return EXIT_SUCCESS


if __name__ == '__main__':
    sys.exit(main())
