# SPDX-License-Identifier: Apache-2.0

"""Command line options."""

import argparse
from fractions import Fraction
import logging

import voluptuous
import voluptuous.humanize

from threshold_lab import commands
from threshold_lab import filet
from threshold_lab import generate
from threshold_lab import rational
from threshold_lab import sampling
from threshold_lab import threshold
from threshold_lab import version as lab_version
from threshold_lab.errors import ParseError

################################################################
# Argument types: flag text is parsed exactly, errors become usage errors

def argument_type(parse, name):
    """An argparse type from a parser raising ParseError."""

    def convert(text):
        try:
            return parse(text)
        except ParseError as error:
            raise argparse.ArgumentTypeError(str(error)) from None
    convert.__name__ = name
    return convert

def parse_integer(text, least):
    """Parse an integer at least least."""

    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"Not an integer: '{text}'") from None
    if value < least:
        raise ParseError(f"Expected an integer >= {least}, found '{text}'")
    return value

RATIONAL = argument_type(rational.parse_rational, 'rational')
PROBABILITY = argument_type(rational.parse_probability, 'probability')
POSITIVE = argument_type(rational.parse_positive, 'positive rational')
POSITIVE_INT = argument_type(lambda text: parse_integer(text, 1), 'positive integer')
NATURAL = argument_type(lambda text: parse_integer(text, 0), 'nonnegative integer')

################################################################

OPTION_GROUPS = [
    {'group_name': 'Input files',
     'group_desc': """
         Families are given by their minimal elements in a .fam file:
         a header line "n=<int>" followed by one set per line.
         Fractional covers are given in a .lam file.""",
     'group_opts': [
         {'flag': '--family',
          'metavar': 'FILE',
          'nargs': '+',
          'help': 'The family file (the ratio table accepts several).'},
         {'flag': '--lambda',
          'metavar': 'FILE',
          'dest': 'lambda_file',
          'help': """
              A fractional cover to use instead of the optimal one
              computed for the instance."""}]},

    {'group_name': 'Thresholds',
     'group_desc': None,
     'group_opts': [
         {'flag': '--tol',
          'type': POSITIVE,
          'default': threshold.DEFAULT_TOL,
          'help': """
              Bisection stops once the bracket is at most this wide.
              Accepts 2^-40, 1/1000, 0.001.  (Default: 2^-40)"""},
         {'flag': '--r',
          'type': POSITIVE_INT,
          'help': """
              Restrict fractional covers to sets of size at most R.
              (Default: unbounded)"""},
         {'flag': '--budget',
          'type': POSITIVE,
          'default': rational.HALF,
          'help': 'The weight a cover may have at p.  (Default: 1/2)'}]},

    {'group_name': 'Selector',
     'group_desc': """
         The random m-subset argument run on an instance (F, p, r).""",
     'group_opts': [
         {'flag': '--p',
          'type': PROBABILITY,
          'help': 'The probability p in (0, 1].'},
         {'flag': '--m',
          'type': POSITIVE,
          'help': """
              The sample size.  (Default: 5Cpn rounded up and capped at n)
              The bound accepts any positive rational."""},
         {'flag': '--n',
          'type': NATURAL,
          'help': 'The size of the ground set.'},
         {'flag': '--trials',
          'type': POSITIVE_INT,
          'default': 10000,
          'help': 'The number of Monte Carlo samples.  (Default: %(default)s)'},
         {'flag': '--seed',
          'type': NATURAL,
          'default': 0,
          'help': 'The seed of the Monte Carlo samples.  (Default: %(default)s)'},
         {'flag': '--partitions',
          'type': POSITIVE_INT,
          'default': sampling.DEFAULT_PARTITIONS,
          'help': """
              The number of independently seeded partitions of the
              Monte Carlo samples.  Results depend on the seed and the
              partitions but not on the threads.  (Default: %(default)s)"""},
         {'flag': '--threads',
          'type': POSITIVE_INT,
          'default': 1,
          'help': 'The number of worker processes.  (Default: %(default)s)'}]},

    {'group_name': 'Generators',
     'group_desc': None,
     'group_opts': [
         {'flag': '--kind',
          'choices': sorted(generate.GENERATORS),
          'help': 'The generator family.'},
         {'flag': '--k',
          'type': NATURAL,
          'help': 'The size of the sets of k_uniform.'},
         {'flag': '--vertices',
          'dest': 'v',
          'type': NATURAL,
          'help': 'The number of vertices of triangles.'},
         {'flag': '--elements',
          'type': POSITIVE_INT,
          'nargs': '+',
          'help': 'The elements of the set generating single.'}]},

    {'group_name': 'Output',
     'group_desc': None,
     'group_opts': [
         {'flag': '--out',
          'metavar': 'FILE',
          'help': """
              Write the certificate, family, or CSV table to this file.
              (Default: stdout)"""},
         {'flag': '--json',
          'metavar': 'FILE',
          'help': 'Also write the result as json to this file.'},
         {'flag': '--html',
          'metavar': 'FILE',
          'help': 'Also write the audit summary as html to this file.'}]},

    {'group_name': 'Other',
     'group_desc': None,
     'group_opts': [
         {'flag': '--verbose',
          'action': 'store_true',
          'help': 'Verbose output.'},
         {'flag': '--debug',
          'action': 'store_true',
          'help': 'Debugging output.'},
         {'flag': '--version',
          'action': 'version',
          'version': lab_version.version(),
          'help': 'Display version number and exit.'}]}
]

SUBPARSERS = [
    {'name': None,
     'func': None,
     'desc': 'Compute expectation thresholds and audit the selector argument',
     'flags': []},
    {'name': 'compute-q',
     'func': commands.cmd_compute_q,
     'desc': 'Compute the expectation threshold q(F)',
     'flags': ['--family', '--tol', '--budget', '--out', '--json']},
    {'name': 'compute-qf',
     'func': commands.cmd_compute_qf,
     'desc': 'Compute the fractional expectation threshold q_f(F)',
     'flags': ['--family', '--tol', '--r', '--budget', '--out', '--json']},
    {'name': 'audit',
     'func': commands.cmd_audit,
     'desc': 'Run the selector argument on an instance and report each step as CSV',
     'flags': ['--family', '--p', '--r', '--m', '--budget', '--trials', '--seed',
               '--partitions', '--threads', '--out', '--json', '--html']},
    {'name': 'ratio-table',
     'func': commands.cmd_ratio_table,
     'desc': 'Tabulate q, q_f and q_f/q for families as CSV',
     'flags': ['--family', '--tol', '--r', '--budget', '--out', '--json']},
    {'name': 'bmm-bound',
     'func': commands.cmd_bmm_bound,
     'desc': 'Evaluate the tail bound on the probability of a bad m-set',
     'flags': ['--n', '--family', '--p', '--r', '--m', '--json']},
    {'name': 'mc-bad-prob',
     'func': commands.cmd_mc_bad_prob,
     'desc': 'Estimate the probability of a bad m-set by Monte Carlo',
     'flags': ['--family', '--lambda', '--p', '--r', '--m', '--trials', '--seed',
               '--partitions', '--threads', '--out', '--json']},
    {'name': 'gen',
     'func': commands.cmd_gen,
     'desc': 'Write a generator family as a .fam file',
     'flags': ['--kind', '--n', '--k', '--vertices', '--elements', '--out']},
]

def add_arguments(parser, function=None, flags=None):
    """Add implementing function and list of flags to a parser"""

    if function:
        parser.set_defaults(func=function)
    if flags is not None:
        flags = flags + ['--verbose', '--debug', '--version']

    for group in OPTION_GROUPS:
        options = [
            option for option in group['group_opts'] if flags is None or option['flag'] in flags]
        if not options:
            continue

        parser_group = parser.add_argument_group(group['group_name'], group['group_desc'])
        for option in options:
            opt = dict(option) # pop is destructive
            flag = opt.pop('flag')
            parser_group.add_argument(flag, **opt)

def add_subparser(subparsers, sub_name, sub_desc, sub_func, sub_flags):
    """Add a defined subparser"""

    subparser = subparsers.add_parser(sub_name, description=sub_desc, help=sub_desc)
    add_arguments(subparser, sub_func, sub_flags)

def create_parser():
    """Create the parser with defined subparsers"""

    top = SUBPARSERS[0]
    assert top['name'] is None

    parser = argparse.ArgumentParser(prog=lab_version.NAME, description=top['desc'])
    add_arguments(parser, top['func'], top['flags'])

    subparsers = parser.add_subparsers(title='Subcommands', dest='subcommand')
    for subparser in SUBPARSERS[1:]:
        add_subparser(subparsers,
                      subparser['name'], subparser['desc'], subparser['func'], subparser['flags'])
    return parser

################################################################
# Set default values for arguments

VALID_RUN_CONFIG = voluptuous.Schema({
    'subcommand': voluptuous.Any(*[sub['name'] for sub in SUBPARSERS[1:]]),
    'family': voluptuous.Any(None, [str]),
    'lambda_file': voluptuous.Any(None, str),
    'tol': Fraction,
    'r': voluptuous.Any(None, voluptuous.All(int, voluptuous.Range(min=1))),
    'budget': Fraction,
    'p': voluptuous.Any(None, Fraction),
    'm': voluptuous.Any(None, Fraction),
    'n': voluptuous.Any(None, voluptuous.All(int, voluptuous.Range(min=0))),
    'trials': voluptuous.All(int, voluptuous.Range(min=1)),
    'seed': voluptuous.All(int, voluptuous.Range(min=0)),
    'partitions': voluptuous.All(int, voluptuous.Range(min=1)),
    'threads': voluptuous.All(int, voluptuous.Range(min=1)),
    'kind': voluptuous.Any(None, *sorted(generate.GENERATORS)),
    'k': voluptuous.Any(None, int),
    'v': voluptuous.Any(None, int),
    'elements': voluptuous.Any(None, [int]),
    'out': voluptuous.Any(None, str),
    'json': voluptuous.Any(None, str),
    'html': voluptuous.Any(None, str),
    'verbose': bool,
    'debug': bool,
    'func': callable
}, required=False)

def default_logging(args):
    'Set default logging configuration.'

    # Only the first invocation of basicConfig configures the root logger
    if getattr(args, 'debug', False):
        logging.basicConfig(level=logging.DEBUG,
                            format='%(levelname)s: %(message)s')
    if getattr(args, 'verbose', False):
        logging.basicConfig(level=logging.INFO,
                            format='%(levelname)s: %(message)s')
    logging.basicConfig(format='%(levelname)s: %(message)s')

    return args

def default_numbers(args):
    'Make every numeric flag an exact Fraction or int.'

    for attr in ['tol', 'budget']:
        if hasattr(args, attr):
            setattr(args, attr, Fraction(getattr(args, attr)))
    return args

def warn_against_unexpected_file_types(args):
    'Recommend the conventional extensions for input files.'

    filet.warn_unexpected_filetype(getattr(args, 'family', None), filet.File.FAMILY)
    if getattr(args, 'lambda_file', None):
        filet.warn_unexpected_filetype([args.lambda_file], filet.File.LAMBDA)

def validate(args):
    'Validate the run configuration.'

    return voluptuous.humanize.validate_with_humanized_errors(vars(args), VALID_RUN_CONFIG)

def defaults(args):
    'Set default values based on command line arguments.'

    args = default_logging(args)
    args = default_numbers(args)
    warn_against_unexpected_file_types(args)
    validate(args)
    return args

################################################################
