# SPDX-License-Identifier: Apache-2.0

"""The subcommands of threshold-lab.

Each subcommand takes the parsed command line and returns an exit
code.  run() maps the exceptions raised to users onto exit codes:

    0  success
    1  an audit contract check failed
    2  malformed input or a usage error
    3  a desk-scale cap was exceeded
"""

import csv
import io
import json
import logging

from threshold_lab import auditt
from threshold_lab import bound
from threshold_lab import familyt
from threshold_lab import filet
from threshold_lab import generate
from threshold_lab import lambdat
from threshold_lab import markup_audit
from threshold_lab import measure
from threshold_lab import rational
from threshold_lab import sampling
from threshold_lab import threshold
from threshold_lab import util
from threshold_lab.configt import SelectorConfig
from threshold_lab.errors import CapExceeded, ContractError, DegenerateInput, ParseError

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2
EXIT_CAP = 3

################################################################

def run(args):
    """Run the subcommand and return its exit code."""

    try:
        return args.func(args)
    except CapExceeded as error:
        logging.error("%s", error)
        return EXIT_CAP
    except (ParseError, ContractError, DegenerateInput, ValueError) as error:
        logging.error("%s", error)
        return EXIT_USAGE

################################################################
# Command line values

def require(args, attr, flag):
    """The value of a flag the subcommand can't do without."""

    value = getattr(args, attr, None)
    if value is None:
        raise ParseError(f"{args.subcommand} needs {flag}")
    return value

def load_single_family(args):
    """The one family named by --family."""

    paths = require(args, 'family', '--family FILE')
    if len(paths) != 1:
        raise ParseError(f"{args.subcommand} takes one family file, found {len(paths)}")
    return familyt.load_family(paths[0])

def sample_size(args):
    """The integer sample size given by --m, if any."""

    m = getattr(args, 'm', None)
    if m is None:
        return None
    if m.denominator != 1:
        raise ParseError(f"The sample size must be an integer, found {rational.exact(m)}")
    return m.numerator

def selector_config(args, family):
    """The selector constants for the instance on the command line."""

    p = require(args, 'p', '--p P')
    r = require(args, 'r', '--r R')
    return SelectorConfig(r, p, family.n, m=sample_size(args))

def write_lines(lines, path=None):
    """Write key=value lines to a file or stdout."""

    util.dump('\n'.join(lines), path)

def write_json(tag, data, path):
    """Write tagged json to a file, if a file is named."""

    if path:
        util.dump(json.dumps({tag: data}, indent=2, sort_keys=True), path)

################################################################
# Thresholds

def report_threshold(result, args):
    """Print the threshold and write its certificate."""

    util.dump(str(result))
    result.certificate.dump(args.out)
    if args.json:
        util.dump(result.to_json(), args.json)
    return EXIT_OK

def cmd_compute_q(args):
    """Compute q(F) and a cover certificate at the lower endpoint."""

    family = load_single_family(args)
    util.progress("Computing q")
    result = threshold.q_threshold(family, args.tol, args.budget)
    util.progress("Computing q", True)
    return report_threshold(result, args)

def cmd_compute_qf(args):
    """Compute q_f(F) and a lambda certificate at the lower endpoint."""

    family = load_single_family(args)
    util.progress("Computing q_f")
    result = threshold.qf_threshold(family, args.tol, args.r, args.budget)
    util.progress("Computing q_f", True)
    return report_threshold(result, args)

def ratio_cell(value):
    """A ratio table entry: 12 significant digits, or inf."""

    return 'inf' if value is None else rational.approx(value)

def cmd_ratio_table(args):
    """Tabulate q, q_f, q_f(r) and q_f/q for each family."""

    paths = require(args, 'family', '--family FILE...')
    families = [(filet.name(path), familyt.load_family(path)) for path in paths]

    rows = []
    for name, family in families:
        util.progress(f"Tabulating {name}")
        rows.append(threshold.ratio_row(name, family, args.tol, args.r, args.budget))
        util.progress(f"Tabulating {name}", True)

    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(threshold.RATIO_COLUMNS)
    for row in rows:
        writer.writerow([row['family'], row['n']] +
                        [ratio_cell(row[column]) for column in threshold.RATIO_COLUMNS[2:]])
    util.dump(output.getvalue().rstrip('\n'), args.out)

    write_json('threshold-ratio-table', [
        {key: (value if key in ('family', 'n') or value is None else rational.exact(value))
         for key, value in row.items()}
        for row in rows], args.json)
    return EXIT_OK

################################################################
# Selector

def cmd_audit(args):
    """Run the selector argument on (F, p, r) and write the CSV report."""

    family = load_single_family(args)
    p = require(args, 'p', '--p P')
    r = require(args, 'r', '--r R')
    util.progress("Auditing")
    report = auditt.theorem_audit(
        family, p, r, budget=args.budget, seed=args.seed, trials=args.trials,
        partitions=args.partitions, threads=args.threads, m=sample_size(args)
    )
    util.progress("Auditing", True)

    report.dump(args.out)
    if args.json:
        report.dump_json(args.json)
    if args.html:
        markup_audit.AuditPage(report).dump(args.html)

    for check in report.failures():
        logging.error("Contract check %s failed: %s %s %s", check.name,
                      check.lhs, check.relation, check.rhs)
    return EXIT_OK if report.passed() else EXIT_CONTRACT

def cmd_bmm_bound(args):
    """Evaluate the tail bound for (n, p, r) at the default or given m."""

    if args.n is not None:
        n = args.n
    else:
        n = load_single_family(args).n
    p = require(args, 'p', '--p P')
    r = require(args, 'r', '--r R')
    m = args.m
    integral = m is not None and m.denominator == 1 and m <= n
    cfg = SelectorConfig(r, p, n, m=m.numerator if integral else None)
    value, vacuous = bound.bmm_bound(cfg, m)
    m = cfg.m if m is None else m

    write_lines([
        f'bound={rational.approx(value)}',
        f'exact={rational.exact(value)}',
        f'vacuous={str(vacuous).lower()}',
        f'm={rational.exact(m)}',
        f'C={rational.approx(cfg.C)}',
    ])
    write_json('threshold-bound', {
        'config': cfg.to_dict(),
        'm': rational.exact(m),
        'value': rational.exact(value),
        'vacuous': vacuous
    }, args.json)
    return EXIT_OK

def load_lambda(args, family, cfg):
    """The lambda from --lambda, normalized, or the optimal one for the instance."""

    if not args.lambda_file:
        return measure.witness_lambda(family, cfg).lam
    lam = lambdat.load_lambda(args.lambda_file)
    if lam.n != family.n:
        raise ParseError(
            f"{args.lambda_file}: lambda is on {lam.n} points, the family on {family.n}"
        )
    return measure.normalize_lambda(lam)

def cmd_mc_bad_prob(args):
    """Estimate Pr(W is c-bad) for a uniform m-subset W by Monte Carlo."""

    family = load_single_family(args)
    cfg = selector_config(args, family)
    lam = load_lambda(args, family, cfg)

    util.progress("Sampling")
    prob, stderr = sampling.bad_prob(
        family, lam, cfg, sampling.MONTE_CARLO, trials=args.trials, seed=args.seed,
        partitions=args.partitions, threads=args.threads
    )
    util.progress("Sampling", True)

    write_lines([
        f'prob={rational.approx(prob)}',
        f'exact={rational.exact(prob)}',
        f'stderr={stderr:.12g}',
        f'trials={args.trials}',
        f'partitions={args.partitions}',
        f'seed={args.seed}',
        f'm={cfg.m}',
        f'c={rational.exact(cfg.c)}',
    ], args.out)
    write_json('threshold-bad-prob', {
        'config': cfg.to_dict(),
        'prob': rational.exact(prob),
        'stderr': stderr,
        'trials': args.trials,
        'partitions': args.partitions,
        'seed': args.seed
    }, args.json)
    return EXIT_OK

################################################################
# Generators

def cmd_gen(args):
    """Write a generator family as a .fam file."""

    kind = require(args, 'kind', '--kind KIND')
    family = generate.gen_family(kind, n=args.n, k=args.k, v=args.v,
                                 elements=args.elements)
    family.dump(args.out)
    return EXIT_OK
