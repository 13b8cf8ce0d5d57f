# SPDX-License-Identifier: Apache-2.0

"""Main entry point for threshold-lab and subcommands."""

import sys

from threshold_lab import commands
from threshold_lab import optionst

def main():
    """Run a threshold-lab subcommand."""

    parser = optionst.create_parser()
    args = parser.parse_args()
    if args.subcommand is None:
        parser.print_help()
        sys.exit(commands.EXIT_USAGE)
    args = optionst.defaults(args)
    sys.exit(commands.run(args))
