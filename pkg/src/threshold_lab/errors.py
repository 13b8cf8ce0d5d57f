# SPDX-License-Identifier: Apache-2.0

"""Exceptions raised to users of threshold-lab.

All of them are UserWarnings so the command line can report them
without a traceback, and the command line maps each class to an exit
code.
"""

class ParseError(UserWarning):
    """Malformed input: a family file, a lambda file, or a flag value."""

class CapExceeded(UserWarning):
    """An exact computation would exceed a desk-scale enumeration cap."""

class ContractError(UserWarning):
    """A precondition of the selector machinery does not hold."""

class DegenerateInput(UserWarning):
    """An input on which an operation is undefined (division by zero)."""
