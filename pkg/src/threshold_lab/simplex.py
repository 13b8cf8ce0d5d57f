# SPDX-License-Identifier: Apache-2.0

"""Exact rational simplex method with Bland's rule.

The solver handles linear programs in the form

    maximize    c.y
    subject to  A y <= b,  y >= 0

with b >= 0, so the slack basis is feasible and no first phase is
needed.  All arithmetic is done with fractions, and Bland's rule
(smallest entering index, smallest leaving basis index on ratio ties)
guarantees termination and makes the final basis deterministic.

The optimal dual values are read off the objective row at the slack
columns, so each solve yields both a primal and a dual solution.
"""

from fractions import Fraction
import logging

OPTIMAL = 'optimal'
UNBOUNDED = 'unbounded'

################################################################

class Solution:
    """The result of a simplex solve."""

    def __init__(self, status, value=None, primal=None, dual=None, pivots=0):
        self.status = status
        self.value = value
        self.primal = primal
        self.dual = dual
        self.pivots = pivots

    def __repr__(self):
        return (f'Solution(status={self.status}, value={self.value}, '
                f'pivots={self.pivots})')

################################################################

class Tableau:
    """A dense simplex tableau with the slack columns appended."""

    def __init__(self, objective, matrix, bounds):
        self.rows = len(matrix)
        self.cols = len(objective)
        for row in matrix:
            if len(row) != self.cols:
                raise ValueError("Constraint row length does not match objective length")
        if any(Fraction(bound) < 0 for bound in bounds):
            raise ValueError("Slack basis is infeasible: a bound is negative")

        width = self.cols + self.rows
        self.matrix = []
        for i, row in enumerate(matrix):
            slack = [Fraction(0)] * self.rows
            slack[i] = Fraction(1)
            self.matrix.append([Fraction(value) for value in row] + slack)
        self.rhs = [Fraction(bound) for bound in bounds]
        self.reduced = [Fraction(value) for value in objective] + [Fraction(0)] * self.rows
        self.value = Fraction(0)
        self.basis = list(range(self.cols, width))
        self.width = width

    def entering(self):
        """Bland's rule: the smallest column with positive reduced cost."""

        for col in range(self.width):
            if self.reduced[col] > 0:
                return col
        return None

    def leaving(self, col):
        """Minimum ratio test, ties broken by the smallest basic column."""

        best = None
        for row in range(self.rows):
            coeff = self.matrix[row][col]
            if coeff > 0:
                candidate = (self.rhs[row] / coeff, self.basis[row], row)
                if best is None or candidate < best:
                    best = candidate
        return None if best is None else best[2]

    def pivot(self, row, col):
        """Pivot column col into the basis at row."""

        pivot_row = self.matrix[row]
        coeff = pivot_row[col]
        self.matrix[row] = pivot_row = [value / coeff for value in pivot_row]
        self.rhs[row] /= coeff

        for other in range(self.rows):
            if other == row:
                continue
            factor = self.matrix[other][col]
            if factor:
                self.matrix[other] = [value - factor * pivot_value
                                      for value, pivot_value in zip(self.matrix[other], pivot_row)]
                self.rhs[other] -= factor * self.rhs[row]

        factor = self.reduced[col]
        if factor:
            self.reduced = [value - factor * pivot_value
                            for value, pivot_value in zip(self.reduced, pivot_row)]
            self.value += factor * self.rhs[row]

        self.basis[row] = col

    def primal(self):
        """The values of the original variables."""

        values = [Fraction(0)] * self.cols
        for row, col in enumerate(self.basis):
            if col < self.cols:
                values[col] = self.rhs[row]
        return values

    def dual(self):
        """The dual values of the constraints."""

        return [-self.reduced[self.cols + row] for row in range(self.rows)]

################################################################

def maximize(objective, matrix, bounds, max_pivots=None):
    """Maximize objective.y subject to matrix y <= bounds and y >= 0."""

    tableau = Tableau(objective, matrix, bounds)
    pivots = 0
    while True:
        col = tableau.entering()
        if col is None:
            logging.debug("simplex: optimal after %s pivots, value %s", pivots, tableau.value)
            return Solution(OPTIMAL, tableau.value, tableau.primal(), tableau.dual(), pivots)
        row = tableau.leaving(col)
        if row is None:
            logging.debug("simplex: unbounded in column %s after %s pivots", col, pivots)
            return Solution(UNBOUNDED, pivots=pivots)
        tableau.pivot(row, col)
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError(f"simplex: exceeded {max_pivots} pivots")
