"""Exact matrix builders linking clause logic to the probability simplex.

The assignment matrix lists every k-valued assignment as a column, so for a
distribution u over assignments the product gives the vector of per-variable
truth expectations. The kernel basis matrix generates the lattice of
distributions sharing those expectations, and the clause value matrix plays
the same role for per-clause truth expectations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import SOLVE_COLUMN_GUARD, check_columns
from .model import ConjunctiveForm, Distribution, enumerate_assignments, eval_clause

ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"need positive dimensions, got {self.rows}x{self.cols}")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction]]) -> RationalMatrix:
        nrows = len(rows)
        if nrows == 0:
            raise ValueError("no rows")
        ncols = len(rows[0])
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, tuple(flat))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def mul_vec(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != column count {self.cols}")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            acc = ZERO
            for j, v in enumerate(vec):
                if v != 0:
                    e = self.entries[base + j]
                    if e != 0:
                        acc += e * v
            out.append(acc)
        return tuple(out)

    def matmul(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_rows = [other.row(l) for l in range(other.rows)]
        result = []
        for i in range(self.rows):
            base = i * self.cols
            acc = [ZERO] * other.cols
            for l in range(self.cols):
                a = self.entries[base + l]
                if a == 0:
                    continue
                orow = other_rows[l]
                for j in range(other.cols):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            result.append(acc)
        return RationalMatrix.from_rows(result)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


@dataclass(frozen=True)
class WeightPermutation:
    """Column order sorted by assignment weight (number of nonzero digits).

    perm[p] is the canonical index placed at position p. Ties break by
    ascending canonical index, except that for k > 2 the weight-1 class puts
    the n assignments whose single nonzero digit equals 1/(k-1) first; those
    columns form the scaled identity block.
    """

    n: int
    k: int
    perm: tuple[int, ...]

    def apply_columns(self, matrix: RationalMatrix) -> RationalMatrix:
        if matrix.cols != len(self.perm):
            raise ValueError(f"matrix has {matrix.cols} columns, permutation {len(self.perm)}")
        rows = [
            [matrix.entry(i, self.perm[p]) for p in range(len(self.perm))]
            for i in range(matrix.rows)
        ]
        return RationalMatrix.from_rows(rows)

    def restore_rows(self, matrix: RationalMatrix) -> RationalMatrix:
        """Send row p (weight order) back to canonical row perm[p]."""
        if matrix.rows != len(self.perm):
            raise ValueError(f"matrix has {matrix.rows} rows, permutation {len(self.perm)}")
        rows: list[list[Fraction] | None] = [None] * matrix.rows
        for p, idx in enumerate(self.perm):
            rows[idx] = list(matrix.row(p))
        return RationalMatrix.from_rows(rows)  # type: ignore[arg-type]


def assignment_matrix(
    n: int, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> RationalMatrix:
    """n x k**n matrix whose column j is assignment j as a digit vector."""
    assigns = enumerate_assignments(n, k, max_columns)
    rows = [[a.digits[i].value for a in assigns] for i in range(n)]
    return RationalMatrix.from_rows(rows)


def bias_matrix(n: int, max_columns: int = SOLVE_COLUMN_GUARD) -> RationalMatrix:
    """Classical-only rescaling 2W - 1 mapping expectations to biases in [-1, 1]."""
    w = assignment_matrix(n, 2, max_columns)
    return RationalMatrix(w.rows, w.cols, tuple(TWO * e - ONE for e in w.entries))


def weight_permutation(
    n: int, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> WeightPermutation:
    assigns = enumerate_assignments(n, k, max_columns)

    def key(a):
        w = a.weight
        if w == 1:
            kappa = next(d.kappa for d in a.digits if d.kappa != 0)
            return (1, 0 if kappa == 1 else 1, a.index)
        return (w, 0, a.index)

    return WeightPermutation(n, k, tuple(a.index for a in sorted(assigns, key=key)))


def kernel_basis_matrix(
    n: int, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> RationalMatrix:
    """k**n x (k**n - n) generator of the kernel of the assignment matrix.

    Built blockwise in weight order: a lone 1/(k-1) entry for the zero
    assignment, the negated tail columns of the weight-ordered assignment
    matrix across the identity-block rows, and a scaled identity below. Rows
    are returned in canonical assignment order.
    """
    count = check_columns(n, k, max_columns)
    if count - n < 1:
        raise ValueError(f"no kernel columns at n={n}, k={k}")
    wp = weight_permutation(n, k, max_columns)
    w_ordered = wp.apply_columns(assignment_matrix(n, k, max_columns))
    scale = Fraction(1, k - 1)
    width = count - n
    tail = width - 1  # columns of weight >= 2 (plus high-digit weight-1 ones for k > 2)
    rows: list[list[Fraction]] = []
    rows.append([scale] + [ZERO] * tail)
    for i in range(n):
        rows.append([ZERO] + [-w_ordered.entry(i, n + 1 + c) for c in range(tail)])
    for t in range(tail):
        row = [ZERO] * width
        row[1 + t] = scale
        rows.append(row)
    return wp.restore_rows(RationalMatrix.from_rows(rows))


def kernel_column_sums_formula(
    n: int, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[Fraction, ...]:
    """Closed form of the classical kernel column sums.

    A kernel column built from a weight-(i+1) assignment sums to -i, and there
    are C(n, i+1) of them; the zero-assignment column sums to 1.
    """
    check_columns(n, 2, max_columns)
    out = [ONE]
    for i in range(1, n):
        out.extend([Fraction(-i)] * comb(n, i + 1))
    return tuple(out)


def kernel_column_sums(
    n: int, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[Fraction, ...]:
    """Column sums of the kernel basis matrix, computed, valid for any k."""
    kernel = kernel_basis_matrix(n, k, max_columns)
    sums = [ZERO] * kernel.cols
    pos = 0
    for _ in range(kernel.rows):
        for j in range(kernel.cols):
            e = kernel.entries[pos]
            if e != 0:
                sums[j] += e
            pos += 1
    return tuple(sums)


def clause_value_matrix(
    form: ConjunctiveForm, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> RationalMatrix:
    """m x k**n matrix of clause truth values; entry (i, j) is clause i at assignment j."""
    assigns = enumerate_assignments(form.n, k, max_columns)
    rows = [[eval_clause(clause, a).value for a in assigns] for clause in form.clauses]
    return RationalMatrix.from_rows(rows)


def expected_bias(
    u: Distribution, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[Fraction, ...]:
    """Per-variable bias vector of a classical distribution (k=2 only)."""
    if u.k != 2:
        raise ValueError(f"bias is a classical notion, got k={u.k}")
    return bias_matrix(u.n, max_columns).mul_vec(u.weights)
