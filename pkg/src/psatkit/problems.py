"""Decision problems over distributions on the assignment space.

Coherence asks whether a vector of per-variable expectations is realized by
some distribution; the satisfiability variant constrains per-clause
expectations instead, entailment bounds the expectation of a goal clause
subject to those constraints, and the fiber operations walk the set of
distributions sharing an expectation vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import linalg
from .errors import InfeasibleError, SOLVE_COLUMN_GUARD
from .matrices import (
    RationalMatrix,
    assignment_matrix,
    bias_matrix,
    clause_value_matrix,
    kernel_basis_matrix,
)
from .model import (
    Clause,
    ConjunctiveForm,
    Distribution,
    Interval,
    ProbabilisticAssignment,
    enumerate_assignments,
    eval_clause,
)
from .rational_lp import LpOutcome, LpProblem, lp_feasible, lp_optimize_both, lp_solve

ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class ClauseProbabilityTarget:
    """Per-clause expectation bounds [lo_i, hi_i] within [0, 1]."""

    bounds: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        bounds = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.bounds)
        if not bounds:
            raise ValueError("no clause bounds")
        for lo, hi in bounds:
            if not ZERO <= lo <= hi <= ONE:
                raise ValueError(f"bounds [{lo}, {hi}] not ordered within [0, 1]")
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def exact(cls, values: Sequence[Rational]) -> ClauseProbabilityTarget:
        return cls(tuple((Fraction(v), Fraction(v)) for v in values))

    @classmethod
    def certain(cls, m: int) -> ClauseProbabilityTarget:
        return cls(((ONE, ONE),) * m)

    @property
    def lower(self) -> tuple[Fraction, ...]:
        return tuple(lo for lo, _ in self.bounds)

    @property
    def upper(self) -> tuple[Fraction, ...]:
        return tuple(hi for _, hi in self.bounds)

    def is_exact(self) -> bool:
        return all(lo == hi for lo, hi in self.bounds)


@dataclass(frozen=True)
class FiberVector:
    """Coefficient vector over the kernel basis columns."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))


@dataclass(frozen=True)
class PsatInstance:
    """A form, per-clause expectation bounds, and an optional objective clause."""

    form: ConjunctiveForm
    k: int = 2
    target: ClauseProbabilityTarget | None = None
    objective: Clause | None = None

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need k >= 2, got k={self.k}")
        target = self.target
        if target is None:
            target = ClauseProbabilityTarget.certain(self.form.m)
        if len(target.bounds) != self.form.m:
            raise ValueError(
                f"{len(target.bounds)} bounds for {self.form.m} clauses"
            )
        object.__setattr__(self, "target", target)


def _zeros(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def _expectation_problem(
    matrix: RationalMatrix,
    lower: Sequence[Fraction],
    upper: Sequence[Fraction],
    objective: Sequence[Fraction] | None = None,
) -> LpProblem:
    return LpProblem(
        num_vars=matrix.cols,
        objective=tuple(objective) if objective is not None else _zeros(matrix.cols),
        rows=tuple(matrix.row(i) for i in range(matrix.rows)),
        row_lower=tuple(lower),
        row_upper=tuple(upper),
    )


def clause_truth_vector(
    goal: Clause, n: int, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[Fraction, ...]:
    """Truth value of the goal clause at every assignment, in canonical order."""
    if goal.max_variable() >= n:
        raise ValueError(f"goal mentions X_{goal.max_variable()} but n={n}")
    assigns = enumerate_assignments(n, k, max_columns)
    return tuple(eval_clause(goal, a).value for a in assigns)


def coherence(
    x: ProbabilisticAssignment, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[bool, Distribution | None]:
    """Does some distribution realize the expectation vector x exactly?

    Always satisfiable for k=2 (the unit cube is the hull of its vertices);
    the decision is still solved, producing a basic witness.
    """
    w = assignment_matrix(x.n, k, max_columns)
    outcome = lp_feasible(_expectation_problem(w, x.values, x.values))
    if not outcome.is_optimal:
        return False, None
    return True, Distribution(x.n, k, outcome.witness)


def coherence_product_witness(x: ProbabilisticAssignment) -> Distribution:
    """Closed-form classical witness: the independent product distribution."""
    weights = []
    for index in range(2**x.n):
        w = ONE
        rest = index
        for i in range(x.n):
            bit = rest % 2
            rest //= 2
            w *= x.values[i] if bit else ONE - x.values[i]
        weights.append(w)
    return Distribution(x.n, 2, tuple(weights))


def coherence_via_bias(
    x: ProbabilisticAssignment, max_columns: int = SOLVE_COLUMN_GUARD
) -> tuple[bool, Distribution | None]:
    """Classical coherence stated on biases: solve 2x - 1 against the bias matrix."""
    z = bias_matrix(x.n, max_columns)
    target = tuple(TWO * v - ONE for v in x.values)
    outcome = lp_feasible(_expectation_problem(z, target, target))
    if not outcome.is_optimal:
        return False, None
    return True, Distribution(x.n, 2, outcome.witness)


def psat(
    form: ConjunctiveForm,
    target: ClauseProbabilityTarget,
    k: int = 2,
    max_columns: int = SOLVE_COLUMN_GUARD,
) -> tuple[bool, Distribution | None]:
    """Is some distribution's clause-expectation vector within the target bounds?"""
    if len(target.bounds) != form.m:
        raise ValueError(f"{len(target.bounds)} bounds for {form.m} clauses")
    v = clause_value_matrix(form, k, max_columns)
    outcome = lp_feasible(_expectation_problem(v, target.lower, target.upper))
    if not outcome.is_optimal:
        return False, None
    return True, Distribution(form.n, k, outcome.witness)


def sat_via_psat(
    form: ConjunctiveForm, k: int = 2, max_columns: int = SOLVE_COLUMN_GUARD
) -> bool:
    """Classical satisfiability through the certainty target (all clauses at 1).

    Expectation 1 forces every supporting assignment to give each clause value
    exactly 1, and any such assignment determinizes to a classical model, so
    the decision agrees with classical satisfiability for every k >= 2.
    """
    decision, _ = psat(form, ClauseProbabilityTarget.certain(form.m), k, max_columns)
    return decision


def entail(
    form: ConjunctiveForm,
    target: ClauseProbabilityTarget,
    goal: Clause,
    k: int = 2,
    max_columns: int = SOLVE_COLUMN_GUARD,
) -> Interval:
    """Exact range of the goal clause expectation, constrained by the base targets."""
    if len(target.bounds) != form.m:
        raise ValueError(f"{len(target.bounds)} bounds for {form.m} clauses")
    v = clause_value_matrix(form, k, max_columns)
    z = clause_truth_vector(goal, form.n, k, max_columns)
    return lp_optimize_both(_expectation_problem(v, target.lower, target.upper, z))


def opt_psat(
    form: ConjunctiveForm,
    target: ClauseProbabilityTarget,
    objective: Clause | Sequence[Rational],
    k: int = 2,
    max_columns: int = SOLVE_COLUMN_GUARD,
) -> LpOutcome:
    """Minimize a linear functional of the distribution under the target bounds."""
    if len(target.bounds) != form.m:
        raise ValueError(f"{len(target.bounds)} bounds for {form.m} clauses")
    v = clause_value_matrix(form, k, max_columns)
    if isinstance(objective, Clause):
        z: Sequence[Fraction] = clause_truth_vector(objective, form.n, k, max_columns)
    else:
        z = tuple(Fraction(c) for c in objective)
        if len(z) != v.cols:
            raise ValueError(f"objective length {len(z)} != column count {v.cols}")
    return lp_solve(_expectation_problem(v, target.lower, target.upper, z))


def _fiber_parts(u0: Distribution, w, max_columns: int):
    kernel = kernel_basis_matrix(u0.n, u0.k, max_columns)
    values = w.values if isinstance(w, FiberVector) else tuple(Fraction(v) for v in w)
    if len(values) != kernel.cols:
        raise ValueError(f"fiber vector length {len(values)} != {kernel.cols}")
    return kernel, values


def fiber_contains(
    u0: Distribution, w: FiberVector | Sequence[Rational], max_columns: int = SOLVE_COLUMN_GUARD
) -> bool:
    """Does the kernel move w keep u0 a distribution with the same expectations?

    Orthogonality to the kernel column sums preserves total mass; the shifted
    weights must also stay nonnegative.
    """
    kernel, values = _fiber_parts(u0, w, max_columns)
    sums = [ZERO] * kernel.cols
    pos = 0
    for _ in range(kernel.rows):
        for j in range(kernel.cols):
            e = kernel.entries[pos]
            if e != 0:
                sums[j] += e
            pos += 1
    mass_shift = ZERO
    for s, v in zip(sums, values):
        if s != 0 and v != 0:
            mass_shift += s * v
    if mass_shift != 0:
        return False
    shift = kernel.mul_vec(values)
    return all(u + d >= 0 for u, d in zip(u0.weights, shift))


def fiber_translate(
    u0: Distribution, w: FiberVector | Sequence[Rational], max_columns: int = SOLVE_COLUMN_GUARD
) -> Distribution:
    """Move u0 along the kernel by w; valid moves give a distribution with equal expectations."""
    if not fiber_contains(u0, w, max_columns):
        raise ValueError("fiber vector leaves the distribution set")
    kernel, values = _fiber_parts(u0, w, max_columns)
    shift = kernel.mul_vec(values)
    return Distribution(
        u0.n, u0.k, tuple(u + d for u, d in zip(u0.weights, shift))
    )


def kernel_containment(
    form: ConjunctiveForm, max_columns: int = SOLVE_COLUMN_GUARD
) -> bool:
    """Do all expectation-preserving moves also preserve clause expectations?

    True exactly when the clause value matrix annihilates the kernel basis.
    Any clause satisfied by the all-zeros assignment breaks it: the kernel
    contains the unit vector on that assignment.
    """
    v = clause_value_matrix(form, 2, max_columns)
    kernel = kernel_basis_matrix(form.n, 2, max_columns)
    return v.matmul(kernel).is_zero()


def psat_feasible_set_dim(
    form: ConjunctiveForm,
    target: ClauseProbabilityTarget,
    k: int = 2,
    max_columns: int = SOLVE_COLUMN_GUARD,
) -> int:
    """Affine dimension of the witness polytope at the given target.

    Uses the implicit-equality characterization: the affine hull is cut out by
    the total-mass row, every clause row whose expectation is constant across
    the polytope, and every coordinate forced to zero; the dimension is the
    column count minus the rank of that system. Raises InfeasibleError on an
    empty polytope.
    """
    if len(target.bounds) != form.m:
        raise ValueError(f"{len(target.bounds)} bounds for {form.m} clauses")
    v = clause_value_matrix(form, k, max_columns)
    base = _expectation_problem(v, target.lower, target.upper)
    if not lp_feasible(base).is_optimal:
        raise InfeasibleError("empty witness polytope has no dimension")
    equalities: list[list[Fraction]] = [[ONE] * v.cols]
    for i in range(v.rows):
        row = list(v.row(i))
        low = lp_solve(base.with_objective(row)).value
        high = -lp_solve(base.with_objective([-e for e in row])).value
        if low == high:
            equalities.append(row)
    for j in range(v.cols):
        drive = [ZERO] * v.cols
        drive[j] = -ONE
        top = -lp_solve(base.with_objective(drive)).value
        if top == 0:
            unit = [ZERO] * v.cols
            unit[j] = ONE
            equalities.append(unit)
    return v.cols - linalg.rank(equalities)
