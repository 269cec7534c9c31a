import io
import random
from fractions import Fraction
from pathlib import Path

import pytest

from psatkit import Clause, ConjunctiveForm, Literal
from psatkit.cli import run

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def run_cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def random_clause(rng: random.Random, n: int, width: int) -> Clause:
    width = min(width, n)
    variables = rng.sample(range(n), rng.randint(1, width))
    return Clause(tuple(Literal(v, rng.random() < 0.5) for v in variables))


def random_form(rng: random.Random, n: int, m: int, width: int = 3) -> ConjunctiveForm:
    return ConjunctiveForm(n, tuple(random_clause(rng, n, width) for _ in range(m)))


def random_unit_fraction(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)
