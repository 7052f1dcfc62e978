import random
from fractions import Fraction

from valflag import Scalar
from valflag.linalg import (
    field_rank,
    field_rref,
    hermite_form,
    in_lattice,
    integer_kernel,
    reduce_against,
    xgcd,
)


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 0), (7, 0), (0, -5), (13, 13)]:
        g, s, t = xgcd(a, b)
        assert g == s * a + t * b
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


def test_integer_kernel_example():
    ker = hermite_form(integer_kernel([[1, 1, 0], [0, Fraction(1, 2), 1]], 3))
    assert ker == [[2, -2, 1]] or ker == [[-2, 2, -1]]


def test_integer_kernel_zero_map():
    ker = integer_kernel([[0, 0]], 2)
    assert hermite_form(ker) == [[1, 0], [0, 1]]
    assert integer_kernel([[1, 0], [0, 1]], 2) == []


def test_integer_kernel_is_saturated():
    """Every integer solution lies in the lattice spanned by the basis."""
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        rows = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
            for _ in range(k)
        ]
        basis = hermite_form(integer_kernel(rows, n))
        for vec in basis:
            assert all(sum(r[j] * vec[j] for j in range(n)) == 0 for r in rows)
        # random integer vectors in the kernel must have integer coordinates
        for _ in range(10):
            v = [rng.randint(-6, 6) for _ in range(n)]
            if all(sum(r[j] * v[j] for j in range(n)) == 0 for r in rows):
                assert in_lattice(basis, v) is not None


def test_hermite_form_example():
    assert hermite_form([[2, 4], [1, 3]]) == [[1, 1], [0, 2]]


def test_hermite_form_canonical():
    """Row-equivalent integer matrices share one Hermite form."""
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(k)]
        base = hermite_form(rows)
        shuffled = [list(r) for r in rows]
        rng.shuffle(shuffled)
        if len(shuffled) > 1:
            i, j = rng.sample(range(len(shuffled)), 2)
            m = rng.randint(-3, 3)
            shuffled[i] = [x + m * y for x, y in zip(shuffled[i], shuffled[j])]
        assert hermite_form(shuffled) == base
        # pivots positive, entries above a pivot reduced below it
        pivcols = []
        for row in base:
            c = next(i for i, x in enumerate(row) if x)
            assert row[c] > 0
            pivcols.append((c, row[c]))
        for i, (c, p) in enumerate(pivcols):
            for above in base[:i]:
                assert 0 <= above[c] < p


def test_in_lattice():
    basis = hermite_form([[1, 1], [0, 2]])
    assert in_lattice(basis, [3, 5]) == [3, 1]
    assert in_lattice(basis, [0, 1]) is None
    assert in_lattice([], [0, 0]) == []
    assert in_lattice([], [1, 0]) is None


def test_field_rref_fraction():
    mat, pivots = field_rref([[Fraction(2), Fraction(4)], [Fraction(1), Fraction(3)]])
    assert mat == [[1, 0], [0, 1]]
    assert pivots == [0, 1]
    mat, pivots = field_rref([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    assert mat == [[1, 2]]
    assert pivots == [0]


def test_field_rref_scalar():
    r2 = Scalar.sqrt(2)
    rows = [[r2, Scalar.rational(2)], [Scalar.rational(1), r2]]
    mat, pivots = field_rref(rows)
    # second row is sqrt(2)/2 times the first: rank 1
    assert pivots == [0]
    assert mat == [[Scalar.rational(1), r2]]
    assert field_rank(rows) == 1
    assert field_rank([[r2, Scalar.rational(2)], [Scalar.rational(1), Scalar.rational(3)]]) == 2


def test_reduce_against():
    mat, pivots = field_rref([[Fraction(1), Fraction(0), Fraction(2)]])
    out = reduce_against([Fraction(3), Fraction(1), Fraction(1)], mat, pivots)
    assert out == [0, 1, -5]
    rng = random.Random(2)
    for _ in range(40):
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(2)]
        mat, pivots = field_rref(rows)
        probe = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        reduced = reduce_against(probe, mat, pivots)
        assert all(reduced[c] == 0 for c in pivots)
