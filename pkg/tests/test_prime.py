import random
from fractions import Fraction

import pytest

from valflag import (
    CONT,
    COEFFICIENT_BLIND,
    EQUAL,
    GREATER,
    LESS,
    NON_CONTINUOUS,
    DefiningMatrix,
    DimensionError,
    DomainError,
    ExponentVector,
    KernelSubgroup,
    NEG_INF,
    Prime,
    Scalar,
    TropPolynomial,
    canonicalize,
    classify,
    compare,
    compare_terms,
    decide_equal,
    final_kernel,
    height,
    is_order,
    min_filter_dim,
    parse_poly,
    phi,
    row_op_normal_form,
)

from _oracles import grid_exponents, random_prime, random_term, transform_rows

R2 = Scalar.sqrt(2)
R3 = Scalar.sqrt(3)


def P(*rows):
    return canonicalize(DefiningMatrix(rows))


# -- canonicalization ---------------------------------------------------------


def test_canonicalize_examples():
    got = P([2, R2._scale(2), 0], [1, R2, 5])
    assert got.matrix.rows == ((Scalar.rational(1), R2, Scalar.rational(0)),
                               (Scalar.rational(0), Scalar.rational(0), Scalar.rational(1)))
    fixed = P([1, R2, 0], [0, 0, 1])
    assert fixed.matrix.rows == got.matrix.rows
    dropped = P([1, 0, 0], [2, 0, 0])
    assert dropped.matrix.rows == ((Scalar.rational(1), Scalar.rational(0), Scalar.rational(0)),)


def test_canonicalize_rejects_negative_first_column():
    with pytest.raises(DomainError):
        canonicalize(DefiningMatrix([[0, 1, 0], [-1, 0, 0]]))
    with pytest.raises(DomainError):
        canonicalize(DefiningMatrix([[-2, 1, 1]]))


def test_canonicalize_is_idempotent():
    rng = random.Random(71)
    for _ in range(30):
        A = random_prime(rng, rng.randint(1, 3))
        assert canonicalize(A.matrix) == A


def test_canonicalize_preserves_lex_signs():
    rng = random.Random(101)
    for _ in range(10):
        n = rng.randint(1, 3)
        M = transform_rows(rng, random_prime(rng, n).matrix)
        C = canonicalize(M)
        for _ in range(100):
            w = random_term(rng, n)
            assert M.sign_lex(w) == C.matrix.sign_lex(w)


def test_prime_validation():
    with pytest.raises(DomainError):
        Prime(DefiningMatrix([[1, 0], [2, 1]]))  # two nonzero coefficients
    with pytest.raises(DomainError):
        Prime(DefiningMatrix([[1, 2, 0], [1, 2, 0]]))  # dependent rows
    with pytest.raises(DomainError):
        Prime(DefiningMatrix([[0, 1], [-1, 0]]))


def test_defining_matrix_validation():
    with pytest.raises(DimensionError):
        DefiningMatrix([[1, 0], [1, 0, 0]])
    with pytest.raises(DimensionError):
        DefiningMatrix([], n=None)
    assert DefiningMatrix([], n=2).n == 2
    assert DefiningMatrix([[1, 0, 0]]).n == 2
    assert not DefiningMatrix([[0, 1], [-1, 0]]).first_column_ok()
    assert DefiningMatrix([[0, 1], [1, 0]]).first_column_ok()


# -- phi and compare ----------------------------------------------------------


def test_phi_examples():
    pr = P([1, 0, 0], [0, 1, 0])
    names = ["x", "y"]
    assert phi(pr, parse_poly("t^1", names)) == [Scalar.rational(1), Scalar.rational(0)]
    assert phi(pr, parse_poly("x^2", names)) == [Scalar.rational(0), Scalar.rational(2)]
    assert phi(pr, parse_poly("t^1 + x^2", names)) == [Scalar.rational(1), Scalar.rational(0)]
    assert phi(pr, TropPolynomial.zero(2)) is NEG_INF


def test_compare_examples():
    pr = P([1, 0, 0], [0, 1, 0])
    names = ["x", "y"]
    assert compare(pr, parse_poly("t^1", names), parse_poly("x^2", names)) == GREATER
    f = parse_poly("t^1 + x*y", names)
    assert compare(pr, f, f) == EQUAL
    pr2 = P([1, R2, 0], [0, 1, R3])
    # phi values (sqrt(2), 1) vs (-1, 0): first entries already differ
    assert compare(pr2, parse_poly("x", names), parse_poly("t^-1", names)) == GREATER


def test_compare_zero_polynomial():
    pr = P([1, 0])
    z = TropPolynomial.zero(1)
    assert compare(pr, z, z) == EQUAL
    assert compare(pr, z, parse_poly("t^-5", ["x"])) == LESS
    assert compare(pr, parse_poly("x", ["x"]), z) == GREATER


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionError):
        compare(P([1, 0]), parse_poly("x", ["x", "y"]), parse_poly("x", ["x", "y"]))


def test_compare_is_total_and_multiplicative():
    """Term comparison is a total preorder compatible with multiplication."""
    rng = random.Random(303)
    for _ in range(20):
        n = rng.randint(1, 3)
        pr = random_prime(rng, n)
        terms = [random_term(rng, n) for _ in range(6)]
        for a in terms:
            assert compare_terms(pr, a, a) == EQUAL
        for a in terms:
            for b in terms:
                ab = compare_terms(pr, a, b)
                ba = compare_terms(pr, b, a)
                swap = {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL}
                assert ba == swap[ab]
                for c in terms:
                    assert compare_terms(pr, a.add(c), b.add(c)) == ab


def test_compare_transitive():
    rng = random.Random(73)
    for _ in range(15):
        n = rng.randint(1, 2)
        pr = random_prime(rng, n)
        terms = [random_term(rng, n) for _ in range(5)]
        for a in terms:
            for b in terms:
                for c in terms:
                    if (
                        compare_terms(pr, a, b) != GREATER
                        and compare_terms(pr, b, c) != GREATER
                    ):
                        assert compare_terms(pr, a, c) != GREATER


def test_phi_is_multiplicative_on_polys():
    rng = random.Random(47)
    names = ["x", "y"]
    for _ in range(25):
        pr = random_prime(rng, 2)
        f = TropPolynomial(2, [(tuple(rng.randint(-2, 2) for _ in range(2)),
                                Fraction(rng.randint(-3, 3))) for _ in range(rng.randint(1, 3))])
        g = TropPolynomial(2, [(tuple(rng.randint(-2, 2) for _ in range(2)),
                                Fraction(rng.randint(-3, 3))) for _ in range(rng.randint(1, 3))])
        pf, pg, pfg = phi(pr, f), phi(pr, g), phi(pr, f * g)
        assert pfg == [a + b for a, b in zip(pf, pg)]


# -- decide_equal -------------------------------------------------------------


def test_decide_equal_whale_dolphin():
    A = P([1, R2, 0], [0, 1, R3])
    B = P([1, R2, 0], [0, 0, 1])
    assert decide_equal(A, B).equal
    assert decide_equal(B, A).equal
    # yet no chain of row operations links them
    assert row_op_normal_form(A.matrix) != row_op_normal_form(B.matrix)


def test_decide_equal_distinguishes_weights():
    A = P([1, 0, 0])
    B = P([1, R2, 0])
    verdict = decide_equal(A, B)
    assert not verdict.equal
    assert verdict.witness == ExponentVector(Fraction(-1), (1, 0))
    assert A.matrix.sign_lex(verdict.witness) == -1
    assert B.matrix.sign_lex(verdict.witness) == 1


def test_decide_equal_second_row_witness():
    A = P([1, 0, 0], [0, 1, 0])
    B = P([1, 0, 0], [0, 1, R2])
    verdict = decide_equal(A, B)
    assert verdict.outcome == "Distinguished"
    assert verdict.witness == ExponentVector(Fraction(0), (0, 1))
    assert A.matrix.sign_lex(verdict.witness) == 0
    assert B.matrix.sign_lex(verdict.witness) == 1


def test_decide_equal_mixed_coefficient_rows():
    """One side reaches its coefficient row while the other side's sits
    lower; the pure-coefficient term t^1 does not separate these, so the
    witness must carry a monomial part."""
    A = P([1, 0, 0])
    B = P([0, 1, 0], [1, 0, 0])
    t1 = ExponentVector(Fraction(1), (0, 0))
    assert A.matrix.sign_lex(t1) == B.matrix.sign_lex(t1) == 1
    verdict = decide_equal(A, B)
    assert not verdict.equal
    w = verdict.witness
    assert any(w.u)
    assert A.matrix.sign_lex(w) != B.matrix.sign_lex(w)


def test_decide_equal_one_sided():
    A = P([1, 0, 0], [0, 1, 0])
    B = P([1, 0, 0], [0, 1, 0], [0, 0, 1])
    verdict = decide_equal(A, B)
    assert not verdict.equal
    w = verdict.witness
    assert A.matrix.sign_lex(w) != B.matrix.sign_lex(w)


def test_decide_equal_rejects_raw_matrices():
    M = DefiningMatrix([[1, 0, 0]])
    with pytest.raises(DomainError):
        decide_equal(M, M)
    with pytest.raises(DimensionError):
        decide_equal(P([1, 0]), P([1, 0, 0]))


def test_decide_equal_reflexive_symmetric():
    rng = random.Random(55)
    for _ in range(40):
        n = rng.randint(1, 3)
        A = random_prime(rng, n)
        B = random_prime(rng, n)
        assert decide_equal(A, A).equal
        assert decide_equal(A, B).equal == decide_equal(B, A).equal


def test_decide_equal_accepts_row_transformed():
    rng = random.Random(91)
    for _ in range(40):
        A = random_prime(rng, rng.randint(1, 3))
        B = canonicalize(transform_rows(rng, A.matrix))
        assert decide_equal(A, B).equal


def test_equal_verdicts_survive_grid_search():
    rng = random.Random(140)
    checked = 0
    while checked < 8:
        n = rng.randint(1, 2)
        A = random_prime(rng, n)
        B = random_prime(rng, n)
        verdict = decide_equal(A, B)
        if not verdict.equal:
            assert A.matrix.sign_lex(verdict.witness) != B.matrix.sign_lex(
                verdict.witness
            )
            continue
        checked += 1
        for w in grid_exponents(n, bound=2, max_den=3):
            assert A.matrix.sign_lex(w) == B.matrix.sign_lex(w)


def test_witness_members_of_kernel_subgroup():
    H = KernelSubgroup("graph", 2, ((1, 0), (0, 1)), (Fraction(0), Fraction(0)))
    assert H.contains(ExponentVector(Fraction(0), (3, -5)))
    assert not H.contains(ExponentVector(Fraction(1), (0, 0)))
    assert H.member([2, -1]) == ExponentVector(Fraction(0), (2, -1))
    full = KernelSubgroup.full(2)
    assert full.rank == 3
    assert full.contains(ExponentVector(Fraction(7, 3), (1, 1)))


# -- final kernel and classification ------------------------------------------


def test_final_kernel_examples():
    K = final_kernel(P([1, 0, 0]))
    assert K.kind == "graph"
    assert K.lattice == ((1, 0), (0, 1))
    assert K.ell == (Fraction(0), Fraction(0))
    assert K.rank == 2

    assert final_kernel(P([1, R2, R3])).is_trivial()

    K = final_kernel(P([1, 0, 0], [0, 1, 0]))
    assert K.kind == "graph"
    assert K.lattice == ((0, 1),)
    assert K.ell == (Fraction(0),)
    assert K.rank == 1


def test_final_kernel_annihilates_matrix():
    rng = random.Random(61)
    for _ in range(40):
        n = rng.randint(1, 3)
        pr = random_prime(rng, n)
        K = final_kernel(pr)
        for _ in range(5):
            coeffs = [rng.randint(-3, 3) for _ in range(K.lattice_rank)]
            gamma = Fraction(rng.randint(-3, 3))
            w = K.member(coeffs, gamma)
            if K.kind == "product" or K.contains(w):
                assert pr.matrix.sign_lex(w) == 0


def test_classify_examples():
    assert classify(P([1, R2, R3])) == CONT
    assert classify(P([0, 0, 1], [1, 0, 0])) == NON_CONTINUOUS
    assert classify(P([0, 1, 0])) == COEFFICIENT_BLIND


def test_min_filter_dim_table():
    assert min_filter_dim(P([1, 0, 0])) == 0
    assert min_filter_dim(P([1, R2, 0])) == 1
    assert min_filter_dim(P([1, R2, R3])) == 2
    assert min_filter_dim(P([1, 0, 0], [0, 1, 0])) == 1
    assert min_filter_dim(P([1, 0, 0], [0, 1, R2])) == 2
    assert min_filter_dim(P([1, 0, 0], [0, 1, 0], [0, 0, 1])) == 2


def test_min_filter_dim_needs_cont():
    with pytest.raises(DomainError):
        min_filter_dim(P([0, 1, 0]))
    with pytest.raises(DomainError):
        min_filter_dim(P([0, 0, 1], [1, 0, 0]))


def test_height_complements_min_dim():
    rng = random.Random(77)
    for _ in range(30):
        n = rng.randint(1, 3)
        pr = random_prime(rng, n, cont=True)
        assert min_filter_dim(pr) == n - height(pr)


def test_is_order():
    assert is_order(P([1, R2, R3]))
    assert is_order(P([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]))
    assert not is_order(P([1, 0, 0], [0, 1, 0]))


def test_is_order_matches_term_identification():
    """A non-order prime identifies two distinct terms; an order never does."""
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(1, 2)
        pr = random_prime(rng, n)
        K = final_kernel(pr)
        if is_order(pr):
            continue
        if K.lattice_rank:
            w = K.member([1] + [0] * (K.lattice_rank - 1))
        else:
            w = ExponentVector(Fraction(1), (0,) * n)
        unit = ExponentVector(Fraction(0), (0,) * n)
        assert w != unit
        assert compare_terms(pr, w, unit) == EQUAL


def test_row_op_normal_form_invariance():
    rng = random.Random(88)
    for _ in range(30):
        A = random_prime(rng, rng.randint(1, 3))
        assert row_op_normal_form(transform_rows(rng, A.matrix)) == A.matrix
