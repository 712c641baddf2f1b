import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import in_row_space, rref, same_row_space, solutions
from padicreg import (
    EchelonForm,
    InsertOutcome,
    PrimeModulus,
    coefficient_vector,
    dynamic_insert,
    equation_system,
    membership,
    reduce_vector,
)
from padicreg.echelon import sample_row
from padicreg.errors import EmptyForm, LengthMismatch, RankDeficient


def rows_of(A):
    return [tuple(int(v) for v in r) for r in A.rows]


def check_invariants(A):
    D, p = A.dim, A.p
    assert A.rank <= D + 1
    assert len(set(A.pivots)) == A.rank
    assert D + 1 not in A.pivots
    for r, col in enumerate(A.pivots):
        row = A.rows[r]
        assert int(row[col]) == 1
        assert not row[:col].any()
        for other in range(A.rank):
            if other != r:
                assert int(A.rows[other, col]) == 0
    assert all(0 <= int(v) < p for v in A.rows.ravel())


def test_reduce_vector_examples():
    A = EchelonForm(5, 1)
    assert reduce_vector(A, [3, 1, 2]).entries == (3, 1, 2)
    A.insert([3], 4)
    assert rows_of(A) == [(1, 2, 3)]
    assert reduce_vector(A, [3, 1, 2]).entries == (0, 0, 3)
    assert reduce_vector(A, [3, 1, 4]).is_zero()
    with pytest.raises(LengthMismatch):
        reduce_vector(A, [1, 2])


def test_reduce_vector_matches_batch_oracle():
    # v - 3*(1,2,3) = (0, -5, -7) = (0, 0, 3) mod 5
    assert rref([(1, 2, 3), (3, 1, 2)], 5) == rref([(1, 2, 3), (0, 0, 3)], 5)


def test_dynamic_insert_examples():
    A = EchelonForm(5, 1)
    outcome, A = dynamic_insert(A, [3], 4)
    assert outcome is InsertOutcome.INSERTED
    assert rows_of(A) == [(1, 2, 3)]

    outcome, B = dynamic_insert(A, [2], 1)
    assert outcome is InsertOutcome.INSERTED
    assert sorted(rows_of(B)) == [(0, 1, 0), (1, 0, 3)]
    assert same_row_space(rows_of(B), [(3, 1, 4), (2, 1, 1)], 5)
    assert rows_of(A) == [(1, 2, 3)]  # copy-on-insert

    outcome, C = dynamic_insert(A, [3], 2)
    assert outcome is InsertOutcome.INCONSISTENT
    assert not outcome.solvable
    assert C is A

    outcome, _ = dynamic_insert(A, [3], 4)
    assert outcome is InsertOutcome.DEPENDENT


def test_equation_system_examples():
    F = PrimeModulus(5)
    A = EchelonForm(F, 1)
    A.insert([3], 4)
    C = equation_system(A)
    assert sorted(map(tuple, C.vectors.tolist())) == [(1, 1), (3, 0)]
    assert C.size == 2
    assert membership(C, [3], 4)
    assert not membership(C, [2], 1)
    # the common solution set is exactly the source point
    on_hull = [(x, y) for x in range(5) for y in range(5) if membership(C, [x], y)]
    assert on_hull == [(3, 4)]

    A.insert([2], 1)
    C = equation_system(A)
    assert C.vectors.tolist() == [[3, 0]]
    assert coefficient_vector(A).entries == (3, 0)
    assert membership(C, F.vector([3]), F(4)) and membership(C, [2], 1)


def test_equation_system_on_empty_form():
    with pytest.raises(EmptyForm):
        equation_system(EchelonForm(5, 2))


def test_coefficient_vector_requires_full_rank():
    A = EchelonForm(7, 2)
    A.insert([1, 2], 3)
    A.insert([4, 0], 1)
    with pytest.raises(RankDeficient):
        coefficient_vector(A)


def test_coefficient_vector_interpolates():
    p, D = 7, 4
    rng = random.Random(3)
    c = [rng.randrange(p) for _ in range(D + 1)]
    A = EchelonForm(p, D)
    while A.rank < D + 1:
        x = [rng.randrange(p) for _ in range(D)]
        y = (sum(a * b for a, b in zip(c, x)) + c[-1]) % p
        assert A.insert(x, y) is not InsertOutcome.INCONSISTENT
    assert list(coefficient_vector(A).entries) == c


def test_membership_singleton():
    F = PrimeModulus(11)
    A = EchelonForm(F, 2)
    c = [3, 5, 7]
    for x in ([1, 0], [0, 1], [0, 0]):
        A.insert(x, (c[0] * x[0] + c[1] * x[1] + c[2]) % 11)
    C = equation_system(A)
    assert C.size == 1
    for x in itertools.product(range(11), repeat=2):
        assert membership(C, list(x), (3 * x[0] + 5 * x[1] + 7) % 11)


def random_sequence(rng, p, D, length):
    return [([rng.randrange(p) for _ in range(D)], rng.randrange(p)) for _ in range(length)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_incremental_matches_batch_oracle(p):
    rng = random.Random(p)
    for _ in range(60):
        D = rng.randrange(0, 7)
        A = EchelonForm(p, D)
        accepted = []
        for x, y in random_sequence(rng, p, D, rng.randrange(1, 2 * D + 4)):
            v = [*x, 1, y]
            before = A.rank
            dependent = in_row_space(accepted, v, p) if accepted else False
            outcome = A.insert(x, y)
            if outcome is InsertOutcome.INSERTED:
                accepted.append(v)
                assert A.rank == before + 1
            elif outcome is InsertOutcome.DEPENDENT:
                assert dependent and A.rank == before
                assert reduce_vector(A, v).is_zero()
            else:
                assert not dependent
                # the joint row space contains (0,...,0,1): no affine map fits
                assert in_row_space(accepted + [v], [0] * (D + 1) + [1], p)
                assert A.rank == before
            check_invariants(A)
            assert same_row_space(rows_of(A), accepted, p)


@pytest.mark.parametrize("p,D", [(3, 0), (3, 1), (3, 2), (2, 2), (5, 1)])
def test_membership_reduction_duality_exhaustive(p, D):
    rng = random.Random(D * 10 + p)
    points = list(itertools.product(range(p), repeat=D + 1))
    for _ in range(25):
        A = EchelonForm(p, D)
        for x, y in random_sequence(rng, p, D, rng.randrange(1, D + 3)):
            A.insert(x, y)
        if A.rank == 0:
            continue
        C = equation_system(A)
        assert C.size == D + 2 - A.rank
        for pt in points:
            x, y = list(pt[:D]), pt[D]
            assert membership(C, x, y) == A.contains(x, y)


@pytest.mark.parametrize("p,D", [(3, 1), (3, 2), (5, 1), (2, 3)])
def test_equation_system_matches_solution_enumeration(p, D):
    rng = random.Random(p * 7 + D)
    for _ in range(20):
        A = EchelonForm(p, D)
        for x, y in random_sequence(rng, p, D, rng.randrange(1, D + 2)):
            A.insert(x, y)
        if A.rank == 0:
            continue
        C = equation_system(A)
        sols = set(solutions(rows_of(A), p, D))
        assert {tuple(v) for v in C.vectors.tolist()} <= sols
        # differences to the first vector are independent, so they span the solution set
        diffs = [[(a - b) % p for a, b in zip(v, C.vectors[0])] for v in C.vectors[1:]]
        assert len(rref(diffs, p)) == len(diffs)
        assert len(sols) == p ** (C.size - 1)


def test_insertion_order_independence():
    rng = random.Random(11)
    for _ in range(40):
        p, D = rng.choice([3, 5, 7]), rng.randrange(1, 6)
        seq = random_sequence(rng, p, D, D + 1)
        A = EchelonForm(p, D)
        kept = [(x, y) for x, y in seq if A.insert(x, y) is InsertOutcome.INSERTED]
        for _ in range(3):
            perm = kept[:]
            rng.shuffle(perm)
            B = EchelonForm(p, D)
            for x, y in perm:
                assert B.insert(x, y) is InsertOutcome.INSERTED
            assert same_row_space(rows_of(A), rows_of(B), p)


@settings(max_examples=150)
@given(st.sampled_from([2, 3, 5, 7, 65537]), st.integers(0, 5), st.data())
def test_dependent_iff_reduces_to_zero(p, D, data):
    coords = st.lists(st.integers(0, p - 1), min_size=D, max_size=D)
    A = EchelonForm(p, D)
    for _ in range(data.draw(st.integers(0, D + 1))):
        A.insert(data.draw(coords), data.draw(st.integers(0, p - 1)))
    x, y = data.draw(coords), data.draw(st.integers(0, p - 1))
    zero = reduce_vector(A, sample_row(x, y, p)).is_zero()
    outcome, _ = dynamic_insert(A, x, y)
    assert (outcome is InsertOutcome.DEPENDENT) == zero
    if A.rank:
        assert zero == in_row_space(rows_of(A), [*x, 1, y], p)


def test_large_prime_uses_exact_arithmetic():
    p, D = 2**61 - 1, 3
    rng = random.Random(5)
    c = [rng.randrange(p) for _ in range(D + 1)]
    A = EchelonForm(p, D)
    while A.rank < D + 1:
        x = [rng.randrange(p) for _ in range(D)]
        A.insert(x, (sum(a * b for a, b in zip(c, x)) + c[-1]) % p)
    assert A.rows.dtype == object
    assert list(coefficient_vector(A).entries) == c


def test_copy_is_independent():
    A = EchelonForm(7, 2)
    A.insert([1, 2], 3)
    B = A.copy()
    B.insert([0, 1], 1)
    assert A.rank == 1 and B.rank == 2
    assert np.array_equal(A.rows[0], [1, 2, 1, 3])
