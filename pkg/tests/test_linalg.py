
from esymfano.fields import QQ, PrimeField
from esymfano.linalg import is_invertible, mat_mul, nullspace, rank, rref

from conftest import qm


def test_rref_pivots():
    red, pivots = rref(qm([[0, 2, 4], [1, 1, 1]]), QQ)
    assert pivots == [0, 1]
    assert red[0][0] == 1 and red[1][1] == 1


def test_rank():
    assert rank(qm([[1, 2], [2, 4]]), QQ) == 1
    assert rank(qm([[1, 0], [0, 1]]), QQ) == 2


def test_nullspace_solves():
    rows = qm([[1, 2, 3], [0, 1, 1]])
    basis = nullspace(rows, QQ)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) == 0


def test_prime_field_rref():
    f5 = PrimeField(5)
    rows = tuple(tuple(f5.from_int(x) for x in r) for r in [[2, 1], [1, 4]])
    assert rank(rows, f5) == 2
    assert is_invertible(rows, f5)


def test_mat_mul():
    a = qm([[1, 2], [3, 4]])
    b = qm([[0, 1], [1, 0]])
    assert mat_mul(a, b, QQ) == qm([[2, 1], [4, 3]])


def test_nullspace_dimension():
    rows = qm([[1, 1, 1, 1]])
    assert len(nullspace(rows, QQ)) == 3
