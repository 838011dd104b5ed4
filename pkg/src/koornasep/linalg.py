"""Small dense linear algebra over exact rationals or mpmath numbers.

numpy is float-only, so these helpers work on plain lists of rows.
"""

from fractions import Fraction


def _is_exact(x):
    return isinstance(x, (int, Fraction))


def solve_exact(A, B):
    """Solve A X = B by Gauss-Jordan elimination.  ``A`` is n x n and ``B`` is
    n x k, both lists of rows; returns X as a list of rows.  Exact entries
    pivot on the first nonzero, numeric entries on the largest modulus."""
    n = len(A)
    if any(len(row) != n for row in A) or len(B) != n:
        raise ValueError("shape mismatch")
    A = [list(r) for r in A]
    B = [list(r) for r in B]
    for col in range(n):
        cands = [r for r in range(col, n) if A[r][col] != 0]
        if not cands:
            raise ZeroDivisionError("singular matrix")
        if all(_is_exact(A[r][col]) for r in cands):
            piv = cands[0]
        else:
            piv = max(cands, key=lambda r: abs(A[r][col]))
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        inv = 1 / A[col][col] if not isinstance(A[col][col], int) else Fraction(1, A[col][col])
        A[col] = [v * inv for v in A[col]]
        B[col] = [v * inv for v in B[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
                B[r] = [a - f * b for a, b in zip(B[r], B[col])]
    return B


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in r] for r in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def vecmat(v, A):
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(len(A[0]))]


def max_abs(A):
    """Largest modulus of a matrix or vector entry."""
    if A and isinstance(A[0], list):
        return max((abs(x) for r in A for x in r), default=0)
    return max((abs(x) for x in A), default=0)


def charpoly(A):
    """Characteristic polynomial det(z I - A) coefficients, highest degree
    first, by the Faddeev-LeVerrier recursion (exact for rationals)."""
    n = len(A)
    one = Fraction(1)
    coeffs = [one]
    M = [[0 * one] * n for _ in range(n)]
    I = identity(n, one)
    for k in range(1, n + 1):
        M = mat_add(matmul(A, M), mat_scale(I, coeffs[-1]))
        AM = matmul(A, M)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs
