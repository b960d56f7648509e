"""Small GF(2) linear algebra helpers.

Vectors are tuples of 0/1 ints, matrices are tuples of row tuples.
Everything is exact; sizes stay tiny (at most 4g <= 24 unknowns), so
plain Gaussian elimination over Python ints is all we need.
"""

from __future__ import annotations


def vec_add(u, v):
    return tuple((a ^ b) for a, b in zip(u, v))


def dot(u, v):
    return sum(a & b for a, b in zip(u, v)) & 1


def zero_vec(n):
    return (0,) * n


def unit_vec(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def rank(rows):
    """Rank of the span of `rows` (each a 0/1 tuple)."""
    work = [list(r) for r in rows if any(r)]
    n = len(work[0]) if work else 0
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                work[i] = [x ^ y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def in_span(rows, v):
    base = rank(rows)
    return rank(list(rows) + [v]) == base


def inverse(m):
    """Inverse of a square GF(2) matrix; raises ValueError if singular."""
    n = len(m)
    work = [list(row) + list(ident_row) for row, ident_row in zip(m, identity(n))]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        work[col], work[piv] = work[piv], work[col]
        for i in range(n):
            if i != col and work[i][col]:
                work[i] = [x ^ y for x, y in zip(work[i], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def is_invertible(m):
    return rank(m) == len(m)


def solve_affine(rows, rhs):
    """One solution x of `rows @ x = rhs`, or None.

    Deterministic: free variables are set to 0, which yields the
    lexicographically-least solution for the echelon pivot order.
    """
    if not rows:
        return ()
    n = len(rows[0])
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                work[i] = [x ^ y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(work)):
        if work[i][n]:
            return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = work[i][n]
    return tuple(x)


def solution_space(rows, rhs):
    """All solutions as (particular, kernel_basis); None if inconsistent."""
    part = solve_affine(rows, rhs)
    if part is None:
        return None
    n = len(rows[0]) if rows else 0
    kernel = []
    for i in range(n):
        e = unit_vec(n, i)
        # e is in the kernel-completion iff rows @ e lands on reduced zeros;
        # build the kernel by solving the homogeneous system instead.
        kernel.append(e)
    # Proper kernel basis via elimination on the transposed relation.
    kernel = _kernel_basis(rows, n)
    return part, kernel


def _kernel_basis(rows, n):
    work = [list(r) for r in rows]
    pivots = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                work[i] = [x ^ y for x, y in zip(work[i], work[r])]
        pivots[col] = r
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for f in free:
        v = [0] * n
        v[f] = 1
        for col, row_i in pivots.items():
            if work[row_i][f]:
                v[col] = 1
        basis.append(tuple(v))
    return basis
