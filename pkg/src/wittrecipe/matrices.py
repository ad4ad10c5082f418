"""Exact matrix arithmetic over arbitrary commutative ring elements.

Matrices are tuples of row tuples.  Entries only need +, -, * and ==,
so the same helpers serve integers, polynomials and localized fractions.
All ranks in this package are desk scale; cofactor expansion is fine.
"""

from __future__ import annotations

from typing import Sequence


def mat(rows) -> tuple:
    return tuple(tuple(row) for row in rows)


def dims(a) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def zeros(nrows: int, ncols: int, zero) -> tuple:
    return tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows))


def eye(n: int, one, zero) -> tuple:
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def transpose(a) -> tuple:
    return tuple(zip(*a)) if a else ()


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b, zero):
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_vec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def is_zero_matrix(a, zero) -> bool:
    return all(x == zero for row in a for x in row)


def minor(a, i, j):
    return tuple(
        tuple(x for cj, x in enumerate(row) if cj != j)
        for ri, row in enumerate(a)
        if ri != i
    )


def det(a, zero, one):
    n, m = dims(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return one
    if n == 1:
        return a[0][0]
    acc = zero
    for j in range(n):
        if a[0][j] == zero:
            continue
        term = a[0][j] * det(minor(a, 0, j), zero, one)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def adjugate(a, zero, one):
    n, _ = dims(a)
    if n == 0:
        return ()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det(minor(a, j, i), zero, one)
            row.append(c if (i + j) % 2 == 0 else -c)
        rows.append(tuple(row))
    return tuple(rows)


def assemble(blocks, row_sizes: Sequence[int], col_sizes: Sequence[int], zero):
    """Assemble a block matrix; blocks maps (bi, bj) to a matrix, missing
    blocks are zero.  Zero-sized blocks are handled by the size lists."""
    out = []
    for bi, rsize in enumerate(row_sizes):
        rows = [[] for _ in range(rsize)]
        for bj, csize in enumerate(col_sizes):
            blk = blocks.get((bi, bj))
            for r in range(rsize):
                if blk is None:
                    rows[r].extend(zero for _ in range(csize))
                else:
                    rows[r].extend(blk[r])
        out.extend(tuple(r) for r in rows)
    return tuple(out)
