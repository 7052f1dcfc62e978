"""Small exact linear algebra: integer kernels, Hermite form, elimination.

The integer routines use gcd-based unimodular operations (no floating
point, no modular tricks); the field routines are generic Gaussian
elimination and work for any exact field element supporting +, -, *, /
and truthiness (Fraction and Scalar both qualify).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) >= 0 and g = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _integer_rows(rows: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * den) for f in fracs])
    return out


def integer_kernel(
    rows: Sequence[Sequence[Fraction | int]], n: int
) -> list[list[int]]:
    """Basis of the full integer kernel {m in Z^n : A m = 0}.

    Row scaling does not change the kernel, so rational rows are cleared to
    integers first.  Column elimination by unimodular operations yields a
    basis that spans every integer solution (the kernel lattice is
    saturated by construction).
    """
    A = _integer_rows(rows)
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop(c0: int, c1: int, a: int, b: int, c: int, d: int) -> None:
        # (col c0, col c1) <- (a*col c0 + b*col c1, c*col c0 + d*col c1)
        for M in (A, U):
            for row in M:
                x, y = row[c0], row[c1]
                row[c0] = a * x + b * y
                row[c1] = c * x + d * y

    col = 0
    for r in range(len(A)):
        if col >= n:
            break
        nz = [c for c in range(col, n) if A[r][c]]
        if not nz:
            continue
        c0 = nz[0]
        for c in nz[1:]:
            g, s, t = xgcd(A[r][c0], A[r][c])
            a0, a1 = A[r][c0] // g, A[r][c] // g
            colop(c0, c, s, t, -a1, a0)
        if c0 != col:
            colop(col, c0, 0, 1, 1, 0)
        col += 1
    return [[U[i][c] for i in range(n)] for c in range(col, n)]


def hermite_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Canonical (row-style) Hermite normal form basis of the row lattice.

    Pivots positive, entries above each pivot reduced into [0, pivot).
    Equal lattices produce identical output.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    n = len(work[0])
    done: list[list[int]] = []
    for c in range(n):
        pivot = None
        rest = []
        for row in work:
            if row[c] == 0:
                rest.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            g, s, t = xgcd(pivot[c], row[c])
            a0, a1 = pivot[c] // g, row[c] // g
            new_pivot = [s * x + t * y for x, y in zip(pivot, row)]
            new_row = [-a1 * x + a0 * y for x, y in zip(pivot, row)]
            pivot = new_pivot
            if any(new_row):
                rest.append(new_row)
        work = rest
        if pivot is None:
            continue
        if pivot[c] < 0:
            pivot = [-x for x in pivot]
        for prev in done:
            q = prev[c] // pivot[c]
            if q:
                for j in range(n):
                    prev[j] -= q * pivot[j]
        done.append(pivot)
    return done


def in_lattice(basis_hnf: Sequence[Sequence[int]], v: Sequence[int]):
    """Coefficients of v over an HNF basis, or None if v is outside.

    Rows must be in Hermite form (staircase pivots), as produced by
    hermite_form.
    """
    rem = list(v)
    coeffs = []
    for row in basis_hnf:
        c = next(i for i, x in enumerate(row) if x)
        q, r = divmod(rem[c], row[c])
        if r:
            return None
        coeffs.append(q)
        for j in range(len(rem)):
            rem[j] -= q * row[j]
    if any(rem):
        return None
    return coeffs


def field_rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over an exact field; (rows, pivot columns).

    Generic: entries need +, -, *, / and truthiness.  Zero rows are
    dropped.
    """
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][c]
        mat[rank] = [x / inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c]:
                factor = mat[r][c]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(c)
        rank += 1
    return mat[:rank], pivots


def field_rank(rows: Sequence[Sequence]) -> int:
    return len(field_rref(rows)[0])


def reduce_against(row: Sequence, rref_rows: Sequence[Sequence], pivots: Sequence[int]):
    """Subtract the unique combination of rref_rows matching row on the
    pivot columns; the result has zeros there."""
    out = list(row)
    for base, c in zip(rref_rows, pivots):
        factor = out[c]
        if factor:
            out = [x - factor * y for x, y in zip(out, base)]
    return out
