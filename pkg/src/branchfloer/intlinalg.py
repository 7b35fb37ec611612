"""Exact integer and rational linear algebra.

Small dense systems only: Smith-style elimination over Z for kernel
lattices, rational Gaussian elimination with reusable factorizations,
and congruence diagonalization for symmetric signatures.  No floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


def int_kernel_basis(mat: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the integer kernel lattice {x in Z^n : mat @ x = 0}.

    Column-reduces [mat; I] over Z; kernel columns are read off under the
    zero columns of the reduced mat.  The result is a lattice basis (the
    kernel is saturated, so this is also a basis of all integer solutions).
    """
    m = len(mat)
    if m == 0:
        raise ValueError("need explicit column count for empty matrix")
    n = len(mat[0])
    a = [list(row) for row in mat]
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in ident:
            row[j], row[k] = row[k], row[j]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        for row in a:
            row[j] += q * row[k]
        for row in ident:
            row[j] += q * row[k]

    pivot_row = 0
    pivot_col = 0
    while pivot_row < m and pivot_col < n:
        # find the column with smallest nonzero entry in pivot_row
        best = None
        for j in range(pivot_col, n):
            v = a[pivot_row][j]
            if v != 0 and (best is None or abs(v) < abs(a[pivot_row][best])):
                best = j
        if best is None:
            pivot_row += 1
            continue
        col_swap(pivot_col, best)
        # euclidean reduction of the pivot row against the pivot column
        while True:
            done = True
            p = a[pivot_row][pivot_col]
            for j in range(pivot_col + 1, n):
                v = a[pivot_row][j]
                if v != 0:
                    q = v // p
                    col_addmul(j, pivot_col, -q)
                    if a[pivot_row][j] != 0:
                        done = False
            if done:
                break
            # a smaller remainder appeared; move it into the pivot slot
            best = pivot_col
            for j in range(pivot_col, n):
                v = a[pivot_row][j]
                if v != 0 and abs(v) < abs(a[pivot_row][best]):
                    best = j
            col_swap(pivot_col, best)
        pivot_row += 1
        pivot_col += 1

    kernel = []
    for j in range(n):
        if all(a[i][j] == 0 for i in range(m)):
            kernel.append([ident[i][j] for i in range(n)])
    return kernel


class LatticeReducer:
    """Row echelon form of an integer lattice, for membership tests.

    Pivot rows are kept by leading column with positive leading entries;
    reduce() gives the canonical coset representative under floor
    division, so two vectors are congruent iff they reduce equally.
    """

    def __init__(self, rows: Sequence[Sequence[int]], n_cols: int):
        self.n = n_cols
        self.pivot: dict = {}
        for row in rows:
            self.add(list(row))

    def add(self, row: List[int]):
        row = list(row)
        while True:
            lead = next((j for j in range(self.n) if row[j] != 0), None)
            if lead is None:
                return
            if lead not in self.pivot:
                if row[lead] < 0:
                    row = [-v for v in row]
                self.pivot[lead] = row
                return
            piv = self.pivot[lead]
            if abs(row[lead]) < abs(piv[lead]):
                self.pivot[lead], row = ([-v for v in row]
                                         if row[lead] < 0 else row), piv
                piv = self.pivot[lead]
            q = row[lead] // piv[lead]
            row = [row[j] - q * piv[j] for j in range(self.n)]

    def reduce(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """Canonical representative of vec modulo the lattice."""
        v = list(vec)
        for lead in sorted(self.pivot):
            r = self.pivot[lead]
            if v[lead] != 0:
                q = v[lead] // r[lead]
                if q:
                    v = [v[j] - q * r[j] for j in range(self.n)]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))


class RationalSolver:
    """LU-style factorization of a rational matrix, reusable across RHS.

    Solves mat @ x = rhs exactly; reports inconsistency with None.
    """

    def __init__(self, mat: Sequence[Sequence[int]]):
        self.m = len(mat)
        self.n = len(mat[0]) if self.m else 0
        self.rows = [[Fraction(v) for v in row] for row in mat]
        self.ops: List[Tuple[str, int, int, Fraction]] = []
        self.pivots: List[Tuple[int, int]] = []
        self._reduce()

    def _reduce(self):
        r = 0
        for c in range(self.n):
            piv = None
            for i in range(r, self.m):
                if self.rows[i][c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                self.rows[r], self.rows[piv] = self.rows[piv], self.rows[r]
                self.ops.append(("swap", r, piv, Fraction(0)))
            pv = self.rows[r][c]
            for i in range(self.m):
                if i != r and self.rows[i][c] != 0:
                    f = self.rows[i][c] / pv
                    row_i, row_r = self.rows[i], self.rows[r]
                    for j in range(c, self.n):
                        row_i[j] -= f * row_r[j]
                    self.ops.append(("elim", i, r, f))
            self.pivots.append((r, c))
            r += 1
            if r == self.m:
                break

    def solve(self, rhs: Sequence) -> Optional[List[Fraction]]:
        b = [Fraction(v) for v in rhs]
        for kind, i, j, f in self.ops:
            if kind == "swap":
                b[i], b[j] = b[j], b[i]
            else:
                b[i] -= f * b[j]
        x = [Fraction(0)] * self.n
        pivot_rows = set()
        for r, c in self.pivots:
            x[c] = b[r] / self.rows[r][c]
            pivot_rows.add(r)
        for i in range(self.m):
            if i not in pivot_rows and b[i] != 0:
                return None
        return x


def symmetric_signature(mat: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix via congruence reduction."""
    n = len(mat)
    a = [[Fraction(v) for v in row] for row in mat]
    sig = 0
    idx = list(range(n))
    k = 0
    while k < n:
        # want a nonzero diagonal pivot at (k, k)
        piv = None
        for i in range(k, n):
            if a[i][i] != 0:
                piv = i
                break
        if piv is None:
            # hyperbolic handling: find off-diagonal nonzero and mix
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                break  # remaining block is zero
            i, j = found
            # row/col_i += row/col_j makes the diagonal nonzero
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        p = a[k][k]
        sig += 1 if p > 0 else -1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] -= f * a[j][k]
        k += 1
    return sig


def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free enough)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    assert det.denominator == 1
    return int(det)
