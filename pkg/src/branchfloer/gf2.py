"""GF(2) linear algebra on int bitsets.

A vector in F_2^n is a Python int whose bit i is coordinate i; a matrix is a
list of row bitsets.  Everything here is exact.
"""

from __future__ import annotations

from typing import List, Optional, Tuple


def rank(rows: List[int]) -> int:
    """Rank of the row span over GF(2)."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
    return len(basis)


def row_reduce(rows: List[int]) -> List[int]:
    """Reduced basis of the row span (pivot bits unique per row)."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            if row & (b & -b):
                row ^= b
        if row:
            for i, b in enumerate(basis):
                if b & (row & -row):
                    basis[i] ^= row
            basis.append(row)
    return basis


def in_span(vec: int, basis_reduced: List[int]) -> bool:
    """Whether vec lies in the span of a row_reduce()-ed basis."""
    for b in basis_reduced:
        if vec & (b & -b):
            vec ^= b
    return vec == 0


def solve(rows: List[int], n_cols: int, target: int) -> Optional[int]:
    """Solve x @ rows = target over GF(2); returns a combination bitset.

    Bit j of the answer says row j participates.  Returns None if the
    target is not in the row span.
    """
    work = []
    for j, row in enumerate(rows):
        work.append((row, 1 << j))
    basis: List[Tuple[int, int]] = []
    for row, tag in work:
        for b, btag in basis:
            if row & (b & -b):
                row ^= b
                tag ^= btag
        if row:
            basis.append((row, tag))
    tag_out = 0
    for b, btag in basis:
        if target & (b & -b):
            target ^= b
            tag_out ^= btag
    if target:
        return None
    return tag_out


def kernel_basis(rows: List[int], n_cols: int) -> List[int]:
    """Basis of {x : x @ rows^T = 0}, i.e. the left kernel of columns.

    Rows are interpreted as the columns' coordinates: this computes all
    combinations of the given rows summing to zero.
    """
    basis: List[Tuple[int, int]] = []
    out: List[int] = []
    for j, row in enumerate(rows):
        tag = 1 << j
        for b, btag in basis:
            if row & (b & -b):
                row ^= b
                tag ^= btag
        if row:
            basis.append((row, tag))
        else:
            out.append(tag)
    return out


def matrix_rank_and_nullity(rows: List[int], n_cols: int) -> Tuple[int, int]:
    r = rank(rows)
    return r, len(rows) - r
