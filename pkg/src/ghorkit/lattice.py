"""Exact ranks of integer vector families.

``integer_rank`` row-reduces over Z with gcd steps (Hermite style), never leaving
the integers.  ``rational_rank`` runs Gaussian elimination over Fractions.
They share no code so each can serve as a check on the other.
"""

from __future__ import annotations

from fractions import Fraction
from collections.abc import Iterable, Sequence


def integer_rank(vectors: Iterable[Sequence[int]]) -> int:
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        # Euclid on column entries of the remaining rows until one pivot is left.
        while True:
            live = [r for r in range(rank, len(rows)) if rows[r][col] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: abs(rows[r][col]))
            for r in live:
                if r == piv:
                    continue
                q = rows[r][col] // rows[piv][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[piv])]
        live = [r for r in range(rank, len(rows)) if rows[r][col] != 0]
        if live:
            r = live[0]
            rows[rank], rows[r] = rows[r], rows[rank]
            rank += 1
            if rank == len(rows):
                break
    return rank


def rational_rank(vectors: Iterable[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in v] for v in vectors]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def independent(vectors: Sequence[Sequence[int]]) -> bool:
    return integer_rank(vectors) == len(vectors)
