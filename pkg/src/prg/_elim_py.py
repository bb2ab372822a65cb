"""Pure-Python sparse echelon basis over the integers.

Rows are ``{key: int}`` dicts.  Keys are integers whose natural order is the
elimination order: a pivot row is reduced against its largest key first
("top reduction"), so a vector lies in the span of the inserted rows iff it
top-reduces to zero.

Arithmetic is fraction-free.  Every row carries a history ``{tag: int}`` with
the invariant ``row == sum(hist[t] * inserted_row[t])``; callers recover
rational combinations by dividing through by the history entry of the
vector they reduced.
"""
from __future__ import annotations

import heapq
from math import gcd

BACKEND = "python"


class SparseEliminator:
    def __init__(self, track: bool = True):
        self.track = track
        # lead key -> (keys in descending order, values, history)
        self._pivots: dict[int, tuple[list, list, dict]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivot_keys(self) -> list[int]:
        return sorted(self._pivots, reverse=True)

    def reduce(self, row: dict, hist: dict | None = None):
        """Top-reduce a copy of ``row``.

        Returns ``(row, hist, lead)`` where ``lead`` is the largest surviving
        key (not a pivot), or None if the row reduced to zero.
        """
        row = dict(row)
        hist = dict(hist) if hist else {}
        pivots = self._pivots
        track = self.track
        heap = [-k for k in row]
        heapq.heapify(heap)
        pop = heapq.heappop
        push = heapq.heappush
        while heap:
            k = -pop(heap)
            c = row.get(k)
            if c is None:
                continue
            piv = pivots.get(k)
            if piv is None:
                return row, hist, k
            keys, vals, phist = piv
            p = vals[0]
            if c % p == 0:
                q = c // p
            else:
                g = gcd(c, p)
                mr = p // g
                q = c // g
                for kk in row:
                    row[kk] *= mr
                if track:
                    for t in hist:
                        hist[t] *= mr
            for kk, v in zip(keys, vals):
                old = row.get(kk)
                if old is None:
                    row[kk] = -q * v
                    push(heap, -kk)
                else:
                    nv = old - q * v
                    if nv:
                        row[kk] = nv
                    else:
                        del row[kk]
            if track:
                for t, v in phist.items():
                    nv = hist.get(t, 0) - q * v
                    if nv:
                        hist[t] = nv
                    else:
                        hist.pop(t, None)
        return row, hist, None

    def insert(self, row: dict, tag) -> bool:
        """Add a row; returns False if it was already in the span."""
        row, hist, lead = self.reduce(row, {tag: 1} if self.track else None)
        if lead is None:
            return False
        g = 0
        for v in row.values():
            g = gcd(g, v)
        for v in hist.values():
            g = gcd(g, v)
        if row[lead] < 0:
            g = -g
        keys = sorted(row, reverse=True)
        vals = [row[k] // g for k in keys]
        hist = {t: v // g for t, v in hist.items()}
        self._pivots[lead] = (keys, vals, hist)
        return True


def scan_word(w: tuple, L: int, term_lengths: list, term_index: dict, maxlen: list, seen: set) -> list:
    """New placements ``(ri, left, right)`` with ``left + term + right == w``.

    ``term_lengths`` lists ``(factor, sorted term lengths)``; a term of factor f
    may only sit inside the run of f-symbols of w.  Placements longer than L
    or already in ``seen`` are skipped; the rest are added to ``seen``.
    """
    out = []
    n = len(w)
    for f, lengths in term_lengths:
        s0 = 0
        while s0 < n and w[s0].factor < f:
            s0 += 1
        e0 = s0
        while e0 < n and w[e0].factor == f:
            e0 += 1
        for p in range(s0, e0 + 1):
            for tl in lengths:
                if p + tl > e0:
                    break
                rels = term_index.get((f, w[p:p + tl]))
                if not rels:
                    continue
                left, right = w[:p], w[p + tl:]
                outer = n - tl
                for ri in rels:
                    if outer + maxlen[ri] > L:
                        continue
                    ck = (ri, left, right)
                    if ck in seen:
                        continue
                    seen.add(ck)
                    out.append(ck)
    return out
