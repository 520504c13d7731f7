"""Sparse exact row reduction over an exact field.

Vectors are dicts ``key -> coefficient`` with no zero entries. Keys are any
hashable objects (monomials, in practice).
"""

from __future__ import annotations

from typing import Hashable, Iterable


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a * x``, dropping cancelled entries."""
    for k, c in x.items():
        v = y.get(k)
        if v is None:
            y[k] = a * c
        else:
            v = v + a * c
            if v:
                y[k] = v
            else:
                del y[k]


class Echelon:
    """Incremental Gauss-Jordan basis of a span.

    Each stored row has coefficient 1 at its pivot and no entries at other
    pivots, so reducing a vector needs a single pass. With ``track=True``
    every row also remembers how it was built from the inserted vectors,
    which turns ``reduce`` into a linear solver.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.labels: list = []
        # column key -> pivots of the rows that have a nonzero entry there
        self._cols: dict[Hashable, set] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return (residual, combination) with ``vec = residual + sum c_label * input_label``."""
        vec = dict(vec)
        combo: dict = {}
        for k in [k for k in vec if k in self.rows]:
            c = vec.get(k)
            if not c:
                continue
            axpy(vec, -c, self.rows[k])
            if self.track:
                axpy(combo, c, self.combos[k])
        return vec, combo

    def add(self, vec: dict, label=None) -> bool:
        """Insert ``vec``; True iff it was independent of the current span."""
        if label is None:
            label = len(self.labels)
        residual, combo = self.reduce(vec)
        if not residual:
            self.labels.append(label)
            return False
        pivot = min(residual, key=_sort_key)
        inv = 1 / residual[pivot]
        row = {k: c * inv for k, c in residual.items()}
        if self.track:
            # row = inv * (vec - combo)
            rc = {k: -c * inv for k, c in combo.items()}
            axpy(rc, inv, {label: 1})
            self.combos[pivot] = rc
        cols = self._cols
        for k in cols.pop(pivot, ()):
            other = self.rows[k]
            c = other[pivot]
            before = other.keys() - {pivot}
            axpy(other, -c, row)
            for key in before - other.keys():
                cols[key].discard(k)
            for key in other.keys() - before:
                cols.setdefault(key, set()).add(k)
            if self.track:
                axpy(self.combos[k], -c, self.combos[pivot])
        for key in row:
            if key != pivot:
                cols.setdefault(key, set()).add(pivot)
        self.rows[pivot] = row
        self.labels.append(label)
        return True

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def solve(self, vec: dict) -> dict | None:
        """Coefficients on input labels expressing ``vec``, or None if outside the span."""
        if not self.track:
            raise RuntimeError("solve needs an Echelon built with track=True")
        residual, combo = self.reduce(vec)
        if residual:
            return None
        return combo

    def basis(self) -> list[dict]:
        """Reduced rows, ordered by pivot."""
        return [self.rows[k] for k in sorted(self.rows, key=_sort_key)]


def _sort_key(k):
    return getattr(k, "sort_key", None) or k


def rank(vectors: Iterable[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def same_span(a: Iterable[dict], b: Iterable[dict]) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(r) for r in eb.rows.values())
