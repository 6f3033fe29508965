"""Incremental Gaussian elimination over Q(v^(1/2)).

Vectors are sparse dicts ``key -> RatFunc``.  Every stored row remembers
how it was obtained from the labelled input vectors, so coordinates with
respect to those inputs come out of a single reduction pass.
"""

from __future__ import annotations

from .coeff import RatFunc, as_ratfunc


class DependentVector(ValueError):
    pass


class NotInSpan(ValueError):
    pass


def _pivot_key(row):
    # prefer a unit coefficient so that later divisions stay inside the Laurent ring
    best = None
    for k, c in row.items():
        unit = c.is_laurent() and c.num.is_monomial() and abs(next(iter(c.num._c.values()))) == 1
        rank = (0 if unit else 1, k)
        if best is None or rank < best[0]:
            best = (rank, k)
    return best[1]


class SpanSolver:
    def __init__(self):
        self._rows = []  # (pivot, row, expr)
        self.labels = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec):
        vec = {k: as_ratfunc(c) for k, c in vec.items() if c}
        combo = []
        for idx, (p, row, _) in enumerate(self._rows):
            lam = vec.get(p)
            if lam is None:
                continue
            for k, c in row.items():
                s = vec.get(k)
                s = -(lam * c) if s is None else s - lam * c
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            combo.append((idx, lam))
        return vec, combo

    def add(self, vec, label):
        """Append `vec` with a label; returns False (and stores nothing) if dependent."""
        res, combo = self._reduce(vec)
        if not res:
            return False
        p = _pivot_key(res)
        inv = RatFunc.const(1) / res[p]
        row = {k: c * inv for k, c in res.items()}
        expr = {label: inv}
        for idx, lam in combo:
            for lab, c in self._rows[idx][2].items():
                s = expr.get(lab)
                t = -(lam * c * inv)
                s = t if s is None else s + t
                if s:
                    expr[lab] = s
                else:
                    expr.pop(lab, None)
        self._rows.append((p, row, expr))
        self.labels.append(label)
        return True

    def coords(self, vec):
        """Coordinates of `vec` in terms of the labelled inputs."""
        res, combo = self._reduce(vec)
        if res:
            raise NotInSpan("vector is not in the span of the given basis")
        out = {}
        for idx, lam in combo:
            for lab, c in self._rows[idx][2].items():
                s = out.get(lab)
                t = lam * c
                s = t if s is None else s + t
                if s:
                    out[lab] = s
                else:
                    out.pop(lab, None)
        return out


def solve_basis(vectors, labels=None):
    """SpanSolver for a list of vectors that must be linearly independent."""
    solver = SpanSolver()
    labels = range(len(vectors)) if labels is None else labels
    for lab, vec in zip(labels, vectors):
        if not solver.add(vec, lab):
            raise DependentVector(f"basis vector {lab!r} is linearly dependent on the previous ones")
    return solver
