"""Simply-laced Cartan data, Weyl group combinatorics and Gamma-degrees."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    """Symmetric Cartan matrix with Bourbaki node labels 1..rank."""

    kind: str
    rank: int
    matrix: tuple

    @property
    def label(self):
        return f"{self.kind}{self.rank}"

    def c(self, i, j):
        return self.matrix[i][j]

    def pair(self, a, b):
        """Symmetric bilinear form (a, b) on the root lattice."""
        m = self.matrix
        n = self.rank
        total = 0
        for i in range(n):
            ai = a[i]
            if ai:
                row = m[i]
                for j in range(n):
                    if b[j]:
                        total += ai * row[j] * b[j]
        return total

    def pair_simple(self, i, b):
        """(alpha_i, b)."""
        row = self.matrix[i]
        return sum(row[j] * b[j] for j in range(self.rank))

    def simple(self, i):
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def zero(self):
        return (0,) * self.rank

    def reflect(self, i, lam):
        """s_i(lam) where s_i(alpha_j) = alpha_j - c_ij alpha_i."""
        lam = tuple(lam)
        shift = self.pair_simple(i, lam)
        if not shift:
            return lam
        out = list(lam)
        out[i] -= shift
        return tuple(out)

    def weight_of_word(self, word):
        out = [0] * self.rank
        for i in word:
            out[i] += 1
        return tuple(out)

    @cached_property
    def positive_roots(self):
        """All positive roots, sorted by height then lexicographically."""
        seen = set()
        frontier = [self.simple(i) for i in range(self.rank)]
        seen.update(frontier)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect(i, r)
                    if all(x >= 0 for x in s) and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r))))

    @cached_property
    def longest_word(self):
        """Lexicographically smallest reduced word of the longest element.

        Greedy choice of the smallest left descent at each step gives the
        lexicographically smallest reduced expression.
        """
        n = self.rank
        # w is stored through the images of the simple roots under w^{-1}
        word = []
        # images[i] = w^{-1}(alpha_i), starting from w = w0
        images = list(self._w0_images())
        while True:
            desc = [i for i in range(n) if any(x < 0 for x in images[i])]
            if not desc:
                break
            i = desc[0]
            word.append(i)
            # w <- s_i w ; (s_i w)^{-1}(alpha_j) = w^{-1}(s_i alpha_j)
            new = []
            for j in range(n):
                sj = self.reflect(i, self.simple(j))
                new.append(self._apply_images(images, sj))
            images = new
        return tuple(word)

    def _apply_images(self, images, lam):
        out = [0] * self.rank
        for j, cj in enumerate(lam):
            if cj:
                for k in range(self.rank):
                    out[k] += cj * images[j][k]
        return tuple(out)

    def _w0_images(self):
        # w0 sends the positive system to the negative one; build it as a
        # product of reflections reaching the maximal length.
        nroots = len(self.positive_roots)
        word = []
        # grow w by right multiplication w <- w s_i while length increases
        # length increases iff w(alpha_i) > 0
        while len(word) < nroots:
            for i in range(self.rank):
                wa = self._act(word, self.simple(i))
                if all(x >= 0 for x in wa):
                    word.append(i)
                    break
            else:
                raise CartanError("failed to build the longest element")
        inv = list(reversed(word))
        return [self._act(inv, self.simple(i)) for i in range(self.rank)]

    def _act(self, word, lam):
        """s_{w1} ... s_{wk} (lam)."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def act(self, word, lam):
        return self._act(list(word), tuple(lam))

    def convex_roots(self, word=None):
        """beta_k = s_{i1} ... s_{i(k-1)}(alpha_{ik}) along a reduced word."""
        if word is None:
            word = self.longest_word
        return tuple(self._act(list(word[:k]), self.simple(word[k])) for k in range(len(word)))

    def norm(self, alpha):
        """N(alpha) = (alpha, alpha)/2 - height(alpha)."""
        return self.pair(alpha, alpha) // 2 - sum(alpha)

    def pbw_twist(self, a, roots=None):
        """sum_{k<l} (beta_k, beta_l) a_k a_l for a PBW exponent vector."""
        if roots is None:
            roots = self.convex_roots()
        total = 0
        for k in range(len(a)):
            if a[k]:
                for l in range(k + 1, len(a)):
                    if a[l]:
                        total += self.pair(roots[k], roots[l]) * a[k] * a[l]
        return total

    def pbw_exponents(self, weight):
        """All PBW exponent vectors a with sum a_k beta_k == weight."""
        return _pbw_exponents(self, tuple(weight))

    def kostant(self, weight):
        return len(self.pbw_exponents(weight))


@lru_cache(maxsize=None)
def _pbw_exponents(datum, weight):
    roots = datum.convex_roots()
    out = []

    def rec(k, rest, acc):
        if k == len(roots):
            if not any(rest):
                out.append(tuple(acc))
            return
        beta = roots[k]
        m = 0
        while all(r - m * b >= 0 for r, b in zip(rest, beta)):
            acc.append(m)
            rec(k + 1, tuple(r - m * b for r, b in zip(rest, beta)), acc)
            acc.pop()
            m += 1

    if any(x < 0 for x in weight):
        return ()
    rec(0, weight, [])
    return tuple(sorted(out))


def _type_a(n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _type_d(n):
    m = _type_a(n - 1) + [[0] * (n - 1)]
    for row in m:
        row.append(0)
    m[n - 1][n - 1] = 2
    m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return m


def _type_e(n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for a, b in edges:
        m[a][b] = m[b][a] = -1
    return m


@lru_cache(maxsize=None)
def build_cartan(kind, rank):
    """Cartan datum of a simply-laced Dynkin type (A_n, D_n, E_6..8)."""
    kind = str(kind).upper()
    rank = int(rank)
    if kind == "A" and rank >= 1:
        m = _type_a(rank)
    elif kind == "D" and rank >= 4:
        m = _type_d(rank)
    elif kind == "E" and rank in (6, 7, 8):
        m = _type_e(rank)
    elif kind in ("B", "C", "F", "G"):
        raise CartanError(f"type {kind}{rank} is not simply laced")
    else:
        raise CartanError(f"unknown Dynkin type {kind}{rank}")
    return CartanDatum(kind, rank, tuple(tuple(r) for r in m))


def parse_type(text):
    """'A2' -> build_cartan('A', 2)."""
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise CartanError(f"cannot read Dynkin type {text!r}")
    return build_cartan(text[0], int(text[1:]))


@dataclass(frozen=True)
class GammaDegree:
    """Element of N^I x N^I; `plus` counts E's and K's, `minus` F's and K's."""

    plus: tuple
    minus: tuple

    def __add__(self, other):
        return GammaDegree(tuple(a + b for a, b in zip(self.plus, other.plus)),
                           tuple(a + b for a, b in zip(self.minus, other.minus)))

    def __sub__(self, other):
        return GammaDegree(tuple(a - b for a, b in zip(self.plus, other.plus)),
                           tuple(a - b for a, b in zip(self.minus, other.minus)))

    def is_nonneg(self):
        return all(x >= 0 for x in self.plus + self.minus)


def gamma_eval(datum, i, deg):
    """The coroot alpha_i evaluated on a Gamma-degree (alpha_{+j} -> c_ij, alpha_{-j} -> -c_ij)."""
    row = datum.matrix[i]
    return sum(row[j] * (deg.plus[j] - deg.minus[j]) for j in range(datum.rank))


def compositions(total, parts):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def box(bound):
    """All nonnegative vectors componentwise <= bound."""
    return product(*(range(b + 1) for b in bound))
