"""Closed formulas for the dual canonical basis of U-tilde(sl_2).

A pair ``(v, w)`` is written ``Pair(v1, v2, w1, w2)``.  The basis element
``L(v, w)`` has leading term ``E^(w1-l) F^(w2-l) K^v1 K'^v2`` with
``l = v1 + v2``; the dictionary with the C-indices of the generic
construction is ``alpha = v1, beta = v2, a = w2 - l, c = w1 - l``.

Nothing here touches the general machinery except for the final
conversion of monomials into algebra elements, so this module doubles as
an independent check on :mod:`qgdcb.canonical`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import presentation
from .canonical import DCBIndex
from .coeff import LaurentHalf, exact_div, qbinom, qint

_ONE = LaurentHalf.const(1)


class RankOneError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Pair:
    v1: int
    v2: int
    w1: int
    w2: int

    def __post_init__(self):
        if min(self.v1, self.v2, self.w1, self.w2) < 0:
            raise RankOneError(f"pair entries must be nonnegative: {self}")

    @property
    def v(self):
        return (self.v1, self.v2)

    @property
    def w(self):
        return (self.w1, self.w2)

    def shifted(self, dv=(0, 0), dw=(0, 0)):
        return Pair(self.v1 + dv[0], self.v2 + dv[1], self.w1 + dw[0], self.w2 + dw[1])

    def text(self):
        return f"({self.v1},{self.v2};{self.w1},{self.w2})"


def _lv(e):
    """v^e as a Laurent polynomial (integer e)."""
    return LaurentHalf.vpow(2 * e)


def is_l_dominant(p):
    return p.v1 + p.v2 <= min(p.w1, p.w2)


def _require_dominant(p):
    if not is_l_dominant(p):
        raise RankOneError(f"{p.text()} is not l-dominant: need v1 + v2 <= min(w1, w2)")


def tr(v, vp):
    """The integer (v1 - v2) - (v'1 - v'2)."""
    return (v[0] - v[1]) - (vp[0] - vp[1])


def image_set(p):
    """All v' with v'1 <= min(v1, w2 - v'2) and v'2 <= min(v2, w1 - v'1)."""
    out = []
    for a in range(p.v1 + 1):
        for b in range(p.v2 + 1):
            if a <= p.w2 - b and b <= p.w1 - a:
                out.append((a, b))
    return out


def variety_dim(p):
    l = p.v1 + p.v2
    return l * (p.w1 + p.w2 - l)


@dataclass(frozen=True)
class StratumData:
    v: tuple
    stratum_dim: int
    defect: int
    fiber_dim: int


def dims(p):
    """Dimension of the smooth variety and, for each stratum in the image,
    the defect 2 dim(fiber) + dim(stratum) - dim(variety)."""
    _require_dominant(p)
    total = variety_dim(p)
    k = p.w1 - p.w2
    strata = []
    for vp in image_set(p):
        t = tr(p.v, vp)
        defect = t * (k - t)
        sdim = variety_dim(Pair(vp[0], vp[1], p.w1, p.w2))
        twice = defect + total - sdim
        if twice % 2:
            raise RankOneError(f"odd fiber dimension count at {vp}")
        strata.append(StratumData(vp, sdim, defect, twice // 2))
    return total, strata


def pi_decompose(p):
    """Multiplicities of the L(v', w) in pi(v, w), as {Pair: LaurentHalf}."""
    k = p.w1 - p.w2
    out = {}
    for vp in image_set(p):
        t = tr(p.v, vp)
        if k >= 0 and 0 <= t <= k:
            c = qbinom(k, t)
        elif k <= 0 and k <= t <= 0:
            c = qbinom(-k, -t)
        else:
            continue
        out[Pair(vp[0], vp[1], p.w1, p.w2)] = c
    return out


def restriction_identity_holds(p):
    """Check binom(k, tr(v, v'')) = sum over v' >= v'' with tr(v', v'') = 0
    of a(v, v') b(v', v''), with b the Kronecker delta (w1 >= w2 side)."""
    k = p.w1 - p.w2
    if k < 0:
        p = Pair(p.v2, p.v1, p.w2, p.w1)
        k = -k
    a = {(q.v1, q.v2): c for q, c in pi_decompose(p).items()}
    for vpp in image_set(p):
        t = tr(p.v, vpp)
        if not 0 <= t <= k:
            continue
        rhs = LaurentHalf.const(0)
        for vp, c in a.items():
            if vp[0] >= vpp[0] and vp[1] >= vpp[1] and tr(vp, vpp) == 0:
                rhs = rhs + c * (_ONE if vp == vpp else LaurentHalf.const(0))
        if rhs != qbinom(k, t):
            return False
    return True


def d_form(p1, p2):
    """(w'1 - w'2)(v''1 - v''2) - (w''1 - w''2)(v'1 - v'2)."""
    return (p1.w1 - p1.w2) * (p2.v1 - p2.v2) - (p2.w1 - p2.w2) * (p1.v1 - p1.v2)


# --------------------------------------------------------------------------
# L(v, w) as an element


def to_index(p):
    l = p.v1 + p.v2
    return DCBIndex((p.v1,), (p.v2,), (p.w2 - l,), (p.w1 - l,))


def from_index(idx):
    v1, v2 = idx.alpha[0], idx.beta[0]
    l = v1 + v2
    return Pair(v1, v2, idx.c[0] + l, idx.a[0] + l)


def _pres():
    return presentation("A", 1, "Uhat")


def _monomial(pres, a, b, c, d):
    """E^a F^b K^c K'^d in the given presentation."""
    return pres.E(0) ** a * pres.F(0) ** b * pres.K((c,), (d,))


def closed_form_terms(p):
    """The terms of the alternating formula as a list of
    (coefficient, (a, b, c, d)) meaning coefficient * E^a F^b K^c K'^d.

    Only valid as written when w1 >= w2.
    """
    _require_dominant(p)
    n = min(p.w1, p.w2)
    l = p.v1 + p.v2
    out = []
    for k in range(l, n + 1):
        sign = -1 if (k - l) % 2 else 1
        for a in range(p.v1, k - p.v2 + 1):
            b = k - a
            f = (p.w1 - p.w2) * (p.v1 - p.v2) + (n + 1 - k) * ((p.v1 - p.v2) - (a - b))
            c = qbinom(n - b - p.v1, a - p.v1) * qbinom(n - a - p.v2, b - p.v2) * _lv(f)
            if sign < 0:
                c = -c
            if c:
                out.append((c, (p.w1 - k, p.w2 - k, a, b)))
    return out


@lru_cache(maxsize=None)
def L_closed_form(p):
    """L(v, w) in U-hat(sl_2), in normal form.

    The formula is used directly when w1 >= w2.  Otherwise L(v, (w1, w2)) is
    the image of L(v, (w2, w1)) under the anti-automorphism exchanging E and F.
    """
    _require_dominant(p)
    if p.w1 < p.w2:
        from .operators import transpose

        return transpose(L_closed_form(Pair(p.v1, p.v2, p.w2, p.w1)))
    pres = _pres()
    out = pres.zero()
    for c, (a, b, k, kp) in closed_form_terms(p):
        out = out + _monomial(pres, a, b, k, kp).scale(c)
    return out


def L_direct_mirror(p):
    """The alternating formula with the roles of E and F (and of w1, w2)
    exchanged, written out without going through an involution.

    Meant for w1 < w2, where it should agree with L_closed_form.
    """
    _require_dominant(p)
    if p.w1 >= p.w2:
        raise RankOneError("the mirrored formula is for w1 < w2")
    q = Pair(p.v1, p.v2, p.w2, p.w1)
    pres = _pres()
    out = pres.zero()
    for c, (a, b, k, kp) in closed_form_terms(q):
        out = out + (pres.K((k,), (kp,)) * pres.E(0) ** b * pres.F(0) ** a).scale(c)
    return out


def casimir(m):
    """C^(m) = L(0, (m, m)); C^(1) is the quantum Casimir element."""
    if m < 0:
        raise RankOneError("casimir index must be nonnegative")
    return L_closed_form(Pair(0, 0, m, m))


def casimir_recursion_holds(m):
    """C * C^(m) == C^(m+1) + K K' C^(m-1) for m >= 1."""
    from .algebra import multiply

    pres = _pres()
    lhs = multiply(casimir(1), casimir(m))
    rhs = casimir(m + 1) + pres.K((1,), (1,)) * casimir(m - 1)
    return lhs == rhs


# --------------------------------------------------------------------------
# Multiplication rules


_GENS = ("E", "F", "K", "K'")


def act(gen, side, k, p):
    """gen^k * L(p) (side 'left') or L(p) * gen^k (side 'right').

    Returns (scalar, Pair) with gen^k L(p) = scalar * L(Pair).
    """
    if gen not in _GENS:
        raise RankOneError(f"unknown generator {gen!r}; choose from {_GENS}")
    if side not in ("left", "right"):
        raise RankOneError("side must be 'left' or 'right'")
    if k < 1:
        raise RankOneError("power must be a positive integer")
    _require_dominant(p)
    sgn = 1 if side == "left" else -1
    if gen in ("K", "K'"):
        diff = p.w1 - p.w2
        if gen == "K":
            return _lv(sgn * k * diff), p.shifted((k, 0), (k, k))
        return _lv(-sgn * k * diff), p.shifted((0, k), (k, k))
    if p.w1 != p.w2:
        raise RankOneError("the E/F rules are only available when w1 == w2")
    diff = p.v2 - p.v1
    if gen == "E":
        return _lv(sgn * k * diff), p.shifted(dw=(k, 0))
    return _lv(-sgn * k * diff), p.shifted(dw=(0, k))


def ef_expand(a, b):
    """E^a F^b as {Pair: coefficient} over the L(v, (a, b))."""
    if a < 0 or b < 0:
        raise RankOneError("exponents must be nonnegative")
    m = min(a, b)
    top = max(a, b)
    out = {}
    for v1 in range(m + 1):
        for v2 in range(m + 1 - v1):
            c = qbinom(m + 1, v1) * qbinom(m + 1, v2) * qint(m + 1 - v1 - v2)
            c = exact_div(c, qint(m + 1)) * _lv(top * (v2 - v1))
            if c:
                out[Pair(v1, v2, a, b)] = c
    return out


def ef_expand_via_core(a, b):
    """E^a F^b obtained from the a == b case and the E/F rules."""
    m = min(a, b)
    out = {}
    for p, c in ef_expand(m, m).items():
        if a > m:
            s, p = act("E", "left", a - m, p)
        elif b > m:
            s, p = act("F", "right", b - m, p)
        else:
            s = _ONE
        out[p] = c * s
    return out


def expand_monomial(a, b, c, d):
    """E^a F^b K^c K'^d as {Pair: coefficient}, using ef_expand and the K rules."""
    out = {}
    for p, coeff in ef_expand(a, b).items():
        if c:
            s, p = act("K", "right", c, p)
            coeff = coeff * s
        if d:
            s, p = act("K'", "right", d, p)
            coeff = coeff * s
        out[p] = out.get(p, LaurentHalf.const(0)) + coeff
    return {p: x for p, x in out.items() if x}


def substitute(expansion):
    """Sum of coefficient * L_closed_form(pair)."""
    pres = _pres()
    out = pres.zero()
    for p, c in expansion.items():
        out = out + L_closed_form(p).scale(c)
    return out


def inverse_identity_holds(a, b, c, d):
    pres = _pres()
    return substitute(expand_monomial(a, b, c, d)) == _monomial(pres, a, b, c, d)


def dominant_pairs(wmax):
    """All l-dominant pairs with w1, w2 <= wmax."""
    out = []
    for w1 in range(wmax + 1):
        for w2 in range(wmax + 1):
            n = min(w1, w2)
            for v1 in range(n + 1):
                for v2 in range(n + 1 - v1):
                    out.append(Pair(v1, v2, w1, w2))
    return out


def oracle_agrees(p):
    """Compare the closed formula with the general construction."""
    from .canonical import cb_element
    from .cartan import build_cartan

    return cb_element(build_cartan("A", 1), to_index(p)) == L_closed_form(p)


def expansion_to_rows(expansion):
    """Rows (v1, v2, w1, w2, coefficient) sorted by pair."""
    return [(p.v1, p.v2, p.w1, p.w2, c) for p, c in sorted(expansion.items())]


__all__ = [
    "Pair", "RankOneError", "StratumData", "act", "casimir", "casimir_recursion_holds",
    "closed_form_terms", "d_form", "dims", "dominant_pairs", "ef_expand", "ef_expand_via_core",
    "expand_monomial", "expansion_to_rows", "from_index", "image_set", "inverse_identity_holds",
    "is_l_dominant", "L_closed_form", "L_direct_mirror", "oracle_agrees", "pi_decompose",
    "restriction_identity_holds", "substitute", "to_index", "tr", "variety_dim",
]
