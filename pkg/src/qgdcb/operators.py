"""Involutions, braid operators, PBW bases, skew derivations, the Hopf
pairing, the twisted K-action and the embeddings iota."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    AlgebraError,
    Element,
    Presentation,
    _addto,
    change_variant,
    from_half,
    gamma_components,
    half_algebra,
    half_part,
)
from .cartan import gamma_eval
from .coeff import LaurentHalf, RatFunc
from .linalg import solve_basis

_ONE = RatFunc.const(1)
_V_DIFF = RatFunc(LaurentHalf({2: 1, -2: -1}))  # v - v^-1

_SWAP = {"Uhat": "Uhat", "Utilde": "Utilde", "Hplus": "Hminus", "Hminus": "Hplus"}


def _rev(w):
    return tuple(reversed(w))


def _half_elem(pres, sign, word):
    return from_half(pres, sign, half_algebra(pres.datum).reduce(word))


# --------------------------------------------------------------------------
# involutions


def bar(x):
    """Anti-linear anti-automorphism fixing E_i, F_i, K_i, K'_i (v^(1/2) -> v^(-1/2))."""
    pres = x.pres
    out = pres.zero()
    for key, c in x.terms.items():
        out = out + _bar_term(pres, key).scale(c.bar())
    return out


@lru_cache(maxsize=None)
def _bar_term(pres, key):
    f, e, mu, nu = key
    return pres.K(mu, nu) * _half_elem(pres, "+", _rev(e)) * _half_elem(pres, "-", _rev(f))


def star(x):
    """Linear anti-automorphism fixing E_i, F_i and swapping K_i with K'_i."""
    target = x.pres.with_variant(_SWAP[x.pres.variant])
    out = target.zero()
    for key, c in x.terms.items():
        out = out + _star_term(target, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _star_term(target, key):
    f, e, mu, nu = key
    return target.K(nu, mu) * _half_elem(target, "+", _rev(e)) * _half_elem(target, "-", _rev(f))


def transpose(x):
    """Linear anti-automorphism swapping E_i and F_i and fixing the K's."""
    pres = x.pres
    out = pres.zero()
    for key, c in x.terms.items():
        out = out + _transpose_term(pres, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _transpose_term(pres, key):
    f, e, mu, nu = key
    return pres.K(mu, nu) * _half_elem(pres, "-", _rev(e)) * _half_elem(pres, "+", _rev(f))


def chevalley(x):
    """Automorphism swapping E_i with F_i and K_i with K'_i."""
    target = x.pres.with_variant(_SWAP[x.pres.variant])
    out = target.zero()
    for key, c in x.terms.items():
        out = out + _chevalley_term(target, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _chevalley_term(target, key):
    f, e, mu, nu = key
    return _half_elem(target, "+", f) * _half_elem(target, "-", e) * target.K(nu, mu)


def half_swap(x):
    """The isomorphism U^+ <-> U^- sending E_i to F_i (and back)."""
    pres = x.pres
    z = pres.datum.zero()
    out = {}
    for (f, e, mu, nu), c in x.terms.items():
        if mu != z or nu != z or (f and e):
            raise AlgebraError("half_swap needs an element of U^+ or U^-")
        out[(e, f, mu, nu)] = c
    return Element(pres, out)


INVOLUTIONS = {"bar": bar, "star": star, "transpose": transpose, "chevalley": chevalley}


def apply_involution(name, x):
    try:
        fn = INVOLUTIONS[name]
    except KeyError:
        raise AlgebraError(f"unknown involution {name!r}") from None
    return fn(x)


# --------------------------------------------------------------------------
# braid operators


def _need_tilde(pres):
    if pres.variant != "Utilde":
        raise AlgebraError("braid operators need K-inverses (variant Utilde)")


@lru_cache(maxsize=None)
def _braid_gen(pres, i, name, j, inverse):
    d = pres.datum
    vh = RatFunc.vpow(1)
    vhi = RatFunc.vpow(-1)
    v = RatFunc.vpow(2)
    vi = RatFunc.vpow(-2)
    if name in ("K", "K'"):
        lam = d.reflect(i, d.simple(j))
        return pres.K(lam) if name == "K" else pres.K(None, lam)
    if j == i:
        if not inverse:
            if name == "E":
                return pres.Kpi(i, -1) * pres.F(i) * v
            return pres.E(i) * pres.Ki(i, -1) * vi
        if name == "E":
            return pres.F(i) * pres.Ki(i, -1) * v
        return pres.Kpi(i, -1) * pres.E(i) * vi
    c = d.c(i, j)
    g = pres.E if name == "E" else pres.F
    if c == 0:
        return g(j)
    if c != -1:
        raise AlgebraError("braid operators are implemented for simply-laced data only")
    if not inverse:
        num = g(i) * g(j) * vh - g(j) * g(i) * vhi
    else:
        num = g(j) * g(i) * vh - g(i) * g(j) * vhi
    return num.scale(_ONE / _V_DIFF)


def _braid_word(pres, i, letters, inverse):
    out = pres.one()
    for name, j in letters:
        out = out * _braid_gen(pres, i, name, j, inverse)
    return out


@lru_cache(maxsize=None)
def _braid_term(pres, i, key, inverse):
    f, e, mu, nu = key
    out = _braid_word(pres, i, [("F", j) for j in f] + [("E", j) for j in e], inverse)
    d = pres.datum
    return out * pres.K(_reflect_vec(d, i, mu), _reflect_vec(d, i, nu))


def _reflect_vec(d, i, mu):
    return d.reflect(i, mu)


def braid(x, i, inverse=False):
    """The braid operator T_i (or its inverse) with 0-based index i."""
    pres = x.pres
    _need_tilde(pres)
    if not 0 <= i < pres.rank:
        raise AlgebraError(f"braid index {i + 1} out of range")
    out = pres.zero()
    for key, c in x.terms.items():
        out = out + _braid_term(pres, i, key, bool(inverse)).scale(c)
    return out


def braid_word(x, word, inverse=False):
    """Apply T_{w1} T_{w2} ... T_{wk} (rightmost first) to x."""
    for i in reversed(word):
        x = braid(x, i, inverse)
    return x


# --------------------------------------------------------------------------
# PBW bases


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """Index of F^a E^c K_mu K'_nu."""

    a: tuple
    c: tuple
    mu: tuple
    nu: tuple


@lru_cache(maxsize=None)
def _root_vector_coords(datum, sign, k):
    pres = Presentation(datum, "Utilde")
    word = datum.longest_word
    g = pres.E if sign == "+" else pres.F
    x = g(word[k])
    x = braid_word(x, word[:k], inverse=True)
    return half_part(x, sign)


def root_vector(pres, sign, beta):
    """E_beta (sign '+') or F_beta (sign '-') for a positive root beta."""
    roots = pres.datum.convex_roots()
    beta = tuple(beta)
    if beta not in roots:
        raise AlgebraError(f"{beta} is not a positive root")
    return from_half(pres, sign, _root_vector_coords(pres.datum, sign, roots.index(beta)))


@lru_cache(maxsize=None)
def pbw_half_coords(datum, sign, exps):
    """Word-basis coordinates of the rescaled PBW monomial of the half algebra."""
    pres = Presentation(datum, "Uhat")
    out = pres.one()
    for k, m in enumerate(exps):
        if m:
            r = from_half(pres, sign, _root_vector_coords(datum, sign, k))
            out = out * r ** m
    out = out.scale(RatFunc.vpow(datum.pbw_twist(exps)))
    return half_part(out, sign) if exps and any(exps) else {(): _ONE}


@lru_cache(maxsize=None)
def _pbw_solver(datum, sign, weight):
    exps = datum.pbw_exponents(weight)
    vecs = [pbw_half_coords(datum, sign, a) for a in exps]
    return solve_basis(vecs, exps)


@lru_cache(maxsize=None)
def _word_to_pbw(datum, sign, word):
    weight = datum.weight_of_word(word)
    return _pbw_solver(datum, sign, weight).coords({word: _ONE})


def pbw_element(pres, m):
    """F^a E^c K_mu K'_nu as an element."""
    d = pres.datum
    n = len(d.positive_roots)
    if len(m.a) != n or len(m.c) != n:
        raise AlgebraError(f"PBW exponent vectors must have length {n}")
    if min(m.a + m.c, default=0) < 0:
        raise AlgebraError("PBW exponents must be nonnegative")
    ya = from_half(pres, "-", pbw_half_coords(d, "-", tuple(m.a)))
    xc = from_half(pres, "+", pbw_half_coords(d, "+", tuple(m.c)))
    return ya * xc * pres.K(m.mu, m.nu)


def expand_pbw(x):
    """Coordinates of x in the PBW basis, as a sorted list of (PBWMonomial, coeff)."""
    d = x.pres.datum
    out = {}
    for (f, e, mu, nu), c in x.terms.items():
        fa = _word_to_pbw(d, "-", f) if f else {(0,) * len(d.positive_roots): _ONE}
        ec = _word_to_pbw(d, "+", e) if e else {(0,) * len(d.positive_roots): _ONE}
        for a, ca in fa.items():
            for cc, cc_coef in ec.items():
                _addto(out, PBWMonomial(a, cc, mu, nu), c * ca * cc_coef)
    return sorted(out.items())


def format_pbw(x):
    """Render the PBW expansion of x as text (root vectors as E(b1,..,bn)).

    Each monomial is printed as a plain product of root vectors; the
    normalising power of v^(1/2) of the PBW basis is folded into the
    coefficient, so the text parses back to x.
    """
    from .algebra import format_terms
    d = x.pres.datum
    roots = d.convex_roots()

    def name(letter, k):
        beta = roots[k]
        if sum(beta) == 1:
            return f"{letter}{beta.index(1) + 1}"
        return f"{letter}({','.join(str(b) for b in beta)})"

    items = []
    ordered = sorted(expand_pbw(x), key=lambda mc: (-sum(mc[0].a) - sum(mc[0].c), mc[0]))
    for m, c in ordered:
        parts = []
        for letter, exps in (("F", m.a), ("E", m.c)):
            for k, p in enumerate(exps):
                if p:
                    parts.append(name(letter, k) + (f"^{p}" if p > 1 else ""))
        for i, p in enumerate(m.mu):
            if p:
                parts.append(f"K{i + 1}" + (f"^{p}" if p != 1 else ""))
        for i, p in enumerate(m.nu):
            if p:
                parts.append(f"K{i + 1}'" + (f"^{p}" if p != 1 else ""))
        twist = d.pbw_twist(m.a, roots) + d.pbw_twist(m.c, roots)
        items.append((c * RatFunc.vpow(twist), "*".join(parts) if parts else "1"))
    return format_terms(items)


# --------------------------------------------------------------------------
# skew derivations and the Hopf pairing


def _which_half(x):
    z = x.pres.datum.zero()
    plus = minus = True
    for (f, e, mu, nu) in x.terms:
        if mu != z or nu != z:
            plus = minus = False
            break
        if f:
            plus = False
        if e:
            minus = False
    if plus:
        return "+"
    if minus:
        return "-"
    raise AlgebraError("element is not in U^+ or U^-")


def _derive_word(datum, i, word):
    """d_i on a word: sum over letters i, twisted by the letters after them."""
    out = {}
    row = datum.matrix[i]
    after = 0
    for p in range(len(word) - 1, -1, -1):
        if word[p] == i:
            _addto(out, word[:p] + word[p + 1:], RatFunc.vpow(2 * after))
        after += row[word[p]]
    return out


def skew_derivation(i, x):
    """The twisted derivation d_i with d_i(fg) = v^{(alpha_i, |g|)} d_i(f) g + f d_i(g)."""
    if not 0 <= i < x.pres.rank:
        raise AlgebraError(f"index {i + 1} out of range")
    sign = _which_half(x)
    half = half_algebra(x.pres.datum)
    out = {}
    for w, c in half_part(x, sign).items():
        for u, cu in _derive_word(x.pres.datum, i, w).items():
            for b, cb in half.reduce(u).items():
                _addto(out, b, c * cu * cb)
    return from_half(x.pres, sign, out)


def hopf_pair(y, x):
    """The pairing (y, x)_K of y in U^- with x in U^+, (F_i, E_j) = delta_ij (v - v^-1).

    Characterised by (y F_i, x) = (v - v^-1) (y, d_i x).
    """
    if y.is_zero() or x.is_zero():
        return RatFunc.const(0)
    if _which_half(y) != "-" and not y.is_scalar():
        raise AlgebraError("first argument must lie in U^-")
    if _which_half(x) != "+" and not x.is_scalar():
        raise AlgebraError("second argument must lie in U^+")
    half = half_algebra(x.pres.datum)
    psi = half.psi_of(half_part(x, "+"))
    total = RatFunc.const(0)
    for w, c in half_part(y, "-").items():
        d = psi.get(w)
        if d is not None:
            total = total + c * RatFunc(d) * _V_DIFF ** len(w)
    return total


# --------------------------------------------------------------------------
# the twisted K-action


def diamond(mu, nu, x):
    """K_mu K'_nu acting on x by the twisted rule, componentwise in the Gamma-grading."""
    pres = x.pres
    d = pres.datum
    mu = tuple(mu)
    nu = tuple(nu)
    k = pres.K(mu, nu)
    out = pres.zero()
    for deg, part in gamma_components(x).items():
        ev = [gamma_eval(d, i, deg) for i in range(d.rank)]
        h = sum(-m * e for m, e in zip(mu, ev)) + sum(n * e for n, e in zip(nu, ev))
        out = out + (k * part).scale(RatFunc.vpow(h))
    return out


# --------------------------------------------------------------------------
# the embeddings iota


def iota_split(h):
    """Lift an element of H^+ or H^- into U-hat along the triangular basis."""
    v = h.pres.variant
    if v == "Hplus":
        return change_variant(h, "Uhat")
    if v == "Hminus":
        return star(change_variant(star(h), "Uhat"))
    raise AlgebraError("iota_split expects an element of H^+ or H^-")


def _weight_parts(coords, datum):
    parts = {}
    for w, c in coords.items():
        parts.setdefault(datum.weight_of_word(w), {})[w] = c
    return parts


def iota_hall(y, x, via="E"):
    """iota(y (x) x) for y in U^- and x in U^+, computed by one of the two recursions."""
    pres = y.pres
    if pres.variant not in ("Uhat", "Utilde"):
        raise AlgebraError("iota takes values in U-hat or U-tilde")
    ycoords = half_part(y, "-") if not y.is_scalar() else {(): y.scalar_value()}
    xcoords = half_part(x, "+") if not x.is_scalar() else {(): x.scalar_value()}
    out = pres.zero()
    for fb, cy in ycoords.items():
        for eb, cx in xcoords.items():
            fn = _iota_e if via == "E" else _iota_f
            out = out + fn(pres, fb, eb).scale(cy * cx)
    return out


@lru_cache(maxsize=None)
def _iota_e(pres, f, e):
    """iota(F_f (x) E_e), recursion on the first letter of e."""
    if not e:
        return _half_elem(pres, "-", f)
    d = pres.datum
    half = half_algebra(d)
    i, rest = e[0], e[1:]
    rest_red = half.reduce(rest)
    out = pres.zero()
    for r, cr in rest_red.items():
        out = out + (pres.E(i) * _iota_e(pres, f, r)).scale(cr)
    mu = d.weight_of_word(f)
    expo = -(d.pair_simple(i, mu) - 2)
    der = skew_derivation(i, _half_elem(pres, "-", f)) if f else pres.zero()
    if der:
        coef = _V_DIFF * RatFunc.vpow(2 * expo)
        kp = pres.Kpi(i)
        for g, cg in half_part(der, "-").items():
            for r, cr in rest_red.items():
                out = out - (kp * _iota_e(pres, g, r)).scale(coef * cg * cr)
    return out


@lru_cache(maxsize=None)
def _iota_f(pres, f, e):
    """iota(F_f (x) E_e), recursion on the first letter of f."""
    if not f:
        return _half_elem(pres, "+", e)
    d = pres.datum
    half = half_algebra(d)
    i, rest = f[0], f[1:]
    rest_red = half.reduce(rest)
    out = pres.zero()
    for r, cr in rest_red.items():
        out = out + (pres.F(i) * _iota_f(pres, r, e)).scale(cr)
    nu = d.weight_of_word(e)
    expo = -(d.pair_simple(i, nu) - 2)
    der = skew_derivation(i, _half_elem(pres, "+", e)) if e else pres.zero()
    if der:
        coef = _V_DIFF * RatFunc.vpow(2 * expo)
        k = pres.Ki(i)
        for g, cg in half_part(der, "+").items():
            for r, cr in rest_red.items():
                out = out - (k * _iota_f(pres, r, g)).scale(coef * cg * cr)
    return out


__all__ = [
    "INVOLUTIONS", "PBWMonomial", "apply_involution", "bar", "braid", "braid_word", "chevalley",
    "diamond", "expand_pbw", "format_pbw", "half_swap", "hopf_pair", "iota_hall", "iota_split",
    "pbw_element", "pbw_half_coords", "root_vector", "skew_derivation", "star", "transpose",
]
