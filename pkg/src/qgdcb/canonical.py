"""Lusztig-lemma solver and the bar-invariant bases built from it.

* dual canonical bases of the half algebras (rescaled, unitriangular to PBW),
* the bases b_- o b_+ of the Heisenberg quotients H^+ and H^-,
* the double canonical basis b_- * b_+ of U-hat,
* the elements C_{alpha,beta;a,c} defined through the embedding iota.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraError, Presentation, change_variant, from_half, gamma_components, half_algebra
from .cartan import box
from .coeff import LaurentHalf, RatFunc, qfactorial, vpow
from .linalg import SpanSolver
from .operators import bar, diamond, hopf_pair, iota_hall, iota_split, pbw_half_coords

LATTICES = ("+", "-")  # '+' : v Z[v],  '-' : v^-1 Z[v^-1]


class LusztigError(ArithmeticError):
    pass


@dataclass
class TriangularDatum:
    """Input of the Lusztig lemma.

    ``bar_matrix[s][t]`` is the coefficient of x_t in bar(x_s).  ``lower`` is
    an optional predicate lower(t, s) that every off-diagonal entry must
    respect; without it the order is read off from the support.
    """

    labels: list
    bar_matrix: dict
    lattice: str = "-"
    lower: object = None


def _topological(labels, below):
    # below[s] = set of t != s appearing in bar(x_s); emit lower elements first
    order = []
    state = {}
    for root in labels:
        if root in state:
            continue
        stack = [(root, iter(sorted(below[root], key=repr)))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                state[node] = 2
                order.append(node)
                continue
            st = state.get(nxt)
            if st == 1:
                raise LusztigError(f"bar matrix is not triangular: cycle through {nxt!r}")
            if st is None:
                state[nxt] = 1
                stack.append((nxt, iter(sorted(below[nxt], key=repr))))
    return order


def lusztig_solve(datum, extension=None):
    """Solve for the unique bar-invariant b_s = x_s + sum_{t<s} p_ts x_t with p_ts in the lattice.

    Returns dict s -> {t: p_ts} (including t = s with coefficient 1).
    ``extension`` may fix the linear extension used (lowest first).
    """
    if datum.lattice not in LATTICES:
        raise LusztigError(f"unknown lattice {datum.lattice!r}")
    labels = list(datum.labels)
    M = datum.bar_matrix
    below = {}
    for s in labels:
        row = M.get(s, {})
        diag = row.get(s)
        if diag is None or diag != 1:
            raise LusztigError(f"diagonal entry at {s!r} is {diag}, not 1")
        below[s] = set()
        for t, c in row.items():
            if t == s or not c:
                continue
            if t not in M:
                raise LusztigError(f"bar({s!r}) leaves the basis (term {t!r})")
            if datum.lower is not None and not datum.lower(t, s):
                raise LusztigError(f"bar({s!r}) has a term at {t!r}, which is not lower")
            if not c.is_laurent():
                raise LusztigError(f"bar matrix entry ({s!r}, {t!r}) is not a Laurent polynomial")
            below[s].add(t)
    order = _topological(labels, below) if extension is None else list(extension)
    pos = {s: k for k, s in enumerate(order)}
    for s in labels:
        for t in below[s]:
            if pos[t] >= pos[s]:
                raise LusztigError(f"extension puts {t!r} above {s!r}")
    positive = datum.lattice == "+"
    # columns: cols[u] = list of (t, M[t][u]) with t != u
    cols = {u: [] for u in labels}
    for t in labels:
        for u, c in M[t].items():
            if u != t and c:
                cols[u].append((t, c))
    result = {}
    for s in labels:
        p = {s: RatFunc.const(1)}
        ps = pos[s]
        for u in reversed(order[:ps]):
            r = RatFunc.const(0)
            for t, c in cols[u]:
                pt = p.get(t)
                if pt is not None:
                    r = r + pt.bar() * c
            if not r:
                continue
            if not r.is_laurent():
                raise LusztigError(f"non-Laurent correction at {u!r} for {s!r}")
            if r.bar() != -r:
                raise LusztigError(f"no solution: correction at {u!r} for {s!r} is not anti-invariant")
            q = r.num.split(positive)
            if q:
                p[u] = RatFunc(q)
        result[s] = p
    return result


def _solver_for(elements):
    """SpanSolver over the normal-form terms of labelled elements."""
    solver = SpanSolver()
    for lab, x in elements.items():
        if not solver.add(x.terms, lab):
            raise LusztigError(f"basis element {lab!r} is linearly dependent")
    return solver


def _bar_matrix(elements, solver, bar_fn):
    return {lab: solver.coords(bar_fn(x).terms) for lab, x in elements.items()}


def _assemble(elements, coeffs):
    out = None
    for t, c in coeffs.items():
        term = elements[t].scale(c)
        out = term if out is None else out + term
    return out


# --------------------------------------------------------------------------
# dual canonical bases of U^+ and U^-


@lru_cache(maxsize=None)
def dual_cb_half_coords(datum, sign, weight):
    """Rescaled dual canonical basis of U^sign in one weight.

    Returns dict PBW-exponent -> word-basis coordinates.  Each element is
    bar-invariant and equals its PBW monomial modulo v^-1 Z[v^-1]-multiples of
    other PBW monomials.
    """
    weight = tuple(weight)
    pres = Presentation(datum, "Uhat")
    exps = datum.pbw_exponents(weight)
    elems = {a: from_half(pres, sign, pbw_half_coords(datum, sign, a)) for a in exps}
    if not elems:
        return {}
    solver = _solver_for(elems)
    M = _bar_matrix(elems, solver, bar)
    sol = lusztig_solve(TriangularDatum(list(exps), M, "-"))
    out = {}
    for a in exps:
        x = _assemble(elems, sol[a])
        coords = {}
        for (f, e, mu, nu), c in x.terms.items():
            coords[e if sign == "+" else f] = c
        out[a] = coords
    return out


def dual_cb_half(pres, sign, weight):
    """Elements of the rescaled dual canonical basis of U^sign of the given weight."""
    data = dual_cb_half_coords(pres.datum, sign, tuple(weight))
    return {a: from_half(pres, sign, coords) for a, coords in data.items()}


def divided_monomial(pres, letters_and_powers):
    """Product of divided powers of the generators F_i/(v - v^-1) of U^-.

    ``letters_and_powers`` is a sequence of (i, n) with 0-based i.
    """
    out = pres.one()
    vd = RatFunc(LaurentHalf({2: 1, -2: -1}))
    for i, n in letters_and_powers:
        if n:
            scale = RatFunc.const(1) / (RatFunc(qfactorial(n)) * vd ** n)
            out = out * (pres.F(i) ** n).scale(scale)
    return out


def lusztig_cb_minus(pres, weight):
    """Lusztig's canonical basis of U^- in one weight, for types A1 and A2.

    These are the only cases with a closed description: divided powers in
    rank one, and the monomials f_i^(a) f_j^(b) f_i^(c) with b >= a + c in
    type A2.  Used as an independent check of the pairing convention.
    """
    datum = pres.datum
    weight = tuple(weight)
    if datum.kind != "A" or datum.rank > 2:
        raise AlgebraError("closed canonical basis only available for A1 and A2")
    if datum.rank == 1:
        return [divided_monomial(pres, [(0, weight[0])])]
    out = []
    seen = set()
    for i, j in ((0, 1), (1, 0)):
        b = weight[j]
        for a in range(weight[i] + 1):
            c = weight[i] - a
            if b < a + c:
                continue
            x = divided_monomial(pres, [(i, a), (j, b), (i, c)])
            key = frozenset(x.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(x)
    return out


def rescaled_dual(pres, elements, weight):
    """v^(N(weight)/2) times the basis of U^+_weight dual to ``elements`` under (,)_K."""
    weight = tuple(weight)
    half = half_algebra(pres.datum)
    words = half.basis(weight)
    solver = SpanSolver()
    for w in words:
        x = from_half(pres, "+", {w: RatFunc.const(1)})
        row = {k: hopf_pair(b, x) for k, b in enumerate(elements)}
        if not solver.add(row, w):
            raise LusztigError("the pairing is degenerate on the given elements")
    if len(solver) != len(elements):
        raise LusztigError("the given elements do not form a basis of the weight space")
    scale = vpow(Fraction(pres.datum.norm(weight), 2))
    out = []
    for k in range(len(elements)):
        coords = solver.coords({k: RatFunc.const(1)})
        out.append(from_half(pres, "+", coords).scale(scale))
    return out


def _half_labels(datum, weight):
    return datum.pbw_exponents(tuple(weight)) if all(x >= 0 for x in weight) else ()


# --------------------------------------------------------------------------
# Heisenberg bases  b_- o b_+  (H^+)  and  b_+ o b_-  (H^-)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dominates(a, b):
    return all(x >= y for x, y in zip(a, b)) and a != b


@lru_cache(maxsize=None)
def _heis_basis(datum, sign, plus, minus):
    """Labelled spanning elements K.(b'b'') of H^sign in Gamma-degree (plus, minus)."""
    variant = "Hplus" if sign == "+" else "Hminus"
    pres = Presentation(datum, variant)
    n = datum.rank
    elems = {}
    top = tuple(min(p, m) for p, m in zip(plus, minus))
    for k in box(top):
        k = tuple(k)
        pw = _sub(plus, k)
        mw = _sub(minus, k)
        bp = dual_cb_half(pres, "+", pw)
        bm = dual_cb_half(pres, "-", mw)
        for a, y in bm.items():
            for c, x in bp.items():
                if sign == "+":
                    elems[(k, a, c)] = diamond(k, (0,) * n, y * x)
                else:
                    elems[(k, a, c)] = diamond((0,) * n, k, x * y)
    return pres, elems


@lru_cache(maxsize=None)
def _heis_solution(datum, sign, plus, minus):
    pres, elems = _heis_basis(datum, sign, plus, minus)
    solver = _solver_for(elems)
    M = _bar_matrix(elems, solver, bar)
    lower = lambda t, s: _dominates(t[0], s[0])  # noqa: E731
    sol = lusztig_solve(TriangularDatum(list(elems), M, "+", lower))
    return pres, {lab: _assemble(elems, sol[lab]) for lab in elems}


def double_cb_heis(datum, a, c, sign="+"):
    """b_- o b_+ in H^+ (sign '+') or b_+ o b_- in H^- (sign '-').

    ``a`` and ``c`` are the PBW labels of b_- in B^- and b_+ in B^+.
    """
    a, c = tuple(a), tuple(c)
    minus = _root_weight(datum, a)
    plus = _root_weight(datum, c)
    _, sol = _heis_solution(datum, sign, plus, minus)
    return sol[((0,) * datum.rank, a, c)]


def _root_weight(datum, exps):
    roots = datum.convex_roots()
    if len(exps) != len(roots) or min(exps, default=0) < 0:
        raise AlgebraError(f"bad PBW exponent vector {exps}")
    w = [0] * datum.rank
    for m, beta in zip(exps, roots):
        for i in range(datum.rank):
            w[i] += m * beta[i]
    return tuple(w)


# --------------------------------------------------------------------------
# double canonical basis of U-hat


@lru_cache(maxsize=None)
def _double_basis(datum, sign, plus, minus):
    pres = Presentation(datum, "Uhat")
    elems = {}
    top = tuple(min(p, m) for p, m in zip(plus, minus))
    for k in box(top):
        k = tuple(k)
        for kp in box(_sub(top, k)):
            kp = tuple(kp)
            s = _add(k, kp)
            _, heis = _heis_solution(datum, sign, _sub(plus, s), _sub(minus, s))
            for lab, h in heis.items():
                if any(lab[0]):
                    continue
                lifted = iota_split(h)
                elems[(k, kp, lab[1], lab[2])] = diamond(k, kp, lifted)
    return pres, elems


@lru_cache(maxsize=None)
def _double_solution(datum, sign, plus, minus):
    pres, elems = _double_basis(datum, sign, plus, minus)
    solver = _solver_for(elems)
    M = _bar_matrix(elems, solver, bar)
    # the K-part orthogonal to the Heisenberg quotient must strictly grow
    if sign == "+":
        lower = lambda t, s: _dominates(t[1], s[1])  # noqa: E731
    else:
        lower = lambda t, s: _dominates(t[0], s[0])  # noqa: E731
    sol = lusztig_solve(TriangularDatum(list(elems), M, "-", lower))
    return pres, {lab: _assemble(elems, sol[lab]) for lab in elems}


def double_cb(datum, a, c, sign="+", k=None, kp=None):
    """b_- . b_+ (sign '+', through H^+) or b_+ . b_- (sign '-', through H^-).

    Optional k, kp give the K_k K'_kp-shifted element K.(b_- . b_+).
    """
    a, c = tuple(a), tuple(c)
    n = datum.rank
    k = tuple(k) if k is not None else (0,) * n
    kp = tuple(kp) if kp is not None else (0,) * n
    s = _add(k, kp)
    plus = _add(_root_weight(datum, c), s)
    minus = _add(_root_weight(datum, a), s)
    _, sol = _double_solution(datum, sign, plus, minus)
    return sol[(k, kp, a, c)]


# --------------------------------------------------------------------------
# C_{alpha,beta;a,c} via iota


@dataclass(frozen=True, order=True)
class DCBIndex:
    alpha: tuple
    beta: tuple
    a: tuple
    c: tuple


@lru_cache(maxsize=None)
def _iota_basis(datum, plus, minus):
    pres = Presentation(datum, "Uhat")
    elems = {}
    top = tuple(min(p, m) for p, m in zip(plus, minus))
    for k in box(top):
        k = tuple(k)
        for kp in box(_sub(top, k)):
            kp = tuple(kp)
            s = _add(k, kp)
            for a in _half_labels(datum, _sub(minus, s)):
                ya = from_half(pres, "-", pbw_half_coords(datum, "-", a))
                for c in _half_labels(datum, _sub(plus, s)):
                    xc = from_half(pres, "+", pbw_half_coords(datum, "+", c))
                    elems[DCBIndex(k, kp, a, c)] = diamond(k, kp, iota_hall(ya, xc))
    return pres, elems


@lru_cache(maxsize=None)
def _iota_solution(datum, plus, minus, extension=None):
    pres, elems = _iota_basis(datum, plus, minus)
    solver = _solver_for(elems)
    M = _bar_matrix(elems, solver, bar)
    sol = lusztig_solve(TriangularDatum(list(elems), M, "-"), extension)
    return {lab: _assemble(elems, sol[lab]) for lab in elems}


def cb_element(datum, index, direct=False):
    """C_{alpha,beta;a,c}: K_alpha K'_beta . C_{0,0;a,c}.

    With ``direct=True`` the element is instead solved for in its own
    Gamma-degree, which is used to check the shift identity.
    """
    idx = DCBIndex(tuple(index.alpha), tuple(index.beta), tuple(index.a), tuple(index.c))
    n = datum.rank
    z = (0,) * n
    neg = min(idx.alpha + idx.beta) < 0
    if direct:
        if neg:
            raise AlgebraError("direct computation needs nonnegative K exponents")
        s = _add(idx.alpha, idx.beta)
        sol = _iota_solution(datum, _add(_root_weight(datum, idx.c), s), _add(_root_weight(datum, idx.a), s))
        return sol[idx]
    base = _iota_solution(datum, _root_weight(datum, idx.c), _root_weight(datum, idx.a))[DCBIndex(z, z, idx.a, idx.c)]
    if idx.alpha == z and idx.beta == z:
        return base
    if neg:
        base = change_variant(base, "Utilde")
    return diamond(idx.alpha, idx.beta, base)


def dcb_indices(datum, deg):
    """All C-indices of a Gamma-degree with nonnegative K exponents."""
    plus, minus = tuple(deg.plus), tuple(deg.minus)
    top = tuple(min(p, m) for p, m in zip(plus, minus))
    if min(top, default=0) < 0:
        return []
    out = []
    for k in box(top):
        k = tuple(k)
        for kp in box(_sub(top, k)):
            kp = tuple(kp)
            s = _add(k, kp)
            for a in _half_labels(datum, _sub(minus, s)):
                for c in _half_labels(datum, _sub(plus, s)):
                    out.append(DCBIndex(k, kp, a, c))
    return out


def dcb_basis(datum, deg):
    """dict DCBIndex -> C element for one Gamma-degree."""
    return {idx: cb_element(datum, idx) for idx in dcb_indices(datum, deg)}


def expand_in_dcb(x):
    """Coordinates of x in the double canonical basis: dict DCBIndex -> coeff.

    Elements of U-tilde with negative K exponents are shifted by a twisted
    K-action first and the indices shifted back.
    """
    datum = x.pres.datum
    n = datum.rank
    if x.pres.variant not in ("Uhat", "Utilde"):
        raise AlgebraError("expansion in the double canonical basis needs U-hat or U-tilde")
    lowest = [0] * n
    for (_, _, mu, nu) in x.terms:
        for i in range(n):
            lowest[i] = min(lowest[i], mu[i], nu[i])
    shift = tuple(-m for m in lowest)
    y = x
    if any(shift):
        y = diamond(shift, shift, x)
    y = change_variant(y, "Uhat")
    out = {}
    for deg, part in gamma_components(y).items():
        basis = dcb_basis(datum, deg)
        solver = _solver_for(basis)
        for idx, c in solver.coords(part.terms).items():
            if any(shift):
                idx = DCBIndex(_sub(idx.alpha, shift), _sub(idx.beta, shift), idx.a, idx.c)
            out[idx] = c
    return out


def dcb_index_text(idx):
    f = lambda t: "(" + ",".join(str(x) for x in t) + ")"  # noqa: E731
    return f"C[{f(idx.alpha)},{f(idx.beta)};{f(idx.a)},{f(idx.c)}]"


__all__ = [
    "DCBIndex", "LusztigError", "divided_monomial", "lusztig_cb_minus", "rescaled_dual", "TriangularDatum", "cb_element", "dcb_basis", "dcb_index_text",
    "dcb_indices", "double_cb", "double_cb_heis", "dual_cb_half", "dual_cb_half_coords",
    "expand_in_dcb", "lusztig_solve",
]
