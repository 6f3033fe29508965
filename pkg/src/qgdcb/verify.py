"""Self-checking suites shared by the command line and the test-suite.

Every suite returns a :class:`Report`; a suite passes when its failure list
is empty.  Failures carry enough detail to be printed or dumped as JSON.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import Presentation, multiply, parse
from .canonical import (
    _heis_solution,
    cb_element,
    dcb_basis,
    dcb_indices,
    double_cb,
    dual_cb_half,
    expand_in_dcb,
    lusztig_cb_minus,
    rescaled_dual,
)
from .cartan import GammaDegree, build_cartan, box
from .coeff import qbinom, verify_binomial_identities
from .operators import (
    PBWMonomial,
    bar,
    braid,
    chevalley,
    expand_pbw,
    hopf_pair,
    pbw_element,
    star,
    transpose,
)
from . import rankone


@dataclass
class Report:
    suite: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, cond, detail):
        self.checked += 1
        if not cond:
            self.failures.append(detail)

    def to_json(self):
        return {"suite": self.suite, "ok": self.ok, "checked": self.checked,
                "failures": [str(f) for f in self.failures]}

    def summary(self):
        state = "pass" if self.ok else "FAIL"
        return f"{self.suite}: {state} ({self.checked} checks, {len(self.failures)} failures)"


def _key(x):
    return frozenset(x.terms.items())


def generators(pres, inverses=False):
    """Named generators of a presentation."""
    out = []
    for i in range(pres.rank):
        out += [(f"E{i + 1}", pres.E(i)), (f"F{i + 1}", pres.F(i)),
                (f"K{i + 1}", pres.Ki(i)), (f"K{i + 1}'", pres.Kpi(i))]
        if inverses:
            out += [(f"K{i + 1}^-1", pres.Ki(i, -1)), (f"K{i + 1}'^-1", pres.Kpi(i, -1))]
    return out


# --------------------------------------------------------------------------


def relations(datum, seed=0, samples=200, max_len=6):
    """Defining relations vanish and multiplication is associative."""
    rep = Report(f"relations[{datum.label}]")
    pres = Presentation(datum, "Uhat")
    n = datum.rank
    E, F, K, Kp = pres.E, pres.F, pres.Ki, pres.Kpi
    v = lambda e: pres.scalar(parse(f"v^({e})", pres).scalar_value())  # noqa: E731
    vm = parse("v^-1 - v", pres)
    for i in range(n):
        for j in range(n):
            c = datum.c(i, j)
            comm = E(i) * F(j) - F(j) * E(i)
            want = vm * (K(i) - Kp(i)) if i == j else pres.zero()
            rep.check(comm == want, f"[E{i + 1},F{j + 1}]")
            for a, b in ((K(i), K(j)), (K(i), Kp(j)), (Kp(i), Kp(j))):
                rep.check(a * b == b * a, f"K-commutation {i + 1},{j + 1}")
            rep.check(K(i) * E(j) == v(c) * E(j) * K(i), f"K{i + 1}E{j + 1}")
            rep.check(K(i) * F(j) == v(-c) * F(j) * K(i), f"K{i + 1}F{j + 1}")
            rep.check(Kp(i) * E(j) == v(-c) * E(j) * Kp(i), f"K'{i + 1}E{j + 1}")
            rep.check(Kp(i) * F(j) == v(c) * F(j) * Kp(i), f"K'{i + 1}F{j + 1}")
            if i != j:
                m = 1 - c
                for g, name in ((E, "E"), (F, "F")):
                    total = pres.zero()
                    for r in range(m + 1):
                        term = g(i) ** r * g(j) * g(i) ** (m - r)
                        coeff = qbinom(m, r) if r % 2 == 0 else -qbinom(m, r)
                        total = total + term.scale(coeff)
                    rep.check(total.is_zero(), f"Serre {name} ({i + 1},{j + 1})")
    rng = random.Random(seed)
    gens = generators(pres)
    for _ in range(samples):
        word = [rng.choice(gens) for _ in range(rng.randint(1, max_len))]
        k = rng.randint(0, len(word))
        m = rng.randint(k, len(word))
        parts = []
        for chunk in (word[:k], word[k:m], word[m:]):
            x = pres.one()
            for _, g in chunk:
                x = multiply(x, g)
            parts.append(x)
        a, b, c = parts
        rep.check(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)),
                  "associativity " + "*".join(nm for nm, _ in word))
    return rep


def braid_suite(datum):
    """Braid relations, invertibility and bar-compatibility of T_i on generators."""
    rep = Report(f"braid[{datum.label}]")
    pres = Presentation(datum, "Utilde")
    n = datum.rank
    gens = generators(pres, inverses=True)
    for name, g in gens:
        for i in range(n):
            rep.check(braid(braid(g, i), i, inverse=True) == g, f"T{i + 1}^-1 T{i + 1} {name}")
            rep.check(braid(braid(g, i, inverse=True), i) == g, f"T{i + 1} T{i + 1}^-1 {name}")
            rep.check(bar(braid(g, i)) == braid(bar(g), i), f"bar T{i + 1} {name}")
            for j in range(i + 1, n):
                c = datum.c(i, j)
                if c == 0:
                    lhs = braid(braid(g, i), j)
                    rhs = braid(braid(g, j), i)
                elif c == -1:
                    lhs = braid(braid(braid(g, j), i), j)
                    rhs = braid(braid(braid(g, i), j), i)
                else:
                    continue
                rep.check(lhs == rhs, f"braid relation ({i + 1},{j + 1}) on {name}")
    return rep


def binomials(xmax=6, ymax=6, nmax=6):
    rep = Report("binomials")
    res = verify_binomial_identities(xmax, ymax, nmax)
    rep.checked = res["checked"]
    rep.failures = list(res["failures"])
    return rep


def oracle(bound=3):
    """Closed rank-one formula against both general constructions."""
    rep = Report(f"oracle[A1,w<={bound}]")
    datum = build_cartan("A", 1)
    for p in rankone.dominant_pairs(bound):
        want = rankone.L_closed_form(p)
        idx = rankone.to_index(p)
        rep.check(cb_element(datum, idx) == want, f"C-route {p.text()}")
        for sign in ("+", "-"):
            got = double_cb(datum, idx.a, idx.c, sign, idx.alpha, idx.beta)
            rep.check(got == want, f"double route ({sign}) {p.text()}")
    return rep


def _nonneg(c):
    return c.is_laurent() and c.to_laurent().nonneg_coeffs()


def positivity(bound=2, ef_bound=4):
    """Structure constants of the A1 dual canonical basis and the E^aF^b expansions."""
    rep = Report(f"positivity[A1,w<={bound}]")
    pairs = rankone.dominant_pairs(bound)
    elems = {p: rankone.L_closed_form(p) for p in pairs}
    for p in pairs:
        for q in pairs:
            prod = multiply(elems[p], elems[q])
            for idx, c in expand_in_dcb(prod).items():
                rep.check(_nonneg(c), f"L{p.text()}*L{q.text()} at {rankone.from_index(idx).text()}: {c}")
    for a in range(ef_bound + 1):
        for b in range(ef_bound + 1):
            for p, c in rankone.ef_expand(a, b).items():
                rep.check(c.nonneg_coeffs(), f"E^{a}F^{b} at {p.text()}: {c}")
    return rep


def _dcb_set(datum, plus_bound, minus_bound):
    out = set()
    for plus in box(plus_bound):
        for minus in box(minus_bound):
            for x in dcb_basis(datum, GammaDegree(tuple(plus), tuple(minus))).values():
                out.add(_key(x))
    return out


def involutions(datum, bound=2):
    """star and Chevalley permute the dual canonical basis; transpose
    permutes the Heisenberg bases K.(b_- o b_+) and the dual canonical basis."""
    rep = Report(f"involutions[{datum.label},bound {bound}]")
    top = (bound,) * datum.rank
    base = _dcb_set(datum, top, top)
    pres = Presentation(datum, "Uhat")
    for name, fn in (("star", star), ("chevalley", chevalley), ("transpose", transpose)):
        image = {_key(fn(_from_key(pres, k))) for k in base}
        rep.check(image == base, f"{name} does not permute the basis")
    for plus in box(top):
        for minus in box(top):
            plus, minus = tuple(plus), tuple(minus)
            _, here = _heis_solution(datum, "+", plus, minus)
            _, there = _heis_solution(datum, "+", minus, plus)
            got = {_key(transpose(x)) for x in here.values()}
            rep.check(got == {_key(x) for x in there.values()},
                      f"transpose on H+ degree {plus},{minus}")
    return rep


def _from_key(pres, key):
    from .algebra import Element
    return Element(pres, dict(key))


def pairing(datum, weight_bound=2):
    """(F_i, E_j) = delta_ij (v - v^-1); in A1 and A2 the rescaled duals of
    Lusztig's canonical basis coincide with the computed dual canonical basis."""
    rep = Report(f"pairing[{datum.label}]")
    pres = Presentation(datum, "Uhat")
    vd = parse("v - v^-1", pres).scalar_value()
    for i in range(datum.rank):
        for j in range(datum.rank):
            want = vd if i == j else vd * 0
            rep.check(hopf_pair(pres.F(i), pres.E(j)) == want, f"(F{i + 1},E{j + 1})")
    if datum.kind == "A" and datum.rank <= 2:
        for w in box((weight_bound,) * datum.rank):
            w = tuple(w)
            dual = rescaled_dual(pres, lusztig_cb_minus(pres, w), w)
            mine = dual_cb_half(pres, "+", w).values()
            rep.check({_key(x) for x in dual} == {_key(x) for x in mine}, f"rescaled dual at {w}")
    return rep


def pbw_roundtrip(datum, seed=0, samples=500, max_degree=6):
    """expand_pbw(pbw_element(m)) == {m: 1} for random PBW monomials."""
    rep = Report(f"pbw[{datum.label}]")
    pres = Presentation(datum, "Uhat")
    rng = random.Random(seed)
    roots = datum.convex_roots()
    heights = [sum(b) for b in roots]
    n = datum.rank
    for _ in range(samples):
        budget = rng.randint(0, max_degree)
        a = [0] * len(roots)
        c = [0] * len(roots)
        while budget > 0:
            k = rng.randrange(len(roots))
            if heights[k] > budget:
                if min(heights) > budget:
                    break
                continue
            (a if rng.random() < 0.5 else c)[k] += 1
            budget -= heights[k]
        mu = tuple(rng.randint(0, 2) for _ in range(n))
        nu = tuple(rng.randint(0, 2) for _ in range(n))
        m = PBWMonomial(tuple(a), tuple(c), mu, nu)
        got = expand_pbw(pbw_element(pres, m))
        rep.check(len(got) == 1 and got[0][0] == m and got[0][1] == 1, f"round trip {m}")
    return rep


def casimir(max_m=5):
    rep = Report(f"casimir[m<={max_m}]")
    for m in range(1, max_m + 1):
        rep.check(rankone.casimir_recursion_holds(m), f"recursion at m={m}")
    return rep


def inversion(ab=4, cd=2):
    rep = Report("inversion")
    for a in range(ab + 1):
        for b in range(ab + 1):
            for c in range(cd + 1):
                for d in range(cd + 1):
                    rep.check(rankone.inverse_identity_holds(a, b, c, d), f"E^{a}F^{b}K^{c}K'^{d}")
    return rep


SUITES = ("relations", "braid", "binomials", "oracle", "positivity", "involutions",
          "pairing", "pbw", "casimir", "inversion")


def run_suite(name, datum=None, bound=None, seed=0):
    """Dispatch by name; ``bound`` has a suite-specific meaning."""
    datum = datum or build_cartan("A", 1)
    if name == "relations":
        return relations(datum, seed)
    if name == "braid":
        return braid_suite(datum)
    if name == "binomials":
        b = bound or 6
        return binomials(b, b, b)
    if name == "oracle":
        return oracle(bound or 3)
    if name == "positivity":
        return positivity(bound or 2)
    if name == "involutions":
        return involutions(datum, bound or 2)
    if name == "pairing":
        return pairing(datum, bound or 2)
    if name == "pbw":
        return pbw_roundtrip(datum, seed)
    if name == "casimir":
        return casimir(bound or 5)
    if name == "inversion":
        return inversion(bound or 4)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


__all__ = ["Report", "SUITES", "run_suite", "binomials", "braid_suite", "casimir", "generators",
           "inversion", "involutions", "oracle", "pairing", "pbw_roundtrip", "positivity",
           "relations", "dcb_indices"]
