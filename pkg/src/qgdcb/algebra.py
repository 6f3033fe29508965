"""The algebras U-hat, U-tilde and their Heisenberg quotients.

Elements are kept in a triangular normal form: a combination of
``F_w * E_u * K_mu * K'_nu`` where ``w`` and ``u`` run over a fixed basis of
words of the half algebra.  The half algebra is realised inside the quantum
shuffle algebra (``E_i`` goes to the one-letter word ``i``), which is
faithful, so two words are equal modulo the Serre relations exactly when
their shuffle images agree.  The basis of each weight space consists of the
lexicographically first words with independent images.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from sympy.utilities.iterables import multiset_permutations

from .cartan import CartanDatum, GammaDegree, build_cartan, parse_type
from .coeff import LaurentHalf, RatFunc, as_ratfunc
from .linalg import SpanSolver
from .parsing import ParseError, parse_expression

VARIANTS = ("Uhat", "Utilde", "Hplus", "Hminus")

_V_MINUS = RatFunc(LaurentHalf({-2: 1, 2: -1}))  # v^-1 - v
_ONE = RatFunc.const(1)


class AlgebraError(ValueError):
    pass


class CapacityError(AlgebraError):
    """A requested computation exceeds the configured size limits."""


# --------------------------------------------------------------------------
# half algebra: shuffle realisation and word basis


class HalfAlgebra:
    """Word basis of U^+ (equivalently U^-) for one Cartan datum."""

    def __init__(self, datum, max_degree=40):
        self.datum = datum
        self.max_degree = max_degree
        self._psi = {(): {(): LaurentHalf.const(1)}}
        self._tables = {}
        self._reduced = {}

    def weight(self, word):
        return self.datum.weight_of_word(word)

    def psi(self, word):
        """Image of E_{w1} ... E_{wk} in the quantum shuffle algebra."""
        word = tuple(word)
        got = self._psi.get(word)
        if got is not None:
            return got
        head = self.psi(word[:-1])
        j = word[-1]
        row = self.datum.matrix[j]
        out = {}
        for u, c in head.items():
            # insert j at position p; every letter of u after p is passed by j
            e = 0
            for p in range(len(u), -1, -1):
                if p < len(u):
                    e += row[u[p]]
                w = u[:p] + (j,) + u[p:]
                t = c.shift(2 * e)
                s = out.get(w)
                s = t if s is None else s + t
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        self._psi[word] = out
        return out

    def _table(self, weight):
        weight = tuple(weight)
        tab = self._tables.get(weight)
        if tab is not None:
            return tab
        if sum(weight) > self.max_degree:
            raise CapacityError(f"weight {weight} exceeds the degree cap {self.max_degree}")
        dim = self.datum.kostant(weight)
        solver = SpanSolver()
        letters = [i for i, m in enumerate(weight) for _ in range(m)]
        basis = []
        if dim:
            for w in multiset_permutations(letters):
                w = tuple(w)
                if solver.add({k: RatFunc(c) for k, c in self.psi(w).items()}, w):
                    basis.append(w)
                    if len(basis) == dim:
                        break
        if len(basis) != dim:
            raise AlgebraError(f"word basis of weight {weight} has size {len(basis)}, expected {dim}")
        tab = (tuple(basis), frozenset(basis), solver)
        self._tables[weight] = tab
        return tab

    def basis(self, weight):
        return self._table(weight)[0]

    def reduce(self, word):
        """Coordinates of the word E_{w1}...E_{wk} in the word basis."""
        word = tuple(word)
        got = self._reduced.get(word)
        if got is not None:
            return got
        if len(word) <= 1:
            out = {word: _ONE}
        else:
            basis, members, solver = self._table(self.weight(word))
            if word in members:
                out = {word: _ONE}
            else:
                vec = {k: RatFunc(c) for k, c in self.psi(word).items()}
                out = solver.coords(vec)
        self._reduced[word] = out
        return out

    def psi_of(self, coords):
        """Shuffle image of a combination of words."""
        out = {}
        for w, c in coords.items():
            for u, d in self.psi(w).items():
                t = c * d
                s = out.get(u)
                s = t if s is None else s + t
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
        return out


@lru_cache(maxsize=None)
def half_algebra(datum):
    return HalfAlgebra(datum)


# --------------------------------------------------------------------------
# presentations and elements


@dataclass(frozen=True)
class Presentation:
    datum: CartanDatum
    variant: str = "Uhat"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise AlgebraError(f"unknown variant {self.variant!r}; choose from {VARIANTS}")

    @property
    def rank(self):
        return self.datum.rank

    @property
    def half(self):
        return half_algebra(self.datum)

    @property
    def invertible(self):
        return self.variant == "Utilde"

    def with_variant(self, variant):
        return Presentation(self.datum, variant)

    def zero(self):
        return Element(self, {})

    def one(self):
        z = self.datum.zero()
        return Element(self, {((), (), z, z): _ONE})

    def scalar(self, c):
        c = as_ratfunc(c)
        if not c:
            return self.zero()
        z = self.datum.zero()
        return Element(self, {((), (), z, z): c})

    def _check_index(self, i):
        if not 0 <= i < self.rank:
            raise AlgebraError(f"generator index {i + 1} out of range 1..{self.rank}")

    def E(self, i):
        """E_i with 0-based index i."""
        self._check_index(i)
        z = self.datum.zero()
        return Element(self, {((), (i,), z, z): _ONE})

    def F(self, i):
        self._check_index(i)
        z = self.datum.zero()
        return Element(self, {((i,), (), z, z): _ONE})

    def K(self, mu, nu=None):
        """K_mu K'_nu for weight vectors mu, nu."""
        z = self.datum.zero()
        mu = tuple(mu) if mu is not None else z
        nu = tuple(nu) if nu is not None else z
        if len(mu) != self.rank or len(nu) != self.rank:
            raise AlgebraError("K exponent vector has the wrong length")
        if not self.invertible and (min(mu) < 0 or min(nu) < 0):
            raise AlgebraError(f"negative K exponents need the invertible variant, not {self.variant}")
        key = ((), (), mu, nu)
        return Element(self, {key: _ONE})._project()

    def Ki(self, i, power=1):
        self._check_index(i)
        mu = [0] * self.rank
        mu[i] = power
        return self.K(mu)

    def Kpi(self, i, power=1):
        self._check_index(i)
        nu = [0] * self.rank
        nu[i] = power
        return self.K(None, nu)

    def gen(self, name, i, power=1):
        if name == "E":
            return self.E(i) ** power
        if name == "F":
            return self.F(i) ** power
        if name == "K":
            return self.Ki(i, power)
        if name == "K'":
            return self.Kpi(i, power)
        raise AlgebraError(f"unknown generator {name!r}")


def presentation(kind="A", rank=1, variant="Uhat"):
    return Presentation(build_cartan(kind, rank), variant)


def _addto(d, k, c):
    s = d.get(k)
    s = c if s is None else s + c
    if s:
        d[k] = s
    else:
        d.pop(k, None)


class Element:
    """Normalised element: dict (fword, eword, mu, nu) -> RatFunc coefficient."""

    __slots__ = ("pres", "terms", "_hash")

    def __init__(self, pres, terms):
        self.pres = pres
        self.terms = terms
        self._hash = None

    # -- basic protocol
    def _project(self):
        v = self.pres.variant
        if v == "Hplus":
            self.terms = {k: c for k, c in self.terms.items() if not any(k[3])}
        elif v == "Hminus":
            self.terms = {k: c for k, c in self.terms.items() if not any(k[2])}
        return self

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.pres == other.pres and self.terms == other.terms
        if isinstance(other, (int, RatFunc, LaurentHalf)):
            return self == self.pres.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.pres != self.pres:
                raise AlgebraError("elements live in different presentations")
            return other
        return self.pres.scalar(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return Element(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_ratfunc(c)
        if not c:
            return self.pres.zero()
        return Element(self.pres, {k: d * c for k, d in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            if other.pres != self.pres:
                raise AlgebraError("elements live in different presentations")
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_power(-n)
        out = self.pres.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse_power(self, n):
        """x^(-n) for a K-monomial x in the invertible variant."""
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            f, e, mu, nu = k
            if not f and not e and c == _ONE:
                if not self.pres.invertible:
                    raise AlgebraError(f"K is not invertible in {self.pres.variant}")
                return self.pres.K(tuple(-n * m for m in mu), tuple(-n * m for m in nu))
        raise AlgebraError("only K-monomials can be inverted")

    def coefficient(self, key):
        return self.terms.get(key, RatFunc.const(0))

    def is_scalar(self):
        z = self.pres.datum.zero()
        return all(k == ((), (), z, z) for k in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise AlgebraError("element is not a scalar")
        z = self.pres.datum.zero()
        return self.terms.get(((), (), z, z), RatFunc.const(0))

    def map_coeffs(self, fn):
        out = {}
        for k, c in self.terms.items():
            d = fn(c)
            if d:
                out[k] = d
        return Element(self.pres, out)

    def has_laurent_coeffs(self):
        return all(c.is_laurent() for c in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: _term_order(kc[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self.pres.datum.label}, {self.pres.variant}: {format_element(self)})"

    def to_json(self):
        return element_to_json(self)


def _term_order(key):
    f, e, mu, nu = key
    return (-(len(f) + len(e)), f, e, tuple(-m for m in mu), nu)


# --------------------------------------------------------------------------
# multiplication


class _Engine:
    """Cached straightening data for one Cartan datum."""

    def __init__(self, datum):
        self.datum = datum
        self.half = half_algebra(datum)
        self._straight = {}
        self._wt = {}

    def wt(self, word):
        got = self._wt.get(word)
        if got is None:
            got = self.datum.weight_of_word(word)
            self._wt[word] = got
        return got

    def straighten(self, e, f):
        """E_e * F_f as dict (fword, eword, mu, nu) -> coeff, words in the basis."""
        key = (e, f)
        got = self._straight.get(key)
        if got is not None:
            return got
        if not f:
            z = self.datum.zero()
            out = {((), e, z, z): _ONE}
        elif len(f) == 1:
            out = self._times_f({((), e, self.datum.zero(), self.datum.zero()): _ONE}, f[0])
        else:
            # E_e F_{f[:-1]} then times F_{f[-1]} on the right
            out = self._times_f(self.straighten(e, f[:-1]), f[-1])
        self._straight[key] = out
        return out

    def _times_f(self, elt, j):
        """Right multiplication of a normalised dict by F_j."""
        d = self.datum
        row = d.matrix[j]
        half = self.half
        out = {}
        for (fw, ew, mu, nu), c in elt.items():
            # K_mu K'_nu F_j = v^{-(mu - nu, alpha_j)} F_j K_mu K'_nu
            s = -sum(row[k] * (mu[k] - nu[k]) for k in range(d.rank))
            c0 = c.shift(2 * s)
            for fb, cf in half.reduce(fw + (j,)).items():
                _addto(out, (fb, ew, mu, nu), c0 * cf)
            # [E_ew, F_j]: remove one letter j at a time
            after = 0
            for p in range(len(ew) - 1, -1, -1):
                if ew[p] == j:
                    rest = ew[:p] + ew[p + 1:]
                    red = half.reduce(rest)
                    mu2 = mu[:j] + (mu[j] + 1,) + mu[j + 1:]
                    nu2 = nu[:j] + (nu[j] + 1,) + nu[j + 1:]
                    cp = c0 * _V_MINUS
                    for eb, ce in red.items():
                        _addto(out, (fw, eb, mu2, nu), cp.shift(2 * after) * ce)
                        _addto(out, (fw, eb, mu, nu2), -(cp.shift(-2 * after) * ce))
                after += row[ew[p]]
        return out


@lru_cache(maxsize=None)
def _engine(datum):
    return _Engine(datum)


def multiply(a, b):
    pres = a.pres
    d = pres.datum
    eng = _engine(d)
    half = eng.half
    n = d.rank
    mat = d.matrix
    out = {}
    for (f1, e1, m1, n1), c1 in a.terms.items():
        dk = [m1[k] - n1[k] for k in range(n)]
        for (f2, e2, m2, n2), c2 in b.terms.items():
            wf2 = eng.wt(f2)
            we2 = eng.wt(e2)
            # K_m1 K'_n1 moved past F_f2 E_e2
            s = 0
            for k in range(n):
                if dk[k]:
                    rowk = mat[k]
                    s += dk[k] * sum(rowk[l] * (we2[l] - wf2[l]) for l in range(n))
            c12 = (c1 * c2).shift(2 * s)
            for (fw, ew, mk, nk), c3 in eng.straighten(e1, f2).items():
                s2 = 0
                for k in range(n):
                    x = mk[k] - nk[k]
                    if x:
                        s2 += x * sum(mat[k][l] * we2[l] for l in range(n))
                c123 = (c12 * c3).shift(2 * s2)
                fred = half.reduce(f1 + fw)
                ered = half.reduce(ew + e2)
                mu = tuple(m1[k] + m2[k] + mk[k] for k in range(n))
                nu = tuple(n1[k] + n2[k] + nk[k] for k in range(n))
                for fb, cf in fred.items():
                    cf2 = c123 * cf
                    for eb, ce in ered.items():
                        _addto(out, (fb, eb, mu, nu), cf2 * ce)
    return Element(pres, out)._project()


# --------------------------------------------------------------------------
# building elements from words, parsing, printing


def word_element(pres, letters):
    """Product of generators given as (name, index0, power) triples, in order."""
    out = pres.one()
    for name, i, p in letters:
        out = out * pres.gen(name, i, p)
    return out


def from_half(pres, sign, coords):
    """Element of U^+ (sign '+') or U^- (sign '-') from word-basis coordinates."""
    z = pres.datum.zero()
    out = {}
    for w, c in coords.items():
        key = ((), w, z, z) if sign == "+" else (w, (), z, z)
        _addto(out, key, as_ratfunc(c))
    return Element(pres, out)


def half_part(x, sign):
    """Word-basis coordinates of x, which must lie in U^+ or U^-."""
    z = x.pres.datum.zero()
    out = {}
    for (f, e, mu, nu), c in x.terms.items():
        if mu != z or nu != z or (f if sign == "+" else e):
            raise AlgebraError(f"element is not in U^{sign}")
        out[e if sign == "+" else f] = c
    return out


def _make_gen_factory(pres):
    def make(spec):
        if spec[0] == "root":
            _, name, coords = spec
            from .operators import root_vector
            beta = tuple(coords)
            if len(beta) != pres.rank:
                raise ParseError(f"root {beta} has the wrong length for rank {pres.rank}")
            return root_vector(pres, "+" if name == "E" else "-", beta)
        name, index = spec
        i = index - 1
        if not 0 <= i < pres.rank:
            raise ParseError(f"generator index {index} out of range 1..{pres.rank}")
        return pres.gen(name, i)
    return make


def parse(text, pres):
    """Parse an expression into a normalised Element of `pres`."""
    try:
        val = parse_expression(text, _make_gen_factory(pres))
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None
    if isinstance(val, RatFunc):
        return pres.scalar(val)
    return val


def normal_form(x, pres=None):
    """Normal form of an expression or element (idempotent)."""
    if isinstance(x, Element):
        return x
    if pres is None:
        raise AlgebraError("a presentation is needed to parse text")
    return parse(x, pres)


def _word_text(letter, word):
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(f"{letter}{word[i] + 1}" + (f"^{run}" if run > 1 else ""))
        i = j
    return parts


def monomial_text(key):
    f, e, mu, nu = key
    parts = _word_text("F", f) + _word_text("E", e)
    for i, m in enumerate(mu):
        if m:
            parts.append(f"K{i + 1}" + (f"^{m}" if m != 1 else ""))
    for i, m in enumerate(nu):
        if m:
            parts.append(f"K{i + 1}'" + (f"^{m}" if m != 1 else ""))
    return "*".join(parts) if parts else "1"


def coeff_text(c, mono):
    """Signed rendering of coefficient c in front of monomial text `mono`.

    Returns (negative, text) where text already includes the monomial.
    """
    c = as_ratfunc(c)
    neg = False
    if c.is_laurent():
        items = c.num.items()
        if items[0][1] < 0:
            neg = True
            c = -c
        body = str(c)
        simple = len(items) == 1
    else:
        body = str(c)
        simple = False
    if mono == "1":
        text = body if simple or not body.startswith("(") else body
        if not simple and c.is_laurent():
            text = f"({body})"
        return neg, text
    if body == "1":
        return neg, mono
    if simple:
        return neg, f"{body}*{mono}"
    if c.is_laurent():
        return neg, f"({body})*{mono}"
    return neg, f"{body}*{mono}"


def format_terms(items):
    """Render (coefficient, monomial-text) pairs as a signed sum."""
    if not items:
        return "0"
    out = ""
    for k, (c, mono) in enumerate(items):
        neg, text = coeff_text(c, mono)
        if k == 0:
            out = ("- " if neg else "") + text
        else:
            out += (" - " if neg else " + ") + text
    return out


def format_element(x):
    return format_terms([(c, monomial_text(k)) for k, c in x.sorted_terms()])


def gamma_components(x):
    """Split x into Gamma-homogeneous pieces: dict GammaDegree -> Element."""
    eng = _engine(x.pres.datum)
    parts = defaultdict(dict)
    for key, c in x.terms.items():
        f, e, mu, nu = key
        wf, we = eng.wt(f), eng.wt(e)
        deg = GammaDegree(tuple(we[k] + mu[k] + nu[k] for k in range(len(mu))),
                          tuple(wf[k] + mu[k] + nu[k] for k in range(len(mu))))
        parts[deg][key] = c
    return {deg: Element(x.pres, t) for deg, t in parts.items()}


def gamma_degree(x):
    comps = gamma_components(x)
    if len(comps) != 1:
        raise AlgebraError("element is not Gamma-homogeneous")
    return next(iter(comps))


def project_heisenberg(x, sign):
    """Image of an element of U-hat in H^+ (sign '+') or H^- (sign '-')."""
    if x.pres.variant != "Uhat":
        raise AlgebraError("projection starts from the U-hat variant")
    target = x.pres.with_variant("Hplus" if sign == "+" else "Hminus")
    return Element(target, dict(x.terms))._project()


def change_variant(x, variant):
    """Reinterpret the normal-form terms of x in another variant (no projection checks)."""
    target = x.pres.with_variant(variant)
    if not target.invertible:
        for k in x.terms:
            if min(k[2] + k[3], default=0) < 0:
                raise AlgebraError("negative K exponents are not allowed in " + variant)
    return Element(target, dict(x.terms))._project()


# --------------------------------------------------------------------------
# JSON


def element_to_json(x):
    from .operators import expand_pbw
    terms = []
    for m, c in expand_pbw(x):
        terms.append({"coeff": c.to_json(), "pbw": {"a": list(m.a), "c": list(m.c),
                                                    "mu": list(m.mu), "nu": list(m.nu)}})
    d = x.pres.datum
    return {"presentation": {"type": d.kind, "rank": d.rank, "variant": x.pres.variant},
            "terms": terms}


def element_from_json(data):
    from .operators import PBWMonomial, pbw_element
    head = data.get("presentation", data)
    pres = Presentation(build_cartan(head["type"], head["rank"]), head.get("variant", "Uhat"))
    out = pres.zero()
    for t in data["terms"]:
        p = t["pbw"]
        m = PBWMonomial(tuple(p["a"]), tuple(p["c"]), tuple(p["mu"]), tuple(p["nu"]))
        out = out + pbw_element(pres, m).scale(RatFunc.from_json(t["coeff"]))
    return out


__all__ = [
    "AlgebraError", "CapacityError", "Element", "HalfAlgebra", "Presentation", "VARIANTS",
    "change_variant", "element_from_json", "element_to_json", "format_element", "from_half",
    "gamma_components", "gamma_degree", "half_algebra", "half_part", "multiply", "normal_form",
    "parse", "parse_type", "presentation", "project_heisenberg", "word_element",
]
