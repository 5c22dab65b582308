"""Exact sparse multivariate polynomials over Z with graded, tagged variables.

Variable alphabet (tagged tuples):
    ("x", i)        grade 1
    ("q", i)        grade 2 by default; shape-dependent grades are supplied to
                    the grading helpers, never baked into the variable
    ("g", i, j)     grade j+1
    ("c", k, l)     grade k
    ("sigma", i, j) grade i

Monomial order: graded lexicographic.  The grade uses the default q-grade 2 so
serialization is context-free.  Within a grade, x1 > x2 > … > q1 > q2 > … and
g/c/sigma variables compare by (kind, indices).  The order is total and
multiplicative, which makes text/JSON output and echelon pivoting
deterministic.

A monomial is a tuple of (variable, exponent) pairs sorted by variable;
a polynomial holds a dict monomial → nonzero coefficient.  Coefficients are
Python ints (exact rationals may appear transiently inside solvers; anything
with denominator 1 is normalized back to int).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Variable = tuple
Monomial = tuple

__all__ = [
    "Polynomial",
    "x_var",
    "q_var",
    "g_var",
    "c_var",
    "sigma_var",
    "var_grade",
    "mon_grade",
    "mon_mul",
    "mon_sort_key",
    "render_var",
    "add",
    "mul",
    "scalar_mul",
    "substitute",
    "homogeneous_component",
    "solve_linear_expansion",
    "LinearSolution",
    "EchelonSystem",
    "SolveError",
    "NoSolutionError",
    "NonIntegralError",
    "VerificationError",
]


class VerificationError(Exception):
    """An exact identity that must hold failed to verify."""

_KIND_ORDER = {"x": 0, "q": 1, "g": 2, "c": 3, "sigma": 4}


def var_grade(v: Variable, q_grades=None) -> int:
    kind = v[0]
    if kind == "x":
        return 1
    if kind == "q":
        return 2 if q_grades is None else q_grades.get(v[1], 2)
    if kind == "g":
        return v[2] + 1
    if kind == "c":
        return v[1]
    if kind == "sigma":
        return v[1]
    raise ValueError(f"unknown variable kind: {v}")


def _var_key(v: Variable):
    return (_KIND_ORDER[v[0]],) + v[1:]


def mon_grade(mon: Monomial, q_grades=None) -> int:
    return sum(e * var_grade(v, q_grades) for v, e in mon)


def mon_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    factors = dict(m1)
    for v, e in m2:
        factors[v] = factors.get(v, 0) + e
    return tuple(sorted(factors.items(), key=lambda ve: _var_key(ve[0])))


def mon_sort_key(mon: Monomial):
    """Sorting by this key lists monomials in decreasing monomial order."""
    return (-mon_grade(mon), tuple((_var_key(v), -e) for v, e in mon))


def render_var(v: Variable) -> str:
    kind = v[0]
    if kind == "x":
        return f"x{v[1]}"
    if kind == "q":
        return f"q{v[1]}"
    if kind == "g":
        return f"g{v[1]}[{v[2]}]"
    if kind == "c":
        return f"c{v[1]}({v[2]})"
    if kind == "sigma":
        return f"s{v[1]}^{v[2]}"
    raise ValueError(f"unknown variable kind: {v}")


_MINUS = "−"
_DOT = "·"


def _coerce_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Polynomial:
    """Immutable-by-convention sparse polynomial; do not mutate `_terms`."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mon, coeff in terms.items():
                coeff = _coerce_coeff(coeff)
                if coeff:
                    clean[mon] = coeff
        self._terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, a) -> "Polynomial":
        return cls({(): a})

    @classmethod
    def variable(cls, v: Variable) -> "Polynomial":
        return cls({((v, 1),): 1})

    # ---- inspection ---------------------------------------------------

    def terms(self):
        """(monomial, coefficient) pairs in decreasing monomial order."""
        return sorted(self._terms.items(), key=lambda mc: mon_sort_key(mc[0]))

    def coefficient(self, mon: Monomial):
        return self._terms.get(mon, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> set:
        return {v for mon in self._terms for v, _ in mon}

    def grades(self, q_grades=None) -> set:
        return {mon_grade(mon, q_grades) for mon in self._terms}

    def is_homogeneous(self, q_grades=None) -> bool:
        return len(self.grades(q_grades)) <= 1

    def grade(self, q_grades=None) -> int:
        """Grade of a homogeneous polynomial (0 for the zero polynomial)."""
        gs = self.grades(q_grades)
        if len(gs) > 1:
            raise ValueError(f"not homogeneous, grades {sorted(gs)}")
        return gs.pop() if gs else 0

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __repr__(self):
        return f"Polynomial({self.to_text()})"

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for mon, coeff in other._terms.items():
            s = out.get(mon, 0) + coeff
            if s:
                out[mon] = _coerce_coeff(s)
            else:
                out.pop(mon, None)
        res = Polynomial.__new__(Polynomial)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = Polynomial.__new__(Polynomial)
        res._terms = {mon: -coeff for mon, coeff in self._terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero()
            res = Polynomial.__new__(Polynomial)
            res._terms = {
                mon: _coerce_coeff(coeff * other) for mon, coeff in self._terms.items()
            }
            return res
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = {}
        # iterate over the smaller factor outside for fewer mon_mul calls
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                mon = mon_mul(m1, m2)
                s = out.get(mon, 0) + c1 * c2
                if s:
                    out[mon] = s
                else:
                    del out[mon]
        res = Polynomial.__new__(Polynomial)
        res._terms = {m: _coerce_coeff(c) for m, c in out.items()}
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # ---- structure ----------------------------------------------------

    def substitute(self, assignment) -> "Polynomial":
        """Replace variables per `assignment` (variable → Polynomial or int).

        Unassigned variables are left fixed.  Ring homomorphism.
        """
        if not assignment:
            return self
        asg = {
            v: (p if isinstance(p, Polynomial) else Polynomial.constant(p))
            for v, p in assignment.items()
        }
        power_cache = {}

        def powered(v, e):
            key = (v, e)
            got = power_cache.get(key)
            if got is None:
                got = power_cache[key] = asg[v] ** e
            return got

        acc = {}
        for mon, coeff in self._terms.items():
            fixed = []
            replaced = None
            dead = False
            for v, e in mon:
                if v in asg:
                    piece = powered(v, e)
                    replaced = piece if replaced is None else replaced * piece
                    if replaced.is_zero():
                        dead = True
                        break
                else:
                    fixed.append((v, e))
            if dead:
                continue
            base = tuple(fixed)
            if replaced is None:
                acc[base] = acc.get(base, 0) + coeff
            else:
                for m2, c2 in replaced._terms.items():
                    m = mon_mul(base, m2)
                    acc[m] = acc.get(m, 0) + coeff * c2
        return Polynomial(acc)

    def homogeneous_component(self, grade: int, q_grades=None) -> "Polynomial":
        res = Polynomial.__new__(Polynomial)
        res._terms = {
            mon: coeff
            for mon, coeff in self._terms.items()
            if mon_grade(mon, q_grades) == grade
        }
        return res

    def graded_components(self, q_grades=None):
        """Dict grade → homogeneous part, over the grades present."""
        parts = {}
        for mon, coeff in self._terms.items():
            parts.setdefault(mon_grade(mon, q_grades), {})[mon] = coeff
        out = {}
        for grade, terms in sorted(parts.items()):
            p = Polynomial.__new__(Polynomial)
            p._terms = terms
            out[grade] = p
        return out

    # ---- rendering ----------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mon, coeff in self.terms():
            factors = []
            for v, e in mon:
                base = render_var(v)
                if e == 1:
                    factors.append(base)
                elif "^" in base:
                    factors.append(f"({base})^{e}")
                else:
                    factors.append(f"{base}^{e}")
            body = _DOT.join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}{_DOT}{body}"
            pieces.append((coeff < 0, text))
        first_neg, first = pieces[0]
        out = (_MINUS + first) if first_neg else first
        for neg, text in pieces[1:]:
            out += f" {_MINUS} {text}" if neg else f" + {text}"
        return out

    def to_json_obj(self) -> list:
        out = []
        for mon, coeff in self.terms():
            out.append(
                {
                    "coeff": str(coeff),
                    "monomial": [
                        {"kind": v[0], "indices": list(v[1:]), "exp": e} for v, e in mon
                    ],
                }
            )
        return out

    @classmethod
    def from_json_obj(cls, obj) -> "Polynomial":
        terms = {}
        for entry in obj:
            mon = tuple(
                ((f["kind"],) + tuple(int(i) for i in f["indices"]), int(f["exp"]))
                for f in entry["monomial"]
            )
            mon = tuple(sorted(mon, key=lambda ve: _var_key(ve[0])))
            terms[mon] = terms.get(mon, 0) + int(entry["coeff"])
        return cls(terms)


# ---- variable builders (out-of-convention indices collapse to 0 or 1) ----


def x_var(i: int) -> Polynomial:
    if i < 1:
        raise ValueError(f"x index must be ≥ 1: {i}")
    return Polynomial.variable(("x", i))


def q_var(i: int) -> Polynomial:
    if i < 1:
        raise ValueError(f"q index must be ≥ 1: {i}")
    return Polynomial.variable(("q", i))


def g_var(i: int, j: int) -> Polynomial:
    """g_i[j]; identified with 0 when i < 1 or j < 0."""
    if i < 1 or j < 0:
        return Polynomial.zero()
    return Polynomial.variable(("g", i, j))


def c_var(k: int, l: int) -> Polynomial:
    """c_k(l); c_0(l) = 1 and c_k(l) = 0 when k < 0, k > l or l < 0."""
    if k == 0:
        return Polynomial.constant(1)
    if k < 0 or l < 0 or k > l:
        return Polynomial.zero()
    return Polynomial.variable(("c", k, l))


def sigma_var(i: int, j: int) -> Polynomial:
    if i < 1 or j < 1:
        raise ValueError(f"sigma indices must be ≥ 1: ({i}, {j})")
    return Polynomial.variable(("sigma", i, j))


# ---- functional aliases for the operator methods ---------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def scalar_mul(a, p: Polynomial) -> Polynomial:
    return p * a


def substitute(p: Polynomial, assignment) -> Polynomial:
    return p.substitute(assignment)


def homogeneous_component(p: Polynomial, grade: int, q_grades=None) -> Polynomial:
    return p.homogeneous_component(grade, q_grades)


# ---- exact linear expansion ------------------------------------------------


class SolveError(Exception):
    """Base class for linear-expansion failures."""


class NoSolutionError(SolveError):
    """Target is not in the span of the generators."""


class NonIntegralError(SolveError):
    """A rational solution exists but the canonical one is not integral."""


class LinearSolution(tuple):
    """Integer expansion coefficients, one per generator.

    `dependent_indices` lists generators that were linear combinations of
    earlier ones; the returned coefficients are the canonical echelon solution
    (dependent generators receive coefficient 0).
    """

    def __new__(cls, coeffs, dependent_indices=()):
        return super().__new__(cls, coeffs)

    def __init__(self, coeffs, dependent_indices=()):
        self._dependent = tuple(dependent_indices)

    @property
    def dependent_indices(self):
        return self._dependent

    @property
    def has_dependencies(self) -> bool:
        return bool(self._dependent)


class EchelonSystem:
    """Fraction-free integer row echelon with transformation tracking.

    Rows live in the free module over the monomials appearing in the
    generators, augmented with bookkeeping columns ("#", j) recording the
    combination of input generators each row equals.  The augmented columns
    participate in content stripping, which keeps every entry an integer.
    Reduction of a target returns exact rational coefficients.
    """

    def __init__(self, generators):
        self.num_generators = len(generators)
        self.pivots = {}
        self.dependent_indices = []
        for j, gen in enumerate(generators):
            row = {}
            for mon, coeff in gen._terms.items():
                if coeff.__class__ is not int:
                    raise ValueError("generators must have integer coefficients")
                row[mon] = coeff
            row[("#", j)] = 1
            lead = self._eliminate(row)
            if lead is None:
                self.dependent_indices.append(j)
            else:
                self._install(lead, row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _leading(row):
        """Largest surviving monomial (augmented keys start with a string tag
        and are skipped; the empty monomial is a valid constant column)."""
        lead = None
        lead_key = None
        for k in row:
            if k and k[0].__class__ is str:
                continue
            key = mon_sort_key(k)
            if lead_key is None or key < lead_key:
                lead, lead_key = k, key
        return lead

    @staticmethod
    def _strip_content(row, sign_key=None):
        content = 0
        for v in row.values():
            content = gcd(content, v)
            if content == 1:
                break
        if sign_key is not None and row.get(sign_key, 1) < 0:
            content = -content
        if content not in (0, 1):
            for k in row:
                row[k] //= content

    def _eliminate(self, row):
        """Reduce `row` against the current pivots; return its pivot monomial
        or None when the polynomial part vanishes."""
        while True:
            lead = self._leading(row)
            if lead is None:
                return None
            pivot = self.pivots.get(lead)
            if pivot is None:
                return lead
            a = row[lead]
            b = pivot[lead]
            if b != 1:
                for k in list(row):
                    row[k] *= b
            for k, v in pivot.items():
                s = row.get(k, 0) - a * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
            self._strip_content(row)

    def _install(self, lead, row):
        self._strip_content(row, sign_key=lead)
        self.pivots[lead] = row

    def reduce(self, target: Polynomial):
        """Express target over the generators.

        Returns (coeffs, leftover): coeffs is a dict generator-index →
        Fraction with target = Σ coeffs[j]·gen_j + leftover, where leftover is
        the part of target whose leading monomials have no pivot (zero
        polynomial when target is in the span).
        """
        row = {}
        for mon, coeff in target._terms.items():
            if coeff.__class__ is not int:
                raise ValueError("target must have integer coefficients")
            row[mon] = coeff
        row[("T",)] = 1
        leftover_terms = {}
        while True:
            lead = self._leading(row)
            if lead is None:
                break
            pivot = self.pivots.get(lead)
            if pivot is None:
                leftover_terms[lead] = row.pop(lead)
                continue
            a = row[lead]
            b = pivot[lead]
            if b != 1:
                for k in list(row):
                    row[k] *= b
                for k in list(leftover_terms):
                    leftover_terms[k] *= b
            for k, v in pivot.items():
                s = row.get(k, 0) - a * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
            content = 0
            for v in row.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                for v in leftover_terms.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
            if content > 1:
                for k in row:
                    row[k] //= content
                for k in leftover_terms:
                    leftover_terms[k] //= content
        t = row.pop(("T",))
        coeffs = {}
        for k, v in row.items():
            j = k[1]
            value = Fraction(-v, t)
            if value:
                coeffs[j] = value
        leftover = Polynomial(
            {mon: Fraction(c, t) for mon, c in leftover_terms.items()}
        )
        return coeffs, leftover


def solve_linear_expansion(target: Polynomial, generators) -> LinearSolution:
    """Integer coefficients c with target = Σ c_i·generators[i].

    Exact over Q; raises NoSolutionError when the target is outside the span
    and NonIntegralError when the canonical rational solution is not integral.
    Linear dependencies among the generators are reported on the result, and
    the canonical echelon solution is returned in that case.
    """
    generators = list(generators)
    system = EchelonSystem(generators)
    coeffs, leftover = system.reduce(target)
    if not leftover.is_zero():
        raise NoSolutionError(
            f"target not in generator span; leftover leading term {leftover.terms()[0]}"
        )
    out = []
    for j in range(len(generators)):
        c = coeffs.get(j, 0)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise NonIntegralError(f"coefficient of generator {j} is {c}")
            c = int(c)
        out.append(c)
    return LinearSolution(out, system.dependent_indices)
