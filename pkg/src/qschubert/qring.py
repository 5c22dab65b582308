"""Quantum cohomology ring of the complete flag manifold.

Elements are integer combinations of Schubert classes σ_w scaled by monomials
in the deformation parameters q_1,…,q_{n−1} (each of grade 2).  Products are
computed by multiplying quantum Schubert polynomial representatives and
rewriting the result in the basis {q^d·σ_w} modulo the quantum relations
e^q_k(n) = 0, entirely over exact integer and rational arithmetic.

The rewriting works stratum by stratum in the q-degree: the q-free part of a
polynomial is reduced against an integer row echelon spanned by the classical
Schubert polynomials of the matching grade together with monomial multiples of
the classical relations; each generator used is then replaced by its quantum
lift, which pushes the mismatch into strictly higher q-strata, and the loop
repeats until the residual vanishes identically.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from .perm import (
    Perm,
    all_permutations,
    dual,
    hyperquot_dim,
    length,
    validate,
)
from .poly import (
    EchelonSystem,
    NonIntegralError,
    Polynomial,
    VerificationError,
    mon_grade,
    mon_mul,
    x_var,
)
from .universal import quantum_e, quantum_schubert

__all__ = [
    "QuantumClass",
    "QuantumRing",
    "RingError",
    "quantum_ring",
    "relations",
    "expand_in_quantum_basis",
    "quantum_product",
    "quantum_product_multi",
    "classical_product",
    "gromov_witten",
]


class RingError(VerificationError):
    """An internal consistency check of the ring presentation failed."""


class QuantumClass:
    """An integer combination of basis classes q^d·σ_w.

    Terms are keyed by (d, w) with d a tuple of q-exponents and w a
    permutation; zero coefficients are dropped.  Equality compares n and the
    term dictionaries, so a class over a partial flag shape and one over the
    complete shape agree exactly when their expansions match.
    """

    __slots__ = ("n", "shape", "_terms")

    def __init__(self, n: int, terms=None, shape=None):
        self.n = n
        self.shape = shape
        clean = {}
        for (d, w), c in (terms or {}).items():
            if c:
                clean[(tuple(d), tuple(w))] = c
        self._terms = clean

    @property
    def q_count(self) -> int:
        return self.shape.m if self.shape is not None else self.n - 1

    @classmethod
    def unit(cls, w: Perm, shape=None) -> "QuantumClass":
        """The single class 1·σ_w at q-degree zero."""
        w = validate(w)
        qc = shape.m if shape is not None else len(w) - 1
        return cls(len(w), {((0,) * qc, w): 1}, shape=shape)

    def coefficient(self, d, w) -> int:
        return self._terms.get((tuple(d), tuple(w)), 0)

    def items(self):
        """Terms as ((d, w), coeff), sorted by d then w."""
        return sorted(self._terms.items())

    def support(self):
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuantumClass)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other: "QuantumClass") -> "QuantumClass":
        if not isinstance(other, QuantumClass) or other.n != self.n:
            return NotImplemented
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return QuantumClass(self.n, terms, shape=self.shape)

    def __sub__(self, other: "QuantumClass") -> "QuantumClass":
        return self + (-1) * other

    def __rmul__(self, c: int) -> "QuantumClass":
        return QuantumClass(
            self.n, {key: c * v for key, v in self._terms.items()}, shape=self.shape
        )

    def to_text(self) -> str:
        """Human-readable form, e.g. 'σ[3,1,2] + q1·σ[1,2,3]'."""
        if not self._terms:
            return "0"
        pieces = []
        for (d, w), c in self.items():
            factors = []
            if abs(c) != 1:
                factors.append(str(abs(c)))
            for i, e in enumerate(d, start=1):
                if e == 1:
                    factors.append(f"q{i}")
                elif e > 1:
                    factors.append(f"q{i}^{e}")
            factors.append("σ[" + ",".join(str(a) for a in w) + "]")
            pieces.append((c < 0, "·".join(factors)))
        neg, body = pieces[0]
        out = ("−" + body) if neg else body
        for neg, body in pieces[1:]:
            out += (" − " if neg else " + ") + body
        return out

    def to_json_obj(self) -> dict:
        obj = {
            "n": self.n,
            "terms": [
                {"d": list(d), "w": ",".join(str(a) for a in w), "coeff": c}
                for (d, w), c in self.items()
            ],
        }
        if self.shape is not None:
            obj["shape"] = self.shape.to_string()
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QuantumClass":
        from .perm import FlagShape

        shape = FlagShape.from_string(obj["shape"]) if "shape" in obj else None
        terms = {}
        for t in obj["terms"]:
            w = tuple(int(a) for a in t["w"].split(","))
            terms[(tuple(t["d"]), w)] = int(t["coeff"])
        return cls(int(obj["n"]), terms, shape=shape)

    def __repr__(self):
        return f"QuantumClass({self.to_text()!r})"


def _weighted_monomials(vs: tuple, grades: tuple, m: int) -> tuple:
    """All monomials of grade m in the given variables, deterministic order.

    vs must already be sorted in canonical variable order.
    """
    out = []

    def rec(idx, rem, acc):
        if idx == len(vs):
            if rem == 0:
                out.append(acc)
            return
        g = grades[idx]
        for e in range(rem // g, -1, -1):
            if e:
                rec(idx + 1, rem - e * g, acc + ((vs[idx], e),))
            else:
                rec(idx + 1, rem, acc)

    rec(0, m, ())
    return tuple(out)


class _GradedQuotientRing:
    """Shared expansion engine for the complete and partial quantum rings.

    Subclasses provide the presentation: the basis permutations, the lift of
    each basis element to a polynomial representative, the ideal generators
    split into classical part and q-correction, the working variable alphabet
    with its grading, and the expected rank of each graded slice.
    """

    def _init_engine(self):
        self._slices = {}
        self._products = {}
        self._lock = threading.RLock()
        for cl, _ in self._ideal_pairs():
            if cl.is_zero() or not cl.is_homogeneous():
                raise RingError("ideal generators must have homogeneous, "
                                "nonzero classical parts")

    # -- hooks ----------------------------------------------------------
    def _q_grade(self, i: int) -> int:
        raise NotImplementedError

    def _normalize(self, p: Polynomial) -> Polynomial:
        raise NotImplementedError

    def _allowed(self, v) -> bool:
        raise NotImplementedError

    def _check_element(self, w) -> Perm:
        raise NotImplementedError

    def _basis_lift(self, w: Perm) -> Polynomial:
        raise NotImplementedError

    def _ideal_pairs(self):
        raise NotImplementedError

    def _grade_monomials(self, m: int) -> tuple:
        raise NotImplementedError

    def _expected_rank(self, m: int) -> int:
        raise NotImplementedError

    def _moduli_dimension(self, d) -> int:
        raise NotImplementedError

    def _dual(self, w: Perm) -> Perm:
        raise NotImplementedError

    # -- shared machinery -------------------------------------------------
    def _basis_pair(self, w):
        lift = self._basis_lift(w)
        cl = lift.substitute(self._q_zero)
        return cl, lift - cl

    def _split_mon(self, mon):
        d = [0] * self.q_count
        rest = []
        for v, e in mon:
            if v[0] == "q":
                d[v[1] - 1] = e
            else:
                rest.append((v, e))
        return tuple(d), tuple(rest)

    def _q_monomial(self, d):
        return tuple((("q", i + 1), e) for i, e in enumerate(d) if e)

    def _slice(self, m: int):
        got = self._slices.get(m)
        if got is not None:
            return got
        with self._lock:
            got = self._slices.get(m)
            if got is not None:
                return got
            ws = tuple(w for w in self.basis if length(w) == m)
            gens, corrections = [], []
            for w in ws:
                cl, corr = self._basis_pair(w)
                gens.append(cl)
                corrections.append(corr)
            for cl_k, corr_k in self._ideal_pairs():
                k = cl_k.grade()
                if m < k:
                    continue
                for mon in self._grade_monomials(m - k):
                    shift = Polynomial({mon: 1})
                    gens.append(shift * cl_k)
                    corrections.append(shift * corr_k)
            ech = EchelonSystem(gens)
            bad = [j for j in ech.dependent_indices if j < len(ws)]
            if bad:
                raise RingError(
                    f"grade-{m} basis classes are not independent: {bad}"
                )
            expected = self._expected_rank(m)
            if ech.rank != expected:
                raise RingError(
                    f"grade-{m} slice has rank {ech.rank}, expected {expected}"
                )
            got = (ech, ws, tuple(corrections))
            self._slices[m] = got
            return got

    def _reduce_exact(self, ech, terms):
        """Reduce a term dict (int or Fraction coefficients) and return the
        generator coefficients; the remainder must vanish."""
        denom = 1
        for c in terms.values():
            dc = getattr(c, "denominator", 1)
            if dc != 1:
                denom = denom * dc // math.gcd(denom, dc)
        target = Polynomial({mon: int(c * denom) for mon, c in terms.items()})
        coeffs, leftover = ech.reduce(target)
        if not leftover.is_zero():
            raise RingError(
                f"reduction left a remainder: {leftover.to_text()}"
            )
        if denom == 1:
            return coeffs
        return {j: c / denom for j, c in coeffs.items()}

    def expand_in_quantum_basis(self, p: Polynomial) -> QuantumClass:
        """Rewrite p as an integer combination of classes q^d·σ_w."""
        p = self._normalize(p)
        for v in p.variables():
            if not self._allowed(v):
                raise ValueError(f"variable {v} is not in the ring alphabet")
        residual = dict(p._terms)
        out = {}
        rounds = 0
        while residual:
            rounds += 1
            if rounds > 100000:
                raise RingError("quantum expansion did not terminate")
            best_key = best_d = None
            for mon in residual:
                d, _ = self._split_mon(mon)
                key = (
                    sum(e * self._q_grade(i + 1) for i, e in enumerate(d)),
                    d,
                )
                if best_key is None or key < best_key:
                    best_key, best_d = key, d
            d = best_d
            qmon = self._q_monomial(d)
            strata = {}
            for mon in list(residual):
                dd, xmon = self._split_mon(mon)
                if dd == d:
                    strata.setdefault(mon_grade(xmon), {})[xmon] = residual.pop(mon)
            for m in sorted(strata):
                ech, ws, corrections = self._slice(m)
                coeffs = self._reduce_exact(ech, strata[m])
                for j in sorted(coeffs):
                    c = coeffs[j]
                    if not c:
                        continue
                    if j < len(ws):
                        if getattr(c, "denominator", 1) != 1:
                            raise NonIntegralError(
                                f"coefficient {c} on basis class {ws[j]} "
                                f"is not an integer"
                            )
                        key = (d, ws[j])
                        tot = out.get(key, 0) + int(c)
                        if tot:
                            out[key] = tot
                        else:
                            out.pop(key, None)
                    corr = corrections[j]
                    if corr.is_zero():
                        continue
                    # replace the classical generator by its quantum lift;
                    # every correction term carries a positive q-degree, so
                    # the residual moves to strictly higher strata
                    for mon2, c2 in corr._terms.items():
                        mon3 = mon_mul(mon2, qmon)
                        tot = residual.get(mon3, 0) - c * c2
                        if tot:
                            residual[mon3] = tot
                        else:
                            residual.pop(mon3, None)
        return QuantumClass(self.n, out, shape=self.shape)

    def expand_classical(self, p: Polynomial) -> QuantumClass:
        """Rewrite a q-free polynomial in the Schubert basis (all d = 0)."""
        p = self._normalize(p)
        for v in p.variables():
            if v[0] == "q":
                raise ValueError("classical expansion needs a q-free input")
            if not self._allowed(v):
                raise ValueError(f"variable {v} is not in the ring alphabet")
        out = {}
        d0 = (0,) * self.q_count
        for m in sorted(p.grades()):
            part = p.homogeneous_component(m)
            ech, ws, _ = self._slice(m)
            coeffs = self._reduce_exact(ech, dict(part._terms))
            for j in sorted(coeffs):
                c = coeffs[j]
                if j < len(ws) and c:
                    if getattr(c, "denominator", 1) != 1:
                        raise NonIntegralError(
                            f"coefficient {c} on basis class {ws[j]} "
                            f"is not an integer"
                        )
                    out[(d0, ws[j])] = int(c)
        return QuantumClass(self.n, out, shape=self.shape)

    def basis_polynomial(self, w) -> Polynomial:
        """The polynomial representative of the basis class σ_w."""
        return self._basis_lift(self._check_element(w))

    def class_to_poly(self, cls: QuantumClass) -> Polynomial:
        """Polynomial representative: Σ c·q^d·(lift of σ_w)."""
        out = Polynomial.zero()
        for (d, w), c in cls.items():
            qm = Polynomial({self._q_monomial(d): c})
            out = out + qm * self._basis_lift(w)
        return out

    def quantum_product(self, u, v) -> QuantumClass:
        u = self._check_element(u)
        v = self._check_element(v)
        key = (u, v) if u <= v else (v, u)
        got = self._products.get(key)
        if got is None:
            prod = self._basis_lift(key[0]) * self._basis_lift(key[1])
            got = self.expand_in_quantum_basis(prod)
            with self._lock:
                self._products[key] = got
        return got

    def quantum_product_multi(self, ws) -> QuantumClass:
        """Left fold of the quantum product over a nonempty factor list."""
        ws = [self._check_element(w) for w in ws]
        if not ws:
            raise ValueError("need at least one factor")
        if len(ws) == 1:
            return self.expand_in_quantum_basis(self._basis_lift(ws[0]))
        acc = self.quantum_product(ws[0], ws[1])
        for w in ws[2:]:
            acc = self.expand_in_quantum_basis(
                self.class_to_poly(acc) * self._basis_lift(w)
            )
        return acc

    def classical_product(self, u, v) -> QuantumClass:
        u = self._check_element(u)
        v = self._check_element(v)
        pu, _ = self._basis_pair(u)
        pv, _ = self._basis_pair(v)
        return self.expand_classical(pu * pv)

    def gromov_witten(self, ws, w, d) -> int:
        """N-point genus-zero invariant ⟨σ_{w_1},…,σ_{w_N}, σ_w⟩_d, read off
        as the coefficient of q^d·σ_{w∨} in the product of the σ_{w_i}.

        Returns 0 immediately when the lengths fail the dimension count.
        """
        ws = [self._check_element(x) for x in ws]
        w = self._check_element(w)
        d = tuple(int(e) for e in d)
        if len(d) != self.q_count or any(e < 0 for e in d):
            raise ValueError(
                f"degree must be {self.q_count} nonnegative integers: {d}"
            )
        if not ws:
            raise ValueError("need at least one insertion")
        total = sum(length(x) for x in ws) + length(w)
        if total != self._moduli_dimension(d):
            return 0
        cls = self.quantum_product_multi(ws)
        return cls.coefficient(d, self._dual(w))


class QuantumRing(_GradedQuotientRing):
    """QH*(Fl_n): basis σ_w for w in S_n over Z[q_1,…,q_{n−1}].

    x_n is eliminated via the vanishing of e^q_1(n) = x_1+…+x_n, after which
    the remaining relations e^q_k(n) = 0 (k = 2..n) present the ring on the
    alphabet x_1,…,x_{n−1}, q_1,…,q_{n−1}.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"need n ≥ 2: {n}")
        self.n = n
        self.shape = None
        self.q_count = n - 1
        self.basis = all_permutations(n)
        xsum = Polynomial.zero()
        for i in range(1, n):
            xsum = xsum - x_var(i)
        self._xelim = {("x", n): xsum}
        self._q_zero = {("q", i): 0 for i in range(1, n)}
        rels = tuple(quantum_e(k, n) for k in range(1, n + 1))
        self._relations = rels
        reduced = [r.substitute(self._xelim) for r in rels]
        if not reduced[0].is_zero():
            raise RingError("the linear relation must vanish after "
                            "eliminating x_n")
        ideal = []
        for r in reduced[1:]:
            cl = r.substitute(self._q_zero)
            ideal.append((cl, r - cl))
        self._ideal = tuple(ideal)
        self._init_engine()

    def relations(self) -> tuple:
        """The quantum relations e^q_1(n),…,e^q_n(n) before elimination."""
        return self._relations

    def _q_grade(self, i):
        return 2

    def _normalize(self, p):
        return p.substitute(self._xelim)

    def _allowed(self, v):
        if v[0] in ("x", "q"):
            return 1 <= v[1] <= self.n - 1
        return False

    def _check_element(self, w):
        w = validate(w)
        if len(w) != self.n:
            raise ValueError(f"permutation {w} is not in S_{self.n}")
        return w

    def _basis_lift(self, w):
        return quantum_schubert(w)

    def _ideal_pairs(self):
        return self._ideal

    def _grade_monomials(self, m):
        vs = tuple(("x", i) for i in range(1, self.n))
        return _weighted_monomials(vs, (1,) * (self.n - 1), m)

    def _expected_rank(self, m):
        return math.comb(m + self.n - 2, self.n - 2)

    def _moduli_dimension(self, d):
        return hyperquot_dim(self.n, d)

    def _dual(self, w):
        return dual(w)


@lru_cache(maxsize=None)
def quantum_ring(n: int) -> QuantumRing:
    """Shared per-n ring instance (echelon slices are cached inside)."""
    return QuantumRing(n)


def relations(n: int) -> list:
    """Quantum relations e^q_k(n) for k = 1..n.

    >>> relations(2)[1].to_text()
    'x1·x2 + q1'
    """
    return list(quantum_ring(n).relations())


def expand_in_quantum_basis(p: Polynomial, n: int) -> QuantumClass:
    """Rewrite p ∈ Z[x_1..x_n, q_1..q_{n−1}] in the basis q^d·σ_w."""
    return quantum_ring(n).expand_in_quantum_basis(p)


def quantum_product(u: Perm, v: Perm) -> QuantumClass:
    """σ_u ∗ σ_v in QH*(Fl_n) with n = len(u).

    >>> quantum_product((2, 1, 3), (2, 1, 3)).to_text()
    'σ[3,1,2] + q1·σ[1,2,3]'
    """
    u = validate(u)
    return quantum_ring(len(u)).quantum_product(u, v)


def quantum_product_multi(ws) -> QuantumClass:
    ws = [validate(w) for w in ws]
    if not ws:
        raise ValueError("need at least one factor")
    return quantum_ring(len(ws[0])).quantum_product_multi(ws)


def classical_product(u: Perm, v: Perm) -> QuantumClass:
    """σ_u · σ_v in H*(Fl_n): the q = 0 part of the quantum product."""
    u = validate(u)
    return quantum_ring(len(u)).classical_product(u, v)


def gromov_witten(ws, w: Perm, d) -> int:
    """⟨σ_{w_1},…,σ_{w_N}, σ_w⟩_d for the complete flag manifold."""
    w = validate(w)
    return quantum_ring(len(w)).gromov_witten(ws, w, d)
