"""Classical Schubert polynomials and their elementary-symmetric decomposition.

𝔖_w is built by divided differences from the staircase monomial
x_1^{n−1}x_2^{n−2}⋯x_{n−1}: with the canonical word (i_1,…,i_k) satisfying
w = w_0∘s_{i_1}∘…∘s_{i_k}, apply ∂_{i_1} first, ∂_{i_k} last.  Every
𝔖_w for w ∈ S_n then decomposes uniquely as an integer combination of products
e_{k_1}(1)⋯e_{k_{n−1}}(n−1) with k_p ≤ p and Σk_p = length(w); those integer
coefficients drive the quantum and universal substitutions downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .perm import Perm, length, reduced_word, validate
from .poly import Polynomial, _var_key, solve_linear_expansion, x_var

__all__ = [
    "divided_difference",
    "schubert_poly",
    "elementary_poly",
    "e_decomposition",
    "EDecomposition",
]


def divided_difference(p: Polynomial, i: int) -> Polynomial:
    """∂_i p = (p − s_i·p)/(x_i − x_{i+1}), computed per monomial.

    On x_i^a·x_{i+1}^b·R the quotient is the telescoped geometric sum
    ±Σ x_i^j·x_{i+1}^{a+b−1−j}·R, so no division is performed and the result
    is exact by construction.  ∂_i∘∂_i = 0; grade drops by one.
    """
    if i < 1:
        raise ValueError(f"divided difference index must be ≥ 1: {i}")
    vi = ("x", i)
    vi1 = ("x", i + 1)
    acc = {}
    for mon, coeff in p._terms.items():
        a = b = 0
        rest = []
        for v, e in mon:
            if v == vi:
                a = e
            elif v == vi1:
                b = e
            else:
                rest.append((v, e))
        if a == b:
            continue
        lo, hi, sign = (b, a, 1) if a > b else (a, b, -1)
        for j in range(lo, hi):
            pairs = list(rest)
            if j:
                pairs.append((vi, j))
            k = a + b - 1 - j
            if k:
                pairs.append((vi1, k))
            pairs.sort(key=lambda ve: _var_key(ve[0]))
            key = tuple(pairs)
            s = acc.get(key, 0) + sign * coeff
            if s:
                acc[key] = s
            else:
                del acc[key]
    return Polynomial(acc)


@lru_cache(maxsize=None)
def schubert_poly(w: Perm) -> Polynomial:
    """The Schubert polynomial 𝔖_w; homogeneous of grade length(w).

    >>> schubert_poly((3, 2, 1)).to_text()
    'x1^2·x2'
    >>> schubert_poly((2, 1, 3)).to_text()
    'x1'
    """
    w = validate(w)
    n = len(w)
    staircase = Polynomial.constant(1)
    for p in range(1, n):
        staircase = staircase * x_var(p) ** (n - p)
    out = staircase
    for i in reduced_word(w):
        out = divided_difference(out, i)
    return out


@lru_cache(maxsize=None)
def elementary_poly(k: int, l: int) -> Polynomial:
    """e_k(x_1,…,x_l); 1 when k = 0, 0 when k < 0 or k > l."""
    if l < 1:
        raise ValueError(f"alphabet size must be ≥ 1: {l}")
    if k == 0:
        return Polynomial.constant(1)
    if k < 0 or k > l:
        return Polynomial.zero()
    terms = {}
    for subset in combinations(range(1, l + 1), k):
        terms[tuple((("x", i), 1) for i in subset)] = 1
    return Polynomial(terms)


@dataclass(frozen=True)
class EDecomposition:
    """𝔖_w = Σ coeffs[(k_1,…,k_{n−1})] · e_{k_1}(1)⋯e_{k_{n−1}}(n−1)."""

    n: int
    w: Perm
    coeffs: dict

    def recombine(self) -> Polynomial:
        out = Polynomial.zero()
        for seq, a in sorted(self.coeffs.items()):
            prod = Polynomial.constant(a)
            for p, k in enumerate(seq, start=1):
                if k:
                    prod = prod * elementary_poly(k, p)
            out = out + prod
        return out

    def to_text_lines(self) -> list[str]:
        lines = []
        for seq, a in sorted(self.coeffs.items()):
            factors = [f"e_{k}({p})" for p, k in enumerate(seq, start=1) if k]
            body = "·".join(factors) if factors else "1"
            lines.append(f"{a} · {body}")
        return lines

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "w": ",".join(str(v) for v in self.w),
            "coeffs": [
                {"k": list(seq), "coeff": a} for seq, a in sorted(self.coeffs.items())
            ],
        }


@lru_cache(maxsize=None)
def e_decomposition(w: Perm) -> EDecomposition:
    """Expand 𝔖_w over products of elementary symmetric polynomials.

    Candidate exponent sequences (k_1,…,k_{n−1}) with 0 ≤ k_p ≤ p and
    Σk_p = length(w) are enumerated lexicographically; the unique integer
    coefficients come from the exact linear solver, and the recombination is
    re-checked here before the result is published.
    """
    w = validate(w)
    n = len(w)
    target = schubert_poly(w)
    m = length(w)
    seqs = [
        seq
        for seq in product(*(range(0, p + 1) for p in range(1, n)))
        if sum(seq) == m
    ]
    gens = []
    for seq in seqs:
        prod = Polynomial.constant(1)
        for p, k in enumerate(seq, start=1):
            if k:
                prod = prod * elementary_poly(k, p)
        gens.append(prod)
    sol = solve_linear_expansion(target, gens)
    coeffs = {seq: a for seq, a in zip(seqs, sol) if a}
    dec = EDecomposition(n=n, w=w, coeffs=coeffs)
    if dec.recombine() != target:
        raise AssertionError(f"e-decomposition recombination failed for {w}")
    return dec
