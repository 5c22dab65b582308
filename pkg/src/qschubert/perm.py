"""Permutation combinatorics for Schubert calculus.

Permutations are tuples of 1-indexed images in one-line notation: ``w[i-1]``
is w(i).  Composition is fixed once and for all as (u∘v)(i) = u(v(i)); every
word identity in this package is stated under that convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_tuples
from math import comb

Perm = tuple[int, ...]

__all__ = [
    "Perm",
    "FlagShape",
    "validate",
    "identity",
    "length",
    "rank_fn",
    "longest_element",
    "dual",
    "compose",
    "inverse",
    "transposition",
    "reduced_word",
    "all_permutations",
    "sn_elements",
    "hyperquot_dim",
    "lemma_es_check",
]


def validate(w) -> Perm:
    """Return w as a tuple after checking it is a permutation of 1..n.

    >>> validate([2, 1])
    (2, 1)
    """
    w = tuple(w)
    n = len(w)
    if n == 0 or sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {w}")
    return w


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def length(w: Perm) -> int:
    """Number of inversions #{(i,j): i < j, w(i) > w(j)}.

    >>> length((2, 4, 1, 3))
    3
    """
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def rank_fn(w: Perm, q: int, p: int) -> int:
    """#{i ≤ q : w(i) ≤ p}, the rank function of the permutation matrix."""
    n = len(w)
    if not (1 <= q <= n and 1 <= p <= n):
        raise ValueError(f"rank_fn arguments out of range 1..{n}: q={q}, p={p}")
    return sum(1 for i in range(q) if w[i] <= p)


def longest_element(n: int) -> Perm:
    """w_0 with w_0(i) = n - i + 1."""
    return tuple(range(n, 0, -1))


def compose(u: Perm, v: Perm) -> Perm:
    """(u∘v)(i) = u(v(i))."""
    if len(u) != len(v):
        raise ValueError(f"size mismatch in compose: {len(u)} vs {len(v)}")
    return tuple(u[v[i] - 1] for i in range(len(v)))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        inv[wi - 1] = i
    return tuple(inv)


def dual(w: Perm) -> Perm:
    """w^∨ = w_0 ∘ w; an involution with length(w) + length(dual(w)) = C(n,2)."""
    return compose(longest_element(len(w)), w)


def transposition(n: int, i: int) -> Perm:
    """The simple transposition s_i swapping i and i+1."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple transposition index out of range 1..{n - 1}: {i}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def reduced_word(w: Perm) -> tuple[int, ...]:
    """Canonical word (i_1,…,i_k) with w = w_0∘s_{i_1}∘…∘s_{i_k}.

    k = C(n,2) − length(w).  The word is produced by repeatedly peeling the
    smallest descent off u = w_0∘w from the right (u ← u∘s_i swaps positions
    i, i+1), then reversing the peel order.

    >>> reduced_word((3, 2, 1))
    ()
    >>> len(reduced_word((1, 2, 3)))
    3
    """
    u = list(dual(w))
    peeled = []
    while True:
        i = next((i for i in range(1, len(u)) if u[i - 1] > u[i]), None)
        if i is None:
            break
        u[i - 1], u[i] = u[i], u[i - 1]
        peeled.append(i)
    peeled.reverse()
    return tuple(peeled)


def all_permutations(n: int) -> list[Perm]:
    """All of S_n in lexicographic one-line order."""
    return list(_all_tuples(range(1, n + 1)))


@dataclass(frozen=True)
class FlagShape:
    """A partial flag shape: steps n_1 < … < n_m inside ambient dimension n.

    Internally n_0 = 0 and n_{m+1} = n.  The complete shape has steps
    (1, 2, …, n−1).
    """

    steps: tuple[int, ...]
    n: int

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if len(steps) == 0:
            raise ValueError("shape needs at least one step")
        if any(b <= a for a, b in zip(steps, steps[1:])):
            raise ValueError(f"steps must be strictly increasing: {steps}")
        if steps[0] < 1 or steps[-1] >= self.n:
            raise ValueError(f"steps must satisfy 1 ≤ n_1 < … < n_m < n: {steps} in {self.n}")

    @classmethod
    def complete(cls, n: int) -> "FlagShape":
        return cls(tuple(range(1, n)), n)

    @classmethod
    def from_string(cls, text: str) -> "FlagShape":
        """Parse "n1:n2:…:n" (the last entry is the ambient dimension)."""
        try:
            parts = tuple(int(p) for p in text.split(":"))
        except ValueError:
            raise ValueError(f"malformed shape string: {text!r}") from None
        if len(parts) < 2:
            raise ValueError(f"shape string needs at least two entries: {text!r}")
        return cls(parts[:-1], parts[-1])

    def to_string(self) -> str:
        return ":".join(str(v) for v in self.steps + (self.n,))

    @property
    def m(self) -> int:
        return len(self.steps)

    @property
    def ns(self) -> tuple[int, ...]:
        """(n_0, n_1, …, n_m, n_{m+1}) with n_0 = 0 and n_{m+1} = n."""
        return (0,) + self.steps + (self.n,)

    def is_complete(self) -> bool:
        return self.steps == tuple(range(1, self.n))

    @property
    def q_grades(self) -> tuple[int, ...]:
        """Grade of q_l is n_{l+1} − n_{l−1}, for l = 1..m."""
        ns = self.ns
        return tuple(ns[l + 1] - ns[l - 1] for l in range(1, self.m + 1))

    def block_of(self, j: int) -> int:
        """The block index l with n_{l−1} < j ≤ n_l."""
        ns = self.ns
        for l in range(1, self.m + 2):
            if ns[l - 1] < j <= ns[l]:
                return l
        raise ValueError(f"position out of range 1..{self.n}: {j}")

    @property
    def dimension(self) -> int:
        """dim F^N = Σ_{l<l'} b_l·b_{l'} over block sizes b_l = n_l − n_{l−1}."""
        ns = self.ns
        blocks = [ns[l] - ns[l - 1] for l in range(1, self.m + 2)]
        return sum(
            blocks[a] * blocks[b]
            for a in range(len(blocks))
            for b in range(a + 1, len(blocks))
        )

    def min_rep(self, w: Perm) -> Perm:
        """Minimal-length coset representative: sort values within each block."""
        ns = self.ns
        out = []
        for l in range(1, self.m + 2):
            out.extend(sorted(w[ns[l - 1]:ns[l]]))
        return tuple(out)

    def dual(self, w: Perm) -> Perm:
        """Poincaré dual inside the ascent-class basis: min_rep(w_0∘w).

        Degenerates to w_0∘w for the complete shape.  Satisfies
        length(w) + length(dual(w)) = self.dimension.
        """
        return self.min_rep(compose(longest_element(self.n), w))


def sn_elements(shape: FlagShape) -> list[Perm]:
    """All w ∈ S_n with w(i) < w(i+1) for every i not in the step set.

    Cardinality n!/∏(n_l − n_{l−1})!.  Lexicographic order.

    >>> [list(w) for w in sn_elements(FlagShape((1,), 3))]
    [[1, 2, 3], [2, 1, 3], [3, 1, 2]]
    """
    steps = set(shape.steps)
    return [
        w
        for w in all_permutations(shape.n)
        if all(w[i - 1] < w[i] for i in range(1, shape.n) if i not in steps)
    ]


def hyperquot_dim(n: int, d: tuple[int, ...]) -> int:
    """C(n,2) + 2·Σd_i: the grading bound for vanishing of structure constants."""
    if len(d) != n - 1:
        raise ValueError(f"degree vector must have length {n - 1}: {d}")
    if any(di < 0 for di in d):
        raise ValueError(f"degree entries must be nonnegative: {d}")
    return comb(n, 2) + 2 * sum(d)


def lemma_es_check(e: tuple[int, ...]) -> tuple[int, int]:
    """Return (Σe_i, Σe_i(1 + e_i − e_{i−1})) with e_0 = 0.

    Requires e_i ≥ 0, e_i − e_{i−1} ≤ 1 and Σe_i ≥ 1.  On every valid input
    the first component is ≤ the second, the second is ≥ 2, with equality to 2
    exactly when Σe_i = 1.

    >>> lemma_es_check((1, 2, 2))
    (5, 8)
    """
    e = tuple(e)
    if any(ei < 0 for ei in e):
        raise ValueError(f"entries must be nonnegative: {e}")
    prev = 0
    for ei in e:
        if ei - prev > 1:
            raise ValueError(f"steps must satisfy e_i − e_(i−1) ≤ 1: {e}")
        prev = ei
    total = sum(e)
    if total < 1:
        raise ValueError(f"Σe_i ≥ 1 required: {e}")
    weighted = 0
    prev = 0
    for ei in e:
        weighted += ei * (1 + ei - prev)
        prev = ei
    return total, weighted
