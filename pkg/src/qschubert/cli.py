"""Command-line interface: polynomials, products, GW numbers, verification
suites, and cached multiplication tables.

Exit codes: 0 success, 1 internal error or failed verification, 2 bad input.
All output is deterministic; identical invocations print identical bytes.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .perm import (
    FlagShape,
    all_permutations,
    lemma_es_check,
    length,
    longest_element,
    validate,
)
from .poly import Polynomial, SolveError, VerificationError
from .qring import QuantumClass, quantum_ring
from .partial import kernel_chern_partial_check, partial_ring
from .schubert import elementary_poly, schubert_poly
from .universal import (
    g_from_c,
    kernel_chern_check,
    path_poly,
    path_poly_via_determinant,
    path_poly_via_recursion,
    quantum_schubert,
    specialize_classical,
    specialize_quantum,
    universal_schubert_g,
)

CACHE_VERSION = 1


class CLIInputError(Exception):
    """User input failed to parse or validate; exits with status 2."""


# ---- parsing helpers -------------------------------------------------------


def _parse_perm(text: str, n: int | None = None) -> tuple:
    try:
        w = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CLIInputError(f"cannot parse permutation {text!r}") from None
    try:
        validate(w)
    except ValueError as exc:
        raise CLIInputError(str(exc)) from None
    if n is not None and len(w) != n:
        raise CLIInputError(f"permutation {text!r} is not in S_{n}")
    return w


def _parse_shape(text: str) -> FlagShape:
    try:
        return FlagShape.from_string(text)
    except ValueError as exc:
        raise CLIInputError(str(exc)) from None


def _parse_degree(text: str, want: int) -> tuple:
    try:
        d = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CLIInputError(f"cannot parse degree {text!r}") from None
    if len(d) != want or any(e < 0 for e in d):
        raise CLIInputError(
            f"degree must be {want} nonnegative integers: {text!r}"
        )
    return d


def _ring_from_args(args):
    """Either the complete ring for --n or the partial ring for --shape."""
    if getattr(args, "shape", None):
        shape = _parse_shape(args.shape)
        return partial_ring(shape)
    if getattr(args, "n", None) is None:
        raise CLIInputError("one of --n or --shape is required")
    if args.n < 2:
        raise CLIInputError(f"need n ≥ 2: {args.n}")
    return quantum_ring(args.n)


def _check_basis_element(ring, w) -> tuple:
    try:
        return ring._check_element(w)
    except ValueError as exc:
        raise CLIInputError(str(exc)) from None


def _perm_key(w) -> str:
    return ",".join(str(a) for a in w)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# ---- cache -----------------------------------------------------------------


class TableCache:
    """Versioned JSON cache under one directory.

    Files are named {kind}_{key}_v{version}.json with kind one of schubert,
    qschubert, product-table and key the rank n or the sanitized shape string.
    Entries from other versions, unreadable files, or files whose header does
    not match are treated as absent.  Writes go through a temp file and an
    atomic rename.
    """

    def __init__(self, path=None):
        if path is None:
            env = os.environ.get("QSCHUBERT_CACHE")
            path = Path(env) if env else Path.home() / ".qschubert"
        self.path = Path(path)

    def file_for(self, kind: str, key: str) -> Path:
        safe = str(key).replace(":", "-")
        return self.path / f"{kind}_{safe}_v{CACHE_VERSION}.json"

    def load(self, kind: str, key: str):
        """The entries dict of a cached table, or None."""
        fp = self.file_for(kind, key)
        try:
            with open(fp, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError, UnicodeDecodeError):
            return None
        if (
            not isinstance(obj, dict)
            or obj.get("version") != CACHE_VERSION
            or obj.get("kind") != kind
            or obj.get("key") != str(key)
            or not isinstance(obj.get("entries"), dict)
        ):
            return None
        return obj["entries"]

    def store(self, kind: str, key: str, entries: dict) -> Path:
        obj = {
            "version": CACHE_VERSION,
            "kind": kind,
            "key": str(key),
            "entries": entries,
        }
        self.path.mkdir(parents=True, exist_ok=True)
        fp = self.file_for(kind, key)
        tmp = fp.with_name(f"{fp.name}.{os.getpid()}.tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, sort_keys=True, indent=1)
            fh.write("\n")
        os.replace(tmp, fp)
        return fp


# ---- schubert --------------------------------------------------------------


def cmd_schubert(args) -> int:
    w = _parse_perm(args.w, args.n)
    if args.quantum and args.universal:
        raise CLIInputError("--quantum and --universal are mutually exclusive")
    if args.universal:
        poly = universal_schubert_g(w)
    else:
        kind = "qschubert" if args.quantum else "schubert"
        cache = TableCache(args.cache_dir)
        entries = cache.load(kind, str(args.n)) or {}
        key = _perm_key(w)
        cached = entries.get(key)
        if cached is not None:
            poly = Polynomial.from_json_obj(cached)
        else:
            poly = quantum_schubert(w) if args.quantum else schubert_poly(w)
            entries[key] = poly.to_json_obj()
            cache.store(kind, str(args.n), entries)
    if args.format == "json":
        print(_dumps(poly.to_json_obj()))
    else:
        print(poly.to_text())
    return 0


# ---- product ---------------------------------------------------------------


def _product_cache_key(ring) -> str:
    return ring.shape.to_string() if ring.shape is not None else str(ring.n)


def _pair_key(u, v) -> str:
    return f"{_perm_key(u)};{_perm_key(v)}"


def _cached_product(ring, cache: TableCache, u, v) -> QuantumClass:
    key = _product_cache_key(ring)
    entries = cache.load("product-table", key) or {}
    a, b = (u, v) if u <= v else (v, u)
    cached = entries.get(_pair_key(a, b))
    if cached is not None:
        return QuantumClass.from_json_obj(cached)
    cls = ring.quantum_product(u, v)
    entries[_pair_key(a, b)] = cls.to_json_obj()
    cache.store("product-table", key, entries)
    return cls


def cmd_product(args) -> int:
    ring = _ring_from_args(args)
    u = _check_basis_element(ring, _parse_perm(args.u, ring.n))
    v = _check_basis_element(ring, _parse_perm(args.v, ring.n))
    cls = _cached_product(ring, TableCache(args.cache_dir), u, v)
    if args.format == "json":
        print(_dumps(cls.to_json_obj()))
    else:
        print(cls.to_text())
    return 0


# ---- gw --------------------------------------------------------------------


def cmd_gw(args) -> int:
    ring = _ring_from_args(args)
    parts = [p for p in args.insertions.split(";") if p]
    if not parts:
        raise CLIInputError("--insertions must list at least one permutation")
    ws = [
        _check_basis_element(ring, _parse_perm(p, ring.n)) for p in parts
    ]
    w = _check_basis_element(ring, _parse_perm(args.cls, ring.n))
    d = _parse_degree(args.degree, ring.q_count)
    value = ring.gromov_witten(ws, w, d)
    if args.format == "json":
        print(_dumps({"value": value}))
    else:
        print(value)
    return 0


# ---- verify ----------------------------------------------------------------


def _q0_slice(cls: QuantumClass) -> QuantumClass:
    d0 = (0,) * cls.q_count
    return QuantumClass(
        cls.n,
        {(d, w): c for (d, w), c in cls.items() if d == d0},
        shape=cls.shape,
    )


def _sampled(items, limit, seed):
    items = list(items)
    if len(items) <= limit:
        return items
    return random.Random(seed).sample(items, limit)


def _suite_associativity(ring, seed, failures):
    basis = list(ring.basis)
    triples = [(u, v, w) for u in basis for v in basis for w in basis]
    triples = _sampled(triples, 250 if len(basis) <= 6 else 100, seed)
    for u, v, w in triples:
        left = ring.expand_in_quantum_basis(
            ring.class_to_poly(ring.quantum_product(u, v))
            * ring.basis_polynomial(w)
        )
        right = ring.expand_in_quantum_basis(
            ring.class_to_poly(ring.quantum_product(v, w))
            * ring.basis_polynomial(u)
        )
        if left != right:
            failures.append(f"(σ_{u}∗σ_{v})∗σ_{w} ≠ σ_{u}∗(σ_{v}∗σ_{w})")
            return None
    return f"{len(triples)} triples"


def _suite_q0_classical(ring, seed, failures):
    basis = list(ring.basis)
    pairs = [(u, v) for u in basis for v in basis]
    pairs = _sampled(pairs, 600, seed)
    for u, v in pairs:
        if _q0_slice(ring.quantum_product(u, v)) != ring.classical_product(u, v):
            failures.append(f"q=0 slice of σ_{u}∗σ_{v} differs from the "
                            f"classical product")
            return None
    return f"{len(pairs)} pairs"


def _suite_duality(ring, seed, failures):
    basis = list(ring.basis)
    dim = (
        ring.shape.dimension
        if ring.shape is not None
        else length(longest_element(ring.n))
    )
    top = max(basis, key=length)
    d0 = (0,) * ring.q_count
    checked = 0
    for u in basis:
        for v in basis:
            if length(u) + length(v) != dim:
                continue
            checked += 1
            got = ring.classical_product(u, v).coefficient(d0, top)
            want = 1 if v == ring._dual(u) else 0
            if got != want:
                failures.append(
                    f"pairing ⟨σ_{u},σ_{v}⟩ = {got}, expected {want}"
                )
                return None
    return f"{checked} pairs"


def _suite_relations(ring, seed, failures):
    rels = list(ring.relations())
    for k, rel in enumerate(rels, start=1):
        if not ring.expand_in_quantum_basis(rel).is_zero():
            failures.append(f"relation {k} does not expand to zero")
            return None
    if ring.shape is None:
        for k, rel in enumerate(rels, start=1):
            classical = rel.substitute(ring._q_zero)
            if classical != elementary_poly(k, ring.n):
                failures.append(
                    f"relation {k} at q=0 is not the elementary polynomial"
                )
                return None
    return f"{len(rels)} relations"


def _suite_giambelli(ring, seed, failures):
    for w in ring.basis:
        got = ring.expand_in_quantum_basis(ring.basis_polynomial(w))
        if got != QuantumClass.unit(w, shape=ring.shape):
            failures.append(f"σ_{w} does not expand to the unit class")
            return None
    return f"{len(ring.basis)} classes"


def _suite_specialization(n, seed, failures):
    ws = all_permutations(n)
    for w in ws:
        universal = universal_schubert_g(w)
        quantum = quantum_schubert(w)
        if specialize_quantum(universal) != quantum:
            failures.append(f"universal → quantum failed at {w}")
            return None
        classical = schubert_poly(w)
        if specialize_classical(universal) != classical:
            failures.append(f"universal → classical failed at {w}")
            return None
        q_zero = {v: 0 for v in quantum.variables() if v[0] == "q"}
        if quantum.substitute(q_zero) != classical:
            failures.append(f"quantum → classical failed at {w}")
            return None
    return f"{len(ws)} chains"


def _suite_recursion_roundtrip(n, seed, failures):
    for l in range(1, n + 1):
        for k in range(0, l + 1):
            direct = path_poly(k, l)
            if direct != path_poly_via_recursion(k, l):
                failures.append(f"recursion disagrees at E_{k}({l})")
                return None
            if direct != path_poly_via_determinant(k, l):
                failures.append(f"determinant disagrees at E_{k}({l})")
                return None
    for i in range(1, n + 1):
        for j in range(0, n - i + 1):
            image = g_from_c(i, j)
            back = image.substitute(
                {v: path_poly(v[1], v[2]) for v in image.variables()}
            )
            want = Polynomial.variable(("g", i, j))
            if back != want:
                failures.append(f"g↔c round trip failed at g{i}[{j}]")
                return None
    return None


def _suite_kernel_chern(n, seed, failures):
    count = 0
    for l in range(1, n + 1):
        for k in range(1, l):
            try:
                kernel_chern_check(k, l)
            except VerificationError as exc:
                failures.append(str(exc))
                return None
            count += 1
    return f"{count} pairs"


def _suite_kernel_chern_partial(shape, seed, failures):
    for l in range(1, shape.m + 1):
        try:
            kernel_chern_partial_check(l, shape)
        except VerificationError as exc:
            failures.append(str(exc))
            return None
    return f"{shape.m} maps"


def _suite_lemma_es(n, seed, failures):
    count = 0
    stack = [()]
    while stack:
        e = stack.pop()
        if len(e) < n - 1:
            prev = e[-1] if e else 0
            for nxt in range(0, prev + 2):
                if sum(e) + nxt <= 6:
                    stack.append(e + (nxt,))
        if not e or sum(e) < 1:
            continue
        total, weighted = lemma_es_check(e)
        if not (total <= weighted and weighted >= 2):
            failures.append(f"bounds fail at e = {e}")
            return None
        if (weighted == 2) != (total == 1):
            failures.append(f"equality case fails at e = {e}")
            return None
        count += 1
    return f"{count} multiindices"


def _suite_grading(ring, seed, failures):
    basis = list(ring.basis)
    pairs = _sampled([(u, v) for u in basis for v in basis], 600, seed)
    grades = (
        [ring.q_grades[l] for l in sorted(ring.q_grades)]
        if ring.shape is not None
        else [2] * ring.q_count
    )
    for u, v in pairs:
        for (d, w), c in ring.quantum_product(u, v).items():
            if c < 0:
                failures.append(
                    f"negative structure constant {c} at q^{d}·σ_{w} "
                    f"in σ_{u}∗σ_{v}"
                )
                return None
            weight = sum(e * g for e, g in zip(d, grades))
            if length(w) + weight != length(u) + length(v):
                failures.append(
                    f"graded mismatch at q^{d}·σ_{w} in σ_{u}∗σ_{v}"
                )
                return None
    return f"{len(pairs)} pairs"


def _suite_two_point(ring, seed, failures):
    basis = list(ring.basis)
    count = 0
    degrees = [d for d in _degree_vectors(ring.q_count, 2) if any(d)]
    for u in basis:
        for v in basis:
            for d in degrees:
                if length(u) + length(v) != ring._moduli_dimension(d):
                    continue
                got = ring.gromov_witten([u], v, d)
                count += 1
                if got != 0:
                    failures.append(
                        f"⟨σ_{u},σ_{v}⟩_{d} = {got}, expected 0"
                    )
                    return None
    return f"{count} invariants"


def _degree_vectors(m, bound):
    out = [()]
    for _ in range(m):
        out = [d + (e,) for d in out for e in range(bound + 1)]
    return out


_COMPLETE_SUITES = {
    "associativity": (lambda ring, s, f: _suite_associativity(ring, s, f), 3),
    "q0-classical": (lambda ring, s, f: _suite_q0_classical(ring, s, f), 3),
    "duality": (lambda ring, s, f: _suite_duality(ring, s, f), 3),
    "relations": (lambda ring, s, f: _suite_relations(ring, s, f), 3),
    "giambelli": (lambda ring, s, f: _suite_giambelli(ring, s, f), 3),
    "grading": (lambda ring, s, f: _suite_grading(ring, s, f), 3),
    "two-point": (lambda ring, s, f: _suite_two_point(ring, s, f), 3),
}

_N_SUITES = {
    "specialization": (_suite_specialization, 3),
    "recursion-roundtrip": (_suite_recursion_roundtrip, 5),
    "kernel-chern": (_suite_kernel_chern, 5),
    "lemma-es": (_suite_lemma_es, 5),
}


def cmd_verify(args) -> int:
    name = args.suite
    failures: list[str] = []
    if name in _COMPLETE_SUITES:
        fn, default_n = _COMPLETE_SUITES[name]
        if args.shape:
            ring = partial_ring(_parse_shape(args.shape))
        else:
            n = args.n if args.n is not None else default_n
            if n < 2:
                raise CLIInputError(f"need n ≥ 2: {n}")
            ring = quantum_ring(n)
        summary = fn(ring, args.seed, failures)
    elif name in _N_SUITES:
        fn, default_n = _N_SUITES[name]
        if args.shape:
            raise CLIInputError(f"suite {name!r} takes --n, not --shape")
        n = args.n if args.n is not None else default_n
        if n < 1:
            raise CLIInputError(f"need n ≥ 1: {n}")
        summary = fn(n, args.seed, failures)
    elif name == "kernel-chern-partial":
        if not args.shape:
            raise CLIInputError("suite 'kernel-chern-partial' needs --shape")
        summary = _suite_kernel_chern_partial(
            _parse_shape(args.shape), args.seed, failures
        )
    else:
        known = sorted(
            list(_COMPLETE_SUITES) + list(_N_SUITES) + ["kernel-chern-partial"]
        )
        raise CLIInputError(
            f"unknown suite {args.suite!r}; known suites: {', '.join(known)}"
        )
    if args.format == "json":
        obj = {"suite": name, "status": "fail" if failures else "pass"}
        if failures:
            obj["failures"] = failures
        elif summary is not None:
            obj["summary"] = summary
        print(_dumps(obj))
        return 1 if failures else 0
    if failures:
        for line in failures:
            print(f"fail: {line}")
        return 1
    print("pass" if summary is None else f"pass, {summary}")
    return 0


# ---- table -----------------------------------------------------------------


_WORKER_RING = {}


def _table_worker(job):
    """Compute one product in a worker process; rings are cached per process."""
    ring_key, u, v = job
    ring = _WORKER_RING.get(ring_key)
    if ring is None:
        if isinstance(ring_key, int):
            ring = quantum_ring(ring_key)
        else:
            ring = partial_ring(FlagShape.from_string(ring_key))
        _WORKER_RING[ring_key] = ring
    return _pair_key(u, v), ring.quantum_product(u, v).to_json_obj()


def cmd_table(args) -> int:
    ring = _ring_from_args(args)
    if ring.n > args.max_n:
        raise CLIInputError(
            f"table generation is limited to n ≤ {args.max_n} (got n = {ring.n})"
        )
    cache = TableCache(args.cache_dir)
    key = _product_cache_key(ring)
    entries = cache.load("product-table", key) or {}
    basis = list(ring.basis)
    todo = []
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if _pair_key(u, v) not in entries:
                todo.append((u, v))
    computed = 0
    if todo:
        ring_key = ring.shape.to_string() if ring.shape is not None else ring.n
        jobs = [(ring_key, u, v) for u, v in todo]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_table_worker, jobs))
        else:
            results = [_table_worker(job) for job in jobs]
        for pair_key, obj in results:
            entries[pair_key] = obj
            computed += 1
    # mirror each canonical pair onto the opposite order so the table lists
    # every ordered pair explicitly
    for u in basis:
        for v in basis:
            k = _pair_key(u, v)
            if k not in entries:
                a, b = (u, v) if u <= v else (v, u)
                entries[k] = entries[_pair_key(a, b)]
    path = cache.store("product-table", key, entries)
    if args.out:
        out = Path(args.out)
        if out.resolve() != path.resolve():
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(path.read_text(encoding="utf-8"), encoding="utf-8")
            path = out
    if args.format == "json":
        print(_dumps({"path": str(path), "entries": len(entries), "computed": computed}))
    else:
        print(f"wrote {path} ({len(entries)} entries, {computed} computed)")
    return 0


# ---- entry point -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qschubert",
        description="Exact Schubert calculus: classical, quantum, universal.",
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help="cache directory (default: $QSCHUBERT_CACHE or ~/.qschubert)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schubert", help="print a Schubert polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", required=True, help="permutation, e.g. 3,1,2")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--universal", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_schubert)

    p = sub.add_parser("product", help="quantum product of two classes")
    p.add_argument("--n", type=int)
    p.add_argument("--shape", help="flag shape n1:n2:…:n")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("gw", help="Gromov–Witten invariant")
    p.add_argument("--n", type=int)
    p.add_argument("--shape", help="flag shape n1:n2:…:n")
    p.add_argument(
        "--insertions", required=True, help="semicolon-separated permutations"
    )
    p.add_argument(
        "--class",
        dest="cls",
        required=True,
        help="the class σ_w paired against the insertions; the invariant is "
        "the coefficient of q^d·σ_{dual(w)} in their product",
    )
    p.add_argument("--degree", required=True, help="comma-separated degree")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_gw)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--shape")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table", help="materialize a multiplication table")
    p.add_argument("--n", type=int)
    p.add_argument("--shape")
    p.add_argument("--out", help="copy the table to this path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_table)

    return parser


def main(argv=None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CLIInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, SolveError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
