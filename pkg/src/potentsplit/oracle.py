"""Brute-force checks that never call the decomposition algorithms.

Everything here is built from ring and matrix primitives only: exhaustive
searches for potent + nilpotent splittings over tiny rings, an independent
certificate checker for claimed decompositions, and sweeps that run a
decomposer over every matrix of a given size.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetExceeded, IterationLimit, ShapeMismatch
from .matrices import Matrix
from .rings import RingElement, is_potent, square_ideal_generator

__all__ = [
    "DEFAULT_BUDGET",
    "SearchReport",
    "Certificate",
    "all_matrices",
    "exhaustive_decomposition_search",
    "verify_decomposition",
    "sweep",
    "conjecture_table",
]

DEFAULT_BUDGET = 10**8


class _Budget:
    """Counts ring multiplications."""

    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self.examined = 0

    def charge(self, k):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"operation budget of {self.limit} exhausted", self.examined)


@dataclass(frozen=True)
class SearchReport:
    ring: object
    A: Matrix
    max_nil_index: int
    found: tuple  # (P, N) or None
    search_size: int

    def to_doc(self):
        found = None
        if self.found is not None:
            P, N = self.found
            found = {"P": P.tolist(), "N": N.tolist()}
        return {
            "ring": str(self.ring),
            "A": self.A.tolist(),
            "max_nil_index": self.max_nil_index,
            "found": found,
            "search_size": self.search_size,
        }


def _as_matrix(A):
    if isinstance(A, RingElement):
        return Matrix(A.ring, [[A.rep]])
    return A


def all_matrices(ring, n):
    """Every n x n matrix over ``ring`` in lexicographic order of entries."""
    elems = ring.element_list()
    for flat in itertools.product(elems, repeat=n * n):
        yield Matrix._raw(ring, tuple(flat[i * n:(i + 1) * n] for i in range(n)))


def _is_nilpotent_of_index(N, m, budget):
    cost = N.n**3
    X = N
    for _ in range(m - 1):
        if X.is_zero():
            return True
        budget.charge(cost)
        X = X * N
    return X.is_zero()


def _potency(P, budget):
    cost = P.n**3
    seen = {P}
    X = P
    k = 1
    while True:
        budget.charge(cost)
        X = X * P
        k += 1
        if X == P:
            return k
        if X in seen:
            return None
        seen.add(X)


def exhaustive_decomposition_search(A, max_nil_index=2, budget=DEFAULT_BUDGET):
    """Look for ``A = P + N`` with P potent and ``N^max_nil_index = 0``.

    Candidates N are enumerated lexicographically; ``search_size`` counts
    the nilpotent candidates actually tried, so a negative answer has
    ``search_size`` equal to the number of such N in the whole ring.
    """
    A = _as_matrix(A)
    if max_nil_index < 1:
        raise ValueError("max_nil_index must be at least 1")
    b = _Budget(budget)
    for N in all_matrices(A.ring, A.n):
        if not _is_nilpotent_of_index(N, max_nil_index, b):
            continue
        b.examined += 1
        P = A - N
        if _potency(P, b) is not None:
            return SearchReport(A.ring, A, max_nil_index, (P, N), b.examined)
    return SearchReport(A.ring, A, max_nil_index, None, b.examined)


@dataclass
class Certificate:
    checks: dict = field(default_factory=dict)
    minimal_exponent: int = None

    @property
    def passed(self):
        return bool(self.checks) and all(self.checks.values())

    def to_doc(self):
        return dict(self.checks)


def _claimed_ideal(ring, guarantee, ideal):
    if ideal is not None:
        return ideal
    if not getattr(ring, "integer_mod", False):
        return None
    return square_ideal_generator(ring.modulus)


def verify_decomposition(A, P, N, guarantee="square-zero", exponent=None, ideal=None):
    """Re-check a claimed decomposition from the raw matrices."""
    A, P, N = _as_matrix(A), _as_matrix(P), _as_matrix(N)
    for M in (P, N):
        if M.ring != A.ring or M.n != A.n:
            raise ShapeMismatch("A, P and N must share ring and size")
    guarantee = getattr(guarantee, "value", guarantee)
    cert = Certificate()
    cert.checks["A=P+N"] = A == P + N
    try:
        cert.minimal_exponent = is_potent(P)
        cert.checks["P potent"] = cert.minimal_exponent is not None
    except IterationLimit:
        # period too long to walk; fall back to the claimed exponent
        cert.checks["P potent"] = exponent is not None and exponent >= 2 and P**exponent == P
    if exponent is not None:
        cert.checks["P^exponent=P"] = exponent >= 2 and P**exponent == P
    NN = N * N
    if guarantee == "square-zero":
        cert.checks["N^2=0"] = NN.is_zero()
    elif guarantee == "square-in-p2":
        g = _claimed_ideal(A.ring, guarantee, ideal)
        cert.checks["N^2 in (p^2)"] = g is not None and all(
            x % g == 0 for row in NN.rows for x in row
        )
    else:
        raise ValueError(f"unknown guarantee {guarantee!r}")
    return cert


def _default_decomposer():
    from .decompose import decompose

    return decompose


def _sweep_chunk(args):
    ring, n, decomposer, start, stop = args
    decomposer = decomposer or _default_decomposer()
    total = decomposed = failures = 0
    examples = []
    for A in itertools.islice(all_matrices(ring, n), start, stop):
        total += 1
        try:
            D = decomposer(A)
        except Exception as exc:  # noqa: BLE001 - any crash is a failure to report
            failures += 1
            if len(examples) < 5:
                examples.append((A.tolist(), repr(exc)))
            continue
        decomposed += 1
        cert = verify_decomposition(A, D.P, D.N, D.guarantee, D.exponent, D.ideal)
        if not cert.passed:
            failures += 1
            if len(examples) < 5:
                examples.append((A.tolist(), cert.checks))
    return total, decomposed, failures, examples


def sweep(ring, n, decomposer=None, budget=DEFAULT_BUDGET, jobs=1):
    """Run ``decomposer`` on every n x n matrix and verify each result."""
    count = ring.size ** (n * n)
    if count > budget:
        raise BudgetExceeded(f"{count} matrices exceed the budget of {budget}", 0)
    if jobs <= 1:
        chunks = [(ring, n, decomposer, 0, count)]
        results = [_sweep_chunk(c) for c in chunks]
    else:
        step = -(-count // jobs)
        chunks = [(ring, n, decomposer, s, min(s + step, count)) for s in range(0, count, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    summary = {"total": 0, "decomposed": 0, "certificate_failures": 0, "examples": []}
    for total, decomposed, failures, examples in results:
        summary["total"] += total
        summary["decomposed"] += decomposed
        summary["certificate_failures"] += failures
        summary["examples"].extend(examples)
    return summary


def conjecture_table(ring, n, max_nil_index, budget=DEFAULT_BUDGET):
    """Search every n x n matrix; one row per matrix.

    Evidence only: a row records whether some potent + nilpotent-of-index
    <= m splitting exists for that matrix.
    """
    rows = []
    for A in all_matrices(ring, n):
        rep = exhaustive_decomposition_search(A, max_nil_index, budget)
        rows.append(rep)
    return rows
