"""Brute-force classification over prime fields in low dimension.

Candidate spaces are walked in lexicographic order of their flattened
structure constants (mixed-radix odometer), filtered through the public
validators with an early-stop scan.  Index ranges can be partitioned across
worker processes; chunks are merged in range order, so parallel and serial
runs produce identical lists.  Candidate counts above the configured budget
raise instead of truncating.

The image experiment compares the dendriform dialgebras reachable from
Rota-Baxter operators with the full enumeration.  This is a finite-field
analogue of a statement over the complex numbers; results are labeled as
such and neither confirm nor refute the original claim.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .constructions import canonical_operator_from_di, domain_dendriform_di
from .errors import BudgetExceededError
from .fields import FieldSpec, prime_field
from .linalg import Matrix, StructureTensor
from .operators import (RotaBaxterOperator, rb_as_module_operator,
                        validate_rota_baxter)
from .structures import (Algebra, DendriformDi, validate_associativity,
                         validate_dendriform_di)

DEFAULT_BUDGET = 1 << 24

ANALOGUE_LABEL = ("finite-field analogue over F_{p}; says nothing about "
                  "the corresponding statement in characteristic zero")


def _check_budget(total: int, budget: int | None) -> int:
    cap = DEFAULT_BUDGET if budget is None else budget
    if total > cap:
        raise BudgetExceededError(f"{total} candidates exceed budget {cap}")
    return cap


def _digit_tuples(p: int, length: int, start: int, stop: int):
    """Mixed-radix odometer: flattened candidate tuples for indices [start, stop)."""
    digits = []
    idx = start
    for _ in range(length):
        digits.append(idx % p)
        idx //= p
    digits.reverse()
    for _ in range(start, stop):
        yield tuple(digits)
        for pos in range(length - 1, -1, -1):
            digits[pos] += 1
            if digits[pos] < p:
                break
            digits[pos] = 0


def _tensor_from_flat(field: FieldSpec, n: int, flat) -> StructureTensor:
    it = iter(flat)
    return StructureTensor(field, tuple(
        tuple(tuple(next(it) for _ in range(n)) for _ in range(n))
        for _ in range(n)))


def _matrix_from_flat(field: FieldSpec, n: int, flat) -> Matrix:
    return Matrix(field, tuple(flat[r * n:(r + 1) * n] for r in range(n)))


# -- chunk filters (top level so worker processes can unpickle them) -----------------

def _assoc_chunk(args):
    p, n, start, stop = args
    field = prime_field(p)
    out = []
    for flat in _digit_tuples(p, n ** 3, start, stop):
        alg = Algebra(_tensor_from_flat(field, n, flat))
        if validate_associativity(alg, max_violations=1, early_stop=True).passed:
            out.append(flat)
    return out


def _rb_chunk(args):
    algebra, weight, start, stop = args
    p = algebra.field.p
    n = algebra.dim
    out = []
    for flat in _digit_tuples(p, n * n, start, stop):
        rb = RotaBaxterOperator(algebra, _matrix_from_flat(algebra.field, n, flat), weight)
        if validate_rota_baxter(rb, max_violations=1, early_stop=True).passed:
            out.append(flat)
    return out


def _dd_chunk(args):
    p, n, start, stop = args
    field = prime_field(p)
    cube = n ** 3
    out = []
    for flat in _digit_tuples(p, 2 * cube, start, stop):
        d = DendriformDi(_tensor_from_flat(field, n, flat[:cube]),
                         _tensor_from_flat(field, n, flat[cube:]))
        if validate_dendriform_di(d, max_violations=1, early_stop=True).passed:
            out.append(flat)
    return out


def _run_chunks(chunk_fn, fixed_args, total: int, workers: int):
    if workers <= 1 or total == 0:
        return chunk_fn(fixed_args + (0, total))
    bounds = [total * k // workers for k in range(workers + 1)]
    jobs = [fixed_args + (bounds[k], bounds[k + 1]) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(chunk_fn, jobs))
    return [flat for part in parts for flat in part]


# -- public enumerations ---------------------------------------------------------------

def enumerate_associative_products(dim: int, p: int, budget: int | None = None,
                                   workers: int = 1) -> list:
    """All associative structure tensors on F_p^dim, in lexicographic order."""
    total = p ** (dim ** 3)
    _check_budget(total, budget)
    field = prime_field(p)
    flats = _run_chunks(_assoc_chunk, (p, dim), total, workers)
    return [Algebra(_tensor_from_flat(field, dim, flat)) for flat in flats]


def enumerate_rb_operators(algebra: Algebra, weight, budget: int | None = None,
                           workers: int = 1) -> list:
    """All matrices satisfying the weight-``weight`` relation on ``algebra``."""
    if not algebra.field.is_finite:
        from .errors import FieldNotFiniteError
        raise FieldNotFiniteError("enumeration requires a prime field")
    n = algebra.dim
    total = algebra.field.p ** (n * n)
    _check_budget(total, budget)
    flats = _run_chunks(_rb_chunk, (algebra, weight), total, workers)
    return [RotaBaxterOperator(algebra, _matrix_from_flat(algebra.field, n, flat), weight)
            for flat in flats]


def enumerate_dendriform_di(dim: int, p: int, budget: int | None = None,
                            workers: int = 1) -> list:
    """All dendriform dialgebras on F_p^dim (pairs of tensors), lexicographic."""
    total = p ** (2 * dim ** 3)
    _check_budget(total, budget)
    field = prime_field(p)
    cube = dim ** 3
    flats = _run_chunks(_dd_chunk, (p, dim), total, workers)
    return [DendriformDi(_tensor_from_flat(field, dim, flat[:cube]),
                         _tensor_from_flat(field, dim, flat[cube:]))
            for flat in flats]


# -- the image experiment ---------------------------------------------------------------

@dataclass(frozen=True)
class PhiImageResult:
    """Rota-Baxter image vs all dendriform dialgebras on F_p^dim.

    ``witnesses`` pairs each image structure with one producing
    (algebra, operator matrix); ``missing`` lists the structures outside the
    image explicitly.  ``round_trip_failures`` collects dialgebras whose
    canonical-operator reconstruction failed (expected empty).
    """

    dim: int
    p: int
    label: str
    all_structures: tuple
    image: tuple
    missing: tuple
    witnesses: tuple
    image_subset_of_all: bool
    round_trip_failures: tuple

    @property
    def counts(self) -> dict:
        return {"all": len(self.all_structures),
                "image": len(self.image),
                "missing": len(self.missing)}


def _dd_sort_key(d: DendriformDi):
    return (d.prec.entries, d.succ.entries)


def phi_image_experiment(dim: int, p: int, budget: int | None = None,
                         workers: int = 1) -> PhiImageResult:
    """Compare the Rota-Baxter weight-zero image with all dendriform dialgebras."""
    algebras = enumerate_associative_products(dim, p, budget, workers)
    all_dd = enumerate_dendriform_di(dim, p, budget, workers)
    first_witness: dict = {}
    for alg in algebras:
        for rb in enumerate_rb_operators(alg, alg.field.zero, budget, workers):
            d = domain_dendriform_di(rb_as_module_operator(rb))
            if d not in first_witness:
                first_witness[d] = (alg, rb.matrix)
    all_set = set(all_dd)
    image = sorted(first_witness, key=_dd_sort_key)
    missing = [d for d in all_dd if d not in first_witness]
    failures = []
    for d in all_dd:
        try:
            canonical_operator_from_di(d)  # verifies the round trip internally
        except Exception:  # noqa: BLE001 - recorded, surfaced by callers/tests
            failures.append(d)
    return PhiImageResult(
        dim=dim, p=p,
        label=ANALOGUE_LABEL.format(p=p),
        all_structures=tuple(all_dd),
        image=tuple(image),
        missing=tuple(missing),
        witnesses=tuple((d, first_witness[d][0], first_witness[d][1]) for d in image),
        image_subset_of_all=all(d in all_set for d in image),
        round_trip_failures=tuple(failures),
    )
