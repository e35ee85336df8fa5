"""Constructive maximum-rank search for rank-1-spanned matrix spaces.

The driver alternates the witness test with the power overflow solver:
either the current element is certified maximal (with a cork-singularity
witness), or the overflow answer yields a direction whose admixture
strictly increases the rank.  Small finite fields are handled by running
the loop over a deterministic extension; over the rationals coefficients
are renormalized into {0,...,n} after every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import EmptySpace
from .fields import FieldSpec, distinct_elements, ensure_size
from .linalg import Mat, Subspace
from .po import PoInstance, solve_po
from .spaces import MatSpace
from .wong import verify_witness, witness_test


@dataclass
class SmrResult:
    status: str                      # max_rank_found | non_constructive_rank | failed_po
    coefficients: list
    matrix: Mat
    rank: int
    witness: Optional[Subspace]
    working_field: FieldSpec
    ranks_visited: list = dc_field(default_factory=list)


def pad_square(sp: MatSpace) -> MatSpace:
    """Augment generators by zero rows or columns to make the space square."""
    n = max(sp.nrows, sp.ncols)
    if sp.nrows == sp.ncols:
        return sp
    f = sp.field
    padded = []
    for g in sp.gens:
        rows = [list(r) + [f.zero] * (n - sp.ncols) for r in g.rows]
        rows += [[f.zero] * n for _ in range(n - sp.nrows)]
        padded.append(Mat(f, rows))
    return MatSpace(f, n, n, padded)


def reduce_coefficients(sp: MatSpace, coeffs: list) -> list:
    """Replace each coefficient by the first value in {0,...,n} keeping the rank.

    Position by position in order; existence of a rank-preserving value is
    guaranteed because the rank drop along one coefficient is controlled by
    a nonzero polynomial with at most n roots.
    """
    f = sp.field
    n = max(sp.nrows, sp.ncols)
    r = sp.element(coeffs).rank()
    out = list(coeffs)
    for i in range(len(out)):
        for kappa in range(n + 1):
            trial = list(out)
            trial[i] = f.from_int(kappa)
            if sp.element(trial).rank() >= r:
                out = trial
                break
    return out


def smr(sp: MatSpace, start: int = 0) -> SmrResult:
    """Maximum-rank search starting from the generator at index `start`."""
    if sp.dim == 0:
        raise EmptySpace("cannot search an empty matrix space")
    work = pad_square(sp)
    f = work.field
    n = work.nrows
    rational = f.cardinality() is None

    card = f.cardinality()
    extended = card is not None and card < n + 1
    if extended:
        big, embed = ensure_size(f, n + 1)
        gens = [Mat(big, [[embed(e) for e in r] for r in g.rows]) for g in work.gens]
        work = MatSpace(big, n, n, gens)
        f = big

    m = work.dim
    coeffs = [f.one if i == start else f.zero for i in range(m)]
    a = work.gens[start]
    ranks = [a.rank()]
    lambdas = distinct_elements(f, n + 1)

    for _ in range(n + 1):
        report = witness_test(a, work)
        if report.exists:
            status = "non_constructive_rank" if extended else "max_rank_found"
            return SmrResult(status, coeffs, a, a.rank(), report.witness,
                             f.spec, ranks)

        a_pi = _pinv(a)
        ba = MatSpace(f, n, n, [b.matmul(a_pi) for b in work.gens])
        from .linalg import image, kernel
        answer = solve_po(PoInstance(ba, kernel(a.matmul(a_pi)), image(a)))
        if not answer.found:
            return SmrResult("failed_po", coeffs, a, a.rank(), None, f.spec, ranks)

        b = work.element(answer.coefficients)
        r = a.rank()
        improved = False
        for lam in lambdas:
            cand = a.add(b.scale(lam))
            if cand.rank() > r:
                a = cand
                coeffs = [f.add(c, f.mul(lam, bc))
                          for c, bc in zip(coeffs, answer.coefficients)]
                improved = True
                break
        if not improved:
            return SmrResult("failed_po", coeffs, a, a.rank(), None, f.spec, ranks)
        if rational:
            coeffs = reduce_coefficients(work, coeffs)
            a = work.element(coeffs)
        ranks.append(a.rank())
    raise AssertionError("rank increased more than n times")  # unreachable


def _pinv(a: Mat) -> Mat:
    from .linalg import pseudo_inverse
    return pseudo_inverse(a)


def smr_best_start(sp: MatSpace) -> SmrResult:
    """Restart the search from every generator and keep the best certified run.

    This covers spaces whose rank-1-spanned part has codimension one: runs
    started outside that part are guaranteed to succeed, the others end
    with a safe failed_po.
    """
    best: Optional[SmrResult] = None
    fallback: Optional[SmrResult] = None
    for i in range(sp.dim):
        res = smr(sp, start=i)
        if res.status == "failed_po":
            fallback = fallback or res
        elif best is None or res.rank > best.rank:
            best = res
    return best if best is not None else fallback


def smr_rank_only(sp: MatSpace) -> int:
    """The maximum rank, valid over the base field regardless of its size."""
    if sp.dim == 0:
        return 0
    return smr(sp).rank


def check_result(sp: MatSpace, res: SmrResult) -> bool:
    """Re-verify a certified result against the (padded) space."""
    work = pad_square(sp)
    if res.witness is None:
        return res.status == "failed_po"
    n = work.nrows
    space = work
    if res.working_field != work.field.spec:
        big = None
        from .fields import make_field
        big = make_field(res.working_field)
        _, embed = ensure_size(work.field, big.cardinality() or 0)
        gens = [Mat(big, [[embed(e) for e in r] for r in g.rows]) for g in work.gens]
        space = MatSpace(big, n, n, gens)
    return (space.element(res.coefficients) == res.matrix
            and res.matrix.rank() == res.rank
            and verify_witness(space, res.witness, n - res.rank))
