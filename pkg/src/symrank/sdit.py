"""Constructive SDIT for triangularizable spaces and the rational pipeline.

The recursive algorithm compresses along the limit of a first Wong
sequence: the nonsingular block it certifies is split off and the induced
action on the quotient is handled by recursion.  Triangularizability
itself (given a nonsingular element) reduces to nilpotency of the
commutator ideal of the generated algebra.  Over the integers the problem
is reduced modulo enough small primes to cover a determinant bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import FieldTooSmall, NotMember, NotSquare, SingularS
from .fields import PrimeField, distinct_elements
from .linalg import Mat, Subspace, kernel
from .spaces import MatSpace
from .wong import first_wong, mat_preimage_of


@dataclass
class TriOutcome:
    kind: str                          # nonsingular | witness | fail
    coefficients: Optional[list] = None
    witness: Optional[Subspace] = None


def _span_image(mats: list[Mat], u: Subspace) -> Subspace:
    f = mats[0].field
    return Subspace(f, mats[0].nrows, [m.apply(v) for m in mats for v in u.basis])


def _common_kernel(mats: list[Mat]) -> Subspace:
    stacked = Mat(mats[0].field, [r for m in mats for r in m.rows])
    return kernel(stacked)


def _right_inverse(p: Mat) -> Mat:
    """Right inverse of a full-row-rank matrix, zeros on free coordinates."""
    from .linalg import solve
    f = p.field
    targets = [[f.one if i == t else f.zero for i in range(p.nrows)]
               for t in range(p.nrows)]
    cols = solve(p, targets)
    return Mat(f, cols).transpose()


def _tri(mats: list[Mat], n: int, field) -> TriOutcome:
    m = len(mats)
    if n == 1:
        for i, b in enumerate(mats):
            if not b.is_zero():
                coeffs = [field.one if j == i else field.zero for j in range(m)]
                return TriOutcome("nonsingular", coefficients=coeffs)
        return TriOutcome("witness", witness=Subspace.full(field, 1))

    ck = _common_kernel(mats)
    if ck.dim > 0:
        return TriOutcome("witness", witness=ck)

    span = MatSpace.from_spanning(mats)
    limits = [first_wong(b, span).limit for b in mats]
    for u_star in limits:
        if _span_image(mats, u_star).dim < u_star.dim:
            return TriOutcome("witness", witness=u_star)
    j = next((i for i, u in enumerate(limits) if u.dim > 0), None)
    if j is None:
        return TriOutcome("fail")

    u_star = limits[j]
    if u_star.dim == n:
        # nothing left to recurse on; B_j alone is nonsingular on the block
        sub = TriOutcome("nonsingular", coefficients=[field.zero] * m)
    else:
        bu = _span_image(mats, u_star)       # same dimension as u_star here
        p, _ = u_star.quotient_coords()
        q, _ = bu.quotient_coords()
        r = _right_inverse(p)
        induced = [q.matmul(b).matmul(r) for b in mats]
        sub = _tri(induced, n - u_star.dim, field)

        if sub.kind == "witness":
            return TriOutcome("witness", witness=mat_preimage_of(p, sub.witness))
        if sub.kind == "fail":
            return TriOutcome("fail")

    e = Mat.zeros(field, n, n)
    for c, b in zip(sub.coefficients, mats):
        if not field.is_zero(c):
            e = e.add(b.scale(c))
    lam_set = distinct_elements(field, n + 1)
    for lam in lam_set:
        for mu in lam_set:
            cand = mats[j].scale(lam).add(e.scale(mu))
            if cand.rank() == n:
                coeffs = [field.mul(mu, c) for c in sub.coefficients]
                coeffs[j] = field.add(coeffs[j], lam)
                return TriOutcome("nonsingular", coefficients=coeffs)
    raise AssertionError("no nonsingular combination of B_j and E found")


def tri_algo_list(mats: list[Mat]) -> TriOutcome:
    """Run the recursion on a generator list, keeping coefficient positions."""
    if not mats:
        raise NotSquare("empty generator list")
    n = mats[0].nrows
    field = mats[0].field
    if any(b.nrows != n or b.ncols != n for b in mats):
        raise NotSquare("generators must be square of one size")
    card = field.cardinality()
    if card is not None and card < n + 1:
        raise FieldTooSmall(f"need at least {n + 1} field elements")
    out = _tri(mats, n, field)
    # re-check the output contract before handing it out
    if out.kind == "nonsingular":
        total = Mat.zeros(field, n, n)
        for c, b in zip(out.coefficients, mats):
            if not field.is_zero(c):
                total = total.add(b.scale(c))
        assert total.rank() == n, "claimed nonsingular combination is singular"
    elif out.kind == "witness":
        w = out.witness
        assert w.dim > _span_image(mats, w).dim, "claimed witness is not strict"
    return out


def tri_algo(sp: MatSpace) -> TriOutcome:
    if sp.nrows != sp.ncols:
        raise NotSquare("SDIT is defined for square spaces")
    return tri_algo_list(sp.gens)


def is_triangularizable_with_nonsingular(sp: MatSpace, s: Mat) -> bool:
    """Triangularizability over some extension, tested through s.

    Forms the unital algebra generated by the space times s^{-1} and checks
    that the two-sided ideal generated by its commutators is nilpotent.
    """
    n = sp.nrows
    if sp.nrows != sp.ncols:
        raise NotSquare("triangularizability is defined for square spaces")
    if s.rank() < n:
        raise SingularS("pivot matrix must be nonsingular")
    if not sp.contains(s):
        raise NotMember("pivot matrix is not in the space")
    s_inv = s.inverse()
    a_space = MatSpace.from_spanning(
        [b.matmul(s_inv) for b in sp.gens] + [Mat.identity(sp.field, n)])
    comms = a_space.commutator_space()
    if comms.is_zero():
        return True
    alg = a_space.generated_algebra()
    ideal = alg.product(comms).product(alg)
    if ideal.is_zero():
        return True
    return ideal.power(n).is_zero()


# ---------------------------------------------------------------------------
# rational pipeline
# ---------------------------------------------------------------------------

@dataclass
class RationalSditReport:
    outcome: str                       # nonsingular_combination | inconclusive
    prime_used: Optional[int] = None
    integer_coefficients: Optional[list[int]] = None
    primes_tried: Optional[list[int]] = None
    bound_used: int = 0


def _primes_above(n: int):
    p = max(n, 1) + 1
    while True:
        if all(p % d for d in range(2, math.isqrt(p) + 1)):
            yield p
        p += 1


def _int_det(rows: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_sdit(int_mats: list[list[list[int]]],
                  prime_budget: Optional[int] = None) -> RationalSditReport:
    """Mod-p reduction pipeline for integer generator matrices.

    Tries ascending primes p > n whose product exceeds a Hadamard-style
    bound on |det| of any combination with coefficients in {0..n}; a
    nonsingular mod-p combination is accepted only after its integer
    determinant is verified nonzero exactly.
    """
    m = len(int_mats)
    n = len(int_mats[0])
    b = max(1, max(abs(e) for mat in int_mats for row in mat for e in row))
    bound = (math.isqrt(n ** n) + 1) * (((n + 1) * m * b) ** n)

    primes = []
    acc = 1
    for p in _primes_above(n):
        if prime_budget is not None and p > prime_budget:
            break
        primes.append(p)
        acc *= p
        if acc > bound:
            break

    tried = []
    for p in primes:
        tried.append(p)
        gf = PrimeField(p)
        mats = [Mat.from_ints(gf, mat) for mat in int_mats]
        out = tri_algo_list(mats)
        if out.kind != "nonsingular":
            continue
        ints = [c % p for c in out.coefficients]
        combo = [[sum(c * mat[i][j] for c, mat in zip(ints, int_mats))
                  for j in range(n)] for i in range(n)]
        if _int_det(combo) != 0:
            return RationalSditReport("nonsingular_combination", prime_used=p,
                                      integer_coefficients=ints,
                                      primes_tried=tried, bound_used=bound)
    return RationalSditReport("inconclusive", primes_tried=tried, bound_used=bound)
