"""Deterministic solver for the power overflow problem.

Given a square space D and subspaces U, U', find an element X and an
exponent l with X^l(U) not inside U'.  The search is complete for
rank-1-spanned D; for other inputs failure is reported as a value, never
raised, so callers can fall back safely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import Mat, Subspace, kernel
from .spaces import MatSpace


@dataclass
class PoInstance:
    d: MatSpace
    u: Subspace
    u_prime: Subspace


@dataclass
class PoAnswer:
    found: bool
    d: Optional[Mat] = None
    ell: Optional[int] = None
    coefficients: Optional[list] = None


def _power_escapes(d: Mat, ell: int, u: Subspace, u_prime: Subspace) -> bool:
    """Check d^ell(u) not contained in u_prime."""
    cur = u
    for _ in range(ell):
        cur = Subspace(d.field, d.nrows, [d.apply(v) for v in cur.basis])
    return not u_prime.contains(cur)


def find_ell(inst: PoInstance):
    """Smallest j <= n with D^j(U) not inside U', plus bases of D^1..D^j.

    Returns (None, traces) when D^n(U) stays inside U'.
    """
    d, u, u_prime = inst.d, inst.u, inst.u_prime
    n = d.nrows
    if d.is_zero():
        return None, []
    traces = []
    power = d
    for j in range(1, n + 1):
        traces.append(power)
        if not u_prime.contains(power.image_of(u)):
            return j, traces
        if j < n:
            power = power.product(d)
    return None, traces


def helpful_subspaces(inst: PoInstance, ell: int, traces: list[MatSpace]) -> list[MatSpace]:
    """The spaces H_1..H_ell of elements that only help at one position.

    H_i is the solution set of the homogeneous system demanding that an
    element of D placed at any position j != i of a length-ell product
    still maps U into U'.
    """
    d, u, u_prime = inst.d, inst.u, inst.u_prime
    f = d.field
    n = d.nrows
    m = d.dim
    ident = Mat.identity(f, n)
    u_perp = u_prime.orthogonal()

    def basis_of_power(j: int) -> list[Mat]:
        # T_0 is the span of the identity so j = 1 and j = ell need no special case
        return [ident] if j == 0 else traces[j - 1].gens

    spaces = []
    for i in range(1, ell + 1):
        eq_rows = []
        for j in range(1, ell + 1):
            if j == i:
                continue
            rights = [z.apply(vec) for z in basis_of_power(j - 1) for vec in u.basis]
            for right in rights:
                mids = [g.apply(right) for g in d.gens]  # one column per coordinate
                for z in basis_of_power(ell - j):
                    lefts = [z.apply(mid) for mid in mids]
                    for v in u_perp.basis:
                        row = []
                        for left in lefts:
                            acc = f.zero
                            for a, b in zip(v, left):
                                acc = f.add(acc, f.mul(a, b))
                            row.append(acc)
                        eq_rows.append(row)
        if eq_rows:
            sols = kernel(Mat(f, eq_rows))
            mats = [d.element(coords) for coords in sols.basis]
        else:
            mats = list(d.gens)
        spaces.append(MatSpace(f, n, n, mats))
    return spaces


def solve_po(inst: PoInstance) -> PoAnswer:
    """Greedy construction of (X, ell) from the helpful subspaces.

    Fixes X_ell, then X_{ell-1}, ..., X_1 from the respective bases so the
    single product X_ell ... X_1 pulls U out of U'; the sum X_1 + ... + X_ell
    then has the same overflow at exponent ell.
    """
    d, u, u_prime = inst.d, inst.u, inst.u_prime
    ell, traces = find_ell(inst)
    if ell is None:
        return PoAnswer(found=False)
    helpers = helpful_subspaces(inst, ell, traces)
    if any(h.is_zero() for h in helpers):
        return PoAnswer(found=False)

    prefixes = [u]
    for h in helpers:
        prefixes.append(h.image_of(prefixes[-1]))
    if u_prime.contains(prefixes[ell]):
        return PoAnswer(found=False)

    f = d.field
    n = d.nrows
    suffix = Mat.identity(f, n)
    picks = []
    for i in range(ell, 0, -1):
        chosen = None
        for g in helpers[i - 1].gens:
            trial = suffix.matmul(g)
            moved = Subspace(f, n, [trial.apply(v) for v in prefixes[i - 1].basis])
            if not u_prime.contains(moved):
                chosen = g
                suffix = trial
                break
        if chosen is None:
            return PoAnswer(found=False)
        picks.append(chosen)

    total = Mat.zeros(f, n, n)
    for g in picks:
        total = total.add(g)
    coords = d.coordinates_of(total)
    assert coords is not None
    assert _power_escapes(total, ell, u, u_prime), "power overflow check failed"
    return PoAnswer(found=True, d=total, ell=ell, coefficients=coords)
