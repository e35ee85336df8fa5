"""Generalized Wong sequences and the singularity-witness test.

The first and second Wong sequences of a pair (a, space) iterate preimages
of images (resp. images of preimages); their limits characterize the
largest/smallest fixed subspaces.  The witness test runs the second
sequence through a pseudo-inverse of a, which keeps rational entry sizes
bounded and stops as soon as a term leaves im(a).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimMismatch, NotMember, NotSquare
from .linalg import Mat, Subspace, image, kernel, pseudo_inverse
from .spaces import MatSpace


def mat_image_of(a: Mat, u: Subspace) -> Subspace:
    """Image of a subspace under a single matrix."""
    if u.ambient_dim != a.ncols:
        raise DimMismatch("subspace vs matrix domain")
    return Subspace(a.field, a.nrows, [a.apply(v) for v in u.basis])


def mat_preimage_of(a: Mat, w: Subspace) -> Subspace:
    """Full preimage of a subspace under a single matrix, via duality."""
    if w.ambient_dim != a.nrows:
        raise DimMismatch("subspace vs matrix codomain")
    return mat_image_of(a.transpose(), w.orthogonal()).orthogonal()


@dataclass
class WongTrace:
    kind: str                  # "first" | "second"
    terms: list[Subspace]      # strictly monotone, last term is the limit
    limit: Subspace


def first_wong(a: Mat, sp: MatSpace) -> WongTrace:
    """U_0 = V, U_{i+1} = space^{-1}(a(U_i)); stabilizes within n steps."""
    if a.nrows != sp.nrows or a.ncols != sp.ncols:
        raise DimMismatch("anchor matrix vs space dimensions")
    u = Subspace.full(a.field, a.ncols)
    terms = [u]
    while True:
        nxt = sp.preimage_of(mat_image_of(a, u))
        if nxt == u:
            return WongTrace("first", terms, u)
        terms.append(nxt)
        u = nxt


def second_wong(a: Mat, sp: MatSpace) -> WongTrace:
    """W_0 = 0, W_{i+1} = space(a^{-1}(W_i)); stabilizes within n' steps."""
    if a.nrows != sp.nrows or a.ncols != sp.ncols:
        raise DimMismatch("anchor matrix vs space dimensions")
    w = Subspace.zero(a.field, a.nrows)
    terms = [w]
    while True:
        nxt = sp.image_of(mat_preimage_of(a, w))
        if nxt == w:
            return WongTrace("second", terms, w)
        terms.append(nxt)
        w = nxt


@dataclass
class WitnessReport:
    exists: bool
    witness: Optional[Subspace] = None
    c: int = 0
    stopped_at: Optional[int] = None


def verify_witness(sp: MatSpace, u: Subspace, c: int) -> bool:
    """The universal certificate check: dim(u) - dim(space(u)) >= c."""
    return u.dim - sp.image_of(u).dim >= c


def witness_test(a: Mat, sp: MatSpace) -> WitnessReport:
    """Decide whether a cork(a)-singularity witness exists, via a's pseudo-inverse.

    Iterates W_{i+1} = (space . A')(W_i) from W_1 = (space . A')(ker(a A')),
    which agrees with the definitional second Wong sequence as long as the
    terms stay inside im(a).  On stabilization, a is of maximum rank and the
    full preimage a^{-1}(W*) = A'(W*) + ker(a) is a cork-witness.
    """
    if a.nrows != a.ncols:
        raise NotSquare("witness test needs a square space (pad first)")
    if not sp.contains(a):
        raise NotMember("anchor matrix is not in the space")
    n = a.nrows
    a_pi = pseudo_inverse(a)
    ba = MatSpace(sp.field, n, n, [b.matmul(a_pi) for b in sp.gens])
    im_a = image(a)
    cork = n - a.rank()

    w = ba.image_of(kernel(a.matmul(a_pi)))
    i = 1
    while True:
        if not im_a.contains(w):
            return WitnessReport(exists=False, stopped_at=i)
        nxt = ba.image_of(w)
        if nxt == w:
            break
        w = nxt
        i += 1
    witness = mat_image_of(a_pi, w).sum(kernel(a))
    report = WitnessReport(exists=True, witness=witness, c=cork)
    assert verify_witness(sp, witness, cork), "witness failed its own check"
    return report
