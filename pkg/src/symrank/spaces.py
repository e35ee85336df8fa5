"""Matrix spaces and their actions on subspaces.

Convention fixed once for the whole package: matrices act on the left on
column vectors, so a space of n x n' matrices maps F^n' into F^n.
"""

from __future__ import annotations

from .errors import DimMismatch, IdentityMissing, NotSquare
from .fields import Field
from .linalg import Mat, Subspace, _rref_rows


class MatSpace:
    """Linear span of matrices, stored as a linearly independent basis."""

    __slots__ = ("field", "nrows", "ncols", "gens")

    def __init__(self, field: Field, nrows: int, ncols: int, gens):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.gens = list(gens)
        for g in self.gens:
            field.check(g.field)
            if g.nrows != nrows or g.ncols != ncols:
                raise DimMismatch("generator shape mismatch")

    @staticmethod
    def from_spanning(mats: list[Mat], field: Field | None = None,
                      nrows: int | None = None, ncols: int | None = None) -> "MatSpace":
        """Select a maximal independent subset of the input, in input order."""
        if not mats and (field is None or nrows is None or ncols is None):
            raise DimMismatch("empty spanning set needs explicit dimensions")
        if mats:
            field, nrows, ncols = mats[0].field, mats[0].nrows, mats[0].ncols
        f = field
        chosen = []
        echelon: list[tuple[int, list]] = []  # (pivot index, normalized row)
        for m in mats:
            v = m.entry_list()
            for piv, row in echelon:
                c = v[piv]
                if not f.is_zero(c):
                    v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
            piv = next((j for j, e in enumerate(v) if not f.is_zero(e)), None)
            if piv is not None:
                inv = f.inv(v[piv])
                echelon.append((piv, [f.mul(inv, e) for e in v]))
                chosen.append(m)
        return MatSpace(f, nrows, ncols, chosen)

    # -- basics -------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.gens)

    def __repr__(self):
        return f"MatSpace(dim {self.dim} of {self.nrows}x{self.ncols})"

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, m: Mat) -> bool:
        """Membership of a single matrix in the span."""
        if m.nrows != self.nrows or m.ncols != self.ncols:
            raise DimMismatch("shape mismatch")
        vecs = [g.entry_list() for g in self.gens] + [m.entry_list()]
        _, rank, _ = _rref_rows(self.field, vecs)
        return rank == self.dim

    def coordinates_of(self, m: Mat) -> list | None:
        """Expansion of m in the stored basis, or None if m is outside."""
        if not self.gens:
            return [] if m.is_zero() else None
        f = self.field
        cols = [g.entry_list() for g in self.gens]
        target = m.entry_list()
        from .linalg import solve
        a = Mat(f, cols).transpose()
        try:
            return solve(a, [target])[0]
        except ValueError:
            return None

    def element(self, coeffs) -> Mat:
        """Linear combination of the basis with the given coefficients."""
        if len(coeffs) != self.dim:
            raise DimMismatch("coefficient count vs basis size")
        out = Mat.zeros(self.field, self.nrows, self.ncols)
        for c, g in zip(coeffs, self.gens):
            if not self.field.is_zero(c):
                out = out.add(g.scale(c))
        return out

    def transpose_space(self) -> "MatSpace":
        return MatSpace(self.field, self.ncols, self.nrows,
                        [g.transpose() for g in self.gens])

    # -- actions on subspaces ----------------------------------------------

    def image_of(self, u: Subspace) -> Subspace:
        """Span of B(u) over all generators B and basis vectors u."""
        self.field.check(u.field)
        if u.ambient_dim != self.ncols:
            raise DimMismatch(f"subspace lives in F^{u.ambient_dim}, "
                              f"matrices act on F^{self.ncols}")
        vecs = [g.apply(v) for g in self.gens for v in u.basis]
        return Subspace(self.field, self.nrows, vecs)

    def preimage_of(self, w: Subspace) -> Subspace:
        """Largest T with B(T) <= w for every generator B.

        Computed by duality through the transpose space, which reuses
        image_of instead of stacking linear systems.
        """
        self.field.check(w.field)
        if w.ambient_dim != self.nrows:
            raise DimMismatch(f"subspace lives in F^{w.ambient_dim}, "
                              f"matrices map into F^{self.nrows}")
        if not self.gens:
            return Subspace.full(self.field, self.ncols)
        return self.transpose_space().image_of(w.orthogonal()).orthogonal()

    # -- products and algebras ----------------------------------------------

    def product(self, other: "MatSpace") -> "MatSpace":
        self.field.check(other.field)
        if self.ncols != other.nrows:
            raise DimMismatch("inner dimensions differ")
        prods = [a.matmul(b) for a in self.gens for b in other.gens]
        return MatSpace.from_spanning(prods, self.field, self.nrows, other.ncols)

    def power(self, j: int) -> "MatSpace":
        if self.nrows != self.ncols:
            raise NotSquare("power of a non-square space")
        if j < 1:
            raise ValueError("power exponent must be >= 1")
        acc = self
        for _ in range(j - 1):
            acc = acc.product(self)
        return acc

    def commutator_space(self) -> "MatSpace":
        """Span of [B_i, B_j] over basis pairs (bilinearity suffices)."""
        if self.nrows != self.ncols:
            raise NotSquare("commutators of a non-square space")
        comms = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a, b = self.gens[i], self.gens[j]
                comms.append(a.matmul(b).sub(b.matmul(a)))
        return MatSpace.from_spanning(comms, self.field, self.nrows, self.ncols)

    def generated_algebra(self) -> "MatSpace":
        """Multiplicative closure of the span; needs the identity inside."""
        if self.nrows != self.ncols:
            raise NotSquare("algebra of a non-square space")
        if not self.contains(Mat.identity(self.field, self.nrows)):
            raise IdentityMissing("generated_algebra needs the identity in the space")
        d = self
        while True:
            grown = MatSpace.from_spanning(
                d.gens + [a.matmul(b) for a in d.gens for b in self.gens],
                self.field, self.nrows, self.ncols)
            if grown.dim == d.dim:
                return d
            d = grown
