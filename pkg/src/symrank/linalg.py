"""Dense exact matrices and canonical subspace arithmetic.

Everything is plain Gaussian elimination over an exact field.  Subspace
bases are kept in reduced row echelon form, so subspace equality is a
syntactic check and every downstream algorithm is deterministic.
"""

from __future__ import annotations

from .errors import DimMismatch, NotSquare
from .fields import Field


class Mat:
    """Dense rows x cols matrix over a single field."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_rank")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimMismatch("ragged rows")
        self._rank = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return Mat(field, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return Mat(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_ints(field: Field, rows) -> "Mat":
        return Mat(field, [[field.from_int(v) for v in r] for r in rows])

    # -- basics -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.rows == other.rows)

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols} over {self.field.spec.kind})"

    def copy(self) -> "Mat":
        return Mat(self.field, self.rows)

    def entry_list(self) -> list:
        """Row-major flattening, used for independence tests on spaces."""
        return [e for r in self.rows for e in r]

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(e) for r in self.rows for e in r)

    def transpose(self) -> "Mat":
        return Mat(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                for j in range(self.ncols)])

    def add(self, other: "Mat") -> "Mat":
        self._check(other)
        f = self.field
        return Mat(f, [[f.add(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def sub(self, other: "Mat") -> "Mat":
        self._check(other)
        f = self.field
        return Mat(f, [[f.sub(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c) -> "Mat":
        f = self.field
        return Mat(f, [[f.mul(c, e) for e in r] for r in self.rows])

    def matmul(self, other: "Mat") -> "Mat":
        self.field.check(other.field)
        if self.ncols != other.nrows:
            raise DimMismatch(f"{self.ncols} vs {other.nrows}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        ot = other.transpose().rows
        out = []
        for r in self.rows:
            row = []
            for c in ot:
                acc = zero
                for a, b in zip(r, c):
                    if not f.is_zero(a) and not f.is_zero(b):
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(f, out)

    def apply(self, vec) -> list:
        """Matrix times a column vector (given as a flat sequence)."""
        if len(vec) != self.ncols:
            raise DimMismatch(f"{self.ncols} vs {len(vec)}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if not f.is_zero(a) and not f.is_zero(b):
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    def _check(self, other: "Mat") -> None:
        self.field.check(other.field)
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimMismatch("shape mismatch")

    # -- elimination --------------------------------------------------------

    def rank(self) -> int:
        if self._rank is None:
            self._rank = _forward_rank(self.field, [list(r) for r in self.rows])
        return self._rank

    def det(self):
        if self.nrows != self.ncols:
            raise NotSquare("determinant of a non-square matrix")
        f = self.field
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = f.one
        for col in range(n):
            piv = next((i for i in range(col, n) if not f.is_zero(rows[i][col])), None)
            if piv is None:
                return f.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = f.neg(det)
            det = f.mul(det, rows[col][col])
            inv = f.inv(rows[col][col])
            for i in range(col + 1, n):
                c = rows[i][col]
                if f.is_zero(c):
                    continue
                factor = f.mul(c, inv)
                rows[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(rows[i], rows[col])]
        return det

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise NotSquare("inverse of a non-square matrix")
        n = self.nrows
        f = self.field
        aug = [list(r) + list(i) for r, i in zip(self.rows, Mat.identity(f, n).rows)]
        red, rank, _ = _rref_rows(f, aug)
        if rank < n:
            raise ZeroDivisionError("singular matrix")
        return Mat(f, [r[n:] for r in red])


def _forward_rank(f: Field, rows) -> int:
    """Rank by forward elimination only (no normalization)."""
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if not f.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = f.inv(rows[rank][col])
        prow = rows[rank]
        for i in range(rank + 1, nrows):
            c = rows[i][col]
            if f.is_zero(c):
                continue
            factor = f.mul(c, inv)
            ri = rows[i]
            for j in range(col, ncols):
                ri[j] = f.sub(ri[j], f.mul(factor, prow[j]))
        rank += 1
        if rank == nrows:
            break
    return rank


def _rref_rows(f: Field, rows):
    """In-place RREF; returns (rows, rank, pivot_cols).

    Pivot selection is first-nonzero-in-column, so the result is unique and
    reproducible.  Entries of exact fields normalize themselves (rationals
    stay in lowest terms), which keeps intermediate sizes bounded.
    """
    if not rows:
        return rows, 0, []
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if not f.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = f.inv(rows[rank][col])
        rows[rank] = [f.mul(inv, e) for e in rows[rank]]
        prow = rows[rank]
        for i in range(nrows):
            if i == rank:
                continue
            c = rows[i][col]
            if f.is_zero(c):
                continue
            ri = rows[i]
            rows[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(ri, prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rows, rank, pivots


def rref(m: Mat):
    """Reduced row echelon form and rank."""
    rows, rank, _ = _rref_rows(m.field, [list(r) for r in m.rows])
    return Mat(m.field, rows), rank


class Subspace:
    """Subspace of F^ambient_dim with a canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, rows=(), _canonical=False):
        self.field = field
        self.ambient_dim = ambient_dim
        if _canonical:
            self.basis = [list(r) for r in rows]
            self.pivots = [next(j for j, e in enumerate(r) if not field.is_zero(e))
                           for r in self.basis]
            return
        mat_rows = [list(r) for r in rows]
        for r in mat_rows:
            if len(r) != ambient_dim:
                raise DimMismatch("vector length vs ambient dimension")
        red, rank, pivots = _rref_rows(field, mat_rows)
        self.basis = red[:rank]
        self.pivots = pivots

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, (), _canonical=True)

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim,
                        Mat.identity(field, ambient_dim).rows, _canonical=True)

    @staticmethod
    def span(field: Field, ambient_dim: int, vectors) -> "Subspace":
        return Subspace(field, ambient_dim, vectors)

    # -- basics -------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient_dim})"

    def basis_matrix(self) -> Mat:
        return Mat(self.field, self.basis) if self.basis else Mat.zeros(
            self.field, 0, self.ambient_dim)

    def contains_vector(self, vec) -> bool:
        if len(vec) != self.ambient_dim:
            raise DimMismatch("vector length vs ambient dimension")
        f = self.field
        v = list(vec)
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return all(f.is_zero(e) for e in v)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(r) for r in other.basis)

    def _check(self, other: "Subspace") -> None:
        self.field.check(other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimMismatch("ambient dimensions differ")

    # -- lattice operations -------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def orthogonal(self) -> "Subspace":
        """Orthogonal complement for the standard bilinear form."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient_dim)
        return kernel(self.basis_matrix())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return self.orthogonal().sum(other.orthogonal()).orthogonal()

    def complement(self) -> "Subspace":
        """Coordinate complement: unit vectors at the non-pivot columns."""
        f = self.field
        piv = set(self.pivots)
        rows = []
        for j in range(self.ambient_dim):
            if j not in piv:
                row = [f.zero] * self.ambient_dim
                row[j] = f.one
                rows.append(row)
        return Subspace(f, self.ambient_dim, rows, _canonical=True)

    def quotient_coords(self):
        """Surjective map F^n -> F^(n-dim) whose kernel is exactly this space."""
        comp = self.orthogonal()
        proj = Mat(self.field, comp.basis) if comp.basis else Mat.zeros(
            self.field, 0, self.ambient_dim)
        return proj, self.ambient_dim - self.dim


def kernel(m: Mat) -> Subspace:
    """Null space of m, a subspace of F^cols."""
    f = m.field
    rows, rank, pivots = _rref_rows(f, [list(r) for r in m.rows])
    piv_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in piv_set]
    basis = []
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for r, p in zip(rows[:rank], pivots):
            v[p] = f.neg(r[j])
        basis.append(v)
    return Subspace(f, m.ncols, basis)


def image(m: Mat) -> Subspace:
    """Column span of m, a subspace of F^rows."""
    return Subspace(m.field, m.nrows, m.transpose().rows)


def solve(a: Mat, targets: list) -> list:
    """Solve a.x = t for each column vector t in targets.

    Every target must lie in the column span of a; the returned solution is
    the one with zeros at the free (non-pivot) coordinates.
    """
    f = a.field
    aug = [list(r) + [t[i] for t in targets] for i, r in enumerate(a.rows)]
    rows, rank, pivots = _rref_rows(f, aug)
    ncols = a.ncols
    sols = []
    for t_idx in range(len(targets)):
        x = [f.zero] * ncols
        for r, p in zip(rows[:rank], pivots):
            if p >= ncols:
                raise ValueError("inconsistent system")
            x[p] = r[ncols + t_idx]
        sols.append(x)
    # consistency: rows with pivot beyond ncols mean no solution
    for r, p in zip(rows[:rank], pivots):
        if p >= ncols:
            raise ValueError("inconsistent system")
    return sols


def pseudo_inverse(a: Mat) -> Mat:
    """Nonsingular A' inverting a between im(a) and a complement of ker(a).

    The complement of ker(a) and the complement of im(a) are the coordinate
    complements, and the leftover blocks are paired basis vector by basis
    vector in stored order, so the output is deterministic.
    """
    if a.nrows != a.ncols:
        raise NotSquare("pseudo-inverse needs a square matrix (pad first)")
    n = a.nrows
    f = a.field
    ker = kernel(a)
    im = image(a)
    dom_comp = ker.complement()           # U, complement of ker(a)
    im_comp = im.complement()             # U', complement of im(a)

    # restriction of a to U: columns of a at U's unit-vector coordinates
    u_cols = dom_comp.pivots
    a_res = Mat(f, [[a.rows[i][j] for j in u_cols] for i in range(n)])
    im_vecs = [list(r) for r in im.basis]
    xs = solve(a_res, im_vecs)            # coordinates w.r.t. U basis
    u_sols = []
    for x in xs:
        v = [f.zero] * n
        for coord, j in zip(x, u_cols):
            v[j] = coord
        u_sols.append(v)

    # basis change: columns [im basis | im complement] -> [solutions | ker basis]
    m_cols = im_vecs + [list(r) for r in im_comp.basis]
    n_cols = u_sols + [list(r) for r in ker.basis]
    m_mat = Mat(f, m_cols).transpose()
    n_mat = Mat(f, n_cols).transpose() if n_cols else Mat.zeros(f, n, 0)
    return n_mat.matmul(m_mat.inverse())
