"""Exact linear algebra over the cyclotomic scalars.

Vectors are dense lists of Scalar, matrices are lists of rows.  Subspaces
are kept in reduced row echelon form, which is unique for a given subspace
and a fixed ambient basis, so subspace equality is row-by-row comparison.

The two workhorses are KernelSolver (an incremental nullspace: feed sparse
constraint rows, the candidate space shrinks as rows arrive) and
SpanBuilder (an incremental row space used for algebra-closure loops).
Both avoid touching zero entries, which is what makes the structure
constant tensors of this package tractable in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .scalars import Scalar, common_order

Vec = list
Mat = list


# -- vector helpers -------------------------------------------------------


def vzero(n: int, order: int = 1) -> Vec:
    z = Scalar.zero(order)
    return [z] * n


def unit_vec(n: int, i: int, order: int = 1) -> Vec:
    v = vzero(n, order)
    v[i] = Scalar.one(order)
    return v


def vadd(a: Vec, b: Vec) -> Vec:
    return [x + y for x, y in zip(a, b)]


def vsub(a: Vec, b: Vec) -> Vec:
    return [x - y for x, y in zip(a, b)]


def vscale(c: Scalar, a: Vec) -> Vec:
    return [c * x for x in a]


def vec_is_zero(a: Vec) -> bool:
    return not any(a)


def vec_conj(a: Vec) -> Vec:
    return [x.conj() for x in a]


def dot(a: Vec, b: Vec) -> Scalar:
    tot = Scalar.zero(a[0].order if a else 1)
    for x, y in zip(a, b):
        if x and y:
            tot = tot + x * y
    return tot


def vec_order(a: Vec) -> int:
    return common_order(*(x.order for x in a)) if a else 1


def lift_vec(a: Vec, order: int) -> Vec:
    return [x.lift(order) for x in a]


# -- matrix helpers -------------------------------------------------------


def mat_zero(m: int, n: int, order: int = 1) -> Mat:
    return [vzero(n, order) for _ in range(m)]


def identity_matrix(n: int, order: int = 1) -> Mat:
    return [unit_vec(n, i, order) for i in range(n)]


def mat_vec(A: Mat, x: Vec) -> Vec:
    """A applied to a coordinate column: (A x)_i = sum_j A[i][j] x[j]."""
    n = len(A[0]) if A else 0
    out = []
    for row in A:
        tot = Scalar.zero(x[0].order if x else 1)
        for j in range(n):
            r = row[j]
            if r and x[j]:
                tot = tot + r * x[j]
        out.append(tot)
    return out


def mat_mul(A: Mat, B: Mat) -> Mat:
    m, k, n = len(A), len(B), len(B[0]) if B else 0
    order = 1
    zero = Scalar.zero(order)
    out = [[zero] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for p in range(k):
            a = Ai[p]
            if a:
                Bp = B[p]
                for j in range(n):
                    b = Bp[j]
                    if b:
                        Oi[j] = Oi[j] + a * b
    return out


def mat_add(A: Mat, B: Mat) -> Mat:
    return [vadd(r, s) for r, s in zip(A, B)]


def mat_sub(A: Mat, B: Mat) -> Mat:
    return [vsub(r, s) for r, s in zip(A, B)]


def mat_scale(c: Scalar, A: Mat) -> Mat:
    return [vscale(c, r) for r in A]


def transpose(A: Mat) -> Mat:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_conj(A: Mat) -> Mat:
    return [vec_conj(r) for r in A]


def mat_eq(A: Mat, B: Mat) -> bool:
    if len(A) != len(B):
        return False
    return all(x == y for r, s in zip(A, B) for x, y in zip(r, s))


def mat_is_zero(A: Mat) -> bool:
    return all(vec_is_zero(r) for r in A)


def mat_inverse(A: Mat) -> Mat:
    """Exact inverse of a square matrix; raises if singular."""
    n = len(A)
    aug = [list(A[i]) + unit_vec(n, i) for i in range(n)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise InputError("matrix is singular")
    return [row[n:] for row in rows]


def kron(A: Mat, B: Mat) -> Mat:
    ma, na = len(A), len(A[0]) if A else 0
    mb, nb = len(B), len(B[0]) if B else 0
    out = []
    for i in range(ma):
        for k in range(mb):
            row = []
            for j in range(na):
                a = A[i][j]
                if a:
                    row.extend(a * b for b in B[k])
                else:
                    row.extend(vzero(nb))
            out.append(row)
    return out


def kron_vec(a: Vec, b: Vec) -> Vec:
    out = []
    for x in a:
        if x:
            out.extend(x * y for y in b)
        else:
            out.extend(vzero(len(b)))
    return out


# -- echelon forms ---------------------------------------------------------


def rref(rows: list[Vec]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns.

    Pivot entries are normalized to 1 and cleared above and below, so the
    output is the canonical form of the row space.
    """
    rows = [list(r) for r in rows if not vec_is_zero(r)]
    if not rows:
        return [], []
    n = len(rows[0])
    out: list[Vec] = []
    pivots: list[int] = []
    for row in rows:
        row = _reduce_against(row, out, pivots)
        lead = _leading_index(row)
        if lead is None:
            continue
        inv = row[lead].inverse()
        row = [x * inv if x else x for x in row]
        # insert keeping pivot columns increasing
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        out.insert(pos, row)
        pivots.insert(pos, lead)
    # clear above pivots
    for i in range(len(out) - 1, -1, -1):
        p = pivots[i]
        for j in range(i):
            c = out[j][p]
            if c:
                out[j] = [x - c * y if y else x for x, y in zip(out[j], out[i])]
    return out, pivots


def _leading_index(row: Vec):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def _reduce_against(row: Vec, basis: list[Vec], pivots: list[int]) -> Vec:
    row = list(row)
    for b, p in zip(basis, pivots):
        c = row[p]
        if c:
            row = [x - c * y if y else x for x, y in zip(row, b)]
    return row


# -- subspaces --------------------------------------------------------------


@dataclass
class Subspace:
    """A subspace of coordinate space, basis held in canonical RREF."""

    ambient_dim: int
    basis: list[Vec]
    pivots: list[int]

    @staticmethod
    def from_vectors(vectors, ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise InputError(
                    f"vector length {len(v)} in ambient of dim {ambient_dim}"
                )
        rows, pivots = rref(vectors)
        return Subspace(ambient_dim, rows, pivots)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [], [])

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.from_vectors(identity_matrix(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_dim:
            raise InputError("ambient dimension mismatch")
        return vec_is_zero(_reduce_against(v, self.basis, self.pivots))

    def residue(self, v: Vec) -> Vec:
        return _reduce_against(v, self.basis, self.pivots)

    def coordinates(self, v: Vec) -> Vec:
        """Coefficients of v on self.basis; raises if v is outside."""
        row = list(v)
        coeffs = []
        for b, p in zip(self.basis, self.pivots):
            c = row[p]
            coeffs.append(c)
            if c:
                row = [x - c * y if y else x for x, y in zip(row, b)]
        if not vec_is_zero(row):
            raise InputError("vector not in subspace")
        return coeffs

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(
            x == y
            for r, s in zip(self.basis, other.basis)
            for x, y in zip(r, s)
        )

    def add(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.basis + other.basis, self.ambient_dim)

    def annihilator_rows(self) -> list[dict]:
        """Sparse rows r with r.x = 0 exactly for x in the subspace."""
        one = Scalar.one()
        rows = []
        pivset = dict(zip(self.pivots, self.basis))
        for c in range(self.ambient_dim):
            if c in pivset:
                continue
            row = {c: one}
            for b, p in zip(self.basis, self.pivots):
                if b[c]:
                    row[p] = -b[c]
            rows.append(row)
        return rows

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        solver = KernelSolver(self.ambient_dim)
        for row in self.annihilator_rows():
            solver.add_row(row)
        for row in other.annihilator_rows():
            solver.add_row(row)
        return solver.subspace()

    def image(self, matrix: Mat) -> "Subspace":
        """Image of the subspace under a linear map given by a matrix."""
        return Subspace.from_vectors(
            [mat_vec(matrix, v) for v in self.basis], len(matrix)
        )

    def image_conjlinear(self, fn) -> "Subspace":
        # The image of a subspace under a conjugate-linear bijection is the
        # span of the images of any basis.
        return Subspace.from_vectors([fn(v) for v in self.basis],
                                     self.ambient_dim)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise InputError("ambient dimension mismatch")

    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [[x.to_json() for x in row] for row in self.basis],
        }


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.add(b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


# -- incremental solvers -----------------------------------------------------


class KernelSolver:
    """Incrementally computed nullspace {x : r.x = 0 for all added rows r}.

    Rows are sparse dicts col -> Scalar.  The running basis shrinks by one
    for every independent row, so feeding many redundant constraints is
    cheap once the kernel has stabilized.
    """

    def __init__(self, n: int, order: int = 1):
        self.n = n
        self.order = order
        self.vectors: list[Vec] = identity_matrix(n, order)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def add_row(self, row: dict) -> bool:
        """Impose one constraint; returns True if the kernel shrank."""
        if not self.vectors:
            return False
        items = [(j, c) for j, c in row.items() if c]
        if not items:
            return False
        scores = []
        for v in self.vectors:
            s = None
            for j, c in items:
                x = v[j]
                if x:
                    s = c * x if s is None else s + c * x
            scores.append(s if (s is not None and s) else None)
        pivot = None
        for i, s in enumerate(scores):
            if s is not None:
                pivot = i
                break
        if pivot is None:
            return False
        vp = self.vectors.pop(pivot)
        sp = scores.pop(pivot)
        spinv = sp.inverse()
        for i, s in enumerate(scores):
            if s is not None:
                c = s * spinv
                vi = self.vectors[i]
                self.vectors[i] = [
                    x - c * y if y else x for x, y in zip(vi, vp)
                ]
        return True

    def add_dense_row(self, row: Vec) -> bool:
        return self.add_row({j: c for j, c in enumerate(row) if c})

    def subspace(self) -> Subspace:
        return Subspace.from_vectors(self.vectors, self.n)


class SpanBuilder:
    """Incrementally built row space with fast membership testing."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[Vec] = []
        self.leads: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec) -> Vec:
        v = list(v)
        for row, lead in zip(self.rows, self.leads):
            c = v[lead]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v: Vec) -> bool:
        return vec_is_zero(self._reduce(v))

    def insert(self, v: Vec) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        v = self._reduce(v)
        lead = _leading_index(v)
        if lead is None:
            return False
        inv = v[lead].inverse()
        v = [x * inv if x else x for x in v]
        pos = 0
        while pos < len(self.leads) and self.leads[pos] < lead:
            pos += 1
        self.rows.insert(pos, v)
        self.leads.insert(pos, lead)
        return True

    def subspace(self) -> Subspace:
        rows, pivots = rref(self.rows)
        return Subspace(self.n, rows, pivots)


# -- linear systems ----------------------------------------------------------


@dataclass
class AffineSolution:
    """Solution set of A x = b: particular point plus homogeneous kernel."""

    particular: Vec
    kernel: Subspace

    @property
    def is_unique(self) -> bool:
        return self.kernel.dim == 0


def solve_linear(A: Mat, b: Vec):
    """Exact solution set of A x = b.

    Returns an AffineSolution, or the string "inconsistent" when the system
    has no solution.
    """
    m = len(A)
    if len(b) != m:
        raise InputError("right-hand side length mismatch")
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    rows, pivots = rref(aug)
    if n in pivots:
        return "inconsistent"
    particular = vzero(n)
    for row, p in zip(rows, pivots):
        particular[p] = row[n]
    solver = KernelSolver(n)
    for row, p in zip(rows, pivots):
        solver.add_row({j: c for j, c in enumerate(row[:n]) if c})
    return AffineSolution(particular, solver.subspace())


def kernel_of_matrix(A: Mat) -> Subspace:
    n = len(A[0]) if A else 0
    solver = KernelSolver(n)
    for row in A:
        solver.add_dense_row(row)
    return solver.subspace()


# -- operator algebra helpers -----------------------------------------------


def flatten_matrix(X: Mat) -> Vec:
    return [x for row in X for x in row]


def unflatten_matrix(v: Vec, n: int) -> Mat:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def matrix_commutant(gens: list[Mat], n: int) -> list[Mat]:
    """Basis of {X in End(k^n) : X A = A X for every generator A}."""
    solver = KernelSolver(n * n)
    for A in gens:
        for i in range(n):
            for j in range(n):
                row: dict[int, Scalar] = {}
                for k in range(n):
                    a = A[k][j]
                    if a:
                        key = i * n + k
                        row[key] = row.get(key, Scalar.zero()) + a
                    a = A[i][k]
                    if a:
                        key = k * n + j
                        row[key] = row.get(key, Scalar.zero()) - a
                if row:
                    solver.add_row(row)
    sub = solver.subspace()
    return [unflatten_matrix(v, n) for v in sub.basis]


def operator_algebra_span(gens: list[Mat], n: int,
                          with_identity: bool = True) -> Subspace:
    """Span of the unital algebra of operators generated by gens.

    Worklist closure: multiply newly found basis elements against the whole
    current basis until the span stops growing; terminates because the
    dimension is bounded by n^2.
    """
    builder = SpanBuilder(n * n)
    members: list[Mat] = []

    def push(X: Mat) -> bool:
        if builder.insert(flatten_matrix(X)):
            members.append(X)
            return True
        return False

    if with_identity:
        push(identity_matrix(n))
    fresh = [X for X in gens if push(X)]
    while fresh:
        batch, fresh = fresh, []
        for X in batch:
            for Y in list(members):
                for P in (mat_mul(X, Y), mat_mul(Y, X)):
                    if push(P):
                        fresh.append(P)
    return builder.subspace()
