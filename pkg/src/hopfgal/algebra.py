"""Finite-dimensional unital *-algebras given by structure constants.

A StarAlgebra stores the multiplication as a rank-3 tensor in sparse form
(mult[i][j] maps an output index k to the coefficient of e_k in e_i e_j),
the unit as a coordinate vector, the involution as a matrix St with
(sum x_i e_i)* = sum_{i,j} conj(x_i) St[i][j] e_j, and optionally a state.

Subalgebras are Subspaces of the ambient coordinate space; a reify helper
extracts standalone structure constants when an honest algebra object is
needed (commutant and invariant computations live most naturally in the
ambient coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .linalg import (
    KernelSolver,
    Mat,
    SpanBuilder,
    Subspace,
    Vec,
    mat_inverse,
    mat_mul,
    mat_vec,
    rref,
    unit_vec,
    vec_is_zero,
    vscale,
    vsub,
    vzero,
)
from .report import Report
from .scalars import Scalar, common_order

POSITIVITY_TOL = 1e-9


def sparse_tensor(dense, order: int = 1):
    """Nested-list rank-3 tensor -> list[list[dict[int, Scalar]]]."""
    out = []
    for plane in dense:
        row = []
        for line in plane:
            entry = {}
            for k, v in enumerate(line):
                sc = v if isinstance(v, Scalar) else Scalar.coerce(v, order)
                if sc:
                    entry[k] = sc
            row.append(entry)
        out.append(row)
    return out


def dense_tensor(sparse, dim: int):
    zero = Scalar.zero()
    return [
        [[line.get(k, zero) for k in range(dim)] for line in plane]
        for plane in sparse
    ]


@dataclass
class AlgebraState:
    """A normalized functional with its verdict flags."""

    functional: Vec
    tracial: bool = False
    hermitian: bool = False
    faithful: bool = False          # exact: Gram matrix nonsingular
    positive: bool | None = None    # numerical verdict at the embedding


class StarAlgebra:
    """Associative unital *-algebra by structure constants."""

    def __init__(self, dim: int, mult, unit: Vec, star: Mat,
                 state: Vec | None = None, name: str = ""):
        self.dim = dim
        self.mult = mult            # list[list[dict[int, Scalar]]]
        self.unit = unit
        self.star = star
        self.state = state
        self.name = name
        if len(mult) != dim or any(len(r) != dim for r in mult):
            raise InputError("multiplication tensor shape mismatch")
        if len(unit) != dim or len(star) != dim:
            raise InputError("unit or star shape mismatch")
        if state is not None and len(state) != dim:
            raise InputError("state shape mismatch")

    # -- basic operations -------------------------------------------------

    def order(self) -> int:
        orders = [x.order for x in self.unit]
        for plane in self.mult:
            for line in plane:
                orders.extend(v.order for v in line.values())
        return common_order(*orders) if orders else 1

    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult[i][j]

    def mul_vec(self, x: Vec, y: Vec) -> Vec:
        out = vzero(self.dim)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, m in row[j].items():
                    out[k] = out[k] + c * m
        return out

    def star_vec(self, x: Vec) -> Vec:
        out = vzero(self.dim)
        for i, xi in enumerate(x):
            if xi:
                ci = xi.conj()
                row = self.star[i]
                for j in range(self.dim):
                    if row[j]:
                        out[j] = out[j] + ci * row[j]
        return out

    def left_mult_matrix(self, x: Vec) -> Mat:
        """Matrix of y -> x y on coordinates."""
        cols = [self.mul_vec(x, unit_vec(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def right_mult_matrix(self, x: Vec) -> Mat:
        cols = [self.mul_vec(unit_vec(self.dim, j), x) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def apply_state(self, x: Vec) -> Scalar:
        if self.state is None:
            raise InputError("algebra carries no state")
        tot = Scalar.zero()
        for xi, ti in zip(x, self.state):
            if xi and ti:
                tot = tot + xi * ti
        return tot

    def basis_vec(self, i: int) -> Vec:
        return unit_vec(self.dim, i)

    def full_subspace(self) -> Subspace:
        return Subspace.full(self.dim)

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i):
                if self.mult[i][j] != self.mult[j][i]:
                    return False
        return True

    def to_json(self):
        return {
            "dim": self.dim,
            "mult": [
                [[v.to_json() for v in line]
                 for line in plane]
                for plane in dense_tensor(self.mult, self.dim)
            ],
            "unit": [x.to_json() for x in self.unit],
            "star": [[x.to_json() for x in row] for row in self.star],
            "state": None if self.state is None
            else [x.to_json() for x in self.state],
        }


# -- state analysis ----------------------------------------------------------


def gram_matrix(A: StarAlgebra, functional: Vec | None = None) -> Mat:
    """G[i][j] = tau(e_j^* e_i) for the given functional (default: state)."""
    tau = functional if functional is not None else A.state
    if tau is None:
        raise InputError("no state supplied")
    n = A.dim
    star_rows = [A.star_vec(unit_vec(n, j)) for j in range(n)]
    G = []
    for i in range(n):
        row = []
        ei = unit_vec(n, i)
        for j in range(n):
            prod = A.mul_vec(star_rows[j], ei)
            tot = Scalar.zero()
            for k, v in enumerate(prod):
                if v and tau[k]:
                    tot = tot + v * tau[k]
            row.append(tot)
        G.append(row)
    return G


def is_nonsingular(G: Mat) -> bool:
    rows, pivots = rref(G)
    return len(pivots) == len(G)


def numerically_positive(G: Mat, tol: float = POSITIVITY_TOL) -> bool:
    """Positivity of a Hermitian Gram matrix at the float embedding.

    This is the one deliberately non-exact verdict in the package.
    """
    M = np.array([[x.embed() for x in row] for row in G], dtype=complex)
    M = (M + M.conj().T) / 2
    eigs = np.linalg.eigvalsh(M)
    return bool(eigs.min() > -tol)


def analyze_state(A: StarAlgebra, functional: Vec | None = None) -> AlgebraState:
    tau = functional if functional is not None else A.state
    if tau is None:
        raise InputError("no state supplied")
    n = A.dim
    herm = True
    for i in range(n):
        st = A.star_vec(unit_vec(n, i))
        val = Scalar.zero()
        for k, v in enumerate(st):
            if v and tau[k]:
                val = val + v * tau[k]
        if val != tau[i].conj():
            herm = False
            break
    tracial = True
    for i in range(n):
        for j in range(i + 1):
            a = _apply(tau, A.mult[i][j])
            b = _apply(tau, A.mult[j][i])
            if a != b:
                tracial = False
                break
        if not tracial:
            break
    G = gram_matrix(A, tau)
    return AlgebraState(
        functional=tau,
        tracial=tracial,
        hermitian=herm,
        faithful=is_nonsingular(G),
        positive=numerically_positive(G),
    )


def _apply(tau: Vec, sparse: dict) -> Scalar:
    tot = Scalar.zero()
    for k, v in sparse.items():
        if tau[k]:
            tot = tot + v * tau[k]
    return tot


# -- validation ---------------------------------------------------------------


def validate_algebra(A: StarAlgebra) -> Report:
    """Axiom-by-axiom check with a witness basis tuple on first failure."""
    rep = Report(f"algebra {A.name}".strip())
    n = A.dim

    witness = None
    for i in range(n):
        for j in range(n):
            ij = A.mult[i][j]
            for k in range(n):
                left = _compose(A, ij, k, right=True)
                right = _compose(A, A.mult[j][k], i, right=False)
                if left != right:
                    witness = (i, j, k)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("associativity", witness is None, witness)

    witness = None
    for j in range(n):
        ej = unit_vec(n, j)
        if A.mul_vec(A.unit, ej) != ej or A.mul_vec(ej, A.unit) != ej:
            witness = j
            break
    rep.add("unit", witness is None, witness)

    witness = None
    for i in range(n):
        twice = A.star_vec(A.star_vec(unit_vec(n, i)))
        if twice != unit_vec(n, i):
            witness = i
            break
    rep.add("star_involutive", witness is None, witness)

    witness = None
    for i in range(n):
        for j in range(n):
            lhs = A.star_vec([_get(A.mult[i][j], k, n) for k in range(n)])
            rhs = A.mul_vec(A.star_vec(unit_vec(n, j)),
                            A.star_vec(unit_vec(n, i)))
            if lhs != rhs:
                witness = (i, j)
                break
        if witness:
            break
    rep.add("star_antimultiplicative", witness is None, witness)

    if A.state is not None:
        st = analyze_state(A)
        rep.add("state_normalized", A.apply_state(A.unit) == Scalar.one())
        rep.add("state_hermitian", st.hermitian)
        rep.add("state_tracial", st.tracial)
        rep.add("state_faithful_exact", st.faithful)
        rep.add("state_positive_numerical", bool(st.positive),
                note=f"float verdict at tolerance {POSITIVITY_TOL}")
    return rep


def _get(sparse: dict, k: int, n: int) -> Scalar:
    return sparse.get(k, Scalar.zero())


def _compose(A: StarAlgebra, sparse: dict, idx: int, right: bool) -> Vec:
    # right=True: (sparse) * e_idx ; right=False: e_idx * (sparse)
    out = vzero(A.dim)
    for k, v in sparse.items():
        target = A.mult[k][idx] if right else A.mult[idx][k]
        for m, w in target.items():
            out[m] = out[m] + v * w
    return out


# -- subalgebra machinery -----------------------------------------------------


def relative_commutant(S: Subspace, B: StarAlgebra) -> Subspace:
    """{x in B : x s = s x for every s in a basis of S}, one exact nullspace."""
    if S.ambient_dim != B.dim:
        raise InputError("subspace does not live in the algebra")
    solver = KernelSolver(B.dim)
    for s in S.basis:
        L = B.left_mult_matrix(s)
        R = B.right_mult_matrix(s)
        for k in range(B.dim):
            row = {}
            for i in range(B.dim):
                c = R[k][i]
                d = L[k][i]
                if c or d:
                    val = c - d
                    if val:
                        row[i] = val
            if row:
                solver.add_row(row)
    return solver.subspace()


def center(B: StarAlgebra) -> Subspace:
    return relative_commutant(B.full_subspace(), B)


def generated_subalgebra(gens: list[Vec], B: StarAlgebra) -> Subspace:
    """Smallest unital, *-closed, multiplicatively closed subspace over gens."""
    builder = SpanBuilder(B.dim)
    members: list[Vec] = []

    def push(v: Vec) -> bool:
        if builder.insert(v):
            members.append(v)
            return True
        return False

    push(B.unit)
    fresh = []
    for g in gens:
        for v in (g, B.star_vec(g)):
            if push(v):
                fresh.append(v)
    while fresh:
        batch, fresh = fresh, []
        for x in batch:
            sx = B.star_vec(x)
            if push(sx):
                fresh.append(sx)
            for y in list(members):
                for p in (B.mul_vec(x, y), B.mul_vec(y, x)):
                    if push(p):
                        fresh.append(p)
    return builder.subspace()


def is_unital_star_subalgebra(S: Subspace, B: StarAlgebra) -> bool:
    if not S.contains(B.unit):
        return False
    for v in S.basis:
        if not S.contains(B.star_vec(v)):
            return False
    for v in S.basis:
        for w in S.basis:
            if not S.contains(B.mul_vec(v, w)):
                return False
    return True


def is_star_closed(S: Subspace, B: StarAlgebra) -> bool:
    return all(S.contains(B.star_vec(v)) for v in S.basis)


# -- conditional expectation --------------------------------------------------


def conditional_expectation(M: StarAlgebra, N: Subspace) -> Mat:
    """Matrix of the tau-preserving conditional expectation onto N.

    E is the orthogonal projection onto N for <x, y> = tau(y* x), restricted
    to M.  Requires a state on M; N must be a unital *-subalgebra and the
    Gram matrix of tau on N must be exactly nonsingular.
    """
    if M.state is None:
        raise InputError("conditional expectation needs a state")
    if not is_unital_star_subalgebra(N, M):
        raise InputError("not a subalgebra")
    basis = N.basis
    k = len(basis)
    stars = [M.star_vec(b) for b in basis]
    gram = []
    for i in range(k):
        row = []
        for j in range(k):
            row.append(M.apply_state(M.mul_vec(stars[j], basis[i])))
        gram.append(row)
    try:
        gram_inv = mat_inverse([[gram[j][i] for i in range(k)]
                                for j in range(k)])
    except InputError as e:
        raise InputError("degenerate form") from e
    # E(x) = sum_i c_i b_i with Gram c = (<x, b_i>)_i
    cols = []
    for x_idx in range(M.dim):
        x = unit_vec(M.dim, x_idx)
        rhs = [M.apply_state(M.mul_vec(stars[i], x)) for i in range(k)]
        coeffs = mat_vec(gram_inv, rhs)
        col = vzero(M.dim)
        for c, b in zip(coeffs, basis):
            if c:
                col = [u + c * w for u, w in zip(col, b)]
        cols.append(col)
    return [[cols[j][i] for j in range(M.dim)] for i in range(M.dim)]


def expectation_report(M: StarAlgebra, N: Subspace, E: Mat) -> Report:
    """Idempotence, bimodularity, trace and star preservation, exactly."""
    rep = Report("conditional expectation")
    n = M.dim
    rep.add("idempotent", mat_mul(E, E) == E)
    ok = True
    for b in N.basis:
        if not vec_is_zero(vsub(mat_vec(E, b), b)):
            ok = False
    rep.add("fixes_subalgebra", ok)
    ok = True
    for a in N.basis:
        for b in N.basis:
            for x_idx in range(n):
                x = unit_vec(n, x_idx)
                lhs = mat_vec(E, M.mul_vec(a, M.mul_vec(x, b)))
                rhs = M.mul_vec(a, M.mul_vec(mat_vec(E, x), b))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("bimodular", ok)
    ok = all(
        M.apply_state(mat_vec(E, unit_vec(n, i)))
        == M.apply_state(unit_vec(n, i))
        for i in range(n)
    )
    rep.add("state_preserving", ok)
    ok = all(
        mat_vec(E, M.star_vec(unit_vec(n, i)))
        == M.star_vec(mat_vec(E, unit_vec(n, i)))
        for i in range(n)
    )
    rep.add("star_preserving", ok)
    rep.add("unital", mat_vec(E, M.unit) == M.unit)
    return rep


# -- reification and canonical traces ------------------------------------------


def reify(B: StarAlgebra, S: Subspace, name: str = "") -> tuple[StarAlgebra, Mat]:
    """Standalone structure constants for a unital *-subalgebra.

    Returns (algebra on the subspace basis, inclusion matrix whose columns
    are the chosen basis vectors in ambient coordinates).
    """
    if not is_unital_star_subalgebra(S, B):
        raise InputError("not a subalgebra")
    k = S.dim
    mult = []
    for i in range(k):
        row = []
        for j in range(k):
            prod = B.mul_vec(S.basis[i], S.basis[j])
            coeffs = S.coordinates(prod)
            row.append({m: c for m, c in enumerate(coeffs) if c})
        mult.append(row)
    unit = S.coordinates(B.unit)
    star = [S.coordinates(B.star_vec(S.basis[i])) for i in range(k)]
    state = None
    if B.state is not None:
        state = [B.apply_state(b) for b in S.basis]
    inclusion = [[S.basis[j][i] for j in range(k)] for i in range(B.dim)]
    return StarAlgebra(k, mult, unit, star, state, name=name), inclusion


def unique_trace(B: StarAlgebra) -> Vec:
    """The unique normalized tracial functional, when it is unique.

    Solves tau(xy) = tau(yx) plus tau(1) = 1 exactly and requires the
    solution to be a single point; raises otherwise.
    """
    solver = KernelSolver(B.dim)
    for i in range(B.dim):
        for j in range(i):
            row = {}
            for k, v in B.mult[i][j].items():
                row[k] = row.get(k, Scalar.zero()) + v
            for k, v in B.mult[j][i].items():
                row[k] = row.get(k, Scalar.zero()) - v
            if any(row.values()):
                solver.add_row(row)
    space = solver.subspace()
    normalized = None
    for t in space.basis:
        val = _dot_unit(t, B)
        if val:
            normalized = vscale(val.inverse(), t)
            break
    if normalized is None:
        raise InputError("no normalized trace exists")
    # Uniqueness: every solution with tau(1)=1 must equal this one.
    for t in space.basis:
        val = _dot_unit(t, B)
        cand = vscale(val.inverse(), t) if val else None
        if cand is not None and cand != normalized:
            raise InputError("trace is not unique (algebra is not a factor)")
        if cand is None and any(t):
            raise InputError("trace is not unique (algebra is not a factor)")
    return normalized


def _dot_unit(t: Vec, B: StarAlgebra) -> Scalar:
    tot = Scalar.zero()
    for x, u in zip(t, B.unit):
        if x and u:
            tot = tot + x * u
    return tot
