"""Universal measuring machinery relative to a finite-dimensional ambient.

A span constraint compares two routes out of a coalgebra C: comultiply l
times, push every leg through the carrier map psi into V = Hom(A, B), apply
the left map; against the same with r legs and the right map.  The elements
of C satisfying every span of a multispan form the constraint subspace; the
largest subcoalgebra inside it (stabilized under any requested extra maps,
e.g. an antipode and the involution) is the universal measuring subcoalgebra
relative to the ambient C.  The true universal objects are infinite
dimensional; everything here is their trace inside a user-supplied C, and
terminality is certified relative to that ambient only.

The decreasing iteration V_{k+1} = {x in V_k : Delta x in V_k (x) V_k,
sigma x in V_k} stabilizes in at most dim C steps; tensor-square membership
is decided by exact linear algebra on C (x) C.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    StarAlgebra,
    generated_subalgebra,
    is_star_closed,
    is_unital_star_subalgebra,
    relative_commutant,
)
from .errors import InputError
from .hopf import HopfStarAlgebra, StarCoalgebra
from .linalg import (
    KernelSolver,
    Mat,
    Subspace,
    Vec,
    kron_vec,
    mat_vec,
    unit_vec,
    vec_is_zero,
    vzero,
)
from .report import Report
from .scalars import Scalar


@dataclass
class SpanConstraint:
    """One diagram: left . psi^(x)l . Delta^(l) = right . psi^(x)r . Delta^(r).

    left and right evaluate a list of carrier vectors (one per leg; empty
    for a 0-leg side) to a vector in the common target space.
    """

    shape: tuple[int, int]
    target_dim: int
    left: Callable[[list], Vec]
    right: Callable[[list], Vec]
    name: str = "span"

    @staticmethod
    def from_matrices(l: int, r: int, left_mat: Mat, right_mat: Mat,
                      carrier_dim: int, name: str = "span") -> "SpanConstraint":
        """Matrix-backed span: maps act on the Kronecker power of the legs."""
        target = len(left_mat) if left_mat else len(right_mat)

        def apply(mat: Mat, legs: list) -> Vec:
            if not legs:
                vec = [Scalar.one()]
            else:
                vec = legs[0]
                for more in legs[1:]:
                    vec = kron_vec(vec, more)
            return mat_vec(mat, vec)

        return SpanConstraint(
            (l, r), target,
            lambda legs: apply(left_mat, legs),
            lambda legs: apply(right_mat, legs),
            name,
        )


@dataclass
class Multispan:
    """Spans sharing one carrier map psi: C -> V (rows indexed by C basis)."""

    carrier_rows: list
    spans: list[SpanConstraint] = field(default_factory=list)

    @property
    def carrier_dim(self) -> int:
        return len(self.carrier_rows[0]) if self.carrier_rows else 0

    def psi(self, x: Vec) -> Vec:
        out = vzero(self.carrier_dim)
        for i, xi in enumerate(x):
            if xi:
                row = self.carrier_rows[i]
                for j in range(self.carrier_dim):
                    if row[j]:
                        out[j] = out[j] + xi * row[j]
        return out


def _span_value(C: StarCoalgebra, ms: Multispan, span: SpanConstraint,
                i: int) -> Vec:
    """left-minus-right evaluation of one span at the basis element e_i."""
    l, r = span.shape
    left_total = vzero(span.target_dim)
    for idx, v in C.iterated_comult(unit_vec(C.dim, i), l).items():
        legs = [ms.psi(unit_vec(C.dim, j)) for j in idx]
        term = span.left(legs)
        left_total = [a + v * b if b else a
                      for a, b in zip(left_total, term)]
    right_total = vzero(span.target_dim)
    for idx, v in C.iterated_comult(unit_vec(C.dim, i), r).items():
        legs = [ms.psi(unit_vec(C.dim, j)) for j in idx]
        term = span.right(legs)
        right_total = [a + v * b if b else a
                       for a, b in zip(right_total, term)]
    return [a - b for a, b in zip(left_total, right_total)]


def constraint_subspace(C: StarCoalgebra, ms: Multispan,
                        star_stabilize: bool = True) -> Subspace:
    """{c : every span diagram commutes at c}, optionally made *-stable."""
    n = C.dim
    solver = KernelSolver(n)
    for span in ms.spans:
        if span.shape[0] < 0 or span.shape[1] < 0:
            raise InputError("span shape must be nonnegative")
        columns = [_span_value(C, ms, span, i) for i in range(n)]
        for t in range(span.target_dim):
            row = {i: columns[i][t] for i in range(n) if columns[i][t]}
            if row:
                solver.add_row(row)
    W = solver.subspace()
    if star_stabilize:
        W = W.intersect(W.image_conjlinear(C.star_vec))
    return W


# -- built-in spans --------------------------------------------------------


def hom_index(out: int, inp: int, dim_in: int) -> int:
    return out * dim_in + inp


def _as_operator(v: Vec, dim_out: int, dim_in: int) -> Mat:
    return [[v[hom_index(o, i, dim_in)] for i in range(dim_in)]
            for o in range(dim_out)]


def multiplication_span(A: StarAlgebra, B: StarAlgebra) -> SpanConstraint:
    """c . (a a') = (c_1 . a)(c_2 . a'), target Hom(A (x) A, B)."""
    na, nb = A.dim, B.dim
    target = nb * na * na

    def left(legs):
        F, G = (_as_operator(v, nb, na) for v in legs)
        out = vzero(target)
        for a in range(na):
            col_f = [F[o][a] for o in range(nb)]
            for ap in range(na):
                col_g = [G[o][ap] for o in range(nb)]
                prod = B.mul_vec(col_f, col_g)
                for o, val in enumerate(prod):
                    if val:
                        idx = o * na * na + a * na + ap
                        out[idx] = out[idx] + val
        return out

    def right(legs):
        (F,) = (_as_operator(v, nb, na) for v in legs)
        out = vzero(target)
        for a in range(na):
            for ap in range(na):
                for k, m in A.mult[a][ap].items():
                    for o in range(nb):
                        if F[o][k]:
                            idx = o * na * na + a * na + ap
                            out[idx] = out[idx] + m * F[o][k]
        return out

    return SpanConstraint((2, 1), target, left, right, "multiplication")


def unit_span(A: StarAlgebra, B: StarAlgebra) -> SpanConstraint:
    """c . 1_A = counit(c) 1_B, target B."""
    na, nb = A.dim, B.dim

    def left(legs):
        return list(B.unit)

    def right(legs):
        (F,) = (_as_operator(v, nb, na) for v in legs)
        return mat_vec(F, list(A.unit))

    return SpanConstraint((0, 1), nb, left, right, "unit")


def fixing_span(A: StarAlgebra, B: StarAlgebra, fixed: Subspace,
                f_images: list[Vec] | None = None) -> SpanConstraint:
    """c . a = counit(c) f(a) on a distinguished subspace of A.

    f_images[i] is the image in B of the i-th basis vector of the fixed
    subspace; omitted, it defaults to the inclusion (B must equal A).
    """
    na, nb = A.dim, B.dim
    basis = fixed.basis
    if f_images is None:
        if nb != na:
            raise InputError("default fixing map needs B = A")
        f_images = [list(b) for b in basis]
    target = len(basis) * nb

    def left(legs):
        (F,) = (_as_operator(v, nb, na) for v in legs)
        out = []
        for b in basis:
            out.extend(mat_vec(F, list(b)))
        return out

    def right(legs):
        out = []
        for img in f_images:
            out.extend(img)
        return out

    return SpanConstraint((1, 0), target, left, right, "fixing")


def functional_span(A: StarAlgebra, B: StarAlgebra, tau_a: Vec,
                    tau_b: Vec) -> SpanConstraint:
    """tau_B(c . a) = counit(c) tau_A(a), target A*."""
    na, nb = A.dim, B.dim

    def left(legs):
        (F,) = (_as_operator(v, nb, na) for v in legs)
        out = vzero(na)
        for a in range(na):
            tot = Scalar.zero()
            for o in range(nb):
                if F[o][a] and tau_b[o]:
                    tot = tot + tau_b[o] * F[o][a]
            out[a] = tot
        return out

    def right(legs):
        return list(tau_a)

    return SpanConstraint((1, 0), na, left, right, "functional")


def star_compat_rows(C: StarCoalgebra, ms: Multispan, A: StarAlgebra,
                     B: StarAlgebra) -> list[dict]:
    """Constraint rows for (c . a)* = c* . a*, linearized.

    psi(c) must agree with star_B . psi(c*) . star_A; the two conjugations
    make the condition linear in c.
    """
    na, nb = A.dim, B.dim
    rows = []
    twisted = []
    for h in range(C.dim):
        op = _as_operator(ms.psi(C.star_vec(unit_vec(C.dim, h))), nb, na)
        cols = []
        for i in range(na):
            cols.append(B.star_vec(mat_vec(op, A.star_vec(unit_vec(na, i)))))
        twisted.append([cols[i][o] for o in range(nb) for i in range(na)])
    for t in range(na * nb):
        row = {}
        for h in range(C.dim):
            diff = ms.carrier_rows[h][t] - twisted[h][t]
            if diff:
                row[h] = diff
        if row:
            rows.append(row)
    return rows


# -- largest subcoalgebra -----------------------------------------------------


def largest_subcoalgebra(C: StarCoalgebra, W: Subspace,
                         stabilizers: list | None = None,
                         log: list | None = None) -> Subspace:
    """The largest subspace D of W with Delta(D) in D (x) D, sigma(D) in D.

    stabilizers is a list of callables Vec -> Vec (linear or conjugate
    linear); the decreasing iteration records its dimensions in log when
    given.  The result contains every stabilized subcoalgebra of W.
    """
    if W.ambient_dim != C.dim:
        raise InputError("subspace does not live in the coalgebra")
    stabilizers = stabilizers or []
    current = W
    while True:
        if log is not None:
            log.append(current.dim)
        if current.dim == 0:
            return current
        basis = current.basis
        k = len(basis)
        square = Subspace.from_vectors(
            [kron_vec(u, v) for u in basis for v in basis], C.dim ** 2
        )
        solver = KernelSolver(k)
        residues = []
        for v in basis:
            residues.append(square.residue(C.comult_flat(v)))
        for t in range(C.dim ** 2):
            row = {i: residues[i][t] for i in range(k) if residues[i][t]}
            if row:
                solver.add_row(row)
        for sigma in stabilizers:
            res = [current.residue(sigma(v)) for v in basis]
            for t in range(C.dim):
                row = {i: res[i][t] for i in range(k) if res[i][t]}
                if row:
                    solver.add_row(row)
        coeffs = solver.subspace()
        if coeffs.dim == k:
            return current
        vectors = []
        for cvec in coeffs.basis:
            out = vzero(C.dim)
            for c, b in zip(cvec, basis):
                if c:
                    out = [x + c * y for x, y in zip(out, b)]
            vectors.append(out)
        current = Subspace.from_vectors(vectors, C.dim)


def subcoalgebra_report(C: StarCoalgebra, D: Subspace,
                        stabilizers: list | None = None) -> Report:
    rep = Report("subcoalgebra certificate")
    square = Subspace.from_vectors(
        [kron_vec(u, v) for u in D.basis for v in D.basis], C.dim ** 2
    )
    rep.add("comultiplication_closed",
            all(square.contains(C.comult_flat(v)) for v in D.basis))
    for idx, sigma in enumerate(stabilizers or []):
        rep.add(f"stabilizer_{idx}_closed",
                all(D.contains(sigma(v)) for v in D.basis))
    return rep


# -- universal measuring ----------------------------------------------------------


@dataclass
class MeasuringResult:
    subspace: Subspace
    constraint: Subspace
    coalgebra: StarCoalgebra | None
    inclusion: list[Vec]
    report: Report
    log: list[int]


def universal_measuring_within(C: StarCoalgebra, A: StarAlgebra,
                               B: StarAlgebra, carrier_rows: list,
                               extra: list[SpanConstraint] | None = None,
                               star_compat: bool = True) -> MeasuringResult:
    """Largest subcoalgebra of C measuring A to B through the carrier map.

    The constraint subspace collects the multiplication and unit spans plus
    any extra spans; the star compatibility condition (c.a)* = c*.a* is
    imposed when star_compat is set.  The result is re-validated to measure,
    and is the terminal measuring subcoalgebra relative to the ambient C.
    """
    ms = Multispan(carrier_rows,
                   [multiplication_span(A, B), unit_span(A, B)]
                   + list(extra or []))
    W = constraint_subspace(C, ms, star_stabilize=True)
    if star_compat:
        solver = KernelSolver(C.dim)
        for row in W.annihilator_rows():
            solver.add_row(row)
        for row in star_compat_rows(C, ms, A, B):
            solver.add_row(row)
        W = solver.subspace()
    log: list[int] = []
    D = largest_subcoalgebra(C, W, stabilizers=[C.star_vec], log=log)
    rep = Report("universal measuring (relative)")
    rep.merge(subcoalgebra_report(C, D, [C.star_vec]), prefix="closure:")
    rep.add("inside_constraints", W.contains_subspace(D))
    # re-validate that the result measures, straight from the definitions
    ok = True
    for v in D.basis:
        for span in ms.spans:
            acc = vzero(span.target_dim)
            for idx, coeff in C.iterated_comult(v, span.shape[0]).items():
                legs = [ms.psi(unit_vec(C.dim, j)) for j in idx]
                term = span.left(legs)
                acc = [a + coeff * b if b else a for a, b in zip(acc, term)]
            for idx, coeff in C.iterated_comult(v, span.shape[1]).items():
                legs = [ms.psi(unit_vec(C.dim, j)) for j in idx]
                term = span.right(legs)
                acc = [a - coeff * b if b else a for a, b in zip(acc, term)]
            if not vec_is_zero(acc):
                ok = False
    rep.add("measures", ok)
    coalg, inclusion = (None, [])
    if D.dim:
        coalg, inclusion = reify_coalgebra(C, D)
        rep.add("reified_coalgebra_valid", _coalgebra_ok(coalg))
    return MeasuringResult(D, W, coalg, inclusion, rep, log)


def _coalgebra_ok(coalg: StarCoalgebra) -> bool:
    from .hopf import validate_coalgebra

    return validate_coalgebra(coalg).ok


def reify_coalgebra(C: StarCoalgebra, D: Subspace):
    """Standalone comultiplication tensors on a subcoalgebra's basis."""
    k = D.dim
    square = [kron_vec(u, v) for u in D.basis for v in D.basis]
    sq = Subspace.from_vectors(square, C.dim ** 2)
    comult = []
    for v in D.basis:
        flat = C.comult_flat(v)
        if not sq.contains(flat):
            raise InputError("not a subcoalgebra")
        coeffs = _coeffs_on(square, flat, C.dim ** 2)
        plane = {}
        for idx, c in enumerate(coeffs):
            if c:
                plane[(idx // k, idx % k)] = c
        comult.append(plane)
    counit = [C.counit_of(v) for v in D.basis]
    star = []
    for v in D.basis:
        sv = C.star_vec(v)
        star.append(D.coordinates(sv))
    return StarCoalgebra(k, comult, counit, star), [list(b) for b in D.basis]


def _coeffs_on(vectors: list[Vec], target: Vec, ambient: int) -> Vec:
    from .linalg import solve_linear

    A = [[vectors[j][i] for j in range(len(vectors))] for i in range(ambient)]
    sol = solve_linear(A, list(target))
    if sol == "inconsistent":
        raise InputError("vector outside span")
    return sol.particular


# -- Hopf *-subalgebras and centralizers ---------------------------------------------


def largest_hopf_star_subalgebra(Q: HopfStarAlgebra, W: Subspace,
                                 log: list | None = None) -> Subspace:
    """The largest Hopf *-subalgebra of Q contained in the subalgebra W.

    W must be a unital *-subalgebra.  The antipode- and star-stabilized
    largest subcoalgebra of W is multiplicatively closed up to one algebra
    generation step, which stays inside W; the certificate re-checks every
    closure property instead of trusting the construction.
    """
    if not is_unital_star_subalgebra(W, Q.algebra):
        raise InputError("W not a unital *-subalgebra")
    d0 = largest_subcoalgebra(
        Q.coalgebra, W,
        stabilizers=[Q.antipode_vec, Q.algebra.star_vec],
        log=log,
    )
    result = generated_subalgebra(list(d0.basis), Q.algebra)
    if not W.contains_subspace(result):
        raise InputError("generation escaped W; W is not closed")
    return result


def hopf_subalgebra_report(Q: HopfStarAlgebra, S: Subspace) -> Report:
    """Delta-, S-, *-, multiplication- and unit-closure of a subspace."""
    rep = Report("hopf *-subalgebra certificate")
    square = Subspace.from_vectors(
        [kron_vec(u, v) for u in S.basis for v in S.basis], Q.dim ** 2
    )
    rep.add("comultiplication_closed",
            all(square.contains(Q.coalgebra.comult_flat(v))
                for v in S.basis))
    rep.add("antipode_closed",
            all(S.contains(Q.antipode_vec(v)) for v in S.basis))
    rep.add("star_closed", all(S.contains(Q.star_vec(v)) for v in S.basis))
    rep.add("multiplicatively_closed",
            all(S.contains(Q.mul_vec(u, v))
                for u in S.basis for v in S.basis))
    rep.add("unital", S.contains(Q.unit))
    return rep


def hopf_centralizer(Q: HopfStarAlgebra, S: Subspace) -> Subspace:
    """Largest Hopf *-subalgebra inside the commutant of a *-closed S."""
    if not is_star_closed(S, Q.algebra):
        raise InputError("S not *-closed")
    W = relative_commutant(S, Q.algebra)
    return largest_hopf_star_subalgebra(Q, W)


def reify_hopf_subalgebra(Q: HopfStarAlgebra, S: Subspace,
                          name: str = "") -> HopfStarAlgebra:
    """Standalone Hopf *-algebra structure on a Hopf *-subalgebra."""
    from .algebra import reify

    alg, inclusion = reify(Q.algebra, S, name=name)
    coalg, _ = reify_coalgebra(Q.coalgebra, S)
    antipode = [S.coordinates(Q.antipode_vec(b)) for b in S.basis]
    return HopfStarAlgebra(alg, coalg.comult, coalg.counit, antipode,
                           name=name)
