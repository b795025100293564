"""Finite-dimensional Hopf *-algebras, their duals, variants and pairings.

Comultiplication is stored sparsely: comult[i] maps a pair (j, k) to the
coefficient of e_j (x) e_k in Delta(e_i).  The dual of a finite-dimensional
Hopf *-algebra is again one, with multiplication the transpose of Delta and
comultiplication the transpose of multiplication; the involution on the dual
is fixed by <phi*, h> = conj(<phi, S(h)*>), the standard convention for dual
pairs of Hopf *-algebras (the one convention in this module that is not
forced by the axioms; validate_pairing records it in its report).
"""

from __future__ import annotations

from .algebra import StarAlgebra, validate_algebra
from .errors import InputError
from .linalg import (
    KernelSolver,
    Mat,
    Vec,
    identity_matrix,
    mat_eq,
    mat_inverse,
    transpose,
    unit_vec,
    vscale,
    vzero,
)
from .report import Report
from .scalars import Scalar

PAIRING_STAR_NOTE = (
    "star law uses the convention <q*, h> = conj(<q, S(h)*>)"
)


class StarCoalgebra:
    """Coassociative counital coalgebra with a *-structure."""

    def __init__(self, dim: int, comult, counit: Vec, star: Mat):
        self.dim = dim
        self.comult = comult        # list[dict[(j, k), Scalar]]
        self.counit = counit
        self.star = star
        if len(comult) != dim or len(counit) != dim or len(star) != dim:
            raise InputError("coalgebra tensor shape mismatch")

    def comult_vec(self, x: Vec) -> dict:
        """Delta(x) as a sparse dict (j, k) -> Scalar."""
        out: dict = {}
        for i, xi in enumerate(x):
            if xi:
                for jk, v in self.comult[i].items():
                    out[jk] = out.get(jk, Scalar.zero()) + xi * v
        return {jk: v for jk, v in out.items() if v}

    def comult_flat(self, x: Vec) -> Vec:
        """Delta(x) as a dense vector on the tensor square basis."""
        n = self.dim
        out = vzero(n * n)
        for (j, k), v in self.comult_vec(x).items():
            out[j * n + k] = out[j * n + k] + v
        return out

    def counit_of(self, x: Vec) -> Scalar:
        tot = Scalar.zero()
        for xi, e in zip(x, self.counit):
            if xi and e:
                tot = tot + xi * e
        return tot

    def star_vec(self, x: Vec) -> Vec:
        out = vzero(self.dim)
        for i, xi in enumerate(x):
            if xi:
                ci = xi.conj()
                for j in range(self.dim):
                    if self.star[i][j]:
                        out[j] = out[j] + ci * self.star[i][j]
        return out

    def iterated_comult(self, x: Vec, legs: int) -> dict:
        """Delta^(legs): sparse dict mapping index tuples to Scalars.

        legs = 0 returns {(): counit(x)}, legs = 1 is x itself.
        """
        if legs == 0:
            c = self.counit_of(x)
            return {(): c} if c else {}
        cur = {(i,): v for i, v in enumerate(x) if v}
        for _ in range(legs - 1):
            nxt: dict = {}
            for idx, v in cur.items():
                last = idx[-1]
                for (j, k), w in self.comult[last].items():
                    key = idx[:-1] + (j, k)
                    nxt[key] = nxt.get(key, Scalar.zero()) + v * w
            cur = {k: v for k, v in nxt.items() if v}
        return cur


def sparse_comult(dense, order: int = 1):
    out = []
    for plane in dense:
        entry = {}
        for j, line in enumerate(plane):
            for k, v in enumerate(line):
                sc = v if isinstance(v, Scalar) else Scalar.coerce(v, order)
                if sc:
                    entry[(j, k)] = sc
        out.append(entry)
    return out


def dense_comult(comult, dim: int):
    zero = Scalar.zero()
    return [
        [[plane.get((j, k), zero) for k in range(dim)] for j in range(dim)]
        for plane in comult
    ]


class HopfStarAlgebra:
    """StarAlgebra and StarCoalgebra on one space, with an antipode."""

    def __init__(self, algebra: StarAlgebra, comult, counit: Vec,
                 antipode: Mat, name: str = ""):
        self.algebra = algebra
        self.antipode = antipode
        self.name = name or algebra.name
        if len(antipode) != algebra.dim:
            raise InputError("antipode shape mismatch")
        # The coalgebra-side involution of a Hopf *-algebra is x -> S(x)*,
        # which reverses comultiplication; x -> x* does not when the
        # comultiplication is noncocommutative.
        circ = [
            algebra.star_vec(mat_vec_transposed(antipode,
                                                unit_vec(algebra.dim, i)))
            for i in range(algebra.dim)
        ]
        self.coalgebra = StarCoalgebra(algebra.dim, comult, counit, circ)

    # Delegation keeps call sites readable.
    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def comult(self):
        return self.coalgebra.comult

    @property
    def counit(self) -> Vec:
        return self.coalgebra.counit

    @property
    def unit(self) -> Vec:
        return self.algebra.unit

    @property
    def star(self) -> Mat:
        return self.algebra.star

    def mul_vec(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul_vec(x, y)

    def star_vec(self, x: Vec) -> Vec:
        return self.algebra.star_vec(x)

    def comult_vec(self, x: Vec) -> dict:
        return self.coalgebra.comult_vec(x)

    def counit_of(self, x: Vec) -> Scalar:
        return self.coalgebra.counit_of(x)

    def antipode_vec(self, x: Vec) -> Vec:
        return mat_vec_transposed(self.antipode, x)

    def is_kac(self) -> bool:
        """Involutive antipode: S^2 = id."""
        n = self.dim
        for i in range(n):
            if self.antipode_vec(self.antipode_vec(unit_vec(n, i))) \
                    != unit_vec(n, i):
                return False
        return True

    def to_json(self):
        doc = self.algebra.to_json()
        doc["comult"] = [
            [[v.to_json() for v in line] for line in plane]
            for plane in dense_comult(self.comult, self.dim)
        ]
        doc["counit"] = [x.to_json() for x in self.counit]
        doc["antipode"] = [[x.to_json() for x in row] for row in self.antipode]
        doc["kac"] = self.is_kac()
        return doc


def mat_vec_transposed(rows: Mat, x: Vec) -> Vec:
    """Apply a map stored row-wise (image of e_i is rows[i])."""
    n = len(rows[0]) if rows else 0
    out = vzero(n)
    for i, xi in enumerate(x):
        if xi:
            row = rows[i]
            for j in range(n):
                if row[j]:
                    out[j] = out[j] + xi * row[j]
    return out


# -- validation -----------------------------------------------------------


def validate_coalgebra(C: StarCoalgebra, title: str = "coalgebra") -> Report:
    rep = Report(title)
    n = C.dim

    witness = None
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for (j, k), v in C.comult[i].items():
            for (a, b), w in C.comult[j].items():
                key = (a, b, k)
                left[key] = left.get(key, Scalar.zero()) + v * w
            for (a, b), w in C.comult[k].items():
                key = (j, a, b)
                right[key] = right.get(key, Scalar.zero()) + v * w
        if _sparse_ne(left, right):
            witness = i
            break
    rep.add("coassociativity", witness is None, witness)

    witness = None
    for i in range(n):
        le = vzero(n)
        ri = vzero(n)
        for (j, k), v in C.comult[i].items():
            if C.counit[j]:
                le[k] = le[k] + v * C.counit[j]
            if C.counit[k]:
                ri[j] = ri[j] + v * C.counit[k]
        if le != unit_vec(n, i) or ri != unit_vec(n, i):
            witness = i
            break
    rep.add("counit", witness is None, witness)

    witness = None
    for i in range(n):
        lhs = C.comult_vec(C.star_vec(unit_vec(n, i)))
        rhs: dict = {}
        for (j, k), v in C.comult[i].items():
            sj = C.star_vec(unit_vec(n, j))
            sk = C.star_vec(unit_vec(n, k))
            for a, va in enumerate(sk):
                if va:
                    for b, vb in enumerate(sj):
                        if vb:
                            key = (a, b)
                            rhs[key] = rhs.get(key, Scalar.zero()) \
                                + v.conj() * va * vb
        if _sparse_ne(lhs, rhs):
            witness = i
            break
    rep.add("star_reverses_comultiplication", witness is None, witness)
    return rep


def _sparse_ne(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    zero = Scalar.zero()
    return any(a.get(k, zero) != b.get(k, zero) for k in keys)


def validate_hopf(H: HopfStarAlgebra) -> Report:
    """Full Hopf *-algebra axiom suite with witnesses."""
    rep = Report(f"hopf {H.name}".strip())
    rep.merge(validate_algebra(H.algebra), prefix="alg:")
    rep.merge(validate_coalgebra(H.coalgebra), prefix="coalg:")
    n = H.dim

    # Delta and epsilon are unital algebra morphisms.
    witness = None
    for i in range(n):
        for j in range(n):
            prod = [H.algebra.mult[i][j].get(k, Scalar.zero())
                    for k in range(n)]
            lhs = H.comult_vec(prod)
            rhs: dict = {}
            for (a, b), v in H.comult[i].items():
                for (c, d), w in H.comult[j].items():
                    ac = H.algebra.mult[a][c]
                    bd = H.algebra.mult[b][d]
                    for p, vp in ac.items():
                        for q, wq in bd.items():
                            key = (p, q)
                            rhs[key] = rhs.get(key, Scalar.zero()) \
                                + v * w * vp * wq
            if _sparse_ne(lhs, rhs):
                witness = (i, j)
                break
        if witness:
            break
    rep.add("comult_is_algebra_morphism", witness is None, witness)
    rep.add("comult_unital",
            not _sparse_ne(H.comult_vec(H.unit),
                           _outer(H.unit, H.unit)))

    witness = None
    for i in range(n):
        for j in range(n):
            prod = [H.algebra.mult[i][j].get(k, Scalar.zero())
                    for k in range(n)]
            if H.counit_of(prod) != H.counit_of(unit_vec(n, i)) \
                    * H.counit_of(unit_vec(n, j)):
                witness = (i, j)
                break
        if witness:
            break
    rep.add("counit_is_algebra_morphism", witness is None, witness)
    rep.add("counit_unital", H.counit_of(H.unit) == Scalar.one())

    # Delta(x*) = (x_1)* (x) (x_2)*: Delta is a *-algebra morphism.
    witness = None
    for i in range(n):
        lhs = H.comult_vec(H.star_vec(unit_vec(n, i)))
        rhs: dict = {}
        for (j, k), v in H.comult[i].items():
            sj = H.star_vec(unit_vec(n, j))
            sk = H.star_vec(unit_vec(n, k))
            for a, va in enumerate(sj):
                if va:
                    for b, vb in enumerate(sk):
                        if vb:
                            key = (a, b)
                            rhs[key] = rhs.get(key, Scalar.zero()) \
                                + v.conj() * va * vb
        if _sparse_ne(lhs, rhs):
            witness = i
            break
    rep.add("comult_is_star_morphism", witness is None, witness)

    # Antipode axiom: m (S (x) id) Delta = unit . counit = m (id (x) S) Delta
    witness = None
    for i in range(n):
        left = vzero(n)
        right = vzero(n)
        for (j, k), v in H.comult[i].items():
            sj = H.antipode_vec(unit_vec(n, j))
            sk = H.antipode_vec(unit_vec(n, k))
            left = _acc(left, vscale(v, H.mul_vec(sj, unit_vec(n, k))))
            right = _acc(right, vscale(v, H.mul_vec(unit_vec(n, j), sk)))
        target = vscale(H.counit_of(unit_vec(n, i)), H.unit)
        if left != target or right != target:
            witness = i
            break
    rep.add("antipode_axiom", witness is None, witness)

    # x -> S(x)^* is an involution.
    witness = None
    for i in range(n):
        e = unit_vec(n, i)
        twice = H.star_vec(H.antipode_vec(H.star_vec(H.antipode_vec(e))))
        if twice != e:
            witness = i
            break
    rep.add("star_antipode_involution", witness is None, witness)

    try:
        mat_inverse(transpose(H.antipode))
        rep.add("antipode_invertible", True)
    except InputError:
        rep.add("antipode_invertible", False)

    rep.add("kac_flag_recorded", True, witness={"kac": H.is_kac()},
            note="S^2 = id is a flag consumed downstream, not an axiom")
    return rep


def _outer(x: Vec, y: Vec) -> dict:
    out = {}
    for j, a in enumerate(x):
        if a:
            for k, b in enumerate(y):
                if b:
                    out[(j, k)] = a * b
    return out


def _acc(acc: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(acc, v)]


# -- duality ----------------------------------------------------------------


def dual_hopf(H: HopfStarAlgebra, name: str = "") -> HopfStarAlgebra:
    """The dual Hopf *-algebra on the dual basis.

    Multiplication is the transpose of Delta, comultiplication the transpose
    of multiplication, antipode the transpose of S, and the involution is
    <phi*, h> = conj(<phi, S(h)*>).
    """
    n = H.dim
    zero = Scalar.zero()
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (i, j), v in H.comult[k].items():
            mult[i][j][k] = mult[i][j].get(k, zero) + v
    comult = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, v in H.algebra.mult[i][j].items():
                comult[k][(i, j)] = comult[k].get((i, j), zero) + v
    unit = list(H.counit)
    counit = list(H.unit)
    antipode = transpose(H.antipode)
    # (e^i)*: <(e^i)*, e_j> = conj(<e^i, S(e_j)*>)
    star = []
    for i in range(n):
        row = vzero(n)
        for j in range(n):
            sj = H.star_vec(H.antipode_vec(unit_vec(n, j)))
            row[j] = sj[i].conj()
        star.append(row)
    alg = StarAlgebra(n, mult, unit, star, state=None,
                      name=name or (H.name + "^*" if H.name else ""))
    return HopfStarAlgebra(alg, comult, counit, antipode,
                           name=alg.name)


def variants(H: HopfStarAlgebra):
    """(H^op, H^cop, H^op_cop); single flips carry the inverse antipode."""
    n = H.dim
    s_inv = transpose(mat_inverse(transpose(H.antipode)))
    op_mult = [[H.algebra.mult[j][i] for j in range(n)] for i in range(n)]
    cop_comult = [
        {(k, j): v for (j, k), v in plane.items()} for plane in H.comult
    ]
    op_alg = StarAlgebra(n, op_mult, list(H.unit),
                         [list(r) for r in H.star],
                         state=H.algebra.state,
                         name=H.name + "^op" if H.name else "")
    h_op = HopfStarAlgebra(op_alg, [dict(p) for p in H.comult],
                           list(H.counit), s_inv, name=op_alg.name)
    base_alg = StarAlgebra(n, [[dict(H.algebra.mult[i][j]) for j in range(n)]
                               for i in range(n)],
                           list(H.unit), [list(r) for r in H.star],
                           state=H.algebra.state,
                           name=H.name + "^cop" if H.name else "")
    h_cop = HopfStarAlgebra(base_alg, cop_comult, list(H.counit), s_inv,
                            name=base_alg.name)
    opcop_alg = StarAlgebra(n, op_mult, list(H.unit),
                            [list(r) for r in H.star],
                            state=H.algebra.state,
                            name=H.name + "^opcop" if H.name else "")
    h_opcop = HopfStarAlgebra(opcop_alg,
                              [dict(p) for p in cop_comult],
                              list(H.counit),
                              [list(r) for r in H.antipode],
                              name=opcop_alg.name)
    return h_op, h_cop, h_opcop


def hopf_equal(A: HopfStarAlgebra, B: HopfStarAlgebra) -> bool:
    """Tensor-by-tensor equality (same basis)."""
    if A.dim != B.dim:
        return False
    n = A.dim
    for i in range(n):
        for j in range(n):
            if A.algebra.mult[i][j] != B.algebra.mult[i][j]:
                return False
    for i in range(n):
        if A.comult[i] != B.comult[i]:
            return False
    return (A.unit == B.unit and A.counit == B.counit
            and mat_eq(A.antipode, B.antipode) and mat_eq(A.star, B.star))


# -- Haar integral ------------------------------------------------------------


def haar(H: HopfStarAlgebra) -> Vec:
    """The normalized two-sided integral tau, found by exact linear solve.

    (id (x) tau) Delta h = tau(h) 1 = (tau (x) id) Delta h and tau(1) = 1.
    Raises when no solution exists or every solution kills the unit.
    """
    n = H.dim
    solver = KernelSolver(n)
    for i in range(n):
        for j in range(n):
            # right invariance: sum_k Delta[i][(j,k)] t_k = t_i unit_j
            row: dict = {}
            for (a, b), v in H.comult[i].items():
                if a == j:
                    row[b] = row.get(b, Scalar.zero()) + v
            u = H.unit[j]
            if u:
                row[i] = row.get(i, Scalar.zero()) - u
            if any(row.values()):
                solver.add_row(row)
            # left invariance
            row = {}
            for (a, b), v in H.comult[i].items():
                if b == j:
                    row[a] = row.get(a, Scalar.zero()) + v
            if u:
                row[i] = row.get(i, Scalar.zero()) - u
            if any(row.values()):
                solver.add_row(row)
    space = solver.subspace()
    for t in space.basis:
        val = Scalar.zero()
        for x, u in zip(t, H.unit):
            if x and u:
                val = val + x * u
        if val:
            return vscale(val.inverse(), t)
    raise InputError("no normalizable two-sided integral")


def haar_state(H: HopfStarAlgebra) -> "StarAlgebra":
    """Copy of the underlying algebra carrying the Haar state."""
    tau = haar(H)
    alg = H.algebra
    return StarAlgebra(alg.dim, alg.mult, alg.unit, alg.star, state=tau,
                       name=alg.name)


# -- group fixtures ------------------------------------------------------------


def _check_group_table(table) -> int:
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise InputError("not a group: malformed table")
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise InputError("not a group: element 0 is not an identity")
    for i in range(n):
        if not any(table[i][j] == 0 for j in range(n)):
            raise InputError("not a group: missing inverse")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise InputError("not a group: associativity fails")
    return n


def group_inverse(table, i: int) -> int:
    for j in range(len(table)):
        if table[i][j] == 0:
            return j
    raise InputError("not a group: missing inverse")


def group_algebra(table, name: str = "") -> HopfStarAlgebra:
    """Group algebra CG: Delta g = g (x) g, S(g) = g^{-1}, g* = g^{-1}."""
    n = _check_group_table(table)
    one = Scalar.one()
    mult = [[{table[i][j]: one} for j in range(n)] for i in range(n)]
    unit = unit_vec(n, 0)
    star = [unit_vec(n, group_inverse(table, i)) for i in range(n)]
    comult = [{(i, i): one} for i in range(n)]
    counit = [one] * n
    antipode = [unit_vec(n, group_inverse(table, i)) for i in range(n)]
    alg = StarAlgebra(n, mult, unit, star, name=name)
    return HopfStarAlgebra(alg, comult, counit, antipode, name=name)


def function_algebra(table, name: str = "") -> HopfStarAlgebra:
    """Function algebra C(G): pointwise product, Delta delta_g = sum over gh."""
    n = _check_group_table(table)
    one = Scalar.one()
    mult = [[{i: one} if i == j else {} for j in range(n)] for i in range(n)]
    unit = [one] * n
    star = identity_matrix(n)
    comult = []
    for g in range(n):
        plane = {}
        for a in range(n):
            for b in range(n):
                if table[a][b] == g:
                    plane[(a, b)] = one
        comult.append(plane)
    counit = unit_vec(n, 0)
    antipode = [unit_vec(n, group_inverse(table, i)) for i in range(n)]
    alg = StarAlgebra(n, mult, unit, star, name=name)
    return HopfStarAlgebra(alg, comult, counit, antipode, name=name)


# -- pairings -------------------------------------------------------------------


class HopfPairing:
    """A bilinear pairing matrix P[q][h] = <e_q, e_h> between Q and H."""

    def __init__(self, Q: HopfStarAlgebra, H: HopfStarAlgebra, matrix: Mat):
        self.Q = Q
        self.H = H
        self.matrix = matrix
        if len(matrix) != Q.dim or any(len(r) != H.dim for r in matrix):
            raise InputError("pairing matrix shape mismatch")

    def pair(self, q: Vec, h: Vec) -> Scalar:
        tot = Scalar.zero()
        for i, qi in enumerate(q):
            if qi:
                row = self.matrix[i]
                for j, hj in enumerate(h):
                    if hj and row[j]:
                        tot = tot + qi * hj * row[j]
        return tot

    def is_nondegenerate(self) -> bool:
        try:
            mat_inverse(self.matrix)
            return True
        except InputError:
            return False


def canonical_pairing(Q: HopfStarAlgebra, H: HopfStarAlgebra) -> HopfPairing:
    """Evaluation pairing when Q is built on the dual basis of H."""
    if Q.dim != H.dim:
        raise InputError("canonical pairing needs matching dimensions")
    return HopfPairing(Q, H, identity_matrix(Q.dim))


def validate_pairing(P: HopfPairing) -> Report:
    """The five pairing laws plus the star law, checked on basis elements."""
    rep = Report("hopf pairing")
    Q, H, n_q, n_h = P.Q, P.H, P.Q.dim, P.H.dim

    witness = None
    for a in range(n_q):
        for b in range(n_q):
            for c in range(n_h):
                prod = vzero(n_q)
                for k, v in Q.algebra.mult[a][b].items():
                    prod[k] = prod[k] + v
                lhs = P.pair(prod, unit_vec(n_h, c))
                rhs = Scalar.zero()
                for (c1, c2), v in H.comult[c].items():
                    rhs = rhs + v * P.matrix[a][c1] * P.matrix[b][c2]
                if lhs != rhs:
                    witness = (a, b, c)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("multiplicative_left", witness is None, witness)

    witness = None
    for a in range(n_q):
        for c in range(n_h):
            for d in range(n_h):
                prod = vzero(n_h)
                for k, v in H.algebra.mult[c][d].items():
                    prod[k] = prod[k] + v
                lhs = P.pair(unit_vec(n_q, a), prod)
                rhs = Scalar.zero()
                for (a1, a2), v in Q.comult[a].items():
                    rhs = rhs + v * P.matrix[a1][c] * P.matrix[a2][d]
                if lhs != rhs:
                    witness = (a, c, d)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("multiplicative_right", witness is None, witness)

    ok = all(P.pair(Q.unit, unit_vec(n_h, c)) == H.counit_of(unit_vec(n_h, c))
             for c in range(n_h))
    rep.add("unit_pairs_to_counit", ok)
    ok = all(P.pair(unit_vec(n_q, a), H.unit)
             == Q.counit_of(unit_vec(n_q, a)) for a in range(n_q))
    rep.add("counit_pairs_to_unit", ok)

    witness = None
    for a in range(n_q):
        for c in range(n_h):
            lhs = P.pair(Q.antipode_vec(unit_vec(n_q, a)), unit_vec(n_h, c))
            rhs = P.pair(unit_vec(n_q, a), H.antipode_vec(unit_vec(n_h, c)))
            if lhs != rhs:
                witness = (a, c)
                break
        if witness:
            break
    rep.add("antipode_law", witness is None, witness)

    witness = None
    for a in range(n_q):
        for c in range(n_h):
            lhs = P.pair(Q.star_vec(unit_vec(n_q, a)), unit_vec(n_h, c))
            rhs = P.pair(unit_vec(n_q, a),
                         H.star_vec(H.antipode_vec(unit_vec(n_h, c)))).conj()
            if lhs != rhs:
                witness = (a, c)
                break
        if witness:
            break
    rep.add("star_law", witness is None, witness, note=PAIRING_STAR_NOTE)
    return rep


# -- convolution ----------------------------------------------------------------


def convolve_maps(H: HopfStarAlgebra, target: StarAlgebra, f: Mat,
                  g: Mat) -> Mat:
    """Convolution of linear maps H -> target given row-wise (e_i -> f[i])."""
    out = []
    for i in range(H.dim):
        acc = vzero(target.dim)
        for (j, k), v in H.comult[i].items():
            term = target.mul_vec(f[j], g[k])
            acc = [a + v * b if b else a for a, b in zip(acc, term)]
        out.append(acc)
    return out
