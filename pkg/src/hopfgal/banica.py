"""Fixed-point algebras of product coactions and their Galois groups.

Data: a Kac-type Hopf *-algebra H with Haar state tau, a right H-comodule
algebra B, and an H^cop-module algebra A with smash product A x| H^cop.
The product coaction on B (x) (A x| H^cop),

    b (x) a x| h  ->  b_0 (x) a x| h_2 (x) h_1 S(b_1),

has invariants C, a unital *-subalgebra containing A as 1 (x) a x| 1.  The
conditional expectation E(b (x) a x| h) = b_0 (x) a x| h_2 tau(h_1 S(b_1))
projects onto C, and the canonical dual action on B is
Lambda(omega) b = b_0 omega(b_1) for the functionals omega = tau(. S(h)).

The Galois group of A inside C, relative to a user-supplied finite
dimensional ambient Q acting on B, is the largest Hopf *-subalgebra of Q
whose action operators commute with the image of Lambda; its action lifts
to C through (a, x) -> x_0 (x) a x| x_1 and fixes A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import (
    ModuleAlgebraAction,
    SmashProduct,
    validate_action,
)
from .algebra import (
    StarAlgebra,
    gram_matrix,
    is_nonsingular,
    numerically_positive,
    relative_commutant,
    reify,
)
from .errors import ConsistencyError, InputError
from .fixtures import tensor_algebra
from .hopf import HopfStarAlgebra, haar, variants
from .jones import orthogonal_projection
from .linalg import (
    KernelSolver,
    Mat,
    Subspace,
    Vec,
    mat_mul,
    mat_vec,
    solve_linear,
    unit_vec,
    vscale,
    vzero,
)
from .measuring import largest_hopf_star_subalgebra, reify_hopf_subalgebra
from .report import Report
from .scalars import Scalar


class ComoduleAlgebra:
    """Right H-comodule algebra: coact[i] maps (j, k) to the coefficient
    of e_j (x) e_k^H in beta(e_i)."""

    def __init__(self, hopf: HopfStarAlgebra, alg: StarAlgebra, coact,
                 name: str = ""):
        self.hopf = hopf
        self.alg = alg
        self.coact = coact
        self.name = name
        if len(coact) != alg.dim:
            raise InputError("coaction tensor shape mismatch")

    def coact_vec(self, x: Vec) -> dict:
        out: dict = {}
        for i, xi in enumerate(x):
            if xi:
                for jk, v in self.coact[i].items():
                    out[jk] = out.get(jk, Scalar.zero()) + xi * v
        return {jk: v for jk, v in out.items() if v}


def validate_comodule(B: ComoduleAlgebra) -> Report:
    """Coassociativity, counit law, and multiplicativity of the coaction."""
    rep = Report(f"comodule algebra {B.name}".strip())
    H, A = B.hopf, B.alg
    nb, nh = A.dim, H.dim

    witness = None
    for i in range(nb):
        lhs: dict = {}
        rhs: dict = {}
        for (j, k), v in B.coact[i].items():
            for (a, b), w in B.coact[j].items():
                key = (a, b, k)
                lhs[key] = lhs.get(key, Scalar.zero()) + v * w
            for (a, b), w in H.comult[k].items():
                key = (j, a, b)
                rhs[key] = rhs.get(key, Scalar.zero()) + v * w
        keys = set(lhs) | set(rhs)
        zero = Scalar.zero()
        if any(lhs.get(t, zero) != rhs.get(t, zero) for t in keys):
            witness = i
            break
    rep.add("coassociative", witness is None, witness)

    witness = None
    for i in range(nb):
        acc = vzero(nb)
        for (j, k), v in B.coact[i].items():
            e = H.counit_of(unit_vec(nh, k))
            if e:
                acc[j] = acc[j] + v * e
        if acc != unit_vec(nb, i):
            witness = i
            break
    rep.add("counital", witness is None, witness)

    witness = None
    for i in range(nb):
        for j in range(nb):
            prod = vzero(nb)
            for k, v in A.mult[i][j].items():
                prod[k] = prod[k] + v
            lhs = B.coact_vec(prod)
            rhs: dict = {}
            for (a, g), v in B.coact[i].items():
                for (b, g2), w in B.coact[j].items():
                    for p, vp in A.mult[a][b].items():
                        for q, wq in H.algebra.mult[g][g2].items():
                            key = (p, q)
                            rhs[key] = rhs.get(key, Scalar.zero()) \
                                + v * w * vp * wq
            keys = set(lhs) | set(rhs)
            zero = Scalar.zero()
            if any(lhs.get(t, zero) != rhs.get(t, zero) for t in keys):
                witness = (i, j)
                break
        if witness:
            break
    rep.add("coaction_multiplicative", witness is None, witness)

    unit_image = B.coact_vec(list(A.unit))
    target: dict = {}
    for j, ua in enumerate(A.unit):
        if ua:
            for k, uh in enumerate(H.unit):
                if uh:
                    target[(j, k)] = ua * uh
    zero = Scalar.zero()
    keys = set(unit_image) | set(target)
    rep.add("coaction_unital",
            all(unit_image.get(t, zero) == target.get(t, zero)
                for t in keys))
    return rep


@dataclass
class FixedPointData:
    """The total space B (x) (A x| H^cop) with its coaction machinery."""

    comodule: ComoduleAlgebra
    smash: SmashProduct
    hopf: HopfStarAlgebra            # the original H, Kac
    total: StarAlgebra               # B (x) (A x| H^cop)
    coaction: list                   # rho[i]: dict (t, k) -> Scalar
    haar: Vec
    invariants: Subspace             # C
    expectation: Mat                 # E
    report: Report = field(default_factory=lambda: Report("fixed point"))

    @property
    def dim_B(self) -> int:
        return self.comodule.alg.dim

    def idx(self, b: int, t: int) -> int:
        return b * self.smash.total.dim + t

    def embed_A_vec(self, a: Vec) -> Vec:
        out = vzero(self.total.dim)
        inner = self.smash.embed_A_vec(a)
        for b, ub in enumerate(self.comodule.alg.unit):
            if ub:
                for t, x in enumerate(inner):
                    if x:
                        out[self.idx(b, t)] = out[self.idx(b, t)] + ub * x
        return out

    def subspace_A(self) -> Subspace:
        na = self.smash.dim_A
        return Subspace.from_vectors(
            [self.embed_A_vec(unit_vec(na, a)) for a in range(na)],
            self.total.dim,
        )


def product_coaction(B: ComoduleAlgebra,
                     sp: SmashProduct) -> FixedPointData:
    """Assemble the fixed-point data for B and A x| H^cop.

    B must be a comodule algebra over a Kac-type H, and the smash product
    must have been built over H^cop (same multiplication as H, reversed
    comultiplication, same antipode since S is involutive).
    """
    H = B.hopf
    if not H.is_kac():
        raise InputError("antipode not involutive")
    Hcop = sp.action.hopf
    if Hcop.dim != H.dim or not _is_cop_of(Hcop, H):
        raise InputError("the smash product is not over H^cop")
    com_rep = validate_comodule(B)
    if not com_rep.ok:
        raise InputError(
            f"comodule invalid at {com_rep.first_failure().name}"
        )

    nb, nh, nt = B.alg.dim, H.dim, sp.total.dim
    na = sp.dim_A
    total = tensor_algebra(B.alg, sp.total,
                           name=f"{B.alg.name}(x){sp.total.name}")
    dim = total.dim

    # rho(b (x) a x| h) = b0 (x) a x| h2 (x) h1 S(b1)
    rho: list[dict] = [dict() for _ in range(dim)]
    for b in range(nb):
        for a in range(na):
            for h in range(nh):
                src = b * nt + (a * nh + h)
                cell = rho[src]
                for (b0, b1), v in B.coact[b].items():
                    sb1 = H.antipode_vec(unit_vec(nh, b1))
                    for (h1, h2), w in H.comult[h].items():
                        dst = b0 * nt + (a * nh + h2)
                        for k, sv in enumerate(sb1):
                            if not sv:
                                continue
                            for m, mv in H.algebra.mult[h1][k].items():
                                key = (dst, m)
                                cell[key] = cell.get(key, Scalar.zero()) \
                                    + v * w * sv * mv
    for cell in rho:
        for key in [k for k, v in cell.items() if not v]:
            del cell[key]

    rep = Report("product coaction")
    rep.merge(com_rep, prefix="comodule:")
    rep.add("coassociative_for_cop", _rho_coassociative(rho, Hcop, dim))
    rep.add("counital", _rho_counital(rho, H, dim))

    tau = haar(H)
    inv = _coaction_invariants(rho, H, dim)
    E = _expectation_matrix(B, sp, H, tau)
    data = FixedPointData(B, sp, H, total, rho, tau, inv, E, rep)

    rep.add("invariants_subalgebra", _certify_invariants(data))
    rep.add("A_embeds_in_invariants",
            all(inv.contains(data.embed_A_vec(unit_vec(na, a)))
                for a in range(na)))
    img = Subspace.from_vectors(
        [mat_vec(E, unit_vec(dim, i)) for i in range(dim)], dim
    )
    rep.add("expectation_image_is_invariants", img == inv)
    rep.add("expectation_idempotent", mat_mul(E, E) == E)
    rep.add("expectation_bimodular", _expectation_bimodular(data))
    rep.add("haar_swap_identity", _swap_identity(H, tau))
    membership = all(
        inv.contains(_beta_13(data, b)) for b in range(nb)
    )
    rep.add("coaction_legs_13_invariant", membership)
    if not rep.ok:
        raise ConsistencyError(
            f"fixed-point data failed at {rep.first_failure().name}"
        )
    return data


def _is_cop_of(Hcop: HopfStarAlgebra, H: HopfStarAlgebra) -> bool:
    n = H.dim
    for i in range(n):
        for j in range(n):
            if Hcop.algebra.mult[i][j] != H.algebra.mult[i][j]:
                return False
    flipped = [
        {(k, j): v for (j, k), v in plane.items()} for plane in H.comult
    ]
    return all(Hcop.comult[i] == flipped[i] for i in range(n))


def _rho_coassociative(rho, Hcop: HopfStarAlgebra, dim: int) -> bool:
    nh = Hcop.dim
    for i in range(dim):
        lhs: dict = {}
        rhs: dict = {}
        for (t, k), v in rho[i].items():
            for (t2, k2), w in rho[t].items():
                key = (t2, k2, k)
                lhs[key] = lhs.get(key, Scalar.zero()) + v * w
            for (k1, k2), w in Hcop.comult[k].items():
                key = (t, k1, k2)
                rhs[key] = rhs.get(key, Scalar.zero()) + v * w
        keys = set(lhs) | set(rhs)
        zero = Scalar.zero()
        if any(lhs.get(t, zero) != rhs.get(t, zero) for t in keys):
            return False
    return True


def _rho_counital(rho, H: HopfStarAlgebra, dim: int) -> bool:
    for i in range(dim):
        acc = vzero(dim)
        for (t, k), v in rho[i].items():
            e = H.counit_of(unit_vec(H.dim, k))
            if e:
                acc[t] = acc[t] + v * e
        if acc != unit_vec(dim, i):
            return False
    return True


def _coaction_invariants(rho, H: HopfStarAlgebra, dim: int) -> Subspace:
    """C = {z : rho(z) = z (x) 1_H}."""
    solver = KernelSolver(dim)
    unit = H.unit
    for t in range(dim):
        for k in range(H.dim):
            row: dict[int, Scalar] = {}
            for i in range(dim):
                v = rho[i].get((t, k))
                if v:
                    row[i] = row.get(i, Scalar.zero()) + v
            if unit[k] and t < dim:
                row[t] = row.get(t, Scalar.zero()) - unit[k]
            row = {a: b for a, b in row.items() if b}
            if row:
                solver.add_row(row)
    return solver.subspace()


def _expectation_matrix(B: ComoduleAlgebra, sp: SmashProduct,
                        H: HopfStarAlgebra, tau: Vec) -> Mat:
    """E(b (x) a x| h) = b0 (x) a x| h2 tau(h1 S(b1))."""
    nb, nh, nt = B.alg.dim, H.dim, sp.total.dim
    na = sp.dim_A
    dim = nb * nt
    cols = []
    for b in range(nb):
        for a in range(na):
            for h in range(nh):
                img = vzero(dim)
                for (b0, b1), v in B.coact[b].items():
                    sb1 = H.antipode_vec(unit_vec(nh, b1))
                    for (h1, h2), w in H.comult[h].items():
                        coeff = Scalar.zero()
                        for k, sv in enumerate(sb1):
                            if not sv:
                                continue
                            for m, mv in H.algebra.mult[h1][k].items():
                                if tau[m]:
                                    coeff = coeff + sv * mv * tau[m]
                        if coeff:
                            dst = b0 * nt + (a * nh + h2)
                            img[dst] = img[dst] + v * w * coeff
                cols.append(img)
    return [[cols[j][i] for j in range(dim)] for i in range(dim)]


def _certify_invariants(data: FixedPointData) -> bool:
    C = data.invariants
    total = data.total
    for u in C.basis:
        if not C.contains(total.star_vec(u)):
            return False
        for v in C.basis:
            if not C.contains(total.mul_vec(u, v)):
                return False
    return C.contains(total.unit)


def _expectation_bimodular(data: FixedPointData) -> bool:
    total, E, C = data.total, data.expectation, data.invariants
    dim = total.dim
    for z in C.basis:
        for t in range(dim):
            x = unit_vec(dim, t)
            if mat_vec(E, total.mul_vec(z, x)) \
                    != total.mul_vec(z, mat_vec(E, x)):
                return False
            if mat_vec(E, total.mul_vec(x, z)) \
                    != total.mul_vec(mat_vec(E, x), z):
                return False
    return True


def _swap_identity(H: HopfStarAlgebra, tau: Vec) -> bool:
    """x_1 tau(y S(x_2)) = tau(y_1 S(x)) y_2 for all basis x, y."""
    nh = H.dim
    for x in range(nh):
        sx = H.antipode_vec(unit_vec(nh, x))
        for y in range(nh):
            lhs = vzero(nh)
            for (x1, x2), v in H.comult[x].items():
                sx2 = H.antipode_vec(unit_vec(nh, x2))
                coeff = Scalar.zero()
                for k, sv in enumerate(sx2):
                    if not sv:
                        continue
                    for m, mv in H.algebra.mult[y][k].items():
                        if tau[m]:
                            coeff = coeff + sv * mv * tau[m]
                if coeff:
                    lhs[x1] = lhs[x1] + v * coeff
            rhs = vzero(nh)
            for (y1, y2), v in H.comult[y].items():
                coeff = Scalar.zero()
                for k, sv in enumerate(sx):
                    if not sv:
                        continue
                    for m, mv in H.algebra.mult[y1][k].items():
                        if tau[m]:
                            coeff = coeff + sv * mv * tau[m]
                if coeff:
                    rhs[y2] = rhs[y2] + v * coeff
            if lhs != rhs:
                return False
    return True


def _beta_13(data: FixedPointData, b: int) -> Vec:
    """beta(b) with legs 1 and 3: b0 (x) 1 x| b1."""
    sp = data.smash
    out = vzero(data.total.dim)
    for (b0, b1), v in data.comodule.coact[b].items():
        inner = sp.embed_H_vec(unit_vec(sp.dim_H, b1))
        for t, x in enumerate(inner):
            if x:
                out[data.idx(b0, t)] = out[data.idx(b0, t)] + v * x
    return out


def fixed_point_algebra(data: FixedPointData) -> Subspace:
    return data.invariants


def conditional_expectation_E(data: FixedPointData) -> Mat:
    return data.expectation


# -- the canonical dual action on B ------------------------------------------------


def lambda_action(B: ComoduleAlgebra,
                  tau: Vec | None = None) -> tuple[list, Subspace, Report]:
    """Lambda(omega) b = b_0 omega(b_1) for omega = tau(. S(h)).

    Returns the operator list indexed by the H basis, the image subspace of
    End(B), and a report certifying the convolution-to-composition law and
    that the counit functional acts as the identity.
    """
    H = B.hopf
    if tau is None:
        tau = haar(H)
    nb, nh = B.alg.dim, H.dim

    def lam_of_functional(phi: Vec) -> Mat:
        cols = []
        for b in range(nb):
            img = vzero(nb)
            for (b0, b1), v in B.coact[b].items():
                if phi[b1]:
                    img[b0] = img[b0] + v * phi[b1]
            cols.append(img)
        return [[cols[j][i] for j in range(nb)] for i in range(nb)]

    def omega(h: int) -> Vec:
        # tau(. S(e_h)) as a functional vector on H
        sh = H.antipode_vec(unit_vec(nh, h))
        out = vzero(nh)
        for x in range(nh):
            val = Scalar.zero()
            for k, sv in enumerate(sh):
                if not sv:
                    continue
                for m, mv in H.algebra.mult[x][k].items():
                    if tau[m]:
                        val = val + sv * mv * tau[m]
            out[x] = val
        return out

    mats = [lam_of_functional(omega(h)) for h in range(nh)]
    rep = Report("canonical dual action on B")

    witness = None
    for g in range(nh):
        for h in range(nh):
            og, oh = omega(g), omega(h)
            conv = vzero(nh)
            for x in range(nh):
                val = Scalar.zero()
                for (x1, x2), v in H.comult[x].items():
                    if og[x1] and oh[x2]:
                        val = val + v * og[x1] * oh[x2]
                conv[x] = val
            if lam_of_functional(conv) != mat_mul(mats[g], mats[h]):
                witness = (g, h)
                break
        if witness:
            break
    rep.add("convolution_matches_composition", witness is None, witness,
            note="Lambda(omega * omega') = Lambda(omega) Lambda(omega')")

    counit_fn = list(H.counit)
    from .linalg import identity_matrix

    rep.add("counit_acts_as_identity",
            lam_of_functional(counit_fn) == identity_matrix(nb))

    image = Subspace.from_vectors(
        [[X[i][j] for i in range(nb) for j in range(nb)] for X in mats],
        nb * nb,
    )
    return mats, image, rep


# -- T_q extraction ------------------------------------------------------------------


def t_q_extraction(data: FixedPointData, Q: HopfStarAlgebra,
                   qact: ModuleAlgebraAction) -> tuple[list, Report]:
    """For each basis q: q_hat(b (x) h) = q . E(b (x) 1 x| h) decomposes as
    T_q(b (x) h_1) (x) 1 x| h_2 with T_q unique.

    qact acts on the reified invariants algebra; its carrier must be the
    reification of C produced by reify_invariants.  The membership
    V^{-1}(h_2) q_hat(b (x) h_1) in B (x) (A' cap A x| H^cop) is certified
    on the way.
    """
    C = data.invariants
    total = data.total
    sp = data.smash
    H = data.hopf
    nb, nh = data.dim_B, H.dim
    if qact.alg.dim != C.dim:
        raise InputError("q-action does not live on the invariants algebra")
    act_rep = validate_action(qact)
    if not act_rep.ok:
        raise InputError(f"q-action invalid at {act_rep.first_failure().name}")

    rep = Report("T_q extraction")
    commutant = relative_commutant(sp.subspace_A(), sp.total)
    b_tensor_comm = Subspace.from_vectors(
        [_b_leg(data, b, w) for b in range(nb) for w in commutant.basis],
        total.dim,
    )

    def q_hat(qi: int, b: int, h: int) -> Vec:
        z = mat_vec(data.expectation,
                    _b_leg(data, b, sp.embed_H_vec(unit_vec(nh, h))))
        coords = C.coordinates(z)
        acted = qact.apply(unit_vec(Q.dim, qi), coords)
        out = vzero(total.dim)
        for c, basis_vec in zip(acted, C.basis):
            if c:
                out = [x + c * y for x, y in zip(out, basis_vec)]
        return out

    witness = None
    for qi in range(Q.dim):
        for b in range(nb):
            for h in range(nh):
                acc = vzero(total.dim)
                for (h1, h2), v in H.comult[h].items():
                    vinv = _b_leg(
                        data, _unit_b_index(data),
                        sp.embed_H_vec(H.antipode_vec(unit_vec(nh, h2))),
                    )
                    term = total.mul_vec(vinv, q_hat(qi, b, h1))
                    acc = [x + v * y if y else x
                           for x, y in zip(acc, term)]
                if not b_tensor_comm.contains(acc):
                    witness = (qi, b, h)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("commutant_membership", witness is None, witness,
            note="V^{-1}(h_2) q_hat(b (x) h_1) lands in"
                 " B (x) (A' cap A x| H^cop)")

    # T_q read off through the counit and the unit-of-A coefficient
    t_mats = []
    witness = None
    for qi in range(Q.dim):
        T = [[Scalar.zero()] * (nb * nh) for _ in range(nb)]
        for b in range(nb):
            for h in range(nh):
                img = q_hat(qi, b, h)
                target = _read_b_component(data, img)
                for out_b in range(nb):
                    T[out_b][b * nh + h] = target[out_b]
        t_mats.append(T)
        # verify the decomposition exactly
        for b in range(nb):
            for h in range(nh):
                expected = vzero(total.dim)
                for (h1, h2), v in H.comult[h].items():
                    tq = [T[o][b * nh + h1] for o in range(nb)]
                    inner = sp.embed_H_vec(unit_vec(nh, h2))
                    for o, c in enumerate(tq):
                        if c:
                            for t, x in enumerate(inner):
                                if x:
                                    expected[data.idx(o, t)] = (
                                        expected[data.idx(o, t)] + v * c * x
                                    )
                if expected != q_hat(qi, b, h):
                    witness = (qi, b, h)
                    break
            if witness:
                break
        if witness:
            break
    if witness is not None:
        raise InputError(f"decomposition failed (witness {witness})")
    rep.add("decomposition", True)
    return t_mats, rep


def _b_leg(data: FixedPointData, b: int, w: Vec) -> Vec:
    out = vzero(data.total.dim)
    for t, x in enumerate(w):
        if x:
            out[data.idx(b, t)] = x
    return out


def _unit_b_index(data: FixedPointData) -> int:
    unit = data.comodule.alg.unit
    for i, u in enumerate(unit):
        if u:
            if u != Scalar.one():
                raise InputError("B unit is not a basis vector")
            return i
    raise InputError("B has no unit")


def _read_b_component(data: FixedPointData, z: Vec) -> Vec:
    """(id_B (x) coefficient of 1_A (x) counit) applied to z."""
    sp = data.smash
    nb = data.dim_B
    out = vzero(nb)
    for b in range(nb):
        seg = z[b * sp.total.dim:(b + 1) * sp.total.dim]
        a_part = sp.project_A(seg)
        # a_part must be a multiple of 1_A; read the coefficient
        unit = sp.action.alg.unit
        lead = next(i for i, u in enumerate(unit) if u)
        c = a_part[lead] * unit[lead].inverse()
        if [c * u for u in unit] != list(a_part):
            raise InputError("decomposition failed: A leg is not scalar")
        out[b] = c
    return out


# -- the Galois group relative to an ambient --------------------------------------


@dataclass
class BanicaGaloisResult:
    subspace: Subspace               # inside Q_ambient
    hopf: HopfStarAlgebra            # reified
    lifted_action: ModuleAlgebraAction   # on the reified invariants algebra
    invariants_algebra: StarAlgebra
    invariants_inclusion: Mat
    state: Vec                       # the Lambda-invariant faithful state
    report: Report


def reify_invariants(data: FixedPointData):
    return reify(data.total, data.invariants, name="C")


def qgal_banica(data: FixedPointData, Q_ambient: HopfStarAlgebra,
                q_on_B: ModuleAlgebraAction) -> BanicaGaloisResult:
    """The largest Hopf *-subalgebra of Q_ambient commuting with Lambda.

    Requires a validated module *-algebra action of Q_ambient on B that
    preserves some Lambda-invariant faithful state (existence is checked by
    exact solve, positivity at the float embedding).  The result is lifted
    to an action on the invariants algebra C through
    q . (x_0 (x) a x| x_1) = (q . x)_0 (x) a x| (q . x)_1, certified to be
    a module *-algebra action fixing A pointwise.
    """
    B = data.comodule
    rep = Report("banica galois group")
    if q_on_B.alg is not B.alg and q_on_B.alg.dim != B.alg.dim:
        raise InputError("Q_ambient action invalid: wrong carrier")
    act_rep = validate_action(q_on_B)
    if not act_rep.ok:
        raise InputError(
            f"Q_ambient action invalid at {act_rep.first_failure().name}"
        )

    lam_mats, lam_image, lam_rep = lambda_action(B, data.haar)
    rep.merge(lam_rep, prefix="lambda:")

    phi = _lambda_invariant_state(data, lam_mats)
    rep.add("lambda_invariant_faithful_state_found", True,
            note="exact invariance and nondegeneracy; positivity is the"
                 " usual float verdict")

    # q-operators commuting with the Lambda image
    nb, nq = B.alg.dim, Q_ambient.dim
    solver = KernelSolver(nq)
    ops = [q_on_B.operator(unit_vec(nq, i)) for i in range(nq)]
    for L in lam_mats:
        for t in range(nb):
            for s in range(nb):
                row: dict[int, Scalar] = {}
                for i in range(nq):
                    val = Scalar.zero()
                    for p in range(nb):
                        if ops[i][t][p] and L[p][s]:
                            val = val + ops[i][t][p] * L[p][s]
                        if L[t][p] and ops[i][p][s]:
                            val = val - L[t][p] * ops[i][p][s]
                    if val:
                        row[i] = val
                if row:
                    solver.add_row(row)
    commuting = solver.subspace()
    rep.add("commuting_subspace_dim", True,
            witness={"dim": commuting.dim})

    result = largest_hopf_star_subalgebra(Q_ambient, commuting)
    from .measuring import hopf_subalgebra_report

    rep.merge(hopf_subalgebra_report(Q_ambient, result), prefix="hopf:")

    # range-projection re-verification w.r.t. the phi inner product
    proj_ok = _range_projection_check(data, B, phi, lam_mats, ops, result,
                                      Q_ambient)
    rep.add("commutes_with_range_projections", proj_ok)

    hopf = reify_hopf_subalgebra(Q_ambient, result, name="HC")
    lifted, c_alg, inclusion, lift_rep = _lift_to_invariants(
        data, Q_ambient, q_on_B, result, hopf
    )
    rep.merge(lift_rep, prefix="lift:")

    if not rep.ok:
        raise ConsistencyError(
            f"banica certificate failed at {rep.first_failure().name}"
        )
    return BanicaGaloisResult(result, hopf, lifted, c_alg, inclusion, phi,
                              rep)


def _lambda_invariant_state(data: FixedPointData, lam_mats: list) -> Vec:
    """phi with phi(Lambda_h b) = tau(S(h)) phi(b), faithful, normalized."""
    B = data.comodule
    H = data.hopf
    tau = data.haar
    nb, nh = B.alg.dim, H.dim
    solver = KernelSolver(nb)
    for h in range(nh):
        sh = H.antipode_vec(unit_vec(nh, h))
        scale = Scalar.zero()
        for k, sv in enumerate(sh):
            if sv and tau[k]:
                scale = scale + sv * tau[k]
        L = lam_mats[h]
        for b in range(nb):
            row: dict[int, Scalar] = {}
            for p in range(nb):
                if L[p][b]:
                    row[p] = row.get(p, Scalar.zero()) + L[p][b]
            if scale:
                row[b] = row.get(b, Scalar.zero()) - scale
            row = {k: v for k, v in row.items() if v}
            if row:
                solver.add_row(row)
    space = solver.subspace()
    unit = B.alg.unit
    # Echelon basis vectors can have degenerate Grams one by one (orbit
    # indicators, say) while a combination is faithful; sweep the basis,
    # the plain sum, then geometric-weight sums.
    candidates = [list(t) for t in space.basis]
    if space.dim > 1:
        total = vzero(len(unit))
        for t in space.basis:
            total = [x + y for x, y in zip(total, t)]
        candidates.append(total)
        for w in (2, 3, 5):
            weighted = vzero(len(unit))
            scale = Scalar.one()
            for t in space.basis:
                weighted = [x + scale * y for x, y in zip(weighted, t)]
                scale = scale * Scalar.from_int(w)
            candidates.append(weighted)
    for t in candidates:
        val = Scalar.zero()
        for x, u in zip(t, unit):
            if x and u:
                val = val + x * u
        if not val:
            continue
        phi = vscale(val.inverse(), t)
        G = gram_matrix(B.alg, phi)
        if is_nonsingular(G) and numerically_positive(G):
            return phi
    raise InputError("no Lambda-invariant faithful state")


def _range_projection_check(data, B, phi, lam_mats, ops, result,
                            Q_ambient) -> bool:
    """Operators of the result commute with the phi-orthogonal range
    projections of every Lambda operator."""
    from .jones import GnsSpace
    from .report import Report as _R

    carrier = StarAlgebra(B.alg.dim, B.alg.mult, B.alg.unit, B.alg.star,
                          state=phi)
    space = GnsSpace(carrier, gram_matrix(carrier), _R("phi space"))
    nb = B.alg.dim
    for L in lam_mats:
        image = Subspace.from_vectors(
            [mat_vec(L, unit_vec(nb, j)) for j in range(nb)], nb
        )
        P = orthogonal_projection(space, image)
        for qvec in result.basis:
            op = _combine(ops, qvec)
            if mat_mul(op, P) != mat_mul(P, op):
                return False
    return True


def _combine(ops: list, coeffs: Vec) -> Mat:
    n = len(ops[0])
    out = [vzero(n) for _ in range(n)]
    for c, op in zip(coeffs, ops):
        if c:
            for i in range(n):
                row = op[i]
                out[i] = [x + c * y if y else x
                          for x, y in zip(out[i], row)]
    return out


def _lift_to_invariants(data: FixedPointData, Q_ambient, q_on_B,
                        result: Subspace, hopf: HopfStarAlgebra):
    """Lift q . Phi(a (x) x) = Phi(a (x) q . x) to the reified C."""
    B = data.comodule
    sp = data.smash
    total = data.total
    na, nb = sp.dim_A, B.alg.dim
    rep = Report("lift to invariants")

    # Phi: A (x) B -> total, a (x) x -> x0 (x) a x| x1
    phi_cols = []
    for a in range(na):
        for x in range(nb):
            out = vzero(total.dim)
            for (b0, b1), v in B.coact[x].items():
                t_idx = data.idx(b0, a * sp.dim_H + b1)
                out[t_idx] = out[t_idx] + v
            phi_cols.append(out)
    image = Subspace.from_vectors(phi_cols, total.dim)
    rep.add("phi_image_is_invariants", image == data.invariants)

    # kernel preservation: (id (x) op(q))(ker Phi) inside ker Phi
    phi_matrix = [[phi_cols[j][i] for j in range(na * nb)]
                  for i in range(total.dim)]
    kernel = _matrix_kernel(phi_matrix, na * nb)
    ops = [q_on_B.operator(unit_vec(Q_ambient.dim, i))
           for i in range(Q_ambient.dim)]
    ok = True
    for qvec in result.basis:
        op = _combine(ops, qvec)
        for kv in kernel.basis:
            moved = _id_tensor_op(kv, op, na, nb)
            if not kernel.contains(moved):
                ok = False
                break
        if not ok:
            break
    rep.add("kernel_preserved", ok)

    c_alg, inclusion = reify(total, data.invariants, name="C")
    C = data.invariants
    k = C.dim

    # action tensor of the reified result Hopf on the reified C
    act = []
    for qvec in result.basis:
        op = _combine(ops, qvec)
        plane = []
        for ci in range(k):
            coords = _preimage_coords(phi_matrix, C.basis[ci], na * nb)
            moved = _id_tensor_op(coords, op, na, nb)
            image_vec = mat_vec(phi_matrix, moved)
            out_coords = C.coordinates(image_vec)
            plane.append({m: c for m, c in enumerate(out_coords) if c})
        act.append(plane)
    lifted = ModuleAlgebraAction(hopf, c_alg, act, name="lifted to C")
    lift_val = validate_action(lifted)
    rep.merge(lift_val, prefix="action:")

    # A is fixed pointwise
    a_idx = []
    for a in range(na):
        vec = data.embed_A_vec(unit_vec(na, a))
        a_idx.append(C.coordinates(vec))
    ok = True
    for qi in range(hopf.dim):
        eps = hopf.counit_of(unit_vec(hopf.dim, qi))
        for coords in a_idx:
            lhs = lifted.apply(unit_vec(hopf.dim, qi), coords)
            rhs = vscale(eps, coords)
            if lhs != rhs:
                ok = False
                break
        if not ok:
            break
    rep.add("fixes_A_pointwise", ok)
    return lifted, c_alg, inclusion, rep


def _matrix_kernel(matrix: Mat, n_cols: int) -> Subspace:
    solver = KernelSolver(n_cols)
    for row in matrix:
        solver.add_row({j: v for j, v in enumerate(row) if v})
    return solver.subspace()


def _id_tensor_op(v: Vec, op: Mat, na: int, nb: int) -> Vec:
    out = vzero(na * nb)
    for a in range(na):
        seg = v[a * nb:(a + 1) * nb]
        moved = mat_vec(op, seg)
        for x, val in enumerate(moved):
            out[a * nb + x] = val
    return out


def _preimage_coords(phi_matrix: Mat, target: Vec, n_cols: int) -> Vec:
    sol = solve_linear(phi_matrix, list(target))
    if sol == "inconsistent":
        raise ConsistencyError("invariants vector outside Phi image")
    return sol.particular
