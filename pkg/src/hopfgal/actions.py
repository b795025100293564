"""Module *-algebra actions, smash products and their calculus.

The smash product A x| H lives on A (x) H with (a x| h)(b x| g) =
a (h_1 . b) x| h_2 g.  Its involution is (a x| h)* = (1 x| h*)(a* x| 1),
expanded through the smash multiplication; this is the unique choice making
both canonical embeddings *-morphisms, and the validator certifies it
rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    StarAlgebra,
    is_unital_star_subalgebra,
    relative_commutant,
)
from .errors import InputError
from .hopf import HopfPairing, HopfStarAlgebra
from .linalg import (
    KernelSolver,
    Mat,
    Subspace,
    Vec,
    unit_vec,
    vscale,
    vzero,
)
from .report import Report
from .scalars import Scalar


class ModuleAlgebraAction:
    """Action tensor of a Hopf *-algebra on a *-algebra.

    act[h][a] maps a target index b to the coefficient of e_b in e_h . e_a.
    """

    def __init__(self, hopf: HopfStarAlgebra, alg: StarAlgebra, act,
                 name: str = ""):
        self.hopf = hopf
        self.alg = alg
        self.act = act
        self.name = name
        if len(act) != hopf.dim or any(len(p) != alg.dim for p in act):
            raise InputError("action tensor shape mismatch")

    def apply_basis(self, h: int, a: int) -> dict:
        return self.act[h][a]

    def apply(self, h: Vec, a: Vec) -> Vec:
        out = vzero(self.alg.dim)
        for i, hi in enumerate(h):
            if not hi:
                continue
            plane = self.act[i]
            for j, aj in enumerate(a):
                if not aj:
                    continue
                c = hi * aj
                for k, v in plane[j].items():
                    out[k] = out[k] + c * v
        return out

    def operator(self, h: Vec) -> Mat:
        """Matrix of a -> h . a."""
        n = self.alg.dim
        cols = [self.apply(h, unit_vec(n, j)) for j in range(n)]
        return [[cols[j][k] for j in range(n)] for k in range(n)]

    def to_hom_map(self) -> Mat:
        """Matrix of H -> Hom(A, A), e_h -> its action operator, flattened.

        Row h is the operator of e_h flattened row-major, so the carrier map
        psi used by the measuring machinery is exactly this matrix read
        column-wise.
        """
        n = self.alg.dim
        rows = []
        for h in range(self.hopf.dim):
            op = self.operator(unit_vec(self.hopf.dim, h))
            rows.append([op[i][j] for i in range(n) for j in range(n)])
        return rows


def validate_action(action: ModuleAlgebraAction) -> Report:
    """Module, measuring, unit and star compatibility axioms, exactly."""
    rep = Report(f"action {action.name}".strip())
    H, A = action.hopf, action.alg
    nh, na = H.dim, A.dim

    witness = None
    for g in range(nh):
        for h in range(nh):
            prod = vzero(nh)
            for k, v in H.algebra.mult[g][h].items():
                prod[k] = prod[k] + v
            for a in range(na):
                lhs = action.apply(prod, unit_vec(na, a))
                inner = action.apply(unit_vec(nh, h), unit_vec(na, a))
                rhs = action.apply(unit_vec(nh, g), inner)
                if lhs != rhs:
                    witness = (g, h, a)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("module_axiom", witness is None, witness)

    witness = None
    for a in range(na):
        if action.apply(H.unit, unit_vec(na, a)) != unit_vec(na, a):
            witness = a
            break
    rep.add("unit_acts_trivially", witness is None, witness)

    witness = None
    for h in range(nh):
        for a in range(na):
            for b in range(na):
                prod = vzero(na)
                for k, v in A.mult[a][b].items():
                    prod[k] = prod[k] + v
                lhs = action.apply(unit_vec(nh, h), prod)
                rhs = vzero(na)
                for (h1, h2), v in H.comult[h].items():
                    left = action.apply(unit_vec(nh, h1), unit_vec(na, a))
                    right = action.apply(unit_vec(nh, h2), unit_vec(na, b))
                    rhs = [x + v * y if y else x
                           for x, y in zip(rhs, A.mul_vec(left, right))]
                if lhs != rhs:
                    witness = (h, a, b)
                    break
            if witness:
                break
        if witness:
            break
    rep.add("measuring", witness is None, witness)

    witness = None
    for h in range(nh):
        img = action.apply(unit_vec(nh, h), A.unit)
        target = vscale(H.counit_of(unit_vec(nh, h)), A.unit)
        if img != target:
            witness = h
            break
    rep.add("unit_preserved", witness is None, witness)

    witness = None
    for h in range(nh):
        sh_star = H.star_vec(H.antipode_vec(unit_vec(nh, h)))
        for a in range(na):
            lhs = A.star_vec(action.apply(unit_vec(nh, h), unit_vec(na, a)))
            rhs = action.apply(sh_star, A.star_vec(unit_vec(na, a)))
            if lhs != rhs:
                witness = (h, a)
                break
        if witness:
            break
    rep.add("star_compatibility", witness is None, witness)
    return rep


def invariants(action: ModuleAlgebraAction) -> Subspace:
    """The invariant subalgebra {a : h . a = counit(h) a for all h}."""
    H, A = action.hopf, action.alg
    solver = KernelSolver(A.dim)
    for h in range(H.dim):
        eps = H.counit_of(unit_vec(H.dim, h))
        for b in range(A.dim):
            row: dict = {}
            for a in range(A.dim):
                v = action.act[h][a].get(b)
                if v:
                    row[a] = row.get(a, Scalar.zero()) + v
            if eps:
                row[b] = row.get(b, Scalar.zero()) - eps
            if any(row.values()):
                solver.add_row(row)
    sub = solver.subspace()
    if not is_unital_star_subalgebra(sub, A):
        raise InputError("invariants failed to close; action is not valid")
    return sub


@dataclass
class SmashProduct:
    """A x| H with its embeddings and the source action."""

    total: StarAlgebra
    action: ModuleAlgebraAction
    embed_A: Mat        # columns: images of the A basis
    embed_H: Mat
    proj_A: Mat         # id (x) counit, onto A coordinates

    @property
    def dim_A(self) -> int:
        return self.action.alg.dim

    @property
    def dim_H(self) -> int:
        return self.action.hopf.dim

    def idx(self, a: int, h: int) -> int:
        return a * self.dim_H + h

    def embed_A_vec(self, x: Vec) -> Vec:
        out = vzero(self.total.dim)
        for a, xa in enumerate(x):
            if xa:
                for h, uh in enumerate(self.action.hopf.unit):
                    if uh:
                        out[self.idx(a, h)] = out[self.idx(a, h)] + xa * uh
        return out

    def embed_H_vec(self, x: Vec) -> Vec:
        out = vzero(self.total.dim)
        for h, xh in enumerate(x):
            if xh:
                for a, ua in enumerate(self.action.alg.unit):
                    if ua:
                        out[self.idx(a, h)] = out[self.idx(a, h)] + xh * ua
        return out

    def project_A(self, z: Vec) -> Vec:
        """Apply id (x) counit on the H leg."""
        na, nh = self.dim_A, self.dim_H
        eps = self.action.hopf.counit
        out = vzero(na)
        for a in range(na):
            for h in range(nh):
                zv = z[a * nh + h]
                if zv and eps[h]:
                    out[a] = out[a] + zv * eps[h]
        return out

    def subspace_A(self) -> Subspace:
        na = self.dim_A
        return Subspace.from_vectors(
            [self.embed_A_vec(unit_vec(na, a)) for a in range(na)],
            self.total.dim,
        )

    def subspace_H(self) -> Subspace:
        nh = self.dim_H
        return Subspace.from_vectors(
            [self.embed_H_vec(unit_vec(nh, h)) for h in range(nh)],
            self.total.dim,
        )


def smash_product(action: ModuleAlgebraAction, validate: bool = True,
                  name: str = "") -> SmashProduct:
    """Build A x| H; optionally re-run the full algebra validator on it."""
    H, A = action.hopf, action.alg
    na, nh = A.dim, H.dim
    dim = na * nh
    zero = Scalar.zero()

    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for a in range(na):
        for h in range(nh):
            left = a * nh + h
            for b in range(na):
                for g in range(nh):
                    right = b * nh + g
                    cell = mult[left][right]
                    for (h1, h2), v in H.comult[h].items():
                        acted = action.act[h1][b]
                        if not acted:
                            continue
                        for c, w in acted.items():
                            vc = v * w
                            for d, x in A.mult[a][c].items():
                                vx = vc * x
                                for e, y in H.algebra.mult[h2][g].items():
                                    key = d * nh + e
                                    cell[key] = cell.get(key, zero) + vx * y
    for i in range(dim):
        for j in range(dim):
            mult[i][j] = {k: v for k, v in mult[i][j].items() if v}

    unit = vzero(dim)
    for a, ua in enumerate(A.unit):
        if ua:
            for h, uh in enumerate(H.unit):
                if uh:
                    unit[a * nh + h] = ua * uh

    interim = StarAlgebra(dim, mult, unit,
                          [unit_vec(dim, i) for i in range(dim)],
                          name=name or f"{A.name}x|{H.name}")
    # (e_a x| e_h)* = (1 x| e_h*)(e_a* x| 1), via the multiplication above
    star = []
    for a in range(na):
        astar = A.star_vec(unit_vec(na, a))
        a_leg = vzero(dim)
        for q, vq in enumerate(astar):
            if vq:
                for h0, uh in enumerate(H.unit):
                    if uh:
                        a_leg[q * nh + h0] = a_leg[q * nh + h0] + vq * uh
        for h in range(nh):
            hstar = H.star_vec(unit_vec(nh, h))
            h_leg = vzero(dim)
            for p, vp in enumerate(hstar):
                if vp:
                    for a0, ua in enumerate(A.unit):
                        if ua:
                            h_leg[a0 * nh + p] = h_leg[a0 * nh + p] + vp * ua
            star.append(interim.mul_vec(h_leg, a_leg))

    total = StarAlgebra(dim, mult, unit, star,
                        name=name or f"{A.name}x|{H.name}")

    embed_A = [[Scalar.zero()] * na for _ in range(dim)]
    for a in range(na):
        for h, uh in enumerate(H.unit):
            if uh:
                embed_A[a * nh + h][a] = uh
    embed_H = [[Scalar.zero()] * nh for _ in range(dim)]
    for h in range(nh):
        for a, ua in enumerate(A.unit):
            if ua:
                embed_H[a * nh + h][h] = ua
    proj_A = [[Scalar.zero()] * dim for _ in range(na)]
    eps = H.counit
    for a in range(na):
        for h in range(nh):
            if eps[h]:
                proj_A[a][a * nh + h] = eps[h]

    sp = SmashProduct(total, action, embed_A, embed_H, proj_A)
    if validate:
        from .algebra import validate_algebra

        rep = validate_algebra(total)
        if not rep.ok:
            fail = rep.first_failure()
            raise InputError(
                f"smash product fails validation at {fail.name}"
                f" (witness {fail.witness}); the input action is not a"
                " module *-algebra action"
            )
    return sp


# -- the V-map calculus -------------------------------------------------------


def innerify_check(sp: SmashProduct) -> Report:
    """V(h) = 1 x| h has convolution inverse V(S h) and innerifies the action.

    Checks V * V^{-1} = unit . counit = V^{-1} * V and, for every basis pair,
    h . x x| 1 = V(h_1)(x x| 1)V^{-1}(h_2).
    """
    rep = Report("innerification")
    H = sp.action.hopf
    A = sp.action.alg
    total = sp.total
    nh, na = H.dim, A.dim

    def V(h: int) -> Vec:
        return sp.embed_H_vec(unit_vec(nh, h))

    def Vinv(h: int) -> Vec:
        return sp.embed_H_vec(H.antipode_vec(unit_vec(nh, h)))

    witness = None
    for h in range(nh):
        left = vzero(total.dim)
        right = vzero(total.dim)
        for (h1, h2), v in H.comult[h].items():
            left = [x + v * y if y else x
                    for x, y in zip(left, total.mul_vec(V(h1), Vinv(h2)))]
            right = [x + v * y if y else x
                     for x, y in zip(right, total.mul_vec(Vinv(h1), V(h2)))]
        target = vscale(H.counit_of(unit_vec(nh, h)), list(total.unit))
        if left != target or right != target:
            witness = h
            break
    rep.add("convolution_inverse", witness is None, witness)

    witness = None
    for h in range(nh):
        for a in range(na):
            acted = sp.action.apply(unit_vec(nh, h), unit_vec(na, a))
            lhs = sp.embed_A_vec(acted)
            rhs = vzero(total.dim)
            x_emb = sp.embed_A_vec(unit_vec(na, a))
            for (h1, h2), v in H.comult[h].items():
                term = total.mul_vec(V(h1), total.mul_vec(x_emb, Vinv(h2)))
                rhs = [p + v * q if q else p for p, q in zip(rhs, term)]
            if lhs != rhs:
                witness = (h, a)
                break
        if witness:
            break
    rep.add("innerification_identity", witness is None, witness)
    return rep


def dual_action(sp: SmashProduct, pairing: HopfPairing) -> ModuleAlgebraAction:
    """Action of the dual on the smash: u . (x x| h) = x x| h_1 <u, h_2>."""
    if pairing.H is not sp.action.hopf and pairing.H.dim != sp.dim_H:
        raise InputError("pairing does not match the smash product")
    Qhat = pairing.Q
    H = sp.action.hopf
    total = sp.total
    nh, na = sp.dim_H, sp.dim_A
    zero = Scalar.zero()
    act = []
    for u in range(Qhat.dim):
        plane = []
        for a in range(na):
            for h in range(nh):
                out: dict = {}
                for (h1, h2), v in H.comult[h].items():
                    c = pairing.matrix[u][h2]
                    if c:
                        key = a * nh + h1
                        out[key] = out.get(key, zero) + v * c
                plane.append({k: v for k, v in out.items() if v})
        act.append(plane)
    return ModuleAlgebraAction(Qhat, total, act,
                               name=f"dual action on {total.name}")


def canonical_smash_trace(sp: SmashProduct) -> Vec:
    """The canonical trace tau_A (x) haar on A x| H, certified tracial.

    Requires a tracial state on A; traciality of the product functional is
    re-checked exactly on the smash rather than assumed.
    """
    from .algebra import analyze_state
    from .hopf import haar

    A, H = sp.action.alg, sp.action.hopf
    if A.state is None:
        raise InputError("canonical trace needs a state on A")
    integral = haar(H)
    tau = vzero(sp.total.dim)
    for a in range(sp.dim_A):
        if not A.state[a]:
            continue
        for h in range(sp.dim_H):
            if integral[h]:
                tau[sp.idx(a, h)] = A.state[a] * integral[h]
    probe = StarAlgebra(sp.total.dim, sp.total.mult, sp.total.unit,
                        sp.total.star, state=None)
    verdict = analyze_state(probe, tau)
    if not verdict.tracial or not verdict.hermitian:
        raise InputError("product functional is not a trace on the smash")
    return tau


def is_outer(sp: SmashProduct) -> tuple[bool, Subspace]:
    """Outer iff the commutant of A inside A x| H is the scalars."""
    comm = relative_commutant(sp.subspace_A(), sp.total)
    outer = comm.dim == 1 and comm.contains(sp.total.unit)
    return outer, comm


def is_minimal(action: ModuleAlgebraAction) -> tuple[bool, Subspace]:
    """Minimal iff the commutant of A^H inside A is the scalars."""
    inv = invariants(action)
    comm = relative_commutant(inv, action.alg)
    minimal = comm.dim == 1 and comm.contains(action.alg.unit)
    return minimal, comm
