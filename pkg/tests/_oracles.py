"""Independent oracles and random instance generators for the test suite.

The production largest_subcoalgebra decides membership through
Delta x in V (x) V; the oracle here goes through the middle leg of the
double comultiplication instead (the subcoalgebra generated by x is the
span of (f (x) id (x) g) Delta^2 x), so the two routes share no code path.
"""

from __future__ import annotations


from hopfgal.hopf import StarCoalgebra
from hopfgal.linalg import (
    KernelSolver,
    SpanBuilder,
    Subspace,
    identity_matrix,
    mat_inverse,
    mat_vec,
    unit_vec,
    vzero,
)
from hopfgal.scalars import Scalar


def middle_leg_vectors(C: StarCoalgebra, x) -> list:
    """Spanning vectors of the subcoalgebra generated by x."""
    out = {}
    for (i, j, k), v in C.iterated_comult(x, 3).items():
        key = (i, k)
        if key not in out:
            out[key] = vzero(C.dim)
        out[key][j] = out[key][j] + v
    return [v for v in out.values() if any(v)]


def oracle_largest_subcoalgebra(C: StarCoalgebra, W: Subspace,
                                stabilizers=()) -> Subspace:
    """Decreasing iteration with Delta^2-middle-leg membership."""
    current = W
    while True:
        if current.dim == 0:
            return current
        basis = current.basis
        solver = KernelSolver(len(basis))
        mids = [middle_leg_vectors(C, v) for v in basis]
        for t_idx in range(max(len(m) for m in mids) if mids else 0):
            pass
        # constraints: every middle-leg vector of x must lie in current
        residues = []
        for m in mids:
            residues.append([current.residue(v) for v in m])
        max_terms = max((len(r) for r in residues), default=0)
        for term in range(max_terms):
            for coord in range(C.dim):
                row = {}
                for i, r in enumerate(residues):
                    if term < len(r) and r[term][coord]:
                        row[i] = r[term][coord]
                if row:
                    solver.add_row(row)
        for sigma in stabilizers:
            res = [current.residue(sigma(v)) for v in basis]
            for coord in range(C.dim):
                row = {i: res[i][coord] for i in range(len(basis))
                       if res[i][coord]}
                if row:
                    solver.add_row(row)
        coeffs = solver.subspace()
        if coeffs.dim == len(basis):
            return current
        vectors = []
        for cvec in coeffs.basis:
            out = vzero(C.dim)
            for c, b in zip(cvec, basis):
                if c:
                    out = [p + c * q for p, q in zip(out, b)]
            vectors.append(out)
        current = Subspace.from_vectors(vectors, C.dim)


def stabilized_closure(C: StarCoalgebra, gens, stabilizers=()) -> Subspace:
    """Smallest stabilized subcoalgebra containing the generators."""
    builder = SpanBuilder(C.dim)
    work = []
    for g in gens:
        if builder.insert(list(g)):
            work.append(list(g))
    while work:
        v = work.pop()
        new = middle_leg_vectors(C, v) + [sigma(v) for sigma in stabilizers]
        for w in new:
            if builder.insert(w):
                work.append(w)
    return builder.subspace()


# -- random exact instances over Q(i) ------------------------------------------


def _qi(rng) -> Scalar:
    re = rng.randint(-2, 2)
    im = rng.randint(-2, 2)
    return (Scalar.from_int(re, 4)
            + Scalar.root_of_unity(4) * Scalar.from_int(im, 4))


def random_invertible(rng, n):
    while True:
        P = [[_qi(rng) for _ in range(n)] for _ in range(n)]
        try:
            Pinv = mat_inverse(P)
            return P, Pinv
        except Exception:
            continue


def _grouplike_coalgebra(n: int) -> StarCoalgebra:
    one = Scalar.one(4)
    comult = [{(i, i): one} for i in range(n)]
    counit = [one] * n
    star = identity_matrix(n, 4)
    return StarCoalgebra(n, comult, counit, star)


def _matrix_coalgebra(n: int) -> StarCoalgebra:
    one = Scalar.one(4)
    dim = n * n
    comult = []
    for i in range(n):
        for j in range(n):
            plane = {}
            for k in range(n):
                plane[(i * n + k, k * n + j)] = one
            comult.append(plane)
    counit = [one if i % (n + 1) == 0 else Scalar.zero(4)
              for i in range(dim)]
    star = [unit_vec(dim, (i % n) * n + i // n, 4) for i in range(dim)]
    return StarCoalgebra(dim, comult, counit, star)


def random_coalgebra(rng) -> StarCoalgebra:
    """A dim <= 4 exact coalgebra over Q(i) in a random basis."""
    kind = rng.choice(["group2", "group3", "group4", "matrix2", "mixed"])
    if kind == "matrix2":
        base = _matrix_coalgebra(2)
    elif kind == "mixed":
        # one group-like block plus a 2x2-ish corner: group-likes g, h and
        # a skew primitive p with Delta p = p (x) g + h (x) p
        one = Scalar.one(4)
        comult = [
            {(0, 0): one},
            {(1, 1): one},
            {(2, 0): one, (1, 2): one},
        ]
        counit = [one, one, Scalar.zero(4)]
        star = identity_matrix(3, 4)
        base = StarCoalgebra(3, comult, counit, star)
    else:
        base = _grouplike_coalgebra(int(kind[-1]))
    n = base.dim
    P, Pinv = random_invertible(rng, n)

    comult = []
    for i in range(n):
        x = [Pinv[r][i] for r in range(n)]
        plane = {}
        for (j, k), v in base.comult_vec(x).items():
            for a in range(n):
                if P[a][j]:
                    for b in range(n):
                        if P[b][k]:
                            key = (a, b)
                            cur = plane.get(key, Scalar.zero(4))
                            plane[key] = cur + v * P[a][j] * P[b][k]
            # drop zeros lazily
        comult.append({k: v for k, v in plane.items() if v})
    counit = []
    for i in range(n):
        x = [Pinv[r][i] for r in range(n)]
        counit.append(base.counit_of(x))

    def star_fn(y):
        inner = base.star_vec(mat_vec(Pinv, y))
        return mat_vec(P, inner)

    star = [star_fn(unit_vec(n, i, 4)) for i in range(n)]
    return StarCoalgebra(n, comult, counit, star)


def random_subspace(rng, C: StarCoalgebra) -> Subspace:
    n = C.dim
    k = rng.randint(0, n)
    vecs = [[_qi(rng) for _ in range(n)] for _ in range(k)]
    if rng.random() < 0.4:
        vecs.append(unit_vec(n, rng.randrange(n), 4))
    return Subspace.from_vectors(vecs, n)
