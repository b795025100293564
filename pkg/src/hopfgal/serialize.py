"""JSON document schema: parsing, validation, canonical emission.

A workspace file is one JSON object {"documents": {name: document}}.  Every
document carries a "kind" from {algebra, hopf, action, comodule, pairing,
subspace, job} and may reference other documents by name.  Scalars appear
as integers, [num, den] pairs, or {"order", "num", "den"} objects; all
scalars in a workspace are lifted to the lcm of the orders present.
Emission is deterministic: canonical scalar form, sorted keys, fixed
separators, so identical inputs give byte-identical reports.
"""

from __future__ import annotations

import json
import math
import os

from .actions import ModuleAlgebraAction
from .algebra import StarAlgebra
from .banica import ComoduleAlgebra
from .errors import InputError
from .hopf import HopfPairing, HopfStarAlgebra, group_algebra
from .linalg import Subspace
from .scalars import Scalar

KINDS = ("algebra", "hopf", "action", "comodule", "pairing", "subspace",
         "job")

MAX_DIM_ENV = "HOPFGAL_MAX_DIM"
DEFAULT_MAX_DIM = 64


def max_dim() -> int:
    raw = os.environ.get(MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError as e:
        raise InputError(f"{MAX_DIM_ENV} must be an integer") from e


def scalar_from(doc, where: str) -> Scalar:
    try:
        return Scalar.from_json(doc)
    except InputError as e:
        raise InputError(f"{where}: {e}") from e


def _vector(doc, where: str) -> list:
    if not isinstance(doc, list):
        raise InputError(f"{where}: expected an array")
    return [scalar_from(v, f"{where}[{i}]") for i, v in enumerate(doc)]


def _matrix(doc, where: str) -> list:
    if not isinstance(doc, list):
        raise InputError(f"{where}: expected an array of rows")
    return [_vector(r, f"{where}[{i}]") for i, r in enumerate(doc)]


def _tensor3_sparse(doc, dim: int, where: str):
    out = []
    if len(doc) != dim:
        raise InputError(f"{where}: expected {dim} planes")
    for i, plane in enumerate(doc):
        if len(plane) != dim:
            raise InputError(f"{where}[{i}]: expected {dim} rows")
        row = []
        for j, line in enumerate(plane):
            if len(line) != dim:
                raise InputError(f"{where}[{i}][{j}]: expected {dim} entries")
            cell = {}
            for k, v in enumerate(line):
                s = scalar_from(v, f"{where}[{i}][{j}][{k}]")
                if s:
                    cell[k] = s
            row.append(cell)
        out.append(row)
    return out


def _comult_sparse(doc, dim: int, where: str):
    out = []
    for i, plane in enumerate(doc):
        cell = {}
        for j, line in enumerate(plane):
            for k, v in enumerate(line):
                s = scalar_from(v, f"{where}[{i}][{j}][{k}]")
                if s:
                    cell[(j, k)] = s
        out.append(cell)
    return out


# -- document parsers -----------------------------------------------------------


def parse_algebra(body: dict, where: str) -> StarAlgebra:
    try:
        dim = int(body["dim"])
    except KeyError as e:
        raise InputError(f"{where}: missing field {e}") from e
    if dim > max_dim():
        raise InputError(f"{where}: dim {dim} exceeds {MAX_DIM_ENV}")
    mult = _tensor3_sparse(body["mult"], dim, f"{where}.mult")
    unit = _vector(body["unit"], f"{where}.unit")
    star = _matrix(body["star"], f"{where}.star")
    state = None
    if body.get("state") is not None:
        state = _vector(body["state"], f"{where}.state")
    return StarAlgebra(dim, mult, unit, star, state,
                       name=body.get("name", ""))


def parse_hopf(body: dict, where: str) -> HopfStarAlgebra:
    if "group_table" in body:
        table = body["group_table"]
        H = group_algebra(table, name=body.get("name", ""))
        if body.get("dual"):
            from .hopf import function_algebra

            return function_algebra(table, name=body.get("name", ""))
        return H
    alg = parse_algebra(body, where)
    comult = _comult_sparse(body["comult"], alg.dim, f"{where}.comult")
    counit = _vector(body["counit"], f"{where}.counit")
    antipode = _matrix(body["antipode"], f"{where}.antipode")
    return HopfStarAlgebra(alg, comult, counit, antipode,
                           name=body.get("name", ""))


class Workspace:
    """Resolved object graph of a workspace file."""

    def __init__(self, documents: dict):
        self.raw = documents
        self.objects: dict = {}
        self.kinds: dict = {}
        self._parse_all()

    @staticmethod
    def load(path: str) -> "Workspace":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as e:
            raise InputError(f"cannot read workspace: {e}") from e
        except json.JSONDecodeError as e:
            raise InputError(f"workspace is not valid JSON: {e}") from e
        if not isinstance(doc, dict) or "documents" not in doc:
            raise InputError('workspace must be {"documents": {...}}')
        return Workspace(doc["documents"])

    def _parse_all(self):
        for name, body in self.raw.items():
            if not isinstance(body, dict) or "kind" not in body:
                raise InputError(f"/documents/{name}: missing kind")
            kind = body["kind"]
            if kind not in KINDS:
                raise InputError(f"/documents/{name}: unknown kind {kind!r}")
            self.kinds[name] = kind
        order = ("algebra", "hopf", "subspace", "action", "comodule",
                 "pairing", "job")
        for kind in order:
            for name, body in self.raw.items():
                if self.kinds[name] != kind:
                    continue
                where = f"/documents/{name}"
                self.objects[name] = self._parse_one(kind, body, where)

    def _ref(self, body: dict, key: str, kinds: tuple, where: str):
        try:
            ref = body[key]
        except KeyError as e:
            raise InputError(f"{where}: missing reference {key!r}") from e
        if ref not in self.objects:
            raise InputError(f"{where}.{key}: dangling reference {ref!r}")
        if self.kinds[ref] not in kinds:
            raise InputError(
                f"{where}.{key}: {ref!r} has kind {self.kinds[ref]},"
                f" expected one of {kinds}"
            )
        return self.objects[ref]

    def _parse_one(self, kind: str, body: dict, where: str):
        if kind == "algebra":
            return parse_algebra(body, where)
        if kind == "hopf":
            return parse_hopf(body, where)
        if kind == "subspace":
            ambient = int(body["ambient_dim"])
            basis = _matrix(body.get("basis", []), f"{where}.basis")
            return Subspace.from_vectors(basis, ambient)
        if kind == "action":
            hopf = self._ref(body, "hopf", ("hopf",), where)
            alg_ref = body.get("alg", body.get("algebra"))
            if alg_ref is None:
                raise InputError(f"{where}: missing reference 'alg'")
            body2 = dict(body)
            body2["alg"] = alg_ref
            target = self._ref(body2, "alg", ("algebra", "hopf"), where)
            if isinstance(target, HopfStarAlgebra):
                target = target.algebra
            act = _tensor3_rect(body["act"], hopf.dim, target.dim,
                                f"{where}.act")
            if hopf.dim * target.dim > max_dim():
                raise InputError(
                    f"{where}: total dimension exceeds {MAX_DIM_ENV}"
                )
            return ModuleAlgebraAction(hopf, target, act,
                                       name=body.get("name", ""))
        if kind == "comodule":
            hopf = self._ref(body, "hopf", ("hopf",), where)
            body2 = dict(body)
            body2["alg"] = body.get("alg", body.get("algebra"))
            target = self._ref(body2, "alg", ("algebra", "hopf"), where)
            if isinstance(target, HopfStarAlgebra):
                target = target.algebra
            coact = _comult_rect(body["coact"], target.dim, hopf.dim,
                                 f"{where}.coact")
            return ComoduleAlgebra(hopf, target, coact,
                                   name=body.get("name", ""))
        if kind == "pairing":
            Q = self._ref(body, "q", ("hopf",), where)
            H = self._ref(body, "h", ("hopf",), where)
            matrix = _matrix(body["matrix"], f"{where}.matrix")
            return HopfPairing(Q, H, matrix)
        if kind == "job":
            return dict(body)
        raise InputError(f"{where}: unhandled kind {kind}")

    def lift_orders(self):
        """Lift every scalar in every parsed object to the common order."""
        orders = set()

        def scan(x):
            if isinstance(x, Scalar):
                orders.add(x.order)

        self._walk(scan)
        if not orders:
            return 1
        target = 1
        for n in orders:
            target = math.lcm(target, n)
        if target > 1:
            def lift(x):
                if isinstance(x, Scalar) and x.order != target:
                    return x.lift(target)
                return x

            self._rewrite(lift)
        return target

    def _walk(self, fn):
        seen = set()

        def rec(obj):
            if isinstance(obj, Scalar):
                fn(obj)
            elif isinstance(obj, dict):
                for v in obj.values():
                    rec(v)
            elif isinstance(obj, (list, tuple)):
                for v in obj:
                    rec(v)
            elif hasattr(obj, "__dict__") and id(obj) not in seen:
                seen.add(id(obj))
                for attr in vars(obj):
                    rec(getattr(obj, attr))

        for obj in self.objects.values():
            rec(obj)

    def _rewrite(self, fn):
        seen = set()

        def rec(obj):
            if isinstance(obj, list):
                for i, v in enumerate(obj):
                    if isinstance(v, Scalar):
                        obj[i] = fn(v)
                    else:
                        rec(v)
            elif isinstance(obj, dict):
                for k, v in obj.items():
                    if isinstance(v, Scalar):
                        obj[k] = fn(v)
                    else:
                        rec(v)
            elif hasattr(obj, "__dict__") and id(obj) not in seen:
                seen.add(id(obj))
                for attr, val in vars(obj).items():
                    if isinstance(val, Scalar):
                        setattr(obj, attr, fn(val))
                    else:
                        rec(val)

        for obj in self.objects.values():
            rec(obj)

    def get(self, name: str, kinds: tuple | None = None):
        if name not in self.objects:
            raise InputError(f"no document named {name!r}")
        if kinds and self.kinds[name] not in kinds:
            raise InputError(
                f"document {name!r} has kind {self.kinds[name]},"
                f" expected {kinds}"
            )
        return self.objects[name]

    def jobs_for(self, op: str) -> list[str]:
        return [name for name, kind in self.kinds.items()
                if kind == "job" and self.objects[name].get("op") == op]


def _tensor3_rect(doc, d1: int, d2: int, where: str):
    if len(doc) != d1:
        raise InputError(f"{where}: expected {d1} planes")
    out = []
    for i, plane in enumerate(doc):
        if len(plane) != d2:
            raise InputError(f"{where}[{i}]: expected {d2} rows")
        row = []
        for j, line in enumerate(plane):
            cell = {}
            for k, v in enumerate(line):
                s = scalar_from(v, f"{where}[{i}][{j}][{k}]")
                if s:
                    cell[k] = s
            row.append(cell)
        out.append(row)
    return out


def _comult_rect(doc, d1: int, d2: int, where: str):
    if len(doc) != d1:
        raise InputError(f"{where}: expected {d1} planes")
    out = []
    for i, plane in enumerate(doc):
        cell = {}
        for j, line in enumerate(plane):
            for k, v in enumerate(line):
                s = scalar_from(v, f"{where}[{i}][{j}][{k}]")
                if s:
                    cell[(j, k)] = s
        out.append(cell)
    return out


# -- canonical emission -------------------------------------------------------------


def emit(doc: dict) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def subspace_doc(sub: Subspace) -> dict:
    return {
        "ambient_dim": sub.ambient_dim,
        "dim": sub.dim,
        "basis": [[x.to_json() for x in row] for row in sub.basis],
    }


parse_matrix = _matrix
parse_vector = _vector
