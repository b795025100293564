"""hopfgal command line: certificate-emitting jobs over workspace files.

    hopfgal <subcommand> --workspace <file> [--job <name>] [--out <file>]

Subcommands: validate, dual, smash, commutant, jones, qgal-depth2,
qgal-banica, centralizer, measure.  Each consumes documents from the
workspace (selected through a job document, or the unique job of matching
op), emits a deterministic JSON report, and exits 0 when every certificate
passed, 1 on a certificate failure, 2 on bad input, 3 when an internal
consistency guard tripped.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .actions import (
    innerify_check,
    smash_product,
    validate_action,
)
from .algebra import relative_commutant, validate_algebra
from .banica import product_coaction, qgal_banica, validate_comodule
from .errors import ConsistencyError, HopfgalError, InputError
from .galois import canonical_qgal
from .hopf import dual_hopf, validate_hopf, validate_pairing
from .jones import basic_construction, bimodule_endos_report, gns
from .linalg import Subspace
from .measuring import (
    SpanConstraint,
    hopf_centralizer,
    hopf_subalgebra_report,
    largest_subcoalgebra,
    universal_measuring_within,
)
from .report import CHECKS_VERSION
from .serialize import Workspace, emit, subspace_doc

EXIT_OK = 0
EXIT_CERT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _tool_header(op: str) -> dict:
    return {"tool": {"name": "hopfgal", "version": __version__,
                     "checks_version": CHECKS_VERSION},
            "op": op}


def _select_job(ws: Workspace, op: str, job_name: str | None) -> dict:
    if job_name is not None:
        job = ws.get(job_name, ("job",))
        if job.get("op") != op:
            raise InputError(
                f"job {job_name!r} has op {job.get('op')!r}, expected {op!r}"
            )
        return job
    names = ws.jobs_for(op)
    if len(names) == 1:
        return ws.get(names[0], ("job",))
    if not names:
        raise InputError(f"no job with op {op!r} in the workspace")
    raise InputError(
        f"multiple jobs with op {op!r}: {sorted(names)}; pass --job"
    )


# -- job runners --------------------------------------------------------------


def run_validate(ws: Workspace, job: dict) -> dict:
    target = job["target"]
    kind = ws.kinds.get(target)
    obj = ws.get(target)
    if kind == "hopf":
        rep = validate_hopf(obj)
    elif kind == "algebra":
        rep = validate_algebra(obj)
    elif kind == "action":
        rep = validate_action(obj)
    elif kind == "comodule":
        rep = validate_comodule(obj)
    elif kind == "pairing":
        rep = validate_pairing(obj)
    else:
        raise InputError(f"cannot validate a document of kind {kind}")
    return {"target": target, "kind": kind, "report": rep.to_json()}


def run_dual(ws: Workspace, job: dict) -> dict:
    H = ws.get(job["target"], ("hopf",))
    dual = dual_hopf(H)
    rep = validate_hopf(dual)
    return {"target": job["target"], "dual": dual.to_json(),
            "report": rep.to_json()}


def run_smash(ws: Workspace, job: dict) -> dict:
    act = ws.get(job["action"], ("action",))
    rep = validate_action(act)
    if not rep.ok:
        return {"action": job["action"], "report": rep.to_json()}
    sp = smash_product(act)
    inner = innerify_check(sp)
    out = {
        "action": job["action"],
        "report": rep.to_json(),
        "smash": sp.total.to_json(),
        "innerify_certificate": inner.to_json(),
    }
    return out


def run_commutant(ws: Workspace, job: dict) -> dict:
    alg = ws.get(job["algebra"])
    if hasattr(alg, "algebra"):
        alg = alg.algebra
    sub = ws.get(job["subspace"], ("subspace",))
    comm = relative_commutant(sub, alg)
    return {"algebra": job["algebra"], "subspace": job["subspace"],
            "commutant": subspace_doc(comm)}


def run_jones(ws: Workspace, job: dict) -> dict:
    alg = ws.get(job["algebra"], ("algebra",))
    sub = ws.get(job["subalgebra"], ("subspace",))
    space = gns(alg)
    bc = basic_construction(space, sub)
    endo_rep = bimodule_endos_report(space, sub)
    from .jones import markov_check
    from .linalg import flatten_matrix, matrix_commutant

    n = space.dim
    n_comm = matrix_commutant([space.lam(b) for b in sub.basis], n)

    n_comm_span = Subspace.from_vectors(
        [flatten_matrix(X) for X in n_comm], n * n
    )
    inter = n_comm_span.intersect(bc.m1)
    return {
        "algebra": job["algebra"],
        "subalgebra": job["subalgebra"],
        "index": {"num": bc.index.numerator, "den": bc.index.denominator},
        "markov_certificate": markov_check(bc).to_json(),
        "dims": {
            "m1": bc.m1.dim,
            "n_commutant_cap_m1": inter.dim,
            "bimodule_endos": endo_rep["dimension_matches"].witness["endos"],
        },
        "report": bc.report.to_json(),
        "bimodule_report": endo_rep.to_json(),
    }


def run_qgal_depth2(ws: Workspace, job: dict) -> dict:
    act = ws.get(job["action"], ("action",))
    sp = smash_product(act)
    cert = canonical_qgal(sp)
    out = {
        "action": job["action"],
        "qgal_dim": cert.qgal.dim,
        "qgal": cert.qgal.to_json(),
        "outer": cert.outer,
        "commutant_dim": cert.outer_witness.dim,
        "report": cert.report.to_json(),
    }
    return out


def run_qgal_banica(ws: Workspace, job: dict) -> dict:
    comodule = ws.get(job["comodule"], ("comodule",))
    act = ws.get(job["action"], ("action",))
    ambient = ws.get(job["ambient_hopf"], ("hopf",))
    ambient_act = ws.get(job["ambient_action"], ("action",))
    sp = smash_product(act)
    data = product_coaction(comodule, sp)
    result = qgal_banica(data, ambient, ambient_act)
    return {
        "comodule": job["comodule"],
        "ambient_hopf": job["ambient_hopf"],
        "centralizer_basis": subspace_doc(result.subspace),
        "centralizer_hopf": result.hopf.to_json(),
        "lifted_action": [
            [[v.to_json() for v in _dense(cell, result.invariants_algebra.dim)]
             for cell in plane]
            for plane in result.lifted_action.act
        ],
        "fixed_point_report": data.report.to_json(),
        "report": result.report.to_json(),
    }


def _dense(cell: dict, dim: int):
    from .scalars import Scalar

    zero = Scalar.zero()
    return [cell.get(k, zero) for k in range(dim)]


def run_centralizer(ws: Workspace, job: dict) -> dict:
    Q = ws.get(job["hopf"], ("hopf",))
    S = ws.get(job["subspace"], ("subspace",))
    result = hopf_centralizer(Q, S)
    rep = hopf_subalgebra_report(Q, result)
    return {
        "hopf": job["hopf"],
        "subspace": job["subspace"],
        "centralizer": subspace_doc(result),
        "report": rep.to_json(),
    }


def run_measure(ws: Workspace, job: dict) -> dict:
    C = ws.get(job["coalgebra"], ("hopf",))
    target = job.get("within")
    if target is not None:
        sub = ws.get(target, ("subspace",))
        log: list[int] = []
        result = largest_subcoalgebra(
            C.coalgebra, sub,
            stabilizers=[C.antipode_vec, C.algebra.star_vec]
            if job.get("stabilize", True) else [],
            log=log,
        )
        return {
            "coalgebra": job["coalgebra"],
            "within": target,
            "subcoalgebra": subspace_doc(result),
            "iteration_dims": log,
        }
    act = ws.get(job["action"], ("action",))
    extra = []
    for span_doc in job.get("spans", []):
        from .serialize import parse_matrix

        extra.append(SpanConstraint.from_matrices(
            int(span_doc["l"]), int(span_doc["r"]),
            parse_matrix(span_doc["left"], "span.left"),
            parse_matrix(span_doc["right"], "span.right"),
            act.alg.dim * act.alg.dim,
        ))
    res = universal_measuring_within(
        act.hopf.coalgebra, act.alg, act.alg, act.to_hom_map(), extra=extra
    )
    return {
        "coalgebra": job["coalgebra"],
        "action": job["action"],
        "subcoalgebra": subspace_doc(res.subspace),
        "iteration_dims": res.log,
        "report": res.report.to_json(),
    }


RUNNERS = {
    "validate": run_validate,
    "dual": run_dual,
    "smash": run_smash,
    "commutant": run_commutant,
    "jones": run_jones,
    "qgal-depth2": run_qgal_depth2,
    "qgal-banica": run_qgal_banica,
    "centralizer": run_centralizer,
    "measure": run_measure,
}


def _report_passed(doc) -> bool:
    if isinstance(doc, dict):
        if "passed" in doc and isinstance(doc["passed"], bool):
            if not doc["passed"]:
                return False
        return all(_report_passed(v) for v in doc.values())
    if isinstance(doc, list):
        return all(_report_passed(v) for v in doc)
    return True


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hopfgal",
        description="exact Hopf *-algebra symmetry computations",
    )
    sub = parser.add_subparsers(dest="op", required=True)
    for op in RUNNERS:
        p = sub.add_parser(op)
        p.add_argument("--workspace", required=True)
        p.add_argument("--job", default=None)
        p.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    try:
        ws = Workspace.load(args.workspace)
        ws.lift_orders()
        job = _select_job(ws, args.op, args.job)
        body = RUNNERS[args.op](ws, job)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as e:
        print(f"internal consistency guard: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except HopfgalError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    doc = _tool_header(args.op)
    doc.update(body)
    passed = _report_passed(body)
    doc["passed"] = passed
    text = emit(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_CERT_FAILED


if __name__ == "__main__":
    sys.exit(main())
