"""Command line entry point: instance I/O, dispatch, certificates.

Instances and certificates are JSON.  Certificates are self-contained and
deterministic byte for byte; `verify` re-checks every claim a certificate
makes against the instance file alone.

Exit codes: 0 success, 1 malformed input, 2 typed algorithmic failure
(fail / inconclusive / failed_po, or a failed verification).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracles, sdit
from .smr import pad_square
from .smr import smr as run_smr
from .errors import SymrankError
from .fields import ExtensionField, FieldSpec, PrimeField, _find_irreducible, \
    ensure_size, make_field
from .linalg import Mat, Subspace
from .po import PoInstance, _power_escapes, solve_po
from .spaces import MatSpace
from .wong import first_wong, second_wong, verify_witness


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------

def parse_field_name(name: str):
    name = name.lower()
    if name in ("q", "rational", "rationals"):
        return make_field(FieldSpec("rational"))
    if name.startswith("gf"):
        body = name[2:]
        if "^" in body:
            p_s, k_s = body.split("^")
            p, k = int(p_s), int(k_s)
            return ExtensionField(p, k, _find_irreducible(p, k))
        return PrimeField(int(body))
    raise ValueError(f"unknown field name {name!r}")


def load_instance(path: str) -> MatSpace:
    with open(path) as fh:
        data = json.load(fh)
    field = make_field(FieldSpec.from_json(data["field"]))
    n = int(data["n"])
    n_cols = int(data.get("n_cols", n))
    gens = []
    for mat in data["basis"]:
        rows = [[field.scalar_from_json(e) for e in row] for row in mat]
        m = Mat(field, rows)
        if m.nrows != n or m.ncols != n_cols:
            raise ValueError("basis matrix has wrong shape")
        gens.append(m)
    return MatSpace.from_spanning(gens, field, n, n_cols)


def save_instance(sp: MatSpace, path: str) -> None:
    f = sp.field
    data = {
        "field": f.spec.to_json(),
        "n": sp.nrows,
        "n_cols": sp.ncols,
        "basis": [[[f.scalar_to_json(e) for e in row] for row in g.rows]
                  for g in sp.gens],
    }
    _write_json(data, path)


def load_subspace(path: str, field) -> Subspace:
    with open(path) as fh:
        data = json.load(fh)
    rows = [[field.scalar_from_json(e) for e in row] for row in data["basis"]]
    return Subspace(field, int(data["ambient_dim"]), rows)


def _subspace_json(u: Subspace):
    f = u.field
    return [[f.scalar_to_json(e) for e in row] for row in u.basis]


def _coeffs_json(field, coeffs):
    return [field.scalar_to_json(c) for c in coeffs]


def _write_json(data, path) -> None:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_smr(args) -> int:
    sp = load_instance(args.instance)
    res = run_smr(sp)
    wf = make_field(res.working_field)
    cert = {
        "algorithm": "smr",
        "status": res.status,
        "coefficients": _coeffs_json(wf, res.coefficients),
        "rank": res.rank,
        "working_field": res.working_field.to_json(),
        "trace_summary": {"iterations": len(res.ranks_visited),
                          "ranks_visited": res.ranks_visited},
    }
    if res.witness is not None:
        cert["witness_basis"] = _subspace_json(res.witness)
        cert["c"] = pad_square(sp).nrows - res.rank
    _write_json(cert, args.output)
    return 2 if res.status == "failed_po" else 0


def cmd_sdit_tri(args) -> int:
    if args.mod_p:
        with open(args.instance) as fh:
            data = json.load(fh)
        int_mats = [[[int(Fraction(str(e))) for e in row] for row in mat]
                    for mat in data["basis"]]
        report = sdit.rational_sdit(int_mats, prime_budget=args.prime_budget)
        cert = {
            "algorithm": "rational_sdit",
            "status": report.outcome,
            "working_field": {"kind": "rational"},
            "trace_summary": {"primes_tried": report.primes_tried,
                              "bound_used": str(report.bound_used)},
        }
        if report.outcome == "nonsingular_combination":
            cert["prime_used"] = report.prime_used
            cert["coefficients"] = report.integer_coefficients
        _write_json(cert, args.output)
        return 0 if report.outcome == "nonsingular_combination" else 2

    sp = load_instance(args.instance)
    out = sdit.tri_algo(sp)
    f = sp.field
    cert = {
        "algorithm": "tri_algo",
        "status": out.kind,
        "working_field": f.spec.to_json(),
        "trace_summary": {"generators": sp.dim},
    }
    if out.kind == "nonsingular":
        cert["coefficients"] = _coeffs_json(f, out.coefficients)
    elif out.kind == "witness":
        cert["witness_basis"] = _subspace_json(out.witness)
        cert["c"] = out.witness.dim - sp.image_of(out.witness).dim
    _write_json(cert, args.output)
    return 2 if out.kind == "fail" else 0


def cmd_tri_test(args) -> int:
    sp = load_instance(args.instance)
    pivot = sp.gens[args.pivot]
    result = sdit.is_triangularizable_with_nonsingular(sp, pivot)
    cert = {
        "algorithm": "tri_test",
        "status": "triangularizable" if result else "not_triangularizable",
        "pivot": args.pivot,
        "working_field": sp.field.spec.to_json(),
    }
    _write_json(cert, args.output)
    return 0


def cmd_wong(args) -> int:
    sp = load_instance(args.instance)
    anchor = sp.gens[args.anchor]
    trace = (first_wong if args.kind == "first" else second_wong)(anchor, sp)
    cert = {
        "algorithm": "wong",
        "kind": trace.kind,
        "anchor": args.anchor,
        "terms": [_subspace_json(t) for t in trace.terms],
        "limit": _subspace_json(trace.limit),
        "working_field": sp.field.spec.to_json(),
    }
    _write_json(cert, args.output)
    return 0


def cmd_po(args) -> int:
    sp = load_instance(args.instance)
    u = load_subspace(args.u, sp.field)
    u_prime = load_subspace(args.uprime, sp.field)
    answer = solve_po(PoInstance(sp, u, u_prime))
    f = sp.field
    cert = {
        "algorithm": "po",
        "status": "found" if answer.found else "no",
        "u_basis": _subspace_json(u),
        "uprime_basis": _subspace_json(u_prime),
        "working_field": f.spec.to_json(),
    }
    if answer.found:
        cert["coefficients"] = _coeffs_json(f, answer.coefficients)
        cert["ell"] = answer.ell
    _write_json(cert, args.output)
    return 0 if answer.found else 2


def cmd_oracle(args) -> int:
    sp = load_instance(args.instance)
    report = oracles.oracle_report(sp, budget=args.budget)
    f = sp.field
    cert = {
        "algorithm": "oracle",
        "max_rank": report.max_rank,
        "disc": report.disc,
        "argmax_coefficients": _coeffs_json(f, report.argmax_coefficients),
        "argmax_witness": _subspace_json(report.argmax_witness),
        "enumerated_elements": report.enumerated_elements,
        "enumerated_subspaces": report.enumerated_subspaces,
        "working_field": f.spec.to_json(),
    }
    _write_json(cert, args.output)
    return 0


def cmd_gallery(args) -> int:
    name = args.name.replace("-", "_")
    if name == "sk3":
        field = parse_field_name(args.field)
        sp = oracles.sk3(field)
    else:
        base = load_instance(args.base)
        if name == "strict_upper_embed":
            sp = oracles.strict_upper_embed(base)
        elif name in ("yz_lift", "yz_lift_shifted"):
            a = Mat.identity(base.field, max(base.nrows, base.ncols))
            padded = pad_square(base)
            fn = oracles.yz_lift if name == "yz_lift" else oracles.yz_lift_shifted
            sp = fn(padded, a)
        else:
            raise ValueError(f"unknown gallery name {args.name!r}")
    save_instance(sp, args.output)
    return 0


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _lift_space(sp: MatSpace, wf_spec: FieldSpec):
    """Rebuild the working field of a certificate and embed the instance."""
    if sp.field.spec == wf_spec:
        return sp, make_field(wf_spec)
    big = make_field(wf_spec)
    rebuilt, embed = ensure_size(sp.field, big.cardinality())
    if rebuilt.spec != wf_spec:
        raise ValueError("certificate working field does not match the instance")
    gens = [Mat(big, [[embed(e) for e in r] for r in g.rows]) for g in sp.gens]
    return MatSpace(big, sp.nrows, sp.ncols, gens), big


def verify_certificate(sp: MatSpace, cert: dict) -> bool:
    algo = cert["algorithm"]

    if algo == "smr":
        if cert["status"] == "failed_po":
            return True
        work = pad_square(sp)
        space, wf = _lift_space(work, FieldSpec.from_json(cert["working_field"]))
        coeffs = [wf.scalar_from_json(c) for c in cert["coefficients"]]
        mat = space.element(coeffs)
        if mat.rank() != cert["rank"]:
            return False
        witness = Subspace(wf, space.ncols,
                           [[wf.scalar_from_json(e) for e in row]
                            for row in cert["witness_basis"]])
        return verify_witness(space, witness, cert["c"])

    if algo == "tri_algo":
        f = sp.field
        if cert["status"] == "nonsingular":
            coeffs = [f.scalar_from_json(c) for c in cert["coefficients"]]
            return sp.element(coeffs).rank() == sp.nrows
        if cert["status"] == "witness":
            witness = Subspace(f, sp.ncols,
                               [[f.scalar_from_json(e) for e in row]
                                for row in cert["witness_basis"]])
            return witness.dim - sp.image_of(witness).dim >= max(1, cert["c"])
        return True  # fail makes no claim

    if algo == "rational_sdit":
        if cert["status"] != "nonsingular_combination":
            return True
        ints = [int(c) for c in cert["coefficients"]]
        n = sp.nrows
        combo = [[sum(c * int(g.rows[i][j]) for c, g in zip(ints, sp.gens))
                  for j in range(n)] for i in range(n)]
        return sdit._int_det(combo) != 0

    if algo == "po":
        f = sp.field
        u = Subspace(f, sp.ncols, [[f.scalar_from_json(e) for e in row]
                                   for row in cert["u_basis"]])
        u_prime = Subspace(f, sp.ncols, [[f.scalar_from_json(e) for e in row]
                                         for row in cert["uprime_basis"]])
        if cert["status"] == "no":
            return True
        coeffs = [f.scalar_from_json(c) for c in cert["coefficients"]]
        return _power_escapes(sp.element(coeffs), cert["ell"], u, u_prime)

    if algo == "wong":
        anchor = sp.gens[cert["anchor"]]
        trace = (first_wong if cert["kind"] == "first" else second_wong)(anchor, sp)
        f = sp.field
        return cert["limit"] == _subspace_json(trace.limit) and \
            cert["terms"] == [_subspace_json(t) for t in trace.terms]

    if algo == "oracle":
        report = oracles.oracle_report(sp)
        return (report.max_rank == cert["max_rank"]
                and report.disc == cert["disc"])

    if algo == "tri_test":
        pivot = sp.gens[cert["pivot"]]
        result = sdit.is_triangularizable_with_nonsingular(sp, pivot)
        claimed = cert["status"] == "triangularizable"
        return result == claimed

    raise ValueError(f"unknown certificate algorithm {algo!r}")


def cmd_verify(args) -> int:
    sp = load_instance(args.instance)
    with open(args.cert) as fh:
        cert = json.load(fh)
    ok = verify_certificate(sp, cert)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 2


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symrank",
        description="Symbolic matrix rank and determinant identity testing "
                    "via generalized Wong sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smr", help="constructive maximum-rank search")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_smr)

    p = sub.add_parser("sdit-tri", help="SDIT for triangularizable spaces")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--mod-p", action="store_true",
                   help="integer pipeline via reduction modulo small primes")
    p.add_argument("--prime-budget", type=int, default=None)
    p.set_defaults(fn=cmd_sdit_tri)

    p = sub.add_parser("tri-test", help="triangularizability given a nonsingular pivot")
    p.add_argument("instance")
    p.add_argument("--pivot", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_tri_test)

    p = sub.add_parser("wong", help="dump a Wong sequence trace")
    p.add_argument("instance")
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("--kind", choices=["first", "second"], required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_wong)

    p = sub.add_parser("po", help="power overflow solver")
    p.add_argument("instance")
    p.add_argument("--u", required=True, help="subspace file for U")
    p.add_argument("--uprime", required=True, help="subspace file for U'")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_po)

    p = sub.add_parser("verify", help="re-check a certificate against its instance")
    p.add_argument("instance")
    p.add_argument("--cert", required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force rank and discrepancy")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("gallery", help="write a constructed example instance")
    p.add_argument("name", help="sk3 | yz_lift | yz_lift_shifted | strict_upper_embed")
    p.add_argument("--field", default="gf5", help="for sk3: gf5, gf2^3, rational")
    p.add_argument("--base", default=None, help="instance file for the lifts")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_gallery)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SymrankError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
