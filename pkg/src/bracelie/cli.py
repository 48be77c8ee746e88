"""Command-line entry point.

Verb groups: lie, brace, lazard, repr, gb, cert, sys, mat.  Every command
accepts --json for machine-readable output; all listings are sorted so a
command run twice on the same inputs produces byte-identical output.

Exit codes: 0 verified/valid/consistent, 1 refuted/invalid, 2 resource
budget exceeded, 3 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import braces as br
from . import exactalg as xa
from . import lazard as lz
from . import liealg as la
from . import polysolve as ps

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3

BUNDLED_WITNESS = "witness_f11_u11.json"


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message, EXIT_INPUT)


def emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def resolve_algebra(args, default_ring="Z"):
    """--file takes priority; --builtin names a bundled construction."""
    if getattr(args, "file", None):
        try:
            obj = la.algebra_from_json(load_json_file(args.file))
        except (KeyError, ValueError, TypeError) as exc:
            raise CliError(f"{args.file}: {exc}") from exc
        if getattr(args, "p", None):
            raise CliError("--p applies to builtin algebras; files carry their ring")
        return obj
    name = getattr(args, "builtin", None)
    if not name:
        raise CliError("one of --file or --builtin is required")
    p = getattr(args, "p", None)
    ring = xa.PrimeField(p) if p else (xa.ZZ if default_ring == "Z" else None)
    if ring is None:
        raise CliError("--p is required for this command with a builtin algebra")
    try:
        return la.builtin_algebra(name, ring)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def parse_vector(text, dim, ring):
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != dim:
        raise CliError(f"expected {dim} comma-separated coordinates, got {len(parts)}")
    try:
        return tuple(ring.coerce(t) for t in parts)
    except (ValueError, TypeError) as exc:
        raise CliError(f"bad coordinate in {text!r}: {exc}") from exc


def load_witness_arg(path):
    if path in (None, "bundled"):
        ref = resources.files("bracelie").joinpath(f"data/{BUNDLED_WITNESS}")
        return ps.witness_from_json(json.loads(ref.read_text(encoding="utf-8")))
    try:
        return ps.witness_from_json(load_json_file(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


# -- lie ------------------------------------------------------------------


def cmd_lie_check(args):
    obj = resolve_algebra(args)
    base = obj.base if isinstance(obj, la.PresentedLieAlgebra) else obj
    failures = base.validate()
    if failures:
        triples = [list(f[:3]) for f in failures]
        emit(args, {"valid": False, "failing_triples": triples},
             f"invalid: {len(failures)} Jacobi failures, first at {failures[0][:3]}")
        return EXIT_REFUTED
    view = base if base.ring.is_field else base._field_view()
    cls = view.nilpotency_class()
    cls_out = "infinite" if cls == float("inf") else cls
    center = view.center()
    payload = {"valid": True, "nilpotency_class": cls_out, "center_dimension": len(center),
               "lower_central_series": view.lower_central_series()}
    emit(args, payload,
         f"valid; class {cls_out}; center dim {len(center)}")
    return EXIT_OK


def cmd_lie_reduce(args):
    obj = resolve_algebra(args, default_ring="Z")
    base = obj.base if isinstance(obj, la.PresentedLieAlgebra) else obj
    if base.ring != xa.ZZ:
        raise CliError("reduction starts from an algebra over Z")
    reduced = base.reduce_mod(args.p)
    out = la.PresentedLieAlgebra(reduced, obj.generators, obj.rules) \
        if isinstance(obj, la.PresentedLieAlgebra) else reduced
    la.dump_algebra(out, args.output)
    emit(args, {"written": args.output}, f"wrote {args.output}")
    return EXIT_OK


def cmd_lie_burde(args):
    try:
        lambdas = [int(t) for t in args.lambdas.split(",")]
    except ValueError as exc:
        raise CliError(f"bad lambda list: {exc}") from exc
    ring = xa.PrimeField(args.p) if args.p else xa.ZZ
    try:
        algebra = la.burde_family(lambdas, ring)
    except la.LambdaConstraintError as exc:
        emit(args, {"ok": False, "violated": exc.constraint}, f"rejected: {exc}")
        return EXIT_REFUTED
    failures = algebra.validate()
    payload = {"ok": not failures, "dim": algebra.dim,
               "brackets": la.algebra_to_json(algebra)["brackets"]}
    emit(args, payload, "family member is a valid Lie algebra" if not failures
         else f"Jacobi fails on {len(failures)} triples")
    return EXIT_OK if not failures else EXIT_REFUTED


# -- brace ----------------------------------------------------------------


def parse_orders(text):
    try:
        orders = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise CliError(f"bad cyclic orders {text!r}") from exc
    try:
        return br.AbelianGroup(orders)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_brace_enum(args):
    group = parse_orders(args.additive)
    bound = args.budget or br.ENUM_HOL_BOUND
    tables = br.HolTables(group, bound=bound)
    subs = br.enumerate_regular_subgroups(group, hol_bound=bound, tables=tables)
    orbits = br.classify_up_to_aut(group, subs, tables=tables)
    rows = br.enumeration_report(group, subs, orbits)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        print(f"{group}: {len(subs)} regular subgroups, {len(orbits)} orbits")
        for k, orbit in enumerate(orbits):
            b = br.brace_from_regular(orbit[0])
            kind = "abelian" if b.is_multiplicative_abelian() else "nonabelian"
            print(f"  orbit {k}: size {len(orbit)}, multiplicative group {kind}")
    return EXIT_OK


def load_brace_file(path):
    try:
        return br.brace_from_json(load_json_file(path))
    except br.BraceAxiomError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_brace_validate(args):
    try:
        load_brace_file(args.file)
    except br.BraceAxiomError as exc:
        emit(args, {"valid": False, "violation": exc.kind, "witness": exc.witness},
             f"invalid: {exc}")
        return EXIT_REFUTED
    emit(args, {"valid": True}, "valid left brace")
    return EXIT_OK


def cmd_brace_check_orders(args):
    try:
        brace = load_brace_file(args.file)
    except br.BraceAxiomError as exc:
        raise CliError(f"{args.file}: {exc}") from exc
    try:
        report = br.check_order_equality(brace)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    payload = {
        "p": report.p, "exponent": report.exponent, "rank": report.rank,
        "hypothesis_rank_plus_2_le_p": report.hypothesis_holds,
        "orders_agree": report.all_equal,
        "orders": [list(t) for t in report.orders],
        "multiplicative_abelian": report.multiplicative_abelian,
        "additive_type": list(report.additive_type),
        "multiplicative_type": None if report.multiplicative_type is None
        else list(report.multiplicative_type),
        "types_match": report.types_match,
    }
    mism = [i for i, (a, b) in enumerate(report.orders) if a != b]
    human = (f"p = {report.p}, rank {report.rank}, hypothesis "
             f"{'holds' if report.hypothesis_holds else 'fails'}; "
             + ("all additive and multiplicative orders agree" if report.all_equal
                else f"orders differ at elements {mism}"))
    emit(args, payload, human)
    return EXIT_OK if report.all_equal else EXIT_REFUTED


def cmd_brace_gamma(args):
    try:
        brace = load_brace_file(args.file)
    except br.BraceAxiomError as exc:
        raise CliError(f"{args.file}: {exc}") from exc
    emb = br.gamma_embed(brace)
    sub = emb.as_regular_subgroup()
    payload = {"order": brace.n, "target": repr(emb.group),
               "regular_image": True,
               "image": br.subgroup_to_json(sub)}
    emit(args, payload,
         f"gamma embeds the multiplicative group into Hol({emb.group}); "
         f"image is a regular subgroup of order {len(sub)}")
    return EXIT_OK


def cmd_brace_hol(args):
    group = parse_orders(args.additive)
    count = br.automorphism_count(group)
    total = group.order * count
    bound = args.budget or 64
    elements = br.holomorph(group, bound=bound)
    payload = {"group": repr(group), "aut_order": count, "hol_order": total,
               "materialized": len(elements)}
    emit(args, payload, f"|Aut| = {count}, |Hol| = {total}")
    return EXIT_OK


# -- lazard ----------------------------------------------------------------


def cmd_lazard_bch(args):
    series = lz.bch_symbolic(args.degree)
    if args.json:
        terms = [{"word": list(w), "coeff": str(c)} for w, c in series.sorted_terms()]
        print(json.dumps({"degree": args.degree, "terms": terms}, sort_keys=True))
    else:
        print(series.pretty())
    return EXIT_OK


def _lazard_algebra(args):
    obj = resolve_algebra(args, default_ring=None)
    base = obj.base if isinstance(obj, la.PresentedLieAlgebra) else obj
    if not isinstance(base.ring, xa.PrimeField):
        raise CliError("this command needs an algebra over F_p (use --p with builtins)")
    return base


def cmd_lazard_product(args):
    base = _lazard_algebra(args)
    x = parse_vector(args.x, base.dim, base.ring)
    y = parse_vector(args.y, base.dim, base.ring)
    try:
        z = lz.exp_product(base, x, y)
    except lz.LazardHypothesisError as exc:
        raise CliError(str(exc)) from exc
    emit(args, {"product": list(z)}, ",".join(str(c) for c in z))
    return EXIT_OK


def cmd_lazard_order(args):
    base = _lazard_algebra(args)
    x = parse_vector(args.x, base.dim, base.ring)
    try:
        n = lz.group_element_order(base, x)
    except lz.LazardHypothesisError as exc:
        raise CliError(str(exc)) from exc
    emit(args, {"order": n}, str(n))
    return EXIT_OK


def _load_matrix_file(path):
    try:
        return xa.matrix_from_json(load_json_file(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_lazard_matexp(args):
    m = _load_matrix_file(args.file)
    try:
        result = lz.mat_exp(m)
    except (ValueError, TypeError, lz.LazardHypothesisError) as exc:
        raise CliError(str(exc)) from exc
    _write_or_print_matrix(args, result)
    return EXIT_OK


def cmd_lazard_matlog(args):
    m = _load_matrix_file(args.file)
    try:
        result = lz.mat_log(m)
    except (ValueError, TypeError, lz.LazardHypothesisError) as exc:
        raise CliError(str(exc)) from exc
    _write_or_print_matrix(args, result)
    return EXIT_OK


def _write_or_print_matrix(args, m):
    if getattr(args, "output", None):
        xa.dump_matrix(m, args.output)
        emit(args, {"written": args.output}, f"wrote {args.output}")
    else:
        emit(args, xa.matrix_to_json(m),
             "\n".join(" ".join(str(x) for x in row) for row in m.entries))


# -- repr -------------------------------------------------------------------


def _presented(args):
    obj = resolve_algebra(args)
    if not isinstance(obj, la.PresentedLieAlgebra):
        raise CliError("this command needs a presented algebra (generators and rules)")
    return obj


def cmd_repr_gen(args):
    presented = _presented(args)
    try:
        system = ps.generate_system(presented, args.target, rabinowitsch=args.rabinowitsch)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    ps.dump_system(system, args.output)
    emit(args, {"written": args.output, "variables": len(system.variables),
                "generators": len(system.generators)},
         f"wrote {args.output}: {len(system.variables)} variables, "
         f"{len(system.generators)} polynomials")
    return EXIT_OK


def cmd_repr_verify(args):
    presented = _presented(args)
    witness = load_witness_arg(args.witness)
    try:
        report, _ = ps.substitute_witness(presented, witness)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    payload = {
        "p": report.p,
        "relations_checked": len(report.relations),
        "relations_failing": [list(pair) for pair in report.failing],
        "morphism": report.is_morphism,
        "central_image_nonzero": report.central_image_nonzero,
        "injective": report.injective,
    }
    human = (f"p = {report.p}: {len(report.relations)} bracket relations checked; "
             f"morphism: {'yes' if report.is_morphism else 'no'}; "
             f"injective: {'yes' if report.injective else 'no'}")
    emit(args, payload, human)
    return EXIT_OK if report.injective else EXIT_REFUTED


# -- gb / cert / sys ----------------------------------------------------------


def _load_system_file(path):
    try:
        return ps.system_from_json(load_json_file(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def cmd_gb_solve(args):
    system = _load_system_file(args.system)
    if not isinstance(system.ring, xa.PrimeField):
        if args.p is None:
            raise CliError("system is over Z: pass --p to reduce before solving")
        system = system.reduce_mod(args.p)
    elif args.p is not None:
        raise CliError("--p conflicts with a system already over F_p")
    if args.field_equations:
        system = system.with_field_equations()
    budget = args.budget or 200_000
    result = ps.buchberger(system, order_name=args.order, budget=budget)
    payload = {
        "order": args.order,
        "basis_size": len(result.basis),
        "inconsistent": result.inconsistent,
        "reductions": result.reductions,
        "basis": [ps.poly_to_json(g) for g in result.basis],
    }
    human = ("1 in ideal: the system has no solution over the algebraic closure"
             if result.inconsistent else
             f"reduced basis of size {len(result.basis)}; 1 not in the ideal")
    emit(args, payload, human)
    return EXIT_REFUTED if result.inconsistent else EXIT_OK


def cmd_cert_verify(args):
    system = _load_system_file(args.system)
    try:
        cert = ps.certificate_from_json(load_json_file(args.cert))
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"{args.cert}: {exc}") from exc
    try:
        report = ps.verify_certificate(system, cert, args.p)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from exc
    payload = {"identity_holds": report.identity_holds, "k": str(report.k),
               "coprime_to_p": report.coprime_to_p, "certified": report.certified}
    if report.certified:
        human = f"certified: no solution over F_{args.p} (k = {report.k})"
    elif not report.identity_holds:
        human = "identity check failed: sum f_i*g_i is not the claimed constant"
    else:
        human = f"identity holds but gcd(k, p) != 1 (k = {report.k}); not certified"
    emit(args, payload, human)
    return EXIT_OK if report.certified else EXIT_REFUTED


def cmd_sys_solve_small(args):
    system = _load_system_file(args.system)
    if not isinstance(system.ring, xa.PrimeField):
        if args.p is None:
            raise CliError("system is over Z: pass --p to reduce before solving")
        system = system.reduce_mod(args.p)
    bound = args.budget or 10_000_000
    solutions = ps.solve_small(system, space_bound=bound)
    payload = {"count": len(solutions), "solutions": [list(s) for s in solutions]}
    emit(args, payload, f"{len(solutions)} solutions"
         + (":\n" + "\n".join(",".join(map(str, s)) for s in solutions) if solutions else ""))
    return EXIT_OK if solutions else EXIT_REFUTED


# -- mat -----------------------------------------------------------------------


def cmd_mat_mul(args):
    a = _load_matrix_file(args.a)
    b = _load_matrix_file(args.b)
    try:
        _write_or_print_matrix(args, xa.mat_mul(a, b))
    except (xa.DimensionError, xa.RingMismatchError) as exc:
        raise CliError(str(exc)) from exc
    return EXIT_OK


def cmd_mat_commutator(args):
    a = _load_matrix_file(args.a)
    b = _load_matrix_file(args.b)
    try:
        _write_or_print_matrix(args, xa.commutator(a, b))
    except (xa.DimensionError, xa.RingMismatchError) as exc:
        raise CliError(str(exc)) from exc
    return EXIT_OK


def cmd_mat_pow(args):
    a = _load_matrix_file(args.a)
    try:
        _write_or_print_matrix(args, xa.mat_pow(a, args.n))
    except (xa.DimensionError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    return EXIT_OK


def cmd_mat_props(args):
    a = _load_matrix_file(args.a)
    try:
        payload = {"strictly_upper": xa.is_strictly_upper(a),
                   "unipotent_upper": xa.is_unipotent_upper(a)}
    except xa.DimensionError as exc:
        raise CliError(str(exc)) from exc
    emit(args, payload,
         f"strictly upper: {payload['strictly_upper']}; "
         f"unipotent upper: {payload['unipotent_upper']}")
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampling commands (fixed default)")
    common.add_argument("--budget", type=int, default=None,
                        help="resource budget override for searches")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; execution is synchronous")

    algebra_src = argparse.ArgumentParser(add_help=False)
    algebra_src.add_argument("--file", help="Lie algebra JSON file")
    algebra_src.add_argument("--builtin", help="builtin algebra name "
                             f"({', '.join(sorted(la.BUILTIN_ALGEBRAS))})")
    algebra_src.add_argument("--p", type=int, default=None,
                             help="prime modulus for builtin algebras")

    parser = Parser(prog="bracelie", description=__doc__,
                    formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = parser.add_subparsers(dest="group", required=True)

    lie = groups.add_parser("lie", help="Lie algebra checks").add_subparsers(
        dest="verb", required=True)
    p = lie.add_parser("check", parents=[common, algebra_src],
                       help="Jacobi audit, nilpotency class, center")
    p.set_defaults(func=cmd_lie_check)
    p = lie.add_parser("reduce", parents=[common, algebra_src],
                       help="reduce an algebra over Z mod p and write it out")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_lie_reduce)
    p = lie.add_parser("burde", parents=[common],
                       help="build a parametrized family member from 13 lambdas")
    p.add_argument("--lambdas", required=True, help="13 comma-separated integers")
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_lie_burde)

    brace = groups.add_parser("brace", help="braces and holomorphs").add_subparsers(
        dest="verb", required=True)
    p = brace.add_parser("enum", parents=[common],
                         help="enumerate regular subgroups of Hol(A)")
    p.add_argument("--additive", required=True, help="cyclic orders, e.g. 2,2")
    p.set_defaults(func=cmd_brace_enum)
    p = brace.add_parser("validate", parents=[common], help="check brace axioms")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_brace_validate)
    p = brace.add_parser("check-orders", parents=[common],
                         help="additive vs multiplicative element orders")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_brace_check_orders)
    p = brace.add_parser("gamma", parents=[common],
                         help="embed the multiplicative group into the holomorph")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_brace_gamma)
    p = brace.add_parser("hol", parents=[common], help="holomorph size report")
    p.add_argument("--additive", required=True)
    p.set_defaults(func=cmd_brace_hol)

    lazard = groups.add_parser("lazard", help="BCH products and matrix exp/log")\
        .add_subparsers(dest="verb", required=True)
    p = lazard.add_parser("bch", parents=[common], help="print the symbolic series")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_lazard_bch)
    p = lazard.add_parser("product", parents=[common, algebra_src],
                          help="BCH product of two coordinate vectors")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_lazard_product)
    p = lazard.add_parser("order", parents=[common, algebra_src],
                          help="multiplicative order of a vector in exp(L)")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_lazard_order)
    p = lazard.add_parser("matexp", parents=[common], help="exp of a strictly upper matrix")
    p.add_argument("--file", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lazard_matexp)
    p = lazard.add_parser("matlog", parents=[common], help="log of a unipotent matrix")
    p.add_argument("--file", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lazard_matlog)

    repr_ = groups.add_parser("repr", help="faithful-representation systems")\
        .add_subparsers(dest="verb", required=True)
    p = repr_.add_parser("gen", parents=[common, algebra_src],
                         help="generate the polynomial system for a target size")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--rabinowitsch", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_repr_gen)
    p = repr_.add_parser("verify", parents=[common, algebra_src],
                         help="verify a witness pair of generator images")
    p.add_argument("--witness", default=None,
                   help="witness JSON file (default: the bundled F_11 witness)")
    p.set_defaults(func=cmd_repr_verify)

    gb = groups.add_parser("gb", help="Groebner bases over F_p").add_subparsers(
        dest="verb", required=True)
    p = gb.add_parser("solve", parents=[common], help="reduced basis and consistency verdict")
    p.add_argument("--system", required=True)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--field-equations", action="store_true")
    p.add_argument("--p", type=int, default=None,
                   help="reduce a system over Z mod p first")
    p.set_defaults(func=cmd_gb_solve)

    cert = groups.add_parser("cert", help="unsolvability certificates").add_subparsers(
        dest="verb", required=True)
    p = cert.add_parser("verify", parents=[common])
    p.add_argument("--system", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_cert_verify)

    sys_ = groups.add_parser("sys", help="brute-force solution search").add_subparsers(
        dest="verb", required=True)
    p = sys_.add_parser("solve-small", parents=[common])
    p.add_argument("--system", required=True)
    p.add_argument("--p", type=int, default=None)
    p.set_defaults(func=cmd_sys_solve_small)

    mat = groups.add_parser("mat", help="exact matrix operations").add_subparsers(
        dest="verb", required=True)
    for name, func, needs_b in (("mul", cmd_mat_mul, True),
                                ("commutator", cmd_mat_commutator, True),
                                ("pow", cmd_mat_pow, False),
                                ("props", cmd_mat_props, False)):
        p = mat.add_parser(name, parents=[common])
        p.add_argument("--a", required=True)
        if needs_b:
            p.add_argument("--b", required=True)
        if name == "pow":
            p.add_argument("--n", type=int, required=True)
        if name in ("mul", "commutator", "pow"):
            p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except br.BoundExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except br.BraceAxiomError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_REFUTED


if __name__ == "__main__":
    raise SystemExit(main())
