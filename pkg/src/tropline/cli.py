"""Command line interface.

Each subcommand reads JSON documents from files (or standard input when a
positional file is omitted or given as ``-``) and prints one document.
Exit codes: 0 success, 2 schema error, 3 precondition violation,
4 infeasible system.  Errors are reported as a document on standard error.
"""
import argparse
import os
import sys
import warnings
from typing import List, Optional

from . import bdivisors as bd
from . import divisors as dv
from . import fan as fn
from . import io
from . import line_bundles as lb
from . import tropical as tp
from . import weights as wt
from .errors import Infeasible, NotCartier, PreconditionError, SchemaError, UnderdeterminedWarning
from .io import Report

EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_INFEASIBLE = 2, 3, 4


def _read(source: Optional[str], expect):
    if source in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise SchemaError(f"cannot read {source}: {e.strerror}") from None
    return io.loads(text, expect)


def _cone_arg(fan: fn.Fan, idx: List[int]):
    return fan.cone(idx)


def _rays(fan, cone):
    return [list(r) for r in fan.generators(cone)]


# -- handlers ------------------------------------------------------------
def cmd_tropicalize(a):
    w = tp.tropicalize(_read(a.input, "laurent_support"))
    if a.unimodular:
        fine, _ = fn.unimodularize(w.fan)
        w = lb.transport_weight(w, fine)
    return w


def cmd_fan_check(a):
    f = _read(a.input, "fan")
    fn.check_fan(f)
    ok, bad = fn.is_unimodular(f)
    return Report(
        valid=True,
        dimension=f.dimension,
        pure=f.is_pure(),
        simplicial=f.is_simplicial(),
        complete=f.is_complete(),
        unimodular=ok,
        offenders=[_rays(f, c) for c in bad],
    )


def cmd_fan_subdivide(a):
    f = _read(a.input, "fan")
    return fn.star_subdivide(f, _cone_arg(f, a.cone)).fan


def cmd_fan_unimodularize(a):
    return fn.unimodularize(_read(a.input, "fan"))[0]


def cmd_fan_cone_over(a):
    return fn.cone_over_complex(_read(a.input, "complex"))


def cmd_weight_balance(a):
    c = _read(a.input, "weighted_fan")
    ok, bad = wt.is_balanced(c)
    return Report(balanced=ok, failing=[_rays(c.fan, t) for t in bad])


def cmd_weight_support(a):
    return wt.support(_read(a.input, "weighted_fan"))


def cmd_weight_kappa(a):
    c = _read(a.weight, "weighted_fan")
    f = _read(a.function, ("divisor", "pl_function"))
    return wt.kappa(c, f)


def cmd_divisor_cartier(a):
    D = _read(a.input, "divisor")
    data = dv.cartier_data(D)
    return Report(
        cartier=True,
        forms=[{"cone": list(s), "rays": _rays(D.fan, s), "m": list(m)} for s, m in data.forms.items()],
    )


def cmd_divisor_polytope(a):
    return dv.polytope(_read(a.input, "divisor"))


def cmd_divisor_sections(a):
    D = _read(a.input, "divisor")
    s = dv.local_sections(D, _cone_arg(D.fan, a.cone))
    return Report(
        cone=list(s.cone),
        inequalities=[{"u": list(u), "d": d} for u, d in s.inequalities],
        hilbert_basis=[list(h) for h in s.hilbert_basis],
        generators=[list(g) for g in s.generators],
        shift=None if s.shift is None else list(s.shift),
    )


def cmd_divisor_principal(a):
    D = _read(a.input, "divisor")
    ok, m = dv.is_principal(D)
    rep = Report(principal=ok, witness=None if m is None else list(m))
    if D.is_integral and dv.is_cartier(D):
        rep["numerically_trivial"] = dv.numerically_trivial(D)
    return rep


def cmd_divisor_pullback(a):
    D = _read(a.divisor, "divisor")
    return dv.pullback(D, _read(a.fan, "fan"))


def cmd_divisor_intersect(a):
    D = _read(a.input, "divisor")
    tau = _cone_arg(D.fan, a.wall)
    return Report(wall=_rays(D.fan, tau), value=dv.intersect_curve(D, tau))


def _weight_for(a, fan):
    if a.weight:
        return _read(a.weight, "weighted_fan")
    return wt.MinkowskiWeight.constant(fan, 1)


def cmd_troplb_weights(a):
    D = _read(a.divisor, "divisor")
    fan = _read(a.fan, "fan") if a.fan else D.fan
    c = _read(a.weight, "weighted_fan") if a.weight else wt.MinkowskiWeight.constant(fan, 1)
    if c.fan != D.fan:
        D = dv.restrict(D, c.fan)
    return lb.weights_from_divisor(c, D)


def cmd_troplb_solve(a):
    w = _read(a.input, "strata_weights")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UnderdeterminedWarning)
        sol = lb.divisor_from_weights(w.weight, w)
    return Report(
        rays=[list(r) for r in sol.fan.rays],
        representative=list(sol.representative.coefficients),
        homogeneous=[list(h.coefficients) for h in sol.homogeneous],
        principal_rank=sol.principal_rank,
        quotient_rank=sol.quotient_rank,
        underdetermined=bool(caught) or sol.underdetermined,
    )


def cmd_troplb_blowup(a):
    D = _read(a.divisor, "divisor")
    c = _weight_for(a, D.fan)
    rep = lb.blowup_compatibility(c, D, _cone_arg(D.fan, a.cone))

    def table(t):
        return [{"rays": [list(r) for r in k], "value": v} for k, v in t.items()]

    return Report(
        exceptional_ray=list(rep.exceptional_ray),
        exceptional_coefficient=rep.exceptional_coefficient,
        before=table(rep.before),
        after=table(rep.after),
        exceptional_walls=[[list(r) for r in k] for k in rep.exceptional_walls],
        old_walls_preserved=rep.old_walls_preserved,
        exceptional_zero=rep.exceptional_zero,
        ok=rep.ok,
    )


def cmd_bdiv_zideal(a):
    return bd.z_of_ideal(_read(a.ideal, "monomial_ideal"), _read(a.fan, "fan"))


def cmd_bdiv_envelope(a):
    return bd.nef_envelope(_read(a.input, "divisor"))


def cmd_bdiv_nef(a):
    b = _read(a.input, "bdivisor")
    return Report(relatively_nef=bd.is_relatively_nef(b), nef=bd.is_nef(b))


def cmd_bdiv_push(a):
    return bd.push_forward(_read(a.bdivisor, "bdivisor"), _read(a.fan, "fan"))


def cmd_bdiv_pull(a):
    D = _read(a.divisor, "divisor")
    return bd.pull_back(D, _read(a.fan, "fan") if a.fan else None)


def cmd_bdiv_determined(a):
    b = _read(a.bdivisor, "bdivisor")
    return Report(determined=bd.determined_on(b, _read(a.fan, "fan")))


# -- parser -------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropline", description="Tropical compactifications and toric line bundles.")
    p.add_argument("--output-dir", help="write the result to <dir>/<kind>.json instead of standard output")
    top = p.add_subparsers(dest="command", required=True)

    def leaf(sub, name, handler, positional=True, help=None):
        q = sub.add_parser(name, help=help)
        if positional:
            q.add_argument("input", nargs="?", help="input document (default: standard input)")
        q.set_defaults(handler=handler)
        return q

    q = leaf(top, "tropicalize", cmd_tropicalize, help="tropical hypersurface of a Laurent support")
    q.add_argument("--unimodular", action="store_true", help="refine the output to a unimodular fan")

    fan = top.add_parser("fan", help="fan operations").add_subparsers(dest="action", required=True)
    leaf(fan, "check", cmd_fan_check)
    leaf(fan, "subdivide", cmd_fan_subdivide).add_argument("--cone", type=int, nargs="+", required=True)
    leaf(fan, "unimodularize", cmd_fan_unimodularize)
    leaf(fan, "cone-over", cmd_fan_cone_over)

    weight = top.add_parser("weight", help="Minkowski weights").add_subparsers(dest="action", required=True)
    leaf(weight, "balance", cmd_weight_balance)
    leaf(weight, "support", cmd_weight_support)
    q = leaf(weight, "kappa", cmd_weight_kappa, positional=False)
    q.add_argument("--weight", required=True)
    q.add_argument("--function", required=True, help="divisor or pl_function document")

    div = top.add_parser("divisor", help="toric divisors").add_subparsers(dest="action", required=True)
    leaf(div, "cartier", cmd_divisor_cartier)
    leaf(div, "polytope", cmd_divisor_polytope)
    leaf(div, "sections", cmd_divisor_sections).add_argument("--cone", type=int, nargs="*", default=[])
    leaf(div, "principal", cmd_divisor_principal)
    q = leaf(div, "pullback", cmd_divisor_pullback, positional=False)
    q.add_argument("--divisor", required=True)
    q.add_argument("--fan", required=True, help="refinement of the divisor's fan")
    leaf(div, "intersect", cmd_divisor_intersect).add_argument("--wall", type=int, nargs="*", default=[])

    tl = top.add_parser("troplb", help="line bundles and strata weights").add_subparsers(dest="action", required=True)
    q = leaf(tl, "weights", cmd_troplb_weights, positional=False)
    q.add_argument("--divisor", required=True)
    q.add_argument("--fan", help="fan carrying weight 1 on its top cones")
    q.add_argument("--weight", help="explicit Minkowski weight")
    leaf(tl, "solve", cmd_troplb_solve)
    q = leaf(tl, "blowup-check", cmd_troplb_blowup, positional=False)
    q.add_argument("--divisor", required=True)
    q.add_argument("--weight")
    q.add_argument("--cone", type=int, nargs="+", required=True)

    b = top.add_parser("bdiv", help="toric b-divisors").add_subparsers(dest="action", required=True)
    q = leaf(b, "zideal", cmd_bdiv_zideal, positional=False)
    q.add_argument("--ideal", required=True)
    q.add_argument("--fan", required=True)
    leaf(b, "envelope", cmd_bdiv_envelope)
    leaf(b, "nef", cmd_bdiv_nef)
    q = leaf(b, "push", cmd_bdiv_push, positional=False)
    q.add_argument("--bdivisor", required=True)
    q.add_argument("--fan", required=True)
    q = leaf(b, "pull", cmd_bdiv_pull, positional=False)
    q.add_argument("--divisor", required=True)
    q.add_argument("--fan")
    q = leaf(b, "determined", cmd_bdiv_determined, positional=False)
    q.add_argument("--bdivisor", required=True)
    q.add_argument("--fan", required=True)
    return p


def _error(exc: Exception, code: int) -> int:
    payload = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, SchemaError) and exc.path:
        payload["path"] = exc.path
    if isinstance(exc, NotCartier):
        payload["cone"] = list(exc.cone)
        payload["solution"] = None if exc.solution is None else io._numbers(exc.solution)
    if isinstance(exc, Infeasible) and exc.rational_solution is not None:
        payload["rational_solution"] = io._numbers(exc.rational_solution)
    doc = {"schema": io.SCHEMA, "kind": "error", "payload": payload}
    sys.stderr.write(io.format_document(doc))
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
        text = io.dumps(result)
    except SchemaError as e:
        return _error(e, EXIT_SCHEMA)
    except Infeasible as e:
        return _error(e, EXIT_INFEASIBLE)
    except PreconditionError as e:
        return _error(e, EXIT_PRECONDITION)
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        kind = io.to_document(result)["kind"]
        with open(os.path.join(args.output_dir, f"{kind}.json"), "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
