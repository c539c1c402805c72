"""Command line interface.

Exit codes: 0 when every requested check passes, 1 when a mathematical
verification fails, 2 for unreadable or malformed input and usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable

from . import __version__
from .delzant import build_delzant, freeness_certificate, moment_roundtrip_check
from .errors import InputError, SymtoricError, VerificationFailure
from .exact import Gaussian, Matrix
from .formats import (dumps, load_file, parse_matrix, parse_polytope, parse_subtorus,
                      parse_weight_rep, rat, render_matrix, render_polytope)
from .polytope import enumerate_vertices, face_lattice, frontier_check, lattice_points, verify_delzant
from .quant import exponent_space_count, prequantum_integrality, qr_check, quantization_basis
from .stratify import infinitesimal_partition, orbit_type_partition, reduced_space_strata
from .symplin import (Subspace, SymplecticSpace, classify_subspace, darboux_basis,
                      lagrangian_type, linear_reduce, reduce_lagrangian, standard_form,
                      symplectic_complement)

DEFAULT_SEED = 20240607
OUTPUT_ENV = "SYMTORIC_OUTPUT"


class Result:
    """A report as a JSON-ready dict, its text rendering and an exit code."""

    def __init__(self, data: dict, lines: list[str], code: int = 0):
        self.data = data
        self.lines = lines
        self.code = code


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _pt(x) -> list[str]:
    return [rat(c) for c in x]


def _pieces(k: int) -> str:
    return f"{k} piece" if k == 1 else f"{k} pieces"


def _tuple_text(x) -> str:
    return "(" + ", ".join(rat(c) for c in x) + ")"


def _matrix_lines(m: Matrix, indent: str = "  ") -> list[str]:
    if m.rows == 0 or m.cols == 0:
        return [indent + f"({m.rows}x{m.cols} empty)"]
    cells = [[str(scalar_text(x)) for x in r] for r in m.row_list()]
    width = max(len(c) for r in cells for c in r)
    return [indent + "[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells]


def scalar_text(x) -> str:
    if isinstance(x, Gaussian):
        return str(x.re) if not x.im else str(x)
    return rat(x)


def _coefficient(c) -> str:
    """Coefficient prefix for ``c * name``; empty for 1."""
    g = c if isinstance(c, Gaussian) else Gaussian(c)
    if g == 1:
        return ""
    if g == -1:
        return "-"
    if not g.im:
        return rat(g.re)
    if not g.re:
        if g.im == 1:
            return "i"
        if g.im == -1:
            return "-i"
        return f"{rat(g.im)}i"
    return f"({g})"


def format_vector(v, names: list[str]) -> str:
    terms = []
    for c, name in zip(v, names):
        if c:
            terms.append(_coefficient(c) + name)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def format_span(s: Subspace) -> str:
    names = s.ambient.basis_names()
    return "span{" + ", ".join(format_vector(v, names) for v in s.vectors()) + "}"


# polytope commands

def cmd_polytope(args) -> Result:
    p = parse_polytope(load_file(args.file), args.file)
    if args.action == "verify":
        rep = verify_delzant(p)
        fails = []
        lines = [f"delzant: {'pass' if rep.passed else 'fail'}",
                 f"surjective_on_lattice: {_yn(rep.surjective_on_lattice)}"
                 f" (invariant factors {list(rep.invariant_factors)})",
                 f"simple: {_yn(rep.simple)}",
                 f"vertex_unimodular: {_yn(rep.vertex_unimodular)}"]
        for v, act, why in sorted(rep.failing_vertices, key=lambda t: (t[0], t[1])):
            detail = why if isinstance(why, str) else f"determinant {why}"
            fails.append({"vertex": _pt(v), "active_facets": list(act), "reason": detail})
            lines.append(f"failing vertex {_tuple_text(v)}: active facets {list(act)}, {detail}")
        data = {"delzant": "pass" if rep.passed else "fail",
                "surjective_on_lattice": rep.surjective_on_lattice,
                "invariant_factors": list(rep.invariant_factors),
                "simple": rep.simple, "vertex_unimodular": rep.vertex_unimodular,
                "failing_vertices": fails,
                "vertices": [_pt(v) for v in enumerate_vertices(p)]}
        return Result(data, lines, 0 if rep.passed else 1)
    if args.action == "faces":
        fp = face_lattice(p)
        ok, bad = frontier_check(fp)
        faces = [{"active_set": list(f.active_set), "dim": f.dim, "witness": _pt(f.witness)}
                 for f in fp.faces]
        lines = [f"faces: {len(fp.faces)}  f-vector: {list(fp.f_vector())}"]
        for f in fp.faces:
            lines.append(f"  dim {f.dim}  active {list(f.active_set)}  witness {_tuple_text(f.witness)}")
        lines.append(f"frontier: {'pass' if ok else 'fail'}")
        lines += [f"  {b}" for b in bad]
        data = {"faces": faces, "order": sorted([list(o) for o in fp.order]),
                "f_vector": list(fp.f_vector()), "frontier_ok": ok, "violations": bad}
        return Result(data, lines, 0 if ok else 1)
    if args.action == "points":
        pts = lattice_points(p)
        lines = [f"lattice points: {len(pts)}"] + [f"  {_tuple_text(x)}" for x in pts]
        return Result({"count": len(pts), "points": [list(x) for x in pts]}, lines)
    if args.action == "construct":
        d = build_delzant(p)
        free = freeness_certificate(d)
        rt = moment_roundtrip_check(d, samples=args.samples, seed=args.seed)
        data = {"pi": render_matrix(d.pi), "kernel_basis": render_matrix(d.kernel_basis),
                "lambda": _pt(d.lam),
                "freeness": [{"active_set": list(a), "certified": ok, "invariant_factors": list(inv)}
                             for a, ok, inv in free.faces],
                "free": free.passed, "roundtrip": rt, "seed": args.seed, "samples": args.samples}
        lines = ["pi:"] + _matrix_lines(d.pi) + ["kernel basis (rows):"] + _matrix_lines(d.kernel_basis)
        lines.append(f"lambda: {_tuple_text(d.lam)}")
        lines.append(f"freeness: {'pass' if free.passed else 'fail'} ({len(free.faces)} faces)")
        for a, inv in free.failures():
            lines.append(f"  face {list(a)}: invariant factors {list(inv)}")
        lines.append(f"moment roundtrip: {'pass' if rt else 'fail'} (seed {args.seed})")
        return Result(data, lines, 0 if free.passed and rt else 1)
    raise InputError(f"unknown polytope action {args.action!r}")


def cmd_quantize(args) -> Result:
    d = build_delzant(parse_polytope(load_file(args.file), args.file))
    it = prequantum_integrality(d)
    if not it.passed:
        from .errors import IntegralityFailure
        which = "lambda" if not it.lambda_integral else "the kernel pullback of lambda"
        raise IntegralityFailure(f"prequantum integrality fails: {which} is not integral")
    qb = quantization_basis(d)
    oracle = exponent_space_count(d)
    data = {"lambda_integral": it.lambda_integral, "iota_lambda_integral": it.iota_lambda_integral,
            "dim": qb.count, "oracle_count": oracle}
    lines = [f"dim Q = {qb.count}", f"exponent-space count = {oracle}"]
    if args.basis:
        data["basis"] = [{"point": list(b), "exponent": list(a)}
                         for b, a in zip(qb.points, qb.exponents)]
        lines += [f"  b={_tuple_text(b)}  a={_tuple_text(a)}" for b, a in zip(qb.points, qb.exponents)]
    return Result(data, lines, 0 if oracle == qb.count else 1)


def cmd_qr(args) -> Result:
    d = build_delzant(parse_polytope(load_file(args.file), args.file))
    h = parse_subtorus(load_file(args.subtorus), args.subtorus)
    r = qr_check(d, h)
    red = r.reduced
    data = {"h_in_kernel_rho": r.h_in_kernel_rho,
            "quantization_count": r.quantization_count,
            "invariant_count": r.invariant_count,
            "reduced_count": r.reduced_count,
            "counts_equal": r.counts_equal,
            "injective": r.injective,
            "reduced_is_delzant": r.reduced_is_delzant,
            "label": r.label,
            "reduced_polytope": render_polytope(red.polytope) if red.polytope is not None else None,
            "reduced_origin": _pt(red.origin),
            "reduced_lattice_basis": render_matrix(red.basis),
            "integral_origin": red.integral_origin,
            "invariant_points": [list(b) for b in r.invariant_points],
            "notes": list(r.notes)}
    lines = [f"invariant={r.invariant_count} reduced={r.reduced_count} "
             f"equal={_yn(r.counts_equal)} injective={_yn(r.injective)}",
             f"quantization dimension: {r.quantization_count}",
             f"H in kernel of the fibre character: {_yn(r.h_in_kernel_rho)}",
             f"reduced polytope: {'empty' if red.polytope is None else f'dim {red.polytope.dim}, {red.polytope.n_facets} facets'}",
             f"reduced polytope Delzant in its lattice: {_yn(r.reduced_is_delzant)} ({r.label})"]
    lines += [f"note: {n}" for n in r.notes]
    ok = r.injective and (r.counts_equal or not r.reduced_is_delzant)
    return Result(data, lines, 0 if ok else 1)


def _stabilizer_dict(st) -> dict:
    return {"identity_component_dim": st.dim,
            "component_group_order": st.component_group_order,
            "character_lattice": [[int(x) for x in r] for r in st.canonical_form.row_list()],
            "lie_algebra": render_matrix(st.kernel_subspace)}


def _strat_dict(rep) -> dict:
    out = {"count": rep.count, "frontier_ok": rep.frontier_ok, "violations": list(rep.violations),
           "order": sorted([list(o) for o in rep.order]),
           "strata": [{"supports": [list(s) for s in sorted(st.supports)],
                       "max_support": list(st.max_support), "dim": st.dim,
                       "stabilizer": _stabilizer_dict(st.stabilizer)} for st in rep.strata]}
    if rep.checks:
        out["checks"] = {k: v for k, v in rep.checks}
    return out


def _strat_lines(title: str, rep) -> list[str]:
    lines = [f"{title} strata:"]
    for st in rep.strata:
        s = st.stabilizer
        stab = "trivial" if s.is_trivial else f"dim {s.dim}, {s.component_group_order} component(s)"
        lines.append(f"  support {list(st.max_support)} ({len(st.supports)} cells)  dim {st.dim}  stabilizer {stab}")
    lines.append(f"  frontier: {'pass' if rep.frontier_ok else 'fail'}")
    lines += [f"  {v}" for v in rep.violations]
    return lines


def cmd_stratify(args) -> Result:
    if args.reduced:
        d = build_delzant(parse_polytope(load_file(args.reduced), args.reduced))
        rs = reduced_space_strata(d)
        data = {"count": rs.count, "frontier_ok": rs.frontier_ok, "violations": list(rs.violations),
                "order": sorted([list(o) for o in rs.order]),
                "strata": [{"active_set": list(s.active_set), "face_dim": s.face_dim, "dim": s.dim,
                            "stabilizer_basis": render_matrix(s.stabilizer_basis),
                            "lattice_index": s.lattice_index} for s in rs.strata]}
        lines = [f"reduced strata: {rs.count}"]
        for s in rs.strata:
            lines.append(f"  face {list(s.active_set)}  dim {s.dim}  stabilizer rank {s.stabilizer_basis.rows}")
        lines.append(f"frontier: {'pass' if rs.frontier_ok else 'fail'}")
        return Result(data, lines, 0 if rs.frontier_ok else 1)
    if not args.rep:
        raise InputError("stratify needs a representation file or --reduced POLYTOPE")
    rep = parse_weight_rep(load_file(args.rep), args.rep)
    h = parse_subtorus(load_file(args.subtorus), args.subtorus) if args.subtorus else None
    w = rep.weight_matrix()
    ot = orbit_type_partition(w, h)
    inf = infinitesimal_partition(w, h)
    data = {"orbit_type": _strat_dict(ot), "infinitesimal": _strat_dict(inf)}
    lines = [f"orbit-type: {_pieces(ot.count)} / infinitesimal: {_pieces(inf.count)}"]
    lines += _strat_lines("orbit-type", ot) + _strat_lines("infinitesimal", inf)
    return Result(data, lines, 0 if ot.frontier_ok and inf.frontier_ok else 1)


def _space(args, dim: int) -> SymplecticSpace:
    if args.form:
        return SymplecticSpace(parse_matrix(load_file(args.form), args.form))
    if dim % 2:
        from .errors import OddDimension
        raise OddDimension(f"ambient dimension {dim} is odd")
    return SymplecticSpace(standard_form(dim // 2))


def _subspace(path: str, space: SymplecticSpace) -> Subspace:
    m = parse_matrix(load_file(path), path)
    if m.rows != space.dim:
        raise InputError(f"{path}: vectors have length {m.rows}, ambient dimension is {space.dim}")
    return Subspace(space, m)


def cmd_symplin(args) -> Result:
    if args.action == "darboux":
        s = SymplecticSpace(parse_matrix(load_file(args.files[0]), args.files[0]))
        b = darboux_basis(s)
        lines = ["Darboux basis (columns e1..en, f1..fn):"] + _matrix_lines(b)
        return Result({"basis": render_matrix(b)}, lines)
    if args.action == "complement":
        m = parse_matrix(load_file(args.files[0]), args.files[0])
        s = _space(args, m.rows)
        c = _subspace(args.files[0], s)
        comp = symplectic_complement(c)
        data = {"dim": comp.dim, "complement": render_matrix(comp.basis),
                "input_class": classify_subspace(c)}
        lines = [f"complement: {format_span(comp)}", f"dim {comp.dim}",
                 f"input subspace: {classify_subspace(c)}"]
        return Result(data, lines)
    if args.action == "reduce-lagrangian":
        if len(args.files) != 2:
            raise InputError("reduce-lagrangian needs a Lagrangian file and a subspace file")
        m = parse_matrix(load_file(args.files[0]), args.files[0])
        s = _space(args, m.rows)
        l = _subspace(args.files[0], s).complexify()
        c = _subspace(args.files[1], s)
        if c.field != "real":
            raise InputError(f"{args.files[1]}: the reducing subspace must be real")
        red = linear_reduce(c)
        l0 = reduce_lagrangian(l, c, red)
        is_lag = classify_subspace(l0) == "lagrangian"
        kind = lagrangian_type(l0) if is_lag else None
        span = format_span(l0)
        data = {"reduced_dim": red.space.dim, "lifts": render_matrix(red.lifts),
                "lagrangian": render_matrix(l0.basis), "span": span,
                "is_lagrangian": is_lag, "type": kind, "input_type": lagrangian_type(l),
                "coisotropic": classify_subspace(c) in ("coisotropic", "lagrangian")}
        lines = [f"{span}, type: {kind if kind else 'not lagrangian'}",
                 f"reduced space dim {red.space.dim}; lifts of its Darboux basis:"] + _matrix_lines(red.lifts)
        return Result(data, lines)
    raise InputError(f"unknown symplin action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default=argparse.SUPPRESS,
                        help=f"report format (default: ${OUTPUT_ENV} or text)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for sampled checks (default {DEFAULT_SEED})")

    ap = argparse.ArgumentParser(prog="symtoric", parents=[common],
                                 description="Exact symplectic linear algebra and toric geometry.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polytope", parents=[common], help="polytope checks")
    p.add_argument("action", choices=("verify", "faces", "points", "construct"))
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=20, help="random points for construct's roundtrip")
    p.set_defaults(func=cmd_polytope)

    q = sub.add_parser("quantize", parents=[common], help="lattice-point basis of the quantization")
    q.add_argument("file")
    q.add_argument("--basis", action="store_true", help="list basis points and exponents")
    q.set_defaults(func=cmd_quantize)

    r = sub.add_parser("qr", parents=[common], help="compare invariant and reduced quantizations")
    r.add_argument("file")
    r.add_argument("--subtorus", required=True)
    r.set_defaults(func=cmd_qr)

    s = sub.add_parser("stratify", parents=[common], help="stratifications of torus actions")
    s.add_argument("rep", nargs="?")
    s.add_argument("--subtorus")
    s.add_argument("--reduced", metavar="POLYTOPE")
    s.set_defaults(func=cmd_stratify)

    y = sub.add_parser("symplin", parents=[common], help="linear symplectic algebra")
    y.add_argument("action", choices=("darboux", "complement", "reduce-lagrangian"))
    y.add_argument("files", nargs="+")
    y.add_argument("--form", help="symplectic form matrix (default: standard)")
    y.set_defaults(func=cmd_symplin)
    return ap


def run(argv: list[str] | None = None, out: Callable[[str], None] | None = None,
        err: Callable[[str], None] | None = None) -> int:
    out = out or sys.stdout.write
    err = err or sys.stderr.write
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    mode = getattr(args, "output", None) or os.environ.get(OUTPUT_ENV, "text")
    if mode not in ("text", "json"):
        err(f"error: {OUTPUT_ENV} must be 'text' or 'json', got {mode!r}\n")
        return 2
    if not hasattr(args, "seed"):
        args.seed = DEFAULT_SEED
    try:
        res = args.func(args)
    except VerificationFailure as e:
        err(f"error: {e}\n")
        return 1
    except (InputError, SymtoricError) as e:
        err(f"error: {e}\n")
        return 2
    if mode == "json":
        out(dumps(res.data))
    else:
        out("\n".join(res.lines) + "\n")
    return res.code


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
