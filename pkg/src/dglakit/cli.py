"""Command-line front end.  Exit codes: 0 success, 1 validation or
mathematical failure, 2 parse or usage error."""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .artin import (ArtinAlgebra, power_series_extension, small_extension, square_zero_extension,
                    truncated_power_series)
from .ce import ce_cohomology, ce_complex
from .deformation import (MCElement, etale_check, format_tensor, gauge_act, kuranishi,
                          low_cohomology, mc_check, obstruction_lift, prorep_check,
                          semi_universal_model, tangent_space)
from .dgla import cohomology, cone, quasi_iso_check, validate_dgla
from .equivariant import equivariant_kuranishi, equivariant_semi_universal
from .errors import DglaError, ParseError
from .examples import EXAMPLE_ACTIONS, EXAMPLES
from .free import free_approximation_init, free_approximation_step, free_dgla
from .linalg import format_rational


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = 0

    def add(self, key: str, text: str, value=None):
        self.lines.append(f"{key}: {text}")
        self.data[key] = text if value is None else value


def _set(strings) -> str:
    return "{" + ", ".join(strings) + "}"


def _reps(g, n):
    H = cohomology(g, n)
    return H, [g.format_element(g.from_dense(v, n)) for v in H.representatives]


def _dump_dgla(rep: Report, g, act=None):
    rep.doc = io.dgla_to_dict(g, act)


# ---------------------------------------------------------------- commands
def cmd_validate(args, rep):
    g, act = io.parse_dgla(args.file, validate=False)
    report = validate_dgla(g)
    if act is not None:
        from .equivariant import validate_action
        report += validate_action(g, act)
    rep.add("basis", str(g.dim), g.dim)
    rep.add("violations", str(len(report)), [str(v) for v in report])
    for v in report:
        rep.lines.append(f"  {v}")
    rep.add("valid", "true" if not report else "false", not report)
    rep.code = 0 if not report else 1


def cmd_cohomology(args, rep):
    g, _ = io.parse_dgla(args.file)
    degrees = [args.degree] if args.degree is not None else g.support
    out = {}
    for n in degrees:
        H, reps = _reps(g, n)
        rep.lines.append(f"H^{n}: dim {H.dim} {_set(reps)}")
        out[str(n)] = {"dim": H.dim, "representatives": reps}
    rep.data["cohomology"] = out


def cmd_cone(args, rep):
    g, _ = io.parse_dgla(args.file)
    _dump_dgla(rep, cone(g))


def _window_arg(text: str, flag: str = "--window") -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"{flag}: expected lo:hi, got {text!r}") from None
    return lo, hi


def cmd_free(args, rep):
    if args.file is not None:
        _free_approximation(args, rep)
        return
    if not args.generators:
        raise ParseError("free: give --generators or a dgla file with --window")
    gens = []
    for item in args.generators.split(","):
        try:
            name, deg = item.split(":")
            gens.append((name.strip(), int(deg)))
        except ValueError:
            raise ParseError(f"--generators: cannot parse {item!r} (expected name:degree)") from None
    F = free_dgla(gens, args.max_length, args.max_degree)
    _dump_dgla(rep, F.dgla)


def _free_approximation(args, rep):
    g, _ = io.parse_dgla(args.file)
    if args.window is None:
        raise ParseError("free: --window lo:hi is required with a dgla file")
    s = free_approximation_init(g, _window_arg(args.window), args.max_length)
    for _ in range(args.steps):
        s = free_approximation_step(s)
    F = s.algebra
    gens = []
    for lab, n in s.generators:
        dgen = F.format_element(F.apply_d({F.index(lab): 1}))
        img = g.format_element(s.images[lab])
        rep.lines.append(f"{lab} ({n}): d = {dgen}, θ = {img}")
        gens.append({"name": lab, "degree": n, "d": dgen, "image": img})
    rep.data["generators"] = gens
    rep.add("stage", str(s.stage), s.stage)
    lo, hi = s.window
    qi = all(quasi_iso_check(s.morphism, (lo, hi)).values())
    rep.add("quasi-isomorphism in window", "true" if qi else "false", qi)


def cmd_ce(args, rep):
    g, _ = io.parse_dgla(args.file)
    C = ce_complex(g, args.word_length)
    H = ce_cohomology(C, _window_arg(args.window) if args.window else None)
    out = {}
    for n in sorted(H.dims):
        tag = "trusted" if H.trusted[n] else "untrusted"
        rep.lines.append(f"H^{n}: dim {H.dims[n]} ({tag})")
        out[str(n)] = {"dim": H.dims[n], "trusted": H.trusted[n]}
    rep.data["ce_cohomology"] = out


def cmd_tangent(args, rep):
    g, _ = io.parse_dgla(args.file)
    T = tangent_space(g)
    rep.add("dim", str(T.dim), T.dim)
    rep.add("basis", _set(T.labels), list(T.labels))


def _algebra(text: str) -> ArtinAlgebra:
    parts = text.split(":")
    try:
        if parts[0] == "power" and len(parts) == 3:
            return truncated_power_series(int(parts[1]), int(parts[2]))
        if parts[0] == "sqz" and len(parts) == 2:
            return square_zero_extension(int(parts[1]))
        if parts[0] == "dual" and len(parts) == 1:
            return square_zero_extension(0)
    except ValueError:
        pass
    raise ParseError(f"cannot parse algebra {text!r} (use power:m:N, sqz:n or dual)")


def _extension(text: str):
    parts = text.split(":")
    try:
        if parts[0] == "power" and len(parts) == 3:
            return power_series_extension(int(parts[1]), int(parts[2]))
        if parts[0] == "sqz" and len(parts) == 2:
            A = square_zero_extension(int(parts[1]))
            return small_extension(A, ["ε"])
    except ValueError:
        pass
    raise ParseError(f"cannot parse extension {text!r} (use power:m:N or sqz:n)")


def _element(g, A, text: str, degree: int = 1):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"element: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("element must be an object {g label: {A label: coeff}}")
    out = {}
    for gl, inner in doc.items():
        if gl not in g._index:
            raise ParseError(f"element: unknown basis name {gl!r}")
        if not isinstance(inner, dict):
            raise ParseError(f"element.{gl}: expected an object")
        for al, c in inner.items():
            if al not in A._index:
                raise ParseError(f"element.{gl}: unknown algebra basis name {al!r}")
            out[(g.index(gl), A.index(al))] = io._coeff(c, f"element.{gl}.{al}")
    for (i, a), c in out.items():
        if c and (a == 0 or g.degrees[i] + A.degrees[a] != degree):
            raise ParseError(f"element: {g.labels[i]}⊗{A.labels[a]} is not of degree {degree} in g⊗m_A")
    return {k: v for k, v in out.items() if v}


def cmd_mc_check(args, rep):
    g, _ = io.parse_dgla(args.file)
    A = _algebra(args.algebra)
    x = MCElement(g, A, _element(g, A, args.element))
    res = mc_check(x)
    rep.add("residual", format_tensor(g, A, res))
    rep.add("mc", "true" if not res else "false", not res)
    rep.code = 0 if not res else 1


def cmd_gauge(args, rep):
    g, _ = io.parse_dgla(args.file)
    A = _algebra(args.algebra)
    x = MCElement(g, A, _element(g, A, args.element))
    a = _element(g, A, args.parameter, degree=0)
    y = gauge_act(a, x)
    rep.add("result", str(y))
    ok = not mc_check(y)
    rep.add("mc", "true" if ok else "false", ok)


def cmd_lift(args, rep):
    g, _ = io.parse_dgla(args.file)
    ext = _extension(args.extension)
    B = ext.quotient
    x = MCElement(g, B, _element(g, B, args.element))
    res = obstruction_lift(g, ext, x)
    if res.lift is not None:
        rep.add("lift", str(res.lift))
        rep.add("obstruction", "0")
    else:
        rep.add("lift", "none", None)
        rep.add("obstruction", format_tensor(g, ext.source, res.class_element()))
        rep.code = 1


def cmd_kuranishi(args, rep):
    g, act = io.parse_dgla(args.file)
    if args.equivariant:
        if act is None:
            raise ParseError("--equivariant needs a group block in the file")
        ek = equivariant_kuranishi(g, act, args.order)
        K = ek.result
    else:
        K = kuranishi(g, args.order)
    rep.add("H^1", f"dim {len(K.h1_basis)}", len(K.h1_basis))
    rep.add("H^2", f"dim {len(K.h2_basis)}", len(K.h2_basis))
    rep.add("order", str(K.order), K.order)
    rep.add("solution", K.solution_string())
    rep.add("obstruction", K.obstruction_string())
    rep.add("base", K.base)
    rep.add("base dim", str(K.base_dim), K.base_dim)
    rep.data["base_presentation"] = _presentation(K)
    if args.equivariant:
        for s, ok in ek.checks.items():
            rep.add(f"equivariant {s}", "true" if ok else "false", ok)
        if not all(ek.checks.values()):
            rep.code = 1


def _presentation(K) -> dict:
    def poly(p):
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in sorted(p.items()) if c]
    rels = [poly(r) for r in K.relations]
    return {"generators": list(K.variables), "relations": rels,
            "truncation_order": None if K.top_in_ideal else K.order + 1}


def cmd_semiuniversal(args, rep):
    g, act = io.parse_dgla(args.file)
    if args.equivariant:
        if act is None:
            raise ParseError("--equivariant needs a group block in the file")
        em = equivariant_semi_universal(g, act)
        M = em.model
    else:
        M = semi_universal_model(g)
    k = M.k
    rep.add("k basis", ", ".join(f"{l} ({n})" for l, n in zip(k.labels, k.degrees)),
            [{"name": l, "degree": n} for l, n in zip(k.labels, k.degrees)])
    incl = {k.labels[a]: g.format_element(v) for a, v in sorted(M.inclusion.images.items())}
    rep.add("inclusion", ", ".join(f"{a} ↦ {b}" for a, b in incl.items()), incl)
    sp = M.splitting
    for name, S in (("E1", sp.E1), ("H1 lift", sp.H1), ("B1", sp.B1)):
        reps = [g.format_element(g.from_dense(v, 1)) for v in S.basis]
        rep.add(name, _set(reps), reps)
    rep.add("dim H^1(k)", str(cohomology(k, 1).dim), cohomology(k, 1).dim)
    et = etale_check(M.inclusion)
    pr = prorep_check(k)
    rep.add("etale", "true" if et else "false", et)
    rep.add("prorep", "true" if pr else "false", pr)
    if args.equivariant:
        rep.add("equivariant inclusion", "true" if em.equivariant else "false", em.equivariant)
        rep.doc_extra = io.group_to_dict(em.action, k)
    if not (et and pr):
        rep.code = 1


def cmd_etale(args, rep):
    src, _ = io.parse_dgla(args.source)
    tgt, _ = io.parse_dgla(args.target)
    f = io.parse_morphism(args.morphism, src, tgt)
    ok = etale_check(f)
    rep.add("etale", "true" if ok else "false", ok)
    rep.code = 0 if ok else 1


def cmd_prorep(args, rep):
    g, _ = io.parse_dgla(args.file)
    low = low_cohomology(g)
    for n, reps in sorted(low.items()):
        rep.add(f"H^{n} nonzero", _set(reps), reps)
    ok = not low
    rep.add("prorepresentable", "true" if ok else "false", ok)
    rep.code = 0 if ok else 1


def cmd_example(args, rep):
    if args.name not in EXAMPLES:
        raise ParseError(f"unknown example {args.name!r}; choose from {', '.join(sorted(EXAMPLES))}")
    g = EXAMPLES[args.name]()
    act = EXAMPLE_ACTIONS[args.name]() if args.name in EXAMPLE_ACTIONS and not args.no_group else None
    _dump_dgla(rep, g, act)


# -------------------------------------------------------------- dispatch
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dglakit", description="Exact dgla deformation theory toolkit")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *files):
        sp = sub.add_parser(name)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "file")
    add("cohomology", cmd_cohomology, "file").add_argument("--degree", type=int)
    add("cone", cmd_cone, "file")
    sp = add("free", cmd_free)
    sp.add_argument("file", nargs="?", help="dgla file: run the free approximation instead")
    sp.add_argument("--generators", help="comma list of name:degree")
    sp.add_argument("--max-length", type=int, required=True)
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--window", help="lo:hi degrees for the free approximation")
    sp.add_argument("--steps", type=int, default=1)
    sp = add("ce", cmd_ce, "file")
    sp.add_argument("--word-length", type=int, required=True)
    sp.add_argument("--window", help="lo:hi degree window")
    add("tangent", cmd_tangent, "file")
    sp = add("mc-check", cmd_mc_check, "file")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--element", required=True)
    sp = add("gauge", cmd_gauge, "file")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--element", required=True)
    sp.add_argument("--parameter", required=True)
    sp = add("lift", cmd_lift, "file")
    sp.add_argument("--extension", required=True)
    sp.add_argument("--element", required=True)
    sp = add("kuranishi", cmd_kuranishi, "file")
    sp.add_argument("--order", type=int, default=3)
    sp.add_argument("--equivariant", action="store_true")
    add("semiuniversal", cmd_semiuniversal, "file").add_argument("--equivariant", action="store_true")
    add("etale", cmd_etale, "source", "target", "morphism")
    add("prorep", cmd_prorep, "file")
    sp = add("example", cmd_example)
    sp.add_argument("name")
    sp.add_argument("--no-group", action="store_true")
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    rep = Report()
    rep.doc = None
    rep.doc_extra = None
    try:
        args.fn(args, rep)
    except DglaError as e:
        if args.json:
            out.write(io.dumps({"command": args.command, "error": str(e), "kind": type(e).__name__}))
        err.write(f"error: {type(e).__name__}: {e}\n")
        return e.exit_code
    if rep.doc is not None:
        out.write(io.dumps(rep.doc))
        return rep.code
    if args.json:
        data = dict(rep.data)
        data["command"] = args.command
        if rep.doc_extra is not None:
            data["group"] = rep.doc_extra
        out.write(io.dumps(data))
    else:
        out.write("\n".join(rep.lines) + "\n")
    return rep.code


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
