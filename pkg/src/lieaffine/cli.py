"""Command-line interface: ``lieaffine report | verify | extquot``.

Every document is deterministic for fixed flags and seed; rationals are
written as "p/q" strings and no floats are ever emitted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import affine, checks, extquot, ktheory, rootsys, torus, weyl
from .exactmath import format_rational

SCHEMA_VERSION = "1"
SKIPPED = "skipped (cap)"

# reported as literature facts, never computed
LITERATURE = [
    "equivariant Chern character ch_W : K^j_W(T) -> H^*(T//W; C) (not computed)",
    "comparison of K_W(T) with the cohomology of T//W (not computed)",
]


class UsageError(Exception):
    pass


def _rationals(vec) -> list[str]:
    return [format_rational(v) for v in vec]


def _matrix(m) -> list[list[int]]:
    return [[int(v) for v in row] for row in m]


def _cartan_type(args) -> rootsys.CartanType:
    if args.type is None or args.rank is None:
        raise UsageError("--type and --rank are required")
    try:
        return rootsys.CartanType(args.type, args.rank)
    except rootsys.InvalidCartanType as exc:
        raise UsageError(str(exc)) from exc


def _group(rs: rootsys.RootSystem, cap: int) -> weyl.WeylGroup | None:
    try:
        return weyl.generate(rs, cap)
    except weyl.CapExceeded:
        return None


def _stabilizer_doc(rep: torus.StabilizerReport) -> dict:
    return {
        "order": rep.order,
        "structure": None if rep.structure is None else str(rep.structure),
        "class_count": rep.class_count,
        "method": rep.method,
    }


def _fiber_doc(rs: rootsys.RootSystem, fib: extquot.ExtQuotFiber) -> dict:
    return {
        "point": _rationals(fib.orbit_representative.coords),
        "coweight_coords": _rationals(fib.orbit_representative.coweight_coords(rs)),
        "stabilizer_order": fib.stabilizer_order,
        "class_count": fib.class_count,
        "abelian": fib.abelian,
    }


def _components_doc(rs: rootsys.RootSystem, group: weyl.WeylGroup | None):
    if group is None:
        return SKIPPED
    return [
        {
            "class_rep": _matrix(c.class_rep.matrix),
            "word": [i + 1 for i in c.class_rep.word],
            "order": c.class_rep.order,
            "class_size": c.class_size,
            "fixed_dim": c.fixed_dim,
            "fixed_pi0": c.fixed_pi0,
            "centralizer_order": c.centralizer_order,
        }
        for c in extquot.components(rs, group)
    ]


def _samples(args, default: int) -> int:
    return default if args.samples is None else args.samples


def _header(ct: rootsys.CartanType, args) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": str(ct),
        "series": ct.series,
        "rank": ct.rank,
        "seed": args.seed,
        "cap": args.cap,
        "samples": args.samples,
    }


def report_document(ct: rootsys.CartanType, args) -> dict:
    rs = rootsys.build(ct)
    group = _group(rs, args.cap)
    alc = affine.fundamental_alcove(rs)
    ha = affine.alcove_stabilizer(rs)
    krep = ktheory.k_groups_spherical(rs)
    x0 = alc.barycenter
    t0 = torus.special_point(rs)
    direct = SKIPPED
    if group is not None:
        direct = _stabilizer_doc(torus.stabilizer_direct(rs, t0, group, args.cap))
    doc = _header(ct, args)
    doc.update(
        {
            "cartan": _matrix(rs.cartan),
            "highest_root_marks": list(rs.highest_root_marks),
            "weyl_group_order": rootsys.weyl_group_order(ct),
            "fundamental_group": str(rootsys.fundamental_group(rs)),
            "fundamental_group_factors": list(rootsys.fundamental_group(rs).factors),
            "f": krep.f,
            "k0_rank": krep.k0_rank,
            "k1_rank": krep.k1_rank,
            "l_packet_size": krep.l_packet_size,
            "generator_count": krep.generator_count,
            "h_a_order": krep.h_a_order,
            "pi1_order": krep.pi1_order,
            "k_consistent": krep.consistent,
            "notes": list(krep.notes),
            "alcove": {
                "vertices": [_rationals(v) for v in alc.vertices],
                "barycenter": _rationals(x0),
            },
            "h_a": {
                "order": ha.order,
                "structure": str(ha.group_structure),
                "elements": [
                    {
                        "index": list(idx),
                        "linear": _matrix(h.linear),
                        "translation": _rationals(h.translation),
                        "vertex_permutation": list(perm),
                    }
                    for h, idx, perm in zip(ha.elements, ha.indices, ha.vertex_permutations)
                ],
            },
            "stabilizer_t0": {
                "point": _rationals(t0.coords),
                "alcove": _stabilizer_doc(torus.stabilizer_alcove(rs, x0, args.cap)),
                "direct": direct,
            },
            "t0_fiber": _fiber_doc(rs, extquot.fiber(rs, t0, args.cap)),
            "fiber_samples": [_fiber_doc(rs, f) for f in extquot.sample_fibers(rs, _samples(args, 5), args.seed, args.cap)],
            "components": _components_doc(rs, group),
            "checks": [c.as_dict() for c in checks.run_type(ct, _samples(args, 20), args.seed, args.cap)],
            "literature": LITERATURE,
        }
    )
    return doc


def extquot_document(ct: rootsys.CartanType, args) -> dict:
    rs = rootsys.build(ct)
    group = _group(rs, args.cap)
    doc = _header(ct, args)
    doc.update(
        {
            "f": rootsys.connection_index(rs),
            "components": _components_doc(rs, group),
            "t0_fiber": _fiber_doc(rs, extquot.fiber(rs, torus.special_point(rs), args.cap)),
            "fiber_samples": [_fiber_doc(rs, f) for f in extquot.sample_fibers(rs, _samples(args, 5), args.seed, args.cap)],
            "literature": LITERATURE,
        }
    )
    return doc


# -- table rendering -------------------------------------------------------


def _vec(v) -> str:
    return "(" + ", ".join(v) + ")"


def _components_table(comps) -> list[str]:
    if comps == SKIPPED:
        return [f"components: {SKIPPED}"]
    lines = [f"components: {len(comps)}", "  word          order  size  dim T^w  |pi0|  |Z(w)|"]
    for c in comps:
        word = "".join(f"s{i}" for i in c["word"]) or "1"
        lines.append(
            f"  {word:<13} {c['order']:>5} {c['class_size']:>5} {c['fixed_dim']:>8} {c['fixed_pi0']:>6} {c['centralizer_order']:>7}"
        )
    return lines


def _fiber_line(label: str, fib: dict) -> str:
    return f"{label} {_vec(fib['coweight_coords'])}: |W(t)| = {fib['stabilizer_order']}, fiber = {fib['class_count']}"


def render_report(doc: dict) -> str:
    lines = [
        f"type {doc['type']}   seed {doc['seed']}   cap {doc['cap']}",
        f"f = {doc['f']}   pi_1 = {doc['fundamental_group']}   |W| = {doc['weyl_group_order']}",
        f"K_0 rank = {doc['k0_rank']}   K_1 rank = {doc['k1_rank']}   L-packet = {doc['l_packet_size']}   "
        f"generators = {doc['generator_count']}   consistent = {doc['k_consistent']}",
        "alcove vertices:",
    ]
    lines += [f"  v{i} = {_vec(v)}" for i, v in enumerate(doc["alcove"]["vertices"])]
    lines.append(f"  barycenter = {_vec(doc['alcove']['barycenter'])}")
    ha = doc["h_a"]
    lines.append(f"H_A = {ha['structure']} (order {ha['order']}), action on vertices:")
    for el in ha["elements"]:
        perm = " ".join(f"v{i}->v{j}" for i, j in enumerate(el["vertex_permutation"]))
        lines.append(f"  {tuple(el['index'])}: {perm}")
    st = doc["stabilizer_t0"]
    direct = st["direct"] if st["direct"] == SKIPPED else f"{st['direct']['structure']} (order {st['direct']['order']})"
    lines.append(f"W(t0): alcove {st['alcove']['structure']} (order {st['alcove']['order']}), direct {direct}")
    lines.append(_fiber_line("t0 fiber", doc["t0_fiber"]))
    lines += [_fiber_line("sample", f) for f in doc["fiber_samples"]]
    lines += _components_table(doc["components"])
    passed = sum(c["passed"] for c in doc["checks"])
    lines.append(f"checks: {passed}/{len(doc['checks'])} passed")
    lines += [f"note: {n}" for n in doc["notes"]]
    return "\n".join(lines)


def render_extquot(doc: dict) -> str:
    lines = [f"type {doc['type']}   seed {doc['seed']}   f = {doc['f']}"]
    lines += _components_table(doc["components"])
    lines.append(_fiber_line("t0 fiber", doc["t0_fiber"]))
    lines += [_fiber_line("sample", f) for f in doc["fiber_samples"]]
    return "\n".join(lines)


def _emit(doc: dict, fmt: str, render) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render(doc) + "\n")


# -- commands --------------------------------------------------------------


def cmd_report(args) -> int:
    _emit(report_document(_cartan_type(args), args), args.format, render_report)
    return 0


def cmd_extquot(args) -> int:
    _emit(extquot_document(_cartan_type(args), args), args.format, render_extquot)
    return 0


def cmd_verify(args) -> int:
    if args.all:
        if args.type is not None or args.rank is not None:
            raise UsageError("--all cannot be combined with --type/--rank")
        types = rootsys.all_types(args.max_rank)
    else:
        types = [_cartan_type(args)]
    results = []
    for ct in types:
        for c in checks.run_type(ct, _samples(args, 20), args.seed, args.cap):
            results.append(c)
            print(c.line(), flush=True)
    failed = [c for c in results if not c.passed]
    print(f"seed {args.seed}: {len(results)} checks, {len(results) - len(failed)} passed, {len(failed)} failed")
    for c in failed:
        print(f"FAILED {c.type} {c.name}: {c.detail or 'no witness recorded'}")
    return 1 if failed else 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieaffine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", choices=list("ABCDEFG"))
    common.add_argument("--rank", type=int)
    common.add_argument("--cap", type=_positive, default=weyl.DEFAULT_CAP, help="largest group enumerated (default %(default)s)")
    common.add_argument("--samples", type=_positive, help="random points per suite (default 20) and sampled fibers (default 5)")
    common.add_argument("--seed", type=int, default=0)

    rep = sub.add_parser("report", parents=[common], help="full report for one type")
    rep.add_argument("--format", choices=["json", "table"], default="json")
    rep.set_defaults(func=cmd_report)

    ver = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    ver.add_argument("--all", action="store_true", help="every type up to --max-rank")
    ver.add_argument("--max-rank", type=_positive, default=8)
    ver.set_defaults(func=cmd_verify)

    ext = sub.add_parser("extquot", parents=[common], help="extended quotient components and fibers")
    ext.add_argument("--format", choices=["json", "table"], default="json")
    ext.set_defaults(func=cmd_extquot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lieaffine: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
