"""Command-line front end.

Subcommands: subgroups, enumerate, table1, verify, render, conjugate.
Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import (
    ColoringSpec,
    GroupAutomorphism,
    conjugate_spec,
    enumerate_all_semiperfect,
    find_conjugating_automorphism,
    reference_grid_csv,
    standard_color_groups,
)
from .errors import InvalidParameterError, SemicolorError
from .groups import (
    build_dihedral,
    generating_words,
    group_from_descriptor,
    parse_group_arg,
    subgroup_from_words,
    subgroups_of_index,
    whole_group,
)
from .render import PALETTES, render_svg
from .tiles import tile_map_for, transfer_table
from .verify import run_verification


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemicolorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semicolor",
        description="Enumerate, classify and render semiperfect colorings of "
        "symmetric patterns via partitions of their symmetry groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroups", help="list subgroups of a group or of a subgroup")
    p.add_argument("--group", required=True, help="group descriptor, e.g. dihedral:6")
    p.add_argument("--of", help="restrict to subgroups of this subgroup, e.g. a2,b")
    p.add_argument("--index", type=int, help="only subgroups of this index")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("enumerate", help="census of inequivalent semiperfect colorings")
    p.add_argument("--group", required=True)
    p.add_argument(
        "--H",
        action="append",
        help="color group generators (repeatable); default: the standard "
        "index-2 color groups of the pattern",
    )
    p.add_argument("--type", choices=["1", "2", "all"], default="all")
    p.add_argument("--max-colors", type=int)
    p.add_argument("--orbits", type=int, choices=[1, 2])
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write the census here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser(
        "table1",
        help="the 18-row reference grid of one-orbit colorings of the hexagonal pattern",
    )
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="run the oracle-versus-classifier suites")
    p.add_argument("--group", required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render a coloring spec file to SVG")
    p.add_argument("spec", help="coloring spec JSON file")
    p.add_argument("--pattern", choices=["hexagon", "p4m"])
    p.add_argument("--out", required=True)
    p.add_argument("--palette", default="default", help=f"one of {sorted(PALETTES)}")
    p.add_argument("--cells", default="1x1", help="repeat blocks for p4m, e.g. 2x2")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser(
        "conjugate", help="transport a coloring spec along a group automorphism"
    )
    p.add_argument("spec", help="coloring spec JSON file")
    p.add_argument("--map", help='generator images, e.g. "a=a5,b=ab"')
    p.add_argument("--onto", help="search for an automorphism carrying H onto this subgroup")
    p.add_argument("--table", action="store_true", help="also print the recoloring table")
    p.add_argument("--out", help="write the conjugated spec JSON here")
    p.set_defaults(func=cmd_conjugate)

    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_subgroups(args) -> int:
    group = group_from_descriptor(parse_group_arg(args.group))
    universe = subgroup_from_words(group, args.of) if args.of else whole_group(group)
    if args.index is not None:
        subs = subgroups_of_index(universe, args.index)
    else:
        from .groups import all_subgroups

        subs = all_subgroups(universe)
    payload = {
        "group": group.descriptor,
        "within": universe.label_list(),
        "count": len(subs),
        "subgroups": [
            {"generators": generating_words(s), "order": s.order, "members": s.label_list()}
            for s in subs
        ],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_enumerate(args) -> int:
    group = group_from_descriptor(parse_group_arg(args.group))
    if args.H:
        color_groups = [subgroup_from_words(group, spec) for spec in args.H]
    else:
        color_groups = standard_color_groups(group)
    for H in color_groups:
        if 2 * H.order != group.order:
            raise InvalidParameterError(
                f"color group <{','.join(H.label_list())}> does not have index 2"
            )
    kinds = {"1": ("type1",), "2": ("type2",), "all": ("type1", "type2")}[args.type]
    census = enumerate_all_semiperfect(
        group,
        H_filter=color_groups,
        kinds=kinds,
        max_colors=args.max_colors,
        orbit_count=args.orbits,
    )
    if args.out:
        if args.format == "json":
            Path(args.out).write_text(census.serialize(), encoding="utf-8")
        else:
            Path(args.out).write_text(_census_csv(census), encoding="utf-8")
    for (h_key, kind), count in sorted(census.by_part.items()):
        print(f"{h_key} {kind}: {count}")
    for note in census.notes:
        print(f"note: {note}")
    print(f"{census.total} semiperfect")
    return 0


def _census_csv(census) -> str:
    lines = ["H,kind,detail,numColors,numColorOrbits,kernelOrder,colorPermGroupOrder,equivalenceKey"]
    for e in census.entries:
        spec = e.spec
        labs = spec.group.labels
        if spec.kind == "type1":
            detail = f"J=<{' '.join(spec.J.label_list())}> l={labs[spec.l]} r={labs[spec.r]}"
        else:
            detail = (
                f"J1=<{' '.join(spec.J1.label_list())}> "
                f"J2=<{' '.join(spec.J2.label_list())}> y={labs[spec.y]}"
            )
        c = e.classification
        lines.append(
            ",".join(
                [
                    generating_words(spec.H),
                    spec.kind,
                    detail,
                    str(c.num_colors),
                    str(c.num_color_orbits),
                    str(c.kernel_order),
                    str(c.color_perm_group_order),
                    e.key_string(),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> int:
    group = build_dihedral(6)
    H = subgroup_from_words(group, "a2,b")
    _emit(reference_grid_csv(group, H), args.out)
    return 0


def cmd_verify(args) -> int:
    group = group_from_descriptor(parse_group_arg(args.group))
    report = run_verification(group, exhaustive=args.exhaustive)
    for line in report.lines():
        print(line)
    if report.passed:
        print("all suites passed")
        return 0
    print("verification FAILED")
    return 1


def _load_spec(path: str, group_override: str | None = None) -> ColoringSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidParameterError(f"spec file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"spec file is not valid JSON: {exc}") from None
    desc = parse_group_arg(group_override) if group_override else data.get("group")
    if desc is None:
        raise InvalidParameterError("spec file carries no group descriptor")
    group = group_from_descriptor(desc)
    return ColoringSpec.from_json(group, data)


def cmd_render(args) -> int:
    spec = _load_spec(args.spec)
    kind = spec.group.descriptor.get("kind")
    pattern = args.pattern or {"dihedral": "hexagon", "p4m_quotient": "p4m"}[kind]
    tile_map = tile_map_for(pattern, spec.group)
    block_of = {
        spec.group.labels[g]: spec.partition.block_of[g] for g in spec.group.elements
    }
    try:
        m, _, n = args.cells.partition("x")
        cells = (int(m), int(n or m))
    except ValueError:
        raise InvalidParameterError(f"cannot parse cells {args.cells!r}") from None
    svg = render_svg(tile_map, block_of, palette=args.palette, cells=cells)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}: {spec.partition.num_blocks} colors, {spec.verdict()}")
    return 0


def cmd_conjugate(args) -> int:
    spec = _load_spec(args.spec)
    group = spec.group
    if args.map:
        images = {}
        for piece in args.map.split(","):
            name, _, word = piece.partition("=")
            if not word:
                raise InvalidParameterError(f"cannot parse generator image {piece!r}")
            images[name.strip()] = word.strip()
        alpha = GroupAutomorphism.from_generator_images(group, images)
    elif args.onto:
        target = subgroup_from_words(group, args.onto)
        alpha = find_conjugating_automorphism(group, spec.H, target)
        if alpha is None:
            raise InvalidParameterError("no automorphism carries H onto the target subgroup")
    else:
        raise InvalidParameterError("provide either --map or --onto")
    moved = conjugate_spec(spec, alpha)
    payload = {
        "automorphism": alpha.generator_map(),
        "spec": moved.to_json(),
        "verdict": moved.verdict(),
        "blocks": moved.partition.labels_json(),
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.table:
        pattern = {"dihedral": "hexagon", "p4m_quotient": "p4m"}[group.descriptor["kind"]]
        tile_map = tile_map_for(pattern, group)
        coloring = {
            group.labels[g]: spec.partition.block_of[g] + 1 for g in group.elements
        }
        perm = {group.labels[g]: group.labels[alpha(g)] for g in group.elements}
        print("domain,original,image,new")
        for row in transfer_table(tile_map, coloring, perm):
            print(f"{row.domain},{row.original},{row.image},{row.new}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
