"""Census pipelines: enumerate inequivalent semiperfect colorings.

For a fixed index-2 color group H the two-orbit colorings are indexed by
unordered pairs of subgroups of H, and the one-orbit colorings by a
conjugacy-class representative J together with a coset grid (l, r).  When
some element outside H normalizes J the grid double-counts: each
semiperfect partition appears exactly twice, and the pipeline collapses the
pair through a canonical orbit key.  Censuses for different H never
overlap, because equivalent partitions share their stabilizer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidParameterError, ResourceLimitError
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    configured_max_order,
    conjugacy_classes_of_subgroups,
    generating_words,
    left_coset_reps,
    normalizer,
    perfect_coset_count,
    right_coset_reps_outside,
    subgroup_from_words,
    subgroups_of_index,
    subgroups_of_index_at_most,
    whole_group,
)
from .partitions import (
    PERFECT,
    SEMIPERFECT,
    Classification,
    GroupPartition,
    TypeOneVerdict,
    classify_type1,
    color_action,
    equivalence_key,
    smallest_outside,
    type1_partition,
    type2_partition,
)


# -- coloring specifications ----------------------------------------------------


@dataclass(frozen=True)
class ColoringSpec:
    """Constructive recipe for a coloring plus its realized partition."""

    group: FiniteGroup
    H: Subgroup
    kind: str  # "type1" | "type2"
    J: Subgroup | None = None
    l: int | None = None
    r: int | None = None
    J1: Subgroup | None = None
    J2: Subgroup | None = None
    y: int | None = None

    @classmethod
    def type1(cls, H: Subgroup, J: Subgroup, r: int, l: int | None = None) -> "ColoringSpec":
        l = H.group.identity if l is None else l
        if l not in H:
            raise InvalidParameterError("the conjugating element l must lie in H")
        return cls(group=H.group, H=H, kind="type1", J=J, l=l, r=r)

    @classmethod
    def type2(cls, H: Subgroup, J1: Subgroup, J2: Subgroup, y: int | None = None) -> "ColoringSpec":
        y = smallest_outside(H) if y is None else y
        return cls(group=H.group, H=H, kind="type2", J1=J1, J2=J2, y=y)

    @cached_property
    def partition(self) -> GroupPartition:
        if self.kind == "type1":
            return type1_partition(self.H, self.J.conjugated_by(self.l), self.r)
        return type2_partition(self.H, self.J1, self.J2, self.y)

    def verdict(self) -> str:
        if self.kind == "type1":
            return classify_type1(self.J.conjugated_by(self.l), self.r, self.H).verdict
        return PERFECT if self.J1.members == self.J2.members else SEMIPERFECT

    def to_json(self) -> dict:
        group = self.group
        out: dict = {
            "group": group.descriptor,
            "H": self.H.label_list(),
            "kind": self.kind,
        }
        if self.kind == "type1":
            out["J"] = self.J.label_list()
            out["l"] = group.labels[self.l]
            out["r"] = group.labels[self.r]
        else:
            out["J1"] = self.J1.label_list()
            out["J2"] = self.J2.label_list()
            out["y"] = group.labels[self.y]
        return out

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> "ColoringSpec":
        H = subgroup_of_labels(group, data["H"])
        kind = data.get("kind")
        if kind == "type1":
            return cls.type1(
                H,
                subgroup_of_labels(group, data["J"]),
                group.element(data["r"]),
                group.element(data.get("l", "e")),
            )
        if kind == "type2":
            y = data.get("y")
            return cls.type2(
                H,
                subgroup_of_labels(group, data["J1"]),
                subgroup_of_labels(group, data["J2"]),
                None if y is None else group.element(y),
            )
        raise InvalidParameterError(f"unknown coloring kind {kind!r}")


def subgroup_of_labels(group: FiniteGroup, labels: Iterable[str]) -> Subgroup:
    return Subgroup.from_members(group, (group.element(w) for w in labels))


@dataclass(frozen=True)
class CensusEntry:
    spec: ColoringSpec
    classification: Classification
    key: tuple[tuple[int, ...], ...]

    def key_string(self) -> str:
        labs = self.spec.group.labels
        return "|".join(",".join(labs[e] for e in block) for block in self.key)

    def to_json(self) -> dict:
        out = {"spec": self.spec.to_json()}
        out.update(self.classification.to_json())
        out["equivalenceKey"] = self.key_string()
        return out


def _entry(spec: ColoringSpec) -> CensusEntry:
    action = color_action(spec.H, spec.partition)
    return CensusEntry(
        spec=spec,
        classification=action.classification,
        key=equivalence_key(spec.partition, spec.H),
    )


# -- pipelines -------------------------------------------------------------------


def _subgroup_pool(H: Subgroup, max_index: int | None) -> list[Subgroup]:
    if max_index is None:
        return all_subgroups(H)
    return subgroups_of_index_at_most(H, max_index)


def enumerate_type2(
    G: FiniteGroup, H: Subgroup, max_colors: int | None = None
) -> list[CensusEntry]:
    """One census entry per unordered pair {J1, J2} of distinct subgroups of H.

    All entries are semiperfect and pairwise inequivalent; the only other
    partition equivalent to the (J1, J2) entry is its (J2, J1) swap.
    """
    if H.group is not G:
        raise InvalidParameterError("H belongs to a different group")
    if 2 * H.order != G.order:
        raise InvalidParameterError("H must have index 2")
    pool = _subgroup_pool(H, None if max_colors is None else max(max_colors - 1, 0))
    pool = sorted(pool, key=lambda s: (s.order, s.members))
    entries = []
    for i, J1 in enumerate(pool):
        for J2 in pool[i + 1 :]:
            if max_colors is not None:
                colors = H.order // J1.order + H.order // J2.order
                if colors > max_colors:
                    continue
            entries.append(_entry(ColoringSpec.type2(H, J1, J2)))
    entries.sort(key=lambda e: e.key)
    _assert_distinct_keys(entries)
    return entries


def enumerate_type1(
    G: FiniteGroup, H: Subgroup, max_colors: int | None = None
) -> list[CensusEntry]:
    """Semiperfect one-orbit colorings, one entry per equivalence class.

    Iterates conjugacy-class representatives J (under conjugation by all of
    G), left coset representatives l of the H-normalizer of J, and right
    coset representatives of the l-conjugate of J outside H; keeps the
    semiperfect cells and collapses equivalent pairs via the orbit key.
    """
    if H.group is not G:
        raise InvalidParameterError("H belongs to a different group")
    if 2 * H.order != G.order:
        raise InvalidParameterError("H must have index 2")
    entries: dict[tuple, CensusEntry] = {}
    for J, l, r, verdict in type1_cells(G, H, max_colors=max_colors):
        if verdict.perfect:
            continue
        spec = ColoringSpec.type1(H, J, r, l)
        key = equivalence_key(spec.partition, H)
        if key not in entries:
            entries[key] = _entry(spec)
    out = sorted(entries.values(), key=lambda e: e.key)
    return out


def type1_cells(
    G: FiniteGroup, H: Subgroup, max_colors: int | None = None
) -> Iterable[tuple[Subgroup, int, int, "TypeOneVerdict"]]:
    """The (J, l, r) grid underlying the one-orbit enumeration.

    Yields base class representatives J with l running over coset
    representatives of the H-normalizer and r over the conjugated right
    coset representatives, in deterministic order.
    """
    pool = _subgroup_pool(H, max_colors)
    classes = conjugacy_classes_of_subgroups(pool, whole_group(G))
    for cls in classes:
        J = cls[0]
        nh = normalizer(H, J)
        L = left_coset_reps(H, nh)
        R = right_coset_reps_outside(J, G, H)
        for l in L:
            Jl = J.conjugated_by(l)
            for r in R:
                rl = G.conj(r, l)
                yield J, l, rl, classify_type1(Jl, rl, H)


def count_semiperfect_type1(G: FiniteGroup, H: Subgroup, J: Subgroup) -> int:
    """Closed-form count of inequivalent semiperfect one-orbit colorings
    contributed by the conjugacy class of J.

    With no normalizing element outside H the whole grid survives; otherwise
    the semiperfect cells pair up and the count halves.
    """
    nh = normalizer(H, J)
    ng = normalizer(whole_group(G), J)
    cosets_l = H.order // nh.order
    cosets_r = H.order // J.order
    if ng.order == nh.order:
        return cosets_l * cosets_r
    return cosets_l * (cosets_r - perfect_coset_count(G, H, J)) // 2


@dataclass
class Census:
    group: FiniteGroup
    entries: list[CensusEntry]
    by_part: dict[tuple[str, str], int]  # (H key, kind) -> entry count
    notes: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "group": self.group.descriptor,
            "total": self.total,
            "byPart": {f"{h}|{kind}": n for (h, kind), n in sorted(self.by_part.items())},
            "entries": [e.to_json() for e in self.entries],
            "notes": list(self.notes),
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def enumerate_all_semiperfect(
    G: FiniteGroup,
    H_filter: Sequence[Subgroup] | None = None,
    kinds: Sequence[str] = ("type1", "type2"),
    max_colors: int | None = None,
    orbit_count: int | None = None,
    reduce_by: Sequence["GroupAutomorphism"] | None = None,
) -> Census:
    """Union of the one- and two-orbit censuses over index-2 color groups.

    Entries for distinct H are automatically inequivalent, so the union
    needs no cross-H deduplication.  A one- or two-orbit constraint selects
    the corresponding pipeline.  With ``reduce_by``, color groups related by
    one of the given automorphisms share a single pipeline run: the orbit
    representative is enumerated and the others receive transported specs.
    """
    if H_filter is None:
        H_filter = subgroups_of_index(G, 2)
    selected_kinds = list(kinds)
    if orbit_count is not None:
        if orbit_count == 1:
            selected_kinds = [k for k in selected_kinds if k == "type1"]
        elif orbit_count == 2:
            selected_kinds = [k for k in selected_kinds if k == "type2"]
        else:
            selected_kinds = []
    entries: list[CensusEntry] = []
    by_part: dict[tuple[str, str], int] = {}
    notes: list[str] = []
    if max_colors is not None and max_colors < 2:
        notes.append("no semiperfect coloring uses fewer than two colors")
        selected_kinds = []
    if G.descriptor.get("kind") == "p4m_quotient" and max_colors is not None:
        notes.append(
            "quotient realization: only color subgroups containing the "
            f"modulus-{G.descriptor['N']} translation lattice are visible"
        )
    transport = _transport_plan(H_filter, reduce_by or ())
    computed: dict[tuple[tuple[int, ...], str], list[CensusEntry]] = {}
    for H in H_filter:
        h_key = generating_words(H)
        source, alpha = transport[H.members]
        for kind in selected_kinds:
            if (source, kind) not in computed:
                computed[(source, kind)] = _run_pipeline(G, Subgroup(G, source), kind, max_colors)
            base = computed[(source, kind)]
            if alpha is None:
                part = base
            else:
                part = sorted(
                    (_entry(conjugate_spec(e.spec, alpha)) for e in base),
                    key=lambda e: e.key,
                )
                notes.append(
                    f"{h_key} {kind}: transported from "
                    f"{generating_words(Subgroup(G, source))} by an automorphism"
                )
            by_part[(h_key, kind)] = len(part)
            entries.extend(part)
    _assert_distinct_keys(entries)
    return Census(group=G, entries=entries, by_part=by_part, notes=notes)


def _run_pipeline(G, H, kind, max_colors):
    if kind == "type1":
        return enumerate_type1(G, H, max_colors=max_colors)
    return enumerate_type2(G, H, max_colors=max_colors)


def _transport_plan(H_filter, automorphisms):
    """Assign each color group an orbit representative and the automorphism
    carrying the representative onto it (None for representatives)."""
    plan: dict[tuple[int, ...], tuple[tuple[int, ...], "GroupAutomorphism | None"]] = {}
    reps: list[tuple[int, ...]] = []
    for H in H_filter:
        assignment = None
        for rep in reps:
            for alpha in automorphisms:
                if tuple(sorted(alpha(m) for m in rep)) == H.members:
                    assignment = (rep, alpha)
                    break
            if assignment:
                break
        if assignment is None:
            assignment = (H.members, None)
            reps.append(H.members)
        plan[H.members] = assignment
    return plan


def _assert_distinct_keys(entries: Sequence[CensusEntry]):
    keys = [(id(e.spec.H.group), e.spec.H.members, e.key) for e in entries]
    if len(set(keys)) != len(keys):
        raise InvalidParameterError("census produced a duplicated equivalence class")


# -- the reference grid (one-orbit colorings of the hexagonal pattern) -----------


@dataclass(frozen=True)
class GridRow:
    J: Subgroup
    l: int
    r: int
    verdict: str
    note: str  # "perfect" | "(k) semiperfect" | "equivalent to (k)"


def type1_reference_grid(G: FiniteGroup, H: Subgroup) -> list[GridRow]:
    """Full (J, l, r) grid with verdicts and equivalence back-references.

    Semiperfect cells are numbered (1), (2), ... in grid order; a later cell
    equivalent to an earlier one is annotated instead of renumbered.
    """
    rows = []
    counter = 0
    first_seen: dict[tuple, int] = {}
    for J, l, r, verdict in type1_cells(G, H):
        if verdict.perfect:
            rows.append(GridRow(J, l, r, PERFECT, PERFECT))
            continue
        key = equivalence_key(type1_partition(H, J.conjugated_by(l), r), H)
        if key in first_seen:
            note = f"equivalent to ({first_seen[key]})"
        else:
            counter += 1
            first_seen[key] = counter
            note = f"({counter}) semiperfect"
        rows.append(GridRow(J, l, r, SEMIPERFECT, note))
    return rows


def reference_grid_csv(G: FiniteGroup, H: Subgroup) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["J", "l", "r^l", "Resulting Coloring"])
    for row in type1_reference_grid(G, H):
        writer.writerow(
            [generating_words(row.J), G.labels[row.l], G.labels[row.r], row.note]
        )
    return buf.getvalue()


# -- automorphisms and transported censuses --------------------------------------


@dataclass(frozen=True)
class GroupAutomorphism:
    """A bijection of the group preserving products, stored pointwise."""

    group: FiniteGroup
    images: tuple[int, ...]

    @classmethod
    def identity(cls, group: FiniteGroup) -> "GroupAutomorphism":
        return cls(group, tuple(range(group.order)))

    @classmethod
    def from_images(cls, group: FiniteGroup, images: Sequence[int]) -> "GroupAutomorphism":
        images = tuple(images)
        if sorted(images) != list(range(group.order)):
            raise InvalidParameterError("automorphism images are not a bijection")
        table = group.table
        for g in range(group.order):
            row = table[g]
            img_g = images[g]
            for h in range(group.order):
                if images[row[h]] != table[img_g][images[h]]:
                    raise InvalidParameterError(
                        "map does not preserve the group operation at "
                        f"({group.labels[g]}, {group.labels[h]})"
                    )
        return cls(group, images)

    @classmethod
    def from_generator_images(
        cls, group: FiniteGroup, images: dict[str, int | str]
    ) -> "GroupAutomorphism":
        resolved = {
            name: (group.element(img) if isinstance(img, str) else img)
            for name, img in images.items()
        }
        return cls.from_images(group, group.extend_generator_map(resolved))

    def __call__(self, g: int) -> int:
        return self.images[g]

    @cached_property
    def inverse(self) -> "GroupAutomorphism":
        inv = [0] * len(self.images)
        for g, img in enumerate(self.images):
            inv[img] = g
        return GroupAutomorphism(self.group, tuple(inv))

    def apply_subgroup(self, S: Subgroup) -> Subgroup:
        return Subgroup(self.group, tuple(sorted(self.images[m] for m in S.members)))

    def apply_partition(self, P: GroupPartition) -> GroupPartition:
        return GroupPartition.from_blocks(
            self.group,
            (tuple(self.images[e] for e in block) for block in P.blocks),
            validate=False,
        )

    def generator_map(self) -> dict[str, str]:
        labs = self.group.labels
        return {name: labs[self.images[g]] for name, g in self.group.generators.items()}


def conjugate_spec(spec: ColoringSpec, alpha: GroupAutomorphism) -> ColoringSpec:
    """Transport a coloring recipe along an automorphism.

    The realized partition of the result is the blockwise image of the
    original, and the perfect/semiperfect verdict is preserved; both facts
    are checked.
    """
    if alpha.group is not spec.group:
        raise InvalidParameterError("automorphism belongs to a different group")
    H2 = alpha.apply_subgroup(spec.H)
    if spec.kind == "type1":
        out = ColoringSpec.type1(
            H2, alpha.apply_subgroup(spec.J), alpha(spec.r), alpha(spec.l)
        )
    else:
        out = ColoringSpec.type2(
            H2, alpha.apply_subgroup(spec.J1), alpha.apply_subgroup(spec.J2), alpha(spec.y)
        )
    if out.partition.blocks != alpha.apply_partition(spec.partition).blocks:
        raise InvalidParameterError("conjugated spec does not realize the image partition")
    if out.verdict() != spec.verdict():
        raise InvalidParameterError("conjugation changed the verdict")
    return out


def action_equivalence_check(
    H: Subgroup,
    P: GroupPartition,
    H2: Subgroup,
    P2: GroupPartition,
    alpha: GroupAutomorphism,
) -> tuple[bool, tuple[int, ...]]:
    """Verify that the color action of H on P matches that of H2 on P2.

    The witness bijection sends block i of P to the block of P2 holding its
    alpha-image; compatibility means alpha(h) acts on P2-blocks exactly as h
    acts on P-blocks, for every h in H.
    """
    if alpha.apply_subgroup(H).members != H2.members:
        raise InvalidParameterError("H2 is not the alpha-image of H")
    imageP = alpha.apply_partition(P)
    if imageP.blocks != P2.blocks:
        raise InvalidParameterError("P2 is not the alpha-image of P")
    block_to_index = {block: i for i, block in enumerate(P2.blocks)}
    f = tuple(
        block_to_index[tuple(sorted(alpha(e) for e in block))] for block in P.blocks
    )
    for h in H.members:
        perm = P.permutation_induced_by(h)
        perm2 = P2.permutation_induced_by(alpha(h))
        for i in range(len(f)):
            if perm2[f[i]] != f[perm[i]]:
                return False, f
    return True, f


def find_conjugating_automorphism(
    G: FiniteGroup, H: Subgroup, H2: Subgroup, max_order: int | None = None
) -> GroupAutomorphism | None:
    """Search for an automorphism of G carrying H onto H2.

    Backtracking over generator images (restricted to elements of equal
    order), growing a partial multiplication-respecting map; the first
    complete bijection in canonical candidate order wins.  Because H and H2
    have index 2, the partial map may additionally be pruned whenever a
    member of H would leave H2 or vice versa.
    """
    bound = configured_max_order() if max_order is None else max_order
    if G.order > bound:
        raise ResourceLimitError(
            f"group order {G.order} exceeds the automorphism-search bound {bound}"
        )
    if H.order != H2.order:
        return None
    gen_names = list(G.generators)
    orders = G.element_orders
    h_set, h2_set = H.member_set, H2.member_set
    table = G.table

    def compatible(g: int, img: int) -> bool:
        return (g in h_set) == (img in h2_set)

    def close(pmap: dict[int, int], rmap: dict[int, int], fresh: list[int]) -> bool:
        queue = list(fresh)
        while queue:
            g = queue.pop()
            img_g = pmap[g]
            for h in list(pmap):
                img_h = pmap[h]
                for p, q in ((table[g][h], table[img_g][img_h]),
                             (table[h][g], table[img_h][img_g])):
                    known = pmap.get(p)
                    if known is not None:
                        if known != q:
                            return False
                        continue
                    if q in rmap or not compatible(p, q):
                        return False
                    pmap[p] = q
                    rmap[q] = p
                    queue.append(p)
        return True

    def search(i: int, pmap: dict[int, int], rmap: dict[int, int]):
        if i == len(gen_names):
            if len(pmap) == G.order:
                return GroupAutomorphism(G, tuple(pmap[g] for g in range(G.order)))
            return None
        g = G.generators[gen_names[i]]
        if g in pmap:
            return search(i + 1, pmap, rmap)
        for img in range(G.order):
            if orders[img] != orders[g] or img in rmap or not compatible(g, img):
                continue
            trial = dict(pmap)
            rtrial = dict(rmap)
            trial[g] = img
            rtrial[img] = g
            if close(trial, rtrial, [g]):
                found = search(i + 1, trial, rtrial)
                if found is not None:
                    return found
        return None

    e = G.identity
    return search(0, {e: e}, {e: e})


# -- named subgroups of the built-in groups ---------------------------------------


HEXAGON_COLOR_GROUPS = ("a2,b", "a")
P4M_COLOR_GROUPS = ("a,ab,xy,Xy", "xa,ab,xy,Xy")


def standard_color_groups(G: FiniteGroup) -> list[Subgroup]:
    """The index-2 color groups treated by the worked censuses.

    For the hexagonal pattern these are the reflection-and-half-turn group
    and the rotation group (the remaining index-2 subgroup is carried onto
    the first by an ambient reflection).  For the square pattern they are
    the two square-lattice color groups of full point symmetry.
    """
    kind = G.descriptor.get("kind")
    if kind == "dihedral" and G.descriptor.get("n") == 6:
        return [subgroup_from_words(G, w) for w in HEXAGON_COLOR_GROUPS]
    if kind == "p4m_quotient":
        return [subgroup_from_words(G, w) for w in P4M_COLOR_GROUPS]
    return subgroups_of_index(G, 2)
