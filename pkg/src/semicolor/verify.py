"""Oracle-versus-classifier verification suites.

Every fast path in the package has an independent brute-force counterpart;
these suites run both over exhaustive inputs for a chosen group and report
any disagreement.  They back the ``verify`` CLI command.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .census import (
    enumerate_all_semiperfect,
    enumerate_type1,
    enumerate_type2,
    count_semiperfect_type1,
    find_conjugating_automorphism,
    conjugate_spec,
    action_equivalence_check,
    standard_color_groups,
    type1_cells,
)
from .geometry import lift_quotient_element, symmetry_diagram
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    conjugacy_classes_of_subgroups,
    left_coset_reps,
    normalizer,
    perfect_coset_count,
    subgroup_generated,
    subgroups_of_index,
    subgroups_of_index_at_most,
    whole_group,
)
from .partitions import (
    PERFECT,
    classify_type1,
    classify_type2,
    color_action,
    equivalence_class,
    equivalence_key,
    partition_stabilizer,
    type1_partition,
    type2_partition,
)


@dataclass
class Suite:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, detail: str):
        self.checks += 1
        if not ok:
            self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    group: FiniteGroup
    suites: list[Suite]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def lines(self) -> list[str]:
        out = []
        for s in self.suites:
            status = "ok " if s.passed else "FAIL"
            out.append(f"{status} {s.name}: {s.checks} checks ({s.seconds:.2f}s)")
            for f in s.failures[:5]:
                out.append(f"     {f}")
            if len(s.failures) > 5:
                out.append(f"     ... and {len(s.failures) - 5} more")
        return out


def _timed(suite: Suite, fn):
    start = time.perf_counter()
    fn(suite)
    suite.seconds = time.perf_counter() - start
    return suite


def run_verification(G: FiniteGroup, exhaustive: bool = False) -> VerificationReport:
    color_groups = subgroups_of_index(G, 2)
    if not exhaustive and G.order > 16:
        preferred = standard_color_groups(G)
        if G.descriptor.get("kind") == "p4m_quotient":
            preferred = preferred + [
                subgroup_generated(G, G.elements_from_words(["b", "a2b", "x", "y"]))
            ]
        keys = {H.members for H in preferred if 2 * H.order == G.order}
        color_groups = [H for H in color_groups if H.members in keys] or color_groups[:2]

    suites = [
        _timed(Suite("group-axioms"), lambda s: _suite_axioms(s, G)),
        _timed(Suite("coset-bookkeeping"), lambda s: _suite_cosets(s, G, color_groups)),
        _timed(Suite("class-equation"), lambda s: _suite_classes(s, G, color_groups)),
        _timed(Suite("involution-bridge"), lambda s: _suite_bridge(s, G, color_groups)),
        _timed(Suite("one-orbit-oracle"), lambda s: _suite_type1(s, G, color_groups)),
        _timed(Suite("two-orbit-oracle"), lambda s: _suite_type2(s, G, color_groups)),
        _timed(Suite("orbit-size-two"), lambda s: _suite_orbits(s, G, color_groups)),
        _timed(Suite("grid-pairing"), lambda s: _suite_pairing(s, G, color_groups)),
        _timed(Suite("census-counts"), lambda s: _suite_counts(s, G, color_groups)),
        _timed(Suite("conjugate-transport"), lambda s: _suite_transport(s, G, color_groups)),
    ]
    if G.descriptor.get("kind") == "p4m_quotient":
        suites.append(
            _timed(Suite("diagram-soundness"), lambda s: _suite_diagram(s, G, exhaustive))
        )
    suites.append(_timed(Suite("census-determinism"), lambda s: _suite_determinism(s, G, color_groups)))
    return VerificationReport(G, suites)


def _lattice_pool(H: Subgroup) -> list[Subgroup]:
    """Subgroups of H to sweep: the full lattice when small, else a
    low-index slice so larger quotients stay tractable."""
    if H.order <= 16:
        return all_subgroups(H)
    return subgroups_of_index_at_most(H, 4)


def _suite_axioms(suite: Suite, G: FiniteGroup):
    suite.check(G.check_associativity(), "associativity failed")
    e = G.identity
    suite.check(
        all(G.mul(g, G.inv(g)) == e and G.mul(G.inv(g), g) == e for g in G.elements),
        "inverse law failed",
    )
    suite.check(
        all(G.mul(e, g) == g and G.mul(g, e) == g for g in G.elements),
        "identity law failed",
    )


def _suite_cosets(suite: Suite, G: FiniteGroup, color_groups):
    for H in color_groups:
        subs = _lattice_pool(H)
        for K in subs:
            regen = subgroup_generated(G, K.members)
            suite.check(regen.members == K.members, f"closure not idempotent for {K}")
            reps = left_coset_reps(H, K)
            suite.check(
                len(reps) * K.order == H.order,
                f"coset count mismatch for {K} in {H}",
            )
            covered = set()
            for rep in reps:
                coset = {G.mul(rep, k) for k in K.members}
                suite.check(not (coset & covered), f"cosets overlap for {K}")
                covered |= coset
            suite.check(covered == set(H.members), f"cosets do not cover H for {K}")


def _suite_classes(suite: Suite, G: FiniteGroup, color_groups):
    full = whole_group(G)
    for H in color_groups:
        subs = _lattice_pool(H)
        classes = conjugacy_classes_of_subgroups(subs, full)
        suite.check(
            sum(len(c) for c in classes) == len(subs),
            f"class sizes do not add up for H={H}",
        )
        for cls in classes:
            rep = cls[0]
            ng = normalizer(full, rep)
            suite.check(
                len(cls) * ng.order == G.order,
                f"orbit-stabilizer mismatch for {rep}",
            )


def _suite_bridge(suite: Suite, G: FiniteGroup, color_groups):
    for H in color_groups:
        hset = H.member_set
        for J in _lattice_pool(H):
            jset = J.member_set
            cosets = set()
            for r in G.elements:
                if r in hset:
                    continue
                left = frozenset(G.mul(r, j) for j in J.members)
                right = frozenset(G.mul(j, r) for j in J.members)
                if left == right and G.mul(r, r) in jset:
                    cosets.add(left)
            suite.check(
                perfect_coset_count(G, H, J) == len(cosets),
                f"involution bridge mismatch for J={J} in H={H}",
            )


def _suite_type1(suite: Suite, G: FiniteGroup, color_groups):
    for H in color_groups:
        outside = H.complement()
        for J in _lattice_pool(H):
            for r in outside:
                fast = classify_type1(J, r, H).perfect
                oracle = partition_stabilizer(G, type1_partition(H, J, r)).is_whole_group()
                suite.check(
                    fast == oracle,
                    f"one-orbit verdict mismatch J={J} r={G.labels[r]} H={H}",
                )


def _suite_type2(suite: Suite, G: FiniteGroup, color_groups):
    for H in color_groups:
        subs = _lattice_pool(H)
        for J1, J2 in combinations_with_replacement(subs, 2):
            fast = classify_type2(J1, J2, H) == PERFECT
            oracle = partition_stabilizer(G, type2_partition(H, J1, J2)).is_whole_group()
            suite.check(
                fast == oracle,
                f"two-orbit verdict mismatch J1={J1} J2={J2} H={H}",
            )


def _suite_orbits(suite: Suite, G: FiniteGroup, color_groups):
    for H in color_groups:
        cap = None if H.order <= 16 else 4
        entries = enumerate_type2(G, H, max_colors=cap) + enumerate_type1(G, H, max_colors=cap)
        for entry in entries:
            orbit = equivalence_class(entry.spec.partition, G)
            suite.check(len(orbit) == 2, f"orbit size != 2 for {entry.key_string()}")
            stabs = {partition_stabilizer(G, P).members for P in orbit}
            suite.check(len(stabs) == 1, f"orbit stabilizers differ for {entry.key_string()}")
            action = color_action(H, entry.spec.partition)
            cls = action.classification
            suite.check(
                cls.kernel_order * cls.color_perm_group_order == H.order,
                f"kernel product law fails for {entry.key_string()}",
            )


def _suite_pairing(suite: Suite, G: FiniteGroup, color_groups):
    full = whole_group(G)
    for H in color_groups:
        cap = None if H.order <= 16 else 4
        per_class: dict[tuple, dict] = {}
        for bJ, l, r, verdict in type1_cells(G, H, max_colors=cap):
            if verdict.perfect:
                continue
            P = type1_partition(H, bJ.conjugated_by(l), r)
            per_class.setdefault(bJ.members, {}).setdefault(
                equivalence_key(P, H), []
            ).append((l, r))
        for members, keys in per_class.items():
            J = Subgroup(G, members)
            split = normalizer(full, J).order == normalizer(H, J).order
            want = 1 if split else 2
            suite.check(
                all(len(v) == want for v in keys.values()),
                f"semiperfect grid multiplicity != {want} for J={J} H={H}",
            )


def _suite_counts(suite: Suite, G: FiniteGroup, color_groups):
    full = whole_group(G)
    for H in color_groups:
        cap = None if H.order <= 16 else 4
        entries2 = enumerate_type2(G, H, max_colors=cap)
        if cap is None:
            n_subs = len(all_subgroups(H))
            expected2 = n_subs * (n_subs - 1) // 2
        else:
            pool = subgroups_of_index_at_most(H, cap - 1)
            expected2 = sum(
                1
                for i, J1 in enumerate(pool)
                for J2 in pool[i + 1 :]
                if H.order // J1.order + H.order // J2.order <= cap
            )
        suite.check(
            len(entries2) == expected2,
            f"two-orbit census size mismatch for H={H}",
        )
        entries1 = enumerate_type1(G, H, max_colors=cap)
        pool1 = all_subgroups(H) if cap is None else subgroups_of_index_at_most(H, cap)
        total = 0
        for cls in conjugacy_classes_of_subgroups(pool1, full):
            total += count_semiperfect_type1(G, H, cls[0])
        suite.check(
            len(entries1) == total,
            f"one-orbit census does not match the closed form for H={H}",
        )


def _suite_transport(suite: Suite, G: FiniteGroup, color_groups):
    pairs = [
        (H, H2)
        for i, H in enumerate(color_groups)
        for H2 in color_groups[i + 1 :]
        if H.order == H2.order
    ]
    for H, H2 in pairs:
        alpha = find_conjugating_automorphism(G, H, H2)
        if alpha is None:
            continue
        cap = None if H.order <= 16 else 4
        entries = (
            enumerate_type2(G, H, max_colors=cap)[:6]
            + enumerate_type1(G, H, max_colors=cap)[:6]
        )
        for entry in entries:
            moved = conjugate_spec(entry.spec, alpha)
            suite.check(
                moved.verdict() == entry.spec.verdict(),
                f"transport changed verdict for {entry.key_string()}",
            )
            ok, _ = action_equivalence_check(
                entry.spec.H, entry.spec.partition, moved.H, moved.partition, alpha
            )
            suite.check(ok, f"transported action differs for {entry.key_string()}")
    suite.check(True, "transport sweep completed")


def _suite_diagram(suite: Suite, G: FiniteGroup, exhaustive: bool):
    if G.order <= 32:
        subs = all_subgroups(G)
    else:
        subs = subgroups_of_index_at_most(whole_group(G), 8)
    if not exhaustive:
        subs = subs[: max(12, len(subs) // 4)]
    for J in subs:
        D = symmetry_diagram(J)
        for r in G.elements:
            moved = D.transformed(lift_quotient_element(G, r))
            conj = symmetry_diagram(J.conjugated_by(r))
            suite.check(moved == conj, f"diagram conjugation identity fails for {J}")
            if moved != D:
                left = {G.mul(r, j) for j in J.members}
                right = {G.mul(j, r) for j in J.members}
                suite.check(
                    left != right,
                    f"diagram moved but {G.labels[r]} normalizes {J}",
                )


def _suite_determinism(suite: Suite, G: FiniteGroup, color_groups):
    a = enumerate_all_semiperfect(G, H_filter=color_groups).serialize()
    b = enumerate_all_semiperfect(G, H_filter=color_groups).serialize()
    suite.check(a == b, "census serialization is not reproducible")
