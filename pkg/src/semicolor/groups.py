"""Exact arithmetic for small finite groups given by multiplication tables.

Elements are integers ``0..order-1`` in a canonical order fixed by each
construction, so identical descriptors yield identical labels, tables and
coset representatives across runs.  Human-readable labels ("a^2b", "xya^3")
are the single source of element identity in serialized form.

Conjugation acts on the left throughout: the conjugate of ``g`` by ``t`` is
``t*g*t^-1``, and the conjugate of a subgroup ``J`` by ``t`` is ``t*J*t^-1``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidParameterError, ResourceLimitError

DEFAULT_MAX_ORDER = 512
MAX_ORDER_ENV = "SEMICOLOR_MAX_ORDER"

#: The eight integer matrices of the square point group, rows-first.
#: Order: rotations by 0/90/180/270 degrees, then each rotation composed
#: with the horizontal mirror (x, y) -> (x, -y).
ROT90 = ((0, -1), (1, 0))
MIRROR_X_AXIS = ((1, 0), (0, -1))


def _mat_mul(m1, m2):
    return (
        (m1[0][0] * m2[0][0] + m1[0][1] * m2[1][0], m1[0][0] * m2[0][1] + m1[0][1] * m2[1][1]),
        (m1[1][0] * m2[0][0] + m1[1][1] * m2[1][0], m1[1][0] * m2[0][1] + m1[1][1] * m2[1][1]),
    )


def _mat_vec(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _square_point_group():
    identity = ((1, 0), (0, 1))
    rots = [identity]
    for _ in range(3):
        rots.append(_mat_mul(ROT90, rots[-1]))
    return tuple(rots + [_mat_mul(r, MIRROR_X_AXIS) for r in rots])


SQUARE_POINT_GROUP = _square_point_group()


def configured_max_order() -> int:
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameterError(
            f"{MAX_ORDER_ENV} must be an integer, got {raw!r}"
        ) from None


_WORD_TOKEN = re.compile(r"([A-Za-z])(\d*)")


class FiniteGroup:
    """A finite group with full multiplication and inverse lookup tables."""

    def __init__(
        self,
        labels: Sequence[str],
        mul_table: Sequence[Sequence[int]],
        generators: dict[str, int],
        descriptor: dict,
    ):
        n = len(labels)
        if n == 0:
            raise InvalidParameterError("a group needs at least one element")
        self.order = n
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in mul_table)
        self.generators = dict(generators)
        self.descriptor = dict(descriptor)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_index) != n:
            raise InvalidParameterError("duplicate element labels")
        self._validate_table()
        self.identity = self._find_identity()
        self.inverse = self._build_inverses()

    # -- construction checks -------------------------------------------------

    def _validate_table(self):
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.table):
            if len(row) != n or set(row) != full:
                raise InvalidParameterError(f"multiplication row {i} is not a permutation")
        for j in range(n):
            if {row[j] for row in self.table} != full:
                raise InvalidParameterError(f"multiplication column {j} is not a permutation")

    def _find_identity(self) -> int:
        ids = [i for i, row in enumerate(self.table) if list(row) == list(range(self.order))]
        ids = [i for i in ids if all(self.table[g][i] == g for g in range(self.order))]
        if len(ids) != 1:
            raise InvalidParameterError("group table does not have a unique identity")
        return ids[0]

    def _build_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for g in range(self.order):
            for h in range(self.order):
                if self.table[g][h] == self.identity and self.table[h][g] == self.identity:
                    inv[g] = h
                    break
            if inv[g] < 0:
                raise InvalidParameterError(f"element {self.labels[g]} has no two-sided inverse")
        return tuple(inv)

    def check_associativity(self, exhaustive_limit: int = 200, samples: int = 20000) -> bool:
        """Exhaustive check up to ``exhaustive_limit`` elements, sampled above."""
        n = self.order
        mul = self.table
        if n <= exhaustive_limit:
            triples: Iterable[tuple[int, int, int]] = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            import random

            rng = random.Random(0)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)
            )
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                return False
        return True

    # -- basic arithmetic ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, by: int) -> int:
        """Left conjugation: ``by * g * by^-1``."""
        return self.table[self.table[by][g]][self.inverse[by]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][g]
        return acc

    def product(self, elems: Iterable[int]) -> int:
        acc = self.identity
        for g in elems:
            acc = self.table[acc][g]
        return acc

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            k, acc = 1, g
            while acc != self.identity:
                acc = self.table[acc][g]
                k += 1
            orders.append(k)
        return tuple(orders)

    def order_of(self, g: int) -> int:
        return self.element_orders[g]

    @property
    def elements(self) -> range:
        return range(self.order)

    def label(self, g: int) -> str:
        return self.labels[g]

    # -- words and labels ----------------------------------------------------

    def element(self, word: str) -> int:
        """Resolve a generator word to an element index.

        Accepts labels ("a^2b") and compact words ("a2b"); uppercase letters
        denote inverses ("xY" is x*y^-1), "e" is the identity.
        """
        s = word.replace("^", "").replace(" ", "")
        if s in ("", "e"):
            return self.identity
        acc = self.identity
        pos = 0
        for m in _WORD_TOKEN.finditer(s):
            if m.start() != pos:
                raise InvalidParameterError(f"cannot parse element word {word!r}")
            letter, digits = m.group(1), m.group(2)
            name = letter.lower()
            if name == "e" and not digits:
                pos = m.end()
                continue
            if name not in self.generators:
                raise InvalidParameterError(
                    f"unknown generator {letter!r} in word {word!r}; "
                    f"known: {sorted(self.generators)}"
                )
            g = self.generators[name]
            if letter.isupper():
                g = self.inverse[g]
            acc = self.table[acc][self.power(g, int(digits) if digits else 1)]
            pos = m.end()
        if pos != len(s):
            raise InvalidParameterError(f"cannot parse element word {word!r}")
        return acc

    def elements_from_words(self, words: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.element(w) for w in words)

    # -- factorizations (for extending maps defined on generators) -----------

    @cached_property
    def _bfs_factorization(self):
        """BFS spanning data: discovery order, parent, and generator step.

        Every element g satisfies ``g = parent[g] * step`` where step is a
        generator or a generator inverse, so any map defined on generators
        extends along the tree.
        """
        symbols = []
        for name in self.generators:
            g = self.generators[name]
            symbols.append((name, False))
            if self.inverse[g] != g:
                symbols.append((name, True))
        order = [self.identity]
        parent: dict[int, tuple[int, str, bool]] = {}
        seen = {self.identity}
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for name, invert in symbols:
                g = self.generators[name]
                if invert:
                    g = self.inverse[g]
                nxt = self.table[h][g]
                if nxt not in seen:
                    seen.add(nxt)
                    parent[nxt] = (h, name, invert)
                    order.append(nxt)
        if len(order) != self.order:
            raise InvalidParameterError("declared generators do not generate the group")
        return tuple(order), parent

    def extend_generator_map(self, images: dict[str, int]) -> tuple[int, ...]:
        """Extend ``generator name -> element`` along products to all of G.

        No homomorphism property is checked here; see GroupAutomorphism.
        """
        missing = set(self.generators) - set(images)
        if missing:
            raise InvalidParameterError(f"missing generator images: {sorted(missing)}")
        order, parent = self._bfs_factorization
        out = [0] * self.order
        out[self.identity] = self.identity
        for g in order[1:]:
            h, name, invert = parent[g]
            step = images[name]
            if invert:
                step = self.inverse[step]
            out[g] = self.table[out[h]][step]
        return tuple(out)

    def __repr__(self):
        return f"FiniteGroup({self.descriptor}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A closed subset of a FiniteGroup, stored as a sorted member tuple."""

    group: FiniteGroup
    members: tuple[int, ...]

    @classmethod
    def from_members(cls, group: FiniteGroup, members: Iterable[int]) -> "Subgroup":
        elems = sorted(set(members))
        sub = cls(group, tuple(elems))
        if not sub.is_closed():
            raise InvalidParameterError("member set is not closed under the group operation")
        return sub

    def is_closed(self) -> bool:
        g, mem = self.group, self.member_set
        if g.identity not in mem:
            return False
        return all(g.table[a][b] in mem and g.inverse[a] in mem for a in mem for b in mem)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> int:
        m = 0
        for g in self.members:
            m |= 1 << g
        return m

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.group.order // len(self.members)

    def index_in(self, other: "Subgroup") -> int:
        if not self.is_subset_of(other):
            raise InvalidParameterError("subgroup is not contained in the given overgroup")
        return other.order // self.order

    def contains(self, g: int) -> bool:
        return g in self.member_set

    def is_subset_of(self, other: "Subgroup") -> bool:
        self._check_ambient(other)
        return self.mask & ~other.mask == 0

    def conjugated_by(self, t: int) -> "Subgroup":
        """The subgroup ``t * self * t^-1``."""
        g = self.group
        ti = g.inverse[t]
        return Subgroup(g, tuple(sorted(g.table[g.table[t][m]][ti] for m in self.members)))

    def is_normal_in(self, other: "Subgroup") -> bool:
        return all(self.conjugated_by(t) == self for t in other.members)

    def is_whole_group(self) -> bool:
        return len(self.members) == self.group.order

    def complement(self) -> tuple[int, ...]:
        mem = self.member_set
        return tuple(g for g in self.group.elements if g not in mem)

    def label_list(self) -> list[str]:
        return [self.group.labels[m] for m in self.members]

    def _check_ambient(self, other: "Subgroup"):
        if other.group is not self.group:
            raise InvalidParameterError("subgroups live in different ambient groups")

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def __repr__(self):
        return f"Subgroup({generating_words(self)}, order={self.order})"


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


# -- constructions ------------------------------------------------------------


def build_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: a rotation ``a`` and a reflection ``b``.

    Canonical element order e, a, ..., a^(n-1), b, ab, ..., a^(n-1)b; the
    relations are a^n = b^2 = (ab)^2 = e.
    """
    if n < 1:
        raise InvalidParameterError("dihedral parameter must be a positive integer")
    order = 2 * n

    def idx(i, j):
        return i % n + (n if j else 0)

    labels = []
    for j in (0, 1):
        for i in range(n):
            word = ""
            if i == 1:
                word = "a"
            elif i > 1:
                word = f"a^{i}"
            if j:
                word += "b"
            labels.append(word or "e")
    table = [[0] * order for _ in range(order)]
    for i in range(n):
        for j in (0, 1):
            for k in range(n):
                for l in (0, 1):
                    # (a^i b^j)(a^k b^l): move b^j across a^k.
                    i2 = (i + k) % n if not j else (i - k) % n
                    table[idx(i, j)][idx(k, l)] = idx(i2, (j + l) % 2)
    gens = {"a": idx(1, 0) if n > 1 else idx(0, 0), "b": idx(0, 1)}
    return FiniteGroup(labels, table, gens, {"kind": "dihedral", "n": n})


def build_p4m_quotient(N: int) -> FiniteGroup:
    """Square-lattice wallpaper group modulo the sublattice of index N^2.

    Elements are pairs (point matrix, translation mod N) with product
    ``(M1,t1)(M2,t2) = (M1*M2, t1 + M1*t2)``; order 8*N^2.  Generators:
    ``a`` (quarter turn), ``b`` (horizontal mirror), ``x``/``y`` (unit
    translations).
    """
    if N < 1:
        raise InvalidParameterError("quotient modulus must be a positive integer")
    mats = SQUARE_POINT_GROUP
    mat_index = {m: i for i, m in enumerate(mats)}
    order = 8 * N * N

    def idx(mi, t):
        return mi * N * N + (t[0] % N) * N + t[1] % N

    def decode(g):
        mi, rest = divmod(g, N * N)
        return mi, divmod(rest, N)

    labels = []
    for mi in range(8):
        ri, has_b = mi % 4, mi >= 4
        for t1 in range(N):
            for t2 in range(N):
                word = ""
                for sym, k in (("x", t1), ("y", t2)):
                    if k == 1:
                        word += sym
                    elif k > 1:
                        word += f"{sym}^{k}"
                if ri == 1:
                    word += "a"
                elif ri > 1:
                    word += f"a^{ri}"
                if has_b:
                    word += "b"
                labels.append(word or "e")
    table = [[0] * order for _ in range(order)]
    for g in range(order):
        mi, t = decode(g)
        for h in range(order):
            mj, u = decode(h)
            mu = _mat_vec(mats[mi], u)
            table[g][h] = idx(mat_index[_mat_mul(mats[mi], mats[mj])],
                              (t[0] + mu[0], t[1] + mu[1]))
    gens = {
        "a": idx(1, (0, 0)),
        "b": idx(4, (0, 0)),
        "x": idx(0, (1, 0)),
        "y": idx(0, (0, 1)),
    }
    return FiniteGroup(labels, table, gens, {"kind": "p4m_quotient", "N": N})


def p4m_point_and_translation(group: FiniteGroup, g: int) -> tuple[int, tuple[int, int]]:
    """Decode a p4m-quotient element into (point-matrix index, translation)."""
    if group.descriptor.get("kind") != "p4m_quotient":
        raise InvalidParameterError("element does not belong to a p4m quotient group")
    N = group.descriptor["N"]
    mi, rest = divmod(g, N * N)
    return mi, divmod(rest, N)


def group_from_descriptor(desc: dict) -> FiniteGroup:
    kind = desc.get("kind")
    if kind == "dihedral":
        return build_dihedral(int(desc["n"]))
    if kind == "p4m_quotient":
        return build_p4m_quotient(int(desc["N"]))
    raise InvalidParameterError(f"unknown group descriptor {desc!r}")


def parse_group_arg(text: str) -> dict:
    """Parse CLI group descriptors like ``dihedral:6`` or ``p4m_quotient:2``."""
    kind, sep, param = text.partition(":")
    if not sep:
        raise InvalidParameterError(f"group descriptor {text!r} must look like kind:parameter")
    try:
        value = int(param)
    except ValueError:
        raise InvalidParameterError(f"group parameter in {text!r} must be an integer") from None
    if kind == "dihedral":
        return {"kind": "dihedral", "n": value}
    if kind == "p4m_quotient":
        return {"kind": "p4m_quotient", "N": value}
    raise InvalidParameterError(f"unknown group kind {kind!r}")


# -- subgroup machinery -------------------------------------------------------


def _close_under_products(group: FiniteGroup, seed: Iterable[int]) -> tuple[int, ...]:
    table, inv = group.table, group.inverse
    members = {group.identity}
    queue = []
    for g in seed:
        if g not in members:
            members.add(g)
            queue.append(g)
    for g in queue:
        members.add(inv[g])
    queue = list(members)
    while queue:
        g = queue.pop()
        for h in tuple(members):
            for p in (table[g][h], table[h][g]):
                if p not in members:
                    members.add(p)
                    queue.append(p)
    return tuple(sorted(members))


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    gens = tuple(gens)
    for g in gens:
        if not 0 <= g < group.order:
            raise InvalidParameterError(f"unknown element index {g}")
    return Subgroup(group, _close_under_products(group, gens))


def subgroup_from_words(group: FiniteGroup, words: Iterable[str] | str) -> Subgroup:
    if isinstance(words, str):
        words = [w for w in words.split(",") if w]
    return subgroup_generated(group, group.elements_from_words(words))


def _as_universe(group_or_subgroup: FiniteGroup | Subgroup) -> Subgroup:
    if isinstance(group_or_subgroup, FiniteGroup):
        return whole_group(group_or_subgroup)
    return group_or_subgroup


def all_subgroups(group_or_subgroup: FiniteGroup | Subgroup,
                  max_order: int | None = None) -> list[Subgroup]:
    """Every subgroup of the given group (or of the given subgroup).

    Found by saturating one-generator extensions: every subgroup sits on a
    maximal chain, so repeatedly adjoining single elements to already-found
    subgroups reaches all of them.  Deterministic order: by order, then by
    member tuple.
    """
    universe = _as_universe(group_or_subgroup)
    group = universe.group
    bound = configured_max_order() if max_order is None else max_order
    if group.order > bound:
        raise ResourceLimitError(
            f"group order {group.order} exceeds the subgroup-enumeration bound {bound}"
        )
    found = {(group.identity,): Subgroup(group, (group.identity,))}
    frontier = [found[(group.identity,)]]
    while frontier:
        nxt = []
        for sub in frontier:
            mem = sub.member_set
            for g in universe.members:
                if g in mem:
                    continue
                bigger = _close_under_products(group, sub.members + (g,))
                if bigger not in found:
                    bigger_sub = Subgroup(group, bigger)
                    found[bigger] = bigger_sub
                    nxt.append(bigger_sub)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.members))


def index_two_subgroups(group_or_subgroup: FiniteGroup | Subgroup) -> list[Subgroup]:
    """All index-2 subgroups, via the subgroup generated by squares.

    Index-2 subgroups are exactly the preimages of hyperplanes in the
    elementary abelian quotient by <g^2 : g>, which also contains every
    commutator.
    """
    universe = _as_universe(group_or_subgroup)
    group = universe.group
    squares = _close_under_products(
        group, (group.table[g][g] for g in universe.members)
    )
    sq_set = set(squares)
    # Coset decomposition of the universe by the squares subgroup.
    cosets: list[tuple[int, ...]] = []
    coset_of: dict[int, int] = {}
    for g in universe.members:
        if g in coset_of:
            continue
        c = tuple(sorted(group.table[g][s] for s in squares))
        ci = len(cosets)
        cosets.append(c)
        for h in c:
            coset_of[h] = ci
    k = len(cosets)
    if k == 1:
        return []
    # GF(2) coordinates for each coset relative to a greedy basis.
    basis: list[int] = []
    span = {coset_of[group.identity]: 0}  # coset index -> vector
    for ci in range(k):
        if ci in span:
            continue
        basis.append(ci)
        bit = 1 << (len(basis) - 1)
        for known, v in list(span.items()):
            rep = group.table[cosets[ci][0]][cosets[known][0]]
            span[coset_of[rep]] = v | bit
    rank = len(basis)
    assert len(span) == k == 1 << rank
    subs = []
    for functional in range(1, 1 << rank):
        members: list[int] = []
        for ci, v in span.items():
            if bin(v & functional).count("1") % 2 == 0:
                members.extend(cosets[ci])
        subs.append(Subgroup(group, tuple(sorted(members))))
    return sorted(subs, key=lambda s: s.members)


def subgroups_of_index(group_or_subgroup: FiniteGroup | Subgroup, k: int,
                       max_order: int | None = None) -> list[Subgroup]:
    """All subgroups of the given index, deterministically ordered."""
    universe = _as_universe(group_or_subgroup)
    if k < 1:
        raise InvalidParameterError("index must be a positive integer")
    if k == 1:
        return [universe]
    if universe.order % k != 0:
        return []
    if k == 2:
        return index_two_subgroups(universe)
    return [s for s in all_subgroups(universe, max_order=max_order)
            if universe.order == k * s.order]


def subgroups_of_index_at_most(universe: Subgroup, bound: int) -> list[Subgroup]:
    """Subgroups of index <= bound inside ``universe``.

    For 2-power order this walks index-2 steps (every maximal subgroup of a
    p-group has index p); otherwise it filters the full lattice.
    """
    n = universe.order
    if n & (n - 1) == 0:
        found = {universe.members: universe}
        frontier = [universe]
        index = 1
        while frontier and index * 2 <= bound:
            index *= 2
            nxt = []
            for sub in frontier:
                for smaller in index_two_subgroups(sub):
                    if smaller.members not in found:
                        found[smaller.members] = smaller
                        nxt.append(smaller)
            frontier = nxt
        return sorted(found.values(), key=lambda s: (-s.order, s.members))
    return sorted(
        (s for s in all_subgroups(universe) if s.order * bound >= n),
        key=lambda s: (-s.order, s.members),
    )


def normalizer(within: Subgroup, J: Subgroup) -> Subgroup:
    """Elements of ``within`` whose conjugation fixes J setwise."""
    within._check_ambient(J)
    group = J.group
    jset = J.member_set
    members = []
    for w in within.members:
        wi = group.inverse[w]
        if all(group.table[group.table[w][j]][wi] in jset for j in J.members):
            members.append(w)
    return Subgroup(group, tuple(members))


def left_coset_reps(H: Subgroup, K: Subgroup) -> list[int]:
    """Smallest representative of each left coset of K in H, ascending."""
    if not K.is_subset_of(H):
        raise InvalidParameterError("coset representatives need K contained in H")
    group = H.group
    seen: set[int] = set()
    reps = []
    for h in H.members:  # ascending, so the first hit is the smallest member
        if h in seen:
            continue
        reps.append(h)
        seen.update(group.table[h][k] for k in K.members)
    return reps


def right_coset_reps_outside(J: Subgroup, G: FiniteGroup, H: Subgroup) -> list[int]:
    """Smallest representative of each right coset of J inside G minus H."""
    if J.group is not G or H.group is not G:
        raise InvalidParameterError("subgroups live in different ambient groups")
    if not J.is_subset_of(H):
        raise InvalidParameterError("J must be contained in H")
    if 2 * H.order != G.order:
        raise InvalidParameterError("H must have index 2")
    seen: set[int] = set()
    reps = []
    for g in H.complement():
        if g in seen:
            continue
        reps.append(g)
        seen.update(G.table[j][g] for j in J.members)
    return reps


def conjugacy_classes_of_subgroups(
    subgroups: Sequence[Subgroup], conjugators: Subgroup
) -> list[list[Subgroup]]:
    """Partition the given subgroups into conjugation orbits.

    Each class is sorted, classes ordered by decreasing subgroup order then
    by the representative's member tuple.
    """
    pool = {s.members: s for s in subgroups}
    classes = []
    while pool:
        rep_key = min(pool)
        orbit = {rep_key: pool.pop(rep_key)}
        queue = [orbit[rep_key]]
        while queue:
            sub = queue.pop()
            for t in conjugators.members:
                conj = sub.conjugated_by(t)
                if conj.members not in orbit:
                    if conj.members not in pool:
                        raise InvalidParameterError(
                            "conjugation leaves the given subgroup family"
                        )
                    orbit[conj.members] = pool.pop(conj.members)
                    queue.append(conj)
        classes.append(sorted(orbit.values(), key=lambda s: s.members))
    return sorted(classes, key=lambda c: (-c[0].order, c[0].members))


def conjugacy_class_reps_of_subgroups(H: Subgroup, conjugators: Subgroup) -> list[Subgroup]:
    """One representative (smallest member tuple) per conjugation orbit of
    the subgroups of H, ordered by decreasing order then member tuple."""
    H._check_ambient(conjugators)
    classes = conjugacy_classes_of_subgroups(all_subgroups(H), conjugators)
    return [cls[0] for cls in classes]


def perfect_coset_count(G: FiniteGroup, H: Subgroup, J: Subgroup) -> int:
    """Number of right cosets of J outside H whose representatives normalize
    J and square into J.

    Equivalently: involutions of the normalizer-of-J quotient by J that do
    not come from H.  Cosets outside H can never be the identity coset, so
    only order-exactly-2 cosets are counted.
    """
    if J.group is not G or H.group is not G:
        raise InvalidParameterError("subgroups live in different ambient groups")
    if not J.is_subset_of(H) or 2 * H.order != G.order:
        raise InvalidParameterError("need J <= H <= G with H of index 2")
    ng = normalizer(whole_group(G), J)
    jset = J.member_set
    hset = H.member_set
    count = 0
    seen: set[frozenset[int]] = set()
    for r in ng.members:
        if r in hset or G.table[r][r] not in jset:
            continue
        coset = frozenset(G.table[r][j] for j in J.members)
        if coset not in seen:
            seen.add(coset)
            count += 1
    return count


# -- display helpers ----------------------------------------------------------


def generating_words(sub: Subgroup) -> str:
    """Short display form like ``<a^2,b>``; trivial subgroup prints ``{e}``."""
    group = sub.group
    if sub.order == 1:
        return "{e}"
    non_identity = [m for m in sub.members if m != group.identity]
    sizes = (1, 2) if len(non_identity) > 24 else (1, 2, 3)
    for size in sizes:
        for gens in combinations(non_identity, size):
            if _close_under_products(group, gens) == sub.members:
                return "<" + ",".join(group.labels[g] for g in gens) + ">"
    # Greedy fallback: deterministic, not necessarily minimal.
    gens: list[int] = []
    closed: tuple[int, ...] = (group.identity,)
    closed_set = {group.identity}
    for m in sub.members:
        if m in closed_set:
            continue
        gens.append(m)
        closed = _close_under_products(group, tuple(gens))
        closed_set = set(closed)
        if closed == sub.members:
            break
    return "<" + ",".join(group.labels[g] for g in gens) + ">"


def subgroup_sort_key(sub: Subgroup):
    return (sub.order, sub.members)
