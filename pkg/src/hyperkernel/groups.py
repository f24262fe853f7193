"""Finite group arithmetic on Cayley tables.

Covers what the quotient side of the library needs: validation,
subgroup closure, commutator subgroups, abelianization, cosets and
quotient groups, brute-force isomorphism, and finitely supported direct
sums of abelianized factors.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from hyperkernel import errors
from hyperkernel.core import ElementSet, Partition, bits, mask_of


class GroupTable:
    """Validated single-valued Cayley table with identity and inverses."""

    __slots__ = ("n", "names", "rows", "identity", "inverse", "_index")

    def __init__(self, names: Sequence[str], rows: Sequence[Sequence[int]]):
        self.names = tuple(names)
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows) or len(self.names) != n:
            raise errors.InvalidGroupTable("table is not square")
        if any(not (0 <= v < n) for r in self.rows for v in r):
            raise errors.InvalidGroupTable("entry out of range")
        for a in range(n):
            for b in range(n):
                ab = self.rows[a][b]
                for c in range(n):
                    if self.rows[ab][c] != self.rows[a][self.rows[b][c]]:
                        raise errors.NotAssociative(f"witness {(a, b, c)}")
        ident = None
        for e in range(n):
            if all(self.rows[e][x] == x and self.rows[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise errors.NoIdentity("no two-sided identity")
        inverse = []
        for a in range(n):
            inv = next(
                (
                    b
                    for b in range(n)
                    if self.rows[a][b] == ident and self.rows[b][a] == ident
                ),
                None,
            )
            if inv is None:
                raise errors.NoInverse(f"witness {a}")
            inverse.append(inv)
        self.n = n
        self.identity = ident
        self.inverse = tuple(inverse)
        self._index = {lab: i for i, lab in enumerate(self.names)}

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise errors.UnknownLabel(f"unknown element {label!r}") from None

    def order_of(self, a: int) -> int:
        x = a
        k = 1
        while x != self.identity:
            x = self.rows[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.rows[a][b] == self.rows[b][a]
            for a in range(self.n)
            for b in range(a + 1, self.n)
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupTable)
            and self.names == other.names
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.names, self.rows))

    def __repr__(self) -> str:
        return f"GroupTable(order {self.n})"


def validate_group(
    table: Sequence[Sequence[int]], names: Sequence[str] | None = None
) -> GroupTable:
    """Build a GroupTable, raising NotAssociative/NoIdentity/NoInverse."""
    rows = [list(r) for r in table]
    if names is None:
        names = [str(i) for i in range(len(rows))]
    return GroupTable(names, rows)


def subgroup_generated(G: GroupTable, S: ElementSet | Iterable[int]) -> ElementSet:
    """Smallest subgroup containing S (closure under product and inverse)."""
    seeds = list(S)
    members = {G.identity}
    frontier = [G.identity]
    for s in seeds:
        if s not in members:
            members.add(s)
            frontier.append(s)
    while frontier:
        a = frontier.pop()
        candidates = [G.inverse[a]]
        candidates.extend(G.rows[a][b] for b in list(members))
        candidates.extend(G.rows[b][a] for b in list(members))
        for c in candidates:
            if c not in members:
                members.add(c)
                frontier.append(c)
    return ElementSet.from_indices(G.n, members)


def commutator_subgroup(G: GroupTable) -> ElementSet:
    """Subgroup generated by all a*b*a^-1*b^-1."""
    comms = set()
    for a in range(G.n):
        for b in range(G.n):
            comms.add(G.rows[G.rows[G.rows[a][b]][G.inverse[a]]][G.inverse[b]])
    return subgroup_generated(G, comms)


def cosets(G: GroupTable, N: ElementSet) -> Partition:
    """Partition of G into cosets of the normal subgroup N."""
    _require_normal_subgroup(G, N)
    nm = N.mask
    coset_of: dict[int, int] = {}
    class_of = [0] * G.n
    for a in range(G.n):
        cm = mask_of(G.rows[a][k] for k in bits(nm))
        cid = coset_of.setdefault(cm, len(coset_of))
        class_of[a] = cid
    return Partition(G.n, class_of)


def _require_normal_subgroup(G: GroupTable, N: ElementSet) -> None:
    nm = N.mask
    if not nm or not nm >> G.identity & 1:
        raise errors.NotNormal("not a subgroup: identity missing")
    for a in bits(nm):
        if not nm >> G.inverse[a] & 1:
            raise errors.NotNormal("not a subgroup: inverse escapes")
        for b in bits(nm):
            if not nm >> G.rows[a][b] & 1:
                raise errors.NotNormal("not a subgroup: product escapes")
    for g in range(G.n):
        gi = G.inverse[g]
        for a in bits(nm):
            if not nm >> G.rows[G.rows[g][a]][gi] & 1:
                raise errors.NotNormal(f"conjugation by {g} escapes")


def quotient_group(G: GroupTable, N: ElementSet) -> GroupTable:
    """Coset group with least-index representatives as element names."""
    part = cosets(G, N)
    reps = [c.indices()[0] for c in part.classes]
    names = [G.names[r] for r in reps]
    k = len(reps)
    rows = [
        [part.class_of[G.rows[reps[i]][reps[j]]] for j in range(k)] for i in range(k)
    ]
    return GroupTable(names, rows)


def abelianization(G: GroupTable) -> GroupTable:
    """Quotient by the commutator subgroup."""
    return quotient_group(G, commutator_subgroup(G))


def direct_product_group(G1: GroupTable, G2: GroupTable) -> GroupTable:
    """Componentwise product, row-major pairing."""
    n2 = G2.n
    names = [f"{a}.{b}" for a in G1.names for b in G2.names]
    rows = []
    for a1 in range(G1.n):
        for a2 in range(n2):
            rows.append(
                [
                    G1.rows[a1][b1] * n2 + G2.rows[a2][b2]
                    for b1 in range(G1.n)
                    for b2 in range(n2)
                ]
            )
    return GroupTable(names, rows)


_ISO_MAX = 16


def isomorphic(G1: GroupTable, G2: GroupTable) -> tuple[bool, tuple[int, ...] | None]:
    """Brute-force isomorphism test, order-profile pruned.

    Returns (found, mapping) where mapping[i] is the image of i.  Only
    intended for small groups; refuses above order 16.
    """
    if G1.n != G2.n:
        return False, None
    if G1.n > _ISO_MAX:
        raise errors.SizeExceeded(f"isomorphism search capped at order {_ISO_MAX}")
    n = G1.n
    ord1 = [G1.order_of(a) for a in range(n)]
    ord2 = [G2.order_of(a) for a in range(n)]
    if sorted(ord1) != sorted(ord2):
        return False, None

    # Small generating sequence of G1 by greedy closure.
    gens: list[int] = []
    closure = subgroup_generated(G1, ())
    while len(closure) < n:
        nxt = next(a for a in range(n) if a not in closure)
        gens.append(nxt)
        closure = subgroup_generated(G1, gens)

    # Words expressing every element of G1 through the generators, so a
    # candidate generator assignment extends to at most one homomorphism.
    expr: dict[int, tuple[int, ...]] = {G1.identity: ()}
    frontier = [G1.identity]
    while frontier:
        a = frontier.pop(0)
        for gi, g in enumerate(gens):
            b = G1.rows[a][g]
            if b not in expr:
                expr[b] = expr[a] + (gi,)
                frontier.append(b)

    def extend(images: list[int]) -> tuple[int, ...] | None:
        phi = [0] * n
        for a in range(n):
            v = G2.identity
            for gi in expr[a]:
                v = G2.rows[v][images[gi]]
            phi[a] = v
        if len(set(phi)) != n:
            return None
        for a in range(n):
            for b in range(n):
                if phi[G1.rows[a][b]] != G2.rows[phi[a]][phi[b]]:
                    return None
        return tuple(phi)

    def backtrack(k: int, images: list[int]) -> tuple[int, ...] | None:
        if k == len(gens):
            return extend(images)
        want = ord1[gens[k]]
        for cand in range(n):
            if ord2[cand] != want:
                continue
            images.append(cand)
            found = backtrack(k + 1, images)
            if found is not None:
                return found
            images.pop()
        return None

    mapping = backtrack(0, [])
    return (mapping is not None), mapping


class DirectSumFamily:
    """Indexed family of groups with their abelianization data.

    Supports finitely supported sums over the abelianized factors; the
    stored component of a factor is an element index of that factor's
    abelianization, never its identity.
    """

    __slots__ = ("groups", "abelianizations", "projections")

    def __init__(self, groups: Sequence[GroupTable]):
        self.groups = tuple(groups)
        abelians = []
        projections = []
        for G in self.groups:
            comm = commutator_subgroup(G)
            part = cosets(G, comm)
            abelians.append(quotient_group(G, comm))
            projections.append(part.class_of)
        self.abelianizations = tuple(abelians)
        self.projections = tuple(projections)

    def zero(self) -> "DirectSumElement":
        return DirectSumElement(self, ())

    def inject(self, factor: int, elem: int) -> "DirectSumElement":
        """Image of one factor element under projection into the sum."""
        if not 0 <= factor < len(self.groups):
            raise errors.FamilyMismatch(f"no factor {factor}")
        if not 0 <= elem < self.groups[factor].n:
            raise errors.FamilyMismatch(f"element {elem} outside factor {factor}")
        cls = self.projections[factor][elem]
        if cls == self.abelianizations[factor].identity:
            return self.zero()
        return DirectSumElement(self, ((factor, cls),))


class DirectSumElement:
    """Finitely supported element of the direct sum of abelianizations."""

    __slots__ = ("family", "support")

    def __init__(self, family: DirectSumFamily, support: Iterable[tuple[int, int]]):
        self.family = family
        self.support = tuple(sorted(support))

    def is_zero(self) -> bool:
        return not self.support

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DirectSumElement)
            and self.family is other.family
            and self.support == other.support
        )

    def __hash__(self) -> int:
        return hash((id(self.family), self.support))

    def __repr__(self) -> str:
        if not self.support:
            return "DirectSumElement(0)"
        parts = ", ".join(
            f"{i}->{self.family.abelianizations[i].names[c]}" for i, c in self.support
        )
        return f"DirectSumElement({parts})"

    def __neg__(self) -> "DirectSumElement":
        out = []
        for i, c in self.support:
            out.append((i, self.family.abelianizations[i].inverse[c]))
        return DirectSumElement(self.family, out)


def direct_sum_add(
    family: DirectSumFamily, a: DirectSumElement, b: DirectSumElement
) -> DirectSumElement:
    """Componentwise sum; identity components drop out of the support."""
    if a.family is not family or b.family is not family:
        raise errors.FamilyMismatch("operands belong to a different family")
    acc = dict(a.support)
    for i, c in b.support:
        if i in acc:
            A = family.abelianizations[i]
            v = A.rows[acc[i]][c]
            if v == A.identity:
                del acc[i]
            else:
                acc[i] = v
        else:
            acc[i] = c
    return DirectSumElement(family, acc.items())
