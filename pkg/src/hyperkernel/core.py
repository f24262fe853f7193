"""Carriers, bitmask set algebra, Cayley-table hypergroupoids, predicates.

Elements are integers 0..n-1 indexing a label list; subsets of the
carrier are bitmasks wrapped in ElementSet.  A HyperTable is an n x n
grid of nonempty subsets: rows[a][b] is the value of a*b.  Everything is
immutable after construction and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from hyperkernel import errors, kernels


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class ElementSet:
    """Subset of a fixed carrier of size n, canonical bitmask form.

    Iteration and serialization list members by ascending index.  The
    empty set is representable (intersections need it) but operations
    that require nonempty operands reject it.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if n < 0 or mask < 0 or mask >> n:
            raise errors.InvalidTable(f"mask {mask:#x} out of range for carrier {n}")
        self.n = n
        self.mask = mask

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "ElementSet":
        return cls(n, mask_of(indices))

    def indices(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def labels(self, names: Sequence[str]) -> tuple[str, ...]:
        return tuple(names[i] for i in bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise errors.ShapeMismatch("sets over different carriers")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask | other.mask == other.mask

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __repr__(self) -> str:
        return f"ElementSet({self.n}, {{{','.join(map(str, self.indices()))}}})"


class Partition:
    """Equivalence relation on 0..n-1 as a canonical partition.

    Class ids are assigned in order of least member, so equal relations
    compare equal structurally.
    """

    __slots__ = ("n", "class_of", "classes")

    def __init__(self, n: int, class_of: Sequence[int]):
        if len(class_of) != n:
            raise errors.ShapeMismatch("class_of length differs from carrier")
        relabel: dict[int, int] = {}
        canon = []
        for c in class_of:
            if c not in relabel:
                relabel[c] = len(relabel)
            canon.append(relabel[c])
        self.n = n
        self.class_of = tuple(canon)
        masks = [0] * len(relabel)
        for i, c in enumerate(canon):
            masks[c] |= 1 << i
        self.classes = tuple(ElementSet(n, m) for m in masks)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, range(n))

    @classmethod
    def single_class(cls, n: int) -> "Partition":
        return cls(n, [0] * n)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        class_of = [-1] * n
        for cid, members in enumerate(classes):
            for i in members:
                if class_of[i] != -1:
                    raise errors.ShapeMismatch(f"element {i} in two classes")
                class_of[i] = cid
        if -1 in class_of:
            raise errors.ShapeMismatch("classes do not cover the carrier")
        return cls(n, class_of)

    def relates(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def class_set(self, a: int) -> ElementSet:
        return self.classes[self.class_of[a]]

    def refines(self, other: "Partition") -> bool:
        """True iff every pair related here is related in other."""
        if self.n != other.n:
            raise errors.ShapeMismatch("partitions over different carriers")
        return all(
            len({other.class_of[i] for i in block}) == 1 for block in self.classes
        )

    def sort_key(self) -> tuple:
        return (len(self.classes), tuple(c.mask for c in self.classes))

    def __len__(self) -> int:
        return len(self.classes)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Partition)
            and self.n == other.n
            and self.class_of == other.class_of
        )

    def __hash__(self) -> int:
        return hash((self.n, self.class_of))

    def __repr__(self) -> str:
        blocks = "|".join(",".join(map(str, c.indices())) for c in self.classes)
        return f"Partition({self.n}, {blocks})"


class UnionFind:
    """Union-find with path compression; roots stay the least member."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def partition(self) -> Partition:
        return Partition(len(self.parent), [self.find(i) for i in self.parent])


_LABEL_BAD = set("{},:#@*\"'")


def _check_names(names: Sequence[str]) -> tuple[str, ...]:
    out = tuple(names)
    seen = set()
    for lab in out:
        if not lab or any(ch.isspace() or ch in _LABEL_BAD for ch in lab):
            raise errors.InvalidTable(f"bad element label {lab!r}")
        if lab in seen:
            raise errors.InvalidTable(f"duplicate element label {lab!r}")
        seen.add(lab)
    return out


class HyperTable:
    """Finite hypergroupoid: labels plus an n x n grid of nonempty subsets."""

    __slots__ = ("n", "names", "rows", "name", "_index")

    def __init__(
        self,
        names: Sequence[str],
        rows: Sequence[Sequence[int]],
        name: str | None = None,
    ):
        self.names = _check_names(names)
        n = len(self.names)
        if n == 0:
            raise errors.InvalidTable("empty carrier")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise errors.InvalidTable("table is not n x n")
        full = (1 << n) - 1
        for a, row in enumerate(rows):
            for b, cell in enumerate(row):
                if cell == 0:
                    raise errors.InvalidTable(f"empty cell at ({a},{b})")
                if cell & ~full:
                    raise errors.InvalidTable(f"cell ({a},{b}) references absent elements")
        self.n = n
        self.rows = tuple(tuple(row) for row in rows)
        self.name = name
        self._index = {lab: i for i, lab in enumerate(self.names)}

    @classmethod
    def from_sets(
        cls,
        names: Sequence[str],
        grid: Sequence[Sequence[Iterable[int]]],
        name: str | None = None,
    ) -> "HyperTable":
        return cls(names, [[mask_of(cell) for cell in row] for row in grid], name)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise errors.UnknownLabel(f"unknown element {label!r}") from None

    def subset(self, labels: Iterable[str]) -> ElementSet:
        return ElementSet(self.n, mask_of(self.index(lab) for lab in labels))

    def set_of(self, indices: Iterable[int]) -> ElementSet:
        return ElementSet.from_indices(self.n, indices)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def carrier(self) -> ElementSet:
        return ElementSet(self.n, self.full_mask)

    def cell_mask(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def cell(self, a: int, b: int) -> ElementSet:
        return ElementSet(self.n, self.rows[a][b])

    def mul_mask(self, amask: int, bmask: int) -> int:
        """Union of the cells a*b over (a, b) in amask x bmask."""
        rows = self.rows
        out = 0
        m = amask
        while m:
            low = m & -m
            row = rows[low.bit_length() - 1]
            m ^= low
            mb = bmask
            while mb:
                lb = mb & -mb
                out |= row[lb.bit_length() - 1]
                mb ^= lb
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HyperTable)
            and self.names == other.names
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.names, self.rows))

    def __repr__(self) -> str:
        tag = self.name or f"{self.n} elements"
        return f"HyperTable({tag})"


@dataclass(frozen=True)
class StructureReport:
    """Axiom flags plus a witness for every flag that came out false."""

    is_semihypergroup: bool
    is_quasihypergroup: bool
    is_hypergroup: bool
    is_commutative: bool
    is_canonical: bool
    is_regular_hg: bool
    is_strongly_regular_hg: bool
    is_polygroup: bool
    identities: ElementSet
    witnesses: dict = field(default_factory=dict)


def hyperproduct(H: HyperTable, A: ElementSet, B: ElementSet) -> ElementSet:
    """Union of all cells a*b over (a, b) in A x B."""
    if not A or not B:
        raise errors.EmptyOperand("hyperproduct needs nonempty operands")
    return ElementSet(H.n, H.mul_mask(A.mask, B.mask))


def right_division(H: HyperTable, b: int, c: int) -> ElementSet:
    """b/c: all w with b in w*c."""
    bit = 1 << b
    return ElementSet(H.n, mask_of(w for w in range(H.n) if H.rows[w][c] & bit))


def left_division(H: HyperTable, b: int, c: int) -> ElementSet:
    """c\\b: all w with b in c*w."""
    bit = 1 << b
    row = H.rows[c]
    return ElementSet(H.n, mask_of(w for w in range(H.n) if row[w] & bit))


def is_semihypergroup(H: HyperTable) -> tuple[bool, tuple[int, int, int] | None]:
    """Associativity over all triples; returns the least failing one."""
    packed = kernels.assoc_witness(H.rows, H.n)
    if packed < 0:
        return True, None
    ab, c = divmod(packed, H.n)
    a, b = divmod(ab, H.n)
    return False, (a, b, c)


def is_quasihypergroup(H: HyperTable) -> tuple[bool, int | None]:
    """Reproduction law a*H = H*a = H; returns the least failing element."""
    full = H.full_mask
    for a in range(H.n):
        row = 0
        col = 0
        for x in range(H.n):
            row |= H.rows[a][x]
            col |= H.rows[x][a]
        if row != full or col != full:
            return False, a
    return True, None


def is_hypergroup(H: HyperTable) -> bool:
    return is_semihypergroup(H)[0] and is_quasihypergroup(H)[0]


def commutativity_witness(H: HyperTable) -> tuple[int, int] | None:
    for a in range(H.n):
        for b in range(a + 1, H.n):
            if H.rows[a][b] != H.rows[b][a]:
                return (a, b)
    return None


def is_commutative(H: HyperTable) -> bool:
    return commutativity_witness(H) is None


def identities(H: HyperTable) -> ElementSet:
    """Two-sided identities: e with x in e*x and x in x*e for all x."""
    out = 0
    for e in range(H.n):
        if all(
            H.rows[e][x] >> x & 1 and H.rows[x][e] >> x & 1 for x in range(H.n)
        ):
            out |= 1 << e
    return ElementSet(H.n, out)


def scalar_identity(H: HyperTable) -> int | None:
    """The e with e*x = x*e = {x} for every x, if it exists."""
    for e in range(H.n):
        if all(
            H.rows[e][x] == 1 << x and H.rows[x][e] == 1 << x for x in range(H.n)
        ):
            return e
    return None


def inverse_candidates(H: HyperTable, x: int) -> tuple[ElementSet, ElementSet, ElementSet]:
    """(C_L, C_R, C): elements whose product with x meets the identities.

    C_L collects y with identities meeting y*x, C_R with identities
    meeting x*y, and C is their intersection.  Membership is symmetric
    across sides: y in C_L(x) iff x in C_R(y).
    """
    emask = identities(H).mask
    cl = mask_of(y for y in range(H.n) if H.rows[y][x] & emask)
    cr = mask_of(y for y in range(H.n) if H.rows[x][y] & emask)
    return ElementSet(H.n, cl), ElementSet(H.n, cr), ElementSet(H.n, cl & cr)


def _require_hypergroup(H: HyperTable) -> None:
    if not is_hypergroup(H):
        raise errors.NotAHypergroup("operation requires a hypergroup")


def is_regular_hg(H: HyperTable) -> bool:
    """Identities exist and every element has at least one inverse."""
    _require_hypergroup(H)
    if not identities(H):
        return False
    return all(bool(inverse_candidates(H, x)[2]) for x in range(H.n))


def is_strongly_regular_hg(H: HyperTable) -> bool:
    """Identities exist and every element has exactly one inverse."""
    _require_hypergroup(H)
    if not identities(H):
        return False
    return all(len(inverse_candidates(H, x)[2]) == 1 for x in range(H.n))


def unique_inverses(H: HyperTable) -> tuple[int, ...] | None:
    """Map x -> its unique inverse, or None if any C(x) is not a singleton."""
    inv = []
    for x in range(H.n):
        c = inverse_candidates(H, x)[2]
        if len(c) != 1:
            return None
        inv.append(c.indices()[0])
    return tuple(inv)


def _reversibility_witness(
    H: HyperTable, inv: Sequence[int]
) -> tuple[int, int, int] | None:
    """Least (x, y, z) with x in y*z but z not in inv(y)*x or y not in x*inv(z)."""
    for y in range(H.n):
        for z in range(H.n):
            cell = H.rows[y][z]
            for x in bits(cell):
                if not H.rows[inv[y]][x] >> z & 1:
                    return (x, y, z)
                if not H.rows[x][inv[z]] >> y & 1:
                    return (x, y, z)
    return None


def is_polygroup(H: HyperTable) -> bool:
    """Hypergroup with scalar identity, unique inverses, and reversibility."""
    if not is_hypergroup(H):
        return False
    if scalar_identity(H) is None:
        return False
    inv = unique_inverses(H)
    if inv is None:
        return False
    return _reversibility_witness(H, inv) is None


def is_canonical(H: HyperTable) -> bool:
    """Commutative polygroup."""
    return is_commutative(H) and is_polygroup(H)


def is_subhypergroup(H: HyperTable, K: ElementSet) -> bool:
    """k*K = K*k = K for every k in K."""
    if not K:
        return False
    km = K.mask
    return all(
        H.mul_mask(1 << k, km) == km and H.mul_mask(km, 1 << k) == km for k in bits(km)
    )


def is_closed(H: HyperTable, K: ElementSet) -> bool:
    """No solution x outside K of b in a*x or b in x*a with a, b inside."""
    km = K.mask
    if not km:
        return False
    for x in range(H.n):
        if km >> x & 1:
            continue
        for a in bits(km):
            if H.rows[a][x] & km or H.rows[x][a] & km:
                return False
    return True


def is_normal(H: HyperTable, K: ElementSet) -> bool:
    """x*K = K*x for every x."""
    km = K.mask
    return all(H.mul_mask(1 << x, km) == H.mul_mask(km, 1 << x) for x in range(H.n))


def is_conjugable(H: HyperTable, K: ElementSet) -> bool:
    """Both-sided conjugability of K.

    Whenever a member of K appears in k*x or x*k for some k in K, x must
    lie in K and some x' must satisfy x'*x inside K.
    """
    km = K.mask
    if not km:
        return False
    for x in range(H.n):
        hit = any(H.rows[k][x] & km or H.rows[x][k] & km for k in bits(km))
        if not hit:
            continue
        if not km >> x & 1:
            return False
        if not any(H.rows[xp][x] | km == km for xp in range(H.n)):
            return False
    return True


def from_group(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
               name: str | None = None) -> HyperTable:
    """Lift a single-valued group table to singleton hyperoperation cells."""
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise errors.InvalidGroupTable("table is not square")
    if any(not (0 <= v < n) for r in rows for v in r):
        raise errors.InvalidGroupTable("entry out of range")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise errors.InvalidGroupTable(f"not associative at {(a, b, c)}")
    ident = next(
        (e for e in range(n) if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
        None,
    )
    if ident is None:
        raise errors.InvalidGroupTable("no identity")
    for a in range(n):
        if not any(rows[a][b] == ident and rows[b][a] == ident for b in range(n)):
            raise errors.InvalidGroupTable(f"no inverse for {a}")
    if names is None:
        names = [str(i) for i in range(n)]
    return HyperTable(names, [[1 << v for v in r] for r in rows], name)


def total_hypergroup(n: int, names: Sequence[str] | None = None,
                     name: str | None = None) -> HyperTable:
    """Every cell is the whole carrier."""
    if n < 1:
        raise errors.InvalidTable("carrier must be nonempty")
    if names is None:
        names = [str(i) for i in range(n)]
    full = (1 << n) - 1
    return HyperTable(names, [[full] * n for _ in range(n)], name)


def direct_product(H1: HyperTable, H2: HyperTable, name: str | None = None) -> HyperTable:
    """Componentwise product on pairs, row-major pairing (i1*n2 + i2)."""
    n1, n2 = H1.n, H2.n
    names = [f"{a}.{b}" for a in H1.names for b in H2.names]
    rows = []
    for a1 in range(n1):
        for a2 in range(n2):
            row = []
            for b1 in range(n1):
                for b2 in range(n2):
                    m = 0
                    for c1 in bits(H1.rows[a1][b1]):
                        base = c1 * n2
                        for c2 in bits(H2.rows[a2][b2]):
                            m |= 1 << (base + c2)
                    row.append(m)
            rows.append(row)
    return HyperTable(names, rows, name)


def structure_report(H: HyperTable) -> StructureReport:
    """Evaluate every structural predicate once, collecting witnesses."""
    witnesses: dict = {}
    semi, w_assoc = is_semihypergroup(H)
    if not semi:
        witnesses["is_semihypergroup"] = w_assoc
    quasi, w_rep = is_quasihypergroup(H)
    if not quasi:
        witnesses["is_quasihypergroup"] = (w_rep,)
    hg = semi and quasi
    if not hg:
        witnesses["is_hypergroup"] = witnesses.get(
            "is_semihypergroup", witnesses.get("is_quasihypergroup")
        )
    comm_w = commutativity_witness(H)
    comm = comm_w is None
    if not comm:
        witnesses["is_commutative"] = comm_w
    idents = identities(H)
    regular = strongly = False
    if hg:
        regular = is_regular_hg(H)
        strongly = is_strongly_regular_hg(H)
    if not regular:
        if not hg:
            witnesses["is_regular_hg"] = witnesses["is_hypergroup"]
        elif not idents:
            witnesses["is_regular_hg"] = ("no identities",)
        else:
            bad = next(x for x in range(H.n) if not inverse_candidates(H, x)[2])
            witnesses["is_regular_hg"] = (bad,)
    if not strongly:
        if not hg:
            witnesses["is_strongly_regular_hg"] = witnesses["is_hypergroup"]
        elif not idents:
            witnesses["is_strongly_regular_hg"] = ("no identities",)
        else:
            bad = next(
                x for x in range(H.n) if len(inverse_candidates(H, x)[2]) != 1
            )
            witnesses["is_strongly_regular_hg"] = (bad,)
    poly = canon = False
    if hg:
        if scalar_identity(H) is None:
            witnesses["is_polygroup"] = ("no scalar identity",)
        else:
            inv = unique_inverses(H)
            if inv is None:
                bad = next(
                    x for x in range(H.n) if len(inverse_candidates(H, x)[2]) != 1
                )
                witnesses["is_polygroup"] = ("non-unique inverse", bad)
            else:
                rev = _reversibility_witness(H, inv)
                if rev is not None:
                    witnesses["is_polygroup"] = ("reversibility",) + rev
                else:
                    poly = True
    else:
        witnesses["is_polygroup"] = witnesses["is_hypergroup"]
    canon = poly and comm
    if not canon:
        witnesses["is_canonical"] = witnesses.get(
            "is_commutative", witnesses.get("is_polygroup")
        )
    return StructureReport(
        is_semihypergroup=semi,
        is_quasihypergroup=quasi,
        is_hypergroup=hg,
        is_commutative=comm,
        is_canonical=canon,
        is_regular_hg=regular,
        is_strongly_regular_hg=strongly,
        is_polygroup=poly,
        identities=idents,
        witnesses=witnesses,
    )
