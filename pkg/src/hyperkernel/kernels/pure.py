"""Pure Python hot kernels.

All functions take a table as a nested sequence of bitmasks (rows[a][b]
is the cell a*b) and speak plain ints so they stay importable with no
compiled code.  hyperkernel._ckernels mirrors these signatures; the
wrappers in hyperkernel.kernels pick the backend.
"""

from itertools import combinations_with_replacement, permutations


def assoc_witness(rows, n):
    """Least triple (packed a*n*n + b*n + c) breaking associativity, or -1."""
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            for c in range(n):
                left = 0
                m = ab
                while m:
                    low = m & -m
                    left |= rows[low.bit_length() - 1][c]
                    m ^= low
                right = 0
                m = rows[b][c]
                while m:
                    low = m & -m
                    right |= ra[low.bit_length() - 1]
                    m ^= low
                if left != right:
                    return (a * n + b) * n + c
    return -1


def census(rows, n, cap):
    """All product sets of length >= 2 as masks, in first-discovery order.

    Breadth-first closure of the singletons under right multiplication by
    each generator, generators taken in index order.  Returns None when
    more than `cap` distinct sets appear.
    """
    out = []
    products = set()
    extended = set()
    queue = [1 << i for i in range(n)]
    qi = 0
    while qi < len(queue):
        s = queue[qi]
        qi += 1
        if s in extended:
            continue
        extended.add(s)
        for x in range(n):
            t = 0
            m = s
            while m:
                low = m & -m
                t |= rows[low.bit_length() - 1][x]
                m ^= low
            if t not in products:
                products.add(t)
                out.append(t)
                if len(out) > cap:
                    return None
            if t not in extended:
                queue.append(t)
    return out


def sr_check(rows, n, class_of):
    """True iff the partition given by class_of is strongly regular.

    Both quantified conditions reduce to: every cell lands inside one
    class, and related elements hit the same class on both sides.
    """
    cls_mask = [1 << c for c in class_of]
    met = {}

    def met_of(mask):
        v = met.get(mask)
        if v is None:
            v = 0
            m = mask
            while m:
                low = m & -m
                v |= cls_mask[low.bit_length() - 1]
                m ^= low
            met[mask] = v
        return v

    # Reflexive pairs force each cell into a single class.
    cm = [[0] * n for _ in range(n)]
    for a in range(n):
        ra = rows[a]
        ca = cm[a]
        for x in range(n):
            v = met_of(ra[x])
            if v & (v - 1):
                return False
            ca[x] = v
    # Distinct related pairs must then agree cell-by-cell on both sides.
    members_by_class = {}
    for i, c in enumerate(class_of):
        members_by_class.setdefault(c, []).append(i)
    for members in members_by_class.values():
        for ai in range(len(members)):
            a = members[ai]
            for b in members[ai + 1:]:
                ca, cb = cm[a], cm[b]
                for x in range(n):
                    if ca[x] != cb[x] or cm[x][a] != cm[x][b]:
                        return False
    return True


def oracle_merge(rows, n, nmax):
    """Union-find parents after relating all permuted-product overlaps.

    For every tuple of length <= nmax, every element of every product of
    a reordering of that tuple is merged into one block (tuples with the
    same multiset are exactly each other's reorderings).  Returns the
    root-canonical parent list.
    """
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k in range(1, nmax + 1):
        for combo in combinations_with_replacement(range(n), k):
            anchor = -1
            for tup in sorted(set(permutations(combo))):
                mask = 1 << tup[0]
                for t in tup[1:]:
                    nxt = 0
                    m = mask
                    while m:
                        low = m & -m
                        nxt |= rows[low.bit_length() - 1][t]
                        m ^= low
                    mask = nxt
                while mask:
                    low = mask & -mask
                    e = low.bit_length() - 1
                    mask ^= low
                    if anchor < 0:
                        anchor = e
                    ra, rb = find(anchor), find(e)
                    if ra != rb:
                        if rb < ra:
                            ra, rb = rb, ra
                        parent[rb] = ra
    return [find(i) for i in range(n)]
