# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. hyperkernel.kernels.pure is the reference
implementation; both must return identical values. Masks are 64-bit
here, the wrappers route wider carriers to the pure backend."""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64


cdef inline int _ctz(u64 x) noexcept:
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


cdef u64* _load(object rows, int n) except NULL:
    cdef u64* t = <u64*> malloc(n * n * sizeof(u64))
    if t == NULL:
        raise MemoryError()
    cdef int a, b
    for a in range(n):
        row = rows[a]
        for b in range(n):
            t[a * n + b] = <u64> row[b]
    return t


def assoc_witness(rows, int n):
    cdef u64* t = _load(rows, n)
    cdef int a, b, c
    cdef u64 ab, bc, left, right, m
    try:
        for a in range(n):
            for b in range(n):
                ab = t[a * n + b]
                for c in range(n):
                    left = 0
                    m = ab
                    while m:
                        left |= t[_ctz(m) * n + c]
                        m &= m - 1
                    right = 0
                    m = t[b * n + c]
                    while m:
                        right |= t[a * n + _ctz(m)]
                        m &= m - 1
                    if left != right:
                        return (a * n + b) * n + c
        return -1
    finally:
        free(t)


def census(rows, int n, long cap):
    cdef u64* t = _load(rows, n)
    cdef u64 s, prod, m
    cdef int x
    cdef Py_ssize_t qi = 0
    out = []
    products = set()
    extended = set()
    queue = [((<u64> 1) << i) for i in range(n)]
    try:
        while qi < len(queue):
            sobj = queue[qi]
            qi += 1
            if sobj in extended:
                continue
            extended.add(sobj)
            s = <u64> sobj
            for x in range(n):
                prod = 0
                m = s
                while m:
                    prod |= t[_ctz(m) * n + x]
                    m &= m - 1
                pobj = prod
                if pobj not in products:
                    products.add(pobj)
                    out.append(pobj)
                    if len(out) > cap:
                        return None
                if pobj not in extended:
                    queue.append(pobj)
        return out
    finally:
        free(t)


def sr_check(rows, int n, class_of):
    cdef int size = 1 << n
    cdef u64* t = _load(rows, n)
    cdef u64* cls = <u64*> malloc(n * sizeof(u64))
    cdef u64* met = <u64*> malloc(size * sizeof(u64))
    cdef u64* cm = <u64*> malloc(n * n * sizeof(u64))
    cdef int* members = <int*> malloc(n * sizeof(int))
    cdef int a, b, x, i, j, c, cnt
    cdef u64 v
    if cls == NULL or met == NULL or cm == NULL or members == NULL:
        free(t); free(cls); free(met); free(cm); free(members)
        raise MemoryError()
    try:
        for i in range(n):
            cls[i] = (<u64> 1) << (<int> class_of[i])
        met[0] = 0
        for i in range(1, size):
            met[i] = met[i & (i - 1)] | cls[_ctz(<u64> i)]
        for a in range(n):
            for x in range(n):
                v = met[t[a * n + x]]
                if v & (v - 1):
                    return False
                cm[a * n + x] = v
        # Group members by class id, contiguous in `order`.
        for c in range(n):
            cnt = 0
            for i in range(n):
                if <int> class_of[i] == c:
                    members[cnt] = i
                    cnt += 1
            for i in range(cnt):
                a = members[i]
                for j in range(i + 1, cnt):
                    b = members[j]
                    for x in range(n):
                        if cm[a * n + x] != cm[b * n + x]:
                            return False
                        if cm[x * n + a] != cm[x * n + b]:
                            return False
        return True
    finally:
        free(t); free(cls); free(met); free(cm); free(members)


cdef int _find(int* parent, int i) noexcept:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


cdef void _union(int* parent, int a, int b) noexcept:
    cdef int ra = _find(parent, a)
    cdef int rb = _find(parent, b)
    cdef int tmp
    if ra != rb:
        if rb < ra:
            tmp = ra; ra = rb; rb = tmp
        parent[rb] = ra


cdef bint _next_perm(int* a, int k) noexcept:
    cdef int i = k - 2
    cdef int j, tmp, lo, hi
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = k - 1
    while a[j] <= a[i]:
        j -= 1
    tmp = a[i]; a[i] = a[j]; a[j] = tmp
    lo = i + 1
    hi = k - 1
    while lo < hi:
        tmp = a[lo]; a[lo] = a[hi]; a[hi] = tmp
        lo += 1
        hi -= 1
    return True


def oracle_merge(rows, int n, int nmax):
    cdef u64* t = _load(rows, n)
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* combo = <int*> malloc(nmax * sizeof(int))
    cdef int* perm = <int*> malloc(nmax * sizeof(int))
    cdef int i, k, pos, anchor, e, vstart
    cdef u64 mask, nxt, m
    cdef bint more
    if parent == NULL or combo == NULL or perm == NULL:
        free(t); free(parent); free(combo); free(perm)
        raise MemoryError()
    try:
        for i in range(n):
            parent[i] = i
        for k in range(1, nmax + 1):
            for i in range(k):
                combo[i] = 0
            while True:
                # All distinct permutations of the current multiset.
                for i in range(k):
                    perm[i] = combo[i]
                anchor = -1
                more = True
                while more:
                    mask = (<u64> 1) << perm[0]
                    for i in range(1, k):
                        nxt = 0
                        m = mask
                        while m:
                            nxt |= t[_ctz(m) * n + perm[i]]
                            m &= m - 1
                        mask = nxt
                    while mask:
                        e = _ctz(mask)
                        mask &= mask - 1
                        if anchor < 0:
                            anchor = e
                        _union(parent, anchor, e)
                    more = _next_perm(perm, k)
                # Advance the nondecreasing odometer.
                pos = k - 1
                while pos >= 0 and combo[pos] == n - 1:
                    pos -= 1
                if pos < 0:
                    break
                vstart = combo[pos] + 1
                for i in range(pos, k):
                    combo[i] = vstart
        return [_find(parent, i) for i in range(n)]
    finally:
        free(t); free(parent); free(combo); free(perm)
