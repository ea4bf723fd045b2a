# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: enclosing balls, subset radius scans, canonical
labeling, and vertex-surjective map search.

Mirrors cechstrat._kernels._pure operation for operation; keep both in
lockstep (same processing order, shuffle, and tolerances).
"""

from libc.math cimport sqrt
from libc.stdint cimport uint64_t

cdef double _INSIDE_REL = 1e-12
cdef double _INSIDE_ABS = 1e-28
cdef double _PIVOT_TOL = 1e-12

DEF MAX_PTS = 64
DEF MAX_DIM = 16
DEF MAX_SUP = 18          # MAX_DIM + 2
DEF MAX_VERTS = 16

MAX_SUBSET_VERTICES = 16


cdef inline uint64_t _xorshift(uint64_t* state, uint64_t* out) nogil:
    cdef uint64_t s = state[0]
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    state[0] = s
    out[0] = s * (<uint64_t>0x2545F4914F6CDD1D)
    return s


cdef void _shuffled_order(int* order, int n) nogil:
    cdef uint64_t state = <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t out = 0
    cdef int i, j, tmp
    for i in range(n):
        order[i] = i
    for i in range(n - 1, 0, -1):
        _xorshift(&state, &out)
        j = <int>(out % <uint64_t>(i + 1))
        tmp = order[i]
        order[i] = order[j]
        order[j] = tmp


cdef double _circumball(double* pts, int d, int* support, int m, double* center) nogil:
    """Ball through the support points; returns radius (-1 for empty support)."""
    cdef double a[MAX_SUP * MAX_SUP]
    cdef double b[MAX_SUP]
    cdef double vs[MAX_SUP * MAX_DIM]
    cdef double alpha[MAX_SUP]
    cdef int piv[MAX_SUP]
    cdef int i, j, k, col, row, best_row, p, q, r
    cdef double s, f, best, v, scale, rad, dist_sq
    cdef double* q0

    if m == 0:
        for k in range(d):
            center[k] = 0.0
        return -1.0
    q0 = pts + support[0] * d
    if m == 1:
        for k in range(d):
            center[k] = q0[k]
        return 0.0
    r = m - 1
    for i in range(r):
        for k in range(d):
            vs[i * d + k] = pts[support[i + 1] * d + k] - q0[k]
    scale = 0.0
    for i in range(r):
        s = 0.0
        for k in range(d):
            s += vs[i * d + k] * vs[i * d + k]
        b[i] = s
        for j in range(r):
            s = 0.0
            for k in range(d):
                s += vs[i * d + k] * vs[j * d + k]
            a[i * r + j] = 2.0 * s
            if a[i * r + j] > scale:
                scale = a[i * r + j]
            elif -a[i * r + j] > scale:
                scale = -a[i * r + j]
    if scale == 0.0:
        scale = 1.0
    for i in range(r):
        piv[i] = i
    for col in range(r):
        best = -1.0
        best_row = col
        for row in range(col, r):
            v = a[piv[row] * r + col]
            if v < 0.0:
                v = -v
            if v > best:
                best = v
                best_row = row
        i = piv[col]
        piv[col] = piv[best_row]
        piv[best_row] = i
        p = piv[col]
        v = a[p * r + col]
        if v < 0.0:
            v = -v
        if v <= _PIVOT_TOL * scale:
            a[p * r + col] = 0.0
            continue
        for row in range(col + 1, r):
            q = piv[row]
            f = a[q * r + col] / a[p * r + col]
            if f != 0.0:
                for k in range(col, r):
                    a[q * r + k] -= f * a[p * r + k]
                b[q] -= f * b[p]
    for col in range(r - 1, -1, -1):
        p = piv[col]
        if a[p * r + col] == 0.0:
            alpha[col] = 0.0
            continue
        s = b[p]
        for k in range(col + 1, r):
            s -= a[p * r + k] * alpha[k]
        alpha[col] = s / a[p * r + col]
    for k in range(d):
        center[k] = q0[k]
    for i in range(r):
        if alpha[i] != 0.0:
            for k in range(d):
                center[k] += alpha[i] * vs[i * d + k]
    rad = 0.0
    for i in range(m):
        dist_sq = 0.0
        for k in range(d):
            s = center[k] - pts[support[i] * d + k]
            dist_sq += s * s
        s = sqrt(dist_sq)
        if s > rad:
            rad = s
    return rad


cdef inline bint _inside(double* center, double radius, double* p, int d) nogil:
    cdef double dist_sq = 0.0
    cdef double s
    cdef int k
    if radius < 0.0:
        return 0
    for k in range(d):
        s = center[k] - p[k]
        dist_sq += s * s
    return dist_sq <= radius * radius * (1.0 + _INSIDE_REL) + _INSIDE_ABS


cdef double _mtf(double* pts, int d, int* order, int end, int* support, int nsup,
                 double* center) nogil:
    cdef double radius = _circumball(pts, d, support, nsup, center)
    cdef int i, j, idx
    if nsup == d + 1:
        return radius
    i = 0
    while i < end:
        idx = order[i]
        if not _inside(center, radius, pts + idx * d, d):
            support[nsup] = idx
            radius = _mtf(pts, d, order, i, support, nsup + 1, center)
            for j in range(i, 0, -1):
                order[j] = order[j - 1]
            order[0] = idx
        i += 1
    return radius


cdef double _meb_c(double* pts, int n, int d, double* center) nogil:
    cdef int order[MAX_PTS]
    cdef int support[MAX_SUP]
    _shuffled_order(order, n)
    return _mtf(pts, d, order, n, support, 0, center)


cdef int _load_points(object points, double* buf, int* out_d) except -1:
    cdef int n = len(points)
    cdef int d = -1
    cdef int i, k
    if n == 0:
        raise ValueError("meb requires at least one point")
    if n > MAX_PTS:
        raise ValueError(f"compiled kernel limited to {MAX_PTS} points, got {n}")
    for i in range(n):
        p = points[i]
        if d < 0:
            d = len(p)
            if d < 1 or d > MAX_DIM:
                raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {d}")
        for k in range(d):
            buf[i * d + k] = p[k]
    out_d[0] = d
    return n


def meb(points):
    """Minimum enclosing ball of a nonempty point sequence.

    Welzl's algorithm with move-to-front over a fixed deterministic shuffle;
    returns ``(center, radius)``.
    """
    cdef double buf[MAX_PTS * MAX_DIM]
    cdef double center[MAX_DIM]
    cdef int d = 0
    cdef int n = _load_points(points, buf, &d)
    cdef double radius = _meb_c(buf, n, d, center)
    return tuple(center[k] for k in range(d)), radius


def subset_meb_radii(points, int max_size):
    """Enclosing-ball radius for every subset of 2..max_size points.

    Returns ``(mask, radius)`` pairs ordered by (subset size, lexicographic
    vertex order); masks index into the input order.
    """
    cdef double buf[MAX_PTS * MAX_DIM]
    cdef double sub[MAX_SUP * MAX_DIM]
    cdef double center[MAX_DIM]
    cdef int comb[MAX_VERTS]
    cdef int d = 0
    cdef int n = _load_points(points, buf, &d)
    cdef int size, i, k, j, mask
    cdef double radius
    if n > MAX_SUBSET_VERTICES:
        raise ValueError(f"subset scan limited to {MAX_SUBSET_VERTICES} points, got {n}")
    out = []
    cap = min(max_size, n)
    for size in range(2, cap + 1):
        for i in range(size):
            comb[i] = i
        while True:
            mask = 0
            for i in range(size):
                mask |= 1 << comb[i]
                for k in range(d):
                    sub[i * d + k] = buf[comb[i] * d + k]
            with nogil:
                radius = _meb_c(sub, size, d, center)
            out.append((mask, radius))
            # next combination in lexicographic order
            i = size - 1
            while i >= 0 and comb[i] == n - size + i:
                i -= 1
            if i < 0:
                break
            comb[i] += 1
            for j in range(i + 1, size):
                comb[j] = comb[j - 1] + 1
    return out


def canonical_masks(int n, masks):
    """Lexicographically least relabeling of a simplex mask set.

    Minimizes the sorted tuple of remapped masks over all n! vertex
    relabelings; the result is a complete isomorphism invariant.
    """
    cdef int perm[MAX_VERTS]
    cdef int stack_c[MAX_VERTS]
    cdef int base[256]
    cdef int cand[256]
    cdef int best[256]
    cdef int nmask, i, k, tmp, cmp_res
    cdef int m
    if n < 0 or n > 10:
        raise ValueError(f"canonical labeling limited to 10 vertices, got {n}")
    uniq = sorted({int(x) for x in masks})
    nmask = len(uniq)
    if nmask > 256:
        raise ValueError("too many simplices for canonical labeling buffer")
    for i in range(nmask):
        m = uniq[i]
        if m <= 0 or m >= (1 << n):
            raise ValueError("mask out of range for vertex count")
        base[i] = m
    if n == 0 or nmask == 0:
        return ()

    for i in range(n):
        perm[i] = i
        stack_c[i] = 0
    _remap_sorted(base, nmask, perm, n, best)

    # Heap's algorithm over permutations
    i = 1
    while i < n:
        if stack_c[i] < i:
            if i % 2 == 0:
                tmp = perm[0]; perm[0] = perm[i]; perm[i] = tmp
            else:
                tmp = perm[stack_c[i]]; perm[stack_c[i]] = perm[i]; perm[i] = tmp
            _remap_sorted(base, nmask, perm, n, cand)
            cmp_res = 0
            for k in range(nmask):
                if cand[k] < best[k]:
                    cmp_res = -1
                    break
                if cand[k] > best[k]:
                    cmp_res = 1
                    break
            if cmp_res < 0:
                for k in range(nmask):
                    best[k] = cand[k]
            stack_c[i] += 1
            i = 1
        else:
            stack_c[i] = 0
            i += 1
    return tuple(best[k] for k in range(nmask))


cdef void _remap_sorted(int* base, int nmask, int* perm, int n, int* out) nogil:
    cdef int i, j, v, m, img, key
    for i in range(nmask):
        m = base[i]
        img = 0
        v = 0
        while m:
            if m & 1:
                img |= 1 << perm[v]
            m >>= 1
            v += 1
        out[i] = img
    # insertion sort (nmask <= 256, nearly sorted inputs are common)
    for i in range(1, nmask):
        key = out[i]
        j = i - 1
        while j >= 0 and out[j] > key:
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = key


def surjection_witness(int n_src, int n_tgt, src_masks, tgt_masks):
    """First vertex-surjective simplicial vertex map found, or None.

    Backtracks over vertex assignments in ascending order, pruning on
    (a) partial simplex images that leave the target simplex set and
    (b) too few unassigned sources left to cover the remaining targets.
    """
    cdef int assign[MAX_VERTS]
    cdef int by_last_start[MAX_VERTS + 1]
    cdef int src_sorted[1024]
    cdef char tgt_table[1 << MAX_VERTS]
    cdef int i, m, nsrc_masks
    if n_src < 0 or n_src > MAX_VERTS or n_tgt < 0 or n_tgt > MAX_VERTS:
        raise ValueError(f"map search limited to {MAX_VERTS} vertices")
    if n_src < n_tgt:
        return None
    if n_tgt == 0:
        return () if n_src == 0 else None

    for i in range(1 << n_tgt):
        tgt_table[i] = 0
    for x in tgt_masks:
        m = int(x)
        if m <= 0 or m >= (1 << n_tgt):
            raise ValueError("target mask out of range")
        tgt_table[m] = 1

    # bucket multi-vertex source masks by their highest vertex
    groups = [[] for _ in range(n_src)]
    for x in src_masks:
        m = int(x)
        if m <= 0 or m >= (1 << n_src):
            raise ValueError("source mask out of range")
        if _popcount(m) >= 2:
            groups[_bit_length(m) - 1].append(m)
    nsrc_masks = 0
    for i in range(n_src):
        groups[i].sort()
        by_last_start[i] = nsrc_masks
        for m in groups[i]:
            if nsrc_masks >= 1024:
                raise ValueError("too many source simplices")
            src_sorted[nsrc_masks] = m
            nsrc_masks += 1
    by_last_start[n_src] = nsrc_masks

    if _search(0, 0, 0, n_src, n_tgt, assign, by_last_start, src_sorted, tgt_table):
        return tuple(assign[i] for i in range(n_src))
    return None


cdef inline int _popcount(int m) nogil:
    cdef int c = 0
    while m:
        m &= m - 1
        c += 1
    return c


cdef inline int _bit_length(int m) nogil:
    cdef int b = 0
    while m:
        m >>= 1
        b += 1
    return b


cdef bint _search(int v, int covered, int n_covered, int n_src, int n_tgt,
                  int* assign, int* by_last_start, int* src_sorted,
                  char* tgt_table) nogil:
    cdef int w, m, img, mm, u, idx, bit
    cdef bint ok
    if v == n_src:
        return n_covered == n_tgt
    if n_src - v < n_tgt - n_covered:
        return 0
    for w in range(n_tgt):
        assign[v] = w
        ok = 1
        for idx in range(by_last_start[v], by_last_start[v + 1]):
            m = src_sorted[idx]
            img = 0
            mm = m
            while mm:
                u = _bit_length(mm & (-mm)) - 1
                img |= 1 << assign[u]
                mm &= mm - 1
            if not tgt_table[img]:
                ok = 0
                break
        if not ok:
            continue
        bit = 1 << w
        if covered & bit:
            if _search(v + 1, covered, n_covered, n_src, n_tgt, assign,
                       by_last_start, src_sorted, tgt_table):
                return 1
        else:
            if _search(v + 1, covered | bit, n_covered + 1, n_src, n_tgt, assign,
                       by_last_start, src_sorted, tgt_table):
                return 1
    return 0
