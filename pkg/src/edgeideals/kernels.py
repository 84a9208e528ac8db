"""Hot numeric kernels: exact rank over finite fields, face scans, homology.

Each kernel has a numba @njit implementation and a pure-numpy fallback.
The backend is chosen at import time from the EDGEIDEALS_BACKEND environment
variable: "numba", "numpy", or "auto" (default; numba when importable).

Ground sets are bitmasked into uint32; a "face" of a complex with minimal
non-faces gen_masks is any subset containing no generator mask.  Boundary
matrices are assembled with faces of equal size sorted ascending, and the
empty face is the single size-0 face, so reduced homology comes out of the
same construction.
"""

from __future__ import annotations

import os

import numpy as np

_BACKEND_ENV = os.environ.get("EDGEIDEALS_BACKEND", "auto").strip().lower()
if _BACKEND_ENV not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"EDGEIDEALS_BACKEND must be 'auto', 'numba' or 'numpy', got {_BACKEND_ENV!r}"
    )

_HAVE_NUMBA = False
if _BACKEND_ENV in ("auto", "numba"):
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _BACKEND_ENV == "numba":
            raise
        _HAVE_NUMBA = False


def backend() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations


def pack_rows_gf2(bits: np.ndarray) -> np.ndarray:
    """Pack a boolean (rows, cols) matrix into uint64 words, 64 columns per word."""
    bits = np.ascontiguousarray(bits, dtype=bool)
    r, c = bits.shape
    words = max(1, (c + 63) // 64)
    padded = np.zeros((r, words * 64), dtype=bool)
    if c:
        padded[:, :c] = bits
    packed = np.packbits(padded.reshape(r, words, 64), axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(r, words)


def gf2_rank_numpy(rows: np.ndarray, ncols: int) -> int:
    """Rank over GF(2) of a bit-packed matrix (rows, words) of uint64."""
    if rows.shape[0] == 0 or ncols == 0:
        return 0
    work = rows.copy()
    nrows = work.shape[0]
    rank = 0
    for col in range(ncols):
        w, b = divmod(col, 64)
        bit = np.uint64(1) << np.uint64(b)
        hits = np.nonzero(work[rank:, w] & bit)[0]
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            work[[rank, piv]] = work[[piv, rank]]
        sel = (work[:, w] & bit) != 0
        sel[rank] = False
        if sel.any():
            work[sel] ^= work[rank]
        rank += 1
        if rank == nrows:
            break
    return rank


def gfp_rank_numpy(mat: np.ndarray, p: int) -> int:
    """Rank over GF(p) of an integer matrix (entries reduced mod p internally)."""
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    work = np.mod(mat.astype(np.int64, copy=True), p)
    nrows, ncols = work.shape
    rank = 0
    for col in range(ncols):
        hits = np.nonzero(work[rank:, col])[0]
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            work[[rank, piv]] = work[[piv, rank]]
        inv = pow(int(work[rank, col]), p - 2, p)
        work[rank] = (work[rank] * inv) % p
        sel = np.nonzero(work[:, col])[0]
        sel = sel[sel != rank]
        if sel.size:
            work[sel] = (work[sel] - np.outer(work[sel, col], work[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def face_masks_numpy(ground_size: int, gen_masks: np.ndarray) -> np.ndarray:
    """All subsets of the ground set (as uint32 masks) containing no generator mask."""
    total = 1 << ground_size
    x = np.arange(total, dtype=np.uint32)
    keep = np.ones(total, dtype=bool)
    for g in gen_masks:
        g = np.uint32(g)
        keep &= (x & g) != g
    return x[keep]


def rank_mod_numpy(mat: np.ndarray, p: int) -> int:
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    if p == 2:
        bits = (np.asarray(mat) % 2) != 0
        return gf2_rank_numpy(pack_rows_gf2(bits), mat.shape[1])
    return gfp_rank_numpy(np.asarray(mat, dtype=np.int64), p)


def boundary_matrix_numpy(
    faces_k: np.ndarray, faces_km1: np.ndarray, ground_size: int
) -> np.ndarray:
    """Signed boundary matrix from size-k faces to size-(k-1) faces (both ascending)."""
    mat = np.zeros((len(faces_km1), len(faces_k)), dtype=np.int8)
    if len(faces_k) == 0 or len(faces_km1) == 0:
        return mat
    fk = faces_k.astype(np.uint32)
    cols = np.arange(len(fk))
    for b in range(ground_size):
        bit = np.uint32(1 << b)
        sel = (fk & bit) != 0
        if not sel.any():
            continue
        sub = fk[sel] ^ bit
        rows = np.searchsorted(faces_km1, sub)
        parity = (np.bitwise_count(fk[sel] & np.uint32(bit - 1)) & 1).astype(np.int8)
        mat[rows, cols[sel]] = 1 - 2 * parity
    return mat


def homology_dims_from_faces(faces: np.ndarray, ground_size: int, p: int) -> list[int]:
    """Reduced homology dims for degrees -1..dim from an ascending face-mask array."""
    if len(faces) == 0:
        return []
    sizes = np.bitwise_count(faces)
    by_size = [faces[sizes == k] for k in range(ground_size + 2)]
    top = max(k for k, f in enumerate(by_size) if len(f))
    ranks = [0] * (top + 3)
    for s in range(1, top + 1):
        mat = boundary_matrix_numpy(by_size[s], by_size[s - 1], ground_size)
        ranks[s] = rank_mod_numpy(mat, p)
    return [
        int(len(by_size[d + 1])) - ranks[d + 1] - ranks[d + 2] for d in range(-1, top)
    ]


def homology_vector_numpy(ground_size: int, gen_masks: np.ndarray, p: int) -> np.ndarray:
    faces = face_masks_numpy(ground_size, gen_masks)
    return np.array(homology_dims_from_faces(faces, ground_size, p), dtype=np.int64)


def top_homology_numpy(
    ground_size: int, gen_masks: np.ndarray, p: int, floor: int
) -> int:
    """Largest degree d >= floor with nonzero reduced homology, else -2."""
    faces = face_masks_numpy(ground_size, gen_masks)
    if len(faces) == 0:
        return -2
    sizes = np.bitwise_count(faces)
    by_size = [faces[sizes == k] for k in range(ground_size + 2)]
    top = max(k for k, f in enumerate(by_size) if len(f))
    rank_in = 0
    for d in range(top - 1, floor - 1, -1):
        mat = boundary_matrix_numpy(by_size[d + 1], by_size[d], ground_size)
        rank_out = rank_mod_numpy(mat, p)
        h = int(len(by_size[d + 1])) - rank_out - rank_in
        if h > 0:
            return d
        rank_in = rank_out
    return -2


def min_label_key_numpy(rows: np.ndarray, perms: np.ndarray) -> int:
    """Minimum over vertex relabelings of the column-major upper-triangle bit key."""
    n = rows.shape[0]
    adj = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(n):
            adj[i, j] = (int(rows[i]) >> j) & 1
    permuted = adj[perms[:, :, None], perms[:, None, :]]
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    bits = np.stack([permuted[:, i, j] for (i, j) in pairs], axis=1)
    weights = 1 << np.arange(len(pairs) - 1, -1, -1, dtype=np.uint64)
    keys = bits.astype(np.uint64) @ weights
    return int(keys.min())


# ---------------------------------------------------------------------------
# numba implementations

if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _gf2_rank_nb(work, ncols):
        nrows = work.shape[0]
        nwords = work.shape[1]
        if nrows == 0 or ncols == 0:
            return 0
        rank = 0
        for col in range(ncols):
            w = col >> 6
            bit = np.uint64(1) << np.uint64(col & 63)
            piv = -1
            for r in range(rank, nrows):
                if work[r, w] & bit:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(nwords):
                    tmp = work[rank, k]
                    work[rank, k] = work[piv, k]
                    work[piv, k] = tmp
            for r in range(nrows):
                if r != rank and (work[r, w] & bit):
                    for k in range(nwords):
                        work[r, k] ^= work[rank, k]
            rank += 1
            if rank == nrows:
                break
        return rank

    @njit(cache=True, nogil=True)
    def _powmod(a, e, p):
        result = 1
        a %= p
        while e > 0:
            if e & 1:
                result = (result * a) % p
            a = (a * a) % p
            e >>= 1
        return result

    @njit(cache=True, nogil=True)
    def _gfp_rank_nb(work, p):
        nrows = work.shape[0]
        ncols = work.shape[1]
        if nrows == 0 or ncols == 0:
            return 0
        rank = 0
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if work[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(ncols):
                    tmp = work[rank, k]
                    work[rank, k] = work[piv, k]
                    work[piv, k] = tmp
            inv = _powmod(work[rank, col], p - 2, p)
            for k in range(col, ncols):
                work[rank, k] = (work[rank, k] * inv) % p
            for r in range(nrows):
                if r != rank and work[r, col] != 0:
                    f = work[r, col]
                    for k in range(col, ncols):
                        work[r, k] = (work[r, k] - f * work[rank, k]) % p
            rank += 1
            if rank == nrows:
                break
        return rank

    @njit(cache=True, nogil=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True, nogil=True)
    def _face_masks_nb(ground_size, gen_masks):
        total = 1 << ground_size
        ngens = gen_masks.shape[0]
        count = 0
        for x in range(total):
            ok = True
            for gi in range(ngens):
                g = gen_masks[gi]
                if (x & g) == g:
                    ok = False
                    break
            if ok:
                count += 1
        out = np.empty(count, dtype=np.uint32)
        idx = 0
        for x in range(total):
            ok = True
            for gi in range(ngens):
                g = gen_masks[gi]
                if (x & g) == g:
                    ok = False
                    break
            if ok:
                out[idx] = x
                idx += 1
        return out

    @njit(cache=True, nogil=True)
    def _group_faces(faces, ground_size):
        """Counts and offsets per face size; faces stay ascending inside a group."""
        counts = np.zeros(ground_size + 2, dtype=np.int64)
        for i in range(faces.shape[0]):
            counts[_popcount(faces[i])] += 1
        offsets = np.zeros(ground_size + 3, dtype=np.int64)
        for s in range(ground_size + 2):
            offsets[s + 1] = offsets[s] + counts[s]
        grouped = np.empty(faces.shape[0], dtype=np.uint32)
        cursor = offsets[: ground_size + 2].copy()
        for i in range(faces.shape[0]):
            s = _popcount(faces[i])
            grouped[cursor[s]] = faces[i]
            cursor[s] += 1
        return grouped, offsets

    @njit(cache=True, nogil=True)
    def _bsearch(arr, lo, hi, value):
        while lo < hi:
            mid = (lo + hi) >> 1
            if arr[mid] < value:
                lo = mid + 1
            else:
                hi = mid
        return lo

    @njit(cache=True, nogil=True)
    def _boundary_rank_nb(grouped, offsets, s, ground_size, p):
        """Rank of the boundary map from size-s faces to size-(s-1) faces."""
        lo1 = offsets[s - 1]
        hi1 = offsets[s]
        lo2 = offsets[s]
        hi2 = offsets[s + 1]
        nrows = hi1 - lo1
        ncols = hi2 - lo2
        if nrows == 0 or ncols == 0:
            return 0
        if p == 2:
            nwords = (ncols + 63) >> 6
            packed = np.zeros((nrows, nwords), dtype=np.uint64)
            for ci in range(ncols):
                f = grouped[lo2 + ci]
                for b in range(ground_size):
                    if (f >> b) & 1:
                        sub = f ^ np.uint32(1 << b)
                        ri = _bsearch(grouped, lo1, hi1, sub) - lo1
                        packed[ri, ci >> 6] |= np.uint64(1) << np.uint64(ci & 63)
            return _gf2_rank_nb(packed, ncols)
        dense = np.zeros((nrows, ncols), dtype=np.int64)
        for ci in range(ncols):
            f = grouped[lo2 + ci]
            sign = 1
            for b in range(ground_size):
                if (f >> b) & 1:
                    sub = f ^ np.uint32(1 << b)
                    ri = _bsearch(grouped, lo1, hi1, sub) - lo1
                    dense[ri, ci] = sign
                    sign = -sign
        return _gfp_rank_nb(dense % p, p)

    @njit(cache=True, nogil=True)
    def _top_homology_nb(ground_size, gen_masks, p, floor):
        faces = _face_masks_nb(ground_size, gen_masks)
        if faces.shape[0] == 0:
            return -2
        grouped, offsets = _group_faces(faces, ground_size)
        top = -1
        for s in range(ground_size + 1, -1, -1):
            if offsets[s + 1] - offsets[s] > 0:
                top = s
                break
        rank_in = 0
        for d in range(top - 1, floor - 1, -1):
            rank_out = _boundary_rank_nb(grouped, offsets, d + 1, ground_size, p)
            h = (offsets[d + 2] - offsets[d + 1]) - rank_out - rank_in
            if h > 0:
                return d
            rank_in = rank_out
        return -2

    @njit(cache=True, nogil=True)
    def _homology_vector_nb(ground_size, gen_masks, p):
        faces = _face_masks_nb(ground_size, gen_masks)
        if faces.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        grouped, offsets = _group_faces(faces, ground_size)
        top = -1
        for s in range(ground_size + 1, -1, -1):
            if offsets[s + 1] - offsets[s] > 0:
                top = s
                break
        ranks = np.zeros(top + 3, dtype=np.int64)
        for s in range(1, top + 1):
            ranks[s] = _boundary_rank_nb(grouped, offsets, s, ground_size, p)
        dims = np.empty(top + 1, dtype=np.int64)
        for d in range(-1, top):
            s = d + 1
            dims[d + 1] = (offsets[s + 1] - offsets[s]) - ranks[s] - ranks[s + 1]
        return dims

    @njit(cache=True, nogil=True)
    def _min_label_key_nb(rows, perms):
        nperms = perms.shape[0]
        n = perms.shape[1]
        best = np.uint64(0xFFFFFFFFFFFFFFFF)
        for pi in range(nperms):
            key = np.uint64(0)
            abandoned = False
            shift = n * (n - 1) // 2
            for j in range(1, n):
                for i in range(j):
                    shift -= 1
                    a = perms[pi, i]
                    b = perms[pi, j]
                    if (rows[a] >> b) & 1:
                        key |= np.uint64(1) << np.uint64(shift)
                        if key > best:
                            abandoned = True
                            break
                if abandoned:
                    break
            if not abandoned and key < best:
                best = key
        return best

    def gf2_rank(rows: np.ndarray, ncols: int) -> int:
        work = np.ascontiguousarray(rows, dtype=np.uint64).copy()
        return int(_gf2_rank_nb(work, ncols))

    def gfp_rank(mat: np.ndarray, p: int) -> int:
        work = np.ascontiguousarray(mat, dtype=np.int64) % p
        return int(_gfp_rank_nb(work, p))

    def face_masks(ground_size: int, gen_masks) -> np.ndarray:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return _face_masks_nb(ground_size, g)

    def top_homology(ground_size: int, gen_masks, p: int, floor: int) -> int:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return int(_top_homology_nb(ground_size, g, p, floor))

    def homology_vector(ground_size: int, gen_masks, p: int) -> np.ndarray:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return _homology_vector_nb(ground_size, g, p)

    def min_label_key(rows, perms) -> int:
        r = np.asarray(rows, dtype=np.uint16)
        pa = np.ascontiguousarray(perms, dtype=np.int8)
        return int(_min_label_key_nb(r, pa))

else:

    def gf2_rank(rows: np.ndarray, ncols: int) -> int:
        return gf2_rank_numpy(np.ascontiguousarray(rows, dtype=np.uint64), ncols)

    def gfp_rank(mat: np.ndarray, p: int) -> int:
        return gfp_rank_numpy(np.asarray(mat, dtype=np.int64), p)

    def face_masks(ground_size: int, gen_masks) -> np.ndarray:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return face_masks_numpy(ground_size, g)

    def top_homology(ground_size: int, gen_masks, p: int, floor: int) -> int:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return top_homology_numpy(ground_size, g, p, floor)

    def homology_vector(ground_size: int, gen_masks, p: int) -> np.ndarray:
        g = np.asarray(gen_masks, dtype=np.uint32)
        return homology_vector_numpy(ground_size, g, p)

    def min_label_key(rows, perms) -> int:
        r = np.asarray(rows, dtype=np.uint16)
        pa = np.asarray(perms, dtype=np.int64)
        return min_label_key_numpy(r, pa)


def rank_mod(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p); routes GF(2) to the packed kernel."""
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    if p == 2:
        bits = (np.asarray(mat) % 2) != 0
        return gf2_rank(pack_rows_gf2(bits), mat.shape[1])
    return gfp_rank(mat, p)


def warm_up() -> None:
    """Force jit compilation of every kernel (useful before forking workers)."""
    m = np.array([[1, 0], [0, 1]], dtype=np.int64)
    rank_mod(m, 2)
    rank_mod(m, 32003)
    gens = np.array([3], dtype=np.uint32)
    face_masks(2, gens)
    top_homology(2, gens, 2, -1)
    homology_vector(2, gens, 32003)
    min_label_key(
        np.array([2, 1], dtype=np.uint16),
        np.array([[0, 1], [1, 0]], dtype=np.int8),
    )
