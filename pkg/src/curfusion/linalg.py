"""Sparse exact linear algebra over Q.

Vectors are dicts {column index: nonzero rational}; matrices are column-major
dicts {column: sparse column vector}.  Echelon keeps a row-echelon spanning
set whose rows are frozen after insertion, so closure layers keep stable
representatives; Basis adds exact coordinate solving on a fixed vector list.

Pivots are always the smallest column index present, which makes every
reduction (and hence every quotient basis downstream) deterministic.
"""

import heapq

from .rational import QQ


def vec_scale(v, c):
    if c == 0:
        return {}
    return {j: c * x for j, x in v.items()}


def vec_add(u, v):
    out = dict(u)
    vec_iadd(out, v)
    return out


def vec_iadd(dst, src, c=1):
    """dst += c*src, in place, dropping cancelled entries."""
    if c == 0:
        return dst
    for j, x in src.items():
        y = dst.get(j)
        if y is None:
            dst[j] = c * x
        else:
            y = y + c * x
            if y == 0:
                del dst[j]
            else:
                dst[j] = y
    return dst


def vec_sub(u, v):
    out = dict(u)
    vec_iadd(out, v, -1)
    return out


def vec_eq(u, v):
    return u == v


def mat_apply(mat, vec):
    """Column-major matrix times sparse vector."""
    out = {}
    for j, c in vec.items():
        col = mat.get(j)
        if col:
            vec_iadd(out, col, c)
    return out


def mat_add(a, b):
    out = {j: dict(col) for j, col in a.items()}
    for j, col in b.items():
        if j in out:
            vec_iadd(out[j], col)
            if not out[j]:
                del out[j]
        else:
            out[j] = dict(col)
    return out


def mat_scale(a, c):
    if c == 0:
        return {}
    return {j: vec_scale(col, c) for j, col in a.items()}


def mat_mul(a, b):
    """Composition a∘b of column-major matrices."""
    out = {}
    for j, col in b.items():
        img = mat_apply(a, col)
        if img:
            out[j] = img
    return out


def mat_eq(a, b):
    ka = {j for j, col in a.items() if col}
    kb = {j for j, col in b.items() if col}
    if ka != kb:
        return False
    return all(a[j] == b[j] for j in ka)


def mat_from_entries(entries):
    """entries: iterable of (row, col, value)."""
    out = {}
    for i, j, v in entries:
        v = QQ(v)
        if v != 0:
            out.setdefault(j, {})[i] = v
    return out


def mat_entries(mat):
    """Sorted (row, col, value) triples; canonical for serialization."""
    triples = []
    for j in sorted(mat):
        for i in sorted(mat[j]):
            triples.append((i, j, mat[j][i]))
    return triples


class Echelon:
    """Row-echelon accumulator with frozen rows and distinct pivots."""

    def __init__(self):
        self.rows = {}  # pivot column -> row vector with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec):
        """Residual of vec modulo the row space (a fresh dict)."""
        work = dict(vec)
        heap = list(work)
        heapq.heapify(heap)
        out = {}
        while heap:
            c = heapq.heappop(heap)
            coeff = work.pop(c, None)
            if coeff is None or coeff == 0:
                continue
            row = self.rows.get(c)
            if row is None:
                out[c] = coeff
                continue
            # row[c] == 1 and c == min(row), so only columns > c are touched
            for j, rv in row.items():
                if j == c:
                    continue
                y = work.get(j)
                if y is None:
                    work[j] = -coeff * rv
                    heapq.heappush(heap, j)
                else:
                    y = y - coeff * rv
                    if y == 0:
                        del work[j]
                    else:
                        work[j] = y
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def insert(self, vec):
        """Insert vec; returns the new row (pivot-normalized) or None."""
        res = self.reduce(vec)
        if not res:
            return None
        p = min(res)
        inv = 1 / QQ(res[p])
        row = {j: x * inv for j, x in res.items()}
        self.rows[p] = row
        return row


class Basis:
    """Ordered vectors b_0..b_{n-1} with exact coordinate solving."""

    def __init__(self, vectors):
        self.vectors = list(vectors)
        self._rows = {}  # pivot -> (row, combo) with row == sum combo[k]*b_k
        for k, v in enumerate(self.vectors):
            res, combo = self._reduce(v, {k: QQ(1)})
            if not res:
                raise ValueError("basis vectors are linearly dependent")
            p = min(res)
            inv = 1 / QQ(res[p])
            self._rows[p] = (
                {j: x * inv for j, x in res.items()},
                {j: x * inv for j, x in combo.items()},
            )

    def __len__(self):
        return len(self.vectors)

    def _reduce(self, vec, combo):
        work = dict(vec)
        combo = dict(combo)
        heap = list(work)
        heapq.heapify(heap)
        out = {}
        while heap:
            c = heapq.heappop(heap)
            coeff = work.pop(c, None)
            if coeff is None or coeff == 0:
                continue
            hit = self._rows.get(c)
            if hit is None:
                out[c] = coeff
                continue
            row, rcombo = hit
            for j, rv in row.items():
                if j == c:
                    continue
                y = work.get(j)
                if y is None:
                    work[j] = -coeff * rv
                    heapq.heappush(heap, j)
                else:
                    y = y - coeff * rv
                    if y == 0:
                        del work[j]
                    else:
                        work[j] = y
            vec_iadd(combo, rcombo, -coeff)
        return out, combo

    def coords(self, vec):
        """Coefficients c with vec == sum c[k]*b_k, or None if outside."""
        res, combo = self._reduce(vec, {})
        if res:
            return None
        return {k: -x for k, x in combo.items() if x != 0}


def closure(seeds, operators, echelon=None):
    """Smallest operator-stable subspace containing the seeds.

    operators: callables vec -> vec.  Returns the Echelon; rows added while
    closing are themselves fed back through every operator, so the result is
    exactly the generated subspace.
    """
    ech = echelon if echelon is not None else Echelon()
    work = []
    for s in seeds:
        row = ech.insert(s)
        if row is not None:
            work.append(row)
    while work:
        v = work.pop()
        for op in operators:
            row = ech.insert(op(v))
            if row is not None:
                work.append(row)
    return ech
