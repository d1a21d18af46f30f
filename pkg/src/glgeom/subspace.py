"""Canonical subspaces of V(n,q) and the lattice operations on them.

A Subspace is identified with the reduced row echelon form of any spanning
set, so equality is matrix equality and subspaces hash and sort.  The
enumeration order of the Grassmannian is fixed: pivot-column sets in
lexicographic order, then free entries in row-major lexicographic order.
"""

from __future__ import annotations

from itertools import combinations, product

from .gfq import (Mat, mat_inverse, mat_mul, pack_rows, pk_rank,
                  pk_rref, rank_of_rows, rref_trim, kernel, vec_mat,
                  DimensionMismatchError)


class AmbientMismatchError(ValueError):
    pass


class NotInAmbientError(ValueError):
    pass


class NotContainedError(ValueError):
    pass


class Subspace:
    """A subspace of V(n, q), stored as its canonical rref basis."""

    __slots__ = ("field", "n", "basis", "packed", "_hash")

    def __init__(self, field, n, basis, _canonical=False):
        if basis.rows and basis.cols != n:
            raise DimensionMismatchError("basis column count != ambient dim")
        if not _canonical:
            basis, _ = rref_trim(basis)
        if basis.rows == 0 and basis.cols != n:
            basis = Mat(field, [], cols=n)
        self.field = field
        self.n = n
        self.basis = basis
        self.packed = pack_rows(basis.entries) if field.q == 2 else None
        self._hash = hash((field.q, n, basis.entries))

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.n == other.n and self.basis.entries == other.basis.entries)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subspace(dim {self.dim} of V({self.n},{self.field.q}))"

    def sort_key(self):
        return (self.dim, self.basis.entries)

    def rows(self):
        return self.basis.entries

    def contains_vector(self, v):
        rows = list(self.basis.entries) + [tuple(v)]
        return rank_of_rows(self.field, rows, self.n) == self.dim

    def contains(self, other):
        _check_ambient(self, other)
        rows = list(self.basis.entries) + list(other.basis.entries)
        return rank_of_rows(self.field, rows, self.n) == self.dim

    def vectors(self):
        """All vectors of the subspace (q^dim of them)."""
        f, rows = self.field, self.basis.entries
        if not rows:
            yield (0,) * self.n
            return
        for coeffs in product(f.elements(), repeat=len(rows)):
            v = [0] * self.n
            for c, row in zip(coeffs, rows):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = f.add(v[j], f.mul(c, x))
            yield tuple(v)

    def to_text(self):
        from .gfq import mat_to_text
        return mat_to_text(self.basis)


def _check_ambient(u, w):
    if u.field != w.field or u.n != w.n:
        raise AmbientMismatchError("subspaces live in different ambient spaces")


def span(n, field, generators):
    """Canonical subspace spanned by the given rows (Mat or row list)."""
    if isinstance(generators, Mat):
        m = generators
    else:
        m = Mat(field, generators) if generators else Mat(field, [])
    if generators and m.cols != n:
        raise DimensionMismatchError("generator length != ambient dim")
    if not generators:
        m = Mat(field, [[0] * n])
    return Subspace(field, n, m)


def span_rows(field, n, rows):
    """span() for a plain list of row tuples, empty allowed."""
    if not rows:
        return zero_subspace(field, n)
    return Subspace(field, n, Mat(field, rows))


def zero_subspace(field, n):
    return Subspace(field, n, Mat(field, [], cols=n), _canonical=True)


def full_space(field, n):
    from .gfq import mat_identity
    return Subspace(field, n, mat_identity(field, n), _canonical=True)


def coordinate_subspace(field, n, cols):
    """Span of the unit vectors e_c for c in cols (0-based)."""
    rows = []
    for c in sorted(cols):
        v = [0] * n
        v[c] = 1
        rows.append(v)
    return span_rows(field, n, rows)


def intersection_dim(u, w):
    """dim(U meet W) via the rank of the stacked bases."""
    _check_ambient(u, w)
    if u.field.q == 2:
        r = pk_rank(u.packed + w.packed, u.n)
    else:
        r = rank_of_rows(u.field, list(u.basis.entries) + list(w.basis.entries), u.n)
    return u.dim + w.dim - r


def sum_subspace(u, w):
    _check_ambient(u, w)
    rows = list(u.basis.entries) + list(w.basis.entries)
    return span_rows(u.field, u.n, rows)


def perp(u):
    """Orthogonal complement under the standard dot product."""
    if u.dim == 0:
        return full_space(u.field, u.n)
    return Subspace(u.field, u.n, kernel(u.basis), _canonical=True)


def intersect(u, w):
    """U meet W, computed as the perp of the sum of the perps."""
    _check_ambient(u, w)
    if u is w or u == w:
        return u
    return perp(sum_subspace(perp(u), perp(w)))


def is_diagonal(u, y1, y2):
    """True iff U <= Y1 + Y2 and U meets both Y1 and Y2 trivially."""
    amb = sum_subspace(y1, y2)
    if not amb.contains(u):
        raise NotInAmbientError("subspace not inside Y1 + Y2")
    return intersection_dim(u, y1) == 0 and intersection_dim(u, y2) == 0


def complement(u, inside):
    """Deterministic W with U (+) W = inside, by greedy pivot extension."""
    _check_ambient(u, inside)
    if not inside.contains(u):
        raise NotContainedError("first argument not contained in second")
    field, n = u.field, u.n
    rows = list(u.basis.entries)
    rank = len(rows)
    picked = []
    for cand in inside.basis.entries:
        trial = rows + [cand]
        r = rank_of_rows(field, trial, n)
        if r > rank:
            rows.append(cand)
            picked.append(cand)
            rank = r
        if rank == inside.dim:
            break
    return span_rows(field, n, picked)


def direct_sum(parts):
    """Sum of the parts, asserting the sum is direct."""
    parts = [p for p in parts if p.dim > 0]
    if not parts:
        raise ValueError("direct_sum of no nonzero parts")
    field, n = parts[0].field, parts[0].n
    rows = []
    for p in parts:
        rows.extend(p.basis.entries)
    total = sum(p.dim for p in parts)
    if rank_of_rows(field, rows, n) != total:
        raise ValueError("summands are not independent")
    return span_rows(field, n, rows)


def basis_of(u):
    return list(u.basis.entries)


def add_vecs(field, u, v):
    return tuple(field.add(x, y) for x, y in zip(u, v))


def scale_vec(field, c, v):
    return tuple(field.mul(c, x) for x in v)


def project_onto(u, b, c):
    """Image of U under the projection V = B (+) C -> C.

    B and C must be complementary subspaces of the full ambient space.
    """
    field, n = u.field, u.n
    rows = list(b.basis.entries) + list(c.basis.entries)
    if len(rows) != n:
        raise DimensionMismatchError("B and C do not decompose the ambient space")
    s = mat_inverse(Mat(field, rows))
    nb = b.dim
    out = []
    for v in u.basis.entries:
        coords = vec_mat(v, s)
        w = [0] * n
        for i in range(nb, n):
            ci = coords[i]
            if ci:
                for j, x in enumerate(rows[i]):
                    if x:
                        w[j] = field.add(w[j], field.mul(ci, x))
        out.append(tuple(w))
    return span_rows(field, n, out)


def adapted_pair_basis(u1, u2):
    """Full-space basis adapted to a pair: [U1-part, T, U2-part, rest]."""
    field, n = u1.field, u1.n
    t = intersect(u1, u2)
    rows = basis_of(complement(t, u1)) + basis_of(t) + basis_of(complement(t, u2))
    rank = rank_of_rows(field, rows, n)
    full = full_space(field, n)
    for cand in full.basis.entries:
        if rank == n:
            break
        trial = rows + [cand]
        r = rank_of_rows(field, trial, n)
        if r > rank:
            rows.append(cand)
            rank = r
    return Mat(field, rows)


def transport_pair(u1, u2, t1, t2):
    """A GL element g (as a Mat, acting by v -> v.g) with U1 g = T1, U2 g = T2.

    Requires matching dimensions and intersection dimension.
    """
    a = adapted_pair_basis(u1, u2)
    b = adapted_pair_basis(t1, t2)
    return mat_mul(mat_inverse(a), b)


def apply_mat(u, g):
    """Image subspace U.g under the row action."""
    return Subspace(u.field, u.n, mat_mul(u.basis, g))


# ----------------------------------------------------------------------
# bisections
# ----------------------------------------------------------------------

class Bisection:
    """Unordered pair {V1, V2} with V = V1 (+) V2 and equal halves."""

    __slots__ = ("half1", "half2", "_hash")

    def __init__(self, a, b):
        _check_ambient(a, b)
        n = a.n
        if a.dim != b.dim or 2 * a.dim != n:
            raise DimensionMismatchError("halves must have dimension n/2")
        if intersection_dim(a, b) != 0:
            raise ValueError("halves are not complementary")
        if b.sort_key() < a.sort_key():
            a, b = b, a
        self.half1 = a
        self.half2 = b
        self._hash = hash((a, b))

    @property
    def field(self):
        return self.half1.field

    @property
    def n(self):
        return self.half1.n

    @property
    def k(self):
        return self.half1.dim

    def __eq__(self, other):
        return (isinstance(other, Bisection) and self.half1 == other.half1
                and self.half2 == other.half2)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Bisection(k={self.k}, q={self.field.q})"

    def sort_key(self):
        return (self.half1.sort_key(), self.half2.sort_key())

    def halves(self):
        return (self.half1, self.half2)

    def apply(self, g):
        return Bisection(apply_mat(self.half1, g), apply_mat(self.half2, g))

    def dual(self):
        return Bisection(perp(self.half1), perp(self.half2))

    def to_text(self):
        return self.half1.to_text() + "\n\n" + self.half2.to_text()


def coordinate_bisection(field, k):
    """{<e_1..e_k>, <e_{k+1}..e_{2k}>} in V(2k, q)."""
    return Bisection(coordinate_subspace(field, 2 * k, range(k)),
                     coordinate_subspace(field, 2 * k, range(k, 2 * k)))


def subspace_from_text(text, field=None):
    from .gfq import mat_from_text
    m = mat_from_text(text, field)
    return Subspace(m.field, m.cols, m)


def bisection_from_text(text, field=None):
    blocks = [b for b in text.split("\n\n") if b.strip()]
    if len(blocks) != 2:
        raise ValueError("expected two subspace blocks separated by a blank line")
    return Bisection(subspace_from_text(blocks[0], field),
                     subspace_from_text(blocks[1], field))


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def grassmannian(n, field, m):
    """All m-subspaces of V(n,q), each exactly once, in canonical order.

    Pivot-column sets run lexicographically; for a fixed pivot set the free
    entries run in row-major lexicographic order.
    """
    if not (0 <= m <= n):
        raise ValueError("need 0 <= m <= n")
    if m == 0:
        yield zero_subspace(field, n)
        return
    q = field.q
    for pivots in combinations(range(n), m):
        pivot_set = set(pivots)
        free = [(r, c) for r in range(m) for c in range(n)
                if c > pivots[r] and c not in pivot_set]
        base = [[0] * n for _ in range(m)]
        for r, p in enumerate(pivots):
            base[r][p] = 1
        if not free:
            yield Subspace(field, n, Mat(field, base), _canonical=True)
            continue
        for values in product(range(q), repeat=len(free)):
            rows = [row[:] for row in base]
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield Subspace(field, n, Mat(field, rows), _canonical=True)


def complements_of(w):
    """All complements of a k-subspace of V(2k,q): q^(k^2) of them.

    Each complement is the graph of a linear map from the anti-pivot
    coordinate subspace into W, which makes the enumeration direct.
    """
    field, n, k = w.field, w.n, w.dim
    q = field.q
    pivots = set()
    for row in w.basis.entries:
        for j, x in enumerate(row):
            if x:
                pivots.add(j)
                break
    free_cols = [c for c in range(n) if c not in pivots]
    wrows = w.basis.entries
    for values in product(range(q), repeat=k * len(free_cols)):
        rows = []
        for i, c in enumerate(free_cols):
            v = [0] * n
            v[c] = 1
            coeffs = values[i * k:(i + 1) * k]
            for cf, wr in zip(coeffs, wrows):
                if cf:
                    for j, x in enumerate(wr):
                        if x:
                            v[j] = field.add(v[j], field.mul(cf, x))
            rows.append(v)
        yield span_rows(field, n, rows)


def packed_complements_of(w_packed, n):
    """Packed q=2 version of complements_of: yields canonical packed rows."""
    k = len(w_packed)
    pivots = set()
    for x in w_packed:
        pivots.add((x & -x).bit_length() - 1)
    free_cols = [c for c in range(n) if c not in pivots]
    for choice in product(range(2**k), repeat=len(free_cols)):
        rows = []
        for c, sel in zip(free_cols, choice):
            v = 1 << c
            s = sel
            i = 0
            while s:
                if s & 1:
                    v ^= w_packed[i]
                s >>= 1
                i += 1
            rows.append(v)
        red, _ = pk_rref(rows, n)
        yield red


def subspace_from_packed(field, n, packed_rows):
    """Subspace from canonical (rref) packed GF(2) rows, no re-elimination."""
    from .gfq import unpack_rows
    return Subspace(field, n, Mat(field, unpack_rows(packed_rows, n)),
                    _canonical=True)


def pk_entry_key(rows, n):
    """Key ordering packed rows the same way entry tuples compare."""
    return tuple(sum(((x >> j) & 1) << (n - 1 - j) for j in range(n))
                 for x in rows)


def packed_grassmannian(n, k):
    """Packed q=2 mirror of grassmannian(n, GF(2), k): same canonical order."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(r, c) for r in range(k) for c in range(n)
                if c > pivots[r] and c not in pivot_set]
        base = [1 << p for p in pivots]
        if not free:
            yield tuple(base)
            continue
        for values in product(range(2), repeat=len(free)):
            rows = base[:]
            for (r, c), v in zip(free, values):
                if v:
                    rows[r] |= 1 << c
            yield tuple(rows)


def packed_bisection_pairs(k):
    """Packed q=2 bisections as (half1, half2) row tuples, canonical order.

    Mirrors bisections(k, GF(2)) pair for pair without building objects.
    """
    n = 2 * k
    for w in packed_grassmannian(n, k):
        wkey = pk_entry_key(w, n)
        for red in packed_complements_of(w, n):
            if wkey < pk_entry_key(red, n):
                yield w, red


def bisections(k, field):
    """All bisections of V(2k,q), each unordered pair exactly once.

    Count: gaussian(2k,k,q) * q^(k^2) / 2.
    """
    n = 2 * k
    if field.q == 2:
        for w in grassmannian(n, field, k):
            wk = w.sort_key()
            for red in packed_complements_of(w.packed, n):
                c = subspace_from_packed(field, n, red)
                if wk < c.sort_key():
                    yield Bisection(w, c)
        return
    for w in grassmannian(n, field, k):
        wk = w.sort_key()
        for c in complements_of(w):
            if wk < c.sort_key():
                yield Bisection(w, c)
