"""Exact arithmetic in GF(q) and the dense matrix kernel.

Field elements are integer codes in [0, q).  For prime fields the code is
the residue itself; for GF(p^e) the code is the base-p digit vector of the
polynomial residue, least significant digit = constant term.  The modulus
is always the lexicographically least monic irreducible of degree e over
GF(p) (so GF(4) uses x^2+x+1), which makes every canonical form stable
across runs.

Matrices are immutable row-major tuples.  GF(2) additionally gets a packed
representation (one int bitmask per row, bit j = column j) used by the
enumeration-heavy callers; the two representations agree bit for bit.
"""

from __future__ import annotations

from functools import lru_cache


MAX_FIELD_ORDER = 2**61
_TABLE_LIMIT = 1024  # full add/mul tables up to this order


class NotPrimeError(ValueError):
    pass


class DegreeZeroError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ----------------------------------------------------------------------
# polynomial helpers over GF(p), coefficient lists with c[i] = coeff of x^i
# ----------------------------------------------------------------------

def _poly_trim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_mulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod_p(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[da] == 0:
            a.pop()
            continue
        coef = (a[da] * inv_lb) % p
        q[da - db] = coef
        for i, bi in enumerate(b):
            a[da - db + i] = (a[da - db + i] - coef * bi) % p
        a = _poly_trim(a)
    return q, a


def _is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            low, c = [], code
            for _ in range(d):
                low.append(c % p)
                c //= p
            div = low + [1]
            _, rem = _poly_divmod_p(list(coeffs), div, p)
            if not rem:
                return False
    return True


def _least_irreducible(p, e):
    """Lexicographically least monic irreducible of degree e over GF(p).

    Ordering is by the integer code of the low-degree coefficient vector,
    which reproduces the usual conventions (x^2+x+1 for GF(4), x^3+x+1
    for GF(8), x^2+1 for GF(9)).
    """
    for code in range(p**e):
        low, c = [], code
        for _ in range(e):
            low.append(c % p)
            c //= p
        coeffs = low + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found (impossible)")


class FieldSpec:
    """GF(q) with q = p^e; all scalar arithmetic lives here."""

    __slots__ = ("p", "e", "q", "modulus", "_add", "_mul", "_inv", "_neg",
                 "_log", "_exp")

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus  # () for prime fields
        self._add = self._mul = self._inv = self._neg = None
        self._log = self._exp = None
        if e > 1:
            self._build_tables()

    # -- element codes <-> coefficient vectors --------------------------

    def _vec(self, code):
        p, e = self.p, self.e
        out = []
        for _ in range(e):
            out.append(code % p)
            code //= p
        return out

    def _code(self, vec):
        c = 0
        for d in reversed(vec):
            c = c * self.p + d
        return c

    def _mul_vecs(self, va, vb):
        """Residue multiplication on digit vectors (table-free)."""
        p, e = self.p, self.e
        prod = _poly_mulmod_p(_poly_trim(list(va)), _poly_trim(list(vb)), p)
        if prod:
            _, rem = _poly_divmod_p(prod, list(self.modulus), p)
        else:
            rem = []
        rem = rem + [0] * (e - len(rem))
        return self._code(rem[:e])

    def _build_log_tables(self):
        """log/antilog multiplication for table-limit < q <= 2^16."""
        q = self.q
        if q > 2**16:
            raise NotImplementedError("extension fields above 2^16")
        # find a multiplicative generator by order check
        order_target = q - 1
        gen = None
        for a in range(2, q):
            x, order = a, 1
            va = self._vec(a)
            vx = list(va)
            while self._code(vx) != 1:
                vx = self._vec(self._mul_vecs(vx, va))
                order += 1
                if order > order_target:
                    break
            if order == order_target:
                gen = a
                break
        assert gen is not None
        log = [0] * q
        exp = [0] * (2 * order_target)
        x = 1
        vg = self._vec(gen)
        for i in range(order_target):
            exp[i] = x
            exp[i + order_target] = x
            log[x] = i
            x = self._mul_vecs(self._vec(x), vg)
        self._log, self._exp = log, exp

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        if q > _TABLE_LIMIT:
            self._build_log_tables()
            return
        mod = list(self.modulus)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        vecs = [self._vec(c) for c in range(q)]
        for a in range(q):
            va = vecs[a]
            for b in range(a, q):
                vb = vecs[b]
                s = self._code([(x + y) % p for x, y in zip(va, vb)])
                add[a][b] = s
                add[b][a] = s
                prod = _poly_mulmod_p(_poly_trim(va), _poly_trim(vb), p)
                _, rem = _poly_divmod_p(prod, mod, p) if prod else ([], [])
                rem = rem + [0] * (e - len(rem))
                m = self._code(rem[:e])
                mul[a][b] = m
                mul[b][a] = m
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        neg = [0] * q
        for a in range(q):
            neg[a] = self._code([(-x) % p for x in vecs[a]])
        self._add, self._mul, self._inv, self._neg = add, mul, inv, neg

    # -- scalar operations ----------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        p = self.p
        return self._code([(x + y) % p
                           for x, y in zip(self._vec(a), self._vec(b))])

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        if self._add is not None:
            return self._add[a][self._neg[b]]
        p = self.p
        return self._code([(x - y) % p
                           for x, y in zip(self._vec(a), self._vec(b))])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self._neg is not None:
            return self._neg[a]
        return self._code([(-x) % self.p for x in self._vec(a)])

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if self._mul is not None:
            return self._mul[a][b]
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv is not None:
            return self._inv[a]
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field_make(p, e=1):
    """Construct GF(p^e) with the deterministic modulus convention."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if e < 1:
        raise DegreeZeroError("extension degree must be >= 1")
    if p**e > MAX_FIELD_ORDER:
        raise ValueError("field order above configured bound 2^61")
    modulus = () if e == 1 else _least_irreducible(p, e)
    return FieldSpec(p, e, modulus)


def extension_modulus(field, degree):
    """Lex-least monic irreducible of the given degree over an arbitrary GF(q).

    Returned as a coefficient tuple over `field` (constant term first, the
    leading 1 included).  Used to build GF(q^k) for spread constructions.
    """
    q = field.q
    mul, add = field.mul, field.add

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = add(out[i + j], mul(ai, bj))
        while out and out[-1] == 0:
            out.pop()
        return out

    def poly_mod(a, b):
        a = list(a)
        db = len(b) - 1
        inv_lb = field.inv(b[-1])
        while len(a) - 1 >= db and any(a):
            da = len(a) - 1
            if a[da] == 0:
                a.pop()
                continue
            coef = mul(a[da], inv_lb)
            for i, bi in enumerate(b):
                a[da - db + i] = field.sub(a[da - db + i], mul(coef, bi))
            while a and a[-1] == 0:
                a.pop()
        return a

    def irreducible(coeffs):
        deg = len(coeffs) - 1
        for d in range(1, deg // 2 + 1):
            for code in range(q**d):
                low, c = [], code
                for _ in range(d):
                    low.append(c % q)
                    c //= q
                div = low + [1]
                if not poly_mod(list(coeffs), div):
                    return False
        return True

    for code in range(q**degree):
        low, c = [], code
        for _ in range(degree):
            low.append(c % q)
            c //= q
        coeffs = low + [1]
        if irreducible(coeffs):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found (impossible)")


# ----------------------------------------------------------------------
# matrices
# ----------------------------------------------------------------------

class Mat:
    """Immutable row-major matrix over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "entries", "_hash")

    def __init__(self, field, entries, cols=None):
        entries = tuple(tuple(r) for r in entries)
        self.field = field
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else (cols or 0)
        for r in entries:
            if len(r) != self.cols:
                raise DimensionMismatchError("ragged rows")
            for x in r:
                if not (0 <= x < field.q):
                    raise ValueError(f"entry {x} out of range for {field}")
        self.entries = entries
        self._hash = hash((field.q, self.rows, self.cols, entries))

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.entries == other.entries
                and (self.rows, self.cols) == (other.rows, other.cols))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols})"

    def sort_key(self):
        """Deterministic total order: dims, then row-major entries."""
        return (self.rows, self.cols, self.entries)

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return Mat(self.field, tuple(zip(*self.entries))) if self.rows else \
            Mat(self.field, [() for _ in range(self.cols)])


def mat_zero(field, rows, cols):
    return Mat(field, [[0] * cols for _ in range(rows)])


def mat_identity(field, n):
    return Mat(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(a, b):
    if a.cols != b.rows:
        raise DimensionMismatchError("inner dimensions differ")
    f = a.field
    mul, add = f.mul, f.add
    bt = b.entries
    out = []
    for ra in a.entries:
        row = [0] * b.cols
        for i, x in enumerate(ra):
            if x:
                bi = bt[i]
                if x == 1:
                    for j, y in enumerate(bi):
                        if y:
                            row[j] = add(row[j], y)
                else:
                    for j, y in enumerate(bi):
                        if y:
                            row[j] = add(row[j], mul(x, y))
        out.append(row)
    return Mat(f, out)


def mat_add(a, b):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatchError("shapes differ")
    add = a.field.add
    return Mat(a.field, [[add(x, y) for x, y in zip(ra, rb)]
                         for ra, rb in zip(a.entries, b.entries)])


def mat_stack(a, b):
    if a.cols != b.cols:
        raise DimensionMismatchError("column counts differ")
    return Mat(a.field, a.entries + b.entries)


def vec_mat(v, m):
    """Row vector times matrix."""
    f = m.field
    mul, add = f.mul, f.add
    out = [0] * m.cols
    for i, x in enumerate(v):
        if x:
            mi = m.entries[i]
            if x == 1:
                for j, y in enumerate(mi):
                    if y:
                        out[j] = add(out[j], y)
            else:
                for j, y in enumerate(mi):
                    if y:
                        out[j] = add(out[j], mul(x, y))
    return tuple(out)


def _rref_rows(field, rows, ncols):
    """In-place elimination; returns (rref row list, pivot columns)."""
    rows = [list(r) for r in rows]
    mul, add, sub, inv = field.mul, field.add, field.sub, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            ipv = inv(pv)
            rows[r] = [mul(ipv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                coef = rows[i][c]
                ri = rows[i]
                if coef == 1:
                    for j in range(c, ncols):
                        if prow[j]:
                            ri[j] = sub(ri[j], prow[j])
                else:
                    for j in range(c, ncols):
                        if prow[j]:
                            ri[j] = sub(ri[j], mul(coef, prow[j]))
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m):
    """Reduced row echelon form: returns (R, rank, pivots).

    R keeps the original row count (zero rows trail); rank = number of
    nonzero rows; pivot columns strictly increase.
    """
    red, pivots = _rref_rows(m.field, m.entries, m.cols)
    rank = len(red)
    full = red + [[0] * m.cols for _ in range(m.rows - rank)]
    return Mat(m.field, full, cols=m.cols), rank, pivots


def rref_trim(m):
    """rref with zero rows dropped."""
    red, pivots = _rref_rows(m.field, m.entries, m.cols)
    return Mat(m.field, red, cols=m.cols), pivots


def mat_rank(m):
    return len(_rref_rows(m.field, m.entries, m.cols)[0])


def rank_of_rows(field, rows, ncols):
    """Rank of a list of row tuples, no Mat construction."""
    return len(_rref_rows(field, rows, ncols)[0])


def kernel(m):
    """Canonical (rref) basis of the right null space {v : M v^T = 0}."""
    f = m.field
    red, pivots = _rref_rows(f, m.entries, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(red[r][fc])
        basis.append(v)
    canon, _ = _rref_rows(f, basis, m.cols)
    return Mat(f, canon, cols=m.cols)


def mat_inverse(m):
    """Inverse of a square matrix; raises SingularMatrixError."""
    if m.rows != m.cols:
        raise DimensionMismatchError("inverse of non-square matrix")
    f = m.field
    n = m.rows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(m.entries)]
    red, pivots = _rref_rows(f, aug, 2 * n)
    if len(red) < n or pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Mat(f, [r[n:] for r in red[:n]])


def solve_right(m, v):
    """One solution x of x . M = v for invertible M (row-vector convention)."""
    return vec_mat(v, mat_inverse(m))


# ----------------------------------------------------------------------
# packed GF(2) representation: a row is an int, bit j = column j
# ----------------------------------------------------------------------

def pack_rows(entries):
    out = []
    for row in entries:
        x = 0
        for j, v in enumerate(row):
            if v:
                x |= 1 << j
        out.append(x)
    return tuple(out)


def unpack_rows(packed, ncols):
    return tuple(tuple((x >> j) & 1 for j in range(ncols)) for x in packed)


def pk_rref(rows, ncols):
    """Packed GF(2) rref: returns (tuple of nonzero rref rows, pivot list)."""
    rows = list(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        pr = None
        for i in range(r, len(rows)):
            if rows[i] & bit:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(rows[:r]), pivots


def pk_rank(rows, ncols):
    rows = list(rows)
    r = 0
    for c in range(ncols):
        bit = 1 << c
        pr = None
        for i in range(r, len(rows)):
            if rows[i] & bit:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i] & bit:
                rows[i] ^= rows[r]
        r += 1
        if r == len(rows):
            break
    return r


# ----------------------------------------------------------------------
# shared text format: "q n_rows n_cols" then rows of integer codes
# ----------------------------------------------------------------------

def mat_to_text(m):
    head = f"{m.field.q} {m.rows} {m.cols}"
    body = "\n".join(" ".join(str(x) for x in r) for r in m.entries)
    return head + ("\n" + body if body else "")


def mat_from_text(text, field=None):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    q, nr, nc = (int(x) for x in lines[0].split())
    if field is None:
        p, e = factor_prime_power(q)
        field = field_make(p, e)
    if field.q != q:
        raise ValueError("field order mismatch in header")
    rows = [[int(x) for x in ln.split()] for ln in lines[1:1 + nr]]
    if len(rows) != nr or any(len(r) != nc for r in rows):
        raise ValueError("matrix body does not match header dimensions")
    return Mat(field, rows)


def factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise ValueError("not a prime power")
            if not is_prime(p):
                raise ValueError("not a prime power")
            return p, e
    raise ValueError("not a prime power")
