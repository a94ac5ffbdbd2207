"""Exact dense linear algebra over Q(zeta_n), plus integer Smith normal form.

Matrices are small (at most a few hundred rows) but entries must stay exact,
so elimination works over Fraction (order 1) or CycloNumber entries with
plain division steps.  Pivots are chosen deterministically: first nonzero
entry in column order, so kernel bases are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .cyclotomic import CycloNumber


class Matrix:
    """Dense row-major matrix over Q(zeta_order); order 1 stores Fractions."""

    __slots__ = ("rows", "cols", "order", "entries")

    def __init__(self, rows: int, cols: int, order: int, entries: tuple):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("inconsistent matrix shape")
        self.rows = rows
        self.cols = cols
        self.order = order
        self.entries = entries

    @classmethod
    def from_rows(cls, data, cols: int | None = None, order: int | None = None) -> "Matrix":
        data = [list(row) for row in data]
        nrows = len(data)
        if nrows == 0:
            return cls(0, 0 if cols is None else cols, order or 1, ())
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        n = order or 1
        for row in data:
            for v in row:
                if isinstance(v, CycloNumber):
                    n = lcm(n, v.order)
        flat = []
        for row in data:
            for v in row:
                flat.append(_coerce_scalar(v, n))
        return cls(nrows, ncols, n, tuple(flat))

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "Matrix":
        one, zero = _one_zero(order)
        return cls(n, n, order, tuple(one if i == j else zero
                                      for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def to_rows(self):
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def row(self, i: int):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, order={self.order})"


def _coerce_scalar(v, order: int):
    if order == 1:
        if isinstance(v, CycloNumber):
            return v.rational_value()
        return Fraction(v)
    if isinstance(v, CycloNumber):
        return v.lift(order)
    return CycloNumber.from_rational(v, order)


def _one_zero(order: int):
    if order == 1:
        return Fraction(1), Fraction(0)
    return CycloNumber.one(order), CycloNumber.zero(order)


def _rref(rows_list, ncols):
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows_list)):
            if rows_list[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows_list[r], rows_list[pivot_row] = rows_list[pivot_row], rows_list[r]
        pv = rows_list[r][c]
        if pv != 1:
            inv = 1 / pv if isinstance(pv, Fraction) else pv.inverse()
            rows_list[r] = [x * inv for x in rows_list[r]]
        for i in range(len(rows_list)):
            if i != r and rows_list[i][c]:
                f = rows_list[i][c]
                rows_list[i] = [a - f * b for a, b in zip(rows_list[i], rows_list[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    """Rank over the fraction field, by exact Gaussian elimination."""
    rows_list = m.to_rows()
    return len(_rref(rows_list, m.cols))


def nullspace(m: Matrix) -> list[tuple]:
    """Deterministic exact basis of the right kernel, one vector per free column."""
    rows_list = m.to_rows()
    pivots = _rref(rows_list, m.cols)
    one, zero = _one_zero(m.order)
    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    basis = []
    for free in range(m.cols):
        if free in pivot_of_col:
            continue
        vec = [zero] * m.cols
        vec[free] = one
        for c, r in pivot_of_col.items():
            vec[c] = -rows_list[r][free]
        basis.append(tuple(vec))
    return basis


def mat_vec(m: Matrix, vec) -> list:
    one, zero = _one_zero(m.order)
    out = []
    for i in range(m.rows):
        acc = zero
        for j in range(m.cols):
            acc = acc + m.entry(i, j) * vec[j]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Integer matrices: Smith normal form and kernels over Z/aZ.


class IntMatrix:
    """Dense row-major matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: tuple):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("inconsistent matrix shape")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(int(v) for v in entries)

    @classmethod
    def from_rows(cls, data, cols: int | None = None) -> "IntMatrix":
        data = [list(row) for row in data]
        nrows = len(data)
        if nrows == 0:
            return cls(0, 0 if cols is None else cols, ())
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(v for row in data for v in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self):
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def diagonal(self):
        return [self.entry(i, i) for i in range(min(self.rows, self.cols))]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


def int_mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError("shape mismatch")
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            out.append(sum(a.entry(i, t) * b.entry(t, j) for t in range(a.cols)))
    return IntMatrix(a.rows, b.cols, tuple(out))


def int_det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Returns (S, U, V) with U*m*V = S, S diagonal, d1 | d2 | ..., det U, V = +-1."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()

    def add_row(i, src, c):
        a[i] = [x + c * y for x, y in zip(a[i], a[src])]
        u[i] = [x + c * y for x, y in zip(u[i], u[src])]

    def add_col(j, src, c):
        for row in a:
            row[j] += c * row[src]
        for row in v:
            row[j] += c * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(nr, nc)):
        while True:
            # Move a nonzero entry of smallest magnitude in the block to (t, t).
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            # Clear row and column t; restarts when a remainder becomes the new pivot.
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            fix = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t]:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            add_row(t, fix, 1)
        if t < min(nr, nc) and a[t][t] < 0:
            negate_row(t)

    s = IntMatrix.from_rows(a, cols=nc) if nr else IntMatrix(0, nc, ())
    return (s,
            IntMatrix.from_rows(u, cols=nr) if nr else IntMatrix(0, 0, ()),
            IntMatrix.from_rows(v, cols=nc) if nc else IntMatrix(0, 0, ()))


def kernel_mod_generators(m: IntMatrix, modulus: int,
                          snf: tuple[IntMatrix, IntMatrix, IntMatrix] | None = None
                          ) -> list[tuple[int, ...]]:
    """Generators of {x in (Z/modulus)^cols : m x = 0}, via the Smith form."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    s, _, v = snf if snf is not None else smith_normal_form(m)
    gens = []
    for j in range(m.cols):
        d = s.entry(j, j) if j < min(m.rows, m.cols) else 0
        step = modulus // gcd(abs(d), modulus)
        if step % modulus == 0:
            continue
        g = tuple(v.entry(i, j) * step % modulus for i in range(m.cols))
        if any(g):
            gens.append(g)
    return gens


def solve_mod(m: IntMatrix, moduli) -> list[tuple[tuple[int, ...], ...]]:
    """Generators of the kernel of m over G^cols, G = Z/a1 x Z/a2 x ...

    Each generator is a length-``cols`` vector whose entries are tuples with
    one component per modulus.  Solved componentwise through the Smith form.
    """
    moduli = list(moduli)
    if not moduli or any(a < 2 for a in moduli):
        raise ValueError("moduli must be a nonempty list of integers >= 2")
    snf = smith_normal_form(m)
    width = len(moduli)
    gens = []
    for t, a in enumerate(moduli):
        for g in kernel_mod_generators(m, a, snf=snf):
            vec = tuple(tuple(g[i] if w == t else 0 for w in range(width))
                        for i in range(m.cols))
            gens.append(vec)
    return gens
