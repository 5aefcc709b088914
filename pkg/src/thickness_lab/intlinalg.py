"""Exact integer matrix arithmetic: Hermite and Smith forms, kernels, congruences.

Everything here works on plain Python ints (no overflow) and treats matrices
as lists of row lists. Lattices are row spans of their basis matrices.
"""

from __future__ import annotations

from bisect import bisect_left


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for t in range(inner):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(cols):
                    oi[j] += v * bt[j]
    return out


def det(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if m[t][t] == 0:
            for i in range(t + 1, n):
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
            m[i][t] = 0
        prev = m[t][t]
    return sign * m[n - 1][n - 1]


class _Echelon:
    """Mutable integer row-echelon accumulator (one pivot per column)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivot_cols: list[int] = []

    def add_row(self, vec: list[int]) -> None:
        vec = list(vec)
        ncols = self.ncols
        j = 0
        while j < ncols:
            if vec[j] == 0:
                j += 1
                continue
            pos = bisect_left(self.pivot_cols, j)
            if pos < len(self.pivot_cols) and self.pivot_cols[pos] == j:
                row = self.rows[pos]
                a, b = row[j], vec[j]
                if b % a == 0:
                    q = b // a
                    for c in range(j, ncols):
                        vec[c] -= q * row[c]
                else:
                    g, x, y = xgcd(a, b)
                    p, q = a // g, b // g
                    new_row = [x * row[c] + y * vec[c] for c in range(ncols)]
                    new_vec = [p * vec[c] - q * row[c] for c in range(ncols)]
                    self.rows[pos] = new_row
                    vec = new_vec
                # vec[j] is now 0; continue with remaining columns
            else:
                if vec[j] < 0:
                    vec = [-v for v in vec]
                self.rows.insert(pos, vec)
                self.pivot_cols.insert(pos, j)
                return
        # vec reduced to zero: nothing to insert

    def reduced_rows(self) -> list[list[int]]:
        """Canonical form: entries above each pivot reduced into [0, pivot)."""
        rows = [row[:] for row in self.rows]
        for i in range(len(rows)):
            pj = self.pivot_cols[i]
            piv = rows[i][pj]
            for u in range(i):
                q = rows[u][pj] // piv
                if q:
                    for c in range(pj, self.ncols):
                        rows[u][c] -= q * rows[i][c]
        return rows


def hnf(rows: list[list[int]] | list[tuple[int, ...]], ncols: int) -> list[list[int]]:
    """Canonical row-style Hermite form of the lattice spanned by `rows`.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    are dropped. Two generating sets span the same lattice iff their forms
    are equal.
    """
    ech = _Echelon(ncols)
    for r in rows:
        ech.add_row(list(r))
    return ech.reduced_rows()


def in_rowspan(basis: list[list[int]], vec: list[int] | tuple[int, ...]) -> bool:
    """Membership of `vec` in the lattice with echelon basis `basis`."""
    v = list(vec)
    ncols = len(v)
    for row in basis:
        pj = next((c for c in range(ncols) if row[c]), None)
        if pj is None:
            continue
        if v[pj] % row[pj] != 0:
            return False
        q = v[pj] // row[pj]
        if q:
            for c in range(pj, ncols):
                v[c] -= q * row[c]
    return not any(v)


def snf(mat: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (U, S, V) with U * mat * V = S.

    U and V are unimodular; S is diagonal with s_1 | s_2 | ... and
    nonnegative entries.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    S = [list(row) for row in mat]
    U = identity(m)
    V = identity(n)

    def row_combine(i1, i2, x, y, p, q):
        # rows (i1, i2) <- (x*i1 + y*i2, p*i2 - q*i1); det = xp + yq = 1
        for mm in (S, U):
            r1, r2 = mm[i1], mm[i2]
            for c in range(len(r1)):
                a, b = r1[c], r2[c]
                r1[c] = x * a + y * b
                r2[c] = p * b - q * a

    def col_combine(j1, j2, x, y, p, q):
        for mm in (S, V):
            for row in mm:
                a, b = row[j1], row[j2]
                row[j1] = x * a + y * b
                row[j2] = p * b - q * a

    def row_sub(i_dst, i_src, q):
        for mm in (S, U):
            dst, src = mm[i_dst], mm[i_src]
            for c in range(len(dst)):
                dst[c] -= q * src[c]

    def col_sub(j_dst, j_src, q):
        for mm in (S, V):
            for row in mm:
                row[j_dst] -= q * row[j_src]

    def diagonalize():
        t = 0
        while t < min(m, n):
            # locate smallest nonzero entry in the trailing block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(S[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                S[t], S[bi] = S[bi], S[t]
                U[t], U[bi] = U[bi], U[t]
            if bj != t:
                for row in S:
                    row[t], row[bj] = row[bj], row[t]
                for row in V:
                    row[t], row[bj] = row[bj], row[t]
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if S[i][t]:
                        a, b = S[t][t], S[i][t]
                        if b % a == 0:
                            row_sub(i, t, b // a)
                        else:
                            g, x, y = xgcd(a, b)
                            row_combine(t, i, x, y, a // g, b // g)
                            dirty = True
                for j in range(t + 1, n):
                    if S[t][j]:
                        a, b = S[t][t], S[t][j]
                        if b % a == 0:
                            col_sub(j, t, b // a)
                        else:
                            g, x, y = xgcd(a, b)
                            col_combine(t, j, x, y, a // g, b // g)
                            dirty = True
                if not dirty:
                    col_clean = all(S[i][t] == 0 for i in range(t + 1, m))
                    row_clean = all(S[t][j] == 0 for j in range(t + 1, n))
                    if col_clean and row_clean:
                        break
            if S[t][t] < 0:
                for c in range(n):
                    S[t][c] = -S[t][c]
                for c in range(m):
                    U[t][c] = -U[t][c]
            t += 1
        return t

    rank = diagonalize()
    # enforce the divisibility chain; a column add reintroduces an off-diagonal
    # entry, so re-diagonalize until stable
    while True:
        bad = None
        for i in range(rank - 1):
            a, b = S[i][i], S[i + 1][i + 1]
            if a and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        col_sub(bad, bad + 1, -1)  # col_bad += col_{bad+1}
        rank = diagonalize()
    return U, S, V


def kernel_rows(mat: list[list[int]]) -> list[list[int]]:
    """Basis rows of the left integer kernel {c : c * mat = 0}."""
    m = len(mat)
    if m == 0:
        return []
    n = len(mat[0])
    U, S, _ = snf(mat)
    out = []
    for i in range(m):
        if i >= n or S[i][i] == 0:
            out.append(U[i][:])
    return out


def solve_single_congruence(weights: list[int], rhs: int, modulus: int) -> list[int] | None:
    """Solve sum_i c_i * weights_i = rhs (mod modulus) for integers c.

    Returns one solution, or None if rhs is not a multiple of
    gcd(weights, modulus).
    """
    n = len(weights)
    g = modulus
    coeffs = [0] * n
    # running gcd g of (modulus, w_0..w_i) with bookkeeping of a combination
    combo = [0] * n
    for i, w in enumerate(weights):
        g2, x, y = xgcd(g, w)
        combo = [x * c for c in combo]
        combo[i] += y
        g = g2
    if g == 0:
        return [0] * n if rhs % modulus == 0 else None
    if rhs % g != 0:
        return None
    scale = rhs // g
    return [c * scale for c in combo]
