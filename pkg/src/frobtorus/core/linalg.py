"""Exact linear algebra over Z, Q and F_p.

Matrices are lists of rows.  Rational entries are ``Fraction``; integer
routines never leave Z.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


# -- generic helpers ------------------------------------------------------


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Matrix, v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def vec_mat(v: Sequence, A: Matrix) -> list:
    if not A:
        return []
    return [sum(v[i] * A[i][j] for i in range(len(A))) for j in range(len(A[0]))]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def mat_pow(A: Matrix, k: int) -> Matrix:
    n = len(A)
    R = identity(n)
    B = A
    while k:
        if k & 1:
            R = mat_mul(R, B)
        B = mat_mul(B, B)
        k >>= 1
    return R


def trace(A: Matrix):
    return sum(A[i][i] for i in range(len(A)))


def kron(A: Matrix, B: Matrix) -> Matrix:
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


# -- determinants and characteristic polynomials --------------------------


def det_bareiss(A: Matrix) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det(A: Matrix):
    """Determinant over Q (or Z) by Gaussian elimination with Fractions."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) for r in A for x in r):
        return Fraction(det_bareiss(A))
    M = [[Fraction(x) for x in r] for r in A]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            d = -d
        d *= M[k][k]
        inv = 1 / M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] * inv
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return d


def charpoly_det(A: Matrix) -> list[Fraction]:
    """Ascending coefficients of det(t*I - A), by evaluating at n+1 points and interpolating."""
    n = len(A)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        M = [[(x if i == j else 0) - A[i][j] for j in range(n)] for i in range(n)]
        ys.append(det(M))
    return _interpolate(xs, ys)


def _interpolate(xs, ys) -> list[Fraction]:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # Lagrange basis numerator prod_{j!=i} (t - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    return coeffs


# -- rank, kernel over Q --------------------------------------------------


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    M = [[Fraction(x) for x in r] for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def kernel(A: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel {x : A x = 0} over Q."""
    if not A:
        return []
    cols = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence) -> list[Fraction] | None:
    """One solution of A x = b over Q, or None."""
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    cols = len(A[0])
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for i, pc in enumerate(piv):
        x[pc] = R[i][cols]
    return x


# -- semisimplicity -------------------------------------------------------


def minimal_poly_squarefree_at(A: Matrix, lam) -> bool:
    """True iff the eigenvalue ``lam`` of A is semisimple: rank(A - lam) == rank((A - lam)^2)."""
    n = len(A)
    B = [[Fraction(A[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return rank(B) == rank(mat_mul(B, B))


# -- mod p ---------------------------------------------------------------


def rref_mod(A: Matrix, p: int) -> tuple[Matrix, list[int]]:
    M = [[x % p for x in r] for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def kernel_mod(A: Matrix, p: int, cols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0 mod p}."""
    if not A:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    cols = len(A[0])
    R, piv = rref_mod(A, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-R[i][f]) % p
        basis.append(v)
    return basis


def rank_mod(A: Matrix, p: int) -> int:
    if not A or not A[0]:
        return 0
    return len(rref_mod(A, p)[1])


def row_basis_mod(rows: Matrix, p: int) -> Matrix:
    if not rows:
        return []
    R, piv = rref_mod(rows, p)
    return R[: len(piv)]


# -- integer lattices: HNF, SNF, LLL ------------------------------------


def hnf_rows(A: Matrix) -> Matrix:
    """Row Hermite normal form of an integer matrix (zero rows dropped)."""
    M = [list(r) for r in A if any(r)]
    if not M:
        return []
    cols = len(M[0])
    out_rows = []
    r = 0
    for c in range(cols):
        # gather a gcd in column c among rows r..
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[piv] = M[piv], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    out_rows = [row for row in M[:r]]
    return out_rows


def snf(A: Matrix):
    """Smith normal form with transforms: returns (U, D, V) with U*A*V = D diagonal.

    U and V are unimodular.  The diagonal entries are nonnegative and each
    divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility condition
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def smith_diagonal(A: Matrix) -> list[int]:
    if not A:
        return []
    _, D, _ = snf(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def integer_kernel(A: Matrix, n: int | None = None) -> Matrix:
    """Z-basis (rows) of {x in Z^n : A x = 0}."""
    if not A:
        return identity(n)
    n = len(A[0])
    _, D, V = snf(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    return [[V[row][c] for row in range(n)] for c in range(r, n)]


def saturate(rows: Matrix, n: int) -> Matrix:
    """Z-basis of (Q-span of rows) intersected with Z^n."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    K = kernel(rows)  # orthogonal complement over Q
    if not K:
        return identity(n)
    Kint = [_clear_denominators(v) for v in K]
    return hnf_rows(integer_kernel(Kint))


def _clear_denominators(v) -> list[int]:
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def lll(B: Matrix, delta: Fraction = Fraction(3, 4)) -> Matrix:
    """LLL-reduce the linearly independent integer row basis B.

    All-integer variant with incrementally updated Gram-Schmidt data
    (subdeterminants ``d`` and scaled coefficients ``lam``).
    """
    b = [list(r) for r in B]
    n = len(b)
    if n <= 1:
        return b
    num, den = Fraction(delta).numerator, Fraction(delta).denominator

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    d = [1] + [0] * n  # d[i] = product of the first i squared Gram-Schmidt norms
    lam = [[0] * n for _ in range(n)]
    d[1] = dot(b[0], b[0])

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        mu = lam[k][k - 1]
        nb = (d[k - 1] * d[k + 1] + mu * mu) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - mu * t) // d[k]
            lam[i][k - 1] = (nb * t + mu * lam[i][k]) // d[k + 1]
        d[k] = nb

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("rows are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b


def gram_schmidt_norms(B: Matrix) -> list[Fraction]:
    """Squared norms |b_i*|^2 of the Gram-Schmidt vectors."""
    Bs = []
    out = []
    for b in B:
        v = [Fraction(x) for x in b]
        for u, nu in zip(Bs, out):
            if nu:
                c = sum(x * y for x, y in zip(b, u)) / nu
                v = [a - c * w for a, w in zip(v, u)]
        Bs.append(v)
        out.append(sum(x * x for x in v))
    return out
