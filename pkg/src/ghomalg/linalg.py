"""Exact dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p). All
arithmetic is exact: a dot product of length n over entries < p stays below
n * p^2, far inside int64 range for the desk-scale dimensions this package
targets (p around 1000, n below a few thousand).

Vectors are columns. Every function takes the prime explicitly; nothing in
this module holds state. Elimination order is deterministic (first usable
pivot row, columns left to right), so bases returned here are reproducible
across runs, which the certificate layer relies on.

The polynomial helpers at the bottom operate on 1-d coefficient arrays in
ascending degree order and exist for minimal-polynomial splitting in the
idempotent machinery.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 1009


def normalize(mat, p: int) -> np.ndarray:
    """Return mat as an int64 array with entries reduced into [0, p)."""
    return np.asarray(mat, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return (a @ b) % p


def inv_mod(x: int, p: int) -> int:
    # p is prime, so Fermat suffices and avoids sign issues of xgcd.
    return pow(int(x) % p, p - 2, p)


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns (R, pivot_cols). R has the same shape as mat, pivots are 1 with
    zeros above and below, and pivot_cols lists pivot column indices in
    increasing order. rank(mat) == len(pivot_cols).
    """
    r = normalize(mat, p).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        sub = r[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        pivot_row = row + int(nz[0])
        if pivot_row != row:
            r[[row, pivot_row]] = r[[pivot_row, row]]
        r[row] = (r[row] * inv_mod(r[row, col], p)) % p
        other = np.nonzero(r[:, col])[0]
        other = other[other != row]
        if other.size:
            r[other] = (r[other] - np.outer(r[other, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def kernel_basis(mat, p: int) -> np.ndarray:
    """Columns spanning {x : mat @ x = 0}, ordered by free column index."""
    mat = normalize(mat, p)
    rows, cols = mat.shape
    r, pivots = rref(mat, p)
    free = [j for j in range(cols) if j not in pivots]
    basis = zeros(cols, len(free))
    for idx, j in enumerate(free):
        basis[j, idx] = 1
        for pi, pc in enumerate(pivots):
            basis[pc, idx] = (-r[pi, j]) % p
    return basis


def solve(mat, rhs, p: int) -> np.ndarray | None:
    """One solution of mat @ x = rhs (columns of rhs solved jointly), or None.

    rhs may be a vector or a matrix; the result matches its shape.
    """
    mat = normalize(mat, p)
    rhs_arr = normalize(rhs, p)
    vector_input = rhs_arr.ndim == 1
    if vector_input:
        rhs_arr = rhs_arr.reshape(-1, 1)
    rows, cols = mat.shape
    aug = np.hstack([mat, rhs_arr])
    r, pivots = rref(aug, p)
    mat_pivots = [c for c in pivots if c < cols]
    if len(mat_pivots) != len(pivots):
        return None  # a pivot fell into the rhs block: inconsistent system
    x = zeros(cols, rhs_arr.shape[1])
    for pi, pc in enumerate(mat_pivots):
        x[pc] = r[pi, cols:]
    return x[:, 0] if vector_input else x


def solve_and_kernel(mat, rhs, p: int):
    """(particular solution or None, kernel basis) for mat @ x = rhs."""
    return solve(mat, rhs, p), kernel_basis(mat, p)


def is_invertible(mat, p: int) -> bool:
    mat = np.asarray(mat)
    return mat.shape[0] == mat.shape[1] and rank(mat, p) == mat.shape[0]


def inverse(mat, p: int) -> np.ndarray:
    mat = normalize(mat, p)
    n = mat.shape[0]
    if mat.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([mat, identity(n)]), p)
    if len([c for c in pivots if c < n]) != n:
        raise ValueError("matrix is singular")
    return r[:, n:]


def column_space_basis(mat, p: int) -> np.ndarray:
    """Subset of mat's columns forming a basis of its column space."""
    mat = normalize(mat, p)
    _, pivots = rref(mat, p)
    return mat[:, pivots]


def complement_basis(cols, dim: int, p: int) -> np.ndarray:
    """Standard-basis columns completing `cols` to a basis of F_p^dim.

    `cols` must have independent columns. Chosen deterministically: the
    non-pivot coordinates of rref([cols | I]).
    """
    cols = normalize(cols, p)
    if cols.size == 0:
        cols = zeros(dim, 0)
    cols = cols.reshape(dim, -1) if dim else zeros(0, 0)
    k = cols.shape[1]
    _, pivots = rref(np.hstack([cols, identity(dim)]), p)
    extra = [c - k for c in pivots if c >= k]
    out = zeros(dim, len(extra))
    for idx, e in enumerate(extra):
        out[e, idx] = 1
    return out


def coordinates_in_basis(basis, vecs, p: int) -> np.ndarray:
    """Coordinates of vecs (columns) in the given independent column basis.

    Raises ValueError when some column lies outside the span.
    """
    x = solve(basis, vecs, p)
    if x is None:
        raise ValueError("vector outside the span of the basis")
    return x


def in_span(basis, vec, p: int) -> bool:
    return solve(basis, vec, p) is not None


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


# ---------------------------------------------------------------------------
# polynomials over F_p: coefficient arrays, ascending degree, trimmed


def poly_trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.nonzero(f)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=np.int64)
    return f[: int(nz[-1]) + 1]


def poly_deg(f) -> int:
    f = poly_trim(f)
    return 0 if f.size == 1 and f[0] == 0 else f.size - 1


def poly_is_zero(f) -> bool:
    return bool(np.all(poly_trim(f) == 0))


def poly_mul(f, g, p: int) -> np.ndarray:
    f, g = poly_trim(f) % p, poly_trim(g) % p
    if poly_is_zero(f) or poly_is_zero(g):
        return np.zeros(1, dtype=np.int64)
    return poly_trim(np.convolve(f, g) % p)


def poly_divmod(f, g, p: int) -> tuple[np.ndarray, np.ndarray]:
    f = poly_trim(f) % p
    g = poly_trim(g) % p
    if poly_is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    dg = g.size - 1
    q = np.zeros(max(f.size - dg, 1), dtype=np.int64)
    r = f.copy()
    lead_inv = inv_mod(int(g[-1]), p)
    while not poly_is_zero(r) and r.size - 1 >= dg:
        shift = r.size - 1 - dg
        c = (int(r[-1]) * lead_inv) % p
        q[shift] = c
        r[shift : shift + dg + 1] = (r[shift : shift + dg + 1] - c * g) % p
        r = poly_trim(r)
    return poly_trim(q), poly_trim(r)


def poly_gcd(f, g, p: int) -> np.ndarray:
    f, g = poly_trim(f) % p, poly_trim(g) % p
    while not poly_is_zero(g):
        f, g = g, poly_divmod(f, g, p)[1]
    if poly_is_zero(f):
        return f
    return (f * inv_mod(int(f[-1]), p)) % p  # monic


def poly_add(f, g, p: int) -> np.ndarray:
    f, g = poly_trim(f) % p, poly_trim(g) % p
    n = max(f.size, g.size)
    out = np.zeros(n, dtype=np.int64)
    out[: f.size] += f
    out[: g.size] += g
    return poly_trim(out % p)


def poly_sub(f, g, p: int) -> np.ndarray:
    f, g = poly_trim(f) % p, poly_trim(g) % p
    n = max(f.size, g.size)
    out = np.zeros(n, dtype=np.int64)
    out[: f.size] += f
    out[: g.size] -= g
    return poly_trim(out % p)


def poly_xgcd(f, g, p: int):
    """(d, s, t) with s*f + t*g = d and d the monic gcd."""
    r0, r1 = poly_trim(f) % p, poly_trim(g) % p
    s0, s1 = np.array([1], dtype=np.int64), np.array([0], dtype=np.int64)
    t0, t1 = np.array([0], dtype=np.int64), np.array([1], dtype=np.int64)
    while not poly_is_zero(r1):
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if poly_is_zero(r0):
        return r0, s0, t0
    c = inv_mod(int(r0[-1]), p)
    scale = np.array([c], dtype=np.int64)
    return poly_mul(r0, scale, p), poly_mul(s0, scale, p), poly_mul(t0, scale, p)


def poly_mod(f, g, p: int) -> np.ndarray:
    return poly_divmod(f, g, p)[1]


def poly_derivative(f, p: int) -> np.ndarray:
    f = poly_trim(f) % p
    if len(f) <= 1:
        return np.zeros(1, dtype=np.int64)
    return poly_trim((f[1:] * np.arange(1, len(f), dtype=np.int64)) % p)


def poly_powmod(f, e: int, g, p: int) -> np.ndarray:
    """f^e mod g by square and multiply."""
    result = np.array([1], dtype=np.int64)
    base = poly_mod(f, g, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), g, p)
        base = poly_mod(poly_mul(base, base, p), g, p)
        e >>= 1
    return result


def poly_eval_scalar_batch(f, xs, p: int) -> np.ndarray:
    """Evaluate f at every scalar in xs (Horner, vectorized)."""
    f = poly_trim(f) % p
    xs = np.asarray(xs, dtype=np.int64) % p
    acc = np.zeros_like(xs)
    for c in f[::-1]:
        acc = (acc * xs + int(c)) % p
    return acc


def minimal_polynomial(mat, p: int) -> np.ndarray:
    """Monic minimal polynomial of a square matrix over F_p.

    Krylov approach on the full matrix space: stack vec(mat^k) until linear
    dependence; the first dependence gives the minimal polynomial.
    """
    mat = normalize(mat, p)
    n = mat.shape[0]
    if n == 0:
        return np.array([0, 1], dtype=np.int64)
    powers = [identity(n)]
    vecs = [powers[0].reshape(-1)]
    current = identity(n)
    for _ in range(n * n + 1):
        current = matmul(current, mat, p)
        stacked = np.stack(vecs, axis=1)
        coeffs = solve(stacked, current.reshape(-1), p)
        if coeffs is not None:
            poly = np.zeros(len(vecs) + 1, dtype=np.int64)
            poly[: len(vecs)] = (-coeffs) % p
            poly[len(vecs)] = 1
            return poly_trim(poly)
        powers.append(current)
        vecs.append(current.reshape(-1))
    raise AssertionError("minimal polynomial search exceeded matrix-space bound")
