"""Transport matrices, the S and D scalars, and the matrix A = M1^T M2."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..exact import Fp, LaurentPoly, Ring, Sampler
from .plabic import build_plabic, z_points, z_ring

DEFAULT_SIZE_BOUND = 6


class SizeBoundExceeded(ValueError):
    pass


Matrix = list  # list[list[LaurentPoly | Fp | int]]


def transport(n: int, which: int, *, bound: int = DEFAULT_SIZE_BOUND) -> Matrix:
    """Entry (j, i) (1-based) is the sum of path weights from source i to target j."""
    if n > bound:
        raise SizeBoundExceeded(f"size-bound-exceeded: n={n} > {bound}")
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    g = build_plabic(n, "Phat" if which == 3 else "P")
    ring = g.ring
    target = "L" if which == 1 else "B"
    T = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        # left sources of P_hat are numbered from the bottom line up
        src = ("R", i) if which in (1, 2) else ("L", n + 1 - i)
        acc = g.path_sums(src)
        for j in range(1, n + 1):
            key = (target, j)
            if key in acc:
                T[j - 1][i - 1] = acc[key]
    return T


def s_matrix(n: int) -> list[list[int]]:
    return [[(-1) ** (n - i) if j == n + 1 - i else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]


def d_scalar(n: int, which: int, ring: Ring | None = None) -> LaurentPoly:
    """D_which as a monomial with k/n exponents; corner variables are absent.

    D3 is taken as D2/D1, the only choice (up to integral monomials) for which
    M2 = M3 M1 can hold; with it T2 = T3 S T1 exactly.
    """
    ring = ring or z_ring(n)
    if which == 3:
        return d_scalar(n, 2, ring) / d_scalar(n, 1, ring)
    powers = {}
    for a, b, c in z_points(n):
        k = (c, b)[which - 1]
        if k:
            powers[f"Z[{a},{b},{c}]"] = Fraction(k, n)
    return ring.monomial(powers)


# small dense matrix helpers; entries may be LaurentPoly, Fp or int


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = None
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if (isinstance(a, int) and a == 0) or (isinstance(b, int) and b == 0):
                    continue
                s = a * b if s is None else s + a * b
            row.append(0 if s is None else s)
        out.append(row)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_eval(A: Matrix, f) -> Matrix:
    return [[f(x) if isinstance(x, LaurentPoly) else x for x in row] for row in A]


def m_matrix(n: int, which: int, T: Matrix | None = None) -> Matrix:
    """M_i = S T_i D_i^{-1}, except M_3 = S^T T_3 D_3^{-1}.

    The transpose on M_3 is what produces the (-1)^(n-1) in
    A = (-1)^(n-1) T1^T T3 S T1 (D1^2 D3)^{-1}; with plain S the groupoid
    condition fails for even n.
    """
    T = T if T is not None else transport(n, which)
    D = d_scalar(n, which, T[0][0].ring)
    S = s_matrix(n)
    if which == 3:
        S = transpose(S)
    return mat_scale(mat_mul(S, T), D.monomial_inverse())


def a_matrix_z(n: int, *, bound: int = 5) -> Matrix:
    """A = M1^T M2 symbolically; raises if a strictly-lower entry survives."""
    if n > bound:
        raise SizeBoundExceeded(f"size-bound-exceeded: n={n} > {bound}")
    A = mat_mul(transpose(m_matrix(n, 1)), m_matrix(n, 2))
    for i in range(n):
        for j in range(i):
            if A[i][j] != 0:
                raise AssertionError(f"A[{i + 1},{j + 1}] is not zero")
    return A


def z_root_point(n: int, sampler: Sampler) -> list[Fp]:
    """Random (2n)-th roots for every Z variable, for eval_roots."""
    return sampler.point(len(z_points(n)))


def groupoid_residual(n: int, roots, T1, T2, T3) -> Matrix:
    """M2 - M3 M1 evaluated at Z = roots**(2n)."""
    ev = lambda x: x.eval_roots(roots)
    M1 = mat_eval(m_matrix(n, 1, T1), ev)
    M2 = mat_eval(m_matrix(n, 2, T2), ev)
    M3 = mat_eval(m_matrix(n, 3, T3), ev)
    R = mat_mul(M3, M1)
    return [[M2[i][j] - R[i][j] for j in range(n)] for i in range(n)]


def groupoid_condition_check(
    n: int,
    trials: int = 8,
    *,
    seed: int = 0,
    prime: int | None = None,
    symbolic: bool | None = None,
    T3: Matrix | None = None,
) -> bool:
    """M2 == M3 M1; symbolic for n == 3 (by default), sampled otherwise."""
    T1, T2 = transport(n, 1), transport(n, 2)
    T3 = T3 if T3 is not None else transport(n, 3)
    if symbolic if symbolic is not None else n <= 3:
        lhs = m_matrix(n, 2, T2)
        rhs = mat_mul(m_matrix(n, 3, T3), m_matrix(n, 1, T1))
        return all(lhs[i][j] == rhs[i][j] for i in range(n) for j in range(n))
    s = Sampler(seed, prime) if prime else Sampler(seed)
    for _ in range(trials):
        r = z_root_point(n, s)
        if any(x != 0 for row in groupoid_residual(n, r, T1, T2, T3) for x in row):
            return False
    return True


def rank_matrix(n: int, *, bound: int = 5) -> Matrix:
    """The symmetric matrix T3 S + (T3 S)^T."""
    if n > bound:
        raise SizeBoundExceeded(f"size-bound-exceeded: n={n} > {bound}")
    P = mat_mul(transport(n, 3), s_matrix(n))
    return mat_add(P, transpose(P))


def det_monomial(T: Matrix, roots: Sequence) -> object:
    """Field determinant at a point (Gaussian elimination)."""
    A = mat_eval(T, lambda x: x.eval_roots(roots))
    return field_det(A)


def field_det(A: Matrix):
    A = [list(r) for r in A]
    n = len(A)
    det = None
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        det = A[c][c] if det is None else det * A[c][c]
        inv = 1 / A[c][c] if not isinstance(A[c][c], int) else Fraction(1, A[c][c])
        for r in range(c + 1, n):
            if A[r][c] != 0:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det * sign
