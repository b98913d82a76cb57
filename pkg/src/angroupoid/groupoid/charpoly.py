"""det(A + lambda A^T) at an evaluated point and its Casimir factorization."""

from __future__ import annotations

from ..an_quiver import cycle_count, cycle_length, x_label
from ..exact import Fp
from .geodesics import a_matrix_x, geodesic_ring
from .transport import field_det


def poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def interpolate(xs: list, ys: list) -> list:
    """Coefficients (low to high) of the polynomial through (xs, ys) over a field."""
    n = len(xs)
    coeffs = [ys[0] * 0] * n
    for i in range(n):
        num, den = [1], 1
        for j in range(n):
            if j != i:
                num = poly_mul(num, [-xs[j], 1])
                den = den * (xs[i] - xs[j])
        scale = ys[i] / den
        for k in range(n):
            coeffs[k] = coeffs[k] + num[k] * scale
    return coeffs


def lambda_poly(Aval: list[list]) -> list:
    """Coefficients of det(A + lambda A^T), low degree first.

    The determinant has degree n in lambda, so n+1 exact evaluations pin it
    down.
    """
    n = len(Aval)
    p = next(x.p for row in Aval for x in row if isinstance(x, Fp))
    xs = [Fp(t, p) for t in range(n + 1)]
    ys = []
    for lam in xs:
        M = [[Aval[i][j] + lam * Aval[j][i] for j in range(n)] for i in range(n)]
        ys.append(field_det(M))
    return interpolate(xs, ys)


def casimir_values(n: int, u) -> list:
    """K_i = prod_{j >= i} C_j at X = u**2 (u ordered like an_labels)."""
    ring = geodesic_ring(n)
    C = []
    for l in range(1, cycle_count(n) + 1):
        c = 1
        for j in range(1, cycle_length(n, l) + 1):
            c = c * u[ring.index[x_label(l, j)]] ** 2
        C.append(c)
    return [_prod(C[i:]) for i in range(len(C))]


def _prod(xs):
    out = 1
    for x in xs:
        out = out * x
    return out


def casimir_product_poly(n: int, K: list) -> list:
    """(lambda+1) prod (lambda+K)(lambda+1/K) for odd n, prod (lambda-K)(lambda-1/K) for even n."""
    sign = 1 if n % 2 else -1
    out = [1, 1] if n % 2 else [1]
    for k in K:
        out = poly_mul(out, poly_mul([sign * k, 1], [sign / k, 1]))
    return out


def charpoly_factor_check(n: int, u) -> bool:
    """Compare det(A + lambda A^T) with the Casimir product and check palindromy."""
    A = a_matrix_x(n)
    Aval = [[x.eval_roots(u) for x in row] for row in A]
    lhs = lambda_poly(Aval)
    rhs = casimir_product_poly(n, casimir_values(n, u))
    palin = all(lhs[i] == lhs[n - i] for i in range(n + 1))
    return palin and all(a == b for a, b in zip(lhs, rhs))
