"""Chebyshev-type polynomials, palindromic reduction and 2x2 helpers."""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly, Ring

T_RING = Ring(("t",))


@lru_cache(maxsize=None)
def _cheb_coeffs(k: int) -> tuple:
    # F_0 = 2, F_1 = t, F_{k+1} = t F_k - F_{k-1}
    if k == 0:
        return (2,)
    prev, cur = [2], [0, 1]
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return tuple(cur)


def chebyshev_coeffs(k: int) -> list[int]:
    """Coefficients (low to high) of F_k, with F_k(L + 1/L) = L^k + L^-k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return list(_cheb_coeffs(k))


def chebyshev_F(k: int) -> LaurentPoly:
    return LaurentPoly(T_RING, {(i,): c for i, c in enumerate(chebyshev_coeffs(k))})


def eval_coeffs(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class NotPalindromic(ValueError):
    pass


class NotDivisible(ValueError):
    pass


def _divide_by_lambda_plus_one(coeffs):
    # synthetic division by (L + 1); coefficients low to high
    hi = list(reversed(coeffs))
    out = [hi[0]]
    for c in hi[1:]:
        out.append(c - out[-1])
    rem = out.pop()
    if rem != 0:
        raise NotDivisible("polynomial not divisible by (lambda + 1)")
    return list(reversed(out))


def palindromic_to_t(coeffs, n: int | None = None):
    """Rewrite a palindromic polynomial in L as a polynomial in t = L + 1/L.

    ``coeffs`` are low to high, degree ``n``.  Even degree is divided by
    ``L^(n/2)``; odd degree first loses a factor ``(L + 1)``.  Returns
    coefficients of the t-polynomial, low to high.
    """
    coeffs = list(coeffs)
    if n is None:
        n = len(coeffs) - 1
    if len(coeffs) != n + 1:
        raise ValueError("need n+1 coefficients")
    for i in range(n + 1):
        if coeffs[i] != coeffs[n - i]:
            raise NotPalindromic(f"coefficient {i} differs from {n - i}")
    if n % 2:
        coeffs = _divide_by_lambda_plus_one(coeffs)
        n -= 1
    m = n // 2
    out = [0 * coeffs[0]] * (m + 1)
    out[0] = out[0] + coeffs[m]
    for k in range(1, m + 1):
        for i, c in enumerate(chebyshev_coeffs(k)):
            out[i] = out[i] + coeffs[m + k] * c
    return out


def mat2_mul(a, b):
    return [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]


def mat2_trace(a):
    return a[0][0] + a[1][1]


def mat2_det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat2_adj(a):
    """Adjugate; equals the inverse for unit determinant."""
    return [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]


def mat2_pow(a, k: int):
    out = [[1, 0], [0, 1]]
    for _ in range(k):
        out = mat2_mul(out, a)
    return out
