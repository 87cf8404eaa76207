"""Local densities of the shifted lattice at each prime.

Two independent routes are provided and cross-checked everywhere:

* `local_density` evaluates the closed forms, one branch per divisibility
  case (p = 2; odd p dividing m-2; odd p dividing neither m-2 nor m-4; odd
  p dividing m-4).
* `local_density_oracle` counts solutions of the defining congruence
      sum_j (2(m-2) d_j x_j + 4 - m)^2 = h  (mod p^t)
  over (Z/p^t)^3 and divides by p^(2t), certifying stabilization by
  recomputing at t+1.  The count itself is exact (recursive Hensel descent
  with a brute-force base case), so no Gauss-sum shortcuts are shared with
  the closed forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import kronecker
from .polygonal import DivisorTriple, PolygonalFamily, TargetInvariants


class StabilizationError(ValueError):
    """Raised when the congruence count has not stabilized at the given t."""


@dataclass(frozen=True)
class LocalDensityQuery:
    family: PolygonalFamily
    target: TargetInvariants
    d: DivisorTriple
    p: int


def psi_h(target: TargetInvariants, p: int) -> int:
    """Primitive character attached to -h, evaluated at p."""
    return kronecker(target.disc.delta, p)


def _ord(p: int, x: int) -> int:
    if x == 0:
        raise ValueError("ord_p(0) is infinite")
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def _pw(p: int, k: int) -> Fraction:
    return Fraction(p**k) if k >= 0 else Fraction(1, p**-k)


def gamma_p(target: TargetInvariants, p: int) -> Fraction:
    """Shimura's gamma factor at an odd prime (equals 1 when p does not divide h)."""
    if p == 2:
        raise ValueError("gamma_p is defined for odd primes only")
    a = _ord(p, target.h)
    psi = psi_h(target, p)
    fl = a // 2
    num = 1 - _pw(p, -(fl + 1)) - Fraction(psi, p) * (1 - _pw(p, -fl))
    return num / (1 - Fraction(1, p))


def local_density(query: LocalDensityQuery) -> Fraction:
    """Closed-form local density b_p(h, lambda_d, 0).

    Only primes dividing 2(m-2)d1d2d3 are accepted; other primes enter the
    Siegel product through gamma_p instead, and conflating the two paths is
    a classic source of mass-formula bugs.
    """
    fam, tgt, d, p = query.family, query.target, query.d, query.p
    m = fam.m
    if (2 * (m - 2) * d.product) % p != 0:
        raise ValueError(f"p={p} does not divide 2(m-2)d1d2d3; use gamma_p")

    if p == 2:
        g = min(_ord(2, dj) for dj in d.parts)
        n = tgt.n
        ok = n == 0 or 3 + _ord(2, n) >= 2 + g
        return Fraction(1 << (2 + g)) if ok else Fraction(0)

    ords = tuple(_ord(p, dj) for dj in d.parts)
    if (m - 2) % p == 0:
        g = min(ords)
        n = tgt.n
        ok = n == 0 or _ord(p, n) >= g
        return _pw(p, _ord(p, m - 2) + g) if ok else Fraction(0)

    if max(ords) > 1:
        raise ValueError("odd divisor parts must be squarefree for this branch")
    k_div = sum(1 for e in ords if e)  # number of coordinates with p | d_j
    if (m - 4) % p != 0:
        k_free = 3 - k_div
        N = 8 * (m - 2) * tgt.n + k_free * (m - 4) ** 2
        if k_free == 2:
            tail = (p - 1) if N % p == 0 else -1
            return 1 + Fraction(kronecker(-1, p) * tail, p)
        if k_free == 1:
            return Fraction(1 + kronecker(N, p))
        return Fraction(p) if N % p == 0 else Fraction(0)

    # p | (m-4), p does not divide m-2
    a = _ord(p, tgt.h)
    u = tgt.h // p**a
    sg = kronecker(-u, p) if a % 2 == 0 else -1
    if k_div == 1:
        if a >= 2:
            return (
                2
                + (1 - Fraction(1, p)) * kronecker(-1, p)
                - _pw(p, -(a // 2))
                + sg * _pw(p, -((a + 1) // 2))
            )
        if a == 1:
            return (1 - Fraction(1, p)) * (1 + kronecker(-1, p))
        return 1 - Fraction(kronecker(-1, p), p)
    if k_div == 2:
        if a >= 2:
            return 1 + p - _pw(p, -(a // 2 - 1)) + sg * _pw(p, -((a + 1) // 2 - 1))
        if a == 1:
            return Fraction(0)
        return Fraction(1 + kronecker(u, p))
    # k_div == 3
    if a >= 2:
        return p * p + p - _pw(p, -(a // 2 - 2)) + sg * _pw(p, -((a + 1) // 2 - 2))
    return Fraction(0)


# ---------------------------------------------------------------------------
# congruence-count oracle
# ---------------------------------------------------------------------------

_FOLD_LIMIT = 4096
_memo: dict[tuple, int] = {}


def _count_brute(p: int, t: int, q: tuple[int, ...], l: tuple[int, ...], c: int) -> int:
    """Reference triple loop (kept for testing the fast counters)."""
    mod = p**t
    total = 0
    for xs in itertools.product(range(mod), repeat=len(q)):
        acc = c
        for qi, li, x in zip(q, l, xs):
            acc += qi * x * x + li * x
        if acc % mod == 0:
            total += 1
    return total


def _count_fold(p: int, t: int, q: tuple[int, ...], l: tuple[int, ...], c: int) -> int:
    """Exact count by convolving per-coordinate value tables.

    Tables are packed into big integers (one fixed-width slot per residue),
    so the convolution is a single integer multiplication and only the slots
    congruent to -c need to be read back.
    """
    mod = p**t
    k = len(q)
    if k == 0:
        return 1 if c % mod == 0 else 0
    width = ((mod**k).bit_length() + 15) // 8  # bytes per slot, no overflow
    packed = 1
    for qi, li in zip(q, l):
        tab = [0] * mod
        for x in range(mod):
            tab[(qi * x * x + li * x) % mod] += 1
        packed *= int.from_bytes(
            b"".join(v.to_bytes(width, "little") for v in tab), "little"
        )
    target = (-c) % mod
    shift = 8 * width
    slot_mask = (1 << shift) - 1
    total = 0
    for i in range(target, k * (mod - 1) + 1, mod):
        total += (packed >> (i * shift)) & slot_mask
    return total


def _count_poly(p: int, t: int, q: tuple[int, ...], l: tuple[int, ...], c: int) -> int:
    """Solutions x in (Z/p^t)^k of sum q_j x_j^2 + l_j x_j + c = 0 (mod p^t)."""
    k = len(q)
    if t == 0:
        return 1
    mod = p**t
    c %= mod
    q = tuple(qi % mod for qi in q)
    l = tuple(li % mod for li in l)
    # coordinates the polynomial no longer sees are free
    keep = [j for j in range(k) if q[j] or l[j]]
    free = k - len(keep)
    if free:
        return mod**free * _count_poly(p, t, tuple(q[j] for j in keep), tuple(l[j] for j in keep), c)
    key = (p, t, tuple(sorted(zip(q, l))), c)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if mod <= _FOLD_LIMIT or t == 1:
        out = _count_fold(p, t, q, l, c)
        _memo[key] = out
        return out
    total = 0
    for a in itertools.product(range(p), repeat=k):
        ga = c
        for qi, li, ai in zip(q, l, a):
            ga += qi * ai * ai + li * ai
        if ga % p:
            continue
        grads = [2 * qi * ai + li for qi, li, ai in zip(q, l, a)]
        if any(g % p for g in grads):
            # a unit partial derivative pins one coordinate (Hensel)
            total += p ** ((k - 1) * (t - 1))
        else:
            if ga % (p * p):
                continue
            total += p**k * _count_poly(
                p, t - 2, q, tuple(g // p for g in grads), ga // (p * p)
            )
    _memo[key] = total
    return total


def _count_affine_squares(
    p: int, t: int, coeffs: tuple[int, int, int], shift: int, h: int
) -> int:
    """#{x mod p^t : sum (coeffs_j x_j + shift)^2 = h (mod p^t)}."""
    q = tuple(a * a for a in coeffs)
    l = tuple(2 * a * shift for a in coeffs)
    c = len(coeffs) * shift * shift - h
    return _count_poly(p, t, q, l, c)


def spec_default_precision(query: LocalDensityQuery) -> int:
    """Conservative stabilization exponent from the discriminant data."""
    m = query.family.m
    val = 16 * (m - 2) ** 2 * query.d.product**2 * query.target.h
    return _ord(query.p, val) + 2


def stabilization_bound(query: LocalDensityQuery) -> int:
    """Proven exponent past which the density is constant.

    Suppose every partial derivative 2 p^{e_j}(p^{e_j} y_j + b) has
    valuation at least V = ceil((t+1)/2) at a solution; then each value
    Y_j = p^{e_j} y_j + b has ord >= V - e_max - ord_p(2), so the sum of
    their squares has valuation > ord_p(h) once
    t >= 2 floor(ord_p(h)/2) + 2 max_j e_j + 2 ord_p(2), contradicting
    sum Y_j^2 = h (mod p^t).  Past that point every solution class lifts
    p^2-to-1 (Hensel) and count / p^(2t) is frozen.  The bound never
    exceeds the discriminant bound of spec_default_precision.
    """
    m = query.family.m
    p = query.p
    emax = max(_ord(p, 2 * (m - 2) * dj) for dj in query.d.parts)
    t = 2 * (_ord(p, query.target.h) // 2) + 2 * emax + 2 * _ord(p, 2)
    return max(t, 1)


def local_density_oracle(query: LocalDensityQuery, t: int | None = None) -> Fraction:
    """Stabilized congruence-count density, independent of the closed forms.

    With explicit t the density is compared at t and t+1 and a
    StabilizationError is raised on disagreement.  With t=None the proven
    stabilization_bound is used (always certified against the next level,
    with a defensive escalation loop that the bound makes unreachable).
    """
    fam, tgt, d, p = query.family, query.target, query.d, query.p
    m = fam.m
    coeffs = tuple(2 * (m - 2) * dj for dj in d.parts)
    shift = 4 - m

    def density(tt: int) -> Fraction:
        cnt = _count_affine_squares(p, tt, coeffs, shift, tgt.h)
        return Fraction(cnt, p ** (2 * tt))

    if t is not None:
        if t < 1:
            raise ValueError("t must be at least 1")
        v0, v1 = density(t), density(t + 1)
        if v0 != v1:
            raise StabilizationError(
                f"density not stabilized at t={t} for p={p}: {v0} vs {v1}"
            )
        return v0

    tt = stabilization_bound(query)
    for _ in range(6):
        v0, v1 = density(tt), density(tt + 1)
        if v0 == v1:
            return v0
        tt += 2
    raise StabilizationError(f"density failed to stabilize near t={tt} for p={p}")
