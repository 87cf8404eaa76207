"""Exact integer arithmetic substrate.

Factorization (trial division + Pollard rho, verified by multiplication),
prime counting functions, the Kronecker--Jacobi--Legendre symbol, squarefree
parts, and fundamental discriminant decompositions.  All rational values in
the package are `fractions.Fraction`; nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

_TRIAL_BOUND = 10**6
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)  # increments mod 30 starting from 7

# Deterministic Miller-Rabin witness set for n < 3.3e24 (covers every input
# the package factors; 128-bit magnitudes get the same witnesses plus rho
# verification by multiplication).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def smallest_prime_factors(limit: int) -> list[int]:
    """spf[k] = smallest prime factor of k (spf[0]=0, spf[1]=1)."""
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for k in range(p * p, limit + 1, p):
                if spf[k] == k:
                    spf[k] = p
    return spf


def _pollard_brent(n: int) -> int:
    """Nontrivial factor of composite odd n (Brent cycle finding)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
        c += 1  # rare cycle degeneracy; restart with a new constant


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its canonical factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be strictly increasing with exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError("factorization does not reconstruct the value")

    def ord(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def sigma0(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out

    @property
    def sigma_minus1(self) -> Fraction:
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p ** (e + 1) - 1, p**e * (p - 1))
        return out

    @property
    def euler_phi(self) -> int:
        out = self.value
        for p, _ in self.factors:
            out = out // p * (p - 1)
        return out

    @property
    def radical(self) -> int:
        out = 1
        for p, _ in self.factors:
            out *= p
        return out

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def factorize(x: int) -> FactoredInteger:
    """Canonical factorization of x >= 1.

    Trial division (with a mod-30 wheel) below 10**6, Pollard rho above;
    the result is verified by multiplication in FactoredInteger.
    """
    if x < 1:
        raise ValueError("factorize requires a positive integer")
    if x >= 1 << 128:
        raise ValueError("factorize supports magnitudes below 2**128")
    n = x
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    d = 7
    i = 0
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += _WHEEL[i]
        i = (i + 1) & 7
    # residual cofactor: prime, or split by rho
    stack = [n] if n > 1 else []
    while stack:
        n = stack.pop()
        if n == 1:
            continue
        if is_prime(n):
            found[n] = found.get(n, 0) + 1
            continue
        g = _pollard_brent(n)
        stack.append(g)
        stack.append(n // g)
    return FactoredInteger(x, tuple(sorted(found.items())))


def big_omega(x: int) -> int:
    """Omega(|x|): number of prime factors counted with multiplicity."""
    if x == 0:
        raise ValueError("big_omega(0) is undefined (every prime divides 0)")
    return factorize(abs(x)).big_omega


def squarefree_part(h: int) -> int:
    """Product of the primes dividing h to an odd power."""
    if h < 1:
        raise ValueError("squarefree_part requires a positive integer")
    out = 1
    for p, e in factorize(h).factors:
        if e & 1:
            out *= p
    return out


def kronecker(a: int, b: int) -> int:
    """Kronecker--Jacobi--Legendre symbol (a|b), completely multiplicative."""
    if b == 0:
        return 1 if a in (1, -1) else 0
    res = 1
    if b < 0:
        b = -b
        if a < 0:
            res = -res
    tz = (b & -b).bit_length() - 1
    if tz:
        if a % 2 == 0:
            return 0
        if tz & 1 and a % 8 in (3, 5):
            res = -res
        b >>= tz
    a %= b
    while a:
        tz = (a & -a).bit_length() - 1
        if tz:
            a >>= tz
            if tz & 1 and b % 8 in (3, 5):
                res = -res
        if a % 4 == 3 and b % 4 == 3:
            res = -res
        a, b = b % a, a
    return res if b == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        return squarefree_part(abs(d)) == abs(d)
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and squarefree_part(abs(q)) == abs(q)
    return False


@dataclass(frozen=True)
class DiscriminantDecomposition:
    """h = |delta| * t**2 with delta < 0 a fundamental discriminant."""

    delta: int
    t: int

    def __post_init__(self):
        if self.delta >= 0 or self.t < 1:
            raise ValueError("need delta < 0 and t >= 1")
        if not is_fundamental_discriminant(self.delta):
            raise ValueError(f"{self.delta} is not a fundamental discriminant")

    @property
    def h(self) -> int:
        return -self.delta * self.t * self.t


def fundamental_decomposition(h: int) -> DiscriminantDecomposition:
    """Write -h = delta * t**2 with delta a fundamental discriminant.

    Raises ValueError when no such decomposition with integer t exists
    (never happens for the h = 3 mod 8 family this package targets).
    """
    if h < 1:
        raise ValueError("fundamental_decomposition requires a positive integer")
    s = squarefree_part(h)
    t = math.isqrt(h // s)
    if (-s) % 4 == 1:
        return DiscriminantDecomposition(-s, t)
    if t % 2 == 0:
        return DiscriminantDecomposition(-4 * s, t // 2)
    raise ValueError(f"-{h} admits no fundamental decomposition delta * t**2")


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solutions of a*x = b (mod m) as (x0, step), or None if unsolvable."""
    g = math.gcd(a, m)
    if b % g:
        return None
    mm = m // g
    x0 = (b // g) * pow(a // g, -1, mm) % mm
    return x0, mm
