"""Finite fields F_q, q = p^e.

Elements are plain Python ints in ``range(q)``.  For ``e == 1`` the int is
the residue mod p.  For ``e > 1`` the int encodes the coordinate vector
over F_p in base p: ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}`` stands for
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` modulo a fixed irreducible
polynomial (see :func:`conway_free_modulus`).

All array methods accept and return ``numpy.int64`` arrays so that the
polynomial classes can stay vectorised for every q.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

MAX_Q = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1 or not is_prime(p):
        raise ValueError(f"q={q} is not a prime power")
    return p, e


def _polymulmod_p(a, b, mod, p):
    # a, b: coefficient lists (low first) over F_p; mod monic
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    e = len(mod) - 1
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            for j in range(e + 1):
                out[i - e + j] = (out[i - e + j] - c * mod[j]) % p
    return (out[:e] + [0] * e)[:e]


def _is_irreducible(mod, p):
    """Rabin-style check by brute force on roots of x^(p^i) - x (small e only)."""
    e = len(mod) - 1
    # x^(p^k) mod f for k=1..e; f irreducible iff x^(p^e) = x and
    # gcd(x^(p^(e/r)) - x, f) = 1 for primes r | e.  For the small degrees we
    # support a direct factor search over lower-degree monics is simpler.
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if _divides(g, mod, p):
                return False
    return True


def _divides(g, f, p):
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return not any(f[:dg])


def conway_free_modulus(p: int, e: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree e over F_p.

    Chosen among the irreducibles with the fewest nonzero coefficients; ties
    broken by the smallest base-p integer encoding of the non-leading
    coefficients.  Returned low-degree first, leading 1 included.
    """
    for weight in range(2, e + 2):
        best = None
        for tail in itertools.product(range(p), repeat=e):
            if tail[0] == 0:
                continue
            if 1 + sum(1 for c in tail if c) != weight:
                continue
            code = sum(c * p**i for i, c in enumerate(tail))
            if best is not None and code >= best[0]:
                continue
            mod = list(tail) + [1]
            if _is_irreducible(mod, p):
                best = (code, tuple(mod))
        if best is not None:
            return best[1]
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field with ``q = p**e`` elements."""

    def __init__(self, q: int):
        p, e = prime_power(q)
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported bound {MAX_Q}")
        self.q, self.p, self.e = q, p, e
        self.prime = e == 1
        self.modulus = (0, 1) if self.prime else conway_free_modulus(p, e)
        if self.prime:
            self._inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
        else:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))

    # -- construction helpers for e > 1

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _undigits(self, ds):
        return sum(int(c) * self.p**i for i, c in enumerate(ds))

    def _slow_mul(self, a, b):
        return self._undigits(
            _polymulmod_p(self._digits(a), self._digits(b), list(self.modulus), self.p))

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                exp.append(x)
            if len(set(exp)) == q - 1:
                break
        else:  # pragma: no cover - q=4 hits g=2 always
            raise AssertionError("no primitive element")
        self.generator = g
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = self._exp[(q - 1 - log[nz]) % (q - 1)]
        self._inv = inv

    # -- scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.prime:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.vadd(np.int64(a), np.int64(b)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.prime:
            return (-a) % self.p
        return int(self.vneg(np.int64(a)))

    def mul(self, a: int, b: int) -> int:
        if self.prime:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self._inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def elements(self):
        return range(self.q)

    # -- vectorised arithmetic on int64 arrays

    def vadd(self, a, b):
        if self.prime:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.e):
            w = self.p**i
            out += ((a // w + b // w) % self.p) * w
        return out

    def vneg(self, a):
        if self.prime:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = np.zeros(np.shape(a), dtype=np.int64)
        for i in range(self.e):
            w = self.p**i
            out += ((-(a // w)) % self.p) * w
        return out

    def vsub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vscale(self, c: int, a):
        if c == 1:
            return a
        if c == 0:
            return np.zeros_like(a)
        if self.prime:
            return (a * c) % self.p
        return self.vmul(np.int64(c), a)

    def vsum(self, a, axis=0):
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.prime:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        out = 0
        for i in range(self.e):
            w = self.p**i
            out = out + ((a // w) % self.p).sum(axis=axis) % self.p * w
        return np.asarray(out, dtype=np.int64)

    def vinv(self, a):
        return self._inv[a]

    def vfrom_int(self, a):
        return np.asarray(a, dtype=np.int64) % self.p

    def conv(self, a, b):
        """Full linear convolution of two coefficient arrays."""
        la, lb = len(a), len(b)
        if la == 0 or lb == 0:
            return np.zeros(0, dtype=np.int64)
        if self.prime:
            if min(la, lb) > KARATSUBA_THRESHOLD:
                return _karatsuba(self, a, b)
            return np.convolve(a, b) % self.p
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = np.zeros(la + lb - 1, dtype=np.int64)
        for j in np.flatnonzero(b):
            out[j:j + la] = self.vadd(out[j:j + la], self.vscale(int(b[j]), a))
        return out


KARATSUBA_THRESHOLD = 2048


def _karatsuba(F: GF, a, b):
    la, lb = len(a), len(b)
    if min(la, lb) <= KARATSUBA_THRESHOLD:
        return np.convolve(a, b) % F.p
    h = max(la, lb) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    if len(a1) == 0 or len(b1) == 0:
        # unbalanced: split only the long operand
        long_, short = (a, b) if la > lb else (b, a)
        out = np.zeros(la + lb - 1, dtype=np.int64)
        step = len(short)
        for i in range(0, len(long_), step):
            piece = _karatsuba(F, long_[i:i + step], short)
            out[i:i + len(piece)] += piece
        return out % F.p
    z0 = _karatsuba(F, a0, b0)
    z2 = _karatsuba(F, a1, b1)
    sa = _padd(a0, a1) % F.p
    sb = _padd(b0, b1) % F.p
    z1 = _karatsuba(F, sa, sb)
    z1 = _padd(z1, -_padd(z0, z2))
    out = np.zeros(la + lb - 1, dtype=np.int64)
    out[:len(z0)] += z0
    out[h:h + len(z1)] += z1
    out[2 * h:2 * h + len(z2)] += z2
    return out % F.p


def _padd(x, y):
    if len(x) < len(y):
        x, y = y, x
    out = x.copy()
    out[:len(y)] += y
    return out


@functools.cache
def field(q: int) -> GF:
    """Shared field instance for q."""
    return GF(q)
