"""Exact arithmetic in GF(q), q = p^k.

Elements are stored as integer codes in ``[0, q)``.  For a prime field the
code is the residue itself.  For an extension field the code packs the
coefficient vector (low degree first) in base ``p``: the element
``c0 + c1 x + ... + c_{k-1} x^{k-1}`` has code ``c0 + c1 p + ... ``.

Extension-field multiplication goes through log/antilog tables built once per
field; addition is digit-wise mod ``p``.  The vectorised ``v*`` methods accept
numpy arrays (or ints) of codes, the scalar methods return plain ints.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import UsageError

MAX_Q = 1 << 16
TABLE_Q = 256  # full q×q add/mul tables are only built up to this size

# Conway polynomials, coefficients low degree first.
DEFAULT_MODULI = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2
}
BUILTIN_Q = (2, 3, 4, 5, 7, 8, 9)


def is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r == 1:
                return p, k
            break
    raise UsageError(f"{q} is not a prime power")


# --- polynomials over GF(p), coefficient lists low degree first -------------


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _poly_trim(a)
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = _poly_trim(modulus)
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def first_irreducible(p, k):
    for low in itertools.product(range(p), repeat=k):
        cand = list(reversed(low)) + [1]
        if cand[0] != 0 and is_irreducible(cand, p):
            return tuple(cand)
    raise UsageError(f"no irreducible polynomial of degree {k} over GF({p})")


# --- fields -------------------------------------------------------------------


class FieldSpec:
    """The finite field GF(p^k).  Immutable once built; obtain via :func:`field`."""

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise UsageError(f"characteristic {p} is not prime")
        if k < 1:
            raise UsageError("degree must be >= 1")
        q = p**k
        if q > MAX_Q:
            raise UsageError(f"q = {q} exceeds the supported maximum {MAX_Q}")
        self.p, self.k, self.q = p, k, q
        if k == 1:
            if modulus is not None and len(_poly_trim(modulus)) > 2:
                raise UsageError("a prime field takes no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q) or first_irreducible(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            modulus = tuple(_poly_trim(modulus))
            if len(modulus) != k + 1:
                raise UsageError(f"modulus must have degree {k}")
            if modulus[-1] != 1:
                raise UsageError("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise UsageError(f"modulus {list(modulus)} is reducible over GF({p})")
            self.modulus = modulus
        self._build()

    def _build(self):
        p, k, q = self.p, self.k, self.q
        codes = np.arange(q, dtype=np.int64)
        if k == 1:
            self._neg = (-codes) % p
            self._inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                self._inv[a] = pow(a, p - 2, p)
            self._log = self._exp = None
            self._digits = None
        else:
            self._digits = np.array([p**i for i in range(k)], dtype=np.int64)
            digs = (codes[:, None] // self._digits) % p
            self._neg = ((-digs) % p) @ self._digits
            self._exp, self._log = self._log_tables()
            self._inv = np.zeros(q, dtype=np.int64)
            self._inv[1:] = self._exp[(q - 1 - self._log[1:]) % (q - 1)]
        self._add_tab = self._mul_tab = None

    def _code_to_poly(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _poly_to_code(self, c):
        c = list(c) + [0] * (self.k - len(c))
        return sum(int(x) * self.p**i for i, x in enumerate(c))

    def _powmod(self, a, e):
        result, base = [1], list(a)
        while e:
            if e & 1:
                result = _poly_mod(_poly_mul(result, base, self.p), self.modulus, self.p)
            base = _poly_mod(_poly_mul(base, base, self.p), self.modulus, self.p)
            e >>= 1
        return result

    def _log_tables(self):
        q = self.q
        order = q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        for g in range(2, q):
            gpoly = self._code_to_poly(g)
            # g generates iff g^(order/r) != 1 for every prime r | order
            if any(_poly_trim(self._powmod(gpoly, order // r)) == [1] for r in primes):
                continue
            exp = np.zeros(2 * order, dtype=np.int64)
            mod = self.modulus
            digits = np.array([self.p**i for i in range(self.k)], dtype=np.int64)
            cur = np.zeros(self.k, dtype=np.int64)
            cur[0] = 1
            for e in range(order):
                exp[e] = int(cur @ digits)
                # multiply by g: cur * gpoly reduced by the monic modulus
                prod = np.zeros(2 * self.k - 1, dtype=np.int64)
                for i, x in enumerate(gpoly):
                    if x:
                        prod[i : i + self.k] += x * cur
                for d in range(2 * self.k - 2, self.k - 1, -1):
                    c = prod[d] % self.p
                    if c:
                        prod[d - self.k : d + 1] -= c * np.array(mod, dtype=np.int64)
                cur = prod[: self.k] % self.p
            exp[order:] = exp[:order]
            log = np.zeros(q, dtype=np.int64)
            log[exp[:order]] = np.arange(order)
            self.generator = g
            return exp, log
        raise AssertionError("multiplicative group has no generator")

    # -- identity ---------------------------------------------------------------

    @property
    def name(self):
        return str(self.q) if self.k == 1 else f"{self.p}^{self.k}"

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (field_from_parts, (self.p, self.k, self.modulus))

    # -- vectorised arithmetic on codes ---------------------------------------

    def vadd(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        a = np.asarray(a, dtype=np.int64)[..., None]
        b = np.asarray(b, dtype=np.int64)[..., None]
        return (((a // self._digits) + (b // self._digits)) % self.p) @ self._digits

    def vneg(self, a):
        return self._neg[a]

    def vsub(self, a, b):
        return self.vadd(a, self._neg[b])

    def vmul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, a, b):
        return int(self.vadd(a, b))

    def sub(self, a, b):
        return int(self.vsub(a, b))

    def neg(self, a):
        return int(self._neg[a])

    def mul(self, a, b):
        return int(self.vmul(a, b))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self._inv[a])

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(int(a), e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def from_int(self, n):
        """The field element n·1."""
        return int(n) % self.p

    def nonzero(self):
        return range(1, self.q)

    def elem(self, value):
        return FieldElement(self, value)

    def coeffs(self, a):
        """Coefficient vector of code ``a``, low degree first."""
        if self.k == 1:
            return (int(a),)
        return tuple(self._code_to_poly(int(a)))

    def from_coeffs(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.k:
            raise UsageError(f"too many coefficients for {self!r}")
        return self._poly_to_code(coeffs)

    def tables(self):
        """Dense (add, mul, neg, inv) tables for the jitted kernels (q <= 256)."""
        if self.q > TABLE_Q:
            raise UsageError(f"q = {self.q} is too large for dense tables")
        if self._add_tab is None:
            c = np.arange(self.q, dtype=np.int64)
            self._add_tab = np.ascontiguousarray(self.vadd(c[:, None], c[None, :]), dtype=np.int64)
            self._mul_tab = np.ascontiguousarray(self.vmul(c[:, None], c[None, :]), dtype=np.int64)
        return self._add_tab, self._mul_tab, self._neg, self._inv

    # -- text form used by the matrix file format ---------------------------

    def format(self, a):
        if self.k == 1:
            return str(int(a))
        return np.base_repr(int(a), self.p).rjust(self.k, "0")

    def parse(self, token):
        if self.k == 1:
            v = int(token)
            if not 0 <= v < self.p:
                raise UsageError(f"entry {token!r} not in [0, {self.p})")
            return v
        if len(token) != self.k or any(ch not in "0123456789"[: self.p] for ch in token):
            raise UsageError(f"entry {token!r} is not a {self.k}-digit base-{self.p} string")
        return int(token, self.p)


@dataclass(frozen=True)
class FieldElement:
    """A value of a specific field, with operator support."""

    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= int(self.value) < self.spec.q:
            raise UsageError(f"{self.value} is not a valid code for {self.spec!r}")
        object.__setattr__(self, "value", int(self.value))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise UsageError(f"cannot mix {self.spec!r} and {other.spec!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElement(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElement(self.spec, self.spec.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return b if b is NotImplemented else FieldElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.value, self.spec.inv(b)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow(self.value, int(e)))

    def inv(self):
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    @property
    def coeffs(self):
        return self.spec.coeffs(self.value)

    def __repr__(self):
        return f"{self.spec.format(self.value)} in {self.spec!r}"


@functools.lru_cache(maxsize=None)
def field_from_parts(p, k=1, modulus=None):
    return FieldSpec(p, k, modulus)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def field(q, modulus=None):
    """Look up GF(q).

    ``q`` may be an int, ``"9"`` or ``"3^2"``.  ``modulus`` is an optional
    coefficient list, low degree first; the default for 4, 8 and 9 is the
    Conway polynomial and, for other extension fields, the first irreducible
    polynomial in lexicographic order.
    """
    if isinstance(q, FieldSpec):
        return q
    if isinstance(q, str):
        m = _FIELD_RE.match(q)
        if not m:
            raise UsageError(f"cannot parse field {q!r}; expected 'q' or 'p^k'")
        base, exp = int(m.group(1)), int(m.group(2) or 1)
        q = base**exp
    q = int(q)
    if q < 2:
        raise UsageError(f"no field with {q} elements")
    p, k = _prime_power(q)
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return field_from_parts(p, k, modulus)
