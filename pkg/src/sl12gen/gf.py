"""The field tower GF(p) < GF(q) < GF(q^11) and polynomials over GF(q).

Elements of GF(q) = GF(p)[t]/(h) are stored as integer *codes*
``sum(d[i] * p**i)`` where ``d`` is the ascending digit vector; GF(q^11)
elements are tuples of 11 such codes (coefficients modulo g, ascending).
Polynomials over GF(q) are tuples of codes, ascending, with no trailing zero;
the zero polynomial is ``()``.

The only total order used for scans is lexicographic on digit vectors,
lowest degree first.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import _linalg
from .arith import FactoredInteger, factorize, is_prime

EXT_DEGREE = 11

Poly = tuple  # tuple[int, ...] of GF(q) codes, ascending degree
ExtElem = tuple  # tuple of EXT_DEGREE GF(q) codes


class GF:
    """GF(p^m) as the quotient GF(p)[t]/(h) for a monic irreducible ``h``.

    ``h`` is given as its ascending coefficient list over GF(p), including the
    leading 1. For m = 1 the conventional ``h = t`` is used and arithmetic is
    plain modular arithmetic.
    """

    def __init__(self, p: int, h: Sequence[int]):
        h = tuple(int(c) for c in h)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if len(h) < 2 or h[-1] != 1 or any(not 0 <= c < p for c in h):
            raise ValueError(f"h={h} is not a monic polynomial over GF({p}) of degree >= 1")
        self.p = p
        self.h = h
        self.m = len(h) - 1
        self.q = p**self.m
        self.zero = 0
        self.one = 1
        if self.m == 1:
            self._prime_ops()
        else:
            self._table_ops()

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self):
        return hash((self.p, self.h))

    # -- digit encoding -------------------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        if len(ds) != self.m or any(not 0 <= d < self.p for d in ds):
            raise ValueError(f"{list(ds)} is not an element of {self!r}")
        return sum(d * self.p**i for i, d in enumerate(ds))

    def __call__(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    @cached_property
    def scan_order(self) -> list[int]:
        """All element codes sorted lexicographically by digit vector."""
        return sorted(range(self.q), key=self.digits)

    def elements(self) -> list[int]:
        return list(range(self.q))

    # -- arithmetic -----------------------------------------------------
    def _prime_ops(self):
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: -a % p
        self.mul = lambda a, b: a * b % p

        def inv(a):
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero in GF(p)")
            return pow(a, -1, p)

        self.inv = inv

    def _slow_mul(self, a: int, b: int) -> int:
        p, m, h = self.p, self.m, self.h
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * h[j]) % p
        return self.from_digits(prod[:m])

    def _table_ops(self):
        p, q = self.p, self.q
        add_digits = [[(x + y) % p for x, y in zip(self.digits(a), self.digits(b))] for a in range(q) for b in range(q)]
        add_t = [sum(d * p**i for i, d in enumerate(ds)) for ds in add_digits]
        neg_t = [self.from_digits([-d % p for d in self.digits(a)]) for a in range(q)]
        gen = None
        for cand in range(2, q):
            seen, x = 1, cand
            while x != 1 and seen < q:
                x = self._slow_mul(x, cand)
                seen += 1
            if x == 1 and seen == q - 1:
                gen = cand
                break
        if gen is None:
            raise ValueError(f"h={self.h} is not irreducible over GF({p})")
        exp_t = [1] * (2 * q)
        for i in range(1, 2 * q):
            exp_t[i] = self._slow_mul(exp_t[i - 1], gen)
        log_t = [0] * q
        for i in range(q - 1):
            log_t[exp_t[i]] = i
        order = q - 1

        self.add = lambda a, b: add_t[a * q + b]
        self.neg = lambda a: neg_t[a]
        self.sub = lambda a, b: add_t[a * q + neg_t[b]]

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp_t[log_t[a] + log_t[b]]

        def inv(a):
            if a == 0:
                raise ZeroDivisionError(f"inverse of zero in {self!r}")
            return exp_t[(order - log_t[a]) % order]

        self.mul = mul
        self.inv = inv

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        mul = self.mul
        while e:
            if e & 1:
                result = mul(result, a)
            a = mul(a, a)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r, _ in factorize(n).factors:
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n


# -- polynomials over a GF ---------------------------------------------------


def poly_trim(a: Iterable[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_degree(a: Poly) -> int:
    if not a:
        raise ValueError("the zero polynomial has no degree")
    return len(a) - 1


def poly_add(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return poly_trim(F.add(x, y) for x, y in zip(a, b))


def poly_sub(F: GF, a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, tuple(F.neg(c) for c in b))


def poly_mul(F: GF, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return poly_trim(out)


def poly_divmod(F: GF, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    mul, sub = F.mul, F.sub
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            c = mul(c, inv_lead)
            quot[k - db] = c
            for j, bj in enumerate(b):
                if bj:
                    rem[k - db + j] = sub(rem[k - db + j], mul(c, bj))
    return poly_trim(quot), poly_trim(rem[:db])


def poly_mod(F: GF, a: Poly, b: Poly) -> Poly:
    return poly_divmod(F, a, b)[1]


def poly_monic(F: GF, a: Poly) -> Poly:
    if not a:
        raise ValueError("the zero polynomial cannot be made monic")
    s = F.inv(a[-1])
    return tuple(F.mul(s, c) for c in a)


def poly_gcd(F: GF, a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``()`` only when both inputs are zero."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a) if a else ()


def poly_powmod(F: GF, base: Poly, e: int, mod: Poly) -> Poly:
    result: Poly = (F.one,)
    base = poly_mod(F, base, mod)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), mod)
        base = poly_mod(F, poly_mul(F, base, base), mod)
        e >>= 1
    return poly_mod(F, result, mod)


def poly_eval(F: GF, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible(f: Poly, F: GF) -> bool:
    """Rabin's test over ``F``: t^(q^n) = t mod f and gcd(t^(q^(n/r)) - t, f) = 1."""
    f = poly_trim(f)
    n = poly_degree(f)
    if n < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    f = poly_monic(F, f)
    if n == 1:
        return True
    t = (0, F.one)
    powers = [t]  # powers[i] = t^(q^i) mod f
    for _ in range(n):
        powers.append(poly_powmod(F, powers[-1], F.q, f))
    if powers[n] != poly_mod(F, t, f):
        return False
    for r, _ in factorize(n).factors:
        if len(poly_gcd(F, poly_sub(F, powers[n // r], t), f)) != 1:
            return False
    return True


def _scan_monic_irreducible(F: GF, degree: int) -> Poly:
    # Lexicographic low-degree-first scan. A zero constant term means t | f,
    # so that block is skipped wholesale; the first hit is unchanged.
    order = F.scan_order
    nonzero = [c for c in order if c != 0]
    for c0 in nonzero:
        for rest in itertools.product(order, repeat=degree - 1):
            cand = (c0,) + rest + (F.one,)
            if is_irreducible(cand, F):
                return cand
    raise AssertionError("no irreducible polynomial found")


def smallest_irreducible(F: GF, degree: int) -> Poly:
    """Lexicographically smallest monic irreducible polynomial of ``degree`` over F."""
    if degree == 1:
        return (0, F.one)
    return _scan_monic_irreducible(F, degree)


# -- the degree-11 extension --------------------------------------------------


class ExtField:
    """GF(q^11) = GF(q)[t]/(g)."""

    def __init__(self, F: GF, g: Sequence[int]):
        g = tuple(g)
        if len(g) != EXT_DEGREE + 1 or g[-1] != F.one:
            raise ValueError("g must be monic of degree 11")
        self.F = F
        self.g = g
        self.n = EXT_DEGREE
        self.order = F.q**EXT_DEGREE
        self.zero = (0,) * EXT_DEGREE
        self.one = (F.one,) + (0,) * (EXT_DEGREE - 1)
        # t^11 = -(g_0 + ... + g_10 t^10)
        self._red = [F.neg(c) for c in g[:-1]]

    def __repr__(self):
        return f"GF({self.F.q}^{self.n})"

    def embed(self, a: int) -> ExtElem:
        return (a,) + (0,) * (self.n - 1)

    def is_base(self, a: ExtElem) -> bool:
        return not any(a[1:])

    def add(self, a: ExtElem, b: ExtElem) -> ExtElem:
        add = self.F.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a: ExtElem, b: ExtElem) -> ExtElem:
        sub = self.F.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a: ExtElem) -> ExtElem:
        return tuple(self.F.neg(x) for x in a)

    def mul(self, a: ExtElem, b: ExtElem) -> ExtElem:
        F = self.F
        add, mul = F.add, F.mul
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = add(prod[i + j], mul(x, y))
        red = self._red
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                base = k - n
                for j, r in enumerate(red):
                    if r:
                        prod[base + j] = add(prod[base + j], mul(c, r))
        return tuple(prod[:n])

    def pow(self, a: ExtElem, e: int) -> ExtElem:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: ExtElem) -> ExtElem:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in the extension field")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: ExtElem) -> ExtElem:
        """a -> a^q."""
        return self.pow(a, self.F.q)

    def random(self, rng: random.Random) -> ExtElem:
        return tuple(rng.randrange(self.F.q) for _ in range(self.n))


@dataclass(frozen=True)
class FieldSpec:
    """The tower GF(p) < GF(q) < GF(q^11) with explicit defining polynomials.

    ``h`` is over GF(p) (digits), ``g`` is over GF(q) (codes).
    """

    p: int
    m: int
    h: tuple
    g: tuple
    F: GF = field(init=False, repr=False, compare=False)
    E: ExtField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.h) != self.m + 1:
            raise ValueError(f"h has degree {len(self.h) - 1}, expected m={self.m}")
        F = GF(self.p, self.h)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "E", ExtField(F, self.g))

    @property
    def q(self) -> int:
        return self.p**self.m

    def validate(self) -> list[str]:
        """Names of failed structural checks (empty when the tower is sound)."""
        failures = []
        prime = GF(self.p, (0, 1))
        if self.m > 1 and not is_irreducible(self.h, prime):
            failures.append("h_irreducible")
        if not is_irreducible(self.g, self.F):
            failures.append("g_irreducible")
        return failures


def canonical_field(p: int, m: int) -> FieldSpec:
    """Tower with the lexicographically smallest defining polynomials."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    prime = GF(p, (0, 1))
    h = smallest_irreducible(prime, m)
    F = GF(p, h)
    g = smallest_irreducible(F, EXT_DEGREE)
    return FieldSpec(p, m, h, g)


# -- orders, omega and its minimal polynomial ----------------------------------


def multiplicative_order(a: ExtElem, factored_group_order: FactoredInteger, spec: FieldSpec) -> int:
    """Exact order of ``a`` in GF(q^11)^*, given the factorization of q^11 - 1."""
    E = spec.E
    if not any(a):
        raise ValueError("zero has no multiplicative order")
    n = factored_group_order.value
    for r, _ in factored_group_order.factors:
        while n % r == 0 and E.pow(a, n // r) == E.one:
            n //= r
    if E.pow(a, n) != E.one:
        raise ValueError("group order does not annihilate the element")
    return n


def _is_primitive(E: ExtField, a: ExtElem, factored: FactoredInteger) -> bool:
    n = factored.value
    return all(E.pow(a, n // r) != E.one for r in factored.primes)


def _omega_candidates(spec: FieldSpec, mode):
    if mode is None or mode == "deterministic":
        order = spec.F.scan_order
        for cand in itertools.product(order, repeat=EXT_DEGREE):
            if any(cand):
                yield cand
    else:
        rng = random.Random(_seed_of(mode))
        while True:
            cand = spec.E.random(rng)
            if any(cand):
                yield cand


def _seed_of(mode) -> int:
    if isinstance(mode, int) and not isinstance(mode, bool):
        return mode
    if isinstance(mode, tuple) and len(mode) == 2 and mode[0] == "seeded":
        return int(mode[1])
    raise ValueError(f"unknown omega mode {mode!r}")


def find_omega(spec: FieldSpec, Q: int, factored: FactoredInteger, mode="deterministic") -> ExtElem:
    """First primitive element of GF(q^11) in scan order, squared when Q is halved.

    ``factored`` is the factorization of q^11 - 1. ``mode`` is
    ``"deterministic"``, an integer seed, or ``("seeded", seed)``.
    """
    E = spec.E
    full = factored.value
    if full != spec.q**EXT_DEGREE - 1:
        raise ValueError("factored must be the factorization of q^11 - 1")
    if full % Q:
        raise ValueError("Q must divide q^11 - 1")
    for rho in _omega_candidates(spec, mode):
        if _is_primitive(E, rho, factored):
            break
    cofactor = full // Q
    omega = E.pow(rho, cofactor)
    if multiplicative_order(omega, factored, spec) != Q:
        raise AssertionError("omega does not have order Q")
    return omega


@dataclass(frozen=True)
class AlphaVector:
    """Coefficients alpha_1..alpha_11 of f; ``alpha[i]`` is 1-based."""

    values: tuple

    def __post_init__(self):
        if len(self.values) != EXT_DEGREE:
            raise ValueError("AlphaVector holds exactly 11 coefficients")

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= EXT_DEGREE:
            raise IndexError(f"alpha index {i} outside 1..11")
        return self.values[i - 1]


def alpha_from_poly(F: GF, f: Poly) -> AlphaVector:
    """Read alpha_i off ``f = t^11 - alpha_1 t^10 + alpha_2 t^9 - ... - alpha_11``."""
    if len(f) != EXT_DEGREE + 1 or f[-1] != F.one:
        raise ValueError("f must be monic of degree 11")
    vals = []
    for i in range(1, EXT_DEGREE + 1):
        c = f[EXT_DEGREE - i]
        vals.append(c if i % 2 == 0 else F.neg(c))
    return AlphaVector(tuple(vals))


def poly_from_alpha(F: GF, alpha: AlphaVector) -> Poly:
    coeffs = [0] * (EXT_DEGREE + 1)
    coeffs[EXT_DEGREE] = F.one
    for i in range(1, EXT_DEGREE + 1):
        coeffs[EXT_DEGREE - i] = alpha[i] if i % 2 == 0 else F.neg(alpha[i])
    return tuple(coeffs)


class DescentError(ArithmeticError):
    """A coefficient of the conjugate product is not in GF(q)."""


def frobenius_conjugates(omega: ExtElem, spec: FieldSpec) -> list[ExtElem]:
    E = spec.E
    conj = [tuple(omega)]
    for _ in range(EXT_DEGREE - 1):
        conj.append(E.frobenius(conj[-1]))
    return conj


def min_poly_of_omega(omega: ExtElem, spec: FieldSpec) -> tuple[Poly, AlphaVector]:
    """Multiply out prod (t - omega^(q^i)), i = 0..10, and descend to GF(q)."""
    E = spec.E
    conj = frobenius_conjugates(omega, spec)
    if len(set(conj)) != EXT_DEGREE:
        raise DescentError("omega lies in GF(q); its conjugates are not distinct")
    prod = [E.one]
    for c in conj:
        shifted = [E.zero] + prod
        neg_c = E.neg(c)
        for i, coeff in enumerate(prod):
            shifted[i] = E.add(shifted[i], E.mul(neg_c, coeff))
        prod = shifted
    coeffs = []
    for i, c in enumerate(prod):
        if not E.is_base(c):
            raise DescentError(f"coefficient of t^{i} is not in GF(q)")
        coeffs.append(c[0])
    f = tuple(coeffs)
    return f, alpha_from_poly(spec.F, f)


def min_poly_oracle(omega: ExtElem, spec: FieldSpec) -> Poly:
    """Minimal polynomial from the first linear dependency among 1, w, w^2, ..."""
    E, F = spec.E, spec.F
    if not any(omega):
        raise ValueError("omega must be nonzero")
    powers = [E.one]
    for k in range(1, EXT_DEGREE + 1):
        powers.append(E.mul(powers[-1], omega))
        # columns are the coordinate vectors of w^0..w^k
        rows = [[powers[j][i] for j in range(k + 1)] for i in range(EXT_DEGREE)]
        null = _linalg.nullspace(F, rows, k + 1)
        if null:
            v = null[0]
            return poly_monic(F, poly_trim(v))
    raise AssertionError("degree exceeds 11")


def alpha11_power_identity(omega: ExtElem, alpha: AlphaVector, spec: FieldSpec) -> bool:
    """alpha_11 == omega^((q^11 - 1)/(q - 1)), the norm of omega."""
    q = spec.q
    norm = spec.E.pow(omega, (q**EXT_DEGREE - 1) // (q - 1))
    return norm == spec.E.embed(alpha[EXT_DEGREE])
