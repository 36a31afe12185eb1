"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n),
reduced modulo the n-th cyclotomic polynomial, with the conductor n minimal:
no proper divisor m | n admits an exact rewrite of the element.  Canonical
form is therefore unique and equality is coefficient comparison.

All coefficients are `fractions.Fraction`; there is no floating point here.
The module also provides reduction of algebraic integers onto a finite field
of characteristic p (the substrate for p-block congruences), including the
factorization of cyclotomic polynomials over GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .numutil import divisors, euler_phi, p_prime_part, prime_divisors


class NonCoprimeExponent(ValueError):
    """Galois substitution zeta -> zeta^j needs gcd(j, conductor) = 1."""


class NotAlgebraicInteger(ValueError):
    """Residue reduction applies to elements of Z[zeta_n] only."""


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and reduction tables
# ---------------------------------------------------------------------------


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_n, via Phi_n = (x^n - 1) / prod Phi_d."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n):
        if d < n:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_n for k = 0 .. 2*(phi(n)-1), as integer coefficient rows."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(2 * phi - 2):
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            for i in range(phi):
                nxt[i] -= lead * poly[i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_exponents(n: int, terms: dict[int, Fraction]) -> list[Fraction]:
    """Reduce a sparse sum of c * zeta_n^k (any k) into the power basis."""
    phi = euler_phi(n)
    rows = _reduction_rows(n)
    out = [Fraction(0)] * phi
    dense: dict[int, Fraction] = {}
    for k, c in terms.items():
        k %= n
        dense[k] = dense.get(k, Fraction(0)) + c
    for k, c in dense.items():
        if not c:
            continue
        if k < phi:
            out[k] += c
        else:
            # repeated reduction: z^k with k < n <= 2*phi is not guaranteed,
            # so step down via z^phi row products
            vec = _power_vector(n, k)
            for i, r in enumerate(vec):
                if r:
                    out[i] += c * r
    return out


@lru_cache(maxsize=None)
def _power_vector(n: int, k: int) -> tuple[int, ...]:
    """zeta_n^k in the power basis, as an integer row (k reduced mod n)."""
    phi = euler_phi(n)
    k %= n
    rows = _reduction_rows(n)
    if k < 2 * phi - 1:
        return rows[k]
    # multiply z^(k-1) row by z and reduce
    prev = _power_vector(n, k - 1)
    poly = cyclotomic_polynomial(n)
    nxt = [0] + list(prev[:-1])
    lead = prev[-1]
    if lead:
        for i in range(phi):
            nxt[i] -= lead * poly[i]
    return tuple(nxt)


# ---------------------------------------------------------------------------
# The Cyclotomic value type
# ---------------------------------------------------------------------------


def _solve_rational_system(cols: list[list[Fraction]], target: list[Fraction]):
    """Solve sum y_j * cols[j] = target over Q; return ys or None."""
    nrows = len(target)
    ncols = len(cols)
    mat = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if mat[r][ncols] != 0:
            return None
    ys = [Fraction(0)] * ncols
    for r, c in pivots:
        ys[c] = mat[r][ncols]
    return ys


@dataclass(frozen=True)
class Cyclotomic:
    """An element of Q(zeta_n) in canonical (minimal-conductor) form."""

    conductor: int
    coeffs: tuple[Fraction, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(0),))

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(1),))

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        """The root of unity zeta_n^k, canonicalized."""
        return canonical(n, {k: Fraction(1)})

    # -- basic protocol ----------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def rational_value(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError("not a rational value")
        return self.coeffs[0]

    def as_rational_integer(self) -> int | None:
        """The value as a plain integer, if it is one; None otherwise."""
        if self.conductor != 1:
            return None
        q = self.coeffs[0]
        return int(q) if q.denominator == 1 else None

    def is_integral(self) -> bool:
        """Whether the element lies in Z[zeta_n] (all power-basis coeffs in Z)."""
        return all(c.denominator == 1 for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _lift_terms(self, big: int) -> dict[int, Fraction]:
        step = big // self.conductor
        return {i * step: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        other = _coerce(other)
        n = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        terms = self._lift_terms(n)
        for k, c in other._lift_terms(n).items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return canonical(n, terms)

    def __radd__(self, other) -> "Cyclotomic":
        return self.__add__(_coerce(other))

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other) -> "Cyclotomic":
        return _coerce(other).__add__(-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if self.conductor == 1:
            q = self.coeffs[0]
            return canonical(
                other.conductor, {i: q * c for i, c in enumerate(other.coeffs) if c}
            )
        if other.conductor == 1:
            return other.__mul__(self)
        n = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        a = self._lift_terms(n)
        b = other._lift_terms(n)
        terms: dict[int, Fraction] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = (ka + kb) % n
                terms[k] = terms.get(k, Fraction(0)) + ca * cb
        return canonical(n, terms)

    def __rmul__(self, other) -> "Cyclotomic":
        return self.__mul__(_coerce(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.conductor, self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {to_literal(self)!r})"

    # -- Galois ------------------------------------------------------------

    def galois(self, j: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^j; j = -1 is complex conjugation."""
        n = self.conductor
        if gcd(j, n) != 1:
            raise NonCoprimeExponent(f"gcd({j}, {n}) != 1")
        if n == 1:
            return self
        return canonical(n, {(i * j) % n: c for i, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def abs_is_one(self) -> bool:
        """Exact test of |a| = 1 via a * conj(a) = 1."""
        return self * self.conjugate() == Cyclotomic.one()


def _coerce(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.from_rational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Cyclotomic")


def canonical(n: int, terms: dict[int, Fraction] | list[Fraction]) -> Cyclotomic:
    """Reduce raw coefficient data at stated conductor n to canonical form.

    Accepts either a sparse {exponent: coeff} mapping (exponents arbitrary)
    or a dense coefficient list of length <= n.  Idempotent.
    """
    if n < 1:
        raise ValueError("conductor must be >= 1")
    if isinstance(terms, dict):
        coeffs = _reduce_exponents(n, terms)
    else:
        coeffs = _reduce_exponents(n, {i: Fraction(c) for i, c in enumerate(terms)})
    return _minimize(n, coeffs)


def _minimize(n: int, coeffs: list[Fraction]) -> Cyclotomic:
    # descend through maximal proper divisors while an exact rewrite exists
    while True:
        if n == 1:
            return Cyclotomic(1, (coeffs[0],))
        if not any(coeffs):
            return Cyclotomic(1, (Fraction(0),))
        descended = False
        for p in prime_divisors(n):
            m = n // p
            step = n // m
            phi_m = euler_phi(m)
            cols = [list(map(Fraction, _power_vector(n, step * j))) for j in range(phi_m)]
            ys = _solve_rational_system(cols, coeffs)
            if ys is not None:
                n, coeffs = m, ys
                descended = True
                break
        if not descended:
            return Cyclotomic(n, tuple(coeffs))


# ---------------------------------------------------------------------------
# Shared JSON literal syntax
# ---------------------------------------------------------------------------


def from_literal(lit) -> Cyclotomic:
    """Parse the shared cyclotomic literal: "n", "a/b", or {"n":, "terms":}."""
    if isinstance(lit, int):
        return Cyclotomic.from_rational(lit)
    if isinstance(lit, str):
        return Cyclotomic.from_rational(Fraction(lit))
    if isinstance(lit, dict):
        n = int(lit["n"])
        terms: dict[int, Fraction] = {}
        for expo, q in lit["terms"]:
            expo = int(expo)
            terms[expo] = terms.get(expo, Fraction(0)) + Fraction(q)
        return canonical(n, terms)
    raise ValueError(f"bad cyclotomic literal: {lit!r}")


def to_literal(a: Cyclotomic):
    """Serialize canonically (bit-exact round trip through from_literal)."""
    if a.conductor == 1:
        q = a.coeffs[0]
        return str(q) if q.denominator != 1 else str(q.numerator)
    return {
        "n": a.conductor,
        "terms": [[i, str(c)] for i, c in enumerate(a.coeffs) if c],
    }


# ---------------------------------------------------------------------------
# GF(p)[x] utilities and cyclotomic factorization mod p
# ---------------------------------------------------------------------------


def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _gf_trim(out)


def gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return _gf_trim(q), _gf_trim(a[: len(b) - 1])


def gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def gf_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = gf_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = gf_divmod(gf_mul(result, base, p), mod, p)[1]
        base = gf_divmod(gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _monic_polys(degree: int, p: int):
    # all monic polynomials of the given degree over GF(p), lexicographic
    def rec(prefix: list[int], k: int):
        if k == degree:
            yield prefix + [1]
            return
        for c in range(p):
            yield from rec(prefix + [c], k + 1)

    yield from rec([], 0)


def gf_factor_squarefree(f: list[int], p: int) -> list[list[int]]:
    """Factor a squarefree monic polynomial over GF(p).

    Distinct-degree splitting by gcd with x^(p^k) - x, then equal-degree
    splitting by exhaustive search over monic divisors of that degree.
    The input sizes here are desk scale, so brute force is deliberate.
    """
    factors: list[list[int]] = []
    rest = list(f)
    k = 0
    x = [0, 1]
    while len(rest) - 1 > 0:
        k += 1
        if 2 * k > len(rest) - 1:
            factors.append(rest)
            break
        xpk = gf_powmod(x, p**k, rest, p)
        diff = _gf_trim([(a - b) % p for a, b in
                         zip(xpk + [0] * len(rest), x + [0] * len(rest))])
        g = gf_gcd(diff, rest, p)
        if len(g) - 1 > 0:
            # g is a product of irreducibles of degree exactly k
            block = g
            while len(block) - 1 > k:
                for cand in _monic_polys(k, p):
                    q, r = gf_divmod(block, cand, p)
                    if not r:
                        factors.append(cand)
                        block = q
                        break
            factors.append(block)
            rest = gf_divmod(rest, g, p)[0]
    return sorted(factors)


@lru_cache(maxsize=None)
def cyclotomic_factors_mod_p(m: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Irreducible factors of Phi_m mod p (m coprime to p), sorted."""
    if m % p == 0:
        raise ValueError("m must be coprime to p")
    f = [c % p for c in cyclotomic_polynomial(m)]
    if m == 1:
        return ((p - 1, 1),)
    factors = gf_factor_squarefree(_gf_trim(list(f)), p)
    return tuple(tuple(fac) for fac in sorted(factors))


@dataclass(frozen=True)
class FiniteFieldElement:
    """Element of GF(p)[x]/(modulus), modulus monic irreducible."""

    p: int
    modulus: tuple[int, ...]
    coords: tuple[int, ...]

    @staticmethod
    def make(p: int, modulus: tuple[int, ...], coords) -> "FiniteFieldElement":
        red = gf_divmod(list(coords), list(modulus), p)[1]
        red += [0] * (len(modulus) - 1 - len(red))
        return FiniteFieldElement(p, tuple(modulus), tuple(red))

    def _check(self, other: "FiniteFieldElement"):
        if self.p != other.p or self.modulus != other.modulus:
            raise ValueError("finite field mismatch")

    def __add__(self, other: "FiniteFieldElement") -> "FiniteFieldElement":
        self._check(other)
        return FiniteFieldElement(
            self.p, self.modulus,
            tuple((a + b) % self.p for a, b in zip(self.coords, other.coords)),
        )

    def __mul__(self, other: "FiniteFieldElement") -> "FiniteFieldElement":
        self._check(other)
        return FiniteFieldElement.make(
            self.p, self.modulus, gf_mul(list(self.coords), list(other.coords), self.p)
        )

    def pow(self, e: int) -> "FiniteFieldElement":
        result = FiniteFieldElement.make(self.p, self.modulus, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)


def residue_reduce(a: Cyclotomic, p: int, ideal_choice: int = 0) -> FiniteFieldElement:
    """Reduce an algebraic integer onto GF(p^d) above p.

    The ring map sends the p-power part of zeta_n to 1 and the p'-part
    zeta_m to a fixed root of the chosen irreducible factor of Phi_m mod p
    (factors in lexicographic order, selected by ideal_choice).
    """
    if not a.is_integral():
        raise NotAlgebraicInteger(f"non-integral coordinates: {a!r}")
    n = a.conductor
    m = p_prime_part(n, p)
    factors = cyclotomic_factors_mod_p(m, p)
    modulus = factors[ideal_choice % len(factors)]
    root = FiniteFieldElement.make(p, modulus, [0, 1] if len(modulus) > 2 else [-modulus[0] % p])
    if m == 1:
        root = FiniteFieldElement.make(p, modulus, [1])
    # zeta_n = zeta_{p^a}^v * zeta_m^u with u * (n/m) = 1 mod m
    u = pow(n // m, -1, m) if m > 1 else 0
    out = FiniteFieldElement.make(p, modulus, [0])
    for k, c in enumerate(a.coeffs):
        ci = c.numerator % p
        if ci:
            term = root.pow((u * k) % m if m > 1 else 0)
            out = out + FiniteFieldElement.make(p, modulus, [ci]) * term
    return out
