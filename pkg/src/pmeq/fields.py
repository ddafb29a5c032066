"""Exact coefficient fields: the rationals, GF(p), and GF(p^k).

Elements are plain Python values (Fraction for the rationals, int residues
in [0, p) for prime fields, and tuples of residues -- polynomial
coefficients low-to-high -- for extension fields).  All arithmetic goes
through the owning field object, which keeps matrices free of per-element
wrappers.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, FieldTooSmall


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); polynomials are tuples, low-to-high degree


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _ptrim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _ptrim(out)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    """Divide a by b over GF(p); b must be nonzero."""
    a = list(a)
    deg_b = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - deg_b, 0)
    for i in range(len(a) - 1, deg_b - 1, -1):
        c = (a[i] * inv_lead) % p
        if c:
            q[i - deg_b] = c
            for j, y in enumerate(b):
                a[i - deg_b + j] = (a[i - deg_b + j] - c * y) % p
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        # make monic
        inv = pow(a[-1], p - 2, p)
        a = tuple((x * inv) % p for x in a)
    return a


def _ppowmod(base, e, mod, p):
    result = (1,)
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _peval(f, a, p):
    v = 0
    for c in reversed(f):
        v = (v * a + c) % p
    return v


def poly_is_irreducible(f, p):
    """Monic f over GF(p): no root, and no factor of degree <= deg/2
    (tested via gcd with x^{p^i} - x)."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    for a in range(p):
        if _peval(f, a, p) == 0:
            return False
    x = (0, 1)
    for i in range(1, k // 2 + 1):
        h = _ppowmod(x, p ** i, f, p)
        g = _pgcd(_psub(h, x, p), f, p)
        if len(g) - 1 >= 1:
            return False
    return True


# ---------------------------------------------------------------------------


class Field:
    """Common interface; concrete fields override the arithmetic."""

    kind = None
    cardinality = None  # None means infinite

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def check_same(self, other):
        if self != other:
            raise FieldMismatch(f"field mismatch: {self} vs {other}")

    def arith(self, a, b, op):
        """Dispatch {add, sub, mul, div} by name."""
        return getattr(self, op)(a, b)

    def enumerate_points(self, count):
        if count < 0:
            raise ValueError("count must be nonnegative")
        if self.cardinality is not None and count > self.cardinality:
            raise FieldTooSmall(
                f"requested {count} points from a field of size {self.cardinality}"
            )
        return [self.point(i) for i in range(count)]


class RationalField(Field):
    kind = "rationals"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, a):
        if isinstance(a, Fraction):
            return a
        if isinstance(a, int):
            return Fraction(a)
        raise TypeError(f"cannot coerce {a!r} into {self}")

    def from_int(self, i):
        return Fraction(i)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def point(self, i):
        return Fraction(i)

    def format_elem(self, a):
        return str(a)

    def parse_elem(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad rational {s!r}: {e}") from None

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Q"

    def header(self):
        return "field rational"


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.cardinality = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, a):
        if isinstance(a, int):
            return a % self.p
        raise TypeError(f"cannot coerce {a!r} into {self}")

    def from_int(self, i):
        return i % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def point(self, i):
        return i

    def format_elem(self, a):
        return str(a)

    def parse_elem(self, s):
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def header(self):
        return f"field gf {self.p}"


class ExtensionField(Field):
    kind = "extension"

    def __init__(self, p, k, modulus):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 2:
            raise ValueError("extension degree must be at least 2")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not poly_is_irreducible(modulus, p):
            raise ValueError("modulus is reducible over GF(p)")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.cardinality = p ** k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def _pad(self, c):
        return tuple(c) + (0,) * (self.k - len(c))

    def coerce(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        if isinstance(a, tuple) and len(a) == self.k:
            return tuple(x % self.p for x in a)
        raise TypeError(f"cannot coerce {a!r} into {self}")

    def from_int(self, i):
        return (i % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        prod = _pmul(_ptrim(a), _ptrim(b), self.p)
        return self._pad(_pdivmod(prod, self.modulus, self.p)[1])

    def inv(self, a):
        a = _ptrim(a)
        if not a:
            raise DivisionByZero(f"division by zero in {self}")
        # extended Euclid: find s with s*a = 1 mod modulus
        r0, r1 = self.modulus, a
        s0, s1 = (), (1,)
        p = self.p
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], p - 2, p)
        return self._pad(tuple((x * c_inv) % p for x in s0))

    def point(self, i):
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def format_elem(self, a):
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse_elem(self, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"bad extension element {s!r}")
        parts = [t for t in s[1:-1].replace(",", " ").split() if t]
        if len(parts) != self.k:
            raise ValueError(f"expected {self.k} coefficients in {s!r}")
        return tuple(int(t) % self.p for t in parts)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("extension", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def header(self):
        coeffs = " ".join(str(c) for c in self.modulus)
        return f"field gf {self.p}^{self.k} [{coeffs}]"


def build_extension(p, min_size):
    """Smallest field GF(p^k) with p^k >= min_size.

    Returns PrimeField(p) when k = 1; otherwise the modulus is the
    lexicographically smallest (on coefficients read low-to-high) monic
    irreducible polynomial of degree k over GF(p).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if min_size < 2:
        raise ValueError("min_size must be at least 2")
    k = 1
    size = p
    while size < min_size:
        k += 1
        size *= p
    if k == 1:
        return PrimeField(p)
    # counting order with c0 most significant = lex order on (c0,...,c_{k-1})
    for idx in range(p ** k):
        digits = []
        rest = idx
        for _ in range(k):
            digits.append(rest % p)
            rest //= p
        digits.reverse()  # now digits[0] varies slowest
        f = tuple(digits) + (1,)
        if poly_is_irreducible(f, p):
            return ExtensionField(p, k, f)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


def embed(element, src, dst):
    """Carry an element of field src into the larger field dst.

    Supported: identical fields, and GF(p) into GF(p^k).
    """
    if src == dst:
        return element
    if (
        isinstance(src, PrimeField)
        and isinstance(dst, ExtensionField)
        and src.p == dst.p
    ):
        return (element % dst.p,) + (0,) * (dst.k - 1)
    raise FieldMismatch(f"cannot embed elements of {src} into {dst}")


def enumerate_points(field, count):
    return field.enumerate_points(count)


def parse_field_header(line):
    """Parse the shared field header syntax.

    `field rational`, `field gf <p>`, or `field gf <p>^<k> [c0 c1 ... ck]`.
    """
    tokens = line.replace("[", " [ ").replace("]", " ] ").split()
    if not tokens or tokens[0] != "field":
        raise ValueError(f"expected field header, got {line!r}")
    if tokens[1:] == ["rational"]:
        return RationalField()
    if len(tokens) >= 3 and tokens[1] == "gf":
        spec = tokens[2]
        if "^" in spec:
            p_str, k_str = spec.split("^", 1)
            p, k = int(p_str), int(k_str)
            if len(tokens) < 5 or tokens[3] != "[" or tokens[-1] != "]":
                raise ValueError(f"missing modulus in {line!r}")
            coeffs = [int(t) for t in tokens[4:-1]]
            return ExtensionField(p, k, coeffs)
        return PrimeField(int(spec))
    raise ValueError(f"bad field header {line!r}")
