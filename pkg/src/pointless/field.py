"""Exact arithmetic in F_p and F_{p^n}, univariate polynomials, embeddings.

Elements of an extension field are dense coefficient vectors over F_p in a
caller-chosen presentation: the defining polynomial is never normalized, so
constants quoted against a specific generator relation stay bit-exact.
"""

import random

from .errors import (
    CompositeCharacteristic,
    DivisionByZero,
    DuplicateNodes,
    ExtensionTooLarge,
    MixedFields,
    NoSquareRoot,
    OddCharacteristic,
    ReduciblePolynomial,
)

MAX_FIELD_ORDER = 2 ** 40


# ---------------------------------------------------------------------------
# dense F_p[t] helpers on plain int tuples (c0, c1, ...)
# ---------------------------------------------------------------------------

def _trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _psub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _pdivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lc = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    quot = [0] * max(0, da - db + 1)
    for i in range(da - db, -1, -1):
        c = (a[i + db] * inv_lc) % p
        if c:
            quot[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _trim(quot), _trim(a[:db])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv_lc = pow(a[-1], p - 2, p) if p > 2 else 1
        a = tuple((x * inv_lc) % p for x in a)
    return a


def _pinvmod(a, m, p):
    """Inverse of a modulo m in F_p[t]; a must be coprime to m."""
    r0, r1 = m, a
    s0, s1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        raise DivisionByZero("element not invertible")
    c = pow(r0[0], p - 2, p) if p > 2 else 1
    return _trim([(x * c) % p for x in s0])


def _ppowmod(a, e, m, p):
    result = (1,)
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _fp_poly_irreducible(coeffs, p):
    """Rabin test for a monic polynomial over F_p."""
    d = len(coeffs) - 1
    if d <= 0:
        return False
    x = (0, 1)
    xq = _ppowmod(x, p ** d, coeffs, p)
    if _psub(xq, x, p):
        return False
    for r in set(_prime_factors(d)):
        g = _pgcd(_psub(_ppowmod(x, p ** (d // r), coeffs, p), x, p), coeffs, p)
        if len(g) != 1:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class FiniteField:
    """F_{p^n} with an explicit defining polynomial (absent when n = 1).

    Instances are immutable; elements are coefficient vectors of length n in
    the generator a, fully reduced.  The canonical total order on elements is
    by the integer index sum(c_i * p^i).
    """

    def __init__(self, p, n=1, defining_poly=None):
        if not _is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** n > MAX_FIELD_ORDER:
            raise ExtensionTooLarge(f"p^n = {p ** n} exceeds the supported budget")
        self.p = p
        self.n = n
        self.q = p ** n
        if n == 1:
            if defining_poly is not None:
                defining_poly = _trim(tuple(c % p for c in defining_poly))
                if defining_poly != (0, 1):
                    raise ValueError("prime fields take no defining polynomial")
            self.defining_poly = None
        else:
            if defining_poly is None:
                raise ValueError("extension fields need a defining polynomial")
            coeffs = _trim(tuple(c % p for c in defining_poly))
            if len(coeffs) != n + 1 or coeffs[-1] != 1:
                raise ReduciblePolynomial(
                    f"defining polynomial must be monic of degree {n}")
            if not _fp_poly_irreducible(coeffs, p):
                raise ReduciblePolynomial(
                    f"defining polynomial {list(coeffs)} is reducible over F_{p}")
            self.defining_poly = coeffs
        self.zero = FieldElement(self, ())
        self.one = FieldElement(self, (1,))
        self._nonsquare = None
        self._dlog = None

    @property
    def char(self):
        return self.p

    @property
    def order(self):
        return self.q

    @property
    def gen(self):
        if self.n == 1:
            raise ValueError("prime field has no distinguished generator")
        return FieldElement(self, (0, 1))

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and self.p == other.p and self.n == other.n
                and self.defining_poly == other.defining_poly)

    def __hash__(self):
        return hash((self.p, self.n, self.defining_poly))

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.q}; a: {list(self.defining_poly)})"

    # -- element construction ------------------------------------------

    def element(self, spec):
        """Coerce an int, a coefficient list, or an "a^k" power string."""
        if isinstance(spec, FieldElement):
            if spec.parent != self:
                raise MixedFields("element belongs to a different field")
            return spec
        if isinstance(spec, int):
            return FieldElement(self, _trim((spec % self.p,)))
        if isinstance(spec, str):
            s = spec.strip()
            if s == "a":
                return self.gen
            if s.startswith("a^"):
                return self.gen ** int(s[2:])
            return FieldElement(self, _trim((int(s) % self.p,)))
        if isinstance(spec, (list, tuple)):
            coeffs = [c % self.p for c in spec]
            if len(coeffs) > self.n:
                raise ValueError("coefficient vector longer than the degree")
            return FieldElement(self, _trim(coeffs))
        raise TypeError(f"cannot coerce {spec!r} into {self!r}")

    def from_index(self, i):
        coeffs = []
        for _ in range(self.n):
            coeffs.append(i % self.p)
            i //= self.p
        return FieldElement(self, _trim(coeffs))

    def index(self, v):
        out = 0
        for c in reversed(v.padded()):
            out = out * self.p + c
        return out

    def elements(self):
        for i in range(self.q):
            yield self.from_index(i)

    @property
    def canonical_nonsquare(self):
        """First nonsquare in the canonical element order (odd q only)."""
        if self.p == 2:
            raise OddCharacteristic("every element of a char-2 field is a square")
        if self._nonsquare is None:
            for v in self.elements():
                if not v.is_zero() and not v.is_square():
                    self._nonsquare = v
                    break
        return self._nonsquare

    # -- discrete-log tables (small-field search acceleration) ---------

    def dlog_tables(self):
        """(exp, log) tables over element indices; generator is the first
        primitive element in canonical order.  Intended for q <= ~4096."""
        if self._dlog is None:
            factors = set(_prime_factors(self.q - 1)) if self.q > 2 else set()
            g = None
            for v in self.elements():
                if v.is_zero():
                    continue
                if all((v ** ((self.q - 1) // r)) != self.one for r in factors):
                    g = v
                    break
            exp = [0] * (self.q - 1)
            log = [None] * self.q
            acc = self.one
            for k in range(self.q - 1):
                idx = self.index(acc)
                exp[k] = idx
                log[idx] = k
                acc = acc * g
            self._dlog = (exp, log)
        return self._dlog


class FieldElement:
    """A fully reduced coefficient vector in the generator of its field."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        self.parent = parent
        self.coeffs = tuple(coeffs)

    def padded(self):
        return list(self.coeffs) + [0] * (self.parent.n - len(self.coeffs))

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.parent != self.parent:
            raise MixedFields("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.parent, _padd(self.coeffs, other.coeffs, self.parent.p))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.parent, _psub(self.coeffs, other.coeffs, self.parent.p))

    def __neg__(self):
        p = self.parent.p
        return FieldElement(self.parent, tuple((-c) % p for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        F = self.parent
        prod = _pmul(self.coeffs, other.coeffs, F.p)
        if F.n > 1 and len(prod) > F.n:
            prod = _pmod(prod, F.defining_poly, F.p)
        return FieldElement(F, prod)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        F = self.parent
        if F.n == 1:
            return FieldElement(F, (pow(self.coeffs[0], F.p - 2, F.p),))
        return FieldElement(F, _pinvmod(self.coeffs, F.defining_poly, F.p))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.parent.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.parent == other.parent and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        if self.parent.n == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                s = "a" if i == 1 else f"a^{i}"
                terms.append(s if c == 1 else f"{c}*{s}")
        return "+".join(reversed(terms))

    def is_square(self):
        """Euler criterion for odd q; in characteristic 2 everything is a
        square.  Zero reports True."""
        if self.is_zero():
            return True
        F = self.parent
        if F.p == 2:
            return True
        if F.q <= 65536:
            _, log = F.dlog_tables()
            return log[F.index(self)] % 2 == 0
        return self ** ((F.q - 1) // 2) == F.one

    def sqrt(self):
        F = self.parent
        if F.p == 2:
            # squaring is a bijection; the inverse is q/2 more squarings
            out = self
            for _ in range(F.n - 1):
                out = out * out
            return out
        if self.is_zero():
            return self
        if F.q <= 65536:
            exp, log = F.dlog_tables()
            k = log[F.index(self)]
            if k % 2 == 1:
                raise NoSquareRoot(f"{self!r} is not a square in {F!r}")
            return F.from_index(exp[k // 2])
        if not self.is_square():
            raise NoSquareRoot(f"{self!r} is not a square in {F!r}")
        return _tonelli_shanks(F, self)

    def trace_to_F2(self):
        """Absolute trace down to F_2, as an int bit."""
        F = self.parent
        if F.p != 2:
            raise OddCharacteristic("absolute 2-trace needs characteristic 2")
        acc = F.zero
        v = self
        for _ in range(F.n):
            acc = acc + v
            v = v * v
        return 0 if acc.is_zero() else 1


def _tonelli_shanks(field, v):
    """Square root in a field-like object of odd order (generic element ops)."""
    q = field.order
    one = field.one
    if q % 4 == 3:
        return v ** ((q + 1) // 4)
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = _find_nonsquare(field)
    c = z ** s
    t = v ** s
    r = v ** ((s + 1) // 2)
    while t != one:
        t2 = t
        i = 0
        while t2 != one:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    return r


def _find_nonsquare(field):
    half = (field.order - 1) // 2
    for v in field.sample_elements():
        if not v.is_zero() and v ** half != field.one:
            return v
    raise NoSquareRoot("no nonsquare found")  # pragma: no cover


# enumerating small fields is cheap; expose a sampler for the generic helpers
def _ff_sample(self):
    return self.elements()


FiniteField.sample_elements = _ff_sample


# ---------------------------------------------------------------------------
# univariate polynomials over a field
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial; trailing zeros are trimmed."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        self.base = base
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, base, ints):
        return cls(base, [base.element(c) for c in ints])

    @classmethod
    def constant(cls, base, c):
        return cls(base, [base.element(c)])

    @classmethod
    def x(cls, base):
        return cls(base, [base.zero, base.one])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.base.zero

    def _check(self, other):
        if not isinstance(other, Poly) or other.base != self.base:
            raise MixedFields("polynomials over different fields")

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.base == other.base
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.base, out)

    def __sub__(self, other):
        self._check(other)
        out = list(self.coeffs) + [self.base.zero] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return Poly(self.base, out)

    def __neg__(self):
        return Poly(self.base, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):  # scalar (FieldElement or QElement)
            return Poly(self.base, [c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.base, [])
        out = [self.base.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(self.base, out)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = other.lc.inv()
        quot = [self.base.zero] * max(0, len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] * inv_lc
            if not c.is_zero():
                quot[i] = c
                for j, y in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * y
        return Poly(self.base, quot), Poly(self.base, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        result = Poly.constant(self.base, self.base.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc.inv()

    def eval(self, x):
        acc = self.base.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        F = self.base
        out = []
        for i in range(1, len(self.coeffs)):
            k = F.element(i % F.p)
            out.append(self.coeffs[i] * k)
        return Poly(F, out)

    def is_separable(self):
        d = self.derivative()
        if d.is_zero():
            return False
        return self.gcd(d).degree == 0

    is_squarefree = is_separable

    def compose(self, other):
        acc = Poly(self.base, [])
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(self.base, c)
        return acc

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.base, [self.base.zero] * k + list(self.coeffs))

    def pow_mod(self, e, modulus):
        result = Poly.constant(self.base, self.base.one)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def pth_root(self):
        """For f with f' = 0: the unique g with g^p = f (finite fields are
        perfect)."""
        F = self.base
        p = F.p
        root_pow = F.q // p
        out = []
        for i in range(0, len(self.coeffs), p):
            out.append(self.coeffs[i] ** root_pow)
        return Poly(F, out)

    # -- interpolation --------------------------------------------------

    @classmethod
    def interpolate(cls, base, nodes, values):
        if len(set(nodes)) != len(nodes):
            raise DuplicateNodes("interpolation nodes must be distinct")
        result = cls(base, [])
        for i, (xi, yi) in enumerate(zip(nodes, values)):
            num = cls.constant(base, base.one)
            den = base.one
            for j, xj in enumerate(nodes):
                if i == j:
                    continue
                num = num * cls(base, [-xj, base.one])
                den = den * (xi - xj)
            result = result + num * (yi / den)
        return result

    # -- factorization ---------------------------------------------------

    def squarefree_part(self):
        if self.is_zero() or self.degree == 0:
            return self.monic()
        return Poly(self.base, [self.base.one]) * _sqfree_product(self)

    def squarefree_decomposition(self):
        """[(g, m)] with the g monic squarefree pairwise coprime, f = lc * prod g^m."""
        return _squarefree_decomposition(self.monic())

    def distinct_degree_factorization(self):
        """On monic squarefree input: [(product of irreducibles of degree d, d)]."""
        F = self.base
        f = self.monic()
        out = []
        x = Poly.x(F)
        h = x
        d = 0
        while f.degree > 0:
            d += 1
            if 2 * d > f.degree:
                out.append((f, f.degree))
                break
            h = h.pow_mod(F.q, f)
            g = f.gcd(h - x)
            if g.degree > 0:
                out.append((g, d))
                f = f // g
                h = h % f
        return out

    def factor(self):
        """[(irreducible monic, multiplicity)], deterministic order."""
        out = []
        for g, m in self.squarefree_decomposition():
            for prod, d in g.distinct_degree_factorization():
                for piece in _equal_degree_factor(prod, d):
                    out.append((piece, m))
        out.sort(key=lambda t: (t[0].degree, [self.base.index(c) for c in t[0].coeffs]))
        return out

    def is_irreducible(self):
        f = self.monic()
        d = f.degree
        if d <= 0:
            return False
        F = self.base
        x = Poly.x(F)
        if (x.pow_mod(F.q ** d, f) - x) % f != Poly(F, []):
            return False
        for r in set(_prime_factors(d)):
            g = f.gcd(x.pow_mod(F.q ** (d // r), f) - x)
            if g.degree > 0:
                return False
        return True

    def roots(self):
        """Roots in the base field, sorted by canonical element order."""
        F = self.base
        if self.is_zero():
            raise DivisionByZero("zero polynomial vanishes everywhere")
        if F.q <= 1024:
            return [v for v in F.elements() if self.eval(v).is_zero()]
        x = Poly.x(F)
        lin = self.monic().gcd(x.pow_mod(F.q, self.monic()) - x)
        roots = [(-piece[0]) for piece, _ in
                 [(pc, 1) for pc in _equal_degree_factor(lin, 1)]]
        roots.sort(key=F.index)
        return roots

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"({c!r}){xs}" if xs else f"{c!r}")
        return "Poly(" + " + ".join(reversed(terms)) + ")"


def _sqfree_product(f):
    acc = Poly.constant(f.base, f.base.one)
    for g, _ in _squarefree_decomposition(f.monic()):
        acc = acc * g
    return acc


def _squarefree_decomposition(f):
    F = f.base
    p = F.p
    if f.degree <= 0:
        return []
    out = {}
    d = f.derivative()
    if d.is_zero():
        for g, m in _squarefree_decomposition(f.pth_root()):
            out[g] = out.get(g, 0) + m * p
        return sorted(out.items(), key=lambda t: t[1])
    a = f.gcd(d)
    w = f // a
    i = 1
    while w.degree > 0:
        y = w.gcd(a)
        z = w // y
        if z.degree > 0:
            out[z.monic()] = out.get(z.monic(), 0) + i
        w = y
        a = a // y
        i += 1
    if a.degree > 0:
        # remaining part is a p-th power
        for g, m in _squarefree_decomposition(a.pth_root()):
            out[g] = out.get(g, 0) + m * p
    return sorted(out.items(), key=lambda t: t[1])


def _equal_degree_factor(f, d):
    """Cantor-Zassenhaus split of a monic product of degree-d irreducibles."""
    if f.degree == 0:
        return []
    if f.degree == d:
        return [f.monic()]
    F = f.base
    rng = random.Random(hash((f.coeffs, d)) & 0xFFFFFFFF)
    n = f.degree
    while True:
        r = Poly(F, [F.from_index(rng.randrange(F.q)) for _ in range(n)])
        if r.degree < 1:
            continue
        if F.p == 2:
            k = F.n * d
            t = r
            acc = r
            for _ in range(k - 1):
                t = (t * t) % f
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            g = f.gcd(r.pow_mod((F.q ** d - 1) // 2, f) -
                      Poly.constant(F, F.one))
        if 0 < g.degree < f.degree:
            return (_equal_degree_factor(g, d)
                    + _equal_degree_factor(f // g, d))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        c = den.lc.inv()
        self.num = num * c
        self.den = den * c

    @property
    def base(self):
        return self.den.base

    def eval(self, x):
        d = self.den.eval(x)
        if d.is_zero():
            raise DivisionByZero(f"pole at {x!r}")
        return self.num.eval(x) / d

    def has_pole_at(self, x):
        return self.den.eval(x).is_zero()

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

_EXT_FIELDS = {}
_EMBEDDINGS = {}


def _smallest_irreducible(p, d):
    """Monic irreducible of degree d over F_p, smallest in index order."""
    if d == 1:
        return (0, 1)
    for idx in range(p ** d):
        coeffs = []
        i = idx
        for _ in range(d):
            coeffs.append(i % p)
            i //= p
        coeffs.append(1)
        cand = _trim(coeffs)
        if _fp_poly_irreducible(cand, p):
            return cand
    raise RuntimeError("unreachable: irreducibles of every degree exist")


def canonical_extension(p, d):
    """F_{p^d} with the deterministic smallest defining polynomial."""
    key = (p, d)
    if key not in _EXT_FIELDS:
        if d == 1:
            _EXT_FIELDS[key] = FiniteField(p)
        else:
            _EXT_FIELDS[key] = FiniteField(p, d, _smallest_irreducible(p, d))
    return _EXT_FIELDS[key]


def embed(field, m):
    """(F_{q^m}, phi) with phi a ring embedding; phi is deterministic via the
    smallest root of the defining polynomial in the canonical element order."""
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return field, lambda v: v
    key = (field, m)
    if key in _EMBEDDINGS:
        return _EMBEDDINGS[key]
    d = field.n * m
    if field.p ** d > MAX_FIELD_ORDER:
        raise ExtensionTooLarge(f"q^m = {field.p ** d} exceeds the supported budget")
    big = canonical_extension(field.p, d)
    if field.n == 1:
        def phi(v, _big=big):
            return _big.element(v.coeffs[0] if v.coeffs else 0)
        gen_pows = None
    else:
        mini = Poly.from_ints(big, list(field.defining_poly))
        root = min(mini.roots(), key=big.index)
        gen_pows = [big.one]
        for _ in range(field.n - 1):
            gen_pows.append(gen_pows[-1] * root)

        def phi(v, _big=big, _pows=gen_pows):
            acc = _big.zero
            for c, gp in zip(v.coeffs, _pows):
                if c:
                    acc = acc + _big.element(c) * gp
            return acc

    _EMBEDDINGS[key] = (big, phi)
    return big, phi


def map_poly(f, target, phi):
    return Poly(target, [phi(c) for c in f.coeffs])


# ---------------------------------------------------------------------------
# relative quotient fields (internal: back-substitution, divisor support)
# ---------------------------------------------------------------------------

class QuotientField:
    """F_q[x]/(m) for m irreducible over F_q.

    Used internally where a root of a specific irreducible polynomial is
    needed without choosing an absolute presentation: the class of x *is*
    the root.  Not part of the public field model.
    """

    def __init__(self, modulus):
        self.modulus = modulus.monic()
        self.base = modulus.base
        self.deg = modulus.degree
        self.order = self.base.q ** self.deg
        self.char = self.base.p
        self.zero = QElement(self, Poly(self.base, []))
        self.one = QElement(self, Poly.constant(self.base, self.base.one))
        self.x_class = QElement(self, Poly.x(self.base) % self.modulus)

    def from_base(self, c):
        return QElement(self, Poly.constant(self.base, c))

    def lift_poly(self, f):
        """Map a Poly over the base field to a Poly over this field."""
        return [self.from_base(c) for c in f.coeffs]

    def sample_elements(self):
        # deterministic enumeration of all elements (base-q digit counter);
        # a recurrence-based stream can get stuck in a cycle of squares
        q = self.base.q
        for idx in range(self.order):
            digits = []
            v = idx
            while v:
                digits.append(self.base.from_index(v % q))
                v //= q
            yield QElement(self, Poly(self.base, digits))

    def __eq__(self, other):
        return isinstance(other, QuotientField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("quot", self.modulus))

    def __repr__(self):
        return f"GF({self.base.q})[x]/({self.modulus!r})"


class QElement:
    __slots__ = ("parent", "rep")

    def __init__(self, parent, rep):
        self.parent = parent
        self.rep = rep

    def is_zero(self):
        return self.rep.is_zero()

    def _check(self, other):
        if not isinstance(other, QElement) or other.parent != self.parent:
            raise MixedFields("operands belong to different quotient fields")

    def __add__(self, other):
        self._check(other)
        return QElement(self.parent, self.rep + other.rep)

    def __sub__(self, other):
        self._check(other)
        return QElement(self.parent, self.rep - other.rep)

    def __neg__(self):
        return QElement(self.parent, -self.rep)

    def __mul__(self, other):
        self._check(other)
        return QElement(self.parent, (self.rep * other.rep) % self.parent.modulus)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        m = self.parent.modulus
        r0, r1 = m, self.rep
        F = self.parent.base
        s0, s1 = Poly(F, []), Poly.constant(F, F.one)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        return QElement(self.parent, (s0 * r0.lc.inv()) % m)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.parent.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, QElement) and self.parent == other.parent
                and self.rep == other.rep)

    def __hash__(self):
        return hash(("q", self.rep.coeffs))

    def is_square(self):
        if self.is_zero():
            return True
        if self.parent.char == 2:
            return True
        return self ** ((self.parent.order - 1) // 2) == self.parent.one

    def sqrt(self):
        K = self.parent
        if K.char == 2:
            out = self
            e = K.base.n * K.deg
            for _ in range(e - 1):
                out = out * out
            return out
        if self.is_zero():
            return self
        if not self.is_square():
            raise NoSquareRoot("not a square in the quotient field")
        return _tonelli_shanks(K, self)

    def __repr__(self):
        return f"[{self.rep!r}]"
