"""The five curve models: validated genus, exact point counting over
extensions, and pointlessness tests.

Counting conventions (degree-1 places of the smooth model):
  * odd-char hyperelliptic y^2 = f: each x contributes s(f(x)) with
    s = 2 / 1 / 0 for nonzero-square / zero / nonsquare; infinity
    contributes 1 when deg f is odd, else 2 or 0 by the square class
    of the leading coefficient.
  * Artin-Schreier y^2 + y = f (char 2): each non-pole x contributes 2
    or 0 by the absolute trace of f(x); each rational pole of odd order
    (including infinity) is ramified and contributes 1.
"""

from .errors import (
    EvenCharacteristic,
    OddCharacteristic,
    UnsupportedShape,
    ZeroPolynomial,
)
from .field import Poly, QuotientField, RationalFunction, embed, map_poly
from .series import Series, poly_at_series

_SQUARE_SETS = {}
_TRACE_MASKS = {}
_AS_SOLVERS = {}


def square_set(field):
    """Coefficient tuples of the nonzero squares of an odd-order field."""
    if field not in _SQUARE_SETS:
        out = set()
        for v in field.elements():
            if not v.is_zero():
                out.add((v * v).coeffs)
        _SQUARE_SETS[field] = frozenset(out)
    return _SQUARE_SETS[field]


def s_value(v, sqset):
    if v.is_zero():
        return 1
    return 2 if v.coeffs in sqset else 0


def _bits(v):
    out = 0
    for i, c in enumerate(v.coeffs):
        out |= c << i
    return out


def trace_mask(field):
    """Bitmask m with trace_to_F2(v) = parity(bits(v) & m); char 2 only."""
    if field not in _TRACE_MASKS:
        m = 0
        for j in range(field.n):
            e = field.gen ** j if field.n > 1 else field.one
            if e.trace_to_F2():
                m |= 1 << j
        _TRACE_MASKS[field] = m
    return _TRACE_MASKS[field]


def fast_trace(v, mask):
    return bin(_bits(v) & mask).count("1") & 1


def as_solver(field):
    """Returns solve(v) -> y with y^2 + y = v, or None when the trace is 1.

    The map y -> y^2 + y is F_2-linear; we precompute its reduced row
    echelon form over the power basis once per field.
    """
    if field in _AS_SOLVERS:
        return _AS_SOLVERS[field]
    n = field.n
    rows = []  # (pivot, mask, combo)
    for j in range(n):
        e = field.gen ** j if n > 1 else field.one
        mask = _bits(e * e + e)
        combo = 1 << j
        for p, m, c in rows:
            if (mask >> p) & 1:
                mask ^= m
                combo ^= c
        if mask:
            p = mask.bit_length() - 1
            for idx, (p2, m2, c2) in enumerate(rows):
                if (m2 >> p) & 1:
                    rows[idx] = (p2, m2 ^ mask, c2 ^ combo)
            rows.append((p, mask, combo))

    def solve(v, _rows=rows, _field=field):
        vb = _bits(v)
        combo = 0
        for p, m, c in _rows:
            if (vb >> p) & 1:
                vb ^= m
                combo ^= c
        if vb:
            return None
        return _field.element([(combo >> i) & 1 for i in range(_field.n)])

    _AS_SOLVERS[field] = solve
    return solve


# ---------------------------------------------------------------------------
# hyperelliptic, odd characteristic
# ---------------------------------------------------------------------------

class HyperellipticOdd:
    """y^2 = f(x) over odd characteristic, f squarefree of degree >= 3."""

    def __init__(self, base, f):
        if base.p == 2:
            raise EvenCharacteristic("use ArtinSchreierCurve in characteristic 2")
        if f.is_zero():
            raise ZeroPolynomial("f must be nonzero")
        if f.degree < 3:
            raise UnsupportedShape(f"deg f = {f.degree} < 3")
        if not f.is_squarefree():
            raise UnsupportedShape("f must be squarefree")
        self.base = base
        self.f = f
        self.genus = (f.degree + 1) // 2 - 1

    def count(self, i=1):
        big, phi = embed(self.base, i)
        f = map_poly(self.f, big, phi)
        sq = square_set(big)
        total = sum(s_value(f.eval(x), sq) for x in big.elements())
        if f.degree % 2 == 1:
            total += 1
        else:
            total += 2 if f.lc.coeffs in sq else 0
        return total

    def kind(self):
        return "hyperelliptic_odd"


# ---------------------------------------------------------------------------
# Artin-Schreier curves, characteristic 2
# ---------------------------------------------------------------------------

class ArtinSchreierCurve:
    """y^2 + y = f(x) over char 2 for the reduced shapes: squarefree
    denominator (simple finite poles) and polynomial part of degree 0 or odd.

    The conductor is the list of (place degree, pole order d_P); the genus is
    -1 + (1/2) sum (d_P + 1) deg P.
    """

    def __init__(self, base, f):
        if base.p != 2:
            raise OddCharacteristic("Artin-Schreier model needs characteristic 2")
        self.base = base
        if isinstance(f, Poly):
            f = RationalFunction(f, Poly.constant(base, base.one))
        self.f = f
        if f.den.degree > 0 and not f.den.is_squarefree():
            raise UnsupportedShape("denominator must be squarefree")
        m = f.num.degree - f.den.degree  # degree of the polynomial part
        if m >= 1 and m % 2 == 0:
            raise UnsupportedShape("polynomial part must have degree 0 or odd")
        self.conductor = []
        for piece, mult in f.den.factor():
            self.conductor.append((piece.degree, 1))
        if m >= 1:
            self.conductor.append((1, m))
        two_delta = sum((d + 1) * deg for deg, d in self.conductor)
        if two_delta % 2:
            raise UnsupportedShape("conductor gives non-integral genus")
        self.genus = -1 + two_delta // 2

    def count(self, i=1):
        big, phi = embed(self.base, i)
        num = map_poly(self.f.num, big, phi)
        den = map_poly(self.f.den, big, phi)
        mask = trace_mask(big)
        total = 0
        for x in big.elements():
            d = den.eval(x)
            if d.is_zero():
                total += 1  # simple (odd-order) pole: ramified rational place
                continue
            v = num.eval(x) / d
            total += 2 if fast_trace(v, mask) == 0 else 0
        m = self.f.num.degree - self.f.den.degree
        if m >= 1:
            total += 1  # odd-order pole at infinity, ramified
        else:
            v_inf = big.zero if m < 0 else phi(self.f.num.lc / self.f.den.lc)
            total += 2 if fast_trace(v_inf, mask) == 0 else 0
        return total

    def kind(self):
        return "artin_schreier"


def artin_schreier_genus(base, f):
    return ArtinSchreierCurve(base, f).genus


# ---------------------------------------------------------------------------
# plane quartics
# ---------------------------------------------------------------------------

QUARTIC_MONOMIALS = [(i, j, 4 - i - j) for i in range(4, -1, -1)
                     for j in range(4 - i, -1, -1)]


class PlaneQuartic:
    """Homogeneous quartic F(x, y, z); coeffs maps (i, j, k) -> FieldElement."""

    def __init__(self, base, coeffs):
        self.base = base
        if isinstance(coeffs, (list, tuple)):
            coeffs = dict(zip(QUARTIC_MONOMIALS, coeffs))
        full = {}
        for mono in QUARTIC_MONOMIALS:
            full[mono] = base.element(coeffs.get(mono, 0))
        extra = set(coeffs) - set(QUARTIC_MONOMIALS)
        if extra:
            raise UnsupportedShape(f"non-quartic monomials {sorted(extra)}")
        if all(v.is_zero() for v in full.values()):
            raise ZeroPolynomial("F must be nonzero")
        self.coeffs = full
        self._smooth = None
        self.genus = 3  # meaningful when smooth; is_smooth() verifies

    def value(self, x, y, z):
        acc = self.base.zero
        for (i, j, k), c in self.coeffs.items():
            if not c.is_zero():
                acc = acc + c * x ** i * y ** j * z ** k
        return acc

    def partial(self, var):
        """Coefficient dict of dF/dvar (a cubic form), var in {0,1,2}."""
        out = {}
        for mono, c in self.coeffs.items():
            e = mono[var]
            if e == 0:
                continue
            scaled = c * self.base.element(e)
            if scaled.is_zero():
                continue
            new = list(mono)
            new[var] -= 1
            out[tuple(new)] = out.get(tuple(new), self.base.zero) + scaled
        return {m: c for m, c in out.items() if not c.is_zero()}

    # -- smoothness ----------------------------------------------------

    def is_smooth(self):
        if self._smooth is None:
            self._smooth = self._check_smooth()
        return self._smooth

    def _check_smooth(self):
        base = self.base
        partials = [self.partial(v) for v in range(3)]
        if all(not p for p in partials):
            return False  # every partial vanishes identically
        forms = [self.coeffs] + partials

        # point (1:0:0)
        vals = [_eval_form(base, fm, base.one, base.zero, base.zero)
                for fm in forms]
        if all(v.is_zero() for v in vals):
            return False

        # line z = 0, y = 1: univariate conditions in x
        line = [_restrict_xy(base, fm) for fm in forms]
        nonzero_line = [u for u in line if not u.is_zero()]
        if not nonzero_line:
            return False
        gline = nonzero_line[0]
        for u in nonzero_line[1:]:
            gline = gline.gcd(u)
        if gline.degree >= 1:
            return False

        # chart z = 1: bivariate conditions in (x, y)
        bivs = [_restrict_chart(base, fm) for fm in forms]
        bF = bivs[0]
        if _biv_is_zero(bF):
            return False  # z divides F: reducible, hence singular
        if len(bF) == 1:
            return False  # F(x,y,1) depends on x alone: union of lines
        conditions = [b for b in bivs if not _biv_is_zero(b)]
        resultants = []
        for b in conditions[1:]:
            r = _resultant_y(bF, b, base)
            if not r.is_zero():
                resultants.append(r)
        if not resultants:
            return False  # F shares a y-factor with every partial: singular
        g = resultants[0]
        for r in resultants[1:]:
            g = g.gcd(r)
        if g.degree == 0:
            return True
        for piece, _ in g.factor():
            K = QuotientField(piece)
            x0 = K.x_class
            specs = []
            for b in conditions:
                spec = Poly(K, [_eval_poly_in_quotient(c, K, x0) for c in b])
                specs.append(spec)
            nonzero = [s for s in specs if not s.is_zero()]
            if not nonzero:
                return False
            h = nonzero[0]
            for s in nonzero[1:]:
                h = h.gcd(s)
            if h.degree >= 1:
                return False
        return True

    # -- counting ------------------------------------------------------

    def count(self, i=1):
        big, phi = embed(self.base, i)
        coeffs = {m: phi(c) for m, c in self.coeffs.items()}
        total = 0
        # chart z = 1: for each x, count y-roots of the restriction
        biv = _restrict_chart(big, coeffs)
        for x in big.elements():
            ypoly = Poly(big, [c.eval(x) for c in biv])
            total += _root_count(ypoly, big)
        # line z = 0, y = 1: roots in x
        u = _restrict_xy(big, coeffs)
        total += _root_count(u, big)
        # point (1:0:0)
        if coeffs[(4, 0, 0)].is_zero():
            total += 1
        return total

    def kind(self):
        return "plane_quartic"


def _eval_form(base, form, x, y, z):
    acc = base.zero
    for (i, j, k), c in form.items():
        if not c.is_zero():
            acc = acc + c * x ** i * y ** j * z ** k
    return acc


def _restrict_chart(base, form):
    """form(x, y, 1) as a list of Polys in x indexed by y-degree."""
    ydeg = max((j for (i, j, k), c in form.items() if not c.is_zero()), default=0)
    xdeg = max((i for (i, j, k), c in form.items() if not c.is_zero()), default=0)
    rows = [[base.zero] * (xdeg + 1) for _ in range(ydeg + 1)]
    for (i, j, k), c in form.items():
        if not c.is_zero():
            rows[j][i] = rows[j][i] + c
    return [Poly(base, row) for row in rows]


def _biv_is_zero(biv):
    return all(p.is_zero() for p in biv)


def _restrict_xy(base, form):
    """form(x, 1, 0) as a univariate Poly in x."""
    deg = max((i for (i, j, k), c in form.items()), default=0)
    out = [base.zero] * (deg + 1)
    for (i, j, k), c in form.items():
        if k == 0 and not c.is_zero():
            out[i] = out[i] + c
    return Poly(base, out)


def _eval_poly_in_quotient(p, K, x0):
    acc = K.zero
    for c in reversed(p.coeffs):
        acc = acc * x0 + K.from_base(c)
    return acc


def _resultant_y(a, b, base):
    """Res_y of two bivariate polynomials (lists of Polys by y-degree)."""
    while a and a[-1].is_zero():
        a = a[:-1]
    while b and b[-1].is_zero():
        b = b[:-1]
    if not a or not b:
        return Poly(base, [])
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for r in range(n):  # n rows of a's coefficients
        row = [Poly(base, [])] * size
        for k in range(m + 1):
            row[r + k] = a[m - k]
        rows.append(row)
    for r in range(m):  # m rows of b's coefficients
        row = [Poly(base, [])] * size
        for k in range(n + 1):
            row[r + k] = b[n - k]
        rows.append(row)
    return _poly_det(rows, base)


def _poly_det(M, base):
    """Fraction-free (Bareiss) determinant of a matrix of Polys."""
    n = len(M)
    M = [row[:] for row in M]
    negate = False
    prev = Poly.constant(base, base.one)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    negate = not negate
                    break
            else:
                return Poly(base, [])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero(), "Bareiss division must be exact"
                M[i][j] = q
            M[i][k] = Poly(base, [])
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if negate else det


def _root_count(p, field):
    """Number of distinct roots of p in the field; a zero p has them all."""
    if p.is_zero():
        return field.q
    if p.degree == 0:
        return 0
    if field.q <= 64:
        return sum(1 for v in field.elements() if p.eval(v).is_zero())
    pm = p.monic()
    x = Poly.x(field)
    return pm.gcd(x.pow_mod(field.q, pm) - x).degree


# ---------------------------------------------------------------------------
# fiber products of two hyperelliptic genus-1 quotients
# ---------------------------------------------------------------------------

class FiberProductGenus4:
    """y^2 = f(x), z^2 = g(x) for coprime separable cubics; genus 4."""

    def __init__(self, base, f, g):
        if base.p == 2:
            raise EvenCharacteristic("fiber products are an odd-char model")
        if f.degree != 3 or g.degree != 3:
            raise UnsupportedShape("f and g must be cubic")
        if not (f.is_separable() and g.is_separable()):
            raise UnsupportedShape("f and g must be separable")
        if f.gcd(g).degree > 0:
            raise UnsupportedShape("f and g must be coprime")
        self.base = base
        self.f = f
        self.g = g
        self.genus = 4

    def count(self, i=1):
        big, phi = embed(self.base, i)
        f = map_poly(self.f, big, phi)
        g = map_poly(self.g, big, phi)
        sq = square_set(big)
        total = sum(s_value(f.eval(x), sq) * s_value(g.eval(x), sq)
                    for x in big.elements())
        prod_lc = f.lc * g.lc
        total += 2 if prod_lc.coeffs in sq else 0
        return total

    def properties(self):
        """trigonal: span(f, g) contains a nonzero constant;
        extra_autos: the x -> (cube root of unity) x symmetry applies."""
        f, g = self.f, self.g
        vf = [f[1], f[2], f[3]]
        vg = [g[1], g[2], g[3]]
        trigonal = all((vf[i] * vg[j] - vf[j] * vg[i]).is_zero()
                       for i in range(3) for j in range(i + 1, 3))
        q = self.base.q
        extra = False
        if q % 3 == 1:
            if all(c.is_zero() for c in (f[1], f[2], g[1], g[2])):
                extra = True
        if self.base.p == 3:
            # both of the form a(x^3 - x) + b
            def shape(h):
                return h[2].is_zero() and (h[1] + h[3]).is_zero()
            if shape(f) and shape(g):
                extra = True
        return {"trigonal": trigonal, "extra_autos": extra}

    def kind(self):
        return "fiber_product"


# ---------------------------------------------------------------------------
# two-stage Artin-Schreier towers, characteristic 2
# ---------------------------------------------------------------------------

class ASTower:
    """y^2 + y = f1(x), z^2 + z = (A(x) + B(x) y) / D(x) over char 2.

    Supported first-stage shape: f1 = c1 x + c0 + cm1 / x.  The genus is a
    claim (cross-checked through the zeta module), not computed here.
    """

    def __init__(self, base, f1, A, B, D, claimed_genus=None):
        if base.p != 2:
            raise OddCharacteristic("towers need characteristic 2")
        self.base = base
        if isinstance(f1, Poly):
            f1 = RationalFunction(f1, Poly.constant(base, base.one))
        if f1.den.degree > 1 or (f1.den.degree == 1 and not f1.den.eval(base.zero).is_zero()):
            raise UnsupportedShape("first stage must be c1 x + c0 + cm1/x")
        if f1.num.degree > f1.den.degree + 1:
            raise UnsupportedShape("first stage must be c1 x + c0 + cm1/x")
        self.f1 = f1
        if f1.den.degree == 1:       # f1 = (c1 x^2 + c0 x + cm1)/x
            self.c1 = f1.num[2]
            self.c0 = f1.num[1]
            self.cm1 = f1.num[0]
        else:
            self.c1 = f1.num[1]
            self.c0 = f1.num[0]
            self.cm1 = base.zero
        if D.is_zero():
            raise ZeroPolynomial("second-stage denominator is zero")
        if not self.cm1.is_zero() and D.eval(base.zero).is_zero():
            raise UnsupportedShape("second-stage pole collides with the x=0 ramification")
        self.A, self.B, self.D = A, B, D
        self.genus = claimed_genus

    def count(self, i=1):
        big, phi = embed(self.base, i)
        c1, c0, cm1 = phi(self.c1), phi(self.c0), phi(self.cm1)
        A = map_poly(self.A, big, phi)
        Bp = map_poly(self.B, big, phi)
        D = map_poly(self.D, big, phi)
        mask = trace_mask(big)
        solve = as_solver(big)
        droots = set()
        if D.degree > 0:
            droots = {r.coeffs for r in D.roots()}
        total = 0
        for x in big.elements():
            if x.is_zero():
                if not cm1.is_zero():
                    continue  # ramified at stage 1, handled below
                v1 = c0
            else:
                v1 = c1 * x + c0 + cm1 / x
            if fast_trace(v1, mask):
                continue
            y0 = solve(v1)
            for y in (y0, y0 + big.one):
                if x.coeffs in droots:
                    total += self._place_points(big, mask, "finite", x, y)
                else:
                    v2 = (A.eval(x) + Bp.eval(x) * y) / D.eval(x)
                    total += 2 if fast_trace(v2, mask) == 0 else 0
        # place(s) over x = 0
        if not cm1.is_zero():
            total += self._place_points(big, mask, "ram_zero", None, None)
        # place(s) over x = infinity
        if not c1.is_zero():
            total += self._place_points(big, mask, "ram_inf", None, None)
        else:
            if fast_trace(c0, mask) == 0:
                y0 = solve(c0)
                for y in (y0, y0 + big.one):
                    total += self._place_points(big, mask, "ord_inf", None, y)
        return total

    def _place_points(self, big, mask, kind, x0, ybranch, prec=60):
        """Points of the tower above one place of the middle curve,
        via local expansion and Artin-Schreier reduction."""
        return _tower_place_points(self, big, mask, kind, x0, ybranch, prec)

    def kind(self):
        return "as_tower"


def _tower_place_points(tower, big, mask, kind, x0, ybranch, prec=60):
    _, phi = embed(tower.base, big.n // tower.base.n)
    c1, c0, cm1 = phi(tower.c1), phi(tower.c0), phi(tower.cm1)
    A = map_poly(tower.A, big, phi)
    Bp = map_poly(tower.B, big, phi)
    D = map_poly(tower.D, big, phi)
    one = big.one

    if kind == "finite":
        # unramified place at x = x0 with chosen branch value for y
        xs = Series(big, 0, [x0, one], prec)
        f1s = _f1_series(big, c1, c0, cm1, xs, prec)
        ys = _as_branch_series(big, f1s, ybranch, prec)
    elif kind == "ord_inf":
        # x = 1/t; f1 = c0 + cm1 t (c1 = 0 here)
        xs = Series(big, -1, [one], prec)
        f1s = Series(big, 0, [c0, cm1], prec)
        ys = _as_branch_series(big, f1s, ybranch, prec)
    elif kind == "ram_zero":
        xs = _ramified_x_series(big, cm1, c0, c1, prec)
        ys = Series.t(big, prec) * xs.inv()
    else:  # ram_inf
        Xs = _ramified_x_series(big, c1, c0, cm1, prec)
        xs = Xs.inv()
        ys = Series.t(big, prec) * Xs.inv()

    # cap the precision of the (exact) polynomial evaluations before dividing
    As = poly_at_series(A, xs).truncate(prec)
    Bs = (poly_at_series(Bp, xs) * ys).truncate(prec)
    Ds = poly_at_series(D, xs).truncate(prec)
    f2 = (As + Bs) / Ds
    return _as_reduce_count(big, mask, f2)


def _f1_series(big, c1, c0, cm1, xs, prec):
    s = Series.constant(big, c0, prec) + xs.scale(c1)
    if not cm1.is_zero():
        s = s + xs.inv().scale(cm1)
    return s


def _as_branch_series(big, F, y0, prec):
    """Power series y(t) with y^2 + y = F(t), y(0) = y0 (char 2: the
    coefficient recurrence a_k = F_k + a_{k/2}^2 is explicit)."""
    n = min(prec, F.prec)
    a = [y0]
    for k in range(1, n):
        c = F.coefficient(k) if k < F.prec else big.zero
        if k % 2 == 0:
            c = c + a[k // 2] * a[k // 2]
        a.append(c)
    return Series(big, 0, a, n)


def _ramified_x_series(big, clead, cmid, cfar, prec):
    """Solve x(cl + t + cm x + cf x^2) = t^2 for x as a series in t
    (the smooth-model parameter at a ramified Artin-Schreier pole)."""
    t = Series.t(big, prec)
    t2 = t * t
    xs = Series.zero(big, prec)
    for _ in range(prec // 2 + 2):
        den = Series.constant(big, clead, prec) + t + xs.scale(cmid) + (xs * xs).scale(cfar)
        xs = t2 * den.inv()
    return xs


def _as_reduce_count(big, mask, f2):
    """Points above a place from the local expansion of the second-stage
    right-hand side: repeatedly absorb even-order poles via s^2 + s."""
    sqrt_exp = big.n - 1  # char-2 sqrt by repeated squaring
    while True:
        if f2.is_zero():
            return 2
        m = -f2.valuation()
        if m <= 0:
            c = f2.coefficient(0)
            return 2 if fast_trace(c, mask) == 0 else 0
        if m % 2 == 1:
            return 1
        lead = f2.coefficient(-m)
        s = lead
        for _ in range(sqrt_exp):
            s = s * s
        u = Series(big, -m // 2, [s], f2.prec)
        f2 = f2 + u * u + u  # char 2: subtraction is addition


# ---------------------------------------------------------------------------
# generic helpers
# ---------------------------------------------------------------------------

def is_pointless(curve):
    return curve.count(1) == 0
