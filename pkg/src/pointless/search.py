"""Search and census engines for pointless curves of genus 3 and 4.

Every engine enumerates a family in a fixed deterministic order, filters with
cheap arithmetic (index tables, bitmasks, early abort), and re-validates every
survivor through the curve models: a survivor is never trusted from the
filter alone.  Reports carry a fingerprint of the enumeration order so that
census results are reproducible and chunking-invariant.
"""

import hashlib
import json
import os
import time
from dataclasses import dataclass, field as dc_field

from .curves import (
    ArtinSchreierCurve,
    FiberProductGenus4,
    HyperellipticOdd,
    PlaneQuartic,
    fast_trace,
    square_set,
    trace_mask,
)
from .elliptic import (
    INF,
    cover_count,
    divisor_shape,
    rr_basis,
)
from .errors import (
    BudgetExceeded,
    EvenCharacteristic,
    OddCharacteristic,
    UnknownFamily,
)
from .field import Poly, RationalFunction
from .series import poly_at_series
from .zeta import zeta_report


@dataclass
class SearchConfig:
    family: str
    mode: str = "first_find"          # or "census"
    n: object = None                  # the x -> n/x twist parameter
    k: int = 6                        # pole-order budget for double covers
    exclude_torsion: bool = True
    budget: int = None                # candidate cap (BudgetExceeded)
    jobs: int = 1                     # chunk count; results chunk-invariant
    targets: list = None              # optional real Weil polynomials
    checkpoint: str = None            # path for resumable extended runs


@dataclass
class SearchReport:
    family: str
    parameters: dict
    candidates: int
    survivors: list                   # serialized curves (JSON-able dicts)
    dedup_classes: int
    zeta: list                        # per-survivor zeta summaries
    wall_time: float
    fingerprint: str
    kill_counts: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "family": self.family,
            "parameters": self.parameters,
            "candidates": self.candidates,
            "survivors": self.survivors,
            "dedup_classes": self.dedup_classes,
            "zeta": self.zeta,
            "wall_time": round(self.wall_time, 3),
            "fingerprint": self.fingerprint,
            "kill_counts": self.kill_counts,
        }


def _fingerprint(*parts):
    return hashlib.sha256("|".join(str(p) for p in parts).encode()).hexdigest()[:16]


def _poly_ints(F, f):
    return [F.index(c) for c in f.coeffs]


def _nonsquares(F):
    return [v for v in F.elements() if not v.is_zero() and not v.is_square()]


def _spend(budget, candidates):
    if budget is not None and candidates > budget:
        raise BudgetExceeded(f"candidate budget {budget} exhausted")


def _checkpoint_load(path):
    if path and os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _checkpoint_save(path, state):
    if path:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(state, fh)
        os.replace(tmp, path)


def _odometer(alphabet_size, length, start=0):
    """Tuples in little-endian odometer order, as index vectors."""
    total = alphabet_size ** length
    for code in range(start, total):
        v = code
        out = []
        for _ in range(length):
            out.append(v % alphabet_size)
            v //= alphabet_size
        yield code, out


# ---------------------------------------------------------------------------
# Klein-four hyperelliptic families (genus 3)
# ---------------------------------------------------------------------------

def _klein4_model(F, f, n):
    """x^4 * f(x + n/x) = sum_i c_i x^(4-i) (x^2 + n)^i as a Poly."""
    x = Poly.x(F)
    shifted = x * x + Poly.constant(F, n)
    acc = Poly(F, [])
    for i, c in enumerate(f.coeffs):
        acc = acc + (shifted ** i) * (x ** (4 - i)) * c
    return acc


def search_klein4_hyper_odd(F, n, mode="first_find", budget=None):
    """y^2 = f(x + n/x) for separable quartics f coprime to x^2 - 4n,
    materialized as degree-8 models y^2 = x^4 f(x + n/x)."""
    if F.p == 2:
        raise EvenCharacteristic("odd-characteristic family")
    n = F.element(n)
    if n.is_zero():
        raise ValueError("n must be nonzero")
    t0 = time.time()
    nu = F.canonical_nonsquare
    sq = square_set(F)
    # pointlessness needs f(u) to be a nonsquare for every u = x + n/x
    four_n = F.element(4) * n
    u_set = sorted({F.index(x + n / x) for x in F.elements() if not x.is_zero()})
    u_vals = [F.from_index(i) for i in u_set]
    disc_poly = Poly(F, [-four_n, F.zero, F.one])  # u^2 - 4n
    survivors = []
    zetas = []
    candidates = 0
    # lc fixed to the canonical nonsquare: square-class scaling y -> cy
    for code, idx in _odometer(F.q, 4):
        candidates += 1
        _spend(budget, candidates)
        coeffs = [F.from_index(i) for i in idx] + [nu]
        ok = True
        for u in u_vals:
            v = F.zero
            for c in reversed(coeffs):
                v = v * u + c
            if v.is_zero() or v.coeffs in sq:
                ok = False
                break
        if not ok:
            continue
        f = Poly(F, coeffs)
        if not f.is_separable() or f.gcd(disc_poly).degree > 0:
            continue
        model = _klein4_model(F, f, n)
        curve = HyperellipticOdd(F, model)
        if curve.genus != 3 or curve.count(1) != 0:
            continue  # pragma: no cover - the filter is exact
        survivors.append({"f": _poly_ints(F, f), "model": _poly_ints(F, model)})
        counts = [curve.count(i) for i in (1, 2, 3)]
        zetas.append(zeta_report(F.q, 3, counts).to_json())
        if mode == "first_find":
            break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="klein4_hyper_odd",
        parameters={"q": F.q, "n": F.index(n), "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("klein4_hyper_odd", F.q, F.index(n),
                                 "odometer-c0..c3-lc-nu"),
    )


def search_klein4_hyper_even(F, mode="first_find", budget=None):
    """Char 2: y^2 + y = f(x + 1/x), f = (a u^2 + b u + c)/d(u) with d a
    separable monic quadratic, d(0) != 0."""
    if F.p != 2:
        raise OddCharacteristic("characteristic-2 family")
    t0 = time.time()
    survivors = []
    zetas = []
    candidates = 0
    x = Poly.x(F)
    x2p1 = x * x + Poly.constant(F, F.one)
    for code, idx in _odometer(F.q, 5):
        a, b, c, d1, d0 = (F.from_index(i) for i in idx)
        if d1.is_zero() or d0.is_zero():
            continue  # d must be separable with nonzero roots
        candidates += 1
        _spend(budget, candidates)
        # substitute u = x + 1/x and clear x^2:
        # num = a (x^2+1)^2 + b x (x^2+1) + c x^2;  den likewise from d
        num = x2p1 * x2p1 * a + x * x2p1 * b + x * x * c
        den = x2p1 * x2p1 + x * x2p1 * d1 + x * x * d0
        if num.is_zero():
            continue
        fr = RationalFunction(num, den)
        if fr.den.degree < 4:
            continue  # poles cancelled: not the 2-simple-pole shape
        try:
            curve = ArtinSchreierCurve(F, fr)
        except Exception:
            continue
        if curve.genus != 3:
            continue
        if curve.count(1) != 0:
            continue
        survivors.append({"f_num": _poly_ints(F, fr.num),
                          "f_den": _poly_ints(F, fr.den),
                          "quartic_f": [F.index(v) for v in (c, b, a)],
                          "d": [F.index(d0), F.index(d1), 1]})
        counts = [curve.count(i) for i in (1, 2, 3)]
        zetas.append(zeta_report(F.q, 3, counts).to_json())
        if mode == "first_find":
            break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="klein4_hyper_even",
        parameters={"q": F.q, "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("klein4_hyper_even", F.q, "odometer-abcd1d0"),
    )


# ---------------------------------------------------------------------------
# diagonal quartics and the char-2 quartic family
# ---------------------------------------------------------------------------

def _diagonal_has_point(F, b, c, d, e, f, sq):
    """Conic fast path: x^4 + b y^4 + c z^4 + d x^2 y^2 + e x^2 z^2 + f y^2 z^2
    has a rational point iff the conic X^2 + bY^2 + cZ^2 + dXY + eXZ + fYZ
    has a point with X, Y, Z all squares (X = x^2 etc.)."""
    two = F.element(2)
    squares = [v for v in F.elements() if v.is_zero() or v.coeffs in sq]
    # z = 0: X^2 + dX + b = 0 with X = (x/y)^2 a square
    for X in squares:
        if (X * X + d * X + b).is_zero():
            return True
    # z = 1: b Y^2 + (dX + f) Y + (X^2 + eX + c) = 0 for square X, square root Y
    for X in squares:
        A2, A1, A0 = b, d * X + f, X * X + e * X + c
        if A2.is_zero():
            if A1.is_zero():
                if A0.is_zero():
                    return True
                continue
            Y = -A0 / A1
            if Y.is_zero() or Y.coeffs in sq:
                return True
            continue
        disc = A1 * A1 - F.element(4) * A2 * A0
        if disc.is_zero():
            Y = -A1 / (two * A2)
            if Y.is_zero() or Y.coeffs in sq:
                return True
        elif disc.coeffs in sq:
            r = disc.sqrt()
            for Y in ((-A1 + r) / (two * A2), (-A1 - r) / (two * A2)):
                if Y.is_zero() or Y.coeffs in sq:
                    return True
    return False


def _diagonal_quartic(F, b, c, d, e, f):
    return PlaneQuartic(F, {(4, 0, 0): F.one, (0, 4, 0): b, (0, 0, 4): c,
                            (2, 2, 0): d, (2, 0, 2): e, (0, 2, 2): f})


def search_diagonal_quartic(F, mode="first_find", budget=None):
    """x^4 + b y^4 + c z^4 + d x^2 y^2 + e x^2 z^2 + f y^2 z^2 (a = 1 WLOG)."""
    if F.p == 2:
        raise EvenCharacteristic("diagonal quartics need odd characteristic")
    t0 = time.time()
    sq = square_set(F)
    survivors = []
    zetas = []
    candidates = 0
    nonzero = [v for v in F.elements() if not v.is_zero()]
    for b in nonzero:                 # b = 0 gives the point (0:1:0)
        for c in nonzero:             # c = 0 gives the point (0:0:1)
            for code, idx in _odometer(F.q, 3):
                d, e, f = (F.from_index(i) for i in idx)
                candidates += 1
                _spend(budget, candidates)
                if _diagonal_has_point(F, b, c, d, e, f, sq):
                    continue
                C = _diagonal_quartic(F, b, c, d, e, f)
                if not C.is_smooth():
                    continue
                if C.count(1) != 0:
                    continue  # pragma: no cover - fast path is exact
                survivors.append({"coeffs": [1] + [F.index(v)
                                                   for v in (b, c, d, e, f)]})
                counts = [C.count(i) for i in (1, 2, 3)]
                zetas.append(zeta_report(F.q, 3, counts).to_json())
                if mode == "first_find":
                    break
            else:
                continue
            break
        else:
            continue
        break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="diagonal_quartic",
        parameters={"q": F.q, "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("diagonal_quartic", F.q, "b-c-outer-def-odometer"),
    )


def _char2_family_quartic(F, beta, gamma):
    """(x^2+xz)^2 + beta (x^2+xz)(y^2+yz) + (y^2+yz)^2 + gamma z^4."""
    A = {(2, 0, 0): F.one, (1, 0, 1): F.one}        # x^2 + xz
    B = {(0, 2, 0): F.one, (0, 1, 1): F.one}        # y^2 + yz
    coeffs = {}

    def mul(u, v):
        out = {}
        for mu, cu in u.items():
            for mv, cv in v.items():
                m = tuple(a + b for a, b in zip(mu, mv))
                out[m] = out.get(m, F.zero) + cu * cv
        return out

    def add_into(dst, src, scale):
        for m, c in src.items():
            dst[m] = dst.get(m, F.zero) + c * scale

    add_into(coeffs, mul(A, A), F.one)
    add_into(coeffs, mul(A, B), beta)
    add_into(coeffs, mul(B, B), F.one)
    add_into(coeffs, {(0, 0, 4): F.one}, gamma)
    return PlaneQuartic(F, {m: c for m, c in coeffs.items() if not c.is_zero()})


def search_quartic_char2(F, mode="first_find", budget=None):
    if F.p != 2:
        raise OddCharacteristic("characteristic-2 quartic family")
    t0 = time.time()
    survivors = []
    zetas = []
    candidates = 0
    for code, idx in _odometer(F.q, 2):
        beta, gamma = (F.from_index(i) for i in idx)
        candidates += 1
        _spend(budget, candidates)
        C = _char2_family_quartic(F, beta, gamma)
        if not C.is_smooth():
            continue
        if C.count(1) != 0:
            continue
        survivors.append({"beta": F.index(beta), "gamma": F.index(gamma)})
        counts = [C.count(i) for i in (1, 2)]
        zetas.append({"q": F.q, "counts": counts})
        if mode == "first_find":
            break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="quartic_char2",
        parameters={"q": F.q, "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("quartic_char2", F.q, "beta-gamma-odometer"),
    )


# ---------------------------------------------------------------------------
# fiber products of two hyperelliptic genus-1 covers (genus 4)
# ---------------------------------------------------------------------------

def search_fiberproduct(F, mode="first_find", budget=None):
    """y^2 = f, z^2 = g with f monic cubic and lc(g) the canonical nonsquare;
    pointless iff for every x at least one of f(x), g(x) is a nonsquare."""
    if F.p == 2:
        raise EvenCharacteristic("odd-characteristic family")
    t0 = time.time()
    nu = F.canonical_nonsquare
    sq = square_set(F)
    xs = list(F.elements())
    q = F.q
    # bitmask per cubic: bit i set when the value at xs[i] is NOT a nonsquare
    # (zero or nonzero square), i.e. the spot needs the partner to cover it
    def value_mask(coeffs):
        mask = 0
        for i, x in enumerate(xs):
            v = F.zero
            for c in reversed(coeffs):
                v = v * x + c
            if v.is_zero() or v.coeffs in sq:
                mask |= 1 << i
        return mask

    g_masks = None
    survivors = []
    zetas = []
    candidates = 0
    stop = False
    for fcode, fidx in _odometer(q, 3):
        fco = [F.from_index(i) for i in fidx] + [F.one]
        fmask = value_mask(fco)
        if g_masks is None:
            g_masks = {}
        for gcode, gidx in _odometer(q, 3):
            candidates += 1
            _spend(budget, candidates)
            gm = g_masks.get(gcode)
            if gm is None:
                gco = [F.from_index(i) for i in gidx] + [nu]
                gm = (value_mask(gco), gco)
                g_masks[gcode] = gm
            gmask, gco = gm
            if fmask & gmask:
                continue
            f = Poly(F, fco)
            g = Poly(F, gco)
            try:
                C = FiberProductGenus4(F, f, g)
            except Exception:
                continue
            if C.count(1) != 0:
                continue  # pragma: no cover - mask filter is exact
            props = C.properties()
            survivors.append({"f": _poly_ints(F, f), "g": _poly_ints(F, g),
                              "trigonal": props["trigonal"],
                              "extra_autos": props["extra_autos"]})
            counts = [C.count(i) for i in (1, 2)]
            zetas.append({"q": q, "counts": counts})
            if mode == "first_find":
                stop = True
                break
        if stop:
            break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="fiberproduct",
        parameters={"q": q, "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("fiberproduct", q, "f-monic-g-nu-odometer"),
    )

# ---------------------------------------------------------------------------
# exhaustive genus-3 hyperelliptic census (odd q > 7)
# ---------------------------------------------------------------------------

def _lagrange_basis(F, nodes):
    """L_i with L_i(nodes[j]) = [i == j], degree len(nodes)-1."""
    out = []
    for i, xi in enumerate(nodes):
        num = Poly.constant(F, F.one)
        denom = F.one
        for j, xj in enumerate(nodes):
            if i == j:
                continue
            num = num * Poly(F, [-xj, F.one])
            denom = denom * (xi - xj)
        out.append(num * denom.inv())
    return out


def _pgl2_canonical_key(F, f):
    """Canonical key of the degree-8 model y^2 = f under PGL2(F_q) acting on
    x and square scaling of f.  Exhaustive orbit minimum: adequate for the
    handful of survivors these censuses produce."""
    q = F.q
    best = None
    elems = list(F.elements())
    transforms = []
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    if (a * d - b * c).is_zero():
                        continue
                    # projective normalization: first nonzero of (a,b,c,d) = 1
                    lead = next(v for v in (a, b, c, d) if not v.is_zero())
                    if lead != F.one:
                        continue
                    transforms.append((a, b, c, d))
    num_cache = {}
    for a, b, c, d in transforms:
        # g(x) = (cx + d)^8 f((ax+b)/(cx+d))
        pnum = Poly(F, [b, a])
        pden = Poly(F, [d, c])
        g = Poly(F, [])
        pnum_pows = [Poly.constant(F, F.one)]
        pden_pows = [Poly.constant(F, F.one)]
        for _ in range(8):
            pnum_pows.append(pnum_pows[-1] * pnum)
            pden_pows.append(pden_pows[-1] * pden)
        for i, coef in enumerate(f.coeffs):
            if not coef.is_zero():
                g = g + pnum_pows[i] * pden_pows[8 - i] * coef
        if g.degree != 8:
            continue  # a branch point was moved to infinity
        key = _square_class_canonical(F, g)
        if best is None or key < best:
            best = key
    return best


def _square_class_canonical(F, g):
    """Minimal coefficient tuple over the square-scaling orbit of g."""
    best = None
    seen = set()
    for s in F.elements():
        if s.is_zero():
            continue
        s2 = s * s
        if s2.coeffs in seen:
            continue
        seen.add(s2.coeffs)
        key = tuple(F.index(c * s2) for c in g.coeffs)
        if best is None or key < best:
            best = key
    return best


def search_exhaustive_hyper_genus3(F, mode="census", budget=None,
                                   checkpoint=None):
    """All pointless y^2 = f with f of degree 8, driven by interpolation:
    values at 9 fixed nodes range over the nonsquares, the remaining q - 9
    evaluations early-abort, then lc/squarefree checks."""
    if F.p == 2:
        raise EvenCharacteristic("odd-characteristic census")
    if F.q < 9:
        raise ValueError("exhaustive census engine needs q >= 9")
    t0 = time.time()
    q = F.q
    sq = square_set(F)
    ns = _nonsquares(F)
    nodes = [F.from_index(i) for i in range(9)]
    others = [F.from_index(i) for i in range(9, q)]
    lag = _lagrange_basis(F, nodes)
    # linear functionals of the 9 values: leading coefficient and the
    # evaluations at the remaining field elements
    lc_w = [L[8] for L in lag]
    other_w = [[L.eval(x) for L in lag] for x in others]
    survivors = []
    zetas = []
    keys = []
    candidates = 0
    state = _checkpoint_load(checkpoint)
    start = state["next"] if state else 0
    if state:
        survivors = state["survivors"]
        candidates = state["candidates"]
    nv = len(ns)
    for code, idx in _odometer(nv, 9, start=start):
        candidates += 1
        _spend(budget, candidates)
        if checkpoint and candidates % 100000 == 0:
            _checkpoint_save(checkpoint, {"next": code + 1,
                                          "survivors": survivors,
                                          "candidates": candidates})
        vals = [ns[i] for i in idx]
        lc = F.zero
        for w, v in zip(lc_w, vals):
            lc = lc + w * v
        if lc.is_zero() or lc.coeffs in sq:
            continue
        ok = True
        for row in other_w:
            acc = F.zero
            for w, v in zip(row, vals):
                acc = acc + w * v
            if acc.is_zero() or acc.coeffs in sq:
                ok = False
                break
        if not ok:
            continue
        f = Poly(F, [F.zero])
        for L, v in zip(lag, vals):
            f = f + L * v
        if not f.is_separable():
            continue
        curve = HyperellipticOdd(F, f)
        if curve.genus != 3 or curve.count(1) != 0:
            continue  # pragma: no cover - value filter is exact
        survivors.append({"f": _poly_ints(F, f)})
        counts = [curve.count(i) for i in (1, 2, 3)]
        zetas.append(zeta_report(q, 3, counts).to_json())
        if mode == "first_find":
            break
    # census dedup under PGL2 + square scaling
    classes = 0
    if survivors:
        seen_keys = []
        for s in survivors:
            f = Poly(F, [F.from_index(i) for i in s["f"]])
            key = _pgl2_canonical_key(F, f)
            s["iso_class_key"] = list(key) if key else None
            if key not in seen_keys:
                seen_keys.append(key)
        classes = len(seen_keys)
    if checkpoint:
        _checkpoint_save(checkpoint, {"next": nv ** 9, "survivors": survivors,
                                      "candidates": candidates, "done": True})
    return SearchReport(
        family="exhaustive_hyper_genus3",
        parameters={"q": q, "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("exhaustive_hyper_genus3", q,
                                 "nodes-0..8-nonsquare-odometer"),
    )


# ---------------------------------------------------------------------------
# double covers of elliptic curves (genus 3 via L(6*inf), genus 4 via L(8*inf))
# ---------------------------------------------------------------------------

def _index_tables(F):
    """(add, mul, is_sq) flat tables over element indices (small fields)."""
    q = F.q
    elems = [F.from_index(i) for i in range(q)]
    add = [0] * (q * q)
    mul = [0] * (q * q)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i * q + j] = F.index(a + b)
            mul[i * q + j] = F.index(a * b)
    sq = square_set(F)
    is_sq = [0] * q
    for i, a in enumerate(elems):
        if not a.is_zero() and a.coeffs in sq:
            is_sq[i] = 1
    return add, mul, is_sq


def _double_zero_kernel(E, basis, Q):
    """Basis of the space of functions in L(k*inf) vanishing to order >= 2
    at Q: kernel of the two leading local-expansion coefficients."""
    from .elliptic import _local_xy_series
    F = E.base
    xs, ys = _local_xy_series(E.cubic, Q, F, 6)
    rows = [[], []]
    for (i, j) in basis:
        s = xs
        acc = None
        # monomial series x^i y^j to order 2
        mono = None
        cur = None
        pow_x = poly_at_series(Poly(F, [F.zero] * i + [F.one]), xs) \
            if i else None
        if i and j:
            mono = (pow_x * ys).truncate(4)
        elif i:
            mono = pow_x.truncate(4)
        elif j:
            mono = ys.truncate(4)
        else:
            mono = poly_at_series(Poly.constant(F, F.one), xs).truncate(4)
        rows[0].append(mono.coefficient(0))
        rows[1].append(mono.coefficient(1))
    # gaussian elimination on the 2 x k system
    k = len(basis)
    pivots = []
    mat = [row[:] for row in rows]
    col_of_row = []
    r = 0
    for col in range(k):
        piv = None
        for rr in range(r, len(mat)):
            if not mat[rr][col].is_zero():
                piv = rr
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inv()
        mat[r] = [v * inv for v in mat[r]]
        for rr in range(len(mat)):
            if rr != r and not mat[rr][col].is_zero():
                c = mat[rr][col]
                mat[rr] = [a - c * b for a, b in zip(mat[rr], mat[r])]
        col_of_row.append(col)
        r += 1
        if r == len(mat):
            break
    pivot_cols = set(col_of_row)
    free_cols = [c for c in range(k) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [F.zero] * k
        vec[fc] = F.one
        for rr, pc in enumerate(col_of_row):
            vec[pc] = -mat[rr][fc]
        kernel.append(vec)
    return kernel


def search_double_covers_elliptic(E, genus_target=3, exclude_torsion=True,
                                  mode="census", budget=None, targets=None,
                                  checkpoint=None):
    """Genus-3 (k=6, Q from E/2E) or genus-4 (k=8, Q from E/3E) double covers
    z^2 = f.  Test 1: no rational point of E where f is a nonzero square.
    Test 2: divisor shape 2Q + (k-2 odd-order points) - k*inf."""
    F = E.base
    if F.p == 2:
        raise EvenCharacteristic("odd-characteristic engine")
    if genus_target not in (3, 4):
        raise ValueError("genus_target must be 3 or 4")
    k = 6 if genus_target == 3 else 8
    m = 2 if genus_target == 3 else 3
    t0 = time.time()
    basis = rr_basis(k)
    q = F.q
    nu = F.canonical_nonsquare
    from .errors import EmptyCosetUnderConstraint
    try:
        qreps = E.quotient_reps(m, exclude_two_torsion=exclude_torsion)
        used_fallback = False
    except EmptyCosetUnderConstraint:
        qreps = E.quotient_reps(m, exclude_two_torsion=exclude_torsion,
                                fallback=True)
        used_fallback = True
    add_t, mul_t, is_sq = _index_tables(F)
    pts = [P for P in E.points() if P is not INF]
    survivors = []
    zetas = []
    kill1 = kill2 = 0
    candidates = 0
    state = _checkpoint_load(checkpoint)
    start_rep = state["rep"] if state else 0
    for rep_i, Q in enumerate(qreps):
        if rep_i < start_rep:
            continue
        kernel = _double_zero_kernel(E, basis, Q)
        dim = len(kernel)
        # per-point values of the kernel basis functions, as indices
        from .elliptic import fn_ab, fn_value
        B_at = []
        for P in pts:
            row = []
            for vec in kernel:
                A, B = fn_ab(vec, basis, F)
                row.append(F.index(fn_value(A, B, P)))
            B_at.append(row)
        one_i = F.index(F.one)
        nu_i = F.index(nu)
        # enumerate modulo square scaling: leading coefficient in {1, nu}
        for lead in range(dim):
            for lead_val in (one_i, nu_i):
                for code, rest in _odometer(q, dim - lead - 1):
                    candidates += 1
                    _spend(budget, candidates)
                    lam = [0] * lead + [lead_val] + rest
                    # test 1 with early abort
                    ok = True
                    for row in B_at:
                        acc = 0
                        for l_i, b_i in zip(lam, row):
                            if l_i:
                                acc = add_t[acc * q + mul_t[l_i * q + b_i]]
                        if is_sq[acc]:
                            ok = False
                            break
                    if not ok:
                        kill1 += 1
                        continue
                    coeffs = [F.zero] * len(basis)
                    for l_i, vec in zip(lam, kernel):
                        if l_i:
                            li = F.from_index(l_i)
                            coeffs = [c + li * v
                                      for c, v in zip(coeffs, vec)]
                    if all(c.is_zero() for c in coeffs):
                        continue
                    sh = divisor_shape(E, coeffs, basis, Q, k)
                    if not sh["shape_ok"]:
                        kill2 += 1
                        continue
                    counts = [cover_count(E, coeffs, basis, i)
                              for i in (1, 2, 3)]
                    entry = {
                        "Q": [F.index(Q[0]), F.index(Q[1])],
                        "coeffs": [F.index(c) for c in coeffs],
                        "counts": counts,
                        "pointless": counts[0] == 0,
                    }
                    if targets:
                        rep = zeta_report(q, genus_target, counts)
                        entry["real_weil"] = rep.real_weil
                        entry["target_match"] = rep.real_weil in targets
                    survivors.append(entry)
                    zetas.append({"q": q, "counts": counts})
        if checkpoint:
            _checkpoint_save(checkpoint, {"rep": rep_i + 1,
                                          "survivors": survivors,
                                          "candidates": candidates})
        if mode == "first_find" and survivors:
            break
    classes = len({tuple(z["counts"]) for z in zetas}) if zetas else 0
    return SearchReport(
        family="double_covers_elliptic",
        parameters={"q": q, "genus": genus_target,
                    "curve": [F.index(E.a2), F.index(E.a4), F.index(E.a6)],
                    "reps": len(qreps), "fallback": used_fallback,
                    "mode": mode},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=classes,
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("double_covers", q, genus_target,
                                 F.index(E.a2), F.index(E.a4), F.index(E.a6),
                                 "lead-norm-odometer"),
        kill_counts={"test1": kill1, "test2": kill2},
    )


# ---------------------------------------------------------------------------
# genus-4 hyperelliptic (Artin-Schreier) census in characteristic 2
# ---------------------------------------------------------------------------

def _monic_irreducibles(F, degree):
    """Monic irreducibles of the given degree, lazily, in odometer order."""
    for code, idx in _odometer(F.q, degree):
        f = Poly(F, [F.from_index(i) for i in idx] + [F.one])
        if f.is_irreducible():
            yield f


def _conductor_stream(F):
    """Degree-5 conductors: a single quintic place first, then a quadratic
    place paired with a cubic place."""
    for m in _monic_irreducibles(F, 5):
        yield "5", (m,)
    cubics = None
    for p2 in _monic_irreducibles(F, 2):
        if cubics is None:
            cubics = list(_monic_irreducibles(F, 3))
        for p3 in cubics:
            yield "2+3", (p2, p3)


def _trace_matrix_kernel(F, mlist, mask):
    """F_2-kernel of g -> (Tr(g(x)/m(x)))_{x in F_q}, g of degree < deg m.

    Returns (kernel_basis, bit_to_coeff) where each kernel vector is a bit
    int over deg(m)*n coefficient bits.
    """
    m = mlist
    deg = m.degree
    n = F.n
    nbits = deg * n
    q = F.q
    xs = list(F.elements())
    inv_at = []
    for x in xs:
        inv_at.append(m.eval(x).inv())
    # column for coefficient bit (i, b): value Tr(e_b * x^i / m(x)) at each x
    cols = []
    basis_elems = [F.from_index(F.p ** b) for b in range(n)]
    for i in range(deg):
        for b in range(n):
            col = 0
            e = basis_elems[b]
            for r, x in enumerate(xs):
                v = e * (x ** i) * inv_at[r]
                if fast_trace(v, mask):
                    col |= 1 << r
            cols.append(col)
    # gaussian elimination on columns to find the kernel
    # represent each column with a tracking combination bitmask
    combos = [1 << j for j in range(nbits)]
    work = list(cols)
    pivots = {}  # row -> (col value, combo)
    kernel = []
    for j in range(nbits):
        v, comb = work[j], combos[j]
        while v:
            r = v.bit_length() - 1
            if r in pivots:
                pv, pc = pivots[r]
                v ^= pv
                comb ^= pc
            else:
                pivots[r] = (v, comb)
                break
        if v == 0:
            kernel.append(comb)
    return kernel


def _bits_to_poly(F, bits, deg):
    n = F.n
    coeffs = []
    for i in range(deg):
        idx = 0
        for b in range(n):
            if bits & (1 << (i * n + b)):
                idx += F.p ** b
        coeffs.append(F.from_index(idx))
    return Poly(F, coeffs)


def _first_trace_one(F, mask):
    for v in F.elements():
        if fast_trace(v, mask):
            return v
    raise ValueError("no trace-1 element")  # pragma: no cover


def search_hyper_genus4_char2(F, mode="first_find", budget=None,
                              checkpoint=None):
    """Genus-4 hyperelliptic curves with no rational Weierstrass point:
    y^2 + y = g(x)/m(x) + t over the conductor shapes {degree-5 place} and
    {degree-2 + degree-3 places}, all poles simple.

    Pointless iff Tr(g(x)/m(x)) = 0 for all rational x and Tr(t) = 1 (the
    place at infinity is ordinary with value t), which is an F_2-linear
    condition on g: each m contributes its kernel, filtered for conductor
    preservation (g not divisible by a factor of m).
    """
    if F.p != 2:
        raise OddCharacteristic("characteristic-2 census")
    t0 = time.time()
    q = F.q
    mask = trace_mask(F)
    t_val = _first_trace_one(F, mask)
    survivors = []
    zetas = []
    seen_vectors = []
    candidates = 0
    state = _checkpoint_load(checkpoint)
    start_m = state["next_m"] if state else 0
    if state:
        survivors = state["survivors"]
        candidates = state["candidates"]
        seen_vectors = [tuple(v) for v in state["seen_vectors"]]
    m_index = -1
    stop = False
    for shape_name, parts in _conductor_stream(F):
        m_index += 1
        if m_index < start_m:
            continue
        m = parts[0]
        for p in parts[1:]:
            m = m * p
        candidates += 1
        _spend(budget, candidates)
        kernel = _trace_matrix_kernel(F, m, mask)
        for bits in sorted(kernel_span(kernel)):
            if bits == 0:
                continue
            g = _bits_to_poly(F, bits, m.degree)
            if any((g % p).is_zero() for p in parts):
                continue  # a pole disappears: conductor changes
            num = g + m * t_val
            fr = RationalFunction(num, m)
            try:
                curve = ArtinSchreierCurve(F, fr)
            except Exception:
                continue
            if curve.genus != 4:
                continue
            if curve.count(1) != 0:
                continue  # pragma: no cover - construction is exact
            counts = [curve.count(i) for i in (1, 2, 3, 4)]
            vec = tuple(counts)
            entry = {"shape": shape_name,
                     "m": _poly_ints(F, m),
                     "g": _poly_ints(F, g),
                     "t": F.index(t_val),
                     "counts": counts}
            survivors.append(entry)
            zetas.append({"q": q, "counts": counts})
            if vec not in seen_vectors:
                seen_vectors.append(vec)
            if mode == "first_find":
                stop = True
                break
        if checkpoint and m_index % 1000 == 0:
            _checkpoint_save(checkpoint, {
                "next_m": m_index + 1, "survivors": survivors,
                "candidates": candidates,
                "seen_vectors": [list(v) for v in seen_vectors]})
        if stop:
            break
    if checkpoint:
        _checkpoint_save(checkpoint, {
            "next_m": m_index + 1, "survivors": survivors,
            "candidates": candidates, "done": not stop,
            "seen_vectors": [list(v) for v in seen_vectors]})
    return SearchReport(
        family="hyper_genus4_char2",
        parameters={"q": q, "mode": mode, "raw_survivors": len(survivors)},
        candidates=candidates,
        survivors=survivors,
        dedup_classes=len(seen_vectors),
        zeta=zetas,
        wall_time=time.time() - t0,
        fingerprint=_fingerprint("hyper_genus4_char2", q,
                                 "shape5-then-2+3-odometer"),
    )


def kernel_span(kernel_basis):
    """All F_2 combinations of the basis bit-vectors (small kernels only)."""
    if len(kernel_basis) > 24:
        raise BudgetExceeded("kernel too large to span explicitly")
    out = [0]
    for b in kernel_basis:
        out += [v ^ b for v in out]
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_ENGINES = {
    "klein4_hyper_odd":
        lambda F, cfg: search_klein4_hyper_odd(
            F, cfg.n if cfg.n is not None else 1, cfg.mode, cfg.budget),
    "klein4_hyper_even":
        lambda F, cfg: search_klein4_hyper_even(F, cfg.mode, cfg.budget),
    "diagonal_quartic":
        lambda F, cfg: search_diagonal_quartic(F, cfg.mode, cfg.budget),
    "quartic_char2":
        lambda F, cfg: search_quartic_char2(F, cfg.mode, cfg.budget),
    "fiberproduct":
        lambda F, cfg: search_fiberproduct(F, cfg.mode, cfg.budget),
    "exhaustive_hyper_genus3":
        lambda F, cfg: search_exhaustive_hyper_genus3(
            F, cfg.mode, cfg.budget, cfg.checkpoint),
    "hyper_genus4_char2":
        lambda F, cfg: search_hyper_genus4_char2(
            F, cfg.mode, cfg.budget, cfg.checkpoint),
}


def run_search(F, config):
    if config.family not in _ENGINES:
        raise UnknownFamily(f"unknown family {config.family!r}; "
                            f"known: {sorted(_ENGINES)}")
    return _ENGINES[config.family](F, config)


def first_find(F, family, **kw):
    return run_search(F, SearchConfig(family=family, mode="first_find", **kw))


def census(F, family, **kw):
    return run_search(F, SearchConfig(family=family, mode="census", **kw))
