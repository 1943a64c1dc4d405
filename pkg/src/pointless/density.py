"""Chebotarev-style density heuristics.

Given a transitive permutation group G of degree d (the Galois group of the
closure of a degree-d cover, acting on the fiber), delta is the fraction of
elements of G with at least one fixed point: the density of places where the
fiber acquires a degree-one point.  A curve needing every one of N such
fibers to stay pointless does so with heuristic probability (1-delta)^N.

Also contains a deterministic Monte-Carlo rig (splitmix64) for measuring
actual pointless rates in the curve families.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import GroupTooLarge, NotTransitive, ParseError, UnknownFamily
from .field import Poly

MAX_GROUP_ORDER = 10 ** 6


# ---------------------------------------------------------------------------
# permutations in cycle notation
# ---------------------------------------------------------------------------

def parse_permutation(text, degree):
    """Parse cycle notation like "(1 2 3)(4 5)" into a tuple mapping
    0-based points; "()" is the identity.  Points are 1-based in the text."""
    perm = list(range(degree))
    seen = set()
    i = 0
    n = len(text)
    line = 1

    def err(msg, col):
        raise ParseError(msg, line, col + 1)

    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            err(f"expected '(' but found {ch!r}", i)
        j = text.find(")", i)
        if j < 0:
            err("unclosed cycle", i)
        body = text[i + 1:j].replace(",", " ").split()
        cycle = []
        for tok in body:
            if not tok.isdigit():
                err(f"bad point {tok!r}", i)
            v = int(tok)
            if not 1 <= v <= degree:
                err(f"point {v} outside 1..{degree}", i)
            if v - 1 in seen:
                err(f"point {v} repeated", i)
            seen.add(v - 1)
            cycle.append(v - 1)
        for k, v in enumerate(cycle):
            perm[v] = cycle[(k + 1) % len(cycle)]
        i = j + 1
    return tuple(perm)


def format_permutation(perm):
    d = len(perm)
    seen = [False] * d
    out = []
    for s in range(d):
        if seen[s] or perm[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        v = perm[s]
        while v != s:
            cyc.append(v)
            seen[v] = True
            v = perm[v]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _compose(a, b):
    """a after b."""
    return tuple(a[b[i]] for i in range(len(a)))


def group_closure(generators, degree):
    """All elements generated by the given permutations (BFS)."""
    ident = tuple(range(degree))
    gens = [g for g in generators if len(g) == degree]
    if len(gens) != len(generators):
        raise ValueError("generator degree mismatch")
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = _compose(g, e)
                if h not in elems:
                    if len(elems) >= MAX_GROUP_ORDER:
                        raise GroupTooLarge(
                            f"group order exceeds {MAX_GROUP_ORDER}")
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return elems


def is_transitive(elems, degree):
    orbit = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for e in elems:
                q = e[p]
                if q not in orbit:
                    orbit.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(orbit) == degree


@dataclass(frozen=True)
class DensityProblem:
    degree: int
    generators: tuple  # cycle-notation strings or permutation tuples

    def parsed_generators(self):
        return [parse_permutation(g, self.degree) if isinstance(g, str)
                else tuple(g) for g in self.generators]


@dataclass(frozen=True)
class DensityResult:
    degree: int
    order: int
    delta: Fraction              # fraction of elements with a fixed point
    lower_bound: Fraction        # 1/d
    upper_bound: Fraction        # 1 - (d-1)/|G|
    is_galois: bool              # |G| == d (regular action)

    def to_json(self):
        return {
            "degree": self.degree,
            "order": self.order,
            "delta": str(self.delta),
            "lower_bound": str(self.lower_bound),
            "upper_bound": str(self.upper_bound),
            "is_galois": self.is_galois,
        }


def compute_density(problem):
    """delta = fraction of group elements fixing at least one point (the
    union of the point-stabilizer conjugates)."""
    degree = problem.degree
    elems = group_closure(problem.parsed_generators(), degree)
    if not is_transitive(elems, degree):
        raise NotTransitive(f"group is not transitive on {degree} points")
    fixing = sum(1 for e in elems if any(e[i] == i for i in range(degree)))
    order = len(elems)
    return DensityResult(
        degree=degree,
        order=order,
        delta=Fraction(fixing, order),
        lower_bound=Fraction(1, degree),
        upper_bound=1 - Fraction(degree - 1, order),
        is_galois=(order == degree),
    )


def heuristic_pointless_probability(delta, base_point_count):
    """Probability that all base_point_count fibers miss their degree-one
    point: (1 - delta)^N, exact."""
    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if base_point_count < 0:
        raise ValueError("point count must be nonnegative")
    return (1 - delta) ** base_point_count


# ---------------------------------------------------------------------------
# deterministic Monte Carlo
# ---------------------------------------------------------------------------

class SplitMix64:
    """Deterministic 64-bit PRNG (splitmix64)."""

    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, n):
        """Uniform integer in [0, n) (rejection sampling, no modulo bias)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n


def wilson_interval(hits, n, z=1.96):
    """95% Wilson score interval for a binomial proportion."""
    if n == 0:
        return (0.0, 1.0)
    phat = hits / n
    z2 = z * z
    denom = 1 + z2 / n
    center = (phat + z2 / (2 * n)) / denom
    half = z * ((phat * (1 - phat) / n + z2 / (4 * n * n)) ** 0.5) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class MonteCarloReport:
    family: str
    q: int
    samples: int
    pointless: int
    rate: float
    wilson95: tuple
    heuristic: float
    seed: int

    def to_json(self):
        return {
            "family": self.family,
            "q": self.q,
            "samples": self.samples,
            "pointless": self.pointless,
            "rate": self.rate,
            "wilson95": list(self.wilson95),
            "heuristic": self.heuristic,
            "seed": self.seed,
        }


def _sample_klein4_hyper_odd(F, rng):
    """Random y^2 = f(x) with f even of degree 8 (a member of the
    Klein-four-symmetric family); rerolls until f is separable."""
    from .curves import HyperellipticOdd
    from .errors import EvenCharacteristic
    if F.p == 2:
        raise EvenCharacteristic("family needs odd characteristic")
    while True:
        cs = [F.from_index(rng.below(F.q)) for _ in range(5)]
        if cs[-1].is_zero():
            continue
        coeffs = [F.zero] * 9
        for i, c in enumerate(cs):
            coeffs[2 * i] = c
        f = Poly(F, coeffs)
        if f.is_separable():
            return HyperellipticOdd(F, f)


def _sample_diagonal_quartic(F, rng):
    from .curves import PlaneQuartic
    from .errors import EvenCharacteristic
    if F.p == 2:
        raise EvenCharacteristic("diagonal quartics are singular in char 2")
    while True:
        a, b, c = (F.from_index(1 + rng.below(F.q - 1)) for _ in range(3))
        d, e, g = (F.from_index(rng.below(F.q)) for _ in range(3))
        C = PlaneQuartic(F, {(4, 0, 0): a, (0, 4, 0): b, (0, 0, 4): c,
                             (2, 2, 0): d, (2, 0, 2): e, (0, 2, 2): g})
        if C.is_smooth():
            return C


def _sample_fiberproduct(F, rng):
    from .curves import FiberProductGenus4
    from .errors import UnsupportedShape
    while True:
        f = Poly(F, [F.from_index(rng.below(F.q)) for _ in range(3)]
                 + [F.from_index(1 + rng.below(F.q - 1))])
        g = Poly(F, [F.from_index(rng.below(F.q)) for _ in range(3)]
                 + [F.from_index(1 + rng.below(F.q - 1))])
        try:
            return FiberProductGenus4(F, f, g)
        except UnsupportedShape:
            continue


_FAMILIES = {
    "klein4_hyper_odd": _sample_klein4_hyper_odd,
    "diagonal_quartic": _sample_diagonal_quartic,
    "fiberproduct": _sample_fiberproduct,
}


def montecarlo_pointless_rate(family, F, samples, seed=0):
    """Sample `samples` random members of the family over F and measure how
    many have no rational point; the heuristic rate is (3/4)^(q+1)."""
    if family not in _FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}; "
                            f"known: {sorted(_FAMILIES)}")
    sampler = _FAMILIES[family]
    # per-sample sub-seeded streams: order-independent, merge by summation
    master = SplitMix64(seed)
    sub_seeds = [master.next_u64() for _ in range(samples)]
    hits = 0
    for s in sub_seeds:
        C = sampler(F, SplitMix64(s))
        if C.count(1) == 0:
            hits += 1
    rate = hits / samples if samples else 0.0
    return MonteCarloReport(
        family=family,
        q=F.q,
        samples=samples,
        pointless=hits,
        rate=rate,
        wilson95=wilson_interval(hits, samples),
        heuristic=float(Fraction(3, 4) ** (F.q + 1)),
        seed=seed,
    )
