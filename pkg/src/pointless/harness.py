"""Fixture data handling and the verification pipeline.

Fixtures live in a strict TOML-like sectioned text file (grammar in
docs/fixtures.md).  Each section describes one curve over an explicitly
presented finite field; `verify` reconstructs every curve and replays the
claims (genus, pointlessness, extension counts, trigonality) exactly.
"""

import os
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .curves import (
    ArtinSchreierCurve,
    ASTower,
    FiberProductGenus4,
    HyperellipticOdd,
    PlaneQuartic,
)
from .errors import ParseError, PointlessError, ValidationError
from .field import FiniteField, Poly, RationalFunction

DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "tables.toml")

KINDS = ("hyperelliptic_odd", "artin_schreier", "plane_quartic",
         "fiber_product", "as_tower")

_COMMON_KEYS = {"table", "p", "n", "modulus", "kind", "claimed_genus",
                "claimed_pointless", "claimed_counts", "claimed_trigonal",
                "note"}
_KIND_KEYS = {
    "hyperelliptic_odd": {"f"},
    "artin_schreier": {"num", "den"},
    "plane_quartic": {"terms"},
    "fiber_product": {"f", "g"},
    "as_tower": {"f1_num", "f1_den", "second_a", "second_b", "second_d"},
}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _tokenize_value(text, line_no, col0):
    """Parse a single value: int, bool, quoted string, or bracketed list."""
    text = text.strip()
    if not text:
        raise ParseError("empty value", line_no, col0)
    if text == "true":
        return True
    if text == "false":
        return False
    if text.startswith('"'):
        if not text.endswith('"') or len(text) < 2:
            raise ParseError("unterminated string", line_no, col0)
        return text[1:-1]
    if text.startswith("["):
        return _parse_list(text, line_no, col0)
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad value {text!r}", line_no, col0)


def _parse_list(text, line_no, col0):
    """Bracketed list with nesting; elements are values."""
    if not text.endswith("]"):
        raise ParseError("unterminated list", line_no, col0)
    out = []
    depth = 0
    item = ""
    for ch in text[1:-1]:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets", line_no, col0)
        if ch == "," and depth == 0:
            out.append(_tokenize_value(item, line_no, col0))
            item = ""
        else:
            item += ch
    if depth != 0:
        raise ParseError("unbalanced brackets", line_no, col0)
    if item.strip():
        out.append(_tokenize_value(item, line_no, col0))
    return out


def parse_fixture_text(text):
    """Raw sections: list of (id, {key: value}, line_no)."""
    sections = []
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = raw.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", line_no, col)
            name = stripped[1:-1].strip()
            if not name:
                raise ParseError("empty section name", line_no, col)
            if any(name == s[0] for s in sections):
                raise ParseError(f"duplicate section {name!r}", line_no, col)
            current = (name, {}, line_no)
            sections.append(current)
            continue
        if current is None:
            raise ParseError("key outside of a section", line_no, col)
        if "=" not in stripped:
            raise ParseError("expected 'key = value'", line_no, col)
        key, _, val = stripped.partition("=")
        key = key.strip()
        if not key.isidentifier():
            raise ParseError(f"bad key {key!r}", line_no, col)
        if key in current[1]:
            raise ParseError(f"duplicate key {key!r}", line_no, col)
        current[1][key] = _tokenize_value(val, line_no,
                                          raw.index("=") + 2)
    return sections


# ---------------------------------------------------------------------------
# entries
# ---------------------------------------------------------------------------

@dataclass
class FixtureEntry:
    id: str
    table: str
    p: int
    n: int
    modulus: list            # defining polynomial as ints, [] for prime
    kind: str
    payload: dict            # kind-specific raw values
    claimed_genus: int
    claimed_pointless: bool
    claimed_counts: list = dc_field(default_factory=list)
    claimed_trigonal: bool = None
    note: str = ""

    def field(self):
        if self.n == 1:
            return FiniteField(self.p)
        return FiniteField(self.p, self.n, self.modulus)

    def curve(self):
        return _build_curve(self)


def _constant(F, v, entry_id):
    """A field constant: int, 'a^k' / '-a^k' / 'a' string, or coeff vector."""
    if isinstance(v, bool):
        raise ValidationError("boolean is not a field constant", entry_id)
    if isinstance(v, int):
        return F.element(v)
    if isinstance(v, str):
        neg = v.startswith("-")
        body = v[1:] if neg else v
        if body == "a":
            k = 1
        elif body.startswith("a^"):
            try:
                k = int(body[2:])
            except ValueError:
                raise ValidationError(f"bad power string {v!r}", entry_id)
        else:
            raise ValidationError(f"bad constant string {v!r}", entry_id)
        if F.n == 1:
            raise ValidationError("power string over a prime field", entry_id)
        out = F.element("a") ** k
        return -out if neg else out
    if isinstance(v, list):
        if not all(isinstance(c, int) for c in v):
            raise ValidationError("coefficient vector must hold ints",
                                  entry_id)
        if len(v) > F.n:
            raise ValidationError("coefficient vector longer than the degree",
                                  entry_id)
        acc = F.zero
        a_pow = F.one
        gen = F.element("a") if F.n > 1 else F.one
        for c in v:
            acc = acc + a_pow * F.element(c)
            a_pow = a_pow * gen
        return acc
    raise ValidationError(f"bad field constant {v!r}", entry_id)


def _poly(F, values, entry_id):
    if not isinstance(values, list):
        raise ValidationError("polynomial must be a list", entry_id)
    return Poly(F, [_constant(F, v, entry_id) for v in values])


def _build_curve(entry):
    F = entry.field()
    k = entry.kind
    pl = entry.payload
    if k == "hyperelliptic_odd":
        return HyperellipticOdd(F, _poly(F, pl["f"], entry.id))
    if k == "artin_schreier":
        return ArtinSchreierCurve(
            F, RationalFunction(_poly(F, pl["num"], entry.id),
                                _poly(F, pl["den"], entry.id)))
    if k == "plane_quartic":
        coeffs = {}
        for term in pl["terms"]:
            if (not isinstance(term, list) or len(term) != 4
                    or not all(isinstance(e, int) for e in term[:3])):
                raise ValidationError(f"bad quartic term {term!r}", entry.id)
            i, j, m = term[:3]
            if i < 0 or j < 0 or m < 0 or i + j + m != 4:
                raise ValidationError(f"bad quartic exponents {term!r}",
                                      entry.id)
            if (i, j, m) in coeffs:
                raise ValidationError(f"repeated monomial {term!r}", entry.id)
            coeffs[(i, j, m)] = _constant(F, term[3], entry.id)
        return PlaneQuartic(F, coeffs)
    if k == "fiber_product":
        return FiberProductGenus4(F, _poly(F, pl["f"], entry.id),
                                  _poly(F, pl["g"], entry.id))
    if k == "as_tower":
        f1 = RationalFunction(_poly(F, pl["f1_num"], entry.id),
                              _poly(F, pl["f1_den"], entry.id))
        return ASTower(F, f1,
                       _poly(F, pl["second_a"], entry.id),
                       _poly(F, pl["second_b"], entry.id),
                       _poly(F, pl["second_d"], entry.id),
                       claimed_genus=entry.claimed_genus)
    raise ValidationError(f"unknown kind {k!r}", entry.id)  # pragma: no cover


def _validate_section(name, kv, line_no):
    for req in ("table", "p", "kind", "claimed_genus", "claimed_pointless"):
        if req not in kv:
            raise ValidationError(f"missing key {req!r}", name)
    kind = kv["kind"]
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}", name)
    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    for key in kv:
        if key not in allowed:
            raise ValidationError(f"unknown key {key!r}", name)
    for req in _KIND_KEYS[kind]:
        if req not in kv:
            raise ValidationError(f"missing key {req!r}", name)
    p = kv["p"]
    n = kv.get("n", 1)
    modulus = kv.get("modulus", [])
    if not isinstance(p, int) or not isinstance(n, int):
        raise ValidationError("p and n must be integers", name)
    if n > 1 and not modulus:
        raise ValidationError("extension fields need a modulus", name)
    if n == 1 and modulus:
        raise ValidationError("prime fields take no modulus", name)
    entry = FixtureEntry(
        id=name,
        table=kv["table"],
        p=p,
        n=n,
        modulus=list(modulus),
        kind=kind,
        payload={k: kv[k] for k in _KIND_KEYS[kind]},
        claimed_genus=kv["claimed_genus"],
        claimed_pointless=kv["claimed_pointless"],
        claimed_counts=list(kv.get("claimed_counts", [])),
        claimed_trigonal=kv.get("claimed_trigonal"),
        note=kv.get("note", ""),
    )
    # constants must reduce in the entry's own presentation; a reducible
    # modulus or malformed constant fails here, not at verification time
    try:
        entry.curve()
    except (ValidationError, ParseError):
        raise
    except PointlessError as exc:
        raise ValidationError(str(exc), name)
    return entry


def load_fixtures(path=DATA_PATH):
    with open(path) as fh:
        text = fh.read()
    return load_fixture_text(text)


def load_fixture_text(text):
    return [_validate_section(name, kv, line_no)
            for name, kv, line_no in parse_fixture_text(text)]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return f'"{v}"'
    if isinstance(v, list):
        return "[" + ", ".join(_format_value(e) for e in v) + "]"
    raise ValueError(f"unserializable value {v!r}")  # pragma: no cover


def serialize(entries):
    chunks = []
    for e in entries:
        lines = [f"[{e.id}]"]
        kv = [("table", e.table), ("p", e.p)]
        if e.n != 1:
            kv += [("n", e.n), ("modulus", e.modulus)]
        kv.append(("kind", e.kind))
        kv += [(k, e.payload[k]) for k in sorted(e.payload)]
        kv += [("claimed_genus", e.claimed_genus),
               ("claimed_pointless", e.claimed_pointless)]
        if e.claimed_counts:
            kv.append(("claimed_counts", e.claimed_counts))
        if e.claimed_trigonal is not None:
            kv.append(("claimed_trigonal", e.claimed_trigonal))
        if e.note:
            kv.append(("note", e.note))
        lines += [f"{k} = {_format_value(v)}" for k, v in kv]
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    entries: list
    version: str
    extension_depth: int

    @property
    def passed(self):
        return sum(1 for e in self.entries if e["verdict"] == "pass")

    @property
    def failed(self):
        return len(self.entries) - self.passed

    @property
    def exit_status(self):
        return 0 if self.failed == 0 else 1

    def to_json(self):
        return {
            "version": self.version,
            "extension_depth": self.extension_depth,
            "summary": {"total": len(self.entries), "passed": self.passed,
                        "failed": self.failed},
            "entries": self.entries,
        }


def _verify_entry(entry, K):
    t0 = time.time()
    failures = []
    counts = []
    genus = None
    try:
        curve = entry.curve()
        genus = curve.genus
        if genus is not None and genus != entry.claimed_genus:
            failures.append(
                f"genus {genus} != claimed {entry.claimed_genus}")
        if entry.kind == "plane_quartic" and not curve.is_smooth():
            failures.append("quartic is singular")
        counts = [curve.count(i) for i in range(1, K + 1)]
        if entry.claimed_pointless and counts[0] != 0:
            failures.append(f"claimed pointless but N1 = {counts[0]}")
        if not entry.claimed_pointless and counts[0] == 0:
            failures.append("claimed not pointless but N1 = 0")
        for i, expected in enumerate(entry.claimed_counts[:len(counts)]):
            if counts[i] != expected:
                failures.append(
                    f"N{i + 1} = {counts[i]} != claimed {expected}")
        if entry.claimed_trigonal is not None:
            props = curve.properties()
            if props["trigonal"] != entry.claimed_trigonal:
                failures.append(
                    f"trigonal = {props['trigonal']} != claimed")
    except PointlessError as exc:
        failures.append(f"construction failed: {exc}")
    return {
        "id": entry.id,
        "kind": entry.kind,
        "q": entry.p ** entry.n,
        "genus": genus,
        "counts": counts,
        "verdict": "pass" if not failures else "fail",
        "failures": failures,
        "seconds": round(time.time() - t0, 3),
    }


def verify(entries, K=1):
    """Replay every entry's claims; failures are report rows, not errors."""
    if K < 1:
        raise ValueError("extension depth K must be >= 1")
    results = [_verify_entry(e, K) for e in entries]
    return VerificationReport(entries=results, version=__version__,
                              extension_depth=K)
