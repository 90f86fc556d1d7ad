"""Gelfand-Tsetlin tableaux: base vectors, integer shifts and basis keys.

A base vector encodes a triangular array of rationals through *anchors*:
a short list of rationals with pairwise distinct fractional parts, an
anchor index per position, and an integer offset per position.  Two
entries differ by an integer exactly when they carry the same anchor, so
every "integral difference" question in the tableau combinatorics is
decided exactly by comparing anchor indices and offsets.

Basis elements are labelled by ``TabKey`` values: an integer shift of the
rows below the top together with the kind marker ``T`` (regular tableau)
or ``DT`` (derivative tableau, present only in the one-singular family).
The quotient relations between a shift and its row-k transposition are
folded into :func:`canonicalize`, so only canonical labels circulate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .ratcalc import format_rat, parse_rat

# Row products in the action formulas grow factorially with n; the cap
# keeps exact arithmetic at desk scale.  Raise it deliberately if needed.
N_CAP = 6

__all__ = [
    "N_CAP",
    "Family",
    "Classification",
    "Kind",
    "Shift",
    "TabKey",
    "BaseVector",
    "classify",
    "singular_triple",
    "is_standard",
    "tau",
    "canonicalize",
    "distance",
]


class Family(enum.Enum):
    FINITE_STANDARD = "finite_standard"
    GENERIC = "generic"
    ONE_SINGULAR = "one_singular"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class Classification:
    family: Family
    singular: tuple[int, int, int] | None = None  # (k, i, j), i < j, in row k


class Kind(enum.Enum):
    REGULAR = "T"
    DERIVATIVE = "DT"


@dataclass(frozen=True)
class Shift:
    """Integer shift of the tableau rows 1..n-1; the top row never moves.

    rows[r-1] holds row r (length r), ordered bottom row last in the JSON
    form but stored here ascending by row index.
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n - 1:
            raise ValueError("shift must cover rows 1..n-1")
        for r, row in enumerate(self.rows, start=1):
            if len(row) != r:
                raise ValueError(f"row {r} of shift must have {r} entries")

    @classmethod
    def zero(cls, n: int) -> "Shift":
        return cls(n, tuple(tuple(0 for _ in range(r)) for r in range(1, n)))

    @classmethod
    def delta(cls, n: int, r: int, s: int) -> "Shift":
        return cls.zero(n).bump(r, s, 1)

    def get(self, r: int, s: int) -> int:
        if r == self.n:
            return 0
        return self.rows[r - 1][s - 1]

    def bump(self, r: int, s: int, amount: int) -> "Shift":
        if not (1 <= s <= r <= self.n - 1):
            raise ValueError(f"position ({r},{s}) is not shiftable")
        rows = list(list(row) for row in self.rows)
        rows[r - 1][s - 1] += amount
        return Shift(self.n, tuple(tuple(row) for row in rows))

    def __add__(self, other: "Shift") -> "Shift":
        return Shift(
            self.n,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self) -> "Shift":
        return Shift(self.n, tuple(tuple(-a for a in row) for row in self.rows))

    def __sub__(self, other: "Shift") -> "Shift":
        return self + (-other)

    def swap(self, k: int, i: int, j: int) -> "Shift":
        """Exchange the entries at (k, i) and (k, j)."""
        rows = list(list(row) for row in self.rows)
        rows[k - 1][i - 1], rows[k - 1][j - 1] = rows[k - 1][j - 1], rows[k - 1][i - 1]
        return Shift(self.n, tuple(tuple(row) for row in rows))

    def positions(self) -> Iterator[tuple[int, int]]:
        for r in range(1, self.n):
            for s in range(1, r + 1):
                yield (r, s)

    def to_json(self) -> list[list[int]]:
        """Rows listed top down (row n-1 first), matching the vector layout."""
        return [list(row) for row in reversed(self.rows)]

    @classmethod
    def from_json(cls, n: int, data) -> "Shift":
        rows = [tuple(int(x) for x in row) for row in reversed(list(data))]
        return cls(n, tuple(rows))


@dataclass(frozen=True)
class TabKey:
    shift: Shift
    kind: Kind

    def to_json(self) -> dict:
        return {"shift": self.shift.to_json(), "kind": self.kind.value}

    @classmethod
    def from_json(cls, n: int, data) -> "TabKey":
        return cls(Shift.from_json(n, data["shift"]), Kind(data["kind"]))


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class BaseVector:
    """The fixed vector of the module: anchored rationals at each position.

    ``assignment[r-1][s-1]`` is the anchor index of position (r, s) and
    ``offsets[r-1][s-1]`` the integer offset, for 1 <= s <= r <= n with rows
    stored ascending.  entry(r, s) = anchors[assignment] + offset.

    Within any row below the top, two positions may share an anchor only
    with equal offsets (the normalized singular configuration); the general
    integral pair is reached by shifting the basis label instead.
    """

    n: int
    anchors: tuple[Fraction, ...]
    assignment: tuple[tuple[int, ...], ...]
    offsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not (2 <= self.n <= N_CAP):
            raise ValueError(f"n must be between 2 and {N_CAP}")
        if len(self.assignment) != self.n or len(self.offsets) != self.n:
            raise ValueError("assignment and offsets must cover rows 1..n")
        for r in range(1, self.n + 1):
            if len(self.assignment[r - 1]) != r or len(self.offsets[r - 1]) != r:
                raise ValueError(f"row {r} must have {r} entries")
        fracs = [_frac_part(a) for a in self.anchors]
        if len(set(fracs)) != len(fracs):
            raise ValueError("anchors must have pairwise distinct fractional parts")
        for row in self.assignment:
            for a in row:
                if not (0 <= a < len(self.anchors)):
                    raise ValueError("anchor index out of range")
        if len(set(a for row in self.assignment for a in row)) > 1:
            # Mixed anchors: same-row anchor sharing below the top row is
            # only supported in the normalized form with equal entries.
            for r in range(1, self.n):
                row = self.assignment[r - 1]
                offs = self.offsets[r - 1]
                for s in range(r):
                    for u in range(s + 1, r):
                        if row[s] == row[u] and offs[s] != offs[u]:
                            raise ValueError(
                                f"row {r} positions {s + 1},{u + 1} differ by a nonzero "
                                "integer; normalize to equal entries and shift the key"
                            )

    def entry(self, r: int, s: int) -> Fraction:
        return self.anchors[self.assignment[r - 1][s - 1]] + self.offsets[r - 1][s - 1]

    def anchor_index(self, r: int, s: int) -> int:
        return self.assignment[r - 1][s - 1]

    def same_anchor(self, p: tuple[int, int], q: tuple[int, int]) -> bool:
        return self.anchor_index(*p) == self.anchor_index(*q)

    def top_row(self) -> tuple[Fraction, ...]:
        return tuple(self.entry(self.n, s) for s in range(1, self.n + 1))

    @classmethod
    def from_rows(cls, rows) -> "BaseVector":
        """Build from explicit entries, rows listed top down (row n first).

        Anchors are derived from the distinct fractional parts; the first
        value seen with a given fractional part becomes the anchor.
        """
        rows = [[parse_rat(x) if isinstance(x, str) else Fraction(x) for x in row] for row in rows]
        n = len(rows)
        ascending = list(reversed(rows))
        anchors: list[Fraction] = []
        assignment = []
        offsets = []
        for r in range(1, n + 1):
            if len(ascending[r - 1]) != r:
                raise ValueError("rows must form a triangle (top row first)")
            arow = []
            orow = []
            for value in ascending[r - 1]:
                f = _frac_part(value)
                for idx, a in enumerate(anchors):
                    if _frac_part(a) == f:
                        break
                else:
                    anchors.append(value)
                    idx = len(anchors) - 1
                diff = value - anchors[idx]
                arow.append(idx)
                orow.append(int(diff))
            assignment.append(tuple(arow))
            offsets.append(tuple(orow))
        return cls(n, tuple(anchors), tuple(assignment), tuple(offsets))

    @classmethod
    def finite(cls, top_row) -> "BaseVector":
        """All-integral vector with the given top row and zeroed lower rows."""
        top = [int(x) for x in top_row]
        n = len(top)
        assignment = tuple(tuple(0 for _ in range(r)) for r in range(1, n + 1))
        offsets = tuple(
            tuple(top) if r == n else tuple(0 for _ in range(r)) for r in range(1, n + 1)
        )
        return cls(n, (Fraction(0),), assignment, offsets)

    @classmethod
    def from_weight(cls, weight) -> "BaseVector":
        """Finite-family vector for a dominant integral highest weight."""
        lam = [int(x) for x in weight]
        return cls.finite([lam[i] - i for i in range(len(lam))])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "anchors": [format_rat(a) for a in self.anchors],
            "assignment": [list(row) for row in reversed(self.assignment)],
            "offsets": [list(row) for row in reversed(self.offsets)],
        }

    @classmethod
    def from_json(cls, data) -> "BaseVector":
        if "rows" in data:
            return cls.from_rows(data["rows"])
        n = int(data["n"])
        anchors = tuple(parse_rat(a) for a in data["anchors"])
        assignment = tuple(tuple(int(x) for x in row) for row in reversed(data["assignment"]))
        offsets = tuple(tuple(int(x) for x in row) for row in reversed(data["offsets"]))
        return cls(n, anchors, assignment, offsets)


@lru_cache(maxsize=None)
def classify(v: BaseVector) -> Classification:
    """Decide which module family the base vector supports.

    A single anchor shared by every position gives the finite standard
    family.  Otherwise the count of same-anchor pairs inside rows 1..n-1
    decides: zero pairs is generic, exactly one is one-singular at (k, i, j),
    and two or more is unsupported.
    """
    used = set(a for row in v.assignment for a in row)
    if len(used) == 1:
        return Classification(Family.FINITE_STANDARD)
    pairs = []
    for r in range(1, v.n):
        row = v.assignment[r - 1]
        for s in range(1, r + 1):
            for u in range(s + 1, r + 1):
                if row[s - 1] == row[u - 1]:
                    pairs.append((r, s, u))
    if not pairs:
        return Classification(Family.GENERIC)
    if len(pairs) == 1:
        k, i, j = pairs[0]
        return Classification(Family.ONE_SINGULAR, (k, i, j))
    return Classification(Family.UNSUPPORTED)


def singular_triple(v: BaseVector) -> tuple[int, int, int]:
    cls = classify(v)
    if cls.family is not Family.ONE_SINGULAR:
        raise ValueError("base vector is not one-singular")
    return cls.singular


def is_standard(v: BaseVector, w: Shift) -> bool:
    """Interlacing test for the entries of the shifted tableau.

    Requires integral non-negative gaps down-left and integral positive
    gaps down-right between consecutive rows; a non-integral difference
    (distinct anchors) makes the condition false.
    """
    for k in range(2, v.n + 1):
        for i in range(1, k):
            upper = v.entry(k, i) + w.get(k, i)
            lower = v.entry(k - 1, i) + w.get(k - 1, i)
            right = v.entry(k, i + 1) + w.get(k, i + 1)
            d1 = upper - lower
            if d1.denominator != 1 or d1 < 0:
                return False
            d2 = lower - right
            if d2.denominator != 1 or d2 <= 0:
                return False
    return True


def tau(v: BaseVector, w: Shift) -> Shift:
    """The involution exchanging the two singular positions of row k."""
    k, i, j = singular_triple(v)
    return w.swap(k, i, j)


def canonicalize(v: BaseVector, kind: Kind, w: Shift) -> tuple[TabKey, int]:
    """Resolve a (kind, shift) reference to the canonical basis key and sign.

    Regular tableaux are invariant under the row-k swap, so the canonical
    representative has w_ki - w_kj <= 0 with sign +1.  Derivative tableaux
    are antisymmetric: the canonical representative has w_ki - w_kj > 0,
    the swapped reference carries sign -1, and a swap-fixed shift is the
    zero vector (sign 0).
    """
    cls = classify(v)
    if cls.family is not Family.ONE_SINGULAR:
        if kind is Kind.DERIVATIVE:
            raise ValueError("derivative tableaux exist only in the one-singular family")
        return TabKey(w, Kind.REGULAR), 1
    k, i, j = cls.singular
    d = w.get(k, i) - w.get(k, j)
    if kind is Kind.REGULAR:
        if d > 0:
            return TabKey(w.swap(k, i, j), Kind.REGULAR), 1
        return TabKey(w, Kind.REGULAR), 1
    if d == 0:
        return TabKey(w, Kind.DERIVATIVE), 0
    if d < 0:
        return TabKey(w.swap(k, i, j), Kind.DERIVATIVE), -1
    return TabKey(w, Kind.DERIVATIVE), 1


def distance(z: Shift, w: Shift) -> int:
    """L1 distance between two shifts."""
    return sum(
        abs(a - b) for ra, rb in zip(z.rows, w.rows) for a, b in zip(ra, rb)
    )
