"""Generator and subalgebra actions on the three tableau module families.

The classical tableau formulas act on the finite-dimensional family (with
non-standard targets dropped) and, unfiltered, on the generic family.  In
the one-singular family every summand coefficient is deformed along the
line through the singular pair, t entering with +1 at (k, i) and -1 at
(k, j); the regular-tableau action multiplies by the vanishing difference
(realized as 2t) first, and the exact (value, half-derivative) pair at
t = 0 then supplies the derivative-tableau cross terms.

The commuting subalgebra acts in closed form through the symmetric
rational eigenvalue functions; the power-sum realization over all index
tuples is kept alongside as an independent cross-check route.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

from .ratcalc import (
    DegenerateFactor,
    Poly,
    PoleAtZero,
    RatFun,
    RF_ZERO,
    rf_d_pair,
    rf_from_linear_factors,
    rf_pole_order0,
)
from .tableau import (
    BaseVector,
    Family,
    Kind,
    Shift,
    TabKey,
    canonicalize,
    classify,
    is_standard,
    singular_triple,
)

__all__ = [
    "NotStandard",
    "ModVec",
    "coeff_e",
    "act_finite",
    "act_generic",
    "act_singular",
    "act_e",
    "apply_e",
    "act_gamma",
    "gamma_eval",
    "gamma_dvbar",
    "apply_casimir_pbw",
    "weight_eigenvalue",
]

RF_2T = RatFun(Poly([0, 2]))

_ZERO = Fraction(0)


class NotStandard(ValueError):
    """A finite-family action was requested on a non-standard tableau."""


def _add_term(acc: dict, key: TabKey, coeff: Fraction) -> None:
    if not coeff:
        return
    new = acc.get(key, _ZERO) + coeff
    if new:
        acc[key] = new
    else:
        del acc[key]


class ModVec:
    """Finitely supported exact linear combination of basis keys.

    Never stores zero coefficients.  Treated as immutable: all operations
    return fresh instances.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        data: dict[TabKey, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, coeff in items:
            _add_term(data, key, coeff)
        self._terms = data

    @classmethod
    def zero(cls) -> "ModVec":
        return cls()

    @classmethod
    def single(cls, key: TabKey, coeff: Fraction | int = 1) -> "ModVec":
        return cls([(key, Fraction(coeff))])

    def items(self) -> Iterator[tuple[TabKey, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, key: TabKey) -> Fraction:
        return self._terms.get(key, _ZERO)

    def support(self):
        return self._terms.keys()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModVec) and self._terms == other._terms

    def __hash__(self):
        raise TypeError("ModVec is not hashable")

    def __add__(self, other: "ModVec") -> "ModVec":
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            _add_term(acc, key, coeff)
        out = ModVec.zero()
        out._terms.update(acc)
        return out

    def __sub__(self, other: "ModVec") -> "ModVec":
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            _add_term(acc, key, -coeff)
        out = ModVec.zero()
        out._terms.update(acc)
        return out

    def scale(self, c: Fraction | int) -> "ModVec":
        c = Fraction(c)
        if not c:
            return ModVec.zero()
        out = ModVec.zero()
        out._terms.update({k: c * x for k, x in self._terms.items()})
        return out

    def __neg__(self) -> "ModVec":
        return self.scale(-1)

    def __repr__(self) -> str:
        if not self._terms:
            return "ModVec()"
        parts = [f"{c}*{k.kind.value}{[list(r) for r in k.shift.rows]}" for k, c in self._terms.items()]
        return "ModVec(" + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def _tcoefs(v: BaseVector) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Positions carrying the deformation variable, or None outside the
    one-singular family: +t at (k, i), -t at (k, j)."""
    cls = classify(v)
    if cls.family is not Family.ONE_SINGULAR:
        return None
    k, i, j = cls.singular
    return ((k, i), (k, j))


def _entry_term(v: BaseVector, z: Shift, r: int, s: int, deform: bool) -> tuple[Fraction, int]:
    """Entry of the shifted tableau as a linear term (c, m) = c + m t."""
    c = v.entry(r, s) + z.get(r, s)
    m = 0
    if deform:
        pair = _tcoefs(v)
        if pair is not None:
            if (r, s) == pair[0]:
                m = 1
            elif (r, s) == pair[1]:
                m = -1
    return c, m


def weight_eigenvalue(v: BaseVector, r: int, z: Shift) -> Fraction:
    """Diagonal eigenvalue of E_rr on the tableau shifted by z."""
    total = Fraction(r - 1)
    for s in range(1, r + 1):
        total += v.entry(r, s) + z.get(r, s)
    for s in range(1, r):
        total -= v.entry(r - 1, s) + z.get(r - 1, s)
    return total


def _summand_spec(l: int, m: int) -> tuple[int, int]:
    """(shifted row, direction) for the off-diagonal generator E_{lm}."""
    if m == l + 1:
        return l, 1
    if l == m + 1:
        return m, -1
    raise ValueError(f"E({l},{m}) is not an elementary generator")


def coeff_e(v: BaseVector, l: int, m: int, s0: int, z: Shift, deform: bool = True) -> RatFun:
    """Coefficient of the s0-th summand of the E_{lm} tableau formula at v+z.

    For E_{r,r+1} this is minus the product of differences against row r+1
    over the product of in-row differences, with the distinguished entry at
    (r, s0); for E_{r+1,r} the numerator runs over row r-1; for E_{rr} the
    summand is the constant diagonal weight.  With deform=True (one-singular
    context) the factors are linear in t; otherwise they are constants and a
    vanishing denominator difference raises DegenerateFactor.
    """
    if l == m:
        return RatFun.constant(weight_eigenvalue(v, l, z))
    r, direction = _summand_spec(l, m)
    if not (1 <= s0 <= r):
        raise ValueError(f"summand index {s0} out of range for row {r}")
    a = _entry_term(v, z, r, s0, deform)
    num: list[tuple[Fraction, int]] = []
    if direction > 0:
        sign = -1
        for jj in range(1, r + 2):
            b = _entry_term(v, z, r + 1, jj, deform)
            num.append((a[0] - b[0], a[1] - b[1]))
    else:
        sign = 1
        for jj in range(1, r):
            b = _entry_term(v, z, r - 1, jj, deform)
            num.append((a[0] - b[0], a[1] - b[1]))
    den: list[tuple[Fraction, int]] = []
    for u in range(1, r + 1):
        if u == s0:
            continue
        b = _entry_term(v, z, r, u, deform)
        den.append((a[0] - b[0], a[1] - b[1]))
    return rf_from_linear_factors(num, den, sign)


def _classical_terms(
    v: BaseVector, r: int, s: int, z: Shift
) -> list[tuple[Fraction, Shift]]:
    """Summands (coefficient, target shift) of the classical formula.

    Exact scalar path used by the finite and generic families, where no
    deformation is needed and no denominator may vanish.
    """
    if r == s:
        return [(weight_eigenvalue(v, r, z), z)]
    row, direction = _summand_spec(r, s)
    out = []
    for s0 in range(1, row + 1):
        a = v.entry(row, s0) + z.get(row, s0)
        coeff = Fraction(-direction)
        if direction > 0:
            for jj in range(1, row + 2):
                coeff *= a - (v.entry(row + 1, jj) + z.get(row + 1, jj))
        else:
            for jj in range(1, row):
                coeff *= a - (v.entry(row - 1, jj) + z.get(row - 1, jj))
        for u in range(1, row + 1):
            if u == s0:
                continue
            d = a - (v.entry(row, u) + z.get(row, u))
            if d == 0:
                raise DegenerateFactor(
                    f"in-row difference at row {row} positions {s0},{u} vanishes"
                )
            coeff /= d
        if coeff:
            out.append((coeff, z.bump(row, s0, direction)))
    return out


def act_finite(v: BaseVector, r: int, s: int, key: TabKey) -> ModVec:
    """Classical action on the finite standard family.

    Summands whose target tableau is not standard are dropped; requesting
    the action on a non-standard tableau raises NotStandard.
    """
    if classify(v).family is not Family.FINITE_STANDARD:
        raise ValueError("base vector does not carry the finite standard family")
    if key.kind is not Kind.REGULAR:
        raise ValueError("finite modules have no derivative tableaux")
    if not is_standard(v, key.shift):
        raise NotStandard("input tableau is not standard")
    acc: dict[TabKey, Fraction] = {}
    for coeff, target in _classical_terms(v, r, s, key.shift):
        if r != s and not is_standard(v, target):
            continue
        _add_term(acc, TabKey(target, Kind.REGULAR), coeff)
    return ModVec(acc)


def act_generic(v: BaseVector, r: int, s: int, key: TabKey) -> ModVec:
    """Classical action on the generic family: the full unfiltered sum."""
    if classify(v).family is not Family.GENERIC:
        raise ValueError("base vector is not generic")
    if key.kind is not Kind.REGULAR:
        raise ValueError("generic modules have no derivative tableaux")
    acc: dict[TabKey, Fraction] = {}
    for coeff, target in _classical_terms(v, r, s, key.shift):
        _add_term(acc, TabKey(target, Kind.REGULAR), coeff)
    return ModVec(acc)


def _singular_emissions(
    v: BaseVector, r: int, s: int, key: TabKey
) -> list[tuple[Shift, int, Fraction, Fraction]]:
    """Raw summand emissions (target shift, s0, T coeff, DT coeff).

    For a regular input the coefficient is the t-deformed summand times 2t
    (the vanishing singular difference); for a derivative input it is the
    summand itself, which is smooth because the canonical derivative shift
    keeps the singular entries apart.  In both cases the half-derivative at
    zero lands on the regular target and the value at zero on the
    derivative target.
    """
    z = key.shift
    if r == s:
        c = weight_eigenvalue(v, r, z)
        if key.kind is Kind.REGULAR:
            return [(z, 0, c, _ZERO)]
        return [(z, 0, _ZERO, c)]
    row, direction = _summand_spec(r, s)
    out = []
    for s0 in range(1, row + 1):
        rf = coeff_e(v, r, s, s0, z, deform=True)
        if key.kind is Kind.REGULAR:
            rf = rf * RF_2T
        try:
            value, half = rf_d_pair(rf)
        except PoleAtZero as exc:  # pragma: no cover - contract violation
            raise PoleAtZero(
                f"summand {s0} of E({r},{s}) not smooth at the singular point; "
                "this indicates a formula applied outside its domain"
            ) from exc
        out.append((z.bump(row, s0, direction), s0, half, value))
    return out


def act_singular(v: BaseVector, r: int, s: int, key: TabKey) -> ModVec:
    """Action of E_{rs}, |r-s| <= 1, on the one-singular family."""
    k, i, j = singular_triple(v)
    if key.kind is Kind.DERIVATIVE and key.shift.get(k, i) == key.shift.get(k, j):
        raise ValueError("swap-fixed derivative labels are zero and not basis keys")
    acc: dict[TabKey, Fraction] = {}
    for target, _s0, coeff_t, coeff_dt in _singular_emissions(v, r, s, key):
        if coeff_t:
            tkey, sg = canonicalize(v, Kind.REGULAR, target)
            _add_term(acc, tkey, sg * coeff_t)
        if coeff_dt:
            dkey, sg = canonicalize(v, Kind.DERIVATIVE, target)
            if sg:
                _add_term(acc, dkey, sg * coeff_dt)
    return ModVec(acc)


@lru_cache(maxsize=None)
def act_e(v: BaseVector, r: int, s: int, key: TabKey) -> ModVec:
    """Elementary generator action, dispatched on the module family."""
    family = classify(v).family
    if family is Family.FINITE_STANDARD:
        return act_finite(v, r, s, key)
    if family is Family.GENERIC:
        return act_generic(v, r, s, key)
    if family is Family.ONE_SINGULAR:
        return act_singular(v, r, s, key)
    raise ValueError("unsupported base vector (more than one singular pair)")


@lru_cache(maxsize=None)
def _apply_e_key(v: BaseVector, i: int, j: int, key: TabKey) -> ModVec:
    if abs(i - j) <= 1:
        return act_e(v, i, j, key)
    # Nested commutator route: E_ij = [E_iq, E_qj] with q between i and j.
    # The choice q = min + 1 is fixed for determinism; independence of the
    # choice is property-tested, not assumed.
    q = min(i, j) + 1
    first = _apply_vec(v, q, j, _apply_e_key(v, i, q, key))
    second = _apply_vec(v, i, q, _apply_e_key(v, q, j, key))
    return second - first


def _apply_vec(v: BaseVector, i: int, j: int, vec: ModVec) -> ModVec:
    acc: dict[TabKey, Fraction] = {}
    for key, c in vec.items():
        for key2, c2 in _apply_e_key(v, i, j, key).items():
            _add_term(acc, key2, c * c2)
    return ModVec(acc)


def apply_e(v: BaseVector, i: int, j: int, vec: ModVec) -> ModVec:
    """Action of any matrix unit E_ij, extended linearly to combinations.

    For |i-j| >= 2 the action is the recursive commutator through the fixed
    intermediate index min(i, j) + 1.
    """
    return _apply_vec(v, i, j, vec)


def apply_casimir_pbw(v: BaseVector, m: int, k: int, vec: ModVec) -> ModVec:
    """Central element of level (m, k) as the full sum over index tuples.

    Sums E_{i1 i2} E_{i2 i3} ... E_{ik i1} over all m^k tuples, composing
    right to left.  Deliberately formula-free: used as an independent
    oracle against the closed-form subalgebra action.
    """
    if not (1 <= k <= m):
        raise ValueError("need 1 <= k <= m")
    total = ModVec.zero()
    for idx in product(range(1, m + 1), repeat=k):
        hops = [(idx[a], idx[(a + 1) % k]) for a in range(k)]
        cur = vec
        for a, b in reversed(hops):
            cur = _apply_vec(v, a, b, cur)
            if cur.is_zero:
                break
        total = total + cur
    return total


@lru_cache(maxsize=None)
def _gamma_from_entries(
    entries: tuple[tuple[Fraction, int], ...], power: int
) -> tuple[Fraction, Fraction]:
    """(value, half-derivative) at t = 0 of the symmetric eigenvalue sum.

    Each term is (e_i + r - 1)^power times the product over other entries
    of (e_i - e_j - 1)/(e_i - e_j); individual terms may have simple poles
    at a coincident deformed pair, but the full sum is smooth and is
    reduced exactly before evaluation.
    """
    r = len(entries)
    total = RF_ZERO
    shift = Fraction(r - 1)
    for idx, (ci, mi) in enumerate(entries):
        num = [(ci + shift, mi)] * power
        den: list[tuple[Fraction, int]] = []
        for jdx, (cj, mj) in enumerate(entries):
            if jdx == idx:
                continue
            num.append((ci - cj - 1, mi - mj))
            den.append((ci - cj, mi - mj))
        total = total + rf_from_linear_factors(num, den, 1)
    if rf_pole_order0(total):
        raise PoleAtZero("eigenvalue sum has a non-removable pole; entries degenerate")
    return rf_d_pair(total)


def _row_entries(v: BaseVector, z: Shift, r: int) -> tuple[tuple[Fraction, int], ...]:
    return tuple(_entry_term(v, z, r, s, True) for s in range(1, r + 1))


def gamma_eval(v: BaseVector, r: int, s: int, z: Shift) -> Fraction:
    """Exact subalgebra eigenvalue of level (r, s) at the shifted tableau."""
    if not (1 <= s <= r <= v.n):
        raise ValueError("need 1 <= s <= r <= n")
    return _gamma_from_entries(_row_entries(v, z, r), s)[0]


def gamma_dvbar(v: BaseVector, r: int, s: int, z: Shift) -> Fraction:
    """Half-difference derivative of the eigenvalue function at the shifted
    tableau; zero whenever the function is symmetric in the deformed pair
    or does not involve row k at all."""
    singular_triple(v)
    if not (1 <= s <= r <= v.n):
        raise ValueError("need 1 <= s <= r <= n")
    return _gamma_from_entries(_row_entries(v, z, r), s)[1]


def act_gamma(
    v: BaseVector,
    r: int,
    s: int,
    target: TabKey | ModVec,
    shift: Shift | None = None,
) -> ModVec:
    """Closed-form action of the commuting generator of level (r, s).

    Diagonal on regular keys; on derivative keys it adds the regular
    correction term weighted by the eigenvalue derivative.  With ``shift``
    given, acts by the recentred element (generator minus its eigenvalue at
    that shift), which annihilates the tableaux living there.
    """
    vec = target if isinstance(target, ModVec) else ModVec.single(target)
    offset = gamma_eval(v, r, s, shift) if shift is not None else None
    acc: dict[TabKey, Fraction] = {}
    for key, c in vec.items():
        g = gamma_eval(v, r, s, key.shift)
        if offset is not None:
            g -= offset
        _add_term(acc, key, c * g)
        if key.kind is Kind.DERIVATIVE:
            dg = gamma_dvbar(v, r, s, key.shift)
            if dg:
                tkey, sg = canonicalize(v, Kind.REGULAR, key.shift)
                _add_term(acc, tkey, c * dg * sg)
    return ModVec(acc)
