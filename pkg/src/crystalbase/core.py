"""Crystal arithmetic shared by every other module.

Holds the extended integers used for ``phi``/``eps``, the Cartan pairing of
the classical types, the elementary crystals ``B_i`` and the tensor-product
signature rule over arbitrary lists of factors.

A *factor* is any object with two methods::

    crystal_stats(cd, i) -> (phi: ExtInt, eps: ExtInt, pairing: int)
    crystal_act(cd, i, direction) -> factor | None

where ``pairing`` is ``<h_i, wt>`` and ``None`` stands for the crystal
value 0.  Letters and tableaux implement the same protocol in
:mod:`crystalbase.tableaux`.
"""
from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from typing import Iterator, Sequence

LIE_TYPES = ("A", "B", "C", "D")
DIRECTIONS = ("e", "f")


class CrystalError(ValueError):
    """Invalid input to a crystal operation."""


class HeadSelectedError(RuntimeError):
    """f_i chose the virtual u_infinity factor of an embedded element."""


@total_ordering
class ExtInt:
    """An integer or the bottom element ``-inf``.

    Only the operations the signature rule needs are provided: adding or
    subtracting an ordinary integer, comparison and ``max``.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        if value is not None and not isinstance(value, int):
            raise TypeError(f"ExtInt wraps int or None, got {value!r}")
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtInt is immutable")

    @property
    def value(self) -> int | None:
        return self._value

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def __int__(self) -> int:
        if self._value is None:
            raise OverflowError("-inf has no integer value")
        return self._value

    def __add__(self, other):
        if isinstance(other, ExtInt):
            if self._value is None or other._value is None:
                return NEG_INF
            return ExtInt(self._value + other._value)
        if isinstance(other, int):
            return self if self._value is None else ExtInt(self._value + other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self if self._value is None else ExtInt(self._value - other)
        return NotImplemented

    def _key(self):
        return (0, 0) if self._value is None else (1, self._value)

    def __eq__(self, other):
        if isinstance(other, ExtInt):
            return self._value == other._value
        if isinstance(other, int):
            return self._value == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExtInt(other)
        if not isinstance(other, ExtInt):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(float("-inf")) if self._value is None else hash(self._value)

    def __repr__(self):
        return "-inf" if self._value is None else repr(self._value)

    def __reduce__(self):
        return (ExtInt, (self._value,))

    __str__ = __repr__


NEG_INF = ExtInt(None)


def ext_max(values) -> ExtInt:
    best = NEG_INF
    for v in values:
        if not isinstance(v, ExtInt):
            v = ExtInt(v)
        if v > best:
            best = v
    return best


@dataclass(frozen=True)
class CartanData:
    """Lie type, rank and the pairing matrix ``P[i][j] = <h_i, alpha_j>``.

    Indices are 1-based everywhere in the public API; ``pairing`` itself is
    a 0-based tuple of tuples.
    """

    lie_type: str
    rank: int
    pairing: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def of(cls, lie_type: str, rank: int) -> "CartanData":
        return _cartan(lie_type.upper(), int(rank))

    def p(self, i: int, j: int) -> int:
        return self.pairing[i - 1][j - 1]

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise CrystalError(f"index {i!r} out of range 1..{self.rank}")

    @property
    def indices(self) -> range:
        return range(1, self.rank + 1)

    def __str__(self):
        return f"{self.lie_type}{self.rank}"


@lru_cache(maxsize=None)
def _cartan(lie_type: str, n: int) -> CartanData:
    if lie_type not in LIE_TYPES:
        raise CrystalError(f"unknown Lie type {lie_type!r}")
    min_rank = 2 if lie_type in ("C", "D") else 1
    if n < min_rank:
        raise CrystalError(f"type {lie_type} needs rank >= {min_rank}, got {n}")
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    chain = n - 1 if lie_type == "D" else n
    for i in range(chain - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    if lie_type == "C":
        m[n - 2][n - 1], m[n - 1][n - 2] = -2, -1
    elif lie_type == "B" and n >= 2:
        m[n - 2][n - 1], m[n - 1][n - 2] = -1, -2
    elif lie_type == "D" and n >= 3:
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    return CartanData(lie_type, n, tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class RootVector:
    """``sum c_i alpha_i`` stored as its coefficient tuple."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    @property
    def in_negative_cone(self) -> bool:
        return all(c <= 0 for c in self.coeffs)

    @classmethod
    def simple(cls, cd: CartanData, j: int, mult: int = 1) -> "RootVector":
        cd.check_index(j)
        return cls(tuple(mult if k == j else 0 for k in cd.indices))

    @classmethod
    def zero(cls, cd: CartanData) -> "RootVector":
        return cls((0,) * cd.rank)


def cartan_pairing(cd: CartanData, i: int, v: RootVector) -> int:
    cd.check_index(i)
    if len(v.coeffs) != cd.rank:
        raise CrystalError(f"root vector {v.coeffs} has wrong length for {cd}")
    row = cd.pairing[i - 1]
    return sum(c * p for c, p in zip(v.coeffs, row))


def _check_direction(direction: str) -> None:
    if direction not in DIRECTIONS:
        raise CrystalError(f"direction must be 'e' or 'f', got {direction!r}")


@dataclass(frozen=True)
class ElementaryFactor:
    """The element ``b_index(level)`` of the elementary crystal ``B_index``."""

    index: int
    level: int = 0

    def crystal_stats(self, cd: CartanData, i: int):
        if i == self.index:
            return ExtInt(self.level), ExtInt(-self.level), 2 * self.level
        return NEG_INF, NEG_INF, self.level * cd.p(i, self.index)

    def crystal_act(self, cd: CartanData, i: int, direction: str):
        if i != self.index:
            return None
        return ElementaryFactor(self.index, self.level + (1 if direction == "e" else -1))

    def __str__(self):
        return f"b{self.index}({self.level})"


def elem_stats(cd: CartanData, f: ElementaryFactor, i: int):
    cd.check_index(i)
    cd.check_index(f.index)
    return f.crystal_stats(cd, i)


def elem_apply(cd: CartanData, f: ElementaryFactor, i: int, direction: str):
    cd.check_index(i)
    cd.check_index(f.index)
    _check_direction(direction)
    return f.crystal_act(cd, i, direction)


class _UInfinity:
    """The highest weight element of B(infinity) used as the leftmost factor.

    ``phi_i = eps_i = 0`` and weight 0.  ``e_i`` kills it; asking for
    ``f_i`` of it means the embedded element left the image, which is a bug.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def crystal_stats(self, cd, i):
        return _ZERO, _ZERO, 0

    def crystal_act(self, cd, i, direction):
        if direction == "e":
            return None
        raise HeadSelectedError(f"f_{i} selected the u_infinity head")

    def __repr__(self):
        return "u_inf"

    def __reduce__(self):
        return (_UInfinity, ())


_ZERO = ExtInt(0)
U_INF = _UInfinity()


def _scan(cd: CartanData, factors: Sequence, i: int):
    stats = [t.crystal_stats(cd, i) for t in factors]
    k = len(stats)
    # m_j = phi_j + sum_{l>j} pair_l ; n_j = eps_j - sum_{l<j} pair_l
    m = [None] * k
    acc = 0
    for j in range(k - 1, -1, -1):
        phi, _, pair = stats[j]
        m[j] = phi + acc
        acc += pair
    nvals = [None] * k
    acc = 0
    for j in range(k):
        _, eps, pair = stats[j]
        nvals[j] = eps - acc
        acc += pair
    return m, nvals, acc


def tensor_stats(cd: CartanData, factors: Sequence, i: int):
    """``(phi_i, eps_i)`` of ``factors[0] (x) factors[1] (x) ...``."""
    cd.check_index(i)
    if not factors:
        raise CrystalError("tensor_stats needs at least one factor")
    m, nvals, _ = _scan(cd, factors, i)
    return ext_max(m), ext_max(nvals)


def tensor_pairing(cd: CartanData, factors: Sequence, i: int) -> int:
    return sum(t.crystal_stats(cd, i)[2] for t in factors)


def select_factor(cd: CartanData, factors: Sequence, i: int, direction: str) -> int:
    """Position the signature rule hands ``e_i``/``f_i`` to.

    ``f`` goes to the rightmost maximiser of ``m_j``, ``e`` to the leftmost
    maximiser of ``n_j``.
    """
    m, nvals, _ = _scan(cd, factors, i)
    if direction == "f":
        best = ext_max(m)
        return max(j for j, v in enumerate(m) if v == best)
    best = ext_max(nvals)
    return min(j for j, v in enumerate(nvals) if v == best)


def tensor_apply(cd: CartanData, factors: Sequence, i: int, direction: str):
    """Apply ``e_i`` or ``f_i`` to a tensor product; ``None`` means 0."""
    cd.check_index(i)
    _check_direction(direction)
    if not factors:
        raise CrystalError("tensor_apply needs at least one factor")
    pos = select_factor(cd, factors, i, direction)
    new = factors[pos].crystal_act(cd, i, direction)
    if new is None:
        return None
    out = tuple(factors[:pos]) + (new,) + tuple(factors[pos + 1:])
    audit = _AUDIT.get()
    if audit is not None and not audit.busy:
        audit.check_step(cd, tuple(factors), out, i, direction)
    return out


@dataclass
class AxiomAudit:
    """Collects axiom checks performed on every successful ``tensor_apply``."""

    checks: int = 0
    violations: list[str] = field(default_factory=list)
    busy: bool = False

    def _fail(self, msg: str) -> None:
        if len(self.violations) < 100:
            self.violations.append(msg)

    def check_step(self, cd, before, after, i, direction):
        self.busy = True
        try:
            self.checks += 1
            sign = -1 if direction == "f" else 1
            for j in cd.indices:
                pb, eb = tensor_stats(cd, before, j)
                pa, ea = tensor_stats(cd, after, j)
                wb = tensor_pairing(cd, before, j)
                wa = tensor_pairing(cd, after, j)
                for phi, eps, w, tag in ((pb, eb, wb, "before"), (pa, ea, wa, "after")):
                    if phi != eps + w:
                        self._fail(f"C1 {tag} {direction}_{i} at j={j}: {before}")
                if wa - wb != sign * cd.p(j, i):
                    self._fail(f"C2 weight {direction}_{i} at j={j}: {before}")
                if j == i and (ea != eb - sign or pa != pb + sign):
                    self._fail(f"C2 phi/eps {direction}_{i}: {before}")
            back = tensor_apply(cd, after, i, "e" if direction == "f" else "f")
            if back != before:
                self._fail(f"C3 {direction}_{i}: {before}")
        finally:
            self.busy = False


_AUDIT: contextvars.ContextVar[AxiomAudit | None] = contextvars.ContextVar(
    "crystal_axiom_audit", default=None
)


@contextmanager
def axiom_audit() -> Iterator[AxiomAudit]:
    """Check axioms C1, C2/C2' and C3 on every successful ``tensor_apply``."""
    audit = AxiomAudit()
    token = _AUDIT.set(audit)
    try:
        yield audit
    finally:
        _AUDIT.reset(token)
