"""Letters and tableaux for the classical types.

Letters are stored as integer codes: ``k`` is the unbarred letter k,
``-k`` is the barred letter (written ``kbar``), and ``0`` is the extra
letter of type B.  A tableau is a tuple of rows of codes; it is read as a
tensor product column by column from the right, each column top to bottom.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Sequence

from .core import (
    CartanData,
    CrystalError,
    ExtInt,
    _check_direction,
    tensor_apply,
    tensor_stats,
)

DEFAULT_CAP = 100_000


class CapExceeded(CrystalError):
    """Enumeration grew past the configured cap."""


# ---------------------------------------------------------------- letters


def letter_str(code: int) -> str:
    return f"{-code}bar" if code < 0 else str(code)


def parse_letter(cd: CartanData, symbol) -> int:
    s = str(symbol).strip()
    try:
        code = -int(s[:-3]) if s.endswith("bar") else int(s)
    except ValueError:
        raise CrystalError(f"bad letter symbol {symbol!r}") from None
    if s.endswith("bar") and code == 0:
        raise CrystalError(f"bad letter symbol {symbol!r}")
    if code not in letter_crystal(cd).order:
        raise CrystalError(f"letter {symbol!r} is not in the {cd} alphabet")
    return code


@dataclass(frozen=True)
class Letter:
    code: int

    def crystal_stats(self, cd: CartanData, i: int):
        return letter_crystal(cd).stats[self.code][i - 1]

    def crystal_act(self, cd: CartanData, i: int, direction: str):
        lc = letter_crystal(cd)
        arrows = lc.f if direction == "f" else lc.e
        target = arrows.get((self.code, i))
        return None if target is None else lc.letters[target]

    def __str__(self):
        return letter_str(self.code)


class LetterCrystal:
    """The crystal graph of B(Lambda_1) for one Cartan datum, precomputed."""

    def __init__(self, cd: CartanData):
        n = cd.rank
        t = cd.lie_type
        self.cd = cd
        edges: list[tuple[int, int, int]] = []  # (source, i, target)
        if t == "A":
            self.order = tuple(range(1, n + 2))
            edges = [(i, i, i + 1) for i in range(1, n + 1)]
        else:
            top = n - 1 if t == "D" else n
            for i in range(1, top):
                edges += [(i, i, i + 1), (-(i + 1), i, -i)]
            if t == "C":
                self.order = tuple(range(1, n + 1)) + tuple(range(-n, 0))
                edges.append((n, n, -n))
            elif t == "B":
                self.order = tuple(range(1, n + 1)) + (0,) + tuple(range(-n, 0))
                edges += [(n, n, 0), (0, n, -n)]
            else:
                self.order = tuple(range(1, n + 1)) + tuple(range(-n, 0))
                edges += [(n - 1, n - 1, n), (-n, n - 1, -(n - 1)),
                          (n - 1, n, -n), (n, n, -(n - 1))]
        self.f = {(s, i): d for s, i, d in edges}
        self.e = {(d, i): s for s, i, d in edges}
        self.letters = {c: Letter(c) for c in self.order}
        self.rank_of = {c: self._rank(c) for c in self.order}
        self.stats = {}
        for c in self.order:
            row = []
            for i in range(1, n + 1):
                phi = self._walk(self.f, c, i)
                eps = self._walk(self.e, c, i)
                row.append((ExtInt(phi), ExtInt(eps), phi - eps))
            self.stats[c] = tuple(row)

    def _rank(self, c: int) -> int:
        n, t = self.cd.rank, self.cd.lie_type
        if c > 0:
            return c
        if t == "B":
            return n + 1 if c == 0 else 2 * n + 2 + c
        if t == "C":
            return 2 * n + 1 + c
        return 2 * n + c  # D: n and nbar share rank n

    @staticmethod
    def _walk(arrows, c, i) -> int:
        k = 0
        while (c, i) in arrows:
            c = arrows[(c, i)]
            k += 1
        return k


@lru_cache(maxsize=None)
def letter_crystal(cd: CartanData) -> LetterCrystal:
    return LetterCrystal(cd)


def alphabet(cd: CartanData) -> tuple[int, ...]:
    return letter_crystal(cd).order


def _code(x) -> int:
    return x.code if isinstance(x, Letter) else x


def letter_stats(cd: CartanData, x, i: int) -> tuple[ExtInt, ExtInt]:
    cd.check_index(i)
    phi, eps, _ = letter_crystal(cd).stats[_code(x)][i - 1]
    return phi, eps


def letter_apply(cd: CartanData, x, i: int, direction: str) -> Letter | None:
    cd.check_index(i)
    _check_direction(direction)
    return letter_crystal(cd).letters[_code(x)].crystal_act(cd, i, direction)


def letter_compare(cd: CartanData, x, y) -> int | None:
    """-1, 0 or 1 in the order of the letter graph; None if incomparable.

    Only type D has incomparable pairs (``n`` against ``nbar``).
    """
    x, y = _code(x), _code(y)
    if x == y:
        return 0
    ranks = letter_crystal(cd).rank_of
    rx, ry = ranks[x], ranks[y]
    if rx == ry:
        return None
    return -1 if rx < ry else 1


def _prec(ranks, x, y) -> bool:
    return ranks[x] < ranks[y]


def _preceq(ranks, x, y) -> bool:
    return x == y or ranks[x] < ranks[y]


# ---------------------------------------------------------------- columns


def max_column_length(cd: CartanData) -> int:
    return cd.rank - 1 if cd.lie_type == "D" else cd.rank


def _bar_condition(col: Sequence[int]) -> bool:
    # p at position j above pbar at position l forces j + (k - l + 1) <= p
    k = len(col)
    where = {}
    for pos, x in enumerate(col, 1):
        where.setdefault(x, []).append(pos)
    for p, js in where.items():
        if p <= 0 or -p not in where:
            continue
        for j in js:
            for l in where[-p]:
                if j < l and j + (k - l + 1) > p:
                    return False
    return True


def is_valid_column(cd: CartanData, col: Sequence) -> bool:
    col = [_code(x) for x in col]
    lc = letter_crystal(cd)
    if not col or len(col) > max_column_length(cd):
        return False
    if any(x not in lc.rank_of for x in col):
        return False
    ranks = lc.rank_of
    pairs = list(zip(col, col[1:]))
    t, n = cd.lie_type, cd.rank
    if t == "A":
        return all(x < y for x, y in pairs)
    if t == "C":
        ok = all(_prec(ranks, x, y) for x, y in pairs)
    elif t == "B":
        ok = all(_preceq(ranks, x, y) for x, y in pairs)
        ok = ok and all(col.count(x) == 1 for x in col if x != 0)
    else:
        ok = all(_prec(ranks, x, y) or (x, y) in ((n, -n), (-n, n)) for x, y in pairs)
    return ok and _bar_condition(col)


# ---------------------------------------------------------------- tableaux


@dataclass(frozen=True)
class Tableau:
    """Left-justified rows of letter codes with weakly decreasing lengths."""

    cd: CartanData
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(_code(x)) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        lengths = [len(r) for r in rows]
        if any(k == 0 for k in lengths):
            raise CrystalError("tableau rows must be nonempty")
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise CrystalError(f"row lengths {lengths} are not a partition")
        known = letter_crystal(self.cd).rank_of
        for r in rows:
            for x in r:
                if x not in known:
                    raise CrystalError(f"letter {letter_str(x)} not in {self.cd} alphabet")

    @classmethod
    def from_symbols(cls, cd: CartanData, rows) -> "Tableau":
        return cls(cd, tuple(tuple(parse_letter(cd, s) for s in r) for r in rows))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def columns(self) -> list[tuple[int, ...]]:
        """Columns left to right, each read top to bottom."""
        width = len(self.rows[0]) if self.rows else 0
        return [tuple(r[c] for r in self.rows if len(r) > c) for c in range(width)]

    def reading_positions(self) -> list[tuple[int, int]]:
        width = len(self.rows[0]) if self.rows else 0
        return [(r, c) for c in range(width - 1, -1, -1)
                for r in range(len(self.rows)) if len(self.rows[r]) > c]

    def crystal_stats(self, cd: CartanData, i: int):
        word = reading_tensor(self)
        phi, eps = tensor_stats(cd, word, i) if word else (ExtInt(0), ExtInt(0))
        return phi, eps, sum(x.crystal_stats(cd, i)[2] for x in word)

    def crystal_act(self, cd: CartanData, i: int, direction: str):
        return tableau_apply(self, i, direction)

    def symbol_rows(self) -> list[list[str]]:
        return [[letter_str(x) for x in r] for r in self.rows]

    def key(self) -> str:
        return "/".join(",".join(r) for r in self.symbol_rows())

    def to_json(self) -> dict:
        return {"type": self.cd.lie_type, "rank": self.cd.rank, "rows": self.symbol_rows()}

    @classmethod
    def from_json(cls, data: dict) -> "Tableau":
        try:
            cd = CartanData.of(data["type"], data["rank"])
            rows = data["rows"]
        except (KeyError, TypeError) as exc:
            raise CrystalError(f"malformed tableau JSON: {exc}") from None
        return cls.from_symbols(cd, rows)

    def __str__(self):
        return "\n".join(" ".join(r) for r in self.symbol_rows())


def reading_tensor(T: Tableau) -> list[Letter]:
    letters = letter_crystal(T.cd).letters
    return [letters[T.rows[r][c]] for r, c in T.reading_positions()]


def is_large(T: Tableau) -> bool:
    rows = T.rows
    return all(rows[i].count(i + 1) > len(rows[i + 1]) for i in range(len(rows) - 1))


def is_almost_semistandard(T: Tableau) -> bool:
    cd = T.cd
    ranks = letter_crystal(cd).rank_of
    for r in T.rows:
        if not all(_preceq(ranks, x, y) for x, y in zip(r, r[1:])):
            return False
        if cd.lie_type == "B" and r.count(0) > 1:
            return False
    return all(is_valid_column(cd, c) for c in T.columns())


def is_semistandard_large_regime(T: Tableau) -> bool:
    return is_almost_semistandard(T) and is_large(T)


def tableau_stats(T: Tableau, i: int) -> tuple[ExtInt, ExtInt]:
    T.cd.check_index(i)
    phi, eps, _ = T.crystal_stats(T.cd, i)
    return phi, eps


def tableau_apply(T: Tableau, i: int, direction: str) -> Tableau | None:
    cd = T.cd
    word = reading_tensor(T)
    if not word:
        return None
    out = tensor_apply(cd, word, i, direction)
    if out is None:
        return None
    rows = [list(r) for r in T.rows]
    for (r, c), old, new in zip(T.reading_positions(), word, out):
        if old is not new:
            rows[r][c] = new.code
            break
    return Tableau(cd, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------- weights/shapes


@dataclass(frozen=True)
class DominantWeight:
    """``sum coeffs[i-1] * Lambda_i`` in the fundamental weight basis."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs):
            raise CrystalError(f"weight {self.coeffs} is not dominant")

    def check(self, cd: CartanData) -> None:
        lam = self.coeffs
        if len(lam) != cd.rank:
            raise CrystalError(f"weight {lam} has wrong length for {cd}")
        if cd.lie_type == "B" and lam[-1] % 2:
            raise CrystalError(f"type B weight {lam} is not of type (E): last entry odd")
        if cd.lie_type == "D" and lam[-1] != lam[-2]:
            raise CrystalError(f"type D weight {lam} is not of type (W0)")


def shape_of_weight(cd: CartanData, lam: DominantWeight) -> tuple[int, ...]:
    lam.check(cd)
    c = list(lam.coeffs)
    n = cd.rank
    if cd.lie_type == "B":
        c[n - 1] //= 2
    elif cd.lie_type == "D":
        c = c[: n - 1]
    lengths = [sum(c[i:]) for i in range(len(c))]
    return tuple(k for k in lengths if k > 0)


def weight_from_shape(cd: CartanData, shape: Sequence[int]) -> DominantWeight:
    n = cd.rank
    rows = n - 1 if cd.lie_type == "D" else n
    if len(shape) > rows:
        raise CrystalError(f"shape {tuple(shape)} has more than {rows} rows")
    r = list(shape) + [0] * (rows + 1 - len(shape))
    m = [r[i] - r[i + 1] for i in range(rows)]
    if any(x < 0 for x in m):
        raise CrystalError(f"{tuple(shape)} is not a partition")
    if cd.lie_type == "B":
        m[n - 1] = 2 * r[n - 1]
    elif cd.lie_type == "D":
        m.append(m[-1])
    return DominantWeight(tuple(m))


def highest_weight_tableau(cd: CartanData, lam) -> Tableau:
    if not isinstance(lam, DominantWeight):
        lam = DominantWeight(tuple(lam))
    shape = shape_of_weight(cd, lam)
    return Tableau(cd, tuple((i + 1,) * k for i, k in enumerate(shape)))


# ---------------------------------------------------------------- row stats


def row_symbols(cd: CartanData, i: int) -> list[int]:
    """Labels ``j`` for which ``a(i, j)`` is defined, in chain order."""
    n, t = cd.rank, cd.lie_type
    if t == "A":
        return list(range(n, i - 1, -1))
    top = n - 1 if t == "D" else n
    bars = [-(k + 1) for k in range(i, top)]
    if t == "D":
        return bars + [n] + list(range(n - 1, i - 1, -1))
    return bars + list(range(n, i - 1, -1))


def row_count(cd: CartanData) -> int:
    return cd.rank - 1 if cd.lie_type == "D" else cd.rank


def row_stats(T: Tableau) -> dict[tuple[int, int], int]:
    """The table ``a(i, j)`` of a tableau, keyed by ``(row, label)``."""
    cd = T.cd
    n, t = cd.rank, cd.lie_type
    ranks = letter_crystal(cd).rank_of
    out = {}
    for i, row in enumerate(T.rows, 1):
        if i > row_count(cd):
            raise CrystalError(f"row {i} exceeds the {row_count(cd)} rows of type {cd}")
        for j in row_symbols(cd, i):
            if t == "B" and j == n:
                a = 2 * sum(1 for x in row if ranks[x] > ranks[0]) + row.count(0)
            elif t == "D" and j == n - 1:
                a = sum(1 for x in row if x == n or ranks[x] > n)
            elif t == "D" and j == n:
                a = sum(1 for x in row if x == -n or ranks[x] > n)
            else:
                a = sum(1 for x in row if ranks[x] > ranks[j])
            out[(i, j)] = a
    return out


# ---------------------------------------------------------------- enumeration


def crystal_graph(cd: CartanData, lam, cap: int = DEFAULT_CAP):
    """BFS of B(lambda) from its highest weight tableau.

    Returns ``(nodes, edges)`` with nodes in discovery order and edges as
    ``(source_position, i, target_position)``.
    """
    start = highest_weight_tableau(cd, lam)
    nodes = [start]
    seen = {start: 0}
    edges = []
    queue = deque([start])
    while queue:
        T = queue.popleft()
        for i in cd.indices:
            U = tableau_apply(T, i, "f")
            if U is None:
                continue
            if U not in seen:
                if len(nodes) >= cap:
                    raise CapExceeded(f"B({lam}) for {cd} exceeds cap {cap}")
                seen[U] = len(nodes)
                nodes.append(U)
                queue.append(U)
            edges.append((seen[T], i, seen[U]))
    return nodes, edges


def enumerate_crystal(cd: CartanData, lam, cap: int = DEFAULT_CAP) -> list[Tableau]:
    return crystal_graph(cd, lam, cap)[0]


def _is_kn_semistandard_type_a(T: Tableau) -> bool:
    rows_ok = all(x <= y for r in T.rows for x, y in zip(r, r[1:]))
    cols_ok = all(x < y for c in T.columns() for x, y in zip(c, c[1:]))
    return rows_ok and cols_ok and len(T.rows) <= T.cd.rank


def enumerate_semistandard_oracle(cd: CartanData, shape: Sequence[int], large: bool = False,
                                  cap: int = DEFAULT_CAP) -> set[Tableau]:
    """Brute-force filter of all row-sorted fillings of ``shape``.

    Type A uses plain semistandardness.  For B, C and D the almost
    semistandard conditions are exact only when the extra column conditions
    between adjacent columns are vacuous: one-row or one-column shapes, or
    with ``large=True`` (which also filters on largeness).
    """
    shape = tuple(shape)
    if any(a < b for a, b in zip(shape, shape[1:])) or any(k <= 0 for k in shape):
        raise CrystalError(f"{shape} is not a partition")
    multi = len(shape) > 1 and shape[0] > 1
    if cd.lie_type != "A" and multi and not large:
        raise CrystalError(
            f"shape {shape} for {cd} needs column conditions beyond the large regime")
    order = alphabet(cd)
    row_choices = [list(combinations_with_replacement(order, k)) for k in shape]
    total = 1
    for rc in row_choices:
        total *= len(rc)
    if total > cap:
        raise CapExceeded(f"{total} fillings of {shape} exceed cap {cap}")
    out = set()
    for rows in product(*row_choices):
        T = Tableau(cd, rows)
        if cd.lie_type == "A":
            ok = _is_kn_semistandard_type_a(T)
        else:
            ok = is_almost_semistandard(T)
        if ok and (not large or is_large(T)):
            out.add(T)
    return out


def highest_weight_path(T: Tableau, limit: int = 10_000) -> tuple[tuple[int, ...], Tableau]:
    """Raise ``T`` with the smallest applicable ``e_i`` until nothing applies.

    Returns ``(fstring, top)`` with ``T == f_{s[0]} ... f_{s[-1]} top``.
    """
    path = []
    cur = T
    for _ in range(limit):
        for i in T.cd.indices:
            up = tableau_apply(cur, i, "e")
            if up is not None:
                path.append(i)
                cur = up
                break
        else:
            return tuple(path), cur
    raise CrystalError("highest weight search did not terminate")

