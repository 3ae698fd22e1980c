"""B(infinity) through its embedding into elementary crystals.

An element of B(infinity) is given as an f-string ``(i_1, ..., i_k)``,
meaning ``f_{i_1} ... f_{i_k} u_inf`` (``i_k`` acts first).  The embedding
``psi_embed`` sends it to ``u_inf (x) beta_1 (x) beta_2 (x) ...`` where
block ``beta_i`` is a run of elementary factors ``b_j(-a(i, j))``; the
exponent array ``a`` is the canonical form used throughout.  ``F_of_T``
builds the same array from the row statistics of a large tableau.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .core import (
    U_INF,
    CartanData,
    CrystalError,
    ElementaryFactor,
    ExtInt,
    HeadSelectedError,
    RootVector,
    tensor_apply,
    tensor_stats,
)
from .tableaux import (
    DominantWeight,
    Tableau,
    highest_weight_path,
    highest_weight_tableau,
    is_large,
    is_semistandard_large_regime,
    row_count,
    row_stats,
    row_symbols,
    tableau_apply,
    tableau_stats,
    weight_from_shape,
)

# ---------------------------------------------------------------- sequences


def label_index(label: int) -> int:
    """Elementary crystal carrying ``a(i, label)``: ``j`` for ``j``, ``k`` for ``(k+1)bar``."""
    return label if label > 0 else -label - 1


@lru_cache(maxsize=None)
def psi_sequence(cd: CartanData) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Blocks of ``(index, label)`` pairs, left to right after ``u_inf``."""
    return tuple(
        tuple((label_index(j), j) for j in row_symbols(cd, i))
        for i in range(1, row_count(cd) + 1)
    )


@lru_cache(maxsize=None)
def _flat_sequence(cd: CartanData) -> tuple[tuple[int, int, int], ...]:
    return tuple((b, idx, lab) for b, blk in enumerate(psi_sequence(cd), 1) for idx, lab in blk)


def check_fstring(cd: CartanData, b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(b)
    for i in b:
        cd.check_index(i)
    return b


def fstring_weight(cd: CartanData, b: Sequence[int]) -> RootVector:
    b = check_fstring(cd, b)
    return RootVector(tuple(-b.count(i) for i in cd.indices))


# ---------------------------------------------------------------- elements


@dataclass(frozen=True)
class PsiElement:
    """``u_inf`` followed by ``b_j(-a)`` for each exponent, in sequence order."""

    cd: CartanData
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(a) for a in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) != len(_flat_sequence(self.cd)):
            raise CrystalError(f"{len(exps)} exponents do not fit the {self.cd} sequence")
        if any(a < 0 for a in exps):
            raise CrystalError(f"negative exponent in {exps}")

    @classmethod
    def seed(cls, cd: CartanData) -> "PsiElement":
        return cls(cd, (0,) * len(_flat_sequence(cd)))

    @classmethod
    def from_table(cls, cd: CartanData, table: dict[tuple[int, int], int]) -> "PsiElement":
        return cls(cd, tuple(table.get((b, lab), 0) for b, _, lab in _flat_sequence(cd)))

    @classmethod
    def from_factors(cls, cd: CartanData, factors: Sequence) -> "PsiElement":
        if factors[0] is not U_INF:
            raise CrystalError("embedded element must start with u_inf")
        flat = _flat_sequence(cd)
        tail = factors[1:]
        if [f.index for f in tail] != [idx for _, idx, _ in flat]:
            raise CrystalError("factor indices do not match the sequence")
        return cls(cd, tuple(-f.level for f in tail))

    def factors(self) -> tuple:
        return (U_INF,) + tuple(
            ElementaryFactor(idx, -a) for (_, idx, _), a in zip(_flat_sequence(self.cd), self.exponents)
        )

    def table(self) -> dict[tuple[int, int], int]:
        """Exponents keyed by ``(block, label)``, i.e. ``a(i, j)``."""
        return {(b, lab): a for (b, _, lab), a in zip(_flat_sequence(self.cd), self.exponents)}

    def blocks(self) -> list[list[tuple[int, int]]]:
        out, pos = [], 0
        for blk in psi_sequence(self.cd):
            out.append([(idx, self.exponents[pos + k]) for k, (idx, _) in enumerate(blk)])
            pos += len(blk)
        return out

    def to_json(self) -> dict:
        return {
            "type": self.cd.lie_type,
            "rank": self.cd.rank,
            "blocks": [[{"index": idx, "exponent": a} for idx, a in blk] for blk in self.blocks()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PsiElement":
        try:
            cd = CartanData.of(data["type"], data["rank"])
            blocks = data["blocks"]
            pairs = [(int(x["index"]), int(x["exponent"])) for blk in blocks for x in blk]
            shape = [len(blk) for blk in blocks]
        except (KeyError, TypeError, ValueError) as exc:
            raise CrystalError(f"malformed PsiElement JSON: {exc}") from None
        if shape != [len(blk) for blk in psi_sequence(cd)]:
            raise CrystalError(f"block layout {shape} does not match {cd}")
        if [i for i, _ in pairs] != [idx for _, idx, _ in _flat_sequence(cd)]:
            raise CrystalError("block indices do not match the sequence")
        return cls(cd, tuple(a for _, a in pairs))

    def __str__(self):
        parts = ["u_inf"]
        for blk in self.blocks():
            parts.append("(" + " x ".join(f"b{i}({-a})" for i, a in blk) + ")")
        return " x ".join(parts)


def psi_stats(p: PsiElement, i: int) -> tuple[ExtInt, ExtInt]:
    return tensor_stats(p.cd, p.factors(), i)


def psi_apply(p: PsiElement, i: int, direction: str) -> PsiElement | None:
    out = tensor_apply(p.cd, p.factors(), i, direction)
    return None if out is None else PsiElement.from_factors(p.cd, out)


def psi_embed(cd: CartanData, b: Sequence[int]) -> PsiElement:
    """Image of ``f_{b[0]} ... f_{b[-1]} u_inf``.

    Raises :class:`HeadSelectedError` if some ``f_i`` lands on ``u_inf``,
    which cannot happen for a correct sequence.
    """
    b = check_fstring(cd, b)
    factors = PsiElement.seed(cd).factors()
    for i in reversed(b):
        factors = tensor_apply(cd, factors, i, "f")
    return PsiElement.from_factors(cd, factors)


def F_of_T(T: Tableau) -> PsiElement:
    if len(T.rows) > row_count(T.cd):
        raise CrystalError(f"tableau has {len(T.rows)} rows, {T.cd} has {row_count(T.cd)} blocks")
    return PsiElement.from_table(T.cd, row_stats(T))


def block_factors(cd: CartanData, block: int, values: dict[int, int]) -> tuple:
    """``u_inf (x) beta_block`` alone, with ``values`` keyed by label."""
    blk = psi_sequence(cd)[block - 1]
    return (U_INF,) + tuple(ElementaryFactor(idx, -values.get(lab, 0)) for idx, lab in blk)


# ---------------------------------------------------------------- image


def chain_holds(cd: CartanData, labels: Sequence[int], values: Sequence[int]) -> bool:
    """Inequality chain of one block, values given in block order."""
    if any(v < 0 for v in values):
        return False
    n, t = cd.rank, cd.lie_type
    if t in ("A", "C"):
        return all(x <= y for x, y in zip(values, values[1:]))
    if t == "B":
        scaled = [v if lab == n else 2 * v for lab, v in zip(labels, values)]
        return all(x <= y for x, y in zip(scaled, scaled[1:]))
    k = labels.index(n)
    bars, a_n, a_nm1, rest = values[:k], values[k], values[k + 1], values[k + 2:]
    low, high = min(a_n, a_nm1), max(a_n, a_nm1)
    return (all(x <= y for x, y in zip(bars, bars[1:]))
            and (not bars or bars[-1] <= low)
            and (not rest or high <= rest[0])
            and all(x <= y for x, y in zip(rest, rest[1:])))


def image_member(p: PsiElement) -> bool:
    pos = 0
    for blk in psi_sequence(p.cd):
        vals = p.exponents[pos:pos + len(blk)]
        pos += len(blk)
        if not chain_holds(p.cd, [lab for _, lab in blk], vals):
            return False
    return True


def chain_valid_block(cd: CartanData, block: int, bound: int) -> Iterator[tuple[int, ...]]:
    labels = [lab for _, lab in psi_sequence(cd)[block - 1]]
    for vals in product(range(bound + 1), repeat=len(labels)):
        if chain_holds(cd, labels, vals):
            yield vals


def chain_valid_arrays(cd: CartanData, bound: int) -> Iterator[PsiElement]:
    per_block = [list(chain_valid_block(cd, b, bound)) for b in range(1, row_count(cd) + 1)]
    for combo in product(*per_block):
        yield PsiElement(cd, tuple(a for blk in combo for a in blk))


def image_bfs(cd: CartanData, bound: int) -> list[PsiElement]:
    """Everything reachable from the seed by ``f_i`` with exponents ``<= bound``."""
    start = PsiElement.seed(cd)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for i in cd.indices:
                q = psi_apply(p, i, "f")
                if max(q.exponents) > bound or q in seen:
                    continue
                seen.add(q)
                order.append(q)
                nxt.append(q)
        frontier = nxt
    return order


# ---------------------------------------------------------------- closed forms


def closed_form_stats(cd: CartanData, a: dict[int, int], i: int) -> tuple[int, int]:
    """``(phi_i, eps_i)`` of ``u_inf (x) beta_1`` from its exponents.

    ``a`` maps the block-1 labels to exponents and must satisfy the block-1
    inequality chain.  ``phi`` follows the one-block formulas; ``eps`` is the
    explicit formula in type A and ``phi - <h_i, wt>`` otherwise.
    """
    cd.check_index(i)
    n, t = cd.rank, cd.lie_type
    labels = row_symbols(cd, 1)
    if set(a) != set(labels):
        raise CrystalError(f"expected exponents for labels {labels}, got {sorted(a)}")
    if not chain_holds(cd, labels, [a[lab] for lab in labels]):
        raise CrystalError("exponents violate the hypothesis chain")
    if (t in ("B", "C") and n < 2) or (t == "D" and n < 3):
        raise CrystalError(f"no one-block formula for {cd}")

    def v(lab):
        return 0 if lab == 0 or lab == n + 1 and t == "A" else a[lab]

    def generic(i):
        return max(-v(-(i + 1)) + v(-(i + 2)) + v(i + 1) - 2 * v(i) + v(i - 1),
                   v(i - 1) - v(i))

    if t == "A":
        return v(i - 1) - v(i), v(i) - v(i + 1)
    if t == "C":
        if i < n - 1:
            phi = generic(i)
        elif i == n - 1:
            phi = max(-v(-n) + 2 * v(n) - 2 * v(n - 1) + v(n - 2), v(n - 2) - v(n - 1))
        else:
            phi = v(n - 1) - v(n)
    elif t == "B":
        if i < n - 1:
            phi = generic(i)
        elif i == n - 1:
            phi = max(-v(-n) + v(n) - 2 * v(n - 1) + v(n - 2), v(n - 2) - v(n - 1))
        else:
            phi = -v(n) + 2 * v(n - 1)
    else:
        if i < n - 2:
            phi = generic(i)
        elif i == n - 2:
            phi = max(v(n - 3) - v(n - 2),
                      v(n) + v(n - 1) - v(-(n - 1)) - 2 * v(n - 2) + v(n - 3))
        elif i == n - 1:
            phi = v(n - 2) - v(n - 1)
        else:
            phi = v(n - 2) - v(n)
    pairing = -sum(a[lab] * cd.p(i, label_index(lab)) for lab in labels)
    return phi, phi - pairing


# ---------------------------------------------------------------- pi_lambda


def choose_large_lambda(cd: CartanData, b: Sequence[int]) -> DominantWeight:
    """Smallest weight whose projection of ``b`` is a large tableau."""
    k = [-c for c in fstring_weight(cd, b).coeffs]
    n = cd.rank
    lam = [x + 1 for x in k]
    if cd.lie_type == "B":
        lam[n - 1] = k[n - 1] + 2 - k[n - 1] % 2
    elif cd.lie_type == "D":
        lam[n - 2] = lam[n - 1] = max(k[n - 2], k[n - 1]) + 1
    return DominantWeight(tuple(lam))


def bump_lambda(cd: CartanData, lam: DominantWeight) -> DominantWeight:
    """Next larger weight of the same class: +1 everywhere, +2 on the last B entry."""
    c = [x + 1 for x in lam.coeffs]
    if cd.lie_type == "B":
        c[-1] += 1
    return DominantWeight(tuple(c))


def pi_lambda(cd: CartanData, b: Sequence[int], lam) -> Tableau | None:
    b = check_fstring(cd, b)
    T = highest_weight_tableau(cd, lam)
    for i in reversed(b):
        T = tableau_apply(T, i, "f")
        if T is None:
            return None
    return T


# ---------------------------------------------------------------- witnesses


def witness_tableau(p: PsiElement) -> Tableau:
    """A large tableau whose row statistics are the exponents of ``p``.

    Row ``i`` gets the letters forced by ``a(i, .)``, everything beyond the
    last label lumped into ``ibar`` (or ``n+1`` in type A), then is padded
    on the left with ``i`` so it has more ``i`` than the next row has boxes.
    """
    cd = p.cd
    table = p.table()
    rows: list[tuple[int, ...]] = []
    below = 0
    for i in range(row_count(cd), 0, -1):
        a = {lab: table[(i, lab)] for lab in row_symbols(cd, i)}
        counts = _row_counts(cd, i, a)
        row = (i,) * (below + 1) + tuple(x for x, c in counts for _ in range(c))
        rows.append(row)
        below = len(row)
    rows.reverse()
    return Tableau(cd, tuple(rows))


def _row_counts(cd: CartanData, i: int, a: dict[int, int]) -> list[tuple[int, int]]:
    n, t = cd.rank, cd.lie_type
    if t == "A":
        seq = [(j, a[j]) for j in range(i, n + 1)]
        last = n + 1
    elif t == "C":
        seq = [(j, a[j]) for j in range(i, n + 1)] + [(-k, a[-k]) for k in range(n, i, -1)]
        last = -i
    elif t == "B":
        half, zero = divmod(a[n], 2)
        seq = ([(j, a[j]) for j in range(i, n)] + [(n, half + zero), (0, half)]
               + [(-k, a[-k]) for k in range(n, i, -1)])
        last = -i
    else:
        # n and nbar never share a row; their split is read off a(n-1), a(n)
        y = min(a[n - 1], a[n])
        seq = [(j, a[j]) for j in range(i, n - 1)] + [(n - 1, max(a[n - 1], a[n]))]
        out = [(x, cur - above) for (x, above), (_, cur) in zip(seq[1:], seq)]
        out += [(n, a[n - 1] - y), (-n, a[n] - y)]
        prev = y
        for k in range(n - 1, i, -1):
            out.append((-k, prev - a[-k]))
            prev = a[-k]
        out.append((-i, prev))
        return [(x, c) for x, c in out if c]
    out = []
    for (x, above), (_, cur) in zip(seq[1:], seq):
        out.append((x, cur - above))
    out.append((last, seq[-1][1]))
    return [(x, c) for x, c in out if c]


# ---------------------------------------------------------------- reports


@dataclass
class Report:
    kind: str
    cd: CartanData
    params: dict
    records: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if not r["ok"])

    def summary(self) -> dict:
        return {"summary": True, "kind": self.kind, "type": self.cd.lie_type,
                "rank": self.cd.rank, **self.params,
                "checked": len(self.records), "failures": self.failures}

    def counterexamples(self) -> list[dict]:
        return [r for r in self.records if not r["ok"]]

    def jsonl(self) -> Iterable[str]:
        for r in self.records:
            yield json.dumps(r)
        yield json.dumps(self.summary())


def fstrings(cd: CartanData, depth: int) -> Iterator[tuple[int, ...]]:
    for k in range(depth + 1):
        yield from product(cd.indices, repeat=k)


def check_fstring_theorem(cd: CartanData, b: tuple[int, ...], psi: PsiElement | None = None) -> dict:
    """All per-element checks of the row-statistics description of the embedding."""
    problems = []
    lam = choose_large_lambda(cd, b)
    rec = {"fstring": list(b), "lambda": list(lam.coeffs)}
    try:
        if psi is None:
            psi = psi_embed(cd, b)
    except HeadSelectedError as exc:
        rec.update(ok=False, failures=[f"psi_embed: {exc}"])
        return rec
    rec["psi"] = list(psi.exponents)
    if not image_member(psi):
        problems.append("psi(b) violates the image chains")
    for weight in (lam, bump_lambda(cd, lam)):
        T = pi_lambda(cd, b, weight)
        tag = f"lambda={list(weight.coeffs)}"
        if T is None:
            problems.append(f"{tag}: pi_lambda(b) = 0")
            continue
        if weight is lam:
            rec["tableau"] = T.symbol_rows()
        if not is_large(T):
            problems.append(f"{tag}: tableau not large")
        if not is_semistandard_large_regime(T):
            problems.append(f"{tag}: tableau not almost semistandard")
        F = F_of_T(T)
        if F != psi:
            problems.append(f"{tag}: F(T)={list(F.exponents)} != psi(b)")
        for i in cd.indices:
            if psi_stats(psi, i)[1] != tableau_stats(T, i)[1]:
                problems.append(f"{tag}: eps_{i}(psi(b)) != eps_{i}(T)")
    rec.update(ok=not problems, failures=problems)
    return rec


def _check_chunk(args):
    cd, chunk = args
    return [check_fstring_theorem(cd, b) for b in chunk]


def verify_theorem(cd: CartanData, depth: int, jobs: int = 1) -> Report:
    """Check ``psi_embed(b) == F_of_T(pi_lambda(b))`` for all strings up to ``depth``."""
    report = Report("verify", cd, {"depth": depth})
    strings = list(fstrings(cd, depth))
    if jobs > 1:
        size = max(1, len(strings) // (4 * jobs))
        chunks = [(cd, strings[k:k + size]) for k in range(0, len(strings), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs in pool.map(_check_chunk, chunks):
                report.records.extend(recs)
        return report
    cache: dict[tuple[int, ...], PsiElement] = {(): PsiElement.seed(cd)}
    for b in strings:
        psi = None
        if b and b[1:] in cache:
            try:
                psi = psi_apply(cache[b[1:]], b[0], "f")
            except HeadSelectedError:
                psi = None
        elif not b:
            psi = cache[()]
        rec = check_fstring_theorem(cd, b, psi)
        if psi is not None:
            cache[b] = psi
        report.records.append(rec)
    return report


def probe_element(p: PsiElement) -> dict:
    cd = p.cd
    rec = {"exponents": list(p.exponents)}
    problems = []
    T = witness_tableau(p)
    rec["tableau"] = T.symbol_rows()
    if not is_semistandard_large_regime(T):
        problems.append("witness is not a large almost semistandard tableau")
    if F_of_T(T) != p:
        problems.append("F(witness) does not reproduce the exponents")
    lam = weight_from_shape(cd, T.shape)
    b, top = highest_weight_path(T)
    rec["lambda"] = list(lam.coeffs)
    rec["fstring"] = list(b)
    if top != highest_weight_tableau(cd, lam):
        problems.append("witness does not lie in B(lambda)")
    elif pi_lambda(cd, b, lam) != T:
        problems.append("recorded f-string does not rebuild the witness")
    else:
        try:
            if psi_embed(cd, b) != p:
                problems.append("psi(b) misses the exponent array")
        except HeadSelectedError as exc:
            problems.append(f"psi_embed: {exc}")
    rec.update(ok=not problems, failures=problems)
    return rec


def image_surjectivity_probe(cd: CartanData, bound: int) -> Report:
    """Realise every chain-valid array with entries ``<= bound`` as some ``psi(b)``."""
    report = Report("probe", cd, {"bound": bound})
    for p in chain_valid_arrays(cd, bound):
        report.records.append(probe_element(p))
    return report
