"""Canonical basis of the Fock space and crystallised decomposition matrices.

Two routes compute ``B_mu``:

* :func:`canonical_basis_regular` -- the LLT algorithm for e-regular ``mu``:
  build the bar-invariant monomial ``A_mu`` from the ladder residue
  sequence, then straighten it against lower ``B_sigma``.
* :func:`canonical_basis_general` -- for arbitrary ``mu``: compute the
  matrix of the bar involution on the block from the bar-invariant
  spanning set ``F_sigma V_tau (empty)`` and solve for the unique
  bar-invariant element triangularly.

All work is done block by block (fixed size and e-core).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .abacus import core_and_weight, abacus_from_partition, block_members, core_of, plus
from .fock import FockVector, apply_V_word, apply_word, truncate
from .laurent import ONE, ZERO, Laurent, NotDivisible, bar_symmetric_part, exact_div, in_vZv, parse, to_string
from .partition import (
    Partition,
    dominance_descending_order,
    dominates,
    format_partition,
    is_e_regular,
    ladder_residue_sequence,
    partitions_of,
    reverse_colex_order,
)


class StraighteningFailure(ArithmeticError):
    pass


class SingularSpanningSet(ArithmeticError):
    pass


class NonIntegralBar(ArithmeticError):
    pass


ORDERS: dict[str, Callable[[Iterable[Partition]], list[Partition]]] = {
    "lex": dominance_descending_order,
    "revcolex": reverse_colex_order,
}


def block_of(lam: Partition, e: int) -> tuple[Partition, int]:
    """``(e-core, e-weight)`` of ``lam``."""
    return core_and_weight(abacus_from_partition(lam, e))


@dataclass(frozen=True)
class CanonicalBasisElement:
    mu: Partition
    e: int
    expansion: FockVector

    def __post_init__(self):
        x = self.expansion
        if x[self.mu] != ONE:
            raise StraighteningFailure(f"coefficient of {format_partition(self.mu)} is {x[self.mu]}, not 1")
        core = core_of(self.mu, self.e)
        for lam, c in x.items():
            if lam == self.mu:
                continue
            if not in_vZv(c):
                raise StraighteningFailure(f"b[{format_partition(lam)}] = {c} is not in vZ[v]")
            if not dominates(self.mu, lam) or core_of(lam, self.e) != core:
                raise StraighteningFailure(f"{format_partition(lam)} lies outside the block below {format_partition(self.mu)}")

    def coefficient(self, lam: Partition) -> Laurent:
        return self.expansion[lam]

    def truncated(self, k: int) -> FockVector:
        return truncate(self.expansion, k)


class BasisCache:
    """In-memory memo of computed basis elements and bar matrices.

    One instance per independent computation; two instances never share
    results.
    """

    def __init__(self):
        self.regular: dict[tuple[int, Partition], CanonicalBasisElement] = {}
        self.general: dict[tuple[int, Partition, str], CanonicalBasisElement] = {}
        self.bar: dict[tuple[int, int, Partition], "BarMatrix"] = {}
        self.spanning: dict[tuple[int, int, Partition], list] = {}


_DEFAULT_CACHE = BasisCache()


def _cache(cache: BasisCache | None) -> BasisCache:
    return _DEFAULT_CACHE if cache is None else cache


# -- the regular (LLT) route -------------------------------------------------

def a_regular(mu: Partition, e: int) -> FockVector:
    """``A_mu``: divided powers along the ladder residue sequence applied to the vacuum."""
    return apply_word(FockVector.vacuum(), ladder_residue_sequence(mu, e), e)


def _lower_members(mu: Partition, e: int, order: str) -> list[Partition]:
    core, _ = block_of(mu, e)
    members = ORDERS[order](block_members(sum(mu), e, core))
    return members[members.index(mu) + 1:]


def canonical_basis_regular(mu: Partition, e: int, cache: BasisCache | None = None, order: str = "lex") -> CanonicalBasisElement:
    cache = _cache(cache)
    key = (e, mu)
    if order == "lex" and key in cache.regular:
        return cache.regular[key]
    x = a_regular(mu, e)
    for sigma in _lower_members(mu, e, order):
        f = x[sigma]
        if in_vZv(f):
            continue
        if not is_e_regular(sigma, e):
            raise StraighteningFailure(
                f"coefficient {f} at singular {format_partition(sigma)} in B_{format_partition(mu)}"
            )
        gamma = bar_symmetric_part(f)
        x = x - canonical_basis_regular(sigma, e, cache, order).expansion.scale(gamma)
    b = CanonicalBasisElement(mu, e, x)
    if order == "lex":
        cache.regular[key] = b
    return b


# -- the general route ---------------------------------------------------------

def spanning_set(n: int, e: int, core: Partition, cache: BasisCache | None = None) -> list[tuple[Partition, Partition, FockVector]]:
    """Triples ``(sigma, tau, F_sigma V_tau vacuum)`` spanning the block of ``(n, core)``.

    ``sigma`` runs over e-regular partitions of ``n - e|tau|`` with the same
    e-core; ``tau`` over all partitions.
    """
    cache = _cache(cache)
    key = (n, e, core)
    if key in cache.spanning:
        return cache.spanning[key]
    rest = n - sum(core)
    if rest < 0 or rest % e:
        return []
    w = rest // e
    out = []
    for t in range(w + 1):
        for tau in partitions_of(t):
            base = apply_V_word(FockVector.vacuum(), tau, e)
            for sigma in block_members(n - e * t, e, core):
                if is_e_regular(sigma, e):
                    out.append((sigma, tau, apply_word(base, ladder_residue_sequence(sigma, e), e)))
    cache.spanning[key] = out
    return out


def _bareiss_solve(A: list[list[Laurent]], B: list[list[Laurent]]) -> list[list[Laurent]]:
    """Solve ``A X = B`` over Z[v, 1/v] by fraction-free elimination.

    Every intermediate division is exact; the final division by the
    determinant raises :class:`NonIntegralBar` if ``X`` is not integral.
    """
    n = len(A)
    m = len(B[0]) if B else 0
    width = n + m
    rows = [list(A[i]) + list(B[i]) for i in range(n)]
    prev = ONE
    for k in range(n):
        candidates = [i for i in range(k, n) if rows[i][k]]
        if not candidates:
            raise SingularSpanningSet("spanning set is linearly dependent")
        piv = min(candidates, key=lambda i: len(rows[i][k]._c))
        rows[k], rows[piv] = rows[piv], rows[k]
        rk = rows[k]
        pk = rk[k]
        for i in range(k + 1, n):
            row = rows[i]
            a = row[k]
            for j in range(k + 1, width):
                x = row[j] * pk
                if a and rk[j]:
                    x = x - a * rk[j]
                row[j] = exact_div(x, prev) if x else x
            row[k] = ZERO
        prev = pk
    det = rows[n - 1][n - 1]
    X = [[ZERO] * m for _ in range(n)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            s = rows[i][n + c] * det
            for j in range(i + 1, n):
                if rows[i][j] and X[j][c]:
                    s = s - rows[i][j] * X[j][c]
            X[i][c] = exact_div(s, rows[i][i])
    try:
        return [[exact_div(x, det) for x in row] for row in X]
    except NotDivisible as exc:
        raise NonIntegralBar(str(exc)) from exc


@dataclass
class BarMatrix:
    """Matrix of the bar involution on one block: ``bar(lam) = sum_nu R[nu][lam] nu``."""

    n: int
    e: int
    core: Partition
    basis: list[Partition]
    columns: dict[Partition, dict[Partition, Laurent]]

    def entry(self, nu: Partition, lam: Partition) -> Laurent:
        return self.columns[lam].get(nu, ZERO)

    def bar_of(self, x: FockVector) -> FockVector:
        """The bar involution applied to a vector supported on this block."""
        out: dict[Partition, Laurent] = {}
        for lam, c in x.items():
            cb = c.bar()
            for nu, r in self.columns[lam].items():
                out[nu] = out.get(nu, ZERO) + r * cb
        return FockVector((nu, c) for nu, c in out.items())

    def check(self) -> list[str]:
        """Return violated identities (empty when R is unitriangular and an involution)."""
        problems = []
        pos = {lam: t for t, lam in enumerate(self.basis)}
        for lam, col in self.columns.items():
            if col.get(lam) != ONE:
                problems.append(f"diagonal at {format_partition(lam)} is {col.get(lam, ZERO)}")
            for nu in col:
                if nu != lam and (pos[nu] < pos[lam] or not dominates(lam, nu)):
                    problems.append(f"entry ({format_partition(nu)}, {format_partition(lam)}) above diagonal")
        for lam in self.basis:
            # R * bar(R) applied to lam must give lam back
            y = self.bar_of(self.bar_of(FockVector.basis(lam)))
            if y != FockVector.basis(lam):
                problems.append(f"bar(bar({format_partition(lam)})) != {format_partition(lam)}")
        return problems


def bar_matrix(n: int, e: int, core: Partition, cache: BasisCache | None = None) -> BarMatrix:
    """Solve ``M = R * bar(M)`` where the columns of ``M`` are the spanning-set vectors."""
    cache = _cache(cache)
    key = (n, e, core)
    if key in cache.bar:
        return cache.bar[key]
    basis = dominance_descending_order(block_members(n, e, core))
    span = spanning_set(n, e, core, cache)
    if len(span) != len(basis):
        raise SingularSpanningSet(f"{len(span)} spanning vectors for a block of {len(basis)} partitions")
    idx = {lam: t for t, lam in enumerate(basis)}
    size = len(basis)
    M = [[ZERO] * size for _ in range(size)]
    for j, (_, _, vec) in enumerate(span):
        for lam, c in vec.items():
            M[idx[lam]][j] = c
    # R bar(M) = M  <=>  bar(M)^T R^T = M^T
    NT = [[M[i][j].bar() for i in range(size)] for j in range(size)]
    MT = [[M[i][j] for i in range(size)] for j in range(size)]
    RT = _bareiss_solve(NT, MT)
    columns = {}
    for t, lam in enumerate(basis):
        columns[lam] = {basis[s]: RT[t][s] for s in range(size) if RT[t][s]}
    R = BarMatrix(n, e, core, basis, columns)
    cache.bar[key] = R
    return R


def canonical_basis_general(mu: Partition, e: int, cache: BasisCache | None = None, order: str = "lex") -> CanonicalBasisElement:
    """The unique bar-invariant ``mu + sum b_nu nu`` with ``b_nu`` in vZ[v]."""
    cache = _cache(cache)
    key = (e, mu, order)
    if key in cache.general:
        return cache.general[key]
    n = sum(mu)
    core, _ = block_of(mu, e)
    R = bar_matrix(n, e, core, cache)
    b: dict[Partition, Laurent] = {mu: ONE}
    for nu in _lower_members(mu, e, order):
        g = ZERO
        for lam, c in b.items():
            r = R.columns[lam].get(nu)
            if r is not None and lam != nu:
                g = g + r * c.bar()
        if not g:
            continue
        # b_nu - bar(b_nu) = g forces b_nu to be the positive part of g
        pos = Laurent({t: a for t, a in g.items() if t > 0})
        if pos - pos.bar() != g:
            raise NonIntegralBar(f"no vZ[v] solution at {format_partition(nu)}: {g}")
        b[nu] = pos
    elt = CanonicalBasisElement(mu, e, FockVector(b.items()))
    cache.general[key] = elt
    return elt


def canonical_basis(mu: Partition, e: int, cache: BasisCache | None = None, order: str = "lex") -> CanonicalBasisElement:
    """``B_mu`` by the cheaper applicable route (LLT when ``mu`` is e-regular)."""
    if is_e_regular(mu, e):
        return canonical_basis_regular(mu, e, cache, order)
    return canonical_basis_general(mu, e, cache, order)


def b_poly(lam: Partition, mu: Partition, e: int, cache: BasisCache | None = None) -> Laurent:
    if sum(lam) != sum(mu):
        return ZERO
    return canonical_basis(mu, e, cache).coefficient(lam)


def decomposition_number(lam: Partition, mu: Partition, e: int, cache: BasisCache | None = None) -> int:
    """``[W^lam : L^mu]`` (and ``[S^lam : D^mu]`` for e-regular ``mu``) at a primitive e-th root of unity."""
    return b_poly(lam, mu, e, cache).at_one()


# -- block matrices -----------------------------------------------------------------

@dataclass
class BlockMatrix:
    e: int
    k: int
    core: Partition
    weight: int
    rows: list[Partition]
    cols: list[Partition]
    entries: dict[tuple[Partition, Partition], Laurent] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return sum(self.core) + self.e * self.weight

    def entry(self, lam: Partition, mu: Partition) -> Laurent:
        return self.entries.get((lam, mu), ZERO)

    def at_one(self) -> list[list[int]]:
        return [[self.entry(lam, mu).at_one() for mu in self.cols] for lam in self.rows]

    def grid(self, v1: bool = False) -> list[list[str]]:
        out = []
        for lam in self.rows:
            row = []
            for mu in self.cols:
                c = self.entry(lam, mu)
                row.append(str(c.at_one()) if v1 else to_string(c))
            out.append(row)
        return out

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return (
            (self.e, self.k, self.core, self.weight, self.rows, self.cols)
            == (other.e, other.k, other.core, other.weight, other.rows, other.cols)
            and {k: v for k, v in self.entries.items() if v} == {k: v for k, v in other.entries.items() if v}
        )

    def to_json(self, v1: bool = False) -> dict:
        return {
            "e": self.e,
            "k": self.k,
            "core": list(self.core),
            "weight": self.weight,
            "rows": [list(r) for r in self.rows],
            "cols": [list(c) for c in self.cols],
            "entries": [
                [self.entry(lam, mu).at_one() if v1 else self.entry(lam, mu).to_json() for mu in self.cols]
                for lam in self.rows
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BlockMatrix":
        rows = [Partition(r) for r in data["rows"]]
        cols = [Partition(c) for c in data["cols"]]
        entries = {}
        for lam, line in zip(rows, data["entries"]):
            for mu, val in zip(cols, line):
                c = Laurent.const(val) if isinstance(val, int) else Laurent.from_pairs(val)
                if c:
                    entries[(lam, mu)] = c
        return cls(data["e"], data["k"], Partition(data["core"]), data["weight"], rows, cols, entries)

    def to_csv(self, v1: bool = False) -> str:
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda\\mu"] + [format_partition(mu) for mu in self.cols])
        for lam, row in zip(self.rows, self.grid(v1)):
            w.writerow([format_partition(lam)] + row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, e: int, k: int, core: Partition, weight: int) -> "BlockMatrix":
        import csv
        import io

        from .partition import parse_partition

        reader = list(csv.reader(io.StringIO(text)))
        cols = [parse_partition(c) for c in reader[0][1:]]
        rows, entries = [], {}
        for line in reader[1:]:
            lam = parse_partition(line[0])
            rows.append(lam)
            for mu, cell in zip(cols, line[1:]):
                c = parse(cell)
                if c:
                    entries[(lam, mu)] = c
        return cls(e, k, core, weight, rows, cols, entries)

    def pretty(self, v1: bool = False) -> str:
        """Lower-triangular table with ``.`` for zero entries."""
        labels = [format_partition(lam) for lam in self.rows]
        cells = [["." if c in ("0",) else c for c in row] for row in self.grid(v1)]
        lw = max((len(s) for s in labels), default=1)
        cw = max((len(c) for row in cells for c in row), default=1)
        lines = []
        for t, (lab, row) in enumerate(zip(labels, cells)):
            upto = min(len(row), t + 1) if self.rows == self.cols[: len(self.rows)] else len(row)
            lines.append(lab.ljust(lw) + " | " + " ".join(c.ljust(cw) for c in row[:upto]).rstrip())
        return "\n".join(lines)


def block_crystal_matrix(
    e: int,
    core: Partition,
    weight: int,
    k: int = 0,
    cache: BasisCache | None = None,
    store=None,
    order: str = "lex",
) -> BlockMatrix:
    """``(b_{lam mu}(v))`` over one block, rows and columns limited to at most ``k`` rows.

    ``k = 0`` means untruncated.  Columns longer than ``k`` are dropped as
    well: such ``B_mu`` have no terms with at most ``k`` rows.
    """
    n = sum(core) + e * weight
    members = block_members(n, e, core, max_length=k or None)
    rows = dominance_descending_order(members)
    entries = {}
    stored = store.load(e, core, weight) if store is not None else {}
    fresh = {}
    for mu in rows:
        if order == "lex" and mu in stored:
            x = stored[mu]
        else:
            x = canonical_basis(mu, e, cache, order).expansion
            fresh[mu] = x
        for lam in rows:
            c = x[lam]
            if c:
                entries[(lam, mu)] = c
    if store is not None and fresh and order == "lex":
        store.save(e, core, weight, fresh)
    return BlockMatrix(e, k, core, weight, rows, list(rows), entries)


# -- the runner insertion comparison ---------------------------------------------

@dataclass
class ComparisonRow:
    lam: Partition
    mu: Partition
    b: Laurent
    b_plus: Laurent
    equal: bool

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "b": to_string(self.b),
            "b_plus": to_string(self.b_plus),
            "equal": self.equal,
        }


@dataclass
class ComparisonReport:
    n: int
    e: int
    k: int
    alpha: int
    blocks: list[Partition]
    rows: list[ComparisonRow]

    @property
    def passed(self) -> bool:
        return all(r.equal for r in self.rows)

    def mismatches(self) -> list[ComparisonRow]:
        return [r for r in self.rows if not r.equal]

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} n={self.n} e={self.e} k={self.k} alpha={self.alpha}: "
            f"{len(self.rows) - len(self.mismatches())}/{len(self.rows)} pairs equal "
            f"in {len(self.blocks)} block(s)"
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "k": self.k,
            "alpha": self.alpha,
            "blocks": [list(c) for c in self.blocks],
            "passed": self.passed,
            "pairs": [r.to_json() for r in self.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def verify_runner_insertion(
    n: int,
    e: int,
    k: int,
    alpha: int,
    cache: BasisCache | None = None,
    plus_cache: BasisCache | None = None,
) -> ComparisonReport:
    """Compare ``b_{lam mu}`` at ``e`` with ``b+_{lam+ mu+}`` at ``e+1`` for every pair in a common block.

    The two sides use separate caches; passing the same object for both
    is rejected.
    """
    if not 0 <= alpha <= e:
        raise ValueError(f"alpha must lie in [0, {e}]")
    cache = BasisCache() if cache is None else cache
    plus_cache = BasisCache() if plus_cache is None else plus_cache
    if cache is plus_cache:
        raise ValueError("the two sides of a comparison must not share a cache")
    parts = [lam for lam in partitions_of(n) if len(lam) <= k]
    by_core: dict[Partition, list[Partition]] = {}
    for lam in parts:
        by_core.setdefault(core_of(lam, e), []).append(lam)
    rows = []
    for core in sorted(by_core, reverse=True):
        block = dominance_descending_order(by_core[core])
        images = {lam: plus(lam, e, k, alpha) for lam in block}
        for mu in block:
            B = canonical_basis(mu, e, cache).expansion
            Bp = canonical_basis(images[mu], e + 1, plus_cache).expansion
            for lam in block:
                b = B[lam]
                bp = Bp[images[lam]]
                rows.append(ComparisonRow(lam, mu, b, bp, b == bp))
    return ComparisonReport(n, e, k, alpha, sorted(by_core, reverse=True), rows)
