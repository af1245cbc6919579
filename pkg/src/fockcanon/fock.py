"""Sparse vectors in the level-one Fock space and the operators acting on them.

A :class:`FockVector` maps partitions to nonzero Laurent polynomials.  The
operators here are the Chevalley lowering operators ``F_i`` and their
divided powers, the Heisenberg operators ``V_m`` (horizontal ribbon
strips), truncation to at most ``k`` rows, the relabelling map ``theta``
(``lam -> lam+``) and the interleaved operators that intertwine ``F_i`` on
the e-side with words in the ``F_j`` on the (e+1)-side.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .abacus import TooFewBeads, beta_numbers, partition_from_beads, plus
from .laurent import ONE, ZERO, Laurent, exact_div, gaussian_factorial
from .partition import (
    EMPTY,
    Node,
    Partition,
    addable_nodes,
    dominance_descending_order,
    format_partition,
    removable_nodes,
    residue,
)


class NotAddable(ValueError):
    pass


class FockVector:
    """An immutable finite Laurent combination of partitions."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Partition, Laurent] | Iterable = ()):
        t: dict[Partition, Laurent] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for lam, c in items:
            if isinstance(c, int):
                c = Laurent.const(c)
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            s = t.get(lam, ZERO) + c
            if s:
                t[lam] = s
            else:
                t.pop(lam, None)
        self._t = t

    @classmethod
    def _raw(cls, t: dict) -> "FockVector":
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def basis(cls, lam: Partition, coeff: Laurent = ONE) -> "FockVector":
        return cls._raw({lam: coeff} if coeff else {})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls.basis(EMPTY)

    def __getitem__(self, lam) -> Laurent:
        return self._t.get(lam, ZERO)

    def __contains__(self, lam):
        return lam in self._t

    def __iter__(self):
        return iter(self._t)

    def __len__(self):
        return len(self._t)

    def items(self):
        return self._t.items()

    def support(self) -> list[Partition]:
        return dominance_descending_order(self._t)

    def sorted_items(self):
        return [(lam, self._t[lam]) for lam in self.support()]

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self._t}

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other: "FockVector") -> "FockVector":
        t = dict(self._t)
        for lam, c in other._t.items():
            s = t.get(lam, ZERO) + c
            if s:
                t[lam] = s
            else:
                t.pop(lam, None)
        return FockVector._raw(t)

    def __neg__(self):
        return FockVector._raw({lam: -c for lam, c in self._t.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def scale(self, f: Laurent) -> "FockVector":
        if not f:
            return FockVector._raw({})
        return FockVector._raw({lam: c * f for lam, c in self._t.items()})

    def __rmul__(self, f):
        if isinstance(f, int):
            f = Laurent.const(f)
        return self.scale(f)

    def bar_coefficients(self) -> "FockVector":
        """Apply v -> 1/v to the coefficients only (not the bar involution)."""
        return FockVector._raw({lam: c.bar() for lam, c in self._t.items()})

    def map_coefficients(self, fn) -> "FockVector":
        return FockVector((lam, fn(c)) for lam, c in self._t.items())

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        return f"FockVector({self})"

    def __str__(self):
        if not self._t:
            return "0"
        return " + ".join(f"({c})*[{format_partition(lam)}]" for lam, c in self.sorted_items())

    def to_json(self) -> dict:
        degs = self.degrees()
        return {
            "degree": degs.pop() if len(degs) == 1 else sorted(degs),
            "terms": [{"partition": list(lam), "coeff": c.to_json()} for lam, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        return cls((Partition(t["partition"]), Laurent.from_pairs(t["coeff"])) for t in data["terms"])


def _accumulate(t: dict, lam: Partition, c: Laurent):
    s = t.get(lam)
    if s is None:
        t[lam] = c
        return
    s = s + c
    if s:
        t[lam] = s
    else:
        del t[lam]


# -- F_i ------------------------------------------------------------------

def N_i(lam: Partition, x: Node, e: int) -> int:
    """Addable minus removable i-nodes strictly above ``x`` (``i = res(x)``)."""
    i = residue(x, e)
    if x not in addable_nodes(lam, e, i):
        raise NotAddable(f"{x} is not an addable node of {format_partition(lam)}")
    above_add = sum(1 for y in addable_nodes(lam, e, i) if y.row < x.row)
    above_rem = sum(1 for y in removable_nodes(lam, e, i) if y.row < x.row)
    return above_add - above_rem


def _F_terms(lam: Partition, i: int, e: int):
    """Yield ``(nu, N_i(lam, nu))`` for every ``nu`` obtained by adding an i-node."""
    n = len(lam)
    count = 0
    prev = None
    for r in range(1, n + 2):
        p = lam[r - 1] if r <= n else 0
        # removable node (r, p) and addable node (r, p+1) share row r;
        # neither lies above the other.
        if r <= n and (p - r) % e == i and p > (lam[r] if r < n else 0):
            rem = True
        else:
            rem = False
        if (prev is None or prev > p) and (p + 1 - r) % e == i:
            if r <= n:
                nu = lam[: r - 1] + (p + 1,) + lam[r:]
            else:
                nu = lam + (1,)
            yield Partition._make(nu), count
            count += 1
        if rem:
            count -= 1
        prev = p


def apply_F(x: FockVector, i: int, e: int) -> FockVector:
    out: dict[Partition, Laurent] = {}
    for lam, c in x.items():
        for nu, N in _F_terms(lam, i, e):
            _accumulate(out, nu, c.shift(N))
    return FockVector._raw(out)


def apply_F_divided(x: FockVector, i: int, a: int, e: int) -> FockVector:
    """``F_i^a x / [a]!`` computed by exact division."""
    y = x
    for _ in range(a):
        y = apply_F(y, i, e)
    if a <= 1:
        return y
    fact = gaussian_factorial(a)
    return FockVector._raw({lam: exact_div(c, fact) for lam, c in y.items()})


# -- ribbons and V_m --------------------------------------------------------

def _single_ribbons(lam: Partition, e: int, k: int):
    """Yield ``(nu, spin, head_row)`` for each e-ribbon that can be added to ``lam``.

    On a ``k``-bead abacus this moves a bead from ``p`` to the empty
    position ``p + e``; the spin is the number of beads strictly between.
    """
    beads = beta_numbers(lam, k)
    filled = set(beads)
    for idx, p in enumerate(beads):
        if p + e in filled:
            continue
        spin = sum(1 for q in range(p + 1, p + e) if q in filled)
        new = sorted(filled - {p} | {p + e})
        nu = partition_from_beads(new)
        # the moved bead is the (idx + spin + 1)-th smallest bead of nu;
        # it marks the top row of the ribbon
        top_row = k - (idx + spin)
        yield nu, spin, top_row


def horizontal_ribbon_strips(lam: Partition, m: int, e: int) -> list[tuple[Partition, int]]:
    """All ``nu`` such that ``nu / lam`` is a horizontal strip of ``m`` e-ribbons.

    The head (top right node) of every ribbon must sit in the first row or
    directly below a node of ``lam``.  Returns ``(nu, total spin)`` pairs,
    most dominant first.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    k = len(lam) + m * e
    frontier: dict[Partition, int] = {lam: 0}
    for _ in range(m):
        nxt: dict[Partition, int] = {}
        for mu, s in frontier.items():
            for nu, spin, top in _single_ribbons(mu, e, k):
                head_col = nu[top - 1]
                if top > 1 and lam.part(top - 1) < head_col:
                    continue
                total = s + spin
                old = nxt.setdefault(nu, total)
                if old != total:
                    raise AssertionError(f"inconsistent spins for {format_partition(nu)}")
        frontier = nxt
    return [(nu, frontier[nu]) for nu in dominance_descending_order(frontier)]


def _V_coefficient(spin: int) -> Laurent:
    return Laurent.monomial(-spin, -1 if spin % 2 else 1)


def apply_V(x: FockVector, m: int, e: int) -> FockVector:
    """``V_m lam = sum (-v)^(-spin) nu`` over horizontal m-ribbon strips."""
    if m < 1:
        raise ValueError("m must be at least 1")
    out: dict[Partition, Laurent] = {}
    for lam, c in x.items():
        for nu, spin in horizontal_ribbon_strips(lam, m, e):
            _accumulate(out, nu, c * _V_coefficient(spin))
    return FockVector._raw(out)


# -- truncation and runner insertion ---------------------------------------

def truncate(x: FockVector, k: int) -> FockVector:
    return FockVector._raw({lam: c for lam, c in x.items() if len(lam) <= k})


def theta(x: FockVector, e: int, k: int, alpha: int) -> FockVector:
    out = {}
    for lam, c in x.items():
        if len(lam) > k:
            raise TooFewBeads(f"{format_partition(lam)} has more than {k} rows")
        out[plus(lam, e, k, alpha)] = c
    return FockVector._raw(out)


def alpha_runner(i: int, e: int, k: int, alpha: int) -> tuple[int, int, str]:
    """For ``F_i`` on a k-bead e-abacus: ``(r, j, case)``.

    ``r`` is the runner of residue ``i``, ``j`` the (e+1)-residue of runner
    ``r`` of the enlarged abacus, and ``case`` says which word in the
    ``F^+`` reproduces ``F_i`` after runner insertion.  With ``alpha == e``
    the empty runner is the last one, so a bead moving from runner ``e-1``
    onto runner 0 of the next row crosses it ("wrap").
    """
    r = (i + k) % e
    j = (r - k) % (e + 1)
    if alpha == e and r == 0:
        return r, j, "wrap"
    case = "before" if r < alpha else ("at" if r == alpha else "after")
    return r, j, case


def alpha_F_plus(y: FockVector, i: int, a: int, e: int, k: int, alpha: int) -> FockVector:
    """The interleaved divided power acting on the (e+1)-side.

    ``y`` is a vector of ``F_k^+`` (typically ``theta`` of an e-side
    vector); the result is truncated to at most ``k`` rows.
    """
    _, j, case = alpha_runner(i, e, k, alpha)
    e1 = e + 1
    y = truncate(y, k)
    if case == "before":
        return truncate(apply_F_divided(y, j, a, e1), k)
    if case == "after":
        return truncate(apply_F_divided(y, (j + 1) % e1, a, e1), k)
    if case == "wrap":
        y = truncate(apply_F_divided(y, (j - 1) % e1, a, e1), k)
        return truncate(apply_F_divided(y, j, a, e1), k)
    y = truncate(apply_F_divided(y, j, a, e1), k)
    return truncate(apply_F_divided(y, (j + 1) % e1, a, e1), k)


def apply_alpha_F(x: FockVector, i: int, a: int, e: int, k: int, alpha: int) -> FockVector:
    """Interleaved operator from the length-<=k e-side to the (e+1)-side."""
    return alpha_F_plus(theta(truncate(x, k), e, k, alpha), i, a, e, k, alpha)


def apply_word(x: FockVector, word, e: int) -> FockVector:
    """Apply divided powers ``F_r^(a)`` for ``(r, a)`` in ``word``, left to right."""
    for r, a in word:
        x = apply_F_divided(x, r, a, e)
    return x


def apply_V_word(x: FockVector, tau: Iterable[int], e: int) -> FockVector:
    """``V_tau x = V_{tau_1} ... V_{tau_s} x`` (rightmost factor first)."""
    for m in reversed(tuple(tau)):
        x = apply_V(x, m, e)
    return x
