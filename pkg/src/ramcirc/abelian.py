"""Cayley graphs over general odd abelian groups.

The cyclic theory carries over verbatim: for a group G of odd order m
and a symmetric connected set S = G \\ T (identity in T, |T| = l) the
nontrivial eigenvalues are lambda_chi = -sum_{t in T} chi(t), and every
class of covalency l <= l0(m) is automatically Ramanujan.  What changes
beyond l0 is which groups keep an extra Ramanujan layer: among the
non-cyclic groups only the squares Z_p x Z_p of the first few odd
primes do.  Z_3 x Z_3 has every class Ramanujan (the classes above
covalency 5 are empty once connectivity is enforced), Z_p x Z_p gains
one extra step for p in {7, 11, 13, 17} and two for p = 5, and every
other non-cyclic group is ordinary with hat_l = l0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

import mpmath as mp
import numpy as np

from .bounds import trivial_bound
from .classify import Verdict, classify
from .errors import BudgetExceededError, InternalInvariantError, ValidationError
from .numtheory import is_prime
from .precision import cos2pi_frac

KIND_CYCLIC = "cyclic"
KIND_PP = "prime_square_group"
KIND_GENERIC = "noncyclic_generic"

_BORDER_TOL = 1e-9


@dataclass(frozen=True)
class AbelianGroup:
    """An odd abelian group given by its invariant factor chain.

    orders = (m1, ..., mr) with 3 <= m1 | m2 | ... | mr, all odd.  The
    chain form is canonical, so two isomorphic groups compare equal.
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders:
            raise ValidationError("a group needs at least one invariant factor")
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 3 or n % 2 == 0:
                raise ValidationError(f"invariant factors must be odd and >= 3, got {n}")
        for a, b in zip(self.orders, self.orders[1:]):
            if b % a:
                raise ValidationError(
                    f"orders must form a divisibility chain; {a} does not divide {b}")

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return self.orders[-1]

    @property
    def is_cyclic(self) -> bool:
        return len(self.orders) == 1

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def negate(self, t) -> tuple[int, ...]:
        return tuple((-x) % n for x, n in zip(t, self.orders))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def spans(self, gens) -> bool:
        """Whether the given elements generate the whole group."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    e = self.add(h, g)
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
            frontier = nxt
        return len(seen) == self.order


@dataclass(frozen=True)
class AbelianCayleySet:
    """A symmetric connected Cayley set on G, stored via its complement.

    complement = T contains the identity, is closed under negation and
    has odd size l (the covalency) with 1 <= l <= |G| - 2; the
    connection set S = G \\ T must generate G.
    """

    group: AbelianGroup
    complement: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.group
        tset = set(self.complement)
        if len(tset) != len(self.complement) or list(self.complement) != sorted(tset):
            raise ValidationError("complement must be sorted and duplicate-free")
        for t in self.complement:
            if len(t) != len(G.orders) or any(
                    not 0 <= x < n for x, n in zip(t, G.orders)):
                raise ValidationError(f"element {t} is not in canonical form")
            if G.negate(t) not in tset:
                raise ValidationError("complement must be closed under negation")
        if G.identity not in tset:
            raise ValidationError("complement must contain the identity")
        l = len(tset)
        if not 1 <= l <= G.order - 2:
            raise ValidationError(f"covalency {l} outside [1, {G.order - 2}]")
        if not G.spans([e for e in G.elements() if e not in tset]):
            raise ValidationError("connection set does not generate the group")

    @classmethod
    def from_pairs(cls, group: AbelianGroup, reps) -> "AbelianCayleySet":
        """Build from negation-pair representatives (identity added)."""
        tset = {group.identity}
        for t in reps:
            t = tuple(int(x) % n for x, n in zip(t, group.orders))
            tset.add(t)
            tset.add(group.negate(t))
        return cls(group, tuple(sorted(tset)))

    @property
    def covalency(self) -> int:
        return len(self.complement)

    @property
    def valency(self) -> int:
        return self.group.order - self.covalency


def abelian_eigenvalue(cayley: AbelianCayleySet, chi) -> float:
    """The eigenvalue of the character chi = (c1, ..., cr).

    The trivial character gives the valency; otherwise the value is
    -sum_{t in T} cos(2 pi <chi, t>), real because T is symmetric.
    Phases are reduced exactly over the group exponent before any
    floating-point work.
    """
    G = cayley.group
    chi = tuple(int(c) % n for c, n in zip(chi, G.orders))
    if len(chi) != len(G.orders):
        raise ValidationError("character length does not match the group rank")
    if all(c == 0 for c in chi):
        return float(cayley.valency)
    L = G.exponent
    weights = [L // n for n in G.orders]
    acc = 0.0
    for t in cayley.complement:
        num = sum(c * x * w for c, x, w in zip(chi, t, weights)) % L
        acc += cos2pi_frac(num, L)
    return -acc


def abelian_spectrum(cayley: AbelianCayleySet) -> list[float]:
    """All |G| eigenvalues, ordered by the character tuples."""
    return [abelian_eigenvalue(cayley, chi)
            for chi in itertools.product(*(range(n) for n in cayley.group.orders))]


def abelian_is_ramanujan(cayley: AbelianCayleySet) -> bool:
    """Whether every nontrivial eigenvalue clears 2*sqrt(valency - 1).

    Near-ties are re-decided at fifty digits from the exact phase data,
    and an exact tie counts as Ramanujan.
    """
    G = cayley.group
    m, l = G.order, cayley.covalency
    rb = 2.0 * math.sqrt(m - l - 1)
    worst = 0.0
    for chi in itertools.product(*(range(n) for n in G.orders)):
        if all(c == 0 for c in chi):
            continue
        worst = max(worst, abs(abelian_eigenvalue(cayley, chi)))
    if abs(worst - rb) >= _BORDER_TOL:
        return worst <= rb
    ## borderline: redo the worst character sums exactly
    L = G.exponent
    weights = [L // n for n in G.orders]
    with mp.workdps(50):
        rb_mp = 2 * mp.sqrt(m - l - 1)
        for chi in itertools.product(*(range(n) for n in G.orders)):
            if all(c == 0 for c in chi):
                continue
            acc = mp.mpf(0)
            for t in cayley.complement:
                num = sum(c * x * w for c, x, w in zip(chi, t, weights)) % L
                acc += mp.cos(2 * mp.pi * num / L)
            if abs(-acc) > rb_mp:
                return False
    return True


## ------------------------------------------------- prime-square excess

def pp_excess(p: int, h: int) -> float:
    """Signed excess of the packed construction on Z_p x Z_p.

    The construction at covalency l0 + 2h (a full line through the
    identity plus p - 3 + 2h elements of the two neighbouring cosets)
    has an eigenvalue of magnitude p + (p - 3 + 2h) cos(2 pi / p); the
    excess is that value minus 2*sqrt(p^2 - 2p + 2 - 2h).  Positive
    excess certifies that class non-Ramanujan.
    """
    if not is_prime(p) or p < 5:
        raise ValidationError("the construction needs a prime p >= 5")
    if h < 1:
        raise ValidationError("the layer index h must be at least 1")
    if p < 2 * h - 3:
        raise ValidationError(
            f"layer h={h} does not fit in the neighbouring cosets for p={p}")
    arg = p * p - 2 * p + 2 - 2 * h
    if arg <= 0:
        raise ValidationError("covalency exceeds the group order")
    return p + (p - 3 + 2 * h) * math.cos(math.tau / p) - 2.0 * math.sqrt(arg)


@dataclass(frozen=True)
class AbelianVerdict:
    """Outcome of the edge-removal bound for one abelian group.

    For cyclic groups the cyclic verdict is attached verbatim.  For
    Z_p x Z_p the field h_star records the first layer whose packed
    construction beats the Ramanujan bound, so hat_l = l0 + 2(h_star-1).
    """

    group: AbelianGroup
    l0: int
    kind: str
    verdict: str
    epsilon: int | None
    hat_l: int
    h_star: int | None = None
    cyclic: Verdict | None = None

    def to_json_dict(self) -> dict:
        return {
            "orders": list(self.group.orders),
            "m": self.group.order,
            "l0": self.l0,
            "kind": self.kind,
            "verdict": self.verdict,
            "epsilon": self.epsilon,
            "hatl": self.hat_l,
            "h_star": self.h_star,
            "cyclic": self.cyclic.to_json_dict() if self.cyclic else None,
        }


def abelian_hat_l(group: AbelianGroup) -> AbelianVerdict:
    """The edge-removal bound for an odd abelian group.

    Cyclic groups fall back to the circulant classification.  Among the
    rest, Z_3 x Z_3 keeps every class Ramanujan (hat_l = m - 2 = 7),
    Z_p x Z_p climbs while the packed-construction excess stays
    non-positive, and everything else is ordinary at l0.
    """
    m = group.order
    l0 = trivial_bound(m)
    if group.is_cyclic:
        v = classify(m)
        return AbelianVerdict(group, l0, KIND_CYCLIC, v.verdict, v.epsilon,
                              v.hat_l, cyclic=v)
    orders = group.orders
    if len(orders) == 2 and orders[0] == orders[1] and is_prime(orders[0]):
        p = orders[0]
        if p == 3:
            return AbelianVerdict(group, l0, KIND_PP, "all_ramanujan", None, m - 2)
        for h in (1, 2, 3):
            if pp_excess(p, h) > 0:
                eps = 2 * (h - 1)
                return AbelianVerdict(
                    group, l0, KIND_PP,
                    "exceptional" if eps else "ordinary", eps, l0 + eps,
                    h_star=h)
        raise InternalInvariantError(
            f"packed construction failed to terminate by h=3 for p={p}")
    return AbelianVerdict(group, l0, KIND_GENERIC, "ordinary", 0, l0)


## ------------------------------------------------------------- oracle

def _pair_reps(group: AbelianGroup) -> list[tuple[int, ...]]:
    reps, seen = [], {group.identity}
    for t in group.elements():
        if t in seen:
            continue
        seen.add(t)
        seen.add(group.negate(t))
        reps.append(t)
    return reps


def _char_table(group: AbelianGroup, reps) -> np.ndarray:
    """P[i, j] = chi_j(t_i) + chi_j(-t_i) over the nontrivial characters."""
    L = group.exponent
    weights = np.array([L // n for n in group.orders], dtype=np.int64)
    R = np.array(reps, dtype=np.int64) * weights
    chars = [chi for chi in itertools.product(*(range(n) for n in group.orders))
             if any(chi)]
    X = np.array(chars, dtype=np.int64)
    phases = np.mod(R @ X.T, L)
    return 2.0 * np.cos((2.0 * math.pi / L) * phases)


def abelian_oracle(group: AbelianGroup, l_max: int | None = None,
                   budget: int = 100_000_000) -> int:
    """Exact hat_l by exhausting every class above l0, for |G| <= 49.

    Classes of covalency at most l0 are Ramanujan outright, so the climb
    starts at l0 + 2 and stops at the first class containing a valid
    (connected) violator; a class left empty by the connectivity
    requirement passes vacuously.
    """
    m = group.order
    if m > 49:
        raise ValidationError("the exhaustive oracle is limited to |G| <= 49")
    reps = _pair_reps(group)
    table = _char_table(group, reps)
    rep_elems = [(t, group.negate(t)) for t in reps]
    spf = _smallest_prime_factor(m)
    hat = trivial_bound(m)
    limit = m - 2 if l_max is None else min(l_max, m - 2)
    l = hat + 2
    while l <= limit:
        if not _class_clean(group, reps, rep_elems, table, l, spf, budget):
            break
        hat = l
        l += 2
    return hat


def _smallest_prime_factor(m: int) -> int:
    for d in range(3, m + 1, 2):
        if m % d == 0:
            return d
    return m


def _class_clean(group, reps, rep_elems, table, l, spf, budget) -> bool:
    m = group.order
    r = (l - 1) // 2
    if r > len(reps):
        return True
    total = comb(len(reps), r)
    if total > budget:
        raise BudgetExceededError(total, budget)
    rb = 2.0 * math.sqrt(m - l - 1)
    ## connectivity can only fail when the kept set fits in a maximal
    ## subgroup (of size m/spf, identity removed)
    filter_needed = (m - l) <= m // spf - 1
    elements = group.elements()
    idx_iter = itertools.combinations(range(len(reps)), r)
    chunk = max(1, 4_000_000 // (max(r, 1) * table.shape[1]))
    while True:
        block = list(itertools.islice(idx_iter, chunk))
        if not block:
            return True
        idx = np.array(block, dtype=np.intp)
        lam = -(1.0 + table[idx].sum(axis=1))
        absmax = np.abs(lam).max(axis=1)
        for row in np.nonzero(absmax > rb - _BORDER_TOL)[0]:
            tset = {group.identity}
            for i in idx[row]:
                tset.update(rep_elems[i])
            if filter_needed and not group.spans(
                    [e for e in elements if e not in tset]):
                continue
            cay = AbelianCayleySet.from_pairs(group, (reps[i] for i in idx[row]))
            if not abelian_is_ramanujan(cay):
                return False
