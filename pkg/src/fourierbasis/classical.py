"""Interval combinatorics over a chained symplectic F2-space.

Vectors over F2 with basis e_1..e_D are bit masks (bit i-1 is the
coefficient of e_i); the symplectic form pairs e_i with e_j exactly when
|i-j| = 1.  Interval sets inside [1,D] grow two columns at a time through an
insertion map, giving two recursive families: one restricted to odd-length
intervals and a larger one that also allows nested centered chains.  Spans
of interval indicator vectors realize both families as collections of
isotropic subspaces.  Three bijections relate nested subspace pairs living
on one parity class to those collections, and indicator functions of the
larger collection, read through the pairing-set identification, are the
distinguished basis for the based F2 groups.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exceptional import v_pair_position
from .groups import based_f2_space
from .mspace import MVector, mspace
from .scalars import ONE

FAMILY_CAP = 16


# ---------------------------------------------------------------------------
# mask linear algebra

def interval_mask(iv: tuple) -> int:
    a, b = iv
    return ((1 << b) - 1) ^ ((1 << (a - 1)) - 1)


def form_product(x: int, y: int) -> int:
    # adjacency pairing: e_i meets e_{i-1} and e_{i+1}
    return (x & ((y << 1) ^ (y >> 1))).bit_count() & 1


def span_masks(gens) -> frozenset:
    out = {0}
    for g in gens:
        out |= {x ^ g for x in out}
    return frozenset(out)


def rref_masks(gens) -> tuple:
    """Canonical reduced echelon rows (pivots at lowest set bits, ascending);
    tuple equality is subspace equality."""
    basis = []
    for g in gens:
        r = g
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            basis.append(r)
    basis.sort(key=lambda b: b & -b)
    out = []
    for i, b in enumerate(basis):
        for other in basis[i + 1:]:
            if b & (other & -other):
                b ^= other
        out.append(b)
    return tuple(out)


def nullspace_masks(constraints, D: int) -> tuple:
    # solutions v of parity(v & c) = 0 for every constraint c
    rows = rref_masks(constraints)
    pivots = {r & -r for r in rows}
    out = []
    for j in range(D):
        bit = 1 << j
        if bit in pivots:
            continue
        v = bit
        for r in rows:
            if r & bit:
                v ^= r & -r
        out.append(v)
    return rref_masks(out)


def delta_mask(D: int, delta: int) -> int:
    m = 0
    for i in range(1 + (1 - delta % 2), D + 1, 2):
        m |= 1 << (i - 1)
    return m


def _compress(mask: int, positions) -> int:
    out = 0
    for k, p in enumerate(positions):
        out |= ((mask >> p) & 1) << k
    return out


def _decompress(mask: int, positions) -> int:
    out = 0
    for k, p in enumerate(positions):
        out |= ((mask >> k) & 1) << p
    return out


def perp(D: int, rows) -> tuple:
    mask = (1 << D) - 1
    return nullspace_masks([((r << 1) ^ (r >> 1)) & mask for r in rows], D)


def shriek(D: int, rows, delta: int) -> tuple:
    """Vectors of the opposite parity class pairing to zero with a subspace
    of the delta class."""
    positions = [i for i in range(D) if (i + 1) % 2 == (1 - delta) % 2]
    mask = (1 << D) - 1
    constraints = [_compress(((r << 1) ^ (r >> 1)) & mask, positions) for r in rows]
    sols = nullspace_masks(constraints, len(positions))
    return rref_masks(_decompress(s, positions) for s in sols)


def kappa(iv: tuple) -> int:
    return iv[0] % 2


def delta_split(D: int, rows) -> tuple:
    """Split a subspace spanned by parity-homogeneous vectors into its even
    and odd index parts."""
    odd_bits = delta_mask(D, 1)
    even_bits = delta_mask(D, 0)
    pts = span_masks(rows)
    part0 = rref_masks(sorted(p for p in pts if not (p & odd_bits)))
    part1 = rref_masks(sorted(p for p in pts if not (p & even_bits)))
    return part0, part1


# ---------------------------------------------------------------------------
# interval insertion and the two recursive families

def xi_embed(i: int, iv: tuple) -> tuple:
    a, b = iv
    if not 1 <= i:
        raise ValueError(f"insertion column {i} out of range")
    if i <= a:
        return (a + 2, b + 2)
    if i >= b + 2:
        return (a, b)
    return (a, b + 2)


def t_insert(i: int, B: frozenset) -> frozenset:
    return frozenset(xi_embed(i, iv) for iv in B) | {(i, i)}


def T_embed(D: int, i: int, mask: int) -> int:
    """Form-preserving embedding of the D-2 space widening column i; sends
    the interval vector of I' to the interval vector of xi_embed(i, I')."""
    if i == 1:
        return mask << 2
    if i == D:
        return mask
    low = mask & ((1 << (i - 2)) - 1)
    mid = 0b111 << (i - 2) if (mask >> (i - 2)) & 1 else 0
    high = (mask >> (i - 1)) << (i + 1)
    return low | mid | high


def T_embed_delta(D: int, i: int, mask: int) -> int:
    # parity-class variant: the straddling basis vector drops its middle term
    if i == 1:
        return mask << 2
    if i == D:
        return mask
    low = mask & ((1 << (i - 2)) - 1)
    mid = 0b101 << (i - 2) if (mask >> (i - 2)) & 1 else 0
    high = (mask >> (i - 1)) << (i + 1)
    return low | mid | high


def _check_cap(D: int):
    if D < 0 or D % 2:
        raise ValueError("the ambient size D must be an even natural number")
    if D > FAMILY_CAP:
        raise ValueError(f"enumeration cap D <= {FAMILY_CAP} exceeded")


def _primitive_sets(D: int) -> list:
    return [
        frozenset((j, D + 1 - j) for j in range(1, k + 1))
        for k in range(D // 2 + 1)
    ]


@lru_cache(maxsize=None)
def enumerate_family(kind: str, D: int) -> tuple:
    """The interval-set families: odd-only ("S_D"), full ("SS_D"), or the
    centered chains alone ("SS_D_prim").  Deterministic first-arrival order."""
    _check_cap(D)
    if kind == "SS_D_prim":
        return tuple(_primitive_sets(D))
    if kind not in ("S_D", "SS_D"):
        raise ValueError(f"unknown interval family kind {kind!r}")
    if D == 0:
        return (frozenset(),)
    seen = {}
    seeds = [frozenset()] if kind == "S_D" else _primitive_sets(D)
    for B in seeds:
        seen[B] = True
    for prev in enumerate_family(kind, D - 2):
        for i in range(1, D + 1):
            cand = t_insert(i, prev)
            if cand not in seen:
                seen[cand] = True
    return tuple(seen)


def span_B(B) -> tuple:
    return rref_masks(sorted(interval_mask(iv) for iv in B))


# ---------------------------------------------------------------------------
# subspace families and the nested-pair family

@dataclass(frozen=True)
class LPair:
    """A nested pair of subspaces of one parity class, echelon rows."""

    l1: tuple
    l2: tuple
    delta: int


@lru_cache(maxsize=None)
def enumerate_subspace_family(kind: str, D: int, delta: int = 0) -> tuple:
    """Recursive subspace collections: "F" (spans of the odd family), "FF"
    (spans of the full family), "C_delta" (single subspaces of one parity
    class), "tildeC_delta" (nested pairs, as LPair)."""
    _check_cap(D)
    if kind in ("F", "FF"):
        if D == 0:
            return ((),)
        seen = {(): True}
        if kind == "FF":
            for B in _primitive_sets(D):
                seen[span_B(B)] = True
        for prev in enumerate_subspace_family(kind, D - 2):
            for i in range(1, D + 1):
                rows = rref_masks(
                    [T_embed(D, i, r) for r in prev] + [1 << (i - 1)]
                )
                if rows not in seen:
                    seen[rows] = True
        return tuple(seen)
    if kind == "C_delta":
        if D == 0:
            return ((),)
        seen = {}
        for prev in enumerate_subspace_family(kind, D - 2, delta):
            for i in range(1, D + 1):
                img = [T_embed_delta(D, i, r) for r in prev]
                if i % 2 == delta % 2:
                    img.append(1 << (i - 1))
                rows = rref_masks(img)
                if rows not in seen:
                    seen[rows] = True
        return tuple(seen)
    if kind == "tildeC_delta":
        if D == 0:
            return (LPair((), (), delta),)
        seen = {}
        full = LPair((), rref_masks([1 << (i - 1) for i in range(1, D + 1)
                                     if i % 2 == delta % 2]), delta)
        seen[full] = True
        for prev in enumerate_subspace_family(kind, D - 2, delta):
            for i in range(1, D + 1):
                img1 = [T_embed_delta(D, i, r) for r in prev.l1]
                img2 = [T_embed_delta(D, i, r) for r in prev.l2]
                if i % 2 == delta % 2:
                    img1.append(1 << (i - 1))
                    img2.append(1 << (i - 1))
                cand = LPair(rref_masks(img1), rref_masks(img2), delta)
                if cand not in seen:
                    seen[cand] = True
        return tuple(seen)
    raise ValueError(f"unknown subspace family kind {kind!r}")


def alpha_map(D: int, pair: LPair) -> tuple:
    return rref_masks(list(pair.l1) + list(shriek(D, pair.l2, pair.delta)))


# ---------------------------------------------------------------------------
# the complementary interval layout

@dataclass(frozen=True)
class ZDecomposition:
    """Complementary intervals of an odd-family member: a singleton layer
    (z1), a bridging layer (z2), and their merge as the contiguous chain
    I_1..I_M with offsets (c_0, |I_1|, .., |I_M|)."""

    source: frozenset
    z1: frozenset
    z2: frozenset
    sequence: tuple
    gaps: tuple


def _maximal_runs(D: int, B) -> list:
    covered = set()
    for a, b in B:
        covered.update(range(a, b + 1))
    runs = []
    start = None
    for p in range(1, D + 2):
        if p in covered:
            if start is None:
                start = p
        elif start is not None:
            runs.append((start, p - 1))
            start = None
    return runs


def z_of(D: int, B) -> ZDecomposition:
    """The complementary interval layout.  The input's maximal covered runs
    must themselves be members of B (every odd-family member qualifies)."""
    B = frozenset(B)
    runs = _maximal_runs(D, B)
    if any(r not in B for r in runs):
        raise ValueError("maximal covered runs must be members of the set")
    s = len(runs)
    ends = [-1] + [b for _, b in runs]
    starts = [a for a, _ in runs] + [D + 2]
    gaps_at = [starts[j] - ends[j] for j in range(s + 1)]
    J = [j for j in range(s + 1) if gaps_at[j] >= 3]
    z1 = frozenset(
        (u, u)
        for j in range(s + 1)
        if gaps_at[j] >= 4
        for u in range(ends[j] + 2, starts[j] - 1)
    )
    z2 = frozenset(
        (starts[J[u]] - 1, ends[J[u + 1]] + 1) for u in range(len(J) - 1)
    )
    seq = tuple(sorted(z1 | z2))
    M = D - 2 * len(B)
    if len(seq) != M or any(
        seq[t + 1][0] != seq[t][1] + 1 for t in range(M - 1)
    ):
        raise ValueError("complementary intervals failed to form a chain")
    gaps = ((seq[0][0],) + tuple(b - a + 1 for a, b in seq)) if seq else ()
    return ZDecomposition(B, z1, z2, seq, gaps)


def b_of_k(D: int, B, k: int) -> frozenset:
    """Adjoin the k outermost centered unions of the complementary chain."""
    zd = z_of(D, B)
    M = len(zd.sequence)
    if not 0 <= 2 * k <= M:
        raise ValueError(f"chain depth {k} out of range for M={M}")
    extra = {
        (zd.sequence[u - 1][0], zd.sequence[M - u][1]) for u in range(1, k + 1)
    }
    return frozenset(B) | extra


def lambda_map_inverse(Bhat) -> tuple:
    B = frozenset(iv for iv in Bhat if (iv[1] - iv[0]) % 2 == 0)
    return B, len(Bhat) - len(B)


@dataclass(frozen=True)
class QuotientBasis:
    """The reduced space on top of an isotropic span: echelon rows of the
    span and its orthogonal, plus chain representatives projecting to a
    symplectic basis of the quotient."""

    e_rows: tuple
    perp_rows: tuple
    reps: tuple


def quotient_symplectic_basis(D: int, B) -> QuotientBasis:
    zd = z_of(D, B)
    e_rows = span_B(B)
    return QuotientBasis(
        e_rows=e_rows,
        perp_rows=perp(D, e_rows),
        reps=tuple(interval_mask(iv) for iv in zd.sequence),
    )


# ---------------------------------------------------------------------------
# the composite bijection and the indicator basis

@lru_cache(maxsize=None)
def _span_index(D: int) -> dict:
    out = {}
    for B in enumerate_family("S_D", D):
        rows = span_B(B)
        if rows in out:
            raise ValueError("span map is not injective on the odd family")
        out[rows] = B
    return out


def lift_triple(D: int, pair: LPair, k: int) -> tuple:
    """Send (nested pair, chain depth) to a member of the full subspace
    collection: the depth-k centered extension over the span attached to the
    pair."""
    rows = alpha_map(D, pair)
    B = _span_index(D).get(rows)
    if B is None:
        raise ValueError("pair does not come from the nested-pair family")
    return span_B(b_of_k(D, B, k))


def triple_family(D: int, delta: int = 0) -> tuple:
    """All (pair, depth) inputs of lift_triple, in family order."""
    out = []
    for pair in enumerate_subspace_family("tildeC_delta", D, delta):
        M = D - 2 * len(alpha_map(D, pair))
        out.extend((pair, k) for k in range(M // 2 + 1))
    return tuple(out)


def indicator_vector(n: int, rows, delta: int = 0) -> MVector:
    space = mspace(based_f2_space(n))
    pts = span_masks(rows)
    return MVector(space, {v_pair_position(n, v, delta): ONE for v in pts})


def basis_beta_classical(n: int, delta: int = 0) -> list:
    """Indicator rows of the full subspace collection over the pairing set
    of the rank-n based space."""
    return [
        indicator_vector(n, rows, delta)
        for rows in enumerate_subspace_family("FF", 2 * n)
    ]
