"""Recursive subgroup-pair families, seed vectors, and the distinguished basis.

Each supported group carries a fixed collection of surjective homomorphisms
from subgroups onto smaller standard models.  Pulling back pairs of subgroups
through those maps (together with two explicit seeding rules) produces the
family of admissible pairs (G' normal in G''), each carrying an
identification of G''/G' with a standard quotient model.  Every quotient
model owns a short list of seed vectors; transferring a seed through its pair
yields one basis vector, and the full collection is the distinguished basis
of the space spanned by M(G).

The basis assignments for the symmetric groups in the family are shipped as a
data file (one row per member of M(G)) and rebuilt here for verification.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .groups import (
    FiniteGroupModel,
    Identification,
    based_f2_space,
    build_standard,
    product_group,
    symmetric_group,
    x_lattice,
)
from .mspace import MSpace, MVector, external_product, mspace, s_map
from .scalars import ONE


@dataclass(frozen=True)
class HomEntry:
    source: frozenset
    target: FiniteGroupModel
    mapping: dict
    name: str

    def __hash__(self):
        return hash((self.source, self.target.name, self.name))


class FCPair:
    """A pair (G' inside G'') with the identification of G''/G' against a
    standard quotient model (a surjective map on G'' with kernel G')."""

    __slots__ = ("gamma1", "gamma2", "qident")

    def __init__(self, gamma1: frozenset, gamma2: frozenset, qident: Identification):
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.qident = qident

    def key(self):
        return (self.gamma1, self.gamma2)

    @property
    def quotient(self) -> FiniteGroupModel:
        return self.qident.target


@dataclass(frozen=True)
class YTriple:
    pair: FCPair
    xi_name: str
    xi: MVector

    def __hash__(self):
        return hash((self.pair.key(), self.xi_name))


# ---------------------------------------------------------------------------
# the hom collections


def _to_trivial(members: frozenset, name: str) -> HomEntry:
    s1 = symmetric_group(1)
    return HomEntry(members, s1, {g: s1.identity for g in members}, name)


def _sn_hom_entries(n: int) -> list:
    if n == 2:
        G = symmetric_group(2)
        return [
            _to_trivial(frozenset({G.identity}), "S1->S1"),
            _to_trivial(frozenset(G.elements), "S2->S1"),
        ]
    lat = x_lattice(n)
    members = lat.members
    if n == 3:
        return [
            _to_trivial(members["S2"].member_set, "S2->S1"),
            _to_trivial(members["S3"].member_set, "S3->S1"),
        ]
    s2cat = symmetric_group(2)
    klein = members["S2S2"]
    ident22 = lat.identifications["S2S2"]
    p_second = HomEntry(
        klein.member_set,
        s2cat,
        {g: ident22.mapping[g][1] for g in klein.members},
        "p",
    )
    d8 = members["D8"]
    f_map = HomEntry(
        d8.member_set,
        s2cat,
        {g: (s2cat.identity if g in klein.member_set else (1, 0)) for g in d8.members},
        "f",
    )
    if n == 4:
        return [
            p_second,
            f_map,
            _to_trivial(members["S3"].member_set, "S3->S1"),
            _to_trivial(members["S4"].member_set, "S4->S1"),
        ]
    ident32 = lat.identifications["S3S2"]
    s3s2 = members["S3S2"]
    p3 = HomEntry(
        s3s2.member_set,
        symmetric_group(3),
        {g: ident32.mapping[g][0] for g in s3s2.members},
        "p3",
    )
    p2 = HomEntry(
        s3s2.member_set,
        s2cat,
        {g: ident32.mapping[g][1] for g in s3s2.members},
        "p2",
    )
    return [
        p3,
        p2,
        f_map,
        _to_trivial(members["S4"].member_set, "S4->S1"),
        _to_trivial(members["S2"].member_set, "S2->S1"),
        _to_trivial(members["S5"].member_set, "S5->S1"),
    ]


def _v_hom_entries(n: int) -> list:
    model = based_f2_space(n)
    if n == 1:
        return [
            _to_trivial(frozenset({0}), "0->S1"),
            _to_trivial(frozenset(model.elements), "V1->S1"),
        ]
    target = based_f2_space(n - 1)
    entries = []
    for j in range(n - 1):
        # identity on the subspace replacing basis vectors j, j+1 by their sum
        members = frozenset(
            m for m in model.elements if ((m >> j) & 1) == ((m >> (j + 1)) & 1)
        )
        mapping = {}
        for m in members:
            low = m & ((1 << j) - 1)
            mid = ((m >> j) & 1) << j
            mapping[m] = low | mid | ((m >> (j + 2)) << (j + 1))
        entries.append(HomEntry(members, target, mapping, f"id on sum {j+1},{j+2}"))
    for j in range(n):
        # projection killing basis vector j
        mapping = {}
        for m in model.elements:
            mapping[m] = (m & ((1 << j) - 1)) | ((m >> (j + 1)) << j)
        entries.append(HomEntry(frozenset(model.elements), target, mapping, f"kill {j+1}"))
    members = frozenset(m for m in model.elements if (m & 1) == 0)
    entries.append(HomEntry(members, target, {m: m >> 1 for m in members}, "id off 1"))
    return entries


def frak_c(model: FiniteGroupModel) -> list:
    """The fixed collection of surjective homomorphisms from subgroups of the
    model onto smaller standard models."""
    if model.kind == "perm" and 2 <= model.n <= 5:
        return _sn_hom_entries(model.n)
    if model.kind == "f2":
        return _v_hom_entries(model.n)
    raise ValueError(f"no hom collection for {model.name}")


# ---------------------------------------------------------------------------
# the recursive families


_FC_CACHE: dict[str, list] = {}
_TFC_CACHE: dict[str, list] = {}


def fc_set(model: FiniteGroupModel) -> list:
    """Distinguished subgroups: preimages of distinguished subgroups of the
    smaller models, recursively."""
    if model.name in _FC_CACHE:
        return _FC_CACHE[model.name]
    if model.order == 1:
        out = [frozenset({model.identity})]
    else:
        out, seen = [], set()
        for h in frak_c(model):
            for s in fc_set(h.target):
                g = frozenset(x for x in h.source if h.mapping[x] in s)
                if g not in seen:
                    seen.add(g)
                    out.append(g)
    _FC_CACHE[model.name] = out
    return out


def tilde_fc_set(model: FiniteGroupModel) -> list:
    """Distinguished subgroup pairs with quotient identifications."""
    if model.name in _TFC_CACHE:
        return _TFC_CACHE[model.name]
    pairs: list[FCPair] = []
    seen: set = set()

    def add(g1, g2, qid):
        key = (g1, g2)
        if key not in seen:
            seen.add(key)
            pairs.append(FCPair(g1, g2, qid))

    trivial = frozenset({model.identity})
    if model.order == 1:
        add(trivial, trivial, Identification(model, {model.identity: model.identity}))
        _TFC_CACHE[model.name] = pairs
        return pairs

    # preimages through the hom collection
    for h in frak_c(model):
        for p1 in tilde_fc_set(h.target):
            g1 = frozenset(g for g in h.source if h.mapping[g] in p1.gamma1)
            g2 = frozenset(g for g in h.source if h.mapping[g] in p1.gamma2)
            qid = Identification(
                p1.qident.target,
                {g: p1.qident.mapping[h.mapping[g]] for g in g2},
            )
            add(g1, g2, qid)

    in_fc = trivial in set(fc_set(model))
    if model.kind == "perm" and model.n >= 3 and not in_fc:
        # seed (S1 inside every lattice member of admissible quotient type)
        lat = x_lattice(model.n)
        for name in lat.members:
            idf = lat.identifications[name]
            if idf is None:
                continue
            add(trivial, lat.members[name].member_set, Identification(idf.target, dict(idf.mapping)))
    if in_fc:
        add(trivial, frozenset(model.elements), Identification(model, {g: g for g in model.elements}))

    _TFC_CACHE[model.name] = pairs
    return pairs


def pair_by_subgroups(model, gamma1: frozenset, gamma2: frozenset) -> FCPair:
    for p in tilde_fc_set(model):
        if p.gamma1 == gamma1 and p.gamma2 == gamma2:
            return p
    raise KeyError("pair not in the distinguished family")


# ---------------------------------------------------------------------------
# subgroup naming helpers (display and list comparisons)


def span_f2(model: FiniteGroupModel, gens) -> frozenset:
    out = {0}
    for g in gens:
        out |= {x ^ g for x in out}
    return frozenset(out)


def f2_subspace_basis(members: frozenset) -> list:
    # reduced echelon basis, pivots at the lowest set bits, ascending
    basis = []
    for m in sorted(members):
        r = m
        for b in basis:
            low = b & -b
            if r & low:
                r ^= b
        if r:
            basis.append(r)
    basis.sort(key=lambda b: b & -b)
    reduced = []
    for i, b in enumerate(basis):
        for other in basis[i + 1 :]:
            if b & (other & -other):
                b ^= other
        reduced.append(b)
    return reduced


def f2_mask_str(mask: int) -> str:
    terms = [f"x{i+1}" for i in range(mask.bit_length()) if (mask >> i) & 1]
    return "+".join(terms) if terms else "0"


def subgroup_name(model: FiniteGroupModel, members: frozenset) -> str:
    if model.kind == "f2":
        basis = f2_subspace_basis(members)
        if not basis:
            return "0"
        return "<" + ",".join(f2_mask_str(b) for b in basis) + ">"
    if model.kind == "perm":
        if model.n >= 3:
            for name, sub in x_lattice(model.n).members.items():
                if sub.member_set == members:
                    return name
        elif len(members) == 1:
            return "S1"
        elif len(members) == model.order:
            return model.name
    return f"subgroup({len(members)})"


def named_subgroup(model: FiniteGroupModel, name: str) -> frozenset:
    if model.kind == "perm":
        if name == "S1":
            return frozenset({model.identity})
        if name == model.name:
            return frozenset(model.elements)
        if model.n >= 3:
            lat = x_lattice(model.n)
            if name in lat.members:
                return lat.members[name].member_set
    if model.kind == "f2" and name.startswith("<"):
        gens = []
        for t in name.strip("<>").split(","):
            mask = 0
            for part in t.split("+"):
                mask |= 1 << (int(part.lstrip("x")) - 1)
            gens.append(mask)
        return span_f2(model, gens)
    if model.kind == "f2" and name == "0":
        return frozenset({0})
    raise KeyError(f"unknown subgroup name {name!r} in {model.name}")


# ---------------------------------------------------------------------------
# seed vectors


def _terms(space, data):
    return MVector.from_terms(space, data)


def _prim_s2():
    sp = mspace(symmetric_group(2))
    return [
        ("L(-1)", _terms(sp, [(1, "g2", "eps"), (1, "1", "1")])),
        ("(1,1)", sp.basis_vector("1", "1")),
    ]


def _prim_s3():
    sp = mspace(symmetric_group(3))
    out = []
    for j in (1, 2):
        th = "th" if j == 1 else "th^2"
        out.append(
            (f"L({th})", _terms(sp, [(1, "g3", th), (1, "g2", "1"), (1, "1", "1")]))
        )
    out.append(("(1,1)", sp.basis_vector("1", "1")))
    return out


def _prim_s4():
    sp = mspace(symmetric_group(4))
    out = []
    for lab in ("i", "-i"):
        out.append(
            (
                f"L({lab})",
                _terms(
                    sp,
                    [
                        (1, "g4", lab),
                        (1, "g4", "-1"),
                        (1, "g3", "1"),
                        (1, "1", "lam^2"),
                        (1, "1", "1"),
                    ],
                ),
            )
        )
    out.append(("(1,1)", sp.basis_vector("1", "1")))
    return out


def _prim_s5():
    sp = mspace(symmetric_group(5))
    zeta = {1: "zeta", 2: "zeta^2", 3: "zeta^3", 4: "zeta^4"}

    def lam(j):
        return _terms(
            sp,
            [
                (1, "g5", zeta[j]),
                (1, "1", "lam^4"),
                (2, "1", "lam^2"),
                (1, "1", "nu"),
                (1, "1", "nu'"),
                (1, "1", "1"),
            ],
        )

    def lam_prime(l):
        # common part pinned by transform-fixedness of all four primed seeds
        return _terms(
            sp,
            [
                (1, "g5", zeta[l]),
                (1, "g5", zeta[(2 * l - 1) % 5 + 1]),
                (1, "g2'", "1"),
                (1, "g2'", "eps'"),
                (1, "g2'", "eps''"),
                (1, "g2'", "eps"),
                (1, "1", "lam^4"),
                (1, "1", "nu"),
                (1, "1", "nu'"),
                (1, "1", "1"),
            ],
        )

    return [
        ("L(zeta)", lam(1)),
        ("L'(zeta,zeta^2)", lam_prime(1)),
        ("L'(zeta^2,zeta^4)", lam_prime(2)),
        ("L'(zeta^3,zeta)", lam_prime(3)),
        ("(1,1)", sp.basis_vector("1", "1")),
    ]


def lambda_zeta(j: int) -> MVector:
    sp = mspace(symmetric_group(5))
    zeta = {1: "zeta", 2: "zeta^2", 3: "zeta^3", 4: "zeta^4"}
    return _terms(
        sp,
        [
            (1, "g5", zeta[j]),
            (1, "1", "lam^4"),
            (2, "1", "lam^2"),
            (1, "1", "nu"),
            (1, "1", "nu'"),
            (1, "1", "1"),
        ],
    )


def _prim_products(model):
    # tensor seeds for the two product quotient types
    s2 = dict(_prim_s2())
    if model.name == "S2xS2":
        return [
            ("L(-1,-1)", external_product(s2["L(-1)"], s2["L(-1)"])),
            ("L(-1,1)", external_product(s2["L(-1)"], s2["(1,1)"])),
            ("(1,1)", external_product(s2["(1,1)"], s2["(1,1)"])),
        ]
    if model.name == "S3xS2":
        s3 = dict(_prim_s3())
        return [
            ("L(th,-1)", external_product(s3["L(th)"], s2["L(-1)"])),
            ("L(th^2,-1)", external_product(s3["L(th^2)"], s2["L(-1)"])),
            ("L(th,1)", external_product(s3["L(th)"], s2["(1,1)"])),
            ("L(th^2,1)", external_product(s3["L(th^2)"], s2["(1,1)"])),
            ("L(1,-1)", external_product(s3["(1,1)"], s2["L(-1)"])),
            ("(1,1)", external_product(s3["(1,1)"], s2["(1,1)"])),
        ]
    raise ValueError(f"no seed list for product {model.name}")


# -- the big symplectic space behind the F2 seeds ---------------------------


def v_pair_position(m: int, v_mask: int, delta: int = 0) -> int:
    """Identify the rank-2m symplectic space (basis vectors chained by the
    form) with the pairing set of the m-dimensional based space: a vector
    splits as (group part, character part) by parity of the basis chain."""
    y = 0
    z = []
    for i in range(1, m + 1):
        if delta == 0:
            y_bit = (v_mask >> (2 * i - 1)) & 1  # coefficient of e_{2i}
            z.append((v_mask >> (2 * i - 2)) & 1)  # coefficient of e_{2i-1}
        else:
            y_bit = (v_mask >> (2 * m - 2 * i)) & 1  # coefficient of e_{2m-(2i-1)}
            z.append((v_mask >> (2 * m - 2 * i + 1)) & 1)  # e_{2m-2i+2}
        y |= y_bit << (i - 1)
    # pairing of the complementary part with the i-th basis vector: the two
    # chain neighbors contribute, so the character mask is the difference of
    # consecutive complementary coordinates
    w = 0
    for i in range(1, m + 1):
        bit = z[i - 1] ^ (z[i] if i < m else 0)
        w |= bit << (i - 1)
    return (y << m) | w


def v_mask_of_pair(m: int, pos: int, delta: int = 0) -> int:
    y, w = pos >> m, pos & ((1 << m) - 1)
    z = [0] * (m + 1)
    for i in range(m, 0, -1):
        z[i - 1] = ((w >> (i - 1)) & 1) ^ z[i]
    mask = 0
    for i in range(1, m + 1):
        if delta == 0:
            mask |= ((y >> (i - 1)) & 1) << (2 * i - 1)
            mask |= z[i - 1] << (2 * i - 2)
        else:
            mask |= ((y >> (i - 1)) & 1) << (2 * m - 2 * i)
            mask |= z[i - 1] << (2 * m - 2 * i + 1)
    return mask


def full_interval_mask(D: int, j: int) -> int:
    # e_j + e_{j+1} + ... + e_{D+1-j} as a bit mask (bit i-1 is e_i)
    return ((1 << (D + 1 - j)) - 1) ^ ((1 << (j - 1)) - 1)


def fk_vector(m: int, k: int, delta: int = 0) -> MVector:
    """Indicator vector of the k-th nested-interval subspace, read through
    the pairing-set identification."""
    space = mspace(based_f2_space(m))
    D = 2 * m
    gens = [full_interval_mask(D, j) for j in range(1, k + 1)]
    points = span_f2(based_f2_space(D), gens) if gens else frozenset({0})
    return MVector(space, {v_pair_position(m, v, delta): ONE for v in points})


def prim_set(quotient: FiniteGroupModel, delta: int = 0) -> list:
    """The seed vectors over a standard quotient model."""
    if quotient.order == 1:
        return [("(1,1)", mspace(quotient).basis_at(0))]
    if quotient.kind == "perm":
        return {2: _prim_s2, 3: _prim_s3, 4: _prim_s4, 5: _prim_s5}[quotient.n]()
    if quotient.kind == "f2":
        return [(f"f{k}", fk_vector(quotient.n, k, delta)) for k in range(quotient.n + 1)]
    if quotient.kind == "product":
        return _prim_products(quotient)
    raise ValueError(f"no seed list for quotient {quotient.name}")


# ---------------------------------------------------------------------------
# triples and the basis


def y_set(model: FiniteGroupModel, delta: int = 0) -> list:
    out = []
    for pair in tilde_fc_set(model):
        for name, vec in prim_set(pair.quotient, delta):
            out.append(YTriple(pair, name, vec))
    return out


def transfer_row(space: MSpace, triple: YTriple) -> MVector:
    return s_map(space, triple.pair.gamma2, triple.pair.qident, triple.xi)


def basis_beta(model: FiniteGroupModel, delta: int = 0) -> list:
    """The distinguished basis rows, as (YTriple, vector) in a fixed order.

    Products are assembled from their factors by the external product of
    per-factor rows (triples are paired componentwise in the result order).
    """
    if model.kind == "product":
        acc = [((), None)]
        for part in (basis_beta(f, delta) for f in model.factors):
            acc = [
                (triples + (t,), v if prev is None else external_product(prev, v))
                for triples, prev in acc
                for (t, v) in part
            ]
        return acc
    space = mspace(model)
    return [(t, transfer_row(space, t)) for t in y_set(model, delta)]


# ---------------------------------------------------------------------------
# shipped assignment tables


@dataclass
class GoldenRow:
    group: str
    pair: tuple
    gamma1: str
    gamma2: str
    xi: str
    rhs: MVector
    rhs_given: bool
    rhs_adjusted: bool


def golden_tables(n: int) -> list:
    """The shipped basis assignment for the degree-n symmetric model: one row
    per member of M, with the expected transfer result."""
    model = symmetric_group(n)
    space = mspace(model)
    text = resources.files("fourierbasis.data").joinpath("golden_tables.json").read_text()
    rows = []
    for raw in json.loads(text):
        if raw["group"] != f"S{n}":
            continue
        rhs = MVector.from_terms(space, [(c, cl, ch) for c, cl, ch in raw["rhs"]])
        rows.append(
            GoldenRow(
                raw["group"],
                tuple(raw["pair"]),
                raw["gamma1"],
                raw["gamma2"],
                raw["xi"],
                rhs,
                raw["rhs_given"],
                raw.get("rhs_adjusted", False),
            )
        )
    if not rows:
        raise ValueError(f"no shipped table for S{n}")
    return rows


def golden_row_triple(model: FiniteGroupModel, row: GoldenRow) -> YTriple:
    g1 = named_subgroup(model, row.gamma1)
    g2 = named_subgroup(model, row.gamma2)
    pair = pair_by_subgroups(model, g1, g2)
    prims = dict(prim_set(pair.quotient))
    return YTriple(pair, row.xi, prims[row.xi])


def variant_rows_s5() -> dict:
    """The alternative assignment for the four nontrivial seeds over the
    largest symmetric model: transfer the plain seed through (S1 inside G)."""
    model = symmetric_group(5)
    space = mspace(model)
    pair = pair_by_subgroups(model, frozenset({model.identity}), frozenset(model.elements))
    out = {}
    zeta = {1: "zeta", 2: "zeta^2", 3: "zeta^3", 4: "zeta^4"}
    for j in (1, 2, 3, 4):
        triple = YTriple(pair, f"L({zeta[j]})", lambda_zeta(j))
        out[("g5", zeta[j])] = (triple, transfer_row(space, triple))
    return out
