"""Finite group models for the fixed family.

Three element representations, one lightweight model class:

* symmetric groups S1..S5: elements are 0-based image tuples,
* based F2 vector spaces V_n: elements are bit masks over the ordered basis,
* finite products: elements are tuples over the factor models.

The module also builds conjugacy data (canonical class representatives,
transports to the representative, centralizers), character tables with the
label conventions the rest of the package relies on, the distinguished
subgroup lattices of S3, S4, S5, and quotient models with a structural
identification against a standard model.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import Cyclo, MINUS_ONE, ONE

V_DIM_CAP = 12


# ---------------------------------------------------------------------------
# element helpers


def perm_mul(p: tuple, q: tuple) -> tuple:
    # (p*q)(i) = p(q(i))
    return tuple(p[j] for j in q)


def perm_inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_cycles(p: tuple) -> list[tuple]:
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


def perm_order(p: tuple) -> int:
    from math import lcm

    return lcm(1, *(len(c) for c in perm_cycles(p)))


def perm_str(p: tuple) -> str:
    cycles = perm_cycles(p)
    if not cycles:
        return "1"
    return "".join("(" + "".join(str(i + 1) for i in c) + ")" for c in cycles)


def cycle_type(p: tuple) -> tuple:
    # nontrivial cycle lengths, descending
    return tuple(sorted((len(c) for c in perm_cycles(p)), reverse=True))


_SN_CLASS_LABEL = {
    (): "1",
    (2,): "g2",
    (2, 2): "g2'",
    (3,): "g3",
    (3, 2): "g6",
    (4,): "g4",
    (5,): "g5",
}


def _sn_class_rep(ctype: tuple, n: int) -> tuple:
    p = list(range(n))
    pos = 0
    for length in ctype:
        for k in range(length):
            p[pos + k] = pos + (k + 1) % length
        pos += length
    return tuple(p)


# ---------------------------------------------------------------------------
# group models


@dataclass(frozen=True)
class ClassInfo:
    index: int
    label: str
    rep: object
    members: frozenset
    size: int


class ConjugacyData:
    """Classes in a fixed deterministic order (by size, then by the sort key
    of the canonical representative), plus for every element a transport m
    with m * a * m^-1 = rep(class of a)."""

    def __init__(self, classes: list[ClassInfo], class_of: dict, transport: dict):
        self.classes = tuple(classes)
        self.class_of = class_of
        self.transport = transport

    def rep_of(self, a):
        return self.classes[self.class_of[a]].rep


class FiniteGroupModel:
    """A small finite group with a concrete element representation.

    kind is one of "perm", "f2", "cyclic", "product", "coset"; several
    operations dispatch on it.  Instances are cached per descriptor, so
    identity comparison of models is meaningful.
    """

    def __init__(self, kind: str, name: str, elements: tuple, **extra):
        self.kind = kind
        self.name = name
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.order = len(elements)
        self.n = extra.get("n")  # perm degree or f2 dimension
        self.factors = extra.get("factors")
        self._coset_mul = extra.get("coset_mul")
        self._coset_inv = extra.get("coset_inv")
        self._conjugacy = None
        self._tables = {}

    # -- group law ---------------------------------------------------------

    @property
    def identity(self):
        if self.kind == "perm":
            return tuple(range(self.n))
        if self.kind in ("f2", "cyclic"):
            return 0
        if self.kind == "product":
            return tuple(f.identity for f in self.factors)
        return self._identity_coset

    def mul(self, a, b):
        if self.kind == "perm":
            return perm_mul(a, b)
        if self.kind == "f2":
            return a ^ b
        if self.kind == "cyclic":
            return (a + b) % self.order
        if self.kind == "product":
            return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))
        return self._coset_mul[(a, b)]

    def inv(self, a):
        if self.kind == "perm":
            return perm_inv(a)
        if self.kind == "f2":
            return a
        if self.kind == "cyclic":
            return (-a) % self.order
        if self.kind == "product":
            return tuple(f.inv(x) for f, x in zip(self.factors, a))
        return self._coset_inv[a]

    def conj(self, g, a):
        """g * a * g^-1."""
        return self.mul(self.mul(g, a), self.inv(g))

    def commute(self, a, b):
        return self.mul(a, b) == self.mul(b, a)

    def element_order(self, a):
        if self.kind == "perm":
            return perm_order(a)
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def element_key(self, a):
        # deterministic total order on elements
        return self.index[a]

    def element_str(self, a) -> str:
        if self.kind == "perm":
            return perm_str(a)
        if self.kind == "f2":
            return "".join(str((a >> i) & 1) for i in range(self.n)) or "0"
        if self.kind == "cyclic":
            return f"c^{a}" if a else "1"
        if self.kind == "product":
            return "|".join(f.element_str(x) for f, x in zip(self.factors, a))
        return f"coset{self.index[a]}"

    def is_abelian(self):
        if self.kind in ("f2", "cyclic"):
            return True
        if self.kind == "product":
            return all(f.is_abelian() for f in self.factors)
        return all(
            self.commute(a, b) for i, a in enumerate(self.elements) for b in self.elements[i + 1 :]
        )

    # -- conjugacy -----------------------------------------------------------

    def conjugacy(self) -> ConjugacyData:
        if self._conjugacy is None:
            self._conjugacy = self._build_conjugacy()
        return self._conjugacy

    def _build_conjugacy(self) -> ConjugacyData:
        if self.kind in ("f2", "cyclic"):
            classes = [
                ClassInfo(i, self.element_str(g), g, frozenset([g]), 1)
                for i, g in enumerate(self.elements)
            ]
            ident = self.identity
            return ConjugacyData(
                classes,
                {g: i for i, g in enumerate(self.elements)},
                {g: ident for g in self.elements},
            )
        if self.kind == "product":
            return self._product_conjugacy()
        return self._orbit_conjugacy()

    def _orbit_conjugacy(self) -> ConjugacyData:
        inv = {g: self.inv(g) for g in self.elements}
        unassigned = set(self.elements)
        raw = []
        while unassigned:
            seed = min(unassigned, key=self.element_key)
            members = {}
            for g in self.elements:
                b = self.mul(self.mul(g, seed), inv[g])
                if b not in members:
                    members[b] = g  # g * seed * g^-1 = b
            rep = self._canonical_rep(members)
            # transports target the canonical rep: m * a * m^-1 = rep
            g_rep = members[rep]
            transports = {}
            for b, g in members.items():
                # (g_rep * g^-1) * b * (g * g_rep^-1) = rep
                transports[b] = self.mul(g_rep, inv[g])
            raw.append((rep, frozenset(members), transports))
            unassigned -= set(members)
        raw.sort(key=lambda t: (len(t[1]), self.element_key(t[0])))
        classes, class_of, transport = [], {}, {}
        for i, (rep, members, transports) in enumerate(raw):
            label = self._class_label(rep, i)
            classes.append(ClassInfo(i, label, rep, members, len(members)))
            for b in members:
                class_of[b] = i
                transport[b] = transports[b]
        return ConjugacyData(classes, class_of, transport)

    def _canonical_rep(self, members):
        if self.kind == "perm" and self.n is not None:
            ct = cycle_type(next(iter(members)))
            cand = _sn_class_rep(ct, self.n)
            if cand in members:
                return cand
        return min(members, key=self.element_key)

    def _class_label(self, rep, i) -> str:
        if self.kind == "perm":
            return _SN_CLASS_LABEL.get(cycle_type(rep), f"c{i}")
        return self.element_str(rep)

    def _product_conjugacy(self) -> ConjugacyData:
        factor_data = [f.conjugacy() for f in self.factors]
        combos = [()]
        for data in factor_data:
            combos = [c + (ci,) for c in combos for ci in data.classes]
        raw = []
        for combo in combos:
            rep = tuple(ci.rep for ci in combo)
            members = {()}
            for ci in combo:
                members = {m + (x,) for m in members for x in ci.members}
            size = 1
            for ci in combo:
                size *= ci.size
            label = "|".join(ci.label for ci in combo)
            raw.append((rep, frozenset(members), size, label))
        raw.sort(key=lambda t: (t[2], self.element_key(t[0])))
        classes, class_of, transport = [], {}, {}
        for i, (rep, members, size, label) in enumerate(raw):
            classes.append(ClassInfo(i, label, rep, members, size))
            for b in members:
                class_of[b] = i
                transport[b] = tuple(
                    f.conjugacy().transport[x] for f, x in zip(self.factors, b)
                )
        return ConjugacyData(classes, class_of, transport)

    # -- centralizers and their character tables -----------------------------

    def centralizer(self, x) -> tuple:
        if self.is_abelian():
            return self.elements
        if self.kind == "product":
            parts = [f.centralizer(xi) for f, xi in zip(self.factors, x)]
            out = [()]
            for p in parts:
                out = [o + (g,) for o in out for g in p]
            return tuple(g for g in self.elements if g in set(out))
        return tuple(g for g in self.elements if self.conj(g, x) == x)

    def centralizer_character_table(self, x) -> "CharacterTable":
        key = ("cent", x)
        if key not in self._tables:
            self._tables[key] = _centralizer_table(self, x)
        return self._tables[key]

    def character_table(self) -> "CharacterTable":
        return self.centralizer_character_table(self.identity)


_MODEL_CACHE: dict[str, FiniteGroupModel] = {}


def _all_perms(n: int) -> tuple:
    import itertools

    return tuple(sorted(itertools.permutations(range(n))))


def symmetric_group(n: int) -> FiniteGroupModel:
    if not 1 <= n <= 5:
        raise ValueError(f"S{n} outside the supported family (n must be 1..5)")
    name = f"S{n}"
    if name not in _MODEL_CACHE:
        _MODEL_CACHE[name] = FiniteGroupModel("perm", name, _all_perms(n), n=n)
    return _MODEL_CACHE[name]


def based_f2_space(n: int) -> FiniteGroupModel:
    if not 1 <= n <= V_DIM_CAP:
        raise ValueError(f"V{n} outside the supported range (n must be 1..{V_DIM_CAP})")
    name = f"V{n}"
    if name not in _MODEL_CACHE:
        _MODEL_CACHE[name] = FiniteGroupModel("f2", name, tuple(range(2 ** n)), n=n)
    return _MODEL_CACHE[name]


def cyclic_group(m: int) -> FiniteGroupModel:
    name = f"C{m}"
    if name not in _MODEL_CACHE:
        _MODEL_CACHE[name] = FiniteGroupModel("cyclic", name, tuple(range(m)))
    return _MODEL_CACHE[name]


def product_group(factors: list[FiniteGroupModel]) -> FiniteGroupModel:
    if len(factors) == 1:
        return factors[0]
    name = "x".join(f.name for f in factors)
    if name not in _MODEL_CACHE:
        elements = [()]
        for f in factors:
            elements = [e + (g,) for e in elements for g in f.elements]
        _MODEL_CACHE[name] = FiniteGroupModel(
            "product", name, tuple(elements), factors=tuple(factors)
        )
    return _MODEL_CACHE[name]


def build_standard(descriptor: str) -> FiniteGroupModel:
    """Build a model from the group grammar: atoms S1..S5 and V<n>, joined
    by "x" for finite products."""
    factors = []
    for token in descriptor.split("x"):
        token = token.strip()
        if token.startswith("S") and token[1:].isdigit():
            factors.append(symmetric_group(int(token[1:])))
        elif token.startswith("V") and token[1:].isdigit():
            factors.append(based_f2_space(int(token[1:])))
        else:
            raise ValueError(f"malformed group descriptor token {token!r}")
    if not factors:
        raise ValueError("empty group descriptor")
    return product_group(factors)


# ---------------------------------------------------------------------------
# character tables


class CharacterTable:
    """Irreducible characters of a group (or centralizer subgroup), with the
    package's fixed label conventions.  value(i, g) is exact."""

    def __init__(self, domain: tuple, labels: tuple):
        self.domain = domain
        self.labels = labels
        self.size = len(domain)

    def value(self, i: int, g) -> Cyclo:
        raise NotImplementedError

    def dim(self, i: int) -> Cyclo:
        return self.value(i, self.domain_identity)

    def verify_orthogonality(self):
        for i in range(len(self.labels)):
            for j in range(len(self.labels)):
                s = sum(
                    (self.value(i, g) * self.value(j, g).conjugate() for g in self.domain),
                    Cyclo(),
                )
                want = Cyclo.from_rational(self.size if i == j else 0)
                if s != want:
                    raise ArithmeticError(
                        f"orthogonality fails at rows {self.labels[i]}, {self.labels[j]}"
                    )


class DenseCharacterTable(CharacterTable):
    def __init__(self, domain, labels, rows, identity):
        super().__init__(tuple(domain), tuple(labels))
        self._rows = rows  # list of dict element -> Cyclo
        self.domain_identity = identity
        self.verify_orthogonality()

    def value(self, i, g):
        return self._rows[i][g]


class F2CharacterTable(CharacterTable):
    """Characters of V_n: chi_z(x) = (-1)^(z.x) over the ordered basis."""

    def __init__(self, n: int):
        domain = tuple(range(2 ** n))
        labels = tuple("n" + "".join(str((z >> i) & 1) for i in range(n)) for z in domain)
        super().__init__(domain, labels)
        self.n = n
        self.domain_identity = 0

    def value(self, i, g):
        z = self.domain[i]
        return MINUS_ONE if bin(z & g).count("1") & 1 else ONE

    def verify_orthogonality(self):
        n = self.n
        for z1 in self.domain:
            for z2 in self.domain:
                s = sum(1 if bin((z1 ^ z2) & x).count("1") & 1 == 0 else -1 for x in self.domain)
                if s != (2 ** n if z1 == z2 else 0):
                    raise ArithmeticError("orthogonality fails for the based F2 table")


class ProductCharacterTable(CharacterTable):
    def __init__(self, tables: list[CharacterTable]):
        domain = [()]
        for t in tables:
            domain = [d + (g,) for d in domain for g in t.domain]
        labels = [()]
        for t in tables:
            labels = [l + (lab,) for l in labels for lab in t.labels]
        super().__init__(tuple(domain), tuple("|".join(l) for l in labels))
        self._tables = tables
        self._widths = [len(t.labels) for t in tables]
        self.domain_identity = tuple(t.domain_identity for t in tables)

    def _split(self, i):
        out = []
        for w in reversed(self._widths):
            out.append(i % w)
            i //= w
        return list(reversed(out))

    def value(self, i, g):
        out = ONE
        for t, idx, x in zip(self._tables, self._split(i), g):
            out = out * t.value(idx, x)
        return out

    def verify_orthogonality(self):
        for t in self._tables:
            t.verify_orthogonality()


def _dense(domain, labels, value_fn, identity):
    rows = [{g: value_fn(i, g) for g in domain} for i in range(len(labels))]
    return DenseCharacterTable(domain, labels, rows, identity)


_CYCLIC_LABELS = {
    1: ["1"],
    2: ["1", "eps"],
    3: ["1", "th", "th^2"],
    4: ["1", "i", "-1", "-i"],
    5: ["1", "zeta", "zeta^2", "zeta^3", "zeta^4"],
    6: ["1", "-th^2", "th", "-1", "th^2", "-th"],
}


def _cyclic_table(model: FiniteGroupModel, gen, m: int) -> CharacterTable:
    # chi_k(gen^t) = zeta_m^(k t); labels name chi_k by its value at gen
    powers = {}
    g, t = model.identity, 0
    while True:
        powers[g] = t
        t += 1
        g = model.mul(g, gen)
        if g == model.identity:
            break
    if len(powers) != m:
        raise ValueError("generator order mismatch")
    domain = tuple(sorted(powers, key=model.element_key))
    return _dense(
        domain,
        _CYCLIC_LABELS[m],
        lambda i, x: Cyclo.root_of_unity(m, i * powers[x]),
        model.identity,
    )


def _klein_table(model, x, u) -> CharacterTable:
    # labels keyed to the ordered generators (x, u):
    # eps' = sign on x alone, eps'' = sign on u alone, eps = sign on both
    xu = model.mul(x, u)
    coords = {model.identity: (0, 0), x: (1, 0), u: (0, 1), xu: (1, 1)}
    signs = {"1": (0, 0), "eps'": (1, 0), "eps''": (0, 1), "eps": (1, 1)}
    labels = ["1", "eps'", "eps''", "eps"]

    def val(i, g):
        a, b = signs[labels[i]]
        s, t = coords[g]
        return MINUS_ONE if (a * s + b * t) & 1 else ONE

    return _dense(tuple(sorted(coords, key=model.element_key)), labels, val, model.identity)


def _d8_table(model, members, z) -> CharacterTable:
    # kernels: eps <-> the cyclic subgroup of order 4, eps' <-> the Klein
    # subgroup without transpositions, eps'' <-> the Klein subgroup generated
    # by the transpositions of the ambient symmetric group
    members = tuple(sorted(members, key=model.element_key))
    c4 = frozenset(g for g in members if model.element_order(g) == 4) | {model.identity, z}
    transpositions = frozenset(g for g in members if cycle_type(g) == (2,))
    v1 = transpositions | {model.identity, z}
    v2 = frozenset(g for g in members if g not in c4 and g not in v1) | {model.identity, z}
    if not (len(c4) == len(v1) == len(v2) == 4):
        raise ValueError("not a dihedral centralizer of order 8")
    kernels = {"1": frozenset(members), "eps": c4, "eps'": v2, "eps''": v1}
    labels = ["1", "eps", "eps'", "eps''", "r"]

    def val(i, g):
        lab = labels[i]
        if lab == "r":
            if g == model.identity:
                return Cyclo.from_rational(2)
            if g == z:
                return Cyclo.from_rational(-2)
            return Cyclo()
        return ONE if g in kernels[lab] else MINUS_ONE

    return _dense(members, labels, val, model.identity)


def _s3_values(order: int, label: str) -> Cyclo:
    table = {
        "1": {1: 1, 2: 1, 3: 1},
        "eps": {1: 1, 2: -1, 3: 1},
        "r": {1: 2, 2: 0, 3: -1},
    }
    return Cyclo.from_rational(table[label][order])


def _s3_table(model, members) -> CharacterTable:
    members = tuple(sorted(members, key=model.element_key))
    labels = ["1", "eps", "r"]
    return _dense(
        members,
        labels,
        lambda i, g: _s3_values(model.element_order(g), labels[i]),
        model.identity,
    )


_S4_VALUES = {
    "1": {(): 1, (2,): 1, (2, 2): 1, (3,): 1, (4,): 1},
    "lam^1": {(): 3, (2,): 1, (2, 2): -1, (3,): 0, (4,): -1},
    "lam^2": {(): 3, (2,): -1, (2, 2): -1, (3,): 0, (4,): 1},
    "lam^3": {(): 1, (2,): -1, (2, 2): 1, (3,): 1, (4,): -1},
    "sig": {(): 2, (2,): 0, (2, 2): 2, (3,): -1, (4,): 0},
}

_S5_VALUES = {
    "1": {(): 1, (2,): 1, (2, 2): 1, (3,): 1, (3, 2): 1, (4,): 1, (5,): 1},
    "lam^1": {(): 4, (2,): 2, (2, 2): 0, (3,): 1, (3, 2): -1, (4,): 0, (5,): -1},
    "lam^2": {(): 6, (2,): 0, (2, 2): -2, (3,): 0, (3, 2): 0, (4,): 0, (5,): 1},
    "lam^3": {(): 4, (2,): -2, (2, 2): 0, (3,): 1, (3, 2): 1, (4,): 0, (5,): -1},
    "lam^4": {(): 1, (2,): -1, (2, 2): 1, (3,): 1, (3, 2): -1, (4,): -1, (5,): 1},
    "nu": {(): 5, (2,): 1, (2, 2): 1, (3,): -1, (3, 2): 1, (4,): -1, (5,): 0},
    "nu'": {(): 5, (2,): -1, (2, 2): 1, (3,): -1, (3, 2): -1, (4,): 1, (5,): 0},
}

_SN_LABELS = {
    1: ["1"],
    2: ["1", "eps"],
    3: ["1", "eps", "r"],
    4: ["1", "lam^1", "lam^2", "lam^3", "sig"],
    5: ["1", "lam^1", "lam^2", "lam^3", "lam^4", "nu", "nu'"],
}


def _sn_table(model: FiniteGroupModel) -> CharacterTable:
    n = model.n
    labels = _SN_LABELS[n]
    if n == 1:
        return _dense(model.elements, labels, lambda i, g: ONE, model.identity)
    if n == 2:
        return _cyclic_table(model, (1, 0), 2)
    if n == 3:
        return _s3_table(model, model.elements)
    values = _S4_VALUES if n == 4 else _S5_VALUES
    return _dense(
        model.elements,
        labels,
        lambda i, g: Cyclo.from_rational(values[labels[i]][cycle_type(g)]),
        model.identity,
    )


def _c2xs3_table(model, x, members) -> CharacterTable:
    # Z(transposition) in S5: <x> times the S3 on the other three letters.
    # Labels 1, r, eps restrict trivially to x; -1, -r, -eps carry sign there.
    moved = [i for i in range(model.n) if x[i] != i]
    k_part = {g for g in members if all(g[i] == i for i in moved)}
    labels = ["1", "r", "eps", "-1", "-r", "-eps"]

    def val(i, g):
        a = 0 if g[moved[0]] == moved[0] else 1
        k = g if a == 0 else model.mul(g, x)
        lab = labels[i]
        sign = -1 if lab.startswith("-") else 1
        base = lab.lstrip("-")
        v = _s3_values(model.element_order(k) if k in k_part else 1, base)
        return v * Cyclo.from_rational(sign ** a)

    domain = tuple(sorted(members, key=model.element_key))
    return _dense(domain, labels, val, model.identity)


def _c3xc2_table(model, x, members) -> CharacterTable:
    # Z(3-cycle) in S5: <x> times <u> for the unique involution u.
    u = next(g for g in sorted(members, key=model.element_key) if model.element_order(g) == 2)
    x2 = model.mul(x, x)
    labels = ["1", "th", "th^2", "eps", "eps*th", "eps*th^2"]

    def coords(g):
        for b, h in ((0, g), (1, model.mul(g, u))):
            for a, p in ((0, model.identity), (1, x), (2, x2)):
                if h == p:
                    return a, b
        raise ValueError("element outside <x> x <u>")

    def val(i, g):
        a, b = coords(g)
        j, s = i % 3, i // 3
        return Cyclo.root_of_unity(3, j * a) * Cyclo.from_rational((-1) ** (s * b))

    domain = tuple(sorted(members, key=model.element_key))
    return _dense(domain, labels, val, model.identity)


def _centralizer_table(model: FiniteGroupModel, x) -> CharacterTable:
    if model.kind == "f2":
        return F2CharacterTable(model.n)
    if model.kind == "cyclic":
        return _cyclic_table(model, 1 if model.order > 1 else 0, model.order)
    if model.kind == "product":
        return ProductCharacterTable(
            [f.centralizer_character_table(xi) for f, xi in zip(model.factors, x)]
        )
    if model.kind != "perm":
        exponent = max(model.element_order(g) for g in model.elements)
        raise ValueError(f"unrecognized group: order {model.order}, exponent {exponent}")
    if x == model.identity:
        return _sn_table(model)
    members = model.centralizer(x)
    ox, m = model.element_order(x), len(members)
    if ox == 2 and m == 2:
        return _cyclic_table(model, x, 2)
    if ox == 2 and m == 4:
        u = next(
            g
            for g in sorted(members, key=model.element_key)
            if cycle_type(g) == (2,) and g != x
        )
        return _klein_table(model, x, u)
    if ox == 2 and m == 8:
        return _d8_table(model, members, x)
    if ox == 2 and m == 12:
        return _c2xs3_table(model, x, members)
    if ox == 3 and m == 3:
        return _cyclic_table(model, x, 3)
    if ox == 3 and m == 6:
        return _c3xc2_table(model, x, members)
    if ox in (4, 5, 6) and m == ox:
        return _cyclic_table(model, x, ox)
    raise ValueError(
        f"unrecognized centralizer: order {m}, exponent "
        f"{max(model.element_order(g) for g in members)}"
    )


# ---------------------------------------------------------------------------
# subgroups, lattices, quotients


@dataclass(frozen=True)
class SubgroupRef:
    parent: FiniteGroupModel
    members: tuple
    name: str = ""

    @property
    def member_set(self):
        return frozenset(self.members)

    def __contains__(self, g):
        return g in self.member_set


def subgroup_generated(parent: FiniteGroupModel, gens, name="") -> SubgroupRef:
    seen = {parent.identity}
    frontier = [parent.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = parent.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return SubgroupRef(parent, tuple(sorted(seen, key=parent.element_key)), name)


def centralizer_subgroup(parent: FiniteGroupModel, x, name="") -> SubgroupRef:
    return SubgroupRef(parent, parent.centralizer(x), name)


@dataclass
class Identification:
    """A homomorphism from a subgroup onto a standard model (an isomorphism
    when the kernel is trivial), stored as an element map."""

    target: FiniteGroupModel
    mapping: dict


@dataclass
class XLattice:
    group: FiniteGroupModel
    members: dict  # name -> SubgroupRef
    identifications: dict  # name -> Identification | None
    meta: dict = field(default_factory=dict)


def _relabel_perm_hom(sub_letters: list[int], target: FiniteGroupModel):
    # permutations supported on sub_letters -> target on 0..len-1
    pos = {l: i for i, l in enumerate(sub_letters)}

    def f(g):
        return tuple(pos[g[l]] for l in sub_letters)

    return f


def x_lattice(n: int) -> XLattice:
    """The distinguished subgroup collection of S_n (n = 3, 4, 5), built from
    sigma = (12) and sigma' = (12)(34) exactly as the construction demands,
    together with identifications of each member with its standard model."""
    if n not in (3, 4, 5):
        raise ValueError(f"no distinguished lattice for S{n}")
    G = symmetric_group(n)
    sigma = _sn_class_rep((2,), n)
    members: dict[str, SubgroupRef] = {"S1": SubgroupRef(G, (G.identity,), "S1")}
    members[f"S{n}"] = SubgroupRef(G, G.elements, f"S{n}")
    members["S2"] = subgroup_generated(G, [sigma], "S2")
    idents: dict[str, Identification] = {}
    meta = {"sigma": perm_str(sigma)}

    if n == 3:
        order = ["S1", "S2", "S3"]
        meta["omega'_2"] = "identity embedding"
    else:
        z_sigma = centralizer_subgroup(G, sigma)
        if n == 4:
            # the centralizer of sigma is already the Klein member
            members["S2S2"] = SubgroupRef(G, z_sigma.members, "S2S2")
            z = next(
                g
                for g in members["S2S2"].members
                if g != G.identity and len(G.centralizer(g)) == 8
            )
            members["D8"] = centralizer_subgroup(G, z, "D8")
            members["S3"] = subgroup_generated(
                G, [_sn_class_rep((2,), 3) + (3,), _sn_class_rep((3,), 3) + (3,)], "S3"
            )
            meta["omega'_3"] = "identity embedding on letters 1-3"
            order = ["S1", "S2", "S2S2", "S3", "D8", "S4"]
        else:
            sigma2 = _sn_class_rep((2, 2), n)
            members["S3S2"] = SubgroupRef(G, centralizer_subgroup(G, sigma).members, "S3S2")
            members["D8"] = centralizer_subgroup(G, sigma2, "D8")
            members["S2S2"] = SubgroupRef(
                G,
                tuple(
                    sorted(
                        set(members["S3S2"].members) & set(members["D8"].members),
                        key=G.element_key,
                    )
                ),
                "S2S2",
            )
            u_set = [
                g
                for g in members["S3S2"].members
                if cycle_type(g) == (2,) and g != sigma
            ]
            members["S3"] = subgroup_generated(G, u_set, "S3")
            s4 = [g for g in G.elements if g[4] == 4]
            members["S4"] = SubgroupRef(G, tuple(sorted(s4, key=G.element_key)), "S4")
            meta["sigma'"] = perm_str(sigma2)
            meta["omega'_3"] = "relabeling 3,4,5 -> 1,2,3"
            meta["omega'_4"] = "identity embedding on letters 1-4"
            order = ["S1", "S2", "S2S2", "S3", "D8", "S3S2", "S4", "S5"]

    # identifications with standard models
    for name in order:
        sub = members[name]
        if name == "S1":
            idents[name] = Identification(symmetric_group(1), {G.identity: (0,)})
        elif name == "S2":
            t = symmetric_group(2)
            idents[name] = Identification(
                t, {g: (t.identity if g == G.identity else (1, 0)) for g in sub.members}
            )
        elif name == "S2S2":
            t = product_group([symmetric_group(2), symmetric_group(2)])
            e2, s2 = symmetric_group(2).identity, (1, 0)
            # first factor carries the sigma-component, second the rest
            mapping = {}
            for g in sub.members:
                a = s2 if g[0] != 0 else e2
                rest = G.mul(g, sigma) if g[0] != 0 else g
                b = s2 if rest != G.identity else e2
                mapping[g] = (a, b)
            idents[name] = Identification(t, mapping)
        elif name == "S3" and n == 5:
            t = symmetric_group(3)
            f = _relabel_perm_hom([2, 3, 4], t)
            idents[name] = Identification(t, {g: f(g) for g in sub.members})
        elif name == "S3":
            t = symmetric_group(3)
            f = _relabel_perm_hom([0, 1, 2], t)
            idents[name] = Identification(t, {g: f(g) for g in sub.members})
        elif name == "S3S2":
            t = product_group([symmetric_group(3), symmetric_group(2)])
            f = _relabel_perm_hom([2, 3, 4], symmetric_group(3))
            e2, s2 = symmetric_group(2).identity, (1, 0)
            mapping = {}
            for g in sub.members:
                a = s2 if g[0] != 0 else e2
                u = G.mul(g, sigma) if g[0] != 0 else g
                mapping[g] = (f(u), a)
            idents[name] = Identification(t, mapping)
        elif name == "S4" and n == 5:
            t = symmetric_group(4)
            idents[name] = Identification(t, {g: g[:4] for g in sub.members})
        elif name == f"S{n}":
            idents[name] = Identification(G, {g: g for g in sub.members})
        else:  # D8 has no standard model in the admissible class
            idents[name] = None

    return XLattice(G, {k: members[k] for k in order}, idents, meta)


@dataclass
class QuotientResult:
    model: FiniteGroupModel
    projection: dict
    standard: Identification | None


def quotient(parent: FiniteGroupModel, sub: SubgroupRef, normal: SubgroupRef) -> QuotientResult:
    """The quotient of sub by normal as a coset model, with the projection
    map and (when the quotient lies in the admissible class) a structural
    identification with a standard model."""
    nset = normal.member_set
    sset = sub.member_set
    if not nset <= sset:
        raise ValueError("normal subgroup not contained in the subgroup")
    for h in sub.members:
        hin = parent.inv(h)
        for k in normal.members:
            if parent.mul(parent.mul(h, k), hin) not in nset:
                raise ValueError("subgroup is not normal")
    projection = {}
    cosets = []
    for h in sub.members:
        if h in projection:
            continue
        coset = frozenset(parent.mul(h, k) for k in normal.members)
        cosets.append(coset)
        for g in coset:
            projection[g] = coset
    reps = {c: min(c, key=parent.element_key) for c in cosets}
    cosets.sort(key=lambda c: parent.element_key(reps[c]))
    mul_table = {}
    inv_table = {}
    for c1 in cosets:
        inv_table[c1] = projection[parent.inv(reps[c1])]
        for c2 in cosets:
            mul_table[(c1, c2)] = projection[parent.mul(reps[c1], reps[c2])]
    model = FiniteGroupModel(
        "coset",
        f"{sub.name or 'H'}/{normal.name or 'N'}",
        tuple(cosets),
        coset_mul=mul_table,
        coset_inv=inv_table,
    )
    model._identity_coset = projection[parent.identity]
    return QuotientResult(model, projection, _recognize_standard(model))


def _recognize_standard(model: FiniteGroupModel) -> Identification | None:
    q = model.order
    ident = model.identity
    if q == 1:
        return Identification(symmetric_group(1), {ident: (0,)})
    orders = {g: model.element_order(g) for g in model.elements}
    exponent = max(orders.values())
    if exponent == 2 and model.is_abelian():
        if q == 2:
            t = symmetric_group(2)
            return Identification(
                t, {g: (t.identity if g == ident else (1, 0)) for g in model.elements}
            )
        # based F2 space on a greedy basis
        k = q.bit_length() - 1
        t = based_f2_space(k)
        mapping = {ident: 0}
        basis = []
        for g in model.elements:
            if g in mapping:
                continue
            for known, mask in list(mapping.items()):
                mapping[model.mul(known, g)] = mask | (1 << len(basis))
            basis.append(g)
        if len(basis) != k:
            return None
        return Identification(t, mapping)
    if exponent == q:
        # cyclic; prefer the permutation model at order 2
        gen = min((g for g in model.elements if orders[g] == q), key=model.element_key)
        t = cyclic_group(q)
        mapping, g, i = {}, ident, 0
        while i < q:
            mapping[g] = i
            g = model.mul(g, gen)
            i += 1
        return Identification(t, mapping)
    if q == 6:
        # nonabelian of order 6: map c^a u^b onto (123)^a (12)^b
        t = symmetric_group(3)
        c = min((g for g in model.elements if orders[g] == 3), key=model.element_key)
        u = min((g for g in model.elements if orders[g] == 2), key=model.element_key)
        mapping = {}
        src_a, tgt_a = ident, t.identity
        for _ in range(3):
            mapping[src_a] = tgt_a
            mapping[model.mul(src_a, u)] = perm_mul(tgt_a, (1, 0, 2))
            src_a, tgt_a = model.mul(src_a, c), perm_mul(tgt_a, (1, 2, 0))
        if len(mapping) != 6:
            return None
        return Identification(t, mapping)
    return None
