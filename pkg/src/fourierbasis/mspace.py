"""The pairing set of a group and its function model.

M(G) is the set of conjugacy classes of pairs (x, rho) with x in G and rho an
irreducible character of the centralizer Z(x).  A pair is stored by the index
of the class of x (at its canonical representative) and the index of rho in
the centralizer's character table, so every vector over M(G) has a fixed
deterministic coordinate order.

A vector over M(G) can be realized as a function on commuting pairs of group
elements: the basis pair (x, rho) becomes f(a, b) = rho(m_a b m_a^-1) when a
is conjugate to x via m_a a m_a^-1 = x, and 0 otherwise.  Such functions are
invariant under simultaneous conjugation, so they are stored on slices
(class representative, centralizer element) only.  The pairing transform is
argument swap in this model, forced to the identity on every conjugation-odd
plane that the swap preserves; the transfer map against a smaller subquotient
is inflation along the quotient identification followed by induction.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .groups import FiniteGroupModel, Identification
from .scalars import Cyclo, ONE

ZERO = Cyclo()


class MSpace:
    """Fixed-order coordinate system on M(G).

    Pairs are ordered by (class size, class representative, character index),
    which keeps the trivial class first and is stable across runs.
    """

    def __init__(self, model: FiniteGroupModel):
        self.model = model
        self.conj = model.conjugacy()
        self.tables = {}
        self.centralizers = {}
        pairs = []
        for c in self.conj.classes:
            t = model.centralizer_character_table(c.rep)
            self.tables[c.index] = t
            self.centralizers[c.index] = t.domain
            for k in range(len(t.labels)):
                pairs.append((c.size, model.element_key(c.rep), c.index, k))
        pairs.sort()
        self.pairs = tuple((ci, k) for _, _, ci, k in pairs)
        self.position = {p: i for i, p in enumerate(self.pairs)}
        self.size = len(self.pairs)

    def pair_label(self, pos: int) -> tuple:
        ci, k = self.pairs[pos]
        return self.conj.classes[ci].label, self.tables[ci].labels[k]

    def find(self, class_label: str, char_label: str) -> int:
        for pos in range(self.size):
            if self.pair_label(pos) == (class_label, char_label):
                return pos
        raise KeyError(f"no pair ({class_label},{char_label}) in M({self.model.name})")

    def basis_vector(self, class_label: str, char_label: str) -> "MVector":
        return MVector(self, {self.find(class_label, char_label): ONE})

    def basis_at(self, pos: int) -> "MVector":
        return MVector(self, {pos: ONE})


_MSPACE_CACHE: dict[str, MSpace] = {}


def mspace(model: FiniteGroupModel) -> MSpace:
    if model.name not in _MSPACE_CACHE or _MSPACE_CACHE[model.name].model is not model:
        _MSPACE_CACHE[model.name] = MSpace(model)
    return _MSPACE_CACHE[model.name]


def _as_cyclo(c) -> Cyclo:
    if isinstance(c, Cyclo):
        return c
    return Cyclo.from_rational(c)


class MVector:
    """Sparse exact vector over an MSpace."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: MSpace, coeffs: dict | None = None):
        self.space = space
        self.coeffs = {p: c for p, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def from_terms(cls, space: MSpace, terms) -> "MVector":
        out = {}
        for coeff, class_label, char_label in terms:
            pos = space.find(class_label, char_label)
            out[pos] = out.get(pos, ZERO) + _as_cyclo(coeff)
        return cls(space, out)

    def __add__(self, other: "MVector") -> "MVector":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, ZERO) + c
        return MVector(self.space, out)

    def __sub__(self, other: "MVector") -> "MVector":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, ZERO) - c
        return MVector(self.space, out)

    def scaled(self, c) -> "MVector":
        c = _as_cyclo(c)
        return MVector(self.space, {p: v * c for p, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MVector)
            and self.space is other.space
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.space), frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def inner(self, other: "MVector") -> Cyclo:
        s = ZERO
        for p, c in self.coeffs.items():
            d = other.coeffs.get(p)
            if d is not None:
                s = s + c * d.conjugate()
        return s

    def serialize(self) -> list:
        out = []
        for p in sorted(self.coeffs):
            cl, ch = self.space.pair_label(p)
            out.append([self.coeffs[p].serialize(), cl, ch])
        return out

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for p in sorted(self.coeffs):
            cl, ch = self.space.pair_label(p)
            c = self.coeffs[p]
            if c.is_rational():
                q = c.as_fraction()
                coeff = "" if q == 1 else ("-" if q == -1 else f"{q}*")
            else:
                coeff = f"({c!r})*"
            parts.append(f"{coeff}({cl},{ch})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MVector({self.format()})"


class PairFunction:
    """A conjugation-invariant function on commuting pairs, stored on
    (class representative, centralizer element) slices."""

    def __init__(self, space: MSpace, slices: dict):
        self.space = space
        self.slices = {ci: sl for ci, sl in slices.items() if any(not v.is_zero() for v in sl.values())}

    def value(self, a, b) -> Cyclo:
        ci = self.space.conj.class_of[a]
        sl = self.slices.get(ci)
        if sl is None:
            return ZERO
        m = self.space.conj.transport[a]
        return sl.get(self.space.model.conj(m, b), ZERO)


def to_pair_function(vec: MVector) -> PairFunction:
    space = vec.space
    by_class: dict[int, list] = {}
    for p, c in vec.coeffs.items():
        ci, k = space.pairs[p]
        by_class.setdefault(ci, []).append((k, c))
    slices = {}
    for ci, terms in by_class.items():
        t = space.tables[ci]
        slices[ci] = {
            b: sum((c * t.value(k, b) for k, c in terms), ZERO)
            for b in space.centralizers[ci]
        }
    return PairFunction(space, slices)


def from_pair_function(pf: PairFunction) -> MVector:
    space = pf.space
    if space.model.kind == "f2":
        return _from_pair_function_f2(pf)
    coeffs = {}
    for ci, sl in pf.slices.items():
        t = space.tables[ci]
        z_order = Fraction(1, len(space.centralizers[ci]))
        for k in range(len(t.labels)):
            s = ZERO
            for b, v in sl.items():
                if not v.is_zero():
                    s = s + v * t.value(k, b).conjugate()
            if not s.is_zero():
                coeffs[space.position[(ci, k)]] = s * Cyclo.from_rational(z_order)
    return MVector(space, coeffs)


def _from_pair_function_f2(pf: PairFunction) -> MVector:
    # Classes of V_n are singletons with full centralizer and (-1)^(w.z)
    # characters, so each slice is one length-2^n Walsh-Hadamard sum.
    space = pf.space
    size = 1 << space.model.n
    coeffs = {}
    for ci, sl in pf.slices.items():
        rational = all(v.is_rational() for v in sl.values())
        if rational:
            fracs = {z: v.as_fraction() for z, v in sl.items()}
            den = 1
            for f in fracs.values():
                den = den * f.denominator // gcd(den, f.denominator)
            dense = [0] * size
            for z, f in fracs.items():
                dense[z] = int(f * den)
        else:
            dense = [ZERO] * size
            for z, v in sl.items():
                dense[z] = v
        half = 1
        while half < size:
            for start in range(0, size, half * 2):
                for i in range(start, start + half):
                    a, b = dense[i], dense[i + half]
                    dense[i], dense[i + half] = a + b, a - b
            half *= 2
        if rational:
            for w, val in enumerate(dense):
                if val:
                    pos = space.position[(ci, w)]
                    coeffs[pos] = Cyclo.from_rational(Fraction(val, den * size))
        else:
            scale = Cyclo.from_rational(Fraction(1, size))
            for w, val in enumerate(dense):
                if not val.is_zero():
                    coeffs[space.position[(ci, w)]] = val * scale
    return MVector(space, coeffs)


def _swap_fourier(vec: MVector) -> MVector:
    space = vec.space
    pf = to_pair_function(vec)
    swapped = {}
    for c in space.conj.classes:
        x = c.rep
        sl = {b: pf.value(b, x) for b in space.centralizers[c.index]}
        if any(not v.is_zero() for v in sl.values()):
            swapped[c.index] = sl
    return from_pair_function(PairFunction(space, swapped))


def _conjugation_odd_plane(space: MSpace, ci: int):
    """Conjugate-character position pairs of one class block, if usable.

    Pairs each character of the block with its complex conjugate and returns
    the list of (position, conjugate position) pairs when the span of the
    differences is carried to itself by the argument swap.  Returns None when
    the block has no complex characters or the swap moves the span elsewhere.
    """
    cache = getattr(space, "_odd_planes", None)
    if cache is None:
        cache = space._odd_planes = {}
    if ci in cache:
        return cache[ci]
    t = space.tables[ci]
    dom = space.centralizers[ci]
    pairs = []
    seen = set()
    for k in range(len(t.labels)):
        if k in seen:
            continue
        for k2 in range(len(t.labels)):
            if all(t.value(k2, g) == t.value(k, g).conjugate() for g in dom):
                if k2 != k:
                    seen.add(k)
                    seen.add(k2)
                    pairs.append((space.position[(ci, k)], space.position[(ci, k2)]))
                break
    result = None
    if pairs:
        plane = {p for ab in pairs for p in ab}
        result = pairs
        for a, b in pairs:
            img = _swap_fourier(MVector(space, {a: ONE}) - MVector(space, {b: ONE}))
            if any(p not in plane for p in img.coeffs):
                result = None
                break
            for a2, b2 in pairs:
                s = img.coeffs.get(a2, ZERO) + img.coeffs.get(b2, ZERO)
                if not s.is_zero():
                    result = None
                    break
            if result is None:
                break
    cache[ci] = result
    return result


def _invariant_odd_part(vec: MVector) -> MVector | None:
    """Component of vec inside the swap-invariant conjugation-odd planes."""
    space = vec.space
    half = Cyclo.from_rational(Fraction(1, 2))
    coeffs = {}
    for ci in {space.pairs[p][0] for p in vec.coeffs}:
        pairs = _conjugation_odd_plane(space, ci)
        if not pairs:
            continue
        for a, b in pairs:
            c = (vec.coeffs.get(a, ZERO) - vec.coeffs.get(b, ZERO)) * half
            if not c.is_zero():
                coeffs[a] = c
                coeffs[b] = ZERO - c
    if not coeffs:
        return None
    return MVector(vec.space, coeffs)


def fourier(vec: MVector) -> MVector:
    """The nonabelian Fourier transform.

    Argument swap in the pair-function model, acting as the identity on every
    conjugation-odd plane the swap preserves.  Wherever the swap already fixes
    such a plane pointwise this changes nothing; where it acts by a reflection
    the identity replaces it, which keeps the transform a symmetric involution
    because the plane is invariant.  Exact.
    """
    space = vec.space
    if space.model.kind == "f2":
        return _fourier_f2(vec)
    odd = _invariant_odd_part(vec)
    if odd is None:
        return _swap_fourier(vec)
    return _swap_fourier(vec - odd) + odd


def _fourier_f2(vec: MVector) -> MVector:
    # Pairs of V_n are (y, w) with position (y << n) | w; the transform kernel
    # (-1)^(z.y + w.x) is the Walsh-Hadamard kernel after swapping the two
    # halves of the index, so one fast transform of length 4^n suffices.
    space = vec.space
    n = space.model.n
    size = 1 << (2 * n)
    mask = (1 << n) - 1
    if all(c.is_rational() for c in vec.coeffs.values()):
        # common-denominator integer butterflies, same exact result
        fracs = {p: c.as_fraction() for p, c in vec.coeffs.items()}
        den = 1
        for f in fracs.values():
            den = den * f.denominator // gcd(den, f.denominator)
        dense = [0] * size
        for p, f in fracs.items():
            dense[p] = int(f * den)
        half = 1
        while half < size:
            for start in range(0, size, half * 2):
                for i in range(start, start + half):
                    a, b = dense[i], dense[i + half]
                    dense[i], dense[i + half] = a + b, a - b
            half *= 2
        out = {}
        for u in range(size):
            w = dense[((u & mask) << n) | (u >> n)]
            if w:
                out[u] = Cyclo.from_rational(Fraction(w, den << n))
        return MVector(space, out)
    dense = [ZERO] * size
    for p, c in vec.coeffs.items():
        dense[p] = c
    half = 1
    while half < size:
        for start in range(0, size, half * 2):
            for i in range(start, start + half):
                a, b = dense[i], dense[i + half]
                dense[i], dense[i + half] = a + b, a - b
        half *= 2
    scale = Cyclo.from_rational(Fraction(1, 1 << n))
    out = {}
    for u in range(size):
        w = dense[((u & mask) << n) | (u >> n)]
        if not w.is_zero():
            out[u] = w * scale
    return MVector(space, out)


def s_map(
    space: MSpace,
    gamma2_members: frozenset,
    qident: Identification,
    xi: MVector,
) -> MVector:
    """Transfer a vector over M of the subquotient onto M(G): inflate the
    pair function along the quotient identification, induce from the subgroup
    up to G, and read coefficients back off."""
    model = space.model
    if xi.space.model is not qident.target:
        raise ValueError("transfer input lives over the wrong quotient model")
    fbar = to_pair_function(xi)
    inv_order = Cyclo.from_rational(Fraction(1, len(gamma2_members)))

    def f_prime(a, b):
        return fbar.value(qident.mapping[a], qident.mapping[b])

    if model.is_abelian():
        # trivial conjugation collapses the induction sum to a membership test
        ratio = Cyclo.from_rational(Fraction(len(model.elements), len(gamma2_members)))
        slices = {}
        for c in space.conj.classes:
            x = c.rep
            if x not in gamma2_members:
                continue
            sl = {}
            for b in space.centralizers[c.index]:
                if b in gamma2_members:
                    v = f_prime(x, b)
                    if not v.is_zero():
                        sl[b] = v * ratio
            if sl:
                slices[c.index] = sl
        return from_pair_function(PairFunction(space, slices))

    slices = {}
    for c in space.conj.classes:
        x = c.rep
        zx = space.centralizers[c.index]
        acc = {b: ZERO for b in zx}
        hit = False
        for g in model.elements:
            y = model.conj(g, x)
            if y not in gamma2_members:
                continue
            hit = True
            for b in zx:
                cb = model.conj(g, b)
                if cb in gamma2_members:
                    acc[b] = acc[b] + f_prime(y, cb)
        if hit:
            slices[c.index] = {b: v * inv_order for b, v in acc.items()}
    return from_pair_function(PairFunction(space, slices))


def external_product(v1: MVector, v2: MVector) -> MVector:
    """The obvious product map M(G) x M(H) -> M(G x H) on vectors."""
    from .groups import product_group

    m1, m2 = v1.space.model, v2.space.model
    factors = []
    for m in (m1, m2):
        factors.extend(m.factors if m.kind == "product" else [m])
    target = mspace(product_group(factors))
    out = {}
    for p1, c1 in v1.coeffs.items():
        ci1, k1 = v1.space.pairs[p1]
        rep1 = v1.space.conj.classes[ci1].rep
        for p2, c2 in v2.coeffs.items():
            ci2, k2 = v2.space.pairs[p2]
            rep2 = v2.space.conj.classes[ci2].rep
            rep = _join_elements(m1, rep1) + _join_elements(m2, rep2)
            ci = target.conj.class_of[rep]
            w = len(v2.space.tables[ci2].labels)
            # product table index: later factors vary fastest
            k = k1 * w + k2
            out[target.position[(ci, k)]] = c1 * c2
    return MVector(target, out)


def _join_elements(model, g):
    return g if model.kind == "product" else (g,)
