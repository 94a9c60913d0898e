"""Machine checks for a constructed basis of M(G).

Three properties are certified: every basis vector and its transform have
nonnegative coefficients; the assignment of a diagonal pair to every vector
exists and is the only one; and in a suitable order the coefficient matrix is
integer and upper triangular with unit diagonal.  The distinguished rows that
the transform must fix are checked against the shipped lists.  Results are
collected in a deterministic, JSON-serializable report.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptional import basis_beta, golden_tables, subgroup_name, variant_rows_s5
from .groups import build_standard
from .mspace import MSpace, MVector, fourier, mspace
from .scalars import Cyclo

ZERO = Cyclo()
ONE = Cyclo.from_rational(1)

# diagonal labels of the rows the transform must fix, per group
DISTINGUISHED_FIXED = {
    "S2": (("g2", "eps"),),
    "S3": (("g3", "th"), ("g3", "th^2")),
    "S4": (("g4", "i"), ("g4", "-i")),
    "S5": (
        ("1", "lam^4"),
        ("g2", "-eps"),
        ("g3", "eps*th"),
        ("g3", "eps*th^2"),
        ("g2'", "eps"),
        ("g6", "-th"),
        ("g6", "-th^2"),
        ("g4", "i"),
        ("g4", "-i"),
        ("g5", "zeta^2"),
        ("g5", "zeta^3"),
        ("g5", "zeta^4"),
    ),
}
# listed alongside the fixed rows but required to move
DISTINGUISHED_MOVED = {"S5": (("g5", "zeta"),)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class VerificationReport:
    group: str
    checks: list = field(default_factory=list)
    iota: list | None = None
    order: list | None = None
    fixed: list | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
            "iota": self.iota,
            "order": self.order,
            "fixed": self.fixed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _label(space: MSpace, pos: int) -> list:
    cls, ch = space.pair_label(pos)
    return [cls, ch]


def _pair_sort_key(space: MSpace, pos: int):
    # ready rows are emitted largest class first, then by descending labels,
    # so seed rows with wide support lead the printed order
    ci, _ = space.pairs[pos]
    cls, ch = space.pair_label(pos)
    return (space.conj.classes[ci].size, ch, cls)


def check_bipositivity(vectors: list, tol: float = 1e-9) -> CheckResult:
    """Every coefficient of every vector and of its transform nonnegative.

    Rational coefficients are decided exactly; irrational real values fall
    back to numeric evaluation against -tol, and non-real values fail.
    """
    for i, v in enumerate(vectors):
        for tag, w in (("", v), ("transform of ", fourier(v))):
            for pos, c in w.coeffs.items():
                if not c.is_nonneg_real(tol):
                    cls, ch = w.space.pair_label(pos)
                    return CheckResult(
                        "bipositivity",
                        False,
                        f"{tag}row {i}: coefficient at ({cls},{ch}) is {c}",
                    )
    return CheckResult("bipositivity", True)


def _maximum_matching(space: MSpace, vectors: list) -> list:
    # Kuhn's augmenting paths on the support graph; pair -> row index or -1
    match_of_pair = [-1] * space.size
    match_of_row = [-1] * len(vectors)
    support = [sorted(v.coeffs) for v in vectors]

    def augment(row, seen):
        for pos in support[row]:
            if seen[pos]:
                continue
            seen[pos] = True
            if match_of_pair[pos] < 0 or augment(match_of_pair[pos], seen):
                match_of_pair[pos] = row
                match_of_row[row] = pos
                return True
        return False

    for row in range(len(vectors)):
        augment(row, [False] * space.size)
    return match_of_pair


def _alternating_cycle(space: MSpace, vectors: list, match_of_pair: list):
    # contract each matched edge: pair -> pair steps through an unmatched
    # edge into a row and back along that row's matched edge; a directed
    # cycle is exactly an alternating cycle, hence a second matching
    pair_of_row = {row: pos for pos, row in enumerate(match_of_pair)}
    succ = [
        sorted(
            pair_of_row[row]
            for row in range(len(vectors))
            if row != match_of_pair[pos] and pos in vectors[row].coeffs
        )
        for pos in range(space.size)
    ]
    color = [0] * space.size  # 0 new, 1 active, 2 done
    for start in range(space.size):
        if color[start]:
            continue
        color[start] = 1
        trail = [start]
        stack = [iter(succ[start])]
        while stack:
            advanced = False
            for nxt in stack[-1]:
                if color[nxt] == 1:
                    return trail[trail.index(nxt):]
                if color[nxt] == 0:
                    color[nxt] = 1
                    trail.append(nxt)
                    stack.append(iter(succ[nxt]))
                    advanced = True
                    break
            if not advanced:
                color[trail.pop()] = 2
                stack.pop()
    return None


def check_iota(space: MSpace, vectors: list, tol: float = 1e-9):
    """The diagonal bijection: each pair to a vector whose support holds it.

    Returns (result, iota) with iota a list mapping coordinate position to
    row index.  Existence is a perfect matching of the support graph;
    uniqueness is certified by the absence of alternating cycles.
    """
    del tol  # supports are exact; the argument keeps one call shape per check
    if len(vectors) != space.size:
        return (
            CheckResult(
                "iota_unique",
                False,
                f"{len(vectors)} vectors against {space.size} pairs",
            ),
            None,
        )
    match_of_pair = _maximum_matching(space, vectors)
    missing = [p for p in range(space.size) if match_of_pair[p] < 0]
    if missing:
        cls, ch = space.pair_label(missing[0])
        return (
            CheckResult("iota_unique", False, f"no vector matches ({cls},{ch})"),
            None,
        )
    cycle = _alternating_cycle(space, vectors, match_of_pair)
    if cycle is not None:
        names = " -> ".join("(%s,%s)" % tuple(_label(space, p)) for p in cycle)
        return (
            CheckResult("iota_unique", False, f"alternating cycle {names}"),
            None,
        )
    return CheckResult("iota_unique", True), match_of_pair


def check_triangular(space: MSpace, vectors: list, iota: list):
    """Acyclic support order, integer entries, unit diagonal.

    Orients each pair toward the other pairs in its matched row, emits the
    topological order (ties by class size, then labels), and checks that the
    matched row has coefficient exactly one at its pair and integers
    everywhere.  Returns (result, order) with order a list of positions.
    """
    for pos in range(space.size):
        row = vectors[iota[pos]]
        c = row.coeffs.get(pos, ZERO)
        if c != ONE:
            cls, ch = space.pair_label(pos)
            return (
                CheckResult(
                    "unitriangular", False, f"diagonal at ({cls},{ch}) is {c}"
                ),
                None,
            )
        for c in row.coeffs.values():
            if not (c.is_rational() and c.as_fraction().denominator == 1):
                cls, ch = space.pair_label(pos)
                return (
                    CheckResult(
                        "unitriangular",
                        False,
                        f"non-integer entry {c} in the row of ({cls},{ch})",
                    ),
                    None,
                )
    out_edges = {
        pos: [p2 for p2 in vectors[iota[pos]].coeffs if p2 != pos]
        for pos in range(space.size)
    }
    indeg = {pos: 0 for pos in range(space.size)}
    for pos, succ in out_edges.items():
        for p2 in succ:
            indeg[p2] += 1
    ready = sorted(
        (p for p in range(space.size) if indeg[p] == 0),
        key=lambda p: _pair_sort_key(space, p),
        reverse=True,
    )
    order = []
    while ready:
        pos = ready.pop(0)
        order.append(pos)
        changed = False
        for p2 in out_edges[pos]:
            indeg[p2] -= 1
            if indeg[p2] == 0:
                ready.append(p2)
                changed = True
        if changed:
            ready.sort(key=lambda p: _pair_sort_key(space, p), reverse=True)
    if len(order) < space.size:
        stuck = sorted(
            (p for p in range(space.size) if indeg[p] > 0),
            key=lambda p: _pair_sort_key(space, p),
        )
        names = ", ".join("(%s,%s)" % tuple(_label(space, p)) for p in stuck[:6])
        return (
            CheckResult("unitriangular", False, f"support cycle through {names}"),
            None,
        )
    return CheckResult("unitriangular", True), order


def check_linear_independence(space: MSpace, vectors: list) -> CheckResult:
    """Exact rank of the coefficient matrix equals the number of vectors.

    Sparse elimination; all-rational inputs run on plain fractions, anything
    else on the full scalar ring.  Both paths are exact.
    """
    rational = all(
        c.is_rational() for v in vectors for c in v.coeffs.values()
    )
    if rational:
        rows = [
            {p: c.as_fraction() for p, c in v.coeffs.items()} for v in vectors
        ]
        zero = Fraction(0)
        invert = lambda c: 1 / c
    else:
        rows = [dict(v.coeffs) for v in vectors]
        zero = ZERO
        invert = lambda c: c.inverse()
    pivot_of = {}
    for i, row in enumerate(rows):
        row = {p: c for p, c in row.items() if c != zero}
        while row:
            pivot = min(row)
            j = pivot_of.get(pivot)
            if j is None:
                break
            other = rows[j]
            factor = row[pivot]
            for p, val in other.items():
                c = row.get(p, zero) - factor * val
                if c == zero:
                    row.pop(p, None)
                else:
                    row[p] = c
        if not row:
            return CheckResult(
                "linear_independence", False, f"row {i} is dependent"
            )
        inv = invert(row[pivot])
        rows[i] = {p: c * inv for p, c in row.items()}
        pivot_of[pivot] = i
    return CheckResult("linear_independence", True)


def check_fixed_points(space: MSpace, vectors: list, iota: list, descriptor: str):
    """Transform-fixedness of the distinguished rows, plus the fixed list.

    Returns (result, fixed) where fixed lists the diagonal labels of all
    transform-fixed rows in coordinate order.  For groups with no
    distinguished rows only the list is produced.
    """
    fixed_positions = []
    for pos in range(space.size):
        v = vectors[iota[pos]]
        if fourier(v) == v:
            fixed_positions.append(pos)
    fixed_labels = [tuple(_label(space, p)) for p in fixed_positions]
    for want in DISTINGUISHED_FIXED.get(descriptor, ()):
        if want not in fixed_labels:
            return (
                CheckResult(
                    "fixed_points", False, f"({want[0]},{want[1]}) is not fixed"
                ),
                fixed_labels,
            )
    for stay in DISTINGUISHED_MOVED.get(descriptor, ()):
        if stay in fixed_labels:
            return (
                CheckResult(
                    "fixed_points",
                    False,
                    f"({stay[0]},{stay[1]}) is fixed but must move",
                ),
                fixed_labels,
            )
    if descriptor == "S5":
        # the primed variant stays valid but has fewer fixed rows
        standard = sum(
            1
            for z in ("zeta", "zeta^2", "zeta^3", "zeta^4")
            if ("g5", z) in fixed_labels
        )
        primed = 0
        for _, vec in variant_rows_s5().values():
            img = fourier(vec)
            if not all(c.is_nonneg_real() for c in img.coeffs.values()):
                return (
                    CheckResult(
                        "fixed_points", False, "primed variant image negative"
                    ),
                    fixed_labels,
                )
            if img == vec:
                primed += 1
        if primed >= standard:
            return (
                CheckResult(
                    "fixed_points",
                    False,
                    f"primed variant fixes {primed} rows, standard {standard}",
                ),
                fixed_labels,
            )
    return CheckResult("fixed_points", True), fixed_labels


def basis_rows(descriptor: str, delta: int = 0, variant: str = "standard"):
    """The (triple, vector) rows for a descriptor, optionally the primed S5
    variant (the four seed rows replaced by their plain counterparts)."""
    if variant not in ("standard", "primed"):
        raise ValueError(f"unknown variant {variant!r}")
    model = build_standard(descriptor)
    rows = basis_beta(model, delta)
    if variant == "standard":
        return rows
    if descriptor != "S5":
        raise ValueError("the primed variant exists for S5 only")
    pair_of_triple = {
        (row.gamma1, row.gamma2, row.xi): row.pair for row in golden_tables(5)
    }
    replacement = variant_rows_s5()
    out = []
    for triple, vec in rows:
        key = (
            subgroup_name(model, triple.pair.gamma1),
            subgroup_name(model, triple.pair.gamma2),
            triple.xi_name,
        )
        out.append(replacement.get(pair_of_triple[key], (triple, vec)))
    return out


def verify_group(
    descriptor: str, tol: float = 1e-9, delta: int = 0, variant: str = "standard"
) -> VerificationReport:
    """Run every check for one group and collect the report."""
    model = build_standard(descriptor)
    space = mspace(model)
    rows = basis_rows(descriptor, delta, variant)
    vectors = [v for _, v in rows]
    report = VerificationReport(group=descriptor)
    report.checks.append(check_linear_independence(space, vectors))
    report.checks.append(check_bipositivity(vectors, tol))
    iota_result, iota = check_iota(space, vectors, tol)
    report.checks.append(iota_result)
    if iota is None:
        return report
    report.iota = [
        _label(space, pos) + [iota[pos]] for pos in range(space.size)
    ]
    tri_result, order = check_triangular(space, vectors, iota)
    report.checks.append(tri_result)
    if order is not None:
        report.order = [_label(space, pos) for pos in order]
    fixed_result, fixed_labels = check_fixed_points(
        space, vectors, iota, descriptor if variant == "standard" else ""
    )
    report.checks.append(fixed_result)
    report.fixed = [list(p) for p in fixed_labels]
    return report
