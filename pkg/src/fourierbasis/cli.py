"""Command-line surface over the library.

Commands list the pairing set, emit the distinguished basis with its
provenance columns, print transform matrices, run the verification suite,
enumerate the interval and subspace families, and dump the shipped tables.
Output is deterministic for a fixed invocation.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from importlib import resources

from .classical import (
    FAMILY_CAP,
    alpha_map,
    b_of_k,
    enumerate_family,
    enumerate_subspace_family,
    interval_mask,
    lambda_map_inverse,
    lift_triple,
    perp,
    rref_masks,
    shriek,
    span_B,
    T_embed_delta,
    triple_family,
    z_of,
)
from .exceptional import subgroup_name
from .groups import build_standard
from .mspace import MVector, fourier, mspace
from .scalars import Cyclo
from .verify import basis_rows, check_iota, check_triangular, verify_group

_ZERO = Cyclo()
INTERVAL_FAMILIES = {"SD": "S_D", "SSD": "SS_D", "SSDprim": "SS_D_prim"}
SUBSPACE_FAMILIES = {"F": "F", "FF": "FF", "C": "C_delta", "CT": "tildeC_delta"}


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    fmt: str = "text"
    tolerance: float = 1e-9
    cap: int = FAMILY_CAP
    variant: str = "standard"
    delta: int = 0
    dim: int | None = None
    family: str | None = None
    check_props: bool = False
    zof: str | None = None
    out: str | None = None


def parse_args(argv) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="fourierbasis",
        description="pairing sets, distinguished bases, and their checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("mspace", "basis", "fourier", "verify", "classical", "goldens"):
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--out")
        if name != "classical":
            p.add_argument("--group", required=name != "goldens")
        if name in ("basis", "verify"):
            p.add_argument("--variant", choices=("standard", "primed"),
                           default="standard")
            p.add_argument("--delta", type=int, choices=(0, 1), default=0)
        if name == "verify":
            p.add_argument("--tolerance", type=float, default=1e-9)
        if name == "classical":
            p.add_argument("--D", type=int, required=True, dest="dim")
            p.add_argument("--family", choices=sorted(
                INTERVAL_FAMILIES | SUBSPACE_FAMILIES))
            p.add_argument("--delta", type=int, choices=(0, 1), default=0)
            p.add_argument("--check-props", action="store_true")
            p.add_argument("--zof")
    ns = parser.parse_args(argv)
    return RunConfig(
        command=ns.command,
        group=getattr(ns, "group", None),
        fmt=ns.format,
        tolerance=getattr(ns, "tolerance", 1e-9),
        variant=getattr(ns, "variant", "standard"),
        delta=getattr(ns, "delta", 0),
        dim=getattr(ns, "dim", None),
        family=getattr(ns, "family", None),
        check_props=getattr(ns, "check_props", False),
        zof=getattr(ns, "zof", None),
        out=ns.out,
    )


# -- cell and vector rendering --------------------------------------------------


def scalar_text(c) -> str:
    if c.is_rational():
        return str(c.as_fraction())
    text = repr(c)
    return f"({text})" if " " in text else text


def scalar_csv(c) -> str:
    # integers bare, everything else as the exponent-coefficient list
    if c.is_rational() and c.as_fraction().denominator == 1:
        return str(c.as_fraction().numerator)
    return json.dumps(c.serialize(), separators=(",", ":"))


def vector_text(v: MVector) -> str:
    parts = []
    for pos in sorted(v.coeffs):
        cls, ch = v.space.pair_label(pos)
        c = v.coeffs[pos]
        lead = "" if c.is_rational() and c.as_fraction() == 1 else scalar_text(c)
        parts.append(f"{lead}({cls},{ch})")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def vector_terms(v: MVector) -> list:
    return [
        [list(v.space.pair_label(pos)), v.coeffs[pos].serialize()]
        for pos in sorted(v.coeffs)
    ]


def csv_line(cells) -> str:
    out = []
    for cell in cells:
        text = str(cell)
        if any(ch in text for ch in ",\"\n"):
            text = '"' + text.replace('"', '""') + '"'
        out.append(text)
    return ",".join(out)


# -- commands --------------------------------------------------------------------


def cmd_mspace(config: RunConfig) -> tuple:
    space = mspace(build_standard(config.group))
    labels = [space.pair_label(pos) for pos in range(space.size)]
    if config.fmt == "json":
        doc = {"group": config.group, "size": space.size,
               "pairs": [list(p) for p in labels]}
        return [json.dumps(doc, indent=1)], 0
    if config.fmt == "csv":
        lines = [csv_line(("class", "character"))]
        lines += [csv_line(p) for p in labels]
        return lines, 0
    return [f"({cls},{ch})" for cls, ch in labels], 0


def _triple_columns(model, triple) -> tuple:
    triples = triple if isinstance(triple, tuple) else (triple,)
    factors = model.factors if model.kind == "product" else (model,)
    g1 = "|".join(subgroup_name(f, t.pair.gamma1) for f, t in zip(factors, triples))
    g2 = "|".join(subgroup_name(f, t.pair.gamma2) for f, t in zip(factors, triples))
    xi = "|".join(t.xi_name for t in triples)
    return g1, g2, xi


def _ordered_basis(config: RunConfig) -> tuple:
    model = build_standard(config.group)
    space = mspace(model)
    rows = basis_rows(config.group, config.delta, config.variant)
    vectors = [v for _, v in rows]
    result, iota = check_iota(space, vectors)
    if iota is None:
        raise ValueError(f"no diagonal bijection: {result.witness}")
    tri, order = check_triangular(space, vectors, iota)
    if order is None:
        raise ValueError(f"no triangular order: {tri.witness}")
    table = []
    for pos in order:
        triple, vec = rows[iota[pos]]
        table.append((space.pair_label(pos), _triple_columns(model, triple), vec))
    return space, order, table


def cmd_basis(config: RunConfig) -> tuple:
    space, order, table = _ordered_basis(config)
    if config.fmt == "json":
        doc = []
        for (cls, ch), (g1, g2, xi), vec in table:
            doc.append({"pair": [cls, ch], "gamma1": g1, "gamma2": g2,
                        "xi": xi, "terms": vector_terms(vec)})
        return [json.dumps(doc, indent=1)], 0
    if config.fmt == "csv":
        head = ["pair", "gamma1", "gamma2", "xi"]
        head += ["(%s,%s)" % space.pair_label(pos) for pos in order]
        lines = [csv_line(head)]
        for (cls, ch), (g1, g2, xi), vec in table:
            cells = [f"({cls},{ch})", g1, g2, xi]
            cells += [scalar_csv(vec.coeffs.get(pos, _ZERO)) for pos in order]
            lines.append(csv_line(cells))
        return lines, 0
    lines = []
    for (cls, ch), (g1, g2, xi), vec in table:
        lines.append(f"({cls},{ch}) | {g1} {g2} {xi} | {vector_text(vec)}")
    return lines, 0


def cmd_fourier(config: RunConfig) -> tuple:
    space = mspace(build_standard(config.group))
    images = []
    for pos in range(space.size):
        cls, ch = space.pair_label(pos)
        images.append(fourier(MVector.from_terms(space, [(1, cls, ch)])))
    if config.fmt == "json":
        doc = {"group": config.group,
               "pairs": [list(space.pair_label(p)) for p in range(space.size)],
               "images": [vector_terms(img) for img in images]}
        return [json.dumps(doc, indent=1)], 0
    if config.fmt == "csv":
        head = [""] + ["(%s,%s)" % space.pair_label(p) for p in range(space.size)]
        lines = [csv_line(head)]
        for pos, img in enumerate(images):
            cells = ["(%s,%s)" % space.pair_label(pos)]
            cells += [scalar_csv(img.coeffs.get(p, _ZERO))
                      for p in range(space.size)]
            lines.append(csv_line(cells))
        return lines, 0
    lines = []
    for pos, img in enumerate(images):
        cls, ch = space.pair_label(pos)
        lines.append(f"({cls},{ch}) -> {vector_text(img)}")
    return lines, 0


def cmd_verify(config: RunConfig) -> tuple:
    report = verify_group(config.group, tol=config.tolerance,
                          delta=config.delta, variant=config.variant)
    code = 0 if report.passed else 1
    if config.fmt == "json":
        return [report.to_json()], code
    if config.fmt == "csv":
        lines = [csv_line(("check", "passed", "witness"))]
        for c in report.checks:
            lines.append(csv_line((c.name, c.passed, c.witness or "")))
        return lines, code
    lines = []
    for c in report.checks:
        tail = "" if c.passed else f"  [{c.witness}]"
        lines.append(f"{c.name}: {'pass' if c.passed else 'FAIL'}{tail}")
    lines.append(f"{config.group}: {'pass' if report.passed else 'FAIL'}")
    return lines, code


# -- the classical command ---------------------------------------------------


def interval_set_text(B) -> str:
    return "{" + ",".join(f"[{a},{b}]" for a, b in sorted(B)) + "}"


def parse_interval_set(text: str):
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"interval set must be brace-delimited: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return frozenset()
    pattern = re.compile(r"\[(\d+),(\d+)\]")
    pieces = pattern.findall(inner)
    if pattern.sub("", inner).strip(", "):
        raise ValueError(f"unparsed interval text in {text!r}")
    return frozenset((int(a), int(b)) for a, b in pieces)


def mask_text(mask: int) -> str:
    if not mask:
        return "0"
    return "+".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def rows_text(rows) -> str:
    return "[" + ",".join(mask_text(r) for r in rows) + "]"


def classical_checks(D: int) -> list:
    """The exhaustive family sweeps at one even dimension, as (name, ok)."""
    results = []
    ok = True
    for delta in (0, 1):
        fam = enumerate_subspace_family("tildeC_delta", D, delta)
        images = {alpha_map(D, p) for p in fam}
        ok = ok and len(images) == len(fam)
        ok = ok and images == set(enumerate_subspace_family("F", D))
    results.append(("nested_pairs_to_isotropics", ok))
    members = set(enumerate_family("SS_D", D))
    seen = set()
    ok = True
    for Bhat in members:
        B, k = lambda_map_inverse(Bhat)
        ok = ok and b_of_k(D, B, k) == Bhat and (B, k) not in seen
        seen.add((B, k))
    ok = ok and len(seen) == len(members)
    results.append(("depth_markings_to_full_family", ok))
    full = set(enumerate_subspace_family("FF", D))
    ok = True
    for delta in (0, 1):
        images = [lift_triple(D, p, k) for p, k in triple_family(D, delta)]
        ok = ok and len(set(images)) == len(images) and set(images) == full
    results.append(("lifted_triples_to_orthogonals", ok))
    ok = True
    if D >= 2:
        for delta in (0, 1):
            for L in enumerate_subspace_family("C_delta", D - 2, delta):
                sh = shriek(D - 2, L, delta)
                for i in range(1, D + 1):
                    moved = rref_masks(T_embed_delta(D, i, r) for r in sh)
                    grown = [T_embed_delta(D, i, r) for r in L]
                    if i % 2 == delta % 2:
                        target = rref_masks(grown + [1 << (i - 1)])
                        ok = ok and moved == shriek(D, target, delta)
                    else:
                        target = rref_masks(grown)
                        ok = ok and rref_masks(
                            list(moved) + [1 << (i - 1)]
                        ) == shriek(D, target, delta)
    results.append(("widening_exchanges_orthogonal", ok))
    ok = True
    for B in enumerate_family("S_D", D):
        zd = z_of(D, B)
        ok = ok and len(zd.sequence) == D - 2 * len(B)
        combined = rref_masks(
            sorted(interval_mask(I) for I in B)
            + [interval_mask(I) for I in zd.sequence]
        )
        ok = ok and combined == perp(D, span_B(B))
    results.append(("chain_complements_orthogonally", ok))
    return results


def cmd_classical(config: RunConfig) -> tuple:
    D = config.dim
    if D is None or D < 0 or D % 2:
        raise ValueError("need an even dimension D")
    if config.zof is None and D > config.cap:
        raise ValueError(f"enumeration cap D <= {config.cap} exceeded")
    if config.zof is not None:
        B = parse_interval_set(config.zof)
        zd = z_of(D, B)
        chain = list(zd.sequence)
        if config.fmt == "json":
            doc = {"D": D, "input": sorted(B), "chain": chain,
                   "gaps": list(zd.gaps)}
            return [json.dumps(doc, indent=1)], 0
        if config.fmt == "csv":
            lines = [csv_line(("start", "end"))]
            lines += [csv_line(iv) for iv in chain]
            return lines, 0
        return ["{" + ",".join(f"[{a},{b}]" for a, b in chain) + "}"], 0
    if config.check_props:
        results = classical_checks(D)
        code = 0 if all(ok for _, ok in results) else 1
        if config.fmt == "json":
            doc = {"D": D, "checks": [{"name": n, "passed": ok}
                                      for n, ok in results]}
            return [json.dumps(doc, indent=1)], code
        if config.fmt == "csv":
            lines = [csv_line(("check", "passed"))]
            lines += [csv_line((n, ok)) for n, ok in results]
            return lines, code
        return [f"{n}: {'pass' if ok else 'FAIL'}" for n, ok in results], code
    if config.family is None:
        raise ValueError("classical needs --family, --zof, or --check-props")
    if config.family in INTERVAL_FAMILIES:
        members = enumerate_family(INTERVAL_FAMILIES[config.family], D)
        rendered = [interval_set_text(B) for B in members]
        noun = "interval sets"
    else:
        kind = SUBSPACE_FAMILIES[config.family]
        if kind in ("C_delta", "tildeC_delta"):
            members = enumerate_subspace_family(kind, D, config.delta)
        else:
            members = enumerate_subspace_family(kind, D)
        if kind == "tildeC_delta":
            rendered = [f"{rows_text(p.l1)} <= {rows_text(p.l2)}" for p in members]
            noun = "nested pairs"
        else:
            rendered = [rows_text(rows) for rows in members]
            noun = "subspaces"
    if config.fmt == "json":
        doc = {"D": D, "family": config.family, "count": len(members),
               "members": rendered}
        return [json.dumps(doc, indent=1)], 0
    if config.fmt == "csv":
        lines = [csv_line(("member",))]
        lines += [csv_line((r,)) for r in rendered]
        return lines, 0
    return [f"{len(members)} {noun}"] + rendered, 0


def cmd_goldens(config: RunConfig) -> tuple:
    raw = json.loads(
        resources.files("fourierbasis.data")
        .joinpath("golden_tables.json")
        .read_text()
    )
    if config.group:
        raw = [row for row in raw if row["group"] == config.group]
        if not raw:
            raise ValueError(f"no shipped rows for {config.group!r}")
    if config.fmt == "json":
        return [json.dumps(raw, indent=1)], 0
    if config.fmt == "csv":
        lines = [csv_line(("group", "class", "character", "gamma1", "gamma2",
                           "xi", "given", "adjusted"))]
        for row in raw:
            lines.append(csv_line((row["group"], row["pair"][0], row["pair"][1],
                                   row["gamma1"], row["gamma2"], row["xi"],
                                   row["rhs_given"],
                                   row.get("rhs_adjusted", False))))
        return lines, 0
    lines = []
    for row in raw:
        rhs = " + ".join(
            ("" if c == 1 else str(c)) + f"({cls},{ch})"
            for c, cls, ch in row["rhs"]
        )
        lines.append(
            f"{row['group']} ({row['pair'][0]},{row['pair'][1]}) | "
            f"{row['gamma1']} {row['gamma2']} {row['xi']} | {rhs}"
        )
    return lines, 0


COMMANDS = {
    "mspace": cmd_mspace,
    "basis": cmd_basis,
    "fourier": cmd_fourier,
    "verify": cmd_verify,
    "classical": cmd_classical,
    "goldens": cmd_goldens,
}


def run(config: RunConfig) -> tuple:
    return COMMANDS[config.command](config)


def main(argv=None) -> int:
    config = parse_args(argv)
    try:
        lines, code = run(config)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if config.out:
        with open(config.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
