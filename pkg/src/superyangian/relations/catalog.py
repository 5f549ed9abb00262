"""Relation catalogs stored as plain text, one relation per line.

Line format::

    id :: var in range, var in range [where condition] :: zero-form

A range is ``lo..hi``, ``nodes`` (all Dynkin nodes) or ``odd`` (the odd
nodes 0 and m).  Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..superdata import SuperSize
from .dsl import (
    RelationSyntaxError,
    check_condition,
    free_indices,
    parse_condition,
    parse_relation,
    print_condition,
    print_relation,
)

GROUPS = {
    "minimalistic": "minimalistic.rel",
    "evaluation": "evaluation.rel",
    "yangian": "yangian.rel",
    "j": "j_identities.rel",
}


@dataclass(frozen=True)
class RelationSpec:
    rid: str
    group: str
    ranges: tuple  # ((name, range_text), ...)
    condition: tuple
    ast: object
    line: int = 0

    @property
    def family(self) -> str:
        """Relation family: the id without the +/- and a/b variant suffixes."""
        return re.sub(r"(?<=\d)[ab]$", "", self.rid.rstrip("+-"))

    @property
    def text(self) -> str:
        rng = ", ".join(f"{n} in {r}" for n, r in self.ranges)
        if self.condition:
            rng += " where " + print_condition(self.condition)
        return f"{self.rid} :: {rng} :: {print_relation(self.ast)}"

    def instances(self, size: SuperSize) -> list:
        names = [n for n, _ in self.ranges]
        pools = [_range_values(r, size) for _, r in self.ranges]
        out = []
        for combo in itertools.product(*pools):
            env = dict(zip(names, combo))
            if check_condition(self.condition, env, size):
                out.append(env)
        return out


def _range_values(text: str, size: SuperSize) -> list:
    text = text.strip()
    if text == "nodes":
        return list(size.nodes)
    if text == "odd":
        return list(size.odd_nodes)
    m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", text)
    if not m:
        raise ValueError(f"bad range {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    return list(range(lo, hi + 1))


def parse_catalog_line(line: str, group: str = "custom", lineno: int = 0) -> RelationSpec:
    parts = [p.strip() for p in line.split("::")]
    if len(parts) != 3:
        raise ValueError(f"line {lineno}: expected 'id :: ranges :: relation'")
    rid, header, form = parts
    cond: tuple = ()
    if " where " in f" {header} ":
        header, cond_text = re.split(r"\bwhere\b", header, maxsplit=1)
        cond = parse_condition(cond_text.strip())
    ranges = []
    for item in filter(None, (x.strip() for x in header.split(","))):
        m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*)\s+in\s+(.+)", item)
        if not m:
            raise ValueError(f"line {lineno}: bad range declaration {item!r}")
        ranges.append((m.group(1), m.group(2).strip()))
    try:
        ast = parse_relation(form)
    except RelationSyntaxError as exc:
        raise ValueError(f"line {lineno}: {exc}") from exc
    declared = {n for n, _ in ranges}
    missing = free_indices(ast) - declared
    if missing:
        raise ValueError(f"line {lineno}: undeclared indices {sorted(missing)} in {rid}")
    return RelationSpec(rid, group, tuple(ranges), cond, ast, lineno)


def parse_catalog(text: str, group: str = "custom") -> list:
    out = []
    for k, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_catalog_line(line, group, k))
    return out


def load_catalog(path) -> list:
    path = Path(path)
    return parse_catalog(path.read_text(), path.stem)


def catalog(groups=("minimalistic",)) -> list:
    """Built-in relations of the given groups, in file order."""
    if isinstance(groups, str):
        groups = (groups,)
    out = []
    for g in groups:
        if g not in GROUPS:
            raise KeyError(f"unknown relation group {g!r}; known: {sorted(GROUPS)}")
        text = resources.files(__package__).joinpath("data", GROUPS[g]).read_text()
        out.extend(parse_catalog(text, g))
    return out


def families(specs) -> list:
    return sorted({s.family for s in specs}, key=_family_key)


def _family_key(f: str):
    return [int(x) if x.isdigit() else x for x in re.split(r"(\d+)", f)]


def select(specs, ids) -> list:
    """Keep specs whose id or family is listed in ``ids``."""
    if not ids:
        return list(specs)
    wanted = set(ids)
    return [s for s in specs if s.rid in wanted or s.family in wanted]
