"""Published n-tables shipped as fixtures and their comparison with computed
rows, up to one sign per |D| and a relabeling of ideal classes that respects
the grouping by right orders."""

import json
from dataclasses import dataclass, field
from importlib import resources

from .analytic import DEFAULT_PREC
from .central import class_set_for, table_rows
from .quadfield import QuadForm

FIXTURES = {-7: "table_n7.json", -11: "table_n11.json", -163: "table_n163.json"}


def load_fixture(N):
    name = FIXTURES[N]
    with resources.files("hecke_central").joinpath("data", name).open() as fh:
        return json.load(fh)


@dataclass
class Comparison:
    N: int
    rows: list = field(default_factory=list)       # (fixture row, computed TableRow, ok)
    signs: dict = field(default_factory=dict)
    type_map: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)
    class_level_conflicts: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.problems

    def max_residual(self):
        return max((r.residual for _, r, _ in self.rows), default=0.0)


def compare(N, P=DEFAULT_PREC, dlist=None):
    fx = load_fixture(N)
    cmp = Comparison(N)
    by_d = {}
    for r in fx["rows"]:
        by_d.setdefault(r["D"], []).append(r)
    cs = class_set_for(N) if fx.get("groups") else None
    group_of = {}
    if cs:
        for g, labels in enumerate(fx["groups"]):
            for lab in labels:
                group_of[lab] = g
    pairs = set()
    class_pairs = set()
    for D in sorted(by_d):
        if dlist and D not in dlist:
            continue
        fr = by_d[D]
        _, rows = table_rows(N, D, P, forms=[QuadForm.parse(r["form"]) for r in fr])
        sign = None
        for f, row in zip(fr, rows):
            if f["n"] != 0:
                sign = row.n // f["n"] if row.n in (f["n"], -f["n"]) else None
                break
        sign = sign or 1
        cmp.signs[D] = sign
        for f, row in zip(fr, rows):
            good = row.n == sign * f["n"]
            if not good:
                cmp.problems.append(f"D={D} {f['form']}: published {f['n']} computed {row.n} (sign {sign})")
            if cs and "ideal" in f:
                pairs.add((group_of[f["ideal"]], row.type_index))
                class_pairs.add((f["ideal"], row.class_label))
            cmp.rows.append((f, row, good))
    if cs:
        fwd, back = {}, {}
        for g, t in sorted(pairs):
            fwd.setdefault(g, set()).add(t)
            back.setdefault(t, set()).add(g)
        for g, ts in fwd.items():
            if len(ts) > 1:
                cmp.problems.append(f"published group {fx['groups'][g]} maps to several computed types {sorted(ts)}")
        for t, gs in back.items():
            if len(gs) > 1:
                cmp.problems.append(f"computed type {t} receives published groups {sorted(gs)}")
        for g, ts in fwd.items():
            t = min(ts)
            if len(fx["groups"][g]) != len(cs.types[t]):
                cmp.problems.append(f"group size mismatch for {fx['groups'][g]} and type {t}")
        cmp.type_map = {"+".join(fx["groups"][g]): sorted(cs.labels[i] for i in cs.types[min(ts)])
                        for g, ts in fwd.items()}
        principal = fx.get("principal_label")
        if principal is not None:
            pg = group_of[principal]
            if pg in fwd and fwd[pg] != {cs.type_of(0)}:
                cmp.problems.append(f"published class {principal} does not correspond to the principal class")
        # class level: a bijection of labels would need each published label to
        # meet a single computed label and vice versa
        cf, cb = {}, {}
        for a, b in class_pairs:
            cf.setdefault(a, set()).add(b)
            cb.setdefault(b, set()).add(a)
        cmp.class_level_conflicts = sorted(
            [f"{a} -> {sorted(b)}" for a, b in cf.items() if len(b) > 1]
            + [f"{sorted(a)} <- {b}" for b, a in cb.items() if len(a) > 1])
    return cmp
