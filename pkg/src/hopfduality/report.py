"""JSON reports of dualization runs.

Reports contain only values fixed by (input, seed, tol), so identical runs
give byte-identical documents; wall-clock time is included only on request.
Floats are written in Python's shortest round-trip form, which is exact at
double precision.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .algebra import DEFAULT_SEED
from .duality import (annihilator_ideal_check, dualize, grouplike_group, is_reflexive,
                      reconstruct_group)
from .errors import NotAGroup, NotCocommutative, NotCommutative
from .groups import identify_group
from .hopf import HopfVNAlgebra, verify_hopf
from .linalg import STRUCT_TOL

SCHEMA_VERSION = 1


@dataclass
class DualityReport:
    input: dict
    seed: int
    tol: float
    signatures: dict = field(default_factory=dict)
    partition: dict = field(default_factory=dict)
    ideal_dim: int | None = None
    residuals: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    wall_clock_s: float | None = None

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "input": self.input,
            "seed": self.seed,
            "tol": self.tol,
            "signatures": self.signatures,
            "partition": self.partition,
            "ideal_dim": self.ideal_dim,
            "residuals": self.residuals,
            "verdicts": self.verdicts,
            "groups": self.groups,
        }
        if self.wall_clock_s is not None:
            d["wall_clock_s"] = self.wall_clock_s
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"input: {json.dumps(self.input, sort_keys=True)}  seed={self.seed:#x}"]
        for k, v in self.signatures.items():
            lines.append(f"  {k:<12} blocks {tuple(v)}  dim {sum(d * d for d in v)}")
        if self.partition:
            p = self.partition
            lines.append(f"  irreducibles of the predual: {p['irreducible']} "
                         f"({p['standard']} standard, {p['nonstandard']} non-standard)")
        if self.ideal_dim is not None:
            lines.append(f"  dim M_*0 = {self.ideal_dim}")
        for k, v in self.verdicts.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.groups.items():
            lines.append(f"  {k}: {v.get('name')} (order {v.get('order')})")
        worst = max(self.residuals.values(), default=0.0)
        lines.append(f"  max residual {worst:.3e}")
        return "\n".join(lines)


def _group_entry(G) -> dict:
    return {"name": identify_group(G), "order": G.order, "cayley": G.table.tolist()}


def group_evidence(Mh: HopfVNAlgebra, seed: int, tol: float) -> dict | None:
    """Reconstructed group of ``Mh`` when it is commutative or cocommutative."""
    try:
        return {"via": "spectrum", **_group_entry(reconstruct_group(Mh, seed, tol))}
    except (NotCommutative, NotAGroup):
        pass
    try:
        return {"via": "grouplikes", **_group_entry(grouplike_group(Mh, seed, tol))}
    except (NotCocommutative, NotAGroup):
        return None


def duality_report(Mh: HopfVNAlgebra, input_desc: dict, seed: int = DEFAULT_SEED,
                   tol: float = STRUCT_TOL, double: bool = False, triple: bool = False,
                   reflexive: bool = False, timing: bool = False) -> DualityReport:
    t0 = time.perf_counter()
    rep = DualityReport(dict(input_desc), int(seed), float(tol))
    rep.signatures["M"] = list(Mh.signature)
    rep.residuals.update({"M." + k: v for k, v in verify_hopf(Mh, tol).residuals.items()})
    dc1 = dualize(Mh, seed, tol)
    rep.signatures["dual"] = list(dc1.signature)
    rep.partition = dc1.partition.sizes
    rep.ideal_dim = dc1.ideal_dim
    rep.residuals.update({"dual." + k.removeprefix("dual."): v for k, v in dc1.residuals.items()})
    ann = annihilator_ideal_check(Mh, dc1, tol)
    rep.verdicts["annihilator_ideal"] = ann.status
    g = group_evidence(dc1.dual, seed, tol)
    if g is not None:
        rep.groups["dual"] = g
    if double or reflexive or triple:
        r = is_reflexive(Mh, seed, tol, dc1=dc1)
        dc2 = r.chain[1]
        rep.signatures["double_dual"] = list(dc2.signature)
        rep.residuals.update({"double_dual." + k.removeprefix("dual."): v
                              for k, v in dc2.residuals.items()})
        if reflexive or double:
            rep.verdicts["reflexive_canonical"] = r.canonical
            rep.verdicts["reflexive_abstract"] = r.abstract
            rep.verdicts["D_rank"] = r.D_rank
            rep.residuals.update(r.residuals)
        if triple:
            t = is_reflexive(dc1.dual, seed, tol, dc1=dc2)
            rep.signatures["triple_dual"] = list(t.chain[1].signature)
            rep.verdicts["triple_dual"] = t.canonical
            rep.residuals.update({"triple." + k: v for k, v in t.residuals.items()})
    if timing:
        rep.wall_clock_s = round(time.perf_counter() - t0, 3)
    return rep
