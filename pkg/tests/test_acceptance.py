"""Acceptance gate: nine criteria, one PASS/FAIL line each in the terminal summary."""
import json
import time

import numpy as np
import pytest

from conftest import algebra_for, dual_for
from oracles import character_group_table, element_orders, irrep_dims

from hopfduality.algebra import DEFAULT_SEED
from hopfduality.cli import main
from hopfduality.duality import (de_identity, dual_morphism, dualize, grouplike_group,
                                 is_reflexive, reconstruct_group, triple_dual_check)
from hopfduality.groups import (FLEET_SPECS, cyclic, function_algebra, group_from_spec,
                                group_vn_algebra, hopf_from_spec, is_isomorphic, pullback_morphism, symmetric,
                                twisted_hopf, two_element_monoid)
from hopfduality.hopf import HopfMorphism, compose, verify_hopf, verify_morphism
from hopfduality.predual import build_predual
from hopfduality.report import duality_report
from hopfduality.reps import (build_generator, extract_rep, generator_candidate, is_standard,
                              predual_reps)

TOL = 1e-9
TWISTED = (2, 3, 5, 6)


def _name(spec):
    return json.dumps(spec, sort_keys=True)


@pytest.fixture(scope="module")
def fleet_duals():
    """Fresh (uncached) dual constructions of both sides over the fleet, with wall-clock."""
    t0 = time.perf_counter()
    out = {}
    for spec in FLEET_SPECS:
        G = group_from_spec(spec)
        F = function_algebra(G)
        W = group_vn_algebra(G, DEFAULT_SEED)
        dF, dW = dualize(F, DEFAULT_SEED, TOL), dualize(W, DEFAULT_SEED, TOL)
        out[_name(spec)] = {
            "G": G, "F": F, "W": W, "dF": dF, "dW": dW,
            "grouplikes": grouplike_group(dF.dual, DEFAULT_SEED, TOL),
            "spectrum": reconstruct_group(dW.dual, DEFAULT_SEED, TOL),
        }
    return out, time.perf_counter() - t0


def test_criterion_1_axiom_suite(acceptance):
    with acceptance(1) as rec:
        t0 = time.perf_counter()
        failures = {}
        for spec in FLEET_SPECS:
            G = group_from_spec(spec)
            for side, Mh in (("function", function_algebra(G)),
                             ("groupvn", group_vn_algebra(G, DEFAULT_SEED))):
                r = verify_hopf(Mh, TOL)
                if not r.passed or r.max_residual >= TOL:
                    failures[(G.name, side)] = r.failures()
        worst = 0.0
        for n in TWISTED:
            r = verify_hopf(twisted_hopf(n), TOL)
            worst = max(worst, r.max_residual)
            if not r.passed:
                failures[("twisted", n)] = r.failures()
        elapsed = time.perf_counter() - t0
        rec.detail = f"{2 * len(FLEET_SPECS) + len(TWISTED)} algebras in {elapsed:.1f} s"
        assert not failures, failures
        assert elapsed < 60.0


def test_criterion_2_duality_table(acceptance, fleet_duals):
    with acceptance(2) as rec:
        data, elapsed = fleet_duals
        for key, d in data.items():
            G = d["G"]
            degrees = irrep_dims(G.table)
            assert tuple(sorted(d["dF"].signature)) == degrees, key
            assert tuple(sorted(d["dF"].signature)) == tuple(sorted(d["W"].signature)), key
            assert is_isomorphic(d["grouplikes"], G), key
            assert tuple(d["dW"].signature) == (1,) * G.order, key
            assert is_isomorphic(d["spectrum"], G), key
        s3 = data[_name({"type": "sym", "n": 3})]["dF"]
        q8 = data[_name({"type": "quaternion"})]["dF"]
        assert sorted(s3.signature) == [1, 1, 2]
        assert sorted(q8.signature) == [1, 1, 1, 1, 2]
        rec.detail = f"{len(data)} groups, both sides, {elapsed:.1f} s"
        assert elapsed < 120.0


def test_criterion_3_reflexivity(acceptance, fleet_duals):
    with acceptance(3) as rec:
        data, _ = fleet_duals
        worst = 0.0
        for key, d in data.items():
            for side in ("F", "W"):
                r = is_reflexive(d[side], DEFAULT_SEED, TOL, dc1=d["d" + side])
                assert r.canonical, (key, side, r.residuals)
                assert r.D_rank == d[side].dim
                worst = max(worst, max(r.residuals.values()))
        rec.detail = f"max D residual {worst:.1e}"
        assert worst < TOL


def test_criterion_4_pontryagin(acceptance, tmp_path):
    with acceptance(4) as rec:
        checked = []
        for spec in FLEET_SPECS:
            G = group_from_spec(spec)
            if not G.is_abelian():
                continue
            out = tmp_path / f"{G.name}.json"
            assert main(["pontryagin", "--spec", _name(spec), "--out", str(out)]) == 0, G.name
            doc = json.loads(out.read_text())
            R = np.array(doc["reconstructed_cayley"])
            # brute-force character group of G
            assert element_orders(R) == element_orders(character_group_table(G.table)), G.name
            checked.append(G.name)
        for spec in ({"type": "cyclic", "n": 6},
                     {"type": "product", "factors": [{"type": "cyclic", "n": 2},
                                                     {"type": "cyclic", "n": 4}]}):
            G = group_from_spec(spec)
            R = reconstruct_group(dual_for(spec).dual)
            # element orders classify finite abelian groups
            assert element_orders(R.table) == element_orders(G.table)
        rec.detail = f"{len(checked)} abelian groups"


def test_criterion_5_twisted_counterexample(acceptance):
    with acceptance(5) as rec:
        d5 = dualize(twisted_hopf(5))
        assert d5.ideal_dim == 1
        assert d5.dual.dim == 1
        assert not is_reflexive(twisted_hopf(5)).canonical
        assert is_reflexive(twisted_hopf(2)).canonical
        n = 6
        expected = {s for s in range(n) if (2 * s) % n == 0}
        d6 = dualize(twisted_hopf(n))
        found = set()
        for i in d6.partition.standard:
            z = complex(d6.partition.reps[i].matrices[1, 0, 0])
            found.add(int(round(np.angle(z) / (2 * np.pi / n))) % n)
        assert len(d6.partition.reps) == n
        assert found == expected == {0, 3}
        rec.detail = "Z5: M_*0 and dual of dim 1; Z6 standard s = {0, 3}"


def _standard_pool():
    pool = []
    for spec in FLEET_SPECS:
        for side in ("function", "groupvn"):
            Mh, _ = algebra_for(spec, side)
            P = build_predual(Mh)
            for r in predual_reps(P, DEFAULT_SEED):
                pool.append((f"{_name(spec)}/{side}", r))
    return pool


def test_criterion_6_standard_iff_generator(acceptance):
    with acceptance(6) as rec:
        pool = _standard_pool()
        rng = np.random.default_rng(20)
        picks = rng.choice(len(pool), size=24, replace=False)
        worst = 0.0
        for i in picks:
            label, r = pool[i]
            assert is_standard(r, TOL).standard, label
            gen = build_generator(r, TOL)
            for k in ("unitarity", "pairing", "commutant"):
                assert gen.residuals[k] < TOL, (label, k, gen.residuals[k])
                worst = max(worst, gen.residuals[k])
            back, fit = extract_rep(gen)
            assert fit < TOL and np.abs(back.matrices - r.matrices).max() < TOL, label
        nonstandard = 0
        for Mh in [twisted_hopf(n) for n in (3, 5, 6)] + [two_element_monoid()]:
            for r in predual_reps(build_predual(Mh)):
                st = is_standard(r, TOL)
                if st.standard:
                    continue
                nonstandard += 1
                assert st.residual > 1e-3
                assert generator_candidate(r).residuals["unitarity"] > 1e-3
        assert nonstandard == 2 + 4 + 4 + 1
        rec.detail = (f"{len(picks)} standard irreducibles (max residual {worst:.1e}), "
                      f"{nonstandard} non-standard")


def test_criterion_7_triple_dual(acceptance):
    with acceptance(7):
        for Mh in (function_algebra(symmetric(3)), group_vn_algebra(cyclic(6)), twisted_hopf(5)):
            r = triple_dual_check(Mh, DEFAULT_SEED, TOL)
            assert r.canonical, r.residuals
            # the report is about M^, so compare M^^^ with M^
            assert sorted(r.signatures["double_dual"]) == sorted(r.signatures["M"])


def test_criterion_8_functor_laws(acceptance):
    with acceptance(8) as rec:
        G8, G4, G2 = cyclic(8), cyclic(4), cyclic(2)
        F8, F4, F2 = function_algebra(G8), function_algebra(G4), function_algebra(G2)
        f = pullback_morphism(F4, F8, np.arange(8) % 4, G8, G4)
        g = pullback_morphism(F2, F4, np.arange(4) % 2, G4, G2)
        d8, d4, d2 = dualize(F8), dualize(F4), dualize(F2)
        fg_hat = dual_morphism(compose(f, g), d2, d8)
        reversed_ = compose(dual_morphism(g, d2, d4), dual_morphism(f, d4, d8))
        r_comp = np.abs(fg_hat.phi - reversed_.phi).max()
        assert r_comp < TOL
        assert verify_morphism(fg_hat, TOL).passed
        ident = dual_morphism(HopfMorphism.identity(F4), d4, d4)
        assert np.abs(ident.phi - np.eye(d4.dual.dim)).max() < TOL
        de = de_identity(function_algebra(symmetric(3)), DEFAULT_SEED, TOL)
        assert de.holds and de.residual < TOL
        rec.detail = f"reversal {r_comp:.1e}, D o E - id {de.residual:.1e}"


def test_criterion_9_determinism(acceptance, tmp_path):
    with acceptance(9):
        cases = [({"type": "sym", "n": 3}, "function"), ({"type": "quaternion"}, "groupvn"),
                 ({"type": "twisted", "n": 6}, "function")]
        for spec, side in cases:
            Mh, _ = algebra_for(spec, side)
            a = duality_report(Mh, {"spec": spec, "side": side}, DEFAULT_SEED, TOL, double=True)
            b = duality_report(Mh, {"spec": spec, "side": side}, DEFAULT_SEED, TOL, double=True)
            assert a.to_json() == b.to_json()
            Mh2, _ = hopf_from_spec(spec, side, 12345)
            c = duality_report(Mh2, {"spec": spec, "side": side}, 12345, TOL, double=True)
            assert c.signatures == a.signatures
            assert c.verdicts == a.verdicts
            paths = [tmp_path / f"{i}.json" for i in range(2)]
            for p in paths:
                assert main(["dualize", "--spec", _name(spec), "--side", side, "--double",
                             "--out", str(p)]) == 0
            assert paths[0].read_bytes() == paths[1].read_bytes()
