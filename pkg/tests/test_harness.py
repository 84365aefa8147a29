from __future__ import annotations

import json
import random

import pytest

from sqbgg.exactla import GF2, QQ, MalformedInputError
from sqbgg.harness import (
    COMPLEX_ONLY,
    SUITES,
    Instance,
    SuiteConfig,
    SuiteMismatchError,
    VerificationReport,
    all_complexes,
    antichains,
    brute_force_complexes,
    check_instance,
    gen_instances,
    random_complex,
    random_cone_complex,
    replay,
    run_suite,
)
from sqbgg.simplicial import SimplicialComplex


def cx(n, facets):
    return SimplicialComplex.from_vertex_lists(n, facets)


@pytest.mark.parametrize("n,count", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)])
def test_antichain_counts(n, count):
    assert sum(1 for _ in antichains(n)) == count
    assert len(all_complexes(n)) == count


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_enumeration_matches_brute_force(n):
    assert {d.faces for d in all_complexes(n)} == brute_force_complexes(n)


def test_all_complexes_are_distinct_and_include_degenerate_states():
    cs = all_complexes(3)
    assert len(set(cs)) == len(cs)
    assert SimplicialComplex.void(3) in cs
    assert SimplicialComplex.irrelevant(3) in cs
    assert SimplicialComplex.simplex(3) in cs


def test_exhaustive_refused_above_bound():
    with pytest.raises(MalformedInputError):
        SuiteConfig("bcp", n_max=5)
    SuiteConfig("bcp", n_max=5, generator="random")


@pytest.mark.parametrize("kw", [
    {"suite": "nope"},
    {"suite": "bcp", "generator": "nope"},
    {"suite": "bcp", "n_min": 3, "n_max": 2},
    {"suite": "bcp", "samples": -1},
])
def test_bad_configs(kw):
    with pytest.raises(MalformedInputError):
        SuiteConfig(**kw)


@pytest.mark.parametrize("suite", sorted(COMPLEX_ONLY))
def test_complex_only_suites_refuse_cones(suite):
    with pytest.raises(SuiteMismatchError):
        SuiteConfig(suite, generator="cone")
    C = random_cone_complex(2, random.Random(1), QQ)
    with pytest.raises(SuiteMismatchError):
        check_instance(suite, Instance("sq-complex", 2, QQ, "t", complex=C))


def test_generator_aliases():
    assert SuiteConfig("bcp", generator="random-cone-complex").generator == "cone"
    assert SuiteConfig("bcp", generator="all-complexes").generator == "all"


def test_generation_is_deterministic():
    cfg = SuiteConfig("bcp", n_min=2, n_max=4, samples=15, seed=7, generator="random")
    a = [i.to_dict() for i in gen_instances(cfg)]
    b = [i.to_dict() for i in gen_instances(cfg)]
    assert a == b
    other = [i.to_dict() for i in gen_instances(SuiteConfig("bcp", 2, 4, 15, 8, QQ, "random"))]
    assert a != other


def test_random_complex_covers_degenerate_states():
    rng = random.Random(3)
    seen = [random_complex(3, rng) for _ in range(600)]
    assert any(d.is_void for d in seen)
    assert any(d == SimplicialComplex.irrelevant(3) for d in seen)
    assert len(set(seen)) > 10


@pytest.mark.parametrize("field", [QQ, GF2])
def test_cone_complexes_are_complexes_with_nonzero_maps(field):
    nontrivial = 0
    for k in range(40):
        C = random_cone_complex(3, random.Random(k), field)
        assert C.is_complex()
        nontrivial += any(not d.is_zero() for d in C.diffs)
    assert nontrivial > 20


def test_cone_instances_roundtrip_through_json():
    cfg = SuiteConfig("bcp", 2, 3, 5, 0, QQ, "cone")
    for inst in gen_instances(cfg):
        back = Instance.from_dict(json.loads(json.dumps(inst.to_dict())))
        assert back.to_dict() == inst.to_dict()


def test_instance_from_dict_malformed():
    with pytest.raises(MalformedInputError):
        Instance.from_dict({"kind": "weird"})
    with pytest.raises(MalformedInputError):
        Instance.from_dict({"kind": "complex"})


@pytest.mark.parametrize("suite,delta", [
    ("bcp", cx(3, [[1, 2], [1, 3], [2, 3]])),
    ("homology-duality", cx(4, [[1, 2], [3, 4]])),
    ("main2", SimplicialComplex.simplex(3)),
    ("theoremA", cx(4, [[1, 2], [3, 4]])),
    ("projreg", SimplicialComplex.void(3)),
])
def test_check_instance_examples(suite, delta):
    assert check_instance(suite, Instance("complex", delta.n, QQ, "ex", delta=delta)) == []


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_small_exhaustive(suite):
    rep = run_suite(SuiteConfig(suite, n_min=0, n_max=2, field=GF2))
    assert rep.ok, rep.failures
    assert rep.checked == 2 + 3 + 6


@pytest.mark.parametrize("suite", sorted(set(SUITES) - COMPLEX_ONLY))
def test_every_module_suite_passes_on_cones(suite):
    rep = run_suite(SuiteConfig(suite, n_min=1, n_max=3, samples=6, seed=5, generator="cone"))
    assert rep.ok, rep.failures


def test_bcp_exhaustive_n3():
    rep = run_suite(SuiteConfig("bcp", n_max=3))
    assert rep.ok and rep.checked == 2 + 3 + 6 + 20


def test_report_shape_and_timing_flag():
    rep = run_suite(SuiteConfig("projreg", n_max=1))
    d = rep.to_dict(timing=False)
    assert set(d) == {"suite", "generator", "field", "checked", "failures", "seed", "elapsed_ms"}
    assert d["elapsed_ms"] is None
    assert isinstance(rep.to_dict(timing=True)["elapsed_ms"], float)


def test_failures_are_reported_and_replayable(monkeypatch):
    import sqbgg.harness as h

    # break one witness check to exercise the failure path
    monkeypatch.setitem(h._S_SUITES, "projreg", lambda C, ck, label: ck.expect("forced", 0, 1))
    rep = run_suite(SuiteConfig("projreg", n_max=1))
    assert not rep.ok and len(rep.failures) == rep.checked
    f = json.loads(json.dumps(rep.failures[0]))
    assert f["witness"] and replay(f, "projreg")
    monkeypatch.undo()
    assert replay(f, "projreg") == []


def test_verification_report_ok():
    assert VerificationReport("bcp", 0, [], 0).ok
    assert not VerificationReport("bcp", 1, [{"x": 1}], 0).ok
