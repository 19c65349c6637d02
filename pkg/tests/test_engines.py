import random
from dataclasses import replace

import pytest

from helpers import A, B, CURATED, E3, Z, corpus, heis, random_ut
from nilident.engines import (CONE, FACET, IDENTITY, ORDER_EXTENSION, SUBGROUP, EngineMismatchError,
                              IdentityWord, NonInvertibleWitness, SeparatingFunctional,
                              StabilizedFullSupport, decide, decide_identity, decide_identity_cone,
                              decide_identity_facet, decide_left_order_extension, decide_subgroup)
from nilident.nilpotent import GeneratorSystem
from nilident.verify import verify_decision

ENGINES = (FACET, CONE)


@pytest.mark.parametrize("name", sorted(CURATED))
@pytest.mark.parametrize("engine", ENGINES)
def test_curated_answers(name, engine):
    s, ident, sub = CURATED[name]
    assert decide_identity(s, engine).answer is ident
    assert decide_subgroup(s, engine).answer is sub
    assert decide_left_order_extension(s, engine).answer is (not ident)


@pytest.mark.parametrize("engine", ENGINES)
def test_ab_is_separated_by_sum(engine):
    s, _, _ = CURATED["ab"]
    d = decide_identity(s, engine)
    assert d.certificate == SeparatingFunctional((1, 1), 1, 0, ("a", "b"))
    o = decide_left_order_extension(s, engine)
    assert o.answer and o.certificate.functional == (1, 1)


def test_abc_facet_interior_and_cone_witness():
    s, _, _ = CURATED["abc"]
    f = decide_identity_facet(s)
    assert f.rounds == 1 and isinstance(f.certificate, StabilizedFullSupport)
    c = decide_identity_cone(s)
    assert c.rounds == 1 and c.trace[0].cone_witness == (1, 1, 1)
    assert c.certificate.combination == (1, 1, 1)


@pytest.mark.parametrize("engine", ENGINES)
def test_aab_shrinks_then_stabilizes(engine):
    s, _, _ = CURATED["aab"]
    d = decide_identity(s, engine)
    assert [r.surviving_labels for r in d.trace] == [("a", "ainv", "b"), ("a", "ainv")]
    assert d.trace[0].excluded == (("b", (0, 1)),)
    g = decide_subgroup(s, engine)
    assert g.certificate == NonInvertibleWitness("b", (0, 1), 0)


def test_facet_boundary_round_records_active_facet():
    s, _, _ = CURATED["aab"]
    d = decide_identity_facet(s)
    assert any(h.normal == (0, 1) and h.offset == 0 for h in d.trace[0].facets)


@pytest.mark.parametrize("engine", ENGINES)
def test_central_element(engine):
    s, _, _ = CURATED["z"]
    d = decide_identity(s, engine)
    assert d.certificate == SeparatingFunctional((1,), 1, 0, ("z",))


@pytest.mark.parametrize("engine", ENGINES)
def test_degenerate_conventions(engine):
    empty = heis()
    assert decide_identity(empty, engine).certificate is None
    assert decide_subgroup(empty, engine).answer is False
    d = decide_identity(heis(("a", A), ("e", E3)), engine)
    assert d.answer and d.certificate == IdentityWord(("e",))
    assert decide_subgroup(heis(("e", E3), ("f", E3)), engine).answer
    assert not decide_subgroup(heis(("a", A),), engine).answer


def test_decide_both_and_unknown_engine():
    s, _, _ = CURATED["abc"]
    out = decide(IDENTITY, s)
    assert [d.engine for d in out] == [FACET, CONE]
    assert len(decide(SUBGROUP, s, CONE)) == 1
    with pytest.raises(ValueError):
        decide_identity(s, "simplex")


def test_mismatch_raises(monkeypatch):
    from nilident import engines
    s, _, _ = CURATED["abc"]
    real = engines.decide_identity

    def lying(s, engine=FACET):
        d = real(s, engine)
        return d if engine == FACET else replace(d, answer=not d.answer)

    monkeypatch.setitem(engines._DECIDERS, IDENTITY, lying)
    with pytest.raises(EngineMismatchError):
        decide(IDENTITY, s)


def _answers(s, engine=FACET):
    return decide_identity(s, engine).answer, decide_subgroup(s, engine).answer


SAMPLE = corpus(150, seed=99)


@pytest.mark.parametrize("idx", range(0, 150, 3))
def test_engines_agree_and_certificates_verify(idx):
    s = SAMPLE[idx]
    for problem in (IDENTITY, SUBGROUP, ORDER_EXTENSION):
        for d in decide(problem, s):
            assert verify_decision(s, d) == []


@pytest.mark.parametrize("idx", range(1, 150, 3))
def test_surviving_sets_shrink_strictly(idx):
    s = SAMPLE[idx]
    for engine in ENGINES:
        d = decide_identity(s, engine)
        assert d.rounds <= max(len(s), 1)
        sizes = [len(r.surviving_labels) for r in d.trace]
        assert all(a > b for a, b in zip(sizes, sizes[1:]))


def test_invariance_under_permutation_duplication_and_conjugation():
    rng = random.Random(11)
    for s in corpus(60, seed=5):
        expected = _answers(s)
        gens = list(s.gens)
        perm = gens[:]
        rng.shuffle(perm)
        assert _answers(GeneratorSystem.of(s.m, perm)) == expected
        dup = gens + [rng.choice(gens)]
        assert _answers(GeneratorSystem.of(s.m, dup)) == expected
        u = random_ut(rng, s.m)
        conj = [u * g * u.inverse() for g in gens]
        assert _answers(GeneratorSystem.of(s.m, conj), CONE) == expected


def test_identity_word_found_implies_yes():
    from nilident.oracle import find_identity_word
    for s in SAMPLE[:60]:
        if find_identity_word(s, 6) is not None:
            assert decide_identity(s).answer


def test_subgroup_no_witness_never_in_identity_word():
    from nilident.oracle import find_identity_word
    for s in SAMPLE[:80]:
        d = decide_subgroup(s)
        if d.answer or not s.gens:
            continue
        w = find_identity_word(s, 6)
        if w is not None:
            assert d.certificate.label not in w


@pytest.mark.parametrize("engine", ENGINES)
def test_central_generator_survives_to_second_round(engine):
    # pi(z) = 0 at round 0, so a and b are dropped and z is separated alone
    s = heis(("a", A), ("b", B), ("z", Z))
    d = decide_identity(s, engine)
    assert not d.answer
    assert [r.surviving_labels for r in d.trace] == [("a", "b", "z"), ("z",)]
    assert d.certificate == SeparatingFunctional((1,), 1, 1, ("z",))
    o = decide_left_order_extension(s, engine)
    assert o.answer and isinstance(o.certificate, NonInvertibleWitness)
    assert verify_decision(s, o) == []
