import pytest
from hypothesis import given, settings, strategies as st

from rigidinv.fingerprint import pair_fingerprint
from rigidinv.fixtures import DE24, NAMED_SITES, SEE1_MOVE, SEE2_MOVE, SEO2_MOVE, SO1121, pair
from rigidinv.moves import (
    NAMED,
    MoveDescriptor,
    PatternMismatch,
    Site,
    all_d_descriptors,
    all_s_descriptors,
    apply_named_example,
    apply_te_to,
    block_config,
    compose,
    decode,
    decompose_interchange,
    enumerate_d_moves,
    enumerate_s_moves,
    enumerate_te_to,
    interchange,
    position,
    split_paths,
    splitting_sites,
    tokens_of,
    transfer,
    verify_splitting,
)
from rigidinv.partitions import add_partitions, from_rows, transpose
from rigidinv.rigid import FAMILIES, RigidPair, TheoryKind, enumerate_rigid_pairs, is_valid_pair
from rigidinv.symbol import pair_symbol, symbols_equal

SMALL = [p for f in FAMILIES for n in range(1, 6) for p in enumerate_rigid_pairs(TheoryKind(f, n))]


def test_descriptor_families():
    assert len({d.name for d in all_s_descriptors()}) == 32
    assert len({d.name for d in all_d_descriptors()}) == 50
    assert MoveDescriptor("S", "o", (1, 1, 2, 1)).name == "So1121"
    assert MoveDescriptor("D", "e", source=2, target=4).name == "De24"


def test_block_configs():
    # C: rows (1,2) form a unit
    assert [block_config(1, 2, 0), block_config(2, 3, 0), block_config(1, 3, 0), block_config(2, 4, 0), block_config(1, 4, 0)] == [1, 2, 3, 4, 5]


def test_decode_inverts_tokens():
    for p in SMALL:
        for comp in (p.first, p.second):
            t = {"B": -1, "C": 0, "D": 1}[p.theory.family]
            assert decode(tokens_of(comp, t)[:-1], t) == comp


def test_identity_site_is_not_a_move():
    p = SMALL[0]
    assert transfer(p, Site())[0] == p


def test_bad_site():
    with pytest.raises(PatternMismatch):
        transfer(SMALL[0], Site((99,), ()))


def test_moves_preserve_invariants():
    n = 0
    for p in SMALL:
        for o in enumerate_s_moves(p) + enumerate_d_moves(p):
            n += 1
            assert o.symbol_preserved and o.fingerprint_preserved and o.blocks_agree, o.to_json()
            assert is_valid_pair(o.result)
    assert n > 300


def test_empty_move_lists():
    # an empty lambda'' has no row to send back
    assert enumerate_s_moves(pair("B", 2, (2, 2, 1), ())) == []
    assert enumerate_d_moves(pair("B", 2, (1,), (1, 1, 1, 1))) == []


def test_so1121_instance():
    p, site = SO1121
    names = {o.descriptor.name for o in enumerate_s_moves(p) if o.site == site}
    assert "So1121" in names
    o = next(o for o in enumerate_s_moves(p) if o.descriptor.name == "So1121")
    assert o.symbol_preserved and o.fingerprint_preserved


def test_de24_instance():
    p, site = DE24
    o = next(o for o in enumerate_d_moves(p) if o.site == site)
    assert o.descriptor.name == "De24"
    assert o.symbol_preserved and o.fingerprint_preserved


@pytest.mark.parametrize("which", NAMED)
def test_named_smallest(which):
    p, site = NAMED_SITES[which]
    o = apply_named_example(p, which, site)
    assert o.result != p
    assert o.symbol_preserved and o.fingerprint_preserved
    if which == "Seo2":
        assert o.result.first.total + o.result.second.total == p.first.total + p.second.total
    else:
        assert add_partitions(o.result.first, o.result.second) == add_partitions(p.first, p.second)
        assert apply_named_example(o.result, which, site).result == p


@pytest.mark.parametrize("fx", [SEE1_MOVE, SEE2_MOVE, SEO2_MOVE])
def test_named_fixtures(fx):
    o = apply_named_example(fx.before, fx.name, fx.site)
    assert o.result == fx.after
    assert pair_fingerprint(fx.before) == pair_fingerprint(fx.after)


def test_named_mismatch():
    p, site = NAMED_SITES["See1"]
    with pytest.raises(PatternMismatch):
        apply_named_example(p, "See2", site)
    with pytest.raises(ValueError):
        apply_named_example(p, "Xyz", site)


def _mirror_seo2(p):
    """Second even row of lambda' grows by one, first odd row of lambda'' shrinks by one."""
    t = {"B": -1, "C": 0, "D": 1}[p.theory.family]
    r1, r2 = list(transpose(p.first).parts), list(transpose(p.second).parts)
    for i, a in enumerate(r1, 1):
        for j, b in enumerate(r2, 1):
            if a % 2 or b % 2 == 0 or position(i, t) != 2 or position(j, t) != 1 or b == a + 1:
                continue
            n1, n2 = r1[:], r2[:]
            n1[i - 1], n2[j - 1] = b - 1, a + 1
            if any(x < y for x, y in zip(n1, n1[1:])) or any(x < y for x, y in zip(n2, n2[1:])):
                continue
            q = RigidPair(from_rows([x for x in n1 if x]), from_rows(n2), p.theory)
            if is_valid_pair(q):
                yield q


def test_seo2_second_variant_breaks_symbol():
    seen = 0
    for f in ("C", "D"):
        for p in enumerate_rigid_pairs(TheoryKind(f, 10)):
            for q in _mirror_seo2(p):
                seen += 1
                assert not symbols_equal(pair_symbol(p), pair_symbol(q))
    assert seen > 0


def test_te_to():
    found = {o.descriptor.name for p in SMALL for o in enumerate_te_to(p)}
    assert found == {"TE", "TO"}
    for p in SMALL:
        for o in enumerate_te_to(p):
            assert o.symbol_preserved
    with pytest.raises(PatternMismatch):
        apply_te_to(SMALL[0], "TE", Site((1,), (1,)))


def test_splitting_rank5_is_vacuous_and_rank9_holds():
    assert not any(True for p in SMALL for _ in splitting_sites(p))
    seen = 0
    for f in FAMILIES:
        for n in range(6, 10):
            for p in enumerate_rigid_pairs(TheoryKind(f, n)):
                for site in splitting_sites(p):
                    paths = split_paths(p, *site)
                    if paths["direct"] is None:
                        continue
                    seen += 1
                    assert verify_splitting(p, *site)
                    assert paths["ac_then_bd"] == paths["bd_then_ac"] == paths["direct"]
    assert seen > 0


def test_splitting_order_checked():
    p = pair("C", 8, (2, 2, 2, 2, 1, 1), (2, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        verify_splitting(p, 1, 1, 1, 1)


def test_interchange_decompositions():
    proper = 0
    for p in SMALL:
        n1, n2 = len(transpose(p.first)), len(transpose(p.second))
        for a in range(1, n1 + 1):
            for x in range(1, n2 + 1):
                span1, span2 = (a, min(n1, a + 1)), (x, min(n2, x + 1))
                if span1 == (1, n1) and span2 == (1, n2):
                    continue
                try:
                    goal = interchange(p, span1, span2)
                except PatternMismatch:
                    continue
                steps = decompose_interchange(p, span1, span2)
                assert compose(p, steps) == goal
                assert all(s.descriptor.kind in ("S", "D") for s in steps)
                proper += 1
    assert proper > 20


def test_interchange_of_equal_blocks_is_empty():
    p, site = NAMED_SITES["Ie2"]
    q = pair("C", 10, (2, 2, 2, 2, 1, 1), (2, 2, 2, 2, 1, 1))
    assert decompose_interchange(q, (1, 2), (1, 2)) == []


def test_ie2_as_steps():
    p, site = NAMED_SITES["Ie2"]
    goal = apply_named_example(p, "Ie2", site).result
    steps = decompose_interchange(p, (1, 2), (1, 2))
    assert steps and compose(p, steps) == goal


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_any_transfer_keeps_symbol(p, data):
    n1, n2 = len(transpose(p.first)) + 1, len(transpose(p.second)) + 1
    take1 = data.draw(st.sets(st.integers(1, n1), max_size=2))
    take2 = data.draw(st.sets(st.integers(1, n2), max_size=2))
    try:
        q, _ = transfer(p, Site(tuple(sorted(take1)), tuple(sorted(take2))))
    except PatternMismatch:
        return
    assert symbols_equal(pair_symbol(p), pair_symbol(q))
