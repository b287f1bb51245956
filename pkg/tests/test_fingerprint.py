import pytest
from hypothesis import given, settings, strategies as st

from rigidinv.fingerprint import (
    AssemblyError,
    Fingerprint,
    MuEntry,
    MuTrace,
    assemble,
    condition_ii_subsumed,
    full_trace,
    mu_blocks,
    mu_formula,
    mu_trace,
    pair_fingerprint,
    partition_trace,
    tau,
    trace_csv,
    trace_digest,
)
from rigidinv.fixtures import SEE1_MOVE, SEE2_MOVE, SEO2_MOVE, SEO2_TABLE, calibrate, elected_sign_rule, segment_fingerprint
from rigidinv.partitions import has_no_gaps, make_partition
from rigidinv.rigid import FAMILIES, TheoryKind, enumerate_rigid_pairs

ALL_PAIRS = [p for f in FAMILIES for n in range(1, 7) for p in enumerate_rigid_pairs(TheoryKind(f, n))]


def P(*xs):
    return make_partition(xs)


def test_mu_formula_by_hand():
    # signs (b): p(1) = (-1)^5 = -1, p(3) = (-1)^12 = +1, p(4) = (-1)^13 = -1
    assert mu_formula(P(5, 4, 3, 1)) == [4, 4, 4, 0]
    # run of 3s: only the last one moves, p(3) = (-1)^9
    assert mu_formula(P(3, 3, 3)) == [3, 3, 2]
    assert mu_formula(P(2, 2)) == [2, 2]


def test_mu_sign_rules_differ():
    assert mu_formula(P(5, 4, 3, 1), "a") == [4, 4, 2, 2]
    with pytest.raises(KeyError):
        mu_formula(P(1), "z")


def test_seo2_table_trace():
    trace = full_trace(SEO2_TABLE.before)
    e = trace.entries
    assert [x.lambda_i for x in e] == [5, 4, 3, 1]
    assert [x.mu_i for x in e][:3] == [4, 4, 4]
    assert [x.cond_i for x in e][:3] == [True, False, True]
    assert [x.cond_ii for x in e][:3] == [True, True, False]
    assert tau(trace, 4) == -1
    assert pair_fingerprint(SEO2_TABLE.before) == Fingerprint(P(), P(2, 2, 2))


def test_seo2_right_side_flags():
    trace = full_trace(SEO2_MOVE.after)
    head = trace.entries[:3]
    assert all(x.cond_iii and not x.cond_i and not x.cond_ii for x in head)
    assert segment_fingerprint(SEO2_MOVE, "b", "after") == Fingerprint(P(), P(2, 2, 2))


@pytest.mark.parametrize("fx", [SEE1_MOVE, SEE2_MOVE])
def test_see_runs_unchanged(fx):
    for which in ("before", "after"):
        assert segment_fingerprint(fx, "b", which) == Fingerprint(P(5), P())


def test_tau_domain():
    trace = full_trace(SEO2_TABLE.before)
    with pytest.raises(ValueError):
        tau(trace, 3)


def test_assemble_rejects_unpaired():
    trace = MuTrace((MuEntry(1, 3, 3, 3, 0),), "formula")
    with pytest.raises(AssemblyError, match="unpairable"):
        assemble(trace)


def test_formula_equals_rows_everywhere():
    for p in ALL_PAIRS:
        assert mu_trace(p).mu == mu_blocks(p).mu, p


def test_block_labels():
    labels = mu_blocks(SEO2_TABLE.before).blocks
    assert labels and set(labels) <= {"I", "II", "III"}
    c_pair = enumerate_rigid_pairs(TheoryKind("C", 3))[0]
    assert "I" not in mu_blocks(c_pair).blocks


def test_box_accounting():
    for p in ALL_PAIRS:
        fp = pair_fingerprint(p)
        mu_total = sum(mu_trace(p).mu)
        assert 2 * fp.alpha.total + 2 * fp.beta.total == mu_total


def test_method_agreement():
    for p in ALL_PAIRS:
        assert pair_fingerprint(p, "formula") == pair_fingerprint(p, "blocks")


def test_calibration_elects_one_rule():
    table = calibrate(4)
    assert [r for r, v in table.items() if v["accepted"]] == ["b"]
    assert elected_sign_rule(4) == "b"


def test_trace_export_stable():
    t = full_trace(SEO2_TABLE.before)
    text = trace_csv(t)
    assert text.splitlines()[0] == "i,lambda_i,mu_i,lambda1_i,lambda2_i,(i),(ii),(iii),tau"
    assert text.splitlines()[1] == "1,5,4,2,3,y,y,,-1"
    assert trace_digest(t) == trace_digest(full_trace(SEO2_TABLE.before))


def test_condition_ii_redundant_for_pairs():
    for p in ALL_PAIRS:
        assert pair_fingerprint(p) == pair_fingerprint(p, use_condition_ii=False)


no_gap_partitions = st.lists(st.integers(0, 1), min_size=1, max_size=12).map(
    # build parts from the top down, each step keeping or dropping by one
    lambda steps: make_partition(_descend(steps))
)


def _descend(steps):
    parts = [len(steps)]
    for s in steps:
        nxt = parts[-1] - s
        if nxt < 1:
            break
        parts.append(nxt)
    return parts


@settings(max_examples=300)
@given(no_gap_partitions)
def test_i_covers_ii_without_gaps(lam):
    assert has_no_gaps(lam, virtual_zero=False)
    assert condition_ii_subsumed(partition_trace(lam))


def test_ii_matters_with_gaps():
    # a gap lets (ii) flag a value that (i) never touches
    # (5,2): mu = (4,2), (ii) fires on the 2 at index 2, (i) only on the 4
    trace = partition_trace(P(5, 2))
    assert trace.mu == (4, 2)
    assert not condition_ii_subsumed(trace)
