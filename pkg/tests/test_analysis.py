import random
from math import lcm

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import exprs, perms
from cantorkit.analysis import (
    EventuallyPeriodic,
    Witness,
    ep_equal,
    ep_normalize,
    ep_of_term,
    find_disagreement,
    membership_scan,
    verify_escape,
    witnesses_from_csv,
    witnesses_to_csv,
)
from cantorkit.analysis.periodic import equality_horizon, minimal_period
from cantorkit.analysis.quasilinear import abstract_seq
from cantorkit.corpus import builder_corpus, codec_corpus
from cantorkit.diagonal import build_Y, diag_classical, diag_perm, diag_perm_row, diag_perm_transversal, z_direct
from cantorkit.enumerations import BuilderSpec, build_enumeration, interleave, prepend
from cantorkit.errors import CantorkitError, NotEventuallyPeriodic
from cantorkit.permutations import transposition, unrank_perm
from cantorkit.sdl import parse_enum, parse_seq, prefix, row
from cantorkit.sdl.evaluate import seq_fn
from cantorkit.sdl.terms import SeqExpr, SeqTerm

CEX = build_enumeration("counterexample")
HASH = build_enumeration("hashrows")
ZSEQ, OSEQ = parse_seq("0"), parse_seq("1")


def test_find_disagreement():
    assert find_disagreement(ZSEQ, OSEQ, 10) == 0
    s = parse_seq("i mod 3")
    assert find_disagreement(s, s, 100) is None
    for e in builder_corpus():
        for k in range(20):
            pos = find_disagreement(diag_classical(e), row(e, k), k + 1)
            assert pos is not None and pos <= k
    with pytest.raises(CantorkitError):
        find_disagreement(s, s, 0)


def test_verify_escape_examples():
    for e in builder_corpus():
        ws = verify_escape(e, diag_classical(e), 64, 64)
        assert [w.kind for w in ws] == ["disagreement"] * 64
        assert all(w.position <= w.row for w in ws)
    ident = build_enumeration("identity")
    assert [w.position for w in verify_escape(ident, diag_classical(ident), 64, 64)] == list(range(64))
    ws = verify_escape(CEX, diag_perm_row(CEX, transposition(0, 1)), 8, 512)
    assert ws[0].kind == "unknown"
    p = unrank_perm(33)
    for e in builder_corpus():
        y, g = seq_fn(diag_perm_transversal(e, p)), e
        for w in verify_escape(e, diag_perm_transversal(e, p), 64, 512):
            assert w.kind == "disagreement" and w.position <= max(p(w.row), w.row) + 64
            assert y(p(w.row)) != seq_fn(row(g, w.row))(p(w.row))
    with pytest.raises(CantorkitError):
        verify_escape(CEX, ZSEQ, 10, 5)


def test_ep_examples():
    assert ep_of_term(row(build_enumeration("zeros"), 3)) == EventuallyPeriodic((), (0,))
    assert ep_of_term(row(build_enumeration("binary_naturals"), 5)) == EventuallyPeriodic((1, 0, 1), (0,))
    with pytest.raises(NotEventuallyPeriodic):
        ep_of_term(row(HASH, 0))
    assert ep_normalize((), (0, 1, 0, 1)) == EventuallyPeriodic((), (0, 1))
    assert ep_normalize((1,), (1,)) == EventuallyPeriodic((), (1,))
    assert ep_normalize((1, 0), (0,)) == EventuallyPeriodic((1,), (0,))
    assert ep_equal(EventuallyPeriodic((0, 1), (0,)), EventuallyPeriodic((0, 1, 0), (0, 0)))
    assert not ep_equal(EventuallyPeriodic((), (0,)), EventuallyPeriodic((), (1,)))


def test_ep_refusals():
    for text in ("parity(i * i mod 3)", "bit(i * i, 2)", "row(hashrows(5), 2)", "diag(hashrows(0))"):
        with pytest.raises(NotEventuallyPeriodic):
            ep_of_term(parse_seq(text))


def test_ep_closure_forms():
    dp = build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 1, 1), (1, 0, 0))))
    p = unrank_perm(40)
    for variant in ("row", "transversal"):
        form = ep_of_term(diag_perm(dp, p, variant))
        assert len(form.pre) <= p.bound
        assert 6 % len(form.per) == 0
    pp = prepend(parse_seq("1"), dp)
    assert len(ep_of_term(row(pp, 0)).per) == 1
    il = interleave(dp, build_enumeration("ones"))
    assert ep_of_term(diag_classical(il)).per


def ep_terms():
    out = []
    bases = [e for e in builder_corpus() if e != HASH] + [CEX]
    for e in bases:
        out += [diag_classical(e), z_direct(e), row(e, 3), row(e, 6)]
        for n in (1, 5, 30):
            out += [diag_perm(e, unrank_perm(n), "row"), diag_perm(e, unrank_perm(n), "transversal")]
    return out


def test_ep_soundness_on_corpus():
    count = 0
    for t in ep_terms() + [t for t in codec_corpus() if isinstance(t, SeqTerm)]:
        try:
            form = ep_of_term(t)
        except NotEventuallyPeriodic:
            continue
        count += 1
        n = len(form.pre) + 2 * len(form.per) + 64
        assert form.prefix(n) == prefix(t, n), t
    assert count > 50


@given(exprs(("i",)))
def test_ep_soundness_property(e):
    t = SeqExpr(e)
    try:
        form = ep_of_term(t)
    except NotEventuallyPeriodic:
        return
    n = len(form.pre) + 2 * len(form.per) + 64
    assert form.prefix(n) == prefix(t, n)


@given(exprs(("i",), max_leaves=8))
def test_abstract_values_match_evaluation(e):
    from cantorkit.analysis.quasilinear import abstract_expr
    from cantorkit.sdl import eval_expr

    try:
        f = abstract_expr(e, "i")
    except NotEventuallyPeriodic:
        return
    for i in list(range(60)) + [f.start + 997, f.start + 12345]:
        assert f(i) == eval_expr(e, {"i": i})


bits = st.lists(st.integers(0, 1), max_size=8)


@given(bits, bits.filter(bool))
def test_normalize_idempotent_and_denotation_preserving(pre, per):
    a = ep_normalize(pre, per)
    assert ep_normalize(a.pre, a.per) == a
    raw = EventuallyPeriodic(tuple(pre), tuple(per))
    assert a.prefix(40) == raw.prefix(40)
    assert minimal_period(a.per) == len(a.per)


@given(bits, bits.filter(bool), bits, bits.filter(bool))
def test_ep_equal_matches_pointwise(p1, q1, p2, q2):
    a, b = EventuallyPeriodic(tuple(p1), tuple(q1)), EventuallyPeriodic(tuple(p2), tuple(q2))
    n = equality_horizon(a, b)
    assert ep_equal(a, b) == (a.prefix(n) == b.prefix(n))
    # beyond the bound nothing new can appear
    assert (a.prefix(n) == b.prefix(n)) == (a.prefix(3 * n + 50) == b.prefix(3 * n + 50))


def test_membership_scan_examples():
    ident = build_enumeration("identity")
    assert all(w.kind == "disagreement" for w in membership_scan(diag_classical(ident), ident, 64, 64))
    ws = membership_scan(diag_perm_row(CEX, transposition(0, 1)), CEX, 4, 512)
    assert ws[0].kind == "proven_equal"
    ws = membership_scan(z_direct(HASH), HASH, 32, 4096)
    assert {w.kind for w in ws} <= {"disagreement", "unknown"}
    for w in ws:
        if w.kind == "disagreement":
            assert seq_fn(z_direct(HASH))(w.position) != seq_fn(row(HASH, w.row))(w.position)


def test_scan_finds_member_rows():
    dp = build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 1), (1, 1))))
    ws = membership_scan(parse_seq("parity(i)"), dp, 6, 64)
    assert [w.kind for w in ws] == ["proven_equal", "disagreement"] * 3


def test_witness_csv_roundtrip():
    ws = [Witness("disagreement", 0, 3, 64), Witness("unknown", 1, None, 64), Witness("proven_equal", 2, None, 64)]
    text = witnesses_to_csv(ws, header=True)
    assert text.splitlines()[0] == "row,kind,position,horizon"
    assert text.endswith("\r\n")
    assert witnesses_from_csv(text, header=True) == ws
    one = witnesses_to_csv(ws, one_based=True)
    assert one.splitlines()[0] == "1,disagreement,4,64"
    assert witnesses_from_csv(one, one_based=True) == ws
    with pytest.raises(CantorkitError):
        Witness("unknown", 0, 5, 10)
    with pytest.raises(CantorkitError):
        Witness("maybe", 0, None, 10)
