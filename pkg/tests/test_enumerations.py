import pytest

from cantorkit.corpus import builder_corpus, full_corpus
from cantorkit.enumerations import BuilderSpec, build_enumeration, dovetail, interleave, pair, prepend, unpair
from cantorkit.errors import CantorkitError, InvalidSpec
from cantorkit.numbering import MASK64, hashrows_bit, splitmix64
from cantorkit.sdl import eval_enum, parse_seq, prefix, row
from cantorkit.sdl.evaluate import enum_fn, seq_fn

ZEROS, ONES = build_enumeration("zeros"), build_enumeration("ones")


def anti_diagonals(count):
    out = []
    s = 0
    while len(out) < count:
        for b in range(s + 1):
            out.append((s - b, b))
        s += 1
    return out[:count]


def test_pair_against_antidiagonal_oracle():
    order = anti_diagonals(5000)
    assert order[8] == (1, 2)
    for n, (a, b) in enumerate(order):
        assert pair(a, b) == n
        assert unpair(n) == (a, b)
    assert pair(0, 0) == 0 and unpair(0) == (0, 0)


def test_pair_monotone_on_antidiagonal():
    for a in range(1, 60):
        for b in range(60):
            assert pair(a, b) < pair(a - 1, b + 1)


def test_pair_large_values():
    a, b = 10**30 + 7, 3 * 10**29
    assert unpair(pair(a, b)) == (a, b)


def test_interleave_and_prepend():
    il = interleave(ZEROS, ONES)
    assert prefix(row(il, 1), 64) == [1] * 64
    assert prefix(row(il, 2), 64) == [0] * 64
    pp = prepend(parse_seq("1"), ZEROS)
    assert prefix(row(pp, 0), 64) == [1] * 64
    assert prefix(row(pp, 3), 64) == [0] * 64


def test_index_laws_over_corpus():
    corpus = full_corpus()[:40]
    s = parse_seq("bit(i, 1)")
    sf = seq_fn(s)
    for e1, e2 in zip(corpus, corpus[1:]):
        f1, f2 = enum_fn(e1), enum_fn(e2)
        g, h = enum_fn(interleave(e1, e2)), enum_fn(prepend(s, e1))
        for t in range(8):
            for i in range(64):
                assert g(2 * t, i) == f1(t, i)
                assert g(2 * t + 1, i) == f2(t, i)
                assert h(t + 1, i) == f1(t, i)
                assert h(0, i) == sf(i)


def test_dovetail_placement():
    d = enum_fn(dovetail("parity(a * 3 + b * b + i * a)"))
    for a in range(30):
        for b in range(30):
            n = pair(a, b)
            for i in range(64):
                assert d(n, i) == (a * 3 + b * b + i * a) & 1


def test_dovetail_parity_rows():
    d = dovetail("parity(a)")
    assert prefix(row(d, 8), 16) == [1] * 16
    single = enum_fn(dovetail("eq(b, i)"))
    # every b shows up: the row for (0, b) has its single 1 at position b
    for b in range(20):
        assert single(pair(0, b), b) == 1


def test_builders():
    ident = build_enumeration("identity")
    assert eval_enum(ident, 3, 3) == 1 and eval_enum(ident, 3, 4) == 0
    assert eval_enum(build_enumeration("binary_naturals"), 5, 2) == 1
    dp = build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 1), (1, 0))))
    assert eval_enum(dp, 2, 3) == 1
    assert len(builder_corpus()) == 6


def test_builder_errors():
    with pytest.raises(InvalidSpec):
        build_enumeration("nope")
    with pytest.raises(InvalidSpec):
        build_enumeration(BuilderSpec("doubly_periodic", matrix=()))
    with pytest.raises(InvalidSpec):
        build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 1), (1,))))
    with pytest.raises(InvalidSpec):
        build_enumeration(BuilderSpec("doubly_periodic", matrix=((0, 2),)))
    with pytest.raises(InvalidSpec):
        build_enumeration(BuilderSpec("hashrows", salt=1 << 64))


def mixer_by_hand(x):
    z = (x + 0x9E3779B97F4A7C15) % 2**64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
    return z ^ (z >> 31)


def test_hashrows_bit_exact():
    # reference outputs of the splitmix64 generator started from state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4
    for salt in (0, 1, 0xDEADBEEF, MASK64):
        for k in range(5):
            for i in range(5):
                x = salt ^ ((k << 32) | i)
                assert hashrows_bit(salt, k, i) == mixer_by_hand(x) & 1
    with pytest.raises(CantorkitError):
        hashrows_bit(0, 1 << 32, 0)
    with pytest.raises(CantorkitError):
        eval_enum(build_enumeration("hashrows"), 0, 1 << 32)
