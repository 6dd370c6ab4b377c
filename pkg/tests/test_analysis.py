import pytest
from hypothesis import given, settings, strategies as st

from _oracles import cell_cover_ok
from sirtp.analysis import (
    Mode,
    check_isomorphism,
    check_ratio_lemma,
    check_tiling,
    extract_pattern,
    find_pairing,
    is_slat,
    isomorphic,
    patterns_equal,
    slat_refine,
    verify_pair,
)
from sirtp.core import Partition, PartitionPair, SirtpInstance
from sirtp.solver import algsirtp_partition, euclid_sirtp, square_transfer_pair

PINWHEEL = [(0, 0, 2, 1), (2, 0, 1, 2), (1, 2, 2, 1), (0, 1, 1, 2), (1, 1, 1, 1)]


def pinwheel_pair() -> PartitionPair:
    a = Partition.from_tuples((3, 3), PINWHEEL)
    # mirror image, listed in a different order
    mirrored = [(3 - x - w, y, w, h) for x, y, w, h in PINWHEEL]
    b = Partition.from_tuples((3, 3), mirrored[::-1])
    return PartitionPair(a, b, (4, 3, 2, 1, 0))


# ---------------------------------------------------------------------------
# tiling


def test_tiling_two_piece_ok():
    assert check_tiling(Partition.from_tuples((3, 2), [(0, 0, 2, 2), (2, 0, 1, 2)])).ok


def test_tiling_overlap():
    rep = check_tiling(Partition.from_tuples((3, 2), [(0, 0, 2, 2), (1, 0, 2, 2)]))
    assert not rep.ok
    assert "overlap" in {v.kind for v in rep.violations}


def test_tiling_coverage():
    rep = check_tiling(Partition.from_tuples((3, 2), [(0, 0, 2, 2)]))
    assert not rep.ok
    kinds = {v.kind for v in rep.violations}
    assert kinds == {"coverage"}
    assert any("areas sum to 4" in v.description for v in rep.violations)


def test_tiling_out_of_bounds():
    rep = check_tiling(Partition.from_tuples((2, 2), [(0, 0, 2, 2), (1, 1, 2, 2)]))
    assert [v.kind for v in rep.violations] == ["bounds"]


def test_tiling_equal_area_but_misplaced():
    # area sums match, yet one cell is doubly covered and one is empty
    rep = check_tiling(Partition.from_tuples((2, 2), [(0, 0, 1, 2), (0, 0, 1, 1), (1, 1, 1, 1)]))
    assert {v.kind for v in rep.violations} == {"overlap", "coverage"}


def test_pinwheel_tiles():
    assert check_tiling(Partition.from_tuples((3, 3), PINWHEEL)).ok


@st.composite
def guillotine(draw, max_side=20):
    W = draw(st.integers(1, max_side))
    H = draw(st.integers(1, min(max_side, 400 // W)))
    rects = []

    def split(x, y, w, h, depth):
        if depth > 6 or (w == 1 and h == 1) or draw(st.integers(0, 3)) == 0:
            rects.append((x, y, w, h))
            return
        if w > 1 and (h == 1 or draw(st.booleans())):
            c = draw(st.integers(1, w - 1))
            split(x, y, c, h, depth + 1)
            split(x + c, y, w - c, h, depth + 1)
        else:
            c = draw(st.integers(1, h - 1))
            split(x, y, w, c, depth + 1)
            split(x, y + c, w, h - c, depth + 1)

    split(0, 0, W, H, 0)
    return W, H, rects


@st.composite
def maybe_broken(draw):
    W, H, rects = draw(guillotine())
    if draw(st.booleans()):
        i = draw(st.integers(0, len(rects) - 1))
        x, y, w, h = rects[i]
        choice = draw(st.integers(0, 3))
        if choice == 0:
            rects[i] = (x + 1, y, w, h)
        elif choice == 1:
            rects[i] = (x, y, w + 1, h)
        elif choice == 2:
            rects[i] = (x, y, max(1, w - 1), h)
        else:
            del rects[i]
    return W, H, rects


@settings(max_examples=300)
@given(maybe_broken())
def test_tiling_agrees_with_cell_count(case):
    W, H, rects = case
    assert check_tiling(Partition.from_tuples((W, H), rects)).ok == cell_cover_ok(W, H, rects)


# ---------------------------------------------------------------------------
# isomorphism


def _pair(a_parent, a, b_parent, b, pairing=None):
    pa = Partition.from_tuples(a_parent, a)
    pb = Partition.from_tuples(b_parent, b)
    return PartitionPair(pa, pb, tuple(pairing if pairing is not None else range(len(a))))


def test_isomorphism_identical_sets():
    mods = [(0, 0, 2, 2), (2, 0, 1, 1), (2, 1, 1, 1)]
    assert check_isomorphism(_pair((3, 2), mods, (3, 2), mods)).ok


def test_isomorphism_orientation():
    pair = _pair((1, 3), [(0, 0, 1, 3)], (3, 1), [(0, 0, 3, 1)])
    assert not check_isomorphism(pair, Mode.STRICT).ok
    assert check_isomorphism(pair, Mode.ROTATIONAL).ok
    assert not isomorphic(pair.a, pair.b, Mode.STRICT)
    assert isomorphic(pair.a, pair.b, Mode.ROTATIONAL)


def test_isomorphism_solver_output():
    assert check_isomorphism(algsirtp_partition(SirtpInstance(9, 10)), Mode.STRICT).ok


def test_isomorphism_size_mismatch():
    pair = _pair((2, 1), [(0, 0, 2, 1)], (1, 2), [(0, 0, 1, 1), (0, 1, 1, 1)], (0,))
    rep = check_isomorphism(pair)
    assert [v.kind for v in rep.violations] == ["size"]


def test_isomorphism_pairing_not_bijective():
    mods = [(0, 0, 1, 1), (1, 0, 1, 1)]
    rep = check_isomorphism(_pair((2, 1), mods, (2, 1), mods, (0, 0)))
    assert "pairing" in {v.kind for v in rep.violations}


def test_find_pairing():
    a = Partition.from_tuples((3, 3), PINWHEEL)
    b = pinwheel_pair().b
    pairing = find_pairing(a, b)
    assert check_isomorphism(PartitionPair(a, b, pairing)).ok


# ---------------------------------------------------------------------------
# patterns


def test_pattern_single_module():
    pat = extract_pattern(Partition.from_tuples((4, 7), [(0, 0, 4, 7)]))
    assert (pat.r, pat.c, pat.blocks, pat.alpha, pat.beta) == (1, 1, ((0, 0, 0, 0),), (4,), (7,))


def six_module_figure() -> Partition:
    # 4 x 3 parent; module index 2 is the middle row over the first three columns
    return Partition.from_tuples((4, 3), [
        (0, 0, 1, 1), (1, 0, 2, 1),
        (0, 1, 3, 1),
        (0, 2, 2, 1), (2, 2, 1, 1),
        (3, 0, 1, 3),
    ])


def test_pattern_of_six_module_figure():
    part = six_module_figure()
    assert check_tiling(part).ok
    pat = extract_pattern(part)
    assert (pat.r, pat.c, pat.k) == (3, 4, 6)
    m3 = pat.matrix(2)
    assert m3[1] == [1, 1, 1, 0]
    assert m3[0] == m3[2] == [0, 0, 0, 0]


def test_pattern_of_2_3_solution():
    pat = extract_pattern(algsirtp_partition(SirtpInstance(2, 3)).a)
    assert (pat.r, pat.c) == (2, 2)
    assert pat.alpha == (1, 1) and pat.beta == (2, 1)


def test_patterns_equal_examples():
    p23 = algsirtp_partition(SirtpInstance(2, 3))
    p46 = algsirtp_partition(SirtpInstance(4, 6))
    p25 = algsirtp_partition(SirtpInstance(2, 5))
    assert patterns_equal(extract_pattern(p23.a), extract_pattern(p46.a))
    assert patterns_equal(extract_pattern(p23.b), extract_pattern(p46.b))
    assert not patterns_equal(extract_pattern(p23.a), extract_pattern(p25.a))
    pat = extract_pattern(p25.a)
    assert patterns_equal(pat, pat)


@settings(max_examples=200)
@given(guillotine())
def test_pattern_properties(case):
    W, H, rects = case
    part = Partition.from_tuples((W, H), rects)
    pat = extract_pattern(part)
    k = len(rects)
    # lengths reproduce the dims
    assert [pat.module_dims(i) for i in range(k)] == [m.dims for m in part.modules]
    assert sum(pat.alpha) == W and sum(pat.beta) == H
    # blocks partition the grid
    cover = [[0] * pat.c for _ in range(pat.r)]
    for i in range(k):
        for u, row in enumerate(pat.matrix(i)):
            for v, e in enumerate(row):
                cover[u][v] += e
    assert all(e == 1 for row in cover for e in row)
    assert pat.r <= 2 * k - 1 and pat.c <= 2 * k - 1
    assert pat.r * pat.c <= (2 * k - 1) ** 2


def test_pattern_grid_bound_on_solver_output():
    # only the (2k-1)^2 form is guaranteed; k^2 usually holds as well
    for p, q in [(2, 3), (9, 10), (123, 457), (17, 1000)]:
        pair = algsirtp_partition(SirtpInstance(p, q))
        pat = extract_pattern(pair.a)
        assert pat.r * pat.c <= (2 * pair.size - 1) ** 2


# ---------------------------------------------------------------------------
# ratio lemma


def test_ratio_lemma_scaled_instance():
    rep = check_ratio_lemma(algsirtp_partition(SirtpInstance(2, 3)), algsirtp_partition(SirtpInstance(4, 6)))
    assert rep.applicable and rep.ok and rep.status == "OK"


def test_ratio_lemma_not_applicable():
    rep = check_ratio_lemma(algsirtp_partition(SirtpInstance(2, 3)), algsirtp_partition(SirtpInstance(3, 4)))
    assert rep.status == "NOT_APPLICABLE"


def test_ratio_lemma_self():
    pair = algsirtp_partition(SirtpInstance(9, 10))
    assert check_ratio_lemma(pair, pair).status == "OK"


def test_ratio_lemma_reindexes_through_pairing():
    pair = algsirtp_partition(SirtpInstance(5, 7))
    # same solution with B listed in reverse order
    n = pair.size
    b = Partition.from_tuples(pair.b.parent, pair.b.as_tuples()[::-1])
    shuffled = PartitionPair(pair.a, b, tuple(n - 1 - j for j in pair.pairing))
    assert check_isomorphism(shuffled).ok
    assert check_ratio_lemma(pair, shuffled).status == "OK"
    assert check_ratio_lemma(pair, algsirtp_partition(SirtpInstance(15, 21))).status == "OK"


def test_ratio_lemma_requires_same_pairing():
    pair = pinwheel_pair()
    other = PartitionPair(pair.a, pair.b, (4, 3, 2, 1, 0))
    assert check_ratio_lemma(pair, other).status == "OK"
    # pairing a different but still dims-compatible correspondence breaks equivalence
    sq = Partition.from_tuples((2, 1), [(0, 0, 1, 1), (1, 0, 1, 1)])
    p1 = PartitionPair(sq, sq, (0, 1))
    p2 = PartitionPair(sq, sq, (1, 0))
    assert check_ratio_lemma(p1, p2).status == "NOT_APPLICABLE"


# ---------------------------------------------------------------------------
# slat


def test_vertical_strips_are_slat():
    assert is_slat(Partition.from_tuples((5, 4), [(i, 0, 1, 4) for i in range(5)]))


def test_single_module_is_slat():
    assert is_slat(Partition.from_tuples((3, 7), [(0, 0, 3, 7)]))


def test_pinwheel_is_not_slat():
    assert not is_slat(Partition.from_tuples((3, 3), PINWHEEL))


def test_stacked_columns_are_slat():
    # horizontal cuts are fine as long as overlapping sides coincide
    part = Partition.from_tuples((2, 3), [(0, 0, 1, 1), (0, 1, 1, 2), (1, 0, 1, 2), (1, 2, 1, 1)])
    assert is_slat(part)


def test_slat_refine_already_slat_is_identity():
    pair = euclid_sirtp(SirtpInstance(3, 12))
    assert slat_refine(pair) is pair


def test_slat_refine_pinwheel():
    pair = pinwheel_pair()
    out = slat_refine(pair)
    assert is_slat(out.a)
    assert verify_pair(out, Mode.STRICT).ok
    assert out.size > pair.size


def test_slat_refine_4_5():
    out = slat_refine(algsirtp_partition(SirtpInstance(4, 5)))
    assert is_slat(out.a)
    assert verify_pair(out, Mode.STRICT).ok


def test_slat_refine_side_b():
    pair = algsirtp_partition(SirtpInstance(9, 10))
    out = slat_refine(pair, side="b")
    assert is_slat(out.b)
    assert verify_pair(out).ok
    with pytest.raises(ValueError):
        slat_refine(pair, side="c")


@settings(max_examples=60)
@given(st.integers(1, 2000), st.integers(1, 2000))
def test_slat_refine_property(p, q):
    pair = algsirtp_partition(SirtpInstance(p, q), max_modules=5000)
    out = slat_refine(pair)
    assert is_slat(out.a)
    assert verify_pair(out, Mode.STRICT).ok
    assert out.size >= pair.size


def test_square_transfer_is_not_slat_but_refines():
    pair = square_transfer_pair(16)
    assert not is_slat(pair.a)
    assert is_slat(slat_refine(pair).a)
