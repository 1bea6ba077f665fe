import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import isomorphic_by_brute_force, t_subset_counts
from steinerauth import designs as ds
from steinerauth import field as gf
from steinerauth.designs import Design, DesignError
from steinerauth.tables import TABLE_II


def test_fano_is_a_steiner_2_design(fano):
    stats = ds.verify_design(fano)
    assert stats.b == 7
    assert stats.r == 3
    assert stats.lambdas == (7, 3, 1)
    assert not stats.trivial


def test_table2_rows_form_a_3_design(table2_design):
    # oracle: point 1 occurs in 12 of the printed rows
    assert sum(1 for row in TABLE_II.rows if 1 in row) == 12
    stats = ds.verify_design(table2_design)
    assert stats.r == 12
    assert stats.lambdas == (30, 12, 4, 1)


def test_missing_block_is_reported(fano):
    broken = Design(2, 7, 3, 1, fano.blocks[1:])
    with pytest.raises(DesignError, match="expected 7 blocks"):
        ds.verify_design(broken)
    # with the block count check out of the way the uncovered pair is named
    padded = Design(2, 7, 3, 1, fano.blocks[1:] + ((0, 1, 2),))
    with pytest.raises(DesignError, match=r"lies in (0|2) blocks"):
        ds.verify_design(padded)


def test_first_violating_subset_named(fano):
    bad = Design(2, 7, 3, 1, fano.blocks[1:] + ((0, 1, 2),))
    counts = t_subset_counts(bad.blocks, 7, 2)
    first = next(T for T in sorted(counts) if counts[T] != 1)
    assert first == (0, 2)
    with pytest.raises(DesignError, match=rf"2-subset \(0, 2\) lies in {counts[first]} blocks"):
        ds.verify_design(bad)


def test_duplicate_and_out_of_range_blocks(fano):
    with pytest.raises(DesignError, match="repeated"):
        ds.verify_design(Design(2, 7, 3, 1, fano.blocks + fano.blocks[:1]))
    with pytest.raises(DesignError, match="outside"):
        ds.verify_design(Design(2, 7, 3, 1, fano.blocks[1:] + ((0, 1, 7),)))
    with pytest.raises(DesignError, match="distinct"):
        ds.verify_design(Design(2, 7, 3, 1, fano.blocks[1:] + ((0, 1),)))


def test_bad_parameters():
    with pytest.raises(DesignError):
        Design(4, 7, 3, 1, ())


def test_lambda_s_values(fano):
    mobius = ds.spherical_design(3, 2)
    assert ds.lambda_s(mobius, 1) == 12 == math.comb(9, 2) // math.comb(3, 2)
    assert ds.lambda_s(fano, 1) == 3
    for d in (fano, mobius):
        assert ds.lambda_s(d, 0) == d.b


def test_lambda_s_inadmissible():
    # 2-(8,3,1): r = 7/2
    with pytest.raises(ds.InadmissibleParameters):
        ds.lambda_s_for(2, 8, 3, 1, 1)


def test_work_limit(fano):
    with pytest.raises(ds.WorkLimitExceeded):
        ds.verify_design(fano, work_limit=10)


def test_pg_plane_of_order_two_is_fano(fano):
    d = ds.pg_lines(2, 2)
    assert d.params == (2, 7, 3, 1)
    assert isomorphic_by_brute_force(d.blocks, fano.blocks, 7)


@pytest.mark.parametrize(
    "dim,q,v,k,b",
    [(2, 2, 7, 3, 7), (4, 2, 31, 3, 155), (2, 3, 13, 4, 13), (3, 2, 15, 3, 35), (2, 4, 21, 5, 21)],
)
def test_pg_lines_parameters(dim, q, v, k, b):
    d = ds.pg_lines(dim, q)
    assert (d.v, d.k, d.b) == (v, k, b)
    assert b == math.comb(v, 2) // math.comb(k, 2)
    ds.verify_design(d)


def test_pg_lines_rejects_non_prime_power():
    with pytest.raises(ValueError, match="prime power"):
        ds.pg_lines(2, 6)


def _pgl_perms(p, n):
    F = gf.make_field(p, n)
    line = gf.projective_line(F)
    return F, line, [gf.as_permutation(m, line) for m in gf.pgl2(F)]


def test_orbit_of_subline_under_pgl_2_9():
    F, line, perms = _pgl_perms(3, 2)
    base = [i for i, x in enumerate(line) if x is gf.INF or x**3 == x]
    assert len(base) == 4
    d = ds.orbit_design(perms, base, (3, 10, 4, 1))
    assert d.b == 30


def test_orbit_under_pgl_2_4_gives_all_triples():
    F, line, perms = _pgl_perms(2, 2)
    base = [i for i, x in enumerate(line) if x is gf.INF or x**2 == x]
    d = ds.orbit_design(perms, base, (3, 5, 3, 1))
    assert set(d.blocks) == set(itertools.combinations(range(5), 3))


def test_identity_orbit_fails_declaration():
    with pytest.raises(DesignError):
        ds.orbit_design([tuple(range(7))], (0, 1, 3), (2, 7, 3, 1))


def test_orbit_rejects_non_permutation():
    with pytest.raises(DesignError, match="permutation"):
        ds.orbit_design([(0, 0, 1)], (0, 1), (1, 3, 2, 1))


@pytest.mark.parametrize("q,d,v,k,b", [(3, 2, 10, 4, 30), (2, 2, 5, 3, 10), (2, 4, 17, 3, 680), (4, 2, 17, 5, 68)])
def test_spherical_design(q, d, v, k, b):
    D = ds.spherical_design(q, d)
    assert D.params == (3, v, k, 1)
    assert D.b == b == math.comb(v, 3) // math.comb(k, 3)
    assert b % v == 0
    assert ds.verify_design(D).trivial == (q == 2)


def test_spherical_odd_extension_degree_breaks_divisibility():
    D = ds.spherical_design(2, 3)
    assert (D.v, D.b) == (9, 84)
    assert D.b % D.v != 0


def test_sts7_from_base_block_013(fano):
    assert ds.cyclic_difference_family(7) == [(0, 1, 3)]
    d = ds.sts_cyclic(7)
    assert d.b == 7
    assert isomorphic_by_brute_force(d.blocks, fano.blocks, 7)


def test_sts13():
    d = ds.sts_cyclic(13)
    assert d.b == 26 == 13 * 12 // 6
    assert ds.verify_design(d).r == 6
    family = ds.cyclic_difference_family(13)
    diffs = sorted(min((y - x) % 13, (x - y) % 13) for B in family for x, y in itertools.combinations(B, 2))
    assert diffs == list(range(1, 7))


@pytest.mark.parametrize("v", [9, 3, 15, 8])
def test_sts_precondition(v):
    with pytest.raises(ValueError, match="1 \\(mod 6\\)"):
        ds.sts_cyclic(v)


@pytest.mark.parametrize("v", [7, 13, 19, 25, 31, 37])
def test_sts_cyclic_invariant_under_shift(v):
    d = ds.sts_cyclic(v)
    shifted = {tuple(sorted((x + 1) % v for x in B)) for B in d.blocks}
    assert shifted == set(d.blocks)


def test_witt_designs():
    full, derived = ds.witt_search()
    assert full.params == (5, 12, 6, 1) and full.b == 132
    assert derived.params == (4, 11, 5, 1) and derived.b == 66
    assert ds.verify_design(full).r == 66
    ds.verify_design(derived)
    assert math.comb(12, 6) == 924


def test_derived_design_of_mobius_plane_is_affine_plane():
    derived = ds.derived_design(ds.spherical_design(3, 2), 9)
    assert derived.params == (2, 9, 3, 1)
    assert ds.verify_design(derived).r == 4


def _constructed():
    return [
        ds.pg_lines(2, 2),
        ds.pg_lines(2, 3),
        ds.pg_lines(3, 2),
        ds.pg_lines(4, 2),
        ds.spherical_design(2, 2),
        ds.spherical_design(3, 2),
        ds.spherical_design(4, 2),
        ds.spherical_design(2, 4),
        ds.sts_cyclic(13),
        ds.sts_cyclic(25),
        ds.witt_search()[0],
        ds.witt_search()[1],
    ]


@pytest.fixture(scope="module")
def constructed():
    return _constructed()


def test_constructed_designs_satisfy_counting_identities(constructed):
    for d in constructed:
        stats = ds.verify_design(d)
        assert stats.b * d.k == d.v * stats.r
        if d.t >= 2:
            assert stats.r * (d.k - 1) == stats.lambdas[2] * (d.v - 1)
        assert stats.lambdas[d.t] == d.lam
        assert stats.lambdas[0] == d.b


def test_downward_property(constructed):
    for d in constructed:
        if d.v > 31:
            continue
        for s in range(1, d.t):
            reduced = ds.reduce_strength(d, s)
            assert reduced.lam == ds.lambda_s(d, s)
            ds.verify_design(reduced)
            counts = t_subset_counts(d.blocks, d.v, s) if d.v <= 17 else None
            if counts is not None:
                assert set(counts.values()) == {reduced.lam}


def test_spherical_orbit_invariant_under_generators():
    for q, dd in [(2, 2), (3, 2), (4, 2), (2, 4)]:
        D = ds.spherical_design(q, dd)
        line = D.labels
        blocks = set(D.blocks)
        for m in gf.pgl2_generators(line[0].spec):
            g = gf.as_permutation(m, line)
            assert {tuple(sorted(g[x] for x in B)) for B in blocks} == blocks


@pytest.mark.parametrize(
    "t,v,k,b,divides",
    [(3, 26, 5, 260, True), (4, 71, 5, 194327, True), (2, 9, 3, 12, False), (2, 7, 3, 7, True)],
)
def test_divisibility_check(t, v, k, b, divides):
    assert ds.divisibility_check(t, v, k) == (b, divides)


def test_divisibility_check_inadmissible():
    assert ds.divisibility_check(2, 8, 3) == (None, False)


def test_json_round_trip(tmp_path, fano):
    path = tmp_path / "fano.json"
    ds.emit(fano, path)
    obj = json.loads(path.read_text())
    assert obj == {"t": 2, "v": 7, "k": 3, "lambda": 1, "blocks": [list(B) for B in fano.blocks]}
    assert ds.ingest(path) == fano


def test_ingest_table2_fixture(tmp_path):
    path = tmp_path / "t2.json"
    path.write_text(json.dumps({"t": 3, "v": 10, "k": 4, "lambda": 1, "blocks": [list(r) for r in TABLE_II.rows]}))
    d = ds.ingest(path)
    assert d.params == (3, 10, 4, 1) and d.b == 30


def test_ingest_rejects_duplicate_block(tmp_path, fano):
    path = tmp_path / "dup.json"
    blocks = [list(B) for B in fano.blocks] + [list(fano.blocks[0])]
    path.write_text(json.dumps({"t": 2, "v": 7, "k": 3, "lambda": 1, "blocks": blocks}))
    with pytest.raises(DesignError, match="repeated"):
        ds.ingest(path)


@pytest.mark.parametrize(
    "obj",
    [
        {"t": 2, "v": 7, "k": 3, "blocks": []},
        {"t": 2, "v": 7, "k": 3, "lambda": 1.0, "blocks": []},
        {"t": 2, "v": 7, "k": 3, "lambda": 1, "blocks": [[0, 1, "2"]]},
        {"t": 2, "v": 7, "k": 3, "lambda": 1, "blocks": [], "extra": 1},
        [1, 2, 3],
    ],
)
def test_ingest_schema_violations(tmp_path, obj):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    with pytest.raises(DesignError):
        ds.ingest(path)


def test_ingest_rejects_non_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(DesignError, match="JSON"):
        ds.ingest(path)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8).flatmap(lambda v: st.tuples(st.just(v), st.integers(1, v))).flatmap(
    lambda vk: st.tuples(st.just(vk[0]), st.just(vk[1]), st.integers(1, vk[1]))
))
def test_complete_design_property(vkt):
    # all k-subsets: every t-subset lies in C(v-t, k-t) blocks
    v, k, t = vkt
    blocks = tuple(itertools.combinations(range(v), k))
    lam = math.comb(v - t, k - t)
    d = Design(t, v, k, lam, blocks)
    stats = ds.verify_design(d)
    for s in range(t + 1):
        assert stats.lambdas[s] == math.comb(v - s, k - s)
