import pytest

from tailscope import (DomainError, brightness_rank, build_matrix, dest_fanin,
                       dest_packets, quantity_report, scalars, source_fanout,
                       source_packets, transpose, zero_norm)
from helpers import random_triples


def test_fanout_counts_distinct_destinations():
    m = build_matrix([("s1", "d1", 3), ("s1", "d2", 2)])
    assert source_fanout(m).as_dict() == {"s1": 2}


def test_fanout_ignores_volume():
    m = build_matrix([("s1", "d1", 100)])
    assert source_fanout(m).as_dict() == {"s1": 1}


def test_fanin_counts_distinct_sources():
    m = build_matrix([("s1", "d1", 3), ("s2", "d1", 1)])
    assert dest_fanin(m).as_dict() == {"d1": 2}
    single = build_matrix([("s1", "d1", 9)])
    assert dest_fanin(single).as_dict() == {"d1": 1}


def test_packet_vectors():
    m = build_matrix([("s1", "d1", 3), ("s1", "d2", 2)])
    assert source_packets(m).as_dict() == {"s1": 5}
    assert dest_packets(m).as_dict() == {"d1": 3, "d2": 2}


def test_fanout_matches_set_oracle():
    triples = random_triples(seed=31, n=1000, n_src=50, n_dst=40)
    m = build_matrix(triples)
    seen_out: dict[str, set] = {}
    seen_in: dict[str, set] = {}
    pkts_out: dict[str, int] = {}
    pkts_in: dict[str, int] = {}
    for s, d, p in triples:
        seen_out.setdefault(s, set()).add(d)
        seen_in.setdefault(d, set()).add(s)
        pkts_out[s] = pkts_out.get(s, 0) + p
        pkts_in[d] = pkts_in.get(d, 0) + p
    assert source_fanout(m).as_dict() == {k: len(v) for k, v in seen_out.items()}
    assert dest_fanin(m).as_dict() == {k: len(v) for k, v in seen_in.items()}
    assert source_packets(m).as_dict() == pkts_out
    assert dest_packets(m).as_dict() == pkts_in


def test_fanin_is_fanout_of_transpose():
    m = build_matrix(random_triples(seed=32, n=800, n_src=30, n_dst=35))
    assert dest_fanin(m).as_dict() == source_fanout(transpose(m)).as_dict()


def test_fanout_is_packets_of_zero_normed_matrix():
    m = build_matrix(random_triples(seed=33, n=600, n_src=25, n_dst=25))
    assert source_fanout(m).as_dict() == source_packets(zero_norm(m)).as_dict()


def test_scalars_single_entry_and_empty():
    m = build_matrix([("s1", "d1", 3)])
    assert scalars(m).as_dict() == {"valid_packets": 3, "unique_links": 1,
                                    "unique_sources": 1, "unique_destinations": 1}
    e = build_matrix([])
    assert scalars(e).as_dict() == {"valid_packets": 0, "unique_links": 0,
                                    "unique_sources": 0, "unique_destinations": 0}


def test_scalars_match_record_recount():
    triples = random_triples(seed=34, n=1500, n_src=60, n_dst=45)
    m = build_matrix(triples)
    s = scalars(m)
    assert s.valid_packets == sum(p for _, _, p in triples)
    assert s.unique_links == len({(a, b) for a, b, _ in triples})
    assert s.unique_sources == len({a for a, _, _ in triples})
    assert s.unique_destinations == len({b for _, b, _ in triples})


def test_fanout_fanin_sums_equal_link_count():
    for seed in range(5):
        m = build_matrix(random_triples(seed + 90, 700, 30, 30))
        assert source_fanout(m).total() == m.nnz
        assert dest_fanin(m).total() == m.nnz


def test_quantity_report_invariants():
    m = build_matrix(random_triples(seed=35, n=900, n_src=40, n_dst=40))
    q = quantity_report(m)
    assert q.scalars.valid_packets == q.source_packets.total() == q.dest_packets.total()
    assert q.scalars.unique_links == q.source_fanout.total() == q.dest_fanin.total()
    assert q.scalars.unique_sources == sum(1 for _, v in q.source_fanout if v >= 1)
    assert q.scalars.unique_destinations == sum(1 for _, v in q.dest_fanin if v >= 1)


def test_reordering_records_changes_nothing_but_label_order():
    triples = random_triples(seed=36, n=400, n_src=20, n_dst=20)
    m1 = build_matrix(triples)
    m2 = build_matrix(list(reversed(triples)))
    q1, q2 = quantity_report(m1), quantity_report(m2)
    assert q1.scalars == q2.scalars
    assert q1.source_fanout.as_dict() == q2.source_fanout.as_dict()
    assert q1.dest_packets.as_dict() == q2.dest_packets.as_dict()


def test_brightness_rank_basic():
    m = build_matrix([("a", "x", 5), ("b", "x", 9), ("c", "x", 1)])
    v = source_packets(m)
    assert brightness_rank(v, 2) == [("b", 9), ("a", 5)]
    assert brightness_rank(v, 10) == [("b", 9), ("a", 5), ("c", 1)]


def test_brightness_rank_ties_keep_first_appearance():
    m = build_matrix([("a", "x", 5), ("b", "y", 5), ("c", "z", 5)])
    assert brightness_rank(source_packets(m), 3) == [("a", 5), ("b", 5), ("c", 5)]


def test_brightness_rank_matches_sort_oracle():
    m = build_matrix(random_triples(seed=37, n=1000, n_src=80, n_dst=10))
    v = source_packets(m)
    full = brightness_rank(v, len(v))
    oracle = sorted(v.as_dict().items(), key=lambda kv: -kv[1])
    assert sorted(x for _, x in full) == sorted(x for _, x in oracle)
    assert [x for _, x in full] == sorted((x for _, x in oracle), reverse=True)
    assert full[:5] == brightness_rank(v, 5)


def test_brightness_rank_rejects_bad_k():
    m = build_matrix([("a", "x", 1)])
    with pytest.raises(DomainError):
        brightness_rank(source_packets(m), 0)
