import json

import pytest
from hypothesis import given, settings, strategies as st

from dzv import pipeline
from dzv.carlitz import context
from dzv.pipeline import (Cache, dimension, get_xi, is_frobenius_image, table, to_csv, to_json,
                          to_text, v_set, zeta_like_count, zeta_like_indices)


def test_v_set_examples():
    assert v_set(2, 2) == [(1, 1)]
    assert v_set(6, 3) == [(2, 4), (4, 2)]
    assert v_set(2, 3) == []
    assert v_set(5, 2) == [(1, 4), (2, 3), (3, 2), (4, 1)]
    with pytest.raises(ValueError):
        v_set(1, 2)


@given(st.sampled_from([2, 3, 4, 5, 7, 9]), st.integers(2, 60))
def test_v_set_size(q, n):
    V = v_set(n, q)
    assert len(V) == (n - 1) // (q - 1)
    assert all(s1 + s2 == n and s1 >= 1 and s2 % (q - 1) == 0 for s1, s2 in V)


def test_frobenius_image():
    assert is_frobenius_image((2, 2), 2)
    assert not is_frobenius_image((2, 3), 2)
    assert is_frobenius_image((3, 6), 3)


@pytest.mark.parametrize("n,q,dim", [(2, 2, 1), (3, 2, 2), (9, 2, 4), (7, 3, 7), (6, 3, 5)])
def test_dimension_examples(n, q, dim):
    rep = dimension(n, q, verify=n <= 8)
    assert rep.dimension == dim
    rep.check()


def test_weight2_report():
    rep = dimension(2, 2)
    assert rep.rank == 0 and rep.relations == 1
    assert rep.zeta_like == 1 and rep.zeta_like_indices == [(1, 1)]
    assert rep.fp_linear == 0
    assert all(c.status == "pass" for c in rep.certificates)


@pytest.mark.parametrize("n,q,count", [(2, 2, 1), (4, 2, 1), (7, 2, 2), (10, 3, 0), (3, 3, 1), (4, 3, 0)])
def test_zeta_like_examples(n, q, count):
    assert zeta_like_count(n, q) == count


def test_zeta_like_frobenius_images_are_detected_but_not_counted():
    idx, certs = zeta_like_indices(4, 2)
    assert (2, 2) in idx
    assert zeta_like_count(4, 2, primitive=False) == len(idx)
    assert zeta_like_count(4, 2) == len(idx) - 1
    assert all(c.kind == "zeta_like" for c in certs)


def test_odd_weight_zeta_like_pairs_with_vn():
    idx, certs = zeta_like_indices(5, 3, verify=True)
    for c in certs:
        assert c.labels[0] == ("vn", 5)
        assert c.status == "pass"


def test_cache_roundtrip(tmp_path):
    cache = Cache(tmp_path)
    xi = get_xi(3, 4, 2, cache)
    path = tmp_path / "xi" / "q2_p2_e1_3_4.json"
    rec = json.loads(path.read_text())
    assert set(rec) == {"q", "p", "e", "s1", "s2", "n", "alpha", "xi", "sup_degree"}
    assert (rec["n"], rec["sup_degree"]) == (7, int(xi.sup_degree()))
    assert cache.load_xi(2, 3, 4) == xi
    assert cache.load_xi(2, 4, 3) is None
    assert (tmp_path / "H" / "q2_3.json").exists()
    assert cache.load_H(2, 3) == context(2).H(3)
    assert not list(tmp_path.rglob(".tmp-*"))


def test_cold_and_warm_cache_give_identical_json(tmp_path):
    cold, _ = table(2, 9, 2, cache=Cache(tmp_path))
    snapshot = {p: p.read_bytes() for p in tmp_path.rglob("*.json")}
    warm, _ = table(2, 9, 2, cache=Cache(tmp_path))
    assert to_json(cold) == to_json(warm)
    assert {p: p.read_bytes() for p in tmp_path.rglob("*.json")} == snapshot


def test_csv_and_text():
    reps, errors = table(2, 5, 3, verify=False)
    assert not errors
    csv = to_csv(reps).splitlines()
    assert csv[0] == ",".join(pipeline.CSV_COLUMNS)
    odd = csv[2].split(",")  # weight 3 is A-odd for q = 3
    assert odd[0] == "3" and odd[2] == ""
    txt = to_text(reps)
    assert txt.startswith("q = 3\n")
    assert "F_p-linear" in txt
    assert to_text([]) == ""


def test_json_excludes_timing_by_default():
    rep = dimension(3, 2)
    assert "timing" not in rep.to_dict()
    assert "timing" in json.loads(to_json([rep], timing=True))[0]


def test_parallel_table_matches_serial():
    a, _ = table(2, 10, 2, jobs=2, verify=False)
    b, _ = table(2, 10, 2, jobs=1, verify=False)
    assert to_json(a) == to_json(b)


def test_table_reports_failures_per_weight(monkeypatch):
    real = pipeline.dimension

    def flaky(n, q, *args, **kw):
        if n == 4:
            raise pipeline.VerificationFailure("forced")
        return real(n, q, *args, **kw)

    monkeypatch.setattr(pipeline, "dimension", flaky)
    reps, errors = table(2, 5, 2, verify=False)
    assert [r.n for r in reps] == [2, 3, 5]
    assert errors == [(4, "VerificationFailure", "forced")]
    with pytest.raises(ValueError):
        table(5, 4, 2)


def test_verification_failure_raised(monkeypatch):
    from dzv.numeric import VerificationResult
    monkeypatch.setattr(pipeline, "verify_relation",
                        lambda *a, **k: VerificationResult("fail", 0, 10, None, "forced"))
    with pytest.raises(pipeline.VerificationFailure):
        dimension(2, 2, verify=True)


@given(st.sampled_from([2, 3, 4]), st.integers(2, 9))
@settings(max_examples=15)
def test_report_invariants(q, n):
    rep = dimension(n, q, verify=False)
    rep.check()
    assert rep.zeta_like <= rep.zeta_like_all <= rep.v_size
    assert len([c for c in rep.certificates if c.kind == "span"]) == rep.relations
    assert all(c.verified for c in rep.certificates)


def test_default_dmax():
    assert pipeline.default_dmax(2) == 12
    assert pipeline.default_dmax(3) == 10
