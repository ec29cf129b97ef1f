"""Acceptance suite: one test per stated delivery criterion.

Each test re-derives its expected values from the written definitions
(independent oracles live inside the tests), so a pass means the
implementation agrees with the rules, not with itself. Run with
``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion.
"""

import csv
import itertools
import math
import random
import time
from collections import Counter, defaultdict, deque

import numpy as np
import pytest
from fastapi.testclient import TestClient

from perfspace.analysis import (
    ComparisonRegion,
    classify_region,
    difficulty_labels,
    difficulty_scores,
    similarity,
    vn_distance,
)
from perfspace.config import Config
from perfspace.metadata import (
    Interaction,
    InteractionLog,
    RiskDimension,
    classify_band,
    k_core_prune,
    load_appendix_corpus,
)
from perfspace.metrics import ZeroIdeal, UserRun, hit_at_k, ndcg_at_k, recall_at_k
from perfspace.model import (
    AlgorithmRef,
    DatasetRef,
    MetricKind,
    PerformanceRecord,
)
from perfspace.pca import ApsPoint, aps_with_model, fit, project
from perfspace.pipeline import precompute_pca
from perfspace.quintiles import classify, percentile, quintile_boundaries
from perfspace.service import create_app
from perfspace.storage import Store

from conftest import CORPUS_PATH, make_matrix

_T0 = time.perf_counter()


# =====================================================================
# 1. Appendix integrity: all 96 published rows ingest and each printed
#    user-item ratio equals users/items rounded to 2 decimals; < 1 s.
# =====================================================================

def test_appendix_integrity_96_of_96_ratios_reproduce():
    start = time.perf_counter()
    corpus = load_appendix_corpus(CORPUS_PATH)
    with open(CORPUS_PATH, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        raw = [row for row in reader if row]
    matches = 0
    for name, users, items, _inter, printed in raw:
        if round(int(users) / int(items), 2) == float(printed):
            matches += 1
        else:
            pytest.fail(f"{name}: {users}/{items} does not round to {printed}")
    elapsed = time.perf_counter() - start
    assert len(corpus) == 96
    assert matches == 96
    assert elapsed < 1.0, f"integrity check took {elapsed:.3f}s"
    by_name = {m.name: m for m in corpus}
    assert by_name["FilmTrust"].user_item_ratio == 2.98
    assert by_name["Douban-Short"].user_item_ratio == 3872.57
    print(f"PASS appendix integrity: 96/96 ratios reproduce in {elapsed * 1000:.0f}ms")


# =====================================================================
# 2. Risk bands: every corpus ratio classifies; published spot values
#    land in their documented bands on all three dimensions.
# =====================================================================

def test_risk_band_conformance_on_corpus_and_spot_values():
    corpus = load_appendix_corpus(CORPUS_PATH)
    by_name = {m.name: m for m in corpus}

    for meta in corpus:
        band = classify_band(RiskDimension.USER_ITEM_RATIO, meta.user_item_ratio)
        assert 1 <= band.band_index <= 7

    film = classify_band(
        RiskDimension.USER_ITEM_RATIO, by_name["FilmTrust"].user_item_ratio
    )
    assert film.description == "Very user-heavy"
    assert film.label == "2.08 - 5.16"

    douban = classify_band(
        RiskDimension.USER_ITEM_RATIO, by_name["Douban-Short"].user_item_ratio
    )
    assert douban.description == "Extremely user-heavy"

    auto = by_name["Amazon2014-Automotive"]
    assert auto.user_item_ratio == 1.60
    assert (
        classify_band(RiskDimension.USER_ITEM_RATIO, auto.user_item_ratio).description
        == "Balanced"
    )

    film_mpu = by_name["FilmTrust"].mean_per_user
    assert abs(film_mpu - 26.21) < 0.01
    band = classify_band(RiskDimension.MEAN_PER_USER, film_mpu)
    assert band.label == "20.77 - 28.96"

    for meta in corpus:
        assert 1 <= classify_band(RiskDimension.MEAN_PER_USER, meta.mean_per_user).band_index <= 5
        assert 1 <= classify_band(RiskDimension.MEAN_PER_ITEM, meta.mean_per_item).band_index <= 5
    print("PASS risk bands: 96 corpus rows classified, 4 spot values in documented bands")


# =====================================================================
# 3. Percentile oracle: agreement with an independent linear-
#    interpolation implementation on 1,000 random multisets to 1e-12;
#    balanced quintile groups on distinct-valued inputs.
# =====================================================================

def test_percentile_oracle_1000_multisets_and_group_balance():
    rng = random.Random(12345)
    checked = 0
    for _ in range(1000):
        n = rng.randint(1, 500)
        if rng.random() < 0.5:
            values = [rng.random() for _ in range(n)]
        else:
            # coarse pool forces heavy ties
            values = [rng.randint(0, 20) / 20 for _ in range(n)]
        ps = [20.0, 40.0, 60.0, 80.0, rng.uniform(0.01, 99.99)]
        for p in ps:
            mine = percentile(values, p)
            oracle = float(np.percentile(values, p))
            assert abs(mine - oracle) <= 1e-12, (n, p, mine, oracle)
            checked += 1

    for _ in range(200):
        n = rng.randint(1, 300)
        pool = rng.sample(range(1_000_000), n)
        values = [v / 1_000_000 for v in pool]
        b = quintile_boundaries(values)
        sizes = Counter(classify(v, b) for v in values)
        full = [sizes.get(g, 0) for g in (1, 2, 3, 4, 5)]
        assert sum(full) == n
        assert max(full) - min(full) <= 1, (n, full)
    print(f"PASS percentile oracle: {checked} percentile evaluations within 1e-12, groups balanced")


# =====================================================================
# 4. Metric oracles: exhaustive brute-force agreement for nDCG / hit /
#    recall on every binary-relevance ranking of up to 5 items.
# =====================================================================

def test_metric_oracles_exhaustive_binary_rankings():
    def brute_dcg(rels, k):
        return sum(
            rel if i == 1 else rel / math.log2(i + 1)
            for i, rel in enumerate(rels[:k], start=1)
        )

    cases = 0
    for n in range(1, 6):
        for mask in range(1, 2**n):
            rels = [(mask >> i) & 1 for i in range(n)]
            items = tuple(f"i{i}" for i in range(n))
            run = UserRun(
                user="u",
                ranked_items=items,
                relevant={f"i{i}": float(r) for i, r in enumerate(rels) if r},
            )
            n_rel = sum(rels)
            for k in range(1, 6):
                ideal = brute_dcg(sorted(rels, reverse=True), k)
                want_ndcg = brute_dcg(rels, k) / ideal
                want_hit = int(any(rels[:k]))
                want_recall = sum(rels[:k]) / n_rel
                assert abs(ndcg_at_k(run, k) - want_ndcg) <= 1e-12
                assert hit_at_k(run, k) == want_hit
                assert abs(recall_at_k(run, k) - want_recall) <= 1e-12
                cases += 1

    # all-irrelevant rankings have no defined nDCG/recall
    empty = UserRun(user="u", ranked_items=("a", "b"), relevant={})
    with pytest.raises(ZeroIdeal):
        ndcg_at_k(empty, 3)

    spot = UserRun(user="u", ranked_items=("a", "b", "c"), relevant={"b": 1.0})
    got = ndcg_at_k(spot, 3)
    assert abs(got - 0.6309) < 5e-5
    assert abs(got - (1 / math.log2(3))) <= 1e-12
    print(f"PASS metric oracles: {cases} exhaustive cases per metric within 1e-12, spot 0.6309 ok")


# =====================================================================
# 5. Projection properties: orthonormal components, ordered variances,
#    rank-1 ratio, SVD-oracle coordinates on 100 random 6x4 matrices,
#    and bit-identical reruns under a fixed seed.
# =====================================================================

def test_pca_properties_oracle_rank1_and_determinism():
    def orient(comp):
        total = comp.sum()
        if total < 0:
            return -comp
        if total == 0:
            for loading in comp:
                if loading != 0:
                    return -comp if loading < 0 else comp
        return comp

    def svd_coords(values):
        centered = values - values.mean(axis=0)
        _u, _s, vt = np.linalg.svd(centered, full_matrices=False)
        comps = np.vstack([orient(vt[0]), orient(vt[1])])
        return centered @ comps.T

    for seed in range(100):
        values = np.random.default_rng(seed).uniform(size=(6, 4))
        matrix = make_matrix(values)
        model = fit(matrix)

        gram = model.components @ model.components.T
        assert np.allclose(gram, np.eye(2), atol=1e-9)
        assert model.explained_variance[0] >= model.explained_variance[1] >= 0.0

        want = svd_coords(values)
        got = np.array([project(model, row) for row in values])
        assert np.allclose(got, want, atol=1e-8), f"seed {seed}"

    # rank-1 fixture: scores vary along a single direction
    t = np.linspace(0.0, 1.0, 6)
    w = np.array([0.9, 0.5, 0.7, 0.3])
    rank1 = make_matrix(0.1 + 0.8 * np.outer(t, w))
    ratio = fit(rank1).explained_ratio
    assert abs(ratio[0] - 1.0) <= 1e-9
    assert ratio[1] <= 1e-9

    values = np.random.default_rng(4242).uniform(size=(6, 4))
    matrix = make_matrix(values)
    model_a, points_a = aps_with_model(matrix, 200, 42)
    model_b, points_b = aps_with_model(matrix, 200, 42)
    assert model_a.components.tobytes() == model_b.components.tobytes()
    for pa, pb in zip(points_a, points_b):
        assert (pa.x, pa.y, pa.var_x, pa.var_y) == (pb.x, pb.y, pb.var_x, pb.var_y)
    print("PASS projection: 100-seed SVD oracle 1e-8, orthonormal 1e-9, rank-1 ratio 1.0, reruns bit-identical")


# =====================================================================
# 6. Similarity algebra on 1,000 random pairs: symmetry, confidence
#    = e^(-distance), exact complement, and the worked 0.24312 value.
# =====================================================================

def test_similarity_algebra_1000_pairs_and_worked_value():
    rng = random.Random(97)
    for _ in range(1000):
        def rand_point(i):
            return ApsPoint(
                dataset=DatasetRef(i, f"d{i}"),
                x=rng.uniform(-3, 3),
                y=rng.uniform(-3, 3),
                var_x=rng.choice([0.0, rng.uniform(0, 2)]),
                var_y=rng.choice([0.0, rng.uniform(0, 2)]),
            )

        a, b = rand_point(0), rand_point(1)
        assert vn_distance(a, b) == vn_distance(b, a)
        s = similarity(a, b)
        assert s.confidence == math.exp(-s.distance)
        assert s.confidence + s.dissimilarity == 1.0

    same = ApsPoint(dataset=DatasetRef(0, "d"), x=0.4, y=0.6, var_x=0.3, var_y=0.1)
    twin = ApsPoint(dataset=DatasetRef(1, "e"), x=0.4, y=0.6, var_x=0.2, var_y=0.5)
    assert vn_distance(same, twin) == 0.0
    assert similarity(same, twin).confidence == 1.0

    a = ApsPoint(dataset=DatasetRef(0, "a"), x=0.0, y=0.0, var_x=1.0, var_y=1.0)
    b = ApsPoint(dataset=DatasetRef(1, "b"), x=2.0, y=0.0, var_x=1.0, var_y=1.0)
    assert vn_distance(a, b) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert abs(similarity(a, b).confidence - 0.24312) < 1e-5
    print("PASS similarity algebra: 1000 pairs exact, worked value 0.24312 within 1e-5")


# =====================================================================
# 7. Difficulty partition: five labels split any distinct-score fixture
#    into groups within 1 of n/5, and labels track the selected slice.
# =====================================================================

def test_difficulty_partition_sizes_and_recompute_on_slice_change(tmp_path):
    rng = random.Random(55)
    for n in (5, 7, 23, 96, 100):
        raw = rng.sample(range(10**6), n)
        scores = {DatasetRef(i, f"d{i:03d}"): v / 10**6 for i, v in enumerate(raw)}
        labels = difficulty_labels(scores)
        counts = Counter(labels.values())
        for label_count in (counts.get(lbl, 0) for lbl in set(labels.values())):
            assert abs(label_count - n / 5) <= 1
        assert sum(counts.values()) == n

    # labels must be recomputed per (metric, k) slice
    store = Store(str(tmp_path / "difficulty.db"))
    metas = []
    from perfspace.metadata import DatasetMeta

    for i in range(6):
        metas.append(
            DatasetMeta(
                name=f"ds{i}",
                num_users=100 + i,
                num_items=50,
                num_interactions=1000,
                user_item_ratio=(100 + i) / 50,
                density=1000 / ((100 + i) * 50),
                mean_per_user=1000 / (100 + i),
                mean_per_item=20.0,
            )
        )
    store.upsert_catalog(["a1", "a2", "a3"], metas)
    datasets = [d for d, _m in store.list_datasets()]
    algorithms = store.list_algorithms()

    # rank-1 slices: per-dataset level plus a per-algorithm offset that
    # mean-centering removes, so the dataset ordering is unambiguous
    offsets = [0.02, -0.01, 0.03]
    def slice_records(metric, k, reverse):
        recs = []
        for i, ds in enumerate(datasets):
            base = 0.15 + 0.12 * (5 - i if reverse else i)
            for j, alg in enumerate(algorithms):
                recs.append(
                    PerformanceRecord(
                        dataset=ds,
                        algorithm=alg,
                        metric=metric,
                        k=k,
                        score=base + offsets[j],
                    )
                )
        return recs

    store.insert_performance(slice_records(MetricKind.NDCG, 10, reverse=False))
    store.insert_performance(slice_records(MetricKind.NDCG, 20, reverse=True))
    store.insert_performance(slice_records(MetricKind.HIT_RATIO, 10, reverse=True))
    config = Config(db_path=store.path)
    precompute_pca(store, config, MetricKind.NDCG, 10)
    precompute_pca(store, config, MetricKind.NDCG, 20)
    precompute_pca(store, config, MetricKind.HIT_RATIO, 10)

    def oracle_labels(points):
        xs = [p.x for p in points]
        ys = [p.y for p in points]

        def norm(v, lo, hi):
            return 0.5 if hi == lo else (v - lo) / (hi - lo)

        scr = {
            p.dataset: (norm(p.x, min(xs), max(xs)) + norm(p.y, min(ys), max(ys))) / 2
            for p in points
        }
        qs = np.percentile(list(scr.values()), [20, 40, 60, 80])
        names = ["very_hard", "hard", "medium", "easy", "very_easy"]

        def group(s):
            for i, q in enumerate(qs):
                if s <= q:
                    return names[i]
            return names[4]

        return {ds: group(s) for ds, s in scr.items()}

    def computed_labels(metric, k):
        rows = store.fetch_pca(metric, k)
        points = [
            ApsPoint(dataset=r.dataset, x=r.x, y=r.y, var_x=r.var_x, var_y=r.var_y)
            for r in rows
        ]
        labels = difficulty_labels(difficulty_scores(points))
        assert {ds: lbl.value for ds, lbl in labels.items()} == oracle_labels(points)
        return labels

    ndcg10 = computed_labels(MetricKind.NDCG, 10)
    ndcg20 = computed_labels(MetricKind.NDCG, 20)
    hit10 = computed_labels(MetricKind.HIT_RATIO, 10)
    assert ndcg10 != ndcg20, "changing k must recompute labels"
    assert ndcg10 != hit10, "changing metric must recompute labels"
    d0 = datasets[0]
    assert ndcg10[d0].value == "very_hard"
    assert ndcg20[d0].value == "very_easy"
    assert hit10[d0].value == "very_easy"
    store.close()
    print("PASS difficulty partition: sizes within 1 of n/5; labels re-derive per slice")


# =====================================================================
# 8. Region partition: the 101x101 grid of [0,1]^2 maps every point to
#    exactly one region matching the rule order; mirror symmetry holds.
# =====================================================================

def test_region_partition_grid_sweep_and_mirror():
    def oracle(x, y):
        if y - x >= 0.5:
            return ComparisonRegion.ALG2_WINS
        if x - y >= 0.5:
            return ComparisonRegion.ALG1_WINS
        if x + y >= 1.5:
            return ComparisonRegion.BOTH_WELL
        if x + y <= 0.5:
            return ComparisonRegion.BOTH_POORLY
        return ComparisonRegion.BOTH_MODERATE

    mirror = {
        ComparisonRegion.ALG1_WINS: ComparisonRegion.ALG2_WINS,
        ComparisonRegion.ALG2_WINS: ComparisonRegion.ALG1_WINS,
    }
    counts = Counter()
    for i in range(101):
        for j in range(101):
            x, y = i / 100, j / 100
            region = classify_region(x, y)
            assert isinstance(region, ComparisonRegion)
            assert region is oracle(x, y), (x, y)
            assert classify_region(y, x) is mirror.get(region, region), (x, y)
            counts[region] += 1
    assert sum(counts.values()) == 101 * 101
    assert set(counts) == set(ComparisonRegion)
    assert classify_region(0.9, 0.9) is ComparisonRegion.BOTH_WELL
    assert classify_region(0.5, 0.5) is ComparisonRegion.BOTH_MODERATE
    print(f"PASS region partition: 10201 grid points, one region each, mirror holds; counts {dict(counts)}")


# =====================================================================
# 9. k-core pruning: matches an independent queue-peeling oracle on 200
#    random bipartite logs (degrees >= k, idempotent); cascades empty.
# =====================================================================

def test_k_core_200_random_logs_against_peeling_oracle():
    def peel_oracle(pairs, k):
        pairs = set(pairs)
        degree = defaultdict(int)
        for u, i in pairs:
            degree[("u", u)] += 1
            degree[("i", i)] += 1
        queue = deque(v for v, d in degree.items() if d < k)
        dead = set()
        while queue:
            v = queue.popleft()
            if v in dead:
                continue
            dead.add(v)
            for u, i in list(pairs):
                if ("u", u) == v or ("i", i) == v:
                    pairs.discard((u, i))
                    for w in (("u", u), ("i", i)):
                        if w not in dead:
                            degree[w] -= 1
                            if degree[w] < k:
                                queue.append(w)
        return pairs

    rng = random.Random(777)
    for trial in range(200):
        n_users = rng.randint(1, 12)
        n_items = rng.randint(1, 12)
        universe = [(u, i) for u in range(n_users) for i in range(n_items)]
        pairs = rng.sample(universe, rng.randint(1, min(40, len(universe))))
        k = rng.randint(1, 4)
        log = InteractionLog(
            entries=tuple(Interaction(user=f"u{u}", item=f"i{i}") for u, i in pairs)
        )
        pruned = k_core_prune(log, k)

        got = {(e.user, e.item) for e in pruned.entries}
        want = {(f"u{u}", f"i{i}") for u, i in peel_oracle(pairs, k)}
        assert got == want, f"trial {trial}"

        users = Counter(e.user for e in pruned.entries)
        items = Counter(e.item for e in pruned.entries)
        assert all(c >= k for c in users.values())
        assert all(c >= k for c in items.values())
        assert k_core_prune(pruned, k).entries == pruned.entries

    cascade = InteractionLog(
        entries=(Interaction("u1", "i1"), Interaction("u2", "i1"))
    )
    assert len(k_core_prune(cascade, 2)) == 0
    print("PASS k-core: 200 random logs match peeling oracle, cascade fixture empties")


# =====================================================================
# 10. API contract: 300-record round trip byte-equal, kill switch 100%
#     403, and projection responses self-consistent, all well under 60s.
# =====================================================================

def test_api_contract_roundtrip_killswitch_and_projections(tmp_path):
    start = time.perf_counter()
    from perfspace.metadata import DatasetMeta

    store = Store(str(tmp_path / "api.db"))
    metas = [
        DatasetMeta(
            name=f"set-{chr(97 + i)}",
            num_users=200 + 17 * i,
            num_items=100,
            num_interactions=5000,
            user_item_ratio=(200 + 17 * i) / 100,
            density=5000 / ((200 + 17 * i) * 100),
            mean_per_user=5000 / (200 + 17 * i),
            mean_per_item=50.0,
        )
        for i in range(5)
    ]
    store.upsert_catalog(["algA", "algB", "algC", "algD"], metas)
    config = Config(db_path=store.path, admin_key="key", admin_secret="secret")
    client = TestClient(create_app(store, config))
    admin = {"X-Admin-Key": "key", "X-Admin-Secret": "secret"}

    rng = random.Random(2024)
    dataset_names = [d["name"] for d in client.get("/api/getDatasets").json()["datasets"]]
    algorithm_names = [
        a["name"] for a in client.get("/api/getAlgorithms").json()["algorithms"]
    ]
    assert len(dataset_names) == 5 and len(algorithm_names) == 4

    sent = {}
    payload = []
    for ds, alg, metric, k in itertools.product(
        dataset_names, algorithm_names, [m.value for m in MetricKind], [1, 3, 5, 10, 20]
    ):
        score = round(rng.random(), 6)
        sent[(ds, alg, metric, k)] = score
        payload.append(
            {"dataset": ds, "algorithm": alg, "metric": metric, "k": k, "score": score}
        )
    assert len(payload) == 300
    r = client.post("/api/adminAddPerformance", json={"records": payload}, headers=admin)
    assert r.status_code == 200
    assert r.json() == {"inserted": 300, "replaced": 0}

    for metric in MetricKind:
        for k in (1, 3, 5, 10, 20):
            r = client.get(
                "/api/getPerformance", params={"metric": metric.value, "k": str(k)}
            )
            assert r.status_code == 200
            records = r.json()["records"]
            assert len(records) == 20
            for rec in records:
                want = sent[(rec["dataset"], rec["algorithm"], metric.value, k)]
                assert rec["score"] == want
                assert repr(rec["score"]) == repr(want)

    # kill switch: admin secret unset means 403 for every header combo
    killed = TestClient(create_app(store, Config(db_path=store.path, admin_key="key", admin_secret=None)))
    header_combos = [
        {},
        {"X-Admin-Key": "key"},
        {"X-Admin-Secret": "secret"},
        {"X-Admin-Key": "key", "X-Admin-Secret": "secret"},
        {"X-Admin-Key": "x", "X-Admin-Secret": "y"},
    ]
    refused = 0
    for headers in header_combos:
        for action, method in (
            ("adminGetRaw", "get"),
            ("adminUpdatePca", "post"),
            ("adminAddPerformance", "post"),
        ):
            kwargs = {"headers": headers}
            if action == "adminAddPerformance":
                kwargs["json"] = {"records": []}
            resp = getattr(killed, method)(f"/api/{action}", **kwargs)
            assert resp.status_code == 403, (action, headers)
            assert resp.json()["error"]["code"] == "forbidden"
            refused += 1
    assert refused == 15

    # projections: recompute everything, then verify label self-consistency
    r = client.post("/api/adminUpdatePca", headers=admin)
    assert r.status_code == 200
    assert len(r.json()["updated"]) == 15

    def oracle_label(points, point):
        xs = [p["x"] for p in points]
        ys = [p["y"] for p in points]

        def norm(v, lo, hi):
            return 0.5 if hi == lo else (v - lo) / (hi - lo)

        scores = [
            (norm(p["x"], min(xs), max(xs)) + norm(p["y"], min(ys), max(ys))) / 2
            for p in points
        ]
        mine = (
            norm(point["x"], min(xs), max(xs)) + norm(point["y"], min(ys), max(ys))
        ) / 2
        qs = np.percentile(scores, [20, 40, 60, 80])
        names = ["very_hard", "hard", "medium", "easy", "very_easy"]
        for i, q in enumerate(qs):
            if mine <= q:
                return names[i]
        return names[4]

    for metric in MetricKind:
        for k in (1, 3, 5, 10, 20):
            r = client.get("/api/getPca", params={"metric": metric.value, "k": str(k)})
            assert r.status_code == 200
            points = r.json()["points"]
            assert sorted(p["dataset"] for p in points) == sorted(dataset_names)
            for p in points:
                assert p["difficultyLabel"] == oracle_label(points, p)
                assert 0.0 <= p["difficultyScore"] <= 1.0

    store.close()
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(f"PASS API contract: 300-record byte-equal round trip, 15/15 kill-switch 403s, "
          f"15 slices label-consistent, {elapsed:.1f}s")


def test_primary_suite_wall_clock_under_60s():
    elapsed = time.perf_counter() - _T0
    assert elapsed < 60.0, f"primary acceptance checks took {elapsed:.1f}s"
    print(f"PASS runtime: acceptance checks completed in {elapsed:.1f}s")
