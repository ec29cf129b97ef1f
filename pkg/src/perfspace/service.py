"""HTTP layer: catalog, performance, and projection queries plus
authenticated admin actions, all behind one action-routed entry point.

Every request resolves through `/api?action=<name>`; each action is
also aliased at `/api/<name>`. Responses are JSON with camelCase keys.
Errors always carry a structured body: {"error": {"code", "message"}}.

Admin actions authenticate with the `X-Admin-Key` / `X-Admin-Secret`
headers against configured values. Leaving the secret unconfigured is
the kill switch: every admin action returns 403 no matter what headers
arrive, and no comparison is even attempted.
"""

import hmac
import json

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import analysis, pipeline
from .config import Config
from .metadata import classify_risk
from .model import (
    InvalidK,
    K_VALUES,
    MetricKind,
    PerformanceRecord,
    ScoreOutOfRange,
)
from .pca import ApsPoint
from .storage import NotComputed, Store

CACHE_CATALOG = "public, max-age=60"
CACHE_NONE = "no-store"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _err(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
        headers={"Cache-Control": CACHE_NONE},
    )


def _ok(payload: dict, cache: str = CACHE_NONE) -> JSONResponse:
    return JSONResponse(
        status_code=200, content=payload, headers={"Cache-Control": cache}
    )


def _parse_metric(params) -> MetricKind:
    raw = params.get("metric")
    if raw is None or raw == "":
        raise ApiError(400, "missing_parameter", "metric is required")
    try:
        return MetricKind(raw)
    except ValueError:
        raise ApiError(
            400,
            "invalid_parameter",
            f"metric must be one of {[m.value for m in MetricKind]}, got {raw!r}",
        ) from None


def _parse_k(params) -> int:
    raw = params.get("k")
    if raw is None or raw == "":
        raise ApiError(400, "missing_parameter", "k is required")
    try:
        k = int(raw)
    except ValueError:
        raise ApiError(
            400, "invalid_parameter", f"k must be an integer, got {raw!r}"
        ) from None
    if k not in K_VALUES:
        raise ApiError(
            400, "invalid_parameter", f"k must be one of {list(K_VALUES)}, got {k}"
        )
    return k


def _parse_ids(params, name: str) -> list[int]:
    raw = params.get(name, "")
    if raw == "":
        return []
    out = []
    for part in raw.split(","):
        try:
            out.append(int(part))
        except ValueError:
            raise ApiError(
                400,
                "invalid_id",
                f"{name} must be comma-separated integers, got {part!r}",
            ) from None
    return out


def _band_payload(band) -> dict:
    return {
        "bandIndex": band.band_index,
        "label": band.label,
        "description": band.description,
        "cause": band.cause,
    }


def _record_payload(rec) -> dict:
    return {
        "datasetId": rec.dataset.id,
        "dataset": rec.dataset.name,
        "algorithmId": rec.algorithm.id,
        "algorithm": rec.algorithm.name,
        "metric": rec.metric.value,
        "k": rec.k,
        "score": rec.score,
    }


def create_app(store: Store, config: Config | None = None) -> FastAPI:
    config = config or Config()
    app = FastAPI(title="performance-space API", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins,
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    def require_admin(request: Request):
        # kill switch first: unset secret refuses everything before any
        # header is even looked at
        if config.admin_secret is None or config.admin_key is None:
            raise ApiError(403, "forbidden", "admin access denied")
        key = request.headers.get("X-Admin-Key", "")
        secret = request.headers.get("X-Admin-Secret", "")
        key_ok = hmac.compare_digest(key.encode(), config.admin_key.encode())
        secret_ok = hmac.compare_digest(
            secret.encode(), config.admin_secret.encode()
        )
        if not (key_ok and secret_ok):
            raise ApiError(403, "forbidden", "admin access denied")

    # -- read actions ------------------------------------------------

    def get_algorithms(request: Request):
        algs = store.list_algorithms()
        return _ok(
            {"algorithms": [{"id": a.id, "name": a.name} for a in algs]},
            cache=CACHE_CATALOG,
        )

    def get_datasets(request: Request):
        payload = []
        for ref, meta in store.list_datasets():
            risk = classify_risk(meta)
            payload.append(
                {
                    "id": ref.id,
                    "name": ref.name,
                    "numUsers": meta.num_users,
                    "numItems": meta.num_items,
                    "numInteractions": meta.num_interactions,
                    "userItemRatio": meta.user_item_ratio,
                    "density": meta.density,
                    "meanPerUser": meta.mean_per_user,
                    "meanPerItem": meta.mean_per_item,
                    "maxPerUser": meta.max_per_user,
                    "minPerUser": meta.min_per_user,
                    "maxPerItem": meta.max_per_item,
                    "minPerItem": meta.min_per_item,
                    "feedback": meta.feedback.value if meta.feedback else None,
                    "risk": {
                        "userItemRatio": _band_payload(risk.user_item_ratio),
                        "meanPerUser": _band_payload(risk.mean_per_user),
                        "meanPerItem": _band_payload(risk.mean_per_item),
                    },
                }
            )
        return _ok({"datasets": payload}, cache=CACHE_CATALOG)

    def get_performance(request: Request):
        params = request.query_params
        metric = _parse_metric(params)
        k = _parse_k(params)
        ds_ids = _parse_ids(params, "datasetIds")
        alg_ids = _parse_ids(params, "algorithmIds")
        records = store.query_performance(ds_ids, alg_ids, metric, k)
        return _ok(
            {
                "metric": metric.value,
                "k": k,
                "records": [_record_payload(r) for r in records],
            },
            cache=CACHE_NONE,
        )

    def get_pca(request: Request):
        params = request.query_params
        metric = _parse_metric(params)
        k = _parse_k(params)
        try:
            rows = store.fetch_pca(metric, k)
        except NotComputed as exc:
            raise ApiError(404, "not_computed", str(exc)) from None
        points = [
            ApsPoint(dataset=r.dataset, x=r.x, y=r.y, var_x=r.var_x, var_y=r.var_y)
            for r in rows
        ]
        scores = analysis.difficulty_scores(points)
        labels = analysis.difficulty_labels(scores)
        payload_points = [
            {
                "datasetId": p.dataset.id,
                "dataset": p.dataset.name,
                "x": p.x,
                "y": p.y,
                "varX": p.var_x,
                "varY": p.var_y,
                "difficultyScore": scores[p.dataset],
                "difficultyLabel": labels[p.dataset].value,
            }
            for p in points
        ]
        first = rows[0]
        return _ok(
            {
                "metric": metric.value,
                "k": k,
                "points": payload_points,
                "explainedRatio": [
                    first.explained_ratio_1,
                    first.explained_ratio_2,
                ],
                "seed": first.seed,
                "bootstrapCount": first.bootstrap_count,
                "computedAt": first.computed_at,
            },
            cache=CACHE_CATALOG,
        )

    # -- admin actions -------------------------------------------------

    async def admin_add_performance(request: Request):
        require_admin(request)
        try:
            body = json.loads(await request.body() or b"null")
        except json.JSONDecodeError:
            raise ApiError(400, "invalid_parameter", "body is not valid JSON") from None
        if not isinstance(body, dict) or "records" not in body:
            raise ApiError(400, "missing_parameter", "body needs a records array")
        if not isinstance(body["records"], list):
            raise ApiError(400, "invalid_parameter", "records must be an array")
        catalogs = _Catalogs(store)
        records = [
            _record_from_payload(catalogs, i, raw)
            for i, raw in enumerate(body["records"])
        ]
        inserted, replaced = store.insert_performance(records)
        return _ok({"inserted": inserted, "replaced": replaced})

    def admin_get_raw(request: Request):
        require_admin(request)
        params = request.query_params
        out = []
        metrics = [_parse_metric(params)] if "metric" in params else list(MetricKind)
        ks = [_parse_k(params)] if "k" in params else list(K_VALUES)
        for metric in metrics:
            for k in ks:
                out.extend(
                    _record_payload(r)
                    for r in store.query_performance([], [], metric, k)
                )
        return _ok({"records": out})

    def admin_update_pca(request: Request):
        require_admin(request)
        params = request.query_params
        metric = _parse_metric(params) if params.get("metric") else None
        k = _parse_k(params) if params.get("k") else None
        summaries = pipeline.precompute_pca(store, config, metric=metric, k=k)
        updated = [
            {
                "metric": s.metric.value,
                "k": s.k,
                "nPoints": s.n_points,
                "explainedRatio": list(s.explained_ratio),
            }
            for s in summaries
            if s.ok
        ]
        skipped = [
            {"metric": s.metric.value, "k": s.k, "reason": s.reason}
            for s in summaries
            if not s.ok
        ]
        if not updated:
            raise ApiError(
                409,
                "insufficient_data",
                "; ".join(s["reason"] for s in skipped) or "nothing to compute",
            )
        return _ok({"updated": updated, "skipped": skipped})

    sync_actions = {
        "getAlgorithms": get_algorithms,
        "getDatasets": get_datasets,
        "getPerformance": get_performance,
        "getPca": get_pca,
        "adminGetRaw": admin_get_raw,
        "adminUpdatePca": admin_update_pca,
    }

    async def dispatch(action: str | None, request: Request):
        try:
            if not action:
                raise ApiError(400, "missing_parameter", "action is required")
            if action == "adminAddPerformance":
                return await admin_add_performance(request)
            handler = sync_actions.get(action)
            if handler is None:
                raise ApiError(404, "unknown_action", f"unknown action {action!r}")
            return handler(request)
        except ApiError as exc:
            return _err(exc.status, exc.code, exc.message)
        except Exception as exc:  # pragma: no cover - defensive 500
            return _err(500, "internal_error", str(exc))

    @app.get("/api")
    @app.post("/api")
    async def api_root(request: Request):
        return await dispatch(request.query_params.get("action"), request)

    @app.get("/api/{action}")
    @app.post("/api/{action}")
    async def api_alias(action: str, request: Request):
        return await dispatch(action, request)

    return app


class _Catalogs:
    """Id and name lookup tables, fetched once per admin write."""

    def __init__(self, store: Store):
        ds = store.list_datasets()
        algs = store.list_algorithms()
        self.ds_by_id = {ref.id: ref for ref, _meta in ds}
        self.ds_by_name = {ref.name: ref for ref, _meta in ds}
        self.alg_by_id = {a.id: a for a in algs}
        self.alg_by_name = {a.name: a for a in algs}


def _record_from_payload(catalogs: _Catalogs, index: int, raw) -> PerformanceRecord:
    if not isinstance(raw, dict):
        raise ApiError(400, "invalid_parameter", f"records[{index}] must be an object")
    missing = [f for f in ("metric", "k", "score") if f not in raw]
    if missing:
        raise ApiError(
            400,
            "missing_parameter",
            f"records[{index}] lacks {', '.join(missing)}",
        )
    dataset = None
    if "datasetId" in raw:
        if type(raw["datasetId"]) is not int:
            raise ApiError(
                400, "invalid_id", f"records[{index}].datasetId must be an integer"
            )
        dataset = catalogs.ds_by_id.get(raw["datasetId"])
    elif "dataset" in raw:
        dataset = catalogs.ds_by_name.get(str(raw["dataset"]))
    algorithm = None
    if "algorithmId" in raw:
        if type(raw["algorithmId"]) is not int:
            raise ApiError(
                400, "invalid_id", f"records[{index}].algorithmId must be an integer"
            )
        algorithm = catalogs.alg_by_id.get(raw["algorithmId"])
    elif "algorithm" in raw:
        algorithm = catalogs.alg_by_name.get(str(raw["algorithm"]))
    if dataset is None:
        raise ApiError(400, "invalid_id", f"records[{index}]: unknown dataset")
    if algorithm is None:
        raise ApiError(400, "invalid_id", f"records[{index}]: unknown algorithm")
    try:
        metric = MetricKind(raw["metric"])
    except ValueError:
        raise ApiError(
            400, "invalid_parameter", f"records[{index}]: bad metric {raw['metric']!r}"
        ) from None
    if type(raw["k"]) is not int:
        raise ApiError(400, "invalid_parameter", f"records[{index}].k must be an integer")
    if type(raw["score"]) not in (int, float):
        raise ApiError(400, "invalid_parameter", f"records[{index}].score must be a number")
    try:
        return PerformanceRecord(
            dataset=dataset,
            algorithm=algorithm,
            metric=metric,
            k=raw["k"],
            score=float(raw["score"]),
        )
    except (ScoreOutOfRange, InvalidK) as exc:
        raise ApiError(400, "invalid_parameter", f"records[{index}]: {exc}") from None
