"""gin invariants web service - map invariants, comparisons and exports."""
from __future__ import annotations

import io
import logging
import traceback
from typing import Optional

from fastapi import FastAPI, Form
from fastapi.responses import HTMLResponse, JSONResponse, StreamingResponse

logging.basicConfig(level=logging.INFO, format="%(message)s")
logger = logging.getLogger(__name__)

# Track import errors
import_errors = []

try:
    from app.services.catalog import catalog, catalog_entries, custom_map, parse_params
    from app.services.errors import GinToolkitError
    from app.services.gin import GinConfig
    from app.services.maps import RationalMap, compare, invariants
    from app.services.poly import MonomialOrder
except Exception as e:
    import_errors.append(f"services: {str(e)}")
    GinToolkitError = None

try:
    from app.services.excel_exporter import create_excel_export
except Exception as e:
    import_errors.append(f"excel_exporter: {str(e)}")
    create_excel_export = None

try:
    from app.web.templates import get_home_page
except Exception as e:
    import_errors.append(f"templates: {str(e)}")
    get_home_page = None

try:
    from app.web.comparison_dashboard import get_comparison_dashboard
except Exception as e:
    import_errors.append(f"comparison_dashboard: {str(e)}")
    get_comparison_dashboard = None

app = FastAPI(title="gin invariants")


def _error_response(exc: Exception) -> JSONResponse:
    if GinToolkitError is not None and isinstance(exc, GinToolkitError):
        logger.info("[API] %s: %s", type(exc).__name__, exc)
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": str(exc), "error_type": type(exc).__name__},
        )
    if isinstance(exc, ValueError):
        return JSONResponse(status_code=400, content={"error": str(exc), "error_type": type(exc).__name__})
    logger.error("[ERROR] %s", exc)
    traceback.print_exc()
    return JSONResponse(
        status_code=500,
        content={
            "error": str(exc),
            "error_type": type(exc).__name__,
            "traceback": traceback.format_exc(),
        },
    )


def _import_failure() -> Optional[JSONResponse]:
    if import_errors:
        return JSONResponse(status_code=500, content={"error": "Import error", "details": import_errors})
    return None


def _load_map(
    map_name: str = "",
    params: str = "",
    source: str = "",
    target: str = "",
    num: str = "",
    den: str = "1",
) -> "RationalMap":
    if map_name:
        return catalog(map_name, parse_params(params))
    if not target or not num:
        raise ValueError("give map_name, or target and num for a custom map")
    return custom_map(source or "2,0", target, num, den)


def _orders(text: str) -> list:
    return [MonomialOrder.parse(part) for part in (text or "grevlex").split(",") if part.strip()]


@app.get("/", response_class=HTMLResponse)
async def home():
    """Serve the home page."""
    logger.debug("[API] Home page accessed")
    if get_home_page is None or import_errors:
        return f"<h1>Error: modules failed to import</h1><pre>{import_errors}</pre>"
    return get_home_page(catalog_entries())


@app.get("/health")
async def health():
    """Verify the server is working."""
    return {"status": "working"}


@app.get("/catalog")
async def list_catalog():
    failure = _import_failure()
    if failure:
        return failure
    return [entry.to_json() for entry in catalog_entries()]


@app.post("/map-invariants")
async def map_invariants(
    map_name: str = Form(""),
    params: str = Form(""),
    source: str = Form(""),
    target: str = Form(""),
    num: str = Form(""),
    den: str = Form("1"),
    orders: str = Form("grevlex"),
):
    """Compute the invariant report of a catalog or custom map."""
    failure = _import_failure()
    if failure:
        return failure
    try:
        logger.info("[API] POST /map-invariants map=%s params=%s", map_name or "custom", params)
        f = _load_map(map_name, params, source, target, num, den)
        report = invariants(f, GinConfig.from_env(), _orders(orders))
        logger.info("[API] %s done in %.2fs", report.map_name, sum(report.timings.values()))
        return report.to_json()
    except Exception as e:
        return _error_response(e)


def _compare_maps(map_a: str, params_a: str, map_b: str, params_b: str, orders: str):
    cfg = GinConfig.from_env()
    order_list = _orders(orders)
    report_a = invariants(catalog(map_a, parse_params(params_a)), cfg, order_list)
    report_b = invariants(catalog(map_b, parse_params(params_b)), cfg, order_list)
    return report_a, report_b, compare(report_a, report_b)


@app.post("/compare", response_class=HTMLResponse)
async def compare_view(
    map_a: str = Form(...),
    map_b: str = Form(...),
    params_a: str = Form(""),
    params_b: str = Form(""),
    orders: str = Form("grevlex"),
):
    """Compare two catalog maps and view the dashboard in the browser."""
    failure = _import_failure()
    if failure:
        return failure
    try:
        logger.info("[API] POST /compare %s vs %s", map_a, map_b)
        report_a, report_b, comparison = _compare_maps(map_a, params_a, map_b, params_b, orders)
        html = get_comparison_dashboard(comparison, report_a, report_b)
        logger.info("[API] Returning HTML dashboard (%d bytes)", len(html))
        return HTMLResponse(html)
    except Exception as e:
        return _error_response(e)


@app.post("/export")
async def export(
    map_a: str = Form(...),
    map_b: str = Form(...),
    params_a: str = Form(""),
    params_b: str = Form(""),
    orders: str = Form("grevlex"),
):
    """Compare two catalog maps and download the workbooks as a ZIP."""
    failure = _import_failure()
    if failure:
        return failure
    try:
        logger.info("[API] POST /export %s vs %s", map_a, map_b)
        report_a, report_b, comparison = _compare_maps(map_a, params_a, map_b, params_b, orders)
        zip_bytes = create_excel_export([report_a, report_b], comparison)
        logger.info("[API] Returning ZIP (%d bytes)", len(zip_bytes))
        headers = {"Content-Disposition": "attachment; filename=Invariants_Export.zip"}
        return StreamingResponse(io.BytesIO(zip_bytes), media_type="application/zip", headers=headers)
    except Exception as e:
        return _error_response(e)
