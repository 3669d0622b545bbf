"""HTML templates for the invariants UI."""
from __future__ import annotations

from html import escape
from typing import Iterable

from app.services.catalog import CatalogEntry


def _catalog_options(entries: Iterable[CatalogEntry]) -> str:
    return "\n".join(
        f'<option value="{escape(e.name)}">{escape(e.name)} {e.source}&rarr;{e.target} {escape(e.description)}</option>'
        for e in entries
    )


def get_home_page(entries: Iterable[CatalogEntry]) -> str:
    """Return the home page with the invariants and comparison forms."""
    entries = list(entries)
    options = _catalog_options(entries)
    return f"""
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>gin invariants</title>
    <style>
        * {{
            margin: 0;
            padding: 0;
            box-sizing: border-box;
        }}

        body {{
            font-family: 'Inter', 'Segoe UI', -apple-system, BlinkMacSystemFont, sans-serif;
            background: #0d1117;
            color: #c9d1d9;
            min-height: 100vh;
        }}

        .top-header {{
            background: #161b22;
            border-bottom: 1px solid #30363d;
            padding: 16px 32px;
        }}

        .top-header h1 {{
            font-size: 20px;
            font-weight: 600;
            color: #f0f6fc;
            margin-bottom: 4px;
        }}

        .subtitle {{
            font-size: 14px;
            color: #8b949e;
        }}

        .container {{
            max-width: 1100px;
            margin: 0 auto;
            padding: 40px 32px;
            display: grid;
            grid-template-columns: 1fr 1fr;
            gap: 24px;
        }}

        .panel {{
            background: #161b22;
            border: 1px solid #30363d;
            border-radius: 12px;
            padding: 24px;
        }}

        .panel h2 {{
            font-size: 16px;
            color: #f0f6fc;
            margin-bottom: 16px;
        }}

        label {{
            display: block;
            font-size: 13px;
            color: #8b949e;
            margin: 12px 0 6px;
        }}

        select, input {{
            width: 100%;
            background: #0d1117;
            color: #c9d1d9;
            border: 1px solid #30363d;
            border-radius: 6px;
            padding: 8px 10px;
            font-size: 14px;
        }}

        .btn {{
            margin-top: 18px;
            padding: 10px 18px;
            border-radius: 6px;
            border: none;
            font-weight: 600;
            cursor: pointer;
        }}

        .btn-primary {{ background: #1f6feb; color: white; }}
        .btn-secondary {{ background: #21262d; color: #c9d1d9; border: 1px solid #30363d; }}

        pre {{
            margin-top: 16px;
            background: #0d1117;
            border: 1px solid #30363d;
            border-radius: 6px;
            padding: 12px;
            font-size: 12px;
            white-space: pre-wrap;
        }}
    </style>
</head>
<body>
    <div class="top-header">
        <h1>Generic initial ideal invariants</h1>
        <div class="subtitle">Rational maps between balls and hyperquadrics &middot; {len(entries)} catalog maps</div>
    </div>
    <div class="container">
        <div class="panel">
            <h2>Invariants of one map</h2>
            <form id="invariantsForm">
                <label for="mapName">Catalog map</label>
                <select name="map_name" id="mapName">{options}</select>
                <label for="params">Parameters (k=v;k=v)</label>
                <input name="params" id="params" placeholder="a=1/2" />
                <label for="orders">Orders</label>
                <input name="orders" id="orders" value="grevlex" />
                <button type="button" class="btn btn-primary" onclick="computeInvariants()">Compute</button>
            </form>
            <pre id="invariantsResult"></pre>
        </div>
        <div class="panel">
            <h2>Compare two maps</h2>
            <form id="compareForm" method="post" action="compare">
                <label for="mapA">Map A</label>
                <select name="map_a" id="mapA">{options}</select>
                <label for="paramsA">Parameters of A</label>
                <input name="params_a" id="paramsA" />
                <label for="mapB">Map B</label>
                <select name="map_b" id="mapB">{options}</select>
                <label for="paramsB">Parameters of B</label>
                <input name="params_b" id="paramsB" />
                <button type="submit" class="btn btn-secondary">View comparison</button>
                <button type="submit" class="btn btn-primary" formaction="export">Download ZIP</button>
            </form>
        </div>
    </div>
    <script>
        function computeInvariants() {{
            const form = new FormData(document.getElementById('invariantsForm'));
            const out = document.getElementById('invariantsResult');
            out.textContent = 'Computing...';
            fetch('map-invariants', {{ method: 'POST', body: form }})
                .then(r => r.json())
                .then(data => {{ out.textContent = JSON.stringify(data, null, 2); }})
                .catch(err => {{ out.textContent = 'Error: ' + err; }});
        }}
    </script>
</body>
</html>
"""
