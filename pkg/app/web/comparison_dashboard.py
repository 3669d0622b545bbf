"""Comparison Dashboard HTML Template."""
from __future__ import annotations

from html import escape

from app.services.maps import DIFFERENT, ComparisonReport, InvariantReport


def get_comparison_dashboard(comparison: ComparisonReport, report_a: InvariantReport, report_b: InvariantReport) -> str:
    """Generate the HTML dashboard for a comparison of two maps.

    Args:
        comparison: ComparisonReport from maps.compare
        report_a: InvariantReport of the first map
        report_b: InvariantReport of the second map

    Returns:
        HTML string
    """
    summary = comparison.summary
    if summary['different']:
        status_color = "#ea1100"
        status_bg = "#fff0f0"
    else:
        status_color = "#2a8703"
        status_bg = "#f0fdf4"

    rows = "\n".join(_check_row(c) for c in comparison.checks)

    return f"""
    <!DOCTYPE html>
    <html lang="en">
    <head>
        <meta charset="UTF-8">
        <title>Comparison - {escape(comparison.map_a)} vs {escape(comparison.map_b)}</title>
        <style>
            * {{
                margin: 0;
                padding: 0;
                box-sizing: border-box;
            }}

            body {{
                font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif;
                background: #1a1f2e;
                min-height: 100vh;
                padding: 20px;
                color: #d0d4de;
            }}

            .container {{
                max-width: 1200px;
                margin: 0 auto;
            }}

            .header, .section, .card {{
                background: #242936;
                border-radius: 12px;
                box-shadow: 0 4px 6px rgba(0, 0, 0, 0.4);
                border: 1px solid #2d3548;
            }}

            .header {{
                padding: 30px;
                margin-bottom: 20px;
            }}

            h1 {{
                color: #ffffff;
                font-size: 28px;
                margin-bottom: 10px;
            }}

            .subtitle {{
                color: #8b92a8;
                font-size: 15px;
            }}

            .summary-cards {{
                display: grid;
                grid-template-columns: repeat(auto-fit, minmax(200px, 1fr));
                gap: 15px;
                margin-bottom: 20px;
            }}

            .card {{
                padding: 20px;
                text-align: center;
            }}

            .card-title {{
                color: #8b92a8;
                font-size: 14px;
                margin-bottom: 10px;
                text-transform: uppercase;
            }}

            .card-value {{
                font-size: 30px;
                font-weight: bold;
            }}

            .card.status {{
                background: {status_bg};
                border: 2px solid {status_color};
            }}

            .card.status .card-value {{
                color: {status_color};
                font-size: 20px;
            }}

            .card.equal .card-value {{ color: #2a8703; }}
            .card.different .card-value {{ color: #ea1100; }}

            .section {{
                overflow: hidden;
            }}

            table {{
                width: 100%;
                border-collapse: collapse;
            }}

            th {{
                background: #2d3548;
                color: #ffffff;
                text-align: left;
                padding: 12px;
                font-size: 13px;
            }}

            td {{
                padding: 12px;
                border-top: 1px solid #2d3548;
                font-family: monospace;
                font-size: 13px;
                vertical-align: top;
            }}

            .badge {{
                padding: 4px 10px;
                border-radius: 12px;
                font-weight: bold;
                font-family: 'Segoe UI', sans-serif;
            }}

            .badge.EQUAL {{ background: #c6efce; color: #006100; }}
            .badge.DIFFERENT {{ background: #ffc7ce; color: #9c0006; }}
        </style>
    </head>
    <body>
        <div class="container">
            <div class="header">
                <h1>{escape(comparison.map_a)} vs {escape(comparison.map_b)}</h1>
                <div class="subtitle">
                    {report_a.source} &rarr; {report_a.target} &middot; degrees {report_a.degree} and {report_b.degree}
                    &middot; seed {report_a.seed}
                </div>
            </div>
            <div class="summary-cards">
                <div class="card status">
                    <div class="card-title">Verdict</div>
                    <div class="card-value">{escape(summary['verdict'])}</div>
                </div>
                <div class="card equal">
                    <div class="card-title">Equal</div>
                    <div class="card-value">{summary['equal']}</div>
                </div>
                <div class="card different">
                    <div class="card-title">Different</div>
                    <div class="card-value">{summary['different']}</div>
                </div>
            </div>
            <div class="section">
                <table>
                    <tr><th>Invariant</th><th>Status</th><th>{escape(comparison.map_a)}</th><th>{escape(comparison.map_b)}</th></tr>
                    {rows}
                </table>
            </div>
        </div>
    </body>
    </html>
    """


def _check_row(check) -> str:
    details = f"<br><small>{escape(check.details)}</small>" if check.status == DIFFERENT and check.details else ""
    return (
        f"<tr><td>{escape(check.check_name)}{details}</td>"
        f"<td><span class=\"badge {check.status}\">{check.status}</span></td>"
        f"<td>{escape(check.value_a)}</td><td>{escape(check.value_b)}</td></tr>"
    )
