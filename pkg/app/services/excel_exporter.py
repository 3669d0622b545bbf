"""Generate Excel files and ZIP for invariant exports."""
from __future__ import annotations

import io
import logging
import zipfile
from typing import Sequence

import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill

from app.services.maps import ComparisonReport, InvariantReport
from app.services.report_workbook import generate_comparison_report

logger = logging.getLogger(__name__)


def invariants_frame(report: InvariantReport) -> pd.DataFrame:
    """One row per (invariant, generator)."""
    rows = []
    for order in report.orders:
        for alpha, text in zip(report.gin_components[order].sorted_generators(order),
                               report.gin_components[order].monomial_strings(order)):
            rows.append({'Invariant': 'gin components', 'Order': order.value, 'Generator': text, 'Degree': sum(alpha)})
    primary = report.primary_order
    quotient = report.gin_quotient
    if quotient.is_zero():
        rows.append({'Invariant': 'gin quotient', 'Order': primary.value, 'Generator': '0', 'Degree': None})
    for alpha, text in zip(quotient.sorted_generators(primary), quotient.monomial_strings(primary)):
        rows.append({'Invariant': 'gin quotient', 'Order': primary.value, 'Generator': text, 'Degree': sum(alpha)})
    for alpha, text in zip(report.gin_afspan.sorted(), report.gin_afspan.monomial_strings()):
        rows.append({'Invariant': 'gin afspan', 'Order': 'green-grlex', 'Generator': text, 'Degree': sum(alpha)})
    return pd.DataFrame(rows, columns=['Invariant', 'Order', 'Generator', 'Degree'])


def comparison_frame(comparison: ComparisonReport) -> pd.DataFrame:
    """One row per compared invariant."""
    data = [
        {
            'Check Name': c.check_name,
            'Status': c.status,
            comparison.map_a: c.value_a,
            comparison.map_b: c.value_b,
            'Details': c.details,
        }
        for c in comparison.checks
    ]
    return pd.DataFrame(data)


def _sheet_name(name: str, used: set[str]) -> str:
    # Excel limits sheet names to 31 characters and forbids a few symbols.
    base = "".join("_" if ch in '[]:*?/\\' else ch for ch in name)[:31] or "Map"
    candidate, k = base, 2
    while candidate in used:
        suffix = f"_{k}"
        candidate = base[:31 - len(suffix)] + suffix
        k += 1
    used.add(candidate)
    return candidate


def create_excel_export(reports: Sequence[InvariantReport], comparison: ComparisonReport | None = None) -> bytes:
    """Create ZIP file with Invariants.xlsx and, if given, Comparison_Report.xlsx.

    Args:
        reports: one InvariantReport per map, one sheet each
        comparison: optional ComparisonReport of two of the maps

    Returns:
        ZIP file bytes
    """
    logger.info("[EXPORTER] Creating invariants workbook for %d map(s)", len(reports))
    excel_files = {}

    out = io.BytesIO()
    used: set[str] = set()
    with pd.ExcelWriter(out, engine='openpyxl') as writer:
        for report in reports:
            frame = invariants_frame(report)
            sheet = _sheet_name(report.map_name, used)
            frame.to_excel(writer, sheet_name=sheet, index=False)
            _style_header(writer.sheets[sheet])
            logger.info("[EXPORTER] Added sheet %s (%d rows)", sheet, len(frame))
        if comparison is not None:
            frame = comparison_frame(comparison)
            sheet = _sheet_name("Comparison", used)
            frame.to_excel(writer, sheet_name=sheet, index=False)
            _style_header(writer.sheets[sheet])
    excel_files['Invariants.xlsx'] = out.getvalue()

    if comparison is not None:
        excel_files['Comparison_Report.xlsx'] = generate_comparison_report(comparison)
        logger.info("[EXPORTER] Created Comparison_Report.xlsx (%s)", comparison.verdict)

    zip_out = io.BytesIO()
    with zipfile.ZipFile(zip_out, mode='w', compression=zipfile.ZIP_DEFLATED) as zf:
        for filename, file_bytes in excel_files.items():
            zf.writestr(filename, file_bytes)
    zip_bytes = zip_out.getvalue()
    logger.info("[EXPORTER] Generated ZIP (%d bytes) with %s", len(zip_bytes), ", ".join(excel_files))
    return zip_bytes


def _style_header(ws):
    """Blue bold header row."""
    header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
    header_font = Font(bold=True, color="FFFFFF")
    header_alignment = Alignment(horizontal='center', vertical='center')
    for cell in ws[1]:
        cell.fill = header_fill
        cell.font = header_font
        cell.alignment = header_alignment
