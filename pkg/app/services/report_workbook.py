from __future__ import annotations

import io
from datetime import datetime

from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, PatternFill

from app.services.maps import DIFFERENT, EQUAL, ComparisonReport

GREEN_FILL = PatternFill(start_color="C6EFCE", end_color="C6EFCE", fill_type="solid")
RED_FILL = PatternFill(start_color="FFC7CE", end_color="FFC7CE", fill_type="solid")
HEADER_FILL = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
GREY_FILL = PatternFill(start_color="E7E6E6", end_color="E7E6E6", fill_type="solid")


class ComparisonReporter:
    """Generates Excel reports for map comparisons."""

    def __init__(self, comparison: ComparisonReport):
        self.comparison = comparison
        self.results = comparison.checks
        self.summary = comparison.summary

    def generate_excel_report(self) -> bytes:
        """Generate a workbook with the comparison.

        Creates two sheets:
        - Summary: verdict and counts
        - All Checks: one row per compared invariant

        Returns:
            Excel file bytes
        """
        wb = Workbook()
        if 'Sheet' in wb.sheetnames:
            wb.remove(wb['Sheet'])

        self._create_summary_sheet(wb)
        self._create_all_checks_sheet(wb)

        out = io.BytesIO()
        wb.save(out)
        return out.getvalue()

    def _create_summary_sheet(self, wb: Workbook):
        ws = wb.create_sheet("Summary", 0)

        ws['A1'] = f'Invariant Comparison: {self.comparison.map_a} vs {self.comparison.map_b}'
        ws['A1'].font = Font(size=16, bold=True, color="FFFFFF")
        ws['A1'].fill = HEADER_FILL
        ws['A1'].alignment = Alignment(horizontal='center', vertical='center')
        ws.merge_cells('A1:D1')
        ws.row_dimensions[1].height = 30

        ws['A2'] = f'Generated: {datetime.now().strftime("%Y-%m-%d %H:%M:%S")}'
        ws['A2'].font = Font(size=10, italic=True)
        ws.merge_cells('A2:D2')

        ws['A4'] = 'Verdict:'
        ws['A4'].font = Font(bold=True, size=12)
        ws['B4'] = self.summary['verdict']
        # A difference is a proof; agreement is only inconclusive.
        if self.summary['different']:
            ws['B4'].fill = RED_FILL
            ws['B4'].font = Font(bold=True, size=12, color="9C0006")
        else:
            ws['B4'].fill = GREEN_FILL
            ws['B4'].font = Font(bold=True, size=12, color="006100")

        ws['A6'] = 'Check Statistics'
        ws['A6'].font = Font(bold=True, size=11)
        ws['A6'].fill = GREY_FILL
        ws.merge_cells('A6:B6')

        stats = [
            ('Invariants Compared:', self.summary['total_checks']),
            ('Equal:', self.summary['equal']),
            ('Different:', self.summary['different']),
        ]
        row = 7
        for label, value in stats:
            ws[f'A{row}'] = label
            ws[f'A{row}'].font = Font(bold=True)
            ws[f'B{row}'] = value
            if label == 'Different:' and value > 0:
                ws[f'B{row}'].font = Font(bold=True, color="9C0006")
            elif label == 'Equal:' and value > 0:
                ws[f'B{row}'].font = Font(bold=True, color="006100")
            row += 1

        ws.column_dimensions['A'].width = 25
        ws.column_dimensions['B'].width = 40
        ws.column_dimensions['C'].width = 50
        ws.column_dimensions['D'].width = 15

    def _create_all_checks_sheet(self, wb: Workbook):
        ws = wb.create_sheet("All Checks")

        headers = ['Invariant', 'Status', self.comparison.map_a, self.comparison.map_b, 'Details']
        for col_idx, header in enumerate(headers, 1):
            cell = ws.cell(row=1, column=col_idx, value=header)
            cell.font = Font(bold=True, color="FFFFFF", size=11)
            cell.fill = HEADER_FILL
            cell.alignment = Alignment(horizontal='center', vertical='center')

        row_idx = 2
        for check in self.results:
            ws.cell(row=row_idx, column=1, value=check.check_name)
            ws.cell(row=row_idx, column=2, value=check.status)
            ws.cell(row=row_idx, column=3, value=check.value_a)
            ws.cell(row=row_idx, column=4, value=check.value_b)
            ws.cell(row=row_idx, column=5, value=check.details)

            status_cell = ws.cell(row=row_idx, column=2)
            if check.status == EQUAL:
                status_cell.fill = GREEN_FILL
                status_cell.font = Font(bold=True, color="006100")
            elif check.status == DIFFERENT:
                status_cell.fill = RED_FILL
                status_cell.font = Font(bold=True, color="9C0006")

            for col in (3, 4, 5):
                ws.cell(row=row_idx, column=col).alignment = Alignment(wrap_text=True, vertical='top')
            row_idx += 1

        ws.column_dimensions['A'].width = 28
        ws.column_dimensions['B'].width = 12
        ws.column_dimensions['C'].width = 50
        ws.column_dimensions['D'].width = 50
        ws.column_dimensions['E'].width = 40
        ws.freeze_panes = 'A2'


def generate_comparison_report(comparison: ComparisonReport) -> bytes:
    """Convenience function to generate the comparison workbook.

    Args:
        comparison: ComparisonReport from maps.compare

    Returns:
        Excel file bytes
    """
    return ComparisonReporter(comparison).generate_excel_report()
