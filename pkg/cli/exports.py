import io

import openpyxl
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter

HEADERS = [
    "n",
    "Status",
    "Rank",
    "Rank Target",
    "Column Space Hash",
    "log max|s_1i| / n",
    "log |Λ_1| / n",
    "Lambda Identity",
]


def sweep_rows(certificates):
    rows = []
    for certificate in certificates:
        lam = certificate['checks'].get('lambda', {})
        growth = lam.get('growth', {})
        rows.append([
            certificate['instance']['n'],
            certificate['status'],
            certificate.get('rank'),
            certificate.get('rank_target'),
            certificate['basis_hash'],
            growth.get('log_max_s_over_n'),
            growth.get('log_lambda_over_n'),
            lam.get('status', 'skipped'),
        ])
    return rows


def generate_sweep_workbook(certificates, summary):
    """Excel workbook with one row per instance and a summary sheet."""
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "Sweep"

    header_row = 1
    for col_num, header in enumerate(HEADERS, 1):
        cell = ws.cell(row=header_row, column=col_num, value=header)
        cell.fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
        cell.font = Font(bold=True, color="FFFFFF")
        cell.alignment = Alignment(horizontal='center')

    for row_num, row_data in enumerate(sweep_rows(certificates), header_row + 1):
        for col_num, cell_value in enumerate(row_data, 1):
            ws.cell(row=row_num, column=col_num, value=cell_value)

    for col_num in range(1, len(HEADERS) + 1):
        ws.column_dimensions[get_column_letter(col_num)].width = 18
    ws.column_dimensions['E'].width = 68

    summary_sheet = wb.create_sheet("Summary")
    for row_num, (key, value) in enumerate(sorted(summary.items()), 1):
        summary_sheet.cell(row=row_num, column=1, value=key).font = Font(bold=True)
        summary_sheet.cell(row=row_num, column=2, value=str(value))
    summary_sheet.column_dimensions['A'].width = 28
    summary_sheet.column_dimensions['B'].width = 40

    output = io.BytesIO()
    wb.save(output)
    output.seek(0)

    return output
