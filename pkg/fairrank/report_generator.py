"""
Report Generator for experiment results
Writes the per-ranker metric chart as SVG, CSV or an Excel workbook
"""

from datetime import datetime
from html import escape
from pathlib import Path
from typing import Dict, List, Union

import allure
import pandas as pd
from allure_commons.types import AttachmentType

from config.config import REPORT_SETTINGS
from fairrank.exceptions import UnsupportedFormatError
from fairrank.experiment import Aggregates, ordered_rankers
from fairrank.run_store import atomic_output, atomic_write_text
from utils.logger import get_logger

logger = get_logger('report')

METRIC_LABELS = {
    'exposure_disparity': 'Exposure disparity',
    'exposure_share': 'Protected exposure share',
    'generation_parity': 'Generation parity',
    'utility': 'Utility'
}


def chart_data(aggregates: Aggregates) -> pd.DataFrame:
    """
    One row per (ranker, report metric) with the aggregate mean

    Returns:
        DataFrame with columns ranker, metric, value (rounded), n
    """
    decimals = REPORT_SETTINGS['decimals']
    rows = []
    for ranker in aggregates.rankers:
        for metric in REPORT_SETTINGS['report_metrics']:
            stats = aggregates.stats.get((ranker, metric))
            if stats is None:
                continue
            rows.append({
                'ranker': ranker,
                'metric': metric,
                'value': round(stats.mean, decimals),
                'n': stats.n
            })
    return pd.DataFrame(rows, columns=['ranker', 'metric', 'value', 'n'])


class ReportGenerator:
    """Render chart data into the format named by the output extension"""

    def __init__(self, aggregates: Aggregates, ttests: pd.DataFrame = None):
        self.aggregates = aggregates
        self.ttests = ttests
        self.data = chart_data(aggregates)

    def save(self, out: Union[str, Path]) -> Path:
        out = Path(out)
        suffix = out.suffix.lower()
        writers = {'.svg': self.save_svg, '.csv': self.save_csv, '.xlsx': self.save_excel}
        if suffix not in writers:
            raise UnsupportedFormatError(
                f"unsupported report format '{out.suffix or out.name}'; "
                f"use one of {REPORT_SETTINGS['supported_extensions']}"
            )
        with allure.step(f'Write report: {out.name}'):
            path = writers[suffix](out)
            allure.attach(self.data.to_csv(index=False), 'Chart Data', AttachmentType.CSV)
        logger.info(f"[REPORT] Saved {path} ({len(self.data)} bars)")
        return path

    def save_csv(self, out: Path) -> Path:
        return atomic_write_text(
            out, self.data.to_csv(index=False, lineterminator='\n', float_format='%.4f')
        )

    def render_svg(self) -> str:
        settings = REPORT_SETTINGS['svg']
        width, height = settings['width'], settings['height']
        colors = settings['bar_colors']
        metrics = [m for m in REPORT_SETTINGS['report_metrics'] if m in set(self.data['metric'])]
        rankers = ordered_rankers(self.data['ranker'].unique())
        values: Dict[tuple, float] = {
            (row.ranker, row.metric): row.value for row in self.data.itertuples()
        }

        left, right, top, bottom = 60, 180, 40, 60
        plot_w = width - left - right
        plot_h = height - top - bottom
        group_w = plot_w / max(len(rankers), 1)
        bar_w = group_w * 0.8 / max(len(metrics), 1)
        baseline = top + plot_h

        parts: List[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-size="16">'
            f'Mean metric value per ranker</text>',
            f'<line x1="{left}" y1="{baseline}" x2="{left + plot_w}" y2="{baseline}" stroke="#333"/>',
            f'<line x1="{left}" y1="{top}" x2="{left}" y2="{baseline}" stroke="#333"/>'
        ]
        for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
            y = baseline - tick * plot_h
            parts.append(f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11">{tick:.2f}</text>')

        for g, ranker in enumerate(rankers):
            group_x = left + g * group_w + group_w * 0.1
            for b, metric in enumerate(metrics):
                if (ranker, metric) not in values:
                    continue
                value = values[(ranker, metric)]
                bar_h = max(0.0, min(value, 1.0)) * plot_h
                x = group_x + b * bar_w
                parts.append(
                    f'<rect class="bar" data-ranker="{escape(ranker)}" data-metric="{metric}" '
                    f'data-value="{value:.4f}" x="{x:.1f}" y="{baseline - bar_h:.1f}" '
                    f'width="{bar_w:.1f}" height="{bar_h:.1f}" fill="{colors[b % len(colors)]}">'
                    f'<title>{escape(ranker)} {metric}: {value:.4f}</title></rect>'
                )
            parts.append(
                f'<text x="{left + (g + 0.5) * group_w:.1f}" y="{baseline + 20}" '
                f'text-anchor="middle" font-size="12">{escape(ranker)}</text>'
            )

        for b, metric in enumerate(metrics):
            y = top + 10 + b * 20
            x = left + plot_w + 20
            parts.append(f'<rect class="legend" x="{x}" y="{y}" width="12" height="12" fill="{colors[b % len(colors)]}"/>')
            parts.append(f'<text x="{x + 18}" y="{y + 10}" font-size="12">{METRIC_LABELS.get(metric, metric)}</text>')
        parts.append('</svg>')
        return '\n'.join(parts) + '\n'

    def save_svg(self, out: Path) -> Path:
        return atomic_write_text(out, self.render_svg())

    def _summary_rows(self) -> pd.DataFrame:
        rows = [
            ('Generated', datetime.now().strftime('%Y-%m-%d %H:%M:%S')),
            ('Rankers', ', '.join(self.aggregates.rankers)),
            ('Metrics', ', '.join(self.aggregates.metrics)),
        ]
        for ranker in self.aggregates.rankers:
            stats = self.aggregates.stats.get((ranker, 'exposure_share'))
            if stats is not None:
                rows.append((f'{ranker} trials', stats.n))
        return pd.DataFrame(rows, columns=['Item', 'Value'])

    def save_excel(self, out: Path) -> Path:
        """Summary, Aggregates, Chart Data (and T-Tests when given) sheets plus a column chart"""
        with atomic_output(out) as tmp:
            with pd.ExcelWriter(tmp, engine='xlsxwriter') as writer:
                workbook = writer.book
                header_format = workbook.add_format({
                    'bold': True,
                    'bg_color': '#4472C4',
                    'font_color': 'white',
                    'border': 1
                })

                summary = self._summary_rows()
                summary.to_excel(writer, sheet_name='Summary', index=False)
                worksheet = writer.sheets['Summary']
                worksheet.set_column('A:A', 25)
                worksheet.set_column('B:B', 60)

                sheets = [('Aggregates', self.aggregates.to_frame()), ('Chart Data', self.data)]
                if self.ttests is not None and not self.ttests.empty:
                    sheets.append(('T-Tests', self.ttests))
                for name, frame in sheets:
                    frame.to_excel(writer, sheet_name=name, index=False)
                    worksheet = writer.sheets[name]
                    for col_num, column in enumerate(frame.columns):
                        worksheet.write(0, col_num, column, header_format)
                    worksheet.set_column(0, len(frame.columns) - 1, 18)

                pivot = self.data.pivot(index='ranker', columns='metric', values='value')
                pivot = pivot.reindex(ordered_rankers(pivot.index))
                pivot = pivot[[m for m in REPORT_SETTINGS['report_metrics'] if m in pivot.columns]]
                pivot.to_excel(writer, sheet_name='Chart')
                chart = workbook.add_chart({'type': 'column'})
                colors = REPORT_SETTINGS['svg']['bar_colors']
                for i, metric in enumerate(pivot.columns, start=1):
                    chart.add_series({
                        'name': ['Chart', 0, i],
                        'categories': ['Chart', 1, 0, len(pivot), 0],
                        'values': ['Chart', 1, i, len(pivot), i],
                        'fill': {'color': colors[(i - 1) % len(colors)]}
                    })
                chart.set_title({'name': 'Mean metric value per ranker'})
                chart.set_y_axis({'min': 0, 'max': 1})
                writer.sheets['Chart'].insert_chart('G2', chart)
        return out
