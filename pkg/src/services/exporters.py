import csv
import io
import json
import logging
import sys
from contextlib import contextmanager
from typing import IO, Iterable, Iterator, Optional, Sequence, Set, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from src.core.factorizations import LengthStats
from src.utils.config import (
    STATS_HEADER,
    SVG_HASH_SALT,
    SVG_HEIGHT,
    SVG_HIGHLIGHT_COLOR,
    SVG_MARGIN,
    SVG_POINT_COLOR,
    SVG_POINT_RADIUS,
    SVG_WIDTH,
)

logger = logging.getLogger(__name__)


@contextmanager
def open_output(path: Optional[str]) -> Iterator[IO[str]]:
    """Yield a text stream for path, or stdout when path is None or '-'."""
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="", encoding="utf-8") as handle:
        yield handle
    logger.info(f"💾 Wrote {path}")


def write_stats_csv(rows: Iterable[LengthStats], stream: IO[str]) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(STATS_HEADER)
    count = 0
    for row in rows:
        writer.writerow([row.n, row.max_len, row.min_len, row.elasticity.numerator, row.elasticity.denominator])
        count += 1
    return count


def write_json(payload: dict, stream: IO[str]) -> None:
    # insertion order is the schema order
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def render_svg(points: Sequence[Tuple[int, float]], title: str, highlight: Optional[Set[int]] = None) -> str:
    """Scatter plot of (n, value) pairs on a fixed 800x600 canvas; n in highlight is drawn in red."""
    highlight = highlight or set()
    xs = [n for n, _ in points]
    ys = [value for _, value in points]
    colors = [SVG_HIGHLIGHT_COLOR if n in highlight else SVG_POINT_COLOR for n in xs]

    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(SVG_WIDTH / 72, SVG_HEIGHT / 72), dpi=72)
        fig.subplots_adjust(
            left=SVG_MARGIN / SVG_WIDTH,
            right=1 - SVG_MARGIN / SVG_WIDTH,
            bottom=SVG_MARGIN / SVG_HEIGHT,
            top=1 - SVG_MARGIN / SVG_HEIGHT,
        )
        # marker size is the squared diameter in points
        scatter = ax.scatter(xs, ys, s=(2 * SVG_POINT_RADIUS) ** 2, c=colors or None, linewidths=0)
        scatter.set_gid("points")
        ax.set_title(title)
        ax.grid(True)
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.debug(f"📈 Rendered {len(points)} points ({len(highlight)} highlighted)")
    return buffer.getvalue()
