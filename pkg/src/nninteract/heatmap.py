"""Minimal SVG heatmap emission for pairwise strength matrices.

Cell fills are a min-max affine map of the matrix entries onto a two-color
ramp (white for the minimum, dark blue for the maximum).
"""

import numpy as np

LIGHT = (255, 255, 255)
DARK = (8, 48, 107)


def _ramp(t):
    r = round(LIGHT[0] + t * (DARK[0] - LIGHT[0]))
    g = round(LIGHT[1] + t * (DARK[1] - LIGHT[1]))
    b = round(LIGHT[2] + t * (DARK[2] - LIGHT[2]))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(matrix, labels=None, cell=24, margin=60):
    """Render a matrix as an SVG string."""
    M = np.asarray(matrix, dtype=float)
    n, m = M.shape
    if labels is None:
        labels = [str(i + 1) for i in range(max(n, m))]
    lo, hi = float(M.min()), float(M.max())
    span = hi - lo if hi > lo else 1.0
    width = margin + m * cell + 10
    height = margin + n * cell + 10
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(n):
        for j in range(m):
            t = (M[i, j] - lo) / span
            x = margin + j * cell
            y = margin + i * cell
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{_ramp(t)}" stroke="#cccccc" stroke-width="0.5"/>')
    for j in range(m):
        x = margin + j * cell + cell // 2
        parts.append(
            f'<text x="{x}" y="{margin - 8}" font-size="10" '
            f'text-anchor="middle">{labels[j]}</text>')
    for i in range(n):
        y = margin + i * cell + cell // 2 + 4
        parts.append(
            f'<text x="{margin - 8}" y="{y}" font-size="10" '
            f'text-anchor="end">{labels[i]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_heatmap(matrix, path, labels=None):
    with open(path, "w") as f:
        f.write(heatmap_svg(matrix, labels))
