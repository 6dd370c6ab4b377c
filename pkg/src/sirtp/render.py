"""SVG drawing of a solution pair: both sides next to each other, partners
share a fill colour."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .core import Partition, PartitionPair

# ColorBrewer Set3
PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)
MARGIN = 8


def _num(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _side(part: Partition, colors: list[str], name: str, x0: float, base: float, scale: float) -> list[str]:
    # base is the SVG y of the parent's bottom edge; model y grows upward
    W, H = part.parent.width, part.parent.height
    out = [
        f'<rect class="frame" data-side="{name}" x="{_num(x0)}" y="{_num(base - H * scale)}" '
        f'width="{_num(W * scale)}" height="{_num(H * scale)}" fill="none" stroke="#000" stroke-width="2"/>'
    ]
    for m, color in zip(part.modules, colors):
        out.append(
            f'<rect class="module" data-side="{name}" data-id="{m.id}" '
            f'x="{_num(x0 + m.x * scale)}" y="{_num(base - m.y2 * scale)}" '
            f'width="{_num(m.dims.width * scale)}" height="{_num(m.dims.height * scale)}" '
            f'fill="{color}" stroke="#333" stroke-width="1"/>'
        )
    out.append(
        f'<text x="{_num(x0)}" y="{_num(base + 14)}" font-family="monospace" font-size="12">'
        f'{escape(f"{name}: {W}x{H}")}</text>'
    )
    return out


def render_svg(pair: PartitionPair, scale: float = 16) -> str:
    if scale <= 0:
        raise ValueError("scale must be positive")
    a, b = pair.a, pair.b
    colors_a = [PALETTE[i % len(PALETTE)] for i in range(len(a.modules))]
    colors_b = [PALETTE[0]] * len(b.modules)
    for i, j in enumerate(pair.pairing):
        colors_b[j] = colors_a[i]

    height = max(a.parent.height, b.parent.height) * scale
    width = (a.parent.width + b.parent.width) * scale + 4 * MARGIN
    base = MARGIN + height
    total_h = base + 20
    xb = a.parent.width * scale + 3 * MARGIN
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(total_h)}" '
        f'viewBox="0 0 {_num(width)} {_num(total_h)}">',
        *_side(a, colors_a, "a", MARGIN, base, scale),
        *_side(b, colors_b, "b", xb, base, scale),
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
