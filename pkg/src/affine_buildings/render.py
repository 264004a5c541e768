"""Static SVG pictures of rank-2 root systems.

Walls are drawn as lines through the origin, roots as arrows, and the
fundamental chamber as a shaded wedge; an embedded subsystem can be
overlaid in a second color.  Output depends only on the input data:
elements are emitted in root order with fixed number formatting, so a
drawing can be compared byte for byte.
"""

import math

from .embeddings import EmbeddedPair

__all__ = ["RenderError", "render_rank2", "render_pair", "render_to_file"]

BASE_COLOR = "#1a1a1a"
OVERLAY_COLOR = "#d4317c"
CHAMBER_FILL = "#f3d9a4"
WALL_COLOR = "#8a8a8a"


class RenderError(ValueError):
    pass


def _plane_basis(rs):
    """Orthonormal basis of the root plane; rejects higher rank."""
    if rs.rank != 2:
        raise RenderError("only rank-2 systems can be drawn")
    a = [float(c) for c in rs.basis[0]]
    b = [float(c) for c in rs.basis[1]]
    gram = [[float(x) for x in row] for row in rs.gram]

    def dot(u, v):
        return sum(u[i] * gram[i][j] * v[j]
                   for i in range(len(u)) for j in range(len(v)))

    na = math.sqrt(dot(a, a))
    u1 = [c / na for c in a]
    proj = dot(b, u1)
    b2 = [b[i] - proj * u1[i] for i in range(len(b))]
    nb = math.sqrt(dot(b2, b2))
    u2 = [c / nb for c in b2]

    def to_plane(v):
        w = [float(c) for c in v]
        return (dot(w, u1), dot(w, u2))

    return to_plane


def _fmt(x):
    text = "%.2f" % (x + 0.0,)
    return "0.00" if text == "-0.00" else text


def _arrow(x0, y0, x1, y1, color, css):
    dx, dy = x1 - x0, y1 - y0
    length = math.hypot(dx, dy) or 1.0
    ux, uy = dx / length, dy / length
    head = 7.0
    bx, by = x1 - head * ux, y1 - head * uy
    px, py = -uy * head * 0.45, ux * head * 0.45
    return (
        '<g class="%s"><line x1="%s" y1="%s" x2="%s" y2="%s" '
        'stroke="%s" stroke-width="1.6"/>'
        '<polygon points="%s,%s %s,%s %s,%s" fill="%s"/></g>'
        % (css, _fmt(x0), _fmt(y0), _fmt(bx), _fmt(by), color,
           _fmt(x1), _fmt(y1), _fmt(bx + px), _fmt(by + py),
           _fmt(bx - px), _fmt(by - py), color))


def render_rank2(system, overlay_roots=(), size=420):
    """SVG drawing of a rank-2 root system with optional overlay roots."""
    to_plane = _plane_basis(system)
    pts = [to_plane(r) for r in system.roots]
    pts.extend(to_plane(r) for r in overlay_roots)
    extent = max(math.hypot(x, y) for x, y in pts)
    half = size / 2.0
    scale = (half - 40.0) / extent

    def at(p):
        return (half + scale * p[0], half - scale * p[1])

    reach = extent * 1.18
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (size, size, size, size),
        '<rect width="%d" height="%d" fill="white"/>' % (size, size),
    ]

    # fundamental chamber: wedge between the rays dual to the base
    g = [[system.inner(a, b) for b in system.basis] for a in system.basis]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    rays = []
    for i in (0, 1):
        c = [g[1][1] / det, -g[1][0] / det] if i == 0 else \
            [-g[0][1] / det, g[0][0] / det]
        vec = [c[0] * bc + c[1] * dc
               for bc, dc in zip(system.basis[0], system.basis[1])]
        x, y = to_plane(vec)
        norm = math.hypot(x, y)
        rays.append((x / norm * reach, y / norm * reach))
    ox, oy = at((0.0, 0.0))
    r1, r2 = at(rays[0]), at(rays[1])
    parts.append(
        '<polygon class="chamber" points="%s,%s %s,%s %s,%s" fill="%s" '
        'fill-opacity="0.8"/>' % (_fmt(ox), _fmt(oy), _fmt(r1[0]),
                                  _fmt(r1[1]), _fmt(r2[0]), _fmt(r2[1]),
                                  CHAMBER_FILL))

    for root in system.positive_roots:
        x, y = to_plane(root)
        norm = math.hypot(x, y)
        # wall of the reflection: the line orthogonal to the root
        wx, wy = -y / norm * reach, x / norm * reach
        a, b = at((wx, wy)), at((-wx, -wy))
        parts.append('<line class="wall" x1="%s" y1="%s" x2="%s" y2="%s" '
                     'stroke="%s" stroke-width="1.0" '
                     'stroke-dasharray="6 4"/>'
                     % (_fmt(a[0]), _fmt(a[1]), _fmt(b[0]), _fmt(b[1]),
                        WALL_COLOR))

    for root in system.roots:
        tip = at(to_plane(root))
        parts.append(_arrow(ox, oy, tip[0], tip[1], BASE_COLOR,
                            "root-arrow"))
    for root in overlay_roots:
        tip = at(to_plane(root))
        parts.append(_arrow(ox, oy, tip[0], tip[1], OVERLAY_COLOR,
                            "overlay-arrow"))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_pair(pair, size=420):
    """Ambient system with the embedded subsystem overlaid."""
    if not isinstance(pair, EmbeddedPair):
        raise RenderError("expected an embedded pair")
    return render_rank2(pair.ambient, overlay_roots=pair.sub.roots,
                        size=size)


def render_to_file(path, svg_text):
    with open(path, "w") as fh:
        fh.write(svg_text)
