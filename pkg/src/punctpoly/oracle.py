"""Brute-force enumeration oracles.

Slow but obviously correct enumerators for staircase polygons, punctured
staircase polygons, and (punctured) self-avoiding polygons.  These are the
ground truth the transfer matrix and the functional-equation solver are
validated against; correctness is preferred over speed throughout.
"""

from __future__ import annotations

from .series import BivariateSeries, IntegerSeries


# ---------------------------------------------------------------------------
# Staircase polygons as wall pairs.
#
# A staircase polygon of width W is a pair of monotone walls: column i
# (0-based) holds the cells in rows floors[i] .. ceils[i]-1, with both walls
# non-decreasing, floors[i] < ceils[i], and the mutual-avoidance condition
# floors[i+1] < ceils[i] (otherwise the two directed walks would touch at a
# vertex).  Normalisation: floors[0] = 0.  Half-perimeter = W + ceils[-1];
# area = sum of column heights.


def staircase_shapes(m_max):
    """Yield (floors, ceils) for every staircase shape of half-perimeter <= m_max.

    The yielded lists are reused by the generator; copy them if you need to
    keep a shape beyond the current iteration.
    """

    def extend(floors, ceils):
        w = len(floors)
        a_prev, b_prev = floors[-1], ceils[-1]
        for a in range(a_prev, b_prev):
            for b in range(max(b_prev, a + 1), m_max - w):
                floors.append(a)
                ceils.append(b)
                yield floors, ceils
                yield from extend(floors, ceils)
                floors.pop()
                ceils.pop()

    for b in range(1, m_max):
        floors, ceils = [0], [b]
        yield floors, ceils
        yield from extend(floors, ceils)


def shape_half_perimeter(floors, ceils):
    return len(floors) + ceils[-1]


def shape_area(floors, ceils):
    return sum(b - a for a, b in zip(floors, ceils))


def shape_cells(floors, ceils):
    return {(i, y) for i, (a, b) in enumerate(zip(floors, ceils)) for y in range(a, b)}


def oracle_staircase(m_max):
    """Counts p_{m,n} of staircase polygons by half-perimeter m and area n."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    series = BivariateSeries.zero(m_max)
    for floors, ceils in staircase_shapes(m_max):
        m = len(floors) + ceils[-1]
        n = shape_area(floors, ceils)
        p = series.qpolys[m]
        if len(p) <= n:
            p.extend([0] * (n + 1 - len(p)))
        p[n] += 1
    return series


def staircase_counts_by_width_height(m_max):
    """Counts keyed by (width, height), for the transposition-symmetry check."""
    counts = {}
    for floors, ceils in staircase_shapes(m_max):
        key = (len(floors), ceils[-1])
        counts[key] = counts.get(key, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# Punctured staircase polygons.


def _interior_cells(floors, ceils):
    """Cells all four of whose corner vertices are strictly inside the shape."""
    w = len(floors)
    out = []
    for c in range(1, w - 1):
        lo = max(floors[c - 1], floors[c], floors[c + 1]) + 1
        hi = min(ceils[c - 1], ceils[c], ceils[c + 1]) - 2
        for y in range(lo, hi + 1):
            out.append((c, y))
    return out


def _interior_vertices(cells):
    """Lattice vertices all four of whose incident cells belong to the set."""
    verts = set()
    for (x, y) in cells:
        v = (x + 1, y + 1)
        if (x + 1, y) in cells and (x, y + 1) in cells and (x + 1, y + 1) in cells:
            verts.add(v)
    return verts


def _boundary_vertices(cells):
    """Vertices of the boundary curve of a (simply connected) cell set."""
    verts = set()
    for (x, y) in cells:
        for v in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)):
            incident = sum(
                (v[0] - dx, v[1] - dy) in cells for dx in (0, 1) for dy in (0, 1)
            )
            if incident < 4:
                verts.add(v)
    return verts


def _add(series, m, n, count=1):
    p = series.qpolys[m]
    if len(p) <= n:
        p.extend([0] * (n + 1 - len(p)))
    p[n] += count


def _hole_catalogue(hp_max):
    """All staircase hole shapes with half-perimeter <= hp_max, normalised."""
    holes = []
    for floors, ceils in staircase_shapes(hp_max):
        cells = frozenset(shape_cells(floors, ceils))
        holes.append(
            (
                shape_half_perimeter(floors, ceils),
                shape_area(floors, ceils),
                cells,
                frozenset(_boundary_vertices(cells)),
            )
        )
    return holes


def _placements(outer_cells, interior_verts, holes, hp_budget):
    """All valid single-hole placements inside one outer shape.

    A placement is valid when every boundary vertex of the translated hole is
    a strictly interior vertex of the outer polygon (this subsumes cell
    containment for simply connected holes, but cells are checked too).
    """
    if not interior_verts:
        return []
    xs = [v[0] for v in interior_verts]
    ys = [v[1] for v in interior_verts]
    placed = []
    for hp, area, cells, bverts in holes:
        if hp > hp_budget:
            continue
        bxs = [v[0] for v in bverts]
        bys = [v[1] for v in bverts]
        for dx in range(min(xs) - min(bxs), max(xs) - max(bxs) + 1):
            for dy in range(min(ys) - min(bys), max(ys) - max(bys) + 1):
                tb = {(x + dx, y + dy) for x, y in bverts}
                if not tb <= interior_verts:
                    continue
                tc = frozenset((x + dx, y + dy) for x, y in cells)
                if not tc <= outer_cells:
                    continue
                placed.append((hp, area, tc, tb))
    return placed


def oracle_punctured_staircase(m_max, r, kind="minimal", s=None):
    """Punctured staircase polygon counts by total half-perimeter and net area.

    ``kind`` selects the hole model: ``minimal`` (unit-cell holes),
    ``fixed_total_s`` (staircase holes of total half-perimeter ``s``), or
    ``arbitrary`` (staircase holes of any size).  Total half-perimeter adds
    the hole half-perimeters; net area subtracts the hole areas.  Holes must
    avoid the outer boundary and each other (no shared vertices).
    """
    if r not in (1, 2):
        raise ValueError("r must be 1 or 2 for the punctured-staircase oracle")
    if kind == "fixed_total_s" and (s is None or s < 2):
        raise ValueError("fixed_total_s needs a hole size s >= 2")
    if kind not in ("minimal", "fixed_total_s", "arbitrary"):
        raise ValueError(f"unknown kind {kind!r}")
    series = BivariateSeries.zero(m_max)

    if kind == "minimal":
        outer_max = m_max - 2 * r
        for floors, ceils in staircase_shapes(outer_max):
            cells = _interior_cells(floors, ceils)
            if not cells:
                continue
            m = len(floors) + ceils[-1]
            n = shape_area(floors, ceils)
            if r == 1:
                _add(series, m + 2, n - 1, len(cells))
            else:
                pairs = 0
                for i in range(len(cells)):
                    x1, y1 = cells[i]
                    for j in range(i + 1, len(cells)):
                        x2, y2 = cells[j]
                        if max(abs(x1 - x2), abs(y1 - y2)) >= 2:
                            pairs += 1
                if pairs:
                    _add(series, m + 4, n - 2, pairs)
        return series

    budget = s if kind == "fixed_total_s" else m_max - 2 * (r - 1)
    holes = _hole_catalogue(min(budget, m_max - 2))
    outer_max = m_max - 2 * r
    for floors, ceils in staircase_shapes(outer_max):
        m = len(floors) + ceils[-1]
        n = shape_area(floors, ceils)
        outer_cells = shape_cells(floors, ceils)
        interior = _interior_vertices(outer_cells)
        if not interior:
            continue
        hp_budget = (s if kind == "fixed_total_s" else m_max - m) - 2 * (r - 1)
        placed = _placements(outer_cells, interior, holes, hp_budget)
        if r == 1:
            for hp, area, _, _ in placed:
                if kind == "fixed_total_s" and hp != s:
                    continue
                if m + hp <= m_max:
                    _add(series, m + hp, n - area)
        else:
            for i in range(len(placed)):
                hp1, a1, c1, b1 = placed[i]
                for j in range(i + 1, len(placed)):
                    hp2, a2, c2, b2 = placed[j]
                    if kind == "fixed_total_s" and hp1 + hp2 != s:
                        continue
                    if m + hp1 + hp2 > m_max:
                        continue
                    if c1 & c2 or b1 & b2:
                        continue
                    _add(series, m + hp1 + hp2, n - a1 - a2)
    return series


# ---------------------------------------------------------------------------
# Self-avoiding polygons, counted up to translation.


def sap_walks(perimeter_max):
    """Yield the vertex cycle of each SAP once per translation class.

    Canonical form: the walk starts at the polygon's lexicographically
    smallest vertex (by (x, y)), takes its first step east and its last step
    south from (0, 1) back to the origin.  Every translation class of SAPs
    has exactly one such directed traversal.  The yielded list is reused;
    copy it to keep a walk.
    """
    if perimeter_max < 4:
        return
    path = [(0, 0), (1, 0)]
    visited = {(0, 0), (1, 0)}

    def step():
        x, y = path[-1]
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nx < 0 or (nx == 0 and ny < 0):
                continue
            if (nx, ny) == (0, 0):
                if (x, y) == (0, 1) and len(path) >= 4:
                    yield path
                continue
            if (nx, ny) in visited or len(path) >= perimeter_max:
                continue
            path.append((nx, ny))
            visited.add((nx, ny))
            yield from step()
            visited.discard(path.pop())

    yield from step()


def canonical_edge_set(walk):
    """Lexicographically minimal translate of the walk's undirected edge set."""
    edges = set()
    for u, v in zip(walk, walk[1:] + walk[:1]):
        edges.add((u, v) if u <= v else (v, u))
    dx = min(x for (x, _), _ in edges)
    dy = min(y for (x, y), _ in edges if x == dx)
    return frozenset(
        ((x1 - dx, y1 - dy), (x2 - dx, y2 - dy)) for (x1, y1), (x2, y2) in edges
    )


def sap_interior_cells(walk):
    """Cells enclosed by the walk, by leftward ray-casting parity."""
    vertical = set()
    for (x1, y1), (x2, y2) in zip(walk, walk[1:] + walk[:1]):
        if x1 == x2:
            vertical.add((x1, min(y1, y2)))
    if not vertical:
        return set()
    xs = [x for x, _ in vertical]
    ys = [y for _, y in vertical]
    cells = set()
    for y in range(min(ys), max(ys) + 1):
        row = sorted(x for x, yy in vertical if yy == y)
        for i in range(0, len(row), 2):
            for x in range(row[i], row[i + 1]):
                cells.add((x, y))
    return cells


def oracle_punctured_sap(perimeter_max, r):
    """Counts of SAPs with r punctures by total half-perimeter.

    Punctures are themselves SAPs, strictly inside the outer polygon (no
    shared vertices with its boundary).  Counted up to translation of the
    whole configuration.
    """
    if r not in (0, 1):
        raise ValueError("r must be 0 or 1 for the SAP oracle")
    if perimeter_max > 26:
        raise ValueError(
            "perimeter_max too large for backtracking search (keep it <= 26)"
        )
    hp_max = perimeter_max // 2
    counts = [0] * (hp_max + 1)
    seen = set()
    if r == 0:
        for walk in sap_walks(perimeter_max):
            key = canonical_edge_set(walk)
            assert key not in seen, "canonical walk generated twice"
            seen.add(key)
            counts[len(walk) // 2] += 1
        return IntegerSeries(counts, hp_max)

    holes = []
    for walk in sap_walks(perimeter_max - 8):
        cells = frozenset(sap_interior_cells(walk))
        holes.append(
            (len(walk) // 2, len(cells), cells, frozenset(_boundary_vertices(cells)))
        )
    for walk in sap_walks(perimeter_max - 4):
        m_outer = len(walk) // 2
        outer_cells = sap_interior_cells(walk)
        interior = _interior_vertices(outer_cells)
        if not interior:
            continue
        placed = _placements(outer_cells, interior, holes, hp_max - m_outer)
        for hp, _, _, _ in placed:
            counts[m_outer + hp] += 1
    return IntegerSeries(counts, hp_max)
