"""Lattice clusters for the frustrated-antiferromagnet benchmarks.

Triangular-lattice sites use axial coordinates (a, b) with real-space
position (a + b/2, b*sqrt(3)/2); the six nearest-neighbor offsets are
(+-1,0), (0,+-1), (1,-1), (-1,1).  A "hexagon" is a center site plus its six
neighbors; the shipped three-hexagon cluster places centers at (0,0), (1,1),
(2,-1) (mutually sqrt(3) apart, so adjacent hexagons share one rim edge).
That reconstruction gives 16 sites and 33 bonds, and exhaustive enumeration
of the classical antiferromagnet on it finds exactly 18 ground
configurations: two alternating-rim colorings with all three hexagon centers
free (2 x 2^3) plus one further pattern and its global flip (2 x 1).

Geometry files hold one edge per line, ``i j`` with 0-based site indices;
'#' starts a comment.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

NEIGHBOR_OFFSETS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

THREE_HEXAGON_CENTERS = ((0, 0), (1, 1), (2, -1))


def hexagon_sites(center: tuple[int, int]) -> list[tuple[int, int]]:
    a, b = center
    return [(a + da, b + db) for da, db in NEIGHBOR_OFFSETS]


def cluster_from_centers(
    centers: tuple[tuple[int, int], ...],
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Sites and induced nearest-neighbor edges of a union of hexagons."""
    sites: list[tuple[int, int]] = []
    for c in centers:
        if c not in sites:
            sites.append(c)
        for s in hexagon_sites(c):
            if s not in sites:
                sites.append(s)
    index = {s: k for k, s in enumerate(sites)}
    edges = set()
    for (a, b), i in index.items():
        for da, db in NEIGHBOR_OFFSETS:
            j = index.get((a + da, b + db))
            if j is not None:
                edges.add((min(i, j), max(i, j)))
    return sites, sorted(edges)


def triangle_edges() -> list[tuple[int, int]]:
    """Single triangle, the smallest frustrated cluster."""
    return [(0, 1), (0, 2), (1, 2)]


def parse_geometry(text: str) -> list[tuple[int, int]]:
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'i j', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: indices must be integers") from None
        if i < 0 or j < 0 or i == j:
            raise ValueError(f"line {lineno}: bad edge ({i}, {j})")
        edges.append((min(i, j), max(i, j)))
    if not edges:
        raise ValueError("no edges found")
    return edges


def load_geometry(path: str) -> list[tuple[int, int]]:
    """Read an edge-list geometry file."""
    with open(path, encoding="utf-8") as fh:
        return parse_geometry(fh.read())


def three_hexagon_edges() -> list[tuple[int, int]]:
    """Edge list of the packaged three-hexagon cluster (16 sites)."""
    text = resources.files("qdegen.data").joinpath("three_hexagon.edges").read_text("utf-8")
    return parse_geometry(text)


def count_classical_ground_configs(edges: list[tuple[int, int]], n: int | None = None) -> tuple[float, int]:
    """Ground energy and degeneracy of the classical antiferromagnet.

    Enumerates all 2^n Ising configurations of H = +sum_<ij> S^z_i S^z_j
    (S = sigma/2, so each bond contributes +-1/4).  Returns
    (ground_energy, count).
    """
    n_sites = (max(max(e) for e in edges) + 1) if n is None else n
    if n_sites > 24:
        raise ValueError(f"enumeration over 2^{n_sites} configurations exceeds the budget")
    states = np.arange(2**n_sites, dtype=np.uint32)
    bits = ((states[:, None] >> np.arange(n_sites)[None, :]) & 1).astype(np.int8)
    spins = (1 - 2 * bits).astype(np.int32)
    energy = np.zeros(2**n_sites, dtype=np.int32)
    for i, j in edges:
        energy += spins[:, i] * spins[:, j]
    emin = int(energy.min())
    return emin / 4.0, int((energy == emin).sum())
