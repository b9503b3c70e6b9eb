"""Cluster construction and classical ground-state enumeration."""

import numpy as np
import pytest

from qdegen.geometry import (
    cluster_from_centers,
    count_classical_ground_configs,
    parse_geometry,
    three_hexagon_edges,
    triangle_edges,
)


def test_triangle_edges_shape():
    edges = triangle_edges()
    assert sorted(edges) == [(0, 1), (0, 2), (1, 2)]


def test_triangle_classical_count():
    # one frustrated bond: 6 of the 8 configurations tie for the minimum
    energy, count = count_classical_ground_configs(triangle_edges())
    assert energy == pytest.approx(-0.25)
    assert count == 6


def test_three_hexagon_cluster_shape():
    edges = three_hexagon_edges()
    n = max(max(e) for e in edges) + 1
    assert n == 16
    assert len(edges) == 33
    assert len(set(edges)) == 33


def test_three_hexagon_classical_count():
    _, count = count_classical_ground_configs(three_hexagon_edges())
    assert count == 18


def test_cluster_from_centers_matches_packaged_file():
    sites, edges = cluster_from_centers(((0, 0), (1, 1), (2, -1)))
    assert len(sites) == 16
    assert sorted(edges) == sorted(three_hexagon_edges())


def test_parse_geometry():
    edges = parse_geometry("0 1\n# comment\n2 1\n\n")
    assert edges == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        parse_geometry("0\n")
    with pytest.raises(ValueError):
        parse_geometry("0 0\n")
    with pytest.raises(ValueError):
        parse_geometry("a b\n")
    with pytest.raises(ValueError):
        parse_geometry("# nothing\n")


def test_enumeration_budget():
    edges = [(i, i + 1) for i in range(30)]
    with pytest.raises(ValueError):
        count_classical_ground_configs(edges)


def test_enumeration_matches_dense_at_bx_zero():
    # quantum AFM at zero field is classical; degeneracies must agree
    from qdegen.dense import full_spectrum
    from qdegen.hamiltonian import build_triangular_tfi

    rng = np.random.default_rng(3)
    for _ in range(5):
        n = 5
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        take = rng.choice(len(pairs), size=6, replace=False)
        edges = [pairs[int(k)] for k in take]
        energy, count = count_classical_ground_configs(edges, n=n)
        report = full_spectrum(build_triangular_tfi(edges, 0.0, n=n))
        assert report.degeneracy == count
        assert report.ground_energy == pytest.approx(energy, abs=1e-12)
