"""Float backend: tolerance rank rule and the normal-matrix demo path."""

import json

from ultrainv import Matrix, canonicalize, is_ultrainvariant, kernel
from ultrainv.cli import main
from ultrainv.scalar import FLOAT
from ultrainv.serialization import matrix_to_json, write_json_atomic
from ultrainv.spectral import (algebraic_ultra_lattice, float_spectrum,
                               minimal_polynomial)


def test_rank_rule_drops_tiny_directions():
    s = canonicalize([(1.0, 0.0), (1.0, 1e-12)], 2, backend=FLOAT)
    assert s.dim == 1


def test_independent_floats_kept():
    s = canonicalize([(1.0, 0.0), (1.0, 1e-3)], 2, backend=FLOAT)
    assert s.dim == 2


def test_float_kernel_of_near_singular():
    m = Matrix([[1.0, 1.0], [1.0, 1.0 + 1e-13]], backend=FLOAT)
    assert kernel(m).dim == 1


def test_float_matrix_json_round_trip():
    m = Matrix([[1.5, 0.0], [0.25, -2.0]], backend=FLOAT)
    from ultrainv.serialization import matrix_from_json
    assert matrix_from_json(matrix_to_json(m)) == m


def test_diagonal_normal_demo_lattice():
    a = Matrix([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 2.0]], backend=FLOAT)
    spec = float_spectrum(a)
    assert spec.source == "float-eigensolver"
    assert sorted(m for _, m in spec.roots) == [1, 1]
    lattice = algebraic_ultra_lattice(a, spec)
    assert len(lattice) == 4
    q = minimal_polynomial(a)
    assert len(q) == 3  # (z - 1)(z - 2)


def test_float_local_commutant_path():
    a = Matrix([[1.0, 0], [0, 2.0]], backend=FLOAT)
    eigline = canonicalize([(1.0, 0.0)], 2, backend=FLOAT)
    assert is_ultrainvariant(a, eigline)


def test_cli_lattice_float_demo(tmp_path):
    a = Matrix([[2.0, 0, 0], [0, 2.0, 0], [0, 0, -1.0]], backend=FLOAT)
    op = tmp_path / "a.json"
    write_json_atomic(str(op), matrix_to_json(a))
    out = tmp_path / "lat.json"
    assert main(["lattice", "--operator", str(op), "--out", str(out)]) == 0
    report = json.load(open(out))
    assert report["member_count"] == 4
    assert report["spectrum"]["source"] == "float-eigensolver"
