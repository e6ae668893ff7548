import math

import pytest

ms = pytest.importorskip("_minsurf")


def test_derive_params_c2_constants():
    # X = 2 sqrt 2 - i pins A = 9, c = 1/8; recover x from X = 1/x - x
    import cmath

    X = complex(2 * math.sqrt(2), -1)
    disc = cmath.sqrt(X * X + 4)
    r1, r2 = (-X + disc) / 2, (-X - disc) / 2
    xx = r1 if abs(r1) < 1 else r2
    p = ms.derive_params("C2", xx)
    assert p["A"] == pytest.approx(9.0, abs=1e-10)
    assert p["c"] == pytest.approx(0.125, abs=1e-10)
    assert p["a"] == pytest.approx((9 - math.sqrt(77)) / 2, abs=1e-10)


def test_gauss_square_compatibility():
    for fam, x in [("C2", 0.45 + 0.2j), ("L2", 0.8 + 0.4j), ("L4", 0.3 + 0.25j)]:
        assert ms.admissible(fam, x)
        for z in [0.31 + 0.41j, 0.52 + 0.17j, 0.24 + 0.6j]:
            pq = ms.gauss_squares(fam, x, z)
            assert abs(pq[1] - pq[0] - 4) < 1e-10


def test_gamma_beta():
    assert ms.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert ms.beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)


def test_solve_period_c2():
    sol = ms.solve_period("C2")
    assert abs(sol["residual"]) < 1e-8
    assert sol["X"].real == pytest.approx(1.3450666592907738, abs=1e-6)
    assert ms.admissible("C2", sol["x"])


def test_tilde_integrals_agree():
    t = ms.tilde_integrals()
    assert t["first_quadrature"] == pytest.approx(t["first_beta"], abs=1e-8)
    assert t["first_beta"] > t["second_beta"]


def test_piece_mesh_and_obj():
    sol = ms.solve_period("C2")
    piece = ms.piece_mesh("C2", sol["x"], n=16)
    assert piece["boundary_circuits"] == 2
    assert piece["period_gap"] < 1e-3
    assert len(piece["vertices"]) > 1000
    for tri in piece["triangles"][:200]:
        assert all(0 <= i < len(piece["vertices"]) for i in tri)
    lattice = piece["lattice"]
    assert len(lattice) == 3
    assert abs(lattice[2][0]) < 1e-6 and abs(lattice[2][1]) < 1e-6  # vertical vector

    obj = ms.obj_string("C2", sol["x"], n=12)
    lines = obj.strip().splitlines()
    n_v = sum(1 for l in lines if l.startswith("v "))
    n_f = sum(1 for l in lines if l.startswith("f "))
    assert n_v > 0 and n_f > 0
    assert len(lines) == n_v + n_f


def test_verify_passes_at_solved_parameters():
    sol = ms.solve_period("C2")
    checks = ms.verify("C2", sol["x"], n=24)
    failed = [c["id"] for c in checks if not c["passed"]]
    assert failed == []
