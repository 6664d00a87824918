import numpy as np
import pytest

from halfsquares.decompose import (
    DecompositionError,
    decompose,
    evaluate_1d_squares,
    partial_decompose,
    square_count_bound,
    verify,
)
from halfsquares.fixtures import build_fixture
from halfsquares.holder import SampledFunction


def test_square_count_bounds():
    assert square_count_bound(1) == 30
    assert square_count_bound(2) == 225 * 31


def test_parabola_reconstruction_exact():
    f = build_fixture("parabola", points=2001)
    d = decompose(f, 2, 1.0)
    rep = verify(d, f)
    assert rep.reconstruction_error <= 1e-10
    assert rep.square_count <= 30
    assert rep.overlap_max <= 15
    assert rep.partition_deviation <= 1e-10
    # the split squares reproduce x^2 through the partition algebra
    recon = d.reconstruction()
    mask = d.verified_mask()
    assert np.max(np.abs(recon - f.values)[mask]) <= 1e-12


def test_constant_all_branch_a():
    f = build_fixture("constant", points=1001)
    d = decompose(f, 2, 1.0)
    assert d.branch_b == 0
    rep = verify(d, f)
    assert rep.reconstruction_error <= 1e-12
    assert rep.square_count <= 30


def test_branch_b_minimum_consistency():
    f = build_fixture("parabola", points=2001)
    d = decompose(f, 2, 1.0)
    assert d.branch_b > 0
    for ball, win, info in zip(
        d.partition.balls, d.partition.windows, d.branch_info
    ):
        if info[0] != "B1":
            continue
        _, x_min, f_min = info
        assert f_min <= float(f.values[win].min()) + 1e-12
        i = int(round((x_min - f.origin[0]) / f.spacing))
        i = max(1, min(f.shape[0] - 2, i))
        first_diff = (f.values[i + 1] - f.values[i - 1]) / (2 * f.spacing)
        assert abs(first_diff) <= 2 * f.spacing * 10  # interior critical point


def test_signed_root_gives_smooth_squares_for_parabola():
    f = build_fixture("parabola", points=2001)
    d = decompose(f, 2, 1.0)
    rep = verify(d, f)
    assert all(np.isfinite(s) for s in rep.derivative_seminorms)
    assert max(rep.derivative_seminorms) < 1e3


def test_determinism():
    f = build_fixture("smooth_bump", points=1501)
    a = decompose(f, 2, 1.0)
    b = decompose(f, 2, 1.0)
    assert a.nu == b.nu and a.omega == b.omega
    assert len(a.squares) == len(b.squares)
    for ga, gb in zip(a.squares, b.squares):
        assert np.array_equal(ga, gb)


def test_negative_input_rejected():
    f = SampledFunction((-1.0,), 0.01, np.linspace(-1, 1, 201))
    with pytest.raises(DecompositionError):
        decompose(f, 2, 1.0)


def test_bad_k_rejected():
    f = build_fixture("constant", points=101)
    with pytest.raises(ValueError):
        decompose(f, 4, 1.0)


def test_fixed_nu_failure_raises():
    f = build_fixture("bony", points=2001)
    with pytest.raises(DecompositionError):
        decompose(f, 3, 1.0, nu=0.25)  # slow variation fails at this scale


def test_partial_decompose_parabola():
    f = build_fixture("parabola", points=2001)
    p = partial_decompose(f, 2, 1.0, 1e-3)
    assert float(p.residual.max()) <= 1e-3
    assert float(p.residual.min()) >= 0.0
    mask = p.verified_mask()
    gap = np.max(np.abs((p.reconstruction() - f.values))[mask])
    assert gap <= 1e-8


def test_partial_decompose_constant_no_residual():
    f = build_fixture("constant", points=1001)
    p = partial_decompose(f, 2, 1.0, 1e-6)
    assert float(np.abs(p.residual).max()) == 0.0
    assert p.branch_b == 0


def test_evaluate_1d_squares_matches_grid():
    f = build_fixture("parabola", points=2001)
    d = decompose(f, 2, 1.0)
    coords = f.axis_coords(0)
    values = {tuple(np.round(coords, 12)): None}
    fn = lambda u: np.interp(u, coords, f.values)
    evaluated = evaluate_1d_squares(d, coords, fn)
    assert len(evaluated) == len(d.squares)
    for got, stored in zip(evaluated, d.squares):
        assert np.allclose(got, stored, atol=1e-10)


def test_paraboloid_2d():
    f = build_fixture("paraboloid", points=121)
    d = decompose(f, 2, 1.0)
    rep = verify(d, f, seminorm_window=10 * f.spacing)
    assert rep.reconstruction_error <= 1e-6
    assert rep.overlap_max <= 225
    assert rep.square_count <= square_count_bound(2)
    assert rep.partition_deviation <= 1e-10
