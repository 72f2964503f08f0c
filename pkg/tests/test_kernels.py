"""Parity between the compiled kernels and the pure-Python fallback."""

import numpy as np
import pytest

from ffplanes import full_configuration, make_field, random_plane_set, random_point_set
from ffplanes._core import available_implementations, py_kernels

speedups = pytest.importorskip(
    "ffplanes._core._speedups", reason="compiled kernels not built"
)


@pytest.fixture(scope="module", params=[(3, 1, 2), (5, 1, 2), (3, 2, 2), (3, 1, 3)])
def workload(request):
    p, k, d = request.param
    ctx = make_field(p, k)
    e = random_point_set(ctx, d, min(ctx.q**d, 30), seed=1)
    f = random_plane_set(ctx, d, min(len(full_configuration(ctx, d)[1]), 25), seed=2)
    return ctx, e, f


def test_implementations_discoverable():
    assert "pure-python" in available_implementations()
    assert "compiled" in available_implementations()


def test_dot_products_parity(workload):
    ctx, e, f = workload
    args = (e.array, f.normal_array, ctx.add_table, ctx.mul_table)
    np.testing.assert_array_equal(
        speedups.dot_products(*args), py_kernels.dot_products(*args)
    )


def test_distance_hist_parity(workload):
    ctx, e, f = workload
    dots = speedups.dot_products(e.array, f.normal_array, ctx.add_table, ctx.mul_table)
    args = (
        dots, f.normal_index, f.offsets, f.scales,
        ctx.sub_table, ctx.mul_table, ctx.sq_table, ctx.q,
    )
    np.testing.assert_array_equal(
        speedups.distance_hist(*args), py_kernels.distance_hist(*args)
    )


def test_trace_counts_parity(workload):
    ctx, e, f = workload
    from ffplanes.geometry import grid_array

    args = (
        e.array, grid_array(ctx, e.d), ctx.add_table, ctx.mul_table,
        ctx.trace_table, ctx.neg_table, ctx.p,
    )
    np.testing.assert_array_equal(
        speedups.trace_counts(*args), py_kernels.trace_counts(*args)
    )


@pytest.mark.parametrize("p,k,d", [(3, 1, 1), (3, 1, 2), (5, 1, 2), (3, 2, 2), (3, 1, 3)])
def test_orthogonal_scan_parity(p, k, d):
    ctx = make_field(p, k)
    a = speedups.orthogonal_scan(ctx.q, d, ctx.add_table, ctx.mul_table, ctx.one)
    b = py_kernels.orthogonal_scan(ctx.q, d, ctx.add_table, ctx.mul_table, ctx.one)
    np.testing.assert_array_equal(a, b)  # including enumeration order
