import pytest

from polyharmonic import xi
from polyharmonic._mp import ctx

C = ctx(35)
Z = complex(0.2, 1.3)


def test_xi_of_y_is_one():
    v = xi.xi_op(lambda z: z.imag, 0, Z)
    assert abs(v - 1) < 1e-12


def test_xi_kills_holomorphic():
    assert abs(xi.xi_op(lambda z: C.exp(2j * C.pi * z), 0, Z)) < 1e-12


def test_laplacian_power_of_y_eigenvalue():
    s = 1.7
    v = xi.laplacian_op(lambda z: z.imag ** s, 0, Z)
    assert abs(v - s * (1 - s) * 1.3 ** s) < 1e-5


def test_stencil_orders():
    f = lambda z: z.imag ** 2.5 * C.cos(2 * C.pi * z.real)  # noqa: E731
    target = xi.laplacian_op(f, 0, Z, xi.Stencil(1e-4, 4))
    assert abs(xi.stencil_order(f, 0, Z, target, 0.1, 2) - 2) < 0.3
    assert abs(xi.stencil_order(f, 0, Z, target, 0.1, 4) - 4) < 0.5


def test_with_error_reports_small_difference():
    v, err = xi.with_error(xi.laplacian_op, lambda z: z.imag ** 2, 0, Z, xi.Stencil(1e-3))
    assert err < 1e-5 and abs(v + 2 * 1.3 ** 2) < 1e-5


def test_bad_stencil_rejected():
    with pytest.raises(ValueError):
        xi.Stencil(1e-3, 3)


@pytest.mark.parametrize("edge", ["xi_E2hat", "xi_W_mode", "laplace_jj0", "xi_holomorphic"])
def test_fast_edges_pass(edge):
    assert xi.edge_check(edge).status == "pass"


def test_edge_list_covers_diagram():
    assert "laplace_jj1" in xi.EDGES and len(set(xi.EDGES)) == len(xi.EDGES)
