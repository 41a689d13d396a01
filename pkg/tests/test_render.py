import math

import numpy as np
import pytest

from ocpoly.algebra import Octonion
from ocpoly.opoly import OPolynomial
from ocpoly.render import (HAS_NUMBA, SliceSpec, escape_steps, render,
                           steps_to_image, write_pgm)


@pytest.fixture
def f_square(PR):
    # x^2: the filled set of bounded starts is exactly the closed unit ball
    return OPolynomial.make(PR, [Octonion.zero(PR), Octonion.zero(PR),
                                 Octonion.one(PR)])


@pytest.fixture
def spec(PR, basis_r):
    one, i, j, k, l = basis_r
    return SliceSpec(base=Octonion.zero(PR), dir_u=one, dir_v=i,
                     width=128, height=128, scale=4 / 128,
                     max_iter=50, escape_radius=2.0)


class TestEscapeSteps:
    def test_unit_disk_accuracy(self, f_square, spec):
        steps = escape_steps(f_square, spec, backend="numpy")
        lat = spec.lattice().reshape(spec.height, spec.width, 8)
        radius = np.sqrt(np.sum(lat * lat, axis=-1))
        inside = radius <= 1.0 - 1e-9
        outside = radius >= 1.0 + 1e-9
        # bounded pixels carry step 0, escapers a positive count
        agree = np.sum(inside & (steps == 0)) + np.sum(outside & (steps > 0))
        total = np.sum(inside) + np.sum(outside)
        assert agree / total >= 0.99

    def test_backend_equivalence(self, f_square, spec):
        if not HAS_NUMBA:
            pytest.skip("numba unavailable")
        a = escape_steps(f_square, spec, backend="numpy")
        b = escape_steps(f_square, spec, backend="numba")
        assert np.array_equal(a, b)

    def test_deterministic(self, f_square, spec):
        a = escape_steps(f_square, spec, backend="numpy")
        b = escape_steps(f_square, spec, backend="numpy")
        assert np.array_equal(a, b)

    def test_off_plane_slice(self, PR, basis_r):
        # shifting the slice off the plane of the disk shrinks the trace
        one, i, j, k, l = basis_r
        f = OPolynomial.make(PR, [Octonion.zero(PR), Octonion.zero(PR),
                                  Octonion.one(PR)])
        near = SliceSpec(base=j * 0.5, dir_u=one, dir_v=i, width=64,
                         height=64, scale=4 / 64, max_iter=50,
                         escape_radius=2.0)
        far = SliceSpec(base=j * 1.5, dir_u=one, dir_v=i, width=64,
                        height=64, scale=4 / 64, max_iter=50,
                        escape_radius=2.0)
        n_near = np.sum(escape_steps(f, near) == 0)
        n_far = np.sum(escape_steps(f, far) == 0)
        assert n_near > 0
        assert n_far == 0  # the ball has radius 1, base is 1.5 away


class TestImages:
    def test_steps_to_image_range(self, f_square, spec):
        steps = escape_steps(f_square, spec, backend="numpy")
        img = steps_to_image(steps, spec.max_iter)
        assert img.dtype == np.uint8
        assert np.all(img[steps == 0] == 0)
        assert np.all(img[steps > 0] > 0)

    def test_write_pgm(self, f_square, spec, tmp_path):
        path = tmp_path / "out.pgm"
        render(f_square, spec, str(path), backend="numpy")
        data = path.read_bytes()
        assert data.startswith(b"P5\n")
        header, rest = data.split(b"\n", 1)
        dims, rest = rest.split(b"\n", 1)
        maxval, pixels = rest.split(b"\n", 1)
        assert dims.split() == [b"128", b"128"]
        assert maxval == b"255"
        assert len(pixels) == 128 * 128
