"""Batch kernels against the exact single-matrix routines, both backends."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from matgrowth import kernels
from matgrowth.digraph import (
    cycle_structure,
    is_nilpotent,
    p2_power_oracle,
    reachable_from,
    satisfies_p2,
)
from matgrowth.matrices import bitmatrix, norm_sequence, power, satisfies_p1

from matgrowth import _kernels_numpy

BACKENDS = [pytest.param(_kernels_numpy, id="numpy")]
try:
    from matgrowth import _kernels_numba

    BACKENDS.append(pytest.param(_kernels_numba, id="numba"))
except ImportError:  # pragma: no cover - numba is an optional accelerator
    pass


def matrix_of_mask(mask, b):
    return bitmatrix([[(mask >> (i * b + j)) & 1 for j in range(b)] for i in range(b)])


def population_array(masks, b):
    mats = np.zeros((len(masks), b, b), dtype=np.int64)
    for n, mask in enumerate(masks):
        for i in range(b):
            for j in range(b):
                mats[n, i, j] = (mask >> (i * b + j)) & 1
    return mats


def b3_population():
    masks = list(range(1, 512))
    return masks, population_array(masks, 3)


def b4_samples(count=400, seed=99):
    rng = random.Random(seed)
    masks = sorted(rng.sample(range(1, 1 << 16), count))
    return masks, population_array(masks, 4)


@pytest.fixture(scope="module", params=BACKENDS)
def impl(request):
    request.param.norm_sequences(np.ones((1, 2, 2), dtype=np.int64), 2)
    return request.param


class TestNormSequences:
    def test_exhaustive_b3(self, impl):
        masks, mats = b3_population()
        norms, overflow = impl.norm_sequences(mats, 8)
        assert not overflow.any()
        for row, mask in enumerate(masks):
            expected = norm_sequence(matrix_of_mask(mask, 3), 8)
            assert norms[row].tolist() == expected, mask

    def test_samples_b4(self, impl):
        masks, mats = b4_samples()
        norms, overflow = impl.norm_sequences(mats, 10)
        assert not overflow.any()
        for row, mask in enumerate(masks):
            expected = norm_sequence(matrix_of_mask(mask, 4), 10)
            assert norms[row].tolist() == expected, mask

    def test_overflow_flagged_with_exact_trusted_prefix(self, impl):
        mats = np.ones((1, 5, 5), dtype=np.int64)
        norms, overflow = impl.norm_sequences(mats, 40)
        assert overflow[0]
        row = norms[0].tolist()
        cut = row.index(-1)
        assert all(v == -1 for v in row[cut:])
        exact = norm_sequence(bitmatrix([[1] * 5] * 5), cut)
        assert row[:cut] == exact
        # the trusted prefix must be substantial, not a bail-out at step one
        assert cut >= 20

    def test_overflow_isolated_per_row(self, impl):
        ones5 = [[1] * 5] * 5
        cyc5 = [[1 if (i + 1) % 5 == j else 0 for j in range(5)] for i in range(5)]
        mats = np.array([ones5, cyc5], dtype=np.int64)
        norms, overflow = impl.norm_sequences(mats, 40)
        assert overflow.tolist() == [True, False]
        assert norms[1].tolist() == [5] * 40


class TestStructureFlags:
    def test_exhaustive_b3(self, impl):
        masks, mats = b3_population()
        p1, p2, d_mask, nilpotent, bounded = impl.structure_flags(mats)
        for row, mask in enumerate(masks):
            m = matrix_of_mask(mask, 3)
            assert p1[row] == satisfies_p1(m), mask
            assert p2[row] == satisfies_p2(m), mask
            assert nilpotent[row] == is_nilpotent(m), mask
            d = cycle_structure(m).d_set
            assert {i + 1 for i in range(3) if d_mask[row, i]} == set(d), mask
            downstream = set(d)
            for v in d:
                downstream |= reachable_from(m, v)
            expected_bounded = all(m.out_degree(v) == 1 for v in downstream)
            assert bounded[row] == expected_bounded, mask

    def test_samples_b4(self, impl):
        masks, mats = b4_samples()
        p1, p2, d_mask, nilpotent, bounded = impl.structure_flags(mats)
        for row, mask in enumerate(masks):
            m = matrix_of_mask(mask, 4)
            assert p1[row] == satisfies_p1(m)
            assert p2[row] == satisfies_p2(m)
            assert nilpotent[row] == is_nilpotent(m)
            d = cycle_structure(m).d_set
            assert {i + 1 for i in range(4) if d_mask[row, i]} == set(d)

    def test_bounded_flag_matches_branching_under_p1_p2(self, impl):
        from matgrowth.digraph import branching_certificate

        masks, mats = b3_population()
        p1, p2, _, _, bounded = impl.structure_flags(mats)
        for row, mask in enumerate(masks):
            if not (p1[row] and p2[row]):
                continue
            m = matrix_of_mask(mask, 3)
            assert bounded[row] == (branching_certificate(m) is None), mask


class TestDiagOracles:
    def test_diag_bounded_exhaustive_b3(self, impl):
        masks, mats = b3_population()
        ok = impl.diag_bounded_by_one(mats, 18)
        for row, mask in enumerate(masks):
            assert ok[row] == p2_power_oracle(matrix_of_mask(mask, 3), 18), mask

    def test_first_diag_ge2_is_minimal(self, impl):
        masks, mats = b3_population()
        k_arr, i_arr = impl.first_diag_ge2(mats, 12)
        for row, mask in enumerate(masks):
            m = matrix_of_mask(mask, 3)
            expected_k = expected_i = -1
            for k in range(1, 13):
                p = power(m, k)
                hits = [i for i in (1, 2, 3) if p.entry(i, i) >= 2]
                if hits:
                    expected_k, expected_i = k, hits[0]
                    break
            assert (k_arr[row], i_arr[row]) == (expected_k, expected_i), mask

    def test_saturation_keeps_the_predicate_exact(self, impl):
        # entries blow far past the saturation cap; the >= 2 reading must
        # still match exact arithmetic
        mats = np.array([[[1, 1, 1], [1, 1, 1], [1, 1, 1]]], dtype=np.int64)
        ok = impl.diag_bounded_by_one(mats, 60)
        assert not ok[0]
        k_arr, i_arr = impl.first_diag_ge2(mats, 60)
        assert (k_arr[0], i_arr[0]) == (2, 1)


class TestDispatch:
    def test_active_backend_exposes_the_kernel_surface(self):
        assert kernels.BACKEND in ("numpy", "numba")
        for name in ("norm_sequences", "structure_flags", "diag_bounded_by_one", "first_diag_ge2"):
            assert callable(getattr(kernels, name))

    @pytest.mark.parametrize("requested", ["numpy", "auto"])
    def test_env_selects_backend(self, requested):
        code = (
            "from matgrowth import kernels\n"
            "print(kernels.BACKEND)\n"
        )
        env = dict(os.environ, MATGROWTH_BACKEND=requested)
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert out.returncode == 0, out.stderr
        got = out.stdout.strip()
        if requested == "numpy":
            assert got == "numpy"
        else:
            assert got in ("numpy", "numba")

    def test_bogus_backend_rejected(self):
        env = dict(os.environ, MATGROWTH_BACKEND="bogus")
        out = subprocess.run(
            [sys.executable, "-c", "import matgrowth.kernels"],
            env=env,
            capture_output=True,
            text=True,
        )
        assert out.returncode != 0
        assert "bogus" in out.stderr

    def test_warm_up_runs(self):
        kernels.warm_up()
        kernels.warm_up()


class TestBackendAgreement:
    def test_backends_agree_bit_for_bit(self):
        if len(BACKENDS) < 2:
            pytest.skip("single backend available")
        from matgrowth import _kernels_numba as knb

        masks, mats = b3_population()
        np_norms, np_over = _kernels_numpy.norm_sequences(mats, 10)
        nb_norms, nb_over = knb.norm_sequences(mats, 10)
        assert (np_norms == nb_norms).all()
        assert (np_over == nb_over).all()
        for a, b in zip(_kernels_numpy.structure_flags(mats), knb.structure_flags(mats)):
            assert (np.asarray(a) == np.asarray(b)).all()
        assert (
            _kernels_numpy.diag_bounded_by_one(mats, 18) == knb.diag_bounded_by_one(mats, 18)
        ).all()
        for a, b in zip(_kernels_numpy.first_diag_ge2(mats, 12), knb.first_diag_ge2(mats, 12)):
            assert (a == b).all()
