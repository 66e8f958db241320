"""Translation characters as exact points of Q/Z."""

from fractions import Fraction

import pytest

from qtheta import (GammaCharacter, ThetaIndex, UnityExponent, odd_theta_series,
                    squared_determinant_delta_power, squared_determinant_translation,
                    translation_eigenvalue, translation_eigenvalues)

F = Fraction


class TestUnityExponent:
    def test_reduced_into_unit_interval(self):
        assert UnityExponent(F(9, 8)).value == F(1, 8)
        assert UnityExponent(F(-1, 3)).value == F(2, 3)
        assert UnityExponent(F(2)).value == 0

    def test_group_law(self):
        assert UnityExponent(F(2, 3)) + UnityExponent(F(2, 3)) == UnityExponent(F(1, 3))
        assert 3 * UnityExponent(F(1, 4)) == UnityExponent(F(3, 4))


class TestDiagonal:
    def test_m2(self):
        assert translation_eigenvalues(2) == [UnityExponent(F(1, 8))]

    def test_m3(self):
        assert translation_eigenvalues(3) == [UnityExponent(F(1, 12)),
                                              UnityExponent(F(1, 3))]

    def test_m5(self):
        assert translation_eigenvalues(5) == [UnityExponent(F(1, 20)),
                                              UnityExponent(F(1, 5)),
                                              UnityExponent(F(9, 20)),
                                              UnityExponent(F(4, 5))]

    def test_matches_series_eigenvalues(self):
        for m in range(2, 11):
            diag = translation_eigenvalues(m)
            for mu in range(1, m):
                series = odd_theta_series(ThetaIndex(m, mu), 2 * m + 2)
                assert translation_eigenvalue(series) == diag[mu - 1]

    def test_small_index_rejected(self):
        with pytest.raises(ValueError):
            translation_eigenvalues(1)


class TestSquaredDeterminant:
    def test_values(self):
        assert squared_determinant_translation(2) == UnityExponent(F(1, 4))
        assert squared_determinant_translation(3) == UnityExponent(F(5, 6))
        assert squared_determinant_translation(7) == UnityExponent(F(1, 2))

    def test_closed_form_sweep(self):
        for m in range(2, 201):
            assert squared_determinant_translation(m) == \
                UnityExponent(F((m - 1) * (2 * m - 1), 12))


class TestDeltaPower:
    def test_values(self):
        assert squared_determinant_delta_power(2) == GammaCharacter(3)
        assert squared_determinant_delta_power(3) == GammaCharacter(10)

    def test_consistency_sweep(self):
        for m in range(2, 51):
            power = squared_determinant_delta_power(m)
            assert power.delta_power == (m - 1) * (2 * m - 1) % 12
            assert power.translation_value == squared_determinant_translation(m)
