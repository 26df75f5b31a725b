import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynsub.codebook import build_codebook, restrict_codeword


def test_first_codeword_is_all_ones():
    cb = build_codebook(8, 6, 0.5)
    assert np.allclose(cb.codewords[0], np.ones(6))


def test_entries_unit_modulus():
    cb = build_codebook(32, 64, 0.5)
    assert np.max(np.abs(np.abs(cb.codewords) - 1.0)) < 1e-14


def test_broadside_orthogonal_codeword():
    # q = n_q/4 puts the sine at 1, so element i carries phase pi*i
    cb = build_codebook(32, 64, 0.5)
    expected = np.exp(1j * np.pi * np.arange(64))
    assert np.allclose(cb.codewords[8], expected, atol=1e-12)


def test_restrict_is_element_selection():
    cb = build_codebook(16, 12, 0.5)
    subset = [2, 5, 11]
    got = restrict_codeword(cb, 7, subset)
    assert np.array_equal(got, cb.codewords[7][[1, 4, 10]])


def test_restrict_matches_direct_phase_formula():
    cb = build_codebook(16, 12, 0.5)
    subset = np.array([2, 5, 11])
    q = 3
    direct = np.exp(1j * (subset - 1) * 2 * np.pi * 0.5
                    * np.sin(2 * np.pi * q / 16))
    assert np.allclose(restrict_codeword(cb, q, subset), direct, atol=1e-12)


def test_restrict_full_array_returns_whole_codeword():
    cb = build_codebook(8, 5, 0.5)
    assert np.array_equal(restrict_codeword(cb, 3, range(1, 6)),
                          cb.codewords[3])


def test_restrict_q0_all_ones():
    cb = build_codebook(8, 10, 0.5)
    assert np.allclose(restrict_codeword(cb, 0, [2, 7, 9]), np.ones(3))


def test_restrict_known_phase_wraparound():
    # q = n_q/4 with spacing 1/2: antenna 5 carries phase 4*pi, i.e. 1
    cb = build_codebook(32, 8, 0.5)
    got = restrict_codeword(cb, 8, [1, 5])
    assert np.allclose(got, [1.0, 1.0], atol=1e-12)


def test_restrict_rejects_bad_input():
    cb = build_codebook(8, 6, 0.5)
    with pytest.raises(IndexError):
        restrict_codeword(cb, 8, [1, 2])
    with pytest.raises(IndexError):
        restrict_codeword(cb, 1, [0, 2])
    with pytest.raises(IndexError):
        restrict_codeword(cb, 1, [2, 7])
    with pytest.raises(IndexError):
        restrict_codeword(cb, 1, [])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 24), st.integers(1, 24), st.data())
def test_restriction_consistency_property(n_q, n_tx, data):
    cb = build_codebook(n_q, n_tx, 0.5)
    q = data.draw(st.integers(0, n_q - 1))
    subset = sorted(data.draw(
        st.sets(st.integers(1, n_tx), min_size=1, max_size=n_tx)))
    got = restrict_codeword(cb, q, subset)
    assert np.array_equal(got, cb.codewords[q][np.array(subset) - 1])
    assert np.max(np.abs(np.abs(got) - 1.0)) < 1e-14
