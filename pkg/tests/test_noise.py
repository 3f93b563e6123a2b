import numpy as np
import pytest
from scipy import stats

from wordvec.errors import InvalidCounts
from wordvec.noise import build_noise, make_rng, sample_negatives


def alias_mass(dist):
    """Total table mass per word, which must reproduce probs exactly."""
    v = dist.vocab_size
    mass = dist.prob_table.copy()
    np.add.at(mass, dist.alias_table, 1.0 - dist.prob_table)
    return mass / v


class TestBuildNoise:
    def test_symmetric_counts(self):
        dist = build_noise([1, 1])
        np.testing.assert_allclose(dist.probs, [0.5, 0.5], atol=1e-15)

    def test_power_three_quarters_exact(self):
        # 16^0.75 == 8 exactly
        dist = build_noise([16, 1])
        np.testing.assert_allclose(dist.probs, [8 / 9, 1 / 9], atol=1e-15)

    def test_power_one_is_plain_unigram(self):
        dist = build_noise([1, 2, 4], power=1.0)
        np.testing.assert_allclose(dist.probs, [1 / 7, 2 / 7, 4 / 7], atol=1e-15)

    def test_probs_sum_to_one(self):
        rng = make_rng(5)
        for _ in range(20):
            counts = rng.integers(1, 1000, size=int(rng.integers(2, 50)))
            dist = build_noise(list(counts))
            assert abs(dist.probs.sum() - 1.0) < 1e-12

    def test_alias_table_reproduces_probs(self):
        rng = make_rng(6)
        for _ in range(20):
            counts = rng.integers(1, 1000, size=int(rng.integers(2, 50)))
            dist = build_noise(list(counts))
            np.testing.assert_allclose(alias_mass(dist), dist.probs, atol=1e-12)

    def test_invalid_counts(self):
        with pytest.raises(InvalidCounts):
            build_noise([5])
        with pytest.raises(InvalidCounts):
            build_noise([1, 0])


class TestSampleNegatives:
    def test_rejection_forces_only_other_word(self):
        dist = build_noise([1, 1])
        rng = make_rng(0)
        assert sample_negatives(dist, 3, exclude=0, rng=rng) == [1, 1, 1]

    def test_exclude_never_returned(self):
        dist = build_noise([100, 3, 2, 1])
        rng = make_rng(1)
        for _ in range(200):
            assert 0 not in sample_negatives(dist, 5, exclude=0, rng=rng)

    def test_same_seed_same_samples(self):
        dist = build_noise([5, 4, 3, 2, 1])
        a = sample_negatives(dist, 20, exclude=2, rng=make_rng(42))
        b = sample_negatives(dist, 20, exclude=2, rng=make_rng(42))
        assert a == b

    def test_empirical_frequency_two_words(self):
        dist = build_noise([16, 1])
        rng = make_rng(7)
        n = 100_000
        draws = [dist.draw(rng) for _ in range(n)]
        freq0 = draws.count(0) / n
        p = 8 / 9
        sigma = np.sqrt(p * (1 - p) / n)
        assert abs(freq0 - p) < 3 * sigma

    def test_chi_square_zipf_vocab(self):
        v = 20
        counts = [max(1, int(1000 / (i + 1))) for i in range(v)]
        dist = build_noise(counts)
        rng = make_rng(11)
        n = 100_000
        observed = np.bincount([dist.draw(rng) for _ in range(n)], minlength=v)
        _, pvalue = stats.chisquare(observed, dist.probs * n)
        assert pvalue > 0.001
