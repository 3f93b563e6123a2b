import math

import numpy as np
import pytest

from wordvec.huffman import build_tree
from wordvec.model import (
    ModelConfig,
    ModelState,
    hidden,
    hs_leaf_probabilities,
    hs_loss,
    hs_update,
    init_state,
    log_sigmoid,
    ns_loss,
    ns_update,
    sigmoid,
    softmax_eh,
    softmax_errors,
    softmax_forward,
    softmax_loss,
    softmax_update_output,
    train_step,
    update_input,
)
from wordvec.noise import build_noise, make_rng
from wordvec.vocab import TrainingInstance


def random_state(v, n, seed=0, hs=False):
    rng = make_rng(seed)
    rows = v - 1 if hs else v
    return ModelState(
        input_vectors=rng.normal(size=(v, n)),
        output_vectors=rng.normal(size=(rows, n)),
    )


class TestSigmoid:
    def test_zero(self):
        assert sigmoid(0.0) == 0.5

    @pytest.mark.parametrize("u", [1.0, 10.0, 100.0])
    def test_symmetry(self, u):
        assert sigmoid(-u) == pytest.approx(1.0 - sigmoid(u), abs=1e-15)

    def test_extreme_negative_no_underflow(self):
        y = sigmoid(-1000.0)
        assert 0.0 < y <= 1e-300
        assert math.isfinite(y)

    def test_log_sigmoid_stable(self):
        assert math.isfinite(log_sigmoid(-800.0))
        assert log_sigmoid(-800.0) == pytest.approx(-800.0)


class TestHidden:
    def test_row_copy(self):
        state = random_state(4, 2)
        state.input_vectors[2] = [3.0, 4.0]
        np.testing.assert_array_equal(hidden(state, [2]), [3.0, 4.0])

    def test_average(self):
        state = random_state(2, 2)
        state.input_vectors[0] = [1.0, 0.0]
        state.input_vectors[1] = [0.0, 1.0]
        np.testing.assert_allclose(hidden(state, [0, 1]), [0.5, 0.5])

    def test_duplicates_average_to_row(self):
        state = random_state(3, 4, seed=2)
        np.testing.assert_allclose(hidden(state, [1, 1]), state.input_vectors[1])


class TestSoftmax:
    def test_zero_weights_uniform(self):
        state = random_state(5, 3)
        state.output_vectors[:] = 0.0
        _, y = softmax_forward(state, np.ones(3))
        np.testing.assert_allclose(y, np.full(5, 0.2), atol=1e-15)

    def test_closed_form_two_words(self):
        state = ModelState(
            input_vectors=np.zeros((2, 1)),
            output_vectors=np.array([[0.0], [math.log(3.0)]]),
        )
        _, y = softmax_forward(state, np.array([1.0]))
        np.testing.assert_allclose(y, [0.25, 0.75], atol=1e-14)

    def test_shift_invariance(self):
        state = random_state(6, 3, seed=4)
        h = np.array([0.3, -0.2, 0.9])
        _, y1 = softmax_forward(state, h)
        shifted = ModelState(state.input_vectors, state.output_vectors + 5.0 * h / (h @ h))
        # adding c*h/(h.h) to every output row shifts all scores by c
        _, y2 = softmax_forward(shifted, h)
        np.testing.assert_allclose(y1, y2, atol=1e-12)

    def test_probabilities_sum_to_one(self):
        state = random_state(30, 5, seed=9)
        _, y = softmax_forward(state, make_rng(3).normal(size=5))
        assert abs(y.sum() - 1.0) < 1e-12

    def test_loss_uniform(self):
        assert softmax_loss(np.full(2, 0.5), 0) == pytest.approx(math.log(2))
        assert softmax_loss(np.full(10, 0.1), 3) == pytest.approx(math.log(10))

    def test_loss_perfect_prediction(self):
        y = np.zeros(4)
        y[2] = 1.0
        assert softmax_loss(y, 2) == 0.0

    def test_errors_cbow(self):
        e = softmax_errors(np.array([0.25, 0.75]), [1])
        np.testing.assert_allclose(e, [0.25, -0.25])

    def test_errors_sum_to_zero(self):
        state = random_state(8, 3, seed=5)
        _, y = softmax_forward(state, np.ones(3))
        assert abs(softmax_errors(y, [2]).sum()) < 1e-12
        assert abs(softmax_errors(y, [1, 4, 4]).sum()) < 1e-12

    def test_errors_skipgram_duplicate_targets(self):
        ei = softmax_errors(np.full(2, 0.5), [1, 1])
        np.testing.assert_allclose(ei, [1.0, -1.0])

    def test_update_output_substitution(self):
        state = ModelState(np.zeros((2, 2)), np.array([[0.2, 0.3], [0.0, 0.0]]))
        softmax_update_output(state, np.array([0.5, 0.0]), np.array([1.0, 0.0]), 0.1)
        np.testing.assert_allclose(state.output_vectors[0], [0.15, 0.3])

    def test_update_output_zero_error_noop(self):
        state = random_state(4, 3, seed=6)
        before = state.output_vectors.copy()
        softmax_update_output(state, np.zeros(4), np.ones(3), 0.5)
        np.testing.assert_array_equal(state.output_vectors, before)

    def test_eh_zero_errors(self):
        state = random_state(4, 3)
        np.testing.assert_array_equal(softmax_eh(state, np.zeros(4)), np.zeros(3))

    def test_eh_single_error_selects_row(self):
        state = random_state(4, 3, seed=7)
        e = np.zeros(4)
        e[2] = 1.0
        np.testing.assert_allclose(softmax_eh(state, e), state.output_vectors[2])


class TestHierarchicalSoftmax:
    def test_zero_weights_loss(self):
        tree = build_tree([4, 2, 1, 1])
        state = random_state(4, 3, hs=True)
        state.output_vectors[:] = 0.0
        h = np.ones(3)
        for w in range(4):
            path = tree.path(w)
            assert hs_loss(state, path, h) == pytest.approx(len(path) * math.log(2))

    def test_two_word_probabilities_sum_to_one(self):
        tree = build_tree([3, 1])
        state = random_state(2, 4, seed=8, hs=True)
        h = make_rng(1).normal(size=4)
        probs = hs_leaf_probabilities(state, tree, h)
        assert abs(probs.sum() - 1.0) < 1e-12

    @pytest.mark.parametrize("v", [2, 5, 17, 64])
    def test_normalization_random_weights(self, v):
        rng = make_rng(v)
        tree = build_tree(list(rng.integers(1, 50, size=v)))
        state = ModelState(
            input_vectors=rng.normal(size=(v, 6)),
            output_vectors=rng.normal(size=(v - 1, 6)),
        )
        probs = hs_leaf_probabilities(state, tree, rng.normal(size=6))
        assert abs(probs.sum() - 1.0) < 1e-10

    def test_update_zero_weights(self):
        tree = build_tree([1, 1])
        state = ModelState(np.zeros((2, 2)), np.zeros((1, 2)))
        h = np.array([1.0, 2.0])
        eta = 0.1
        # word 0: direction bit 1, g = 0.5 - 1 = -0.5
        hs_update(state, tree.path(0), h, eta)
        np.testing.assert_allclose(state.output_vectors[0], eta * 0.5 * h)

    def test_update_saturated_noop(self):
        tree = build_tree([1, 1])
        state = ModelState(np.zeros((2, 2)), np.array([[1e4, 1e4]]))
        h = np.array([1.0, 1.0])
        before = state.output_vectors.copy()
        hs_update(state, tree.path(0), h, 0.5)  # t=1, sigmoid saturated at 1
        np.testing.assert_allclose(state.output_vectors, before, atol=1e-10)

    def test_update_touches_only_path_rows(self):
        rng = make_rng(3)
        tree = build_tree([8, 4, 2, 1, 1])
        state = ModelState(rng.normal(size=(5, 3)), rng.normal(size=(4, 3)))
        before = state.output_vectors.copy()
        path = tree.path(4)
        hs_update(state, path, np.ones(3), 0.3)
        off_path = [r for r in range(4) if r not in path.nodes]
        np.testing.assert_array_equal(state.output_vectors[off_path], before[off_path])


class TestNegativeSampling:
    def test_zero_weights_loss(self):
        state = ModelState(np.zeros((5, 2)), np.zeros((5, 2)))
        h = np.ones(2)
        assert ns_loss(state, 0, [1, 2, 3], h) == pytest.approx(4 * math.log(2))

    def test_duplicate_negative_counted_twice(self):
        rng = make_rng(4)
        state = ModelState(rng.normal(size=(5, 3)), rng.normal(size=(5, 3)))
        h = rng.normal(size=3)
        single = ns_loss(state, 0, [2], h)
        double = ns_loss(state, 0, [2, 2], h)
        extra = -float(log_sigmoid(-(state.output_vectors[2] @ h)))
        assert double == pytest.approx(single + extra)

    def test_update_zero_weights(self):
        state = ModelState(np.zeros((4, 2)), np.zeros((4, 2)))
        h = np.array([1.0, -1.0])
        eta = 0.2
        ns_update(state, 0, [2, 3], h, eta)
        np.testing.assert_allclose(state.output_vectors[0], 0.5 * eta * h)
        np.testing.assert_allclose(state.output_vectors[2], -0.5 * eta * h)
        np.testing.assert_allclose(state.output_vectors[3], -0.5 * eta * h)

    def test_loss_decreases_after_update(self):
        rng = make_rng(5)
        state = ModelState(rng.normal(size=(6, 4)), rng.normal(size=(6, 4)))
        h = rng.normal(size=4)
        negs = [2, 3, 5]
        before = ns_loss(state, 0, negs, h)
        ns_update(state, 0, negs, h, 0.01)
        assert ns_loss(state, 0, negs, h) < before


class TestUpdateInput:
    def test_single_row(self):
        state = ModelState(np.zeros((3, 2)), np.zeros((3, 2)))
        update_input(state, [1], np.array([1.0, 2.0]), 0.1)
        np.testing.assert_allclose(state.input_vectors[1], [-0.1, -0.2])
        np.testing.assert_array_equal(state.input_vectors[[0, 2]], np.zeros((2, 2)))

    def test_zero_eh_noop(self):
        state = random_state(3, 2, seed=6)
        before = state.input_vectors.copy()
        update_input(state, [0, 2], np.zeros(2), 0.9)
        np.testing.assert_array_equal(state.input_vectors, before)

    def test_duplicates_accumulate(self):
        state = ModelState(np.zeros((3, 1)), np.zeros((3, 1)))
        update_input(state, [1, 1, 2], np.array([3.0]), 1.0)
        assert state.input_vectors[1, 0] == pytest.approx(-2.0)
        assert state.input_vectors[2, 0] == pytest.approx(-1.0)


class TestTrainStep:
    def make(self, arch, obj, v=6, n=3, k=2, seed=0):
        config = ModelConfig(
            vocab_size=v, dim=n, architecture=arch, objective=obj,
            k_negatives=k, eta=0.1,
        )
        rng = make_rng(seed)
        state = init_state(config, rng)
        counts = [v - i for i in range(v)]
        tree = build_tree(counts) if obj == "hs" else None
        noise = build_noise(counts) if obj == "ns" else None
        if arch == "cbow":
            instance = TrainingInstance(mode="cbow", context=(1, 2, 4), target=0)
        else:
            instance = TrainingInstance(mode="skipgram", center=0, outputs=(1, 2, 4))
        return state, config, instance, rng, tree, noise

    def test_softmax_touches_all_rows(self):
        state, config, instance, rng, tree, noise = self.make("cbow", "softmax")
        report = train_step(state, config, instance, rng)
        assert report.touched_output_rows == 6

    def test_ns_touches_k_plus_1(self):
        state, config, instance, rng, tree, noise = self.make("cbow", "ns", k=5)
        report = train_step(state, config, instance, rng, noise=noise)
        assert report.touched_output_rows == 6

    def test_ns_skipgram_touches_per_context_word(self):
        state, config, instance, rng, tree, noise = self.make("skipgram", "ns", k=2)
        report = train_step(state, config, instance, rng, noise=noise)
        assert report.touched_output_rows == 3 * (2 + 1)

    def test_hs_touches_path_lengths(self):
        state, config, instance, rng, tree, noise = self.make("skipgram", "hs")
        report = train_step(state, config, instance, rng, tree=tree)
        expected = sum(len(tree.path(w)) for w in instance.outputs)
        assert report.touched_output_rows == expected

    def test_eta_zero_bit_identical(self):
        for arch in ("cbow", "skipgram"):
            for obj in ("softmax", "hs", "ns"):
                state, config, instance, rng, tree, noise = self.make(arch, obj)
                w = state.input_vectors.copy()
                wp = state.output_vectors.copy()
                train_step(state, config, instance, rng, tree=tree, noise=noise, eta=0.0)
                assert np.array_equal(state.input_vectors, w)
                assert np.array_equal(state.output_vectors, wp)

    def test_mismatched_instance_mode(self):
        state, config, instance, rng, tree, noise = self.make("cbow", "softmax")
        bad = TrainingInstance(mode="skipgram", center=0, outputs=(1,))
        with pytest.raises(ValueError):
            train_step(state, config, bad, rng)

    def test_softmax_update_moves_target_score_up(self):
        # after one output update, the target's score strictly increases and
        # every other score with y_j > 0 strictly decreases
        state, config, instance, rng, tree, noise = self.make("cbow", "softmax", seed=3)
        state.output_vectors[:] = make_rng(9).normal(size=state.output_vectors.shape)
        h = hidden(state, instance.context)
        _, y = softmax_forward(state, h)
        before = state.output_vectors @ h
        e = softmax_errors(y, [instance.target])
        softmax_update_output(state, e, h, 0.01)
        after = state.output_vectors @ h
        assert after[instance.target] > before[instance.target]
        others = [j for j in range(config.vocab_size) if j != instance.target]
        assert all(after[j] < before[j] for j in others)

    def test_loss_is_pre_update(self):
        state, config, instance, rng, tree, noise = self.make("cbow", "softmax")
        h = hidden(state, instance.context)
        _, y = softmax_forward(state, h)
        expected = softmax_loss(y, instance.target)
        report = train_step(state, config, instance, rng)
        assert report.loss == pytest.approx(expected)
