"""
Click environments: sampling, feasibility and the true-model quantities.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from rank_poison.core.errors import InvalidActionError, ShapeError
from rank_poison.core.rng import rng_stream
from rank_poison.env import build_env, check_action, default_kappa, draw_feedback, feasible, observed_count
from rank_poison.schemas.enums import ClickModel
from rank_poison.schemas.env import Feedback


def test_single_arm_certain_click():
    env = build_env(ClickModel.SINGLE_ARM, [1.0, 0.0], 1)
    stream = rng_stream(0, "env/0")
    for _ in range(50):
        assert draw_feedback(env, np.array([0]), stream).clicks.tolist() == [1]


def test_cascade_stops_at_certain_first_item():
    env = build_env(ClickModel.CASCADE, [1.0, 0.7, 0.9, 0.3], 3)
    stream = rng_stream(0, "env/0")
    for _ in range(50):
        feedback = draw_feedback(env, np.array([0, 1, 2]), stream)
        assert feedback.click_pos == 0
        assert feedback.clicks.tolist() == [1, 0, 0]


def test_cascade_without_attraction_has_no_click():
    env = build_env(ClickModel.CASCADE, [0.0, 0.0, 0.5], 2)
    feedback = draw_feedback(env, np.array([0, 1]), rng_stream(0, "env/0"))
    assert feedback.click_pos is None
    assert feedback.clicks.tolist() == [0, 0]


def test_pbm_click_rates_match_closed_form():
    means = rng_stream(11, "means").uniform(0.0, 1.0, size=16)
    env = build_env(ClickModel.POSITION_BASED, means, 8)
    action = np.arange(8)
    stream = rng_stream(11, "env/0")
    clicks = np.array([draw_feedback(env, action, stream).clicks for _ in range(100_000)])
    expected = env.kappa_array * means[action]
    assert np.all(np.abs(clicks.mean(axis=0) - expected) < 0.01)


def test_cascade_click_positions_match_closed_form():
    means = np.array([0.3, 0.5, 0.2, 0.6])
    env = build_env(ClickModel.CASCADE, means, 4)
    stream = rng_stream(13, "env/0")
    counts = np.zeros(5)
    for _ in range(100_000):
        position = draw_feedback(env, np.arange(4), stream).click_pos
        counts[4 if position is None else position] += 1
    reach = np.concatenate([[1.0], np.cumprod(1.0 - means)])
    expected = np.append(means * reach[:-1], reach[-1])
    assert np.all(np.abs(counts / 100_000 - expected) < 0.01)


def test_every_model_consumes_k_uniforms():
    for kind, list_len in [(ClickModel.SINGLE_ARM, 1), (ClickModel.POSITION_BASED, 3), (ClickModel.CASCADE, 3)]:
        env = build_env(kind, [0.5, 0.4, 0.3, 0.2], list_len)
        a, b = rng_stream(5, "env/0"), rng_stream(5, "env/0")
        draw_feedback(env, np.arange(list_len), a)
        b.random(list_len)
        assert a.random() == b.random()


@pytest.mark.parametrize("kind,clicks,expected", [
    (ClickModel.CASCADE, [0, 1, 0, 0], True),
    (ClickModel.CASCADE, [1, 1, 0, 0], False),
    (ClickModel.POSITION_BASED, [1, 1, 1, 1], True),
    (ClickModel.POSITION_BASED, [1, 2, 0, 0], False),
    (ClickModel.SINGLE_ARM, [1], True),
    (ClickModel.SINGLE_ARM, [1, 0], False),
])
def test_feasible(kind, clicks, expected):
    assert feasible(kind, np.array(clicks)) is expected


def test_observed_count():
    assert observed_count(ClickModel.CASCADE, np.array([0, 0, 1, 0])) == 3
    assert observed_count(ClickModel.CASCADE, np.array([0, 0, 0, 0])) == 4
    assert observed_count(ClickModel.POSITION_BASED, np.array([0, 0, 1, 0])) == 4


def test_bad_actions():
    env = build_env(ClickModel.POSITION_BASED, [0.5, 0.4, 0.3, 0.2], 2)
    with pytest.raises(InvalidActionError):
        check_action(env, np.array([1, 1]))
    with pytest.raises(InvalidActionError):
        check_action(env, np.array([0, 4]))
    with pytest.raises(ShapeError):
        draw_feedback(env, np.array([0, 1, 2]), rng_stream(0, "env/0"))


def test_default_kappa_is_power_law():
    assert default_kappa(3, 0.5) == pytest.approx([1.0, 2 ** -0.5, 3 ** -0.5])
    assert default_kappa(2, 0.0) == [1.0, 1.0]


def test_env_model_validation():
    with pytest.raises(ValidationError):
        build_env(ClickModel.SINGLE_ARM, [0.5, 1.2], 1)
    with pytest.raises(ValidationError):
        build_env(ClickModel.POSITION_BASED, [0.5, 0.4], 2, kappa=[0.5, 1.0])
    with pytest.raises(ValidationError):
        build_env(ClickModel.CASCADE, [0.5, 0.4], 3)


def test_true_model_quantities():
    env = build_env(ClickModel.CASCADE, [0.5, 0.9, 0.5, 0.2], 2)
    assert env.optimal_action().tolist() == [1, 0]
    assert env.expected_clicks(np.array([1, 0])) == pytest.approx(1 - 0.1 * 0.5)
    assert env.p_star == pytest.approx(0.9)
    assert env.gaps(3).tolist() == pytest.approx([0.3, 0.7, 0.3, 0.0])

    pbm = build_env(ClickModel.POSITION_BASED, [0.5, 0.9], 2, kappa=[1.0, 0.5])
    assert pbm.expected_clicks(np.array([1, 0])) == pytest.approx(0.9 + 0.25)


def test_feedback_from_clicks():
    assert Feedback.from_clicks(ClickModel.CASCADE, np.array([0, 0, 1])).click_pos == 2
    assert Feedback.from_clicks(ClickModel.CASCADE, np.array([0, 0, 0])).click_pos is None
    assert Feedback.from_clicks(ClickModel.POSITION_BASED, np.array([1, 1])).click_pos is None
