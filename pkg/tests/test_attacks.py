"""
Attack strategies: conservative attack values, feasibility and cost bookkeeping.
"""
import math

import numpy as np
import pytest

from rank_poison.attacks import (
    CascadeAttacker,
    GeneralAttacker,
    ModifiedJunAttacker,
    NoAttack,
    PBMAttacker,
    Trivial1Attacker,
    TrivialKAttacker,
    UCBAttacker,
    attack_probability,
    build_attacker,
    cal_alpha,
    ceil_alpha,
    frozen_floors,
    lower_floor,
    modified_jun_alpha,
    mu_lower,
    new_attack_state,
    protected_floors,
)
from rank_poison.core.errors import ConfigError, FeasibilityError, UndefinedMeanError
from rank_poison.core.rng import rng_stream
from rank_poison.core.stats import BetaParams, beta
from rank_poison.harness import build_instance, replay_conservative, replay_cost, run_replication
from rank_poison.schemas.enums import AttackStrategy, ClickModel
from rank_poison.schemas.env import Feedback
from rank_poison.schemas.experiment import ExperimentSpec
from tests import oracle
from tests.factories import PAIRS, attack_config, random_document


def single(click: int) -> Feedback:
    return Feedback(clicks=np.array([click], dtype=np.int8))


def cascade(clicks) -> Feedback:
    return Feedback.from_clicks(ClickModel.CASCADE, np.array(clicks, dtype=np.int8))


def feed(attacker, arm: int, click: int) -> int:
    return int(attacker.attack(np.array([arm]), single(click)).alpha[0])


class TestLowerBound:
    def test_single_rewarded_pull(self, two_arm_config):
        state = new_attack_state(two_arm_config)
        state.round = 1
        state.ledger.record(np.array([1]), np.array([1]))
        assert mu_lower(state, two_arm_config, 1, 1) == pytest.approx(-1.8936, abs=2e-3)

    def test_zero_pulls(self, two_arm_config):
        state = new_attack_state(two_arm_config)
        state.round = 1
        with pytest.raises(UndefinedMeanError):
            mu_lower(state, two_arm_config, 1, 1)

    def test_frozen_snapshot_does_not_move(self, two_arm_config):
        attacker = UCBAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        feed(attacker, 1, 1)
        feed(attacker, 0, 1)
        before = mu_lower(attacker.state, two_arm_config, 1, 2)
        for _ in range(100):
            feed(attacker, 1, 0)
        assert attacker.state.timestamps[0, 0] == 2
        assert mu_lower(attacker.state, two_arm_config, 1, 2) == before
        assert mu_lower(attacker.state, two_arm_config, 1, attacker.state.round) != before

    def test_floors_match_the_scalar_formula(self):
        config = attack_config(6, targets=[5], protected=[1, 3, 5], delta=0.05)
        state = new_attack_state(config)
        state.round = 1
        state.ledger.pulls[[1, 3, 5]] = [400, 900, 0]
        state.ledger.pre_sum[[1, 3, 5]] = [360, 810, 0]
        params = config.beta_params
        expected = [max(0.0, 0.9 - 2 * beta(params, n) - 0.1) for n in (400, 900)] + [0.0]
        assert expected[0] > 0
        assert protected_floors(state, config, 1) == pytest.approx(expected, rel=1e-12)
        assert lower_floor(state, config, 1, 1) == pytest.approx(expected[1], rel=1e-12)

        state.take_snapshot()
        state.round = 2
        state.ledger.pre_sum[1] = 0
        frozen = protected_floors(state, config, 1)
        assert frozen == pytest.approx(expected, rel=1e-12)
        assert protected_floors(state, config, 1) is frozen
        assert protected_floors(state, config, 2)[0] == 0.0

        state.timestamps[0] = [1, 2, 2]
        assert frozen_floors(state, config, 0) == pytest.approx([expected[0], expected[1], 0.0], rel=1e-12)

        state.timestamps[:] = 2
        state.prune_snapshots()
        assert 1 not in state.snapshots and 1 not in state.floor_cache


def test_ceil_alpha_ignores_residue():
    assert ceil_alpha(1.0 + 1e-12) == 1
    assert ceil_alpha(0.2) == 1
    assert ceil_alpha(0.0) == 0
    assert ceil_alpha(-0.5) == 0


class TestUCBAttack:
    def test_first_pull_of_non_target_is_fully_attacked(self, two_arm_config):
        attacker = UCBAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        outcome = attacker.attack(np.array([0]), single(1))
        assert outcome.alpha.tolist() == [1]
        assert outcome.feedback.clicks.tolist() == [0]
        assert outcome.cost == 1
        assert attacker.state.timestamps[0].tolist() == [1]

    def test_target_is_never_attacked(self, two_arm_config):
        attacker = UCBAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        assert feed(attacker, 1, 1) == 0
        assert attacker.state.cumulative_cost == 0

    def test_no_click_no_gamma_still_advances(self, two_arm_config):
        attacker = UCBAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        for _ in range(4):
            feed(attacker, 1, 1)
        assert feed(attacker, 0, 0) == 0
        assert attacker.state.timestamps[0].tolist() == [5]

    def test_falls_back_to_frozen_bound(self, two_arm_config):
        attacker = UCBAttacker(two_arm_config, ClickModel.SINGLE_ARM, record_audits=True)
        for _ in range(101):
            feed(attacker, 1, 1)
        alphas = [feed(attacker, 0, click) for click in (1, 1, 1, 0)]
        assert alphas == [1, 1, 0, 0]
        assert attacker.state.timestamps[0].tolist() == [105]
        for _ in range(40):
            feed(attacker, 1, 0)

        outcome = attacker.attack(np.array([0]), single(0))
        audit = outcome.audits[0]
        params = two_arm_config.beta_params
        mean_now = 101 / 141
        floor_now = max(0.0, mean_now - 2 * beta(params, 141) - 0.1)
        assert audit.gammas[0] == pytest.approx(1 - 5 * floor_now, rel=1e-12)
        assert audit.gammas[0] > 0
        assert audit.gamma_tildes == (0.0,)
        assert not audit.advanced
        assert outcome.alpha.tolist() == [0]
        assert attacker.state.timestamps[0].tolist() == [105]
        assert attacker.state.conservative_violations == 0

    def test_cal_alpha_rejects_items_that_cannot_be_met(self, two_arm_config):
        state = new_attack_state(two_arm_config)
        state.round = 1
        state.ledger.record(np.array([0]), np.array([0]))
        state.ledger.pre_sum[0] = 3
        state.ledger.pulls[0] = 3
        state.take_snapshot()
        with pytest.raises(FeasibilityError):
            cal_alpha(state, two_arm_config, 0, 0)


class TestPBMAttack:
    def test_protected_items_untouched(self):
        config = attack_config(6, targets=[5], protected=[2, 5])
        attacker = PBMAttacker(config, ClickModel.POSITION_BASED)
        outcome = attacker.attack(np.array([5, 2]), Feedback(clicks=np.array([1, 1], dtype=np.int8)))
        assert outcome.alpha.tolist() == [0, 0]
        assert outcome.cost == 0

    def test_first_pulls_lose_their_clicks(self):
        config = attack_config(6, targets=[5], protected=[2, 5])
        attacker = PBMAttacker(config, ClickModel.POSITION_BASED)
        outcome = attacker.attack(np.array([0, 2, 1]), Feedback(clicks=np.array([1, 1, 0], dtype=np.int8)))
        assert outcome.alpha.tolist() == [1, 0, 0]
        assert outcome.feedback.clicks.tolist() == [0, 1, 0]
        assert attacker.state.timestamps[0].tolist() == [1, 1]
        assert attacker.state.timestamps[1].tolist() == [1, 1]


    def test_floors_use_examination_weighted_means(self):
        config = attack_config(4, targets=[3], protected=[0, 3], delta=0.05)
        corrected = PBMAttacker(config, ClickModel.POSITION_BASED, kappa=np.array([1.0, 0.25]))
        plain = PBMAttacker(config, ClickModel.POSITION_BASED)
        for attacker in (corrected, plain):
            seed_protected_history(attacker)
        floor = 0.8 - 2 * beta(config.beta_params, 2000) - 0.1
        assert floor > 0.5
        assert protected_floors(plain.state, config, 5).tolist() == [0.0, 0.0]
        assert protected_floors(corrected.state, config, 5) == pytest.approx([floor, floor], rel=1e-12)

    def test_known_examination_spares_clicks_below_the_floors(self):
        config = attack_config(4, targets=[3], protected=[0, 3], delta=0.05)
        attacker = PBMAttacker(config, ClickModel.POSITION_BASED, kappa=np.array([1.0, 0.25]))
        seed_protected_history(attacker)
        ledger = attacker.state.ledger
        ledger.pulls[1] = 10
        ledger.kappa_pulls[1] = 10.0
        ledger.pre_sum[1] = 5
        outcome = attacker.attack(np.array([1, 0]), Feedback(clicks=np.array([1, 0], dtype=np.int8)))
        assert outcome.alpha.tolist() == [0, 0]
        assert attacker.state.timestamps[1].tolist() == [6, 6]
        assert ledger.kappa_pulls[[0, 1]].tolist() == [500.25, 11.0]
        assert attacker.state.conservative_violations == 0

    def test_registry_hands_examination_to_pbm_attack_only(self):
        config = attack_config(4, targets=[3], protected=[0, 3])
        kappa = np.array([1.0, 0.5])
        assert build_attacker("pbm_attack", config, ClickModel.POSITION_BASED, kappa=kappa).state.bias_corrected
        assert not build_attacker("pbm_attack", config, ClickModel.POSITION_BASED).state.bias_corrected
        assert not build_attacker("trivialK", config, ClickModel.POSITION_BASED, kappa=kappa).state.bias_corrected


def seed_protected_history(attacker) -> None:
    """Items 0 and 3 shown 2000 times at a position with kappa 0.25, 400 clicks each."""
    ledger = attacker.state.ledger
    ledger.pulls[[0, 3]] = 2000
    ledger.kappa_pulls[[0, 3]] = 500.0
    ledger.pre_sum[[0, 3]] = 400
    attacker.state.round = 5


def test_examination_weighted_floors_cut_pbm_cost():
    config = attack_config(4, targets=[1], protected=[1, 2, 3])
    kappa = np.array([1.0, 0.3, 0.3])
    means = np.array([0.2, 0.8, 0.8, 0.8])
    stream = np.random.default_rng(3)
    rounds = []
    for t in range(4000):
        action = np.array([0, 1, 2]) if t % 2 == 0 else np.array([3, 1, 2])
        clicks = (stream.random(3) < kappa * means[action]).astype(np.int8)
        rounds.append((action, Feedback(clicks=clicks)))

    attackers = {
        "corrected": PBMAttacker(config, ClickModel.POSITION_BASED, kappa=kappa),
        "plain": PBMAttacker(config, ClickModel.POSITION_BASED),
        "trivial": TrivialKAttacker(config, ClickModel.POSITION_BASED),
    }
    for action, pre in rounds:
        for attacker in attackers.values():
            attacker.attack(action, pre)
    cost = {name: attacker.state.cumulative_cost for name, attacker in attackers.items()}
    assert cost["corrected"] < 0.25 * cost["trivial"]
    assert cost["plain"] > 2 * cost["corrected"]
    assert all(attacker.state.conservative_violations == 0 for attacker in attackers.values())


class TestCascadeAttack:
    def test_no_click_no_attack(self):
        config = attack_config(6, targets=[5], protected=[0, 5])
        attacker = CascadeAttacker(config, ClickModel.CASCADE)
        outcome = attacker.attack(np.array([0, 1, 2, 3, 5]), cascade([0, 0, 0, 0, 0]))
        assert outcome.cost == 0

    def test_click_on_protected_item(self):
        config = attack_config(6, targets=[5], protected=[0, 5])
        attacker = CascadeAttacker(config, ClickModel.CASCADE)
        outcome = attacker.attack(np.array([0, 1, 2, 3, 5]), cascade([1, 0, 0, 0, 0]))
        assert outcome.cost == 0

    def test_removed_click_moves_to_next_protected_item(self):
        config = attack_config(6, targets=[5], protected=[0, 5])
        attacker = CascadeAttacker(config, ClickModel.CASCADE)
        outcome = attacker.attack(np.array([0, 1, 2, 3, 5]), cascade([0, 1, 0, 0, 0]))
        assert outcome.alpha.tolist() == [0, 1, 0, 0, -1]
        assert outcome.feedback.clicks.tolist() == [0, 0, 0, 0, 1]
        assert outcome.feedback.click_pos == 4
        assert outcome.cost == 2
        ledger = attacker.state.ledger
        assert ledger.pulls[[0, 1, 2, 3, 5]].tolist() == [1, 1, 1, 1, 1]
        assert ledger.post_sum[5] == 1

    def test_no_protected_item_below(self):
        config = attack_config(6, targets=[0], protected=[0, 4])
        attacker = CascadeAttacker(config, ClickModel.CASCADE)
        outcome = attacker.attack(np.array([0, 4, 1, 2]), cascade([0, 0, 1, 0]))
        assert outcome.alpha.tolist() == [0, 0, 1, 0]
        assert outcome.feedback.clicks.tolist() == [0, 0, 0, 0]


class TestGeneralAttack:
    def test_probability_clamps_to_one(self):
        config = attack_config(16, targets=[1], delta=0.05)
        attacker = GeneralAttacker(config, ClickModel.POSITION_BASED, rng=rng_stream(0, "attacker/0"))
        ledger = attacker.state.ledger
        ledger.record(np.array([0, 1]), np.array([1, 0]))
        b = beta(BetaParams(num_items=16, delta=0.05), 1)
        assert (1 + b - (0 - b)) / (1 + b) > 1
        assert attack_probability(ledger, config, 0) == 1.0

    def test_probability_zero_when_target_dominates(self):
        config = attack_config(16, targets=[1], delta=0.05)
        state = new_attack_state(config)
        state.ledger.pulls[:] = 10_000
        state.ledger.pre_sum[1] = 10_000
        assert attack_probability(state.ledger, config, 0) == 0.0

    def test_unobserved_protected_item_has_zero_lower_bound(self):
        config = attack_config(4, targets=[3])
        state = new_attack_state(config)
        state.ledger.record(np.array([0]), np.array([1]))
        assert attack_probability(state.ledger, config, 0) == 1.0

    def test_only_clicked_outside_items_are_candidates(self):
        config = attack_config(6, targets=[5], protected=[2, 5])
        attacker = GeneralAttacker(config, ClickModel.POSITION_BASED, rng=rng_stream(0, "attacker/0"))
        outcome = attacker.attack(np.array([0, 2, 5, 1]), Feedback(clicks=np.array([1, 1, 1, 0], dtype=np.int8)))
        assert outcome.alpha.tolist() == [1, 0, 0, 0]


class TestBaselines:
    def test_trivial_k_removes_outside_clicks(self):
        config = attack_config(8, targets=[7], protected=[6, 7])
        attacker = TrivialKAttacker(config, ClickModel.POSITION_BASED)
        outcome = attacker.attack(np.array([0, 6, 1, 7, 2]),
                                  Feedback(clicks=np.array([1, 1, 1, 0, 1], dtype=np.int8)))
        assert outcome.cost == 3
        assert outcome.feedback.clicks.tolist() == [0, 1, 0, 0, 0]

    def test_trivial1_spares_only_targets(self):
        config = attack_config(8, targets=[7], protected=[6, 7])
        attacker = Trivial1Attacker(config, ClickModel.POSITION_BASED)
        outcome = attacker.attack(np.array([0, 6, 7]), Feedback(clicks=np.array([1, 1, 1], dtype=np.int8)))
        assert outcome.alpha.tolist() == [1, 1, 0]

    def test_trivial_cascade_click_is_erased(self):
        config = attack_config(8, targets=[7], protected=[6, 7])
        attacker = TrivialKAttacker(config, ClickModel.CASCADE)
        outcome = attacker.attack(np.array([0, 1, 6]), cascade([0, 1, 0]))
        assert outcome.feedback.clicks.tolist() == [0, 0, 0]
        assert outcome.feedback.click_pos is None
        assert outcome.cost == 1
        assert attacker.state.ledger.pulls[[0, 1, 6]].tolist() == [1, 1, 1]

    def test_all_protected_list_costs_nothing(self):
        config = attack_config(8, targets=[7], protected=[6, 7])
        attacker = TrivialKAttacker(config, ClickModel.POSITION_BASED)
        assert attacker.attack(np.array([6, 7]), Feedback(clicks=np.array([1, 1], dtype=np.int8))).cost == 0


class TestModifiedJun:
    def test_unrewarded_pull_is_never_attacked(self, two_arm_config):
        attacker = ModifiedJunAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        feed(attacker, 1, 1)
        for _ in range(5):
            assert feed(attacker, 0, 0) == 0

    def test_target_is_never_attacked(self, two_arm_config):
        attacker = ModifiedJunAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        assert feed(attacker, 1, 1) == 0

    def test_value_before_target_pull_is_infinite(self, two_arm_config):
        attacker = ModifiedJunAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        assert feed(attacker, 0, 1) == 1
        assert math.isinf(modified_jun_alpha(attacker.state, two_arm_config, 0))

    def test_value_is_unclamped(self, two_arm_config):
        attacker = ModifiedJunAttacker(two_arm_config, ClickModel.SINGLE_ARM)
        for _ in range(200):
            feed(attacker, 1, 1)
        attacker.state.ledger.record(np.array([0]), np.array([0]))
        value = modified_jun_alpha(attacker.state, two_arm_config, 0)
        lower = 1.0 - 2 * beta(two_arm_config.beta_params, 200)
        assert value == pytest.approx(0 - 1 * (lower - 0.1))
        assert value < 0


def test_no_attack_is_free():
    config = attack_config(4, targets=[3], protected=[2, 3])
    attacker = NoAttack(config, ClickModel.POSITION_BASED)
    outcome = attacker.attack(np.array([0, 1]), Feedback(clicks=np.array([1, 1], dtype=np.int8)))
    assert outcome.cost == 0
    assert outcome.feedback.clicks.tolist() == [1, 1]


class TestRegistry:
    def test_incompatible_model(self, two_arm_config):
        with pytest.raises(ConfigError):
            build_attacker(AttackStrategy.PBM_ATTACK, two_arm_config, ClickModel.SINGLE_ARM)
        with pytest.raises(ConfigError):
            build_attacker(AttackStrategy.MODIFIED_JUN, two_arm_config, ClickModel.CASCADE)

    def test_general_attack_needs_a_stream(self, two_arm_config):
        with pytest.raises(ConfigError):
            build_attacker(AttackStrategy.GENERAL_ATTACK, two_arm_config, ClickModel.SINGLE_ARM)

    @pytest.mark.parametrize("strategy,cls", [
        ("ucb_attack", UCBAttacker),
        ("trivial1", Trivial1Attacker),
        ("none", NoAttack),
    ])
    def test_by_name(self, two_arm_config, strategy, cls):
        assert isinstance(build_attacker(strategy, two_arm_config, ClickModel.SINGLE_ARM), cls)


def test_guard_rejects_demoting_protected_items():
    class Rogue(TrivialKAttacker):
        def _alpha(self, action, pre):
            return pre.clicks.astype(np.int64)

    config = attack_config(4, targets=[3], protected=[2, 3])
    with pytest.raises(FeasibilityError):
        Rogue(config, ClickModel.POSITION_BASED).attack(np.array([3, 0]),
                                                         Feedback(clicks=np.array([1, 1], dtype=np.int8)))


@pytest.mark.parametrize("model,strategy", PAIRS)
def test_post_attack_feedback_is_always_feasible(model, strategy):
    fuzz = np.random.default_rng(PAIRS.index((model, strategy)))
    for _ in range(4):
        spec = ExperimentSpec.model_validate(random_document(fuzz, model, strategy, horizon=300))
        result = run_replication(spec, 0)
        kind = ClickModel(model)
        for record in result.trace:
            assert set(record.alpha.tolist()) <= {-1, 0, 1}
            assert oracle.observed_prefix(kind, record.post_clicks) >= oracle.observed_prefix(kind, record.pre_clicks)
            if kind == ClickModel.CASCADE:
                assert record.post_clicks.sum() <= 1
        assert replay_cost(result.trace)[-1] == result.metrics.final_cost


@pytest.mark.parametrize("model,strategy", [
    ("single_arm", "ucb_attack"), ("pbm", "pbm_attack"), ("cascade", "cascade_attack"),
])
def test_conservative_inequality_replays(model, strategy):
    fuzz = np.random.default_rng(2024)
    for seed in range(3):
        document = random_document(fuzz, model, strategy, horizon=2000)
        spec = ExperimentSpec.model_validate(document)
        result = run_replication(spec, seed)
        params = BetaParams(num_items=spec.num_items, delta=spec.attack.delta)
        checked, violated = replay_conservative(result.trace, params, spec.attack.delta0)
        assert violated == 0
        assert checked == result.metrics.checks.conservative_checked_rounds
        assert result.metrics.checks.conservative_violations == 0


@pytest.mark.parametrize("model,strategy", [
    ("single_arm", "ucb_attack"), ("pbm", "pbm_attack"), ("cascade", "cascade_attack"),
])
def test_gammas_match_brute_force(model, strategy):
    fuzz = np.random.default_rng(7)
    kind = ClickModel(model)
    for replication in range(100):
        spec = ExperimentSpec.model_validate(random_document(fuzz, model, strategy, horizon=30, max_items=4))
        result = run_replication(spec, replication)
        env, config = build_instance(spec, replication)
        kappa = env.kappa_array.tolist() if kind == ClickModel.POSITION_BASED else None
        audits = [a for record in result.trace for a in record.audits]
        expected = oracle.replay_gammas(result.trace, kind, AttackStrategy(strategy), config, kappa)
        assert len(audits) == len(expected)
        for audit, brute in zip(audits, expected):
            assert audit.item == brute.item
            assert audit.advanced == brute.advanced
            assert all(oracle.close(a, b) for a, b in zip(audit.gammas, brute.gammas))
            assert all(oracle.close(a, b) for a, b in zip(audit.gamma_tildes, brute.gamma_tildes))


@pytest.mark.parametrize("model", ["single_arm", "pbm", "cascade"])
def test_probabilities_match_brute_force(model):
    fuzz = np.random.default_rng(11)
    for replication in range(12):
        spec = ExperimentSpec.model_validate(random_document(fuzz, model, "general_attack", horizon=50, max_items=5))
        result = run_replication(spec, replication)
        _, config = build_instance(spec, replication)
        audits = [a for record in result.trace for a in record.audits]
        expected = oracle.replay_probabilities(result.trace, ClickModel(model), config)
        assert len(audits) == len(expected)
        for audit, (_, item, p) in zip(audits, expected):
            assert audit.item == item
            assert oracle.close(audit.probability, p)
