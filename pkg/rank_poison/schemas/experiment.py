from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .enums import (
    LEARNER_FOR_MODEL,
    STRATEGY_MODELS,
    AttackStrategy,
    ClickModel,
    LearnerKind,
    SweepParam,
)

_STRICT = ConfigDict(extra="forbid")


class InlineMeans(BaseModel):
    """Means written out in the config"""
    source: Literal["inline"] = "inline"
    means: List[float] = Field(..., min_length=1)

    model_config = _STRICT

    @property
    def num_items(self) -> int:
        return len(self.means)


class UniformMeans(BaseModel):
    """Means sampled from U(low, high)"""
    source: Literal["uniform"] = "uniform"
    num_items: int = Field(..., ge=1)
    low: float = Field(0.0, ge=0.0, le=1.0)
    high: float = Field(1.0, ge=0.0, le=1.0, description="Upper end x of U(0, x)")
    resample: bool = Field(True, description="Draw fresh means for every replication")

    model_config = _STRICT

    @model_validator(mode="after")
    def check_range(self) -> "UniformMeans":
        if self.low > self.high:
            raise ValueError("low must not exceed high")
        return self


class MovieLensMeans(BaseModel):
    """Means derived from a MovieLens ratings file"""
    source: Literal["movielens"] = "movielens"
    num_items: int = Field(..., ge=1)
    ratings_path: Optional[str] = Field(None, description="Defaults to MOVIELENS_RATINGS")
    threshold: float = Field(4.0, ge=0.5, le=5.0, description="Ratings at or above count as clicks")

    model_config = _STRICT


MeansSource = Annotated[Union[InlineMeans, UniformMeans, MovieLensMeans], Field(discriminator="source")]


class EnvSpec(BaseModel):
    """Where the environment's parameters come from"""
    click_model: ClickModel
    list_len: int = Field(1, ge=1)
    means: MeansSource
    kappa: Optional[List[float]] = Field(None, description="Pinned examination probabilities")
    position_bias: float = Field(0.5, ge=0.0, description="Exponent of the default kappa_k = (1/(k+1))^eta")

    model_config = _STRICT


class AttackSpec(BaseModel):
    """Attacker choice and parameters"""
    strategy: AttackStrategy = AttackStrategy.NONE
    delta0: float = Field(0.1, gt=0.0)
    delta: float = Field(0.05, gt=0.0, le=0.5)
    targets: Optional[List[int]] = Field(None, description="Defaults to the last item")
    protected_set: Optional[List[int]] = Field(None, description="Pinned a*; sampled when omitted")

    model_config = _STRICT


class ExperimentSpec(BaseModel):
    """One fully specified experiment"""
    name: str = "experiment"
    env: EnvSpec
    learner: LearnerKind
    attack: AttackSpec = Field(default_factory=AttackSpec)
    horizon: int = Field(..., ge=1, description="Rounds T")
    replications: int = Field(20, ge=1)
    base_seed: int = Field(0, ge=0, lt=2 ** 64)
    epsilon: float = Field(0.1, ge=0.0, description="PBM-UCB exploration parameter")
    pbm_mean: Literal["bias_corrected", "plain"] = Field(
        "bias_corrected", description="Mean estimate of PBM-UCB and of the PBM attack: S/Ntilde or S/N"
    )
    log_every: Optional[int] = Field(None, ge=1, description="Override of the metrics logging stride")
    record_trace: bool = Field(False, description="Keep the full round trace of every replication")

    model_config = _STRICT

    @property
    def num_items(self) -> int:
        return self.env.means.num_items

    @property
    def targets(self) -> List[int]:
        return list(self.attack.targets) if self.attack.targets else [self.num_items - 1]

    @model_validator(mode="after")
    def check_compatibility(self) -> "ExperimentSpec":
        model = self.env.click_model
        num_items = self.num_items
        list_len = self.env.list_len
        if self.learner != LEARNER_FOR_MODEL[model]:
            raise ValueError(f"learner '{self.learner.value}' cannot run on the '{model.value}' model")
        if model not in STRATEGY_MODELS[self.attack.strategy]:
            raise ValueError(f"strategy '{self.attack.strategy.value}' cannot attack the '{model.value}' model")
        if model == ClickModel.SINGLE_ARM and list_len != 1:
            raise ValueError("the single-arm model requires list_len = 1")
        if list_len > num_items:
            raise ValueError(f"list_len {list_len} exceeds the number of items {num_items}")
        if self.horizon < num_items:
            raise ValueError(f"horizon {self.horizon} is shorter than the number of items {num_items}")
        if self.env.kappa is not None and len(self.env.kappa) != list_len:
            raise ValueError(f"kappa has {len(self.env.kappa)} entries, expected {list_len}")
        targets = self.targets
        if any(not 0 <= t < num_items for t in targets):
            raise ValueError(f"targets {targets} outside 0..{num_items - 1}")
        if len(targets) > max(list_len, 1):
            raise ValueError("more targets than list positions")
        pinned = self.attack.protected_set
        if pinned is not None:
            expected = len(targets) if model == ClickModel.SINGLE_ARM else list_len
            if len(pinned) != expected:
                raise ValueError(f"protected_set must hold {expected} items")
            if not set(targets) <= set(pinned):
                raise ValueError("protected_set must contain every target")
            if any(not 0 <= a < num_items for a in pinned):
                raise ValueError("protected_set item out of range")
        return self


class SweepSpec(BaseModel):
    """One-dimensional parameter grid"""
    param: SweepParam
    values: List[float] = Field(..., min_length=1)

    model_config = _STRICT
