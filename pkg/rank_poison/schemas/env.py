from dataclasses import dataclass
from typing import Any, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from .enums import ClickModel


class EnvModel(BaseModel):
    """Ground-truth click environment"""
    means: List[float] = Field(..., min_length=1, description="Click/attraction probability of each item")
    kappa: List[float] = Field(default_factory=list, description="Examination probability of each position")
    list_len: int = Field(1, ge=1, description="Number of positions K")
    kind: ClickModel = Field(..., description="Click model")

    model_config = ConfigDict(frozen=True)

    _means: np.ndarray = PrivateAttr()
    _kappa: np.ndarray = PrivateAttr()

    @model_validator(mode="before")
    @classmethod
    def default_kappa(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("kappa"):
            data = {**data, "kappa": [1.0] * int(data.get("list_len", 1))}
        return data

    @model_validator(mode="after")
    def check_instance(self) -> "EnvModel":
        if any(not 0.0 <= m <= 1.0 for m in self.means):
            raise ValueError("all means must lie in [0, 1]")
        if self.list_len > len(self.means):
            raise ValueError(f"list_len {self.list_len} exceeds the number of items {len(self.means)}")
        if self.kind == ClickModel.SINGLE_ARM and self.list_len != 1:
            raise ValueError("the single-arm model requires list_len = 1")
        if len(self.kappa) != self.list_len:
            raise ValueError(f"kappa has {len(self.kappa)} entries, expected {self.list_len}")
        if any(not 0.0 < k <= 1.0 for k in self.kappa):
            raise ValueError("kappa entries must lie in (0, 1]")
        if any(a < b for a, b in zip(self.kappa, self.kappa[1:])):
            raise ValueError("kappa must be non-increasing")
        return self

    def model_post_init(self, __context: Any) -> None:
        self._means = np.asarray(self.means, dtype=np.float64)
        self._kappa = np.asarray(self.kappa, dtype=np.float64)

    @property
    def num_items(self) -> int:
        return len(self.means)

    @property
    def means_array(self) -> np.ndarray:
        return self._means

    @property
    def kappa_array(self) -> np.ndarray:
        return self._kappa

    def gaps(self, target: int) -> np.ndarray:
        """mu_a - mu_target for every item."""
        return self._means - self._means[target]

    @property
    def p_star(self) -> float:
        """Product of the K-1 largest means."""
        top = np.sort(self._means)[::-1][: self.list_len - 1]
        return float(np.prod(top))

    def optimal_action(self) -> np.ndarray:
        """Best list under the true model: items by decreasing mean, lowest id first on ties."""
        order = np.lexsort((np.arange(self.num_items), -self._means))
        return order[: self.list_len]

    def expected_clicks(self, action: np.ndarray) -> float:
        """Expected number of pre-attack clicks of a list."""
        mu = self._means[action]
        if self.kind == ClickModel.CASCADE:
            return float(1.0 - np.prod(1.0 - mu))
        if self.kind == ClickModel.POSITION_BASED:
            return float(np.dot(self._kappa, mu))
        return float(mu[0])


@dataclass(slots=True)
class Feedback:
    """Binary click vector of one round.

    ``click_pos`` is the 0-based position of the (first) click under the cascade model and
    ``None`` when nothing was clicked; other models leave it ``None``.
    """
    clicks: np.ndarray
    click_pos: Optional[int] = None

    @classmethod
    def from_clicks(cls, kind: ClickModel, clicks: np.ndarray) -> "Feedback":
        clicks = np.asarray(clicks, dtype=np.int8)
        if kind != ClickModel.CASCADE:
            return cls(clicks=clicks)
        hits = np.flatnonzero(clicks)
        return cls(clicks=clicks, click_pos=int(hits[0]) if len(hits) else None)
