"""Loss-stream generators for the online game.

Two stochastic families draw i.i.d. loss parameters from per-round seed
substreams, so a stream replays bitwise from (seed, t) alone. Two adaptive
families react to the player's past actions, and only those: the protocol is
simultaneous play, so the current action and current-round randomness are
never visible to the adversary. Every emitted loss declares the exact
gradient-norm bound of its family over the given action-set norm bound and
its smoothness constant.
"""

from __future__ import annotations

import abc
import csv

import numpy as np

from .errors import ConfigError, ProtocolError
from .losses import LossFunction, linear_loss, quadratic_loss
from .rng import ADVERSARY_STREAM, RoundStream
from .sets import sample_unit_ball, sample_unit_sphere

__all__ = [
    "Adversary",
    "QuadraticStochastic",
    "QuadraticAdaptive",
    "LinearStochastic",
    "LinearAdaptive",
    "make_adversary",
    "dump_loss_params_csv",
]


class Adversary(abc.ABC):
    """Produces round-t losses given the player's past actions."""

    kind: str

    def __init__(self, horizon: int, seed: int, norm_bound: float):
        if horizon < 1:
            raise ConfigError("horizon must be >= 1")
        self.horizon = int(horizon)
        self.seed = int(seed)
        self.norm_bound = float(norm_bound)
        self._stream = RoundStream(self.seed, ADVERSARY_STREAM)
        # incremental mean cache so long games stay O(d) per round
        self._seen = 0
        self._action_sum: np.ndarray | None = None

    def next_loss(self, history) -> LossFunction:
        """Loss for round t = len(history) + 1; sees only past actions."""
        t = len(history) + 1
        if t > self.horizon:
            raise ProtocolError(f"round {t} exceeds the declared horizon {self.horizon}")
        return self._emit(t, history)

    @abc.abstractmethod
    def _emit(self, t: int, history) -> LossFunction:
        ...

    @abc.abstractmethod
    def constants(self) -> tuple[float, float]:
        """(G, beta) certified for every loss this adversary emits."""

    def _rng(self, t: int) -> np.random.Generator:
        return self._stream.at(t)

    def _mean_action(self, history) -> np.ndarray | None:
        n = len(history)
        if n == 0:
            return None
        if self._action_sum is None or n < self._seen:
            self._action_sum = np.sum(np.asarray(history[:1]), axis=0)
            self._seen = 1
        for i in range(self._seen, n):
            self._action_sum = self._action_sum + history[i]
        self._seen = n
        return self._action_sum / n

    def to_json(self) -> dict:
        out = {"kind": self.kind, "horizon": self.horizon, "seed": self.seed}
        out.update(self._params())
        return out

    @abc.abstractmethod
    def _params(self) -> dict:
        ...


class QuadraticStochastic(Adversary):
    """f_t(x) = 0.5 ||x - c_t||^2 with c_t uniform on a ball of given radius."""

    kind = "quadratic_stochastic"

    def __init__(self, horizon, seed, norm_bound, *, dim: int, center_scale: float = 1.0):
        super().__init__(horizon, seed, norm_bound)
        if center_scale < 0:
            raise ConfigError("center_scale must be >= 0")
        self.dim = int(dim)
        self.center_scale = float(center_scale)

    def constants(self):
        return self.norm_bound + self.center_scale, 1.0

    def _emit(self, t, history):
        center = self.center_scale * sample_unit_ball(self._rng(t), self.dim)
        return quadratic_loss(center, self.constants()[0])

    def _params(self):
        return {"dim": self.dim, "center_scale": self.center_scale}


class QuadraticAdaptive(QuadraticStochastic):
    """Quadratic losses whose center pushes against the player's mean action.

    c_t = -scale * sign(mean of past actions) / sqrt(d), which penalizes any
    learner that keeps its actions stable; the first round falls back to the
    stochastic draw since there is no history yet.
    """

    kind = "quadratic_adaptive"

    def _emit(self, t, history):
        mean = self._mean_action(history)
        if mean is None:
            return super()._emit(t, history)
        center = -self.center_scale * np.sign(mean) / np.sqrt(self.dim)
        return quadratic_loss(center, self.constants()[0])


class LinearStochastic(Adversary):
    """f_t(x) = <g_t, x>; g_t i.i.d. uniform on a sphere, or one fixed vector."""

    kind = "linear_stochastic"

    def __init__(self, horizon, seed, norm_bound, *, dim: int,
                 direction_norm: float = 1.0, direction=None):
        super().__init__(horizon, seed, norm_bound)
        self.dim = int(dim)
        if direction is not None:
            self.direction = np.asarray(direction, dtype=float)
            if self.direction.shape != (self.dim,):
                raise ConfigError("fixed direction must match the set dimension")
            self.direction_norm = float(np.linalg.norm(self.direction))
        else:
            if not direction_norm > 0:
                raise ConfigError("direction_norm must be positive")
            self.direction = None
            self.direction_norm = float(direction_norm)

    def constants(self):
        return self.direction_norm, 0.0

    def _emit(self, t, history):
        if self.direction is not None:
            return linear_loss(self.direction)
        g = self.direction_norm * sample_unit_sphere(self._rng(t), self.dim)
        return linear_loss(g)

    def _params(self):
        out = {"dim": self.dim, "direction_norm": self.direction_norm}
        if self.direction is not None:
            out["direction"] = self.direction.tolist()
        return out


class LinearAdaptive(Adversary):
    """Linear losses aimed at the player's mean action.

    g_t = norm * mean / ||mean||, so loss is largest where the player has
    been; rounds with no usable history draw a sphere direction instead.
    """

    kind = "linear_adaptive"

    def __init__(self, horizon, seed, norm_bound, *, dim: int, direction_norm: float = 1.0):
        super().__init__(horizon, seed, norm_bound)
        if not direction_norm > 0:
            raise ConfigError("direction_norm must be positive")
        self.dim = int(dim)
        self.direction_norm = float(direction_norm)

    def constants(self):
        return self.direction_norm, 0.0

    def _emit(self, t, history):
        mean = self._mean_action(history)
        if mean is not None:
            n = float(np.linalg.norm(mean))
            if n > 0:
                return linear_loss(self.direction_norm * mean / n)
        g = self.direction_norm * sample_unit_sphere(self._rng(t), self.dim)
        return linear_loss(g)

    def _params(self):
        return {"dim": self.dim, "direction_norm": self.direction_norm}


_KINDS = {
    cls.kind: cls
    for cls in (QuadraticStochastic, QuadraticAdaptive, LinearStochastic, LinearAdaptive)
}


def make_adversary(spec: dict, *, horizon: int, seed: int, norm_bound: float, dim: int) -> Adversary:
    """Build an adversary from a JSON-style spec; horizon/seed/dim come from the run."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"adversary spec must be an object with a 'kind' field, got {spec!r}")
    kind = spec["kind"]
    if kind not in _KINDS:
        raise ConfigError(f"unknown adversary kind {kind!r}; supported: {sorted(_KINDS)}")
    params = {k: v for k, v in spec.items() if k not in ("kind", "horizon", "seed", "dim")}
    horizon = int(spec.get("horizon", horizon))
    seed = int(spec.get("seed", seed))
    try:
        return _KINDS[kind](horizon, seed, norm_bound, dim=dim, **params)
    except TypeError as exc:
        raise ConfigError(f"invalid parameters for adversary {kind!r}: {exc}") from exc


def dump_loss_params_csv(losses, path) -> None:
    """Write per-round loss parameters (centers/directions) for replay audits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "loss_kind", "params"])
        for t, loss in enumerate(losses, start=1):
            if loss.center is not None:
                kind, vec = "quadratic", loss.center
            elif loss.direction is not None:
                kind, vec = "linear", loss.direction
            else:
                kind, vec = "generic", ()
            writer.writerow([t, kind, " ".join(f"{v:.17g}" for v in vec)])
