"""Rank configurations: signal-type selection plus the four mixing parameters."""

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

__all__ = [
    "SIGNAL_TYPES",
    "POSITIVE_TYPES",
    "NEGATIVE_TYPES",
    "RankConfig",
    "PRESETS",
    "get_preset",
    "load_config",
    "parse_types",
]

# Positive types first, then negative.
SIGNAL_TYPES = ("exp+", "iav+", "iav-", "exp-", "iov+", "iov-")
POSITIVE_TYPES = ("exp+", "iav+", "iav-")
NEGATIVE_TYPES = ("exp-", "iov+", "iov-")

_FLAG_FOR_TYPE = {
    "exp+": "use_exp_plus",
    "iav+": "use_iav_plus",
    "iav-": "use_iav_minus",
    "exp-": "use_exp_minus",
    "iov+": "use_iov_plus",
    "iov-": "use_iov_minus",
}


@dataclass(frozen=True)
class RankConfig:
    """Which vote signals feed the positive/negative graphs, and how they mix.

    Parameters
    ----------
    d : float
        Damping factor applied to both graphs.
    alpha : float
        Weight of the negative ranking in the signed combination.
    beta : float
        Weight of implicit agreement votes inside the positive matrix.
    delta : float
        Weight of implicit opposition votes inside the negative matrix.
    """

    use_exp_plus: bool = True
    use_iav_plus: bool = False
    use_iav_minus: bool = False
    use_exp_minus: bool = True
    use_iov_plus: bool = False
    use_iov_minus: bool = False
    d: float = 0.85
    alpha: float = 0.5
    beta: float = 0.0
    delta: float = 0.0
    name: str = "custom"

    def __post_init__(self):
        for p in ("d", "alpha", "beta", "delta"):
            value = getattr(self, p)
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise ValueError(f"{p} must be a real in [0, 1], got {value!r}")
            object.__setattr__(self, p, float(value))
        if self.alpha < 1 and not self.has_positive:
            raise ValueError("alpha < 1 requires at least one positive signal type")
        if self.alpha > 0 and not self.has_negative:
            raise ValueError("alpha > 0 requires at least one negative signal type")
        if not self.has_iav and self.beta != 0:
            raise ValueError("beta must be 0 when no iav type is selected")
        if not self.has_iov and self.delta != 0:
            raise ValueError("delta must be 0 when no iov type is selected")

    @classmethod
    def from_types(cls, types, **params):
        """Build a config from signal-type names such as ``["exp+", "iov-"]``."""
        types = set(types)
        unknown = types - set(SIGNAL_TYPES)
        if unknown:
            raise ValueError(f"unknown signal types: {sorted(unknown)}")
        flags = {_FLAG_FOR_TYPE[t]: (t in types) for t in SIGNAL_TYPES}
        return cls(**flags, **params)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        extra = set(data) - known - {"types"}
        if extra:
            raise ValueError(f"unknown config fields: {sorted(extra)}")
        data = dict(data)
        if "types" in data:
            types = set(data.pop("types"))
            for t in SIGNAL_TYPES:
                flag = data.pop(_FLAG_FOR_TYPE[t], None)
                if flag is not None and bool(flag) != (t in types):
                    raise ValueError(f"{_FLAG_FOR_TYPE[t]} contradicts the types list")
            return cls.from_types(types, **data)
        return cls(**data)

    def to_dict(self):
        out = asdict(self)
        out["types"] = list(self.types)
        return out

    def with_params(self, **params):
        return replace(self, **params)

    @property
    def types(self):
        return tuple(t for t in SIGNAL_TYPES if getattr(self, _FLAG_FOR_TYPE[t]))

    @property
    def positive_types(self):
        return tuple(t for t in self.types if t in POSITIVE_TYPES)

    @property
    def negative_types(self):
        return tuple(t for t in self.types if t in NEGATIVE_TYPES)

    @property
    def has_positive(self):
        return bool(self.positive_types)

    @property
    def has_negative(self):
        return bool(self.negative_types)

    @property
    def has_iav(self):
        return self.use_iav_plus or self.use_iav_minus

    @property
    def has_iov(self):
        return self.use_iov_plus or self.use_iov_minus

    def active_params(self):
        """Names of the parameters a grid search has to explore."""
        active = ["d"]
        if self.has_positive and self.has_negative:
            active.append("alpha")
        if self.has_iav:
            active.append("beta")
        if self.has_iov:
            active.append("delta")
        return active


def _preset(name, d, types, beta, alpha, delta):
    return RankConfig.from_types(types, d=d, alpha=alpha, beta=beta, delta=delta, name=name)


PRESETS = {
    c.name: c
    for c in (
        _preset("conf1", 0.86, ["exp+", "exp-"], 0.00, 0.79, 0.00),
        _preset("conf2", 0.80, ["exp+", "iav-", "exp-", "iov-"], 0.90, 0.78, 0.40),
        _preset("conf3", 0.85, ["exp+", "exp-", "iov+", "iov-"], 0.00, 0.85, 0.15),
        _preset("conf4", 0.98, ["exp+", "iav+", "exp-", "iov+"], 0.40, 0.39, 0.74),
        _preset("conf5", 0.90, ["exp+", "iav+", "iav-", "exp-"], 0.10, 0.65, 0.00),
        _preset("conf6", 0.85, list(SIGNAL_TYPES), 0.14, 0.66, 0.15),
        _preset("conf7", 0.89, ["exp+", "iav-", "exp-", "iov+", "iov-"], 0.53, 0.85, 0.20),
    )
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}"
        ) from None


def load_config(spec):
    """Resolve a preset name or a path to a JSON config file."""
    if isinstance(spec, RankConfig):
        return spec
    if spec in PRESETS:
        return PRESETS[spec]
    path = Path(spec)
    if not path.is_file():
        raise ValueError(f"{spec!r} is neither a preset name nor a config file")
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return RankConfig.from_dict(data)


def parse_types(text):
    """Parse a comma separated type list such as ``exp+,exp-,iov-``."""
    types = [t.strip() for t in text.split(",") if t.strip()]
    if not types:
        raise ValueError("empty signal type list")
    unknown = [t for t in types if t not in SIGNAL_TYPES]
    if unknown:
        raise ValueError(f"unknown signal types: {unknown}")
    return tuple(t for t in SIGNAL_TYPES if t in types)
