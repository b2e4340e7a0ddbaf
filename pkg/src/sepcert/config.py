"""Run configuration: concrete values for constants that only appear asymptotically."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exactmath import as_fraction, floor_scaled_power

__all__ = ["ClassConstants", "Config"]


@dataclass(frozen=True)
class ClassConstants:
    """Constants for the class-dependent bounds.

    ``a`` scales the separator parameter ell = ceil(a * n^(eps/5)); ``c_f``
    scales the omega-expansion bound f(r) = floor(c_f * r^(1.25/eps)).
    """

    a: Fraction = Fraction(1)
    c_f: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "c_f", as_fraction(self.c_f))
        if self.a <= 0 or self.c_f <= 0:
            raise ValueError("class constants must be positive")

    def f(self, r: int, eps, cap: int | None = None) -> int:
        """floor(c_f * r^(1.25/eps)), clipped to ``cap``.

        Clipping at n is harmless: no n-vertex graph has a model of K_m with m > n.
        """
        eps = as_fraction(eps)
        return floor_scaled_power(self.c_f, r, Fraction(5, 4) / eps, cap=cap)


@dataclass(frozen=True)
class Config:
    constants: ClassConstants = field(default_factory=ClassConstants)
    small_cap: int | None = None
    large_threshold: float | None = None
    cg_cap_factor: int = 50
    dp_budget: int = 10**9
    seed: int = 0
    audit_samples: int = 100
    audit_max_size: int = 12

    def __post_init__(self):
        if self.cg_cap_factor <= 0 or self.dp_budget <= 0 or self.audit_max_size <= 0:
            raise ValueError("configuration values must be positive")
        if self.small_cap is not None and self.small_cap < 1:
            raise ValueError("small_cap must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["constants"] = {"a": str(self.constants.a), "c_f": str(self.constants.c_f)}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        d = dict(d)
        consts = d.pop("constants", {}) or {}
        return cls(constants=ClassConstants(**{k: as_fraction(v) for k, v in consts.items()}), **d)
