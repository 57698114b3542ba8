"""Pydantic schema models for configuration.

This module defines the configuration file layout:
- Config: Top-level configuration container
- GroupsConfig: Bounds for group closure and subgroup enumeration
- CountingConfig: Workers, sieve limits and enumeration budgets
- FitConfig: Default sample grid for exponent fits
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GroupsConfig(BaseModel):
    """Bounds for finite group computations.

    Attributes:
        closure_limit: Largest group generate_group will close (default: 10000)
        subgroup_order_limit: Largest |G| for subgroup enumeration (default: 360)
    """

    model_config = ConfigDict(extra="forbid")

    closure_limit: Annotated[int, Field(ge=1, le=1_000_000)] = 10_000
    subgroup_order_limit: Annotated[int, Field(ge=1, le=100_000)] = 360


class CountingConfig(BaseModel):
    """Enumeration limits for the counting harness.

    Attributes:
        workers: Worker processes for enumeration units (1-64, default: 1)
        wps_max_weight: Largest weight accepted by wps_count (default: 6)
        wps_max_length: Largest number of weights accepted by wps_count (default: 3)
        wps_profile_budget: Maximum number of sector profiles visited
        mu_sieve_limit: Largest bound (and prime limit) for sieves
        enumeration_budget: Maximum classes or tuples for direct enumerators
        block_size: Width of one sieve block
    """

    model_config = ConfigDict(extra="forbid")

    workers: Annotated[int, Field(ge=1, le=64)] = 1
    wps_max_weight: Annotated[int, Field(ge=1, le=12)] = 6
    wps_max_length: Annotated[int, Field(ge=1, le=4)] = 3
    wps_profile_budget: Annotated[int, Field(ge=1)] = 2_000_000
    mu_sieve_limit: Annotated[int, Field(ge=1)] = 10**9
    enumeration_budget: Annotated[int, Field(ge=1)] = 5_000_000
    block_size: Annotated[int, Field(ge=1024, le=1 << 26)] = 1 << 20


class FitConfig(BaseModel):
    """Default geometric sample grid.

    Attributes:
        points: Number of samples (4-64, default: 16)
        ratio: Ratio between consecutive samples (default: 2.0)
    """

    model_config = ConfigDict(extra="forbid")

    points: Annotated[int, Field(ge=4, le=64)] = 16
    ratio: Annotated[float, Field(gt=1.0, le=100.0)] = 2.0


class Config(BaseModel):
    """Top-level configuration loaded from YAML.

    Attributes:
        version: Schema version (must be 1)
        groups: Group computation bounds
        counting: Enumeration limits
        fit: Sample grid defaults
    """

    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = 1
    groups: GroupsConfig = Field(default_factory=GroupsConfig)
    counting: CountingConfig = Field(default_factory=CountingConfig)
    fit: FitConfig = Field(default_factory=FitConfig)

    @model_validator(mode="after")
    def validate_sieve_covers_blocks(self) -> Config:
        """A single sieve block may not exceed the sieve limit."""
        if self.counting.block_size > self.counting.mu_sieve_limit:
            msg = "counting.block_size must not exceed counting.mu_sieve_limit"
            raise ValueError(msg)
        return self
