"""
Run configuration.

One ``RunConfig`` travels from the CLI into every analysis function. The
defaults keep every check exact on a laptop; each cap is a flag (and an
environment variable, ``DERANGEMENT_LAB_<FLAG>``) for bigger instances.
"""
from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field

ENV_PREFIX = "DERANGEMENT_LAB_"


class OutputFormat(str, Enum):
    """How reports are emitted."""
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Caps, budgets and output settings for one invocation."""

    model_config = {"frozen": True}

    max_order: int = Field(100_000, gt=0, description="group enumeration cap")
    max_graph_vertices: int = Field(10_080, gt=0, description="derangement graph vertex cap")
    node_budget: int = Field(10**8, gt=0, description="branch-and-bound node budget")
    max_lattice_order: int = Field(2_000, gt=0, description="subgroup lattice cap")
    max_coset_degree: int = Field(5_040, gt=0, description="coset action degree cap")
    exact_alpha_max_order: int = Field(
        2_520, gt=0,
        description="above this order the coclique search may stop at |G|//omega",
    )
    output_format: OutputFormat = OutputFormat.TABLE
    seed: int = 0
    allow_inexact: bool = False
    jobs: int = Field(1, gt=0)

