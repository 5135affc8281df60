"""
Report models.

Everything the CLI prints or serialises is one of these. Points and
permutations are 1-based, as in the group files. No wall-clock values.
"""
from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class CheckStatus(str, Enum):
    """Outcome of one verification check."""
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    INEXACT = "inexact"


class Classification(str, Enum):
    CONJUGATE = "conjugate"
    EQUAL_UNION_NONCONJUGATE = "equal-union-nonconjugate"
    INEQUIVALENT = "inequivalent"


# ============================================================================
# Graph and clique
# ============================================================================

class CliqueSummary(BaseModel):
    """A clique or coclique with the elements of its witness."""
    size: int
    exact: bool
    witness: list[str] = Field(default_factory=list)
    nodes: int = 0


class CliqueReport(BaseModel):
    group: str
    degree: int
    order: int
    derangements: int
    omega: CliqueSummary
    alpha: CliqueSummary
    alpha_ceiling_used: bool = False
    triangle: bool
    dimacs_path: str | None = None

    @property
    def exact(self) -> bool:
        return self.omega.exact and self.alpha.exact


# ============================================================================
# Block systems
# ============================================================================

class BlockSystemModel(BaseModel):
    blocks: list[list[int]]
    block_size: int
    kernel_order: int | None = None


class SeriesReport(BaseModel):
    group: str
    degree: int
    order: int
    length: int  # ℓ: refinement steps from discrete to {Ω}
    interior_length: int
    quasiprimitive: bool
    normal_partitions: list[BlockSystemModel]
    chain: list[BlockSystemModel]


class ChainCliqueSummary(BaseModel):
    indices: list[int]
    witnesses: list[str]
    kappa: int
    size: int
    stated_lower_bound: int
    clique: list[str] = Field(default_factory=list)
    verified: bool = True


# ============================================================================
# Whole-group analysis and verification
# ============================================================================

class GroupAnalysis(BaseModel):
    """Everything ``analyze`` reports about one group."""
    name: str
    degree: int
    order: int
    tags: list[str] = Field(default_factory=list)
    transitive: bool
    derangements: int
    omega: CliqueSummary
    alpha: CliqueSummary
    alpha_ceiling_used: bool = False
    clique_coclique_product: int
    clique_coclique_holds: bool
    triangle: bool
    primitive: bool | None = None
    quasiprimitive: bool | None = None
    innately_transitive: bool | None = None
    series_length: int | None = None
    interior_length: int | None = None
    chain: ChainCliqueSummary | None = None

    @property
    def exact(self) -> bool:
        return self.omega.exact and self.alpha.exact


class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    detail: str = ""


class VerifyResult(BaseModel):
    group: str
    degree: int
    order: int | None = None
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.FAIL]

    @property
    def inexact(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.INEXACT]

    @property
    def skipped(self) -> bool:
        return bool(self.checks) and all(c.status == CheckStatus.SKIP for c in self.checks)


class EnvelopeRow(BaseModel):
    """Largest degree among analysed transitive groups with ω < c."""
    c: int
    max_degree: int
    group: str


class CorpusSummary(BaseModel):
    groups: list[VerifyResult] = Field(default_factory=list)
    analyses: list[GroupAnalysis] = Field(default_factory=list)
    clique_free_envelope: list[EnvelopeRow] = Field(default_factory=list)
    diagnostics: list[str] = Field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(len(g.failed) for g in self.groups)

    @property
    def inexact(self) -> int:
        return sum(len(g.inexact) for g in self.groups)

    @property
    def verified(self) -> int:
        return sum(1 for g in self.groups if not g.skipped)


# ============================================================================
# Kronecker scans
# ============================================================================

class KroneckerRow(BaseModel):
    """One subgroup pair; field names follow the row format of the JSON-lines export."""
    group: str
    indexU: int
    indexUp: int
    orderU: int
    orderUp: int
    generatorsU: list[str] = Field(default_factory=list)
    generatorsUp: list[str] = Field(default_factory=list)
    equivalent: bool
    conjugate: bool
    classification: Classification
    omega_cosetU: int | None = None  # largest clique found on the cosets of U
    omega_exact: bool | None = None
    pigeonhole_holds: bool | None = None
    pigeonhole_exact: bool | None = None


class EnvelopeEntry(BaseModel):
    n: int
    max_index: int


class KroneckerScanReport(BaseModel):
    group: str
    order: int
    subgroups: int
    classes: int
    all_pairs: bool
    rows: list[KroneckerRow]
    envelope: list[EnvelopeEntry]
    equivalence_relation: bool

    @property
    def nonconjugate_equivalent(self) -> list[KroneckerRow]:
        return [r for r in self.rows if r.classification == Classification.EQUAL_UNION_NONCONJUGATE]


# ============================================================================
# Partition-avoiding subsets
# ============================================================================

class AvoidanceRow(BaseModel):
    instance: int
    s: int
    sigma: int
    a: int
    size: int
    bound_holds: bool
    avoids: bool


class AvoidanceSuite(BaseModel):
    seed: int
    instances: int
    rows: list[AvoidanceRow]

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if not (r.bound_holds and r.avoids))
