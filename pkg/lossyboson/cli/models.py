# cli/models.py
from __future__ import annotations

import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lossyboson.linalg.random import Seed
from lossyboson.optics.lemma import MIN_TV_TRIALS
from lossyboson.optics.loss import LossModel
from lossyboson.reduction.interpolation import epsilon_prime_budget
from lossyboson.reduction.oracle import NoiseSpec

Subcommand = Literal["permanent", "phi", "sample", "reduce", "verify-lemma1", "correlate", "sweep"]
ModelName = Literal["input", "dark", "shuffle", "shuffle-mix"]
OutputFormat = Literal["csv", "json", "xlsx"]

MODEL_KINDS = {
    "input": "input-loss",
    "dark": "dark-counts",
    "shuffle": "shuffle-exact",
    "shuffle-mix": "shuffle-mixture",
}

SWEEP_COLUMNS = [
    "n", "k", "epsilon", "delta", "seed", "trial",
    "estimate", "truth", "abs_err", "err_units_nfact", "success",
]


class MatrixPayload(BaseModel):
    """{"rows": r, "cols": c, "re": [...], "im": [...]}, row-major."""
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    re: List[float]
    im: List[float]

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check(self) -> "MatrixPayload":
        size = self.rows * self.cols
        if len(self.re) != size or len(self.im) != size:
            raise ValueError(f"expected {size} entries in re and im, got {len(self.re)} and {len(self.im)}")
        if not all(math.isfinite(v) for v in self.re + self.im):
            raise ValueError("matrix entries must be finite")
        return self

    def to_array(self) -> np.ndarray:
        arr = (np.asarray(self.re) + 1j * np.asarray(self.im)).reshape(self.rows, self.cols)
        return arr

    @classmethod
    def from_array(cls, a) -> "MatrixPayload":
        a = np.asarray(a, dtype=np.complex128)
        return cls(rows=a.shape[0], cols=a.shape[1],
                   re=[float(v) for v in a.real.ravel()], im=[float(v) for v in a.imag.ravel()])


class ExperimentConfig(BaseModel):
    subcommand: Subcommand
    n: Optional[int] = Field(default=None, ge=1)
    k: int = Field(default=0, ge=0)
    m: Optional[int] = Field(default=None, ge=1)
    epsilon: float = Field(default=0.1, gt=0, lt=1)
    delta: float = Field(default=0.2, gt=0, lt=1)
    model: ModelName = "input"
    probs: Optional[List[float]] = None
    noise: Literal["none", "uniform", "adversarial"] = "none"
    epsilon_prime: Optional[float] = Field(default=None, ge=0)
    nodes: Optional[int] = Field(default=None, ge=1)
    c: float = Field(default=1.05, gt=0)
    trials: int = Field(default=1, ge=1)
    draws: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    stream: int = Field(default=0, ge=0, lt=2 ** 64)
    matrix_file: Optional[str] = None
    naive: bool = False
    config_file: Optional[str] = None
    jobs: int = Field(default=1, ge=1)
    out: Optional[str] = None
    format: OutputFormat = "json"

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        sub = self.subcommand
        if sub == "permanent" and self.matrix_file is None and self.n is None:
            raise ValueError("permanent needs --matrix-file or --n")
        if sub in ("phi", "reduce", "verify-lemma1", "correlate") and self.n is None:
            raise ValueError(f"{sub} needs --n")
        if sub == "sample":
            if self.m is None or self.n is None:
                raise ValueError("sample needs --m and --n")
            if self.n + self.k > self.m:
                raise ValueError(f"sample needs n+k <= m, got n+k={self.n + self.k}, m={self.m}")
        if sub == "sweep" and self.config_file is None:
            raise ValueError("sweep needs --config")
        if sub in ("verify-lemma1", "correlate") and self.k < 1:
            raise ValueError(f"{sub} needs --k >= 1")
        if sub == "correlate" and self.trials < 3:
            raise ValueError("correlate needs --trials >= 3")
        if sub == "verify-lemma1" and self.trials < MIN_TV_TRIALS:
            raise ValueError(f"verify-lemma1 needs --trials >= {MIN_TV_TRIALS}")
        if self.format == "xlsx" and sub != "sweep":
            raise ValueError("xlsx output is only available for sweep")
        if self.format == "xlsx" and self.out is None:
            raise ValueError("xlsx output needs --out")
        if self.model == "shuffle-mix" and sub in ("phi", "reduce"):
            self.loss_model()
        return self

    def loss_model(self) -> LossModel:
        probs = self.probs if self.model == "shuffle-mix" else None
        return LossModel(kind=MODEL_KINDS[self.model], k=self.k, mixture_probs=probs)

    def noise_spec(self) -> NoiseSpec:
        if self.noise == "none":
            return NoiseSpec(kind="none")
        eps_prime = self.epsilon_prime
        if eps_prime is None:
            eps_prime = epsilon_prime_budget(self.n, self.k, self.epsilon, self.delta)
        return NoiseSpec(kind=self.noise, epsilon_prime=eps_prime)

    def base_seed(self) -> Seed:
        return Seed(self.seed, self.stream)


class SweepRow(BaseModel):
    n: int
    k: int
    epsilon: float
    delta: float
    seed: int
    trial: int
    estimate: float
    truth: float
    abs_err: float
    err_units_nfact: float
    success: bool


class CellSummary(BaseModel):
    n: int
    k: int
    epsilon: float
    delta: float
    model: str
    noise: str
    trials: int
    failures: int
    failure_rate: float
    error: Optional[str] = None


class SweepReport(BaseModel):
    rows: List[SweepRow] = []
    summary: List[CellSummary] = []
