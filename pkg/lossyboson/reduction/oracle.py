# reduction/oracle.py
"""
The Phi oracle: exact value of the loss-model functional plus an
additive error of at most eps' n!.

  none         no error
  uniform      error ~ U[-eps' n!, +eps' n!], drawn from the call's seed
  adversarial  +eps' n! on even calls, -eps' n! on odd calls; against
               evenly spaced nodes this lines the errors up with the
               alternating signs of the constant-term weights
"""
from __future__ import annotations

import logging
import math
from typing import Literal

from pydantic import BaseModel, Field

from lossyboson.linalg.matrices import as_complex_matrix
from lossyboson.linalg.random import Seed
from lossyboson.optics.loss import LossModel, phi_for_model

logger = logging.getLogger(__name__)

NoiseKind = Literal["none", "uniform", "adversarial"]


class NoiseSpec(BaseModel):
    kind: NoiseKind = "none"
    epsilon_prime: float = Field(default=0.0, ge=0.0)

    model_config = {"frozen": True}

    def bound(self, n: int) -> float:
        """Largest absolute error, eps' n!."""
        if self.kind == "none":
            return 0.0
        return self.epsilon_prime * math.factorial(n)


def oracle_error(noise: NoiseSpec, n: int, seed: Seed, call_index: int = 0) -> float:
    b = noise.bound(n)
    if b == 0.0:
        return 0.0
    if noise.kind == "uniform":
        return float(seed.rng().uniform(-b, b))
    return b if call_index % 2 == 0 else -b


def noisy_phi_oracle(a, model: LossModel, noise: NoiseSpec, seed: Seed, call_index: int = 0) -> float:
    a = as_complex_matrix(a, "A")
    exact = phi_for_model(a, model)
    n = model.detected_photons(a.shape)
    err = oracle_error(noise, n, seed, call_index)
    logger.debug("oracle call %d (%s): exact=%.17g err=%.3g", call_index, model.kind, exact, err)
    return exact + err
