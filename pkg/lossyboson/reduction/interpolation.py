# reduction/interpolation.py
"""
Polynomial interpolation in x = c^2 and the bounds that control it.

Phi(A[c]) is a polynomial of degree d in x = c^2 whose constant term is
|Per(X)|^2 / |Lambda|. Nodes x_i are spaced evenly in [1-a, 1+a] and
c_i = sqrt(x_i), so |c_i - 1| <= |x_i - 1| <= a.

Bounds chain for beta0 under errors |e_i| <= eps' n!, with r0 the first
row of V^-1 and B a bound on its largest column sum:
    Var(beta0) <= (eps' n!)^2 ||r0||_1^2 <= (d+1)^2 (eps' n!)^2 B^2.
B is the Gautschi product (node-per-column orientation), and that in
turn is bounded by a closed form for evenly spaced nodes.
"""
from __future__ import annotations

import logging
import math
from typing import List, Literal, NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel, model_validator

from lossyboson.errors import IllConditionedError, ShapeError

logger = logging.getLogger(__name__)

MIN_NODE_SPACING = 1e-12
MAX_CONDITION = 1e14


class NodeSet(BaseModel):
    x_values: List[float]
    c_values: List[float]
    a: float
    degree: int
    variable: Literal["c^2"] = "c^2"

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check(self) -> "NodeSet":
        if len(self.x_values) != len(self.c_values):
            raise ValueError("x_values and c_values differ in length")
        if len(self.x_values) < self.degree + 1:
            raise ValueError(f"{len(self.x_values)} nodes cannot fix a degree-{self.degree} polynomial")
        xs = sorted(self.x_values)
        if any(b - a < MIN_NODE_SPACING for a, b in zip(xs, xs[1:])):
            raise ValueError("nodes must be pairwise distinct")
        if any(abs(c - 1.0) > self.a + 1e-15 for c in self.c_values):
            raise ValueError("every |c - 1| must stay within the half-width a")
        return self

    @property
    def count(self) -> int:
        return len(self.x_values)


def nodes_on_interval(a: float, degree: int, count: Optional[int] = None) -> NodeSet:
    """`count` (default degree+1) evenly spaced x-nodes on [1-a, 1+a]."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if not 0 < a < 1:
        raise ValueError(f"half-width must lie in (0, 1), got {a}")
    count = degree + 1 if count is None else count
    if count < degree + 1:
        raise ValueError(f"need at least {degree + 1} nodes, got {count}")
    if count == 1:
        xs = np.array([1.0])
    else:
        if 2.0 * a / (count - 1) < MIN_NODE_SPACING:
            raise IllConditionedError("delta too small for this degree")
        xs = np.linspace(1.0 - a, 1.0 + a, count)
    return NodeSet(
        x_values=[float(x) for x in xs],
        c_values=[float(math.sqrt(x)) for x in xs],
        a=float(a),
        degree=degree,
    )


def node_half_width(n: int, k: int, delta: float) -> float:
    # k = 0 has a single node at x=1; max(k, 1) keeps a finite there
    return delta / math.sqrt(n * max(k, 1))


def interpolation_nodes(n: int, k: int, delta: float, degree: int, count: Optional[int] = None) -> NodeSet:
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return nodes_on_interval(node_half_width(n, k, delta), degree, count)


def build_vandermonde(nodes: NodeSet) -> np.ndarray:
    """Row i = (1, x_i, ..., x_i^d)."""
    return np.vander(np.asarray(nodes.x_values), N=nodes.degree + 1, increasing=True)


def condition_number(v: np.ndarray) -> float:
    return float(np.linalg.cond(v))


def estimate_beta0(v, w) -> float:
    """
    Constant coefficient of the fitted polynomial. Square systems are
    solved directly; taller ones by ordinary least squares.
    """
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.ndim != 2 or v.shape[0] < v.shape[1]:
        raise ShapeError(f"Vandermonde system must have rows >= cols, got {v.shape}")
    if w.shape != (v.shape[0],):
        raise ShapeError(f"{w.shape[0] if w.ndim else 0} values for {v.shape[0]} nodes")
    cond = condition_number(v)
    if not cond <= MAX_CONDITION:
        raise IllConditionedError(f"Vandermonde condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")
    try:
        if v.shape[0] == v.shape[1]:
            beta = np.linalg.solve(v, w)
        else:
            beta, *_ = np.linalg.lstsq(v, w, rcond=None)
    except np.linalg.LinAlgError as e:
        raise IllConditionedError(f"Vandermonde solve failed: {e}") from None
    logger.debug("beta0 fit: %d nodes, degree %d, cond=%.3e", v.shape[0], v.shape[1] - 1, cond)
    return float(beta[0])


# ---------------------------------------------------------------------------
# Norm bounds
# ---------------------------------------------------------------------------
def gautschi_bound(nodes: NodeSet) -> float:
    """
    max_j prod_{i != j} (1 + |x_i|) / |x_j - x_i|; 1 + |x_1| for a single node.

    Bounds ||(V^T)^-1||_inf, the node-per-column orientation (equivalently
    ||V^-1||_1 with V = build_vandermonde(nodes)), for any node set, with
    equality for positive nodes. Numerators take the other nodes'
    magnitudes; on symmetric sets this never exceeds the variant with
    (1 + |x_j|)^d, so the closed form still dominates it. In the
    row-per-node orientation ||V^-1||_inf the product is not a bound.
    """
    xs = nodes.x_values
    if len(xs) == 1:
        return 1.0 + abs(xs[0])
    best = 0.0
    for j, xj in enumerate(xs):
        prod = 1.0
        for i, xi in enumerate(xs):
            if i != j:
                prod *= (1.0 + abs(xi)) / abs(xj - xi)
        best = max(best, prod)
    return best


def vandermonde_closed_form_bound(a: float, degree: int) -> float:
    """
    Closed form for evenly spaced nodes on [1-a, 1+a] (Stirling applied to
    the central node's distance product). Degenerate, hence +inf, for
    degree 0 and 1.
    """
    d = degree
    if d <= 1:
        return math.inf
    base = (2.0 * math.e / a) ** d
    if d % 2 == 0:
        return base / (math.pi * d)
    ratio = math.exp(d * math.log(d) - 0.5 * ((d - 1) * math.log(d - 1) + (d + 1) * math.log(d + 1)))
    return base / (math.pi * math.sqrt(d * d - 1)) * ratio


def vandermonde_inverse_norm(nodes: NodeSet) -> float:
    """
    Exact ||(V^T)^-1||_inf for a square node set, from the Lagrange basis.

    Row j of (V^T)^-1, i.e. column j of V^-1, holds the coefficients of
    L_j(x) = prod_{i != j} (x - x_i) / (x_j - x_i). This is the
    node-per-column orientation the Gautschi product bounds; in the
    row-per-node orientation of V the same number is ||V^-1||_1.
    Building the coefficients from the roots avoids the roundoff of an
    explicit inverse, which grows with the condition number.
    """
    xs = nodes.x_values
    if len(xs) != nodes.degree + 1:
        raise ShapeError("inverse norm is only defined for square node sets")
    best = 0.0
    for j, xj in enumerate(xs):
        others = [xi for i, xi in enumerate(xs) if i != j]
        coeffs = P.polyfromroots(others) if others else np.ones(1)
        denom = math.prod(xj - xi for xi in others)
        best = max(best, float(np.abs(coeffs).sum()) / abs(denom))
    return best


class VarianceBound(NamedTuple):
    explicit: float
    asymptotic: float
    norm_bound: float


def variance_bound(epsilon_prime: float, n: int, k: int, a: float, degree: Optional[int] = None) -> VarianceBound:
    """
    Bound on Var(beta0) for oracle errors within +-eps' n!.

    `explicit` is (d+1)^2 (eps' n!)^2 B^2 with B the closed-form norm bound
    (the Gautschi product of the same evenly spaced nodes when the closed
    form degenerates); `asymptotic` is (eps' n!)^2 / a^(2d).
    """
    if a <= 0:
        raise ValueError(f"half-width must be positive, got {a}")
    d = k if degree is None else degree
    scale = epsilon_prime * math.factorial(n)
    norm = vandermonde_closed_form_bound(a, d)
    if not math.isfinite(norm):
        norm = gautschi_bound(nodes_on_interval(a, d))
    explicit = (d + 1) ** 2 * scale * scale * norm * norm
    asymptotic = scale * scale / a ** (2 * d)
    return VarianceBound(explicit=explicit, asymptotic=asymptotic, norm_bound=norm)


def epsilon_prime_budget(n: int, k: int, epsilon: float, delta: float) -> float:
    """Oracle precision eps' (units of n!) that yields +-eps n! on |Per(X)|^2; O(.) constant 1."""
    if not 0 < epsilon < 1 or not 0 < delta < 1:
        raise ValueError(f"epsilon and delta must lie in (0, 1), got {epsilon}, {delta}")
    return epsilon * delta ** (k + 0.5) * float(k) ** (k / 2) / (n ** (k / 2) * (n + k) ** k)


def chebyshev_envelope(variance: float, delta: float) -> float:
    """K * sqrt(variance) with K = 1/sqrt(delta): exceeded with probability <= delta."""
    return math.sqrt(variance) / math.sqrt(delta)
