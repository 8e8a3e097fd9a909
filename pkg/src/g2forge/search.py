"""Numerical search for closed G2-structures, certified exactly.

The optimizer works on coordinates t of the closed 3-form space and
maximizes max(lambda_min(B), lambda_min(-B)) / |t|^3.  Whenever a restart
ends above ``epsilon``, the optimum is rounded to rationals and handed to
the exact verdict; floats never reach a returned certificate.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .exterior import KForm
from .g2core import TRIPLE_POS, G2Verdict, b_matrix_numeric, is_g2
from .lie import LieAlgebra
from .obstruction import ClosedFormSpace, closed_space

MAX_DOUBLINGS = 3


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 50
    budget: int = 2000
    seed: int = 0
    max_den: int = 48
    epsilon: float = 1e-3

    def __post_init__(self):
        for name in ("restarts", "budget", "max_den"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass
class CertifiedG2:
    form: KForm
    verdict: G2Verdict
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        B = self.verdict.b
        return {
            "form": str(self.form),
            "verdict": self.verdict.to_json(),
            "B": [[str(x) for x in row] for row in B.rows()] if B is not None else None,
            "provenance": self.provenance,
        }


def basis_matrix(space: ClosedFormSpace) -> np.ndarray:
    """35 x m float matrix whose columns are the closed basis forms."""
    M = np.zeros((len(TRIPLE_POS), space.dim))
    for c, b in enumerate(space.basis):
        for idx, v in b.coeffs.items():
            M[TRIPLE_POS[idx], c] = float(v)
    return M


def objective(t: np.ndarray, M: np.ndarray) -> float:
    """Signed definiteness margin of B(Mt), normalized to be scale invariant."""
    norm = float(np.linalg.norm(t))
    if norm == 0.0:
        return -np.inf
    w = np.linalg.eigvalsh(b_matrix_numeric(M @ t))
    return max(w[0], -w[-1]) / norm**3


def rationalize(t: Sequence[float], space: ClosedFormSpace, max_den: int) -> KForm:
    """Round each coordinate to the closest rational with denominator <= max_den.

    The result is a combination of the closed basis, so it is closed exactly.
    """
    coords = [Fraction(float(x)).limit_denominator(max_den) for x in t]
    return space.point(coords)


def certify(phi: KForm, g: LieAlgebra) -> G2Verdict:
    return is_g2(phi, g)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("G2FORGE_THREADS", "1")))
    except ValueError:
        return 1


def _run_restart(M: np.ndarray, cfg: SearchConfig, restart: int) -> tuple[np.ndarray, float, int]:
    rng = np.random.default_rng([cfg.seed, restart])
    m = M.shape[1]
    t0 = rng.standard_normal(m)
    t0 /= np.linalg.norm(t0)
    res = minimize(
        lambda t: -objective(t, M),
        t0,
        method="Nelder-Mead",
        options={"maxfev": cfg.budget, "xatol": 1e-10, "fatol": 1e-12, "adaptive": m > 8},
    )
    t = res.x / (np.max(np.abs(res.x)) or 1.0)
    return t, -float(res.fun), int(res.nfev)


def _try_certify(t: np.ndarray, space: ClosedFormSpace, g: LieAlgebra, cfg: SearchConfig):
    den = cfg.max_den
    attempts = []
    for _ in range(MAX_DOUBLINGS + 1):
        phi = rationalize(t, space, den)
        verdict = certify(phi, g) if phi else None
        attempts.append({"maxDen": den, "definite": bool(verdict and verdict.closed_g2)})
        if verdict is not None and verdict.closed_g2:
            return phi, verdict, attempts
        den *= 2
    return None, None, attempts


def search_g2(g: LieAlgebra, cfg: SearchConfig | None = None, space: ClosedFormSpace | None = None) -> CertifiedG2 | None:
    """Random restarts of Nelder-Mead, then rounding and exact certification.

    Restarts may run in parallel (``G2FORGE_THREADS``); the first certified
    restart in index order wins, so the result does not depend on threading.
    """
    cfg = cfg or SearchConfig()
    if g.is_symbolic:
        raise ValueError("search needs instantiated parameters")
    space = space or closed_space(g, 3)
    trace: list[dict] = []
    if space.dim == 0:
        return None
    M = basis_matrix(space)
    threads = _threads()
    restart = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while restart < cfg.restarts:
            batch = list(range(restart, min(restart + threads, cfg.restarts)))
            results = list(pool.map(lambda r: _run_restart(M, cfg, r), batch))
            for r, (t, best, nfev) in zip(batch, results):
                entry = {"restart": r, "bestObjective": best, "evaluations": nfev}
                trace.append(entry)
                if best <= cfg.epsilon:
                    continue
                phi, verdict, attempts = _try_certify(t, space, g, cfg)
                entry["rounding"] = attempts
                if phi is not None:
                    prov = {"seed": cfg.seed, "restart": r, "maxDen": attempts[-1]["maxDen"], "restarts": trace}
                    return CertifiedG2(phi, verdict, prov)
            restart = batch[-1] + 1
    return None


__all__ = ["CertifiedG2", "SearchConfig", "basis_matrix", "certify", "objective", "rationalize", "search_g2"]
