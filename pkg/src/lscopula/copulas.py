"""Archimedean generators, copula evaluation, Lemma-style dominance checks and frailty sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, UnsupportedFamily
from .calculus import numeric_derivative_with_noise
from .verdict import PROB_TOL, CheckVerdict, all_of, compare

COPULA_FAMILIES = ("independence", "clayton", "gumbel", "frank")
_LOG_TINY = np.log(1e-300)
#: rows per independent random substream in :func:`sample_copula`
BLOCK_ROWS = 1024


@dataclass(frozen=True)
class ArchimedeanGenerator:
    """Generator ``psi`` of an Archimedean copula together with its inverse ``phi``.

    All four families have completely monotone generators, so ``max_dim`` is a
    free validity bound rather than a family limit.
    """

    family: str
    theta: float = 1.0
    max_dim: int = 64

    def __post_init__(self):
        f, th = self.family, self.theta
        if f not in COPULA_FAMILIES:
            raise DomainError(f"unknown copula family {f!r}")
        if f == "clayton" and not th > 0:
            raise DomainError("Clayton needs theta > 0")
        if f == "gumbel" and not th >= 1:
            raise DomainError("Gumbel needs theta >= 1")
        if f == "frank" and not th > 0:
            raise DomainError("Frank needs theta > 0")
        if self.max_dim < 2:
            raise DomainError("max_dim must be at least 2")

    @property
    def cap(self) -> float:
        """Finite stand-in for phi(0): psi(cap) is below 1e-300 or as small as doubles allow."""
        f, th = self.family, self.theta
        if f == "clayton":
            return float(min(np.expm1(min(-_LOG_TINY * th, 700.0)) / th, 1e300))
        if f == "gumbel":
            return float(min((-_LOG_TINY) ** th, 1e300))
        return float(-_LOG_TINY + 10.0)

    def log_psi(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise DomainError("generator argument must be nonnegative")
        f, th = self.family, self.theta
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if f == "independence":
                out = -t
            elif f == "clayton":
                out = -np.log1p(th * t) / th
            elif f == "gumbel":
                out = -(t ** (1.0 / th))
            else:
                logx = np.log(-np.expm1(-th)) - t
                x = np.exp(logx)
                big = np.log(-np.log1p(-np.minimum(x, 1.0 - 1e-17)))
                out = np.where(x < 1e-8, logx + 0.5 * x, big) - np.log(th)
        return np.where(np.isposinf(t), -np.inf, out)

    def psi(self, t):
        return np.exp(self.log_psi(t))

    def phi_from_log(self, logu):
        """phi evaluated at ``exp(logu)``; keeps precision for u near 0 and 1."""
        logu = np.asarray(logu, dtype=float)
        f, th = self.family, self.theta
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if f == "independence":
                out = -logu
            elif f == "clayton":
                out = np.expm1(-th * logu) / th
            elif f == "gumbel":
                out = (-logu) ** th
            else:
                u = np.exp(logu)
                out = -np.log(np.expm1(-th * u) / np.expm1(-th))
        out = np.where(logu >= 0, 0.0, out)
        return np.where(np.isneginf(logu), np.inf, out)

    def phi(self, u):
        u = np.asarray(u, dtype=float)
        if np.any((u < 0) | (u > 1)):
            raise DomainError("phi is defined on [0, 1]")
        with np.errstate(divide="ignore"):
            return self.phi_from_log(np.log(u))

    def log_psi_derivative(self, t, order: int):
        """Closed-form d^k/dt^k log psi (k = 1, 2); ``None`` for Frank."""
        t = np.asarray(t, dtype=float)
        f, th = self.family, self.theta
        if f == "independence":
            return np.full_like(t, -1.0) if order == 1 else np.zeros_like(t)
        if f == "clayton":
            return -1.0 / (1.0 + th * t) if order == 1 else th / (1.0 + th * t) ** 2
        if f == "gumbel":
            a = 1.0 / th
            if order == 1:
                return -a * t ** (a - 1.0)
            return np.zeros_like(t) if th == 1 else -a * (a - 1.0) * t ** (a - 2.0)
        return None

    def kendall_tau(self) -> float:
        if self.family == "independence":
            return 0.0
        if self.family == "clayton":
            return self.theta / (self.theta + 2.0)
        if self.family == "gumbel":
            return 1.0 - 1.0 / self.theta
        raise UnsupportedFamily("Kendall tau for Frank needs a Debye integral; not provided")

    def describe(self) -> dict:
        return {"family": self.family, "theta": float(self.theta)}


INDEPENDENCE = ArchimedeanGenerator("independence")


def from_dict(d: dict | None) -> ArchimedeanGenerator | None:
    if d is None:
        return None
    return ArchimedeanGenerator(d["family"], float(d.get("theta", 1.0)))


def psi_eval(g: ArchimedeanGenerator, t):
    return g.psi(t)


def phi_eval(g: ArchimedeanGenerator, u):
    return g.phi(u)


def copula_eval(g: ArchimedeanGenerator, u):
    """C(u) = psi(sum phi(u_i)); ``u`` may be a vector or an (m, d) batch."""
    u = np.asarray(u, dtype=float)
    d = u.shape[-1]
    if d > g.max_dim:
        raise DimensionError(f"dimension {d} exceeds max_dim {g.max_dim}")
    s = np.sum(g.phi(u), axis=-1)
    out = g.psi(np.minimum(s, g.cap))
    return np.where(np.isinf(s), 0.0, out)


def superadditive_grid(hi: float, samples: int, n_random: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Log-spaced ``samples x samples`` pairs plus uniform and log-uniform random pairs in [0, hi/2]^2."""
    g = np.geomspace(hi * 1e-8, hi / 2.0, samples)
    xs, ys = np.meshgrid(g, g, indexing="ij")
    rng = np.random.default_rng(seed)
    half = n_random // 2
    ru = rng.uniform(0.0, hi / 2.0, size=(half, 2))
    rl = np.exp(rng.uniform(np.log(hi * 1e-8), np.log(hi / 2.0), size=(n_random - half, 2)))
    x = np.concatenate([xs.ravel(), ru[:, 0], rl[:, 0]])
    y = np.concatenate([ys.ravel(), ru[:, 1], rl[:, 1]])
    return x, y


def check_superadditive(
    g1: ArchimedeanGenerator,
    g2: ArchimedeanGenerator,
    domain=(0.0, 20.0),
    samples: int = 200,
    n_random: int = 10_000,
    seed=0,
    tol: float = PROB_TOL,
) -> CheckVerdict:
    """Is ``phi2(psi1(.))`` super-additive on the sampled part of ``domain``?"""
    lo, hi = domain
    if lo < 0 or hi <= lo:
        raise DomainError("domain must be an interval inside [0, inf)")
    if samples < 2:
        raise DomainError("need at least two grid samples")
    x, y = superadditive_grid(hi - lo, samples, n_random, seed)
    x, y = x + lo / 2.0, y + lo / 2.0

    def comp(t):
        return g2.phi_from_log(g1.log_psi(t))

    fx, fy, fxy = comp(x), comp(y), comp(x + y)
    scale = np.maximum(1.0, np.abs(fxy))
    return compare(np.stack([x, y], axis=1), fx + fy, fxy, tol=tol * scale)


def copula_dominance(
    g1: ArchimedeanGenerator,
    g2: ArchimedeanGenerator,
    dim: int = 2,
    samples: int = 10_000,
    seed=0,
    tol: float = PROB_TOL,
) -> CheckVerdict:
    """Sampled check of C_psi1(u) <= C_psi2(u) on [0, 1]^dim."""
    if dim > min(g1.max_dim, g2.max_dim):
        raise DimensionError("dim exceeds a generator's max_dim")
    u = np.random.default_rng(seed).uniform(size=(samples, dim))
    return compare(u, copula_eval(g1, u), copula_eval(g2, u), tol=tol)


def _positive_stable(alpha: float, size: int, rng) -> np.ndarray:
    """Kanter's representation of the one-sided stable law with Laplace transform exp(-s^alpha)."""
    if alpha == 1.0:
        return np.ones(size)
    w = rng.uniform(0.0, np.pi, size)
    e = rng.standard_exponential(size)
    a = np.sin(alpha * w) / np.sin(w) ** (1.0 / alpha)
    b = (np.sin((1.0 - alpha) * w) / e) ** ((1.0 - alpha) / alpha)
    return a * b


def _frailty(g: ArchimedeanGenerator, size: int, rng) -> np.ndarray:
    f, th = g.family, g.theta
    if f == "independence":
        return np.ones(size)
    if f == "clayton":
        return rng.gamma(1.0 / th, th, size)
    if f == "gumbel":
        return _positive_stable(1.0 / th, size, rng)
    if f == "frank":
        return rng.logseries(-np.expm1(-th), size).astype(float)
    raise UnsupportedFamily(f"no frailty sampler for {f}")


def sample_copula(g: ArchimedeanGenerator, dim: int, count: int, seed=0) -> np.ndarray:
    """Draw ``count`` rows from C_psi via U_i = psi(E_i / V).

    Rows are generated in blocks of :data:`BLOCK_ROWS`, each from its own
    spawned substream, so block ``k`` depends only on ``(seed, k)``.
    """
    if count < 1:
        raise DomainError("count must be positive")
    if dim > g.max_dim:
        raise DimensionError("dim exceeds max_dim")
    nblocks = -(-count // BLOCK_ROWS)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    out = np.empty((count, dim))
    for k, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        rows = min(BLOCK_ROWS, count - k * BLOCK_ROWS)
        v = _frailty(g, rows, rng)
        e = rng.standard_exponential((rows, dim))
        out[k * BLOCK_ROWS : k * BLOCK_ROWS + rows] = g.psi(e / v[:, None])
    return np.clip(out, np.finfo(float).tiny, np.nextafter(1.0, 0.0))


def check_d_monotone(g: ArchimedeanGenerator, dim: int | None = None, grid=None) -> CheckVerdict:
    """Finite-difference sign check (-1)^k psi^(k) >= 0 for k <= min(dim - 2, 4)."""
    dim = g.max_dim if dim is None else dim
    top = min(dim - 2, 4)
    if grid is None:
        grid = np.geomspace(0.05, min(g.cap, 50.0), 256)
    verdicts = []
    for k in range(1, top + 1):
        d, noise = numeric_derivative_with_noise(g.psi, grid, k, floor=1.0)
        signed = (-1) ** k * d
        verdicts.append(compare(grid, -signed, np.zeros_like(signed), tol=1e-12, noise=noise))
    values = g.psi(grid)
    verdicts.append(compare(grid, -values, np.zeros_like(values), tol=0.0))
    return all_of(verdicts)
