"""Discrete Fourier diagnostics: grid transforms, the decay statistic,
restriction norms and large spectra.

Everything here is floating point — exact counting never routes through this
module.  The transform convention is f̂(a/Q) = Σ_x f(x) e(ax/Q) with
e(θ) = exp(2πiθ).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .counting import WeightFunction
from .errors import RangeError


def default_grid(support_limit: int) -> int:
    """4X rounded up to a power of two."""
    q = 2
    while q < 4 * support_limit:
        q <<= 1
    return q


@dataclass(frozen=True)
class SpectrumGrid:
    Q: int
    values: np.ndarray  # complex, indexed by a in [0, Q)

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def to_csv(self) -> str:
        lines = ["a,re,im,magnitude"]
        for a, v in enumerate(self.values):
            lines.append(f"{a},{v.real!r},{v.imag!r},{abs(v)!r}")
        return "\n".join(lines) + "\n"


def dft(f: WeightFunction, Q: int | None = None) -> SpectrumGrid:
    """f̂ on the grid {a/Q}.  Alias-free (hence numerically exact up to
    rounding) whenever Q exceeds the support limit."""
    if Q is None:
        Q = default_grid(f.limit)
    if Q < 2:
        raise RangeError("grid size must be >= 2")
    dense = f.to_dense()
    g = np.zeros(Q)
    idx = np.arange(dense.size) % Q
    np.add.at(g, idx, dense)
    # ifft uses the e(+ax/Q) kernel; scale back by Q
    return SpectrumGrid(Q, np.fft.ifft(g) * Q)


def _interval_hat(X: int, Q: int) -> np.ndarray:
    return dft(WeightFunction.ones(X), Q).values


@dataclass(frozen=True)
class DecayReport:
    statistic: float
    argmax_frequency: int
    Q: int
    reference_length: int
    neighbor_oscillation: float  # max gap between adjacent grid values


def decay_statistic(nu: WeightFunction, reference_length: int,
                    Q: int | None = None) -> DecayReport:
    """sup over the grid of |ν̂(α)/‖ν‖₁ − 1̂_[X](α)/X| for X the reference."""
    if reference_length < 1:
        raise RangeError("reference length must be positive")
    l1 = float(nu.l1())
    if l1 == 0:
        raise RangeError("the weight has empty support; "
                         "the normalized transform is undefined")
    if Q is None:
        Q = default_grid(max(nu.limit, reference_length))
    if Q < 4 * max(nu.limit, reference_length):
        raise RangeError("need Q >= 4X for a faithful sup approximation")
    diff = np.abs(dft(nu, Q).values / l1
                  - _interval_hat(reference_length, Q) / reference_length)
    argmax = int(np.argmax(diff))
    oscillation = float(np.max(np.abs(np.diff(diff))))
    return DecayReport(float(diff[argmax]), argmax, Q,
                       reference_length, oscillation)


def restriction_norm(phi: WeightFunction, p: float,
                     Q: int | None = None) -> float:
    """Grid approximation of ∫ |φ̂|^p: (1/Q) Σ_a |φ̂(a/Q)|^p."""
    if p <= 2:
        raise RangeError("only exponents p > 2 are supported")
    if Q is None:
        Q = default_grid(phi.limit)
    if Q < 4 * phi.limit:
        raise RangeError("need Q >= 4X")
    mags = dft(phi, Q).magnitude()
    return float(np.sum(mags ** p) / Q)


def large_spectrum(phi: WeightFunction, delta: float, V: float,
                   Q: int | None = None) -> list[tuple[int, float]]:
    """Grid frequencies a with |φ̂(a/Q)| > δV, sorted by magnitude descending."""
    if V <= 0:
        raise RangeError("reference scale must be positive")
    if not 0 < delta <= 1:
        raise RangeError("delta must lie in (0, 1]")
    if Q is None:
        Q = default_grid(phi.limit)
    mags = dft(phi, Q).magnitude()
    hits = np.flatnonzero(mags > delta * V)
    order = hits[np.argsort(-mags[hits], kind="stable")]
    return [(int(a), float(mags[a])) for a in order]
