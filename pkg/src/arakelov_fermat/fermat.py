"""The regular model of the Fermat curve x^p + y^p = z^p at the prime (1 - zeta_p).

The special fibre consists of a multiplicity-p line ``L`` with self-intersection
-1 and, meeting it once each,

* ``L_x, L_y, L_z`` and ``L_beta_1 .. L_beta_s``   (1, -p)
* ``L_alpha_1 .. L_alpha_r``                       (2, -p)

plus ``p`` curves ``L_alpha_i_j`` of type (1, -2) attached to each ``L_alpha_i``
and to nothing else.  The numbers r and s come from the roots of
``phi(X, -1) = ((X - 1)^p - X^p + 1) / p`` over F_p: every root other than 0, 1
in F_p is double and gives an ``L_alpha``; the remaining degree gives the
``L_beta``.  Cusps of each of the three classes meet exactly one of
``L_x, L_y, L_z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import polyfp
from .errors import BadSplit, NotPrime, SplitInconsistent
from .lattice import (
    FiberConfiguration,
    HorizontalProfile,
    VerticalDivisor,
    require_fiber_relation,
)
from .solver import CorrectionTarget

CUSP_CLASSES = ("x", "y", "z")
# the cusps (zeta^i : -1 : 0) lie over infinity
INFINITY_CLASS = "z"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_fermat_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)
    if p <= 3:
        raise ValueError(f"p must be a prime greater than 3, got {p}")


def phi_minus_one(p: int) -> list[int]:
    """Integer coefficients of ``((X-1)^p - X^p + 1)/p``, lowest degree first."""
    # coefficient of X^k in (X-1)^p is C(p,k)(-1)^(p-k); X^p and the constant cancel
    coeffs = [0] * p
    for k in range(1, p):
        coeffs[k], rem = divmod(comb(p, k) * (-1) ** (p - k), p)
        if rem:
            raise SplitInconsistent(f"C({p},{k}) is not divisible by {p}")
    return polyfp.trim(coeffs)


def phi_minus_one_mod_p(p: int) -> list[int]:
    """The same polynomial reduced mod p through ``sum_{k=1}^{p-1} X^k / k``."""
    return polyfp.reduce([0] + [pow(k, -1, p) for k in range(1, p)], p)


@lru_cache(maxsize=None)
def mirimanoff_split(p: int) -> tuple[int, int]:
    """``(r, s)``: number of double roots in F_p besides 0, 1 and the leftover degree."""
    require_fermat_prime(p)
    f = polyfp.reduce(phi_minus_one(p), p)
    if f != phi_minus_one_mod_p(p):
        raise SplitInconsistent(f"binomial and harmonic forms of phi(X,-1) disagree mod {p}")
    if polyfp.degree(f) != p - 1:
        raise SplitInconsistent(f"phi(X,-1) mod {p} has degree {polyfp.degree(f)}")

    rts = polyfp.roots(f, p)
    for r0 in (0, 1):
        if polyfp.root_multiplicity(f, r0, p) != 1:
            raise SplitInconsistent(f"{r0} is not a simple root mod {p}")
    alphas = [a for a in rts if a not in (0, 1)]
    rest = list(f)
    for a in alphas:
        if polyfp.root_multiplicity(f, a, p) != 2:
            raise SplitInconsistent(f"root {a} mod {p} is not double")
        rest = polyfp.divmod_poly(rest, polyfp.mul([-a % p, 1], [-a % p, 1], p), p)[0]
    for r0 in (0, 1):
        rest = polyfp.divmod_poly(rest, [-r0 % p, 1], p)[0]
    # the part without roots in F_p must be squarefree
    if polyfp.degree(polyfp.gcd(rest, polyfp.derivative(rest, p), p)) > 0:
        raise SplitInconsistent(f"irrational part of phi(X,-1) mod {p} is not squarefree")
    r = len(alphas)
    s = p - 3 - 2 * r
    if s != polyfp.degree(rest):
        raise SplitInconsistent(f"degree bookkeeping fails mod {p}")
    return r, s


@dataclass(frozen=True)
class FermatModel:
    p: int
    r: int
    s: int
    cfg: FiberConfiguration
    cusp_profiles: dict[str, HorizontalProfile]

    @property
    def genus(self) -> int:
        return (self.p - 1) * (self.p - 2) // 2

    @property
    def degree(self) -> int:
        """Degree of the Belyi map ``(x:y:z) -> (x^p : y^p)``."""
        return self.p * self.p

    @property
    def b_max(self) -> int:
        return self.p

    def cusp(self, cls: str) -> HorizontalProfile:
        return self.cusp_profiles[cls]

    def pullback_target(self, branch: str = INFINITY_CLASS) -> CorrectionTarget:
        """``(1/d) beta^* Q`` for the branch point under the cusps of class ``branch``.

        The p cusps over the branch point each appear with ramification index p;
        the vertical part ``p L_branch`` makes the pullback meet every component
        except ``L`` trivially, since those are contracted by the Belyi map.
        """
        p = self.p
        return CorrectionTarget(
            self.cusp_profiles[branch].scaled(p * p),
            VerticalDivisor.unit(self.cfg, f"L_{branch}") * p,
            Fraction(1, self.degree),
        )

    def to_json(self) -> str:
        return self.cfg.to_json(split={"r": self.r, "s": self.s})


def _config(p: int, r: int, s: int) -> FiberConfiguration:
    comps = [("L", p, -1, 0)]
    edges = []
    for u in CUSP_CLASSES:
        comps.append((f"L_{u}", 1, -p, 0))
        edges.append(("L", f"L_{u}", 1))
    for i in range(1, s + 1):
        comps.append((f"L_beta_{i}", 1, -p, 0))
        edges.append(("L", f"L_beta_{i}", 1))
    for i in range(1, r + 1):
        comps.append((f"L_alpha_{i}", 2, -p, 0))
        edges.append(("L", f"L_alpha_{i}", 1))
    for i in range(1, r + 1):
        for j in range(1, p + 1):
            comps.append((f"L_alpha_{i}_{j}", 1, -2, 0))
            edges.append((f"L_alpha_{i}", f"L_alpha_{i}_{j}", 1))
    return FiberConfiguration.from_edges(p, comps, edges)


def build_with_split(p: int, r: int, s: int) -> FermatModel:
    require_fermat_prime(p)
    if r < 0 or s < 0 or 2 * r + s != p - 3:
        raise BadSplit(f"(r, s) = ({r}, {s}) does not satisfy 2r + s = {p - 3}")
    cfg = _config(p, r, s)
    require_fiber_relation(cfg)
    profiles = {u: HorizontalProfile.section_through(cfg, f"L_{u}") for u in CUSP_CLASSES}
    return FermatModel(p, r, s, cfg, profiles)


@lru_cache(maxsize=64)
def build(p: int) -> FermatModel:
    r, s = mirimanoff_split(p)
    return build_with_split(p, r, s)


def admissible_splits(p: int) -> list[tuple[int, int]]:
    return [(r, p - 3 - 2 * r) for r in range((p - 3) // 2 + 1)]


def component_count(p: int, r: int, s: int) -> int:
    return 1 + 3 + s + r + r * p
