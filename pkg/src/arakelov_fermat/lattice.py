"""Special fibres as decorated intersection lattices.

A :class:`FiberConfiguration` stores the components of one closed fibre of a
regular arithmetic surface together with the full intersection matrix.
Vertical divisors are rational vectors over the components; horizontal
sections enter only through their intersection multiplicities with each
component (a :class:`HorizontalProfile`).  Residue degrees are taken to be 1
throughout, i.e. the residue field of every intersection point equals the
residue field of the base prime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArakelovError, DimensionMismatch
from .exact_linalg import RationalMatrix, as_rational


@dataclass(frozen=True)
class Component:
    id: int
    label: str
    multiplicity: int
    self_intersection: int
    genus: int = 0

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"{self.label}: multiplicity must be positive")
        if self.genus < 0:
            raise ValueError(f"{self.label}: negative genus")


@dataclass(frozen=True, eq=False)
class FiberConfiguration:
    components: tuple[Component, ...]
    intersections: tuple[tuple[int, ...], ...]
    residue_char: int
    log_norm_coefficient: int = 1
    _index: dict = field(init=False, repr=False, compare=False)
    _neighbors: tuple = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.components)
        if len(self.intersections) != n or any(len(r) != n for r in self.intersections):
            raise DimensionMismatch("intersection matrix does not match component list")
        for i, c in enumerate(self.components):
            if c.id != i:
                raise ValueError(f"component {c.label} has id {c.id}, expected {i}")
            if self.intersections[i][i] != c.self_intersection:
                raise ValueError(f"diagonal entry of {c.label} disagrees with its self-intersection")
            for j in range(i):
                if self.intersections[i][j] != self.intersections[j][i]:
                    raise ValueError("intersection matrix is not symmetric")
                if self.intersections[i][j] < 0:
                    raise ValueError("distinct components cannot meet negatively")
        index = {c.label: c.id for c in self.components}
        if len(index) != n:
            raise ValueError("component labels must be unique")
        object.__setattr__(self, "_index", index)
        object.__setattr__(
            self,
            "_neighbors",
            tuple(tuple((j, x) for j, x in enumerate(row) if x) for row in self.intersections),
        )
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_edges(
        cls,
        residue_char: int,
        components: Iterable[tuple[str, int, int, int]],
        edges: Iterable[tuple[str, str, int]],
    ) -> "FiberConfiguration":
        """Build from ``(label, mult, self, genus)`` tuples and ``(a, b, count)`` edges."""
        comps = tuple(
            Component(i, label, mult, self_int, genus)
            for i, (label, mult, self_int, genus) in enumerate(components)
        )
        index = {c.label: c.id for c in comps}
        n = len(comps)
        mat = [[0] * n for _ in range(n)]
        for c in comps:
            mat[c.id][c.id] = c.self_intersection
        for a, b, count in edges:
            i, j = index[a], index[b]
            if i == j:
                raise ValueError(f"edge {a}-{a} is a self loop")
            mat[i][j] += count
            mat[j][i] += count
        return cls(comps, tuple(tuple(r) for r in mat), residue_char)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberConfiguration):
            return NotImplemented
        return (
            self.components == other.components
            and self.intersections == other.intersections
            and self.residue_char == other.residue_char
        )

    def __hash__(self):
        return hash((self.components, self.intersections, self.residue_char))

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.components]

    def index(self, label_or_id) -> int:
        if isinstance(label_or_id, int):
            if not 0 <= label_or_id < len(self.components):
                raise KeyError(label_or_id)
            return label_or_id
        return self._index[label_or_id]

    def component(self, label_or_id) -> Component:
        return self.components[self.index(label_or_id)]

    def neighbors(self, i: int) -> tuple[tuple[int, int], ...]:
        """Nonzero entries ``(j, C_i . C_j)`` of row ``i``, diagonal included."""
        return self._neighbors[i]

    def matrix(self) -> RationalMatrix:
        if "matrix" not in self._cache:
            n = len(self.components)
            self._cache["matrix"] = RationalMatrix(n, n, self.intersections)
        return self._cache["matrix"]

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for i, row in enumerate(self.intersections):
            for j in range(i + 1, len(row)):
                if row[j]:
                    out.append((self.components[i].label, self.components[j].label, row[j]))
        return out

    def with_self_intersection(self, label, value: int) -> "FiberConfiguration":
        """Copy with one self-intersection replaced; used to corrupt fibres in tests."""
        i = self.index(label)
        comps = list(self.components)
        c = comps[i]
        comps[i] = Component(c.id, c.label, c.multiplicity, value, c.genus)
        mat = [list(r) for r in self.intersections]
        mat[i][i] = value
        return FiberConfiguration(tuple(comps), tuple(tuple(r) for r in mat), self.residue_char)

    # serialization

    def to_dict(self) -> dict:
        return {
            "p": self.residue_char,
            "components": [
                {"label": c.label, "mult": c.multiplicity, "self": c.self_intersection, "genus": c.genus}
                for c in self.components
            ],
            "edges": [list(e) for e in self.edges()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "FiberConfiguration":
        return cls.from_edges(
            data["p"],
            [(c["label"], c["mult"], c["self"], c.get("genus", 0)) for c in data["components"]],
            [(a, b, n) for a, b, n in data["edges"]],
        )

    def to_json(self, **extra) -> str:
        d = self.to_dict()
        d.update(extra)
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "FiberConfiguration":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "fiber") -> str:
        lines = [f"graph {name} {{"]
        for c in self.components:
            lines.append(f'  "{c.label}" [label="{c.label} ({c.multiplicity},{c.self_intersection})"];')
        for a, b, n in self.edges():
            attr = "" if n == 1 else f' [label="{n}"]'
            lines.append(f'  "{a}" -- "{b}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VerticalDivisor:
    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable):
        object.__setattr__(self, "coefficients", tuple(as_rational(x) for x in coefficients))

    @classmethod
    def zero(cls, cfg: FiberConfiguration) -> "VerticalDivisor":
        return cls([0] * len(cfg))

    @classmethod
    def unit(cls, cfg: FiberConfiguration, label) -> "VerticalDivisor":
        v = [0] * len(cfg)
        v[cfg.index(label)] = 1
        return cls(v)

    @classmethod
    def from_mapping(cls, cfg: FiberConfiguration, coeffs: Mapping) -> "VerticalDivisor":
        v = [0] * len(cfg)
        for label, x in coeffs.items():
            v[cfg.index(label)] = x
        return cls(v)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def _check(self, other):
        if len(other) != len(self):
            raise DimensionMismatch(f"divisors on {len(self)} and {len(other)} components")

    def __add__(self, other: "VerticalDivisor") -> "VerticalDivisor":
        self._check(other)
        return VerticalDivisor(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __sub__(self, other: "VerticalDivisor") -> "VerticalDivisor":
        self._check(other)
        return VerticalDivisor(a - b for a, b in zip(self.coefficients, other.coefficients))

    def __neg__(self) -> "VerticalDivisor":
        return VerticalDivisor(-a for a in self.coefficients)

    def __mul__(self, t) -> "VerticalDivisor":
        t = as_rational(t)
        return VerticalDivisor(t * a for a in self.coefficients)

    __rmul__ = __mul__

    def __truediv__(self, t) -> "VerticalDivisor":
        return self * (1 / as_rational(t))

    def restrict(self, cfg: FiberConfiguration, labels: Iterable) -> "VerticalDivisor":
        """Keep the coefficients on ``labels`` and zero the rest."""
        keep = {cfg.index(x) for x in labels}
        return VerticalDivisor(a if i in keep else 0 for i, a in enumerate(self.coefficients))

    def as_mapping(self, cfg: FiberConfiguration) -> dict[str, Fraction]:
        return {c.label: a for c, a in zip(cfg.components, self.coefficients) if a}


@dataclass(frozen=True)
class HorizontalProfile:
    hits: tuple[int, ...]

    def __init__(self, hits: Iterable[int]):
        hits = tuple(int(h) for h in hits)
        if any(h < 0 for h in hits):
            raise ValueError("horizontal intersection multiplicities are nonnegative")
        object.__setattr__(self, "hits", hits)

    @classmethod
    def section_through(cls, cfg: FiberConfiguration, label) -> "HorizontalProfile":
        h = [0] * len(cfg)
        h[cfg.index(label)] = 1
        return cls(h)

    def __len__(self):
        return len(self.hits)

    def scaled(self, k: int) -> "HorizontalProfile":
        return HorizontalProfile(k * h for h in self.hits)

    def is_section(self, cfg: FiberConfiguration) -> bool:
        """Degree one over the base: the profile pairs to 1 with the full fibre."""
        return sum(h * c.multiplicity for h, c in zip(self.hits, cfg.components)) == 1

    def support(self) -> set[int]:
        return {i for i, h in enumerate(self.hits) if h}


def _check_len(cfg: FiberConfiguration, *objs):
    for o in objs:
        if len(o) != len(cfg):
            raise DimensionMismatch(
                f"object indexed by {len(o)} components used with a fibre of {len(cfg)}"
            )


def intersect_with_components(D: VerticalDivisor, cfg: FiberConfiguration) -> list[Fraction]:
    """The vector ``(D . C_i)_i``."""
    _check_len(cfg, D)
    out = []
    for i in range(len(cfg)):
        out.append(sum((x * D.coefficients[j] for j, x in cfg.neighbors(i) if D.coefficients[j]), Fraction(0)))
    return out


def pair_vertical(D1: VerticalDivisor, D2: VerticalDivisor, cfg: FiberConfiguration) -> Fraction:
    _check_len(cfg, D1, D2)
    total = Fraction(0)
    for i, a in enumerate(D1.coefficients):
        if not a:
            continue
        total += a * sum(
            (x * D2.coefficients[j] for j, x in cfg.neighbors(i) if D2.coefficients[j]), Fraction(0)
        )
    return total


def pair_mixed(profile: HorizontalProfile, D: VerticalDivisor, cfg: FiberConfiguration) -> Fraction:
    _check_len(cfg, profile, D)
    return sum((h * a for h, a in zip(profile.hits, D.coefficients) if h), Fraction(0))


def full_fiber(cfg: FiberConfiguration) -> VerticalDivisor:
    return VerticalDivisor(c.multiplicity for c in cfg.components)


@dataclass(frozen=True)
class FiberRelationReport:
    defects: dict[str, Fraction]

    @property
    def ok(self) -> bool:
        return not any(self.defects.values())

    def failures(self) -> dict[str, Fraction]:
        return {k: v for k, v in self.defects.items() if v}


def check_fiber_relation(cfg: FiberConfiguration) -> FiberRelationReport:
    if "fiber_relation" not in cfg._cache:
        F = intersect_with_components(full_fiber(cfg), cfg)
        cfg._cache["fiber_relation"] = FiberRelationReport(
            {c.label: d for c, d in zip(cfg.components, F)}
        )
    return cfg._cache["fiber_relation"]


class InvalidFiber(ArakelovError):
    def __init__(self, report: FiberRelationReport):
        super().__init__(f"fibre relation fails on {sorted(report.failures())}")
        self.report = report


def require_fiber_relation(cfg: FiberConfiguration) -> None:
    report = check_fiber_relation(cfg)
    if not report.ok:
        raise InvalidFiber(report)


def adjunction_defect(
    cfg: FiberConfiguration,
    K_vertical: VerticalDivisor,
    K_horizontal_pairing: Sequence,
    C,
) -> Fraction:
    """``2 g(C) - 2 - C^2 - K.C``; zero exactly when adjunction holds on ``C``."""
    _check_len(cfg, K_vertical, K_horizontal_pairing)
    i = cfg.index(C)
    comp = cfg.components[i]
    KC = as_rational(K_horizontal_pairing[i]) + sum(
        (x * K_vertical.coefficients[j] for j, x in cfg.neighbors(i)), Fraction(0)
    )
    return 2 * comp.genus - 2 - comp.self_intersection - KC


def horizontal_pairing(profile: HorizontalProfile, weight=1) -> list[Fraction]:
    """Per-component intersection of ``weight * S`` for a horizontal divisor ``S``."""
    w = as_rational(weight)
    return [w * h for h in profile.hits]
