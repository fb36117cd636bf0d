"""
Surface models: a lattice together with its declared negative curves.

Two families are provided.  :func:`k3_theorem_a_model` is the rank-2 K3
lattice with Gram matrix ``[[-2, 4], [4, -2]]`` whose only negative curves
are the two basis classes.  :func:`blowup_model` is the blow-up of the
projective plane at ``s`` points in the basis ``H, E1, ..., Es`` with an
optional proximity structure for infinitely near points.

Nefness is always relative to the declared curve list: a class is nef for a
model when it pairs non-negatively with every declared curve.  For a
general blow-up the complete list of negative curves depends on where the
points are, so the caller supplies any curves beyond the exceptional
components and is responsible for their completeness.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidCurve,
    InvalidProximity,
    NotNef,
    NotPseudoeffective,
)
from .exact_linalg import RatMatrix
from .lattice import Curve, DivisorClass, Lattice, as_class

K3_THEOREM_A = "k3_theorem_a"
BLOWUP = "blowup"
LATTICE = "lattice"

K3_GRAM = ((-2, 4), (4, -2))


@dataclass(frozen=True)
class ProximityData:
    """Points ``p_1..p_s``; ``(j, i)`` in ``prox`` means p_j is infinitely near p_i."""

    s: int
    prox: frozenset = frozenset()

    def __post_init__(self):
        if self.s < 0:
            raise InvalidProximity("number of points must be non-negative")
        pairs = frozenset((int(j), int(i)) for j, i in self.prox)
        object.__setattr__(self, "prox", pairs)
        parents = {}
        for j, i in pairs:
            if not (1 <= i <= self.s and 1 <= j <= self.s):
                raise InvalidProximity(f"pair ({j}, {i}) out of range 1..{self.s}")
            if j <= i:
                raise InvalidProximity(f"pair ({j}, {i}): an infinitely near point must come later")
            if j in parents:
                raise InvalidProximity(f"point {j} is proximate to both {parents[j]} and {i}")
            parents[j] = i

    def children(self, i):
        return sorted(j for j, p in self.prox if p == i)

    def sorted_pairs(self):
        return sorted(self.prox)


class ConePosition(Enum):
    NOT_PSEUDOEFFECTIVE = "not_pseudoeffective"
    NEF = "nef"
    PSEUDOEFFECTIVE_NOT_NEF = "pseudoeffective_not_nef"


@dataclass(frozen=True)
class SurfaceModel:
    lattice: Lattice
    curves: tuple
    kind: str = LATTICE
    proximity: ProximityData = field(default=None)

    def __post_init__(self):
        curves = tuple(self.curves)
        object.__setattr__(self, "curves", curves)
        for c in curves:
            if c.lattice != self.lattice:
                raise InvalidCurve(f"curve {c.name!r} lives in a different lattice")
        names = [c.name for c in curves]
        if len(set(names)) != len(names):
            raise InvalidCurve("curve names must be distinct")
        if self.kind == K3_THEOREM_A:
            if sorted((c.name, tuple(c.cls)) for c in curves) != [("C1", (1, 0)), ("C2", (0, 1))]:
                raise InvalidCurve("the Theorem A model declares exactly C1=(1,0), C2=(0,1)")
        # gram @ curve, as sparse integer rows: pairing numerators become dot products
        gram = self.lattice.gram
        duals = []
        for c in curves:
            w = gram @ c.cls.coords
            duals.append(tuple((i, int(x)) for i, x in enumerate(w) if x))
        object.__setattr__(self, "_duals", tuple(duals))

    def pairing_numerators(self, d):
        """Numerators of d.C for every declared curve, over d's common denominator."""
        d = self.lattice.check(d)
        num = d._num
        return [sum(num[i] * w for i, w in dual) for dual in self._duals]

    @property
    def rank(self):
        return self.lattice.rank

    def curve(self, name):
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def with_curves(self, curves):
        """Same model with the declared list replaced (order included)."""
        return SurfaceModel(self.lattice, tuple(curves), self.kind, self.proximity)

    def intersect(self, a, b):
        return self.lattice.intersect(a, b)

    def is_nef(self, d):
        """Non-negative against every declared curve."""
        return all(self.lattice.intersect(d, c.cls) >= 0 for c in self.curves)


def k3_theorem_a_model():
    lat = Lattice(RatMatrix(K3_GRAM), ("C1", "C2"))
    curves = (Curve("C1", DivisorClass((1, 0)), lat), Curve("C2", DivisorClass((0, 1)), lat))
    return SurfaceModel(lat, curves, K3_THEOREM_A)


def blowup_lattice(s):
    return Lattice(
        RatMatrix.diagonal([1] + [-1] * s),
        ("H",) + tuple(f"E{i}" for i in range(1, s + 1)),
    )


def _as_proximity(s, prox):
    if isinstance(prox, ProximityData):
        if prox.s != s:
            raise InvalidProximity(f"proximity data is for {prox.s} points, model has {s}")
        return prox
    return ProximityData(s, frozenset(prox or ()))


def strict_transform_class(i, prox):
    """E_i minus the classes of the points infinitely near p_i."""
    if not 1 <= i <= prox.s:
        raise IndexOutOfRange(f"point index {i} outside 1..{prox.s}")
    coords = [0] * (prox.s + 1)
    coords[i] = 1
    for j in prox.children(i):
        coords[j] -= 1
    return DivisorClass(coords)


def _strict_name(i, prox):
    kids = prox.children(i)
    return f"E{i}" + "".join(f"-E{j}" for j in kids)


def blowup_model(s, prox=None, extra_curves=()):
    """Blow-up of the plane at ``s`` points, basis (H, E1..Es).

    Declared curves are the strict transforms of the exceptional divisors
    followed by ``extra_curves`` (Curve objects or ``(name, coords)`` pairs).
    """
    prox = _as_proximity(s, prox)
    lat = blowup_lattice(s)
    curves = [Curve(_strict_name(i, prox), strict_transform_class(i, prox), lat) for i in range(1, s + 1)]
    for extra in extra_curves:
        if isinstance(extra, Curve):
            name, cls = extra.name, extra.cls
        else:
            name, cls = extra
        cls = as_class(cls)
        if len(cls) != s + 1:
            raise InvalidCurve(f"extra curve {name!r} has {len(cls)} coordinates, expected {s + 1}")
        curves.append(Curve(name, cls, lat))
    return SurfaceModel(lat, tuple(curves), BLOWUP, prox)


def minus_one_classes(s):
    """All classes dH - sum b_i E_i with C^2 = -1 and K.C = -1, for s <= 8.

    On the blow-up of at most eight general points these are exactly the
    negative curves (all of them (-1)-curves).
    """
    if not 0 <= s <= 8:
        raise ValueError("the (-1)-class list is finite only for s <= 8")
    found = [tuple(int(k == i) for k in range(s + 1)) for i in range(1, s + 1)]
    for d in range(1, 7):
        target_sum = 3 * d - 1
        target_sq = d * d + 1
        for b in _nonincreasing(s, target_sum, target_sq, d):
            for perm in sorted(set(permutations(b))):
                found.append((d,) + tuple(-x for x in perm))
    return [DivisorClass(c) for c in found]


def _nonincreasing(length, total, sq, cap):
    if length == 0:
        if total == 0 and sq == 0:
            yield ()
        return
    for x in range(min(cap, total), -1, -1):
        if x * x > sq:
            continue
        for rest in _nonincreasing(length - 1, total - x, sq - x * x, x):
            yield (x,) + rest


def minus_one_curves(s):
    """Extra curves for :func:`blowup_model`: the non-exceptional (-1)-classes."""
    out = []
    for cls in minus_one_classes(s):
        if cls.coords[0] == 0:
            continue
        out.append((_class_name(cls), cls))
    return out


def _class_name(cls):
    d = cls.coords[0]
    parts = [f"{d}H"]
    for i, c in enumerate(cls.coords[1:], start=1):
        if c == -1:
            parts.append(f"E{i}")
        elif c:
            parts.append(f"{-c}E{i}")
    return "-".join(parts)


def k3_cone_position(m, n):
    if m < 0 or n < 0:
        return ConePosition.NOT_PSEUDOEFFECTIVE
    if 2 * m >= n and 2 * n >= m:
        return ConePosition.NEF
    return ConePosition.PSEUDOEFFECTIVE_NOT_NEF


K3_NEF_GENERATORS = ((1, 1), (2, 1), (1, 2))


def k3_nef_representation(m, n):
    """(alpha, beta, gamma) >= 0 with alpha(1,1) + beta(2,1) + gamma(1,2) = (m, n).

    Uses at most two generators: gamma = 0 when m >= n, beta = 0 otherwise.
    """
    if k3_cone_position(m, n) is not ConePosition.NEF:
        raise NotNef(f"({m}, {n}) is not nef on the Theorem A lattice")
    if m >= n:
        return (2 * n - m, m - n, 0)
    return (2 * m - n, 0, n - m)


def k3_closed_form_decomposition(m, n):
    """Closed-form (P, N) on the K3 lattice for m, n >= 0."""
    if m < 0 or n < 0:
        raise NotPseudoeffective(f"({m}, {n}) is not pseudoeffective on the Theorem A lattice")
    if k3_cone_position(m, n) is ConePosition.NEF:
        return DivisorClass((m, n)), DivisorClass((0, 0))
    if m > 2 * n:
        return DivisorClass((2 * n, n)), DivisorClass((m - 2 * n, 0))
    return DivisorClass((m, 2 * m)), DivisorClass((0, n - 2 * m))


def pullback_extend(d, from_rank, to_rank):
    """Total transform to a further blow-up: pad with zeros."""
    d = as_class(d)
    if len(d) != from_rank:
        raise DimensionMismatch(f"class has length {len(d)}, expected {from_rank}")
    if to_rank < from_rank:
        raise DimensionMismatch(f"target rank {to_rank} is below source rank {from_rank}")
    return d.extended(to_rank)


def chain_configurations(s):
    """Every proximity structure on s points where each point has at most one parent."""
    choices = [[None] + list(range(1, j)) for j in range(1, s + 1)]

    def rec(j):
        if j > s:
            yield ()
            return
        for parent in choices[j - 1]:
            for rest in rec(j + 1):
                yield (((j, parent),) if parent else ()) + rest

    for pairs in rec(1):
        yield ProximityData(s, frozenset(pairs))


__all__ = [
    "BLOWUP",
    "K3_THEOREM_A",
    "LATTICE",
    "ConePosition",
    "ProximityData",
    "SurfaceModel",
    "blowup_lattice",
    "blowup_model",
    "chain_configurations",
    "k3_closed_form_decomposition",
    "k3_cone_position",
    "k3_nef_representation",
    "k3_theorem_a_model",
    "minus_one_classes",
    "minus_one_curves",
    "pullback_extend",
    "strict_transform_class",
]
