"""
Constructions that force or rule out nonintegral Zariski decompositions.

* :func:`case1_witness` -- for a (-k)-curve C (k >= 2) on a blow-up of
  distinct points, build an integral D = A + eC whose negative part is a
  nonintegral multiple of C.
* :func:`case2_witness` -- two infinitely near points: D = 3H - E1 - 2E2 has
  N = (E1 - E2)/2, and the same holds after blowing up more points.
* :func:`negativity_bound` -- d * d! * |discriminant|.
* :func:`k3_only_negative_curves_scan` -- exhaustive check that C1 and C2
  are the only irreducible negative classes in a box on the K3 lattice.

The auxiliary class A in the case-1 search is never certified ample; only
A.C > 0 and the sign pattern of its coordinates are enforced.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import ExhaustedAdjustments, InvalidCurve, InvalidModel, InvalidRank
from .lattice import Curve, DivisorClass, as_class
from .surface_models import (
    BLOWUP,
    blowup_model,
    k3_theorem_a_model,
    pullback_extend,
)
from .zariski import Decomposition


@dataclass(frozen=True)
class Case1Witness:
    curve: Curve
    A: DivisorClass
    e: int
    D: DivisorClass
    a: Fraction
    adjustment_trace: tuple = ()

    @property
    def k(self):
        return -int(self.curve.square)

    def check(self):
        """Re-assert the defining identities; returns self."""
        L = self.curve.lattice
        C = self.curve.cls
        assert self.D == self.A + C * self.e
        dc = L.intersect(self.D, C)
        assert dc < 0
        assert self.a == dc / L.square(C)
        assert self.a.denominator != 1
        return self

    def to_dict(self):
        return {
            "curve": self.curve.name,
            "curve_class": self.curve.cls.to_strings(),
            "k": self.k,
            "A": self.A.to_strings(),
            "e": self.e,
            "D": self.D.to_strings(),
            "a": str(self.a),
            "adjustment_trace": list(self.adjustment_trace),
        }


def _curve_shape(model, C):
    L = model.lattice
    c = [int(x) for x in C.cls.coords]
    d = c[0]
    b = [-x for x in c[1:]]
    k = -int(L.square(C.cls))
    if k < 2:
        raise InvalidCurve(f"{C.name} has square {-k}; need a (-k)-curve with k >= 2")
    if d <= 0 or any(x < 0 for x in b) or not any(b):
        raise InvalidCurve(f"{C.name} must be dH - sum b_i E_i with d > 0 and b_i >= 0")
    return d, b, k


def case1_witness(model, C):
    """Deterministic search for an integral D = A + eC with nonintegral N.

    A starts as d'H - sum of E_i over the support of C, with d' minimal so
    that A.C > 0, and e is always the least positive integer with
    (A + eC).C < 0.  While k divides sum(a_i b_i) - d d' the candidates
    A + H and then A + H - E_i (support order) are tried.
    """
    if model.kind != BLOWUP or model.proximity is None:
        raise InvalidModel("case 1 needs a blow-up model")
    if model.proximity.prox:
        raise InvalidModel("case 1 needs distinct points (no proximities)")
    if not isinstance(C, Curve):
        C = Curve("C", as_class(C), model.lattice)
    L = model.lattice
    d, b, k = _curve_shape(model, C)
    s = len(b)
    support = [i for i in range(s) if b[i] > 0]

    d0 = sum(b[i] for i in support) // d + 1
    a0 = [1 if i in support else 0 for i in range(s)]

    def make(dprime, a):
        return DivisorClass([dprime] + [-x for x in a])

    def residue(dprime, a):
        return sum(a[i] * b[i] for i in range(s)) - d * dprime

    candidates = [("initial", d0, a0), ("add H", d0 + 1, a0)]
    for i in support:
        bumped = list(a0)
        bumped[i] += 1
        candidates.append((f"add H - E{i + 1}", d0 + 1, bumped))

    trace = []
    for label, dprime, a in candidates:
        r = residue(dprime, a)
        divisible = r % k == 0
        trace.append(f"{label}: A = {L.format_class(make(dprime, a), sep='')}, "
                     f"sum(a*b) - d*d' = {r}, {'divisible' if divisible else 'not divisible'} by {k}")
        if divisible:
            continue
        A = make(dprime, a)
        ac = L.intersect(A, C.cls)
        assert ac > 0
        e = int(ac // k) + 1
        D = A + C.cls * e
        a_coef = Fraction(e) + Fraction(r, k)
        assert a_coef == L.intersect(D, C.cls) / L.square(C.cls)
        return Case1Witness(C, A, e, D, a_coef, tuple(trace)).check()
    raise ExhaustedAdjustments(
        f"k = {k} divides d and every b_i, so k^2 would divide k; impossible for a genuine curve"
    )


def case1_model(C, s=None):
    """Blow-up of distinct points declaring E1..Es and the extra curve C."""
    C = as_class(C)
    s = len(C) - 1 if s is None else s
    return blowup_model(s, (), [("C", pullback_extend(C, len(C), s + 1))])


def case2_witness(s):
    """Model, divisor and expected decomposition for two infinitely near points."""
    if s < 2:
        raise InvalidRank("the infinitely near example needs at least two points")
    model = blowup_model(s, {(2, 1)})
    rank = s + 1
    D = pullback_extend(DivisorClass((3, -1, -2)), 3, rank)
    E = model.curves[0]
    assert E.cls == pullback_extend(DivisorClass((0, 1, -1)), 3, rank)
    half = Fraction(1, 2)
    N = E.cls * half
    P = pullback_extend(DivisorClass((3, Fraction(-3, 2), Fraction(-3, 2))), 3, rank)
    expected = Decomposition(D, P, N, ((E, half),))
    return model, D, expected


@dataclass(frozen=True)
class BoundInput:
    d: int
    delta: int

    def __post_init__(self):
        if self.d < 1 or self.delta < 1:
            raise ValueError("d and |delta| must both be at least 1")


def negativity_bound(b_in):
    """Upper bound d * d! * |delta| on the negativity of curves."""
    return b_in.d * factorial(b_in.d) * b_in.delta


@dataclass
class NegativeCurveScan:
    bound: int
    negative_classes: list = field(default_factory=list)
    irreducible: list = field(default_factory=list)
    endpoints: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "bound": self.bound,
            "negative_classes": len(self.negative_classes),
            "irreducible": [list(c) for c in self.irreducible],
            "endpoints": dict(sorted(self.endpoints.items())),
        }


def _reduce_k3(m, n):
    """Peel off basis curves a class pairs negatively with.

    Returns where the peeling stops: "C1", "C2", "non_effective" or
    "nef_remainder" (a class with both pairings >= 0).
    """
    while True:
        if (m, n) == (1, 0):
            return "C1"
        if (m, n) == (0, 1):
            return "C2"
        if m < 0 or n < 0:
            return "non_effective"
        if -2 * m + 4 * n < 0:
            m -= 1
        elif 4 * m - 2 * n < 0:
            n -= 1
        else:
            return "nef_remainder"


def k3_only_negative_curves_scan(B):
    """Check every (m, n) in [0, B]^2 with negative square on the K3 lattice.

    Each such class must pair negatively with C1 or C2 (otherwise it could be
    a new irreducible negative curve), and peeling off the offending curve
    must end at C1, C2, a non-effective class or a class with no negative
    pairing.  Only C1 and C2 themselves survive as irreducible candidates.
    """
    if B < 1:
        raise ValueError("bound must be at least 1")
    L = k3_theorem_a_model().lattice
    report = NegativeCurveScan(B)
    ends = {}
    for m in range(B + 1):
        for n in range(B + 1):
            if m + n == 0:
                continue
            d = DivisorClass((m, n))
            if L.square(d) >= 0:
                continue
            report.negative_classes.append((m, n))
            p1 = L.intersect(d, (1, 0))
            p2 = L.intersect(d, (0, 1))
            if p1 >= 0 and p2 >= 0:
                raise AssertionError(f"({m}, {n}) has negative square but pairs >= 0 with C1 and C2")
            end = _reduce_k3(m, n)
            ends[end] = ends.get(end, 0) + 1
            if end in ("C1", "C2") and (m, n) in ((1, 0), (0, 1)):
                report.irreducible.append((m, n))
    report.endpoints = ends
    return report
