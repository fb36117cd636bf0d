"""
Zariski decomposition engine.

:func:`decompose` runs the usual iterative procedure against a model's
declared negative curves: collect the curves D pairs negatively with, solve
for the coefficients making D - N orthogonal to them, and enlarge the set
whenever the remainder still fails to be nef.  :func:`verify_decomposition`
re-checks the defining axioms independently of how a candidate was found,
and :func:`scan_denominators` aggregates denominators over a box or family
of classes.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import (
    DecompositionError,
    DimensionMismatch,
    NegativeCoefficient,
    NotNegativeDefinite,
)
from .exact_linalg import format_rational, is_negative_definite, solve_linear
from .lattice import DivisorClass, as_class, restricted_gram
from .surface_models import K3_THEOREM_A, ConePosition, k3_cone_position

_AMBIGUITY = "D is not pseudoeffective or the declared curve list is incomplete"


@dataclass(frozen=True)
class Decomposition:
    """D = P + N with N = sum of ``coeff * curve`` over ``support``.

    ``support`` is sorted by curve name so that the result does not depend
    on the order in which the model lists its curves.
    """

    D: DivisorClass
    P: DivisorClass
    N: DivisorClass
    support: tuple = ()
    denominator: int = field(default=None)

    def __post_init__(self):
        if self.P + self.N != self.D:
            raise AssertionError("decomposition does not add up: P + N != D")
        for curve, coeff in self.support:
            if coeff < 0:
                raise AssertionError(f"negative coefficient on {curve.name}")
        den = zariski_denominator(self)
        if self.denominator is None:
            object.__setattr__(self, "denominator", den)
        elif self.denominator != den:
            raise AssertionError(f"stated denominator {self.denominator} != {den}")

    @property
    def is_integral(self):
        return self.denominator == 1

    def coefficients(self):
        return {curve.name: coeff for curve, coeff in self.support}

    def scaled(self, t):
        t = Fraction(t)
        return Decomposition(
            self.D * t, self.P * t, self.N * t, tuple((c, x * t) for c, x in self.support)
        )

    def to_dict(self, lattice=None):
        out = {
            "D": self.D.to_strings(),
            "P": self.P.to_strings(),
            "N": self.N.to_strings(),
            "support": [{"curve": c.name, "coefficient": format_rational(x)} for c, x in self.support],
            "denominator": self.denominator,
        }
        if lattice is not None:
            out["N_squared"] = format_rational(lattice.square(self.N))
        return out


def zariski_denominator(dec):
    """LCM of every denominator in P, N and the support coefficients."""
    return lcm(dec.P.denominator(), dec.N.denominator(), *(x.denominator for _, x in dec.support))


def _negative_part(model, D, S):
    L = model.lattice
    curves = [model.curves[i] for i in S]
    G = restricted_gram(L, curves)
    if not is_negative_definite(G):
        names = ", ".join(c.name for c in curves)
        raise NotNegativeDefinite(f"support {{{names}}} is not negative definite: {_AMBIGUITY}")
    rhs = [L.intersect(D, c.cls) for c in curves]
    x = solve_linear(G, rhs)
    for c, xi in zip(curves, x):
        if xi < 0:
            raise NegativeCoefficient(
                f"coefficient {format_rational(xi)} on {c.name} is negative: {_AMBIGUITY}"
            )
    return curves, x


def decompose(model, D):
    """Zariski decomposition of D relative to the model's declared curves."""
    L = model.lattice
    D = L.check(D)
    S = [i for i, v in enumerate(model.pairing_numerators(D)) if v < 0]
    if not S:
        return Decomposition(D, D, DivisorClass.zero(L.rank), ())
    for _ in range(len(model.curves)):
        curves, x = _negative_part(model, D, S)
        N = DivisorClass.zero(L.rank)
        for c, xi in zip(curves, x):
            if xi:
                N = N + c.cls * xi
        P = D - N
        in_s = set(S)
        bad = [i for i, v in enumerate(model.pairing_numerators(P)) if v < 0 and i not in in_s]
        if not bad:
            break
        S = sorted(S + bad)
    else:  # pragma: no cover - support strictly grows
        raise DecompositionError("support failed to stabilise; internal error")
    support = tuple(sorted(((c, xi) for c, xi in zip(curves, x) if xi > 0), key=lambda t: t[0].name))
    return Decomposition(D, P, N, support)


@dataclass
class Verification:
    """Outcome of :func:`verify_decomposition`; truthy when every clause holds."""

    ok: bool
    clause: str = None
    message: str = ""
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "ok": self.ok,
            "clause": self.clause,
            "message": self.message,
            "violations": [{"clause": c, "message": m} for c, m in self.violations],
        }


CLAUSES = {
    "a": "P + N = D",
    "b": "P is nef",
    "c": "N is effective",
    "d": "support of N is negative definite",
    "e": "P is orthogonal to every support curve",
}


def verify_decomposition(model, D, dec):
    """Check the decomposition axioms; the result names the first violated clause.

    Clauses are examined in the order a, c, d, e, b: the algebraic identity,
    then the structure of N, then nefness of P against the whole curve list.
    All violations are collected in ``violations``.
    """
    L = model.lattice
    D = L.check(D)
    P, N = L.check(dec.P), L.check(dec.N)
    out = []

    if P + N != D:
        out.append(("a", "P + N differs from D"))

    support = list(dec.support)
    rebuilt = DivisorClass.zero(L.rank)
    for curve, coeff in support:
        rebuilt = rebuilt + curve.cls * coeff
    if rebuilt != N:
        out.append(("c", "N is not the stated combination of support curves"))
    for curve, coeff in support:
        if coeff < 0:
            out.append(("c", f"coefficient {format_rational(coeff)} on {curve.name} is negative"))

    G = restricted_gram(L, [c for c, _ in support])
    if not is_negative_definite(G):
        out.append(("d", "intersection matrix of the support is not negative definite"))

    for curve, _ in support:
        v = L.intersect(P, curve.cls)
        if v != 0:
            out.append(("e", f"P·{curve.name} = {format_rational(v)} != 0"))

    for curve in model.curves:
        v = L.intersect(P, curve.cls)
        if v < 0:
            out.append(("b", f"P·{curve.name} = {format_rational(v)} < 0"))

    if not out:
        return Verification(True)
    clause, message = out[0]
    return Verification(False, clause, f"clause ({clause}) {CLAUSES[clause]}: {message}", out)


class Box:
    """Integer box: one inclusive ``(lo, hi)`` range per coordinate."""

    def __init__(self, ranges):
        self.ranges = tuple((int(lo), int(hi)) for lo, hi in ranges)

    @classmethod
    def cube(cls, rank, hi, lo=0):
        return cls([(lo, hi)] * rank)

    @property
    def description(self):
        return {"box": [list(r) for r in self.ranges]}

    def __iter__(self):
        for coords in product(*(range(lo, hi + 1) for lo, hi in self.ranges)):
            yield DivisorClass(coords)


class Family:
    """A sequence of classes with a description for reports.

    ``classes`` may be a generator; it is consumed lazily by a scan.
    """

    def __init__(self, classes, description):
        self._source = classes
        self.description = {"family": description}

    def __iter__(self):
        for c in self._source:
            yield as_class(c)

    @classmethod
    def multiples(cls, base, count):
        base = as_class(base)
        return cls([base * t for t in range(1, count + 1)], f"t*({','.join(base.to_strings())}) for t=1..{count}")

    @classmethod
    def affine(cls, start, step, count):
        start, step = as_class(start), as_class(step)
        return cls(
            [start + step * t for t in range(1, count + 1)],
            f"({','.join(start.to_strings())})+t*({','.join(step.to_strings())}) for t=1..{count}",
        )


@dataclass
class ScanReport:
    description: dict
    histogram: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    attempted: int = 0
    skipped: dict = field(default_factory=dict)

    @property
    def max_denominator(self):
        return max(self.histogram, default=1)

    @property
    def decomposed(self):
        return sum(self.histogram.values())

    def to_dict(self):
        return {
            "description": self.description,
            "attempted": self.attempted,
            "decomposed": self.decomposed,
            "max_denominator": self.max_denominator,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "skipped": dict(sorted(self.skipped.items())),
            "witnesses": [w.to_strings() for w in self.witnesses],
        }


def k3_pseudoeffective(d):
    m, n = d.coords
    return k3_cone_position(m, n) is not ConePosition.NOT_PSEUDOEFFECTIVE


def scan_denominators(model, box, accept=None, max_witnesses=10):
    """Decompose every accepted class in ``box`` and tally the denominators.

    ``box`` is a :class:`Box`, :class:`Family` or a list of ranges.  When
    ``accept`` is None the K3 model filters by its cone test and other
    models attempt every class.  Classes the engine rejects are counted
    under ``skipped`` by error type.
    """
    if not isinstance(box, (Box, Family)):
        box = Box(box)
    if accept is None and model.kind == K3_THEOREM_A:
        accept = k3_pseudoeffective
    hist = Counter()
    skipped = Counter()
    witnesses = {}
    attempted = 0
    for d in box:
        if len(d) != model.rank:
            raise DimensionMismatch(f"class of length {len(d)} for a rank {model.rank} model")
        if accept is not None and not accept(d):
            continue
        attempted += 1
        try:
            den = decompose(model, d).denominator
        except DecompositionError as exc:
            skipped[type(exc).__name__] += 1
            continue
        hist[den] += 1
        bucket = witnesses.setdefault(den, [])
        if len(bucket) < max_witnesses:
            bucket.append(d)
    top = max(hist, default=1)
    return ScanReport(box.description, dict(hist), witnesses.get(top, []), attempted, dict(skipped))
