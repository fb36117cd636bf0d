"""
Neron-Severi lattices, divisor classes and negative curves.

A :class:`Lattice` is a rank plus an integral symmetric Gram matrix (the
intersection form) and a name for each basis vector.  A
:class:`DivisorClass` is a rational coordinate vector in that basis.  A
:class:`Curve` is a named integral class with negative self-intersection.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch, InvalidCurve
from .exact_linalg import RatMatrix, as_vector, determinant, format_rational


class DivisorClass:
    """Immutable rational coordinate vector.

    Stored as integer numerators over one positive common denominator
    (kept reduced), which makes equality and pairings pure integer work.
    Supports ``+``, ``-``, negation and multiplication by rationals.
    """

    __slots__ = ("_num", "_den", "_coords")

    def __init__(self, coords):
        coords = tuple(coords)
        if all(type(c) is int for c in coords):
            self._num = coords
            self._den = 1
            self._coords = None
            return
        vals = as_vector(coords)
        den = lcm(*(v.denominator for v in vals)) if vals else 1
        self._num = tuple(v.numerator * (den // v.denominator) for v in vals)
        self._den = den
        self._coords = vals

    @classmethod
    def _make(cls, num, den):
        g = gcd(den, *num)
        if g != 1:
            num = tuple(x // g for x in num)
            den //= g
        self = object.__new__(cls)
        self._num = num
        self._den = den
        self._coords = None
        return self

    @classmethod
    def zero(cls, rank):
        return cls._make((0,) * rank, 1)

    @classmethod
    def basis_vector(cls, rank, i):
        return cls._make(tuple(int(j == i) for j in range(rank)), 1)

    @property
    def coords(self):
        if self._coords is None:
            self._coords = tuple(Fraction(x, self._den) for x in self._num)
        return self._coords

    @property
    def rank(self):
        return len(self._num)

    def __len__(self):
        return len(self._num)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _aligned(self, other):
        if len(other._num) != len(self._num):
            raise DimensionMismatch(
                f"classes of length {len(self._num)} and {len(other._num)}"
            )
        if self._den == other._den:
            return self._num, other._num, self._den
        den = lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return tuple(x * fa for x in self._num), tuple(x * fb for x in other._num), den

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        a, b, den = self._aligned(other)
        return DivisorClass._make(tuple(x + y for x, y in zip(a, b)), den)

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        a, b, den = self._aligned(other)
        return DivisorClass._make(tuple(x - y for x, y in zip(a, b)), den)

    def __neg__(self):
        return DivisorClass._make(tuple(-x for x in self._num), self._den)

    def __mul__(self, scalar):
        if isinstance(scalar, (DivisorClass, float)):
            return NotImplemented
        scalar = Fraction(scalar)
        p, q = scalar.numerator, scalar.denominator
        return DivisorClass._make(tuple(x * p for x in self._num), self._den * q)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return "DivisorClass((" + ", ".join(format_rational(c) for c in self.coords) + "))"

    def is_zero(self):
        return not any(self._num)

    def is_integral(self):
        return self._den == 1

    def denominator(self):
        """LCM of the coordinate denominators."""
        return self._den

    def extended(self, to_rank):
        """Append zeros up to ``to_rank`` coordinates."""
        if to_rank < len(self._num):
            raise DimensionMismatch(f"cannot shrink a class of length {len(self._num)} to {to_rank}")
        return DivisorClass._make(self._num + (0,) * (to_rank - len(self._num)), self._den)

    def to_strings(self):
        return [format_rational(c) for c in self.coords]


def as_class(value):
    return value if isinstance(value, DivisorClass) else DivisorClass(value)


class Lattice:
    """Rank, integral symmetric Gram matrix and basis labels."""

    __slots__ = ("gram", "basis_names", "_entries", "_rank")

    def __init__(self, gram, basis_names=None):
        gram = gram if isinstance(gram, RatMatrix) else RatMatrix(gram)
        if not gram.is_square():
            raise DimensionMismatch(f"Gram matrix must be square, got {gram.shape}")
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        if not gram.is_integral():
            raise ValueError("Gram matrix must have integer entries")
        n = gram.nrows
        if n < 1:
            raise ValueError("lattice rank must be positive")
        if basis_names is None:
            basis_names = [f"v{i}" for i in range(n)]
        basis_names = tuple(str(b) for b in basis_names)
        if len(basis_names) != n:
            raise ValueError(f"expected {n} basis names, got {len(basis_names)}")
        if len(set(basis_names)) != n:
            raise ValueError("basis names must be distinct")
        self.gram = gram
        self.basis_names = basis_names
        self._rank = n
        # Sparse integer copy of the form; pairings are the hot loop.
        self._entries = tuple(
            (i, j, int(gram[i, j])) for i in range(n) for j in range(n) if gram[i, j] != 0
        )

    @property
    def rank(self):
        return self._rank

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.gram == other.gram and self.basis_names == other.basis_names

    def __hash__(self):
        return hash((self.gram, self.basis_names))

    def __repr__(self):
        return f"Lattice({self.gram!r}, basis_names={list(self.basis_names)!r})"

    def check(self, d):
        if d.__class__ is not DivisorClass:
            d = DivisorClass(d)
        if len(d._num) != self._rank:
            raise DimensionMismatch(f"class of length {len(d)} in a rank {self.rank} lattice")
        return d

    def intersect(self, a, b):
        if a.__class__ is not DivisorClass or len(a._num) != self._rank:
            a = self.check(a)
        if b.__class__ is not DivisorClass or len(b._num) != self._rank:
            b = self.check(b)
        xa, xb = a._num, b._num
        total = 0
        for i, j, g in self._entries:
            total += xa[i] * g * xb[j]
        den = a._den * b._den
        return Fraction(total) if den == 1 else Fraction(total, den)

    def square(self, a):
        return self.intersect(a, a)

    def format_class(self, d, sep="·"):
        """Human-readable ``2·C1 + 1·C2`` rendering, ``0`` for the zero class."""
        d = self.check(d)
        terms = []
        for name, c in zip(self.basis_names, d.coords):
            if c == 0:
                continue
            mag = format_rational(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{mag}{sep}{name}"))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


@dataclass(frozen=True)
class Curve:
    """A named integral class with negative self-intersection on ``lattice``."""

    name: str
    cls: DivisorClass
    lattice: Lattice = field(repr=False, compare=True)

    def __post_init__(self):
        cls = as_class(self.cls)
        object.__setattr__(self, "cls", cls)
        if len(cls) != self.lattice.rank:
            raise InvalidCurve(
                f"curve {self.name!r} has {len(cls)} coordinates, lattice rank is {self.lattice.rank}"
            )
        if not cls.is_integral():
            raise InvalidCurve(f"curve {self.name!r} must have integer coordinates")
        sq = self.lattice.square(cls)
        if sq >= 0:
            raise InvalidCurve(
                f"curve {self.name!r} has self-intersection {format_rational(sq)}; "
                "a negative curve needs C^2 < 0"
            )

    @property
    def square(self):
        return self.lattice.square(self.cls)


def intersect(L, a, b):
    """The intersection number a^T * gram * b."""
    return L.intersect(a, b)


def restricted_gram(L, curves):
    """Gram matrix of the pairings among ``curves``."""
    classes = [L.check(c.cls) for c in curves]
    n = len(classes)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = L.intersect(classes[i], classes[j])
    return RatMatrix(rows, ncols=n)


def discriminant(L):
    """Determinant of the intersection form."""
    return determinant(L.gram)
