"""Region family descriptors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError

KINDS = ("halfplane", "bottomless", "axisrect", "disk", "hregion", "boxd")
PLANAR_KINDS = frozenset({"halfplane", "bottomless", "axisrect", "disk"})


def as_rational(value) -> Fraction:
    """Parse an int, Fraction, or decimal/ratio string into an exact Fraction.

    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    exactly 1/10 rather than the binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(repr(value))
    raise TypeError(f"cannot read {value!r} as a rational coordinate")


@dataclass(frozen=True)
class HalfspaceSpec:
    """Halfspace ``{x : normal . x <= beta}`` with the offset left free."""

    normal: tuple[Fraction, ...]

    def __post_init__(self):
        normal = tuple(as_rational(c) for c in self.normal)
        if not normal or all(c == 0 for c in normal):
            raise ValueError("halfspace normal must be a nonzero vector")
        object.__setattr__(self, "normal", normal)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def project(self, point) -> Fraction:
        if len(point) != len(self.normal):
            raise DimensionError(
                f"normal has dimension {len(self.normal)}, point has {len(point)}")
        return sum((a * b for a, b in zip(self.normal, point)), Fraction(0))


@dataclass(frozen=True)
class FamilyKind:
    kind: str
    halfspaces: tuple[HalfspaceSpec, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {KINDS}")
        hs = tuple(h if isinstance(h, HalfspaceSpec) else HalfspaceSpec(tuple(h))
                   for h in self.halfspaces)
        if self.kind == "hregion":
            if not hs:
                raise ValueError("an hregion family needs at least one halfspace")
            if len({h.dim for h in hs}) != 1:
                raise DimensionError("halfspace normals differ in dimension")
        elif hs:
            raise ValueError(f"family {self.kind!r} takes no halfspaces")
        object.__setattr__(self, "halfspaces", hs)

    @property
    def planar(self) -> bool:
        return self.kind in PLANAR_KINDS

    def check_dim(self, dim: int) -> None:
        if self.planar and dim != 2:
            raise DimensionError(f"family {self.kind!r} needs planar points, got d={dim}")
        if self.kind == "hregion" and self.halfspaces[0].dim != dim:
            raise DimensionError(
                f"halfspaces live in dimension {self.halfspaces[0].dim}, points in {dim}")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.halfspaces:
            out["halfspaces"] = [[coord_to_json(c) for c in h.normal] for h in self.halfspaces]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilyKind":
        return cls(data["kind"], tuple(HalfspaceSpec(tuple(h)) for h in data.get("halfspaces", ())))

    def __str__(self) -> str:
        if self.kind == "hregion":
            return f"hregion(h={len(self.halfspaces)})"
        return self.kind


def coord_to_json(c: Fraction):
    if c.denominator == 1:
        return c.numerator
    d = c.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        digits = 0
        den = c.denominator
        while den != 1 and (10 ** digits) % den:
            digits += 1
        scaled = c * 10 ** digits
        sign = "-" if scaled < 0 else ""
        s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}"
    return f"{c.numerator}/{c.denominator}"


HALFPLANE = FamilyKind("halfplane")
BOTTOMLESS = FamilyKind("bottomless")
AXIS_RECT = FamilyKind("axisrect")
DISK = FamilyKind("disk")
BOX = FamilyKind("boxd")


def hregion(*normals) -> FamilyKind:
    return FamilyKind("hregion", tuple(HalfspaceSpec(tuple(n)) for n in normals))
