"""Ambient spaces: products of projective spaces, Grassmannians, isotropic
Grassmannians and quadrics, cut by hypersurface sections.

Every factor carries one hyperplane class ``h<j>`` (j counts factors from 1),
a tautological subbundle ``U<j>`` and quotient ``Q<j>`` (on a quadric these
come from the ambient projective space).  Isotropic and bisymplectic Grassmannians are zero loci of
``wedge^2 U^*`` (once or twice) inside the ordinary Grassmannian.
"""
from dataclasses import dataclass, field
import re

from .partitions import binomial


class SpaceError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    kind: str            # "P", "Gr", "IGr", "I2Gr", "Quadric"
    k: int
    n: int               # ambient vector space dimension (m + 2 for Quadric(m))

    def __post_init__(self):
        if self.kind not in ("P", "Gr", "IGr", "I2Gr", "Quadric"):
            raise SpaceError(f"unknown factor kind {self.kind}")
        if not 1 <= self.k < self.n:
            raise SpaceError(f"bad factor parameters {self}")
        if self.dim < 0:
            raise SpaceError(f"{self} is empty")

    @property
    def grass_dim(self):
        return self.k * (self.n - self.k)

    @property
    def dim(self):
        if self.kind == "IGr":
            return self.grass_dim - binomial(self.k, 2)
        if self.kind == "I2Gr":
            return self.grass_dim - 2 * binomial(self.k, 2)
        if self.kind == "Quadric":
            return self.n - 2
        return self.grass_dim

    @property
    def index(self):
        """Fano index: K = O(-index) in terms of the Plucker class."""
        if self.kind == "IGr":
            return self.n - self.k + 1
        if self.kind == "I2Gr":
            return self.n - 2 * (self.k - 1)
        if self.kind == "Quadric":
            return self.n - 2
        return self.n

    def __str__(self):
        if self.kind == "P":
            return f"P{self.n - 1}"
        if self.kind == "Quadric":
            return f"Q{self.n - 2}"
        return f"{self.kind}({self.k},{self.n})"


def proj(n):
    return Factor("P", 1, n + 1)


def grass(k, n):
    return Factor("Gr", k, n)


def iso_grass(k, n):
    return Factor("IGr", k, n)


def quadric(m):
    return Factor("Quadric", 1, m + 2)


@dataclass(frozen=True)
class SpaceDescriptor:
    factors: tuple
    slices: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        sl = tuple(tuple(int(a) for a in s) for s in self.slices)
        for s in sl:
            if len(s) != len(self.factors) or any(a < 0 for a in s) or not any(s):
                raise SpaceError(f"bad slice multidegree {s}")
        object.__setattr__(self, "slices", sl)
        if self.dim < 0:
            raise SpaceError("negative dimension")

    @property
    def dim(self):
        return sum(f.dim for f in self.factors) - len(self.slices)

    @property
    def hyperplanes(self):
        return tuple(f"h{j}" for j in range(1, len(self.factors) + 1))

    def canonical_exponents(self):
        """K as a vector over the hyperplane classes (adjunction for slices)."""
        out = [-f.index for f in self.factors]
        for s in self.slices:
            out = [a + b for a, b in zip(out, s)]
        return tuple(out)

    def generator_names(self):
        """Tautological bundle names with ranks, e.g. {"U1": 2, "Q1": 4}."""
        out = {}
        for j, f in enumerate(self.factors, start=1):
            out[f"U{j}"] = f.k
            out[f"Q{j}"] = f.n - f.k
        return out

    def det_symbols(self):
        """det of each tautological generator as a hyperplane exponent vector."""
        out = {}
        for j, f in enumerate(self.factors, start=1):
            h = f"h{j}"
            out[f"det U{j}"] = {h: -1}
            out[f"det Q{j}"] = {h: 1}
        return out

    def __str__(self):
        text = "x".join(str(f) for f in self.factors)
        names = {1: "H", 2: "Q", 3: "C"}
        for s in self.slices:
            if len(self.factors) == 1 and s[0] in names:
                text += "∩" + names[s[0]]
            else:
                text += "∩O(" + ",".join(map(str, s)) + ")"
        return text

    def sort_key(self):
        return (self.dim, str(self))


_FACTOR_PATTERNS = [
    (re.compile(r"P\^?(\d+)$"), lambda m: proj(int(m[1]))),
    (re.compile(r"(?:Q\^?|Quadric\()(\d+)\)?$"), lambda m: quadric(int(m[1]))),
    (re.compile(r"Gr\((\d+),(\d+)\)$"), lambda m: grass(int(m[1]), int(m[2]))),
    (re.compile(r"IGr\((\d+),(\d+)\)$"), lambda m: iso_grass(int(m[1]), int(m[2]))),
    (re.compile(r"I2Gr\((\d+),(\d+)\)$"), lambda m: Factor("I2Gr", int(m[1]), int(m[2]))),
]

_SLICE_WORDS = {"H": 1, "Q": 2, "C": 3}


def parse_space(text):
    """Parse descriptors such as ``"P3xP3xP3"``, ``"Gr(2,6)∩Q"``,
    ``"Gr(4,8)∩H∩H"``, ``"IGr(4,9)"``, ``"I2Gr(3,8)"`` or ``"Q6"``.

    Slices are ``H``, ``Q``, ``C`` (degree 1, 2, 3 on a single factor) or
    ``O(a,b,..)`` multidegrees.  ``&`` may replace ``∩``.
    """
    text = str(text).replace(" ", "").replace("&", "∩").replace("×", "x")
    parts = text.split("∩")
    factor_text, slice_texts = parts[0], parts[1:]
    factors = []
    for chunk in re.split(r"x(?![^()]*\))", factor_text):
        for pat, build in _FACTOR_PATTERNS:
            m = pat.match(chunk)
            if m:
                factors.append(build(m))
                break
        else:
            raise SpaceError(f"cannot parse factor {chunk!r} in {text!r}")
    slices = []
    for s in slice_texts:
        s = re.sub(r"\d+$", "", s) if s[:1] in _SLICE_WORDS and s[1:].isdigit() else s
        if s in _SLICE_WORDS:
            if len(factors) != 1:
                raise SpaceError("H/Q/C slices need a single factor; use O(a,b,..)")
            slices.append((_SLICE_WORDS[s],))
            continue
        m = re.fullmatch(r"O\(([-\d,]+)\)", s)
        if not m:
            raise SpaceError(f"cannot parse slice {s!r}")
        slices.append(tuple(int(a) for a in m[1].split(",")))
    return SpaceDescriptor(tuple(factors), tuple(slices))
