"""Graded presentations, tensor products of presentations, and generator maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import GradingError
from .poly import DNEG, DPOS, GenSymbol, NCPoly, parse_poly, parse_word, word_to_text

__all__ = [
    "Presentation",
    "tensor_presentation",
    "GenMorphism",
    "tensor_morphism",
    "identity_morphism",
    "split_factors",
]


def split_factors(word) -> dict[int, tuple]:
    """Factor tag -> the symbols of that factor, in order."""
    out: dict[int, list] = {}
    for g in word:
        out.setdefault(g.factor, []).append(g)
    return {f: tuple(w) for f, w in out.items()}


@dataclass(frozen=True)
class Presentation:
    """Generators, integer grading and relations of a graded algebra.

    With ``opposite`` set, the algebra is the opposite of the one presented:
    relations are stored as for the underlying algebra and only products
    taken through :meth:`multiply` are reversed.
    """

    alphabet: tuple[GenSymbol, ...]
    grading: Mapping[GenSymbol, int]
    relations: tuple[NCPoly, ...]
    opposite: bool = False
    name: str = ""
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "grading", dict(self.grading))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet has repeated symbols")
        missing = [g for g in self.alphabet if g not in self.grading]
        if missing:
            raise ValueError(f"no degree for {missing[0]}")
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.alphabet)})
        for f in {g.factor for g in self.alphabet}:
            kinds = {g.kind for g in self.alphabet if g.factor == f}
            if (DPOS in kinds) != (DNEG in kinds):
                raise ValueError("D and D^-1 must appear together")
        for r in self.relations:
            for g in r.symbols():
                if g not in self._index:
                    raise ValueError(f"relation uses {g}, which is not a generator")
            if not r.is_homogeneous(self.grading):
                raise GradingError(f"relation {r} is not homogeneous")

    # ------------------------------------------------------------------
    @classmethod
    def trivial(cls) -> "Presentation":
        """The ground field: no generators, no relations."""
        return cls((), {}, (), name="k")

    @property
    def nfactors(self) -> int:
        return max((g.factor for g in self.alphabet), default=0)

    def index(self, g: GenSymbol) -> int:
        return self._index[g]

    def __contains__(self, g) -> bool:
        return g in self._index

    def degree(self, word) -> int:
        return sum(self.grading[g] for g in word)

    def poly_degrees(self, p: NCPoly) -> set[int]:
        return p.degrees(self.grading)

    def multiply(self, p: NCPoly, q: NCPoly) -> NCPoly:
        for g in p.symbols() | q.symbols():
            if g not in self._index:
                raise ValueError(f"{g} is not a generator of {self.name or 'this presentation'}")
        return q.mul(p) if self.opposite else p.mul(q)

    def gen(self, g: GenSymbol) -> NCPoly:
        if g not in self._index:
            raise ValueError(f"{g} is not a generator")
        return NCPoly.gen(g)

    def with_opposite(self, flag: bool = True) -> "Presentation":
        name = self.name
        if flag and not name.endswith("^op"):
            name = f"{name}^op"
        elif not flag and name.endswith("^op"):
            name = name[:-3]
        return Presentation(self.alphabet, self.grading, self.relations, flag, name)

    # ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "opposite": self.opposite,
            "alphabet": [word_to_text((g,)) for g in self.alphabet],
            "grading": {word_to_text((g,)): self.grading[g] for g in self.alphabet},
            "relations": [str(r) for r in self.relations],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        try:
            alphabet = [parse_word(s)[0] for s in obj["alphabet"]]
            grading = {parse_word(s)[0]: int(d) for s, d in obj["grading"].items()}
            relations = [parse_poly(s) for s in obj["relations"]]
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"malformed presentation: {exc}") from None
        return cls(alphabet, grading, relations, bool(obj.get("opposite", False)), obj.get("name", ""))


def tensor_presentation(P: Presentation, Q: Presentation) -> Presentation:
    """P (x) Q.  Q's factor tags are shifted past P's; cross-factor symbols
    commute through the word normal form, so no commutators are stored."""
    if P.opposite or Q.opposite:
        raise ValueError("tensor products of opposite presentations are not supported")
    off = P.nfactors
    alphabet = list(P.alphabet) + [g.retag(off) for g in Q.alphabet]
    grading = dict(P.grading)
    grading.update({g.retag(off): d for g, d in Q.grading.items()})
    relations = list(P.relations) + [r.retag(off) for r in Q.relations]
    name = " (x) ".join(n for n in (P.name, Q.name) if n)
    return Presentation(alphabet, grading, relations, False, name)


@dataclass(frozen=True)
class GenMorphism:
    """An algebra map given by the images of generators."""

    domain: Presentation
    codomain: Presentation
    images: Mapping[GenSymbol, NCPoly]
    name: str = ""

    def __post_init__(self):
        images = {g: (p if isinstance(p, NCPoly) else NCPoly.scalar(p)) for g, p in self.images.items()}
        object.__setattr__(self, "images", images)
        for g in self.domain.alphabet:
            if g not in images:
                raise ValueError(f"no image for generator {g}")
        for g, p in images.items():
            for s in p.symbols():
                if s not in self.codomain:
                    raise ValueError(f"image of {g} uses {s}, which is not in the codomain")

    def __call__(self, p: NCPoly) -> NCPoly:
        return self.apply(p)

    def apply(self, p: NCPoly) -> NCPoly:
        return p.substitute(self.images, opposite=self.codomain.opposite)

    def image(self, g: GenSymbol) -> NCPoly:
        return self.images[g]

    def compose(self, inner: "GenMorphism") -> "GenMorphism":
        """``self o inner``."""
        imgs = {g: self.apply(p) for g, p in inner.images.items()}
        return GenMorphism(inner.domain, self.codomain, imgs, f"{self.name} o {inner.name}")

    def grading_scale(self) -> int:
        """The integer s with deg(image g) == s * deg(g) for every generator.

        Raises GradingError for an inhomogeneous image or when no single s fits.
        """
        pairs = []
        for g in self.domain.alphabet:
            img = self.images[g]
            if img.is_zero():
                continue
            degs = img.degrees(self.codomain.grading)
            if len(degs) != 1:
                raise GradingError(f"image of {g} is not homogeneous: {img}")
            pairs.append((self.domain.grading[g], degs.pop()))
        scale = None
        for dd, dc in pairs:
            if dd == 0:
                if dc != 0:
                    raise GradingError("a degree-0 generator maps to nonzero degree")
                continue
            if dc % dd:
                raise GradingError("image degrees are not a fixed multiple of generator degrees")
            s = dc // dd
            if scale is None:
                scale = s
            elif s != scale:
                raise GradingError("image degrees are not a fixed multiple of generator degrees")
        return 0 if scale is None else scale

    def is_linear(self) -> bool:
        """Every image is a combination of single generators."""
        return all(all(len(w) == 1 for w in p.terms) for p in self.images.values())

    def power(self, k: int) -> "GenMorphism":
        """k-th iterate of an endomorphism; negative k needs a linear invertible map."""
        if self.domain.alphabet != self.codomain.alphabet:
            raise ValueError("powers need an endomorphism")
        if k < 0:
            return self.inverse().power(-k)
        out = identity_morphism(self.domain)
        for _ in range(k):
            out = self.compose(out)
        return out

    def inverse(self) -> "GenMorphism":
        """Inverse of a linear endomorphism, by blocks of generators it mixes."""
        from ..exactlinalg import Matrix

        if not self.is_linear():
            raise ValueError("only linear generator maps can be inverted here")
        gens = list(self.domain.alphabet)
        idx = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        entries = [Fraction(0)] * (n * n)
        for g, p in self.images.items():
            for w, c in p.terms.items():
                entries[idx[w[0]] * n + idx[g]] = c
        M = Matrix(n, n, entries)
        Minv = M.inverse()
        imgs = {}
        for j, g in enumerate(gens):
            imgs[g] = NCPoly({(gens[i],): Minv[i, j] for i in range(n) if Minv[i, j]})
        return GenMorphism(self.codomain, self.domain, imgs, f"{self.name}^-1")

    def same_images(self, other: "GenMorphism") -> bool:
        return all(self.images[g] == other.images[g] for g in self.domain.alphabet)


def identity_morphism(P: Presentation) -> GenMorphism:
    return GenMorphism(P, P, {g: NCPoly.gen(g) for g in P.alphabet}, "id")


def tensor_morphism(F: GenMorphism, G: GenMorphism) -> GenMorphism:
    """F (x) G on dom(F) (x) dom(G), landing in cod(F) (x) cod(G)."""
    dom = tensor_presentation(F.domain, G.domain)
    cod = tensor_presentation(F.codomain, G.codomain)
    din, cin = F.domain.nfactors, F.codomain.nfactors
    imgs = dict(F.images)
    for g, p in G.images.items():
        imgs[g.retag(din)] = p.retag(cin)
    return GenMorphism(dom, cod, imgs, f"{F.name} (x) {G.name}")


def generator_polys(gens: Iterable[GenSymbol]) -> list[NCPoly]:
    return [NCPoly.gen(g) for g in gens]
