"""Right Zhang twist of a graded product by a graded automorphism."""
from __future__ import annotations

from typing import Mapping

from ..errors import GradingError
from .poly import GenSymbol, NCPoly
from .presentation import GenMorphism

__all__ = ["zhang_twisted_multiply", "ZhangTwist"]


class ZhangTwist:
    """``r o s = r * phi^deg(r)(s)`` for homogeneous r, extended bilinearly.

    Powers of phi are cached; negative powers need phi to be linear on generators.
    """

    def __init__(self, phi: GenMorphism, grading: Mapping[GenSymbol, int] | None = None):
        if phi.grading_scale() not in (0, 1):
            raise GradingError("the twisting map must preserve degrees")
        self.phi = phi
        self.grading = dict(grading) if grading is not None else dict(phi.domain.grading)
        self._powers: dict[int, GenMorphism] = {}

    def power(self, k: int) -> GenMorphism:
        if k not in self._powers:
            self._powers[k] = self.phi.power(k)
        return self._powers[k]

    def multiply(self, p: NCPoly, q: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for d, part in p.homogeneous_parts(self.grading).items():
            out = out + part.mul(self.power(d).apply(q) if d else q)
        return out

    def product(self, *factors: NCPoly) -> NCPoly:
        """Left-nested twisted product of several elements."""
        acc = NCPoly.one()
        for f in factors:
            acc = self.multiply(acc, f)
        return acc


def zhang_twisted_multiply(p: NCPoly, q: NCPoly, phi: GenMorphism, grading=None) -> NCPoly:
    return ZhangTwist(phi, grading).multiply(p, q)
