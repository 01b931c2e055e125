"""A polynomial ring modulo a defining ideal, localized at the origin."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPrimaryToOrigin, NotZeroDimensional
from .groebner import GroebnerBasis, buchberger
from .poly import PolyRing, Polynomial, frobenius_power_poly


@dataclass(frozen=True)
class LocalRingPresentation:
    ring: PolyRing
    defining: tuple
    dimension: int
    dimension_source: str = "computed"

    @classmethod
    def create(cls, ring: PolyRing, defining=(), dimension: int | None = None):
        defining = tuple(f for f in defining if f.terms)
        for f in defining:
            if not f.ring.same_ambient(ring):
                raise ValueError("defining polynomial lives in a different ring")
            if not ring.spec.is_zero(f.constant_term()):
                raise ValueError(f"defining polynomial {f} does not vanish at the origin")
        if dimension is None:
            gb = buchberger(list(defining), ring=ring)
            return cls(ring, defining, gb.krull_dimension(), "computed")
        if dimension < 0:
            raise ValueError("dimension must be non-negative")
        return cls(ring, defining, dimension, "user")

    @property
    def spec(self):
        return self.ring.spec

    @property
    def p(self) -> int:
        return self.ring.spec.p

    @property
    def variables(self) -> tuple:
        return self.ring.variables

    def with_order(self, order) -> "LocalRingPresentation":
        ring = self.ring.with_order(order)
        return LocalRingPresentation(
            ring,
            tuple(f.with_ring(ring) for f in self.defining),
            self.dimension,
            self.dimension_source,
        )

    def polys(self, gens) -> list:
        """Coerce generator strings or polynomials into this ring."""
        out = []
        for g in gens:
            if isinstance(g, str):
                g = self.ring(g)
            elif g.ring != self.ring:
                g = g.with_ring(self.ring)
            out.append(g)
        return out

    def groebner(self, gens, seed: GroebnerBasis | None = None) -> GroebnerBasis:
        """Gröbner basis of the defining ideal plus ``gens``."""
        gens = self.polys(gens)
        if seed is not None:
            return buchberger(gens, seed=seed)
        return buchberger(list(self.defining) + gens, ring=self.ring)

    def bracket_power(self, gens, e: int) -> list:
        return [frobenius_power_poly(g, e) for g in self.polys(gens)]

    def colength(self, gens) -> int:
        return self.groebner(gens).colength()

    def primary_basis(self, gens) -> GroebnerBasis:
        """Basis of defining + gens, checked zero-dimensional and primary to the origin."""
        gb = self.groebner(gens)
        if gb.pure_power_bounds() is None:
            raise NotZeroDimensional("the ideal is not zero-dimensional")
        if not gb.is_primary_to_origin():
            raise NotPrimaryToOrigin(
                "the ideal has zeros away from the origin; local length is not the colength"
            )
        return gb

    def __str__(self):
        base = f"{self.spec}[{','.join(self.variables)}]"
        if self.defining:
            base += "/(" + ", ".join(str(f) for f in self.defining) + ")"
        return base


def coerce_polys(R: LocalRingPresentation, gens) -> list[Polynomial]:
    return R.polys(gens)
