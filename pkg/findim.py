"""
Finite-dimensional modules
Formal characters of V(nu) by Freudenthal's formula, Weyl dimensions, duals,
tensor products and dim (End V)_0
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

from errors import InternalInconsistencyError, PreconditionError
from rootsys import RootSystem, Weight, pairing


@dataclass
class Character:
    """Finite multiset weight -> multiplicity"""
    mults: Dict[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        self.mults = {mu: int(m) for mu, m in self.mults.items() if m}

    def __getitem__(self, mu: Weight) -> int:
        return self.mults.get(mu, 0)

    def __len__(self) -> int:
        return len(self.mults)

    def dimension(self) -> int:
        return sum(self.mults.values())

    def support(self) -> List[Weight]:
        return sorted(self.mults, key=Weight.sort_key)

    def items(self):
        return ((mu, self.mults[mu]) for mu in self.support())


def require_dominant_integral(nu: Weight):
    if not nu.is_integral() or any(c < 0 for c in nu.coords):
        raise PreconditionError(f"highest weight {nu} is not dominant integral")


def weyl_dim(rs: RootSystem, nu: Weight) -> int:
    """prod over positive roots of <nu + rho, alpha^vee> / <rho, alpha^vee>"""
    require_dominant_integral(nu)
    value = Fraction(1)
    for alpha in rs.positive_roots:
        value *= pairing(rs, nu + rs.rho, alpha) / pairing(rs, rs.rho, alpha)
    if value.denominator != 1:
        raise InternalInconsistencyError(f"Weyl dimension of {nu} is not an integer: {value}")
    return int(value)


def dominant_weights_below(rs: RootSystem, nu: Weight) -> List[Weight]:
    """Dominant mu with nu - mu in the positive root cone, ordered by height of nu - mu"""
    found = {nu}
    frontier = [nu]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha in rs.positive_roots:
                lower = mu - alpha.weight
                if lower not in found and all(c >= 0 for c in lower.coords):
                    found.add(lower)
                    nxt.append(lower)
        frontier = nxt
    return sorted(found, key=lambda mu: (rs.height(nu - mu), mu.sort_key()))


@lru_cache(maxsize=None)
def _dominant_multiplicities(rs: RootSystem, nu: Weight) -> Dict[Weight, int]:
    dominants = dominant_weights_below(rs, nu)
    known = set(dominants)
    mult: Dict[Weight, int] = {nu: 1}
    top = rs.inner(nu + rs.rho, nu + rs.rho)

    for mu in dominants[1:]:
        total = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                shifted = mu + alpha.weight * k
                conjugate = rs.dominant_conjugate(shifted)
                if conjugate not in known:
                    break
                total += mult[conjugate] * rs.inner(shifted, alpha.weight)
                k += 1
        value = 2 * total / (top - rs.inner(mu + rs.rho, mu + rs.rho))
        if value.denominator != 1 or value < 0:
            raise InternalInconsistencyError(f"Freudenthal recursion produced {value} at {mu}")
        mult[mu] = int(value)
    return mult


@lru_cache(maxsize=None)
def _character(rs: RootSystem, nu: Weight) -> Dict[Weight, int]:
    full: Dict[Weight, int] = {}
    for mu, m in _dominant_multiplicities(rs, nu).items():
        if m:
            for image in rs.orbit(mu):
                full[image] = m
    return full


def character(rs: RootSystem, nu: Weight) -> Character:
    """Formal character of V(nu), nu dominant integral"""
    require_dominant_integral(nu)
    if nu.rank != rs.rank:
        raise PreconditionError(f"highest weight {nu} has the wrong rank for {rs.name}")
    return Character(dict(_character(rs, nu)))


def dual(ch: Character) -> Character:
    return Character({-mu: m for mu, m in ch.mults.items()})


def tensor(first: Character, second: Character) -> Character:
    """Convolution of multiplicity maps"""
    product = Counter()
    for mu, m in first.mults.items():
        for nu, n in second.mults.items():
            product[mu + nu] += m * n
    return Character(dict(product))


def end_zero_dim(ch: Character) -> int:
    """dim (End V)_0 = sum of squared weight multiplicities"""
    return sum(m * m for m in ch.mults.values())
