"""
Linkage combinatorics for a parameter lambda
Integral root subsystem, integral Weyl group, dot stabilizer, dominance and minimality
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from errors import PreconditionError
from rootsys import Root, RootSystem, Weight, WeylElt, WeylGroup, dot_action, pairing, weyl_group


ORDER_VARIANTS = ('root', 'dominant')


@dataclass(frozen=True)
class IntegralData:
    """Delta_lambda, its simple system, W_lambda and the dot stabilizer of lambda"""
    lam: Weight
    integral_roots: Tuple[Root, ...]
    integral_simples: Tuple[Root, ...]
    stabilizer: Tuple[WeylElt, ...]
    group: WeylGroup = field(compare=False, repr=False)

    @property
    def w_lambda_elements(self) -> List[WeylElt]:
        return self.group.elements

    @property
    def positive_integral_roots(self) -> List[Root]:
        return [r for r in self.integral_roots if r.is_positive]

    @property
    def rank(self) -> int:
        return len(self.integral_simples)


def _simple_system(positive: Sequence[Root]) -> Tuple[Root, ...]:
    """Positive roots that are not a sum of two positive roots of the subsystem"""
    sums = {
        tuple(a + b for a, b in zip(x.simple, y.simple))
        for i, x in enumerate(positive) for y in positive[i + 1:]
    }
    simples = [r for r in positive if r.simple not in sums]
    # simple roots of the ambient system come out in their usual order
    return tuple(sorted(simples, key=lambda r: (r.height, tuple(-c for c in r.simple))))


@lru_cache(maxsize=None)
def integral_data(rs: RootSystem, lam: Weight) -> IntegralData:
    """Integral roots, integral Weyl group and stabilizer for lambda"""
    if lam.rank != rs.rank:
        raise PreconditionError(f"weight {lam} has {lam.rank} coordinates, {rs.name} needs {rs.rank}")
    integral = tuple(r for r in rs.roots if pairing(rs, lam, r).denominator == 1)
    simples = _simple_system([r for r in integral if r.is_positive])
    group = weyl_group(rs, simples)
    stabilizer = tuple(w for w in group.elements if dot_action(w, lam) == lam)
    return IntegralData(
        lam=lam,
        integral_roots=integral,
        integral_simples=simples,
        stabilizer=stabilizer,
        group=group,
    )


def failing_root(rs: RootSystem, lam: Weight) -> Optional[Root]:
    """First positive integral root on which lambda + rho pairs negatively"""
    for root in integral_data(rs, lam).positive_integral_roots:
        if pairing(rs, lam + rs.rho, root) < 0:
            return root
    return None


def is_dominant(rs: RootSystem, lam: Weight) -> bool:
    """<lambda + rho, alpha^vee> in N for every positive integral root alpha"""
    return failing_root(rs, lam) is None


def is_general_position(rs: RootSystem, lam: Weight) -> bool:
    return not integral_data(rs, lam).integral_simples


def is_regular(rs: RootSystem, lam: Weight) -> bool:
    """Trivial dot stabilizer in W_lambda"""
    return len(integral_data(rs, lam).stabilizer) == 1


def require_dominant(rs: RootSystem, lam: Weight):
    root = failing_root(rs, lam)
    if root is not None:
        raise PreconditionError(
            f"lambda = {lam} is not dominant: <lambda + rho, {root}^vee> = {pairing(rs, lam + rs.rho, root)}")


def require_same_coset(lam: Weight, mu: Weight):
    if not (mu - lam).is_integral():
        raise PreconditionError(f"mu = {mu} is not in lambda + P for lambda = {lam}")


def dominant_representative(rs: RootSystem, lam: Weight, mu: Weight) -> Weight:
    """The dot-dominant element of the W_lambda orbit of mu"""
    simples = integral_data(rs, lam).integral_simples
    current = mu
    while True:
        gamma = next((g for g in simples if pairing(rs, current + rs.rho, g) < 0), None)
        if gamma is None:
            return current
        current = rs.dot_reflect(current, gamma)


def order_leq(rs: RootSystem, nu: Weight, mu: Weight, variant: str = 'root') -> bool:
    """
    nu <= mu. 'root': mu - nu is a nonnegative integer combination of positive roots;
    'dominant': mu - nu is a dominant integral weight.
    """
    diff = mu - nu
    if variant == 'root':
        return rs.in_positive_root_cone(diff)
    if variant == 'dominant':
        return all(c.denominator == 1 and c >= 0 for c in diff.coords)
    raise PreconditionError(f"unknown order variant '{variant}'")


def stabilizer_orbit(rs: RootSystem, lam: Weight, mu: Weight) -> List[Weight]:
    """{w.mu : w in the dot stabilizer of lambda}"""
    return sorted({dot_action(w, mu) for w in integral_data(rs, lam).stabilizer}, key=Weight.sort_key)


def is_minimal(rs: RootSystem, lam: Weight, mu: Weight, variant: str = 'root') -> bool:
    """mu is the least element of its orbit under the dot stabilizer of lambda"""
    require_dominant(rs, lam)
    require_same_coset(lam, mu)
    return all(order_leq(rs, mu, other, variant) for other in stabilizer_orbit(rs, lam, mu))


def minimality_verdicts(rs: RootSystem, lam: Weight, mu: Weight) -> Tuple[bool, bool]:
    """(root-lattice order verdict, dominant-weight order verdict)"""
    return is_minimal(rs, lam, mu, 'root'), is_minimal(rs, lam, mu, 'dominant')


@dataclass(frozen=True)
class LinkageClass:
    dominant: Weight
    members: Tuple[Weight, ...]
    contains_lambda: bool


def linkage_classes(rs: RootSystem, lam: Weight, candidates: Sequence[Weight]) -> List[LinkageClass]:
    """Partition candidates into W_lambda dot-orbits; lambda's own class is flagged"""
    grouped: Dict[Weight, List[Weight]] = {}
    for mu in candidates:
        require_same_coset(lam, mu)
        dom = dominant_representative(rs, lam, mu)
        members = grouped.setdefault(dom, [])
        if mu not in members:
            members.append(mu)

    own = dominant_representative(rs, lam, lam)
    return [
        LinkageClass(dominant=dom, members=tuple(members), contains_lambda=(dom == own))
        for dom, members in grouped.items()
    ]


def orbit_elements(rs: RootSystem, lam: Weight, dom: Weight) -> Dict[Weight, WeylElt]:
    """
    For a dot-dominant weight of lambda + P: each weight of its W_lambda dot-orbit,
    mapped to the longest w with w.dom = that weight
    """
    return _orbit_elements(rs, integral_data(rs, lam).integral_simples, dom)


@lru_cache(maxsize=None)
def _orbit_elements(rs: RootSystem, simples: Tuple[Root, ...], dom: Weight) -> Dict[Weight, WeylElt]:
    longest: Dict[Weight, WeylElt] = {}
    for w in weyl_group(rs, simples).elements:
        image = dot_action(w, dom)
        best = longest.get(image)
        if best is None or w.length > best.length:
            longest[image] = w
    return longest
