"""
Small-rank oracle
Jantzen sum formula, multiplicity matrices forced by it in rank <= 2 and a
brute-force minimality test; used by the test suite to pin KL conventions
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from errors import InternalInconsistencyError, PreconditionError, UnderdeterminedSystemError
from rootsys import RootSystem, Weight, dot_action, enumerate_weyl_group, pairing
from weightlat import integral_data, require_dominant, require_same_coset


@dataclass
class FormalSum:
    """Signed combination of Verma (or simple) classes in the Grothendieck group"""
    terms: Dict[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {mu: c for mu, c in self.terms.items() if c}

    def __getitem__(self, mu: Weight) -> int:
        return self.terms.get(mu, 0)

    def __add__(self, other: 'FormalSum') -> 'FormalSum':
        merged = dict(self.terms)
        for mu, c in other.terms.items():
            merged[mu] = merged.get(mu, 0) + c
        return FormalSum(merged)

    def __sub__(self, other: 'FormalSum') -> 'FormalSum':
        return self + FormalSum({mu: -c for mu, c in other.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())


def lowering_roots(rs: RootSystem, lam: Weight, mu: Weight):
    """Positive integral gamma with <mu + rho, gamma^vee> a positive integer"""
    for gamma in integral_data(rs, lam).positive_integral_roots:
        value = pairing(rs, mu + rs.rho, gamma)
        if value > 0 and value.denominator == 1:
            yield gamma


def jantzen_sum(rs: RootSystem, lam: Weight, mu: Weight) -> FormalSum:
    """sum_i [M^i(mu)] = sum over lowering gamma of [M(s_gamma . mu)]"""
    require_same_coset(lam, mu)
    total = FormalSum()
    for gamma in lowering_roots(rs, lam, mu):
        total = total + FormalSum({rs.dot_reflect(mu, gamma): 1})
    return total


def in_simple_basis(rows: Dict[Weight, FormalSum], verma_sum: FormalSum) -> FormalSum:
    """Rewrite a combination of Verma classes in the basis of simple classes"""
    total = FormalSum()
    for nu, c in verma_sum.terms.items():
        for kappa, m in rows[nu].terms.items():
            total = total + FormalSum({kappa: c * m})
    return total


def rank_le2_multiplicities(rs: RootSystem, lam: Weight) -> Dict[Tuple[Weight, Weight], int]:
    """
    [M(mu) : L(nu)] over the dot-orbit of dominant lambda, forced by the sum
    formula: every block of rank <= 2 is multiplicity free, so L(nu) occurs in
    M(mu) for nu != mu exactly when it occurs in the Jantzen sum of M(mu).
    """
    require_dominant(rs, lam)
    data = integral_data(rs, lam)
    if data.rank > 2:
        raise UnderdeterminedSystemError(
            f"integral root system of lambda = {lam} has rank {data.rank}; the sum formula alone does not fix it")

    orbit = sorted({dot_action(w, lam) for w in data.w_lambda_elements},
                   key=lambda mu: (rs.height(mu), mu.sort_key()))
    rows: Dict[Weight, FormalSum] = {}
    for mu in orbit:
        layers = in_simple_basis(rows, jantzen_sum(rs, lam, mu))
        if any(c < 0 for c in layers.terms.values()):
            raise InternalInconsistencyError(f"Jantzen layers of M({mu}) have a negative coefficient")
        if mu in layers.terms:
            raise InternalInconsistencyError(f"Jantzen layers of M({mu}) contain L({mu})")
        rows[mu] = FormalSum({mu: 1, **{nu: 1 for nu in layers.terms}})

    return {(mu, nu): rows[mu][nu] for mu in orbit for nu in orbit}


def brute_minimality(rs: RootSystem, lam: Weight, mu: Weight, order_variant: str = 'root') -> bool:
    """Enumerate the stabilizer inside all of W and compare mu with every orbit member"""
    require_dominant(rs, lam)
    require_same_coset(lam, mu)
    orbit = {dot_action(w, mu) for w in enumerate_weyl_group(rs) if dot_action(w, lam) == lam}

    def below(other: Weight) -> bool:
        diff = other - mu
        if order_variant == 'root':
            coords = rs.to_root_coords(diff)
        elif order_variant == 'dominant':
            coords = diff.coords
        else:
            raise PreconditionError(f"unknown order variant '{order_variant}'")
        return all(c.denominator == 1 and c >= 0 for c in coords)

    return all(below(other) for other in orbit)

