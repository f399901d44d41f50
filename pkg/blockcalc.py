"""
Block calculator
Dimensions of the simple modules S(mu), their projective covers Q(mu) and the
Verma analogues N(mu) of B_lambda, for lambda dominant and V finite-dimensional
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from errors import InternalInconsistencyError, PreconditionError
from findim import Character, character, end_zero_dim
from klengine import composition_multiplicity, ext_dimensions, multiply
from rootsys import RootSystem, Weight, WeylElt
from weightlat import (
    ORDER_VARIANTS, integral_data, is_general_position, is_minimal, is_regular,
    linkage_classes, orbit_elements, require_dominant,
)


@dataclass(frozen=True)
class BlockEntry:
    mu: Weight
    dim_S: int
    dim_N: int
    dim_Q: int
    minimal: bool
    minimal_other_order: bool
    v_weight_mult: int


@dataclass
class BlockReport:
    """Everything computed for one (lambda, V)"""
    type_letter: str
    rank: int
    lam: Weight
    v_highest_weight: Weight
    entries: List[BlockEntry]
    end_v_zero: int
    sum_check: int
    order_variant: str = 'root'
    order_disagreement_flags: List[Weight] = field(default_factory=list)

    @property
    def checks(self) -> Dict[str, bool]:
        return {
            'dimension_identity': self.sum_check == self.end_v_zero,
            'necessary_condition': all(
                e.minimal and e.v_weight_mult > 0 for e in self.entries if e.dim_S > 0),
            'order_agreement': not self.order_disagreement_flags,
        }

    @property
    def simple_modules(self) -> List[Weight]:
        """Highest weights mu with S(mu) != 0, in report order"""
        return [e.mu for e in self.entries if e.dim_S > 0]

    @property
    def converse_candidates(self) -> List[Weight]:
        """mu with V_{lambda - mu} != 0 and mu minimal but S(mu) = 0"""
        return [e.mu for e in self.entries if e.v_weight_mult > 0 and e.minimal and e.dim_S == 0]

    def entry(self, mu: Weight) -> BlockEntry:
        for e in self.entries:
            if e.mu == mu:
                return e
        raise KeyError(str(mu))


@dataclass
class BGGMatrix:
    """
    entries[i][j] = [P(weights[i]) : M(weights[j])] = [M(weights[j]) : L(weights[i])].
    Weights are sorted by ascending height, so the matrix is upper unitriangular.
    """
    weights: List[Weight]
    entries: np.ndarray

    def position(self, mu: Weight) -> int:
        return self.weights.index(mu)


@dataclass(frozen=True)
class ExtRecord:
    """Graded dims of Ext^k(N(mu), S(nu)) = Ext^k(M(mu), L(nu))"""
    mu: Weight
    nu: Weight
    dims: Tuple[int, ...]


def verma_flag_multiplicities(rs: RootSystem, lam: Weight, v_char: Character) -> Dict[Weight, int]:
    """[V* (x) M(lambda) : M(mu)] = dim V_{lambda - mu}"""
    require_dominant(rs, lam)
    return {lam - nu: m for nu, m in v_char.items()}


def _height_order(rs: RootSystem, weights: Sequence[Weight]) -> List[Weight]:
    return sorted(set(weights), key=lambda mu: (rs.height(mu), mu.sort_key()))


def bgg_matrix(rs: RootSystem, lam: Weight, support: Sequence[Weight]) -> BGGMatrix:
    """[P(nu) : M(mu)] over the support via BGG reciprocity and the KL engine"""
    require_dominant(rs, lam)
    weights = _height_order(rs, support)
    n = len(weights)
    # object dtype keeps the entries Python ints
    entries = np.zeros((n, n), dtype=object)
    pos = {mu: k for k, mu in enumerate(weights)}

    for cls in linkage_classes(rs, lam, weights):
        elements = orbit_elements(rs, lam, cls.dominant)
        for mu in cls.members:
            x = elements[mu]
            for nu in cls.members:
                entries[pos[nu], pos[mu]] = composition_multiplicity(rs, cls.dominant, x, elements[nu])

    rows = entries.tolist()
    unitriangular = all(
        rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(i + 1))
    if not unitriangular:
        raise InternalInconsistencyError(f"BGG matrix for lambda = {lam} is not unitriangular")
    return BGGMatrix(weights=weights, entries=entries)


def solve_projective_multiplicities(flag: Dict[Weight, int], bgg: BGGMatrix) -> Dict[Weight, int]:
    """Back-substitution for sum_nu d(nu) [P(nu):M(mu)] = flag(mu)"""
    missing = [mu for mu, m in flag.items() if m and mu not in bgg.weights]
    if missing:
        raise PreconditionError(f"flag weight {missing[0]} is outside the BGG matrix support")

    solved: List[Fraction] = []
    for j, mu in enumerate(bgg.weights):
        value = Fraction(flag.get(mu, 0))
        for i in range(j):
            value -= solved[i] * int(bgg.entries[i, j])
        value /= int(bgg.entries[j, j])
        if value.denominator != 1 or value < 0:
            raise InternalInconsistencyError(f"projective multiplicity at {mu} came out as {value}")
        solved.append(value)
    return {mu: int(d) for mu, d in zip(bgg.weights, solved)}


def cover_dimensions(flag: Dict[Weight, int], bgg: BGGMatrix) -> Dict[Weight, int]:
    """dim Q(nu) = sum_mu [P(nu):M(mu)] dim V_{lambda - mu}, in Python ints"""
    flag_vector = np.array([flag.get(mu, 0) for mu in bgg.weights], dtype=object)
    dim_q = bgg.entries.astype(object) @ flag_vector
    return {mu: int(dim_q[k]) for k, mu in enumerate(bgg.weights)}


def _entry_order(rs: RootSystem, lam: Weight):
    """Decreasing height of lambda - mu, then coordinates"""
    return lambda mu: (-rs.height(lam - mu), mu.sort_key())


def _other(variant: str) -> str:
    return 'dominant' if variant == 'root' else 'root'


def _assemble(rs: RootSystem, lam: Weight, nu: Weight, v_char: Character,
              dims: Dict[Weight, Tuple[int, int, int]], variant: str) -> BlockReport:
    """dims: mu -> (dim_S, dim_N, dim_Q)"""
    entries = []
    flags = []
    for mu, (dim_s, dim_n, dim_q) in dims.items():
        minimal = is_minimal(rs, lam, mu, variant)
        other = is_minimal(rs, lam, mu, _other(variant))
        if minimal != other:
            flags.append(mu)
        entries.append(BlockEntry(
            mu=mu, dim_S=dim_s, dim_N=dim_n, dim_Q=dim_q,
            minimal=minimal, minimal_other_order=other, v_weight_mult=dim_n,
        ))
    order = _entry_order(rs, lam)
    entries.sort(key=lambda e: order(e.mu))
    flags.sort(key=order)
    return BlockReport(
        type_letter=rs.type_letter,
        rank=rs.rank,
        lam=lam,
        v_highest_weight=nu,
        entries=entries,
        end_v_zero=end_zero_dim(v_char),
        sum_check=sum(s * q for s, _, q in dims.values()),
        order_variant=variant,
        order_disagreement_flags=flags,
    )


def _require_variant(variant: str):
    if variant not in ORDER_VARIANTS:
        raise PreconditionError(f"order variant must be one of {ORDER_VARIANTS}, got '{variant}'")


def block_report(rs: RootSystem, lam: Weight, v_highest_weight: Weight, order_variant: str = 'root') -> BlockReport:
    """Full computation of dim S, dim N and dim Q for every mu with V_{lambda - mu} != 0"""
    _require_variant(order_variant)
    require_dominant(rs, lam)
    v_char = character(rs, v_highest_weight)
    flag = verma_flag_multiplicities(rs, lam, v_char)
    bgg = bgg_matrix(rs, lam, list(flag))
    d = solve_projective_multiplicities(flag, bgg)

    dim_q = cover_dimensions(flag, bgg)
    dims = {mu: (d[mu], flag[mu], dim_q[mu]) for mu in bgg.weights}
    report = _assemble(rs, lam, v_highest_weight, v_char, dims, order_variant)

    if lam == -rs.rho:
        expected = minus_rho_closed_form(rs, v_char)
        found = {e.mu: (e.dim_S, e.dim_Q) for e in report.entries if e.dim_S > 0}
        if found != expected:
            raise InternalInconsistencyError(
                f"report at lambda = -rho disagrees with the orbit decomposition of V({v_highest_weight})")

    config.status(f"✓ Block report for lambda = {lam}, V({v_highest_weight}): "
                  f"{len(report.simple_modules)} simple modules, sum check {report.sum_check}")
    return report


def generic_fast_path(rs: RootSystem, lam: Weight, v_char: Character,
                      v_highest_weight: Optional[Weight] = None, order_variant: str = 'root') -> BlockReport:
    """General position: B_lambda is (End V)_0, so every dim equals dim V_{lambda - mu}"""
    _require_variant(order_variant)
    if not is_general_position(rs, lam):
        raise PreconditionError(f"lambda = {lam} is not in general position")
    if v_highest_weight is None:
        v_highest_weight = max(v_char.support(), key=lambda mu: (rs.height(mu), mu.sort_key()))
    flag = verma_flag_multiplicities(rs, lam, v_char)
    dims = {mu: (m, m, m) for mu, m in flag.items()}
    return _assemble(rs, lam, v_highest_weight, v_char, dims, order_variant)


def minus_rho_closed_form(rs: RootSystem, v_char: Character) -> Dict[Weight, Tuple[int, int]]:
    """
    Simple modules at lambda = -rho without KL: for each dominant weight nu of V,
    S(-rho - nu) has dimension dim V_nu and its cover dimension |W nu| dim V_nu
    """
    result = {}
    for nu, m in v_char.items():
        if all(c >= 0 for c in nu.coords):
            result[-rs.rho - nu] = (m, len(rs.orbit(nu)) * m)
    return result


def ext_report(rs: RootSystem, lam: Weight, v_highest_weight: Weight,
               report: Optional[BlockReport] = None) -> List[ExtRecord]:
    """
    Ext^k(N(mu), S(nu)) for every pair with N(mu) != 0 and S(nu) != 0 in one
    regular linkage class; singular classes are skipped
    """
    if report is None:
        report = block_report(rs, lam, v_highest_weight)
    sources = [e.mu for e in report.entries if e.dim_N > 0]
    targets = set(report.simple_modules)

    records = []
    for cls in linkage_classes(rs, lam, sources):
        if not is_regular(rs, cls.dominant):
            continue
        group = integral_data(rs, cls.dominant).group
        w0 = group.longest
        elements = orbit_elements(rs, lam, cls.dominant)
        # regular class: w0 relabels (M(x.lam_c), L(y.lam_c)) as ext_dimensions indexes them
        relabel: Dict[Weight, WeylElt] = {mu: multiply(group, elements[mu], w0) for mu in elements}
        for mu in cls.members:
            for nu in cls.members:
                if nu not in targets:
                    continue
                dims = ext_dimensions(rs, cls.dominant, relabel[mu], relabel[nu])
                records.append(ExtRecord(mu=mu, nu=nu, dims=tuple(dims)))

    order = {e.mu: k for k, e in enumerate(report.entries)}
    records.sort(key=lambda r: (order[r.mu], order[r.nu]))
    return records


def direct_sum_reports(rs: RootSystem, lam: Weight, v_highest_weights: Sequence[Weight],
                       order_variant: str = 'root', fast_path: bool = False) -> List[BlockReport]:
    """One report per summand V_i of V = (+) V_i"""
    reports = []
    for nu in v_highest_weights:
        if fast_path and is_general_position(rs, lam):
            reports.append(generic_fast_path(rs, lam, character(rs, nu), nu, order_variant))
        else:
            reports.append(block_report(rs, lam, nu, order_variant))
    return reports


def totals(reports: Sequence[BlockReport]) -> Tuple[int, int]:
    """(sum of end_v_zero, sum of sum_check) over the summands"""
    return sum(r.end_v_zero for r in reports), sum(r.sum_check for r in reports)


def verify(report: BlockReport):
    """Raise if an identity that must hold failed on this report"""
    checks = report.checks
    if not checks['dimension_identity']:
        raise InternalInconsistencyError(
            f"sum of dim S * dim Q is {report.sum_check}, dim (End V)_0 is {report.end_v_zero}")
    if report.order_variant == 'root' and not checks['necessary_condition']:
        bad = next(e.mu for e in report.entries if e.dim_S > 0 and not (e.minimal and e.v_weight_mult > 0))
        raise InternalInconsistencyError(f"S({bad}) != 0 but {bad} is not minimal")
