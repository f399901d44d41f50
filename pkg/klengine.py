"""
Kazhdan-Lusztig engine
KL polynomials over an enumerated reflection group (W or an integral W_lambda),
Verma composition multiplicities and graded Ext dimensions for regular blocks.

Convention (used everywhere): for lambda dominant and regular,
    [M(x.lambda) : L(y.lambda)] = P_{x,y}(1),
and for singular dominant lambda the same value is read at the longest
representatives of the cosets x W^o, y W^o, W^o the dot stabilizer.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import config
from errors import InternalInconsistencyError, PreconditionError
from rootsys import RootSystem, Weight, WeylElt, WeylGroup, dot_action
from weightlat import integral_data, is_regular, require_dominant


Coeffs = Tuple[int, ...]


def _trim(coeffs: List[int]) -> Coeffs:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _accumulate(target: List[int], coeffs: Coeffs, shift: int = 0, scale: int = 1):
    if len(target) < len(coeffs) + shift:
        target.extend([0] * (len(coeffs) + shift - len(target)))
    for k, c in enumerate(coeffs):
        target[k + shift] += scale * c


@dataclass(frozen=True)
class KLPoly:
    """Coefficient of q^k at index k; the zero polynomial has no coefficients"""
    coeffs: Coeffs

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            power = '' if k == 0 else ('q' if k == 1 else f'q^{k}')
            if not power:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f'{c}{power}')
        return ' + '.join(terms)


class KLTable:
    """Memoized P_{x,y} for one enumerated group; entries are permanent once computed"""

    def __init__(self, group: WeylGroup):
        self.group = group
        self.group_id = group.group_id
        self.table: Dict[Tuple[int, int], Coeffs] = {}
        self._mu_lists: Dict[int, List[Tuple[int, int]]] = {}
        self._below: Dict[int, List[int]] = {}

    def __len__(self) -> int:
        return len(self.table)

    def polynomial(self, x: WeylElt, y: WeylElt) -> KLPoly:
        self.group.check_member(x, y)
        return KLPoly(self._poly(x.index, y.index))

    def mu(self, x: int, y: int) -> int:
        """Leading coefficient mu(x, y) at q^{(l(y) - l(x) - 1)/2}"""
        gap = self.group.elements[y].length - self.group.elements[x].length - 1
        if gap < 0 or gap % 2:
            return 0
        coeffs = self._poly(x, y)
        return coeffs[gap // 2] if gap // 2 < len(coeffs) else 0

    def _lower_interval(self, v: int) -> List[int]:
        below = self._below.get(v)
        if below is None:
            elements = self.group.elements
            top = elements[v]
            below = [z.index for z in elements if z.length < top.length and self.group.bruhat_leq(z, top)]
            self._below[v] = below
        return below

    def _mu_list(self, v: int) -> List[Tuple[int, int]]:
        """(z, mu(z, v)) for z < v with mu(z, v) != 0"""
        found = self._mu_lists.get(v)
        if found is None:
            found = []
            for z in self._lower_interval(v):
                m = self.mu(z, v)
                if m:
                    found.append((z, m))
            self._mu_lists[v] = found
        return found

    def _poly(self, x: int, w: int) -> Coeffs:
        key = (x, w)
        cached = self.table.get(key)
        if cached is not None:
            return cached

        group = self.group
        elements = group.elements
        ex, ew = elements[x], elements[w]
        if not group.bruhat_leq(ex, ew):
            result: Coeffs = ()
        elif ew.length - ex.length <= 2:
            result = (1,)
        else:
            s = group.left_descent(ew)
            v = group.left[w][s]
            sx = group.left[x][s]
            if elements[sx].length < ex.length:
                # P_{x,w} = P_{sx,w} whenever s w < w
                result = self._poly(sx, w)
            else:
                acc: List[int] = []
                _accumulate(acc, self._poly(sx, v), shift=1)
                _accumulate(acc, self._poly(x, v))
                for z, m in self._mu_list(v):
                    ez = elements[z]
                    if elements[group.left[z][s]].length < ez.length and group.bruhat_leq(ex, ez):
                        _accumulate(acc, self._poly(x, z), shift=(ew.length - ez.length) // 2, scale=-m)
                result = _trim(acc)
            self._check(ex, ew, result)

        self.table[key] = result
        return result

    @staticmethod
    def _check(x: WeylElt, w: WeylElt, coeffs: Coeffs):
        if not coeffs or coeffs[0] != 1 or any(c < 0 for c in coeffs):
            raise InternalInconsistencyError(
                f"KL polynomial for ({x.word_string()}, {w.word_string()}) is {coeffs}")
        if x != w and 2 * (len(coeffs) - 1) > w.length - x.length - 1:
            raise InternalInconsistencyError(
                f"KL polynomial for ({x.word_string()}, {w.word_string()}) breaks the degree bound")

    def full_table(self) -> Dict[Tuple[int, int], Coeffs]:
        """Fill every pair of the group; practical for small groups only"""
        for y in sorted(self.group.elements, key=lambda e: e.length):
            for x in self.group.elements:
                self._poly(x.index, y.index)
        return self.table

    def dump_lines(self) -> List[str]:
        elements = self.group.elements
        keys = sorted(self.table, key=lambda k: (elements[k[1]].length, k[1], elements[k[0]].length, k[0]))
        return [
            f"{elements[x].word_string()};{elements[y].word_string()};"
            + (','.join(str(c) for c in self.table[(x, y)]) or '0')
            for x, y in keys
        ]

    def dump(self, path: str):
        with open(path, 'w', encoding='utf-8') as f:
            for line in self.dump_lines():
                f.write(line + '\n')
        config.status(f"✓ KL table ({len(self.table)} pairs) written to {path}")


_TABLES: Dict[str, KLTable] = {}


def kl_table(group: WeylGroup) -> KLTable:
    table = _TABLES.get(group.group_id)
    if table is None or table.group is not group:
        table = KLTable(group)
        _TABLES[group.group_id] = table
    return table


def kl_polynomial(tbl: KLTable, x: WeylElt, y: WeylElt) -> KLPoly:
    if x.group_id != tbl.group_id or y.group_id != tbl.group_id:
        raise PreconditionError("elements come from a different group than the KL table")
    return tbl.polynomial(x, y)


def multiply(group: WeylGroup, x: WeylElt, y: WeylElt) -> WeylElt:
    idx = x.index
    for i in y.word:
        idx = group.right[idx][i]
    return group.elements[idx]


def longest_in_coset(group: WeylGroup, x: WeylElt, stabilizer: Tuple[WeylElt, ...]) -> WeylElt:
    """Longest element of x W^o"""
    return max((multiply(group, x, u) for u in stabilizer), key=lambda w: w.length)


def composition_multiplicity(rs: RootSystem, lam: Weight, x: WeylElt, y: WeylElt) -> int:
    """[M(x.lambda) : L(y.lambda)] for lambda dominant, x and y in W_lambda"""
    require_dominant(rs, lam)
    data = integral_data(rs, lam)
    group = data.group
    if x.group_id != group.group_id or y.group_id != group.group_id:
        raise PreconditionError(f"x and y must lie in W_lambda ({group.group_id})")
    if len(data.stabilizer) > 1:
        x = longest_in_coset(group, x, data.stabilizer)
        y = longest_in_coset(group, y, data.stabilizer)
    return kl_table(group).polynomial(x, y).at_one()


def ext_dimensions(rs: RootSystem, lam: Weight, x: WeylElt, y: WeylElt) -> List[int]:
    """
    Graded dimensions attached to (x, y) in a regular block: entry k is the
    coefficient of q^{(l(y) - l(x) - k)/2} in P_{x,y}. In module terms this is
    dim Ext^k(M(x w0 . lambda), L(y w0 . lambda)); the entries sum to
    [M(x.lambda) : L(y.lambda)] and entry 0 is 1 exactly when x = y.
    """
    require_dominant(rs, lam)
    if not is_regular(rs, lam):
        raise PreconditionError(f"Ext dimensions need a regular lambda; {lam} is singular")
    group = integral_data(rs, lam).group
    if x.group_id != group.group_id or y.group_id != group.group_id:
        raise PreconditionError(f"x and y must lie in W_lambda ({group.group_id})")

    gap = y.length - x.length
    dims = [0] * (max(gap, 0) + 1)
    poly = kl_table(group).polynomial(x, y)
    for k in range(len(dims)):
        if (gap - k) % 2 == 0:
            dims[k] = poly.coefficient((gap - k) // 2)
    return dims


def block_module_pair(rs: RootSystem, lam: Weight, x: WeylElt, y: WeylElt) -> Tuple[Weight, Weight]:
    """The highest weights (x w0 . lambda, y w0 . lambda) that ext_dimensions describes"""
    group = integral_data(rs, lam).group
    w0 = group.longest
    return dot_action(multiply(group, x, w0), lam), dot_action(multiply(group, y, w0), lam)
