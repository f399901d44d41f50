"""
Root systems and Weyl groups
Exact data for the simple types A_n - G_2: Cartan matrices, roots, coroots, rho,
and Weyl group enumeration with reduced words and Bruhat order
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

import config
from errors import GroupTooLargeError, InvalidTypeError, PreconditionError


# Degrees of the basic invariants, per type (|W| is their product)
def _degrees(letter: str, rank: int) -> Tuple[int, ...]:
    if letter == 'A':
        return tuple(range(2, rank + 2))
    if letter in ('B', 'C'):
        return tuple(range(2, 2 * rank + 1, 2))
    if letter == 'D':
        return tuple(sorted(list(range(2, 2 * rank - 1, 2)) + [rank]))
    return {
        ('E', 6): (2, 5, 6, 8, 9, 12),
        ('E', 7): (2, 6, 8, 10, 12, 14, 18),
        ('E', 8): (2, 8, 12, 14, 18, 20, 24, 30),
        ('F', 4): (2, 6, 8, 12),
        ('G', 2): (2, 6),
    }[(letter, rank)]


@dataclass(frozen=True)
class Weight:
    """A point of h* in fundamental-weight coordinates, exact rationals only"""
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(Fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *values) -> 'Weight':
        """Weight.of(1, '1/2', Fraction(-3)); strings may be 'p/q'"""
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> 'Weight':
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'Weight':
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> 'Weight':
        scalar = Fraction(scalar)
        return Weight(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def sort_key(self) -> Tuple[Fraction, ...]:
        return self.coords

    def to_strings(self) -> List[str]:
        """Coordinates as 'p/q' (or plain integer) strings"""
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return '(' + ', '.join(self.to_strings()) + ')'


@dataclass(frozen=True)
class Root:
    """A root, kept both in simple-root and in fundamental-weight coordinates"""
    simple: Tuple[int, ...]
    weight: Weight
    coroot: Tuple[int, ...]  # coefficients of the coroot on the simple coroots

    @property
    def height(self) -> int:
        return sum(self.simple)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.simple)

    def __str__(self) -> str:
        return 'alpha' + str(list(self.simple))


def apply_matrix(matrix: np.ndarray, weight: Weight) -> Weight:
    """Exact image of a weight under an integer matrix"""
    rows = matrix.tolist()
    return Weight(tuple(sum(r * c for r, c in zip(row, weight.coords)) for row in rows))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Static data of a simple root system; immutable after construction"""
    type_letter: str
    rank: int
    cartan_matrix: np.ndarray  # a_ij = <alpha_i^vee, alpha_j>
    symmetrizer: Tuple[int, ...]  # (alpha_i, alpha_i) = 2 * d_i
    roots: Tuple[Root, ...]
    cartan_inverse: Tuple[Tuple[Fraction, ...], ...]
    _by_simple: Dict[Tuple[int, ...], Root] = field(repr=False)
    _by_weight: Dict[Weight, Root] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @cached_property
    def positive_roots(self) -> List[Root]:
        return [r for r in self.roots if r.is_positive]

    @cached_property
    def simple_roots(self) -> List[Root]:
        return [self._by_simple[tuple(int(i == j) for j in range(self.rank))]
                for i in range(self.rank)]

    @cached_property
    def rho(self) -> Weight:
        return Weight((Fraction(1),) * self.rank)

    @property
    def fundamental_weights(self) -> List[Weight]:
        return [Weight(tuple(Fraction(int(i == j)) for j in range(self.rank)))
                for i in range(self.rank)]

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: r.height)

    def coroots(self) -> Dict[Root, Tuple[int, ...]]:
        return {r: r.coroot for r in self.roots}

    def root(self, alpha: Union[Root, Weight, Sequence[int]]) -> Root:
        """Resolve a root given as Root, fundamental-coordinate Weight or simple coordinates"""
        if isinstance(alpha, Root):
            found = self._by_simple.get(alpha.simple)
        elif isinstance(alpha, Weight):
            found = self._by_weight.get(alpha)
        else:
            found = self._by_simple.get(tuple(int(c) for c in alpha))
        if found is None:
            raise PreconditionError(f"{alpha} is not a root of {self.name}")
        return found

    def is_root(self, alpha) -> bool:
        try:
            self.root(alpha)
            return True
        except PreconditionError:
            return False

    def to_root_coords(self, weight: Weight) -> Tuple[Fraction, ...]:
        """Coordinates of a weight on the simple roots"""
        return tuple(sum(a * c for a, c in zip(row, weight.coords)) for row in self.cartan_inverse)

    def height(self, weight: Weight) -> Fraction:
        return sum(self.to_root_coords(weight), Fraction(0))

    def in_positive_root_cone(self, weight: Weight) -> bool:
        """True iff the weight is a nonnegative integer combination of simple roots"""
        return all(c.denominator == 1 and c >= 0 for c in self.to_root_coords(weight))

    def inner(self, mu: Weight, nu: Weight) -> Fraction:
        """Invariant form normalised so that (alpha_i, alpha_i) = 2 d_i"""
        x = self.to_root_coords(mu)
        return sum((xi * ni * di for xi, ni, di in zip(x, nu.coords, self.symmetrizer)), Fraction(0))

    def reflect(self, weight: Weight, alpha: Root) -> Weight:
        """Ordinary reflection s_alpha"""
        return weight - alpha.weight * pairing(self, weight, alpha)

    def dot_reflect(self, weight: Weight, alpha: Root) -> Weight:
        """s_alpha.mu = s_alpha(mu + rho) - rho"""
        return self.reflect(weight + self.rho, alpha) - self.rho

    def dominant_conjugate(self, weight: Weight) -> Weight:
        """The dominant element of the ordinary W-orbit of an integral weight"""
        coords = list(weight.coords)
        columns = self.cartan_matrix.tolist()
        while True:
            i = next((k for k, c in enumerate(coords) if c < 0), None)
            if i is None:
                return Weight(tuple(coords))
            c = coords[i]
            coords = [coords[k] - c * columns[k][i] for k in range(self.rank)]

    def orbit(self, weight: Weight) -> List[Weight]:
        """Ordinary W-orbit of a weight, by reflection closure"""
        seen = {weight}
        frontier = [weight]
        simples = self.simple_roots
        while frontier:
            nxt = []
            for mu in frontier:
                for alpha in simples:
                    image = self.reflect(mu, alpha)
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return sorted(seen, key=Weight.sort_key)

    def weyl_group_order(self) -> int:
        order = 1
        for d in _degrees(self.type_letter, self.rank):
            order *= d
        return order

    def expected_positive_root_count(self) -> int:
        return sum(d - 1 for d in _degrees(self.type_letter, self.rank))


def pairing(rs: RootSystem, mu: Weight, alpha) -> Fraction:
    """<mu, alpha^vee>, exact"""
    root = rs.root(alpha)
    return sum((c * k for c, k in zip(mu.coords, root.coroot)), Fraction(0))


def _cartan_matrix(letter: str, rank: int) -> Tuple[List[List[int]], List[int]]:
    """Cartan matrix (Bourbaki numbering) and symmetrizer for a simple type"""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter == 'A':
        for i in range(rank - 1):
            bond(i, i + 1)
        d = [1] * rank
    elif letter == 'B':
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -1, -2)  # alpha_n short
        d = [2] * (rank - 1) + [1]
    elif letter == 'C':
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -2, -1)  # alpha_n long
        d = [1] * (rank - 1) + [2]
    elif letter == 'D':
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
        d = [1] * rank
    elif letter == 'E':
        bond(0, 2)
        bond(1, 3)
        for i in range(2, rank - 1):
            bond(i, i + 1)
        d = [1] * rank
    elif letter == 'F':
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
        d = [2, 2, 1, 1]
    else:  # G
        bond(0, 1, -3, -1)  # alpha_1 short
        d = [1, 3]
    return a, d


def _validate_type(letter: str, rank: int):
    minimum = {'A': 1, 'B': 2, 'C': 2, 'D': 4}
    valid = (
        (letter in minimum and minimum[letter] <= rank <= 8)
        or (letter == 'E' and rank in (6, 7, 8))
        or (letter == 'F' and rank == 4)
        or (letter == 'G' and rank == 2)
    )
    if not valid:
        raise InvalidTypeError(f"unsupported simple type {letter}{rank}")


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Construct the root system of type (letter, rank)"""
    letter = str(type_letter).upper()
    rank = int(rank)
    _validate_type(letter, rank)

    a, d = _cartan_matrix(letter, rank)
    inverse = sympy.Matrix(a).inv()
    cartan_inverse = tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(rank))
        for i in range(rank)
    )

    # All roots = closure of the simple roots under simple reflections
    simples = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                p = sum(a[i][j] * beta[j] for j in range(rank))
                image = tuple(beta[j] - p * int(i == j) for j in range(rank))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt

    roots = []
    for beta in seen:
        norm = sum(beta[i] * beta[j] * d[i] * a[i][j] for i in range(rank) for j in range(rank))
        d_beta = norm // 2
        coroot = tuple(beta[j] * d[j] // d_beta for j in range(rank))
        fund = Weight(tuple(sum(a[i][j] * beta[j] for j in range(rank)) for i in range(rank)))
        roots.append(Root(simple=beta, weight=fund, coroot=coroot))
    roots.sort(key=lambda r: (not r.is_positive, abs(r.height), tuple(-c for c in r.simple)))

    rs = RootSystem(
        type_letter=letter,
        rank=rank,
        cartan_matrix=np.array(a, dtype=np.int64),
        symmetrizer=tuple(d),
        roots=tuple(roots),
        cartan_inverse=cartan_inverse,
        _by_simple={r.simple: r for r in roots},
        _by_weight={r.weight: r for r in roots},
    )
    config.status(f"✓ Built root system {rs.name} ({len(rs.positive_roots)} positive roots)")
    return rs


# ============ Weyl groups ============

@dataclass(frozen=True)
class WeylElt:
    """Element of an enumerated reflection group: reduced word, matrix and length"""
    index: int
    word: Tuple[int, ...]
    length: int
    group_id: str
    action_matrix: np.ndarray = field(compare=False, repr=False)

    def word_string(self) -> str:
        """1-based generator indices joined by '.', 'e' for the identity"""
        return '.'.join(str(i + 1) for i in self.word) if self.word else 'e'


def parse_word(text: str) -> Tuple[int, ...]:
    """Inverse of WeylElt.word_string"""
    text = text.strip()
    if text in ('', 'e'):
        return ()
    try:
        return tuple(int(part) - 1 for part in text.split('.'))
    except ValueError:
        raise PreconditionError(f"malformed word '{text}'")


def reflection_matrix(root: Root) -> np.ndarray:
    """Matrix of s_root on fundamental-weight coordinates"""
    rank = len(root.simple)
    gamma = [int(c) for c in root.weight.coords]
    return np.array(
        [[int(k == j) - gamma[k] * root.coroot[j] for j in range(rank)] for k in range(rank)],
        dtype=np.int64,
    )


_GROUPS: Dict[str, 'WeylGroup'] = {}


class WeylGroup:
    """
    Reflection group generated by s_gamma for a simple system of roots.
    Elements are produced breadth-first from the identity; the first word found
    for an element is its lexicographically smallest reduced word.
    """

    def __init__(self, rs: RootSystem, generators: Sequence[Root], cap: Optional[int] = None):
        self.rs = rs
        self.generators = tuple(generators)
        self.cap = config.WEYL_GROUP_CAP if cap is None else cap
        self.group_id = rs.name + ':' + ','.join(
            ''.join(str(c) for c in g.simple) for g in self.generators)
        self.generator_matrices = [reflection_matrix(g) for g in self.generators]
        self.elements: List[WeylElt] = []
        self.right: List[List[int]] = []
        self.left: List[List[int]] = []
        self._index: Dict[Tuple[int, ...], int] = {}
        self._enumerate()
        _GROUPS[self.group_id] = self

    def _enumerate(self):
        rank = self.rs.rank
        ones = np.ones(rank, dtype=np.int64)
        images = [m @ ones for m in self.generator_matrices]
        identity = np.identity(rank, dtype=np.int64)

        matrices = [identity]
        keys = [ones]
        words = [()]
        lengths = [0]
        self._index[tuple(ones.tolist())] = 0
        right: List[List[int]] = [[-1] * len(self.generators)]

        level = [0]
        length = 0
        while level:
            length += 1
            nxt = []
            for idx in level:
                for i, image in enumerate(images):
                    key = tuple((matrices[idx] @ image).tolist())
                    found = self._index.get(key)
                    if found is None:
                        found = len(matrices)
                        if found >= self.cap:
                            raise GroupTooLargeError(
                                f"group generated by {len(self.generators)} reflections in "
                                f"{self.rs.name} exceeds the cap of {self.cap} elements")
                        self._index[key] = found
                        matrices.append(matrices[idx] @ self.generator_matrices[i])
                        keys.append(np.array(key, dtype=np.int64))
                        words.append(words[idx] + (i,))
                        lengths.append(length)
                        right.append([-1] * len(self.generators))
                        nxt.append(found)
                    right[idx][i] = found
            level = nxt

        self.elements = [
            WeylElt(index=k, word=words[k], length=lengths[k], group_id=self.group_id,
                    action_matrix=matrices[k])
            for k in range(len(matrices))
        ]
        self.right = right
        # s_i w sends rho to s_i(w rho)
        self.left = [
            [self._index[tuple((m @ keys[k]).tolist())] for m in self.generator_matrices]
            for k in range(len(matrices))
        ]
        self.longest = max(self.elements, key=lambda w: w.length)
        config.status(f"✓ Enumerated {len(self.elements)} elements of W ({self.group_id})")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElt:
        return self.elements[0]

    def check_member(self, *elts: WeylElt):
        for w in elts:
            if w.group_id != self.group_id:
                raise PreconditionError(f"element {w.word_string()} belongs to {w.group_id}, not {self.group_id}")

    def element_from_word(self, word: Iterable[int]) -> WeylElt:
        """The element a reduced word spells; non-reduced words are rejected"""
        word = tuple(word)
        idx = 0
        for i in word:
            if not 0 <= i < len(self.generators):
                raise PreconditionError(f"generator index {i + 1} out of range")
            idx = self.right[idx][i]
        if self.elements[idx].length != len(word):
            spelled = '.'.join(str(i + 1) for i in word)
            raise PreconditionError(f"word {spelled} is not reduced")
        return self.elements[idx]

    def times_generator(self, w: WeylElt, i: int) -> WeylElt:
        """w s_i"""
        return self.elements[self.right[w.index][i]]

    def generator_times(self, i: int, w: WeylElt) -> WeylElt:
        """s_i w"""
        return self.elements[self.left[w.index][i]]

    def left_descent(self, w: WeylElt) -> Optional[int]:
        for i in range(len(self.generators)):
            if self.elements[self.left[w.index][i]].length < w.length:
                return i
        return None

    def act(self, w: WeylElt, weight: Weight) -> Weight:
        return apply_matrix(w.action_matrix, weight)

    def bruhat_leq(self, x: WeylElt, y: WeylElt) -> bool:
        """x <= y via the descent criterion: for s y < y, x <= y iff min(x, s x) <= s y"""
        self.check_member(x, y)
        xi, yi = x.index, y.index
        elements, left = self.elements, self.left
        while True:
            lx, ly = elements[xi].length, elements[yi].length
            if lx == 0:
                return True
            if lx >= ly:
                return xi == yi
            s = next(i for i in range(len(self.generators)) if elements[left[yi][i]].length < ly)
            sx = left[xi][s]
            if elements[sx].length < lx:
                xi = sx
            yi = left[yi][s]

    def bruhat_leq_subword(self, x: WeylElt, y: WeylElt) -> bool:
        """x <= y iff x is the product of a subword of a reduced word of y"""
        self.check_member(x, y)
        reachable = {0}
        for i in y.word:
            reachable |= {self.right[z][i] for z in reachable}
        return x.index in reachable


@lru_cache(maxsize=None)
def _cached_group(rs: RootSystem, generators: Tuple[Root, ...]) -> WeylGroup:
    return WeylGroup(rs, generators)


def weyl_group(rs: RootSystem, generators: Optional[Sequence[Root]] = None) -> WeylGroup:
    """Cached group for a root system (simple reflections unless generators are given)"""
    return _cached_group(rs, tuple(generators) if generators is not None else tuple(rs.simple_roots))


def enumerate_weyl_group(rs: RootSystem, cap: Optional[int] = None) -> List[WeylElt]:
    """All elements of W, each with its reduced word and matrix"""
    if cap is not None and cap != config.WEYL_GROUP_CAP:
        return WeylGroup(rs, rs.simple_roots, cap=cap).elements
    return weyl_group(rs).elements


def dot_action(w: WeylElt, weight: Weight) -> Weight:
    """w.lambda = w(lambda + rho) - rho; rho has every fundamental coordinate 1"""
    rho = Weight((Fraction(1),) * weight.rank)
    return apply_matrix(w.action_matrix, weight + rho) - rho


def group_of(w: WeylElt) -> WeylGroup:
    group = _GROUPS.get(w.group_id)
    if group is None:
        raise PreconditionError(f"no enumerated group with id {w.group_id}")
    return group


def bruhat_leq(x: WeylElt, y: WeylElt) -> bool:
    """Bruhat order inside the enumerated group the elements came from"""
    if x.group_id != y.group_id:
        raise PreconditionError("elements come from different groups")
    return group_of(y).bruhat_leq(x, y)
