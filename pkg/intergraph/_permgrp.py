"""
Finite permutation groups
=========================

Groups are materialized: every element is stored as an image array, in
lexicographic order, so that element indices are reproducible. Subgroups are
sorted index arrays into that ordering, and all set operations (closure,
conjugation, containment) run on the Cayley table.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import hashlib
import re
from collections import Counter, deque
from functools import cached_property, reduce
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
from sympy import isprime

from ._utils import (
    _DEFAULT_GROUP_CAP,
    _DEFAULT_SUBGROUP_COUNT_CAP,
    _logger,
    get_lattice_cap,
)
from .base import CapExceededError, IdentityViolationError, Report, check

_JOIN_ORACLE_CAP = 200

_CYCLE = re.compile(r"\(([^()]*)\)")
_CYCLES = re.compile(r"\s*(\([^()]*\)\s*,?\s*)*")


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored by its images.

    Products compose left to right: ``(p * q)(i) == q(p(i))``, the usual
    convention for permutation groups acting on the right.

    Parameters
    ----------
    images : sequence of int
        ``images[i]`` is the image of i.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError(f"Images {list(images)} do not define a bijection")
        arr.flags.writeable = False
        self.images = arr

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(np.arange(degree))

    @property
    def degree(self) -> int:
        return self.images.size

    def __call__(self, i: int) -> int:
        return int(self.images[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError(
                f"Degree mismatch: {self.degree} and {other.degree}"
            )
        return Permutation(other.images[self.images])

    def inverse(self) -> "Permutation":
        return Permutation(np.argsort(self.images))

    def is_identity(self) -> bool:
        return bool(np.all(self.images == np.arange(self.degree)))

    def cycles(self) -> List[List[int]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = int(self.images[i])
            while j != i:
                cycle.append(j)
                seen[j] = True
                j = int(self.images[j])
            if len(cycle) > 1:
                out.append(cycle)
        return out

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def to_cycles(self) -> str:
        """1-based disjoint cycle notation, ``()`` for the identity."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Permutation('{self.to_cycles()}', degree={self.degree})"


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``(1 2 3)(4 5)``.

    Points may be separated by spaces or commas. Each point may appear at
    most once in the whole literal, so ``(1 2)(1 3)`` is rejected rather
    than read as a product.

    Parameters
    ----------
    text : str
        The cycles. An empty string or ``()`` denotes the identity.
    degree : int, default=None
        Degree of the permutation, the largest point when None.

    Examples
    --------
    >>> p = parse_cycles("(1 2 3)", degree=3)
    >>> p(0)
    1
    """
    if _CYCLES.fullmatch(text) is None:
        raise ValueError(f"Malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if not tokens:
            continue
        if not all(t.isdigit() for t in tokens):
            raise ValueError(f"Malformed cycle {body!r} in {text!r}")
        cycles.append([int(t) - 1 for t in tokens])
    points = [i for c in cycles for i in c]
    if len(points) != len(set(points)):
        raise ValueError(f"Repeated point in {text!r}")
    if any(i < 0 for i in points):
        raise ValueError(f"Points are numbered from 1 in {text!r}")
    if degree is None:
        degree = max(points, default=-1) + 1
    if any(i >= degree for i in points):
        raise ValueError(f"Point beyond degree {degree} in {text!r}")
    images = np.arange(degree)
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return Permutation(images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


class Group:
    """A finite permutation group with all its elements listed.

    Build instances with :func:`generate`.

    Attributes
    ----------
    degree : int
        Number of points acted on.
    generators : list of Permutation
        The generators the group was built from.
    elements : ndarray of shape (order, degree)
        Image arrays in lexicographic order; index 0 is the identity.
    order : int
        Number of elements.
    name : str or None
        Optional label, used in reports.
    """

    def __init__(
        self,
        degree,
        generators,
        elements,
        right_table,
        parent,
        via,
        discovery,
        name=None,
    ):
        self.degree = degree
        self.generators = list(generators)
        self.elements = elements
        self.order = elements.shape[0]
        self.name = name
        self._right = right_table
        self._parent = parent
        self._via = via
        self._discovery = discovery
        self._index = {row.tobytes(): i for i, row in enumerate(elements)}

    def __len__(self):
        return self.order

    def __repr__(self):
        name = f"{self.name!r}, " if self.name else ""
        return f"Group({name}order={self.order}, degree={self.degree})"

    def element(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def index_of(self, p: Union[Permutation, Sequence[int]]) -> int:
        images = p.images if isinstance(p, Permutation) else np.asarray(p)
        try:
            return self._index[np.asarray(images, dtype=np.int32).tobytes()]
        except KeyError:
            raise ValueError(f"{p!r} is not an element of {self!r}") from None

    def __contains__(self, p) -> bool:
        images = p.images if isinstance(p, Permutation) else np.asarray(p)
        return np.asarray(images, dtype=np.int32).tobytes() in self._index

    def _as_index(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.order:
                raise ValueError(f"Element index {x} out of range")
            return int(x)
        return self.index_of(x)

    @cached_property
    def generator_indices(self) -> np.ndarray:
        """A small generating set, as element indices.

        The given generators are scanned in order and kept only when they
        enlarge the subgroup generated so far.
        """
        kept = []
        current = np.zeros(1, dtype=np.int64)
        for g in self.generators:
            i = self.index_of(g)
            if i == 0 or np.any(current == i):
                continue
            current = _join(self, current, [i])
            kept.append(i)
            if current.size == self.order:
                break
        return np.array(kept, dtype=np.int64)

    @cached_property
    def cayley_table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] * elements[j]``.

        Filled column by column along the Schreier tree of the closure: if
        ``e_j = e_k * g`` for a generator g then column j is column k pushed
        through right multiplication by g.
        """
        n = self.order
        dtype = np.int16 if n < 2**15 else np.int32
        table = np.empty((n, n), dtype=dtype)
        table[:, 0] = np.arange(n)
        for j in self._discovery[1:]:
            table[:, j] = self._right[table[:, self._parent[j]], self._via[j]]
        return table

    @cached_property
    def inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.cayley_table == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        table = self.cayley_table
        everything = np.arange(self.order)
        orders = np.zeros(self.order, dtype=np.int64)
        power = everything.copy()
        k = 1
        while True:
            done = (power == 0) & (orders == 0)
            orders[done] = k
            if np.all(orders):
                return orders
            power = table[power, everything]
            k += 1

    def is_abelian(self) -> bool:
        table = self.cayley_table
        return bool(np.array_equal(table, table.T))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.zeros(1, dtype=np.int64))


def generate(
    generators: Iterable[Permutation],
    *,
    degree: Optional[int] = None,
    cap: Optional[int] = None,
    name: Optional[str] = None,
) -> Group:
    """Closure of a list of permutations.

    Parameters
    ----------
    generators : iterable of Permutation
        Generators of common degree. May be empty, giving the trivial group.
    degree : int, default=None
        Required when there are no generators.
    cap : int, default=None
        Maximal group order, 20,000 when None.
    name : str, default=None
        Label kept on the group.

    Returns
    -------
    group : Group

    Raises
    ------
    CapExceededError
        If the closure grows beyond `cap`; the partial size reached is kept
        on the exception.
    """
    generators = [
        g if isinstance(g, Permutation) else Permutation(g) for g in generators
    ]
    degrees = {g.degree for g in generators}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise ValueError(f"Generators of different degrees: {sorted(degrees)}")
    if not degrees:
        raise ValueError("'degree' is required when no generators are given")
    (n,) = degrees
    cap = _DEFAULT_GROUP_CAP if cap is None else cap

    rows = [np.arange(n, dtype=np.int32)]
    index = {rows[0].tobytes(): 0}
    parent, via, right = [-1], [-1], []
    gen_images = [g.images for g in generators]
    i = 0
    while i < len(rows):
        x = rows[i]
        products = []
        for k, g in enumerate(gen_images):
            y = g[x]
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = len(rows)
                if j >= cap:
                    raise CapExceededError(
                        f"Group closure exceeds the cap of {cap} elements",
                        cap=cap,
                        reached=j,
                    )
                index[key] = j
                rows.append(y)
                parent.append(i)
                via.append(k)
            products.append(j)
        right.append(products)
        i += 1

    elements = np.array(rows, dtype=np.int32).reshape(len(rows), n)
    order = np.lexsort(elements.T[::-1])
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    right = np.array(right, dtype=np.int64).reshape(len(rows), len(gen_images))
    right = rank[right[order]]
    parent = np.array(parent, dtype=np.int64)[order]
    parent = np.where(parent >= 0, rank[np.maximum(parent, 0)], -1)
    via = np.array(via, dtype=np.int64)[order]
    group = Group(n, generators, elements[order], right, parent, via, rank, name=name)
    _logger.debug(f"Generated {group!r} from {len(generators)} generators")
    return group


class Subgroup:
    """A subgroup of a :class:`Group`, as a sorted array of element indices.

    The byte string of the index array is the canonical key used for
    deduplication; two subgroups are equal iff they share parent and key.
    """

    def __init__(self, parent: Group, indices):
        indices = np.unique(np.asarray(indices, dtype=np.int64))
        if parent.order % indices.size:
            raise ValueError(
                f"Subset of size {indices.size} violates Lagrange in a group "
                f"of order {parent.order}"
            )
        self.parent = parent
        self.indices = indices
        self.order = int(indices.size)
        self.key = indices.tobytes()

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.indices] = True
        return mask

    def __contains__(self, x) -> bool:
        return bool(self.mask[self.parent._as_index(x)])

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other: "Subgroup") -> bool:
        _check_parent(self, other)
        return self.order <= other.order and bool(np.all(other.mask[self.indices]))

    def __lt__(self, other: "Subgroup") -> bool:
        return self.order < other.order and self <= other

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def elements(self) -> List[Permutation]:
        return [self.parent.element(i) for i in self.indices]

    @property
    def fingerprint(self) -> str:
        """Short digest of the canonical key, stable across runs."""
        return hashlib.sha1(self.key).hexdigest()[:12]

    def __repr__(self):
        return f"Subgroup(order={self.order}, key={self.fingerprint})"


def _check_parent(a: Subgroup, b: Subgroup):
    if a.parent is not b.parent:
        raise ValueError("Subgroups of different parent groups")


def _join(G: Group, base: np.ndarray, extra: Sequence[int]) -> np.ndarray:
    """Element indices of the subgroup generated by a subgroup and elements.

    The set grows as a union of left cosets ``x * base``, and is closed once
    every element times every extra generator is inside.
    """
    table = G.cayley_table
    extra = np.asarray(extra, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[base] = True
    frontier = np.asarray(base, dtype=np.int64)
    while frontier.size:
        products = table[np.ix_(frontier, extra)].ravel()
        products = np.unique(products[~mask[products]])
        if not products.size:
            break
        cosets = np.unique(table[np.ix_(products, base)].ravel())
        mask[cosets] = True
        frontier = cosets.astype(np.int64)
    return np.flatnonzero(mask)


def subgroup_generated(G: Group, elements: Iterable) -> Subgroup:
    """The subgroup generated by some elements (indices or permutations)."""
    idx = [G._as_index(x) for x in elements]
    return Subgroup(G, _join(G, np.zeros(1, dtype=np.int64), idx))


def cyclic_subgroup(G: Group, x) -> Subgroup:
    i = G._as_index(x)
    table = G.cayley_table
    powers = [0]
    p = i
    while p != 0:
        powers.append(p)
        p = int(table[p, i])
    return Subgroup(G, powers)


def join(S1: Subgroup, S2: Subgroup) -> Subgroup:
    _check_parent(S1, S2)
    return Subgroup(S1.parent, _join(S1.parent, S1.indices, S2.indices))


def intersect(S1: Subgroup, S2: Subgroup) -> Subgroup:
    _check_parent(S1, S2)
    return Subgroup(S1.parent, np.intersect1d(S1.indices, S2.indices))


def conjugate(S: Subgroup, g) -> Subgroup:
    """``g^-1 S g``."""
    G = S.parent
    i = G._as_index(g)
    table = G.cayley_table
    return Subgroup(G, table[table[G.inverses[i], S.indices], i])


def conjugates(S: Subgroup) -> List[Subgroup]:
    """The orbit of S under conjugation, in discovery order from S."""
    seen = {S.key: S}
    queue = deque([S])
    gens = S.parent.generator_indices
    while queue:
        T = queue.popleft()
        for g in gens:
            U = conjugate(T, g)
            if U.key not in seen:
                seen[U.key] = U
                queue.append(U)
    return list(seen.values())


def normalizer(G: Group, S: Subgroup, *, chunk_size: int = 512) -> Subgroup:
    if S.parent is not G:
        raise ValueError("The subgroup does not belong to this group")
    table = G.cayley_table
    inv = G.inverses
    mask = S.mask
    keep = []
    for start in range(0, G.order, chunk_size):
        g = np.arange(start, min(start + chunk_size, G.order))
        left = table[inv[g][:, None], S.indices[None, :]]
        conj = table[left, g[:, None]]
        keep.append(g[np.all(mask[conj], axis=1)])
    return Subgroup(G, np.concatenate(keep))


def centralizer(G: Group, x) -> Subgroup:
    i = G._as_index(x)
    table = G.cayley_table
    return Subgroup(G, np.flatnonzero(table[:, i] == table[i, :]))


def point_stabilizer(G: Group, point: int) -> Subgroup:
    """Elements fixing a point (0-based)."""
    if not 0 <= point < G.degree:
        raise ValueError(f"Point {point} out of range for degree {G.degree}")
    return Subgroup(G, np.flatnonzero(G.elements[:, point] == point))


def setwise_stabilizer(G: Group, points: Iterable[int]) -> Subgroup:
    """Elements mapping a set of points (0-based) onto itself."""
    points = np.unique(np.asarray(list(points), dtype=np.int64))
    if points.size and (points.min() < 0 or points.max() >= G.degree):
        raise ValueError(f"Points {points.tolist()} out of range for degree {G.degree}")
    inside = np.isin(G.elements[:, points], points)
    return Subgroup(G, np.flatnonzero(np.all(inside, axis=1)))


def involutions(S: Subgroup) -> np.ndarray:
    """Indices of the elements of order 2 in S."""
    return S.indices[S.parent.element_orders[S.indices] == 2]


def dihedral_join(G: Group, x, y) -> Subgroup:
    """The subgroup generated by two involutions.

    It is dihedral of order ``2 * order(x * y)``, which is 2 when x == y.
    """
    i, j = G._as_index(x), G._as_index(y)
    orders = G.element_orders
    if orders[i] != 2 or orders[j] != 2:
        raise ValueError(
            f"dihedral_join expects involutions, got orders {orders[i]} and {orders[j]}"
        )
    return Subgroup(G, _join(G, np.array([0, i], dtype=np.int64), [j]))


class Lattice:
    """All subgroups of a group, sorted by order then canonical key.

    Parameters
    ----------
    group : Group
        The parent group.
    subgroups : iterable of Subgroup
        Every subgroup, each exactly once.
    classes : list of list of int, default=None
        Conjugacy classes as positions into the sorted subgroup list. Computed
        on demand when None.
    maximal_classes : set of int, default=None
        Classes known to consist of maximal subgroups.
    """

    def __init__(self, group: Group, subgroups, classes=None, maximal_classes=None):
        self.group = group
        self.subgroups = sorted(
            subgroups, key=lambda S: (S.order, tuple(S.indices.tolist()))
        )
        self._position = {S.key: i for i, S in enumerate(self.subgroups)}
        if len(self._position) != len(self.subgroups):
            raise ValueError("Duplicate subgroups in lattice")
        if classes is not None:
            classes = [sorted(c) for c in classes]
            classes.sort()
        self._classes = classes
        self._maximal_classes = maximal_classes

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i) -> Subgroup:
        return self.subgroups[i]

    def __repr__(self):
        return f"Lattice({self.group!r}, subgroups={len(self)})"

    def position(self, S: Subgroup) -> int:
        try:
            return self._position[S.key]
        except KeyError:
            raise ValueError(f"{S!r} is not in the lattice") from None

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]

    def proper_nontrivial(self) -> List[Subgroup]:
        return [S for S in self.subgroups if 1 < S.order < self.group.order]

    def order_counts(self) -> Dict[int, int]:
        return dict(sorted(Counter(S.order for S in self.subgroups).items()))

    def conjugacy_classes(self) -> List[List[int]]:
        """Conjugacy classes of subgroups, as sorted lists of positions."""
        if self._classes is None:
            seen = set()
            classes = []
            for i, S in enumerate(self.subgroups):
                if i in seen:
                    continue
                members = sorted(self.position(T) for T in conjugates(S))
                seen.update(members)
                classes.append(members)
            self._classes = sorted(classes)
        return self._classes

    def class_representatives(self) -> List[Subgroup]:
        return [self.subgroups[c[0]] for c in self.conjugacy_classes()]

    def class_of(self) -> np.ndarray:
        labels = np.empty(len(self), dtype=np.int64)
        for k, members in enumerate(self.conjugacy_classes()):
            labels[members] = k
        return labels

    def maximals(self) -> List[Subgroup]:
        return maximals(self)

    def prime_order_subgroups(self) -> List[Subgroup]:
        return prime_order_subgroups(self)


def _cyclic_subgroups(G: Group) -> List[Subgroup]:
    found = {}
    for i in range(G.order):
        if i == 0:
            continue
        C = cyclic_subgroup(G, i)
        found.setdefault(C.key, C)
    return list(found.values())


def all_subgroups(
    G: Group, *, cap: Optional[int] = None, count_cap: Optional[int] = None
) -> Lattice:
    """Enumerate every subgroup of G.

    Cyclic extension: starting from the cyclic subgroups, every known
    subgroup H is joined with each cyclic subgroup not inside H until no new
    subgroup appears. Only one representative per conjugacy class is
    extended; the whole class of each new subgroup is added at once, which
    keeps the search complete since conjugation commutes with joins.

    Parameters
    ----------
    G : Group
        Group of order at most the lattice cap.
    cap : int, default=None
        Lattice cap on ``G.order``, resolved by :func:`get_lattice_cap`.
    count_cap : int, default=None
        Maximal number of subgroups, 200,000 when None.

    Returns
    -------
    lattice : Lattice
    """
    cap = get_lattice_cap(cap)
    count_cap = _DEFAULT_SUBGROUP_COUNT_CAP if count_cap is None else count_cap
    if G.order > cap:
        raise CapExceededError(
            f"Group of order {G.order} is above the lattice cap {cap}",
            cap=cap,
            reached=G.order,
        )
    cyclic = _cyclic_subgroups(G)
    cyclic_gens = [_generator(G, C) for C in cyclic]
    _logger.info(f"Enumerating subgroups of {G!r} from {len(cyclic)} cyclic subgroups")

    found: Dict[bytes, Subgroup] = {}
    class_of: Dict[bytes, int] = {}
    classes: List[List[bytes]] = []
    queue = deque()

    def _add_class(S: Subgroup):
        if S.key in found:
            return
        members = conjugates(S)
        for T in members:
            found[T.key] = T
            class_of[T.key] = len(classes)
        classes.append([T.key for T in members])
        if len(found) > count_cap:
            raise CapExceededError(
                f"More than {count_cap} subgroups", cap=count_cap, reached=len(found)
            )
        queue.append(S)

    _add_class(G.trivial)
    for C in cyclic:
        _add_class(C)

    maximal_classes = set()
    while queue:
        H = queue.popleft()
        has_proper_overgroup = False
        for C, g in zip(cyclic, cyclic_gens):
            if H.mask[g]:
                continue
            J = Subgroup(G, _join(G, H.indices, [g]))
            if not J.is_whole():
                has_proper_overgroup = True
            _add_class(J)
        if 1 < H.order < G.order and not has_proper_overgroup:
            maximal_classes.add(class_of[H.key])
        _logger.debug(f"Extended a subgroup of order {H.order}, {len(found)} known")

    _add_class(G.whole)
    subgroups = list(found.values())
    lattice = Lattice(G, subgroups)
    classes_pos = [[lattice.position(found[k]) for k in c] for c in classes]
    maximal_pos = {min(classes_pos[k]) for k in maximal_classes}
    lattice._classes = sorted(sorted(c) for c in classes_pos)
    lattice._maximal_classes = {
        k for k, c in enumerate(lattice._classes) if c[0] in maximal_pos
    }
    _logger.info(
        f"Found {len(subgroups)} subgroups in {len(classes)} conjugacy classes"
    )
    return lattice


def _generator(G: Group, C: Subgroup) -> int:
    orders = G.element_orders[C.indices]
    return int(C.indices[np.argmax(orders == C.order)])


def subgroups_by_joins(G: Group) -> Lattice:
    """Independent enumeration used to cross-check :func:`all_subgroups`.

    Every subgroup generated by at most two elements is built directly, and
    pairwise joins are then taken until nothing new appears. Restricted to
    groups of order at most 200.
    """
    if G.order > _JOIN_ORACLE_CAP:
        raise CapExceededError(
            f"Join enumeration is limited to order {_JOIN_ORACLE_CAP}",
            cap=_JOIN_ORACLE_CAP,
            reached=G.order,
        )
    found = {G.trivial.key: G.trivial}
    for a in range(1, G.order):
        for b in range(a, G.order):
            S = subgroup_generated(G, [a, b])
            found.setdefault(S.key, S)
    pending = list(found.values())
    while pending:
        current = list(found.values())
        new = []
        for S in pending:
            for T in current:
                J = join(S, T)
                if J.key not in found:
                    found[J.key] = J
                    new.append(J)
        pending = new
    return Lattice(G, found.values())


def maximals(lattice: Lattice) -> List[Subgroup]:
    """Proper subgroups contained in no larger proper subgroup."""
    if lattice._maximal_classes is not None:
        classes = lattice.conjugacy_classes()
        positions = sorted(
            i for k in lattice._maximal_classes for i in classes[k]
        )
        return [lattice[i] for i in positions]
    proper = lattice.proper_nontrivial()
    out = []
    for S in proper:
        if not any(S < T for T in proper if T.order > S.order):
            out.append(S)
    return out


def prime_order_subgroups(lattice: Lattice) -> List[Subgroup]:
    """The minimal nontrivial subgroups, cyclic of prime order."""
    return [S for S in lattice if isprime(S.order)]


def double_count_check(
    G: Group, H: Subgroup, M: Subgroup, *, strict: bool = False
) -> Report:
    """Count the containments between the conjugates of H and of M two ways.

    With ``H <= M``, the number of conjugates of M containing H times the
    number of conjugates of H equals the number of containing pairs, which
    equals the number of conjugates of M times the number of conjugates of H
    inside M. Every conjugate of H also lies in the same number of
    conjugates of M.

    Parameters
    ----------
    G : Group
    H, M : Subgroup
        Subgroups of G with H contained in M.
    strict : bool, default=False
        Raise :class:`IdentityViolationError` instead of recording a failed
        check.

    Returns
    -------
    report : Report
    """
    if H.parent is not G or M.parent is not G:
        raise ValueError("Subgroups do not belong to this group")
    if not H <= M:
        raise ValueError("double_count_check expects H <= M")
    H_orbit = conjugates(H)
    M_orbit = conjugates(M)
    H_mat = np.array([S.mask for S in H_orbit], dtype=np.int64)
    M_mat = np.array([S.mask for S in M_orbit], dtype=np.int64)
    contained = (H_mat @ M_mat.T) == H.order

    per_h = contained.sum(axis=1)
    per_m = contained.sum(axis=0)
    pairs = int(contained.sum())
    left = int(per_h[0]) * len(H_orbit)
    right = len(M_orbit) * int(per_m[0])
    ok = left == pairs == right and np.all(per_h == per_h[0])

    report = Report("double_count", config={"H": H.order, "M": M.order})
    report.add(
        check(
            "double_count",
            ok,
            counts={
                "H_conjugates": len(H_orbit),
                "M_conjugates": len(M_orbit),
                "pairs": pairs,
            },
            values={
                "M_containing_H": int(per_h[0]),
                "H_inside_M": int(per_m[0]),
                "left": left,
                "right": right,
            },
        )
    )
    if strict and not ok:
        raise IdentityViolationError(
            f"Counting identity fails for |H| = {H.order}, |M| = {M.order}: "
            f"{left} / {pairs} / {right}"
        )
    return report
