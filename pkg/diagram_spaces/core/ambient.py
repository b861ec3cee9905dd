"""
Symmetric monoidal ambients for operad computations.

Finite sets are modelled as discrete diagrams over I_{<=0}, so finite sets and
discrete I- or J-spaces share one code path: the n-fold product X_1 [x] ... [x] X_n
is computed at level L as classes of cells (objs, alpha, comps) with
alpha: objs_1 + ... + objs_n -> L and comps_i in X_i(objs_i), identified along
morphisms acting on a single factor.
"""
import logging
from itertools import product as cartesian
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from diagram_spaces.core.dayconv import DiagMap, DiagSpace, levelwise_colimit
from diagram_spaces.core.errors import InvariantViolation
from diagram_spaces.core.fincat import CategoryI, IndexCategory, MorI, category_by_name
from diagram_spaces.core.sset import FinSSet, SSetMap

logger = logging.getLogger(__name__)

Cell = Tuple[Tuple[Any, ...], Any, Tuple[Hashable, ...]]


# ============================================================================
# CELLS
# ============================================================================

def as_cell(cat: IndexCategory, obj: Any, x: Hashable) -> Cell:
    return ((obj,), cat.identity(obj), (x,))


def permute_cell(cat: IndexCategory, cell: Cell, sigma: MorI) -> Cell:
    """sigma . cell moves factor j to position sigma(j)"""
    objs, alpha, comps = cell
    n = len(objs)
    new_objs, new_comps = [None] * n, [None] * n
    for j in range(n):
        new_objs[sigma(j + 1) - 1] = objs[j]
        new_comps[sigma(j + 1) - 1] = comps[j]
    B = cat.block_permutation(objs, sigma.image)
    return tuple(new_objs), cat.compose(alpha, cat.inverse(B)), tuple(new_comps)


def flatten_cell(cat: IndexCategory, cell: Cell, nested: Sequence[bool]) -> Cell:
    """Flatten a cell whose flagged factors are themselves cells of an inner product"""
    objs, alpha, comps = cell
    flat_objs, flat_comps, inner = [], [], []
    for obj, comp, is_nested in zip(objs, comps, nested):
        inner_objs, inner_alpha, inner_comps = comp if is_nested else as_cell(cat, obj, comp)
        flat_objs.extend(inner_objs)
        flat_comps.extend(inner_comps)
        inner.append(inner_alpha)
    return tuple(flat_objs), cat.compose(alpha, cat.concat_mors(inner)), tuple(flat_comps)


# ============================================================================
# N-FOLD PRODUCTS
# ============================================================================

Weight = Callable[[Any, Hashable], int]


class Tensor(DiagSpace):
    """
    X_1 [x] ... [x] X_n for discrete factors; elements are canonical cells.

    With weights and a budget only cells whose factor weights sum to at most the
    budget are built; weights must be invariant under the action.
    """

    def __init__(self, cat: IndexCategory, factors: Sequence[DiagSpace], name: Optional[str] = None,
                 weights: Optional[Sequence[Optional[Weight]]] = None, budget: Optional[int] = None):
        self.factors = list(factors)
        self.n = len(self.factors)
        self.weights = list(weights) if weights is not None else [None] * self.n
        self.budget = budget
        self._canon: Dict[Any, Dict[Cell, Cell]] = {}
        preimages = [self._preimages(cat, X) for X in self.factors]
        elements = {}
        for L in cat.objects():
            elements[L] = self._build_level(cat, L, preimages)
        levels = {L: FinSSet.discrete(elements[L]) for L in cat.objects()}

        def act_fn(f):
            target = self._canon[cat.dst(f)]
            return SSetMap.from_vertex_map(
                levels[cat.src(f)], levels[cat.dst(f)],
                lambda c: target[(c[0], cat.compose(f, c[1]), c[2])])

        super().__init__(cat, levels, act_fn, name or '[x]'.join(X.name for X in self.factors) or 'unit')
        logger.debug(f"Product {self.name}: {self.sizes()}")

    @staticmethod
    def _preimages(cat: IndexCategory, X: DiagSpace) -> Dict[Tuple[Any, Hashable], List[Tuple[Any, Any, Hashable]]]:
        """(b, y) -> all (a, gamma, x) with gamma non-identity and gamma . x = y"""
        table: Dict[Tuple[Any, Hashable], List[Tuple[Any, Any, Hashable]]] = {}
        for b in cat.objects():
            for a in cat.objects():
                if not X.elements(a) or not cat.fits(a, b):
                    continue
                for gamma in cat.hom(a, b):
                    if cat.is_identity(gamma):
                        continue
                    for x in X.elements(a):
                        table.setdefault((b, X.act_vertex(gamma, x)), []).append((a, gamma, x))
        return table

    def _object_tuples(self, cat: IndexCategory, L: Any) -> List[Tuple[Any, ...]]:
        limit = cat.size(L)
        supports = [[o for o in cat.objects() if X.elements(o)] for X in self.factors]
        result = []

        def extend(prefix, acc):
            if len(prefix) == self.n:
                if cat.fits(acc, L):
                    result.append(prefix)
                return
            for o in supports[len(prefix)]:
                nxt = cat.concat(acc, o)
                if cat.size(nxt) <= limit:
                    extend(prefix + (o,), nxt)

        extend((), cat.unit)
        return result

    def weight_of(self, objs: Sequence[Any], comps: Sequence[Hashable]) -> int:
        return sum(w(o, x) for w, o, x in zip(self.weights, objs, comps) if w is not None)

    def _component_tuples(self, objs: Tuple[Any, ...]) -> List[Tuple[Hashable, ...]]:
        if self.budget is None:
            return list(cartesian(*(X.elements(o) for X, o in zip(self.factors, objs))))
        result = []

        def extend(prefix, used):
            i = len(prefix)
            if i == self.n:
                result.append(prefix)
                return
            w = self.weights[i]
            for x in self.factors[i].elements(objs[i]):
                total = used + (0 if w is None else w(objs[i], x))
                if total <= self.budget:
                    extend(prefix + (x,), total)

        extend((), 0)
        return result

    def _build_level(self, cat: IndexCategory, L: Any, preimages) -> List[Cell]:
        cells = []
        for objs in self._object_tuples(cat, L):
            source = cat.concat_all(objs)
            tuples = self._component_tuples(objs)
            for alpha in cat.hom(source, L):
                cells.extend((objs, alpha, comps) for comps in tuples)
        uf = UnionFind(cells)
        present = set(cells)
        for objs, alpha, comps in cells:
            for i in range(self.n):
                for a, gamma, x in preimages[i].get((objs[i], comps[i]), []):
                    mors = [cat.identity(o) for o in objs]
                    mors[i] = gamma
                    source = (objs[:i] + (a,) + objs[i + 1:], cat.compose(alpha, cat.concat_mors(mors)),
                              comps[:i] + (x,) + comps[i + 1:])
                    if source in present:
                        uf.union(source, (objs, alpha, comps))
        canon = {}
        for members in uf.to_sets():
            name = min(members, key=repr)
            for member in members:
                canon[member] = name
        self._canon[L] = canon
        return sorted(set(canon.values()), key=repr)

    def class_of(self, L: Any, objs: Sequence[Any], alpha: Any, comps: Sequence[Hashable]) -> Cell:
        key = (tuple(objs), alpha, tuple(comps))
        try:
            return self._canon[L][key]
        except KeyError:
            raise InvariantViolation(f"{key!r} is not a cell of {self.name} at {self.cat.key(L)}")

    def cell_class(self, L: Any, cell: Cell) -> Cell:
        return self.class_of(L, *cell)

    def find(self, L: Any, cell: Cell) -> Optional[Cell]:
        """The class of cell, or None when it lies outside the weight budget"""
        return self._canon[L].get((tuple(cell[0]), cell[1], tuple(cell[2])))

    def permute(self, L: Any, x: Cell, sigma: MorI) -> Cell:
        return self.cell_class(L, permute_cell(self.cat, x, sigma))


def tensor_map(maps: Sequence[Optional[DiagMap]], source: Tensor, target: Tensor) -> DiagMap:
    """f_1 [x] ... [x] f_n; None stands for an identity factor"""

    def on_cell(L, cell):
        objs, alpha, comps = cell
        moved = tuple(x if f is None else f.component(o).on_vertex(x) for f, o, x in zip(maps, objs, comps))
        return target.class_of(L, objs, alpha, moved)

    return DiagMap.from_vertex_fn(source, target, on_cell)


# ============================================================================
# COLIMITS OVER NODE DIAGRAMS
# ============================================================================

class NodeColimit(DiagSpace):
    """A levelwise colimit whose nodes carry labels; names are (node index, element)"""

    def __init__(self, cat: IndexCategory, labels: Sequence[Hashable], spaces: Dict[Hashable, DiagSpace],
                 edges: Sequence[Tuple[Hashable, Hashable, DiagMap]], name: str = 'colim'):
        self.labels = list(labels)
        self.spaces = spaces
        self.index = {label: i for i, label in enumerate(self.labels)}
        if self.labels:
            D, maps = levelwise_colimit([spaces[l] for l in self.labels],
                                        [(self.index[a], self.index[b], f) for a, b, f in edges], name=name)
            super().__init__(cat, D.levels, D._act_fn, name)
            self.injections = [DiagMap(m.source, self, m.components) for m in maps]
        else:
            levels = {k: FinSSet.discrete([]) for k in cat.objects()}
            super().__init__(cat, levels, lambda f: SSetMap(levels[cat.src(f)], levels[cat.dst(f)], {}), name)
            self.injections = []

    def class_of(self, label: Hashable, L: Any, x: Hashable) -> Hashable:
        return self.injections[self.index[label]].component(L).on_vertex(x)

    def representative(self, name: Tuple[int, Hashable]) -> Tuple[Hashable, Hashable]:
        i, x = name
        return self.labels[i], x

    def map_out(self, target: DiagSpace, fn: Callable[[Hashable, Any, Hashable], Hashable]) -> DiagMap:
        """The map defined on representatives by fn(label, L, x)"""
        return DiagMap.from_vertex_fn(self, target, lambda L, name: fn(self.labels[name[0]], L, name[1]))


class SymmetricCube(NodeColimit):
    """
    Colimit of products X_{s_1} [x] ... [x] X_{s_n} over label tuples s; the
    symmetric group permutes coordinates and factors together.
    """

    def permute(self, L: Any, name: Tuple[int, Hashable], sigma: MorI) -> Hashable:
        s, x = self.representative(name)
        t = [None] * len(s)
        for j, v in enumerate(s):
            t[sigma(j + 1) - 1] = v
        t = tuple(t)
        return self.class_of(t, L, self.spaces[t].cell_class(L, permute_cell(self.cat, x, sigma)))


# ============================================================================
# AMBIENTS
# ============================================================================

class Ambient:
    """Finite sets (the category I_{<=0}) or discrete diagrams over I or J"""

    def __init__(self, cat: IndexCategory, name: Optional[str] = None):
        self.cat = cat
        self.name = name or f'{cat.name}-spaces'
        self._products: Dict[Tuple[int, ...], Tensor] = {}
        self._keep: List[DiagSpace] = []

    @classmethod
    def finite_sets(cls) -> 'Ambient':
        return cls(CategoryI(0), name='FinSet')

    @classmethod
    def diagrams(cls, cat_name: str, max_degree: int) -> 'Ambient':
        return cls(category_by_name(cat_name, max_degree))

    @property
    def is_finite_sets(self) -> bool:
        return isinstance(self.cat, CategoryI) and self.cat.max_degree == 0

    def finite_set(self, points: Sequence[Hashable], name: str = 'S') -> DiagSpace:
        if not self.is_finite_sets:
            raise ValueError(f"finite_set needs the FinSet ambient, not {self.name}")
        return DiagSpace.discrete(self.cat, {0: list(points)}, lambda f, v: v, name=name)

    def finite_map(self, source: DiagSpace, target: DiagSpace, fn: Callable[[Hashable], Hashable]) -> DiagMap:
        return DiagMap.from_vertex_fn(source, target, lambda k, v: fn(v))

    def tensor(self, factors: Sequence[DiagSpace], name: Optional[str] = None,
               weights: Optional[Sequence[Optional[Weight]]] = None, budget: Optional[int] = None) -> Tensor:
        key = (tuple(id(X) for X in factors),
               tuple(id(w) for w in weights) if weights is not None else None, budget)
        if key not in self._products:
            self._keep.extend(factors)
            self._keep.extend(w for w in weights or [] if w is not None)
            self._products[key] = Tensor(self.cat, factors, name, weights, budget)
        return self._products[key]

    def power(self, X: DiagSpace, n: int, weight: Optional[Weight] = None,
              budget: Optional[int] = None) -> Tensor:
        if weight is None:
            return self.tensor([X] * n, name=f'{X.name}^{n}')
        return self.tensor([X] * n, name=f'{X.name}^{n}', weights=[weight] * n, budget=budget)

    def unit(self) -> Tensor:
        return self.tensor([])

    def is_positive(self, X: DiagSpace) -> bool:
        """X is empty at every object of degree 0"""
        return all(not X.elements(o) for o in self.cat.objects() if self.cat.degree(o) == 0)

    def cube(self, spaces: Dict[int, DiagSpace], arrows: Dict[Tuple[int, int], DiagMap], n: int,
             allowed: Callable[[Tuple[int, ...]], bool], all_relations: bool = False,
             name: str = 'cube', weights: Optional[Dict[int, Weight]] = None,
             budget: Optional[int] = None) -> SymmetricCube:
        """
        Colimit over label tuples s in allowed, with edges s -> t along one arrow in
        one coordinate; all_relations uses every comparable pair instead.
        """
        labels = [s for s in cartesian(sorted(spaces), repeat=n) if allowed(s)]
        if weights is None:
            nodes = {s: self.tensor([spaces[v] for v in s]) for s in labels}
        else:
            nodes = {s: self.tensor([spaces[v] for v in s], weights=[weights[v] for v in s], budget=budget)
                     for s in labels}
        present = set(labels)
        edges = []
        for s in labels:
            options = [[(v, None)] + [(b, arrows[(a, b)]) for (a, b) in arrows if a == v] for v in s]
            for choice in cartesian(*options):
                t = tuple(v for v, _ in choice)
                moved = sum(1 for _, f in choice if f is not None)
                if t not in present or moved == 0 or (moved > 1 and not all_relations):
                    continue
                edges.append((s, t, tensor_map([f for _, f in choice], nodes[s], nodes[t])))
        logger.debug(f"Cube {name}: {len(labels)} nodes, {len(edges)} edges")
        return SymmetricCube(self.cat, labels, nodes, edges, name=name)
