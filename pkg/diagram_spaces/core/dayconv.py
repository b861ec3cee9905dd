"""
Diagram spaces over truncated index categories.

Provides diagrams X: K -> finite simplicial sets with their maps, the free and
semi-free functors, the Day convolution product computed as an exact colimit
over the comma category (concat | n), and monoid checks.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from diagram_spaces.core.errors import FixtureError, IterationCapError
from diagram_spaces.core.fincat import CategoryI, IndexCategory, category_by_name, comma_category, morphism_from_dict
from diagram_spaces.core.models import CheckResult
from diagram_spaces.core.sset import (
    DEFAULT_DIM_CAP, FinSSet, SSetMap, colimit, hocolim, hocolim_map, identity_eta, product, product_map,
)

logger = logging.getLogger(__name__)

DEFAULT_QUOTIENT_CAP = 1_000_000


class DiagSpace:
    """
    A functor from a truncated index category to finite simplicial sets.

    Levels are built eagerly; morphism actions are computed on first use and cached.
    """

    def __init__(self, cat: IndexCategory, levels: Dict[Any, FinSSet],
                 act_fn: Callable[[Any], SSetMap], name: str = 'X'):
        self.cat = cat
        self.levels = levels
        self._act_fn = act_fn
        self._act_cache: Dict[Any, SSetMap] = {}
        self.name = name

    @property
    def max_degree(self) -> int:
        return self.cat.max_degree

    def objects(self) -> List[Any]:
        return self.cat.objects()

    def level(self, obj: Any) -> FinSSet:
        return self.levels[obj]

    def elements(self, obj: Any) -> List[Hashable]:
        return self.levels[obj].vertices()

    def act(self, f: Any) -> SSetMap:
        cached = self._act_cache.get(f)
        if cached is None:
            cached = self._act_fn(f)
            self._act_cache[f] = cached
        return cached

    def act_vertex(self, f: Any, v: Hashable) -> Hashable:
        return self.act(f).on_vertex(v)

    @property
    def is_discrete(self) -> bool:
        return all(level.is_discrete for level in self.levels.values())

    def sizes(self) -> Dict[str, int]:
        return {self.cat.key(k): self.levels[k].size() for k in self.objects()}

    def check_functoriality(self, max_degree: Optional[int] = None) -> CheckResult:
        """Identities act trivially and composites act as composites"""
        result = CheckResult(f'functoriality[{self.name}]', True)
        cap = self.max_degree if max_degree is None else max_degree
        objs = [o for o in self.objects() if self.cat.size(o) <= cap]
        for a in objs:
            if self.act(self.cat.identity(a)) != SSetMap.identity(self.levels[a]):
                result.fail({'object': a, 'reason': 'identity acts nontrivially'})
        for a in objs:
            for b in objs:
                for f in self.cat.hom(a, b):
                    fmap = self.act(f)
                    if fmap.source is not self.levels[a] or fmap.target is not self.levels[b]:
                        result.fail({'morphism': f, 'reason': 'wrong level'})
                        continue
                    for c in objs:
                        for g in self.cat.hom(b, c):
                            if self.act(self.cat.compose(g, f)) != self.act(g).compose(fmap):
                                result.fail({'f': f, 'g': g})
                                if len(result.witnesses) > 10:
                                    return result
        return result

    @classmethod
    def discrete(cls, cat: IndexCategory, elements: Dict[Any, Iterable[Hashable]],
                 act: Callable[[Any, Hashable], Hashable], name: str = 'X',
                 dim_cap: int = DEFAULT_DIM_CAP) -> 'DiagSpace':
        levels = {k: FinSSet.discrete(elements.get(k, []), dim_cap) for k in cat.objects()}

        def act_fn(f):
            source, target = levels[cat.src(f)], levels[cat.dst(f)]
            return SSetMap.from_vertex_map(source, target, lambda v: act(f, v))

        return cls(cat, levels, act_fn, name)

    @classmethod
    def constant(cls, cat: IndexCategory, space: FinSSet, name: str = 'const') -> 'DiagSpace':
        levels = {k: space for k in cat.objects()}
        return cls(cat, levels, lambda f: SSetMap.identity(space), name)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form: levels keyed by object, action listed per non-identity morphism"""
        names = {k: {x: repr(x) for x in self.levels[k]._dim} for k in self.objects()}
        action = []
        for a in self.objects():
            for b in self.objects():
                for f in self.cat.hom(a, b):
                    if self.cat.is_identity(f):
                        continue
                    fmap = self.act(f)
                    action.append({
                        'mor': f.to_dict(),
                        'images': {names[a][x]: [names[b][y], list(eta)] for x, (y, eta) in fmap.images.items()},
                    })
        return {
            'cat': self.cat.name,
            'max_degree': self.max_degree,
            'levels': {self.cat.key(k): self.levels[k].to_dict() for k in self.objects()},
            'action': action,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], name: str = 'X') -> 'DiagSpace':
        try:
            cat = category_by_name(data['cat'], int(data['max_degree']))
            levels = {cat.parse_key(key): FinSSet.from_dict(level) for key, level in data['levels'].items()}
        except (KeyError, TypeError) as e:
            raise FixtureError(f"Malformed diagram JSON: {e}")
        for k in cat.objects():
            levels.setdefault(k, FinSSet.empty())
        table = {}
        for entry in data.get('action', []):
            f = morphism_from_dict(entry['mor'])
            table[f] = {x: (y, tuple(eta)) for x, (y, eta) in entry['images'].items()}

        def act_fn(f):
            source, target = levels[cat.src(f)], levels[cat.dst(f)]
            if cat.is_identity(f):
                return SSetMap.identity(source)
            if f not in table:
                raise FixtureError(f"Diagram JSON has no action for {f}")
            return SSetMap(source, target, table[f])

        return cls(cat, levels, act_fn, name)


class DiagMap:
    """A natural transformation between diagram spaces over the same category"""

    def __init__(self, source: DiagSpace, target: DiagSpace, components: Dict[Any, SSetMap]):
        self.source = source
        self.target = target
        self.components = components

    def component(self, obj: Any) -> SSetMap:
        return self.components[obj]

    @classmethod
    def from_vertex_fn(cls, source: DiagSpace, target: DiagSpace,
                       fn: Callable[[Any, Hashable], Hashable]) -> 'DiagMap':
        return cls(source, target, {
            k: SSetMap.from_vertex_map(source.level(k), target.level(k), lambda v, k=k: fn(k, v))
            for k in source.objects()
        })

    def check_naturality(self) -> CheckResult:
        result = CheckResult('naturality', True)
        cat = self.source.cat
        for a in cat.objects():
            for b in cat.objects():
                for f in cat.hom(a, b):
                    lhs = self.components[b].compose(self.source.act(f))
                    rhs = self.target.act(f).compose(self.components[a])
                    if lhs != rhs:
                        result.fail({'morphism': f})
                        if len(result.witnesses) > 10:
                            return result
        return result

    def compose(self, first: 'DiagMap') -> 'DiagMap':
        """self after first"""
        return DiagMap(first.source, self.target,
                       {k: self.components[k].compose(first.components[k]) for k in self.source.objects()})

    def is_levelwise_injective(self) -> bool:
        return all(self.components[k].is_injective() for k in self.source.objects())

    def is_levelwise_bijective(self) -> bool:
        return all(self.components[k].is_bijective() for k in self.source.objects())


def identity_map(X: DiagSpace) -> DiagMap:
    return DiagMap(X, X, {k: SSetMap.identity(X.level(k)) for k in X.objects()})


def empty_diagram(cat: IndexCategory) -> DiagSpace:
    return DiagSpace.discrete(cat, {}, lambda f, v: v, name='empty')


def map_from_empty(X: DiagSpace) -> DiagMap:
    E = empty_diagram(X.cat)
    return DiagMap(E, X, {k: SSetMap(E.level(k), X.level(k), {}) for k in X.objects()})


# ============================================================================
# FREE AND SEMI-FREE FUNCTORS
# ============================================================================

def _tagged_copies(keys: Sequence[Hashable], K: FinSSet) -> FinSSet:
    """Disjoint union of copies of K indexed by keys; simplices are (key, x)"""
    simplices = {d: [(key, x) for key in keys for x in K.simplices[d]] for d in K.simplices}
    faces = {(key, x): [((key, y), eta) for y, eta in K.faces[x]]
             for key in keys for x in K.faces}
    return FinSSet(simplices, faces, K.dim_cap)


def _retag(source: FinSSet, target: FinSSet, fn: Callable[[Hashable], Hashable]) -> SSetMap:
    images = {}
    for key, x in source._dim:
        images[(key, x)] = ((fn(key), x), identity_eta(source.dim_of((key, x))))
    return SSetMap(source, target, images)


def free_F(cat: IndexCategory, k: Any, K: Optional[FinSSet] = None) -> DiagSpace:
    """F_k(K) = K(k, -) x K; morphisms act by postcomposition"""
    cat.check_object(k)
    K = FinSSet.point() if K is None else K
    levels = {n: _tagged_copies(cat.hom(k, n), K) for n in cat.objects()}

    def act_fn(f):
        return _retag(levels[cat.src(f)], levels[cat.dst(f)], lambda beta: cat.compose(f, beta))

    return DiagSpace(cat, levels, act_fn, name=f'F_{cat.key(k)}')


def free_map_from(cat: IndexCategory, k: Any, K: FinSSet, Z: DiagSpace, phi: SSetMap,
                  source: Optional[DiagSpace] = None) -> DiagMap:
    """The map F_k(K) -> Z adjoint to phi: K -> Z(k), (beta, x) -> Z(beta)(phi x)"""
    F = free_F(cat, k, K) if source is None else source
    components = {}
    for n in cat.objects():
        images = {}
        for beta, x in F.level(n)._dim:
            images[(beta, x)] = Z.act(beta).apply(phi.images[x])
        components[n] = SSetMap(F.level(n), Z.level(n), images)
    return DiagMap(F, Z, components)


def free_map(cat: IndexCategory, k: Any, phi: SSetMap) -> DiagMap:
    """F_k(phi): F_k(K) -> F_k(K')"""
    target = free_F(cat, k, phi.target)
    return free_map_from(cat, k, phi.source, target, SSetMap(
        phi.source, target.level(k),
        {x: ((cat.identity(k), y), eta) for x, (y, eta) in phi.images.items()}))


def _check_group_action(cat: IndexCategory, k: Any, act: Callable[[Any], SSetMap], L: FinSSet) -> None:
    group = cat.automorphisms(k)
    if act(cat.identity(k)) != SSetMap.identity(L):
        raise ValueError(f"Identity of {cat.key(k)} does not act as the identity")
    for a in group:
        for b in group:
            if act(cat.compose(a, b)) != act(a).compose(act(b)):
                raise ValueError(f"Not a group action: {a} and {b} do not compose")


def vertex_action(L: FinSSet, fn: Callable[[Any, Hashable], Hashable]) -> Callable[[Any], SSetMap]:
    """Wrap an action on points of a discrete set as an action by simplicial maps"""
    return lambda a: SSetMap.from_vertex_map(L, L, lambda v: fn(a, v))


def semifree_G(cat: IndexCategory, k: Any, L: FinSSet, act: Callable[[Any], SSetMap]) -> DiagSpace:
    """
    G_k(L) = K(k, -) x_{K(k)} L: the orbits of (alpha gamma, x) ~ (alpha, gamma x).

    act(gamma) is the simplicial map of L given by the automorphism gamma of k.
    """
    cat.check_object(k)
    _check_group_action(cat, k, act, L)
    group = cat.automorphisms(k)
    levels, injections = {}, {}
    for n in cat.objects():
        free_level = _tagged_copies(cat.hom(k, n), L)
        edges = []
        for gamma in group:
            gamma_map = act(gamma)
            images = {}
            for beta, x in free_level._dim:
                y, eta = gamma_map.images[x]
                images[(beta, x)] = ((cat.compose(beta, cat.inverse(gamma)), y), eta)
            edges.append((0, 0, SSetMap(free_level, free_level, images)))
        levels[n], (injections[n],) = colimit([free_level], edges)

    def act_fn(f):
        m, n = cat.src(f), cat.dst(f)
        images = {}
        for name in levels[m]._dim:
            _, (beta, x) = name
            images[name] = injections[n].images[(cat.compose(f, beta), x)]
        return SSetMap(levels[m], levels[n], images)

    return SemiFreeDiagram(cat, levels, act_fn, injections, name=f'G_{cat.key(k)}')


class SemiFreeDiagram(DiagSpace):
    """G_k(L) together with the orbit map from K(k, n) x L"""

    def __init__(self, cat, levels, act_fn, injections, name):
        super().__init__(cat, levels, act_fn, name)
        self.injections = injections

    def orbit_of(self, n: Any, beta: Any, x: Hashable) -> Hashable:
        return self.injections[n].images[(beta, x)][0]


def check_free_adjunction(cat: IndexCategory, k: Any, K: FinSSet, Z: DiagSpace,
                          limit: int = 64) -> CheckResult:
    """
    Maps F_k(K) -> Z against maps K -> Z(k) on a finite sample of vertex maps.

    Each phi induces (beta, x) -> Z(beta)(phi x); the induced map must be natural
    and restrict back to phi along the identity of k.
    """
    result = CheckResult('free-adjunction', True)
    if not K.is_discrete or not Z.is_discrete:
        raise ValueError("The adjunction sample is drawn for discrete inputs")
    F = free_F(cat, k, K)
    points, targets = K.vertices(), Z.elements(k)
    checked = 0
    for values in cartesian(targets, repeat=len(points)):
        if checked >= limit:
            break
        phi = dict(zip(points, values))
        induced = DiagMap.from_vertex_fn(F, Z, lambda n, v: Z.act_vertex(v[0], phi[v[1]]))
        naturality = induced.check_naturality()
        if not naturality.passed:
            result.fail({'phi': phi, 'reason': 'induced map not natural'})
        restricted = {x: induced.component(k).on_vertex((cat.identity(k), x)) for x in points}
        if restricted != phi:
            result.fail({'phi': phi, 'restricted': restricted})
        checked += 1
    result.details = {'maps_checked': checked}
    return result


# ============================================================================
# DAY CONVOLUTION
# ============================================================================

class DayProduct(DiagSpace):
    """
    X box Y. Level n is the colimit of X(a) x Y(b) over objects (a, b, alpha: a+b -> n)
    of the comma category, glued along (gamma + 1) and (1 + delta).
    """

    def __init__(self, X: DiagSpace, Y: DiagSpace):
        cat = X.cat
        self.X, self.Y = X, Y
        self.nodes: Dict[Any, List[Tuple[Any, Any, Any]]] = {}
        self.node_index: Dict[Any, Dict[Tuple[Any, Any, Any], int]] = {}
        self.injections: Dict[Any, List[SSetMap]] = {}
        self._products: Dict[Tuple[Any, Any], FinSSet] = {}
        levels = {n: self._build_level(n) for n in cat.objects()}
        super().__init__(cat, levels, self._act_fn, name=f'{X.name}*{Y.name}')

    def _pair_space(self, a, b) -> FinSSet:
        if (a, b) not in self._products:
            self._products[(a, b)] = product(self.X.level(a), self.Y.level(b))
        return self._products[(a, b)]

    def _build_level(self, n) -> FinSSet:
        cat = self.X.cat
        nodes = []
        for a in cat.objects():
            for b in cat.objects():
                ab = cat.concat(a, b)
                if cat.size(ab) > cat.max_degree or not cat.fits(ab, n):
                    continue
                nodes.extend((a, b, alpha) for alpha in cat.hom(ab, n))
        index = {node: i for i, node in enumerate(nodes)}
        spaces = [self._pair_space(a, b) for a, b, _ in nodes]
        edges = []
        for j, (a2, b2, alpha2) in enumerate(nodes):
            for a in cat.objects():
                if not cat.fits(a, a2):
                    continue
                for gamma in cat.hom(a, a2):
                    if cat.is_identity(gamma):
                        continue
                    alpha = cat.compose(alpha2, cat.concat_mor(gamma, cat.identity(b2)))
                    i = index[(a, b2, alpha)]
                    fmap = product_map(self.X.act(gamma), SSetMap.identity(self.Y.level(b2)), spaces[i], spaces[j])
                    edges.append((i, j, fmap))
            for b in cat.objects():
                if not cat.fits(b, b2):
                    continue
                for delta in cat.hom(b, b2):
                    if cat.is_identity(delta):
                        continue
                    alpha = cat.compose(alpha2, cat.concat_mor(cat.identity(a2), delta))
                    i = index[(a2, b, alpha)]
                    fmap = product_map(SSetMap.identity(self.X.level(a2)), self.Y.act(delta), spaces[i], spaces[j])
                    edges.append((i, j, fmap))
        space, injections = colimit(spaces, edges)
        self.nodes[n] = nodes
        self.node_index[n] = index
        self.injections[n] = injections
        logger.debug(f"Day convolution level {cat.key(n)}: {len(nodes)} comma objects, "
                     f"{len(space.vertices())} vertices")
        return space

    def _act_fn(self, f):
        cat = self.cat
        m, n = cat.src(f), cat.dst(f)
        images = {}
        for name in self.levels[m]._dim:
            i, x = name
            a, b, alpha = self.nodes[m][i]
            j = self.node_index[n][(a, b, cat.compose(f, alpha))]
            images[name] = self.injections[n][j].images[x]
        return SSetMap(self.levels[m], self.levels[n], images)

    def vertex_class(self, n, node: Tuple[Any, Any, Any], x: Hashable, y: Hashable) -> Hashable:
        """The vertex of (X box Y)(n) represented by (x, y) at a comma object"""
        i = self.node_index[n][node]
        return self.injections[n][i].images[((x, (0,)), (y, (0,)))][0]


def day_convolution(X: DiagSpace, Y: DiagSpace, n: Any) -> FinSSet:
    return DayProduct(X, Y).level(n)


class ShiftExtension(DiagSpace):
    """Left Kan extension of X along k + -: level l is the colimit of X(k') over (k + k' -> l)"""

    def __init__(self, k: Any, X: DiagSpace):
        cat = X.cat
        self.k, self.X = k, X
        self.commas = {}
        self.injections = {}
        levels = {}
        for l in cat.objects():
            comma = comma_category(cat, k, l)
            spaces = [X.level(n) for n, _ in comma.objects]
            edges = [(i, j, X.act(gamma)) for i, j, gamma in comma.morphisms]
            levels[l], self.injections[l] = colimit(spaces, edges) if spaces else (FinSSet.empty(), [])
            self.commas[l] = comma
        super().__init__(cat, levels, self._act_fn, name=f'{cat.key(k)}+{X.name}')

    def _act_fn(self, f):
        cat = self.cat
        m, n = cat.src(f), cat.dst(f)
        images = {}
        for name in self.levels[m]._dim:
            i, x = name
            shift, alpha = self.commas[m].objects[i]
            j = self.commas[n].index[(shift, cat.compose(f, alpha))]
            images[name] = self.injections[n][j].images[x]
        return SSetMap(self.levels[m], self.levels[n], images)

    def vertex_class(self, l, node: Tuple[Any, Any], x: Hashable) -> Hashable:
        i = self.commas[l].index[node]
        return self.injections[l][i].images[x][0]


def kan_extension_shift(k: Any, X: DiagSpace) -> DiagSpace:
    X.cat.check_object(k)
    return ShiftExtension(k, X)


# ============================================================================
# LAW CHECKS
# ============================================================================

def _bijection_check(name: str, pairs: Iterable[Tuple[Hashable, Hashable]],
                     left: Iterable[Hashable], right: Iterable[Hashable],
                     where: Any) -> Tuple[CheckResult, Dict[Hashable, Hashable]]:
    """Whether the relation given by pairs is the graph of a bijection left -> right"""
    result = CheckResult(name, True)
    forward: Dict[Hashable, Hashable] = {}
    backward: Dict[Hashable, Hashable] = {}
    for a, b in pairs:
        if forward.setdefault(a, b) != b:
            result.fail({'level': where, 'reason': 'not well defined', 'element': a})
        if backward.setdefault(b, a) != a:
            result.fail({'level': where, 'reason': 'not injective', 'element': b})
    left, right = set(left), set(right)
    if set(forward) != left:
        result.fail({'level': where, 'reason': 'not total', 'missing': len(left - set(forward))})
    if set(backward) != right:
        result.fail({'level': where, 'reason': 'not surjective', 'missing': len(right - set(backward))})
    return result, forward


def compare_levelwise(name: str, left: DiagSpace, right: DiagSpace,
                       pairs_at: Callable[[Any], Iterable[Tuple[Hashable, Hashable]]]) -> CheckResult:
    """Levelwise bijectivity of a comparison given by representatives, then its naturality"""
    cat = left.cat
    parts, forward = [], {}
    for n in cat.objects():
        part, forward[n] = _bijection_check(name, pairs_at(n), left.elements(n), right.elements(n), cat.key(n))
        parts.append(part)
    result = CheckResult.combine(name, parts)
    natural = result.passed
    if natural:
        for m in cat.objects():
            for n in cat.objects():
                for f in cat.hom(m, n):
                    if cat.is_identity(f):
                        continue
                    for u in left.elements(m):
                        if forward[n][left.act_vertex(f, u)] != right.act_vertex(f, forward[m][u]):
                            result.fail({'reason': 'not natural', 'morphism': f, 'element': u})
                            natural = False
                            break
                    if not natural:
                        break
    result.details['natural'] = natural
    result.details['sizes'] = left.sizes()
    return result


def _require_discrete(*diagrams: DiagSpace) -> None:
    for D in diagrams:
        if not D.is_discrete:
            raise ValueError(f"Law checks run on discrete diagrams; {D.name} is not discrete")


def check_unit_law(X: DiagSpace) -> CheckResult:
    """(1 box X)(n) -> X(n), (beta, x) at (a, b, alpha) maps to X(alpha (beta + 1))(x)"""
    _require_discrete(X)
    cat = X.cat
    D = DayProduct(free_F(cat, cat.unit), X)

    def pairs_at(n):
        for a, b, alpha in D.nodes[n]:
            for beta in cat.hom(cat.unit, a):
                f = cat.compose(alpha, cat.concat_mor(beta, cat.identity(b)))
                for x in X.elements(b):
                    yield D.vertex_class(n, (a, b, alpha), (beta, '*'), x), X.act_vertex(f, x)

    return compare_levelwise('day-unit-law', D, X, pairs_at)


def check_symmetry(X: DiagSpace, Y: DiagSpace) -> CheckResult:
    _require_discrete(X, Y)
    cat = X.cat
    XY, YX = DayProduct(X, Y), DayProduct(Y, X)

    def pairs_at(n):
        for a, b, alpha in XY.nodes[n]:
            twisted = (b, a, cat.compose(alpha, cat.symmetry(b, a)))
            for x, y in cartesian(X.elements(a), Y.elements(b)):
                yield XY.vertex_class(n, (a, b, alpha), x, y), YX.vertex_class(n, twisted, y, x)

    return compare_levelwise('day-symmetry', XY, YX, pairs_at)


def check_associativity(X: DiagSpace, Y: DiagSpace, Z: DiagSpace) -> CheckResult:
    """Both bracketings computed independently and compared through triple representatives"""
    _require_discrete(X, Y, Z)
    cat = X.cat
    XY, YZ = DayProduct(X, Y), DayProduct(Y, Z)
    left, right = DayProduct(XY, Z), DayProduct(X, YZ)

    def pairs_at(n):
        for a, b, c in cartesian(cat.objects(), repeat=3):
            ab, bc = cat.concat(a, b), cat.concat(b, c)
            abc = cat.concat(ab, c)
            if cat.size(abc) > cat.max_degree or not cat.fits(abc, n):
                continue
            for alpha in cat.hom(abc, n):
                for x, y, z in cartesian(X.elements(a), Y.elements(b), Z.elements(c)):
                    u = XY.vertex_class(ab, (a, b, cat.identity(ab)), x, y)
                    v = YZ.vertex_class(bc, (b, c, cat.identity(bc)), y, z)
                    yield (left.vertex_class(n, (ab, c, alpha), u, z),
                           right.vertex_class(n, (a, bc, alpha), x, v))

    return compare_levelwise('day-associativity', left, right, pairs_at)


def check_kan_shift_agreement(k: Any, X: DiagSpace) -> CheckResult:
    """(k + -)_* X against F_k(*) box X through (beta, x) at (a, b, alpha) -> (b, alpha (beta + 1))"""
    _require_discrete(X)
    cat = X.cat
    D = DayProduct(free_F(cat, k), X)
    S = kan_extension_shift(k, X)

    def pairs_at(n):
        for a, b, alpha in D.nodes[n]:
            for beta in cat.hom(k, a):
                shifted = cat.compose(alpha, cat.concat_mor(beta, cat.identity(b)))
                for x in X.elements(b):
                    yield D.vertex_class(n, (a, b, alpha), (beta, '*'), x), S.vertex_class(n, (b, shifted), x)

    return compare_levelwise(f'kan-shift-agreement[{cat.key(k)}]', D, S, pairs_at)


def check_free_product_iso(cat: IndexCategory, k: Any, K: FinSSet, k2: Any, K2: FinSSet) -> CheckResult:
    """F_k(K) box F_k2(K2) -> F_{k+k2}(K x K2), ((beta, x), (beta2, x2)) at alpha -> (alpha (beta + beta2), (x, x2))"""
    if not (K.is_discrete and K2.is_discrete):
        raise ValueError("The free product comparison is enumerated on discrete spaces")
    kk = cat.concat(k, k2)
    cat.check_object(kk)
    D = DayProduct(free_F(cat, k, K), free_F(cat, k2, K2))
    target = free_F(cat, kk, product(K, K2))

    def pairs_at(n):
        for a, b, alpha in D.nodes[n]:
            for beta, beta2 in cartesian(cat.hom(k, a), cat.hom(k2, b)):
                gamma = cat.compose(alpha, cat.concat_mor(beta, beta2))
                for x, x2 in cartesian(K.vertices(), K2.vertices()):
                    yield (D.vertex_class(n, (a, b, alpha), (beta, x), (beta2, x2)),
                           (gamma, ((x, (0,)), (x2, (0,)))))

    return compare_levelwise(f'free-product-iso[{cat.key(k)},{cat.key(k2)}]', D, target, pairs_at)


def check_semifree_product_iso(cat: IndexCategory, k: Any, L: FinSSet, act: Callable[[Any, Hashable], Hashable],
                               k2: Any, L2: FinSSet, act2: Callable[[Any, Hashable], Hashable]) -> CheckResult:
    """G_k(L) box G_k2(L2) against G_{k+k2}(K(k+k2) x_{K(k) x K(k2)} L x L2) on discrete inputs"""
    if not (L.is_discrete and L2.is_discrete):
        raise ValueError("The semi-free product comparison covers discrete inputs only")
    kk = cat.concat(k, k2)
    cat.check_object(kk)
    G1 = semifree_G(cat, k, L, vertex_action(L, act))
    G2 = semifree_G(cat, k2, L2, vertex_action(L2, act2))
    left = DayProduct(G1, G2)

    # the induced Aut(k + k2)-set
    big = cat.automorphisms(kk)
    uf = UnionFind((s, x, x2) for s in big for x in L.vertices() for x2 in L2.vertices())
    for s in big:
        for g, g2 in cartesian(cat.automorphisms(k), cat.automorphisms(k2)):
            for x, x2 in cartesian(L.vertices(), L2.vertices()):
                uf.union((cat.compose(s, cat.concat_mor(g, g2)), x, x2), (s, act(g, x), act2(g2, x2)))
    orbit_name = {}
    for members in uf.to_sets():
        least = min(members, key=repr)
        for member in members:
            orbit_name[member] = least
    induced = FinSSet.discrete(sorted(set(orbit_name.values()), key=repr))
    induced_act = vertex_action(induced, lambda t, e: orbit_name[(cat.compose(t, e[0]), e[1], e[2])])
    right = semifree_G(cat, kk, induced, induced_act)

    def pairs_at(n):
        for a, b, alpha in left.nodes[n]:
            for beta, beta2 in cartesian(cat.hom(k, a), cat.hom(k2, b)):
                gamma = cat.compose(alpha, cat.concat_mor(beta, beta2))
                for x, x2 in cartesian(L.vertices(), L2.vertices()):
                    u, v = G1.orbit_of(a, beta, x), G2.orbit_of(b, beta2, x2)
                    e = orbit_name[(cat.identity(kk), x, x2)]
                    yield left.vertex_class(n, (a, b, alpha), u, v), right.orbit_of(n, gamma, e)

    return compare_levelwise(f'semifree-product-iso[{cat.key(k)},{cat.key(k2)}]', left, right, pairs_at)


# ============================================================================
# MONOIDS
# ============================================================================

@dataclass
class MonoidData:
    """A monoid in diagram spaces given levelwise: mult(k, l, x, y) lies in carrier(k + l)"""
    carrier: DiagSpace
    unit: Hashable
    mult: Callable[[Any, Any, Hashable, Hashable], Hashable]
    commutative: bool = False
    name: str = 'M'
    overflow: List[Tuple[Any, Any]] = field(default_factory=list)


def check_monoid(M: MonoidData, max_degree: Optional[int] = None, witness_limit: int = 10) -> CheckResult:
    """Unit, associativity, naturality and (when flagged) the commutativity square with chi"""
    X = M.carrier
    _require_discrete(X)
    cat = X.cat
    cap = cat.max_degree if max_degree is None else max_degree
    objs = [o for o in cat.objects() if cat.size(o) <= cap]
    fits = lambda *os: cat.size(cat.concat_all(os)) <= cap
    members = {o: set(X.elements(o)) for o in objs}
    result = CheckResult(f'monoid[{M.name}]', True)

    def fail(witness):
        if len(result.witnesses) < witness_limit:
            result.fail(witness)
        result.passed = False

    if M.unit not in X.elements(cat.unit):
        fail({'law': 'unit', 'reason': 'unit not in carrier'})
    for k in objs:
        for x in X.elements(k):
            if M.mult(cat.unit, k, M.unit, x) != x or M.mult(k, cat.unit, x, M.unit) != x:
                fail({'law': 'unit', 'object': k, 'element': x})
    for k, l in cartesian(objs, repeat=2):
        if not fits(k, l):
            continue
        kl = cat.concat(k, l)
        for x, y in cartesian(X.elements(k), X.elements(l)):
            z = M.mult(k, l, x, y)
            if z not in members[kl]:
                fail({'law': 'closure', 'objects': (k, l), 'elements': (x, y)})
                continue
            if M.commutative and X.act_vertex(cat.symmetry(k, l), z) != M.mult(l, k, y, x):
                fail({'law': 'commutativity', 'objects': (k, l), 'elements': (x, y),
                      'twisted': X.act_vertex(cat.symmetry(k, l), z), 'swapped': M.mult(l, k, y, x)})
        for m in objs:
            if not fits(k, l, m):
                continue
            for x, y, w in cartesian(X.elements(k), X.elements(l), X.elements(m)):
                lhs = M.mult(kl, m, M.mult(k, l, x, y), w)
                rhs = M.mult(k, cat.concat(l, m), x, M.mult(l, m, y, w))
                if lhs != rhs:
                    fail({'law': 'associativity', 'objects': (k, l, m), 'elements': (x, y, w)})
    for k, l, k2, l2 in cartesian(objs, repeat=4):
        if not fits(k2, l2) or not cat.fits(k, k2) or not cat.fits(l, l2):
            continue
        for f, g in cartesian(cat.hom(k, k2), cat.hom(l, l2)):
            fg = cat.concat_mor(f, g)
            for x, y in cartesian(X.elements(k), X.elements(l)):
                if M.mult(k2, l2, X.act_vertex(f, x), X.act_vertex(g, y)) != X.act_vertex(fg, M.mult(k, l, x, y)):
                    fail({'law': 'naturality', 'morphisms': (f, g), 'elements': (x, y)})
    result.details = {'max_degree': cap, 'commutative_checked': M.commutative}
    return result


def unit_monoid(cat: IndexCategory) -> MonoidData:
    """1_K = F_unit(*) with multiplication by concatenation of morphisms"""
    carrier = free_F(cat, cat.unit)
    return MonoidData(carrier, (cat.identity(cat.unit), '*'),
                      lambda k, l, x, y: (cat.concat_mor(x[0], y[0]), '*'),
                      commutative=True, name='1')


def x_bullet(points: Sequence[Hashable], basepoint: Hashable, max_degree: int,
             twisted: bool = False) -> MonoidData:
    """
    X^bullet: n -> X^n over I. Injections insert the basepoint into complement
    slots; multiplication concatenates (reversed when twisted).
    """
    if basepoint not in points:
        raise ValueError(f"Basepoint {basepoint!r} is not a point of X")
    cat = CategoryI(max_degree)
    elements = {n: list(cartesian(points, repeat=n)) for n in cat.objects()}

    def act(f, x):
        y = [basepoint] * f.dst
        for i, v in enumerate(x, start=1):
            y[f(i) - 1] = v
        return tuple(y)

    carrier = DiagSpace.discrete(cat, elements, act, name='X^bullet')
    if twisted:
        mult = lambda k, l, x, y: tuple(y) + tuple(x)
    else:
        mult = lambda k, l, x, y: tuple(x) + tuple(y)
    return MonoidData(carrier, (), mult, commutative=True, name='X^bullet-twisted' if twisted else 'X^bullet')


# ============================================================================
# LEVELWISE CONSTRUCTIONS
# ============================================================================

def levelwise_colimit(nodes: Sequence[DiagSpace], edges: Sequence[Tuple[int, int, DiagMap]],
                      name: str = 'colim') -> Tuple[DiagSpace, List[DiagMap]]:
    cat = nodes[0].cat
    levels, injections = {}, {}
    for k in cat.objects():
        levels[k], injections[k] = colimit([D.level(k) for D in nodes],
                                           [(i, j, f.component(k)) for i, j, f in edges])

    def act_fn(f):
        m, n = cat.src(f), cat.dst(f)
        images = {}
        for name_ in levels[m]._dim:
            i, x = name_
            dim = nodes[i].level(m).dim_of(x)
            moved = nodes[i].act(f).apply((x, identity_eta(dim)))
            images[name_] = injections[n][i].apply(moved)
        return SSetMap(levels[m], levels[n], images)

    result = DiagSpace(cat, levels, act_fn, name=name)
    maps = [DiagMap(D, result, {k: injections[k][i] for k in cat.objects()}) for i, D in enumerate(nodes)]
    return result, maps


def coproduct_diagram(diagrams: Sequence[DiagSpace]) -> Tuple[DiagSpace, List[DiagMap]]:
    return levelwise_colimit(diagrams, [], name='+'.join(D.name for D in diagrams))


def levelwise_pushout(f: DiagMap, g: DiagMap) -> Tuple[DiagSpace, DiagMap, DiagMap]:
    """B +_A C for f: A -> B and g: A -> C"""
    P, (_, into_b, into_c) = levelwise_colimit([f.source, f.target, g.target], [(0, 1, f), (0, 2, g)],
                                               name=f'{f.target.name}+{g.target.name}')
    return P, into_b, into_c


def levelwise_pullback(f: DiagMap, g: DiagMap) -> Tuple[DiagSpace, DiagMap, DiagMap]:
    """X x_Z Y for discrete f: X -> Z and g: Y -> Z"""
    X, Y = f.source, g.source
    _require_discrete(X, Y)
    cat = X.cat
    elements = {k: [(x, y) for x in X.elements(k) for y in Y.elements(k)
                    if f.component(k).on_vertex(x) == g.component(k).on_vertex(y)]
                for k in cat.objects()}
    W = DiagSpace.discrete(cat, elements, lambda h, p: (X.act_vertex(h, p[0]), Y.act_vertex(h, p[1])),
                           name=f'{X.name}x{Y.name}')
    to_x = DiagMap.from_vertex_fn(W, X, lambda k, p: p[0])
    to_y = DiagMap.from_vertex_fn(W, Y, lambda k, p: p[1])
    return W, to_x, to_y


def quotient_diagram(X: DiagSpace, relations: Iterable[Tuple[Any, Hashable, Hashable]],
                     name: Optional[str] = None, cap: int = DEFAULT_QUOTIENT_CAP,
                     rank: Optional[Callable[[Any, Hashable], Any]] = None) -> Tuple[DiagSpace, DiagMap]:
    """
    Discrete quotient by the smallest congruence containing the relations (obj, x, y).

    Each class is named by its least member under (rank, repr); raises
    IterationCapError once more than cap unions are needed.
    """
    _require_discrete(X)
    cat = X.cat
    uf = UnionFind((k, x) for k in cat.objects() for x in X.elements(k))
    out = {a: [(b, f) for b in cat.objects() for f in cat.hom(a, b) if not cat.is_identity(f)]
           for a in cat.objects()}
    pending = list(relations)
    unions = 0
    while pending:
        k, x, y = pending.pop()
        if uf[(k, x)] == uf[(k, y)]:
            continue
        unions += 1
        if unions > cap:
            raise IterationCapError(f"Quotient of {X.name} exceeded {cap} unions")
        uf.union((k, x), (k, y))
        for b, f in out[k]:
            pending.append((b, X.act_vertex(f, x), X.act_vertex(f, y)))

    def order(member):
        k, x = member
        return (rank(k, x), repr(x)) if rank else repr(x)

    canon: Dict[Tuple[Any, Hashable], Hashable] = {}
    for members in uf.to_sets():
        least = min(members, key=order)[1]
        for member in members:
            canon[member] = least

    def rep(k, x):
        return canon[(k, x)]

    elements = {k: sorted({rep(k, x) for x in X.elements(k)}, key=repr) for k in cat.objects()}
    Q = DiagSpace.discrete(cat, elements, lambda f, x: rep(cat.dst(f), X.act_vertex(f, x)),
                           name=name or f'{X.name}/~')
    logger.debug(f"Quotient {Q.name}: {Q.sizes()} after {unions} unions")
    return Q, DiagMap.from_vertex_fn(X, Q, rep)


def random_discrete_diagram(cat: IndexCategory, rng: random.Random, generators: int = 2,
                            relations: int = 1, max_generator_degree: Optional[int] = None) -> DiagSpace:
    """A quotient of a coproduct of free diagrams F_k(*) on random generators"""
    top = cat.max_degree if max_generator_degree is None else max_generator_degree
    candidates = [k for k in cat.objects() if cat.size(k) <= top]
    gens = [rng.choice(candidates) for _ in range(generators)]
    frees = [free_F(cat, k) for k in gens]
    total, _ = coproduct_diagram(frees)
    rels = []
    for _ in range(relations):
        k = rng.choice(cat.objects())
        pool = total.elements(k)
        if len(pool) >= 2:
            x, y = rng.sample(pool, 2)
            rels.append((k, x, y))
    Q, _ = quotient_diagram(total, rels, name=f'R[{",".join(cat.key(k) for k in gens)}]')
    logger.debug(f"Random diagram with generators {gens} and {len(rels)} relations: {Q.sizes()}")
    return Q


def check_hocolim_additivity(X: DiagSpace, Y: DiagSpace, dim_cap: int = 2) -> CheckResult:
    """hocolim(X + Y) against hocolim X + hocolim Y, compared simplex by simplex"""
    total, (ix, iy) = coproduct_diagram([X, Y])
    h_total = hocolim(total, dim_cap)
    hx, hy = hocolim(X, dim_cap), hocolim(Y, dim_cap)
    to_total_x = hocolim_map(ix, hx, h_total)
    to_total_y = hocolim_map(iy, hy, h_total)
    result = CheckResult('hocolim-additivity', True)
    hit = {}
    for source_map in (to_total_x, to_total_y):
        if not source_map.is_injective():
            result.fail({'reason': 'summand map not injective'})
        for x, (y, _) in source_map.images.items():
            if y in hit:
                result.fail({'reason': 'summands overlap', 'simplex': y})
            hit[y] = x
    if len(hit) != h_total.size():
        result.fail({'reason': 'not surjective', 'missing': h_total.size() - len(hit)})
    result.details = {'dim_cap': dim_cap, 'simplices': h_total.size()}
    return result


def diagram_from_recipe(recipe: Dict[str, Any], cat: Optional[IndexCategory] = None) -> DiagSpace:
    """
    Build a diagram from a fixture recipe.

    kinds: free {k}, semifree-point {k}, x_bullet {points, basepoint},
    quotient {generators, relations: [[obj, i, j], ...]}, json {diagram}
    """
    kind = recipe.get('kind')
    if kind == 'json':
        return DiagSpace.from_dict(recipe['diagram'])
    if cat is None:
        cat = category_by_name(recipe.get('cat', 'I'), int(recipe.get('max_degree', 3)))
    if kind == 'free':
        return free_F(cat, cat.parse_key(str(recipe['k'])))
    if kind == 'semifree-point':
        k = cat.parse_key(str(recipe['k']))
        point = FinSSet.point()
        return semifree_G(cat, k, point, vertex_action(point, lambda g, v: v))
    if kind == 'x_bullet':
        return x_bullet(recipe['points'], recipe['basepoint'], cat.max_degree).carrier
    if kind == 'quotient':
        frees = [free_F(cat, cat.parse_key(str(k))) for k in recipe['generators']]
        total, _ = coproduct_diagram(frees)
        rels = []
        for obj_key, i, j in recipe.get('relations', []):
            obj = cat.parse_key(str(obj_key))
            pool = total.elements(obj)
            if max(i, j) >= len(pool):
                raise FixtureError(f"Relation index out of range at {obj_key}: {i}, {j}")
            rels.append((obj, pool[i], pool[j]))
        return quotient_diagram(total, rels, name=recipe.get('name'))[0]
    raise FixtureError(f"Unknown diagram recipe kind: {kind!r}")
