"""
Finite simplicial sets, nerves, homotopy colimits and integral homology.

A formal d-simplex is a pair (x, eta) where x is a nondegenerate e-simplex and
eta is a nondecreasing surjection [d] -> [e] stored as a tuple of length d + 1.
Nondegenerate simplices carry an identity eta.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import TYPE_CHECKING, Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from diagram_spaces.core.errors import DimensionCapError, InvariantViolation
from diagram_spaces.core.fincat import FiniteCategory
from diagram_spaces.core.models import CheckResult, TRUNCATION_LABEL

if TYPE_CHECKING:
    from diagram_spaces.core.dayconv import DiagMap, DiagSpace

logger = logging.getLogger(__name__)

DEFAULT_DIM_CAP = 3

Formal = Tuple[Hashable, Tuple[int, ...]]


def identity_eta(d: int) -> Tuple[int, ...]:
    return tuple(range(d + 1))


def surjections(d: int, e: int) -> List[Tuple[int, ...]]:
    """Nondecreasing surjections [d] -> [e]"""
    result = []
    for steps in combinations(range(1, d + 1), e):
        eta, value = [], 0
        for p in range(d + 1):
            if value < e and p == steps[value]:
                value += 1
            eta.append(value)
        result.append(tuple(eta))
    return result


def is_degenerate(simplex: Formal) -> bool:
    eta = simplex[1]
    return any(eta[j] == eta[j + 1] for j in range(len(eta) - 1))


def degeneracy(j: int, simplex: Formal) -> Formal:
    x, eta = simplex
    return (x, eta[:j + 1] + eta[j:])


def _collapse_common(etas: Sequence[Tuple[int, ...]], extra: Optional[Sequence[bool]] = None):
    """
    Collapse the directions in which every eta (and the extra flags) is degenerate.

    Returns the surjection theta and the reduced etas.
    """
    d = len(etas[0]) - 1
    theta = [0]
    for j in range(d):
        common = all(eta[j] == eta[j + 1] for eta in etas) and (extra is None or extra[j])
        theta.append(theta[-1] + (0 if common else 1))
    firsts = {}
    for p, q in enumerate(theta):
        firsts.setdefault(q, p)
    reduced = [tuple(eta[firsts[q]] for q in range(theta[-1] + 1)) for eta in etas]
    return tuple(theta), reduced, [firsts[q] for q in range(theta[-1] + 1)]


class FinSSet:
    """
    A finite simplicial set truncated at dim_cap.

    simplices[d] lists the nondegenerate d-simplices; faces[x] lists the d + 1
    faces of a nondegenerate d-simplex x (d >= 1) as formal simplices.
    Simplex names are unique across dimensions.
    """

    def __init__(self, simplices: Dict[int, List[Hashable]], faces: Dict[Hashable, List[Formal]],
                 dim_cap: int = DEFAULT_DIM_CAP):
        self.dim_cap = dim_cap
        self.simplices = {d: list(simplices.get(d, [])) for d in range(dim_cap + 1)}
        self.faces = faces
        self._dim = {x: d for d, xs in self.simplices.items() for x in xs}
        self._formal_cache: Dict[int, List[Formal]] = {}

    # -- structure -------------------------------------------------------

    def dim_of(self, x: Hashable) -> int:
        return self._dim[x]

    def __contains__(self, x: Hashable) -> bool:
        return x in self._dim

    def vertices(self) -> List[Hashable]:
        return list(self.simplices[0])

    @property
    def is_discrete(self) -> bool:
        return all(not self.simplices[d] for d in range(1, self.dim_cap + 1))

    def size(self) -> int:
        return sum(len(xs) for xs in self.simplices.values())

    def face(self, i: int, simplex: Formal) -> Formal:
        x, eta = simplex
        reduced = eta[:i] + eta[i + 1:]
        e = self._dim[x]
        if len(set(reduced)) == e + 1:
            return (x, reduced)
        v = eta[i]
        y, zeta = self.faces[x][v]
        shifted = tuple(w if w < v else w - 1 for w in reduced)
        return (y, tuple(zeta[w] for w in shifted))

    def nondeg_face(self, i: int, x: Hashable) -> Formal:
        return self.faces[x][i]

    def formal_simplices(self, d: int) -> List[Formal]:
        """Every d-simplex, degenerate ones included"""
        if d > self.dim_cap:
            raise DimensionCapError(f"Dimension {d} exceeds dim_cap={self.dim_cap}")
        cached = self._formal_cache.get(d)
        if cached is None:
            cached = [(x, eta) for e in range(d + 1) for eta in surjections(d, e) for x in self.simplices[e]]
            self._formal_cache[d] = cached
        return cached

    def check_simplicial_identities(self) -> List[Dict[str, Any]]:
        witnesses = []
        for d in range(2, self.dim_cap + 1):
            for x in self.simplices[d]:
                s = (x, identity_eta(d))
                for j in range(d + 1):
                    for i in range(j):
                        lhs = self.face(i, self.face(j, s))
                        rhs = self.face(j - 1, self.face(i, s))
                        if lhs != rhs:
                            witnesses.append({'simplex': x, 'i': i, 'j': j, 'lhs': lhs, 'rhs': rhs})
        for d in range(1, self.dim_cap + 1):
            for x in self.simplices[d]:
                faces = self.faces.get(x, [])
                if len(faces) != d + 1 or any(y not in self._dim or len(eta) != d for y, eta in faces):
                    witnesses.append({'simplex': x, 'reason': 'malformed faces'})
        return witnesses

    def components(self) -> List[List[Hashable]]:
        uf = UnionFind(self.simplices[0])
        for x in self.simplices.get(1, []):
            (a, _), (b, _) = self.faces[x]
            uf.union(a, b)
        return sorted((sorted(c, key=repr) for c in uf.to_sets()), key=lambda c: repr(c[0]))

    # -- builders --------------------------------------------------------

    @classmethod
    def discrete(cls, points: Iterable[Hashable], dim_cap: int = DEFAULT_DIM_CAP) -> 'FinSSet':
        return cls({0: list(points)}, {}, dim_cap)

    @classmethod
    def point(cls, dim_cap: int = DEFAULT_DIM_CAP) -> 'FinSSet':
        return cls.discrete(['*'], dim_cap)

    @classmethod
    def empty(cls, dim_cap: int = DEFAULT_DIM_CAP) -> 'FinSSet':
        return cls({}, {}, dim_cap)

    @classmethod
    def circle(cls, dim_cap: int = DEFAULT_DIM_CAP) -> 'FinSSet':
        """One vertex and one nondegenerate edge"""
        return cls({0: ['v'], 1: ['e']}, {'e': [('v', (0,)), ('v', (0,))]}, dim_cap)

    @classmethod
    def simplex_boundary(cls, n: int, dim_cap: int = DEFAULT_DIM_CAP, full: bool = False) -> 'FinSSet':
        """The boundary of the standard n-simplex (or the simplex itself when full)"""
        top = n if full else n - 1
        simplices: Dict[int, List[Hashable]] = {}
        faces: Dict[Hashable, List[Formal]] = {}
        for d in range(0, min(top, dim_cap) + 1):
            for subset in combinations(range(n + 1), d + 1):
                simplices.setdefault(d, []).append(subset)
                if d > 0:
                    faces[subset] = [(subset[:i] + subset[i + 1:], identity_eta(d - 1)) for i in range(d + 1)]
        return cls(simplices, faces, dim_cap)

    def to_dict(self) -> Dict[str, Any]:
        names = {x: repr(x) for x in self._dim}
        return {
            'dim_cap': self.dim_cap,
            'simplices': {str(d): [names[x] for x in xs] for d, xs in self.simplices.items() if xs},
            'faces': {names[x]: [[names[y], list(eta)] for y, eta in fs] for x, fs in self.faces.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FinSSet':
        simplices = {int(d): list(xs) for d, xs in data.get('simplices', {}).items()}
        faces = {x: [(y, tuple(eta)) for y, eta in fs] for x, fs in data.get('faces', {}).items()}
        return cls(simplices, faces, int(data.get('dim_cap', DEFAULT_DIM_CAP)))


class SSetMap:
    """A simplicial map given on nondegenerate simplices"""

    def __init__(self, source: FinSSet, target: FinSSet, images: Dict[Hashable, Formal]):
        self.source = source
        self.target = target
        self.images = images

    def apply(self, simplex: Formal) -> Formal:
        x, eta = simplex
        y, zeta = self.images[x]
        return (y, tuple(zeta[w] for w in eta))

    def on_vertex(self, v: Hashable) -> Hashable:
        return self.images[v][0]

    def compose(self, first: 'SSetMap') -> 'SSetMap':
        """self after first"""
        return SSetMap(first.source, self.target, {x: self.apply(img) for x, img in first.images.items()})

    @classmethod
    def identity(cls, space: FinSSet) -> 'SSetMap':
        return cls(space, space, {x: (x, identity_eta(space.dim_of(x))) for x in space._dim})

    @classmethod
    def from_vertex_map(cls, source: FinSSet, target: FinSSet, fn: Callable[[Hashable], Hashable]) -> 'SSetMap':
        return cls(source, target, {v: (fn(v), (0,)) for v in source.vertices()})

    def is_injective(self) -> bool:
        seen = set()
        for x, (y, zeta) in self.images.items():
            if is_degenerate((y, zeta)) or y in seen:
                return False
            seen.add(y)
        return True

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.images) == self.target.size()

    def non_injective_witness(self) -> Optional[Dict[str, Any]]:
        seen: Dict[Hashable, Hashable] = {}
        for x, (y, zeta) in self.images.items():
            if is_degenerate((y, zeta)):
                return {'simplex': x, 'image': (y, zeta), 'reason': 'collapsed'}
            if y in seen:
                return {'simplices': [seen[y], x], 'image': y}
            seen[y] = x
        return None

    def check_naturality(self) -> List[Dict[str, Any]]:
        witnesses = []
        for d in range(1, self.source.dim_cap + 1):
            for x in self.source.simplices[d]:
                s = (x, identity_eta(d))
                for i in range(d + 1):
                    if self.apply(self.source.face(i, s)) != self.target.face(i, self.apply(s)):
                        witnesses.append({'simplex': x, 'face': i})
        return witnesses

    def __eq__(self, other):
        return isinstance(other, SSetMap) and self.images == other.images


# ============================================================================
# COLIMITS AND PRODUCTS
# ============================================================================

def colimit(nodes: Sequence[FinSSet], edges: Sequence[Tuple[int, int, SSetMap]],
            dim_cap: Optional[int] = None) -> Tuple[FinSSet, List[SSetMap]]:
    """
    Colimit of finite simplicial sets computed degreewise with union-find.

    Classes without a degenerate member become the nondegenerate simplices;
    the normal form of a degenerate class is found through a degenerate member.
    """
    if dim_cap is None:
        dim_cap = min((n.dim_cap for n in nodes), default=DEFAULT_DIM_CAP)
    if all(node.is_discrete for node in nodes):
        return _discrete_colimit(nodes, edges, dim_cap)
    normal: Dict[Tuple[int, Hashable], Formal] = {}
    simplices: Dict[int, List[Hashable]] = {}
    faces: Dict[Hashable, List[Formal]] = {}
    for d in range(dim_cap + 1):
        uf = UnionFind()
        for i, node in enumerate(nodes):
            for s in node.formal_simplices(d):
                uf[(i, s)]
        for i, j, f in edges:
            for s in nodes[i].formal_simplices(d):
                uf.union((i, s), (j, f.apply(s)))
        for members in uf.to_sets():
            degenerate = [m for m in members if is_degenerate(m[1])]
            if not degenerate:
                name = min(((i, s[0]) for i, s in members), key=repr)
                simplices.setdefault(d, []).append(name)
                for i, s in members:
                    normal[(i, s[0])] = (name, identity_eta(d))
                continue
            i0, (x0, eta0) = min(degenerate, key=repr)
            y, zeta = normal[(i0, x0)]
            target = (y, tuple(zeta[w] for w in eta0))
            for i, s in members:
                if not is_degenerate(s):
                    normal[(i, s[0])] = target
        for name in simplices.get(d, []):
            if d == 0:
                continue
            i, x = name
            result = []
            for k in range(d + 1):
                fy, feta = nodes[i].face(k, (x, identity_eta(d)))
                ny, nzeta = normal[(i, fy)]
                result.append((ny, tuple(nzeta[w] for w in feta)))
            faces[name] = result
    for d in simplices:
        simplices[d].sort(key=repr)
    space = FinSSet(simplices, faces, dim_cap)
    injections = [SSetMap(node, space, {x: normal[(i, x)] for x in node._dim if node.dim_of(x) <= dim_cap})
                  for i, node in enumerate(nodes)]
    return space, injections


def _discrete_colimit(nodes, edges, dim_cap):
    uf = UnionFind((i, v) for i, node in enumerate(nodes) for v in node.vertices())
    for i, j, f in edges:
        for v in nodes[i].vertices():
            uf.union((i, v), (j, f.on_vertex(v)))
    normal = {}
    names = []
    for members in uf.to_sets():
        name = min(members, key=repr)
        names.append(name)
        for member in members:
            normal[member] = (name, (0,))
    space = FinSSet.discrete(sorted(names, key=repr), dim_cap)
    injections = [SSetMap(node, space, {v: normal[(i, v)] for v in node.vertices()})
                  for i, node in enumerate(nodes)]
    return space, injections


def coproduct(spaces: Sequence[FinSSet]) -> Tuple[FinSSet, List[SSetMap]]:
    return colimit(spaces, [])


def product(X: FinSSet, Y: FinSSet) -> FinSSet:
    """Cartesian product; nondegenerate simplices are pairs with no common degenerate direction"""
    dim_cap = min(X.dim_cap, Y.dim_cap)
    if X.is_discrete and Y.is_discrete:
        return FinSSet.discrete([((a, (0,)), (b, (0,))) for a in X.vertices() for b in Y.vertices()], dim_cap)
    simplices: Dict[int, List[Hashable]] = {}
    faces: Dict[Hashable, List[Formal]] = {}
    for d in range(dim_cap + 1):
        for a in X.formal_simplices(d):
            for b in Y.formal_simplices(d):
                if any(a[1][j] == a[1][j + 1] and b[1][j] == b[1][j + 1] for j in range(d)):
                    continue
                simplices.setdefault(d, []).append((a, b))
    space = FinSSet(simplices, faces, dim_cap)
    for d in range(1, dim_cap + 1):
        for name in simplices.get(d, []):
            a, b = name
            faces[name] = [normalize_pair(X.face(i, a), Y.face(i, b)) for i in range(d + 1)]
    return space


def normalize_pair(a: Formal, b: Formal) -> Formal:
    """Normal form of a pair of formal simplices of equal dimension in a product"""
    theta, (eta_a, eta_b), _ = _collapse_common([a[1], b[1]])
    return (((a[0], eta_a), (b[0], eta_b)), theta)


def product_map(f: SSetMap, g: SSetMap, source: FinSSet, target: FinSSet) -> SSetMap:
    images = {}
    for (a, b) in source._dim:
        images[(a, b)] = normalize_pair(f.apply(a), g.apply(b))
    return SSetMap(source, target, images)


# ============================================================================
# HOMOLOGY
# ============================================================================

@dataclass
class HomologyGroups:
    """Betti numbers and torsion coefficients per dimension"""
    ranks: Dict[int, int] = field(default_factory=dict)
    torsion: Dict[int, List[int]] = field(default_factory=dict)

    def reduced_is_zero(self) -> bool:
        return all(self.ranks[d] == (1 if d == 0 else 0) and not self.torsion[d] for d in self.ranks)

    def __eq__(self, other):
        return isinstance(other, HomologyGroups) and self.ranks == other.ranks and self.torsion == other.torsion

    def to_dict(self) -> Dict[str, Any]:
        return {str(d): {'rank': self.ranks[d], 'torsion': list(self.torsion[d])} for d in sorted(self.ranks)}


def _boundary_columns(S: FinSSet, d: int, index: Dict[Hashable, int]) -> List[Dict[int, int]]:
    """Columns of the normalized boundary map C_d -> C_{d-1}"""
    columns = []
    for x in S.simplices[d]:
        column: Dict[int, int] = {}
        for i, (y, eta) in enumerate(S.faces[x]):
            if is_degenerate((y, eta)):
                continue
            r = index[y]
            column[r] = column.get(r, 0) + (-1 if i % 2 else 1)
            if column[r] == 0:
                del column[r]
        columns.append(column)
    return columns


def invariant_factors(columns: List[Dict[int, int]]) -> List[int]:
    """
    Nonzero invariant factors of a sparse integer matrix.

    Unit pivots are eliminated sparsely first; the residual block goes through
    Smith normal form.
    """
    columns = [dict(c) for c in columns]
    rows: Dict[int, set] = {}
    for c, column in enumerate(columns):
        for r in column:
            rows.setdefault(r, set()).add(c)
    alive = set(c for c, column in enumerate(columns) if column)
    pivots = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(alive):
            column = columns[c]
            units = [r for r, v in column.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda row: (len(rows[row]), row))
            p = column[r]
            for c2 in sorted(rows[r] - {c}):
                other = columns[c2]
                factor = other[r] * p
                for rr, v in column.items():
                    nv = other.get(rr, 0) - factor * v
                    if nv:
                        if rr not in other:
                            rows.setdefault(rr, set()).add(c2)
                        other[rr] = nv
                    elif rr in other:
                        del other[rr]
                        rows[rr].discard(c2)
                if not other:
                    alive.discard(c2)
            for rr in column:
                rows[rr].discard(c)
            columns[c] = {}
            alive.discard(c)
            pivots += 1
            progress = True
    residual_cols = sorted(c for c in alive if columns[c])
    factors = []
    if residual_cols:
        residual_rows = sorted({r for c in residual_cols for r in columns[c]})
        row_pos = {r: i for i, r in enumerate(residual_rows)}
        dense = [[0] * len(residual_cols) for _ in residual_rows]
        for j, c in enumerate(residual_cols):
            for r, v in columns[c].items():
                dense[row_pos[r]][j] = v
        logger.debug(f"Smith normal form on residual {len(residual_rows)}x{len(residual_cols)} block")
        snf = smith_normal_form(Matrix(dense), domain=ZZ)
        diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
        factors.extend(v for v in diagonal if v)
    return [1] * pivots + _normalize_factors(factors)


def _normalize_factors(values: List[int]) -> List[int]:
    values = sorted(values)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            g = gcd(values[i], values[j])
            values[i], values[j] = g, values[i] * values[j] // g
    return sorted(values)


def homology(S: FinSSet, up_to: int) -> HomologyGroups:
    """Integral homology H_0..H_up_to from normalized chains"""
    if up_to >= S.dim_cap:
        raise DimensionCapError(f"Homology up to {up_to} needs dim_cap > {up_to}, have {S.dim_cap}")
    index = {x: i for d in S.simplices for i, x in enumerate(S.simplices[d])}
    factors = {d: invariant_factors(_boundary_columns(S, d, index)) if d > 0 else []
               for d in range(up_to + 2)}
    result = HomologyGroups()
    for d in range(up_to + 1):
        result.ranks[d] = len(S.simplices[d]) - len(factors[d]) - len(factors[d + 1])
        result.torsion[d] = [v for v in factors[d + 1] if v > 1]
    return result


# ============================================================================
# NERVES AND HOMOTOPY COLIMITS
# ============================================================================

def _chain_face(cat: FiniteCategory, objs: Tuple, mors: Tuple, i: int) -> Tuple[Tuple, Tuple]:
    d = len(mors)
    if i == 0:
        return objs[1:], mors[1:]
    if i == d:
        return objs[:-1], mors[:-1]
    composite = cat.compose(mors[i], mors[i - 1])
    return objs[:i] + objs[i + 1:], mors[:i - 1] + (composite,) + mors[i + 1:]


def _strip_identities(cat: FiniteCategory, objs: Tuple, mors: Tuple) -> Formal:
    """Normal form of a chain: drop identities and record them in eta"""
    eta = [0]
    kept_objs = [objs[0]]
    kept_mors = []
    for p, f in enumerate(mors):
        if cat.is_identity(f):
            eta.append(eta[-1])
        else:
            eta.append(eta[-1] + 1)
            kept_objs.append(objs[p + 1])
            kept_mors.append(f)
    return ((tuple(kept_objs), tuple(kept_mors)), tuple(eta))


def _chains(cat: FiniteCategory, dim_cap: int, allow_identities: bool) -> Dict[int, List[Tuple[Tuple, Tuple]]]:
    objects = cat.objects()
    out = {a: [(b, f) for b in objects for f in cat.hom(a, b)
               if allow_identities or not cat.is_identity(f)] for a in objects}
    chains = {0: [((a,), ()) for a in objects]}
    for d in range(1, dim_cap + 1):
        chains[d] = [(objs + (b,), mors + (f,)) for objs, mors in chains[d - 1] for b, f in out[objs[-1]]]
    return chains


def nerve(cat: FiniteCategory, dim_cap: int = DEFAULT_DIM_CAP) -> FinSSet:
    """d-simplices are chains of d composable non-identity morphisms"""
    chains = _chains(cat, dim_cap, allow_identities=False)
    faces = {}
    for d in range(1, dim_cap + 1):
        for objs, mors in chains[d]:
            faces[(objs, mors)] = [_strip_identities(cat, *_chain_face(cat, objs, mors, i)) for i in range(d + 1)]
    logger.debug(f"Nerve of {cat.name}: {[len(chains[d]) for d in range(dim_cap + 1)]} simplices")
    return FinSSet(chains, faces, dim_cap)


def _diagonal_normal(cat: FiniteCategory, objs: Tuple, mors: Tuple, simplex: Formal) -> Formal:
    """Collapse directions where the morphism is an identity and the simplex is degenerate"""
    x, eta = simplex
    flags = [cat.is_identity(f) for f in mors]
    theta, (reduced,), keep = _collapse_common([eta], flags)
    kept_objs = tuple(objs[p] for p in keep)
    kept_mors = tuple(mors[p] for p in range(len(mors)) if not (flags[p] and eta[p] == eta[p + 1]))
    return ((kept_objs, kept_mors, x, reduced), theta)


def hocolim(X: 'DiagSpace', dim_cap: int = DEFAULT_DIM_CAP) -> FinSSet:
    """
    Diagonal of the simplicial replacement of X, truncated at dim_cap.

    A simplex is (k0 -> ... -> kd, s) with s a formal d-simplex of X(k0);
    d_0 pushes s forward along the first morphism.
    """
    cat = X.cat
    chains = _chains(cat, dim_cap, allow_identities=True)
    simplices: Dict[int, List[Hashable]] = {}
    for d in range(dim_cap + 1):
        for objs, mors in chains[d]:
            level = X.level(objs[0])
            for s in level.formal_simplices(d):
                if any(cat.is_identity(mors[j]) and s[1][j] == s[1][j + 1] for j in range(d)):
                    continue
                simplices.setdefault(d, []).append((objs, mors, s[0], s[1]))
    faces = {}
    for d in range(1, dim_cap + 1):
        for name in simplices.get(d, []):
            faces[name] = [hocolim_face(X, name, i) for i in range(d + 1)]
    logger.debug(f"hocolim over {cat.name}: {[len(simplices.get(d, [])) for d in range(dim_cap + 1)]} simplices")
    return FinSSet(simplices, faces, dim_cap)


def hocolim_face(X: 'DiagSpace', name: Tuple, i: int) -> Formal:
    cat = X.cat
    objs, mors, x, eta = name
    level = X.level(objs[0])
    s = level.face(i, (x, eta))
    new_objs, new_mors = _chain_face(cat, objs, mors, i)
    if i == 0:
        s = X.act(mors[0]).apply(s)
    return _diagonal_normal(cat, new_objs, new_mors, s)


def hocolim_map(f: 'DiagMap', source_h: FinSSet, target_h: FinSSet) -> SSetMap:
    """The induced map on homotopy colimits"""
    cat = f.source.cat
    images = {}
    for name in source_h._dim:
        objs, mors, x, eta = name
        images[name] = _diagonal_normal(cat, objs, mors, f.component(objs[0]).apply((x, eta)))
    return SSetMap(source_h, target_h, images)


def contractible_certificate(cat: FiniteCategory) -> bool:
    """True when an initial or terminal object exists; sound but incomplete"""
    return bool(cat.initial_objects()) or bool(cat.terminal_objects())


def hocolim_point_comparison(X: 'DiagSpace', dim_cap: int = DEFAULT_DIM_CAP) -> CheckResult:
    """hocolim of a one-point diagram against the nerve, simplex by simplex"""
    result = CheckResult('hocolim-of-point-is-nerve', True)
    H = hocolim(X, dim_cap)
    N = nerve(X.cat, dim_cap)

    def to_nerve(name):
        objs, mors, _, _ = name
        return (objs, mors)

    for d in range(dim_cap + 1):
        mapped = sorted((to_nerve(n) for n in H.simplices[d]), key=repr)
        if mapped != sorted(N.simplices[d], key=repr):
            result.fail({'dimension': d, 'hocolim': len(mapped), 'nerve': len(N.simplices[d])})
    for d in range(1, dim_cap + 1):
        for name in H.simplices[d]:
            lhs = [(to_nerve(y), eta) for y, eta in H.faces[name]]
            if lhs != N.faces[to_nerve(name)]:
                result.fail({'simplex': to_nerve(name), 'reason': 'faces differ'})
                break
    result.details = {'dim_cap': dim_cap, 'label': TRUNCATION_LABEL}
    return result


# ============================================================================
# EQUIVALENCE EVIDENCE
# ============================================================================

def _chain_map_columns(f: SSetMap, d: int, target_index: Dict[Hashable, int]) -> List[Dict[int, int]]:
    columns = []
    for x in f.source.simplices[d]:
        y, zeta = f.images[x]
        columns.append({} if is_degenerate((y, zeta)) else {target_index[y]: 1})
    return columns


def mapping_cone_homology(f: SSetMap, up_to: int) -> HomologyGroups:
    """Homology of the algebraic mapping cone C_n = A_{n-1} + B_n"""
    A, B = f.source, f.target
    if up_to + 1 > min(A.dim_cap, B.dim_cap):
        raise DimensionCapError(f"Mapping cone up to {up_to} needs dim_cap > {up_to}")
    a_index = {x: i for d in A.simplices for i, x in enumerate(A.simplices[d])}
    b_index = {x: i for d in B.simplices for i, x in enumerate(B.simplices[d])}

    def cone_columns(n: int) -> List[Dict[int, int]]:
        # rows: A_{n-2} first (offset 0), then B_{n-1} (offset len(A_{n-2}))
        offset = len(A.simplices[n - 2]) if n >= 2 else 0
        cols = []
        if n >= 1:
            a_bd = _boundary_columns(A, n - 1, a_index) if n - 1 >= 1 else [{} for _ in A.simplices[n - 1]]
            f_cols = _chain_map_columns(f, n - 1, b_index)
            for col_a, col_f in zip(a_bd, f_cols):
                col = {r: -v for r, v in col_a.items()}
                for r, v in col_f.items():
                    col[offset + r] = col.get(offset + r, 0) + v
                cols.append({r: v for r, v in col.items() if v})
        b_bd = _boundary_columns(B, n, b_index) if n >= 1 else [{} for _ in B.simplices[n]]
        for col_b in b_bd:
            cols.append({offset + r: v for r, v in col_b.items()})
        return cols

    def size(n: int) -> int:
        return (len(A.simplices[n - 1]) if n >= 1 else 0) + len(B.simplices[n])

    factors = {n: invariant_factors(cone_columns(n)) if n > 0 else [] for n in range(up_to + 2)}
    result = HomologyGroups()
    for n in range(up_to + 1):
        result.ranks[n] = size(n) - len(factors[n]) - len(factors[n + 1])
        result.torsion[n] = [v for v in factors[n + 1] if v > 1]
    return result


def pi0_map(f: SSetMap) -> Tuple[Dict[int, int], List[List[Hashable]], List[List[Hashable]]]:
    source_comps = f.source.components()
    target_comps = f.target.components()
    where = {v: i for i, comp in enumerate(target_comps) for v in comp}
    return ({i: where[f.on_vertex(comp[0])] for i, comp in enumerate(source_comps)}, source_comps, target_comps)


def k_equivalence_evidence(f: 'DiagMap', dim: int) -> CheckResult:
    """
    pi_0 bijectivity, homology of both homotopy colimits and mapping cone
    acyclicity through dim + 1.
    """
    dim_cap = dim + 2
    source_h = hocolim(f.source, dim_cap)
    target_h = hocolim(f.target, dim_cap)
    induced = hocolim_map(f, source_h, target_h)
    result = CheckResult('k-equivalence-evidence', True)
    mapping, source_comps, target_comps = pi0_map(induced)
    if len(set(mapping.values())) != len(mapping) or len(mapping) != len(target_comps):
        missing = [target_comps[j][0] for j in range(len(target_comps)) if j not in mapping.values()]
        result.fail({'pi0_source': len(source_comps), 'pi0_target': len(target_comps),
                     'unhit_components': missing[:5]})
    source_homology = homology(source_h, dim)
    target_homology = homology(target_h, dim)
    cone = mapping_cone_homology(induced, dim + 1)
    acyclic = all(cone.ranks[n] == 0 and not cone.torsion[n] for n in cone.ranks)
    if not acyclic:
        result.fail({'mapping_cone': cone.to_dict()})
    result.details = {
        'label': TRUNCATION_LABEL,
        'dim': dim,
        'max_degree': getattr(f.source.cat, 'max_degree', None),
        'pi0_bijective': len(set(mapping.values())) == len(mapping) == len(target_comps),
        'source_homology': source_homology.to_dict(),
        'target_homology': target_homology.to_dict(),
        'mapping_cone_acyclic': acyclic,
    }
    return result


def pullback_preservation(square: Dict[str, Any], dim_cap: int = 2) -> CheckResult:
    """
    hocolim of a levelwise pullback square W = X x_Z Y compared with the
    pullback of the homotopy colimits, on all formal simplices up to dim_cap.

    square holds the maps 'wx': W -> X, 'wy': W -> Y, 'xz': X -> Z, 'yz': Y -> Z.
    """
    wx, wy, xz, yz = square['wx'], square['wy'], square['xz'], square['yz']
    hW, hX, hY, hZ = (hocolim(D, dim_cap) for D in (wx.source, xz.source, yz.source, xz.target))
    m_wx, m_wy = hocolim_map(wx, hW, hX), hocolim_map(wy, hW, hY)
    m_xz, m_yz = hocolim_map(xz, hX, hZ), hocolim_map(yz, hY, hZ)
    result = CheckResult('hocolim-preserves-pullbacks', True)
    for d in range(dim_cap + 1):
        images = [(m_wx.apply(s), m_wy.apply(s)) for s in hW.formal_simplices(d)]
        if len(set(images)) != len(images):
            result.fail({'dimension': d, 'reason': 'comparison not injective'})
        by_z: Dict[Formal, List[Formal]] = {}
        for t in hY.formal_simplices(d):
            by_z.setdefault(m_yz.apply(t), []).append(t)
        pairs = {(s, t) for s in hX.formal_simplices(d) for t in by_z.get(m_xz.apply(s), [])}
        if pairs != set(images):
            result.fail({'dimension': d, 'pullback': len(pairs), 'hocolim_of_pullback': len(set(images))})
    result.details = {'dim_cap': dim_cap, 'label': TRUNCATION_LABEL}
    return result


def check_consistent(S: FinSSet) -> None:
    """Raise when S violates the simplicial identities"""
    witnesses = S.check_simplicial_identities()
    if witnesses:
        raise InvariantViolation(f"Simplicial identities fail: {witnesses[0]}")
