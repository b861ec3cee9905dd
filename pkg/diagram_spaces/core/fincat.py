"""
Finite presentations of the index categories I, J and Sigma.

Objects of I are naturals n standing for {1, ..., n}; morphisms are injections
stored as image sequences. J has pairs (n1, n2) as objects and morphisms
(beta1, beta2, sigma) where sigma matches the complement of beta1 with the
complement of beta2. Every category here is truncated at a max_degree and
refuses to enumerate beyond it.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from diagram_spaces.core.errors import DegreeCapError, DomainMismatchError, InvariantViolation
from diagram_spaces.core.models import CheckResult, jsonable

logger = logging.getLogger(__name__)

ObjI = int


class ObjJ(NamedTuple):
    """Object (n1, n2) of J"""
    n1: int
    n2: int


def perm_sign(images: Sequence[int]) -> int:
    """Sign of a permutation given by its 1-based image sequence"""
    inversions = 0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i] > images[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


# ============================================================================
# CATEGORY I
# ============================================================================

@dataclass(frozen=True, order=True)
class MorI:
    """An injection {1..src} -> {1..dst}; image[i-1] is the value of i"""
    dst: int
    image: Tuple[int, ...]

    def __post_init__(self):
        if self.dst < 0:
            raise InvariantViolation(f"Negative target {self.dst}")
        if len(set(self.image)) != len(self.image):
            raise InvariantViolation(f"Image {self.image} is not injective")
        if any(v < 1 or v > self.dst for v in self.image):
            raise InvariantViolation(f"Image {self.image} leaves 1..{self.dst}")

    @property
    def src(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def complement(self) -> Tuple[int, ...]:
        taken = set(self.image)
        return tuple(v for v in range(1, self.dst + 1) if v not in taken)

    @property
    def is_iso(self) -> bool:
        return self.src == self.dst

    def inverse(self) -> 'MorI':
        if not self.is_iso:
            raise ValueError(f"{self} is not invertible")
        inv = [0] * self.dst
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return MorI(self.dst, tuple(inv))

    def sign(self) -> int:
        if not self.is_iso:
            raise ValueError(f"Sign of non-bijection {self}")
        return perm_sign(self.image)

    def to_dict(self) -> Dict[str, Any]:
        return {'src': self.src, 'dst': self.dst, 'image': list(self.image)}


def identity_I(n: int) -> MorI:
    return MorI(n, tuple(range(1, n + 1)))


def inclusion_I(m: int, n: int) -> MorI:
    """The standard inclusion of {1..m} into {1..n}"""
    return MorI(n, tuple(range(1, m + 1)))


def compose_I(g: MorI, f: MorI) -> MorI:
    """g after f"""
    if f.dst != g.src:
        raise DomainMismatchError(f.dst, g.src)
    return MorI(g.dst, tuple(g.image[v - 1] for v in f.image))


def complement(f: MorI) -> List[int]:
    """Sorted values of the target not hit by f"""
    return list(f.complement())


def concat_I(f: MorI, g: MorI) -> MorI:
    return MorI(f.dst + g.dst, f.image + tuple(f.dst + v for v in g.image))


def chi_I(m: int, n: int) -> MorI:
    """The shuffle moving the first m elements past the last n"""
    return MorI(m + n, tuple(n + i for i in range(1, m + 1)) + tuple(range(1, n + 1)))


def canonical_extension(f: MorI) -> MorI:
    """The bijection m + (n - f) -> n extending f by the increasing complement"""
    return MorI(f.dst, f.image + f.complement())


def enumerate_injections(m: int, n: int) -> List[MorI]:
    if m > n:
        return []
    return [MorI(n, p) for p in permutations(range(1, n + 1), m)]


def block_shuffle(sizes: Sequence[int], sigma: Sequence[int]) -> MorI:
    """
    Bijection of {1..sum(sizes)} moving block i to position sigma(i).

    sigma is 1-based: sigma[i-1] is the new position of block i.
    """
    n = len(sizes)
    new_sizes = [0] * n
    for i in range(n):
        new_sizes[sigma[i] - 1] = sizes[i]
    new_offsets = [sum(new_sizes[:j]) for j in range(n)]
    image = []
    for i in range(n):
        start = new_offsets[sigma[i] - 1]
        image.extend(start + r for r in range(1, sizes[i] + 1))
    return MorI(sum(sizes), tuple(image))


# ============================================================================
# CATEGORY J
# ============================================================================

@dataclass(frozen=True, order=True)
class MorJ:
    """
    Morphism (beta1, beta2, sigma) of J.

    sigma[i] is the image under the complement bijection of the i-th element of
    the increasing complement of beta1.
    """
    beta1: MorI
    beta2: MorI
    sigma: Tuple[int, ...]

    def __post_init__(self):
        c1 = self.beta1.complement()
        c2 = self.beta2.complement()
        if len(c1) != len(c2):
            raise InvariantViolation(f"Complements of different size: {c1} vs {c2}")
        if len(self.sigma) != len(c1) or set(self.sigma) != set(c2):
            raise InvariantViolation(f"sigma {self.sigma} is not a bijection {c1} -> {c2}")

    @property
    def src(self) -> ObjJ:
        return ObjJ(self.beta1.src, self.beta2.src)

    @property
    def dst(self) -> ObjJ:
        return ObjJ(self.beta1.dst, self.beta2.dst)

    def sigma_map(self) -> Dict[int, int]:
        return dict(zip(self.beta1.complement(), self.sigma))

    @property
    def is_iso(self) -> bool:
        return self.beta1.is_iso and self.beta2.is_iso

    def to_dict(self) -> Dict[str, Any]:
        return {
            'src': list(self.src),
            'dst': list(self.dst),
            'beta1': list(self.beta1.image),
            'beta2': list(self.beta2.image),
            'sigma': {str(k): v for k, v in self.sigma_map().items()},
        }


def identity_J(obj: ObjJ) -> MorJ:
    return MorJ(identity_I(obj.n1), identity_I(obj.n2), ())


def compose_J(g: MorJ, f: MorJ) -> MorJ:
    """g after f; the complement bijection is sigma_g on n1 - beta1 and beta2 rho beta1^-1 on the rest"""
    if f.dst != g.src:
        raise DomainMismatchError(f.dst, g.src)
    beta1 = compose_I(g.beta1, f.beta1)
    beta2 = compose_I(g.beta2, f.beta2)
    tau: Dict[int, int] = dict(g.sigma_map())
    for t, rho_t in f.sigma_map().items():
        tau[g.beta1(t)] = g.beta2(rho_t)
    comp1 = beta1.complement()
    if sorted(tau) != list(comp1) or sorted(tau.values()) != list(beta2.complement()):
        raise InvariantViolation(f"Composite complement map {tau} is not a bijection")
    return MorJ(beta1, beta2, tuple(tau[s] for s in comp1))


def concat_J(f: MorJ, g: MorJ) -> MorJ:
    shift = f.beta2.dst
    return MorJ(concat_I(f.beta1, g.beta1), concat_I(f.beta2, g.beta2),
                f.sigma + tuple(shift + v for v in g.sigma))


def chi_J(a: ObjJ, b: ObjJ) -> MorJ:
    return MorJ(chi_I(a.n1, b.n1), chi_I(a.n2, b.n2), ())


def diagonal_functor(f: MorI) -> MorJ:
    """The diagonal (f, f, identity on the complement)"""
    return MorJ(f, f, f.complement())


def sgn_of_J_morphism(f: MorJ) -> int:
    """sgn(beta2) * sgn(beta1) for an endomorphism"""
    if f.src != f.dst or not f.is_iso:
        raise ValueError(f"Sign is defined on endomorphisms only, got {f.src} -> {f.dst}")
    return f.beta2.sign() * f.beta1.sign()


def sign_of_J_morphism(f: MorJ) -> int:
    """The sign functor J -> {+1, -1} evaluated through the canonical representative of f"""
    alpha1 = canonical_extension(f.beta1)
    alpha2 = MorI(f.beta2.dst, f.beta2.image + f.sigma)
    return alpha1.sign() * alpha2.sign()


# ============================================================================
# QUILLEN LOCALIZATION
# ============================================================================

@dataclass(frozen=True, order=True)
class QuillenRep:
    """Representative (m1, m2, l, alpha1, alpha2) with alpha_i: m_i + l -> n_i bijections"""
    m1: int
    m2: int
    l: int
    alpha1: MorI
    alpha2: MorI

    def validate(self) -> 'QuillenRep':
        for m, alpha in ((self.m1, self.alpha1), (self.m2, self.alpha2)):
            if not alpha.is_iso or alpha.src != m + self.l:
                raise ValueError(f"Representative {self} needs bijections from m + l")
        return self


def _precompose_tail(alpha: MorI, m: int, tau: Sequence[int]) -> MorI:
    """alpha after (1_m + tau)"""
    return MorI(alpha.dst, alpha.image[:m] + tuple(alpha.image[m + t - 1] for t in tau))


def normalize_representative(rep: QuillenRep) -> QuillenRep:
    """The lexicographically least representative of the isomorphism class"""
    rep.validate()
    best = None
    for tau in permutations(range(1, rep.l + 1)):
        candidate = QuillenRep(rep.m1, rep.m2, rep.l,
                               _precompose_tail(rep.alpha1, rep.m1, tau),
                               _precompose_tail(rep.alpha2, rep.m2, tau))
        key = (candidate.alpha1.image, candidate.alpha2.image)
        if best is None or key < best[0]:
            best = (key, candidate)
    return best[1]


def sigma_inv_sigma_to_J(rep: QuillenRep) -> MorJ:
    rep.validate()
    beta1 = MorI(rep.alpha1.dst, rep.alpha1.image[:rep.m1])
    beta2 = MorI(rep.alpha2.dst, rep.alpha2.image[:rep.m2])
    pairing = {rep.alpha1.image[rep.m1 + j]: rep.alpha2.image[rep.m2 + j] for j in range(rep.l)}
    return MorJ(beta1, beta2, tuple(pairing[s] for s in beta1.complement()))


def sigma_inv_sigma_classes(src: ObjJ, dst: ObjJ) -> List[QuillenRep]:
    """Normalized representatives of all morphisms src -> dst"""
    l = dst.n1 - src.n1
    if l < 0 or dst.n2 - src.n2 != l:
        return []
    classes = set()
    for a1 in permutations(range(1, dst.n1 + 1)):
        for a2 in permutations(range(1, dst.n2 + 1)):
            rep = QuillenRep(src.n1, src.n2, l, MorI(dst.n1, a1), MorI(dst.n2, a2))
            classes.add(normalize_representative(rep))
    return sorted(classes)


def compose_representatives(g: QuillenRep, f: QuillenRep) -> QuillenRep:
    """[l + l', beta1 (alpha1 + 1), beta2 (alpha2 + 1)] for g = [l', beta], f = [l, alpha]"""
    if (f.alpha1.dst, f.alpha2.dst) != (g.m1, g.m2):
        raise DomainMismatchError(ObjJ(f.alpha1.dst, f.alpha2.dst), ObjJ(g.m1, g.m2))
    alpha1 = compose_I(g.alpha1, concat_I(f.alpha1, identity_I(g.l)))
    alpha2 = compose_I(g.alpha2, concat_I(f.alpha2, identity_I(g.l)))
    return normalize_representative(QuillenRep(f.m1, f.m2, f.l + g.l, alpha1, alpha2))


# ============================================================================
# FINITE CATEGORIES
# ============================================================================

class FiniteCategory(ABC):
    """A category with finitely many objects and morphisms"""

    name = "finite"

    @abstractmethod
    def objects(self) -> List[Any]:
        ...

    @abstractmethod
    def hom(self, a: Any, b: Any) -> Tuple[Any, ...]:
        ...

    @abstractmethod
    def compose(self, g: Any, f: Any) -> Any:
        ...

    @abstractmethod
    def identity(self, a: Any) -> Any:
        ...

    def is_identity(self, f: Any) -> bool:
        return any(f == self.identity(a) for a in self.objects() if f in self.hom(a, a))

    def key(self, obj: Any) -> str:
        return repr(obj)

    def initial_objects(self) -> List[Any]:
        objs = self.objects()
        return [a for a in objs if all(len(self.hom(a, b)) == 1 for b in objs)]

    def terminal_objects(self) -> List[Any]:
        objs = self.objects()
        return [b for b in objs if all(len(self.hom(a, b)) == 1 for a in objs)]


class TerminalCategory(FiniteCategory):
    name = "terminal"

    def objects(self):
        return ['*']

    def hom(self, a, b):
        return ('id',)

    def compose(self, g, f):
        return 'id'

    def identity(self, a):
        return 'id'

    def is_identity(self, f):
        return True


class FullSubcategory(FiniteCategory):
    """Full subcategory of a finite category on a chosen object list"""

    def __init__(self, base: FiniteCategory, objects: Iterable[Any], name: Optional[str] = None):
        self.base = base
        self._objects = list(objects)
        self.name = name or f"{base.name}|sub"

    def objects(self):
        return list(self._objects)

    def hom(self, a, b):
        return self.base.hom(a, b)

    def compose(self, g, f):
        return self.base.compose(g, f)

    def identity(self, a):
        return self.base.identity(a)

    def is_identity(self, f):
        return self.base.is_identity(f)

    def key(self, obj):
        return self.base.key(obj)


class UnderCategory(FiniteCategory):
    """
    The comma category (k | C) restricted to target objects of C.

    Objects are pairs (a, f: k -> a); morphisms are triples (x, y, gamma).
    """

    def __init__(self, base: FiniteCategory, k: Any, targets: Optional[Iterable[Any]] = None):
        self.base = base
        self.k = k
        self.name = f"({base.key(k)}|{base.name})"
        targets = base.objects() if targets is None else list(targets)
        self._objects = [(a, f) for a in targets for f in base.hom(k, a)]

    def objects(self):
        return list(self._objects)

    def hom(self, x, y):
        (a, f), (b, g) = x, y
        return tuple((x, y, gamma) for gamma in self.base.hom(a, b)
                     if self.base.compose(gamma, f) == g)

    def compose(self, g, f):
        return (f[0], g[1], self.base.compose(g[2], f[2]))

    def identity(self, x):
        return (x, x, self.base.identity(x[0]))

    def is_identity(self, f):
        return f[0] == f[1] and self.base.is_identity(f[2])


# ============================================================================
# INDEX CATEGORIES
# ============================================================================

class IndexCategory(FiniteCategory):
    """A truncated permutative index category with a degree functor"""

    name = "K"

    def __init__(self, max_degree: int):
        if max_degree < 0:
            raise ValueError(f"max_degree must be non-negative, got {max_degree}")
        self.max_degree = max_degree
        self._hom_cache: Dict[Tuple[Any, Any], Tuple[Any, ...]] = {}

    def __eq__(self, other):
        return type(self) is type(other) and self.max_degree == other.max_degree

    def __hash__(self):
        return hash((self.name, self.max_degree))

    def __repr__(self):
        return f"{type(self).__name__}(max_degree={self.max_degree})"

    # -- objects ---------------------------------------------------------

    @abstractmethod
    def size(self, obj: Any) -> int:
        """Truncation measure of an object"""

    @abstractmethod
    def degree(self, obj: Any) -> int:
        """The degree functor lambda"""

    @abstractmethod
    def fits(self, a: Any, b: Any) -> bool:
        """Whether morphisms a -> b can exist"""

    @abstractmethod
    def _enumerate(self, a: Any, b: Any) -> List[Any]:
        ...

    @property
    @abstractmethod
    def unit(self) -> Any:
        ...

    def check_object(self, obj: Any) -> Any:
        if self.size(obj) > self.max_degree:
            raise DegreeCapError(f"Object {obj!r} exceeds max_degree={self.max_degree} of {self.name}")
        return obj

    def hom(self, a, b):
        key = (a, b)
        cached = self._hom_cache.get(key)
        if cached is None:
            self.check_object(a)
            self.check_object(b)
            cached = tuple(self._enumerate(a, b)) if self.fits(a, b) else ()
            self._hom_cache[key] = cached
        return cached

    def automorphisms(self, a):
        return self.hom(a, a)

    def morphisms_into(self, b) -> List[Tuple[Any, Any]]:
        """All (a, f) with f: a -> b, identities included"""
        return [(a, f) for a in self.objects() if self.fits(a, b) for f in self.hom(a, b)]

    # -- monoidal structure ----------------------------------------------

    @abstractmethod
    def concat(self, a, b):
        ...

    @abstractmethod
    def concat_mor(self, f, g):
        ...

    @abstractmethod
    def symmetry(self, a, b):
        ...

    @abstractmethod
    def block_permutation(self, objs: Sequence[Any], sigma: Sequence[int]):
        """Isomorphism concat(objs) -> concat(objs permuted by sigma)"""

    @abstractmethod
    def src(self, f):
        ...

    @abstractmethod
    def dst(self, f):
        ...

    @abstractmethod
    def is_iso(self, f) -> bool:
        ...

    @abstractmethod
    def inverse(self, f):
        ...

    def concat_all(self, objs: Sequence[Any]):
        result = self.unit
        for obj in objs:
            result = self.concat(result, obj)
        return result

    def concat_mors(self, mors: Sequence[Any]):
        result = self.identity(self.unit)
        for mor in mors:
            result = self.concat_mor(result, mor)
        return result

    def is_identity(self, f):
        return self.is_iso(f) and f == self.identity(self.src(f))


class CategoryI(IndexCategory):
    """Finite sets and injections"""

    name = "I"

    def objects(self):
        return list(range(self.max_degree + 1))

    def size(self, obj):
        return obj

    def degree(self, obj):
        return obj

    def fits(self, a, b):
        return a <= b

    def _enumerate(self, a, b):
        return enumerate_injections(a, b)

    @property
    def unit(self):
        return 0

    def compose(self, g, f):
        return compose_I(g, f)

    def identity(self, a):
        return identity_I(a)

    def concat(self, a, b):
        return a + b

    def concat_mor(self, f, g):
        return concat_I(f, g)

    def symmetry(self, a, b):
        return chi_I(a, b)

    def block_permutation(self, objs, sigma):
        return block_shuffle(list(objs), sigma)

    def src(self, f):
        return f.src

    def dst(self, f):
        return f.dst

    def is_iso(self, f):
        return f.is_iso

    def inverse(self, f):
        return f.inverse()

    def key(self, obj):
        return str(obj)

    def parse_key(self, key: str) -> int:
        return int(key)


class CategorySigma(CategoryI):
    """Finite sets and bijections"""

    name = "Sigma"

    def fits(self, a, b):
        return a == b


class CategoryJ(IndexCategory):
    """Quillen's localization construction on I"""

    name = "J"

    def objects(self):
        n = self.max_degree
        return [ObjJ(a, b) for a in range(n + 1) for b in range(n + 1)]

    def size(self, obj):
        return max(obj[0], obj[1])

    def degree(self, obj):
        return obj[0]

    def fits(self, a, b):
        l = b[0] - a[0]
        return l >= 0 and b[1] - a[1] == l

    def _enumerate(self, a, b):
        result = []
        for beta1 in enumerate_injections(a[0], b[0]):
            for beta2 in enumerate_injections(a[1], b[1]):
                for sigma in permutations(beta2.complement()):
                    result.append(MorJ(beta1, beta2, sigma))
        return result

    @property
    def unit(self):
        return ObjJ(0, 0)

    def compose(self, g, f):
        return compose_J(g, f)

    def identity(self, a):
        return identity_J(ObjJ(*a))

    def concat(self, a, b):
        return ObjJ(a[0] + b[0], a[1] + b[1])

    def concat_mor(self, f, g):
        return concat_J(f, g)

    def symmetry(self, a, b):
        return chi_J(ObjJ(*a), ObjJ(*b))

    def block_permutation(self, objs, sigma):
        first = block_shuffle([o[0] for o in objs], sigma)
        second = block_shuffle([o[1] for o in objs], sigma)
        return MorJ(first, second, ())

    def src(self, f):
        return f.src

    def dst(self, f):
        return f.dst

    def is_iso(self, f):
        return f.is_iso

    def inverse(self, f):
        return MorJ(f.beta1.inverse(), f.beta2.inverse(), ())

    def key(self, obj):
        return f"{obj[0]},{obj[1]}"

    def parse_key(self, key: str) -> ObjJ:
        a, b = key.split(',')
        return ObjJ(int(a), int(b))

    def component(self, t: int) -> FullSubcategory:
        """The full subcategory J_t on objects with n2 - n1 = t"""
        return FullSubcategory(self, [o for o in self.objects() if o.n2 - o.n1 == t], name=f"J_{t}")


def category_by_name(name: str, max_degree: int) -> IndexCategory:
    classes = {'I': CategoryI, 'J': CategoryJ, 'Sigma': CategorySigma}
    if name not in classes:
        raise ValueError(f"Unknown index category: {name}")
    return classes[name](max_degree)


def enumerate_mor(cat: IndexCategory, src: Any, dst: Any) -> List[Any]:
    return list(cat.hom(src, dst))


def morphism_from_dict(data: Dict[str, Any]) -> Any:
    """Inverse of MorI.to_dict and MorJ.to_dict"""
    if 'beta1' in data:
        n1, n2 = data['dst']
        beta1 = MorI(n1, tuple(data['beta1']))
        beta2 = MorI(n2, tuple(data['beta2']))
        sigma = data.get('sigma', {})
        return MorJ(beta1, beta2, tuple(int(sigma[str(s)]) for s in beta1.complement()))
    return MorI(int(data['dst']), tuple(data['image']))


# ============================================================================
# COMMA CATEGORIES AND WELL-STRUCTUREDNESS
# ============================================================================

@dataclass
class CommaCat:
    """The comma category (k + - | l)"""
    k: Any
    l: Any
    objects: List[Tuple[Any, Any]]
    morphisms: List[Tuple[int, int, Any]]
    components: List[List[int]]
    terminals: List[List[int]]
    index: Dict[Tuple[Any, Any], int] = field(default_factory=dict, repr=False)
    component_of: Dict[int, int] = field(default_factory=dict, repr=False)


def comma_category(cat: IndexCategory, k: Any, l: Any) -> CommaCat:
    """Objects (n, alpha: k + n -> l); morphisms gamma: n -> n' with alpha = alpha' (1 + gamma)"""
    cat.check_object(k)
    cat.check_object(l)
    objects = []
    by_n: Dict[Any, List[int]] = {}
    for n in cat.objects():
        kn = cat.concat(k, n)
        if cat.size(kn) > cat.max_degree or not cat.fits(kn, l):
            continue
        for alpha in cat.hom(kn, l):
            by_n.setdefault(n, []).append(len(objects))
            objects.append((n, alpha))
    index = {obj: i for i, obj in enumerate(objects)}
    id_k = cat.identity(k)

    morphisms = []
    counts: Dict[Tuple[int, int], int] = {}
    for j, (n_target, alpha_target) in enumerate(objects):
        for n_source in by_n:
            if not cat.fits(n_source, n_target):
                continue
            for gamma in cat.hom(n_source, n_target):
                alpha = cat.compose(alpha_target, cat.concat_mor(id_k, gamma))
                i = index[(n_source, alpha)]
                morphisms.append((i, j, gamma))
                counts[(i, j)] = counts.get((i, j), 0) + 1

    uf = UnionFind(range(len(objects)))
    for i, j, _ in morphisms:
        uf.union(i, j)
    components = sorted(sorted(s) for s in uf.to_sets())
    component_of = {i: c for c, members in enumerate(components) for i in members}
    terminals = []
    for members in components:
        terminals.append([t for t in members if all(counts.get((o, t), 0) == 1 for o in members)])
    logger.debug(f"Comma ({k}+-|{l}) in {cat.name}: {len(objects)} objects, {len(components)} components")
    return CommaCat(k, l, objects, morphisms, components, terminals, index, component_of)


SELECTORS = ('discrete', 'positive-discrete', 'full', 'positive-full')


def automorphism_subgroup(cat: IndexCategory, selector: str, k: Any) -> Optional[Tuple[Any, ...]]:
    """A(k) for the selector, or None when k is not in A"""
    if selector not in SELECTORS:
        raise ValueError(f"Unknown automorphism selector: {selector}")
    if selector.startswith('positive') and cat.degree(k) == 0:
        return None
    if selector.endswith('discrete'):
        return (cat.identity(k),)
    return cat.automorphisms(k)


@dataclass
class WellStructuredReport:
    category: str
    selector: str
    degree_functor_ok: bool = True
    terminal_per_component: bool = True
    free_component_action: bool = True
    very_well_structured: bool = True
    max_degree_checked: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    cofinality_certificates: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'category': self.category,
            'selector': self.selector,
            'degree_functor_ok': self.degree_functor_ok,
            'terminal_per_component': self.terminal_per_component,
            'free_component_action': self.free_component_action,
            'very_well_structured': self.very_well_structured,
            'max_degree_checked': self.max_degree_checked,
            'counterexamples': jsonable(self.counterexamples),
            'cofinality_certificates': dict(self.cofinality_certificates),
            'cofinality_note': 'certificate only',
        }


def _action_witness(cat, comma: CommaCat, g, power) -> Optional[Dict[str, Any]]:
    """First component fixed by g acting through alpha -> alpha (g + 1)"""
    for c, members in enumerate(comma.components):
        n, alpha = comma.objects[members[0]]
        moved = cat.compose(alpha, cat.concat_mor(g, cat.identity(n)))
        if comma.component_of[comma.index[(n, moved)]] == c:
            return {'k': power, 'l': comma.l, 'automorphism': g, 'component_rep': (n, alpha)}
    return None


def check_well_structured(cat: IndexCategory, automorphism_selector: str,
                          max_degree: Optional[int] = None) -> WellStructuredReport:
    """Exhaustive check of the well-structured conditions up to max_degree"""
    if max_degree is not None and max_degree != cat.max_degree:
        cat = type(cat)(max_degree)
    report = WellStructuredReport(cat.name, automorphism_selector, max_degree_checked=cat.max_degree)
    objects = cat.objects()

    # (i) the degree functor detects isomorphisms and is strictly monoidal
    if cat.degree(cat.unit) != 0:
        report.degree_functor_ok = False
        _record(report, {'condition': 'i', 'unit_degree': cat.degree(cat.unit)})
    for a in objects:
        for b in objects:
            ab = cat.concat(a, b)
            if cat.size(ab) <= cat.max_degree and cat.degree(ab) != cat.degree(a) + cat.degree(b):
                report.degree_functor_ok = False
                _record(report, {'condition': 'i', 'objects': (a, b)})
            for f in cat.hom(a, b):
                if cat.is_iso(f) != (cat.degree(a) == cat.degree(b)):
                    report.degree_functor_ok = False
                    _record(report, {'condition': 'i', 'morphism': f})

    members = [k for k in objects if automorphism_subgroup(cat, automorphism_selector, k) is not None]

    # (ii) terminal objects and (iii) free A(k)-action on components
    for k in members:
        group = automorphism_subgroup(cat, automorphism_selector, k)
        for l in objects:
            comma = comma_category(cat, k, l)
            for c, terms in enumerate(comma.terminals):
                if not terms:
                    report.terminal_per_component = False
                    _record(report, {'condition': 'ii', 'k': k, 'l': l,
                                     'component_rep': comma.objects[comma.components[c][0]]})
            for g in group:
                if cat.is_identity(g):
                    continue
                witness = _action_witness(cat, comma, g, k)
                if witness:
                    report.free_component_action = False
                    _record(report, dict(witness, condition='iii'))

    # very well-structured: Sigma_n semidirect A(k)^n acts freely for n <= 3
    for k in members:
        group = automorphism_subgroup(cat, automorphism_selector, k)
        for n in (2, 3):
            power = cat.concat_all([k] * n)
            if cat.size(power) > cat.max_degree:
                continue
            commas = [comma_category(cat, power, l) for l in objects if cat.fits(power, l)]
            identity = cat.identity(power)
            for sigma in permutations(range(1, n + 1)):
                for factors in product(group, repeat=n):
                    trivial_element = list(sigma) == list(range(1, n + 1)) and all(cat.is_identity(f) for f in factors)
                    if trivial_element:
                        continue
                    g = cat.compose(cat.block_permutation([k] * n, sigma), cat.concat_mors(factors))
                    if g == identity:
                        report.very_well_structured = False
                        _record(report, {'condition': 'very-well', 'k': k, 'n': n,
                                         'sigma': sigma, 'reason': 'acts trivially'})
                        continue
                    for comma in commas:
                        witness = _action_witness(cat, comma, g, power)
                        if witness:
                            report.very_well_structured = False
                            _record(report, dict(witness, condition='very-well', n=n, sigma=sigma))
                            break
    if not (report.terminal_per_component and report.free_component_action and report.degree_functor_ok):
        report.very_well_structured = False

    # (iv) certificate: an initial object of (c | K_A)
    for c in objects:
        under = UnderCategory(cat, c, members)
        report.cofinality_certificates[cat.key(c)] = bool(under.objects()) and bool(under.initial_objects())

    logger.info(f"Well-structured check {cat.name}/{automorphism_selector}: "
                f"{len(report.counterexamples)} counterexamples")
    return report


MAX_WITNESSES = 25


def _record(report: WellStructuredReport, witness: Dict[str, Any]) -> None:
    if len(report.counterexamples) < MAX_WITNESSES:
        report.counterexamples.append(witness)


# ============================================================================
# LAW CHECKS
# ============================================================================

def _composable_pairs(cat: IndexCategory, objects: Sequence[Any]):
    for a, b, c in product(objects, repeat=3):
        if cat.fits(a, b) and cat.fits(b, c):
            for f in cat.hom(a, b):
                for g in cat.hom(b, c):
                    yield f, g


def check_category_laws(cat: IndexCategory, witness_limit: int = 10) -> CheckResult:
    """Identity and associativity laws over every composable triple of the truncation"""
    result = CheckResult(f'category-laws[{cat.name}]', True)
    objects = cat.objects()
    triples = 0
    for a in objects:
        for b in objects:
            for f in cat.hom(a, b):
                if cat.compose(f, cat.identity(a)) != f or cat.compose(cat.identity(b), f) != f:
                    result.fail({'law': 'identity', 'morphism': f})
    for b, c, d in product(objects, repeat=3):
        if not (cat.fits(b, c) and cat.fits(c, d)):
            continue
        after = {(g, h): cat.compose(h, g) for g in cat.hom(b, c) for h in cat.hom(c, d)}
        for a in objects:
            if not cat.fits(a, b):
                continue
            for f in cat.hom(a, b):
                for (g, h), hg in after.items():
                    triples += 1
                    if cat.compose(hg, f) != cat.compose(h, cat.compose(g, f)):
                        if len(result.witnesses) < witness_limit:
                            result.fail({'law': 'associativity', 'morphisms': (f, g, h)})
                        result.passed = False
    result.details = {'max_degree': cat.max_degree, 'triples': triples}
    logger.info(f"Category laws for {cat.name}: {triples} triples, passed={result.passed}")
    return result


def check_permutative(cat: IndexCategory, witness_limit: int = 10) -> CheckResult:
    """
    Strict unit and associativity of concatenation, its functoriality, and
    naturality, hexagon and involution for the symmetry.
    """
    result = CheckResult(f'permutative[{cat.name}]', True)
    objects = cat.objects()
    morphisms = [f for a in objects for b in objects for f in cat.hom(a, b)]
    unit_id = cat.identity(cat.unit)

    def fail(witness):
        if len(result.witnesses) < witness_limit:
            result.fail(witness)
        result.passed = False

    for a in objects:
        if cat.concat(cat.unit, a) != a or cat.concat(a, cat.unit) != a:
            fail({'law': 'unit', 'object': a})
        if not cat.is_identity(cat.symmetry(a, cat.unit)):
            fail({'law': 'unit symmetry', 'object': a})
    for f in morphisms:
        if cat.concat_mor(unit_id, f) != f or cat.concat_mor(f, unit_id) != f:
            fail({'law': 'unit', 'morphism': f})
    for a, b, c in product(objects, repeat=3):
        if cat.concat(cat.concat(a, b), c) != cat.concat(a, cat.concat(b, c)):
            fail({'law': 'associativity', 'objects': (a, b, c)})
        hexagon = cat.compose(cat.concat_mor(cat.identity(b), cat.symmetry(a, c)),
                              cat.concat_mor(cat.symmetry(a, b), cat.identity(c)))
        if hexagon != cat.symmetry(a, cat.concat(b, c)):
            fail({'law': 'hexagon', 'objects': (a, b, c)})
    for f, g, h in product(morphisms, repeat=3):
        if cat.concat_mor(cat.concat_mor(f, g), h) != cat.concat_mor(f, cat.concat_mor(g, h)):
            fail({'law': 'associativity', 'morphisms': (f, g, h)})
    for a, b in product(objects, repeat=2):
        if not cat.is_identity(cat.compose(cat.symmetry(b, a), cat.symmetry(a, b))):
            fail({'law': 'involution', 'objects': (a, b)})
    for f, g in product(morphisms, repeat=2):
        lhs = cat.compose(cat.symmetry(cat.dst(f), cat.dst(g)), cat.concat_mor(f, g))
        rhs = cat.compose(cat.concat_mor(g, f), cat.symmetry(cat.src(f), cat.src(g)))
        if lhs != rhs:
            fail({'law': 'naturality', 'morphisms': (f, g)})
    pairs = list(_composable_pairs(cat, objects))
    for (f, g), (f2, g2) in product(pairs, repeat=2):
        lhs = cat.compose(cat.concat_mor(g, g2), cat.concat_mor(f, f2))
        if lhs != cat.concat_mor(cat.compose(g, f), cat.compose(g2, f2)):
            fail({'law': 'functoriality', 'morphisms': (f, g, f2, g2)})
    result.details = {'max_degree': cat.max_degree, 'morphisms': len(morphisms), 'composable_pairs': len(pairs)}
    return result


def check_sigma_inv_sigma(max_degree: int, witness_limit: int = 10) -> CheckResult:
    """
    The comparison from Quillen's construction to J: well defined on every
    representative, bijective on each hom-set and compatible with composition.
    """
    cat = CategoryJ(max_degree)
    result = CheckResult('sigma-inv-sigma', True)
    objects = cat.objects()
    classes: Dict[Tuple[ObjJ, ObjJ], List[QuillenRep]] = {}
    representatives = 0

    def fail(witness):
        if len(result.witnesses) < witness_limit:
            result.fail(witness)
        result.passed = False

    for src, dst in product(objects, repeat=2):
        if not cat.fits(src, dst):
            continue
        l = dst.n1 - src.n1
        for a1, a2 in product(permutations(range(1, dst.n1 + 1)), permutations(range(1, dst.n2 + 1))):
            rep = QuillenRep(src.n1, src.n2, l, MorI(dst.n1, a1), MorI(dst.n2, a2))
            representatives += 1
            if sigma_inv_sigma_to_J(rep) != sigma_inv_sigma_to_J(normalize_representative(rep)):
                fail({'condition': 'well defined', 'representative': rep})
        reps = sigma_inv_sigma_classes(src, dst)
        classes[(src, dst)] = reps
        images = [sigma_inv_sigma_to_J(r) for r in reps]
        if len(set(images)) != len(images):
            fail({'condition': 'injective', 'src': src, 'dst': dst})
        if set(images) != set(cat.hom(src, dst)):
            fail({'condition': 'surjective', 'src': src, 'dst': dst,
                  'classes': len(reps), 'morphisms': len(cat.hom(src, dst))})
    composites = 0
    for (a, b), first in classes.items():
        for c in objects:
            for g in classes.get((b, c), []):
                for f in first:
                    composites += 1
                    lhs = sigma_inv_sigma_to_J(compose_representatives(g, f))
                    if lhs != compose_J(sigma_inv_sigma_to_J(g), sigma_inv_sigma_to_J(f)):
                        fail({'condition': 'composition', 'f': f, 'g': g})
    result.details = {'max_degree': max_degree, 'representatives': representatives, 'composites': composites}
    return result


def _restrict_first(cat: IndexCategory, alpha: Any, k: Any) -> Tuple[MorI, ...]:
    """alpha: k + n -> l restricted to the first summand, as injections per coordinate"""
    if isinstance(alpha, MorJ):
        return (MorI(alpha.beta1.dst, alpha.beta1.image[:k[0]]), MorI(alpha.beta2.dst, alpha.beta2.image[:k[1]]))
    return (MorI(alpha.dst, alpha.image[:k]),)


def _restriction_targets(cat: IndexCategory, k: Any, l: Any) -> List[Tuple[MorI, ...]]:
    if isinstance(cat, CategoryJ):
        return list(product(enumerate_injections(k[0], l[0]), enumerate_injections(k[1], l[1])))
    return [(f,) for f in enumerate_injections(k, l)]


def check_comma_components(cat: IndexCategory, witness_limit: int = 10) -> CheckResult:
    """Components of (k + - | l) against injections of k into l, each with a terminal object"""
    result = CheckResult(f'comma-components[{cat.name}]', True)
    pairs = 0

    def fail(witness):
        if len(result.witnesses) < witness_limit:
            result.fail(witness)
        result.passed = False

    for k, l in product(cat.objects(), repeat=2):
        comma = comma_category(cat, k, l)
        pairs += 1
        keys = []
        for members in comma.components:
            restricted = {_restrict_first(cat, comma.objects[i][1], k) for i in members}
            if len(restricted) != 1:
                fail({'condition': 'restriction constant on components', 'k': k, 'l': l})
            keys.append(min(restricted))
        expected = _restriction_targets(cat, k, l)
        if len(set(keys)) != len(keys) or set(keys) != set(expected):
            fail({'condition': 'bijection with injections', 'k': k, 'l': l,
                  'components': len(comma.components), 'injections': len(expected)})
        for c, terms in enumerate(comma.terminals):
            if not terms:
                fail({'condition': 'terminal object', 'k': k, 'l': l,
                      'component_rep': comma.objects[comma.components[c][0]]})
    result.details = {'max_degree': cat.max_degree, 'pairs': pairs}
    return result
