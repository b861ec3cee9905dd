"""
Graded signed monoids, pi_0 of J-space monoids, units and graded log structures.

A graded signed monoid has a finite carrier per degree with an involution
(the action of -1), a unit in degree 0 and a multiplication table. Products
landing outside the carried degrees are overflow and excluded from checks.
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product as cartesian
from typing import Any, Dict, Hashable, List, Optional, Set, Tuple

from networkx.utils import UnionFind

from diagram_spaces.core.dayconv import DiagSpace, MonoidData
from diagram_spaces.core.errors import FixtureError, IterationCapError
from diagram_spaces.core.fincat import (
    CategoryJ, FullSubcategory, MorI, MorJ, ObjJ, identity_I, inclusion_I, sign_of_J_morphism,
)
from diagram_spaces.core.models import CheckResult, TRUNCATION_LABEL
from diagram_spaces.core.sset import hocolim

logger = logging.getLogger(__name__)

DEFAULT_CONGRUENCE_CAP = 10_000


@dataclass
class GradedSignedMonoid:
    """Finite graded signed monoid; element names are unique strings across degrees"""
    carriers: Dict[int, List[str]]
    involution: Dict[str, str]
    unit: str
    mult: Dict[Tuple[str, str], str]
    commutative: bool = False
    name: str = 'M'
    overflow: Set[Tuple[str, str]] = field(default_factory=set)

    def __post_init__(self):
        self.carriers = {t: list(xs) for t, xs in self.carriers.items() if xs}
        self._degree = {x: t for t, xs in self.carriers.items() for x in xs}

    def degree(self, x: str) -> int:
        return self._degree[x]

    def elements(self) -> List[str]:
        return [x for t in sorted(self.carriers) for x in self.carriers[t]]

    def neg(self, x: str) -> str:
        return self.involution[x]

    def product(self, a: str, b: str) -> Optional[str]:
        """a * b, or None when the product overflows the carried degrees"""
        if (a, b) in self.overflow or self.degree(a) + self.degree(b) not in self.carriers:
            return None
        return self.mult.get((a, b))

    def signed(self, x: str, sign: int) -> str:
        return x if sign > 0 else self.neg(x)

    def size(self) -> int:
        return len(self._degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'commutative': self.commutative,
            'unit': self.unit,
            'elements': {x: {'degree': self.degree(x), 'neg': self.neg(x)} for x in self.elements()},
            'mult': [[a, b, c] for (a, b), c in sorted(self.mult.items())],
            'overflow': sorted([a, b] for a, b in self.overflow),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GradedSignedMonoid':
        try:
            carriers: Dict[int, List[str]] = {}
            involution = {}
            for x, entry in data['elements'].items():
                carriers.setdefault(int(entry['degree']), []).append(x)
                involution[x] = entry['neg']
            mult = {(a, b): c for a, b, c in data.get('mult', [])}
            overflow = {(a, b) for a, b in data.get('overflow', [])}
            return cls(carriers, involution, data['unit'], mult, bool(data.get('commutative', False)),
                       data.get('name', 'M'), overflow)
        except (KeyError, TypeError, ValueError) as e:
            raise FixtureError(f"Malformed graded monoid: {e}")


@dataclass
class GradedMonoidMap:
    source: GradedSignedMonoid
    target: GradedSignedMonoid
    mapping: Dict[str, str]

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def check(self) -> CheckResult:
        """Degree, involution, unit and multiplication are preserved"""
        M, N = self.source, self.target
        result = CheckResult('graded-homomorphism', True)
        if self.mapping.get(M.unit) != N.unit:
            result.fail({'law': 'unit'})
        for x in M.elements():
            y = self.mapping.get(x)
            if y is None or N.degree(y) != M.degree(x):
                result.fail({'law': 'degree', 'element': x})
                continue
            if self.mapping[M.neg(x)] != N.neg(y):
                result.fail({'law': 'involution', 'element': x})
        for a, b in cartesian(M.elements(), repeat=2):
            ab = M.product(a, b)
            if ab is None:
                continue
            image = N.product(self.mapping[a], self.mapping[b])
            if image is not None and image != self.mapping[ab]:
                result.fail({'law': 'multiplication', 'elements': (a, b)})
        return result


def check_axioms(M: GradedSignedMonoid) -> CheckResult:
    """Exhaustive check over the finite carriers"""
    result = CheckResult(f'graded-axioms[{M.name}]', True)
    elements = M.elements()
    if M.unit not in M._degree or M.degree(M.unit) != 0:
        result.fail({'axiom': 'unit in degree 0'})
        return result
    for x in elements:
        y = M.involution.get(x)
        if y not in M._degree or M.degree(y) != M.degree(x) or M.involution.get(y) != x:
            result.fail({'axiom': 'involution', 'element': x})
    overflow = 0
    for a, b in cartesian(elements, repeat=2):
        ab = M.product(a, b)
        if ab is None:
            if M.degree(a) + M.degree(b) in M.carriers and (a, b) not in M.overflow:
                result.fail({'axiom': 'closure', 'elements': (a, b)})
            else:
                overflow += 1
            continue
        if M.degree(ab) != M.degree(a) + M.degree(b):
            result.fail({'axiom': 'grading', 'elements': (a, b)})
        if M.product(M.neg(a), b) not in (None, M.neg(ab)) or M.product(a, M.neg(b)) not in (None, M.neg(ab)):
            result.fail({'axiom': 'equivariance', 'elements': (a, b)})
        if M.commutative:
            ba = M.product(b, a)
            sign = -1 if (M.degree(a) * M.degree(b)) % 2 else 1
            if ba is not None and ab != M.signed(ba, sign):
                result.fail({'axiom': 'graded commutativity', 'elements': (a, b), 'ab': ab, 'ba': ba})
    for x in elements:
        if M.product(M.unit, x) not in (None, x) or M.product(x, M.unit) not in (None, x):
            result.fail({'axiom': 'unit', 'element': x})
    for a, b, c in cartesian(elements, repeat=3):
        ab, bc = M.product(a, b), M.product(b, c)
        if ab is None or bc is None:
            continue
        lhs, rhs = M.product(ab, c), M.product(a, bc)
        if lhs is not None and rhs is not None and lhs != rhs:
            result.fail({'axiom': 'associativity', 'elements': (a, b, c)})
    result.details = {'elements': len(elements), 'overflow_pairs': overflow}
    return result


# ============================================================================
# BUILDERS
# ============================================================================

def trivial_monoid() -> GradedSignedMonoid:
    return GradedSignedMonoid({0: ['e']}, {'e': 'e'}, 'e', {('e', 'e'): 'e'}, True, 'trivial')


def _power_name(symbol: str, k: int, sign: int) -> str:
    return f"{'-' if sign < 0 else '+'}{symbol}^{k}"


def laurent_monoid(width: int, symbol: str = 'u', step: int = 2) -> GradedSignedMonoid:
    """{+-u^k} in degree step*k for |step*k| <= width"""
    powers = [k for k in range(-width, width + 1) if abs(step * k) <= width]
    carriers = {step * k: [_power_name(symbol, k, s) for s in (1, -1)] for k in powers}
    involution = {_power_name(symbol, k, s): _power_name(symbol, k, -s) for k in powers for s in (1, -1)}
    mult = {}
    for j, k in cartesian(powers, repeat=2):
        if j + k in powers:
            for s, r in cartesian((1, -1), repeat=2):
                mult[(_power_name(symbol, j, s), _power_name(symbol, k, r))] = _power_name(symbol, j + k, s * r)
    return GradedSignedMonoid(carriers, involution, _power_name(symbol, 0, 1), mult,
                              commutative=step % 2 == 0, name=f'laurent[{width}]')


def free_monoid_on(degree: int, max_power: int, symbol: str = 'x') -> GradedSignedMonoid:
    """{+-x^k : 0 <= k <= max_power} with x in the given degree; flagged commutative"""
    powers = range(max_power + 1)
    carriers = {degree * k: [] for k in powers}
    involution = {}
    for k in powers:
        for s in (1, -1):
            carriers[degree * k].append(_power_name(symbol, k, s))
            involution[_power_name(symbol, k, s)] = _power_name(symbol, k, -s)
    mult = {}
    for j, k in cartesian(powers, repeat=2):
        if j + k <= max_power:
            for s, r in cartesian((1, -1), repeat=2):
                mult[(_power_name(symbol, j, s), _power_name(symbol, k, r))] = _power_name(symbol, j + k, s * r)
    overflow = {(a, b) for a in involution for b in involution if (a, b) not in mult}
    return GradedSignedMonoid(carriers, involution, _power_name(symbol, 0, 1), mult, True,
                              f'free[{symbol}:{degree}]', overflow)


def ku_like_monoid(max_power: int) -> GradedSignedMonoid:
    """{+-u^k} plus an absorbing zero in each degree 2k, k = 0..max_power"""
    M = free_monoid_on(2, max_power, symbol='u')
    zeros = {2 * k: f'0_{2 * k}' for k in range(max_power + 1)}
    carriers = {t: xs + [zeros[t]] for t, xs in M.carriers.items()}
    involution = dict(M.involution, **{z: z for z in zeros.values()})
    mult = dict(M.mult)
    degree = {x: t for t, xs in carriers.items() for x in xs}
    for a, b in cartesian(involution, repeat=2):
        t = degree[a] + degree[b]
        if t in zeros and (a in zeros.values() or b in zeros.values()):
            mult[(a, b)] = zeros[t]
    overflow = {(a, b) for a in involution for b in involution if degree[a] + degree[b] not in zeros}
    return GradedSignedMonoid(carriers, involution, M.unit, mult, True, 'ku-like', overflow)


def find_isomorphism(M: GradedSignedMonoid, N: GradedSignedMonoid,
                     limit: int = 200_000) -> Optional[Dict[str, str]]:
    """Brute-force search for a graded isomorphism; None when there is none (or the search is cut)"""
    if sorted(M.carriers) != sorted(N.carriers):
        return None
    if any(len(M.carriers[t]) != len(N.carriers[t]) for t in M.carriers):
        return None
    degrees = sorted(M.carriers)
    tried = 0
    for choice in cartesian(*(permutations(N.carriers[t]) for t in degrees)):
        tried += 1
        if tried > limit:
            logger.warning(f"Isomorphism search {M.name} -> {N.name} cut after {limit} candidates")
            return None
        mapping = {}
        for t, images in zip(degrees, choice):
            mapping.update(zip(M.carriers[t], images))
        if GradedMonoidMap(M, N, mapping).check().passed:
            return mapping
    return None


# ============================================================================
# UNITS AND LOG STRUCTURES
# ============================================================================

def _restrict(M: GradedSignedMonoid, keep: Set[str], name: str) -> GradedSignedMonoid:
    carriers = {t: [x for x in xs if x in keep] for t, xs in M.carriers.items()}
    mult = {(a, b): c for (a, b), c in M.mult.items() if a in keep and b in keep and c in keep}
    overflow = {(a, b) for a, b in M.overflow if a in keep and b in keep}
    return GradedSignedMonoid(carriers, {x: M.neg(x) for x in keep}, M.unit, mult, M.commutative, name, overflow)


def is_unit(M: GradedSignedMonoid, a: str) -> bool:
    targets = {M.unit, M.neg(M.unit)}
    return any(M.product(a, b) in targets for b in M.carriers.get(-M.degree(a), []))


def units(M: GradedSignedMonoid) -> GradedSignedMonoid:
    """Elements a with some b such that ab is e or -e"""
    keep = {a for a in M.elements() if is_unit(M, a)}
    return _restrict(M, keep, f'{M.name}^x')


def is_grouplike(M: GradedSignedMonoid) -> bool:
    return all(is_unit(M, a) for a in M.elements())


def check_units_universal(N: GradedSignedMonoid, f: GradedMonoidMap) -> CheckResult:
    """A map from a grouplike N into M factors through units(M)"""
    result = CheckResult('units-universal', True)
    if not is_grouplike(N):
        raise ValueError(f"{N.name} is not grouplike")
    U = units(f.target)
    for x in N.elements():
        if f(x) not in U._degree:
            result.fail({'element': x, 'image': f(x)})
    return result


def prelog_pullback(alpha: GradedMonoidMap) -> Tuple[GradedSignedMonoid, GradedMonoidMap]:
    """alpha^{-1}(GL(target)) with its inclusion into the source"""
    GL = units(alpha.target)
    keep = {x for x in alpha.source.elements() if alpha(x) in GL._degree}
    P = _restrict(alpha.source, keep, f'{alpha.source.name}|units')
    return P, GradedMonoidMap(P, alpha.source, {x: x for x in keep})


def is_log_structure(alpha: GradedMonoidMap) -> bool:
    """alpha restricted to alpha^{-1}(GL) is a bijection onto GL"""
    P, _ = prelog_pullback(alpha)
    GL = units(alpha.target)
    images = [alpha(x) for x in P.elements()]
    return len(set(images)) == len(images) and set(images) == set(GL.elements())


@dataclass
class Logification:
    monoid: GradedSignedMonoid
    alpha: GradedMonoidMap
    from_units: GradedMonoidMap
    from_source: GradedMonoidMap
    trivial: bool
    unions: int


def logification(alpha: GradedMonoidMap, cap: int = DEFAULT_CONGRUENCE_CAP) -> Logification:
    """
    The pushout M <- alpha^{-1}(GL) -> GL as (M x GL)/~ restricted to the degrees of the target.

    ~ is generated by (-a, g) ~ (a, -g) and (p z, g) ~ (z, alpha(p) g) for p in the
    pullback; raises IterationCapError beyond cap unions.
    """
    M, Omega = alpha.source, alpha.target
    GL = units(Omega)
    P, _ = prelog_pullback(alpha)
    window = set(Omega.carriers)
    pairs = [(m, g) for m in M.elements() for g in GL.elements() if M.degree(m) + GL.degree(g) in window]
    uf = UnionFind(pairs)
    unions = 0

    def join(x, y):
        nonlocal unions
        if x in uf.parents and y in uf.parents and uf[x] != uf[y]:
            unions += 1
            if unions > cap:
                raise IterationCapError(f"Logification congruence exceeded {cap} unions")
            uf.union(x, y)

    for m, g in pairs:
        join((M.neg(m), g), (m, GL.neg(g)))
    for p in P.elements():
        image = alpha(p)
        for m in M.elements():
            pm = M.product(p, m)
            if pm is None:
                continue
            for g in GL.elements():
                moved = GL.product(image, g)
                if moved is not None:
                    join((pm, g), (m, moved))

    members: Dict[str, List[Tuple[str, str]]] = {}
    for cls in uf.to_sets():
        ordered = sorted(cls)
        members[f'[{ordered[0][0]},{ordered[0][1]}]'] = ordered
    name_of = {pair: name for name, cls in members.items() for pair in cls}

    def multiply(x, y):
        (m, g), (m2, g2) = x, y
        mm, gg = M.product(m, m2), GL.product(g, g2)
        if mm is None or gg is None:
            return None
        sign = -1 if (GL.degree(g) * M.degree(m2)) % 2 else 1
        return name_of.get((mm if sign > 0 else M.neg(mm), gg))

    def multiply_classes(a, b):
        # any pair of representatives with a defined product determines the class
        for x, y in cartesian(members[a], members[b]):
            c = multiply(x, y)
            if c is not None:
                return c
        return None

    carriers: Dict[int, List[str]] = {}
    involution, mult, overflow = {}, {}, set()
    representative = {name: cls[0] for name, cls in members.items()}
    for name, (m, g) in representative.items():
        carriers.setdefault(M.degree(m) + GL.degree(g), []).append(name)
        involution[name] = name_of[(M.neg(m), g)]
    for a, b in cartesian(sorted(representative), repeat=2):
        c = multiply_classes(a, b)
        if c is None:
            overflow.add((a, b))
        else:
            mult[(a, b)] = c
    for t in carriers:
        carriers[t].sort()
    unit = name_of[(M.unit, GL.unit)]
    Ma = GradedSignedMonoid(carriers, involution, unit, mult, M.commutative and Omega.commutative,
                            f'{M.name}^a', overflow)

    alpha_a = {}
    for name, (m, g) in representative.items():
        alpha_a[name] = Omega.product(alpha(m), g)
    from_units = GradedMonoidMap(GL, Ma, {g: name_of[(M.unit, g)] for g in GL.elements() if (M.unit, g) in name_of})
    from_source = GradedMonoidMap(M, Ma, {m: name_of[(m, GL.unit)] for m in M.elements() if (m, GL.unit) in name_of})
    images = list(from_units.mapping.values())
    trivial = (len(from_units.mapping) == GL.size() and len(set(images)) == len(images) == Ma.size()
               and from_units.check().passed and is_grouplike(Ma))
    logger.info(f"Logification of {M.name}: {Ma.size()} classes from {len(pairs)} pairs, {unions} unions")
    return Logification(Ma, GradedMonoidMap(Ma, Omega, alpha_a), from_units, from_source, trivial, unions)


def check_logification_well_defined(result: Logification, alpha: GradedMonoidMap) -> CheckResult:
    """alpha^a is constant on classes and a homomorphism"""
    check = CheckResult('logification-map', True)
    for m in alpha.source.elements():
        if m in result.from_source.mapping:
            if result.alpha(result.from_source(m)) != alpha(m):
                check.fail({'element': m, 'reason': 'square does not commute'})
    hom = result.alpha.check()
    for w in hom.witnesses:
        check.fail(w)
    return check


def check_logification_idempotent(result: Logification, cap: int = DEFAULT_CONGRUENCE_CAP) -> CheckResult:
    """Logifying (M^a, alpha^a) again gives an isomorphic pair"""
    check = CheckResult('logification-idempotent', True)
    again = logification(result.alpha, cap)
    inclusion = again.from_source
    images = list(inclusion.mapping.values())
    if len(inclusion.mapping) != result.monoid.size() or len(set(images)) != again.monoid.size():
        check.fail({'before': result.monoid.size(), 'after': again.monoid.size()})
    if not is_log_structure(result.alpha):
        check.fail({'reason': 'alpha^a is not a log structure'})
    check.details = {'size': result.monoid.size()}
    return check


# ============================================================================
# PI_0 OF J-SPACE MONOIDS
# ============================================================================

def chain_morphism(n1: int, n2: int) -> MorJ:
    """(iota, iota, chi): (n1, n2) -> (n1 + 1, n2 + 1)"""
    return MorJ(inclusion_I(n1, n1 + 1), inclusion_I(n2, n2 + 1), (n2 + 1,))


def odd_endomorphism(n1: int, n2: int) -> MorJ:
    """An endomorphism of (n1, n2) of sign -1"""
    def transposition(n: int) -> MorI:
        return MorI(n, (2, 1) + tuple(range(3, n + 1)))

    if n2 >= 2:
        return MorJ(identity_I(n1), transposition(n2), ())
    if n1 >= 2:
        return MorJ(transposition(n1), identity_I(n2), ())
    raise ValueError(f"({n1}, {n2}) has no odd endomorphism")


@dataclass
class Pi0Report:
    """Per-degree chain sizes and stabilization state"""
    max_degree: int
    chains: Dict[int, List[int]] = field(default_factory=dict)
    stable_from: Dict[int, Optional[int]] = field(default_factory=dict)

    @property
    def not_stabilized(self) -> List[int]:
        return sorted(t for t, s in self.stable_from.items() if s is None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'max_degree': self.max_degree,
            'label': TRUNCATION_LABEL,
            'chains': {str(t): sizes for t, sizes in sorted(self.chains.items())},
            'stable_from': {str(t): s for t, s in sorted(self.stable_from.items())},
            'not_stabilized': self.not_stabilized,
        }


def _stages(t: int, N: int) -> List[ObjJ]:
    first = max(0, -t)
    return [ObjJ(n1, n1 + t) for n1 in range(first, N - max(0, t) + 1)]


def pi0_of_J_monoid(A: MonoidData, N: Optional[int] = None) -> Tuple[GradedSignedMonoid, Pi0Report]:
    """
    pi_0 of a discrete J-space monoid along the chains (n1, n2) -> (n1 + 1, n2 + 1).

    Only degrees |t| <= N - 2 are observed; a degree is stabilized when its last
    two chain maps are bijective. Unstabilized degrees are reported and left out
    of the resulting monoid.
    """
    X = A.carrier
    cat = X.cat
    if not isinstance(cat, CategoryJ):
        raise ValueError("pi0_of_J_monoid expects a J-space monoid")
    N = cat.max_degree if N is None else N
    report = Pi0Report(N)
    top: Dict[int, ObjJ] = {}
    stable_stage: Dict[int, ObjJ] = {}
    pullback: Dict[int, Dict[Hashable, Hashable]] = {}
    carriers: Dict[int, List[str]] = {}
    label: Dict[Tuple[int, Hashable], str] = {}

    def transport(t, obj, x):
        for n1 in range(obj.n1, top[t].n1):
            x = X.act_vertex(chain_morphism(n1, n1 + t), x)
        return x

    for t in range(-(N - 2), N - 1):
        stages = _stages(t, N)
        sizes = [len(X.elements(s)) for s in stages]
        report.chains[t] = sizes
        bijective = []
        for s in stages[:-1]:
            images = [X.act_vertex(chain_morphism(s.n1, s.n2), x) for x in X.elements(s)]
            target = ObjJ(s.n1 + 1, s.n2 + 1)
            bijective.append(len(set(images)) == len(images) == len(X.elements(target)))
        if len(bijective) < 2 or not (bijective[-1] and bijective[-2]):
            report.stable_from[t] = None
            continue
        first = len(bijective) - 2
        while first > 0 and bijective[first - 1]:
            first -= 1
        report.stable_from[t] = first
        top[t] = stages[-1]
        stable_stage[t] = stages[first]
        pullback[t] = {transport(t, stages[first], x): x for x in X.elements(stages[first])}
        names = []
        for x in X.elements(top[t]):
            label[(t, x)] = f'{t}:{x}'
            names.append(label[(t, x)])
        carriers[t] = names

    degrees = sorted(top)
    involution = {}
    for t in degrees:
        odd = odd_endomorphism(*top[t])
        for x in X.elements(top[t]):
            involution[label[(t, x)]] = label[(t, X.act_vertex(odd, x))]
    mult, overflow = {}, set()
    for s, t in cartesian(degrees, repeat=2):
        a_obj, b_obj = stable_stage[s], stable_stage[t]
        prod_obj = ObjJ(a_obj.n1 + b_obj.n1, a_obj.n2 + b_obj.n2)
        sign = -1 if (a_obj.n1 * t) % 2 else 1
        for x_top, y_top in cartesian(X.elements(top[s]), X.elements(top[t])):
            a, b = label[(s, x_top)], label[(t, y_top)]
            if s + t not in top or max(prod_obj) > N:
                overflow.add((a, b))
                continue
            z = A.mult(a_obj, b_obj, pullback[s][x_top], pullback[t][y_top])
            z_top = label[(s + t, transport(s + t, prod_obj, z))]
            mult[(a, b)] = z_top if sign > 0 else involution[z_top]
    unit_top = transport(0, ObjJ(0, 0), A.unit) if 0 in top else None
    if unit_top is None:
        raise ValueError("Degree 0 did not stabilize; pi_0 has no unit within the truncation")
    M = GradedSignedMonoid(carriers, involution, label[(0, unit_top)], mult, A.commutative,
                           f'pi0({A.name})', overflow)
    logger.info(f"pi_0 of {A.name} at N={N}: degrees {degrees}, not stabilized {report.not_stabilized}")
    return M, report


def terminal_J_monoid(max_degree: int) -> MonoidData:
    cat = CategoryJ(max_degree)
    carrier = DiagSpace.discrete(cat, {k: ['*'] for k in cat.objects()}, lambda f, v: '*', name='*')
    return MonoidData(carrier, '*', lambda k, l, x, y: '*', commutative=True, name='*')


def laurent_like_J_monoid(max_degree: int) -> MonoidData:
    """{+, -} at (n1, n2) with n2 - n1 even; morphisms act by their sign"""
    cat = CategoryJ(max_degree)
    elements = {k: (['+', '-'] if (k.n2 - k.n1) % 2 == 0 else []) for k in cat.objects()}

    def act(f, v):
        if sign_of_J_morphism(f) > 0:
            return v
        return '-' if v == '+' else '+'

    carrier = DiagSpace.discrete(cat, elements, act, name='laurent-like')
    mult = lambda k, l, x, y: '+' if x == y else '-'
    return MonoidData(carrier, '+', mult, commutative=True, name='laurent-like')


def hocolim_quotient_comparison(A: MonoidData, M: GradedSignedMonoid, report: Pi0Report) -> CheckResult:
    """
    pi_0 of the homotopy colimit over the observed components of J against the
    underlying ungraded monoid of pi_0 modulo -1.
    """
    X = A.carrier
    cat = X.cat
    degrees = sorted(M.carriers)
    objects = [k for k in cat.objects() if k.n2 - k.n1 in degrees]
    sub = FullSubcategory(cat, objects, name='J_observed')
    restricted = DiagSpace(sub, {k: X.level(k) for k in objects}, X.act, name=f'{X.name}|observed')
    H = hocolim(restricted, dim_cap=1)
    component = {v: i for i, comp in enumerate(H.components()) for v in comp}

    def comp_of(k, x):
        return component[((k,), (), x, (0,))]

    top = {t: _stages(t, report.max_degree)[-1] for t in degrees}
    result = CheckResult('hocolim-quotient', True)
    forward = {}
    for t in degrees:
        for x in X.elements(top[t]):
            a = f'{t}:{x}'
            forward[a] = comp_of(top[t], x)
            if forward.get(M.neg(a), forward[a]) != forward[a]:
                result.fail({'element': a, 'reason': 'involution not identified'})
    orbits = {frozenset((a, M.neg(a))) for a in M.elements()}
    orbit_images = {orbit: forward[next(iter(orbit))] for orbit in orbits}
    if len(set(orbit_images.values())) != len(orbits):
        result.fail({'reason': 'not injective on orbits'})
    if set(orbit_images.values()) != set(component.values()):
        result.fail({'reason': 'not surjective', 'components': len(set(component.values())), 'orbits': len(orbits)})
    for a, b in cartesian(M.elements(), repeat=2):
        c = M.product(a, b)
        if c is None:
            continue
        s, t = M.degree(a), M.degree(b)
        x, y = a.split(':', 1)[1], b.split(':', 1)[1]
        xs = {str(v): v for v in X.elements(top[s])}
        ys = {str(v): v for v in X.elements(top[t])}
        k = ObjJ(top[s].n1 + top[t].n1, top[s].n2 + top[t].n2)
        if max(k) > cat.max_degree:
            continue
        z = A.mult(top[s], top[t], xs[x], ys[y])
        if comp_of(k, z) != forward[c]:
            result.fail({'reason': 'multiplication', 'elements': (a, b)})
    result.details = {'components': len(set(component.values())), 'orbits': len(orbits), 'label': TRUNCATION_LABEL}
    return result
