"""
Set operads with a one-point arity-0 set.

Permutations are bijections MorI(n, image); the symmetric group acts on the right
of D(n) and on the left of n-fold products by (sigma . x)_i = x_{sigma^-1(i)}.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from diagram_spaces.core.ambient import Ambient, Cell, Weight, as_cell, flatten_cell, permute_cell
from diagram_spaces.core.dayconv import (
    DEFAULT_QUOTIENT_CAP, DiagMap, DiagSpace, MonoidData, compare_levelwise, quotient_diagram,
)
from diagram_spaces.core.errors import ArityCapError
from diagram_spaces.core.fincat import CategoryI, IndexCategory, MorI, block_shuffle, concat_I, identity_I
from diagram_spaces.core.models import CheckResult
from diagram_spaces.core.sset import FinSSet, SSetMap

logger = logging.getLogger(__name__)


def symmetric_group(n: int) -> List[MorI]:
    return [MorI(n, p) for p in permutations(range(1, n + 1))]


def block_sum(perms: Sequence[MorI]) -> MorI:
    result = identity_I(0)
    for p in perms:
        result = concat_I(result, p)
    return result


def compositions(total: int, parts: int) -> List[tuple]:
    """Tuples of parts naturals summing to at most total"""
    if parts == 0:
        return [()]
    return [(j,) + rest for j in range(total + 1) for rest in compositions(total - j, parts - 1)]


class SetOperad(ABC):
    """Finite arity sets D(n), a unit in D(1) and structure maps gamma"""

    name = 'D'

    def __init__(self, arity_cap: int):
        self.arity_cap = arity_cap

    def check_arity(self, n: int) -> int:
        if n > self.arity_cap:
            raise ArityCapError(f"Arity {n} exceeds arity_cap={self.arity_cap} of operad {self.name}")
        return n

    @abstractmethod
    def elements(self, n: int) -> List[Hashable]:
        pass

    @property
    @abstractmethod
    def unit(self) -> Hashable:
        pass

    @property
    def point(self) -> Hashable:
        return self.elements(0)[0]

    @abstractmethod
    def compose(self, c: Hashable, ds: Sequence[Hashable]) -> Hashable:
        pass

    @abstractmethod
    def act(self, d: Hashable, sigma: MorI) -> Hashable:
        """The right action d . sigma"""

    @abstractmethod
    def arity(self, d: Hashable) -> int:
        pass

    @abstractmethod
    def linear_order(self, d: Hashable) -> MorI:
        """sigma with d = u_n . sigma for the canonical element u_n of D(n)"""

    def compose_with_units(self, c: Hashable, ds: Sequence[Hashable], k: int) -> Hashable:
        """gamma(c; d_1, ..., d_n, 1, ..., 1) with k trailing units"""
        return self.compose(c, list(ds) + [self.unit] * k)

    def check_axioms(self, cap: int = 3) -> CheckResult:
        """Unit, associativity and both equivariance laws on all tuples within cap"""
        result = CheckResult(f'operad-axioms[{self.name}]', True)
        if len(self.elements(0)) != 1:
            result.fail({'axiom': 'D(0) is a point', 'size': len(self.elements(0))})
        for n in range(cap + 1):
            for d in self.elements(n):
                if self.compose(self.unit, [d]) != d or self.compose(d, [self.unit] * n) != d:
                    result.fail({'axiom': 'unit', 'element': d})
        for k in range(cap + 1):
            for js in compositions(cap, k):
                for c, ds in cartesian(self.elements(k), cartesian(*(self.elements(j) for j in js))):
                    composite = self.compose(c, ds)
                    for sigma in symmetric_group(k):
                        permuted = [ds[sigma.inverse()(p) - 1] for p in range(1, k + 1)]
                        lhs = self.compose(self.act(c, sigma), ds)
                        rhs = self.act(self.compose(c, permuted), block_shuffle(js, sigma.image))
                        if lhs != rhs:
                            result.fail({'axiom': 'equivariance (outer)', 'c': c, 'ds': ds, 'sigma': sigma})
                    for taus in cartesian(*(symmetric_group(j) for j in js)):
                        lhs = self.compose(c, [self.act(d, t) for d, t in zip(ds, taus)])
                        if lhs != self.act(composite, block_sum(taus)):
                            result.fail({'axiom': 'equivariance (inner)', 'c': c, 'ds': ds})
                    total = sum(js)
                    for ls in compositions(cap - total, total) if total <= cap else []:
                        for es in cartesian(*(self.elements(l) for l in ls)):
                            lhs = self.compose(composite, es)
                            blocks, start = [], 0
                            for d, j in zip(ds, js):
                                blocks.append(self.compose(d, es[start:start + j]))
                                start += j
                            if lhs != self.compose(c, blocks):
                                result.fail({'axiom': 'associativity', 'c': c, 'ds': ds, 'es': es})
                if len(result.witnesses) > 10:
                    return result
        result.details = {'cap': cap}
        return result


class CommutativityOperad(SetOperad):
    """C(n) = * for every n"""

    name = 'C'

    def elements(self, n):
        self.check_arity(n)
        return ['*']

    @property
    def unit(self):
        return '*'

    def compose(self, c, ds):
        return '*'

    def act(self, d, sigma):
        return d

    def arity(self, d):
        raise ValueError("Elements of the commutativity operad do not record their arity")

    def linear_order(self, d):
        raise ValueError("Use the arity of the surrounding term for the commutativity operad")


class AssociativityOperad(SetOperad):
    """A(n) = Sigma_n as words w; an algebra evaluates w on x as x_{w_1} ... x_{w_n}"""

    name = 'A'

    def __init__(self, arity_cap: int):
        super().__init__(arity_cap)
        self._elements: Dict[int, List[tuple]] = {}

    def elements(self, n):
        self.check_arity(n)
        if n not in self._elements:
            self._elements[n] = list(permutations(range(1, n + 1)))
        return self._elements[n]

    @property
    def unit(self):
        return (1,)

    def compose(self, c, ds):
        if len(c) != len(ds):
            raise ValueError(f"Word {c} takes {len(c)} inputs, got {len(ds)}")
        offsets, start = [], 0
        for d in ds:
            offsets.append(start)
            start += len(d)
        word = []
        for p in c:
            word.extend(offsets[p - 1] + v for v in ds[p - 1])
        return tuple(word)

    def act(self, d, sigma):
        inverse = sigma.inverse()
        return tuple(inverse(v) for v in d)

    def arity(self, d):
        return len(d)

    def linear_order(self, d):
        return MorI(len(d), tuple(d)).inverse()


def operad_by_name(name: str, arity_cap: int) -> SetOperad:
    operads = {'C': CommutativityOperad, 'A': AssociativityOperad}
    if name not in operads:
        raise ValueError(f"Unknown operad: {name}")
    return operads[name](arity_cap)


def order_of(op: SetOperad, c: Hashable, n: int) -> MorI:
    """The linear order of c in D(n); the identity for the commutativity operad"""
    if isinstance(op, CommutativityOperad):
        return identity_I(n)
    return op.linear_order(c)


def shifted(sigma: MorI, k: int) -> MorI:
    """sigma in Sigma_n as a permutation of n + k fixing the last k letters"""
    return concat_I(sigma, identity_I(k))


def on_tail(tau: MorI, n: int) -> MorI:
    """tau in Sigma_k acting on the last k letters of n + k"""
    return concat_I(identity_I(n), tau)


# ============================================================================
# MONADS OF OPERADS
# ============================================================================

def term_arity(obj: Any, term: Tuple) -> int:
    """Weight of a monad term (n, c, z) at any object: its arity"""
    return term[0]


class MonadValue(DiagSpace):
    """
    D(Z, k) = coproduct over n of D(n + k) x_{Sigma_n} Z_n for a symmetric family Z,
    kept for n + k <= truncation. Elements are canonical triples (n, c, z) with
    (c . (sigma + 1_k), z) identified with (c, sigma . z).
    """

    def __init__(self, op: SetOperad, cat: IndexCategory, family: Callable[[int], DiagSpace], k: int,
                 truncation: int, name: str = 'D'):
        if k > truncation:
            raise ArityCapError(f"k={k} exceeds arity_cap={truncation}")
        self.op = op
        self.family = family
        self.k = k
        self.truncation = truncation
        self._canon: Dict[Tuple, Tuple] = {}
        self._perms = {n: [(s, shifted(s, k), s.inverse()) for s in symmetric_group(n)]
                       for n in range(truncation - k + 1)}
        elements: Dict[Any, set] = {L: set() for L in cat.objects()}
        for n in range(truncation - k + 1):
            Z = family(n)
            for L in cat.objects():
                for z in Z.elements(L):
                    for c in op.elements(n + k):
                        elements[L].add(self.canonical(L, n, c, z))
        levels = {L: FinSSet.discrete(sorted(elements[L], key=repr)) for L in cat.objects()}
        self._members = elements

        def act_fn(f):
            dst = cat.dst(f)
            return SSetMap.from_vertex_map(
                levels[cat.src(f)], levels[dst],
                lambda t: self.canonical(dst, t[0], t[1], self.family(t[0]).act_vertex(f, t[2])))

        super().__init__(cat, levels, act_fn, name)
        logger.debug(f"{name}: {self.sizes()}")

    def canonical(self, L: Any, n: int, c: Hashable, z: Optional[Hashable]) -> Optional[Tuple]:
        if z is None or n > self.truncation - self.k:
            return None
        key = (L, n, c, z)
        found = self._canon.get(key)
        if found is not None:
            return found
        Z = self.family(n)
        orbit = [(n, self.op.act(c, padded), Z.permute(L, z, inverse)) for _, padded, inverse in self._perms[n]]
        name = min(orbit, key=repr)
        for _, c2, z2 in orbit:
            self._canon[(L, n, c2, z2)] = name
        return name

    def contains(self, L: Any, term: Optional[Tuple]) -> bool:
        return term is not None and term in self._members[L]

    def permute_tail(self, L: Any, term: Tuple, tau: MorI) -> Tuple:
        """The right action of tau in Sigma_k on the last k letters"""
        n, c, z = term
        return self.canonical(L, n, self.op.act(c, on_tail(tau, n)), z)


class OperadMonad:
    """The monad X -> D(X) of a set operad on an ambient, truncated at arity T"""

    def __init__(self, op: SetOperad, ambient: Ambient, truncation: int):
        op.check_arity(truncation)
        self.op = op
        self.ambient = ambient
        self.truncation = truncation
        self._values: Dict[Tuple[int, int], MonadValue] = {}
        self._weights: Dict[int, Tuple[DiagSpace, Weight]] = {}

    @property
    def cat(self) -> IndexCategory:
        return self.ambient.cat

    def register_weight(self, X: DiagSpace, weight: Weight) -> None:
        self._weights[id(X)] = (X, weight)

    def weight_of(self, X: DiagSpace) -> Optional[Weight]:
        if isinstance(X, MonadValue):
            return term_arity
        entry = self._weights.get(id(X))
        return entry[1] if entry else None

    def free(self, X: DiagSpace, k: int = 0) -> MonadValue:
        key = (id(X), k)
        if key not in self._values:
            weight = self.weight_of(X)
            budget = self.truncation - k
            if weight is None:
                family = lambda n: self.ambient.power(X, n)
            else:
                family = lambda n: self.ambient.power(X, n, weight, budget)
            label = X.name if k == 0 else f'{X.name},{k}'
            self._values[key] = MonadValue(self.op, self.cat, family, k, self.truncation,
                                           name=f'{self.op.name}({label})')
        return self._values[key]

    def is_exact(self, X: DiagSpace, k: int = 0) -> bool:
        """Truncation loses nothing for positive diagrams once T covers every level"""
        return (not self.ambient.is_finite_sets and self.ambient.is_positive(X)
                and self.truncation >= self.cat.max_degree + k)

    def eta(self, X: DiagSpace, L: Any, x: Hashable) -> Optional[Tuple]:
        D = self.free(X)
        return D.canonical(L, 1, self.op.unit, D.family(1).find(L, as_cell(self.cat, L, x)))

    def flatten_terms(self, X: DiagSpace, L: Any, n: int, c: Hashable, cell: Cell, k: int = 0) -> Optional[Tuple]:
        """gamma(c; d_1, ..., d_n, 1^k) on the concatenated inner products of the terms of cell"""
        objs, alpha, terms = cell
        total = sum(t[0] for t in terms)
        if total + k > self.truncation:
            return None
        flat = flatten_cell(self.cat, (objs, alpha, tuple(t[2] for t in terms)), [True] * n)
        target = self.free(X, k)
        return target.canonical(L, total, self.op.compose_with_units(c, [t[1] for t in terms], k),
                                target.family(total).find(L, flat))

    def mu(self, X: DiagSpace, L: Any, term: Tuple) -> Optional[Tuple]:
        n, c, cell = term
        return self.flatten_terms(X, L, n, c, cell)

    def apply(self, fn: Callable[[Any, Hashable], Optional[Hashable]], Y: DiagSpace, L: Any, term: Tuple,
              k: int = 0) -> Optional[Tuple]:
        """D(f) on a term, for f given on elements by fn(obj, x) with values in Y"""
        n, c, (objs, alpha, comps) = term
        values = tuple(fn(o, x) for o, x in zip(objs, comps))
        if any(v is None for v in values):
            return None
        target = self.free(Y, k)
        return target.canonical(L, n, c, target.family(n).find(L, (objs, alpha, values)))

    def check_laws(self, X: DiagSpace) -> CheckResult:
        """Both unit laws on D(X) and associativity on D(D(D(X))) where defined"""
        result = CheckResult(f'monad-laws[{self.op.name}]', True)
        DX = self.free(X)
        DDX = self.free(DX)
        DDDX = self.free(DDX)
        checked = 0
        for L in self.cat.objects():
            for t in DX.elements(L):
                if self.mu(X, L, self.eta(DX, L, t)) != t:
                    result.fail({'law': 'mu . eta_D', 'level': L, 'term': t})
                wrapped = self.apply(lambda o, x: self.eta(X, o, x), DX, L, t)
                if self.mu(X, L, wrapped) != t:
                    result.fail({'law': 'mu . D(eta)', 'level': L, 'term': t})
            for w in DDDX.elements(L):
                inner = self.apply(lambda o, x: self.mu(X, o, x), DX, L, w)
                outer = self.mu(DX, L, w)
                if inner is None or outer is None:
                    continue
                left, right = self.mu(X, L, inner), self.mu(X, L, outer)
                if left is None or right is None:
                    continue
                checked += 1
                if left != right:
                    result.fail({'law': 'associativity', 'level': L, 'term': w})
            if len(result.witnesses) > 10:
                break
        result.details = {'associativity_terms': checked, 'truncation': self.truncation}
        return result


# ============================================================================
# ALGEBRAS
# ============================================================================

@dataclass
class OperadAlgebra:
    """A carrier with a structure map xi(L, n, c, cell) -> carrier(L), partial at the truncation"""
    carrier: DiagSpace
    xi: Callable[[Any, int, Hashable, Cell], Optional[Hashable]]
    name: str = 'A'
    free_on: Optional[DiagSpace] = None

    def evaluate(self, L: Any, term: Tuple) -> Optional[Hashable]:
        n, c, cell = term
        return self.xi(L, n, c, cell)


def free_algebra(monad: OperadMonad, X: DiagSpace) -> OperadAlgebra:
    return OperadAlgebra(monad.free(X), lambda L, n, c, cell: monad.flatten_terms(X, L, n, c, cell),
                         name=f'{monad.op.name}({X.name})', free_on=X)


def monoid_algebra(monad: OperadMonad, M: MonoidData) -> OperadAlgebra:
    """A monoid as an algebra: xi(c; x_1, ..., x_n) multiplies in the order c prescribes"""
    op, cat = monad.op, monad.cat
    if isinstance(op, CommutativityOperad) and not M.commutative:
        raise ValueError(f"Monoid {M.name} is not commutative; it is not an algebra over {op.name}")

    def xi(L, n, c, cell):
        objs, alpha, comps = permute_cell(cat, cell, order_of(op, c, n))
        obj, value = cat.unit, M.unit
        for o, x in zip(objs, comps):
            value = M.mult(obj, o, value, x)
            obj = cat.concat(obj, o)
        return M.carrier.act_vertex(alpha, value)

    return OperadAlgebra(M.carrier, xi, name=M.name)


def finite_monoid(elements: Sequence[Hashable], table: Dict[Tuple[Hashable, Hashable], Hashable],
                  unit: Hashable, commutative: bool, name: str = 'M') -> MonoidData:
    """A finite monoid in FinSet from its multiplication table"""
    cat = CategoryI(0)
    carrier = DiagSpace.discrete(cat, {0: list(elements)}, lambda f, v: v, name=name)
    return MonoidData(carrier, unit, lambda k, l, x, y: table[(x, y)], commutative=commutative, name=name)


def cyclic_monoid(order: int) -> MonoidData:
    elements = list(range(order))
    table = {(a, b): (a + b) % order for a in elements for b in elements}
    return finite_monoid(elements, table, 0, True, name=f'Z/{order}')


def left_zero_monoid() -> MonoidData:
    """{e, a, b} with e the unit and x y = x otherwise; not commutative"""
    table = {}
    for x in 'eab':
        for y in 'eab':
            table[(x, y)] = y if x == 'e' else x
    return finite_monoid(['e', 'a', 'b'], table, 'e', False, name='LZ')


def check_algebra_laws(monad: OperadMonad, A: OperadAlgebra) -> CheckResult:
    """xi . eta = id and xi . D(xi) = xi . mu wherever both sides are defined"""
    result = CheckResult(f'algebra-laws[{A.name}]', True)
    X = A.carrier
    DX = monad.free(X)
    DDX = monad.free(DX)
    checked = 0
    for L in monad.cat.objects():
        for a in X.elements(L):
            if A.evaluate(L, monad.eta(X, L, a)) != a:
                result.fail({'law': 'unit', 'level': L, 'element': a})
        for z in DDX.elements(L):
            via_xi = monad.apply(lambda o, t: A.evaluate(o, t), X, L, z)
            via_mu = monad.mu(X, L, z)
            if via_xi is None or via_mu is None:
                continue
            checked += 1
            if A.evaluate(L, via_xi) != A.evaluate(L, via_mu):
                result.fail({'law': 'associativity', 'level': L, 'term': z})
    result.details = {'associativity_terms': checked}
    return result


# ============================================================================
# THE FUNCTORS U_k
# ============================================================================

@dataclass
class UkResult:
    """U_k(A) as the coequalizer of D(D(A), k) => D(A, k)"""
    k: int
    space: DiagSpace
    projection: DiagMap
    presentation: MonadValue
    relations: int
    exact: bool

    def project(self, L: Any, term: Optional[Tuple]) -> Optional[Hashable]:
        if not self.presentation.contains(L, term):
            return None
        return self.projection.component(L).on_vertex(term)

    def permute(self, L: Any, u: Tuple, tau: MorI) -> Hashable:
        return self.project(L, self.presentation.permute_tail(L, u, tau))


def structure_on_terms(monad: OperadMonad, A: OperadAlgebra, L: Any, n: int, c: Hashable, cell: Cell,
                       k: int) -> Optional[Tuple]:
    """(n, c, (t_1, ..., t_n)) -> (n, c, (xi t_1, ..., xi t_n)) in D(A, k)"""
    objs, alpha, terms = cell
    values = tuple(A.evaluate(o, t) for o, t in zip(objs, terms))
    if any(v is None for v in values):
        return None
    target = monad.free(A.carrier, k)
    return target.canonical(L, n, c, target.family(n).find(L, (objs, alpha, values)))


def u_k(monad: OperadMonad, A: OperadAlgebra, k: int, cap: int = DEFAULT_QUOTIENT_CAP) -> UkResult:
    """The coequalizer of d0 = flattening and d1 = D(xi), computed in the arity window"""
    if k > monad.truncation:
        raise ArityCapError(f"U_{k} needs arity {k} beyond arity_cap={monad.truncation}")
    target = monad.free(A.carrier, k)
    domain = monad.free(monad.free(A.carrier), k)
    relations = []
    for L in monad.cat.objects():
        for n, c, cell in domain.elements(L):
            d0 = monad.flatten_terms(A.carrier, L, n, c, cell, k)
            d1 = structure_on_terms(monad, A, L, n, c, cell, k)
            if target.contains(L, d0) and target.contains(L, d1):
                relations.append((L, d0, d1))
    space, projection = quotient_diagram(target, relations, name=f'U_{k}({A.name})', cap=cap)
    exact = A.free_on is not None and monad.is_exact(A.free_on, k)
    logger.info(f"U_{k}({A.name}) over {monad.op.name}: {space.sizes()} from {len(relations)} relations")
    return UkResult(k, space, projection, target, len(relations), exact)


def check_u0_is_forgetful(monad: OperadMonad, A: OperadAlgebra) -> CheckResult:
    """U_0(A) -> A induced by xi is a natural bijection"""
    U = u_k(monad, A, 0)

    def pairs_at(L):
        for term in U.presentation.elements(L):
            yield U.project(L, term), A.evaluate(L, term)

    result = compare_levelwise(f'U_0=forget[{A.name}]', U.space, A.carrier, pairs_at)
    result.details['exact'] = U.exact
    return result


def check_uk_commutative(monad: OperadMonad, A: OperadAlgebra, k: int) -> CheckResult:
    """For the commutativity operad U_k(A) is A with trivial Sigma_k action"""
    if not isinstance(monad.op, CommutativityOperad):
        raise ValueError("check_uk_commutative applies to the commutativity operad")
    if k + 1 > monad.truncation:
        raise ArityCapError(f"Comparing U_{k} with A needs arity {k + 1} beyond arity_cap={monad.truncation}")
    U = u_k(monad, A, k)

    def pairs_at(L):
        for n, c, cell in U.presentation.elements(L):
            yield U.project(L, (n, c, cell)), A.xi(L, n, c, cell)

    result = compare_levelwise(f'U_{k}=A[{A.name}]', U.space, A.carrier, pairs_at)
    for L in monad.cat.objects():
        for term in U.presentation.elements(L):
            for tau in symmetric_group(k):
                if U.permute(L, term, tau) != U.project(L, term):
                    result.fail({'reason': 'nontrivial Sigma_k action', 'level': L, 'term': term})
    return result


def check_uk_free(monad: OperadMonad, X: DiagSpace, k: int) -> CheckResult:
    """U_k(D(X)) -> D(X, k) given by flattening is a natural bijection"""
    A = free_algebra(monad, X)
    U = u_k(monad, A, k)
    DXk = monad.free(X, k)

    def pairs_at(L):
        for n, c, cell in U.presentation.elements(L):
            yield U.project(L, (n, c, cell)), monad.flatten_terms(X, L, n, c, cell, k)

    result = compare_levelwise(f'U_{k}(free)[{X.name}]', U.space, DXk, pairs_at)
    result.details['exact'] = U.exact
    return result


def check_terminal_projection(monad: OperadMonad, A: OperadAlgebra, k: int) -> CheckResult:
    """U_k(A) -> U_k(*) = D(k) is well defined on classes and Sigma_k-equivariant"""
    op = monad.op
    U = u_k(monad, A, k)
    result = CheckResult(f'terminal-projection[{A.name},{k}]', True)
    seen: Dict[Tuple[Any, Hashable], Hashable] = {}

    def project(term):
        n, c, _ = term
        return op.compose(c, [op.point] * n + [op.unit] * k)

    for L in monad.cat.objects():
        for term in U.presentation.elements(L):
            value = project(term)
            cls = U.project(L, term)
            if seen.setdefault((L, cls), value) != value:
                result.fail({'reason': 'not constant on classes', 'level': L, 'term': term})
            for tau in symmetric_group(k):
                if project(U.presentation.permute_tail(L, term, tau)) != op.act(value, tau):
                    result.fail({'reason': 'not equivariant', 'level': L, 'term': term, 'tau': tau})
    result.details = {'image': sorted({v for v in seen.values()}, key=repr)}
    return result


def check_reflexive_pair(monad: OperadMonad, A: OperadAlgebra, k: int) -> CheckResult:
    """D(eta) is a common section of d0 and d1"""
    result = CheckResult(f'reflexive-pair[{A.name},{k}]', True)
    X = A.carrier
    target = monad.free(X, k)
    DX = monad.free(X)
    domain = monad.free(DX, k)
    for L in monad.cat.objects():
        for term in target.elements(L):
            n, c, (objs, alpha, comps) = term
            wrapped = tuple(monad.eta(X, o, x) for o, x in zip(objs, comps))
            section = domain.canonical(L, n, c, domain.family(n).find(L, (objs, alpha, wrapped)))
            if section is None:
                result.fail({'reason': 'section outside window', 'level': L, 'term': term})
                continue
            _, c2, cell2 = section
            if monad.flatten_terms(X, L, n, c2, cell2, k) != term:
                result.fail({'map': 'd0', 'level': L, 'term': term})
            if structure_on_terms(monad, A, L, n, c2, cell2, k) != term:
                result.fail({'map': 'd1', 'level': L, 'term': term})
    return result
