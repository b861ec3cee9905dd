"""
Filtrations of pushout powers and of pushouts of operad algebras.

For f: X0 -> X1 the stage Q^n_i(f) is the colimit of X_{s_1} [x] ... [x] X_{s_n} over
s in {0,1}^n with at most i ones; for a span X1 <- X0 -> X2 the stage P^n_i is the
same over {0,1,2}^n. Every comparison is checked against an independent
construction: brute-force colimits, recursive pushout-products, coequalizers.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Hashable, List, Optional, Tuple

from diagram_spaces.core.ambient import (
    Ambient, Cell, NodeColimit, SymmetricCube, Tensor, as_cell, flatten_cell, permute_cell, tensor_map,
)
from diagram_spaces.core.dayconv import (
    DEFAULT_QUOTIENT_CAP, DiagMap, DiagSpace, compare_levelwise, levelwise_pushout, quotient_diagram,
)
from diagram_spaces.core.errors import ArityCapError, IterationCapError
from diagram_spaces.core.fincat import MorI, concat_I, identity_I
from diagram_spaces.core.models import CheckResult
from diagram_spaces.core.operads import (
    MonadValue, OperadAlgebra, OperadMonad, UkResult, symmetric_group, term_arity, u_k,
)

logger = logging.getLogger(__name__)


def _check_arity(n: int, arity_cap: int) -> None:
    if n > arity_cap:
        raise ArityCapError(f"Filtration of arity {n} exceeds arity_cap={arity_cap}")


# ============================================================================
# Q AND P FILTRATIONS
# ============================================================================

def q_filtration(ambient: Ambient, f: DiagMap, n: int, i: int, arity_cap: int,
                 all_relations: bool = False) -> SymmetricCube:
    """Q^n_i(f); all_relations glues along every comparable pair of nodes"""
    _check_arity(n, arity_cap)
    return ambient.cube({0: f.source, 1: f.target}, {(0, 1): f}, n, lambda s: sum(s) <= i,
                        all_relations, name=f'Q^{n}_{i}' + ('*' if all_relations else ''))


def p_filtration(ambient: Ambient, f1: DiagMap, f2: DiagMap, n: int, i: int, arity_cap: int,
                 all_relations: bool = False) -> SymmetricCube:
    """P^n_i for X1 <- X0 -> X2: at most i coordinates from X1"""
    _check_arity(n, arity_cap)
    return ambient.cube({0: f1.source, 1: f1.target, 2: f2.target}, {(0, 1): f1, (0, 2): f2}, n,
                        lambda s: s.count(1) <= i, all_relations,
                        name=f'P^{n}_{i}' + ('*' if all_relations else ''))


def _against_brute_force(name: str, generated: SymmetricCube, brute: SymmetricCube) -> CheckResult:
    def pairs_at(L):
        for s in generated.labels:
            for x in generated.spaces[s].elements(L):
                yield generated.class_of(s, L, x), brute.class_of(s, L, x)

    return compare_levelwise(name, generated, brute, pairs_at)


def push_to_top(ambient: Ambient, f: DiagMap, s: Tuple[int, ...], L: Any, x: Cell) -> Cell:
    """Apply f in the coordinates labelled 0, landing in X1^n"""
    objs, alpha, comps = x
    moved = tuple(f.component(o).on_vertex(v) if label == 0 else v for label, o, v in zip(s, objs, comps))
    return ambient.power(f.target, len(s)).class_of(L, objs, alpha, moved)


def check_q_filtration(ambient: Ambient, f: DiagMap, n: int, arity_cap: int) -> CheckResult:
    """Each stage against its brute-force colimit, Q_0 = X0^n and Q_n = X1^n"""
    parts = []
    sizes = {}
    for i in range(n + 1):
        Q = q_filtration(ambient, f, n, i, arity_cap)
        parts.append(_against_brute_force(f'Q^{n}_{i}=colim', Q, q_filtration(ambient, f, n, i, arity_cap, True)))
        sizes[i] = Q.sizes()
    Q0 = q_filtration(ambient, f, n, 0, arity_cap)
    zero = (0,) * n
    parts.append(compare_levelwise(
        f'Q^{n}_0=X0^{n}', ambient.power(f.source, n), Q0,
        lambda L: ((x, Q0.class_of(zero, L, x)) for x in ambient.power(f.source, n).elements(L))))
    Qn = q_filtration(ambient, f, n, n, arity_cap)
    parts.append(compare_levelwise(
        f'Q^{n}_{n}=X1^{n}', Qn, ambient.power(f.target, n),
        lambda L: ((Qn.class_of(s, L, x), push_to_top(ambient, f, s, L, x))
                   for s in Qn.labels for x in Qn.spaces[s].elements(L))))
    result = CheckResult.combine(f'q-filtration[{n}]', parts)
    result.details['sizes'] = sizes
    return result


def check_p_filtration(ambient: Ambient, f1: DiagMap, f2: DiagMap, n: int, arity_cap: int) -> CheckResult:
    """Each stage against its brute-force colimit, P_0 = X2^n and P_n = (X1 +_X0 X2)^n"""
    parts = []
    sizes = {}
    for i in range(n + 1):
        P = p_filtration(ambient, f1, f2, n, i, arity_cap)
        parts.append(_against_brute_force(f'P^{n}_{i}=colim', P,
                                          p_filtration(ambient, f1, f2, n, i, arity_cap, True)))
        sizes[i] = P.sizes()
    P0 = p_filtration(ambient, f1, f2, n, 0, arity_cap)
    twos = (2,) * n
    power2 = ambient.power(f2.target, n)
    parts.append(compare_levelwise(f'P^{n}_0=X2^{n}', power2, P0,
                                   lambda L: ((x, P0.class_of(twos, L, x)) for x in power2.elements(L))))
    glued, into_1, into_2 = levelwise_pushout(f1, f2)
    top = ambient.power(glued, n)
    Pn = p_filtration(ambient, f1, f2, n, n, arity_cap)

    def glue(label, o, v):
        if label == 0:
            return into_1.component(o).on_vertex(f1.component(o).on_vertex(v))
        return (into_1 if label == 1 else into_2).component(o).on_vertex(v)

    def pairs_at(L):
        for s in Pn.labels:
            for objs, alpha, comps in Pn.spaces[s].elements(L):
                image = top.class_of(L, objs, alpha, tuple(glue(t, o, v) for t, o, v in zip(s, objs, comps)))
                yield Pn.class_of(s, L, (objs, alpha, comps)), image

    parts.append(compare_levelwise(f'P^{n}_{n}=pushout^{n}', Pn, top, pairs_at))
    result = CheckResult.combine(f'p-filtration[{n}]', parts)
    result.details['sizes'] = sizes
    return result


# ============================================================================
# ITERATED PUSHOUT-PRODUCTS
# ============================================================================

@dataclass
class BoxStage:
    """The domain of the n-fold pushout-product of f and its map into X1^n"""
    n: int
    domain: DiagSpace
    to_top: Callable[[Any, Hashable], Cell]
    into_left: Optional[DiagMap] = None
    into_right: Optional[DiagMap] = None
    left: Optional[Tensor] = None
    right: Optional[Tensor] = None


class IteratedPushoutProduct:
    """f^{box n} built recursively as f^{box (n-1)} box f"""

    def __init__(self, ambient: Ambient, f: DiagMap, n: int, arity_cap: int):
        _check_arity(n, arity_cap)
        self.ambient, self.f, self.cat = ambient, f, ambient.cat
        X0, X1 = f.source, f.target
        first = ambient.power(X1, 1)
        self.stages: List[BoxStage] = [BoxStage(1, X0, lambda L, x: first.class_of(
            L, (L,), self.cat.identity(L), (f.component(L).on_vertex(x),)))]
        for m in range(2, n + 1):
            self.stages.append(self._next(self.stages[-1], m))

    def _next(self, prev: BoxStage, m: int) -> BoxStage:
        amb, f, cat = self.ambient, self.f, self.cat
        X0, X1 = f.source, f.target
        head = amb.power(X1, m - 1)
        top = amb.power(X1, m)
        g = DiagMap.from_vertex_fn(prev.domain, head, prev.to_top)
        left = amb.tensor([prev.domain, X1])
        middle = amb.tensor([prev.domain, X0])
        right = amb.tensor([head, X0])
        P, into_left, into_right = levelwise_pushout(
            tensor_map([None, f], middle, left), tensor_map([g, None], middle, right))

        def flat(L, objs, alpha, head_cell, y):
            return top.cell_class(L, flatten_cell(cat, (objs, alpha, (head_cell, y)), [True, False]))

        def to_top(L, name):
            node, (objs, alpha, (a, b)) = name
            if node == 0:
                return flat(L, objs, alpha, prev.to_top(objs[0], a), f.component(objs[1]).on_vertex(b))
            if node == 1:
                return flat(L, objs, alpha, prev.to_top(objs[0], a), b)
            return flat(L, objs, alpha, a, f.component(objs[1]).on_vertex(b))

        return BoxStage(m, P, to_top, into_left, into_right, left, right)

    def phi(self, s: Tuple[int, ...], L: Any, cell: Cell) -> Hashable:
        """Q^n_{n-1} -> domain of f^{box n} on a representative in node s"""
        n = len(s)
        cat, f = self.cat, self.f
        objs, alpha, comps = cell
        if n == 1:
            return f.source.act_vertex(alpha, comps[0])
        stage = self.stages[n - 1]
        a, b = cat.concat_all(objs[:-1]), objs[-1]
        head = (objs[:-1], cat.identity(a), comps[:-1])
        if s[-1] == 1:
            d = self.phi(s[:-1], a, head)
            x = stage.left.class_of(L, (a, b), alpha, (d, comps[-1]))
            return stage.into_left.component(L).on_vertex(x)
        t = push_to_top(self.ambient, f, s[:-1], a, head)
        x = stage.right.class_of(L, (a, b), alpha, (t, comps[-1]))
        return stage.into_right.component(L).on_vertex(x)


def check_iterated_pushout_product(ambient: Ambient, f: DiagMap, n: int, arity_cap: int) -> CheckResult:
    """Q^n_{n-1}(f) -> X1^n agrees with the n-fold pushout-product of f"""
    Q = q_filtration(ambient, f, n, n - 1, arity_cap)
    box = IteratedPushoutProduct(ambient, f, n, arity_cap)
    stage = box.stages[-1]

    def pairs_at(L):
        for s in Q.labels:
            for x in Q.spaces[s].elements(L):
                yield Q.class_of(s, L, x), box.phi(s, L, x)

    result = compare_levelwise(f'box-power[{n}]', Q, stage.domain, pairs_at)
    for L in ambient.cat.objects():
        for s in Q.labels:
            for x in Q.spaces[s].elements(L):
                if stage.to_top(L, box.phi(s, L, x)) != push_to_top(ambient, f, s, L, x):
                    result.fail({'reason': 'does not commute with the maps to X1^n', 'node': s, 'cell': x})
    result.details['domain_sizes'] = stage.domain.sizes()
    return result


# ============================================================================
# THE PUSHOUT LEMMA FOR P
# ============================================================================

def _label(n: int, U: Tuple[int, ...], V: Tuple[int, ...]) -> Tuple[int, ...]:
    """1 on V, 0 on U - V, 2 off U"""
    return tuple(1 if j in V else 0 if j in U else 2 for j in range(1, n + 1))


def check_pushout_lemma(ambient: Ambient, f1: DiagMap, f2: DiagMap, n: int, arity_cap: int) -> CheckResult:
    """
    P^n_i is the pushout of P^n_{i-1} <- coprod_U colim_{V < U} X_{t^V} -> coprod_U X_{s^U},
    with U running over i-element subsets of {1..n}, and all maps are Sigma_n-equivariant.
    """
    _check_arity(n, arity_cap)
    cat = ambient.cat
    spaces = {0: f1.source, 1: f1.target, 2: f2.target}
    parts = []
    for i in range(1, n + 1):
        prev = p_filtration(ambient, f1, f2, n, i - 1, arity_cap)
        stage = p_filtration(ambient, f1, f2, n, i, arity_cap)
        subsets = list(combinations(range(1, n + 1), i))
        tl_labels = [(U, V) for U in subsets for r in range(i) for V in combinations(U, r)]
        tl_spaces = {(U, V): ambient.tensor([spaces[t] for t in _label(n, U, V)]) for U, V in tl_labels}
        tl_edges = []
        for U, V in tl_labels:
            for j in U:
                if j in V or len(V) + 1 == i:
                    continue
                W = tuple(sorted(V + (j,)))
                maps = [f1 if p == j else None for p in range(1, n + 1)]
                tl_edges.append(((U, V), (U, W), tensor_map(maps, tl_spaces[(U, V)], tl_spaces[(U, W)])))
        TL = NodeColimit(cat, tl_labels, tl_spaces, tl_edges, name=f'TL_{i}')
        tr_spaces = {U: ambient.tensor([spaces[t] for t in _label(n, U, U)]) for U in subsets}
        TR = NodeColimit(cat, subsets, tr_spaces, [], name=f'TR_{i}')

        def fill(U, V, L, x):
            objs, alpha, comps = x
            moved = tuple(f1.component(o).on_vertex(v) if (p in U and p not in V) else v
                          for p, o, v in zip(range(1, n + 1), objs, comps))
            return tr_spaces[U].class_of(L, objs, alpha, moved)

        across = TL.map_out(TR, lambda label, L, x: TR.class_of(label[0], L, fill(*label, L, x)))
        down = TL.map_out(prev, lambda label, L, x: prev.class_of(_label(n, *label), L, x))
        glued, _, _ = levelwise_pushout(across, down)
        stage_map = prev.map_out(stage, lambda s, L, x: stage.class_of(s, L, x))

        def compare(L, name):
            node, x = name
            if node == 0:
                return stage_map.component(L).on_vertex(down.component(L).on_vertex(x))
            if node == 1:
                U, y = TR.representative(x)
                return stage.class_of(_label(n, U, U), L, y)
            return stage_map.component(L).on_vertex(x)

        part = compare_levelwise(f'pushout-lemma[{n},{i}]', glued, stage,
                                 lambda L: ((g, compare(L, g)) for g in glued.elements(L)))
        for L in cat.objects():
            for sigma in symmetric_group(n):
                for U, V in tl_labels:
                    for x in tl_spaces[(U, V)].elements(L):
                        U2 = tuple(sorted(sigma(j) for j in U))
                        V2 = tuple(sorted(sigma(j) for j in V))
                        x2 = tl_spaces[(U2, V2)].cell_class(L, permute_cell(cat, x, sigma))
                        lhs = prev.class_of(_label(n, U2, V2), L, x2)
                        rhs = prev.permute(L, prev.class_of(_label(n, U, V), L, x), sigma)
                        if lhs != rhs:
                            part.fail({'reason': 'TL -> P_{i-1} not equivariant', 'sigma': sigma, 'node': (U, V)})
                        y = fill(U, V, L, x)
                        lhs = stage.class_of(_label(n, U2, U2), L, tr_spaces[U2].cell_class(
                            L, permute_cell(cat, y, sigma)))
                        rhs = stage.permute(L, stage.class_of(_label(n, U, U), L, y), sigma)
                        if lhs != rhs:
                            part.fail({'reason': 'TR -> P_i not equivariant', 'sigma': sigma, 'node': U})
            if len(part.witnesses) > 10:
                break
        part.details['sizes'] = {'TL': TL.sizes(), 'TR': TR.sizes(), 'P': stage.sizes()}
        parts.append(part)
    return CheckResult.combine(f'pushout-lemma[{n}]', parts)


# ============================================================================
# SPLIT FORKS
# ============================================================================

Partial = Callable[[Any, Hashable], Optional[Hashable]]


@dataclass
class Fork:
    """top => middle -> bottom with candidate splittings s: bottom -> middle, t: middle -> top"""
    top: DiagSpace
    middle: DiagSpace
    bottom: DiagSpace
    d0: Partial
    d1: Partial
    e: Partial
    s: Partial
    t: Partial
    name: str = 'fork'


def split_fork_check(fork: Fork) -> CheckResult:
    """e d0 = e d1, e s = 1, d0 t = 1, d1 t = s e, and e is the coequalizer"""
    result = CheckResult(f'split-fork[{fork.name}]', True)
    relations = []
    for L in fork.middle.cat.objects():
        for a in fork.top.elements(L):
            x, y = fork.d0(L, a), fork.d1(L, a)
            if x is None or y is None:
                continue
            relations.append((L, x, y))
            if fork.e(L, x) != fork.e(L, y):
                result.fail({'identity': 'e d0 = e d1', 'level': L, 'element': a})
        for c in fork.bottom.elements(L):
            if fork.e(L, fork.s(L, c)) != c:
                result.fail({'identity': 'e s = 1', 'level': L, 'element': c})
        for b in fork.middle.elements(L):
            lifted = fork.t(L, b)
            if lifted is None:
                result.fail({'identity': 't defined', 'level': L, 'element': b})
                continue
            if fork.d0(L, lifted) != b:
                result.fail({'identity': 'd0 t = 1', 'level': L, 'element': b})
            if fork.d1(L, lifted) != fork.s(L, fork.e(L, b)):
                result.fail({'identity': 'd1 t = s e', 'level': L, 'element': b})
        if len(result.witnesses) > 10:
            return result
    Q, projection = quotient_diagram(fork.middle, relations, name=f'coeq[{fork.name}]')
    coequalizer = compare_levelwise(
        'coequalizer', Q, fork.bottom,
        lambda L: ((projection.component(L).on_vertex(b), fork.e(L, b)) for b in fork.middle.elements(L)))
    if not coequalizer.passed:
        result.fail({'identity': 'coequalizer', 'witnesses': coequalizer.witnesses[:3]})
    result.details = {'relations': len(relations), 'coequalizer_sizes': Q.sizes()}
    return result


def identity_fork(X: DiagSpace) -> Fork:
    same = lambda L, x: x
    return Fork(X, X, X, same, same, same, same, same, name=f'id[{X.name}]')


def canonical_split_fork(monad: OperadMonad, A: OperadAlgebra) -> Fork:
    """D(D(A)) => D(A) -> A with d0 = mu, d1 = D(xi), e = xi, s = eta_A, t = eta_D(A)"""
    X = A.carrier
    DA = monad.free(X)
    DDA = monad.free(DA)
    return Fork(
        DDA, DA, X,
        d0=lambda L, z: monad.mu(X, L, z),
        d1=lambda L, z: monad.apply(lambda o, t: A.evaluate(o, t), X, L, z),
        e=lambda L, t: A.evaluate(L, t),
        s=lambda L, a: monad.eta(X, L, a),
        t=lambda L, t: monad.eta(DA, L, t),
        name=f'{monad.op.name}[{A.name}]')


def corrupted_fork(monad: OperadMonad, A: OperadAlgebra) -> Fork:
    """The canonical fork with t replaced by D(eta_A); d1 t = s e then fails"""
    fork = canonical_split_fork(monad, A)
    X = A.carrier
    fork.t = lambda L, t: monad.apply(lambda o, a: monad.eta(X, o, a), monad.free(X), L, t)
    fork.name = f'{fork.name}-corrupted'
    return fork


# ============================================================================
# PUSHOUTS OF ALGEBRAS
# ============================================================================

class StructuredFiltration:
    """
    The filtration F_0 -> F_1 -> ... of U_k(B) for the algebra pushout
    B = A +_{D(X)} D(Y) along f: X -> Y and p: X -> A.

    F_i is the coequalizer of the two maps
    coprod_n D(n+k) x_{Sigma_n} P^n_i(eta p, f) => coprod_n D(n+k) x_{Sigma_n} P^n_i(p, f)
    given by flattening and by xi, with label 0 for X, 1 for Y and 2 for A.
    """

    def __init__(self, monad: OperadMonad, A: OperadAlgebra, f: DiagMap, p: DiagMap, k: int,
                 cap: int = DEFAULT_QUOTIENT_CAP):
        if f.source is not p.source:
            raise ValueError("f and p must share their source")
        if k > monad.truncation:
            raise ArityCapError(f"U_{k} needs arity {k} beyond arity_cap={monad.truncation}")
        self.monad, self.A, self.f, self.p, self.k, self.cap = monad, A, f, p, k, cap
        self.top = monad.truncation - k
        self._families: Dict[Tuple[int, int], SymmetricCube] = {}
        self._stages: Dict[int, UkResult] = {}
        self._preimages = {o: {f.component(o).on_vertex(x): x for x in f.source.elements(o)}
                           for o in monad.cat.objects()}
        self._weights = {label: (lambda o, v, label=label: self.coordinate_weight(label, o, v))
                         for label in (0, 1, 2)}

    def coordinate_weight(self, label: int, o: Any, v: Hashable) -> int:
        """Arity weight of a coordinate; X and f(X) carry the weight of their image in A"""
        weight = self.monad.weight_of(self.A.carrier)
        if label == 2:
            return weight(o, v) if weight else 0
        if label == 0:
            return weight(o, self.p.component(o).on_vertex(v)) if weight else 0
        x = self._preimages[o].get(v)
        return 1 if x is None else self.coordinate_weight(0, o, x)

    def family(self, n: int, i: int) -> SymmetricCube:
        key = (n, i)
        if key not in self._families:
            self._families[key] = self.monad.ambient.cube(
                {0: self.f.source, 1: self.f.target, 2: self.A.carrier}, {(0, 1): self.f, (0, 2): self.p}, n,
                lambda s: s.count(1) <= i, name=f'P^{n}_{i}', weights=self._weights, budget=self.top)
        return self._families[key]

    def stage(self, i: int) -> UkResult:
        if i not in self._stages:
            self._stages[i] = self._build_stage(i)
        return self._stages[i]

    def _build_stage(self, i: int) -> UkResult:
        monad, A, f, p, k = self.monad, self.A, self.f, self.p, self.k
        op, cat, amb = monad.op, monad.cat, monad.ambient
        X = A.carrier
        DA = monad.free(X)
        eta_p = DiagMap.from_vertex_fn(f.source, DA, lambda o, x: monad.eta(X, o, p.component(o).on_vertex(x)))
        domain_weights = {0: lambda o, v: 1, 1: lambda o, v: 1, 2: term_arity}
        domain_family: Dict[int, SymmetricCube] = {}

        def family_of_domain(n):
            if n not in domain_family:
                domain_family[n] = amb.cube({0: f.source, 1: f.target, 2: DA}, {(0, 1): f, (0, 2): eta_p}, n,
                                            lambda s: s.count(1) <= i, name=f'P^{n}_{i}(eta p)',
                                            weights=domain_weights, budget=self.top)
            return domain_family[n]

        target = MonadValue(op, cat, lambda n: self.family(n, i), k, monad.truncation, name=f'F_{i}')
        domain = MonadValue(op, cat, family_of_domain, k, monad.truncation, name=f'F_{i}(D)')
        relations = []
        for L in cat.objects():
            for n, c, q in domain.elements(L):
                s, cell = family_of_domain(n).representative(q)
                d0 = self._expand(i, target, L, c, s, cell)
                d1 = self._apply_xi(i, target, L, n, c, s, cell)
                if target.contains(L, d0) and target.contains(L, d1):
                    relations.append((L, d0, d1))
        space, projection = quotient_diagram(target, relations, name=f'F_{i}', cap=self.cap)
        logger.info(f"Stage F_{i} of U_{k}({A.name}): {space.sizes()} from {len(relations)} relations")
        return UkResult(k, space, projection, target, len(relations), False)

    def _in_family(self, i: int, target: MonadValue, L: Any, n: int, c: Hashable,
                   labels: Tuple[int, ...], cell: Cell) -> Optional[Tuple]:
        cube = self.family(n, i)
        node = cube.spaces.get(labels)
        found = node.find(L, cell) if node is not None else None
        if found is None:
            return None
        return target.canonical(L, n, c, cube.class_of(labels, L, found))

    def _apply_xi(self, i, target, L, n, c, s, cell):
        objs, alpha, comps = cell
        values = []
        for label, o, v in zip(s, objs, comps):
            if label == 2:
                v = self.A.evaluate(o, v)
                if v is None:
                    return None
            values.append(v)
        return self._in_family(i, target, L, n, c, s, (objs, alpha, tuple(values)))

    def _expand(self, i, target, L, c, s, cell):
        monad, cat = self.monad, self.monad.cat
        objs, alpha, comps = cell
        labels, inner, ds = [], [], []
        for label, o, v in zip(s, objs, comps):
            if label == 2:
                m, d, t = v
                labels.extend([2] * m)
                inner.append(t)
                ds.append(d)
            else:
                labels.append(label)
                inner.append(as_cell(cat, o, v))
                ds.append(monad.op.unit)
        total = len(labels)
        if total + self.k > monad.truncation:
            return None
        flat = flatten_cell(cat, (objs, alpha, tuple(inner)), [True] * len(s))
        return self._in_family(i, target, L, total, monad.op.compose_with_units(c, ds, self.k), tuple(labels), flat)

    def project(self, i: int, L: Any, n: int, c: Hashable, labels: Tuple[int, ...], cell: Cell) -> Optional[Hashable]:
        """The class in F_i of the term (n, c, [cell in node labels])"""
        stage = self.stage(i)
        return stage.project(L, self._in_family(i, stage.presentation, L, n, c, labels, cell))

    def advance(self, i: int, L: Any, u: Tuple) -> Optional[Hashable]:
        """F_i -> F_{i+1} on a class representative"""
        n, c, q = u
        s, cell = self.family(n, i).representative(q)
        return self.project(i + 1, L, n, c, s, cell)

    def pushout_algebra(self) -> Tuple[OperadAlgebra, Callable[[Any, int, Hashable], Hashable]]:
        """
        B as the coequalizer of D(D(A) +_X Y) => D(A +_X Y), independent of the
        filtration; returns B and the map sending a labelled coordinate to B.

        Relations lost at the arity window are restored by closing the quotient
        under the structure map until no two representatives of a term disagree.
        """
        monad, A, f, p = self.monad, self.A, self.f, self.p
        op, cat = monad.op, monad.cat
        X = A.carrier
        glued, into_y, into_a = levelwise_pushout(f, p)

        def to_glued(o, label, v):
            if label == 0:
                return into_y.component(o).on_vertex(f.component(o).on_vertex(v))
            return (into_y if label == 1 else into_a).component(o).on_vertex(v)

        monad.register_weight(glued, lambda o, name: self.coordinate_weight(name[0], o, name[1]))
        DG = monad.free(glued)
        DA = monad.free(X)
        eta_p = DiagMap.from_vertex_fn(f.source, DA, lambda o, x: monad.eta(X, o, p.component(o).on_vertex(x)))
        glued2, _, _ = levelwise_pushout(f, eta_p)
        monad.register_weight(glued2, lambda o, name: term_arity(o, name[1]) if name[0] == 2 else 1)
        relations = []
        for L in cat.objects():
            for n, c, (objs, alpha, comps) in monad.free(glued2).elements(L):
                values, inner, ds = [], [], []
                for o, (label, v) in zip(objs, comps):
                    if label == 2:
                        a = A.evaluate(o, v)
                        values.append(None if a is None else to_glued(o, 2, a))
                        m, d, (t_objs, t_alpha, t_comps) = v
                        inner.append((t_objs, t_alpha, tuple(to_glued(to, 2, w) for to, w in zip(t_objs, t_comps))))
                        ds.append(d)
                    else:
                        values.append(to_glued(o, label, v))
                        inner.append(as_cell(cat, o, to_glued(o, label, v)))
                        ds.append(op.unit)
                if any(v is None for v in values):
                    continue
                d1 = DG.canonical(L, n, c, DG.family(n).find(L, (objs, alpha, tuple(values))))
                total = sum(len(t[0]) for t in inner)
                if total > monad.truncation:
                    continue
                flat = flatten_cell(cat, (objs, alpha, tuple(inner)), [True] * n)
                d0 = DG.canonical(L, total, op.compose(c, ds), DG.family(total).find(L, flat))
                if DG.contains(L, d0) and DG.contains(L, d1):
                    relations.append((L, d0, d1))

        glued_weight = monad.weight_of(glued)
        name = f'{A.name}+{f.target.name}'
        rounds = 0
        while True:
            B, projection = quotient_diagram(DG, relations, name=name, cap=self.cap, rank=term_arity)
            monad.register_weight(B, lambda o, term: sum(glued_weight(to, e) for to, e in zip(term[2][0], term[2][2])))
            extra = self._structure_relations(DG, projection, glued)
            if not extra:
                break
            rounds += 1
            if rounds > self.cap:
                raise IterationCapError(f"Closing {name} under the structure map exceeded {self.cap} rounds")
            relations.extend(extra)
        members = self._class_members(DG, projection)

        def flatten_in_window(L, n, c, cell):
            term = monad.flatten_terms(glued, L, n, c, cell)
            return term if DG.contains(L, term) else None

        def xi(L, n, c, cell):
            term = flatten_in_window(L, n, c, cell)
            if term is None:
                for choice in self._substitutions(cell, members):
                    term = flatten_in_window(L, n, c, choice)
                    if term is not None:
                        break
            return None if term is None else projection.component(L).on_vertex(term)

        def inject(o, label, v):
            return projection.component(o).on_vertex(monad.eta(glued, o, to_glued(o, label, v)))

        logger.info(f"Algebra pushout {B.name}: {B.sizes()} from {len(relations)} relations, {rounds} closure rounds")
        return OperadAlgebra(B, xi, name=B.name), inject

    @staticmethod
    def _class_members(DG: MonadValue, projection: DiagMap) -> Dict[Any, Dict[Hashable, List[Tuple]]]:
        members: Dict[Any, Dict[Hashable, List[Tuple]]] = {}
        for L in DG.cat.objects():
            classes = members.setdefault(L, {})
            for term in DG.elements(L):
                classes.setdefault(projection.component(L).on_vertex(term), []).append(term)
        return members

    @staticmethod
    def _substitutions(cell: Cell, members: Dict[Any, Dict[Hashable, List[Tuple]]]):
        """Cells obtained by replacing one coordinate with another member of its class"""
        objs, alpha, comps = cell
        for i, (o, b) in enumerate(zip(objs, comps)):
            for alt in members[o].get(b, []):
                if alt != b:
                    yield objs, alpha, comps[:i] + (alt,) + comps[i + 1:]

    def _structure_relations(self, DG: MonadValue, projection: DiagMap,
                             glued: DiagSpace) -> List[Tuple[Any, Hashable, Hashable]]:
        """
        Relations flatten(t_1, ..., t_n) ~ flatten(t_1, ..., [t_i], ..., t_n) over the terms
        of D(DG), with [t_i] the representative of t_i, that the current quotient misses.
        """
        monad = self.monad
        extra = []
        for L in monad.cat.objects():
            cls = projection.component(L).on_vertex
            for n, c, (objs, alpha, comps) in monad.free(DG).elements(L):
                base = monad.flatten_terms(glued, L, n, c, (objs, alpha, comps))
                if not DG.contains(L, base):
                    continue
                for i, (o, t) in enumerate(zip(objs, comps)):
                    r = projection.component(o).on_vertex(t)
                    if r == t:
                        continue
                    moved = monad.flatten_terms(glued, L, n, c, (objs, alpha, comps[:i] + (r,) + comps[i + 1:]))
                    if DG.contains(L, moved) and cls(base) != cls(moved):
                        extra.append((L, base, moved))
        return extra


def check_stage_zero(sf: StructuredFiltration) -> CheckResult:
    """F_0 = U_k(A)"""
    monad, A = sf.monad, sf.A
    U = u_k(monad, A, sf.k, cap=sf.cap)
    F0 = sf.stage(0)

    def pairs_at(L):
        for term in F0.presentation.elements(L):
            n, c, q = term
            s, (objs, alpha, comps) = sf.family(n, 0).representative(q)
            values = tuple(sf.p.component(o).on_vertex(v) if label == 0 else v
                           for label, o, v in zip(s, objs, comps))
            z = U.presentation.family(n).find(L, (objs, alpha, values))
            yield F0.project(L, term), U.project(L, U.presentation.canonical(L, n, c, z))

    return compare_levelwise('F_0=U_k(A)', F0.space, U.space, pairs_at)


def check_top_stage(sf: StructuredFiltration) -> CheckResult:
    """The last stage is U_k(B) for the independently computed algebra pushout B"""
    B, inject = sf.pushout_algebra()
    UB = u_k(sf.monad, B, sf.k, cap=sf.cap)
    F = sf.stage(sf.top)

    def pairs_at(L):
        for term in F.presentation.elements(L):
            n, c, q = term
            s, (objs, alpha, comps) = sf.family(n, sf.top).representative(q)
            values = tuple(inject(o, label, v) for label, o, v in zip(s, objs, comps))
            z = UB.presentation.family(n).find(L, (objs, alpha, values))
            yield F.project(L, term), UB.project(L, UB.presentation.canonical(L, n, c, z))

    result = compare_levelwise('F_top=U_k(B)', F.space, UB.space, pairs_at)
    result.details['B_sizes'] = B.carrier.sizes()
    return result


def _orbit_quotient(ambient: Ambient, U: UkResult, Z: DiagSpace, i: int, k: int,
                    permute: Callable[[Any, Hashable, MorI], Hashable], name: str) -> Tuple[DiagSpace, DiagMap, Tensor]:
    """(U_{i+k}(A) [x] Z) / Sigma_i, with Sigma_i acting on the first i of the last i + k letters"""
    T0 = ambient.tensor([U.space, Z])
    relations = []
    for L in ambient.cat.objects():
        for (a, b), alpha, (u, z) in T0.elements(L):
            for tau in symmetric_group(i):
                moved = U.permute(a, u, concat_I(tau, identity_I(k)))
                relations.append((L, T0.class_of(L, (a, b), alpha, (moved, z)),
                                  T0.class_of(L, (a, b), alpha, (u, permute(b, z, tau)))))
    Q, projection = quotient_diagram(T0, relations, name=name)
    return Q, projection, T0


def check_stage_pushouts(sf: StructuredFiltration) -> CheckResult:
    """
    For 1 <= i <= top, F_i is the pushout of
    F_{i-1} <- (U_{i+k}(A) [x] Q^i_{i-1}(f))/Sigma_i -> (U_{i+k}(A) [x] Y^i)/Sigma_i.
    """
    monad, f, k = sf.monad, sf.f, sf.k
    amb, cat = monad.ambient, monad.cat
    parts = []
    for i in range(1, sf.top + 1):
        U = u_k(monad, sf.A, i + k, cap=sf.cap)
        Qi = q_filtration(amb, f, i, i - 1, monad.truncation)
        Ypow = amb.power(f.target, i)
        TL, _, _ = _orbit_quotient(amb, U, Qi, i, k, Qi.permute, f'TL_{i}')
        TR, tr_projection, T1 = _orbit_quotient(amb, U, Ypow, i, k, Ypow.permute, f'TR_{i}')

        def combine(stage, L, cell, labels_of, q_cell):
            (a, b), alpha, (u, q) = cell
            n, c, (t_objs, t_alpha, t_comps) = u
            labels, (q_objs, q_alpha, q_comps) = labels_of(q), q_cell(q)
            flat = (t_objs + q_objs, cat.compose(alpha, cat.concat_mor(t_alpha, q_alpha)), t_comps + q_comps)
            return sf.project(stage, L, n + i, c, (2,) * n + labels, flat)

        def down_fn(L, cell, i=i, Qi=Qi):
            return combine(i - 1, L, cell, lambda q: Qi.representative(q)[0],
                           lambda q: Qi.representative(q)[1])

        def right_fn(L, cell, i=i):
            return combine(i, L, cell, lambda q: (1,) * i, lambda q: q)

        def across_fn(L, cell, Qi=Qi, T1=T1, tr_projection=tr_projection):
            (a, b), alpha, (u, q) = cell
            s, x = Qi.representative(q)
            y = push_to_top(amb, f, s, b, x)
            return tr_projection.component(L).on_vertex(T1.class_of(L, (a, b), alpha, (u, y)))

        missing = [(L, e) for L in cat.objects() for e in TL.elements(L) if down_fn(L, e) is None] + \
                  [(L, e) for L in cat.objects() for e in TR.elements(L) if right_fn(L, e) is None]
        if missing:
            part = CheckResult(f'stage-pushout[{i}]', False)
            part.fail({'reason': 'square leaves the arity window', 'count': len(missing)})
            parts.append(part)
            continue
        down = DiagMap.from_vertex_fn(TL, sf.stage(i - 1).space, down_fn)
        across = DiagMap.from_vertex_fn(TL, TR, across_fn)
        glued, _, _ = levelwise_pushout(across, down)

        def compare(L, name, i=i):
            node, x = name
            if node == 0:
                return sf.advance(i - 1, L, down_fn(L, x))
            if node == 1:
                return right_fn(L, x)
            return sf.advance(i - 1, L, x)

        part = compare_levelwise(f'stage-pushout[{i}]', glued, sf.stage(i).space,
                                 lambda L: ((g, compare(L, g)) for g in glued.elements(L)))
        for L in cat.objects():
            for e in TL.elements(L):
                if sf.advance(i - 1, L, down_fn(L, e)) != right_fn(L, across_fn(L, e)):
                    part.fail({'reason': 'square does not commute', 'level': L, 'element': e})
        part.details['sizes'] = {'TL': TL.sizes(), 'TR': TR.sizes()}
        parts.append(part)
    return CheckResult.combine('stage-pushouts', parts)


def check_stage_injectivity(sf: StructuredFiltration) -> CheckResult:
    """F_{i-1} -> F_i is injective when f is levelwise injective"""
    result = CheckResult('stage-injectivity', True)
    applies = sf.f.is_levelwise_injective()
    result.details['f_injective'] = applies
    if not applies:
        return result
    for i in range(1, sf.top + 1):
        for L in sf.monad.cat.objects():
            images = {}
            for u in sf.stage(i - 1).space.elements(L):
                v = sf.advance(i - 1, L, u)
                if v in images:
                    result.fail({'stage': i, 'level': L, 'elements': (images[v], u)})
                images[v] = u
    return result


def check_structured_filtration(sf: StructuredFiltration) -> CheckResult:
    parts = [check_stage_zero(sf), check_top_stage(sf), check_stage_pushouts(sf), check_stage_injectivity(sf)]
    result = CheckResult.combine(f'structured-filtration[{sf.monad.op.name},{sf.A.name},k={sf.k}]', parts)
    result.details['stages'] = {i: sf.stage(i).space.sizes() for i in range(sf.top + 1)}
    return result
