"""
Suite catalog and runner

Each suite is a generator of CheckResults built from the core modules and the
fixture corpus. Suite defaults fill any cap the caller left unset.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional

from diagram_spaces.core.ambient import Ambient
from diagram_spaces.core.cofib import (
    attach_cell, check_cofibration_closure, check_latching_equivariance, cofibration_check,
    flatness_check_I, h_cofibration_check,
)
from diagram_spaces.core.config import SuiteConfig
from diagram_spaces.core.dayconv import (
    DiagMap, DiagSpace, check_associativity, check_free_adjunction, check_free_product_iso, check_hocolim_additivity,
    check_kan_shift_agreement, check_monoid, check_semifree_product_iso, check_symmetry, check_unit_law,
    coproduct_diagram, day_convolution, empty_diagram, free_F, levelwise_pullback, levelwise_pushout, map_from_empty,
    quotient_diagram, random_discrete_diagram, x_bullet,
)
from diagram_spaces.core.errors import UnknownSuiteError
from diagram_spaces.core.fincat import (
    CategoryI, CategoryJ, IndexCategory, ObjJ, check_category_laws, check_comma_components,
    check_permutative, check_sigma_inv_sigma, check_well_structured,
)
from diagram_spaces.core.fixtures import FixtureLoader
from diagram_spaces.core.freespec import (
    FreeSpec, check_functoriality, check_monoidal_naturality, check_monoidal_symmetry,
    check_restriction_functoriality, monoidal_iso, sj_level_census,
)
from diagram_spaces.core.graded import (
    GradedMonoidMap, check_axioms, check_logification_idempotent, check_logification_well_defined,
    check_units_universal, hocolim_quotient_comparison, is_grouplike, is_log_structure, ku_like_monoid,
    laurent_like_J_monoid, laurent_monoid, logification, pi0_of_J_monoid, terminal_J_monoid, units,
)
from diagram_spaces.core.models import CheckResult, SuiteReport
from diagram_spaces.core.operadfilt import (
    StructuredFiltration, canonical_split_fork, check_iterated_pushout_product, check_p_filtration,
    check_pushout_lemma, check_q_filtration, check_structured_filtration, corrupted_fork, identity_fork,
    split_fork_check,
)
from diagram_spaces.core.operads import (
    OperadMonad, check_algebra_laws, check_reflexive_pair, check_terminal_projection, check_u0_is_forgetful,
    check_uk_commutative, check_uk_free, free_algebra, monoid_algebra, operad_by_name,
)
from diagram_spaces.core.sset import (
    FinSSet, SSetMap, contractible_certificate, homology, hocolim_point_comparison, k_equivalence_evidence,
    nerve, pullback_preservation,
)

logger = logging.getLogger(__name__)

# arities of the filtration checks; arity_cap below these is rejected, not approximated
FILTRATION_ARITY = 4
PUSHOUT_LEMMA_ARITY = 3

Runner = Callable[[SuiteConfig, FixtureLoader], Iterable[CheckResult]]


@dataclass
class SuiteSpec:
    name: str
    module: str
    description: str
    runner: Runner
    defaults: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'module': self.module, 'description': self.description,
                'defaults': dict(self.defaults)}


# ============================================================================
# HELPERS
# ============================================================================

def _combine(name: str, parts: Iterable[CheckResult]) -> CheckResult:
    """Combine parts whose names may repeat; duplicates get a running index"""
    parts = list(parts)
    seen: Dict[str, int] = {}
    for part in parts:
        count = seen.get(part.name, 0)
        seen[part.name] = count + 1
        if count:
            part.name = f'{part.name}#{count}'
    return CheckResult.combine(name, parts)


def _expect_failure(name: str, check: CheckResult) -> CheckResult:
    """Passes when check fails and names a witness"""
    result = CheckResult(name, not check.passed and bool(check.witnesses))
    result.details = {'rejected_by': check.name, 'witness': check.witnesses[0] if check.witnesses else None}
    return result


def _from_empty(E: DiagSpace, X: DiagSpace) -> DiagMap:
    return DiagMap(E, X, {k: SSetMap(E.level(k), X.level(k), {}) for k in X.objects()})


def _morphisms(cat: IndexCategory) -> List[Any]:
    objects = cat.objects()
    return [f for a in objects for b in objects if cat.fits(a, b) for f in cat.hom(a, b)]


def _well_structured(cat: IndexCategory, selector: str, expect_very_well: bool) -> CheckResult:
    report = check_well_structured(cat, selector)
    conditions = report.degree_functor_ok and report.terminal_per_component and report.free_component_action
    result = CheckResult(f'well-structured[{cat.name}/{selector}]', True, details=report.to_dict())
    if not conditions:
        result.fail({'reason': 'conditions (i)-(iii)', 'counterexamples': report.counterexamples[:5]})
    if report.very_well_structured != expect_very_well:
        result.fail({'reason': 'very well-structured', 'expected': expect_very_well,
                     'counterexamples': report.counterexamples[:5]})
    return result


def _very_well_witness(cat: IndexCategory, selector: str, k: Any) -> CheckResult:
    """The very well-structured condition fails for selector with a witness at k"""
    report = check_well_structured(cat, selector)
    hits = [c for c in report.counterexamples if c.get('condition') == 'very-well' and c.get('k') == k]
    result = CheckResult(f'not-very-well-structured[{cat.name}/{selector}]',
                         not report.very_well_structured and bool(hits))
    result.details = {'witness': hits[0] if hits else None}
    return result


# ============================================================================
# FINCAT SUITES
# ============================================================================

def run_j_category_laws(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    yield check_category_laws(CategoryJ(config.max_degree))
    yield check_category_laws(CategoryI(config.max_degree))


def run_j_permutative(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    yield check_permutative(CategoryJ(config.max_degree))
    yield check_permutative(CategoryI(config.max_degree))


def run_sigma_inv_sigma(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    yield check_sigma_inv_sigma(config.max_degree)


def run_comma_components(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d = config.max_degree
    for cat in (CategoryI(d), CategoryJ(d)):
        yield check_comma_components(cat)
        yield _well_structured(cat, 'positive-discrete', expect_very_well=True)
    yield _well_structured(CategoryI(d), 'discrete', expect_very_well=False)
    yield _very_well_witness(CategoryJ(d), 'full', ObjJ(0, 0))


# ============================================================================
# DAYCONV SUITE
# ============================================================================

def run_day_convolution(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d = config.max_degree
    cat_I = CategoryI(d)
    cat_J = CategoryJ(max(1, d // 2))
    point = FinSSet.point()

    for cat in (cat_I, cat_J):
        diagrams = [D for _, D in corpus.diagrams(cat, tag='small')]
        parts = [check_unit_law(X) for X in diagrams]
        parts += [check_symmetry(X, Y) for X in diagrams for Y in diagrams]
        if len(diagrams) >= 2:
            first, second = diagrams[0], diagrams[1]
            parts.append(check_associativity(first, second, first))
            parts.append(check_associativity(second, first, second))
        yield _combine(f'day-laws[{cat.name}<={cat.max_degree}]', parts)

    rng = random.Random(config.seed)
    shifts = []
    for i in range(25):
        X = random_discrete_diagram(cat_I, rng, generators=2, relations=1, max_generator_degree=min(2, d))
        k = rng.choice([o for o in cat_I.objects() if 1 <= o <= 2])
        part = check_kan_shift_agreement(k, X)
        part.name = f'{part.name}#{i}'
        shifts.append(part)
    yield CheckResult.combine('kan-shift-agreement[random]', shifts)

    free_parts = [check_free_product_iso(cat_I, 1, point, 1, point)]
    if d >= 3:
        free_parts.append(check_free_product_iso(cat_I, 1, point, 2, FinSSet.discrete(['x', 'y'])))
    if cat_J.max_degree >= 1:
        free_parts.append(check_free_product_iso(cat_J, ObjJ(1, 0), point, ObjJ(0, 1), point))
    yield _combine('free-product-iso', free_parts)

    if d >= 2:
        F1, F2 = free_F(cat_I, 1), free_F(cat_I, 2)
        levels = CheckResult('day-convolution-levels[F_1,F_1]', True)
        for n in cat_I.objects():
            box, free = day_convolution(F1, F1, n).size(), F2.level(n).size()
            if box != free:
                levels.fail({'level': cat_I.key(n), 'box': box, 'free': free})
        yield levels

    pair = FinSSet.discrete(['x', 'y'])
    targets = [free_F(cat_I, 0)] + [D for _, D in corpus.diagrams(cat_I, tag='small') if D.is_discrete]
    yield _combine('free-adjunction', [check_free_adjunction(cat_I, 1, pair, Z) for Z in targets])

    signs = FinSSet.discrete([0, 1])
    trivial = lambda g, v: v
    by_sign = lambda g, v: v if g.sign() > 0 else 1 - v
    semifree_parts = [check_semifree_product_iso(cat_I, 1, point, trivial, 1, point, trivial)]
    if d >= 3:
        semifree_parts.append(check_semifree_product_iso(cat_I, 2, signs, by_sign, 1, point, trivial))
    yield _combine('semifree-product-iso', semifree_parts)


# ============================================================================
# COFIB SUITES
# ============================================================================

def _x_bullets(max_degree: int) -> List[DiagSpace]:
    names = ['a', 'b', 'c']
    return [x_bullet(names[:size], 'a', max_degree).carrier for size in (1, 2, 3)]


def run_flatness(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d = config.max_degree
    cat = CategoryI(d)
    bullets = _x_bullets(d)
    yield _combine('x-bullet-flat', [flatness_check_I(X) for X in bullets])

    built = corpus.diagrams(cat)
    for recipe, X in built:
        if 'not-flat' in recipe.get('tags', []):
            yield _expect_failure(f'rejected[{X.name}]', flatness_check_I(X))

    result = CheckResult('flatness-criteria-agree', True)
    verdicts = {}
    for X in bullets + [X for _, X in built]:
        direct = flatness_check_I(X).passed
        latching = cofibration_check(map_from_empty(X), 'flat').passed
        verdicts[f'{X.name}{X.sizes()}'] = direct
        if direct != latching:
            result.fail({'diagram': X.name, 'intersection_criterion': direct, 'latching_criterion': latching})
    result.details = {'verdicts': verdicts}
    yield result


def _cell_complex(cat: CategoryI) -> tuple:
    """A 0-cell at 0, a 1-cell at 1 glued to the 0-cell, then a 0-cell at 2"""
    X0 = empty_diagram(cat)
    dim_cap = X0.level(0).dim_cap
    X1, i1 = attach_cell(X0, 0, 0, SSetMap(FinSSet.simplex_boundary(0, dim_cap), X0.level(0), {}))
    base = X1.elements(1)[0]
    boundary = FinSSet.simplex_boundary(1, dim_cap)
    X2, i2 = attach_cell(X1, 1, 1, SSetMap.from_vertex_map(boundary, X1.level(1), lambda v: base))
    X3, i3 = attach_cell(X2, min(2, cat.max_degree), 0,
                         SSetMap(FinSSet.simplex_boundary(0, dim_cap), X2.level(min(2, cat.max_degree)), {}))
    X3.name = 'cell-complex'
    return X3, [i1, i2, i3]


def run_latching_cofibrations(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d = config.max_degree
    cat = CategoryI(d)
    complex_, attachments = _cell_complex(cat)
    parts = [cofibration_check(i, 'projective') for i in attachments]
    parts.append(cofibration_check(map_from_empty(complex_), 'projective'))
    yield _combine('cell-attachments-projective', parts)

    corpus_diagrams = [complex_] + [X for _, X in corpus.diagrams(cat)] + _x_bullets(d)
    implication = CheckResult('projective-implies-flat', True)
    counts = {'projective': 0, 'flat': 0}
    for X in corpus_diagrams:
        inclusion = map_from_empty(X)
        if not cofibration_check(inclusion, 'projective').passed:
            continue
        counts['projective'] += 1
        flat = cofibration_check(inclusion, 'flat')
        if flat.passed:
            counts['flat'] += 1
        else:
            implication.fail({'diagram': X.name, 'witness': flat.witnesses[0]})
    implication.details = counts
    yield implication

    bullet = x_bullet(['a', 'b'], 'a', d).carrier
    yield _expect_failure('x-bullet-not-projective', cofibration_check(map_from_empty(bullet), 'projective'))

    # closure: attach along X1 -> X2 and push out along X1 -> X1 + F_2
    X1 = attachments[1].source
    total, (into_total, _) = coproduct_diagram([X1, free_F(cat, min(2, d))])
    for flavor in ('projective', 'flat'):
        yield check_cofibration_closure(attachments[1], into_total, flavor)

    _, _, changed = levelwise_pushout(attachments[1], into_total)
    h = CheckResult('h-cofibration-cobase-change', True)
    if h_cofibration_check(attachments[1]) and not h_cofibration_check(changed):
        h.fail({'map': 'cobase change of the 1-cell attachment', 'reason': 'not levelwise injective'})
    yield h

    equivariance = []
    for X in (bullet, complex_):
        for k in cat.objects():
            equivariance.append(check_latching_equivariance(X, k))
    yield _combine('latching-equivariance', equivariance)


# ============================================================================
# SSET SUITE
# ============================================================================

def _pullback_square(cat: IndexCategory, rng: random.Random, terminal: bool) -> Dict[str, DiagMap]:
    Y = random_discrete_diagram(cat, rng, generators=2, relations=1)
    if terminal:
        X = random_discrete_diagram(cat, rng, generators=2, relations=1)
        Z = DiagSpace.constant(cat, FinSSet.point(), name='*')
        xz = DiagMap.from_vertex_fn(X, Z, lambda k, v: '*')
        yz = DiagMap.from_vertex_fn(Y, Z, lambda k, v: '*')
    else:
        pools = [(k, Y.elements(k)) for k in cat.objects() if len(Y.elements(k)) >= 2]
        relations = []
        if pools:
            k, pool = rng.choice(pools)
            x, y = rng.sample(pool, 2)
            relations.append((k, x, y))
        Z, q = quotient_diagram(Y, relations)
        xz = yz = q
    _, wx, wy = levelwise_pullback(xz, yz)
    return {'wx': wx, 'wy': wy, 'xz': xz, 'yz': yz}


def run_hocolim_homology(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d, dim_cap = config.max_degree, config.dim_cap
    cat = CategoryI(d)
    up_to = min(2, dim_cap - 1)
    groups = homology(nerve(cat, dim_cap), up_to)
    acyclic = CheckResult(f'nerve-acyclic[I<={d}]', groups.reduced_is_zero(),
                          details={'homology': groups.to_dict(), 'initial_object': contractible_certificate(cat)})
    if not acyclic.passed:
        acyclic.fail({'homology': groups.to_dict()})
    yield acyclic

    components = CheckResult('nerve-components[J]', True)
    counts = {}
    for N in range(1, min(3, d) + 1):
        found = len(nerve(CategoryJ(N), dim_cap=1).components())
        counts[N] = found
        if found != 2 * N + 1:
            components.fail({'N': N, 'components': found, 'expected': 2 * N + 1})
    components.details = {'components': counts}
    yield components

    small = CategoryI(min(2, d))
    rng = random.Random(config.seed)
    squares = []
    for i in range(10):
        part = pullback_preservation(_pullback_square(small, rng, terminal=i % 2 == 0), dim_cap=2)
        part.name = f'{part.name}#{i}'
        squares.append(part)
    yield CheckResult.combine('hocolim-preserves-pullbacks[random]', squares)

    yield hocolim_point_comparison(DiagSpace.constant(small, FinSSet.point(), name='*'), dim_cap=2)
    F1 = free_F(small, 1)
    to_point = DiagMap.from_vertex_fn(F1, DiagSpace.constant(small, FinSSet.point(), name='*'), lambda k, v: '*')
    yield k_equivalence_evidence(to_point, 1)
    fixtures = [X for _, X in corpus.diagrams(small, tag='small')]
    if len(fixtures) >= 2:
        yield check_hocolim_additivity(fixtures[0], fixtures[1], dim_cap=2)


# ============================================================================
# GRADED SUITES
# ============================================================================

def run_graded_monoids(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    N = config.max_degree
    yield _combine('graded-axioms[fixtures]', [check_axioms(M) for M in corpus.graded_monoids()])

    for A in (laurent_like_J_monoid(N), terminal_J_monoid(N)):
        M, report = pi0_of_J_monoid(A, N)
        if report.not_stabilized:
            logger.warning(f"pi_0 of {A.name}: degrees {report.not_stabilized} did not stabilize at N={N}")
        stable = CheckResult(f'pi0-stabilizes[{A.name}]', not report.not_stabilized, details=report.to_dict())
        if not stable.passed:
            stable.witnesses.append({'not_stabilized': report.not_stabilized})
        yield stable
        yield check_axioms(M)
        yield hocolim_quotient_comparison(A, M, report)
        if A.name == 'laurent-like':
            U = units(M)
            whole = CheckResult('laurent-like-units-are-everything', U.size() == M.size() and is_grouplike(M),
                                details={'units': U.size(), 'elements': M.size()})
            yield whole

    yield check_monoid(laurent_like_J_monoid(min(N, 3)))

    ku = units(ku_like_monoid(2))
    yield CheckResult('ku-like-units-in-degree-0', sorted(ku.carriers) == [0],
                      details={'unit_degrees': sorted(ku.carriers), 'units': ku.elements()})

    L = laurent_monoid(4)
    U = units(L)
    yield check_units_universal(U, GradedMonoidMap(U, L, {x: x for x in U.elements()}))


def run_logification(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    trivial_count = 0
    for fixture in corpus.log_structures():
        alpha = fixture.alpha
        homomorphism = alpha.check()
        homomorphism.name = f'pre-log-homomorphism[{fixture.name}]'
        yield homomorphism
        result = logification(alpha)
        verdict = CheckResult(f'logification-trivial[{fixture.name}]', result.trivial == fixture.expect_trivial,
                              details={'trivial': result.trivial, 'expected': fixture.expect_trivial,
                                       'size': result.monoid.size(), 'unions': result.unions,
                                       'is_log_structure': is_log_structure(alpha)})
        yield verdict
        trivial_count += int(result.trivial)
        well_defined = check_logification_well_defined(result, alpha)
        well_defined.name = f'logification-map[{fixture.name}]'
        yield well_defined
        idempotent = check_logification_idempotent(result)
        idempotent.name = f'logification-idempotent[{fixture.name}]'
        yield idempotent
    yield CheckResult('trivial-logifications-reproduced', trivial_count >= 3, details={'count': trivial_count})


# ============================================================================
# FREESPEC SUITE
# ============================================================================

def run_freespec_functoriality(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    d, p_max = config.max_degree, config.p_max
    yield check_functoriality(d, p_max)
    yield check_restriction_functoriality(min(d + 1, 3), min(p_max, 3))

    small = _morphisms(CategoryJ(1))
    naturality = CheckResult('monoidal-naturality[J<=1]', True)
    pairs = 0
    for f in small:
        for g in small:
            for p in range(p_max + 1):
                part = check_monoidal_naturality(f, g, p)
                pairs += 1
                if not part.passed:
                    naturality.fail({'f': f, 'g': g, 'p': p, 'witness': part.witnesses[0]})
    naturality.details = {'cases': pairs, 'p_max': p_max}
    yield naturality

    spectra = [FreeSpec(a, b) for a in range(d + 1) for b in range(d + 1)]
    symmetry = CheckResult('monoidal-symmetry', True)
    iso = CheckResult('monoidal-iso', True)
    for a in spectra:
        for b in spectra:
            for p in range(p_max + 1):
                part = check_monoidal_symmetry(a, b, p)
                if not part.passed:
                    symmetry.fail({'a': a.obj, 'b': b.obj, 'p': p, 'witness': part.witnesses[0]})
                data, check = monoidal_iso(a, b, p)
                if not (check.passed and data.bijective):
                    iso.fail({'a': a.obj, 'b': b.obj, 'p': p, 'details': check.details})
    yield symmetry
    yield iso

    J = CategoryJ(d)
    census = sj_level_census(free_F(J, J.unit), 0, d)
    expected = {k: (1 if k == 0 else 0) for k in range(d + 1)}
    yield CheckResult('sj-census[1_J,0]', census == expected, details={'census': census, 'expected': expected})


# ============================================================================
# OPERADFILT SUITES
# ============================================================================

def _span_maps(amb: Ambient, span) -> tuple:
    X0 = amb.finite_set(span.x0, 'X0')
    X1 = amb.finite_set(span.x1, 'X1')
    X2 = amb.finite_set(span.x2, 'X2')
    return amb.finite_map(X0, X1, span.f1.__getitem__), amb.finite_map(X0, X2, span.f2.__getitem__)


def run_appendix_filtrations(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    cap = config.arity_cap
    amb = Ambient.finite_sets()
    for span in corpus.spans():
        f1, f2 = _span_maps(amb, span)
        yield _combine(f'q-filtrations[{span.name}]',
                       [check_q_filtration(amb, f1, n, cap) for n in range(1, FILTRATION_ARITY + 1)])
        yield _combine(f'p-filtrations[{span.name}]',
                       [check_p_filtration(amb, f1, f2, n, cap) for n in range(1, FILTRATION_ARITY + 1)])
        yield _combine(f'pushout-lemma[{span.name}]',
                       [check_pushout_lemma(amb, f1, f2, n, cap) for n in range(1, PUSHOUT_LEMMA_ARITY + 1)])
        yield _combine(f'box-powers[{span.name}]',
                       [check_iterated_pushout_product(amb, f1, n, cap) for n in range(1, FILTRATION_ARITY + 1)])

    diagrams = Ambient.diagrams('I', min(2, config.max_degree))
    cat = diagrams.cat
    E = empty_diagram(cat)
    f1, f2 = _from_empty(E, free_F(cat, 1)), _from_empty(E, free_F(cat, 1))
    parts = []
    for n in (1, 2):
        parts.append(check_q_filtration(diagrams, f1, n, cap))
        parts.append(check_p_filtration(diagrams, f1, f2, n, cap))
        parts.append(check_pushout_lemma(diagrams, f1, f2, n, cap))
        parts.append(check_iterated_pushout_product(diagrams, f1, n, cap))
    yield _combine(f'filtrations[{diagrams.name}]', parts)


def _uk_checks(monad: OperadMonad, X: DiagSpace, max_k: int) -> Iterator[CheckResult]:
    A = free_algebra(monad, X)
    yield monad.check_laws(X)
    yield check_algebra_laws(monad, A)
    yield check_u0_is_forgetful(monad, A)
    for k in range(max_k + 1):
        yield check_uk_free(monad, X, k)
        yield check_reflexive_pair(monad, A, k)
        yield check_terminal_projection(monad, A, k)


def _structured(monad: OperadMonad, generator: DiagSpace, new: DiagSpace, max_k: int) -> Iterator[CheckResult]:
    """Attach the cell empty -> new to the free algebra on generator"""
    A = free_algebra(monad, generator)
    E = empty_diagram(monad.cat)
    f, p = _from_empty(E, new), _from_empty(E, A.carrier)
    for k in range(max_k + 1):
        yield check_structured_filtration(StructuredFiltration(monad, A, f, p, k))


def run_appendix_uk(config: SuiteConfig, corpus: FixtureLoader) -> Iterator[CheckResult]:
    T = config.arity_cap
    max_k = min(2, T)
    finite = Ambient.finite_sets()
    diagrams = Ambient.diagrams('I', config.max_degree)
    monoids = corpus.finite_monoids()

    for name in ('C', 'A'):
        op = operad_by_name(name, T)
        yield op.check_axioms(min(T, 3))

        monad = OperadMonad(op, finite, T)
        yield from _uk_checks(monad, finite.finite_set(['a', 'b'], 'X'), max_k)
        for M in monoids:
            if name == 'C' and not M.commutative:
                continue
            A = monoid_algebra(monad, M)
            yield check_algebra_laws(monad, A)
            if name == 'C':
                for k in range(1, max_k + 1):
                    yield check_uk_commutative(monad, A, k)
        A = monoid_algebra(monad, monoids[0])
        yield split_fork_check(canonical_split_fork(monad, A))
        yield split_fork_check(identity_fork(A.carrier))
        yield _expect_failure(f'corrupted-fork-rejected[{name}]', split_fork_check(corrupted_fork(monad, A)))
        yield from _structured(monad, finite.finite_set(['a'], 'P'), finite.finite_set(['y'], 'Y'), 1)

        cat = diagrams.cat
        on_diagrams = OperadMonad(op, diagrams, T)
        F1 = free_F(cat, 1)
        # exact iff T reaches every level; F_1 is positive
        exact = on_diagrams.is_exact(F1, 0)
        yield CheckResult(f'monad-exactness[{name},{diagrams.name}]', exact == (T >= cat.max_degree),
                          details={'exact': exact, 'truncation': T, 'max_degree': cat.max_degree})
        yield from _uk_checks(on_diagrams, F1, min(1, T))
        yield from _structured(on_diagrams, F1, free_F(cat, 1), min(1, T))


# ============================================================================
# CATALOG AND RUNNER
# ============================================================================

SUITES: Dict[str, SuiteSpec] = {spec.name: spec for spec in [
    SuiteSpec('j-category-laws', 'fincat', 'Identity and associativity of J and I over all composable triples',
              run_j_category_laws, {'max_degree': 3}),
    SuiteSpec('j-permutative', 'fincat', 'Strict permutative structure of J and I with the symmetry chi',
              run_j_permutative, {'max_degree': 2}),
    SuiteSpec('sigma-inv-sigma', 'fincat', "J against Quillen's localization construction",
              run_sigma_inv_sigma, {'max_degree': 3}),
    SuiteSpec('comma-components', 'fincat', 'Components of comma categories and the well-structured conditions',
              run_comma_components, {'max_degree': 3}),
    SuiteSpec('day-convolution', 'dayconv', 'Unit, symmetry and associativity of the box product; free products',
              run_day_convolution, {'max_degree': 4}),
    SuiteSpec('flatness', 'cofib', 'Flatness of X^bullet, a rejected collapse and agreement of both criteria',
              run_flatness, {'max_degree': 4}),
    SuiteSpec('latching-cofibrations', 'cofib', 'Latching characterization of cofibrations on cell complexes',
              run_latching_cofibrations, {'max_degree': 4}),
    SuiteSpec('hocolim-homology', 'sset', 'Nerve homology, components of J and pullback preservation of hocolim',
              run_hocolim_homology, {'max_degree': 4, 'dim_cap': 3}),
    SuiteSpec('graded-monoids', 'graded', 'Graded signed monoid axioms, pi_0 of J-space monoids and units',
              run_graded_monoids, {'max_degree': 4}),
    SuiteSpec('logification', 'graded', 'Logification of graded pre-log structures',
              run_logification, {}),
    SuiteSpec('freespec-functoriality', 'freespec', 'Functoriality and monoidality of free symmetric spectra',
              run_freespec_functoriality, {'max_degree': 2, 'p_max': 4}),
    SuiteSpec('appendix-filtrations', 'operadfilt', 'Q and P filtrations, the pushout lemma and box powers',
              run_appendix_filtrations, {'arity_cap': 4, 'max_degree': 2}),
    SuiteSpec('appendix-uk', 'operadfilt', 'U_k of operad algebras, split forks and the structured filtration',
              run_appendix_uk, {'arity_cap': 3, 'max_degree': 2}),
]}


def list_suites(module_prefix: Optional[str] = None) -> List[Dict[str, Any]]:
    """The catalog, optionally restricted to suites whose module starts with module_prefix"""
    return [spec.to_dict() for spec in SUITES.values()
            if module_prefix is None or spec.module.startswith(module_prefix)]


def get_suite(name: str) -> SuiteSpec:
    if name not in SUITES:
        raise UnknownSuiteError(f"Unknown suite: {name}")
    return SUITES[name]


class SuiteRunner:
    """Runs catalog suites against one fixture corpus"""

    def __init__(self, corpus: Optional[FixtureLoader] = None):
        self.corpus = corpus
        self.logger = logging.getLogger(__name__)

    def run(self, config: SuiteConfig) -> SuiteReport:
        """
        Run the suite named by config.

        Args:
            config: Suite configuration; unset caps take the suite defaults

        Returns:
            The report with every check the suite produced
        """
        spec = get_suite(config.suite)
        config = config.with_defaults(spec.defaults).validate()
        corpus = self.corpus or FixtureLoader(config.fixtures_path)
        report = SuiteReport(config.suite, config.report_fields())
        self.logger.info(f"Running suite {spec.name} with {config.report_fields()}")
        for check in spec.runner(config, corpus):
            report.add(check)
            self.logger.debug(f"{check.name}: {'passed' if check.passed else 'FAILED'}")
        failed = sum(1 for c in report.checks if not c.passed)
        self.logger.info(f"Suite {spec.name} finished: {len(report.checks)} checks, {failed} failed")
        return report


def run_suite(config: SuiteConfig, corpus: Optional[FixtureLoader] = None) -> SuiteReport:
    return SuiteRunner(corpus).run(config)
