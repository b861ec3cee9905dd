import pytest

from diagram_spaces.core.ambient import Ambient
from diagram_spaces.core.dayconv import DiagMap, empty_diagram, free_F
from diagram_spaces.core.errors import ArityCapError, IterationCapError
from diagram_spaces.core.operadfilt import (
    StructuredFiltration, canonical_split_fork, check_iterated_pushout_product, check_p_filtration, check_top_stage,
    check_pushout_lemma, check_q_filtration, check_structured_filtration, corrupted_fork, identity_fork,
    p_filtration, q_filtration, split_fork_check,
)
from diagram_spaces.core.operads import (
    OperadMonad, check_algebra_laws, check_u0_is_forgetful, cyclic_monoid, free_algebra, monoid_algebra, operad_by_name,
)
from diagram_spaces.core.sset import SSetMap


def span_maps(amb, span):
    X0 = amb.finite_set(span.x0, 'X0')
    X1 = amb.finite_set(span.x1, 'X1')
    X2 = amb.finite_set(span.x2, 'X2')
    return amb.finite_map(X0, X1, span.f1.__getitem__), amb.finite_map(X0, X2, span.f2.__getitem__)


def from_empty(E, X):
    return DiagMap(E, X, {k: SSetMap(E.level(k), X.level(k), {}) for k in X.objects()})


@pytest.fixture
def spans(corpus):
    return {span.name: span for span in corpus.spans()}


def test_q_filtration_stages(finsets, spans):
    f1, _ = span_maps(finsets, spans['point-into-two'])
    assert q_filtration(finsets, f1, 2, 0, 4).sizes() == {'0': 1}
    assert q_filtration(finsets, f1, 2, 1, 4).sizes() == {'0': 3}
    assert q_filtration(finsets, f1, 2, 2, 4).sizes() == {'0': 4}


def test_p_filtration_of_a_fold(finsets, spans):
    f1, f2 = span_maps(finsets, spans['fold'])
    assert p_filtration(finsets, f1, f2, 1, 0, 4).sizes() == {'0': 2}
    assert p_filtration(finsets, f1, f2, 1, 1, 4).sizes() == {'0': 1}


def test_filtrations_on_fixture_spans(finsets, spans):
    for span in spans.values():
        f1, f2 = span_maps(finsets, span)
        for n in (1, 2, 3):
            assert check_q_filtration(finsets, f1, n, 3).passed, (span.name, n)
            assert check_p_filtration(finsets, f1, f2, n, 3).passed, (span.name, n)
            assert check_iterated_pushout_product(finsets, f1, n, 3).passed, (span.name, n)
        for n in (1, 2):
            assert check_pushout_lemma(finsets, f1, f2, n, 3).passed, (span.name, n)


def test_arity_cap_is_enforced(finsets, spans):
    f1, f2 = span_maps(finsets, spans['point-into-two'])
    with pytest.raises(ArityCapError):
        q_filtration(finsets, f1, 2, 1, 1)
    with pytest.raises(ArityCapError):
        check_p_filtration(finsets, f1, f2, 3, 2)


def test_filtrations_of_diagrams():
    diagrams = Ambient.diagrams('I', 2)
    E = empty_diagram(diagrams.cat)
    f1, f2 = from_empty(E, free_F(diagrams.cat, 1)), from_empty(E, free_F(diagrams.cat, 1))
    for n in (1, 2):
        assert check_q_filtration(diagrams, f1, n, 2).passed
        assert check_p_filtration(diagrams, f1, f2, n, 2).passed


def test_split_forks(finsets):
    monad = OperadMonad(operad_by_name('A', 2), finsets, 2)
    A = monoid_algebra(monad, cyclic_monoid(2))
    assert split_fork_check(canonical_split_fork(monad, A)).passed
    assert split_fork_check(identity_fork(A.carrier)).passed
    corrupted = split_fork_check(corrupted_fork(monad, A))
    assert not corrupted.passed
    assert any(w['identity'] == 'd1 t = s e' for w in corrupted.witnesses)


@pytest.mark.parametrize('name', ['C', 'A'])
def test_structured_filtration_of_a_cell(finsets, name):
    monad = OperadMonad(operad_by_name(name, 2), finsets, 2)
    A = free_algebra(monad, finsets.finite_set(['a'], 'P'))
    E = empty_diagram(monad.cat)
    f, p = from_empty(E, finsets.finite_set(['y'], 'Y')), from_empty(E, A.carrier)
    for k in (0, 1):
        assert check_structured_filtration(StructuredFiltration(monad, A, f, p, k)).passed


def test_structured_filtration_checks_its_inputs(finsets):
    monad = OperadMonad(operad_by_name('C', 2), finsets, 2)
    A = free_algebra(monad, finsets.finite_set(['a'], 'P'))
    f = from_empty(empty_diagram(monad.cat), finsets.finite_set(['y'], 'Y'))
    p = from_empty(empty_diagram(monad.cat), A.carrier)
    with pytest.raises(ValueError):
        StructuredFiltration(monad, A, f, p, 0)
    with pytest.raises(ArityCapError):
        StructuredFiltration(monad, A, f, from_empty(f.source, A.carrier), 3)


@pytest.mark.parametrize('name', ['C', 'A'])
def test_pushout_algebra_is_an_algebra(finsets, name):
    monad = OperadMonad(operad_by_name(name, 3), finsets, 3)
    A = free_algebra(monad, finsets.finite_set(['a'], 'P'))
    E = empty_diagram(monad.cat)
    sf = StructuredFiltration(monad, A, from_empty(E, finsets.finite_set(['y'], 'Y')), from_empty(E, A.carrier), 0)
    B, inject = sf.pushout_algebra()
    if name == 'C':
        assert B.carrier.sizes() == {'0': 10}
    assert check_algebra_laws(monad, B).passed
    assert check_u0_is_forgetful(monad, B).passed
    assert check_top_stage(sf).passed


def test_pushout_algebra_respects_its_cap(finsets):
    monad = OperadMonad(operad_by_name('C', 3), finsets, 3)
    A = free_algebra(monad, finsets.finite_set(['a'], 'P'))
    E = empty_diagram(monad.cat)
    sf = StructuredFiltration(monad, A, from_empty(E, finsets.finite_set(['y'], 'Y')), from_empty(E, A.carrier), 0,
                              cap=0)
    with pytest.raises(IterationCapError):
        sf.pushout_algebra()
