"""
Symbolic free symmetric spectra F_{m1}(S^{m2}) and the functor they form out of J.

Spheres are never realized: at spectrum degree p the summands of F_m(S^k) are the
injections gamma in I(m, p), and the sphere on a summand is recorded by its index set
k + (p - gamma). Sphere coordinates are labelled ('s', i) for i in k and ('c', j) for
j in the complement of gamma.
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product as cartesian
from typing import Callable, Dict, List, Optional, Tuple

from networkx.utils import UnionFind

from diagram_spaces.core.dayconv import DiagSpace
from diagram_spaces.core.fincat import (
    CategoryI, CategoryJ, MorI, MorJ, ObjJ, chi_I, compose_I, compose_J, concat_I, concat_J,
    diagonal_functor, enumerate_injections, identity_I,
)
from diagram_spaces.core.models import CheckResult

logger = logging.getLogger(__name__)

Label = Tuple[str, int]
Summand = Tuple[MorI, Dict[Label, Label]]


@dataclass(frozen=True)
class FreeSpec:
    """F_{m1}(S^{m2})"""
    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError(f"Negative free spectrum indices ({self.m1}, {self.m2})")

    @property
    def obj(self) -> ObjJ:
        return ObjJ(self.m1, self.m2)

    def summands(self, p: int) -> List[MorI]:
        return enumerate_injections(self.m1, p)

    def index_set(self, gamma: MorI) -> List[Label]:
        return [('s', i) for i in range(1, self.m2 + 1)] + [('c', j) for j in gamma.complement()]


class FreeSpecMap:
    """
    A map of free spectra, evaluated degreewise.

    eval(p) sends each source summand gamma to (target summand, phi) where phi is a
    bijection from the target summand's index set onto the source summand's.
    """

    def __init__(self, source: FreeSpec, target: FreeSpec, evaluator: Callable[[int], Dict[MorI, Summand]],
                 generator: Optional[MorJ] = None):
        self.source = source
        self.target = target
        self.generator = generator
        self._evaluator = evaluator
        self._cache: Dict[int, Dict[MorI, Summand]] = {}

    def eval(self, p: int) -> Dict[MorI, Summand]:
        if p not in self._cache:
            self._cache[p] = self._evaluator(p)
        return self._cache[p]

    def compose(self, first: 'FreeSpecMap') -> 'FreeSpecMap':
        """self after first"""
        if first.target != self.source:
            raise ValueError(f"Cannot compose: {first.target} is not {self.source}")

        def evaluator(p):
            table = {}
            outer = self.eval(p)
            for gamma, (middle, phi_first) in first.eval(p).items():
                end, phi_second = outer[middle]
                table[gamma] = (end, {label: phi_first[phi_second[label]] for label in phi_second})
            return table

        return FreeSpecMap(first.source, self.target, evaluator)

    def check_bijections(self, p: int) -> CheckResult:
        """Every phi is a total bijection between the declared index sets"""
        result = CheckResult(f'index-bijections[p={p}]', True)
        for gamma, (delta, phi) in self.eval(p).items():
            domain, codomain = self.target.index_set(delta), self.source.index_set(gamma)
            if sorted(phi) != sorted(domain) or sorted(phi.values()) != sorted(codomain):
                result.fail({'degree': p, 'summand': gamma, 'phi': sorted(phi.items())})
        return result

    def compare(self, other: 'FreeSpecMap', p_max: int) -> CheckResult:
        result = CheckResult('free-spectrum-maps-equal', True)
        for p in range(p_max + 1):
            mine, theirs = self.eval(p), other.eval(p)
            for gamma in self.source.summands(p):
                (a, phi), (b, psi) = mine[gamma], theirs[gamma]
                if a != b:
                    result.fail({'degree': p, 'summand': gamma, 'targets': (a, b)})
                elif phi != psi:
                    diff = sorted(label for label in phi if phi[label] != psi.get(label))
                    result.fail({'degree': p, 'summand': gamma, 'mismatched_index': diff[0]})
                if len(result.witnesses) >= 5:
                    return result
        result.details = {'p_max': p_max}
        return result


def induced_map(f: MorJ) -> FreeSpecMap:
    """(beta1, beta2, sigma)^*: F_{n1}(S^{n2}) -> F_{m1}(S^{m2}) for f: (m1, m2) -> (n1, n2)"""
    source, target = FreeSpec(*f.dst), FreeSpec(*f.src)
    sigma = f.sigma_map()

    def evaluator(p):
        table = {}
        for gamma in source.summands(p):
            delta = compose_I(gamma, f.beta1)
            preimage = {gamma(s): s for s in range(1, gamma.src + 1)}
            phi = {('s', i): ('s', f.beta2(i)) for i in range(1, target.m2 + 1)}
            for j in delta.complement():
                phi[('c', j)] = ('s', sigma[preimage[j]]) if j in preimage else ('c', j)
            table[gamma] = (delta, phi)
        return table

    return FreeSpecMap(source, target, evaluator, generator=f)


def compose_and_check(g: MorJ, f: MorJ, p_max: int, composite: Optional[MorJ] = None) -> CheckResult:
    """induced_map(g f) against induced_map(f) after induced_map(g), summands and index bijections"""
    composite = compose_J(g, f) if composite is None else composite
    result = induced_map(composite).compare(induced_map(f).compose(induced_map(g)), p_max)
    result.name = 'free-spectrum-functoriality'
    return result


def check_functoriality(max_coord: int = 2, p_max: int = 4) -> CheckResult:
    """All composable pairs with object coordinates at most max_coord"""
    cat = CategoryJ(max_coord)
    objects = cat.objects()
    result = CheckResult('free-spectrum-functoriality', True)
    pairs = 0
    for a, b, c in cartesian(objects, repeat=3):
        if not (cat.fits(a, b) and cat.fits(b, c)):
            continue
        for f, g in cartesian(cat.hom(a, b), cat.hom(b, c)):
            pairs += 1
            part = compose_and_check(g, f, p_max)
            if not part.passed:
                result.fail({'f': f, 'g': g, 'witness': part.witnesses[0]})
        for f in cat.hom(a, b):
            for p in range(p_max + 1):
                part = induced_map(f).check_bijections(p)
                if not part.passed:
                    result.fail(part.witnesses[0])
    result.details = {'pairs': pairs, 'max_coord': max_coord, 'p_max': p_max}
    logger.debug(f"Free spectrum functoriality: {pairs} composable pairs up to p={p_max}")
    return result


def restrict_to_I(f: MorI) -> FreeSpecMap:
    return induced_map(diagonal_functor(f))


def check_restriction_functoriality(max_degree: int = 3, p_max: int = 3) -> CheckResult:
    """Restriction along the diagonal respects composition in I"""
    cat = CategoryI(max_degree)
    result = CheckResult('free-spectrum-restriction', True)
    for a, b, c in cartesian(cat.objects(), repeat=3):
        for f, g in cartesian(cat.hom(a, b), cat.hom(b, c)):
            lhs = restrict_to_I(compose_I(g, f))
            rhs = restrict_to_I(f).compose(restrict_to_I(g))
            part = lhs.compare(rhs, p_max)
            if not part.passed:
                result.fail({'f': f, 'g': g, 'witness': part.witnesses[0]})
    result.details = {'max_degree': max_degree, 'p_max': p_max}
    return result


# ============================================================================
# SMASH PRODUCTS OF FREE SPECTRA
# ============================================================================

Cell = Tuple[int, int, MorI, MorI, MorI]


def _cell_index(a: FreeSpec, b: FreeSpec, cell: Cell) -> List[Tuple[str, int]]:
    k, k2, _, beta, beta2 = cell
    return ([('x', i) for i in range(1, a.m2 + 1)] + [('xc', j) for j in beta.complement()]
            + [('y', i) for i in range(1, b.m2 + 1)] + [('yc', j) for j in beta2.complement()])


def cell_iso(a: FreeSpec, b: FreeSpec, cell: Cell) -> Tuple[MorI, Dict[Tuple[str, int], Label]]:
    """The summand alpha(beta + beta') of F_{a+b}(S^{a+b}) and the sphere coordinate bijection"""
    k, _, alpha, beta, beta2 = cell
    gamma = compose_I(alpha, concat_I(beta, beta2))
    phi: Dict[Tuple[str, int], Label] = {}
    for tag, j in _cell_index(a, b, cell):
        if tag == 'x':
            phi[(tag, j)] = ('s', j)
        elif tag == 'y':
            phi[(tag, j)] = ('s', a.m2 + j)
        elif tag == 'xc':
            phi[(tag, j)] = ('c', alpha(j))
        else:
            phi[(tag, j)] = ('c', alpha(k + j))
    return gamma, phi


def smash_cells(a: FreeSpec, b: FreeSpec, p: int, reduced: bool = True) -> List[Cell]:
    """
    Cells (k, k', alpha, beta, beta') of (F_a wedge F_b)_p.

    Reduced cells have k = a.m1, so the left factor carries no free sphere coordinates.
    """
    cells = []
    splits = [a.m1] if reduced else range(a.m1, p - b.m1 + 1)
    for k in splits:
        k2 = p - k
        if k2 < b.m1:
            continue
        for alpha_image in permutations(range(1, p + 1)):
            alpha = MorI(p, alpha_image)
            for beta, beta2 in cartesian(enumerate_injections(a.m1, k), enumerate_injections(b.m1, k2)):
                cells.append((k, k2, alpha, beta, beta2))
    return cells


@dataclass
class MonoidalIsoData:
    a: FreeSpec
    b: FreeSpec
    p: int
    cells: int
    orbits: int
    summands: int
    bijective: bool
    table: Dict[MorI, Dict[Tuple[str, int], Label]] = field(default_factory=dict, repr=False)


def _act_on_cell(cell: Cell, tau: MorI, tau2: MorI) -> Tuple[Cell, Dict[Tuple[str, int], Tuple[str, int]]]:
    """(alpha (tau + tau')^-1, tau beta, tau' beta') and the relabelling of free coordinates"""
    k, k2, alpha, beta, beta2 = cell
    block = concat_I(tau, tau2)
    moved = (k, k2, compose_I(alpha, block.inverse()), compose_I(tau, beta), compose_I(tau2, beta2))
    relabel = {('xc', j): ('xc', tau(j)) for j in beta.complement()}
    relabel.update({('yc', j): ('yc', tau2(j)) for j in beta2.complement()})
    return moved, relabel


def monoidal_iso(a: FreeSpec, b: FreeSpec, p: int) -> Tuple[MonoidalIsoData, CheckResult]:
    """
    F_a(S^a) wedge F_b(S^b) = F_{a+b}(S^{a+b}) at degree p, as summand bookkeeping on
    reduced cells modulo Sigma_k x Sigma_k'.
    """
    total = FreeSpec(a.m1 + b.m1, a.m2 + b.m2)
    result = CheckResult(f'monoidal-iso[{a.m1},{a.m2}|{b.m1},{b.m2}|p={p}]', True)
    cells = smash_cells(a, b, p)
    uf = UnionFind(cells)
    for cell in cells:
        k, k2 = cell[0], cell[1]
        gamma, phi = cell_iso(a, b, cell)
        for tau_image, tau2_image in cartesian(permutations(range(1, k + 1)), permutations(range(1, k2 + 1))):
            moved, relabel = _act_on_cell(cell, MorI(k, tau_image), MorI(k2, tau2_image))
            uf.union(cell, moved)
            gamma2, phi2 = cell_iso(a, b, moved)
            if gamma2 != gamma or any(phi2[relabel.get(l, l)] != phi[l] for l in phi):
                result.fail({'condition': 'orbit invariance', 'cell': cell})
    orbits = sorted(uf.to_sets(), key=min)
    table: Dict[MorI, Dict[Tuple[str, int], Label]] = {}
    for orbit in orbits:
        gamma, phi = cell_iso(a, b, min(orbit))
        if gamma in table:
            result.fail({'condition': 'injective on orbits', 'summand': gamma})
        table[gamma] = phi
    summands = total.summands(p)
    for gamma in summands:
        if gamma not in table:
            result.fail({'condition': 'surjective', 'summand': gamma})
            continue
        phi = table[gamma]
        if sorted(phi.values()) != sorted(total.index_set(gamma)):
            result.fail({'condition': 'index bijection', 'summand': gamma})
    data = MonoidalIsoData(a, b, p, len(cells), len(orbits), len(summands),
                           result.passed and len(orbits) == len(summands), table)
    result.details = {'cells': len(cells), 'orbits': len(orbits), 'summands': len(summands)}
    return data, result


def _translate(phi: Dict[Label, Label], side: str) -> Dict[Tuple[str, int], Tuple[str, int]]:
    """Rename an induced-map bijection into cell coordinates of one smash factor"""
    tags = {'s': side, 'c': side + 'c'}
    return {(tags[t], i): (tags[u], j) for (t, i), (u, j) in phi.items()}


def check_monoidal_naturality(f: MorJ, g: MorJ, p: int) -> CheckResult:
    """iso after (f^* wedge g^*) equals (f + g)^* after iso, on all cells at degree p"""
    a, b = FreeSpec(*f.dst), FreeSpec(*g.dst)
    a_src, b_src = FreeSpec(*f.src), FreeSpec(*g.src)
    fg = induced_map(concat_J(f, g)).eval(p)
    f_star, g_star = induced_map(f), induced_map(g)
    result = CheckResult('monoidal-naturality', True)
    for cell in smash_cells(a, b, p, reduced=False):
        k, k2, alpha, beta, beta2 = cell
        gamma, phi = cell_iso(a, b, cell)
        delta, phi_f = f_star.eval(k)[beta]
        delta2, phi_g = g_star.eval(k2)[beta2]
        pulled = (k, k2, alpha, delta, delta2)
        gamma_pulled, phi_pulled = cell_iso(a_src, b_src, pulled)
        target_summand, phi_fg = fg[gamma]
        if gamma_pulled != target_summand:
            result.fail({'cell': cell, 'condition': 'summand'})
            continue
        smash_phi = dict(_translate(phi_f, 'x'))
        smash_phi.update(_translate(phi_g, 'y'))
        for label in phi_pulled:
            left = phi[smash_phi[label]]
            right = phi_fg[phi_pulled[label]]
            if left != right:
                result.fail({'cell': cell, 'label': label, 'left': left, 'right': right})
                break
    return result


def check_monoidal_symmetry(a: FreeSpec, b: FreeSpec, p: int) -> CheckResult:
    """The twist on cells matches precomposition with chi on summands and the sphere twist"""
    result = CheckResult('monoidal-symmetry', True)
    swap_tag = {'x': 'y', 'y': 'x', 'xc': 'yc', 'yc': 'xc'}
    chi = chi_I(b.m1, a.m1)
    for cell in smash_cells(a, b, p, reduced=False):
        k, k2, alpha, beta, beta2 = cell
        gamma, phi = cell_iso(a, b, cell)
        twisted = (k2, k, compose_I(alpha, chi_I(k2, k)), beta2, beta)
        gamma_t, phi_t = cell_iso(b, a, twisted)
        if gamma_t != compose_I(gamma, chi):
            result.fail({'cell': cell, 'condition': 'summand'})
            continue
        for (tag, j), (kind, v) in phi.items():
            if kind == 's':
                expected = ('s', b.m2 + v) if v <= a.m2 else ('s', v - a.m2)
            else:
                expected = (kind, v)
            if phi_t[(swap_tag[tag], j)] != expected:
                result.fail({'cell': cell, 'label': (tag, j)})
                break
    return result


# ============================================================================
# LEVELS OF THE SUSPENSION SPECTRUM OF A J-SPACE
# ============================================================================

def sj_level_census(X: DiagSpace, n: int, k_max: int) -> Dict[int, int]:
    """Number of Sigma_k-orbits of X(n, k) for k <= k_max"""
    cat = X.cat
    if not isinstance(cat, CategoryJ) or not X.is_discrete:
        raise ValueError("sj_level_census expects a discrete J-space")
    census = {}
    for k in range(k_max + 1):
        obj = cat.check_object(ObjJ(n, k))
        elements = X.elements(obj)
        uf = UnionFind(elements)
        for tau in permutations(range(1, k + 1)):
            g = MorJ(identity_I(n), MorI(k, tau), ())
            for x in elements:
                uf.union(x, X.act_vertex(g, x))
        census[k] = len(list(uf.to_sets())) if elements else 0
    return census
