"""
Latching spaces and cofibration criteria for diagram spaces
"""
import logging
from dataclasses import dataclass
from typing import Any, Hashable, List, Optional, Tuple

from diagram_spaces.core.dayconv import DiagMap, DiagSpace, free_map, free_map_from, levelwise_pushout
from diagram_spaces.core.fincat import CategoryI, IndexCategory, MorI, automorphism_subgroup, inclusion_I
from diagram_spaces.core.models import CheckResult
from diagram_spaces.core.sset import FinSSet, SSetMap, colimit, identity_eta

logger = logging.getLogger(__name__)

FLAVORS = {
    'projective': 'discrete',
    'positive-projective': 'positive-discrete',
    'flat': 'full',
    'positive-flat': 'positive-full',
}


@dataclass
class LatchingData:
    """L_k(X) with its latching map to X(k) and the comma objects it was glued from"""
    k: Any
    space: FinSSet
    latching_map: SSetMap
    comma_objects: List[Tuple[Any, Any]]
    injections: List[SSetMap]

    def automorphism_action(self, X: DiagSpace, g: Any) -> SSetMap:
        """g acts on L_k(X) by (m, f, x) -> (m, g f, x)"""
        cat = X.cat
        index = {obj: i for i, obj in enumerate(self.comma_objects)}
        images = {}
        for name in self.space._dim:
            i, x = name
            m, f = self.comma_objects[i]
            images[name] = self.injections[index[(m, cat.compose(g, f))]].images[x]
        return SSetMap(self.space, self.space, images)


def latching_comma(cat: IndexCategory, k: Any) -> Tuple[List[Tuple[Any, Any]], List[Tuple[int, int, Any]]]:
    """The category of non-isomorphisms f: m -> k; morphisms gamma with f' gamma = f"""
    cat.check_object(k)
    objects = [(m, f) for m, f in cat.morphisms_into(k) if not cat.is_iso(f)]
    index = {obj: i for i, obj in enumerate(objects)}
    morphisms = []
    for j, (m2, f2) in enumerate(objects):
        for m in cat.objects():
            if not cat.fits(m, m2):
                continue
            for gamma in cat.hom(m, m2):
                if cat.is_identity(gamma):
                    continue
                i = index.get((m, cat.compose(f2, gamma)))
                if i is not None:
                    morphisms.append((i, j, gamma))
    return objects, morphisms


def latching_space(X: DiagSpace, k: Any) -> LatchingData:
    """L_k(X) = colim of X(m) over non-isomorphisms m -> k"""
    objects, morphisms = latching_comma(X.cat, k)
    spaces = [X.level(m) for m, _ in objects]
    edges = [(i, j, X.act(gamma)) for i, j, gamma in morphisms]
    dim_cap = X.level(k).dim_cap
    space, injections = colimit(spaces, edges, dim_cap) if spaces else (FinSSet.empty(dim_cap), [])
    images = {}
    for name in space._dim:
        i, x = name
        m, f = objects[i]
        images[name] = X.act(f).images[x]
    logger.debug(f"Latching space of {X.name} at {X.cat.key(k)}: {space.size()} simplices "
                 f"from {len(objects)} comma objects")
    return LatchingData(k, space, SSetMap(space, X.level(k), images), objects, injections)


def relative_latching_map(f: DiagMap, k: Any) -> Tuple[FinSSet, SSetMap]:
    """L_k(Y) +_{L_k(X)} X(k) -> Y(k)"""
    X, Y = f.source, f.target
    LX, LY = latching_space(X, k), latching_space(Y, k)
    induced = {}
    for name in LX.space._dim:
        i, x = name
        m, _ = LX.comma_objects[i]
        dim = X.level(m).dim_of(x)
        induced[name] = LY.injections[i].apply(f.component(m).apply((x, identity_eta(dim))))
    Lf = SSetMap(LX.space, LY.space, induced)
    pushout, _ = colimit(
        [LX.space, LY.space, X.level(k)], [(0, 1, Lf), (0, 2, LX.latching_map)], X.level(k).dim_cap)
    fk = f.component(k)
    images = {}
    for name in pushout._dim:
        node, x = name
        dim = pushout.dim_of(name)
        s = (x, identity_eta(dim))
        if node == 0:
            images[name] = fk.apply(LX.latching_map.apply(s))
        elif node == 1:
            images[name] = LY.latching_map.apply(s)
        else:
            images[name] = fk.apply(s)
    return pushout, SSetMap(pushout, Y.level(k), images)


def stabilizer(Y: DiagSpace, k: Any, y: Hashable) -> List[Any]:
    dim = Y.level(k).dim_of(y)
    return [g for g in Y.cat.automorphisms(k) if Y.act(g).images[y] == (y, identity_eta(dim))]


def cofibration_check(f: DiagMap, flavor: str, max_degree: Optional[int] = None) -> CheckResult:
    """
    Latching criterion per object k.

    For k in A the relative latching map must be injective and every simplex of
    Y(k) off its image must have isotropy inside A(k); for k outside A it must be
    an isomorphism.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"Unknown cofibration flavor: {flavor}")
    cat = f.source.cat
    selector = FLAVORS[flavor]
    cap = cat.max_degree if max_degree is None else max_degree
    result = CheckResult(f'cofibration[{flavor}]', True)
    verdicts = {}
    for k in cat.objects():
        if cat.size(k) > cap:
            continue
        _, psi = relative_latching_map(f, k)
        group = automorphism_subgroup(cat, selector, k)
        key = cat.key(k)
        witness = psi.non_injective_witness()
        if witness:
            result.fail(dict(witness, object=key, condition='relative latching map injective'))
            verdicts[key] = 'not injective'
            continue
        hit = {y for y, _ in psi.images.values()}
        off_image = [y for y in f.target.level(k)._dim if y not in hit]
        if group is None:
            if off_image:
                result.fail({'object': key, 'condition': 'isomorphism outside A', 'missed': off_image[:5]})
                verdicts[key] = 'not an isomorphism'
                continue
        else:
            allowed = set(group)
            bad = [(y, len(stab)) for y in off_image
                   for stab in [stabilizer(f.target, k, y)] if not set(stab) <= allowed]
            if bad:
                y, size = bad[0]
                result.fail({'object': key, 'condition': 'isotropy inside A(k)', 'simplex': y,
                             'stabilizer_order': size, 'allowed_order': len(allowed)})
                verdicts[key] = 'isotropy too large'
                continue
        verdicts[key] = 'ok'
    result.details = {'levels': verdicts, 'max_degree': cap,
                      'note': 'relative cofibration read as injective with isotropy in A(k)'}
    return result


def flatness_check_I(X: DiagSpace, max_degree: Optional[int] = None) -> CheckResult:
    """
    Injective action of every morphism and, for l + m + n within the cap, the images
    of X(l+m) and X(m+n) in X(l+m+n) meet exactly in the image of X(m).
    """
    cat = X.cat
    if not isinstance(cat, CategoryI):
        raise ValueError("flatness_check_I applies to I-spaces")
    cap = cat.max_degree if max_degree is None else max_degree
    result = CheckResult('flatness-I', True)
    for a in cat.objects():
        for b in cat.objects():
            if b > cap:
                continue
            for f in cat.hom(a, b):
                witness = X.act(f).non_injective_witness()
                if witness:
                    result.fail(dict(witness, condition='injective action', morphism=f))
    if not result.passed:
        return result

    def image(f: MorI) -> set:
        return {y for y, _ in X.act(f).images.values()}

    for l in range(cap + 1):
        for m in range(cap + 1 - l):
            for n in range(cap + 1 - l - m):
                total = l + m + n
                left = image(inclusion_I(l + m, total))
                right = image(MorI(total, tuple(range(l + 1, total + 1))))
                middle = image(MorI(total, tuple(range(l + 1, l + m + 1))))
                if left & right != middle:
                    extra = sorted(left & right - middle, key=repr)[:3]
                    result.fail({'condition': 'intersection', 'triple': (l, m, n), 'extra': extra})
    result.details = {'max_degree': cap}
    return result


def h_cofibration_check(f: DiagMap) -> bool:
    """Levelwise injective on simplices"""
    return f.is_levelwise_injective()


def attach_cell(X: DiagSpace, k: Any, n: int, attaching: SSetMap) -> Tuple[DiagSpace, DiagMap]:
    """
    Pushout of F_k(boundary of Delta^n -> Delta^n) along the map adjoint to
    attaching: boundary -> X(k).
    """
    cat = X.cat
    dim_cap = X.level(k).dim_cap
    boundary = FinSSet.simplex_boundary(n, dim_cap)
    full = FinSSet.simplex_boundary(n, dim_cap, full=True)
    inclusion = SSetMap(boundary, full, {x: (x, identity_eta(boundary.dim_of(x))) for x in boundary._dim})
    generating = free_map(cat, k, inclusion)
    glue = free_map_from(cat, k, boundary, X, attaching, source=generating.source)
    Y, from_x, _ = levelwise_pushout(glue, generating)
    return Y, from_x


def check_latching_equivariance(X: DiagSpace, k: Any) -> CheckResult:
    """The latching map commutes with the action of K(k)"""
    data = latching_space(X, k)
    result = CheckResult(f'latching-equivariance[{X.cat.key(k)}]', True)
    for g in X.cat.automorphisms(k):
        lhs = data.latching_map.compose(data.automorphism_action(X, g))
        rhs = X.act(g).compose(data.latching_map)
        if lhs != rhs:
            result.fail({'automorphism': g})
    return result


def check_cofibration_closure(f: DiagMap, along: DiagMap, flavor: str) -> CheckResult:
    """
    Cofibrations are closed under cobase change and composition.

    f: A -> B is pushed out along along: A -> C; when f passes, so must C -> B +_A C,
    and when along passes too, so must the composite A -> B +_A C.
    """
    _, _, changed = levelwise_pushout(f, along)
    base = cofibration_check(f, flavor)
    result = CheckResult(f'cofibration-closure[{flavor}]', True)
    details = {'base': base.passed}
    if base.passed:
        pushed = cofibration_check(changed, flavor)
        details['cobase_change'] = pushed.passed
        if not pushed.passed:
            result.fail({'property': 'cobase change', 'witness': pushed.witnesses[0]})
        first = cofibration_check(along, flavor)
        details['along'] = first.passed
        if first.passed:
            composite = cofibration_check(changed.compose(along), flavor)
            details['composite'] = composite.passed
            if not composite.passed:
                result.fail({'property': 'composition', 'witness': composite.witnesses[0]})
    result.details = details
    return result
