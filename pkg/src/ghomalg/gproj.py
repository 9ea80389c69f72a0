"""Gorenstein-projective machinery over a certified Gorenstein algebra.

Certification computes the injective dimension of the regular module on
both sides; when both are at most the bound they agree and the common value
d drives everything else: a module is Gorenstein-projective exactly when
Ext^i(m, A) vanishes for 1 <= i <= d (higher degrees vanish automatically
against a target of injective dimension d).

The atlas is the iso-closure of a seed set under syzygy and cosyzygy. Seeds
are the indecomposable projectives together with indecomposable summands of
d-th syzygies of a pre-inventory (simples, projectives, injectives, radical
and socle layers, their syzygies and cosyzygies, and one round of extension
middle terms); d-th syzygies are always Gorenstein-projective, and each seed
is certified before use. The completeness flag is "certified" only when
finite global dimension forces atlas = projectives, or the algebra is
self-injective Nakayama so the uniserial enumeration is exhaustive;
otherwise the atlas is labeled heuristic.

Cosyzygies use minimal left approximations into the projectives: stack the
hom bases into every indecomposable projective, drop components that factor
through the rest, take the cokernel. On Gorenstein-projectives the
approximation is injective and this is the honest cosyzygy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from . import modules as md
from . import algebras as ag
from .algebras import Algebra
from .errors import (ExceedsBound, NotCertifiedGorenstein, NotGproj,
                     RandomnessExhausted)

DEFAULT_GORENSTEIN_BOUND = 8

_GOR_CACHE: dict = {}
_ATLAS_CACHE: dict = {}


@dataclass
class GorensteinData:
    """Certified two-sided injective dimension of the regular modules."""

    dimension: int
    left_idim: int
    right_idim: int


def gorenstein_data(a: Algebra, bound: int = DEFAULT_GORENSTEIN_BOUND,
                    seed: int = 0) -> GorensteinData:
    """Certify the algebra Gorenstein with idim <= bound, or raise.

    Raises NotCertifiedGorenstein when either side exceeds the bound.
    Negative outcomes are cached per bound as well.
    """
    hit = _GOR_CACHE.get(id(a))
    if hit is not None and hit[0] is a and hit[1] >= bound:
        if hit[2] is None:
            raise NotCertifiedGorenstein(
                f"injective dimension of the regular module exceeds {hit[1]}")
        return hit[2]
    try:
        left = md.injective_dimension(md.regular_module(a), bound, seed=seed)
        right = md.injective_dimension(
            md.regular_module(a.opposite()), bound, seed=seed)
    except ExceedsBound as exc:
        _GOR_CACHE[id(a)] = (a, bound, None)
        raise NotCertifiedGorenstein(
            f"injective dimension of the regular module exceeds {exc.bound}"
        ) from exc
    assert left == right, "two-sided injective dimensions disagree"
    data = GorensteinData(dimension=left, left_idim=left, right_idim=right)
    _GOR_CACHE[id(a)] = (a, bound, data)
    return data


def is_gorenstein(a: Algebra, bound: int = DEFAULT_GORENSTEIN_BOUND,
                  seed: int = 0) -> bool:
    try:
        gorenstein_data(a, bound, seed=seed)
        return True
    except NotCertifiedGorenstein:
        return False


def is_gproj(m: md.Module, bound: int = DEFAULT_GORENSTEIN_BOUND,
             seed: int = 0) -> bool:
    """Ext^i(m, A) = 0 for 1 <= i <= d over a certified Gorenstein algebra."""
    data = gorenstein_data(m.algebra, bound, seed=seed)
    if m.dim == 0:
        return True
    reg = md.regular_module(m.algebra)
    return all(md.ext_dim(m, reg, i, seed=seed) == 0
               for i in range(1, data.dimension + 1))


# -- cosyzygy through minimal left approximations ------------------------------


@dataclass
class LeftApproximation:
    """Left add(A)-approximation f: m -> E with E a sum of indecomposable
    projectives, minimized by dropping components factoring through the
    rest."""

    map: md.ModuleMap
    target_idems: list
    is_mono: bool


def left_projective_approximation(m: md.Module, seed: int = 0
                                  ) -> LeftApproximation:
    a = m.algebra
    p = a.p
    cat = md.projective_catalog(a, seed=seed)
    components = []  # (catalog idx, projective module, matrix m -> P)
    for idx, proj in enumerate(cat.modules):
        for h in md.hom_basis(m, proj):
            components.append((idx, proj, h))

    def factors_through(rest, comp):
        _, proj, h = comp
        span = []
        for _, other_proj, other_mat in rest:
            for g in md.hom_basis(other_proj, proj):
                span.append(la.matmul(g, other_mat, p).reshape(-1))
        if not span:
            return not np.any(h)
        return la.in_span(np.stack(span, axis=1), h.reshape(-1), p)

    kept = list(components)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if factors_through(rest, kept[i]):
            kept = rest
        else:
            i += 1

    if not kept:
        target = md.zero_module(a)
        f = md.zero_map(m, target)
        return LeftApproximation(map=f, target_idems=[], is_mono=m.dim == 0)
    target, _, _ = md.direct_sum([cat.modules[idx] for idx, _, _ in kept])
    mat = np.vstack([h for _, _, h in kept])
    f = md.ModuleMap(m, target, mat, validate=False)
    # sanity: the kept stack still absorbs every map into a projective
    for proj in cat.modules:
        span = []
        for (_, src_proj, smat) in kept:
            for g in md.hom_basis(src_proj, proj):
                span.append(la.matmul(g, smat, p).reshape(-1))
        for h in md.hom_basis(m, proj):
            if span:
                assert la.in_span(np.stack(span, axis=1), h.reshape(-1), p)
            else:
                assert not np.any(h)
    return LeftApproximation(map=f, target_idems=[idx for idx, _, _ in kept],
                             is_mono=la.rank(mat, p) == m.dim)


def cosyzygy(m: md.Module, seed: int = 0) -> md.Module:
    """Cokernel of the minimal left projective approximation.

    Raises NotGproj when the approximation fails to be injective, which on a
    certified Gorenstein algebra means m was not Gorenstein-projective.
    """
    approx = left_projective_approximation(m, seed=seed)
    if not approx.is_mono:
        raise NotGproj(
            f"{m.label} does not embed in its projective approximation")
    cok, _ = md.cokernel_of(approx.map)
    cok.label = f"cosyz({m.label})"
    return cok


# -- the atlas ------------------------------------------------------------------


@dataclass
class AtlasData:
    """Indecomposable Gorenstein-projectives found by closure.

    completeness is "certified" or "heuristic"; members are pairwise
    non-isomorphic, ordered by (dimension, discovery)."""

    members: list
    completeness: str
    gorenstein_dimension: int
    projective_flags: list


def _is_nakayama(a: Algebra, seed: int = 0) -> bool:
    """Uniserial left projectives and uniserial left injectives."""
    for b in (a, a.opposite()):
        for proj in md.indecomposable_projectives(b, seed=seed):
            cur = proj
            while cur.dim:
                top, _ = md.top_of(cur)
                if top.dim > 1:
                    return False
                cur, _ = md.radical_submodule(cur)
    return True


def _radical_layer_quotients(proj: md.Module) -> list:
    """P / rad^k P for k = 1 .. Loewy length (the last one is P itself)."""
    out = []
    p = proj.algebra.p
    cols = la.identity(proj.dim)  # columns of rad^k inside proj
    while cols.shape[1]:
        layer, _ = md.submodule(proj, cols)
        _, rad_incl = md.radical_submodule(layer)
        cols = la.matmul(cols, rad_incl.matrix, p)
        quot, _ = md.quotient_module(proj, cols)
        if quot.dim:
            out.append(quot)
    return out


def _extension_middle_terms(base, seed: int, cap: int) -> list:
    """One round of extension middle terms between base modules: pushout of
    the syzygy sequence of X along each hom into Y."""
    out = []
    for x in base:
        if x.dim == 0:
            continue
        cover = md.projective_cover(x, seed=seed)
        if cover.kernel.dim == 0:
            continue
        for y in base:
            if y.dim == 0:
                continue
            for xi in md.hom_basis(cover.kernel, y):
                tgt, _, _ = md.direct_sum([cover.projective, y])
                p = x.algebra.p
                mat = np.vstack([cover.kernel_inclusion.matrix,
                                 (-la.normalize(xi, p)) % p])
                f = md.ModuleMap(cover.kernel, tgt, mat, validate=False)
                middle, _ = md.cokernel_of(f)
                if middle.dim:
                    out.append(middle)
                if len(out) >= cap:
                    return out
    return out


def _add_new_members(members, candidates, seed: int) -> list:
    fresh = []
    for c in candidates:
        if c.dim == 0:
            continue
        if any(md.is_isomorphic(c, m, seed=seed) for m in members + fresh):
            continue
        fresh.append(c)
    return fresh


def gproj_atlas(a: Algebra, bound: int = DEFAULT_GORENSTEIN_BOUND,
                seed: int = 0, member_cap: int = 64,
                extension_cap: int = 40) -> AtlasData:
    """Closure atlas of indecomposable Gorenstein-projectives."""
    hit = _ATLAS_CACHE.get(id(a))
    if hit is not None and hit[0] is a:
        return hit[1]
    data = gorenstein_data(a, bound, seed=seed)
    d = data.dimension
    cat = md.projective_catalog(a, seed=seed)

    if d == 0 and _is_nakayama(a, seed=seed):
        members = []
        for proj in cat.modules:
            for quot in _radical_layer_quotients(proj):
                members += _add_new_members(members, [quot], seed)
        members.sort(key=lambda m: m.dim)
        atlas = AtlasData(
            members=members, completeness="certified",
            gorenstein_dimension=0,
            projective_flags=[_in_add_of(m, cat.modules, seed) for m in members])
        _ATLAS_CACHE[id(a)] = (a, atlas)
        return atlas

    try:
        gldim = md.global_dimension(a, bound, seed=seed)
    except ExceedsBound:
        gldim = None

    core = list(cat.modules) + md.simple_modules(a, seed=seed)
    core += [md.dual_module(q) for q in
             md.indecomposable_projectives(a.opposite(), seed=seed)]
    for proj in cat.modules:
        rad, _ = md.radical_submodule(proj)
        if rad.dim:
            core.append(rad)
        soc, incl = md.socle_of(proj)
        if soc.dim and soc.dim < proj.dim:
            quot, _ = md.quotient_module(proj, incl.matrix)
            core.append(quot)
    base = list(core)
    base += [md.syzygy(x, seed=seed) for x in core]
    for x in core:
        approx = left_projective_approximation(x, seed=seed)
        cok, _ = md.cokernel_of(approx.map)
        if cok.dim:
            base.append(cok)
    base += _extension_middle_terms(core, seed, extension_cap)

    candidates = list(cat.modules)
    for x in base:
        tower = md.syzygy_tower(x, d, seed=seed)
        deep = tower[-1] if len(tower) == d + 1 else md.zero_module(a)
        candidates += [s for s, _, _ in md.decompose(deep, seed=seed)]

    members = []
    for piece in candidates:
        if piece.dim == 0:
            continue
        if not any(md.is_isomorphic(piece, m, seed=seed) for m in members):
            assert is_gproj(piece, bound, seed=seed), \
                "seed failed Gorenstein-projectivity certification"
            members.append(piece)

    changed = True
    while changed and len(members) <= member_cap:
        changed = False
        for m in list(members):
            moves = [md.syzygy(m, seed=seed)]
            moves.append(cosyzygy(m, seed=seed))
            pieces = []
            for mv in moves:
                pieces += [s for s, _, _ in md.decompose(mv, seed=seed)]
            fresh = _add_new_members(members, pieces, seed)
            for f in fresh:
                assert is_gproj(f, bound, seed=seed)
            if fresh:
                members += fresh
                changed = True

    completeness = "heuristic"
    if gldim is not None:
        completeness = "certified"
    if len(members) > member_cap:
        completeness = "heuristic"
    members.sort(key=lambda m: m.dim)
    atlas = AtlasData(
        members=members, completeness=completeness, gorenstein_dimension=d,
        projective_flags=[_in_add_of(m, cat.modules, seed) for m in members])
    _ATLAS_CACHE[id(a)] = (a, atlas)
    return atlas


def _in_add_of(m: md.Module, generators, seed: int = 0) -> bool:
    """Every indecomposable summand of m isomorphic to a summand of some
    generator."""
    gen_pieces = []
    for g in generators:
        gen_pieces += [s for s, _, _ in md.decompose(g, seed=seed)]
    for s, _, _ in md.decompose(m, seed=seed):
        if not any(md.is_isomorphic(s, gp, seed=seed) for gp in gen_pieces):
            return False
    return True


def in_add_atlas(m: md.Module, atlas: AtlasData, seed: int = 0) -> bool:
    if m.dim == 0:
        return True
    for s, _, _ in md.decompose(m, seed=seed):
        if not any(md.is_isomorphic(s, e, seed=seed) for e in atlas.members):
            return False
    return True


# -- right approximations and proper presentations ------------------------------


@dataclass
class RightApproximation:
    """Right add(atlas)-approximation ev: E -> m; E is a sum of atlas
    members recorded by index, or an unlabeled add(atlas) module
    (member_indices None) after right-minimization splits a summand."""

    map: md.ModuleMap
    member_indices: list | None
    is_epi: bool


def right_atlas_approximation(m: md.Module, atlas: AtlasData,
                              seed: int = 0) -> RightApproximation:
    p = m.algebra.p
    components = []
    for idx, e in enumerate(atlas.members):
        for h in md.hom_basis(e, m):
            components.append((idx, e, h))

    def still_approximates(comps):
        for e in atlas.members:
            span = []
            for _, src, mat in comps:
                for g in md.hom_basis(e, src):
                    span.append(la.matmul(mat, g, p).reshape(-1))
            for h in md.hom_basis(e, m):
                if span:
                    if not la.in_span(np.stack(span, axis=1),
                                      h.reshape(-1), p):
                        return False
                elif np.any(h):
                    return False
        return True

    kept = list(components)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        if still_approximates(trial):
            kept = trial
        else:
            i += 1
    if not kept:
        src = md.zero_module(m.algebra)
        return RightApproximation(md.zero_map(src, m), [], m.dim == 0)
    src, _, _ = md.direct_sum([e for _, e, _ in kept])
    mat = np.hstack([h for _, _, h in kept])
    ev = md.ModuleMap(src, m, mat, validate=False)
    return RightApproximation(map=ev, member_indices=[i for i, _, _ in kept],
                              is_epi=la.rank(mat, p) == m.dim)


def _right_minimize(ev: md.ModuleMap, seed: int = 0,
                    trial_budget: int = 64) -> md.ModuleMap:
    """Right-minimal version of an approximation.

    Splits off source summands the map kills: any endomorphism k of the
    source with ev*k = 0 outside the radical of End has a Fitting power
    whose kernel summand carries the whole approximation; iterate until the
    annihilator sits inside the radical, which forces every stabilizer of
    ev to be invertible. Dropping to the summand keeps the approximation
    property because ev factors through the restriction.
    """
    p = ev.source.algebra.p
    cur = ev
    rng = np.random.default_rng(seed)
    while True:
        x = cur.source
        if x.dim == 0:
            return cur
        if not np.any(cur.matrix):
            return md.zero_map(md.zero_module(x.algebra), cur.target)
        ends = md.hom_basis(x, x)
        stacked = np.stack(
            [la.matmul(cur.matrix, h, p).reshape(-1) for h in ends], axis=1)
        ann = la.kernel_basis(stacked, p)
        if ann.shape[1] == 0:
            return cur
        endo, _ = md.endomorphism_algebra(x)
        rad = ag.radical_basis(endo)
        if la.rank(np.hstack([rad, ann]), p) == la.rank(rad, p):
            return cur
        for _ in range(trial_budget):
            coeffs = rng.integers(0, p, size=ann.shape[1])
            vec = (ann @ coeffs) % p
            kmat = np.zeros((x.dim, x.dim), dtype=np.int64)
            for c, h in zip(vec, ends):
                kmat = (kmat + int(c) * h) % p
            power = kmat
            for _ in range(x.dim - 1):
                power = la.matmul(power, kmat, p)
            if np.any(power):
                break
        else:
            raise RandomnessExhausted(
                "no non-nilpotent annihilating endomorphism found")
        keep_cols = la.kernel_basis(power, p)
        assert 0 < keep_cols.shape[1] < x.dim
        sub, incl = md.submodule(x, keep_cols)
        cur = md.ModuleMap(sub, cur.target,
                           la.matmul(cur.matrix, incl.matrix, p),
                           validate=False)


def _minimized(approx: RightApproximation, seed: int = 0) -> RightApproximation:
    ev = _right_minimize(approx.map, seed=seed)
    if ev is approx.map:
        return approx
    # the split summand is no longer a labeled sum of members
    return RightApproximation(map=ev, member_indices=None, is_epi=approx.is_epi)


@dataclass
class ProperPresentation:
    """E1 -> E0 -> m -> 0 with both maps right-minimal atlas
    approximations, so the sequence stays exact under Hom(E, -) for every
    atlas member E and carries no superfluous summand."""

    approx0: RightApproximation
    approx1: RightApproximation
    d1: md.ModuleMap
    kernel_inclusion: md.ModuleMap


def proper_presentation(m: md.Module, atlas: AtlasData,
                        seed: int = 0) -> ProperPresentation:
    a0 = _minimized(right_atlas_approximation(m, atlas, seed=seed), seed=seed)
    assert a0.is_epi, "atlas approximation must be onto (projectives present)"
    ker, incl = md.kernel_of(a0.map)
    a1 = _minimized(right_atlas_approximation(ker, atlas, seed=seed), seed=seed)
    d1 = incl.compose(a1.map)
    return ProperPresentation(approx0=a0, approx1=a1, d1=d1,
                              kernel_inclusion=incl)


def gproj_dimension(m: md.Module, atlas: AtlasData, bound: int = 16,
                    seed: int = 0) -> int:
    """Length of the minimal proper atlas resolution."""
    if m.dim == 0:
        return -1
    cur = m
    for k in range(bound + 1):
        if in_add_atlas(cur, atlas, seed=seed):
            return k
        approx = right_atlas_approximation(cur, atlas, seed=seed)
        assert approx.is_epi
        cur, _ = md.kernel_of(approx.map)
        if cur.dim == 0:
            return k
    raise ExceedsBound(bound, f"Gorenstein-projective dimension of {m.label}")


_RES_CACHE: dict = {}


def _proper_resolution(m: md.Module, atlas: AtlasData, depth: int,
                       seed: int = 0):
    """(terms, diffs) of the proper atlas resolution of m out to `depth`
    terms (fewer when the kernels run out). Cached per (m, atlas, seed)."""
    key = (id(m), id(atlas), seed)
    hit = _RES_CACHE.get(key)
    if hit is not None and hit[0] is m and hit[1] is atlas \
            and (hit[2] >= depth or hit[5]):
        return hit[3], hit[4]
    terms = []
    maps = []
    cur = m
    exhausted = False
    for _ in range(depth):
        approx = right_atlas_approximation(cur, atlas, seed=seed)
        ker, incl = md.kernel_of(approx.map)
        terms.append(approx.map.source)
        maps.append((approx, incl))
        cur = ker
        if cur.dim == 0:
            exhausted = True
            break
    diffs = []
    for i in range(1, len(terms)):
        prev_incl = maps[i - 1][1]
        diffs.append(prev_incl.compose(maps[i][0].map))
    _RES_CACHE[key] = (m, atlas, depth, terms, diffs, exhausted)
    return terms, diffs


def gext_dim(m: md.Module, n: md.Module, k: int, atlas: AtlasData,
             seed: int = 0) -> int:
    """Relative ext: cohomology of Hom(E_bullet, n) over the proper atlas
    resolution of m."""
    assert k >= 0
    if m.dim == 0 or n.dim == 0:
        return 0
    if k == 0:
        return md.hom_dim(m, n)
    terms, diffs = _proper_resolution(m, atlas, k + 2, seed=seed)
    if k >= len(terms):
        return 0

    def induced(dmap, target):
        rows = []
        basis_src = md.hom_basis(dmap.target, target)
        basis_dst = md.hom_basis(dmap.source, target)
        p = m.algebra.p
        if not basis_dst:
            return np.zeros((0, len(basis_src)), dtype=np.int64)
        flat = np.stack([b.reshape(-1) for b in basis_dst], axis=1)
        for phi in basis_src:
            comp = la.matmul(phi, dmap.matrix, p)
            rows.append(la.solve(flat, comp.reshape(-1, 1), p).reshape(-1))
        if not rows:
            return np.zeros((len(basis_dst), 0), dtype=np.int64)
        return np.stack(rows, axis=1)

    p = m.algebra.p
    d_k = induced(diffs[k - 1], n)  # Hom(E_{k-1}, n) -> Hom(E_k, n)
    if k < len(diffs):
        d_k1 = induced(diffs[k], n)  # Hom(E_k, n) -> Hom(E_{k+1}, n)
        ker_dim = d_k1.shape[1] - la.rank(d_k1, p)
    else:
        ker_dim = len(md.hom_basis(terms[k], n))
    return ker_dim - la.rank(d_k, p)


def is_g_exact(f: md.ModuleMap, g: md.ModuleMap, atlas: AtlasData,
               seed: int = 0) -> bool:
    """Exactness of x -f-> y -g-> z at y that survives Hom(E, -) for every
    atlas member: ordinary middle exactness plus surjectivity of
    Hom(E, y) -> Hom(E, im g) in the only place it can fail."""
    p = f.source.algebra.p
    comp = g.compose(f)
    if np.any(comp.matrix):
        return False
    img = la.column_space_basis(f.matrix, p)
    ker = la.kernel_basis(g.matrix, p)
    if la.rank(img, p) != la.rank(ker, p) or \
            la.rank(np.hstack([img, ker]), p) != la.rank(ker, p):
        return False
    # Hom(E, -) exactness at y: every E -> y killed by g must lift through f
    for e in atlas.members:
        span = []
        for h in md.hom_basis(e, f.source):
            span.append(la.matmul(f.matrix, h, p).reshape(-1))
        for phi in md.hom_basis(e, f.target):
            if np.any(la.matmul(g.matrix, phi, p)):
                continue
            vec = phi.reshape(-1)
            if span:
                if not la.in_span(np.stack(span, axis=1), vec, p):
                    return False
            elif np.any(vec):
                return False
    return True


def is_g_exact_short(f: md.ModuleMap, g: md.ModuleMap, atlas: AtlasData,
                     seed: int = 0) -> bool:
    """Short-exact and Hom(E, -)-exact: mono, epi, middle exact, and
    Hom(E, g) surjective for every atlas member."""
    p = f.source.algebra.p
    if not md.is_injective_map(f) or not md.is_surjective_map(g):
        return False
    if not is_g_exact(f, g, atlas, seed=seed):
        return False
    for e in atlas.members:
        span = []
        for h in md.hom_basis(e, g.source):
            span.append(la.matmul(g.matrix, h, p).reshape(-1))
        for phi in md.hom_basis(e, g.target):
            vec = phi.reshape(-1)
            if span:
                if not la.in_span(np.stack(span, axis=1), vec, p):
                    return False
            elif np.any(vec):
                return False
    return True


def ginj_atlas(a: Algebra, bound: int = DEFAULT_GORENSTEIN_BOUND,
               seed: int = 0) -> list:
    """Indecomposable Gorenstein-injectives: duals of the opposite atlas."""
    op_atlas = gproj_atlas(a.opposite(), bound, seed=seed)
    out = []
    for m in op_atlas.members:
        dm = md.dual_module(m)
        dm.label = f"D({m.label})"
        out.append(dm)
    return out
