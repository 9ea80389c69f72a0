"""Cohen-Macaulay Auslander layer: the endomorphism algebra of the atlas
sum, the functor Hom(E, -), the relative transpose, and tau_G.

Write E = E_0 + ... + E_{r-1} for the sum of the atlas members. The
algebra lambda carries the opposite of map composition, so that Hom(E, m)
with the precomposition action lam.phi = phi o lam is a left
lambda-module, while Hom(m, E) with postcomposition is a left module over
opposite(lambda). Everything is expressed in the per-pair hom bases; the
same bases index the basis of lambda itself.

tau_G is always taken from the right-minimal proper presentation: a
non-minimal presentation inflates the transpose by a projective summand
and the rigidity test would then lie.
"""

from __future__ import annotations

import numpy as np

from . import gproj as gp
from . import linalg as la
from . import modules as md
from .algebras import Algebra

_CTX_CACHE: dict = {}


class CMAuslanderContext:
    """Pair-hom data of an atlas together with the algebra it generates.

    pair_bases[s][t] is the hom basis E_s -> E_t; offsets[s][t] locates
    that block inside lambda's basis and block_of inverts the indexing.
    The lambda product of basis maps b_i, b_j is the composite b_j o b_i
    (the opposite twist), nonzero only when b_i lands where b_j starts.
    """

    def __init__(self, atlas: gp.AtlasData):
        members = atlas.members
        a = members[0].algebra
        p = a.p
        r = len(members)
        pair_bases = [[md.hom_basis(s, t) for t in members] for s in members]
        offsets = [[0] * r for _ in range(r)]
        block_of = []
        n = 0
        for s in range(r):
            for t in range(r):
                offsets[s][t] = n
                for k in range(len(pair_bases[s][t])):
                    block_of.append((s, t, k))
                n += len(pair_bases[s][t])

        structure = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            s_i, t_i, k_i = block_of[i]
            m_i = pair_bases[s_i][t_i][k_i]
            for j in range(n):
                s_j, t_j, k_j = block_of[j]
                if t_i != s_j:
                    continue
                prod = la.matmul(pair_bases[s_j][t_j][k_j], m_i, p)
                coords = md.hom_coordinates(members[s_i], members[t_j], prod)
                off = offsets[s_i][t_j]
                structure[i, j, off:off + coords.shape[0]] = coords
        unit = np.zeros(n, dtype=np.int64)
        for t in range(r):
            coords = md.hom_coordinates(members[t], members[t],
                                        la.identity(members[t].dim))
            off = offsets[t][t]
            unit[off:off + coords.shape[0]] = coords

        self.atlas = atlas
        self.algebra = a
        self.members = list(members)
        self.pair_bases = pair_bases
        self.offsets = offsets
        self.block_of = block_of
        self.lam = Algebra(structure, unit, p,
                           label=f"CMAus({a.label})", validate="gens")
        self._efun_cache: dict = {}
        self._tau_cache: dict = {}

    def __repr__(self):
        return (f"CMAuslanderContext({self.algebra.label}, "
                f"members={len(self.members)}, lam_dim={self.lam.dim})")


def build_context(atlas: gp.AtlasData) -> CMAuslanderContext:
    key = id(atlas)
    hit = _CTX_CACHE.get(key)
    if hit is not None and hit[0] is atlas:
        return hit[1]
    ctx = CMAuslanderContext(atlas)
    _CTX_CACHE[key] = (atlas, ctx)
    return ctx


# -- the functor Hom(E, -) ----------------------------------------------------


def e_functor(ctx: CMAuslanderContext, m: md.Module) -> md.Module:
    """Hom(E, m) as a left module over ctx.lam, acting by precomposition."""
    hit = ctx._efun_cache.get(id(m))
    if hit is not None and hit[0] is m:
        return hit[1]
    p = ctx.lam.p
    bases = [md.hom_basis(e, m) for e in ctx.members]
    boff = np.cumsum([0] + [len(b) for b in bases])
    d = int(boff[-1])
    action = np.zeros((ctx.lam.dim, d, d), dtype=np.int64)
    for i, (s_i, t_i, k_i) in enumerate(ctx.block_of):
        m_i = ctx.pair_bases[s_i][t_i][k_i]
        for col, phi in enumerate(bases[t_i]):
            comp = la.matmul(phi, m_i, p)
            coords = md.hom_coordinates(ctx.members[s_i], m, comp)
            action[i, boff[s_i]:boff[s_i + 1], boff[t_i] + col] = coords
    out = md.Module(ctx.lam, action, label=f"(E,{m.label})")
    ctx._efun_cache[id(m)] = (m, out)
    return out


def e_functor_map(ctx: CMAuslanderContext, f: md.ModuleMap) -> md.ModuleMap:
    """Hom(E, f): postcompose with f, blockwise over the members."""
    p = ctx.lam.p
    src = e_functor(ctx, f.source)
    tgt = e_functor(ctx, f.target)
    src_bases = [md.hom_basis(e, f.source) for e in ctx.members]
    tgt_off = np.cumsum([0] + [md.hom_dim(e, f.target) for e in ctx.members])
    mat = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    col = 0
    for s, basis in enumerate(src_bases):
        for phi in basis:
            comp = la.matmul(f.matrix, phi, p)
            coords = md.hom_coordinates(ctx.members[s], f.target, comp)
            mat[tgt_off[s]:tgt_off[s + 1], col] = coords
            col += 1
    return md.ModuleMap(src, tgt, mat)


# -- Hom(-, E) and the relative transpose -------------------------------------


def _hom_into_atlas_module(ctx: CMAuslanderContext, g: md.Module) -> md.Module:
    """Hom(g, E) as a left module over opposite(ctx.lam), acting by
    postcomposition."""
    p = ctx.lam.p
    lamop = ctx.lam.opposite()
    bases = [md.hom_basis(g, e) for e in ctx.members]
    boff = np.cumsum([0] + [len(b) for b in bases])
    d = int(boff[-1])
    action = np.zeros((lamop.dim, d, d), dtype=np.int64)
    for i, (s_i, t_i, k_i) in enumerate(ctx.block_of):
        m_i = ctx.pair_bases[s_i][t_i][k_i]
        for col, psi in enumerate(bases[s_i]):
            comp = la.matmul(m_i, psi, p)
            coords = md.hom_coordinates(g, ctx.members[t_i], comp)
            action[i, boff[t_i]:boff[t_i + 1], boff[s_i] + col] = coords
    return md.Module(lamop, action, label=f"({g.label},E)")


def _hom_into_atlas_map(ctx: CMAuslanderContext,
                        f: md.ModuleMap) -> md.ModuleMap:
    """Hom(f, E): precompose with f, contravariant, over opposite(lam)."""
    p = ctx.lam.p
    src = _hom_into_atlas_module(ctx, f.target)
    tgt = _hom_into_atlas_module(ctx, f.source)
    src_bases = [md.hom_basis(f.target, e) for e in ctx.members]
    tgt_off = np.cumsum([0] + [md.hom_dim(f.source, e) for e in ctx.members])
    mat = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    col = 0
    for t, basis in enumerate(src_bases):
        for psi in basis:
            comp = la.matmul(psi, f.matrix, p)
            coords = md.hom_coordinates(f.source, ctx.members[t], comp)
            mat[tgt_off[t]:tgt_off[t + 1], col] = coords
            col += 1
    return md.ModuleMap(src, tgt, mat)


def relative_transpose(ctx: CMAuslanderContext, m: md.Module,
                       seed: int = 0) -> md.Module:
    """Cokernel of Hom(d1, E) for the minimal proper presentation of m,
    over opposite(ctx.lam). Vanishes exactly on add(atlas)."""
    pres = gp.proper_presentation(m, ctx.atlas, seed=seed)
    hmap = _hom_into_atlas_map(ctx, pres.d1)
    tr, _ = md.cokernel_of(hmap)
    tr.label = f"Tr_G({m.label})"
    return tr


def tau_g(ctx: CMAuslanderContext, m: md.Module, seed: int = 0) -> md.Module:
    """Dual of the relative transpose, a left module over ctx.lam.

    Computed both as dual(cokernel) and as kernel(dual map); the two
    routes are compared on every call.
    """
    key = (id(m), seed)
    hit = ctx._tau_cache.get(key)
    if hit is not None and hit[0] is m:
        return hit[1]
    pres = gp.proper_presentation(m, ctx.atlas, seed=seed)
    hmap = _hom_into_atlas_map(ctx, pres.d1)
    tr, _ = md.cokernel_of(hmap)
    out = md.dual_module(tr)
    check, _ = md.kernel_of(md.dual_map(hmap))
    assert md.is_isomorphic(out, check), "transpose duality routes disagree"
    out.label = f"tau_G({m.label})"
    ctx._tau_cache[key] = (m, out)
    return out


def is_tau_g_rigid(ctx: CMAuslanderContext, m: md.Module,
                   seed: int = 0) -> bool:
    """Hom over lambda from Hom(E, m) to tau_G(m) vanishes."""
    return md.hom_dim(e_functor(ctx, m), tau_g(ctx, m, seed=seed)) == 0
