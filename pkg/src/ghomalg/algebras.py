"""Finite-dimensional associative unital algebras over F_p.

An Algebra is a structure-constant table c with b_i * b_j = sum_k c[i,j,k] b_k
over a fixed basis, together with a unit vector. Elements are coordinate
columns. The session prime must exceed the dimension; the radical and
idempotent machinery below depends on that bound.

Bound quiver algebras are built degree by degree: relations must be
length-homogeneous linear combinations of parallel paths of length >= 2
(every standard admissible presentation in scope is of this form), so the
relation ideal is graded and each graded piece is an exact span of
path-sandwiches u o r o v. Paths are tuples of arrow indices in application
order: (a1, a2) is the composite "a1 first, then a2". Multiplication is
function-style composition, so the left regular module A e_v is spanned by
paths starting at v.

Randomized splitting (inside non-commutative semisimple blocks) is Las Vegas:
a wrong answer is impossible, and budget exhaustion raises
RandomnessExhausted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import (
    BadRelation,
    InfiniteDimensional,
    NoUnit,
    NotAssociative,
    PrimeTooSmall,
    RandomnessExhausted,
)

_MAX_PATHS_PER_DEGREE = 50_000
DEFAULT_PATH_CAP = 16
DEFAULT_TRIAL_BUDGET = 64


class Algebra:
    """Associative unital F_p-algebra given by structure constants.

    Args:
        structure: (n, n, n) table, b_i b_j = sum_k structure[i, j, k] b_k.
        unit: length-n coordinate vector of the identity.
        p: session prime, must exceed n.
        label: display name.
        basis_names: optional display names per basis element.
        generator_indices: indices of basis elements generating A as a unital
            algebra; computed greedily when omitted.
        validate: "full" checks associativity on all triples, "gens" only on
            (generator, x, y) triples (complete by induction on words, used
            for internally constructed tables), "none" skips associativity.
            Unit laws are always checked.

    Raises:
        PrimeTooSmall, NotAssociative, NoUnit.
    """

    def __init__(self, structure, unit, p: int, label: str = "",
                 basis_names=None, generator_indices=None,
                 validate: str = "full"):
        structure = la.normalize(structure, p)
        unit = la.normalize(unit, p).reshape(-1)
        n = structure.shape[0]
        if structure.shape != (n, n, n) or unit.shape != (n,):
            raise ValueError("structure constants must be (n,n,n) with length-n unit")
        if p <= n:
            raise PrimeTooSmall(f"prime {p} must exceed algebra dimension {n}")
        self.p = int(p)
        self.dim = int(n)
        self.structure = structure
        self.unit = unit
        self.label = label or f"algebra(dim={n})"
        self.basis_names = list(basis_names) if basis_names else [f"b{i}" for i in range(n)]
        self._opposite: Algebra | None = None
        self._radical_data = None
        self._gen_cache = None

        ident = la.identity(n)
        left_unit = np.einsum("i,ijk->jk", unit, structure) % p
        right_unit = np.einsum("j,ijk->ik", unit, structure) % p
        if not np.array_equal(left_unit, ident) or not np.array_equal(right_unit, ident):
            raise NoUnit("unit vector fails the two-sided unit laws")

        if generator_indices is None:
            generator_indices = self._greedy_generators()
        self.generator_indices = list(generator_indices)

        if validate == "full":
            left = np.einsum("ijm,mkl->ijkl", structure, structure) % p
            right = np.einsum("jkm,iml->ijkl", structure, structure) % p
            if not np.array_equal(left, right):
                raise NotAssociative("structure constants fail associativity")
        elif validate == "gens":
            for g in self.generator_indices:
                left = np.einsum("jm,mkl->jkl", structure[g], structure) % p
                right = np.einsum("jkm,ml->jkl", structure, structure[g]) % p
                if not np.array_equal(left, right):
                    raise NotAssociative("structure constants fail associativity")
        elif validate != "none":
            raise ValueError(f"unknown validate mode {validate!r}")

    # -- basic arithmetic ---------------------------------------------------

    def multiply(self, x, y) -> np.ndarray:
        """Coordinates of the product x*y."""
        x = la.normalize(x, self.p)
        y = la.normalize(y, self.p)
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.p

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix of a -> x*a on coordinate columns."""
        x = la.normalize(x, self.p)
        return np.einsum("i,ijk->kj", x, self.structure) % self.p

    def right_mult_matrix(self, x) -> np.ndarray:
        """Matrix of a -> a*x on coordinate columns."""
        x = la.normalize(x, self.p)
        return np.einsum("j,ijk->ki", x, self.structure) % self.p

    def basis_left_mult(self, i: int) -> np.ndarray:
        return self.structure[i].T.copy()

    def basis_right_mult(self, i: int) -> np.ndarray:
        return self.structure[:, i, :].T.copy()

    def power(self, x, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = la.normalize(x, self.p)
        while e > 0:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def element_minimal_polynomial(self, x) -> np.ndarray:
        return la.minimal_polynomial(self.left_mult_matrix(x), self.p)

    def evaluate_polynomial(self, f, x) -> np.ndarray:
        """f(x) in the algebra, constant term times the unit."""
        f = la.poly_trim(f) % self.p
        acc = la.normalize(np.zeros(self.dim), self.p)
        for c in f[::-1]:
            acc = self.multiply(acc, x)
            acc = (acc + int(c) * self.unit) % self.p
        return acc

    def _greedy_generators(self) -> list[int]:
        span = self.unit.reshape(-1, 1)
        span = la.column_space_basis(span, self.p)
        gens: list[int] = []
        while span.shape[1] < self.dim:
            new_gen = None
            for i in range(self.dim):
                vec = np.zeros(self.dim, dtype=np.int64)
                vec[i] = 1
                if not la.in_span(span, vec, self.p):
                    new_gen = i
                    break
            gens.append(new_gen)
            while True:
                blocks = [span]
                for g in gens:
                    blocks.append(la.matmul(self.basis_left_mult(g), span, self.p))
                bigger = la.column_space_basis(np.hstack(blocks), self.p)
                if bigger.shape[1] == span.shape[1]:
                    break
                span = bigger
        return gens

    def opposite(self) -> "Algebra":
        """The opposite algebra; an involution via caching, so that
        a.opposite().opposite() is a itself."""
        if self._opposite is None:
            op = Algebra(
                np.swapaxes(self.structure, 0, 1).copy(),
                self.unit,
                self.p,
                label=self.label + "^op",
                basis_names=self.basis_names,
                generator_indices=self.generator_indices,
                validate="none",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self):
        return f"Algebra({self.label}, dim={self.dim}, p={self.p})"


def from_structure_constants(structure, unit, p: int, label: str = "") -> Algebra:
    """Validated algebra from a raw structure-constant table."""
    return Algebra(structure, unit, p, label=label, validate="full")


# -- bound quiver algebras --------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """A finite quiver: vertices 0..num_vertices-1 and named arrows."""

    num_vertices: int
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        for name, s, t in self.arrows:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise BadRelation(f"arrow {name} has out-of-range endpoints")


def _path_source(quiver: Quiver, path) -> int:
    kind, data = path
    return data if kind == "v" else quiver.arrows[data[0]][1]


def _path_target(quiver: Quiver, path) -> int:
    kind, data = path
    return data if kind == "v" else quiver.arrows[data[-1]][2]


def _check_relation(quiver: Quiver, rel) -> tuple[int, int, int]:
    """Validate one relation; returns (length, source, target)."""
    if not rel:
        raise BadRelation("empty relation")
    sig = None
    for coeff, arrows in rel:
        arrows = tuple(arrows)
        if len(arrows) < 2:
            raise BadRelation("relation terms must be paths of length >= 2")
        for a, b in zip(arrows, arrows[1:]):
            if quiver.arrows[a][2] != quiver.arrows[b][1]:
                raise BadRelation("relation term is not a composable path")
        src = quiver.arrows[arrows[0]][1]
        tgt = quiver.arrows[arrows[-1]][2]
        term_sig = (len(arrows), src, tgt)
        if sig is None:
            sig = term_sig
        elif sig != term_sig:
            raise BadRelation(
                "relation terms must share length and endpoints "
                "(length-homogeneous admissible presentations only)")
    return sig


def from_quiver(quiver: Quiver, relations, p: int,
                path_length_cap: int = DEFAULT_PATH_CAP,
                label: str = "") -> Algebra:
    """Path algebra of a bound quiver, truncated by graded elimination.

    relations: list of relations, each a list of (coeff, arrow-index tuple)
    with arrow tuples in application order. Processing runs degree by degree;
    it stops at the first degree whose residue space is zero (all longer
    paths then vanish since the algebra is generated in degree one) and
    raises InfiniteDimensional when nonzero residues survive to the cap.
    """
    rel_sigs = [_check_relation(quiver, rel) for rel in relations]

    paths_by_degree: list[list] = []
    vertex_paths = [("v", v) for v in range(quiver.num_vertices)]
    paths_by_degree.append(vertex_paths)
    arrow_paths = [("a", (i,)) for i in range(len(quiver.arrows))]
    arrow_paths.sort(key=lambda q: q[1])
    paths_by_degree.append(arrow_paths)

    residues: list = list(vertex_paths)
    if arrow_paths and len(relations) == 0 and _has_cycle(quiver):
        raise InfiniteDimensional("relation-free quiver with an oriented cycle")
    residues += arrow_paths
    rewrite: dict = {q: {i: 1} for i, q in enumerate(residues)}
    residue_degree_counts = [len(vertex_paths), len(arrow_paths)]

    degree = 1
    while residue_degree_counts[-1] > 0:
        degree += 1
        if degree > path_length_cap:
            raise InfiniteDimensional(
                f"nonzero paths survive past path_length_cap={path_length_cap}")
        prev = paths_by_degree[degree - 1]
        current = []
        for kind, arrows in prev:
            last_target = quiver.arrows[arrows[-1]][2]
            for a_idx, (_, s, _) in enumerate(quiver.arrows):
                if s == last_target:
                    current.append(("a", arrows + (a_idx,)))
        current.sort(key=lambda q: q[1])
        if len(current) > _MAX_PATHS_PER_DEGREE:
            raise InfiniteDimensional("path enumeration budget exceeded")
        paths_by_degree.append(current)
        index_of = {q: i for i, q in enumerate(current)}

        gens = []
        for rel, (rlen, rsrc, rtgt) in zip(relations, rel_sigs):
            for pre_deg in range(0, degree - rlen + 1):
                post_deg = degree - rlen - pre_deg
                pres = [q for q in paths_by_degree[pre_deg]
                        if _path_target(quiver, q) == rsrc]
                posts = [q for q in paths_by_degree[post_deg]
                         if _path_source(quiver, q) == rtgt]
                for vq in pres:
                    v_arr = () if vq[0] == "v" else vq[1]
                    for uq in posts:
                        u_arr = () if uq[0] == "v" else uq[1]
                        row = np.zeros(len(current), dtype=np.int64)
                        for coeff, arrows in rel:
                            key = ("a", v_arr + tuple(arrows) + u_arr)
                            row[index_of[key]] = (row[index_of[key]] + coeff) % p
                        gens.append(row)
        new_residues = []
        if gens:
            mat = np.stack(gens)
            red, pivots = la.rref(mat, p)
            pivot_set = set(pivots)
            nonpivot = [j for j in range(len(current)) if j not in pivot_set]
            # assign global indices to the new residues first
            base = len(residues)
            for local, j in enumerate(nonpivot):
                q = current[j]
                residues.append(q)
                rewrite[q] = {base + local: 1}
                new_residues.append(q)
            for row_i, col in enumerate(pivots):
                q = current[col]
                expansion = {}
                for local, j in enumerate(nonpivot):
                    c = int(red[row_i, j])
                    if c:
                        expansion[base + local] = (-c) % p
                rewrite[q] = expansion
        else:
            base = len(residues)
            for local, q in enumerate(current):
                residues.append(q)
                rewrite[q] = {base + local: 1}
                new_residues.append(q)
        residue_degree_counts.append(len(new_residues))

    n = len(residues)
    if p <= n:
        raise PrimeTooSmall(f"prime {p} must exceed algebra dimension {n}")
    max_degree = len(residue_degree_counts) - 2  # last count is zero

    structure = np.zeros((n, n, n), dtype=np.int64)
    for i, qi in enumerate(residues):
        for j, qj in enumerate(residues):
            # product b_i o b_j applies qj first; composable when qj ends
            # where qi starts.
            if _path_source(quiver, qi) != _path_target(quiver, qj):
                continue
            arr_i = () if qi[0] == "v" else qi[1]
            arr_j = () if qj[0] == "v" else qj[1]
            total = arr_j + arr_i
            if len(total) == 0:
                key = ("v", qi[1])
            elif len(total) > max_degree:
                continue
            else:
                key = ("a", total)
            for res_idx, coeff in rewrite[key].items():
                structure[i, j, res_idx] = coeff % p

    unit = np.zeros(n, dtype=np.int64)
    names = []
    gens_idx = []
    for idx, (kind, data) in enumerate(residues):
        if kind == "v":
            unit[idx] = 1
            names.append(f"e{data}")
            gens_idx.append(idx)
        else:
            names.append("*".join(quiver.arrows[a][0] for a in data))
            if len(data) == 1:
                gens_idx.append(idx)

    return Algebra(structure, unit, p, label=label or "bound quiver algebra",
                   basis_names=names, generator_indices=gens_idx,
                   validate="gens")


def _has_cycle(quiver: Quiver) -> bool:
    adj = {v: [] for v in range(quiver.num_vertices)}
    for _, s, t in quiver.arrows:
        adj[s].append(t)
    state = {v: 0 for v in adj}

    def visit(v):
        state[v] = 1
        for w in adj[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in list(adj))


# -- radical and primitive idempotents --------------------------------------


@dataclass
class RadicalIdempotentData:
    """Radical basis (columns), a complete orthogonal primitive idempotent
    family, and the number of simple blocks of A/rad."""

    radical_basis: np.ndarray
    idempotents: list
    block_count: int
    semisimple: "Algebra" = field(repr=False, default=None)
    semisimple_section: np.ndarray = field(repr=False, default=None)


def radical_basis(a: Algebra) -> np.ndarray:
    """Basis of the Jacobson radical via the regular trace form.

    Valid because the session prime exceeds the dimension.
    """
    traces = np.einsum("kjj->k", a.structure) % a.p
    gram = np.einsum("ijk,k->ij", a.structure, traces) % a.p
    return la.kernel_basis(gram, a.p)


def _quotient_algebra(a: Algebra, ideal_basis: np.ndarray):
    """(quotient algebra, section matrix) for A / span(ideal_basis)."""
    section = la.complement_basis(ideal_basis, a.dim, a.p)
    m = section.shape[1]
    full = np.hstack([ideal_basis, section])
    full_inv = la.inverse(full, a.p)
    proj = full_inv[ideal_basis.shape[1]:, :]  # quotient coordinates
    structure = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        prod = la.matmul(a.left_mult_matrix(section[:, i]), section, a.p)
        structure[i] = la.matmul(proj, prod, a.p).T
    unit = la.matmul(proj, a.unit.reshape(-1, 1), a.p).reshape(-1)
    quotient = Algebra(structure, unit, a.p, label=a.label + "/rad",
                       validate="none")
    return quotient, section, proj


def _center_basis(a: Algebra) -> np.ndarray:
    rows = []
    for g in a.generator_indices:
        rows.append((a.basis_left_mult(g) - a.basis_right_mult(g)) % a.p)
    if not rows:
        return la.identity(a.dim)
    return la.kernel_basis(np.vstack(rows), a.p)


def _frobenius_fixed_basis(a: Algebra, center: np.ndarray) -> np.ndarray:
    """Basis of {z in the center : z^p = z}, inside the center coordinates."""
    k = center.shape[1]
    frob = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        zp = a.power(center[:, i], a.p)
        frob[:, i] = la.coordinates_in_basis(center, zp.reshape(-1, 1), a.p).reshape(-1)
    return la.kernel_basis((frob - la.identity(k)) % a.p, a.p)


def _split_commutative_fixed(a: Algebra, fixed_vectors) -> list:
    """Primitive idempotents of the Frobenius-fixed subalgebra.

    fixed_vectors: columns in algebra coordinates spanning a subalgebra
    isomorphic to F_p^r. Deterministic: refine along each basis vector by
    root-scanning its minimal polynomial in each corner.
    """
    p = a.p
    idems = [a.unit.copy()]
    for i in range(fixed_vectors.shape[1]):
        z = fixed_vectors[:, i]
        new_idems = []
        for e in idems:
            x = a.multiply(a.multiply(e, z), e)
            # corner span: powers of x together with e
            span = e.reshape(-1, 1)
            cur = e
            while True:
                cur = a.multiply(cur, x)
                if la.in_span(span, cur, p):
                    break
                span = np.hstack([span, cur.reshape(-1, 1)])
            mult = np.zeros((span.shape[1], span.shape[1]), dtype=np.int64)
            for c in range(span.shape[1]):
                prod = a.multiply(x, span[:, c])
                mult[:, c] = la.coordinates_in_basis(span, prod.reshape(-1, 1), p).reshape(-1)
            mu = la.minimal_polynomial(mult, p)
            roots = np.nonzero(la.poly_eval_scalar_batch(mu, np.arange(p), p) == 0)[0]
            if len(roots) <= 1:
                new_idems.append(e)
                continue
            for c in roots:
                proj = e.copy()
                for c2 in roots:
                    if c2 == c:
                        continue
                    factor = (x - int(c2) * e) % p
                    proj = a.multiply(proj, factor)
                    proj = (proj * la.inv_mod(int(c) - int(c2), p)) % p
                new_idems.append(proj)
        idems = new_idems
    return idems


def _corner(a: Algebra, e):
    """Basis columns of the corner eAe."""
    le = a.left_mult_matrix(e)
    re = a.right_mult_matrix(e)
    return la.column_space_basis(la.matmul(le, re, a.p) % a.p, a.p)


def _corner_is_division(a: Algebra, e, corner_basis) -> bool:
    """In a semisimple ambient algebra: is eAe a (finite) field?

    Criterion: eAe commutative and its Frobenius-fixed subspace is a line.
    """
    p = a.p
    k = corner_basis.shape[1]
    structure = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        prod = la.matmul(a.left_mult_matrix(corner_basis[:, i]), corner_basis, p)
        structure[i] = la.coordinates_in_basis(corner_basis, prod, p).T
    unit = la.coordinates_in_basis(corner_basis, e.reshape(-1, 1), p).reshape(-1)
    corner = Algebra(structure, unit, p, label="corner", validate="none")
    center = _center_basis(corner)
    if center.shape[1] != k:
        return False
    fixed = _frobenius_fixed_basis(corner, center)
    return fixed.shape[1] == 1


def _try_split_idempotent(a: Algebra, e, corner_basis, rng) -> np.ndarray | None:
    """One Las Vegas attempt to split e inside a semisimple algebra.

    Returns a proper idempotent below e, or None when this trial's random
    element has an unhelpful minimal polynomial.
    """
    p = a.p
    k = corner_basis.shape[1]
    coeffs = rng.integers(0, p, size=k, dtype=np.int64)
    b = la.matmul(corner_basis, coeffs.reshape(-1, 1), p).reshape(-1)
    # minimal polynomial of b acting on the corner
    mult = np.zeros((k, k), dtype=np.int64)
    for c in range(k):
        prod = a.multiply(b, corner_basis[:, c])
        mult[:, c] = la.coordinates_in_basis(corner_basis, prod.reshape(-1, 1), p).reshape(-1)
    mu = la.minimal_polynomial(mult, p)
    deg = la.poly_deg(mu)
    if deg <= 1:
        return None
    x_poly = np.array([0, 1], dtype=np.int64)
    candidates = []
    # roots give linear factors directly
    root_values = np.nonzero(la.poly_eval_scalar_batch(mu, np.arange(p), p) == 0)[0]
    for c in root_values:
        candidates.append(np.array([(-int(c)) % p, 1], dtype=np.int64))
    dgcd = la.poly_gcd(mu, la.poly_derivative(mu, p), p)
    if 0 < la.poly_deg(dgcd) < deg:
        candidates.append(dgcd)
    # distinct-degree extraction
    frob = x_poly
    first_k = None
    for k in range(1, deg + 1):
        frob = la.poly_powmod(frob, p, mu, p)
        g = la.poly_gcd(mu, la.poly_sub(frob, x_poly, p), p)
        dg = la.poly_deg(g)
        if dg > 0 and first_k is None:
            first_k = k
        if 0 < dg < deg:
            candidates.append(g)
        if dg == deg:
            break
    # equal-degree fallback for squarefree mu with all factors of one degree
    if not candidates and first_k is not None and first_k >= 2:
        shift = int(rng.integers(0, p))
        base = np.array([shift, 1], dtype=np.int64)
        h = la.poly_powmod(base, (p ** first_k - 1) // 2, mu, p)
        g = la.poly_gcd(mu, la.poly_sub(h, np.array([1]), p), p)
        if 0 < la.poly_deg(g) < deg:
            candidates.append(g)
    for g in candidates:
        u = g
        while True:
            q, r = la.poly_divmod(mu, u, p)
            assert la.poly_is_zero(r)
            d = la.poly_gcd(u, q, p)
            if la.poly_deg(d) == 0:
                break
            u = la.poly_mul(u, d, p)
        du = la.poly_deg(u)
        if not (0 < du < deg):
            continue
        v = la.poly_divmod(mu, u, p)[0]
        _, s, t = la.poly_xgcd(u, v, p)
        tv = la.poly_mul(t, v, p)
        # evaluate tv at b inside the corner, with e as the unit
        eps = np.zeros(a.dim, dtype=np.int64)
        power = e.copy()
        for c in tv:
            eps = (eps + int(c) * power) % p
            power = a.multiply(power, b)
        if np.array_equal(eps, np.zeros(a.dim)) or np.array_equal(eps, e):
            continue
        assert np.array_equal(a.multiply(eps, eps), eps)
        return eps
    return None


def radical_and_idempotents(a: Algebra, seed: int = 0,
                            trial_budget: int = DEFAULT_TRIAL_BUDGET
                            ) -> RadicalIdempotentData:
    """Radical basis plus a complete orthogonal primitive idempotent family.

    The semisimple quotient is split deterministically along its
    Frobenius-fixed center; non-commutative blocks are split by seeded
    random elements (distinct-degree extraction of minimal polynomials and a
    CRT idempotent), then everything is Newton-lifted through the radical.

    Raises RandomnessExhausted when the in-block trial budget runs out;
    never returns a wrong answer.
    """
    rad = radical_basis(a)
    if rad.shape[1] == 0:
        bar, section, proj = a, la.identity(a.dim), la.identity(a.dim)
    else:
        bar, section, proj = _quotient_algebra(a, rad)

    center = _center_basis(bar)
    fixed = _frobenius_fixed_basis(bar, center)
    block_count = fixed.shape[1]
    fixed_vectors = la.matmul(center, fixed, a.p)
    central_idems = _split_commutative_fixed(bar, fixed_vectors)
    assert len(central_idems) == block_count

    rng = np.random.default_rng(seed)
    primitive_bar = []
    for e in central_idems:
        stack = [e]
        while stack:
            cur = stack.pop(0)
            corner = _corner(bar, cur)
            if corner.shape[1] == 1 or _corner_is_division(bar, cur, corner):
                primitive_bar.append(cur)
                continue
            eps = None
            for _ in range(trial_budget):
                eps = _try_split_idempotent(bar, cur, corner, rng)
                if eps is not None:
                    break
            if eps is None:
                raise RandomnessExhausted(
                    "idempotent splitting budget exhausted inside a block")
            stack.insert(0, (cur - eps) % a.p)
            stack.insert(0, eps)

    # Newton lifting, sequentially orthogonalized
    lifted: list[np.ndarray] = []
    for ebar in primitive_bar:
        x = la.matmul(section, ebar.reshape(-1, 1), a.p).reshape(-1)
        f = a.unit.copy()
        for done in lifted:
            f = (f - done) % a.p
        x = a.multiply(a.multiply(f, x), f)
        for _ in range(a.dim + 4):
            sq = a.multiply(x, x)
            if np.array_equal(sq, x):
                break
            x = (3 * sq - 2 * a.multiply(sq, x)) % a.p
        else:
            raise AssertionError("idempotent lift failed to converge")
        lifted.append(x)

    total = np.zeros(a.dim, dtype=np.int64)
    for e in lifted:
        total = (total + e) % a.p
    assert np.array_equal(total, a.unit), "lifted idempotents do not sum to 1"
    for i, ei in enumerate(lifted):
        for j, ej in enumerate(lifted):
            prod = a.multiply(ei, ej)
            expected = ei if i == j else np.zeros(a.dim, dtype=np.int64)
            assert np.array_equal(prod, expected)

    data = RadicalIdempotentData(radical_basis=rad, idempotents=lifted,
                                 block_count=block_count, semisimple=bar,
                                 semisimple_section=section)
    return data


def is_semisimple(a: Algebra) -> bool:
    return radical_basis(a).shape[1] == 0
