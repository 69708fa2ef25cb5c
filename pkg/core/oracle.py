"""
Linear-algebra ground truth for string modules.

Representations are numpy object arrays of exact fractions; ranks,
nullspaces and solves go through sympy so nothing is ever rounded.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from core.ar_translate import tau
from core.ext import ExtCountMismatch, ext_dim
from core.hom_kiss import hom_basis, hom_tau_dim
from core.strings import dimension_vector, enumerate_strings
from core.tau_tilting import fac_contains


class OracleError(ValueError):
    """A constructed representation violates its own invariants."""


@dataclass
class Representation:
    """Vector space dimension per vertex and a matrix per arrow (target x source)."""
    q: object
    dims: dict
    maps: dict

    def dimension_vector(self):
        return {v: d for v, d in self.dims.items() if d}

    @property
    def is_zero(self):
        return not any(self.dims.values())

    def path_map(self, start, path):
        matrix = _identity(self.dims[start])
        for arrow in path:
            matrix = np.dot(self.maps[arrow.id], matrix)
        return matrix


@dataclass
class ProjectivePresentation:
    """P1 -> P0 -> M -> 0; p1 entries map (i, j) to [(coefficient, path a_i -> b_j)]."""
    p0: list
    p1: list
    p1_entries: dict = field(default_factory=dict)
    syzygy: Representation = None


# Exact matrix helpers

def _zeros(rows, cols):
    return np.full((rows, cols), Fraction(0), dtype=object)


def _identity(n):
    matrix = _zeros(n, n)
    for i in range(n):
        matrix[i, i] = Fraction(1)
    return matrix


def _to_sympy(matrix):
    rows, cols = matrix.shape
    return sympy.Matrix(rows, cols, [
        sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in matrix.flat
    ])


def _from_sympy(matrix):
    out = _zeros(matrix.rows, matrix.cols)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            value = sympy.Rational(matrix[i, j])
            out[i, j] = Fraction(int(value.p), int(value.q))
    return out


def rank(matrix):
    if matrix.size == 0:
        return 0
    return _to_sympy(matrix).rank()


def nullspace(matrix, cols):
    """Columns spanning the kernel of a (rows x cols) matrix."""
    if cols == 0:
        return _zeros(0, 0)
    if matrix.shape[0] == 0:
        return _identity(cols)
    vectors = _to_sympy(matrix).nullspace()
    if not vectors:
        return _zeros(cols, 0)
    return _from_sympy(sympy.Matrix.hstack(*vectors))


def coordinates(basis, vectors):
    """Solve basis @ X = vectors for a basis of full column rank."""
    if basis.shape[1] == 0 or vectors.shape[1] == 0:
        return _zeros(basis.shape[1], vectors.shape[1])
    b = _to_sympy(basis)
    solution = (b.T * b).LUsolve(b.T * _to_sympy(vectors))
    return _from_sympy(solution)


def _hstack(blocks, rows):
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return _zeros(rows, 0)
    return np.hstack(blocks)


def _block_diag(blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = _zeros(rows, cols)
    r = c = 0
    for block in blocks:
        out[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return out


# Paths and representations

def paths_from(q, v):
    """Nonzero paths leaving v (traversal order), breadth first, lazy path first."""
    found = [()]
    frontier = [()]
    while frontier:
        grown = []
        for path in frontier:
            end = path[-1].target if path else v
            for arrow in q.outgoing(end):
                if path and q.is_relation(arrow, path[-1]):
                    continue
                grown.append(path + (arrow,))
        found.extend(grown)
        frontier = grown
    return found


def path_end(start, path):
    return path[-1].target if path else start


def paths_between(q, x, y):
    return [p for p in paths_from(q, x) if path_end(x, p) == y]


def concatenate_paths(q, first, second):
    """first then second, or None when the junction is a relation."""
    if first and second and q.is_relation(second[0], first[-1]):
        return None
    return first + second


def _check_relations(rep):
    for relation in rep.q.relations:
        product = np.dot(rep.maps[relation.second.id], rep.maps[relation.first.id])
        if any(x != 0 for x in product.flat):
            raise OracleError(f"relation {relation} does not annihilate the representation")


def rep_of_string(q, w):
    """
    The string module of w: one basis vector per vertex slot, identity maps
    along each letter.
    """
    slots = w.slots()
    index = []
    seen = {}
    for vertex in slots:
        index.append(seen.get(vertex, 0))
        seen[vertex] = seen.get(vertex, 0) + 1
    dims = {v: seen.get(v, 0) for v in q.vertices}
    maps = {a.id: _zeros(dims[a.target], dims[a.source]) for a in q.arrows}
    for k, letter in enumerate(w.letters):
        if letter.direct:
            maps[letter.arrow.id][index[k + 1], index[k]] = Fraction(1)
        else:
            maps[letter.arrow.id][index[k], index[k + 1]] = Fraction(1)
    rep = Representation(q, dims, maps)
    _check_relations(rep)
    return rep


def projective_rep(q, v):
    """P_v with basis the nonzero paths leaving v."""
    paths = paths_from(q, v)
    basis = {x: [p for p in paths if path_end(v, p) == x] for x in q.vertices}
    dims = {x: len(basis[x]) for x in q.vertices}
    maps = {}
    for arrow in q.arrows:
        matrix = _zeros(dims[arrow.target], dims[arrow.source])
        targets = {p: i for i, p in enumerate(basis[arrow.target])}
        for j, p in enumerate(basis[arrow.source]):
            grown = concatenate_paths(q, p, (arrow,))
            if grown is not None:
                matrix[targets[grown], j] = Fraction(1)
        maps[arrow.id] = matrix
    return Representation(q, dims, maps)


def _injective_arrow_map(q, arrow, a):
    """I_a(arrow): rows paths target->a, cols paths source->a, dual of prepending arrow."""
    rows = paths_between(q, arrow.target, a)
    cols = {p: j for j, p in enumerate(paths_between(q, arrow.source, a))}
    matrix = _zeros(len(rows), len(cols))
    for i, p in enumerate(rows):
        grown = concatenate_paths(q, (arrow,), p)
        if grown is not None:
            matrix[i, cols[grown]] = Fraction(1)
    return matrix


def injective_rep(q, a):
    """I_a, dual to the paths ending at a."""
    dims = {x: len(paths_between(q, x, a)) for x in q.vertices}
    maps = {arrow.id: _injective_arrow_map(q, arrow, a) for arrow in q.arrows}
    return Representation(q, dims, maps)


# Hom spaces

def _hom_system(q, m, n):
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += m.dims[v] * n.dims[v]
    blocks = []
    for arrow in q.arrows:
        s, t = arrow.source, arrow.target
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        block = _zeros(rows, total)
        left = np.kron(_identity(m.dims[s]), n.maps[arrow.id])
        right = np.kron(m.maps[arrow.id].T, _identity(n.dims[t]))
        block[:, offsets[s]:offsets[s] + left.shape[1]] += left
        block[:, offsets[t]:offsets[t] + right.shape[1]] -= right
        blocks.append(block)
    system = np.vstack(blocks) if blocks else _zeros(0, total)
    return system, offsets, total


def hom_dim_linear(q, m, n):
    """dim Hom(M, N) as the kernel of the commuting-square equations."""
    system, _, total = _hom_system(q, m, n)
    return total - rank(system)


def hom_space(q, m, n):
    """A basis of Hom(M, N); each element maps vertex -> matrix (N_v x M_v)."""
    system, offsets, total = _hom_system(q, m, n)
    kernel = nullspace(system, total)
    basis = []
    for k in range(kernel.shape[1]):
        vector = kernel[:, k]
        phi = {}
        for v in q.vertices:
            size = m.dims[v] * n.dims[v]
            block = vector[offsets[v]:offsets[v] + size]
            phi[v] = np.array(block, dtype=object).reshape((n.dims[v], m.dims[v]), order='F')
        basis.append(phi)
    return basis


# Projective presentations and the translate

def _top_generators(rep, z):
    """Vectors of M_z completing a basis of the radical at z."""
    incoming = [rep.maps[a.id] for a in rep.q.incoming(z)]
    current = _hstack(incoming, rep.dims[z])
    generators = []
    for i in range(rep.dims[z]):
        unit = _zeros(rep.dims[z], 1)
        unit[i, 0] = Fraction(1)
        extended = _hstack([current, unit], rep.dims[z])
        if rank(extended) > rank(current):
            current = extended
            generators.append(unit[:, 0])
    return generators


def _free_basis(q, heads):
    """Basis of (sum of P_head)_z as (summand index, path) pairs per vertex."""
    basis = {z: [] for z in q.vertices}
    for i, head in enumerate(heads):
        for path in paths_from(q, head):
            basis[path_end(head, path)].append((i, path))
    return basis


def _free_arrow_map(q, basis, arrow):
    targets = {item: k for k, item in enumerate(basis[arrow.target])}
    matrix = _zeros(len(basis[arrow.target]), len(basis[arrow.source]))
    for j, (i, path) in enumerate(basis[arrow.source]):
        grown = concatenate_paths(q, path, (arrow,))
        if grown is not None:
            matrix[targets[(i, grown)], j] = Fraction(1)
    return matrix


def _subrep(q, ambient_maps, kernels):
    dims = {z: kernels[z].shape[1] for z in q.vertices}
    maps = {}
    for arrow in q.arrows:
        image = np.dot(ambient_maps[arrow.id], kernels[arrow.source])
        maps[arrow.id] = coordinates(kernels[arrow.target], image)
    return Representation(q, dims, maps)


def cover_defect(q, rep, heads, generators):
    """
    First vertex where sum P_head -> rep, sending each top to its generator,
    fails to be a projective cover; None if it is one.

    A cover is onto at every vertex and its kernel lies in the radical.
    """
    basis = _free_basis(q, heads)
    for z in q.vertices:
        columns = [
            np.dot(rep.path_map(heads[i], path), generators[i]).reshape(-1, 1)
            for i, path in basis[z]
        ]
        matrix = _hstack(columns, rep.dims[z])
        if rank(matrix) != rep.dims[z]:
            return z
        kernel = nullspace(matrix, len(basis[z]))
        for row, (_, path) in enumerate(basis[z]):
            if not path and any(value != 0 for value in kernel[row]):
                return z
    return None


def projective_presentation(q, m):
    """
    Minimal projective presentation P1 -> P0 -> M -> 0.

    P0 covers the top of M; P1 covers the top of the syzygy ker(P0 -> M).

    Raises:
        OracleError: If either map is not a projective cover
    """
    heads = []
    generators = []
    for z in q.vertices:
        for vector in _top_generators(m, z):
            heads.append(z)
            generators.append(vector)

    basis = _free_basis(q, heads)
    kernels = {}
    for z in q.vertices:
        columns = [
            np.dot(m.path_map(heads[i], path), generators[i]).reshape(-1, 1)
            for i, path in basis[z]
        ]
        p0 = _hstack(columns, m.dims[z])
        kernels[z] = nullspace(p0, len(basis[z]))

    free_maps = {a.id: _free_arrow_map(q, basis, a) for a in q.arrows}
    syzygy = _subrep(q, free_maps, kernels)

    p1 = []
    p1_generators = []
    entries = {}
    for z in q.vertices:
        for vector in _top_generators(syzygy, z):
            j = len(p1)
            p1.append(z)
            p1_generators.append(vector)
            ambient = np.dot(kernels[z], vector)
            for coefficient, (i, path) in zip(ambient, basis[z]):
                if coefficient != 0:
                    entries.setdefault((i, j), []).append((coefficient, path))

    for target, target_heads, target_generators, name in (
        (m, heads, generators, "P0 -> M"),
        (syzygy, p1, p1_generators, "P1 -> syzygy"),
    ):
        z = cover_defect(q, target, target_heads, target_generators)
        if z is not None:
            raise OracleError(f"{name} is not a projective cover at {z}")
    return ProjectivePresentation(heads, p1, entries, syzygy)


def tau_linear(q, m):
    """
    tau M as the kernel of the Nakayama image of the presentation map.

    Returns:
        Representation, all-zero for projective M
    """
    presentation = projective_presentation(q, m)
    if not presentation.p1:
        return Representation(q, {v: 0 for v in q.vertices},
                              {a.id: _zeros(0, 0) for a in q.arrows})

    kernels = {}
    for z in q.vertices:
        rows_per = [paths_between(q, z, a) for a in presentation.p0]
        cols_per = [paths_between(q, z, b) for b in presentation.p1]
        blocks = []
        for i, targets in enumerate(rows_per):
            row = []
            for j, sources in enumerate(cols_per):
                lookup = {p: k for k, p in enumerate(sources)}
                block = _zeros(len(targets), len(sources))
                for coefficient, path in presentation.p1_entries.get((i, j), []):
                    for r, s in enumerate(targets):
                        joined = concatenate_paths(q, s, path)
                        if joined is not None:
                            block[r, lookup[joined]] += coefficient
                row.append(block)
            blocks.append(row)
        total_cols = sum(len(c) for c in cols_per)
        if rows_per and any(rows_per):
            nu = np.vstack([_hstack(row, len(rows_per[i])) for i, row in enumerate(blocks)])
        else:
            nu = _zeros(0, total_cols)
        kernels[z] = nullspace(nu, total_cols)

    ambient = {
        a.id: _block_diag([_injective_arrow_map(q, a, b) for b in presentation.p1])
        for a in q.arrows
    }
    return _subrep(q, ambient, kernels)


def ext1_dim_linear(q, y, x):
    """dim Ext^1(Y, X) from 0 -> syzygy -> P0 -> Y -> 0."""
    presentation = projective_presentation(q, y)
    hom_p0 = sum(x.dims[a] for a in presentation.p0)
    return hom_dim_linear(q, presentation.syzygy, x) - hom_p0 + hom_dim_linear(q, y, x)


def surjection_exists(q, generators, y):
    """True iff the images of all maps from the generators span Y at every vertex."""
    images = {z: [] for z in q.vertices}
    for x in generators:
        for phi in hom_space(q, x, y):
            for z in q.vertices:
                if phi[z].size:
                    images[z].append(phi[z])
    return all(rank(_hstack(images[z], y.dims[z])) == y.dims[z] for z in q.vertices)


# Cross-validation

@dataclass
class CheckRow:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def _pair_checks(args):
    q, x, y = args
    rx, ry = rep_of_string(q, x), rep_of_string(q, y)
    results = {
        'hom': len(hom_basis(q, x, y)) == hom_dim_linear(q, rx, ry),
        'kiss': hom_tau_dim(q, x, y) == hom_dim_linear(q, rx, tau_linear(q, ry)),
    }
    try:
        results['ext'] = ext_dim(q, y, x) == ext1_dim_linear(q, ry, rx)
    except ExtCountMismatch:
        results['ext'] = False
    return results


def cross_check(q, max_len, jobs=1, fac_collections=()):
    """
    Compare every combinatorial count with its linear-algebra counterpart.

    Args:
        q: Gentle BoundQuiver
        max_len: Longest strings compared
        jobs: Worker processes for the pairwise checks
        fac_collections: Collections whose Fac membership is tested

    Returns:
        List of CheckRow (hom, kiss, ext, tau, fac)
    """
    strings = enumerate_strings(q, max_len)
    rows = {name: CheckRow(name) for name in ('hom', 'kiss', 'ext', 'tau', 'fac')}

    for w in strings:
        combinatorial = tau(q, w)
        linear = tau_linear(q, rep_of_string(q, w)).dimension_vector()
        expected = {} if combinatorial.is_zero else dimension_vector(q, combinatorial.value)
        rows['tau'].checked += 1
        if linear != expected:
            rows['tau'].failures.append(str(w))

    pairs = [(q, x, y) for x in strings for y in strings]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_pair_checks, pairs, chunksize=16))
    else:
        outcomes = [_pair_checks(p) for p in pairs]
    for (_, x, y), outcome in zip(pairs, outcomes):
        for name, ok in outcome.items():
            rows[name].checked += 1
            if not ok:
                rows[name].failures.append(f"{x} | {y}")

    if fac_collections:
        for coll in fac_collections:
            generators = coll.modules()
            reps = [rep_of_string(q, g) for g in generators]
            for w in strings:
                if w.length > 3:
                    continue
                rows['fac'].checked += 1
                if fac_contains(q, generators, w) != surjection_exists(q, reps, rep_of_string(q, w)):
                    rows['fac'].failures.append(f"{coll.label()} | {w}")
    return list(rows.values())
