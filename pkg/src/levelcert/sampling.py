"""Seeded random generation of modules, complexes and chain maps.

Everything takes an explicit numpy Generator so identical seeds give
identical outputs.  Arrow actions are sampled sequentially: each new
action matrix is drawn from the linear subspace compatible with the
relations imposed by the actions already chosen, so no rejection loops are
needed for the monomial relations this package ships; a bounded rejection
loop covers general relations.
"""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, AlgebraError, Matrix, Module, ModuleMap, hom_space
from .complexes import ChainMap, Complex, Piece, assemble_pieces
from .linalg import kernel_basis

__all__ = [
    "random_module",
    "random_module_map",
    "random_complex",
    "random_disk_sum",
    "random_chain_map",
]

MAX_REJECTIONS = 2000


def random_module(
    alg: Algebra, rng: np.random.Generator, max_dim: int = 2
) -> Module:
    """A random module with vertex dimensions up to max_dim."""
    p = alg.p
    for _ in range(MAX_REJECTIONS):
        dims = [int(rng.integers(0, max_dim + 1)) for _ in alg.vertices]
        actions = []
        for a in alg.arrows:
            sv = alg.vertex_index[a.source]
            tv = alg.vertex_index[a.target]
            actions.append(
                Matrix(p, rng.integers(0, p, size=(dims[tv], dims[sv])))
            )
        try:
            return Module(alg, dims, actions)
        except AlgebraError:
            continue
    raise AlgebraError("could not sample a relation-respecting module")


def random_module_map(a: Module, b: Module, rng: np.random.Generator) -> ModuleMap:
    basis = hom_space(a, b)
    f = ModuleMap.zero(a, b)
    p = a.algebra.p
    for h in basis:
        c = int(rng.integers(0, p))
        if c:
            f = f + h.scale(c)
    return f


def _maps_with_zero_composite(
    f: ModuleMap, upper: Module
) -> list[ModuleMap]:
    """Basis of {g in Hom(upper, f.source) : f o g = 0}."""
    basis = hom_space(upper, f.source)
    if not basis:
        return []
    p = f.source.algebra.p
    cols = []
    for h in basis:
        comp = f.compose(h)
        cols.append(
            np.concatenate([blk.array.reshape(-1) for blk in comp.blocks])
            if comp.blocks
            else np.zeros(0, dtype=np.int64)
        )
    system = Matrix(p, np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64))
    combos = kernel_basis(system)
    out = []
    for k in range(combos.cols):
        g = ModuleMap.zero(upper, f.source)
        for i, h in enumerate(basis):
            c = int(combos.array[i, k])
            if c:
                g = g + h.scale(c)
        out.append(g)
    return out


def random_complex(
    alg: Algebra,
    rng: np.random.Generator,
    max_len: int = 4,
    max_dim: int = 2,
    lo_range: tuple[int, int] = (-2, 2),
) -> Complex:
    """A random bounded complex with support length up to max_len.

    Terms are random modules; differentials are drawn from the subspace of
    maps composing to zero with the one below, built from the top down.
    """
    length = int(rng.integers(1, max_len + 1))
    lo = int(rng.integers(lo_range[0], lo_range[1] + 1))
    terms = [random_module(alg, rng, max_dim) for _ in range(length)]
    diffs = []
    prev = None  # the differential leaving the term below
    for k in range(1, length):
        lowerf = diffs[k - 2] if k >= 2 else None
        source = terms[k]
        target = terms[k - 1]
        if lowerf is None:
            g = random_module_map(source, target, rng)
        else:
            options = _maps_with_zero_composite(lowerf, source)
            g = ModuleMap.zero(source, target)
            p = alg.p
            for h in options:
                c = int(rng.integers(0, p))
                if c:
                    g = g + h.scale(c)
        diffs.append(g)
    return Complex(alg, lo, terms, diffs)


def random_disk_sum(
    alg: Algebra,
    rng: np.random.Generator,
    indices: tuple[int, int] = (1, 4),
    max_pieces: int = 3,
    max_dim: int = 2,
) -> tuple[Complex, tuple[Piece, ...]]:
    """A random sum of disks with indices in the given inclusive range."""
    count = int(rng.integers(1, max_pieces + 1))
    degrees = sorted(int(rng.integers(indices[0], indices[1] + 1)) for _ in range(count))
    pieces = tuple(
        Piece("disk", random_module(alg, rng, max_dim), i) for i in degrees
    )
    return assemble_pieces(alg, pieces), pieces


def random_chain_map(
    source: Complex, target: Complex, rng: np.random.Generator
) -> ChainMap:
    """A uniformly random element of the full chain map space.

    Solves the commuting-square system over all degreewise components at
    once and draws a random combination of the solution basis, so every
    chain map (including the cross-degree components between disk sums) is
    reachable.
    """
    alg = source.algebra
    p = alg.p
    degrees = sorted(set(source.support) | set(target.support))
    if not degrees:
        return ChainMap.zero(source, target)
    # variables: hom-space coefficients per degree
    bases = {n: hom_space(source.term(n), target.term(n)) for n in degrees}
    offsets = {}
    total = 0
    for n in degrees:
        offsets[n] = total
        total += len(bases[n])
    if total == 0:
        return ChainMap.zero(source, target)
    rows = []
    for n in degrees:
        # square at degree n: target.diff(n) o phi_n = phi_{n-1} o source.diff(n)
        lower = n - 1
        tgt_mod = target.term(lower)
        src_mod = source.term(n)
        # entries of the map source.term(n) -> target.term(n-1)
        n_entries = sum(
            tgt_mod.dims[v] * src_mod.dims[v] for v in range(len(alg.vertices))
        )
        if n_entries == 0:
            continue
        row_block = np.zeros((n_entries, total), dtype=np.int64)
        for i, h in enumerate(bases[n]):
            comp = target.diff(n).compose(h)
            row_block[:, offsets[n] + i] = np.concatenate(
                [blk.array.reshape(-1) for blk in comp.blocks]
            )
        if lower in bases:
            for i, h in enumerate(bases[lower]):
                comp = h.compose(source.diff(n))
                row_block[:, offsets[lower] + i] -= np.concatenate(
                    [blk.array.reshape(-1) for blk in comp.blocks]
                )
        rows.append(row_block % p)
    if rows:
        system = Matrix(p, np.vstack(rows))
    else:
        system = Matrix.zeros(0, total, p)
    combos = kernel_basis(system)
    comps = {}
    coeffs = rng.integers(0, p, size=combos.cols)
    vec = np.zeros(total, dtype=np.int64)
    for k in range(combos.cols):
        c = int(coeffs[k])
        if c:
            vec = (vec + c * combos.array[:, k]) % p
    for n in degrees:
        f = ModuleMap.zero(source.term(n), target.term(n))
        for i, h in enumerate(bases[n]):
            c = int(vec[offsets[n] + i])
            if c:
                f = f + h.scale(c)
        comps[n] = f
    return ChainMap(source, target, comps)
