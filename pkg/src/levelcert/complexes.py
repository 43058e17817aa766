"""Bounded homologically graded complexes over a module category.

Complexes are graded so the differential lowers degree: f_n maps the term
in degree n to the term in degree n - 1.  A disk on M at index i is the
complex with M in degrees i and i - 1 and the identity between them; a
stalk is M concentrated in one degree.  Complexes are normalized to
minimal support (zero terms trimmed at both ends) so structural equality
is meaningful.

All homology computations return explicit witnessing maps, and the
quasi-isomorphism test constructs the induced maps on homology rather than
going through mapping cones; the witnesses are reused by the certificate
machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    AlgebraError,
    Module,
    ModuleMap,
    cokernel,
    direct_sum,
    factor_through_mono,
    image,
    kernel,
    projective_cover,
    solve_left_composition,
)
from .linalg import Matrix, hstack, rank, solve

__all__ = [
    "Complex",
    "ChainMap",
    "ShortExactSequence",
    "ComplexError",
    "ConcentrationError",
    "DiskShapeError",
    "stalk",
    "disk",
    "evaluate",
    "cycles",
    "boundaries",
    "Homology",
    "homology",
    "homology_map",
    "is_quasi_iso",
    "kernel_of_chain_map",
    "Piece",
    "assemble_pieces",
    "disk_profile",
    "ProjectiveEpi",
    "projective_epi",
    "StalkReduction",
    "kernel_stalk_reduce",
]


class ComplexError(AlgebraError):
    pass


class DiskShapeError(ComplexError):
    """The operand is not a canonical sum of disks with positive indices."""


class ConcentrationError(ComplexError):
    """Kernel homology failed to concentrate in degree zero.

    This diagnostic is always surfaced, never swallowed: it marks inputs on
    which the single-stalk reduction is simply not available.
    """

    def __init__(self, degrees):
        self.degrees = tuple(degrees)
        super().__init__(
            "kernel homology does not vanish outside degree 0 "
            f"(nonzero in degrees {list(self.degrees)})"
        )


class Complex:
    """A bounded complex, normalized to minimal support."""

    __slots__ = ("algebra", "lo", "terms", "diffs")

    def __init__(self, algebra: Algebra, lo: int, terms, diffs) -> None:
        terms = list(terms)
        diffs = list(diffs)
        if len(diffs) != max(0, len(terms) - 1):
            raise ComplexError("need exactly one differential per adjacent pair")
        # trim zero terms at both ends
        while terms and terms[-1].is_zero():
            terms.pop()
            if diffs:
                diffs.pop()
        while terms and terms[0].is_zero():
            terms.pop(0)
            lo += 1
            if diffs:
                diffs.pop(0)
        for t in terms:
            if t.algebra != algebra:
                raise ComplexError("terms must live over the one algebra")
        for k, d in enumerate(diffs):
            # diffs[k]: term at degree lo+k+1 -> term at degree lo+k
            if d.source != terms[k + 1] or d.target != terms[k]:
                raise ComplexError(f"differential {k} has wrong endpoints")
        for k in range(len(diffs) - 1):
            if not diffs[k].compose(diffs[k + 1]).is_zero():
                raise ComplexError("differentials do not square to zero")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "lo", lo if terms else 0)
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "diffs", tuple(diffs))

    def __setattr__(self, name, value):
        raise AttributeError("Complex is immutable")

    @classmethod
    def zero(cls, algebra: Algebra) -> "Complex":
        return cls(algebra, 0, (), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> range:
        return range(self.lo, self.lo + len(self.terms))

    def term(self, n: int) -> Module:
        if n in self.support:
            return self.terms[n - self.lo]
        return Module.zero(self.algebra)

    def diff(self, n: int) -> ModuleMap:
        """The differential from degree n to degree n - 1."""
        k = n - self.lo - 1
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return ModuleMap.zero(self.term(n), self.term(n - 1))

    def total_dim(self) -> int:
        return sum(t.total_dim for t in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.lo == other.lo
            and self.terms == other.terms
            and self.diffs == other.diffs
        )

    def __hash__(self):
        return hash((self.lo, self.terms))

    def __repr__(self):
        if self.is_zero():
            return "Complex(0)"
        dims = {n: self.term(n).dims for n in self.support}
        return f"Complex(lo={self.lo}, dims={dims})"


def stalk(m: Module, i: int) -> Complex:
    return Complex(m.algebra, i, (m,), ())


def disk(m: Module, i: int) -> Complex:
    """m in degrees i and i - 1 with the identity differential; acyclic."""
    if m.is_zero():
        return Complex.zero(m.algebra)
    return Complex(m.algebra, i - 1, (m, m), (ModuleMap.identity(m),))


def evaluate(a: Complex, i: int) -> Module:
    return a.term(i)


class ChainMap:
    """A degreewise family of module maps with commuting squares."""

    __slots__ = ("source", "target", "lo", "parts")

    def __init__(self, source: Complex, target: Complex, components: dict[int, ModuleMap]):
        if source.algebra != target.algebra:
            raise ComplexError("chain map needs a common algebra")
        degrees = [n for n in components]
        for n in degrees:
            c = components[n]
            if c.source != source.term(n) or c.target != target.term(n):
                raise ComplexError(f"component at degree {n} has wrong endpoints")
        los = [c.lo for c in (source, target) if not c.is_zero()]
        his = [c.hi for c in (source, target) if not c.is_zero()]
        lo = min(los) if los else 0
        hi = max(his) if his else -1
        parts = []
        for n in range(lo, hi + 1):
            c = components.get(n)
            if c is None:
                c = ModuleMap.zero(source.term(n), target.term(n))
            parts.append(c)
        # commuting squares, including the boundary degrees
        for n in range(lo, hi + 2):
            cn = parts[n - lo] if lo <= n <= hi else ModuleMap.zero(
                source.term(n), target.term(n)
            )
            cn1 = parts[n - 1 - lo] if lo <= n - 1 <= hi else ModuleMap.zero(
                source.term(n - 1), target.term(n - 1)
            )
            lhs = target.diff(n).compose(cn)
            rhs = cn1.compose(source.diff(n))
            if lhs != rhs:
                raise ComplexError(f"square at degree {n} does not commute")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "parts", tuple(parts))

    def __setattr__(self, name, value):
        raise AttributeError("ChainMap is immutable")

    @classmethod
    def identity(cls, c: Complex) -> "ChainMap":
        return cls(c, c, {n: ModuleMap.identity(c.term(n)) for n in c.support})

    @classmethod
    def zero(cls, source: Complex, target: Complex) -> "ChainMap":
        return cls(source, target, {})

    def component(self, n: int) -> ModuleMap:
        k = n - self.lo
        if 0 <= k < len(self.parts):
            return self.parts[k]
        return ModuleMap.zero(self.source.term(n), self.target.term(n))

    def compose(self, inner: "ChainMap") -> "ChainMap":
        if inner.target != self.source:
            raise ComplexError("chain map composition endpoint mismatch")
        degrees = set(inner.source.support) | set(self.target.support)
        comps = {
            n: self.component(n).compose(inner.component(n)) for n in degrees
        }
        return ChainMap(inner.source, self.target, comps)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degrees = set(self.source.support) | set(self.target.support)
        return all(self.component(n) == other.component(n) for n in degrees)

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return f"ChainMap(lo={self.lo}, degrees={len(self.parts)})"


@dataclass(frozen=True)
class ShortExactSequence:
    """Degreewise short exact sequence of complexes, validated on creation."""

    inclusion: ChainMap  # X -> Y
    projection: ChainMap  # Y -> Z

    def __post_init__(self):
        if self.inclusion.target != self.projection.source:
            raise ComplexError("short exact sequence middle terms differ")
        x, y, z = self.sub, self.middle, self.quotient
        degrees = set(x.support) | set(y.support) | set(z.support)
        for n in degrees:
            i_n = self.inclusion.component(n)
            p_n = self.projection.component(n)
            if not p_n.compose(i_n).is_zero():
                raise ComplexError(f"composite is nonzero at degree {n}")
            for v in range(len(y.algebra.vertices)):
                di = rank(i_n.blocks[v])
                dp = rank(p_n.blocks[v])
                if di != x.term(n).dims[v]:
                    raise ComplexError(f"inclusion not injective at degree {n}")
                if dp != z.term(n).dims[v]:
                    raise ComplexError(f"projection not surjective at degree {n}")
                if y.term(n).dims[v] != di + dp:
                    raise ComplexError(f"not exact at degree {n}")

    @property
    def sub(self) -> Complex:
        return self.inclusion.source

    @property
    def middle(self) -> Complex:
        return self.inclusion.target

    @property
    def quotient(self) -> Complex:
        return self.projection.target


def cycles(a: Complex, n: int) -> tuple[Module, ModuleMap]:
    """Kernel of the outgoing differential, with its inclusion."""
    return kernel(a.diff(n))


def boundaries(a: Complex, n: int) -> tuple[Module, ModuleMap]:
    """Image of the incoming differential, with its inclusion."""
    img, mono, _ = image(a.diff(n + 1))
    return img, mono


@dataclass(frozen=True)
class Homology:
    module: Module
    cycle_incl: ModuleMap  # cycles -> term
    quotient: ModuleMap  # cycles -> homology


def homology(a: Complex, n: int) -> Homology:
    """H_n = cycles / boundaries, with witnessing maps."""
    z, z_incl = cycles(a, n)
    b, b_incl = boundaries(a, n)
    j = factor_through_mono(b_incl, z_incl)
    h, proj = cokernel(j)
    return Homology(h, z_incl, proj)


def homology_map(phi: ChainMap, n: int) -> ModuleMap:
    """The induced map H_n(source) -> H_n(target)."""
    hs = homology(phi.source, n)
    ht = homology(phi.target, n)
    mapped = phi.component(n).compose(hs.cycle_incl)
    on_cycles = factor_through_mono(mapped, ht.cycle_incl)
    # descend through the surjection hs.quotient
    lifted = ht.quotient.compose(on_cycles)
    blocks = []
    for qb, lb in zip(hs.quotient.blocks, lifted.blocks):
        sol = solve(qb.T, lb.T)
        if sol is None:
            raise ComplexError("homology map descent failed (internal error)")
        blocks.append(sol.T)
    return ModuleMap(hs.module, ht.module, blocks)


def is_quasi_iso(phi: ChainMap) -> bool:
    """True iff the induced homology maps are isomorphisms in all degrees."""
    degrees = set(phi.source.support) | set(phi.target.support)
    for n in degrees:
        h = homology_map(phi, n)
        if not h.is_isomorphism():
            return False
    return True


def kernel_of_chain_map(phi: ChainMap) -> tuple[Complex, ChainMap]:
    """Degreewise kernel with induced differentials and its inclusion."""
    src = phi.source
    degrees = list(src.support)
    mods: dict[int, Module] = {}
    incls: dict[int, ModuleMap] = {}
    for n in degrees:
        k, incl = kernel(phi.component(n))
        mods[n] = k
        incls[n] = incl
    terms = []
    diffs = []
    for n in degrees:
        terms.append(mods[n])
    for idx in range(len(degrees) - 1):
        n = degrees[idx + 1]
        lower = degrees[idx]
        mapped = src.diff(n).compose(incls[n])
        d = factor_through_mono(mapped, incls[lower])
        diffs.append(d)
    if not degrees:
        k = Complex.zero(src.algebra)
        return k, ChainMap.zero(k, src)
    k = Complex(src.algebra, degrees[0], terms, diffs)
    comps = {n: incls[n] for n in k.support}
    return k, ChainMap(k, src, comps)


# ---------------------------------------------------------------------------
# Disk and stalk sums


@dataclass(frozen=True)
class Piece:
    """One building block of a split complex: a stalk or a disk."""

    kind: str  # "stalk" | "disk"
    module: Module
    degree: int

    def __post_init__(self):
        if self.kind not in ("stalk", "disk"):
            raise ComplexError(f"unknown piece kind {self.kind!r}")

    def complex(self) -> Complex:
        return stalk(self.module, self.degree) if self.kind == "stalk" else disk(
            self.module, self.degree
        )


def assemble_pieces(algebra: Algebra, pieces) -> Complex:
    """The direct sum of stalk and disk pieces, in the listed order.

    At each degree the term is the direct sum of the pieces' contributions
    (disk at i contributes its module at degrees i and i - 1), concatenated
    in piece order; differentials send each disk's top copy identically to
    its bottom copy.
    """
    pieces = list(pieces)
    live = [p for p in pieces if not p.module.is_zero()]
    if not live:
        return Complex.zero(algebra)
    lo = min(p.degree - (1 if p.kind == "disk" else 0) for p in live)
    hi = max(p.degree for p in live)
    contributions: dict[int, list[tuple[int, str]]] = {n: [] for n in range(lo, hi + 1)}
    for idx, p in enumerate(live):
        if p.kind == "stalk":
            contributions[p.degree].append((idx, "stalk"))
        else:
            contributions[p.degree].append((idx, "top"))
            contributions[p.degree - 1].append((idx, "bottom"))
    terms = []
    offsets: dict[int, dict[tuple[int, str], int]] = {}
    for n in range(lo, hi + 1):
        mods = [live[idx].module for idx, _ in contributions[n]]
        total, _, _ = direct_sum(algebra, mods)
        terms.append(total)
        offs = {}
        running = [0] * len(algebra.vertices)
        for (idx, role), m in zip(contributions[n], mods):
            offs[(idx, role)] = tuple(running)
            for v in range(len(algebra.vertices)):
                running[v] += m.dims[v]
        offsets[n] = offs
    diffs = []
    p_mod = algebra.p
    for n in range(lo + 1, hi + 1):
        src = terms[n - lo]
        tgt = terms[n - 1 - lo]
        blocks = []
        for v in range(len(algebra.vertices)):
            arr = np.zeros((tgt.dims[v], src.dims[v]), dtype=np.int64)
            for idx, role in contributions[n]:
                if role != "top":
                    continue
                if (idx, "bottom") not in offsets[n - 1]:
                    continue
                srow = offsets[n][(idx, "top")][v]
                trow = offsets[n - 1][(idx, "bottom")][v]
                d = live[idx].module.dims[v]
                arr[trow : trow + d, srow : srow + d] = np.eye(d, dtype=np.int64)
            blocks.append(Matrix(p_mod, arr))
        diffs.append(ModuleMap(src, tgt, blocks))
    return Complex(algebra, lo, terms, diffs)


def disk_profile(c: Complex) -> tuple[Piece, ...] | None:
    """Recognize a canonical assembly of disks; None if the shape differs.

    The profile is forced: the top term is all tops, and lower down the
    module of the disk at index n is whatever is left after removing the
    bottom copy of the disk at index n + 1.  The differential must be the
    canonical top-to-bottom block and the term actions must be block
    diagonal for the complex to literally equal the reassembled sum.
    """
    if c.is_zero():
        return ()
    alg = c.algebra
    nvert = len(alg.vertices)
    tops: dict[int, tuple[int, ...]] = {}
    upper = tuple([0] * nvert)
    for n in range(c.hi, c.lo - 1, -1):
        dims = c.term(n).dims
        top = tuple(d - u for d, u in zip(dims, upper))
        if any(t < 0 for t in top):
            return None
        tops[n] = top
        upper = top
    if any(t for t in tops.get(c.lo, ())):
        return None  # bottom degree must be pure bottoms
    pieces = []
    for n in range(c.lo + 1, c.hi + 1):
        top = tops[n]
        if not any(top):
            continue
        # extract the candidate disk module from the top block of degree n
        term = c.term(n)
        actions = []
        ok = True
        for ai, arrow in enumerate(alg.arrows):
            sv = alg.vertex_index[arrow.source]
            tv = alg.vertex_index[arrow.target]
            act = term.actions[ai].array
            t_rows, t_cols = top[tv], top[sv]
            if act[t_rows:, :t_cols].any() or act[:t_rows, t_cols:].any():
                ok = False
                break
            actions.append(Matrix(alg.p, act[:t_rows, :t_cols]))
        if not ok:
            return None
        try:
            mod = Module(alg, top, actions)
        except AlgebraError:
            return None
        pieces.append(Piece("disk", mod, n))
    rebuilt = assemble_pieces(alg, pieces)
    if rebuilt != c:
        return None
    return tuple(pieces)


@dataclass(frozen=True)
class ProjectiveEpi:
    """A degreewise-surjective map from a sum of disks on projective covers."""

    pieces: tuple[Piece, ...]
    cover: Complex
    epi: ChainMap
    kernel: Complex
    inclusion: ChainMap
    ses: ShortExactSequence


def projective_epi(a: Complex) -> ProjectiveEpi:
    """Cover a complex by a sum of disks, surjectively in every degree.

    The disk at index i already covers the boundaries one degree down, so
    the disk module at i only needs to cover the cokernel of the incoming
    boundary: it is the projective cover of A_i / B_i, with top map a lift
    of that cover through the quotient.  This keeps the kernel as small as
    possible; in particular a disk on a projective is covered isomorphically.
    """
    alg = a.algebra
    tops: dict[int, ModuleMap] = {}  # n -> t_n: Q_n -> A_n
    for n in a.support:
        term = a.term(n)
        if term.is_zero():
            continue
        b_mod, b_incl = boundaries(a, n)
        coker, proj = cokernel(b_incl)
        if coker.is_zero():
            continue
        cover = projective_cover(coker)
        lift = solve_left_composition(proj, cover.epi)
        if lift is None:
            raise ComplexError("cover lift failed (internal error)")
        tops[n] = lift
    pieces = tuple(Piece("disk", tops[n].source, n) for n in sorted(tops))
    total = assemble_pieces(alg, pieces)
    # epi components: at degree n the contributions, in piece order, are the
    # top of disk n (t_n) and the bottom of disk n+1 (f_{n+1} o t_{n+1}).
    comps: dict[int, ModuleMap] = {}
    for n in total.support:
        srcs = []
        if n in tops:
            srcs.append(("top", n))
        if n + 1 in tops:
            srcs.append(("bottom", n + 1))
        blocks = []
        for v in range(len(alg.vertices)):
            mats = []
            for role, i in srcs:
                if role == "top":
                    mats.append(tops[i].blocks[v])
                else:
                    mats.append(a.diff(i).compose(tops[i]).blocks[v])
            if mats:
                blocks.append(hstack(mats))
            else:
                blocks.append(Matrix.zeros(a.term(n).dims[v], 0, alg.p))
        comps[n] = ModuleMap(total.term(n), a.term(n), blocks)
    epi = ChainMap(total, a, comps)
    ker, incl = kernel_of_chain_map(epi)
    ses = ShortExactSequence(incl, epi)
    return ProjectiveEpi(pieces, total, epi, ker, incl, ses)


@dataclass(frozen=True)
class StalkReduction:
    kernel: Complex
    stalk: Complex
    reduction: ChainMap  # kernel -> stalk


def kernel_stalk_reduce(phi: ChainMap) -> StalkReduction:
    """Reduce the kernel of a map between positive-index disk sums to the
    degree-zero stalk of its homology.

    Requires both endpoints to be canonical disk sums with indices >= 1.
    The kernel's homology is computed in every degree; if it fails to
    vanish away from zero a ConcentrationError is raised (such kernels
    exist, e.g. a map hitting only the bottom of a higher disk), otherwise
    the natural projection onto the degree-zero homology stalk is built and
    verified to be a quasi-isomorphism.
    """
    for side, cplx in (("source", phi.source), ("target", phi.target)):
        profile = disk_profile(cplx)
        if profile is None:
            raise DiskShapeError(f"{side} is not a canonical sum of disks")
        if any(p.degree < 1 for p in profile):
            raise DiskShapeError(f"{side} has a disk with index < 1")
    k, _ = kernel_of_chain_map(phi)
    bad = []
    h0 = None
    for n in k.support:
        h = homology(k, n)
        if n == 0:
            h0 = h
        elif not h.module.is_zero():
            bad.append(n)
    if bad:
        raise ConcentrationError(bad)
    if k.is_zero() or h0 is None:
        target = Complex.zero(phi.source.algebra)
        rho = ChainMap.zero(k, target)
        return StalkReduction(k, target, rho)
    target = stalk(h0.module, 0)
    # in the kernel of a positive-index disk sum map the bottom degree is 0,
    # so every degree-0 element is a cycle and the natural map is the
    # homology quotient on cycles.
    if k.term(0) != h0.cycle_incl.source:
        raise ComplexError("degree-0 cycles do not fill the term (internal error)")
    rho = ChainMap(k, target, {0: h0.quotient})
    if not is_quasi_iso(rho):
        raise ComplexError("stalk reduction failed to verify (internal error)")
    return StalkReduction(k, target, rho)
