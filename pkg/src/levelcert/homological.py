"""Module-level homological tools: decomposition, add-membership, syzygies,
and dimensions relative to an additive generator.

Randomized searches (Fitting splittings, isomorphism hunting) take explicit
seeds and fall back to exhaustive enumeration whenever the search space is
small, so all results are reproducible bit for bit.  The enumeration
threshold ENUM_LIMIT bounds the number of coefficient vectors tried
exhaustively; above it a fixed number of seeded random trials is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraError,
    Module,
    ModuleMap,
    direct_sum,
    hom_space,
    image,
    indecomposable_projective,
    kernel,
    projective_cover,
)
from .linalg import Matrix, hstack, inverse, rank

__all__ = [
    "DEFAULT_CAP",
    "ENUM_LIMIT",
    "RANDOM_TRIALS",
    "Decomposition",
    "decompose",
    "modules_isomorphic",
    "Generator",
    "GeneratorError",
    "make_generator",
    "InAddVerdict",
    "in_add",
    "syzygy",
    "XDimStep",
    "XDimReport",
    "xdim",
    "SampleCheck",
    "SemiResolvingReport",
    "check_semi_resolving_samples",
]

DEFAULT_CAP = 32
ENUM_LIMIT = 4096
RANDOM_TRIALS = 512


class GeneratorError(AlgebraError):
    """The declared generator is unusable (projectives not in add M)."""


def _rng_for(seed: int, *tags: int) -> np.random.Generator:
    mixed = np.uint64(seed & 0xFFFFFFFF)
    for t in tags:
        mixed = np.uint64((int(mixed) * 1000003 + (t & 0xFFFFFFFF)) % (2**63))
    return np.random.default_rng(int(mixed))


def _combinations(p: int, k: int):
    """All nonzero coefficient vectors in F_p^k, lexicographically."""
    vec = [0] * k
    total = p**k
    for _ in range(total - 1):
        i = k - 1
        while True:
            vec[i] += 1
            if vec[i] < p:
                break
            vec[i] = 0
            i -= 1
        yield tuple(vec)


def _endo_candidates(basis, p: int, seed: int):
    """Endomorphisms to try: basis first, then exhaustive combinations when
    the space is small, else seeded random combinations."""
    k = len(basis)
    yield from basis
    if k == 0:
        return
    if p**k <= ENUM_LIMIT:
        for coeffs in _combinations(p, k):
            if sum(1 for c in coeffs if c) <= 1:
                continue  # basis vectors already tried
            yield _combine(basis, coeffs)
    else:
        rng = _rng_for(seed, k)
        for _ in range(RANDOM_TRIALS):
            coeffs = tuple(int(c) for c in rng.integers(0, p, size=k))
            if not any(coeffs):
                continue
            yield _combine(basis, coeffs)


def _combine(basis, coeffs) -> ModuleMap:
    f = None
    for c, b in zip(coeffs, basis):
        if not c:
            continue
        term = b.scale(c)
        f = term if f is None else f + term
    if f is None:
        f = ModuleMap.zero(basis[0].source, basis[0].target)
    return f


def _power(f: ModuleMap, n: int) -> ModuleMap:
    """f composed with itself at least n times (rounded up to a power of 2)."""
    g = f
    k = 1
    while k < n:
        g = g.compose(g)
        k *= 2
    return g


def _try_split(m: Module, seed: int):
    """Find a Fitting splitting m = ker(f^N) + im(f^N), or None.

    Returns ((k, incl_k), (i, incl_i)) with both parts nonzero.  When no
    tried endomorphism splits, every one of them was nilpotent or
    invertible, which is the local-endomorphism-ring witness.
    """
    n = m.total_dim
    basis = hom_space(m, m)
    for f in _endo_candidates(basis, m.algebra.p, seed):
        g = _power(f, max(n, 1))
        r = sum(rank(b) for b in g.blocks)
        if 0 < r < n:
            k, incl_k = kernel(g)
            i, incl_i, _ = image(g)
            return (k, incl_k), (i, incl_i)
    return None


@dataclass(frozen=True)
class Decomposition:
    """A verified decomposition into indecomposables.

    pairs groups the parts up to isomorphism with multiplicities; parts
    lists every indecomposable leaf in order; into/out_of are the mutually
    inverse maps between the assembled sum and the original module.
    """

    module: Module
    pairs: tuple[tuple[Module, int], ...]
    parts: tuple[Module, ...]
    into: ModuleMap  # sum of parts -> module
    out_of: ModuleMap  # module -> sum of parts


def decompose(m: Module, seed: int = 0) -> Decomposition:
    """Split a module into indecomposable summands by Fitting's lemma.

    Endomorphisms are drawn from the computed endomorphism basis plus
    seeded combinations; any f with 0 < rank(f^N) < dim splits the module
    along ker(f^N) and im(f^N).  The process recurses until nothing splits,
    then the assembled isomorphism pair is verified exactly.
    """
    alg = m.algebra
    leaves: list[tuple[Module, ModuleMap]] = []

    def walk(part: Module, incl: ModuleMap, depth: int) -> None:
        if part.is_zero():
            return
        split = _try_split(part, seed + depth)
        if split is None:
            leaves.append((part, incl))
            return
        (k, incl_k), (i, incl_i) = split
        walk(k, incl.compose(incl_k), depth + 1)
        walk(i, incl.compose(incl_i), depth + 2)

    walk(m, ModuleMap.identity(m), 0)
    parts = tuple(part for part, _ in leaves)
    total, injs, _ = direct_sum(alg, list(parts))
    blocks = []
    for v in range(len(alg.vertices)):
        cols = [incl.blocks[v] for _, incl in leaves]
        if cols:
            blocks.append(hstack(cols))
        else:
            blocks.append(Matrix.zeros(m.dims[v], 0, alg.p))
    into = ModuleMap(total, m, blocks)
    inv_blocks = []
    for b in into.blocks:
        ib = inverse(b)
        if ib is None:
            raise AlgebraError("decomposition assembly is not invertible (internal error)")
        inv_blocks.append(ib)
    out_of = ModuleMap(m, total, inv_blocks)
    if into.compose(out_of) != ModuleMap.identity(m) or out_of.compose(
        into
    ) != ModuleMap.identity(total):
        raise AlgebraError("decomposition round trip failed (internal error)")

    grouped: list[tuple[Module, int]] = []
    for part in parts:
        for idx, (rep, count) in enumerate(grouped):
            if modules_isomorphic(rep, part, seed) is not None:
                grouped[idx] = (rep, count + 1)
                break
        else:
            grouped.append((part, 1))
    return Decomposition(m, tuple(grouped), parts, into, out_of)


def modules_isomorphic(a: Module, b: Module, seed: int = 0) -> ModuleMap | None:
    """An isomorphism a -> b, or None if none is found.

    Requires equal dimension vectors, then hunts for an invertible element
    of Hom(a, b): exhaustively when p^dim Hom is below ENUM_LIMIT, else by
    seeded random trials (which can in principle miss; the exhaustive
    regime covers everything this package ships).
    """
    if a.algebra != b.algebra:
        raise AlgebraError("isomorphism test needs a common algebra")
    if a.dims != b.dims:
        return None
    if a.total_dim == 0:
        return ModuleMap.zero(a, b)
    basis = hom_space(a, b)
    k = len(basis)
    if k == 0:
        return None
    p = a.algebra.p
    if p**k <= ENUM_LIMIT:
        for coeffs in _combinations(p, k):
            f = _combine(basis, coeffs)
            if f.is_isomorphism():
                return f
    else:
        rng = _rng_for(seed, k, a.total_dim)
        for _ in range(RANDOM_TRIALS):
            coeffs = tuple(int(c) for c in rng.integers(0, p, size=k))
            if not any(coeffs):
                continue
            f = _combine(basis, coeffs)
            if f.is_isomorphism():
                return f
    return None


@dataclass(frozen=True)
class Generator:
    """An additive generator M, with X = add M.

    The indecomposable summands are computed once at construction; the
    semi-resolving property is declared by the caller and only empirically
    refutable (see check_semi_resolving_samples).
    """

    module: Module
    summands: tuple[Module, ...]
    declared_semi_resolving: bool


def make_generator(
    m: Module, declared_semi_resolving: bool = True, seed: int = 0
) -> Generator:
    """Build a generator and verify that every indecomposable projective
    lies in add M; a violation is a hard error."""
    if m.is_zero():
        raise GeneratorError("the zero module generates nothing")
    dec = decompose(m, seed)
    summands = tuple(rep for rep, _ in dec.pairs)
    gen = Generator(m, summands, declared_semi_resolving)
    for v in m.algebra.vertices:
        pv = indecomposable_projective(m.algebra, v)
        verdict = in_add(pv, gen, seed)
        if not verdict.ok:
            raise GeneratorError(
                f"projective at vertex {v!r} is not in add M; "
                "the generator cannot witness a resolving subcategory"
            )
    return gen


@dataclass(frozen=True)
class InAddVerdict:
    ok: bool
    multiplicities: tuple[int, ...] | None  # per generator summand
    failing: Module | None

    def __bool__(self) -> bool:
        return self.ok


def in_add(m: Module, gen: Generator, seed: int = 0) -> InAddVerdict:
    """Decide membership in add M by matching indecomposable summands."""
    if m.algebra != gen.module.algebra:
        raise AlgebraError("in_add needs a common algebra")
    mults = [0] * len(gen.summands)
    if m.is_zero():
        return InAddVerdict(True, tuple(mults), None)
    dec = decompose(m, seed)
    for part, count in dec.pairs:
        for idx, summand in enumerate(gen.summands):
            if modules_isomorphic(part, summand, seed) is not None:
                mults[idx] += count
                break
        else:
            return InAddVerdict(False, None, part)
    return InAddVerdict(True, tuple(mults), None)


def syzygy(m: Module, n: int) -> Module:
    """n-th kernel of iterated canonical projective covers (n = 0 gives m).

    This is the iterated-kernel reading of the n-th syzygy.  The other
    common reading (modules embedding into a length-n chain of
    projectives) agrees up to projective summands for cover kernels but is
    a different set condition; only the iterated-kernel version is
    implemented.
    """
    if n < 0:
        raise ValueError("syzygy index must be nonnegative")
    cur = m
    for _ in range(n):
        cur = projective_cover(cur).kernel
    return cur


@dataclass(frozen=True)
class XDimStep:
    cover: Module
    kernel: Module
    verdict: InAddVerdict


@dataclass(frozen=True)
class XDimReport:
    """The resolution trace computing the dimension of a module relative
    to add M.

    value None means the cap was exceeded (a legitimate outcome standing
    for an infinite dimension, never an exception).  The computed value is
    exact whenever add M really is semi-resolving; the report records that
    the caller declared it so.
    """

    subject: Module
    generator: Generator
    cap: int
    value: int | None
    initial: InAddVerdict
    steps: tuple[XDimStep, ...]
    conditional_on_semi_resolving: bool

    @property
    def exceeded(self) -> bool:
        return self.value is None


def xdim(m: Module, gen: Generator, cap: int = DEFAULT_CAP, seed: int = 0) -> XDimReport:
    """Dimension of m relative to add M via projective-cover kernels.

    The trace runs m, K1 = ker(cover(m)), K2, ... and stops at the first
    kernel lying in add M.  For a semi-resolving add M this computes the
    true relative dimension; in general it is an upper-bound procedure
    conditional on the declared flag.
    """
    first = in_add(m, gen, seed)
    if first.ok:
        return XDimReport(m, gen, cap, 0, first, (), gen.declared_semi_resolving)
    steps: list[XDimStep] = []
    cur = m
    for t in range(1, cap + 1):
        cover = projective_cover(cur)
        k = cover.kernel
        verdict = in_add(k, gen, seed)
        steps.append(XDimStep(cover.projective, k, verdict))
        if verdict.ok:
            return XDimReport(
                m, gen, cap, t, first, tuple(steps), gen.declared_semi_resolving
            )
        cur = k
    return XDimReport(m, gen, cap, None, first, tuple(steps), gen.declared_semi_resolving)


@dataclass(frozen=True)
class SampleCheck:
    sample: Module
    status: str  # "pass" | "fail" | "indeterminate"
    detail: str
    subject_value: int | None
    kernel_value: int | None


@dataclass(frozen=True)
class SemiResolvingReport:
    generator: Generator
    checks: tuple[SampleCheck, ...]

    @property
    def refuted(self) -> bool:
        return any(c.status == "fail" for c in self.checks)


def check_semi_resolving_samples(
    gen: Generator,
    samples: list[Module],
    cap: int = DEFAULT_CAP,
    seed: int = 0,
) -> SemiResolvingReport:
    """Empirically test the semi-resolving dichotomy on sample modules.

    For each sample A with cover kernel K: if A is in add M then K must be
    too, otherwise the relative dimension must drop by exactly one.  This
    refutes a false declaration; it can never prove the property.
    """
    checks = []
    for sample in samples:
        cover = projective_cover(sample)
        k = cover.kernel
        if in_add(sample, gen, seed).ok:
            ok = in_add(k, gen, seed).ok
            checks.append(
                SampleCheck(
                    sample,
                    "pass" if ok else "fail",
                    "sample in add M; kernel " + ("in add M" if ok else "NOT in add M"),
                    0,
                    0 if ok else None,
                )
            )
            continue
        xa = xdim(sample, gen, cap, seed)
        if xa.exceeded:
            checks.append(
                SampleCheck(sample, "indeterminate", f"sample exceeds cap {cap}", None, None)
            )
            continue
        xk = xdim(k, gen, cap, seed)
        if xk.exceeded:
            checks.append(
                SampleCheck(
                    sample,
                    "fail",
                    f"kernel exceeds cap {cap} but sample has value {xa.value}",
                    xa.value,
                    None,
                )
            )
            continue
        ok = xk.value == xa.value - 1
        checks.append(
            SampleCheck(
                sample,
                "pass" if ok else "fail",
                f"sample value {xa.value}, kernel value {xk.value}"
                + ("" if ok else " (expected one less)"),
                xa.value,
                xk.value,
            )
        )
    return SemiResolvingReport(gen, tuple(checks))
