"""Line-oriented structured text formats for every serializable object.

The grammar is a tree of blocks:

    begin <kind> [args...]
    <field> <value> [value...]
    ...
    end <kind>

Tokens are whitespace separated; lines starting with '#' are comments;
indentation is ignored on input and emitted for readability on output.
All numeric payloads are integers (field elements are residues in
[0, p)); matrices declare their shape and list rows.  Writing is
deterministic, so every object survives a write/read/write round trip
byte for byte.

Paths in relations are written with dots and compose left to right:
"a.b" means first a, then b.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraError,
    Algebra,
    Arrow,
    Matrix,
    Module,
    ModuleMap,
    Presentation,
    Relation,
    RelationTerm,
    direct_sum,
    indecomposable_projective,
    load_algebra,
)
from .complexes import ChainMap, Complex, Piece, ShortExactSequence, assemble_pieces
from .homological import Generator, InAddVerdict, make_generator
from .levels import Branch, Leaf, Node

__all__ = [
    "FormatError",
    "CertificateDecodeError",
    "parse_document",
    "render_algebra",
    "decode_algebra",
    "render_module",
    "decode_module",
    "render_complex_file",
    "decode_complex_file",
    "render_generator",
    "decode_generator",
    "render_certificate",
    "decode_certificate",
    "load_algebra_file",
    "load_module_file",
    "load_complex_file",
    "load_generator_file",
]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CertificateDecodeError(ValueError):
    """A certificate failed to reconstruct; path names the failing node."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


# ---------------------------------------------------------------------------
# Generic block grammar


@dataclass
class Block:
    kind: str
    args: list[str]
    fields: list[tuple[str, list[str], int]] = field(default_factory=list)
    children: list["Block"] = field(default_factory=list)
    line: int = 0

    def child(self, kind: str) -> "Block":
        for c in self.children:
            if c.kind == kind:
                return c
        raise FormatError(f"missing required block {kind!r}", self.line)

    def children_of(self, kind: str) -> list["Block"]:
        return [c for c in self.children if c.kind == kind]

    def field_values(self, name: str) -> list[list[str]]:
        return [values for fname, values, _ in self.fields if fname == name]

    def one_field(self, name: str) -> list[str]:
        hits = self.field_values(name)
        if len(hits) != 1:
            raise FormatError(
                f"expected exactly one {name!r} field, found {len(hits)}", self.line
            )
        return hits[0]

    def optional_field(self, name: str) -> list[str] | None:
        hits = self.field_values(name)
        if not hits:
            return None
        if len(hits) > 1:
            raise FormatError(f"duplicate field {name!r}", self.line)
        return hits[0]


def parse_document(text: str) -> list[Block]:
    root = Block("", [], line=0)
    stack = [root]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if tokens[0] == "begin":
            if len(tokens) < 2:
                raise FormatError("begin needs a block kind", lineno)
            block = Block(tokens[1], tokens[2:], line=lineno)
            stack[-1].children.append(block)
            stack.append(block)
        elif tokens[0] == "end":
            if len(stack) == 1:
                raise FormatError("end without matching begin", lineno)
            open_block = stack.pop()
            if len(tokens) > 1 and tokens[1] != open_block.kind:
                raise FormatError(
                    f"end {tokens[1]!r} does not match open block {open_block.kind!r}",
                    lineno,
                )
        else:
            if len(stack) == 1:
                raise FormatError(
                    f"field {tokens[0]!r} outside of any block", lineno
                )
            stack[-1].fields.append((tokens[0], tokens[1:], lineno))
    if len(stack) != 1:
        raise FormatError(f"unclosed block {stack[-1].kind!r}", stack[-1].line)
    return root.children


class _Writer:
    def __init__(self):
        self.lines: list[str] = []
        self.depth = 0

    def begin(self, kind: str, *args):
        self.lines.append("  " * self.depth + " ".join(["begin", kind, *map(str, args)]).rstrip())
        self.depth += 1

    def end(self, kind: str):
        self.depth -= 1
        self.lines.append("  " * self.depth + f"end {kind}")

    def put(self, name: str, *values):
        self.lines.append("  " * self.depth + " ".join([name, *map(str, values)]).rstrip())

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _int(values: list[str], index: int, line: int) -> int:
    try:
        return int(values[index])
    except (IndexError, ValueError):
        raise FormatError("expected an integer", line) from None


# ---------------------------------------------------------------------------
# Matrices


def _write_matrix(w: _Writer, label: str, m: Matrix):
    w.begin("matrix", label, m.rows, m.cols)
    for i in range(m.rows):
        w.put("row", *m.array[i].tolist())
    w.end("matrix")


def _read_matrix(block: Block, p: int) -> tuple[str, Matrix]:
    if len(block.args) != 3:
        raise FormatError("matrix needs a label and a shape", block.line)
    label = block.args[0]
    try:
        rows, cols = int(block.args[1]), int(block.args[2])
    except ValueError:
        raise FormatError("matrix shape must be integers", block.line) from None
    data = np.zeros((rows, cols), dtype=np.int64)
    row_fields = [f for f in block.fields if f[0] == "row"]
    if len(row_fields) != rows:
        raise FormatError(
            f"matrix declares {rows} rows but lists {len(row_fields)}", block.line
        )
    for i, (_, values, line) in enumerate(row_fields):
        if len(values) != cols:
            raise FormatError(f"row has {len(values)} entries, expected {cols}", line)
        for j, v in enumerate(values):
            data[i, j] = _int(values, j, line)
    return label, Matrix(p, data)


# ---------------------------------------------------------------------------
# Algebras


def render_algebra(name: str, pres: Presentation) -> str:
    w = _Writer()
    _write_algebra(w, name, pres)
    return w.text()


def _write_algebra(w: _Writer, name: str, pres: Presentation):
    w.begin("algebra", name)
    w.put("modulus", pres.p)
    w.put("cap", pres.cap)
    for v in pres.vertices:
        w.put("vertex", v)
    for a in pres.arrows:
        w.put("arrow", a.name, a.source, a.target)
    for rel in pres.relations:
        tokens = []
        for term in rel.terms:
            tokens.append(str(term.coeff))
            tokens.append(".".join(term.path))
        w.put("relation", *tokens)
    w.end("algebra")


def decode_algebra(block: Block) -> tuple[str, Algebra]:
    if block.kind != "algebra":
        raise FormatError(f"expected an algebra block, got {block.kind!r}", block.line)
    name = block.args[0] if block.args else "algebra"
    p = _int(block.one_field("modulus"), 0, block.line)
    cap = _int(block.one_field("cap"), 0, block.line)
    vertices = []
    for values in block.field_values("vertex"):
        if len(values) != 1:
            raise FormatError("vertex takes exactly one name", block.line)
        vertices.append(values[0])
    arrows = []
    for fname, values, line in block.fields:
        if fname != "arrow":
            continue
        if len(values) != 3:
            raise FormatError("arrow takes name, source, target", line)
        arrows.append(Arrow(values[0], values[1], values[2]))
    arrow_names = {a.name for a in arrows}
    relations = []
    for fname, values, line in block.fields:
        if fname != "relation":
            continue
        if not values or len(values) % 2 != 0:
            raise FormatError(
                "relation takes coefficient and dotted-path pairs", line
            )
        terms = []
        for i in range(0, len(values), 2):
            coeff = _int(values, i, line)
            path = tuple(values[i + 1].split("."))
            for arrow_name in path:
                if arrow_name not in arrow_names:
                    raise FormatError(
                        f"relation references unknown arrow {arrow_name!r}", line
                    )
            terms.append(RelationTerm(coeff, path))
        relations.append(Relation(tuple(terms)))
    pres = Presentation(p, tuple(vertices), tuple(arrows), tuple(relations), cap)
    try:
        return name, load_algebra(pres)
    except AlgebraError as exc:
        raise FormatError(str(exc), block.line) from exc


# ---------------------------------------------------------------------------
# Modules


def render_module(name: str, m: Module) -> str:
    w = _Writer()
    _write_module(w, name, m)
    return w.text()


def _write_module(w: _Writer, name: str, m: Module):
    alg = m.algebra
    w.begin("module", name)
    for v, d in zip(alg.vertices, m.dims):
        w.put("dim", v, d)
    for a, act in zip(alg.arrows, m.actions):
        _write_matrix(w, a.name, act)
    w.end("module")


def decode_module(block: Block, alg: Algebra) -> tuple[str, Module]:
    if block.kind != "module":
        raise FormatError(f"expected a module block, got {block.kind!r}", block.line)
    name = block.args[0] if block.args else "module"
    dims = {}
    for fname, values, line in block.fields:
        if fname != "dim":
            continue
        if len(values) != 2:
            raise FormatError("dim takes a vertex and a count", line)
        if values[0] not in alg.vertex_index:
            raise FormatError(f"unknown vertex {values[0]!r}", line)
        dims[values[0]] = _int(values, 1, line)
    for v in alg.vertices:
        if v not in dims:
            raise FormatError(f"missing dimension for vertex {v!r}", block.line)
    mats = {}
    for child in block.children_of("matrix"):
        label, m = _read_matrix(child, alg.p)
        if label not in alg.arrow_index:
            raise FormatError(f"unknown arrow {label!r}", child.line)
        mats[label] = m
    dim_list = [dims[v] for v in alg.vertices]
    actions = []
    for a in alg.arrows:
        sv = alg.vertex_index[a.source]
        tv = alg.vertex_index[a.target]
        if a.name in mats:
            actions.append(mats[a.name])
        else:
            actions.append(Matrix.zeros(dim_list[tv], dim_list[sv], alg.p))
    try:
        return name, Module(alg, dim_list, actions)
    except AlgebraError as exc:
        raise FormatError(str(exc), block.line) from exc


# ---------------------------------------------------------------------------
# Complexes (named files with a module namespace)


def render_complex_file(
    name: str, c: Complex, module_names: dict[int, str] | None = None
) -> str:
    """A complex with its term modules inlined above it."""
    w = _Writer()
    names = module_names or {n: f"t{n}" for n in c.support}
    for n in c.support:
        _write_module(w, names[n], c.term(n))
    w.begin("complex", name)
    if not c.is_zero():
        w.put("support", c.lo, c.hi)
        for n in c.support:
            w.put("term", n, names[n])
        for n in range(c.lo + 1, c.hi + 1):
            _write_chain_component(w, "diff", n, c.diff(n))
    w.end("complex")
    return w.text()


def _write_chain_component(w: _Writer, kind: str, degree: int, f: ModuleMap):
    w.begin(kind, degree)
    alg = f.source.algebra
    for v, blockm in zip(alg.vertices, f.blocks):
        _write_matrix(w, v, blockm)
    w.end(kind)


def _read_vertex_blocks(block: Block, alg: Algebra, source: Module, target: Module):
    mats = {}
    for child in block.children_of("matrix"):
        label, m = _read_matrix(child, alg.p)
        if label not in alg.vertex_index:
            raise FormatError(f"unknown vertex {label!r}", child.line)
        mats[label] = m
    blocks = []
    for i, v in enumerate(alg.vertices):
        if v in mats:
            blocks.append(mats[v])
        else:
            blocks.append(Matrix.zeros(target.dims[i], source.dims[i], alg.p))
    try:
        return ModuleMap(source, target, blocks)
    except AlgebraError as exc:
        raise FormatError(str(exc), block.line) from exc


def decode_complex_file(blocks: list[Block], alg: Algebra) -> tuple[str, Complex]:
    namespace: dict[str, Module] = {}
    cplx_block = None
    for block in blocks:
        if block.kind == "module":
            name, m = decode_module(block, alg)
            namespace[name] = m
        elif block.kind == "complex":
            cplx_block = block
    if cplx_block is None:
        raise FormatError("no complex block found")
    return _decode_complex_block(cplx_block, alg, namespace)


def _decode_complex_block(
    block: Block, alg: Algebra, namespace: dict[str, Module]
) -> tuple[str, Complex]:
    name = block.args[0] if block.args else "complex"
    support = block.optional_field("support")
    if support is None:
        return name, Complex.zero(alg)
    lo = _int(support, 0, block.line)
    hi = _int(support, 1, block.line)
    terms = {}
    for fname, values, line in block.fields:
        if fname != "term":
            continue
        degree = _int(values, 0, line)
        mod_name = values[1]
        if mod_name == "zero":
            terms[degree] = Module.zero(alg)
        elif mod_name in namespace:
            terms[degree] = namespace[mod_name]
        else:
            raise FormatError(f"unknown module {mod_name!r}", line)
    term_list = []
    for n in range(lo, hi + 1):
        term_list.append(terms.get(n, Module.zero(alg)))
    diff_blocks = {int(b.args[0]): b for b in block.children_of("diff")}
    diffs = []
    for n in range(lo + 1, hi + 1):
        src = term_list[n - lo]
        tgt = term_list[n - 1 - lo]
        if n in diff_blocks:
            diffs.append(_read_vertex_blocks(diff_blocks[n], alg, src, tgt))
        else:
            diffs.append(ModuleMap.zero(src, tgt))
    try:
        return name, Complex(alg, lo, term_list, diffs)
    except AlgebraError as exc:
        raise FormatError(str(exc), block.line) from exc


# ---------------------------------------------------------------------------
# Generators


def render_generator(name: str, gen: Generator) -> str:
    w = _Writer()
    _write_generator(w, name, gen)
    return w.text()


def _write_generator(w: _Writer, name: str, gen: Generator):
    w.begin("generator", name)
    w.put("semi_resolving", 1 if gen.declared_semi_resolving else 0)
    _write_module(w, "M", gen.module)
    w.end("generator")


def decode_generator(block: Block, alg: Algebra, seed: int = 0) -> tuple[str, Generator]:
    if block.kind != "generator":
        raise FormatError(f"expected a generator block, got {block.kind!r}", block.line)
    name = block.args[0] if block.args else "generator"
    flag_values = block.optional_field("semi_resolving")
    flag = bool(_int(flag_values, 0, block.line)) if flag_values else True
    namespace: dict[str, Module] = {}
    for child in block.children_of("module"):
        mod_name, m = decode_module(child, alg)
        namespace[mod_name] = m
    summands: list[Module] = []
    if block.field_values("use_projectives"):
        for v in alg.vertices:
            summands.append(indecomposable_projective(alg, v))
    for values in block.field_values("summand"):
        if len(values) != 1 or values[0] not in namespace:
            raise FormatError("summand must name an inline module", block.line)
        summands.append(namespace[values[0]])
    if not summands and "M" in namespace:
        summands = [namespace["M"]]
    if not summands:
        raise FormatError(
            "generator needs use_projectives, summand lines, or a module M",
            block.line,
        )
    total, _, _ = direct_sum(alg, summands)
    try:
        return name, make_generator(total, flag, seed)
    except AlgebraError as exc:
        raise FormatError(str(exc), block.line) from exc


# ---------------------------------------------------------------------------
# Certificates (self-contained: algebra + generator + tree)


def _write_complex_inline(w: _Writer, kind: str, c: Complex):
    w.begin(kind)
    if not c.is_zero():
        w.put("support", c.lo, c.hi)
        for n in c.support:
            w.begin("term", n)
            t = c.term(n)
            for v, d in zip(c.algebra.vertices, t.dims):
                w.put("dim", v, d)
            for a, act in zip(c.algebra.arrows, t.actions):
                _write_matrix(w, a.name, act)
            w.end("term")
        for n in range(c.lo + 1, c.hi + 1):
            _write_chain_component(w, "diff", n, c.diff(n))
    w.end(kind)


def _read_complex_inline(block: Block, alg: Algebra, path: str) -> Complex:
    support = block.optional_field("support")
    if support is None:
        return Complex.zero(alg)
    lo = _int(support, 0, block.line)
    hi = _int(support, 1, block.line)
    terms = {}
    for child in block.children_of("term"):
        degree = int(child.args[0])
        dims = {}
        for fname, values, line in child.fields:
            if fname == "dim":
                dims[values[0]] = _int(values, 1, line)
        dim_list = [dims.get(v, 0) for v in alg.vertices]
        mats = {}
        for mchild in child.children_of("matrix"):
            label, m = _read_matrix(mchild, alg.p)
            mats[label] = m
        actions = []
        for a in alg.arrows:
            sv = alg.vertex_index[a.source]
            tv = alg.vertex_index[a.target]
            actions.append(
                mats.get(a.name, Matrix.zeros(dim_list[tv], dim_list[sv], alg.p))
            )
        try:
            terms[degree] = Module(alg, dim_list, actions)
        except AlgebraError as exc:
            raise CertificateDecodeError(path, str(exc)) from exc
    term_list = [terms.get(n, Module.zero(alg)) for n in range(lo, hi + 1)]
    diff_blocks = {int(b.args[0]): b for b in block.children_of("diff")}
    diffs = []
    for n in range(lo + 1, hi + 1):
        src = term_list[n - lo]
        tgt = term_list[n - 1 - lo]
        if n in diff_blocks:
            try:
                diffs.append(_read_vertex_blocks(diff_blocks[n], alg, src, tgt))
            except FormatError as exc:
                raise CertificateDecodeError(path, str(exc)) from exc
        else:
            diffs.append(ModuleMap.zero(src, tgt))
    try:
        return Complex(alg, lo, term_list, diffs)
    except AlgebraError as exc:
        raise CertificateDecodeError(path, str(exc)) from exc


def _write_chain_map(w: _Writer, kind: str, f: ChainMap):
    w.begin(kind)
    degrees = sorted(set(f.source.support) | set(f.target.support))
    for n in degrees:
        _write_chain_component(w, "component", n, f.component(n))
    w.end(kind)


def _read_chain_map(
    block: Block, source: Complex, target: Complex, path: str
) -> ChainMap:
    comps = {}
    for child in block.children_of("component"):
        degree = int(child.args[0])
        try:
            comps[degree] = _read_vertex_blocks(
                child, source.algebra, source.term(degree), target.term(degree)
            )
        except FormatError as exc:
            raise CertificateDecodeError(path, str(exc)) from exc
    try:
        return ChainMap(source, target, comps)
    except AlgebraError as exc:
        raise CertificateDecodeError(path, str(exc)) from exc


def _write_piece(w: _Writer, piece: Piece):
    w.begin("piece", piece.kind, piece.degree)
    t = piece.module
    for v, d in zip(t.algebra.vertices, t.dims):
        w.put("dim", v, d)
    for a, act in zip(t.algebra.arrows, t.actions):
        _write_matrix(w, a.name, act)
    w.end("piece")


def _read_piece(block: Block, alg: Algebra, path: str) -> Piece:
    kind = block.args[0]
    degree = int(block.args[1])
    dims = {}
    for fname, values, line in block.fields:
        if fname == "dim":
            dims[values[0]] = _int(values, 1, line)
    dim_list = [dims.get(v, 0) for v in alg.vertices]
    mats = {}
    for mchild in block.children_of("matrix"):
        label, m = _read_matrix(mchild, alg.p)
        mats[label] = m
    actions = []
    for a in alg.arrows:
        sv = alg.vertex_index[a.source]
        tv = alg.vertex_index[a.target]
        actions.append(mats.get(a.name, Matrix.zeros(dim_list[tv], dim_list[sv], alg.p)))
    try:
        return Piece(kind, Module(alg, dim_list, actions), degree)
    except AlgebraError as exc:
        raise CertificateDecodeError(path, str(exc)) from exc


def _write_node(w: _Writer, node: Node):
    if isinstance(node, Leaf):
        w.begin("leaf")
        w.put("level", node.level)
        _write_complex_inline(w, "subject", node.subject)
        for piece in node.pieces:
            _write_piece(w, piece)
        for verdict in node.verdicts:
            w.put("verdict", *(verdict.multiplicities or ()))
        _write_chain_map(w, "presentation", node.presentation)
        w.end("leaf")
        return
    w.begin("branch")
    w.put("level", node.level)
    w.put("kind", node.link_kind)
    _write_complex_inline(w, "subject", node.subject)
    w.begin("ses")
    _write_complex_inline(w, "sub", node.ses.sub)
    _write_complex_inline(w, "middle", node.ses.middle)
    _write_complex_inline(w, "quotient", node.ses.quotient)
    _write_chain_map(w, "inclusion", node.ses.inclusion)
    _write_chain_map(w, "projection", node.ses.projection)
    w.end("ses")
    _write_chain_map(w, "link", node.link)
    _write_node(w, node.sub)
    _write_node(w, node.rest)
    w.end("branch")


def _read_node(block: Block, alg: Algebra, path: str) -> Node:
    if block.kind == "leaf":
        level = _int(block.one_field("level"), 0, block.line)
        subject = _read_complex_inline(block.child("subject"), alg, path)
        pieces = tuple(
            _read_piece(b, alg, path) for b in block.children_of("piece")
        )
        target = assemble_pieces(alg, pieces)
        presentation = _read_chain_map(
            block.child("presentation"), subject, target, path
        )
        verdicts = tuple(
            InAddVerdict(True, tuple(int(x) for x in values), None)
            for values in block.field_values("verdict")
        )
        return Leaf(subject, pieces, presentation, verdicts, level)
    if block.kind == "branch":
        level = _int(block.one_field("level"), 0, block.line)
        kind = block.one_field("kind")[0]
        subject = _read_complex_inline(block.child("subject"), alg, path)
        ses_block = block.child("ses")
        sub_c = _read_complex_inline(ses_block.child("sub"), alg, path + ".ses")
        mid_c = _read_complex_inline(ses_block.child("middle"), alg, path + ".ses")
        quot_c = _read_complex_inline(ses_block.child("quotient"), alg, path + ".ses")
        inclusion = _read_chain_map(
            ses_block.child("inclusion"), sub_c, mid_c, path + ".ses"
        )
        projection = _read_chain_map(
            ses_block.child("projection"), mid_c, quot_c, path + ".ses"
        )
        try:
            ses = ShortExactSequence(inclusion, projection)
        except AlgebraError as exc:
            raise CertificateDecodeError(path + ".ses", str(exc)) from exc
        linked = mid_c if kind == "middle" else quot_c
        link = _read_chain_map(block.child("link"), linked, subject, path + ".link")
        kids = [
            b for b in block.children if b.kind in ("leaf", "branch")
        ]
        if len(kids) != 2:
            raise CertificateDecodeError(path, "branch needs exactly two children")
        sub = _read_node(kids[0], alg, path + ".sub")
        rest = _read_node(kids[1], alg, path + ".rest")
        try:
            return Branch(subject, ses, link, kind, sub, rest, level)
        except AlgebraError as exc:
            raise CertificateDecodeError(path, str(exc)) from exc
    raise CertificateDecodeError(path, f"unknown node kind {block.kind!r}")


def render_certificate(
    algebra_name: str,
    algebra: Algebra,
    generator_name: str,
    gen: Generator,
    node: Node,
    seed: int = 0,
) -> str:
    w = _Writer()
    w.begin("certificate")
    w.put("seed", seed)
    _write_algebra(w, algebra_name, algebra.presentation)
    _write_generator(w, generator_name, gen)
    _write_node(w, node)
    w.end("certificate")
    return w.text()


def decode_certificate(text: str) -> tuple[Algebra, Generator, Node, int]:
    blocks = parse_document(text)
    cert = None
    for b in blocks:
        if b.kind == "certificate":
            cert = b
    if cert is None:
        raise FormatError("no certificate block found")
    seed_field = cert.optional_field("seed")
    seed = int(seed_field[0]) if seed_field else 0
    _, alg = decode_algebra(cert.child("algebra"))
    _, gen = decode_generator(cert.child("generator"), alg, seed)
    node_blocks = [b for b in cert.children if b.kind in ("leaf", "branch")]
    if len(node_blocks) != 1:
        raise FormatError("certificate needs exactly one root node", cert.line)
    node = _read_node(node_blocks[0], alg, "root")
    return alg, gen, node, seed


# ---------------------------------------------------------------------------
# File helpers


def load_algebra_file(path: str) -> tuple[str, Algebra]:
    with open(path) as fh:
        blocks = parse_document(fh.read())
    for b in blocks:
        if b.kind == "algebra":
            return decode_algebra(b)
    raise FormatError("no algebra block found")


def load_module_file(path: str, alg: Algebra) -> tuple[str, Module]:
    with open(path) as fh:
        blocks = parse_document(fh.read())
    for b in blocks:
        if b.kind == "module":
            return decode_module(b, alg)
    raise FormatError("no module block found")


def load_complex_file(path: str, alg: Algebra) -> tuple[str, Complex]:
    with open(path) as fh:
        return decode_complex_file(parse_document(fh.read()), alg)


def load_generator_file(path: str, alg: Algebra, seed: int = 0) -> tuple[str, Generator]:
    with open(path) as fh:
        blocks = parse_document(fh.read())
    for b in blocks:
        if b.kind == "generator":
            return decode_generator(b, alg, seed)
    raise FormatError("no generator block found")
