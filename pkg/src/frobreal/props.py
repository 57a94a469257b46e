"""Relation diagrams over a generator signature and their evaluation in End(X).

A diagram is a formal composite of generators, identities and permutations
under horizontal tensor and vertical composition.  Ill-arity composites are
rejected when the node is constructed, not when it is evaluated.
"""

from __future__ import annotations

from itertools import product

from . import exactmat
from .linear import (GradedSpace, MultiOp, MultiOpError, horizontal_tensor,
                     identity_op, op_equal, permutation_op, vertical_compose)


class SignatureError(ValueError):
    pass


class DiagramError(ValueError):
    pass


class InterpretationError(ValueError):
    pass


class Signature:
    """Named abstract generators with fixed biarity and degree."""

    def __init__(self, generators):
        self.generators = {}
        for name, source_arity, target_arity, degree in generators:
            name = str(name)
            if name in self.generators:
                raise SignatureError("duplicate generator %r" % name)
            self.generators[name] = (int(source_arity), int(target_arity),
                                     int(degree))

    def arity(self, name: str):
        if name not in self.generators:
            raise SignatureError("unknown generator %r" % name)
        return self.generators[name]

    def gen(self, name: str) -> "Gen":
        return Gen(self, name)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.generators == other.generators

    def to_json(self) -> dict:
        return {
            "generators": [
                [name, m, n, d]
                for name, (m, n, d) in sorted(self.generators.items())
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "Signature":
        return Signature(data["generators"])


class Diagram:
    """Base node; every node knows its biarity and total degree."""

    __slots__ = ("source_arity", "target_arity", "degree")

    def biarity(self):
        return (self.source_arity, self.target_arity)


class Gen(Diagram):
    __slots__ = ("name",)

    def __init__(self, signature: Signature, name: str):
        m, n, d = signature.arity(name)
        self.name = name
        self.source_arity = m
        self.target_arity = n
        self.degree = d

    def __repr__(self):
        return "Gen(%r)" % self.name


class Id(Diagram):
    __slots__ = ("width",)

    def __init__(self, k: int):
        if k < 0:
            raise DiagramError("identity width must be nonnegative")
        self.width = k
        self.source_arity = k
        self.target_arity = k
        self.degree = 0

    def __repr__(self):
        return "Id(%d)" % self.width


class Perm(Diagram):
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise DiagramError("not a permutation: %r" % (images,))
        self.images = images
        self.source_arity = len(images)
        self.target_arity = len(images)
        self.degree = 0

    def __repr__(self):
        return "Perm(%r)" % (self.images,)


class HComp(Diagram):
    __slots__ = ("left", "right")

    def __init__(self, left: Diagram, right: Diagram):
        self.left = left
        self.right = right
        self.source_arity = left.source_arity + right.source_arity
        self.target_arity = left.target_arity + right.target_arity
        self.degree = left.degree + right.degree

    def __repr__(self):
        return "HComp(%r, %r)" % (self.left, self.right)


class VComp(Diagram):
    """upper after lower: the lower diagram feeds its outputs into the upper."""

    __slots__ = ("upper", "lower")

    def __init__(self, upper: Diagram, lower: Diagram):
        if lower.target_arity != upper.source_arity:
            raise DiagramError(
                "vcomp arity mismatch: lower yields %d, upper expects %d"
                % (lower.target_arity, upper.source_arity))
        self.upper = upper
        self.lower = lower
        self.source_arity = lower.source_arity
        self.target_arity = upper.target_arity
        self.degree = upper.degree + lower.degree

    def __repr__(self):
        return "VComp(%r, %r)" % (self.upper, self.lower)


def diagram_to_json(d: Diagram):
    if isinstance(d, Gen):
        return ["gen", d.name]
    if isinstance(d, Id):
        return ["id", d.width]
    if isinstance(d, Perm):
        return ["perm", list(d.images)]
    if isinstance(d, HComp):
        return ["hcomp", diagram_to_json(d.left), diagram_to_json(d.right)]
    if isinstance(d, VComp):
        return ["vcomp", diagram_to_json(d.upper), diagram_to_json(d.lower)]
    raise DiagramError("unknown diagram node %r" % (d,))


def parse_diagram(data, signature: Signature, path: str = "root") -> Diagram:
    """Rebuild a diagram from its JSON form; errors carry the node path."""
    if not isinstance(data, (list, tuple)) or not data:
        raise DiagramError("%s: expected a [tag, ...] list, got %r" % (path, data))
    tag = data[0]
    try:
        if tag == "gen":
            return Gen(signature, data[1])
        if tag == "id":
            return Id(data[1])
        if tag == "perm":
            return Perm(data[1])
        if tag == "hcomp":
            return HComp(parse_diagram(data[1], signature, path + ".left"),
                         parse_diagram(data[2], signature, path + ".right"))
        if tag == "vcomp":
            return VComp(parse_diagram(data[1], signature, path + ".upper"),
                         parse_diagram(data[2], signature, path + ".lower"))
    except (SignatureError, DiagramError, IndexError) as exc:
        raise DiagramError("%s: %s" % (path, exc)) from exc
    raise DiagramError("%s: unknown node tag %r" % (path, tag))


class Interpretation:
    """An assignment of a MultiOp to each generator of a signature."""

    def __init__(self, signature: Signature, space: GradedSpace, ops: dict):
        self.signature = signature
        self.space = space
        self.ops = dict(ops)
        for name, (m, n, d) in signature.generators.items():
            if name not in self.ops:
                raise InterpretationError("generator %r not assigned" % name)
            op = self.ops[name]
            if op.space != space:
                raise InterpretationError("generator %r lives on the wrong space"
                                          % name)
            if op.biarity() != (m, n) or op.degree != d:
                raise InterpretationError(
                    "generator %r has biarity %r degree %d, expected %r degree %d"
                    % (name, op.biarity(), op.degree, (m, n), d))
        self._structural = {}

    def _identity(self, k: int) -> MultiOp:
        key = ("id", k)
        if key not in self._structural:
            self._structural[key] = identity_op(self.space, k)
        return self._structural[key]

    def _perm(self, images) -> MultiOp:
        key = ("perm", images)
        if key not in self._structural:
            self._structural[key] = permutation_op(images, self.space)
        return self._structural[key]


def evaluate(d: Diagram, i: Interpretation) -> MultiOp:
    """Evaluate a diagram to a concrete operation on the interpretation space."""
    if isinstance(d, Gen):
        if d.name not in i.ops:
            raise InterpretationError("unknown generator %r" % d.name)
        return i.ops[d.name]
    if isinstance(d, Id):
        return i._identity(d.width)
    if isinstance(d, Perm):
        return i._perm(d.images)
    if isinstance(d, HComp):
        return horizontal_tensor(evaluate(d.left, i), evaluate(d.right, i))
    if isinstance(d, VComp):
        return vertical_compose(evaluate(d.upper, i), evaluate(d.lower, i))
    raise DiagramError("unknown diagram node %r" % (d,))


def op_inverse_11(g: MultiOp) -> MultiOp:
    """Invert a degree-0 operation of biarity (1,1), block by block."""
    if g.biarity() != (1, 1) or g.degree != 0:
        raise MultiOpError("expected a degree-0 (1,1) operation")
    space = g.space
    field = space.field
    entries = {}
    for deg in space.degrees_present():
        idx = space.indices_of_degree(deg)
        # Column j of the block is the image of basis vector idx[j].
        block = [[g.entries.get((idx[j],), {}).get((idx[i],), field.zero)
                  for j in range(len(idx))] for i in range(len(idx))]
        inv = exactmat.invert(field, block)
        if inv is None:
            raise MultiOpError("operation is singular on the degree-%d block"
                               % deg)
        for j, col in enumerate(idx):
            combo = {}
            for i, row in enumerate(idx):
                if not field.is_zero(inv[i][j]):
                    combo[(row,)] = inv[i][j]
            if combo:
                entries[(col,)] = combo
    return MultiOp(space, 1, 1, 0, entries, _trusted=True)


def tensor_power(g: MultiOp, k: int) -> MultiOp:
    if k == 0:
        return identity_op(g.space, 0)
    out = g
    for _ in range(k - 1):
        out = horizontal_tensor(out, g)
    return out


class Conjugator:
    """Conjugation by a fixed invertible degree-0 map, with cached powers.

    An operation p of biarity (m,n) is sent to (g^-1)^(x)n o p o g^(x)m.
    Applying the map for g2 after the map for g1 equals applying the map
    for g1 o g2 (a right action of the graded linear group).
    """

    def __init__(self, g: MultiOp, g_inv: MultiOp | None = None):
        self.g = g
        self.g_inv = g_inv if g_inv is not None else op_inverse_11(g)
        self._pow = {1: g}
        self._inv_pow = {1: self.g_inv}

    def _power(self, cache, base, k):
        if k not in cache:
            cache[k] = tensor_power(base, k)
        return cache[k]

    def conjugate(self, p: MultiOp) -> MultiOp:
        left = self._power(self._inv_pow, self.g_inv, p.target_arity)
        right = self._power(self._pow, self.g, p.source_arity)
        return vertical_compose(left, vertical_compose(p, right))


def conjugate_op(p: MultiOp, g: MultiOp) -> MultiOp:
    return Conjugator(g).conjugate(p)


def conjugate_interpretation(i: Interpretation, g: MultiOp) -> Interpretation:
    """Twist every generator of an interpretation by an invertible map."""
    if g.space != i.space:
        raise InterpretationError("conjugating map lives on the wrong space")
    conj = Conjugator(g)
    return Interpretation(i.signature, i.space,
                          {name: conj.conjugate(op)
                           for name, op in i.ops.items()})


def check_prop_morphism_property(g: MultiOp, samples) -> bool:
    """Conjugation respects horizontal tensor and vertical composition.

    samples is a list of (f1, f2) pairs on the space of g; the vertical
    half of the check runs on the composable pairs only.
    """
    conj = Conjugator(g)
    for f1, f2 in samples:
        lhs = conj.conjugate(horizontal_tensor(f1, f2))
        rhs = horizontal_tensor(conj.conjugate(f1), conj.conjugate(f2))
        if not op_equal(lhs, rhs):
            return False
        if f1.target_arity == f2.source_arity:
            lhs = conj.conjugate(vertical_compose(f2, f1))
            rhs = vertical_compose(conj.conjugate(f2), conj.conjugate(f1))
            if not op_equal(lhs, rhs):
                return False
    return True


class ChainMap:
    """A degree-0 linear map between two graded spaces over the same field.

    entries maps a source basis index to {target index: coefficient}.
    """

    def __init__(self, source: GradedSpace, target: GradedSpace, entries: dict):
        if source.field != target.field:
            raise MultiOpError("chain map endpoints over different fields")
        self.source = source
        self.target = target
        field = source.field
        clean = {}
        for i, combo in entries.items():
            row = {}
            for j, c in combo.items():
                if field.is_zero(c):
                    continue
                if target.degree(j) != source.degree(i):
                    raise MultiOpError("chain map entry %d -> %d changes degree"
                                       % (i, j))
                row[j] = c
            if row:
                clean[i] = row
        self.entries = clean

    @staticmethod
    def identity(space: GradedSpace) -> "ChainMap":
        return ChainMap(space, space,
                        {i: {i: space.field.one} for i in range(space.dim)})

    @staticmethod
    def zero(source: GradedSpace, target: GradedSpace) -> "ChainMap":
        return ChainMap(source, target, {})

    @staticmethod
    def from_multiop(op: MultiOp) -> "ChainMap":
        if op.biarity() != (1, 1) or op.degree != 0:
            raise MultiOpError("expected a degree-0 (1,1) operation")
        return ChainMap(op.space, op.space,
                        {i: {j: c for (j,), c in combo.items()}
                         for (i,), combo in op.entries.items()})

    def power_entries(self, k: int) -> dict:
        """Entries of the k-th tensor power, on index tuples."""
        if k == 0:
            return {(): {(): self.source.field.one}}
        field = self.source.field
        out = {(): {(): field.one}}
        for _ in range(k):
            nxt = {}
            for in_t, combo in out.items():
                for i in range(self.source.dim):
                    row = self.entries.get(i)
                    if not row:
                        continue
                    acc = {}
                    for mid_t, c in combo.items():
                        for j, d in row.items():
                            acc[mid_t + (j,)] = field.mul(c, d)
                    nxt[in_t + (i,)] = acc
            out = nxt
        return out


def _hom_basis_tuples(space: GradedSpace, m: int, n: int, degree: int):
    """All (input tuple, output tuple) pairs compatible with the degree."""
    pairs = []
    for in_t in product(range(space.dim), repeat=m):
        want = space.tuple_degree(in_t) + degree
        for out_t in product(range(space.dim), repeat=n):
            if space.tuple_degree(out_t) == want:
                pairs.append((in_t, out_t))
    return pairs


def hom_dimension(space: GradedSpace, m: int, n: int, degree: int = 0) -> int:
    return len(_hom_basis_tuples(space, m, n, degree))


def end_of_map_space(f: ChainMap, m: int, n: int, degree: int = 0):
    """A basis of the operation pairs intertwining a fixed chain map.

    Solves, by an exact null-space computation, for all pairs (p, q) with p
    of biarity (m,n) on the source, q on the target, both homogeneous of the
    given degree, such that f^(x)n o p = q o f^(x)m.  Returns a list of
    (p, q) MultiOp pairs.
    """
    X, Y = f.source, f.target
    field = X.field
    p_vars = _hom_basis_tuples(X, m, n, degree)
    q_vars = _hom_basis_tuples(Y, m, n, degree)
    fm = f.power_entries(m)
    fn = f.power_entries(n)
    nvars = len(p_vars) + len(q_vars)
    p_index = {pair: k for k, pair in enumerate(p_vars)}
    q_index = {pair: k + len(p_vars) for k, pair in enumerate(q_vars)}

    rows = {}

    def bump(u, z, col, value):
        key = (u, z)
        row = rows.get(key)
        if row is None:
            row = rows[key] = [field.zero] * nvars
        row[col] = field.add(row[col], value)

    for (u, v), col in p_index.items():
        for z, c in fn.get(v, {}).items():
            bump(u, z, col, c)
    for (u2, z), col in q_index.items():
        for u in product(range(X.dim), repeat=m):
            c = fm.get(u, {}).get(u2)
            if c is not None:
                bump(u, z, col, field.neg(c))

    matrix = [rows[key] for key in sorted(rows)]
    kernel = exactmat.null_space(field, matrix, nvars)

    basis = []
    for vec in kernel:
        p_entries, q_entries = {}, {}
        for (u, v), k in p_index.items():
            if not field.is_zero(vec[k]):
                p_entries.setdefault(u, {})[v] = vec[k]
        for (u, z), k in q_index.items():
            if not field.is_zero(vec[k]):
                q_entries.setdefault(u, {})[z] = vec[k]
        basis.append((MultiOp(X, m, n, degree, p_entries, _trusted=True),
                      MultiOp(Y, m, n, degree, q_entries, _trusted=True)))
    return basis


def d0(pair):
    """Projection of an intertwining pair onto its source-side operation."""
    return pair[0]


def d1(pair):
    """Projection of an intertwining pair onto its target-side operation."""
    return pair[1]
