"""Graded vector spaces and exact multilinear operations between tensor powers.

Sign conventions, fixed once for the whole package:

* a tensor product of operations acts by
      (f (x) g)(x (x) y) = (-1)^(deg(g) * deg(x)) f(x) (x) g(y),
* the symmetry swaps with the Koszul sign,
      tau(x (x) y) = (-1)^(deg(x) * deg(y)) y (x) x,
and every other sign in the package is derived from these two rules.
"""

from __future__ import annotations

import json
from itertools import product

from .scalars import FieldSpec


class GradedSpaceError(ValueError):
    pass


class MultiOpError(ValueError):
    pass


class GradedSpace:
    """A finite graded vector space with an ordered, labelled basis.

    Basis elements are (label, degree) pairs; all indexing is positional,
    labels exist for serialization and error messages.
    """

    def __init__(self, field: FieldSpec, basis):
        self.field = field
        self.basis = tuple((str(label), int(degree)) for label, degree in basis)
        labels = [label for label, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise GradedSpaceError("duplicate basis labels: %r" % (labels,))
        self._index = {label: i for i, (label, _) in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.basis[i][1]

    def label(self, i: int) -> str:
        return self.basis[i][0]

    def index(self, label: str) -> int:
        return self._index[label]

    def tuple_degree(self, idx_tuple) -> int:
        return sum(self.basis[i][1] for i in idx_tuple)

    def indices_of_degree(self, d: int):
        return [i for i in range(self.dim) if self.basis[i][1] == d]

    def degrees_present(self):
        return sorted({deg for _, deg in self.basis})

    def dims_by_degree(self) -> dict:
        out = {}
        for _, deg in self.basis:
            out[deg] = out.get(deg, 0) + 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.basis))

    def __repr__(self):
        return "GradedSpace(%r, dim=%d)" % (self.field, self.dim)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "basis": [[label, deg] for label, deg in self.basis],
        }

    @staticmethod
    def from_json(data: dict) -> "GradedSpace":
        return GradedSpace(FieldSpec.from_json(data["field"]), data["basis"])


class MultiOp:
    """An exact linear map X^(x)m -> X^(x)n, homogeneous of a fixed degree.

    entries maps an m-tuple of basis indices to a sparse linear combination
    of n-tuples; zero coefficients are dropped on construction and every
    entry is checked for homogeneity: deg(out) = deg(in) + degree.
    """

    __slots__ = ("space", "source_arity", "target_arity", "degree", "entries")

    def __init__(self, space, source_arity, target_arity, degree, entries,
                 _trusted=False):
        self.space = space
        self.source_arity = int(source_arity)
        self.target_arity = int(target_arity)
        self.degree = int(degree)
        if self.source_arity < 0 or self.target_arity < 0:
            raise MultiOpError("arities must be nonnegative")
        if _trusted:
            self.entries = entries
            return
        field = space.field
        clean = {}
        for in_t, combo in entries.items():
            in_t = tuple(in_t)
            if len(in_t) != self.source_arity:
                raise MultiOpError(
                    "input tuple %r has length %d, expected %d"
                    % (in_t, len(in_t), self.source_arity))
            if any(i < 0 or i >= space.dim for i in in_t):
                raise MultiOpError("input index out of range in %r" % (in_t,))
            in_deg = space.tuple_degree(in_t)
            row = {}
            for out_t, coeff in combo.items():
                out_t = tuple(out_t)
                if len(out_t) != self.target_arity:
                    raise MultiOpError(
                        "output tuple %r has length %d, expected %d"
                        % (out_t, len(out_t), self.target_arity))
                if any(i < 0 or i >= space.dim for i in out_t):
                    raise MultiOpError("output index out of range in %r" % (out_t,))
                if field.is_zero(coeff):
                    continue
                if space.tuple_degree(out_t) != in_deg + self.degree:
                    raise MultiOpError(
                        "entry %r -> %r breaks homogeneity: %d != %d + %d"
                        % (in_t, out_t, space.tuple_degree(out_t), in_deg,
                           self.degree))
                row[out_t] = coeff
            if row:
                clean[in_t] = row
        self.entries = clean

    def apply(self, in_tuple) -> dict:
        """The image of a basis tuple, as {output tuple: coefficient}."""
        return dict(self.entries.get(tuple(in_tuple), {}))

    def biarity(self):
        return (self.source_arity, self.target_arity)

    def __repr__(self):
        return "MultiOp(%d->%d, deg=%d, %d entries)" % (
            self.source_arity, self.target_arity, self.degree,
            len(self.entries))

    def canonical_entries(self):
        """Entries in deterministic order: by input tuple, then output tuple."""
        field = self.space.field
        out = []
        for in_t in sorted(self.entries):
            combo = self.entries[in_t]
            out.append((in_t, tuple(
                (out_t, field.serialize(combo[out_t]))
                for out_t in sorted(combo))))
        return tuple(out)

    def to_json(self) -> dict:
        labels = self.space.label
        entries = []
        for in_t, combo in self.canonical_entries():
            group = [[labels(i) for i in in_t]]
            for out_t, coeff in combo:
                group.append([[labels(i) for i in out_t], coeff])
            entries.append(group)
        return {
            "source_arity": self.source_arity,
            "target_arity": self.target_arity,
            "degree": self.degree,
            "entries": entries,
        }

    def serialized(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(space: GradedSpace, data: dict) -> "MultiOp":
        field = space.field
        entries = {}
        for group in data["entries"]:
            in_t = tuple(space.index(label) for label in group[0])
            combo = {}
            for out_labels, coeff in group[1:]:
                out_t = tuple(space.index(label) for label in out_labels)
                combo[out_t] = field.parse(coeff)
            entries[in_t] = combo
        return MultiOp(space, data["source_arity"], data["target_arity"],
                       data["degree"], entries)


def zero_op(space, m, n, degree) -> MultiOp:
    return MultiOp(space, m, n, degree, {}, _trusted=True)


def identity_op(space: GradedSpace, k: int) -> MultiOp:
    """The identity on X^(x)k; k = 0 gives the unit on the empty tensor."""
    entries = {}
    for in_t in product(range(space.dim), repeat=k):
        entries[in_t] = {in_t: space.field.one}
    return MultiOp(space, k, k, 0, entries, _trusted=True)


def vertical_compose(g: MultiOp, f: MultiOp) -> MultiOp:
    """The composite g after f: feed every output of f into g."""
    if f.space != g.space:
        raise MultiOpError("vertical_compose: ambient space mismatch")
    if f.target_arity != g.source_arity:
        raise MultiOpError(
            "vertical_compose: arity mismatch, f targets %d but g expects %d"
            % (f.target_arity, g.source_arity))
    field = f.space.field
    entries = {}
    for in_t, combo in f.entries.items():
        acc = {}
        for mid_t, c in combo.items():
            g_row = g.entries.get(mid_t)
            if not g_row:
                continue
            for out_t, d in g_row.items():
                prev = acc.get(out_t)
                term = field.mul(c, d)
                acc[out_t] = term if prev is None else field.add(prev, term)
        acc = {k: v for k, v in acc.items() if not field.is_zero(v)}
        if acc:
            entries[in_t] = acc
    return MultiOp(f.space, f.source_arity, g.target_arity,
                   f.degree + g.degree, entries, _trusted=True)


def horizontal_tensor(f: MultiOp, g: MultiOp) -> MultiOp:
    """f (x) g with the Koszul sign (-1)^(deg(g) * deg(left input))."""
    if f.space != g.space:
        raise MultiOpError("horizontal_tensor: ambient space mismatch")
    space = f.space
    field = space.field
    g_deg_odd = g.degree % 2
    entries = {}
    for u, f_combo in f.entries.items():
        sign_odd = g_deg_odd and (space.tuple_degree(u) % 2)
        for v, g_combo in g.entries.items():
            row = {}
            for fw, c in f_combo.items():
                for gw, d in g_combo.items():
                    coeff = field.mul(c, d)
                    if sign_odd:
                        coeff = field.neg(coeff)
                    row[fw + gw] = coeff
            if row:
                entries[u + v] = row
    return MultiOp(space, f.source_arity + g.source_arity,
                   f.target_arity + g.target_arity, f.degree + g.degree,
                   entries, _trusted=True)


def permutation_op(sigma, space: GradedSpace) -> MultiOp:
    """The action of a permutation on a tensor power, with Koszul signs.

    sigma is a tuple of images: the factor in position i moves to position
    sigma[i].  This is a left action: permutation_op(sigma o rho) equals
    vertical_compose(permutation_op(sigma), permutation_op(rho)).
    Each transposed pair of odd factors contributes a minus sign.
    """
    sigma = tuple(sigma)
    k = len(sigma)
    if sorted(sigma) != list(range(k)):
        raise MultiOpError("not a permutation of 0..%d: %r" % (k - 1, sigma))
    field = space.field
    entries = {}
    for in_t in product(range(space.dim), repeat=k):
        out = [0] * k
        for i, x in enumerate(in_t):
            out[sigma[i]] = x
        sign_exp = 0
        for i in range(k):
            for j in range(i + 1, k):
                if sigma[i] > sigma[j]:
                    sign_exp += space.degree(in_t[i]) * space.degree(in_t[j])
        coeff = field.one if sign_exp % 2 == 0 else field.neg(field.one)
        entries[in_t] = {tuple(out): coeff}
    return MultiOp(space, k, k, 0, entries, _trusted=True)


def op_scale(f: MultiOp, c) -> MultiOp:
    field = f.space.field
    if field.is_zero(c):
        return zero_op(f.space, f.source_arity, f.target_arity, f.degree)
    entries = {
        in_t: {out_t: field.mul(c, v) for out_t, v in combo.items()}
        for in_t, combo in f.entries.items()
    }
    return MultiOp(f.space, f.source_arity, f.target_arity, f.degree,
                   entries, _trusted=True)


def op_mismatch_reason(f: MultiOp, g: MultiOp):
    """None if the operations are equal, else a short reason string."""
    if f.space != g.space:
        return "ambient mismatch"
    if f.biarity() != g.biarity():
        return "arity mismatch: %r vs %r" % (f.biarity(), g.biarity())
    if f.degree != g.degree:
        # Degrees may legitimately differ when one side is zero.
        if f.entries or g.entries:
            return "degree mismatch: %d vs %d" % (f.degree, g.degree)
        return None
    field = f.space.field
    for in_t in sorted(set(f.entries) | set(g.entries)):
        left = f.entries.get(in_t, {})
        right = g.entries.get(in_t, {})
        for out_t in sorted(set(left) | set(right)):
            a = left.get(out_t, field.zero)
            b = right.get(out_t, field.zero)
            if not field.is_zero(field.sub(a, b)):
                labels = f.space.label
                return "entries differ at %s -> %s" % (
                    tuple(labels(i) for i in in_t),
                    tuple(labels(i) for i in out_t))
    return None


def op_equal(f: MultiOp, g: MultiOp) -> bool:
    return op_mismatch_reason(f, g) is None
