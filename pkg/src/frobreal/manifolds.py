"""Cohomology rings of model manifolds with their duality structures.

Constructors produce graded-commutative rings with integer structure
constants: spheres, complex projective spaces, closed oriented surfaces,
and connected sums.  The counit is evaluation against the top class and
the coproduct is always derived from the pairing, never entered by hand.
"""

from __future__ import annotations

import warnings

from .frobenius import (FrobeniusError, FrobeniusStructure, check_axioms,
                        coproduct_from_pairing, Pairing,
                        degenerate_block_report, is_nondegenerate)
from .linear import GradedSpace, MultiOp, op_equal, vertical_compose
from .scalars import FieldSpec, PrimeField


class ManifoldSpecError(ValueError):
    pass


class ManifoldSpec:
    """A formal manifold: sphere:n, cp:n, surface:g, or a connected sum."""

    __slots__ = ("kind", "param", "left", "right")

    def __init__(self, kind: str, param: int = None, left=None, right=None):
        self.kind = kind
        self.param = param
        self.left = left
        self.right = right
        if kind == "sphere":
            if not isinstance(param, int) or param < 1:
                raise ManifoldSpecError("sphere needs n >= 1, got %r" % (param,))
        elif kind == "cp":
            if not isinstance(param, int) or param < 1:
                raise ManifoldSpecError("cp needs n >= 1, got %r" % (param,))
        elif kind == "surface":
            if not isinstance(param, int) or param < 0:
                raise ManifoldSpecError("surface needs genus >= 0, got %r" % (param,))
        elif kind == "connsum":
            if not isinstance(left, ManifoldSpec) or not isinstance(right, ManifoldSpec):
                raise ManifoldSpecError("connsum needs two manifold specs")
            if left.top_degree() != right.top_degree():
                raise ManifoldSpecError(
                    "top degree mismatch %d≠%d"
                    % (left.top_degree(), right.top_degree()))
        else:
            raise ManifoldSpecError("unknown manifold kind %r" % (kind,))

    def top_degree(self) -> int:
        if self.kind == "sphere":
            return self.param
        if self.kind == "cp":
            return 2 * self.param
        if self.kind == "surface":
            return 2
        return self.left.top_degree()

    def text(self) -> str:
        if self.kind == "connsum":
            return "connsum(%s,%s)" % (self.left.text(), self.right.text())
        return "%s:%d" % (self.kind, self.param)

    def __repr__(self):
        return "ManifoldSpec(%s)" % self.text()

    def __eq__(self, other):
        return isinstance(other, ManifoldSpec) and self.text() == other.text()

    def __hash__(self):
        return hash(self.text())

    def to_json(self):
        return self.text()


def sphere(n: int) -> ManifoldSpec:
    return ManifoldSpec("sphere", n)


def cp(n: int) -> ManifoldSpec:
    return ManifoldSpec("cp", n)


def surface(g: int) -> ManifoldSpec:
    return ManifoldSpec("surface", g)


def connsum(left: ManifoldSpec, right: ManifoldSpec) -> ManifoldSpec:
    return ManifoldSpec("connsum", left=left, right=right)


def _integral_model(spec: ManifoldSpec):
    """Basis [(label, degree)], sparse integer product table, top label.

    The table maps (label, label) -> {label: int} and omits products with
    the unit (implied) and zero products.
    """
    if spec.kind == "sphere":
        n = spec.param
        return [("1", 0), ("x", n)], {}, "x"
    if spec.kind == "cp":
        n = spec.param
        basis = [("1", 0)] + [("x" if k == 1 else "x^%d" % k, 2 * k)
                              for k in range(1, n + 1)]
        label = {k: basis[k][0] for k in range(n + 1)}
        products = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j <= n:
                    products[(label[i], label[j])] = {label[i + j]: 1}
        return basis, products, label[n]
    if spec.kind == "surface":
        g = spec.param
        basis = [("1", 0)]
        basis += [("a%d" % i, 1) for i in range(1, g + 1)]
        basis += [("b%d" % i, 1) for i in range(1, g + 1)]
        basis += [("w", 2)]
        products = {}
        for i in range(1, g + 1):
            products[("a%d" % i, "b%d" % i)] = {"w": 1}
            products[("b%d" % i, "a%d" % i)] = {"w": -1}
        return basis, products, "w"

    top_deg = spec.top_degree()
    merged_basis = [("1", 0)]
    merged_products = {}
    for tag, side in (("L:", spec.left), ("R:", spec.right)):
        basis, products, top = _integral_model(side)
        rename = {}
        for label, degree in basis:
            if degree == 0:
                rename[label] = "1"
            elif label == top:
                rename[label] = "w"
            else:
                rename[label] = tag + label
                merged_basis.append((tag + label, degree))
        for (u, v), out in products.items():
            if u == "1" or v == "1" or u == top or v == top:
                continue
            row = {rename[z]: c for z, c in out.items()}
            if row:
                merged_products[(rename[u], rename[v])] = row
    merged_basis.append(("w", top_deg))
    return merged_basis, merged_products, "w"


def build_structure(spec: ManifoldSpec, field: FieldSpec,
                    check: bool = True) -> FrobeniusStructure:
    """The cup-product Frobenius structure of a manifold spec over a field.

    Structure constants are integral; the coproduct is derived from the
    pairing over the working field.  With check=True the full axiom report
    is run and any failed verdict raises.
    """
    basis, products, top_label = _integral_model(spec)
    if field.characteristic == 2 and any(deg % 2 for _, deg in basis):
        warnings.warn(
            "characteristic 2 with odd-degree classes: squares-zero and "
            "anticommutation relations are kept as explicit structure "
            "constants, not re-derived",
            RuntimeWarning, stacklevel=2)
    # Stable sort: degree first, constructor order within a degree.
    order = sorted(range(len(basis)), key=lambda k: basis[k][1])
    space = GradedSpace(field, [basis[k] for k in order])
    unit = space.index("1")
    top = space.index(top_label)

    mu_entries = {}
    for i in range(space.dim):
        for j in range(space.dim):
            li, lj = space.label(i), space.label(j)
            if i == unit:
                row = {(j,): field.one}
            elif j == unit:
                row = {(i,): field.one}
            else:
                row = {}
                for lz, c in products.get((li, lj), {}).items():
                    cf = field.from_int(c)
                    if not field.is_zero(cf):
                        row[(space.index(lz),)] = cf
            if row:
                mu_entries[(i, j)] = row
    mu = MultiOp(space, 2, 1, 0, mu_entries)
    eta = MultiOp(space, 0, 1, 0, {(): {(unit,): field.one}})
    eps = MultiOp(space, 1, 0, -spec.top_degree(),
                  {(top,): {(): field.one}})

    beta = Pairing(space, vertical_compose(eps, mu), spec.top_degree())
    delta, eps_back = coproduct_from_pairing(mu, eta, beta)
    if not op_equal(eps_back, eps):
        raise FrobeniusError(
            "internal error: counit recovered from the pairing disagrees "
            "with evaluation against the top class")
    s = FrobeniusStructure(space, mu, eta, delta, eps, spec.top_degree())
    if check:
        report = check_axioms(s)
        if not report.all_pass:
            bad = [name for name, verdict, _, _ in report.axioms if not verdict]
            raise FrobeniusError(
                "construction-time axiom check failed: %s" % ", ".join(bad))
    return s


def euler_characteristic(space: GradedSpace) -> int:
    total = 0
    for degree, dim in space.dims_by_degree().items():
        total += dim if degree % 2 == 0 else -dim
    return total


def reduce_mod_p(s: FrobeniusStructure, p: int) -> FrobeniusStructure:
    """Reduce an integral rational structure to the prime field F_p.

    The product, unit and counit reduce entrywise.  The coproduct is
    re-derived from the reduced pairing rather than reduced entrywise, so
    the snake identities hold over F_p by construction.  A reduction that
    degenerates the pairing is rejected, naming the vanishing Gram blocks.
    """
    if s.field.kind != "rationals":
        raise FrobeniusError("reduce_mod_p expects a structure over the rationals")
    target = PrimeField(p)

    def reduce_op(op: MultiOp, space: GradedSpace) -> MultiOp:
        entries = {}
        for in_t, row in op.entries.items():
            new_row = {}
            for out_t, c in row.items():
                if c.denominator != 1:
                    raise FrobeniusError(
                        "structure constant %s is not an integer" % c)
                r = target.from_int(c.numerator)
                if not target.is_zero(r):
                    new_row[out_t] = r
            if new_row:
                entries[in_t] = new_row
        return MultiOp(space, op.source_arity, op.target_arity, op.degree,
                       entries)

    space = GradedSpace(target, list(s.space.basis))
    if p == 2 and any(deg % 2 for _, deg in space.basis):
        warnings.warn(
            "characteristic 2 with odd-degree classes: squares-zero and "
            "anticommutation relations are kept as explicit structure "
            "constants, not re-derived",
            RuntimeWarning, stacklevel=2)
    mu = reduce_op(s.mu, space)
    eta = reduce_op(s.eta, space)
    eps = reduce_op(s.eps, space)
    beta = Pairing(space, vertical_compose(eps, mu), s.degree_m)
    if not is_nondegenerate(beta):
        raise FrobeniusError(
            "pairing degenerates mod %d: vanishing Gram minor on degree "
            "blocks %r" % (p, degenerate_block_report(beta)))
    delta, eps_back = coproduct_from_pairing(mu, eta, beta)
    if not op_equal(eps_back, eps):
        raise FrobeniusError(
            "internal error: counit mismatch after reduction mod %d" % p)
    return FrobeniusStructure(space, mu, eta, delta, eps, s.degree_m)
