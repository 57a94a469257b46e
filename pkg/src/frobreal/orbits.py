"""Automorphism groups over prime fields and orbits under conjugation.

Counts are set-level: the quotient of the graded linear group by a
stabilizer is computed as an orbit cardinality, never as a group
quotient.  Enumeration is exhaustive with the unit block pruned first;
candidate counts are estimated up front and checked against a budget.
"""

from __future__ import annotations

import itertools
import json

from . import exactmat
from .frobenius import FrobeniusStructure
from .linear import GradedSpace, MultiOp
from .props import Conjugator, op_inverse_11
from .scalars import PrimeField

DEFAULT_BUDGET = 10 ** 8

# Orbits over groups up to this order walk every group element; larger
# groups are closed up from generators instead.
FULL_LOOP_LIMIT = 2048


class BudgetExceededError(RuntimeError):

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


class OrbitError(RuntimeError):
    pass


def _require_prime_field(space: GradedSpace) -> int:
    field = space.field
    if field.kind != "prime-field":
        raise OrbitError("finite-field computation needs a prime field")
    return field.characteristic


class GradedAutomorphism:
    """An invertible degree-preserving map, one block per occupied degree.

    Block columns are images: block[r][c] is the coefficient of the r-th
    degree-d basis element in the image of the c-th.  Entries are residues.
    """

    __slots__ = ("space", "blocks", "_key")

    def __init__(self, space: GradedSpace, blocks: dict):
        self.space = space
        degrees = space.degrees_present()
        if set(blocks) != set(degrees):
            raise OrbitError("blocks must cover exactly the occupied degrees")
        p = _require_prime_field(space)
        fixed = {}
        for d in degrees:
            n = len(space.indices_of_degree(d))
            block = tuple(tuple(int(x) % p for x in row) for row in blocks[d])
            if len(block) != n or any(len(row) != n for row in block):
                raise OrbitError("degree-%d block must be %dx%d" % (d, n, n))
            fixed[d] = block
        self.blocks = fixed
        self._key = tuple((d, self.blocks[d]) for d in degrees)

    @staticmethod
    def identity(space: GradedSpace) -> "GradedAutomorphism":
        blocks = {}
        for d in space.degrees_present():
            n = len(space.indices_of_degree(d))
            blocks[d] = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return GradedAutomorphism(space, blocks)

    def key(self):
        return self._key

    def __eq__(self, other):
        return (isinstance(other, GradedAutomorphism)
                and self.space == other.space and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "GradedAutomorphism(%r)" % (self._key,)

    def compose(self, other: "GradedAutomorphism") -> "GradedAutomorphism":
        """self after other, blockwise matrix product."""
        if self.space != other.space:
            raise OrbitError("composition across different spaces")
        p = self.space.field.characteristic
        blocks = {}
        for d, a in self.blocks.items():
            b = other.blocks[d]
            n = len(a)
            blocks[d] = [[sum(a[i][k] * b[k][j] for k in range(n)) % p
                          for j in range(n)] for i in range(n)]
        return GradedAutomorphism(self.space, blocks)

    def inverse(self) -> "GradedAutomorphism":
        field = self.space.field
        blocks = {}
        for d, block in self.blocks.items():
            inv = exactmat.invert(field, [list(row) for row in block])
            if inv is None:
                raise OrbitError("degree-%d block is singular" % d)
            blocks[d] = inv
        return GradedAutomorphism(self.space, blocks)

    def as_multiop(self) -> MultiOp:
        space = self.space
        field = space.field
        entries = {}
        for d, block in self.blocks.items():
            idx = space.indices_of_degree(d)
            for c, j in enumerate(idx):
                row = {}
                for r, i in enumerate(idx):
                    if block[r][c]:
                        row[(i,)] = block[r][c]
                if row:
                    entries[(j,)] = row
        return MultiOp(space, 1, 1, 0, entries, _trusted=True)

    @staticmethod
    def from_multiop(op: MultiOp) -> "GradedAutomorphism":
        space = op.space
        if op.biarity() != (1, 1) or op.degree != 0:
            raise OrbitError("expected a degree-0 (1,1) operation")
        blocks = {}
        for d in space.degrees_present():
            idx = space.indices_of_degree(d)
            pos = {i: r for r, i in enumerate(idx)}
            n = len(idx)
            block = [[0] * n for _ in range(n)]
            for c, j in enumerate(idx):
                for out_t, coeff in op.entries.get((j,), {}).items():
                    block[pos[out_t[0]]][c] = int(coeff)
            blocks[d] = block
        return GradedAutomorphism(space, blocks)

    def to_json(self) -> dict:
        return {str(d): [list(row) for row in block]
                for d, block in self.blocks.items()}


def graded_linear_order(space: GradedSpace, q: int) -> int:
    """Order of the group of degree-preserving invertible maps over F_q."""
    total = 1
    for d, dim in space.dims_by_degree().items():
        for k in range(dim):
            total *= q ** dim - q ** k
    return total


def _candidate_estimate(space: GradedSpace, q: int) -> int:
    """Upper bound on block-tuple candidates, with the unit block pruned."""
    estimate = 1
    for d, dim in space.dims_by_degree().items():
        if d == 0 and dim == 1:
            continue
        estimate *= q ** (dim * dim)
    return estimate


def _check_budget(space: GradedSpace, q: int, budget: int) -> None:
    estimate = _candidate_estimate(space, q)
    if estimate > budget:
        raise BudgetExceededError(
            "candidate count estimate %d exceeds budget %d" % (estimate, budget),
            estimate)


def _invertible_blocks(field: PrimeField, n: int, fix_vector=None) -> list:
    """All invertible n x n matrices over F_p, optionally fixing a vector."""
    p = field.characteristic
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        mat = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if fix_vector is not None:
            if any(sum(mat[i][j] * fix_vector[j] for j in range(n)) % p
                   != fix_vector[i] for i in range(n)):
                continue
        if exactmat.is_invertible(field, mat):
            out.append(tuple(tuple(row) for row in mat))
    return out


def _block_candidates(s: FrobeniusStructure) -> dict:
    """Per-degree invertible block candidates, unit block forced first."""
    space = s.space
    field = space.field
    candidates = {}
    for d in space.degrees_present():
        idx = space.indices_of_degree(d)
        n = len(idx)
        if d == 0:
            unit = s.unit_vector()
            vec = [unit.get(i, 0) for i in idx]
            if n == 1:
                candidates[d] = [((1,),)] if vec[0] == 1 else \
                    [((c,),) for c in range(1, field.characteristic)
                     if c * vec[0] % field.characteristic == vec[0]]
            else:
                candidates[d] = _invertible_blocks(field, n, fix_vector=vec)
        else:
            candidates[d] = _invertible_blocks(field, n)
    return candidates


def _mu_table(s: FrobeniusStructure) -> dict:
    return {(i, j): {t[0]: int(c) for t, c in row.items()}
            for (i, j), row in s.mu.entries.items()}


def _delta_table(s: FrobeniusStructure) -> dict:
    return {i: {t: int(c) for t, c in row.items()}
            for (i,), row in s.delta.entries.items()}


def _full_matrix(space: GradedSpace, blocks: dict) -> list:
    n = space.dim
    mat = [[0] * n for _ in range(n)]
    for d, block in blocks.items():
        idx = space.indices_of_degree(d)
        for r, i in enumerate(idx):
            for c, j in enumerate(idx):
                mat[i][j] = block[r][c]
    return mat


def _preserves_product(mat, mu, p, dim) -> bool:
    # g(e_i) * g(e_j) == g(e_i * e_j) for all basis pairs.
    cols = [[mat[r][c] for r in range(dim)] for c in range(dim)]
    for i in range(dim):
        ci = cols[i]
        for j in range(dim):
            cj = cols[j]
            lhs = {}
            for u in range(dim):
                a = ci[u]
                if not a:
                    continue
                for v in range(dim):
                    b = cj[v]
                    if not b:
                        continue
                    row = mu.get((u, v))
                    if not row:
                        continue
                    ab = a * b
                    for k, c in row.items():
                        lhs[k] = (lhs.get(k, 0) + ab * c) % p
            rhs = {}
            for k, c in mu.get((i, j), {}).items():
                ck = cols[k]
                for t in range(dim):
                    if ck[t]:
                        rhs[t] = (rhs.get(t, 0) + c * ck[t]) % p
            keys = set(lhs) | set(rhs)
            if any((lhs.get(k, 0) - rhs.get(k, 0)) % p for k in keys):
                return False
    return True


def enumerate_algebra_automorphisms(s: FrobeniusStructure,
                                    budget: int = DEFAULT_BUDGET) -> list:
    """All grading-preserving invertible maps with g(xy)=g(x)g(y), g(1)=1."""
    space = s.space
    p = _require_prime_field(space)
    _check_budget(space, p, budget)
    candidates = _block_candidates(s)
    degrees = space.degrees_present()
    mu = _mu_table(s)
    found = []
    for combo in itertools.product(*(candidates[d] for d in degrees)):
        blocks = dict(zip(degrees, combo))
        mat = _full_matrix(space, blocks)
        if _preserves_product(mat, mu, p, space.dim):
            found.append(GradedAutomorphism(space, blocks))
    found.sort(key=GradedAutomorphism.key)
    return found


def _preserves_coproduct_and_counit(g: GradedAutomorphism,
                                    s: FrobeniusStructure) -> bool:
    space = s.space
    p = space.field.characteristic
    dim = space.dim
    mat = _full_matrix(space, g.blocks)
    cols = [[mat[r][c] for r in range(dim)] for c in range(dim)]
    delta = _delta_table(s)
    eps = {i: int(c) for (i,), row in s.eps.entries.items()
           for t, c in row.items()}
    for i in range(dim):
        # counit: eps(g(e_i)) == eps(e_i)
        val = sum(cols[i][u] * eps.get(u, 0) for u in range(dim)) % p
        if val != eps.get(i, 0) % p:
            return False
        # coproduct: delta(g(e_i)) == (g (x) g)(delta(e_i)); g has degree 0
        # so the tensor square carries no sign.
        lhs = {}
        for u in range(dim):
            a = cols[i][u]
            if not a:
                continue
            for (x, y), c in delta.get(u, {}).items():
                lhs[(x, y)] = (lhs.get((x, y), 0) + a * c) % p
        rhs = {}
        for (x, y), c in delta.get(i, {}).items():
            cx, cy = cols[x], cols[y]
            for u in range(dim):
                if not cx[u]:
                    continue
                cu = c * cx[u]
                for v in range(dim):
                    if cy[v]:
                        rhs[(u, v)] = (rhs.get((u, v), 0) + cu * cy[v]) % p
        keys = set(lhs) | set(rhs)
        if any((lhs.get(k, 0) - rhs.get(k, 0)) % p for k in keys):
            return False
    return True


def enumerate_frobenius_automorphisms(s: FrobeniusStructure,
                                      budget: int = DEFAULT_BUDGET,
                                      algebra: list = None) -> list:
    """The algebra automorphisms that also preserve delta and eps exactly."""
    if algebra is None:
        algebra = enumerate_algebra_automorphisms(s, budget)
    return [g for g in algebra if _preserves_coproduct_and_counit(g, s)]


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    order = p - 1
    factors = set()
    n, d = order, 2
    while d * d <= n:
        while n % d == 0:
            factors.add(d)
            n //= d
        d += 1
    if n > 1:
        factors.add(n)
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise OrbitError("no primitive root mod %d" % p)


def gl_generators(space: GradedSpace) -> list:
    """Generators of the full graded linear group: per-degree transvections
    plus one primitive-root scaling."""
    p = _require_prime_field(space)
    zeta = _primitive_root(p)
    gens = []
    identity = GradedAutomorphism.identity(space)
    for d in space.degrees_present():
        n = len(space.indices_of_degree(d))
        base = [list(row) for row in identity.blocks[d]]
        if zeta != 1:
            block = [row[:] for row in base]
            block[0][0] = zeta
            blocks = {e: identity.blocks[e] for e in space.degrees_present()}
            blocks[d] = block
            gens.append(GradedAutomorphism(space, blocks))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                block = [row[:] for row in base]
                block[i][j] = 1
                blocks = {e: identity.blocks[e] for e in space.degrees_present()}
                blocks[d] = block
                gens.append(GradedAutomorphism(space, blocks))
    return gens


def structure_tensors(s: FrobeniusStructure, which: str) -> tuple:
    if which == "algebra":
        return (s.mu, s.eta)
    if which == "frobenius":
        return (s.mu, s.eta, s.delta, s.eps)
    raise OrbitError("which must be 'algebra' or 'frobenius', got %r" % (which,))


def serialize_tensors(ops: tuple) -> str:
    return json.dumps([op.to_json() for op in ops], sort_keys=True,
                      separators=(",", ":"))


class OrbitResult:

    def __init__(self, size: int, canonical_key: str, method: str):
        self.size = size
        self.canonical_key = canonical_key
        self.method = method

    def canonical(self):
        return json.loads(self.canonical_key)

    def to_json(self) -> dict:
        return {"size": self.size, "canonical": self.canonical(),
                "method": self.method}


def _conjugate_tensors(conj: Conjugator, ops: tuple) -> tuple:
    return tuple(conj.conjugate(op) for op in ops)


def _all_group_elements(space: GradedSpace):
    field = space.field
    degrees = space.degrees_present()
    per_degree = [_invertible_blocks(field, len(space.indices_of_degree(d)))
                  for d in degrees]
    for combo in itertools.product(*per_degree):
        yield GradedAutomorphism(space, dict(zip(degrees, combo)))


def orbit_of_structure(s: FrobeniusStructure, which: str,
                       budget: int = DEFAULT_BUDGET) -> OrbitResult:
    """Orbit of the chosen tensor tuple under graded linear conjugation.

    Small groups are walked element by element; past FULL_LOOP_LIMIT the
    orbit is closed up under a generating set, which reaches the same set
    because orbits of a group equal orbits of any generating set's closure.
    """
    space = s.space
    p = _require_prime_field(space)
    group_order = graded_linear_order(space, p)
    if group_order > budget:
        raise BudgetExceededError(
            "graded linear group order %d exceeds budget %d"
            % (group_order, budget), group_order)
    start = structure_tensors(s, which)
    if group_order <= FULL_LOOP_LIMIT:
        seen = set()
        best = None
        for g in _all_group_elements(space):
            conj = Conjugator(g.as_multiop())
            key = serialize_tensors(_conjugate_tensors(conj, start))
            seen.add(key)
            if best is None or key < best:
                best = key
        return OrbitResult(len(seen), best, "full-group")

    gens = gl_generators(space)
    conjs = [Conjugator(g.as_multiop()) for g in gens]
    start_key = serialize_tensors(start)
    seen = {start_key}
    best = start_key
    queue = [start]
    while queue:
        ops = queue.pop()
        for conj in conjs:
            moved = _conjugate_tensors(conj, ops)
            key = serialize_tensors(moved)
            if key not in seen:
                seen.add(key)
                if key < best:
                    best = key
                queue.append(moved)
    return OrbitResult(len(seen), best, "generator-closure")


def _gsp_order(g: int, q: int) -> int:
    total = q - 1
    total *= q ** (g * g)
    for i in range(1, g + 1):
        total *= q ** (2 * i) - 1
    return total


def _gl_order(n: int, q: int) -> int:
    total = 1
    for k in range(n):
        total *= q ** n - q ** k
    return total


class AutOrbitReport:
    """All group orders, orbit sizes, coset counts and verdicts for one
    structure over one prime field."""

    def __init__(self, spec_text: str, q: int):
        self.spec_text = spec_text
        self.q = q
        self.aut_linear = 0
        self.aut_algebra = 0
        self.aut_frobenius = 0
        self.orbit_algebra = None
        self.orbit_frobenius = None
        self.coset_algebra = 0
        self.coset_frobenius = 0
        self.relative_count = 0
        self.strict_equal = False
        self.strict_witness = None
        self.chi = 0
        self.handle_ok = False
        self.lambda0 = "0"
        self.notes = []

    def to_json(self) -> dict:
        return {
            "spec": self.spec_text,
            "q": self.q,
            "orders": {
                "graded_linear": self.aut_linear,
                "algebra": self.aut_algebra,
                "frobenius": self.aut_frobenius,
            },
            "orbits": {
                "algebra": self.orbit_algebra.to_json(),
                "frobenius": self.orbit_frobenius.to_json(),
            },
            "coset_counts": {
                "algebra": self.coset_algebra,
                "frobenius": self.coset_frobenius,
            },
            "relative_count": self.relative_count,
            "strict_automorphisms_match_algebra": self.strict_equal,
            "strict_mismatch_witness": self.strict_witness,
            "euler_characteristic": self.chi,
            "handle_element_ok": self.handle_ok,
            "lambda0": self.lambda0,
            "notes": list(self.notes),
        }


def realization_count_report(spec, q: int,
                             budget: int = DEFAULT_BUDGET) -> AutOrbitReport:
    """Group orders, orbit sizes and coset counts for a manifold over F_q."""
    from .frobenius import find_top_class, handle_element_check
    from .manifolds import build_structure, euler_characteristic

    s = build_structure(spec, PrimeField(q))
    space = s.space
    report = AutOrbitReport(spec.text(), q)
    report.aut_linear = graded_linear_order(space, q)

    algebra = enumerate_algebra_automorphisms(s, budget)
    frob = enumerate_frobenius_automorphisms(s, budget, algebra=algebra)
    report.aut_algebra = len(algebra)
    report.aut_frobenius = len(frob)
    frob_keys = {g.key() for g in frob}
    if report.aut_frobenius == report.aut_algebra:
        report.strict_equal = True
    else:
        witness = next(g for g in algebra if g.key() not in frob_keys)
        report.strict_witness = witness.to_json()

    report.orbit_algebra = orbit_of_structure(s, "algebra", budget)
    report.orbit_frobenius = orbit_of_structure(s, "frobenius", budget)

    for orbit, order, label in (
            (report.orbit_algebra, report.aut_algebra, "algebra"),
            (report.orbit_frobenius, report.aut_frobenius, "frobenius")):
        if orbit.size * order != report.aut_linear:
            raise OrbitError(
                "orbit-stabilizer identity failed for the %s tensor: "
                "%d * %d != %d"
                % (label, orbit.size, order, report.aut_linear))
    report.coset_algebra = report.orbit_algebra.size
    report.coset_frobenius = report.orbit_frobenius.size
    if report.aut_algebra % report.aut_frobenius:
        raise OrbitError("strict subgroup index is not integral")
    report.relative_count = report.aut_algebra // report.aut_frobenius

    report.chi = euler_characteristic(space)
    top = find_top_class(s)
    report.handle_ok = (top is not None
                        and handle_element_check(s, report.chi, top))
    field = space.field
    unit = s.unit_vector()
    lam0 = field.zero
    for i, c in unit.items():
        lam0 = field.add(lam0, field.mul(
            c, s.eps.entries.get((i,), {}).get((), field.zero)))
    report.lambda0 = field.serialize(lam0)

    if spec.kind == "surface" and spec.param >= 1:
        g = spec.param
        free_top = _gl_order(2 * g, q) * (q - 1)
        similitude = _gsp_order(g, q)
        report.notes.append(
            "degree-1 block count: free-top-scalar prediction %d vs "
            "similitude prediction %d; enumeration found %d"
            % (free_top, similitude, report.aut_algebra))
    return report
