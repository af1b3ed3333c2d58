"""Hyperplane arrangements and their singular-locus constructions.

An arrangement is an ordered list of pairwise independent linear forms.
All lattice work happens on the codimension-2 stratum: the flats cut out
by pairs of hyperplanes, each with its multiplicity (number of member
hyperplanes) and a canonical reduced-echelon basis of its defining pair
of linear forms.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from . import linalg
from .errors import InternalLimitError, ParseError, ValidationError
from .groebner import Ideal, intersect_many
from .polyring import (GF, QQ, DEFAULT_PRIME, PolyRing, Polynomial,
                       expand_product, gradient, linear_coefficients,
                       parse_linear_expr, validate_linear_form)

_MAX_FILE_VARS = 8
_SECTION_RETRIES = 32


def standard_ring(field=None, names=("x", "y", "z", "w")):
    return PolyRing(names, field if field is not None else GF(DEFAULT_PRIME))


class Flat:
    """Codimension-2 intersection locus of two or more hyperplanes."""

    def __init__(self, basis, members):
        self.basis = tuple(tuple(row) for row in basis)
        self.members = tuple(members)
        if len(self.basis) != 2:
            raise ValidationError("a flat needs exactly two basis forms")
        if len(self.members) < 2:
            raise ValidationError("a flat needs at least two member hyperplanes")

    @property
    def multiplicity(self):
        return len(self.members)

    def is_reduced(self):
        return self.multiplicity == 2

    def basis_forms(self, ring):
        return (ring.linear_form(list(self.basis[0])),
                ring.linear_form(list(self.basis[1])))

    def prime(self, ring):
        return Ideal(ring, self.basis_forms(ring))

    def prime_power(self, ring, b):
        """The b-th power of the flat prime (symbolic = ordinary here)."""
        if b < 0:
            raise ValidationError("negative power of a flat prime")
        if b == 0:
            return Ideal(ring, (ring.one(),))
        b1, b2 = self.basis_forms(ring)
        gens = []
        for a in range(b + 1):
            gens.append(b1 ** a * b2 ** (b - a))
        return Ideal(ring, tuple(gens))

    def __eq__(self, other):
        return isinstance(other, Flat) and other.basis == self.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Flat(e={self.multiplicity}, members={list(self.members)})"


class Arrangement:
    """Ordered list of pairwise independent linear forms in a fixed ring."""

    def __init__(self, ring, forms):
        forms = tuple(forms)
        for f in forms:
            if f.ring != ring:
                raise ValidationError("arrangement forms from a different ring")
            validate_linear_form(f)
        self.ring = ring
        self.forms = forms
        self._check_pairwise_independent()
        self._flats = None
        self._poly = None

    def _check_pairwise_independent(self):
        field = self.ring.field
        rows = [linear_coefficients(f) for f in self.forms]
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if linalg.rank([rows[i], rows[j]], field) < 2:
                    raise ValidationError(
                        f"forms {i + 1} and {j + 1} are dependent: "
                        f"{self.forms[i]} vs {self.forms[j]}")

    @property
    def d(self):
        return len(self.forms)

    @property
    def nvars(self):
        return self.ring.nvars

    def coefficient_rows(self):
        return [linear_coefficients(f) for f in self.forms]

    def defining_polynomial(self):
        if self._poly is None:
            self._poly = expand_product(list(self.forms))
        return self._poly

    def flats(self):
        if self._flats is None:
            self._flats = tuple(intersection_flats(self))
        return self._flats

    def flat_multiset(self):
        """Multiplicity counts, e.g. {3: 25, 2: 30}."""
        return Counter(f.multiplicity for f in self.flats())

    def membership_family(self):
        """The flat -> member-set hypergraph as a sorted tuple."""
        return tuple(sorted(f.members for f in self.flats()))

    def __repr__(self):
        return f"Arrangement({self.d} forms in {self.ring})"


# ---------------------------------------------------------------------------
# parsing


def parse_arrangement(text, field=None):
    """Parse the .arr format: 'vars:' header then one linear form per line."""
    field = field if field is not None else GF(DEFAULT_PRIME)
    ring = None
    forms = []
    rows = []
    lines_seen = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            if not line.startswith("vars:"):
                raise ParseError("expected a 'vars:' header first", lineno)
            names = line[len("vars:"):].split()
            if not names:
                raise ParseError("no variable names after 'vars:'", lineno)
            if len(names) > _MAX_FILE_VARS:
                raise ParseError(
                    f"at most {_MAX_FILE_VARS} variables supported, got {len(names)}",
                    lineno)
            ring = PolyRing(tuple(names), field)
            continue
        form = parse_linear_expr(ring, line, line=lineno)
        row = linear_coefficients(form)
        for prev_row, prev_line in zip(rows, lines_seen):
            if linalg.rank([prev_row, row], field) < 2:
                raise ParseError(
                    f"form duplicates line {prev_line} up to scale", lineno)
        rows.append(row)
        lines_seen.append(lineno)
        forms.append(form)
    if ring is None:
        raise ParseError("empty arrangement file")
    if not forms:
        raise ParseError("no linear forms in arrangement file")
    return Arrangement(ring, forms)


class Graph:
    """Simple undirected graph: no loops, no repeated edges."""

    def __init__(self, vertices, edges):
        self.vertices = vertices
        seen = set()
        out = []
        for a, b in edges:
            if a == b:
                raise ValidationError(f"loop at vertex {a}")
            if not (1 <= a <= vertices and 1 <= b <= vertices):
                raise ValidationError(f"edge ({a},{b}) out of range")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValidationError(f"repeated edge {key}")
            seen.add(key)
            out.append(key)
        self.edges = tuple(out)

    def triangles(self):
        """All 3-cycles as sorted vertex triples."""
        eset = set(self.edges)
        out = set()
        for (a, b), (c, d) in itertools.combinations(self.edges, 2):
            shared = {a, b} & {c, d}
            if len(shared) != 1:
                continue
            u = ({a, b} - shared).pop()
            v = ({c, d} - shared).pop()
            if (min(u, v), max(u, v)) in eset:
                out.add(tuple(sorted([u, v, shared.pop()])))
        return sorted(out)

    def __repr__(self):
        return f"Graph({self.vertices} vertices, {len(self.edges)} edges)"


def parse_graph(text):
    """Parse the .graph format: 'vertices: v' then 'edge: i j' lines."""
    vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if vertices is None:
            if not line.startswith("vertices:"):
                raise ParseError("expected a 'vertices:' header first", lineno)
            try:
                vertices = int(line[len("vertices:"):].strip())
            except ValueError:
                raise ParseError("vertex count is not an integer", lineno)
            continue
        if not line.startswith("edge:"):
            raise ParseError(f"expected 'edge: i j', got {line!r}", lineno)
        parts = line[len("edge:"):].split()
        if len(parts) != 2:
            raise ParseError("an edge needs exactly two endpoints", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno)
        edges.append((a, b))
    if vertices is None:
        raise ParseError("empty graph file")
    try:
        return Graph(vertices, edges)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# the intersection lattice (codimension-2 stratum)


def intersection_flats(arr):
    """Distinct codimension-2 flats with members and multiplicities.

    Groups the C(d,2) hyperplane pairs by the reduced echelon basis of
    their span; the pair-counting identity sum C(e,2) = C(d,2) is
    asserted on the way out.
    """
    field = arr.ring.field
    rows = arr.coefficient_rows()
    d = len(rows)
    if d < 2:
        raise ValidationError("need at least two hyperplanes for a flat")
    by_basis = {}
    for i in range(d):
        for j in range(i + 1, d):
            ech, _ = linalg.rref([rows[i], rows[j]], field)
            key = tuple(tuple(r) for r in ech)
            by_basis.setdefault(key, set()).update((i, j))
    flats = []
    pair_count = 0
    for basis, members in sorted(by_basis.items(), key=lambda kv: sorted(kv[1])):
        mem = sorted(members)
        flats.append(Flat(basis, mem))
        pair_count += len(mem) * (len(mem) - 1) // 2
    if pair_count != d * (d - 1) // 2:
        raise AssertionError("pair-counting identity failed on the flats")
    return flats


def combinatorial_degrees(arr):
    """(number of flats, total degree of the top-dimensional locus)."""
    flats = arr.flats()
    deg_red = len(flats)
    deg_top = sum((f.multiplicity - 1) ** 2 if f.multiplicity >= 3 else 1
                  for f in flats)
    return deg_red, deg_top


# ---------------------------------------------------------------------------
# singular-locus ideals


def jacobian_ideal(arr):
    """Ideal of the partial derivatives of the defining polynomial.

    Always has height two for an arrangement of at least two planes;
    asserted via the Hilbert dimension of the quotient.
    """
    if arr.d < 2:
        raise ValidationError("the singular locus needs at least two hyperplanes")
    _check_prime_safety(arr)
    F = arr.defining_polynomial()
    ideal = Ideal(arr.ring, tuple(g for g in gradient(F) if not g.is_zero()))
    from .homology import hilbert
    codim = arr.ring.nvars - hilbert(ideal).dimension
    if codim != 2:
        raise AssertionError(f"Jacobian ideal has height {codim}, expected 2")
    return ideal


def radical_comb(arr):
    """Intersection of all flat primes: the reduced singular locus."""
    _check_prime_safety(arr)
    ring = arr.ring
    primes = [f.prime(ring) for f in arr.flats()]
    return intersect_many(primes)


def pencil_component(flat, ring, vecs=None):
    """The complete intersection cut out at one flat.

    For multiplicity 2 this is the flat prime.  Otherwise the member
    forms are rewritten in the flat's echelon basis (s, t), their product
    g is differentiated, and (g_s, g_t) is pushed back through s, t; the
    result is primary to the flat prime with degree (e-1)^2.
    """
    b1, b2 = flat.basis_forms(ring)
    if flat.multiplicity == 2:
        return Ideal(ring, (b1, b2))
    field = ring.field
    pencil = PolyRing(("s@", "t@"), field)
    g = pencil.one()
    basis_rows = [list(flat.basis[0]), list(flat.basis[1])]
    for k in flat.members:
        coords = linalg.solve_in_span(vecs[k], basis_rows, field)
        if coords is None:
            raise AssertionError("member form fell out of its flat's span")
        g = g * pencil.linear_form(coords)
    gs = g.partial_derivative(0).substitute([b1, b2])
    gt = g.partial_derivative(1).substitute([b1, b2])
    return Ideal(ring, (gs, gt))


def top_comb(arr):
    """Intersection of the per-flat complete intersections.

    This is the height-two unmixed part of the Jacobian ideal; the
    containment and degree invariants exercised by the test suite certify
    the identification.
    """
    _check_prime_safety(arr)
    ring = arr.ring
    vecs = arr.coefficient_rows()
    comps = [pencil_component(f, ring, vecs) for f in arr.flats()]
    return intersect_many(comps)


def symbolic_intersection(arr, powers, override=False):
    """Intersection of chosen powers of the flat primes.

    `powers` maps each flat to an exponent.  Without `override`, flats of
    multiplicity 2 must get exponent 1 and flats of multiplicity e >= 3
    any exponent between 0 and e; zero exponents contribute the unit
    ideal (and are skipped).
    """
    _check_prime_safety(arr)
    ring = arr.ring
    flats = arr.flats()
    missing = [f for f in flats if f not in powers]
    if missing:
        raise ValidationError(f"no exponent for flat {missing[0]!r}")
    if not override:
        for f in flats:
            b = powers[f]
            if f.multiplicity == 2 and b != 1:
                raise ValidationError(
                    f"flat {f!r} has multiplicity 2 and needs exponent 1, got {b} "
                    "(pass override to force)")
            if f.multiplicity >= 3 and not 0 <= b <= f.multiplicity:
                raise ValidationError(
                    f"exponent {b} for flat {f!r} is outside 0..{f.multiplicity} "
                    "(pass override to force)")
    ideals = [f.prime_power(ring, powers[f]) for f in flats if powers[f] > 0]
    if not ideals:
        return Ideal(ring, (ring.one(),))
    return intersect_many(ideals)


def rule_powers(arr, k):
    """Exponent map following the construction rule: e=2 flats get 1."""
    return {f: (k if f.multiplicity >= 3 else 1) for f in arr.flats()}


def uniform_powers(arr, k):
    """Exponent k for every flat (symbolic power of the radical)."""
    return {f: k for f in arr.flats()}


def _check_prime_safety(arr):
    p = arr.ring.field.p
    if p is None:
        return
    degree = arr.d
    if p <= degree:
        raise ValidationError(
            f"field characteristic {p} is too small for degree {degree}; use QQ")
    for f in arr.flats():
        if f.multiplicity % p == 0:
            raise ValidationError(
                f"characteristic {p} divides a flat multiplicity; use QQ")


# ---------------------------------------------------------------------------
# shared-plane hypothesis and witnesses


def hypothesis_check(arr):
    """Whether no hyperplane lies in two distinct non-reduced flat primes.

    Returns (holds, witnesses); each witness is (plane_index, flat, flat).
    """
    field = arr.ring.field
    rows = arr.coefficient_rows()
    nonreduced = [f for f in arr.flats() if f.multiplicity >= 3]
    witnesses = []
    for i, row in enumerate(rows):
        containing = [f for f in nonreduced
                      if linalg.in_span(row, [list(b) for b in f.basis], field)]
        for a in range(len(containing)):
            for b in range(a + 1, len(containing)):
                witnesses.append((i, containing[a], containing[b]))
    return (not witnesses), witnesses


# ---------------------------------------------------------------------------
# graphic arrangements


def graphic_arrangement(graph, field=None):
    """One hyperplane x_i - x_j per edge, in variables x1..xv."""
    if len(graph.edges) < 2:
        raise ValidationError("a graphic arrangement needs at least two edges")
    field = field if field is not None else GF(DEFAULT_PRIME)
    names = tuple(f"x{i}" for i in range(1, graph.vertices + 1))
    ring = PolyRing(names, field)
    forms = []
    for a, b in graph.edges:
        coeffs = [field.zero] * graph.vertices
        coeffs[a - 1] = field.one
        coeffs[b - 1] = field.neg(field.one)
        forms.append(ring.linear_form(coeffs))
    return Arrangement(ring, forms)


def triangle_condition(graph):
    """Whether no two 3-cycles share an edge; witnesses are violations.

    Returns (holds, witnesses) with witnesses (edge, triangle, triangle).
    """
    triangles = graph.triangles()
    by_edge = {}
    for tri in triangles:
        a, b, c = tri
        for e in ((a, b), (a, c), (b, c)):
            by_edge.setdefault(e, []).append(tri)
    witnesses = []
    for e, tris in sorted(by_edge.items()):
        for i in range(len(tris)):
            for j in range(i + 1, len(tris)):
                witnesses.append((e, tris[i], tris[j]))
    return (not witnesses), witnesses


# ---------------------------------------------------------------------------
# generic hyperplane sections


def generic_section(arr, seed=0):
    """Cut an arrangement in P^n down to P^3 by a general linear section.

    The last n-3 variables are replaced by seeded random linear forms in
    the first four.  Genericity is re-verified: the sectioned forms must
    stay pairwise independent and the flat membership family must match
    the original arrangement's.  Retries with fresh randomness up to 32
    times, then gives up loudly.
    """
    if arr.nvars < 4:
        raise ValidationError("sections need an ambient dimension of at least 3")
    if arr.nvars == 4:
        return arr
    field = arr.ring.field
    target = PolyRing(tuple(arr.ring.names[:4]), field)
    reference = arr.membership_family()
    rng = random.Random(seed)
    for _ in range(_SECTION_RETRIES):
        images = [target.variable(i) for i in range(4)]
        for _ in range(arr.nvars - 4):
            images.append(target.linear_form(
                [field.from_int(rng.randint(-999, 999)) for _ in range(4)]))
        try:
            forms = [f.substitute(images) for f in arr.forms]
            sectioned = Arrangement(target, forms)
        except ValidationError:
            continue
        if sectioned.membership_family() == reference:
            return sectioned
    raise InternalLimitError(
        f"no generic section found after {_SECTION_RETRIES} attempts (seed {seed})")


# ---------------------------------------------------------------------------
# lattice isomorphism


def lattice_isomorphic(a, b):
    """Whether a hyperplane bijection carries one flat family to the other."""
    fa = [frozenset(f.members) for f in a.flats()]
    fb = [frozenset(f.members) for f in b.flats()]
    if a.d != b.d or len(fa) != len(fb):
        return False
    if sorted(len(s) for s in fa) != sorted(len(s) for s in fb):
        return False

    def signatures(d, family):
        sig = {i: tuple(sorted(len(s) for s in family if i in s)) for i in range(d)}
        # one refinement round over shared-flat neighborhoods
        refined = {}
        for i in range(d):
            local = []
            for s in family:
                if i in s:
                    local.append((len(s), tuple(sorted(sig[j] for j in s if j != i))))
            refined[i] = (sig[i], tuple(sorted(local)))
        return refined

    sig_a = signatures(a.d, fa)
    sig_b = signatures(b.d, fb)
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False

    set_b = set(fb)
    order = sorted(range(a.d),
                   key=lambda i: sum(1 for j in range(a.d) if sig_a[j] == sig_a[i]))
    assignment = {}
    used = set()

    def feasible():
        # every fully mapped flat of a must map onto a flat of b
        for s in fa:
            if all(i in assignment for i in s):
                img = frozenset(assignment[i] for i in s)
                if img not in set_b:
                    return False
        return True

    def backtrack(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in range(b.d):
            if j in used or sig_b[j] != sig_a[i]:
                continue
            assignment[i] = j
            used.add(j)
            if feasible() and backtrack(pos + 1):
                return True
            del assignment[i]
            used.discard(j)
        return False

    return backtrack(0)


# ---------------------------------------------------------------------------
# seeded generic data helpers shared with the liaison layer


def random_linear_form(ring, rng):
    while True:
        coeffs = [ring.field.from_int(rng.randint(-999, 999))
                  for _ in range(ring.nvars)]
        if any(not ring.field.is_zero(c) for c in coeffs):
            return ring.linear_form(coeffs)


def random_coordinate_change(rng, size=4, bound=9):
    """Invertible integer matrix with entries in [-bound, bound]."""
    from fractions import Fraction
    while True:
        M = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        mm = [[Fraction(c) for c in row] for row in M]
        det = Fraction(1)
        ok = True
        for c in range(size):
            piv = next((r for r in range(c, size) if mm[r][c]), None)
            if piv is None:
                ok = False
                break
            mm[c], mm[piv] = mm[piv], mm[c]
            det *= mm[c][c] * (-1 if piv != c else 1)
            for r in range(size):
                if r != c and mm[r][c]:
                    f = mm[r][c] / mm[c][c]
                    mm[r] = [x - f * y for x, y in zip(mm[r], mm[c])]
        if ok and det != 0 and det.numerator % DEFAULT_PRIME != 0:
            return M


def apply_coordinate_change(arr, matrix):
    """New arrangement with every form composed with the matrix."""
    ring = arr.ring
    field = ring.field
    out = []
    for row in arr.coefficient_rows():
        new = [field.zero] * ring.nvars
        for jj in range(ring.nvars):
            acc = field.zero
            for ii in range(ring.nvars):
                acc = field.add(acc, field.mul(row[ii],
                                               field.from_int(matrix[ii][jj])))
            new[jj] = acc
        out.append(ring.linear_form(new))
    return Arrangement(ring, out)
