"""Graded free resolutions, Betti tables, Hilbert data, Rao dimensions.

Resolutions are built by iterated syzygy steps on a reduced Groebner
basis.  Each step works in the induced (Schreyer) module order, where the
sort key of a term m*e_c is the key of m multiplied into the leading term
of the c-th generator one level down; keys stay plain integers and stay
additive under monomial multiplication, exactly as in the ring engine.
The resulting resolution is generally non-minimal; repeatedly pivoting on
nonzero-constant entries prunes it to the minimal one, whose twists are
the graded Betti numbers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from . import linalg
from .errors import InternalLimitError, ValidationError
from .groebner import (GREVLEX, Ideal, _Engine, _pack_plain, _to_internal,
                       _unpack_plain)
from .polyring import Polynomial

_CB = 20
_CMAX = (1 << _CB) - 1


# ---------------------------------------------------------------------------
# module engine: vectors over a free module with a Schreyer-style key

def _vmerge_sub_p(f, i0, g, c, dk, dw, dv, p):
    """f[i0:] - c * x^m * g for module vectors over F_p.

    Terms are (vkey, comp, kk, mw, coeff); dk/dw/dv are the ring key,
    packed-exponent and vkey increments of the multiplier monomial.
    """
    out = []
    push = out.append
    i, j = i0, 0
    nf, ng = len(f), len(g)
    while i < nf and j < ng:
        fi = f[i]
        gj = g[j]
        kg = gj[0] + dv
        kf = fi[0]
        if kf > kg:
            push(fi)
            i += 1
        elif kf < kg:
            push((kg, gj[1], gj[2] + dk, gj[3] + dw, (-c * gj[4]) % p))
            j += 1
        else:
            cc = (fi[4] - c * gj[4]) % p
            if cc:
                push((kf, fi[1], fi[2], fi[3], cc))
            i += 1
            j += 1
    if i < nf:
        out.extend(f[i:])
    while j < ng:
        gj = g[j]
        push((gj[0] + dv, gj[1], gj[2] + dk, gj[3] + dw, (-c * gj[4]) % p))
        j += 1
    return out


def _vmerge_sub_q(f, i0, g, c, dk, dw, dv):
    out = []
    push = out.append
    i, j = i0, 0
    nf, ng = len(f), len(g)
    while i < nf and j < ng:
        fi = f[i]
        gj = g[j]
        kg = gj[0] + dv
        kf = fi[0]
        if kf > kg:
            push(fi)
            i += 1
        elif kf < kg:
            push((kg, gj[1], gj[2] + dk, gj[3] + dw, -c * gj[4]))
            j += 1
        else:
            cc = fi[4] - c * gj[4]
            if cc:
                push((kf, fi[1], fi[2], fi[3], cc))
            i += 1
            j += 1
    if i < nf:
        out.extend(f[i:])
    while j < ng:
        gj = g[j]
        push((gj[0] + dv, gj[1], gj[2] + dk, gj[3] + dw, -c * gj[4]))
        j += 1
    return out


class _SyzygyLevel:
    """Generators of one step of the resolution, in engine form.

    vectors[i] lives in the free module one level down; lt data mirror the
    ring engine.  `mult` scales a ring key into a vkey increment at this
    level's coordinates.
    """

    def __init__(self, vectors, lt_comp, lt_kk, lt_w, lt_vkey, degrees, mult):
        self.vectors = vectors
        self.lt_comp = lt_comp
        self.lt_kk = lt_kk
        self.lt_w = lt_w
        self.lt_vkey = lt_vkey
        self.degrees = degrees
        self.mult = mult

    def __len__(self):
        return len(self.vectors)


def _level_from_ring_gb(internal_gb, engine, degrees):
    """Wrap a reduced ring GB as vectors in F_0 = R (single component 0)."""
    vectors = []
    for terms in internal_gb:
        vec = [((k << _CB) | _CMAX, 0, k, w, c) for k, w, c in terms]
        vectors.append(vec)
    lt_comp = [0] * len(vectors)
    lt_kk = [v[0][2] for v in vectors]
    lt_w = [v[0][3] for v in vectors]
    lt_vkey = [v[0][0] for v in vectors]
    return _SyzygyLevel(vectors, lt_comp, lt_kk, lt_w, lt_vkey, list(degrees),
                        mult=1 << _CB)


def _schreyer_step(level, engine):
    """Syzygies of a module Groebner basis, with their matrix columns.

    Returns (next_level, columns) where columns[j] maps component index ->
    list of (exps, coeff) describing the matrix of the new map.
    """
    ring = engine.ring
    p = engine.p
    guard = engine.guard
    nvars = ring.nvars
    keyf = engine.keyf
    vectors = level.vectors
    n = len(vectors)
    mult = level.mult

    by_comp = {}
    for i in range(n):
        by_comp.setdefault(level.lt_comp[i], []).append(i)

    # candidate pairs: per generator i, the minimal multipliers lcm/lt_i
    tasks = []
    for comp, idxs in by_comp.items():
        for a_pos, i in enumerate(idxs):
            ei = _unpack_plain(level.lt_w[i], nvars)
            cand = {}
            for j in idxs[a_pos + 1:]:
                ej = _unpack_plain(level.lt_w[j], nvars)
                u = tuple(max(x, y) - x for x, y in zip(ei, ej))
                if u not in cand:
                    cand[u] = j
            # minimal generators of the multiplier monomial ideal
            kept = []
            for u in sorted(cand, key=sum):
                if not any(all(a <= b for a, b in zip(v, u)) for v in kept):
                    kept.append(u)
            for u in kept:
                tasks.append((i, cand[u], u))

    # deterministic processing order: by degree then index
    tasks.sort(key=lambda t: (sum(t[2]) + level.degrees[t[0]], t[0], t[1]))

    next_vectors = []
    next_lt = []
    columns = []
    one = ring.field.one
    for i, j, u in tasks:
        ei = _unpack_plain(level.lt_w[i], nvars)
        ej = _unpack_plain(level.lt_w[j], nvars)
        lcm = tuple(a + b for a, b in zip(u, ei))
        uj = tuple(a - b for a, b in zip(lcm, ej))
        dk_i, dw_i = keyf(u), _pack_plain(u)
        dk_j, dw_j = keyf(uj), _pack_plain(uj)
        gi, gj = vectors[i], vectors[j]
        sp = [(vk + dk_i * mult, cc, kk + dk_i, mw + dw_i, co)
              for vk, cc, kk, mw, co in gi]
        if p:
            sp = _vmerge_sub_p(sp, 0, gj, 1, dk_j, dw_j, dk_j * mult, p)
        else:
            sp = _vmerge_sub_q(sp, 0, gj, Fraction(1), dk_j, dw_j, dk_j * mult)
        # reduce to zero, recording quotients
        quotients = [(i, u, one), (j, uj, -one if p is None else (p - 1))]
        while sp:
            vk, comp, kk, mw, co = sp[0]
            red = -1
            wg = mw | guard
            for idx in by_comp.get(comp, ()):
                if (wg - level.lt_w[idx]) & guard == guard:
                    red = idx
                    break
            if red < 0:
                raise AssertionError(
                    "input to the syzygy step was not a Groebner basis "
                    "(S-vector does not reduce to zero)")
            dm = mw - level.lt_w[red]
            dmk = kk - level.lt_kk[red]
            if p:
                sp = _vmerge_sub_p(sp, 0, vectors[red], co, dmk, dm, dmk * mult, p)
            else:
                sp = _vmerge_sub_q(sp, 0, vectors[red], co, dmk, dm, dmk * mult)
            quotients.append((red, _unpack_plain(dm, nvars), ring.field.neg(co)))
        # assemble the syzygy as a vector in the new free module
        new_mult = mult << _CB
        terms = []
        col = {}
        for comp, mexps, coeff in quotients:
            dk = keyf(mexps)
            vkey = ((level.lt_vkey[comp] + dk * mult) << _CB) | (_CMAX - comp)
            terms.append((vkey, comp, dk, _pack_plain(mexps), coeff))
            col.setdefault(comp, []).append((mexps, coeff))
        terms.sort(key=lambda t: -t[0])
        assert terms[0][1] == i and terms[0][3] == _pack_plain(u), \
            "syzygy leading term does not match its predicted value"
        next_vectors.append(terms)
        next_lt.append((i, dk_i, _pack_plain(u), terms[0][0],
                        sum(u) + level.degrees[i]))
        columns.append(col)

    if not next_vectors:
        return None, []
    nxt = _SyzygyLevel(
        next_vectors,
        [t[0] for t in next_lt],
        [t[1] for t in next_lt],
        [t[2] for t in next_lt],
        [t[3] for t in next_lt],
        [t[4] for t in next_lt],
        mult << _CB,
    )
    return nxt, columns


# ---------------------------------------------------------------------------
# public graded types


class GradedFreeModule:
    """Free module with generator degrees (R(-a) contributes a)."""

    def __init__(self, twists):
        self.twists = tuple(twists)

    @property
    def rank(self):
        return len(self.twists)

    def __repr__(self):
        return f"F{list(self.twists)}"

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and other.twists == self.twists


class GradedMap:
    """Matrix of homogeneous polynomials between graded free modules.

    entries[(r, c)] has degree twists_source[c] - twists_target[r].
    """

    def __init__(self, source, target, entries):
        self.source = source
        self.target = target
        self.entries = {rc: p for rc, p in entries.items() if not p.is_zero()}
        for (r, c), p in self.entries.items():
            want = source.twists[c] - target.twists[r]
            if not p.is_homogeneous() or p.total_degree() != want:
                raise ValidationError(
                    f"entry ({r},{c}) has degree {p.total_degree()}, expected {want}")

    def entry(self, r, c):
        got = self.entries.get((r, c))
        if got is not None:
            return got
        return None

    def apply(self, column_vector):
        """Image of a source-coordinate vector of polynomials."""
        out = [None] * self.target.rank
        for (r, c), p in self.entries.items():
            v = column_vector[c]
            if v is None or v.is_zero():
                continue
            pv = p * v
            out[r] = pv if out[r] is None else out[r] + pv
        return out

    def __repr__(self):
        return f"GradedMap({self.source} -> {self.target}, {len(self.entries)} entries)"


class Resolution:
    """Graded free resolution of R/I: maps[k] sends F_{k+1} to F_k, F_0 = R."""

    def __init__(self, ring, modules, maps):
        self.ring = ring
        self.modules = modules
        self.maps = maps

    @property
    def length(self):
        return len(self.maps)

    def is_minimal(self):
        for m in self.maps:
            for p in m.entries.values():
                if p.is_constant():
                    return False
        return True

    def __repr__(self):
        return " <- ".join(repr(m) for m in self.modules)


class BettiTable:
    """Graded Betti numbers; entry (column i, row j) counts twists i+j."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_twists(cls, twist_lists):
        entries = {}
        for i, twists in enumerate(twist_lists):
            for d in twists:
                key = (i, d - i)
                entries[key] = entries.get(key, 0) + 1
        return cls(entries)

    @property
    def ncols(self):
        return max(i for i, _ in self.entries) + 1 if self.entries else 1

    @property
    def nrows(self):
        return max(j for _, j in self.entries) + 1 if self.entries else 1

    def entry(self, i, j):
        return self.entries.get((i, j), 0)

    def totals(self):
        out = [0] * self.ncols
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def row(self, j):
        return [self.entry(i, j) for i in range(self.ncols)]

    def __eq__(self, other):
        return isinstance(other, BettiTable) and other.entries == self.entries

    def __repr__(self):
        return f"BettiTable({self.totals()})"


def betti_text(table):
    """Fixed-width text layout with a Tot: footer, as used in reports."""
    ncols = table.ncols
    lines = ["    " + "".join(f"{i:5d}" for i in range(ncols))]
    rule = "-" * (5 * ncols + 5)
    lines.append(rule)
    for j in range(table.nrows):
        label = f"{j:2d}:"
        cells = "".join(f"{v if v else '-':>5}" for v in table.row(j))
        lines.append(f"{label:<4}"[:4] + cells)
    lines.append(rule)
    lines.append(f"{'Tot:':<4}" + "".join(f"{v if v else '-':>5}"
                                          for v in table.totals()))
    return "\n".join(lines)


def betti_json(table):
    return {
        "rows": [{"degree": j, "betti": table.row(j)} for j in range(table.nrows)],
        "total": table.totals(),
    }


class HilbertData:
    """Hilbert series numerator, polynomial, function and regularity index.

    The series of R/I is numerator(t) / (1-t)^nvars.  The Hilbert
    polynomial is stored by its coefficient list in the standard basis
    (Fractions, ascending powers).
    """

    def __init__(self, numerator, nvars):
        self.numerator = tuple(numerator)
        self.nvars = nvars
        reduced = list(numerator)
        dim = nvars
        while reduced and sum(reduced) == 0:
            # divide by (1 - t)
            out = []
            acc = 0
            for c in reduced[:-1]:
                acc += c
                out.append(acc)
            reduced = _trim(out)
            dim -= 1
        self.reduced_numerator = tuple(reduced)
        self.dimension = dim if reduced else 0
        self.hp_coeffs = self._polynomial_coeffs()
        self.regularity_index = self._regularity_index()

    # -- values ---------------------------------------------------------------
    def hilbert_function(self, d):
        if d < 0:
            return 0
        n = self.nvars
        return sum(c * comb(d - i + n - 1, n - 1)
                   for i, c in enumerate(self.numerator) if d - i >= 0)

    def hilbert_polynomial(self, d):
        acc = Fraction(0)
        for k, c in enumerate(self.hp_coeffs):
            acc += c * d ** k
        return acc

    def _polynomial_coeffs(self):
        dim = self.dimension
        if dim == 0 or not self.reduced_numerator:
            return ()
        coeffs = [Fraction(0)] * dim
        for i, c in enumerate(self.reduced_numerator):
            if c == 0:
                continue
            # binomial(t - i + dim - 1, dim - 1) as a polynomial in t
            poly = [Fraction(1)]
            for j in range(dim - 1):
                root = Fraction(i - dim + 1 + j)
                poly = [a - root * b for a, b in
                        zip([Fraction(0)] + poly, poly + [Fraction(0)])]
            fact = 1
            for j in range(1, dim):
                fact *= j
            for k in range(len(poly)):
                coeffs[k] += c * poly[k] / fact
        return tuple(coeffs)

    def _regularity_index(self):
        top = len(self.numerator)
        d = top
        while d >= 0 and self.hilbert_function(d) == self.hilbert_polynomial(d):
            d -= 1
        return d + 1

    def degree(self):
        """Degree of the projective scheme (normalized leading coefficient)."""
        if self.dimension == 0:
            return 0
        if not self.hp_coeffs:
            return 0
        lead = self.hp_coeffs[-1]
        fact = 1
        for j in range(1, self.dimension):
            fact *= j
        return int(lead * fact)

    def hp_string(self):
        """Exact text form, e.g. '130t - 1150' for a curve."""
        if not self.hp_coeffs:
            return "0"
        parts = []
        for k in range(len(self.hp_coeffs) - 1, -1, -1):
            c = self.hp_coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
            piece = f"{cs}{mono}"
            parts.append(piece)
        if not parts:
            return "0"
        text = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"HilbertData({self.hp_string()}, dim {self.dimension})"


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# Hilbert series of a monomial ideal (standard pivot recursion)


def _series_numerator(gens, nvars, memo):
    gens = tuple(sorted(gens))
    got = memo.get(gens)
    if got is not None:
        return got
    result = _series_numerator_raw(gens, nvars, memo)
    memo[gens] = result
    return result


def _poly_mul_shift(a, k, sign):
    out = [0] * (len(a) + k)
    for i, c in enumerate(a):
        out[i + k] += sign * c
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)]


def _series_numerator_raw(gens, nvars, memo):
    if not gens:
        return [1]
    # pairwise coprime: numerator is the product of (1 - t^deg)
    if all(all(min(a, b) == 0 for a, b in zip(gens[i], gens[j]))
           for i in range(len(gens)) for j in range(i + 1, len(gens))):
        num = [1]
        for g in gens:
            d = sum(g)
            num = _poly_add(num, _poly_mul_shift(num, d, -1))
        return num
    # pivot on the variable appearing in the most generators
    counts = [0] * nvars
    for g in gens:
        for v in range(nvars):
            if g[v]:
                counts[v] += 1
    v = max(range(nvars), key=lambda ix: counts[ix])
    # I + (x_v)
    plus = [g for g in gens if g[v] == 0]
    pivot = tuple(1 if ix == v else 0 for ix in range(nvars))
    plus.append(pivot)
    num_plus = _series_numerator(_minimalize(plus), nvars, memo)
    # I : x_v
    quot = [g[:v] + (max(g[v] - 1, 0),) + g[v + 1:] for g in gens]
    num_quot = _series_numerator(_minimalize(quot), nvars, memo)
    return _poly_add(num_plus, _poly_mul_shift(num_quot, 1, 1))


def _minimalize(gens):
    out = []
    for g in sorted(set(gens), key=sum):
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# public operations


def hilbert(ideal, order=GREVLEX):
    """Hilbert data of R/I from the leading-term ideal."""
    cached = getattr(ideal, "_hilbert_cache", None)
    if cached is not None:
        return cached
    gb = ideal.groebner(order)
    lead = [tuple(e) for e in gb.leading_exponents()]
    num = _series_numerator(_minimalize(lead), ideal.ring.nvars, {})
    data = HilbertData(_trim(list(num)), ideal.ring.nvars)
    ideal._hilbert_cache = data
    return data


def schreyer_syzygies(gens, twists=None):
    """Syzygies of a Groebner basis sitting in a graded free module.

    `gens` is either a list of polynomials (rank-1 case) or a list of
    equal-length polynomial vectors; `twists` gives the generator degrees
    of the ambient free module (all zero by default).  The input must be
    a Groebner basis: every S-vector has to reduce to zero against it,
    otherwise this raises.  Returned vectors pair to zero against `gens`.
    """
    if not gens:
        return []
    vectors_in = [[g] if isinstance(g, Polynomial) else list(g) for g in gens]
    rank = len(vectors_in[0])
    ring = vectors_in[0][0].ring
    if any(len(v) != rank for v in vectors_in):
        raise ValidationError("module elements of mixed rank")
    if twists is None:
        twists = [0] * rank
    engine = _Engine(ring, GREVLEX)
    keyf = engine.keyf
    # term-over-position order on the ambient module, grevlex on monomials
    vectors = []
    degrees = []
    for vec in vectors_in:
        terms = []
        deg = None
        for comp, poly in enumerate(vec):
            if poly.ring != ring:
                raise ValidationError("vector entries in mixed rings")
            for e, c in poly.terms.items():
                k = keyf(e)
                terms.append(((k << _CB) | (_CMAX - comp), comp, k,
                              _pack_plain(e), c))
                d = sum(e) + twists[comp]
                deg = d if deg is None or d > deg else deg
        if not terms:
            raise ValidationError("zero vector among the generators")
        terms.sort(key=lambda t: -t[0])
        vectors.append(terms)
        degrees.append(deg)
    level = _SyzygyLevel(
        vectors,
        [v[0][1] for v in vectors],
        [v[0][2] for v in vectors],
        [v[0][3] for v in vectors],
        [v[0][0] for v in vectors],
        degrees,
        mult=1 << _CB,
    )
    try:
        _, columns = _schreyer_step(level, engine)
    except AssertionError as exc:
        raise ValidationError(str(exc)) from exc
    out = []
    for col in columns:
        vec = []
        for c in range(len(gens)):
            if c in col:
                vec.append(Polynomial(ring, {tuple(e): co for e, co in col[c]}))
            else:
                vec.append(ring.zero())
        out.append(vec)
    return out


def _schreyer_resolution(ideal):
    """Non-minimal resolution of R/I via iterated syzygy steps.

    Returns (twist_lists, map_entry_dicts): twist_lists[k] are the
    generator degrees of F_k (twist_lists[0] == [0]), and
    map_entry_dicts[k] holds {(r, c): Polynomial} for F_{k+1} -> F_k.
    """
    ring = ideal.ring
    gb = ideal.groebner(GREVLEX)
    engine = _Engine(ring, GREVLEX)
    if not len(gb):
        return [[0]], []
    degrees = [p.total_degree() for p in gb.polys]
    level = _level_from_ring_gb(gb._polys, engine, degrees)

    twist_lists = [[0], list(degrees)]
    maps = [{(0, c): p for c, p in enumerate(gb.polys)}]
    for _ in range(ring.nvars + 1):
        nxt, columns = _schreyer_step(level, engine)
        if nxt is None:
            break
        entries = {}
        for c, col in enumerate(columns):
            for r, terms in col.items():
                entries[(r, c)] = Polynomial(
                    ring, {tuple(e): co for e, co in terms})
        maps.append(entries)
        twist_lists.append(list(nxt.degrees))
        level = nxt
    else:
        raise AssertionError("resolution exceeded the variable-count bound")
    return twist_lists, maps


def _prune_to_minimal(twist_lists, maps, field):
    """Cancel constant entries of the complex in place."""
    # live generator ids per homological level, in stable order
    live = [list(range(len(t))) for t in twist_lists]
    twists = [dict(enumerate(t)) for t in twist_lists]
    # per map: column dict and row occupancy
    cols = []
    rows = []
    for entries in maps:
        bycol = {}
        byrow = {}
        for (r, c), p in entries.items():
            bycol.setdefault(c, {})[r] = p
            byrow.setdefault(r, set()).add(c)
        cols.append(bycol)
        rows.append(byrow)

    def find_pivot(k):
        # Markowitz-style: least fill-in first
        best = None
        best_cost = None
        for c, column in cols[k].items():
            for r, p in column.items():
                if p.is_constant() and not p.is_zero():
                    cost = (len(rows[k].get(r, ())) - 1) * (len(column) - 1)
                    if best_cost is None or cost < best_cost:
                        best = (r, c, p.constant_coefficient())
                        best_cost = cost
                        if cost == 0:
                            return best
        return best

    progress = True
    while progress:
        progress = False
        for k in range(len(maps) - 1, -1, -1):
            while True:
                piv = find_pivot(k)
                if piv is None:
                    break
                progress = True
                r0, c0, u = piv
                inv_u = field.inv(u)
                pivot_col = cols[k][c0]
                # clear row r0 by column operations
                for c in list(rows[k].get(r0, ())):
                    if c == c0:
                        continue
                    factor = cols[k][c][r0].scale(inv_u)
                    target = cols[k][c]
                    for r, p in pivot_col.items():
                        delta = factor * p
                        if r in target:
                            s = target[r] - delta
                            if s.is_zero():
                                del target[r]
                                rows[k][r].discard(c)
                            else:
                                target[r] = s
                        else:
                            target[r] = -delta
                            rows[k].setdefault(r, set()).add(c)
                # delete generator c0 of F_{k+1} and generator r0 of F_k
                for r in list(pivot_col):
                    rows[k][r].discard(c0)
                del cols[k][c0]
                if r0 in rows[k]:
                    for c in list(rows[k][r0]):
                        cols[k][c].pop(r0, None)
                    del rows[k][r0]
                live[k + 1].remove(c0)
                del twists[k + 1][c0]
                live[k].remove(r0)
                del twists[k][r0]
                if k + 1 < len(maps):
                    # row c0 of the next map is zero after the implied updates
                    if c0 in rows[k + 1]:
                        for c in list(rows[k + 1][c0]):
                            cols[k + 1][c].pop(c0, None)
                        del rows[k + 1][c0]
                if k >= 1:
                    # column r0 of the previous map is zero likewise
                    if r0 in cols[k - 1]:
                        for r in list(cols[k - 1][r0]):
                            rows[k - 1].get(r, set()).discard(r0)
                        del cols[k - 1][r0]

    # drop empty tail levels, reindex densely
    while len(live) > 1 and not live[-1]:
        live.pop()
        twists.pop()
        cols.pop()
        rows.pop()
    new_twists = []
    new_maps = []
    for k, ids in enumerate(live):
        new_twists.append([twists[k][i] for i in ids])
    for k in range(len(live) - 1):
        src_index = {i: pos for pos, i in enumerate(live[k + 1])}
        tgt_index = {i: pos for pos, i in enumerate(live[k])}
        entries = {}
        for c, column in cols[k].items():
            for r, p in column.items():
                entries[(tgt_index[r], src_index[c])] = p
        new_maps.append(entries)
    return new_twists, new_maps


def minimal_free_resolution(ideal):
    """Minimal graded free resolution of R/I."""
    cached = getattr(ideal, "_resolution_cache", None)
    if cached is not None:
        return cached
    if ideal.is_unit():
        raise ValidationError("resolution requires a proper ideal")
    twist_lists, raw_maps = _schreyer_resolution(ideal)
    twists, maps = _prune_to_minimal(twist_lists, raw_maps, ideal.ring.field)
    modules = [GradedFreeModule(t) for t in twists]
    graded_maps = []
    for k, entries in enumerate(maps):
        graded_maps.append(GradedMap(modules[k + 1], modules[k], entries))
    res = Resolution(ideal.ring, modules, graded_maps)
    if not res.is_minimal():
        raise AssertionError("pruning left a constant entry in the resolution")
    ideal._resolution_cache = res
    return res


def betti_table(res):
    """Betti table of a minimal resolution."""
    if not res.is_minimal():
        raise ValidationError("Betti tables are read off minimal resolutions only")
    return BettiTable.from_twists([m.twists for m in res.modules])


def betti_of(ideal):
    return betti_table(minimal_free_resolution(ideal))


def dimensions(ideal):
    """(krull_dim, codim, projective_dim) of R/I for proper homogeneous I."""
    if ideal.is_unit():
        raise ValidationError("dimensions of the unit ideal are undefined")
    h = hilbert(ideal)
    res = minimal_free_resolution(ideal)
    krull = h.dimension
    return krull, ideal.ring.nvars - krull, res.length


def is_cm(ideal):
    """Cohen-Macaulayness of R/I: projective dimension equals codimension."""
    krull, codim, pd = dimensions(ideal)
    return pd == codim


def _monomials_of_degree(nvars, d):
    if d < 0:
        return []
    out = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        out.append(tuple(exps))
    return out


def rao_dimensions(ideal):
    """Graded dimensions of the deficiency module of a curve in P^3.

    Requires a saturated unmixed codimension-2 ideal in 4 variables.  The
    table is empty exactly when the quotient is Cohen-Macaulay.
    """
    ring = ideal.ring
    if ring.nvars != 4:
        raise ValidationError("deficiency tables require a 4-variable ring")
    res = minimal_free_resolution(ideal)
    h = hilbert(ideal)
    if ring.nvars - h.dimension != 2:
        raise ValidationError("deficiency tables require codimension 2")
    if res.length > 3:
        raise ValidationError(
            "projective dimension exceeds 3 (ideal is not saturated)")
    if res.length <= 2:
        return {}
    sigma = res.maps[2]  # F_3 -> F_2
    f3 = res.modules[3].twists
    f2 = res.modules[2].twists
    field = ring.field
    # dual map tau: F_2^dual -> F_3^dual; column r has entries sigma[r][c]
    table = {}
    t = -max(f3)
    iterations = 0
    while True:
        iterations += 1
        if iterations > 400:
            raise InternalLimitError("deficiency dimension scan did not terminate")
        target_basis = []  # (component c, exps)
        for c, b in enumerate(f3):
            target_basis.extend((c, m) for m in _monomials_of_degree(4, t + b))
        dim_target = len(target_basis)
        if dim_target == 0:
            if t >= -min(f3):
                break
            t += 1
            continue
        index = {cm: ix for ix, cm in enumerate(target_basis)}
        rows = []
        for r, a in enumerate(f2):
            gen_entries = [(c, sigma.entries.get((r, c))) for c in range(len(f3))]
            if all(p is None for _, p in gen_entries):
                continue
            for m in _monomials_of_degree(4, t + a):
                row = [field.zero] * dim_target
                nonzero = False
                for c, p in gen_entries:
                    if p is None:
                        continue
                    for e, co in p.terms.items():
                        me = tuple(x + y for x, y in zip(e, m))
                        row[index[(c, me)]] = co
                        nonzero = True
                if nonzero:
                    rows.append(row)
        rk = linalg.rank(rows, field) if rows else 0
        dim_coker = dim_target - rk
        if dim_coker:
            table[-t - 4] = dim_coker
        elif t >= -min(f3):
            break
        t += 1
    return table
