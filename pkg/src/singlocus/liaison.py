"""Liaison addition, basic double linkage, and curve constructions.

The two named building blocks are small plane arrangements whose
singular-locus curves fail Cohen-Macaulayness in exactly one degree by
exactly one; gluing seeded copies of them with liaison addition and
shifting with basic double links produces, for any r >= 1 and h >= 0, a
curve whose deficiency table is {base + step*(r-1) + h: r}.
"""

from __future__ import annotations

import random

from .arrangement import (Arrangement, apply_coordinate_change,
                          combinatorial_degrees, radical_comb,
                          random_coordinate_change, random_linear_form,
                          standard_ring, top_comb)
from .errors import InternalLimitError, ValidationError
from .groebner import Ideal, saturate_irrelevant
from .homology import hilbert, rao_dimensions
from .polyring import linear_coefficients
from . import linalg

_RESEED_CAP = 32

#: 9-plane block: its height-two unmixed curve has degree 42 and a
#: one-dimensional deficiency module concentrated in degree 8
TOP_BLOCK_COEFFS = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 0, 0, 1),
    (1, 1, 1, 1),
)
TOP_BLOCK_RAO_DEGREE = 8

#: 8-plane block: the radical of its Jacobian ideal has a one-dimensional
#: deficiency module concentrated in degree 4
RADICAL_BLOCK_COEFFS = (
    (0, 1, 0, 0), (0, 0, 1, 0),
    (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1),
    (1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1),
)
RADICAL_BLOCK_RAO_DEGREE = 4


def block_arrangement(coeffs, field=None, ring=None):
    ring = ring if ring is not None else standard_ring(field)
    return Arrangement(ring, [ring.linear_form(
        [ring.field.from_int(c) for c in row]) for row in coeffs])


def top_block(field=None):
    return block_arrangement(TOP_BLOCK_COEFFS, field)


def radical_block(field=None):
    return block_arrangement(RADICAL_BLOCK_COEFFS, field)


# ---------------------------------------------------------------------------
# the two linkage constructions


class LiaisonStep:
    """Record of one construction step, kept for later verification."""

    def __init__(self, kind, ideal1, form1, ideal2, form2, output):
        self.kind = kind  # 'addition' or 'bdl'
        self.ideal1 = ideal1
        self.form1 = form1
        self.ideal2 = ideal2  # None for a basic double link
        self.form2 = form2
        self.output = output
        self.d1 = form1.total_degree()
        self.d2 = form2.total_degree()

    def __repr__(self):
        return f"LiaisonStep({self.kind}, d1={self.d1}, d2={self.d2})"


def _require_regular_sequence(f1, f2):
    if f1.is_zero() or f2.is_zero():
        raise ValidationError("regular sequence check: a form is zero")
    ci = Ideal(f1.ring, (f1, f2))
    h = hilbert(ci)
    codim = f1.ring.nvars - h.dimension
    if codim != 2:
        raise ValidationError(
            f"({f1}, {f2}) is not a regular sequence (codimension {codim})")


def liaison_addition(ideal1, form1, ideal2, form2):
    """The ideal form2 * ideal1 + form1 * ideal2.

    Preconditions are checked individually: form1 must lie in ideal1,
    form2 in ideal2, and (form1, form2) must be a regular sequence.  The
    output is saturated with Hilbert function
    h(CI) + h(V1)(t-d1) + h(V2)(t-d2); the test suite asserts both.
    """
    if not ideal1.contains(form1):
        raise ValidationError("liaison addition: the first form is not in "
                              "the first ideal")
    if not ideal2.contains(form2):
        raise ValidationError("liaison addition: the second form is not in "
                              "the second ideal")
    _require_regular_sequence(form1, form2)
    gens = tuple(form2 * g for g in ideal1.gens)
    gens += tuple(form1 * g for g in ideal2.gens)
    return Ideal(ideal1.ring, gens)


def basic_double_link(ideal1, form1, form2):
    """The ideal form2 * ideal1 + (form1), with form1 in ideal1."""
    if not ideal1.contains(form1):
        raise ValidationError("basic double link: the pivot form is not in "
                              "the ideal")
    _require_regular_sequence(form1, form2)
    gens = tuple(form2 * g for g in ideal1.gens) + (form1,)
    return Ideal(ideal1.ring, gens)


def arrangement_product_hypotheses(arr_a, arr_b):
    """Whether no form of either arrangement sits inside a flat of the other.

    Returns (ok, witnesses); witnesses are ('a'|'b', form_index, flat)
    naming the offending form and the flat whose prime contains it.
    """
    field = arr_a.ring.field
    witnesses = []
    rows_b = arr_b.coefficient_rows()
    for flat in arr_a.flats():
        basis = [list(b) for b in flat.basis]
        for j, row in enumerate(rows_b):
            if linalg.in_span(row, basis, field):
                witnesses.append(("b", j, flat))
    rows_a = arr_a.coefficient_rows()
    for flat in arr_b.flats():
        basis = [list(b) for b in flat.basis]
        for j, row in enumerate(rows_a):
            if linalg.in_span(row, basis, field):
                witnesses.append(("a", j, flat))
    return (not witnesses), witnesses


def merge_arrangements(arr_a, arr_b):
    return Arrangement(arr_a.ring, arr_a.forms + arr_b.forms)


# ---------------------------------------------------------------------------
# prescribed-deficiency constructions


class Construction:
    """Result of an iterated construction, with its predictions."""

    def __init__(self, arrangement, ideal, steps, predicted_rao,
                 predicted_degree, seed, kind):
        self.arrangement = arrangement
        self.ideal = ideal
        self.steps = steps
        self.predicted_rao = dict(predicted_rao)
        self.predicted_degree = predicted_degree
        self.seed = seed
        self.kind = kind  # 'top' or 'radical'

    def __repr__(self):
        return (f"Construction({self.kind}, {self.arrangement.d} planes, "
                f"rao {self.predicted_rao}, degree {self.predicted_degree})")


def _construct(r, h, seed, block_coeffs, base_rao_degree, curve_of, field):
    if r < 1:
        raise ValidationError("need at least one building block copy")
    if h < 0:
        raise ValidationError("the shift count cannot be negative")
    rng = random.Random(seed)
    base = block_arrangement(block_coeffs, field)
    block_deg = base.d
    steps = []

    acc_arr = base
    acc_ideal = curve_of(base)
    acc_degree = _curve_degree_of_block(base, curve_of)
    block_degree = acc_degree

    for copy in range(1, r):
        new_arr = _fresh_copy(base, acc_arr, rng)
        new_ideal = curve_of(new_arr)
        f_acc = acc_arr.defining_polynomial()
        f_new = new_arr.defining_polynomial()
        out = liaison_addition(acc_ideal, f_acc, new_ideal, f_new)
        steps.append(LiaisonStep("addition", acc_ideal, f_acc, new_ideal,
                                 f_new, out))
        acc_degree = acc_degree + block_degree + f_acc.total_degree() * block_deg
        acc_arr = merge_arrangements(acc_arr, new_arr)
        acc_ideal = out

    for _ in range(h):
        f_acc = acc_arr.defining_polynomial()
        ell = _fresh_linear(acc_arr, rng)
        out = basic_double_link(acc_ideal, f_acc, ell)
        steps.append(LiaisonStep("bdl", acc_ideal, f_acc, None, ell, out))
        acc_degree = acc_degree + f_acc.total_degree()
        acc_arr = Arrangement(acc_arr.ring, acc_arr.forms + (ell,))
        acc_ideal = out

    predicted_rao = {base_rao_degree + block_deg * (r - 1) + h: r}
    return Construction(acc_arr, acc_ideal, steps, predicted_rao, acc_degree,
                        seed, "top" if curve_of is top_comb else "radical")


def _curve_degree_of_block(arr, curve_of):
    deg_red, deg_top = combinatorial_degrees(arr)
    return deg_top if curve_of is top_comb else deg_red


def _fresh_copy(base, acc_arr, rng):
    for _ in range(_RESEED_CAP):
        matrix = random_coordinate_change(rng)
        candidate = apply_coordinate_change(base, matrix)
        try:
            merge_arrangements(acc_arr, candidate)
        except ValidationError:
            continue  # a copied form collided with an accumulated one
        ok, _ = arrangement_product_hypotheses(acc_arr, candidate)
        if ok:
            return candidate
    raise InternalLimitError(
        f"no admissible coordinate change found in {_RESEED_CAP} tries")


def _fresh_linear(acc_arr, rng):
    field = acc_arr.ring.field
    for _ in range(_RESEED_CAP):
        ell = random_linear_form(acc_arr.ring, rng)
        row = linear_coefficients(ell)
        if any(linalg.in_span(row, [list(b) for b in f.basis], field)
               for f in acc_arr.flats()):
            continue
        try:
            Arrangement(acc_arr.ring, acc_arr.forms + (ell,))
        except ValidationError:
            continue
        return ell
    raise InternalLimitError(
        f"no general linear form found in {_RESEED_CAP} tries")


def construct_lr(r, h=0, seed=0, field=None):
    """Curve from r glued 9-plane blocks plus h linear double links.

    Predicted deficiency table {8 + 9(r-1) + h: r}; the predicted degree
    follows the additivity deg Z = deg V1 + deg V2 + d1*d2 step by step.
    """
    return _construct(r, h, seed, TOP_BLOCK_COEFFS, TOP_BLOCK_RAO_DEGREE,
                      top_comb, field)


def construct_lr_radical(r, h=0, seed=0, field=None):
    """Radical-curve analogue built from the 8-plane block."""
    return _construct(r, h, seed, RADICAL_BLOCK_COEFFS,
                      RADICAL_BLOCK_RAO_DEGREE, radical_comb, field)


# ---------------------------------------------------------------------------
# verification


def hilbert_additivity_holds(step):
    """Degree-by-degree Hilbert function identity for one step.

    Each input scheme is shifted by the degree of the form multiplying
    its ideal: h(out) = h(CI) + h(V1)(t - d2) + h(V2)(t - d1).
    """
    ring = step.form1.ring
    ci = Ideal(ring, (step.form1, step.form2))
    h_out = hilbert(step.output)
    h_ci = hilbert(ci)
    h_1 = hilbert(step.ideal1)
    h_2 = hilbert(step.ideal2) if step.ideal2 is not None else None
    top = max(h_out.regularity_index, h_ci.regularity_index,
              h_1.regularity_index + step.d2,
              (h_2.regularity_index + step.d1) if h_2 else 0) + 2
    for t in range(top + 1):
        expect = h_ci.hilbert_function(t) + h_1.hilbert_function(t - step.d2)
        if h_2 is not None:
            expect += h_2.hilbert_function(t - step.d1)
        if h_out.hilbert_function(t) != expect:
            return False
    return True


def shifted_rao_sum(step):
    """Predicted deficiency table of a step output from its inputs."""
    out = {}
    for deg, dim in rao_dimensions(step.ideal1).items():
        key = deg + step.d2
        out[key] = out.get(key, 0) + dim
    if step.ideal2 is not None:
        for deg, dim in rao_dimensions(step.ideal2).items():
            key = deg + step.d1
            out[key] = out.get(key, 0) + dim
    return out


def verify_construction(construction, deep=False):
    """Recompute every prediction; returns a report dict.

    With deep=True each step's Hilbert additivity and deficiency-shift
    bookkeeping is recomputed as well (slower: it resolves every
    intermediate ideal).
    """
    report = {}
    h = hilbert(construction.ideal)
    report["degree_predicted"] = construction.predicted_degree
    report["degree_computed"] = h.degree()
    report["degree_ok"] = h.degree() == construction.predicted_degree
    rao = rao_dimensions(construction.ideal)
    report["rao_predicted"] = dict(construction.predicted_rao)
    report["rao_computed"] = rao
    report["rao_ok"] = rao == construction.predicted_rao
    if deep:
        report["hilbert_additivity_ok"] = all(
            hilbert_additivity_holds(s) for s in construction.steps)
        report["rao_shift_ok"] = all(
            rao_dimensions(s.output) == shifted_rao_sum(s)
            for s in construction.steps)
        report["saturated_ok"] = saturate_irrelevant(
            construction.ideal).equals(construction.ideal)
    report["ok"] = all(v for k, v in report.items() if k.endswith("_ok"))
    return report
