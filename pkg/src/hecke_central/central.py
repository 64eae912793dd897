"""Assembly of the central value: n-tables, ideal class labels, the m and r
integers, both L-value routes and the parity certificate for N = -7."""

from dataclasses import dataclass, field
from functools import lru_cache
import time

import mpmath
from mpmath import mp

from . import analytic
from .analytic import DEFAULT_PREC, INT_TOL, PrecisionError
from .quadfield import (CLASS_NUMBER_ONE, QuadForm, canonical_ideal_above, reduce_form,
                        reduced_forms, split_prime_norms, z_point)
from .quatalg import (Quat, class_set, embedding_element, is_maximal_ideal_pair, left_order,
                      siegel_ideal, standard_maximal_order)


class InvariantError(RuntimeError):
    """A mathematical invariant of the pipeline failed."""


class OracleDisagreement(InvariantError):
    """The theta formula and the functional-equation oracle disagree."""


@dataclass
class TableRow:
    D: int
    form: QuadForm
    reduced: QuadForm
    n: int
    class_label: str
    type_index: int
    residual: float

    def as_dict(self):
        return {"D": self.D, "form": str(self.form), "reduced_form": str(self.reduced),
                "n": self.n, "class": self.class_label, "type": self.type_index,
                "residual": float(self.residual)}


@dataclass
class CentralValueReport:
    N: int
    D: int
    b: int
    rows: list
    m_values: dict
    r_values: dict
    L_formula: object
    L_oracle: object
    L_theta: object
    w_psi: object
    xi2: int
    total: int
    parity: int
    nonvanishing: bool
    oracle_diff: object
    seconds: float = 0.0
    unhit: list = field(default_factory=list)

    def summary(self):
        return {"L_formula": self.L_formula.as_dict(), "L_oracle": self.L_oracle.as_dict(),
                "oracle_diff": mpmath.nstr(self.oracle_diff, 3),
                "w_psi": self.w_psi.as_dict(), "xi2": self.xi2,
                "sum_n": self.total, "parity": self.parity,
                "nonvanishing": self.nonvanishing,
                "m": self.m_values, "r": self.r_values, "unhit_classes": self.unhit}


def check_N(N):
    if N not in CLASS_NUMBER_ONE:
        raise ValueError(f"N={N} is not one of {CLASS_NUMBER_ONE}")


@lru_cache(maxsize=None)
def class_set_for(N):
    return class_set(standard_maximal_order(N))


def classify_form(N, ctx, form, cs=None, v=None):
    """Class index (in the class set of the standard order) of I_z for B = form.

    I_z is moved to a left ideal of the standard order O by the connecting
    ideal O * O_l(I_z).
    """
    cs = cs or class_set_for(N)
    v = v if v is not None else embedding_element(N, ctx.D)
    a1, b1 = z_point(ctx)
    I = siegel_ideal(N, ctx.D, a1, b1, form, v)
    Ol = left_order(I)
    if not is_maximal_ideal_pair(I):
        raise InvariantError(f"I_z for {form} does not have a maximal left order")
    C = cs.order * Ol
    return cs.classify(C * I)


def table_rows(N, D, P=DEFAULT_PREC, conjugate=False, forms=None, tol=INT_TOL):
    """Rows (form, n, class) for every reduced form of discriminant -|D|."""
    check_N(N)
    ctx = canonical_ideal_above(N, D, conjugate=conjugate)
    cs = class_set_for(N)
    v = embedding_element(N, D)
    given = forms or reduced_forms(-D)
    rows = []
    for f in given:
        red, _ = reduce_form(f)
        nv = analytic.n_value(None, red, ctx, P, tol)
        idx = classify_form(N, ctx, red, cs, v)
        rows.append(TableRow(D, f, red, nv.rounded, cs.labels[idx], cs.type_of(idx),
                             float(nv.residual)))
    return ctx, rows


def m_values(N, rows, cs=None):
    """m for each class label: |n| of the forms hitting it, 0 if none does."""
    cs = cs or class_set_for(N)
    m = {lab: None for lab in cs.labels}
    for r in rows:
        cur = m[r.class_label]
        if cur is not None and cur != abs(r.n):
            raise InvariantError(
                f"class {r.class_label} receives |n| = {cur} and {abs(r.n)} at D={r.D}")
        m[r.class_label] = abs(r.n)
    return {lab: (val or 0) for lab, val in m.items()}


def r_coefficients(rows, m):
    """r(D, I) = sum of n/m over forms in class I (0 when m = 0)."""
    r = {lab: 0 for lab in m}
    for row in rows:
        mm = m[row.class_label]
        if mm:
            if row.n % mm:
                raise InvariantError(f"n={row.n} is not a multiple of m={mm}")
            r[row.class_label] += row.n // mm
    return r


def central_value(N, D, P=DEFAULT_PREC, conjugate=False, oracle=True):
    """Full report for one (N, |D|)."""
    t0 = time.time()
    ctx, rows = table_rows(N, D, P, conjugate)
    cs = class_set_for(N)
    m = m_values(N, rows, cs)
    r = r_coefficients(rows, m)
    total = sum(row.n for row in rows)
    if sum(r[k] * m[k] for k in m) != total:
        raise InvariantError("sum of r m differs from the sum of n")
    with mp.workdps(P + analytic.GUARD + 5):
        L, _ = analytic.l_value_formula(ctx, P, [row.n for row in rows])
        Lt = analytic.l_value_theta(ctx, P)
        if abs(Lt.value - L.value) > mpmath.mpf(10) ** (-(P - analytic.GUARD)) * max(1, abs(L.value)):
            raise InvariantError("theta sum and Omega * sum n disagree")
        if oracle:
            Lo, w = analytic.l_value_oracle(ctx, P)
            diff = abs(Lo.value - L.value)
            if diff >= mpmath.mpf(10) ** (-(P // 2)):
                raise OracleDisagreement(
                    f"N={N} |D|={D}: formula {L} oracle {Lo} differ by {mpmath.nstr(diff, 3)}")
            xi2 = analytic.root_number_xi2(ctx, w)
        else:
            Lo = w = analytic.PrecComplex(mpmath.mpc(mpmath.nan), mpmath.mpf(mpmath.inf))
            diff = mpmath.mpf(mpmath.nan)
            xi2 = 0
        nonvanishing = total != 0 and abs(L.value) > mpmath.mpf("1e-10")
    hit = {row.class_label for row in rows}
    return CentralValueReport(N, D, ctx.b, rows, m, r, L, Lo, Lt, w, xi2, total, total % 2,
                              nonvanishing, diff, time.time() - t0,
                              [lab for lab in cs.labels if lab not in hit])


def parity_of_rows(rows):
    """n(principal) + 2 * sum over one form from each conjugate pair, mod 2."""
    principal = [r for r in rows if r.reduced.a == 1]
    if len(principal) != 1:
        raise InvariantError("expected exactly one principal form")
    phi = [r for r in rows if r.reduced.a != 1 and r.reduced.b > 0]
    value = principal[0].n + 2 * sum(r.n for r in phi)
    return value, value % 2


def nonvanishing_certificate(N=-7, dmax=500, P=DEFAULT_PREC, dlist=None):
    """Parity certificate (and oracle agreement) for every split |D| < dmax."""
    if N != -7:
        raise ValueError("the parity certificate applies to N = -7")
    out = []
    for D in dlist or [d for d in split_prime_norms(N, dmax - 1)]:
        rep = central_value(N, D, P)
        value, parity = parity_of_rows(rep.rows)
        if value != rep.total:
            raise InvariantError(f"conjugate symmetry fails at D={D}")
        ok = parity == 1 and rep.nonvanishing
        if parity != 1:
            raise InvariantError(f"even parity at |D|={D}: rows {[r.as_dict() for r in rep.rows]}")
        out.append((D, parity, ok))
    return out


def cross_d_consistency(N, Ds, P=DEFAULT_PREC, reports=None):
    """Per class and per type, the set of nonzero-hit |m| values across D."""
    if len(Ds) < 2:
        raise ValueError("need at least two values of |D|")
    cs = class_set_for(N)
    reports = reports or [central_value(N, D, P, oracle=False) for D in Ds]
    per_class = {lab: set() for lab in cs.labels}
    per_type = {t: set() for t in range(cs.t)}
    for rep in reports:
        for row in rep.rows:
            per_class[row.class_label].add(abs(row.n))
            per_type[row.type_index].add(abs(row.n))
    violations = [lab for lab, s in per_class.items() if len(s) > 1]
    violations += [f"type{t}" for t, s in per_type.items() if len(s) > 1]
    return {"per_class": {k: sorted(v) for k, v in per_class.items()},
            "per_type": {k: sorted(v) for k, v in per_type.items()},
            "violations": violations,
            "never_hit": [k for k, v in per_class.items() if not v]}
