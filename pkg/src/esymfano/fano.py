"""Planes inside the zero locus of the almost-top elementary symmetric polynomial.

A candidate (d-1)-plane in projective (m-1)-space is the row span of a full
rank d x m matrix T.  Membership in the Fano scheme of Z(E_{m-1}) is the
polynomial identity E_{m-1}((s) . T) = 0; the structural classification
detects it from the proportionality pattern of the columns of T, with the
per-class reciprocal-sum condition as certificate.  Everything here is
exact and field-agnostic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .fields import QQ, FieldError
from .linalg import is_invertible, nullspace, rank
from .poly import (
    LinearForm,
    Polynomial,
    esym_almost_top,
    esym_top_at_forms,
    grlex_key,
)


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured subspace budget."""


@dataclass(frozen=True)
class PlaneMatrix:
    """Full-rank d x m scalar matrix; its row span is a candidate plane."""

    field: object
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        d = len(rows)
        if d == 0:
            raise ValueError("empty matrix")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("ragged matrix")
        if d > m:
            raise ValueError(f"more rows ({d}) than columns ({m})")
        if rank(rows, self.field) != d:
            raise ValueError("matrix is rank deficient")

    @property
    def d(self):
        return len(self.rows)

    @property
    def m(self):
        return len(self.rows[0])

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.d))

    def column_forms(self):
        """The m linear forms in d variables given by the columns of T."""
        return [LinearForm(self.field, self.column(j)) for j in range(self.m)]


@dataclass(frozen=True)
class Chart:
    """Grassmannian chart: S = avoided coordinate indices, complement = pivots."""

    avoided: tuple  # 0-based column indices, size m - d
    pivots: tuple  # 0-based complement in increasing order, size d

    @property
    def m(self):
        return len(self.avoided) + len(self.pivots)

    @property
    def d(self):
        return len(self.pivots)


@dataclass(frozen=True)
class ZeroPair:
    """Two identically-zero columns (0-based indices)."""

    i: int
    j: int


@dataclass(frozen=True)
class PartitionCertificate:
    """Column partition into proportionality classes with reciprocal sums zero.

    classes[i] is a sorted tuple of 0-based column indices; representatives[i]
    is the shared column direction (first nonzero entry normalized to 1);
    scalars[j] is c_j with column_j = c_j * representative of j's class.
    """

    classes: tuple
    representatives: tuple
    scalars: tuple

    @property
    def num_classes(self):
        return len(self.classes)


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    certificate: object = None  # ZeroPair | PartitionCertificate | None
    witness: tuple = None  # s-monomial exponents with nonzero coefficient
    spans_full_span_space: bool = dc_field(default=False)
    # spans_full_span_space: the partition has exactly d classes, so the row
    # span is all of the certified subspace rather than a proper subspace.


# -- direct membership ----------------------------------------------------


def membership_expansion(T: PlaneMatrix) -> Polynomial:
    """E_{m-1} evaluated at the column forms of T, a polynomial in d variables."""
    return esym_top_at_forms(T.column_forms())


def is_member_direct(T: PlaneMatrix) -> bool:
    return membership_expansion(T).is_zero()


# -- structural classification --------------------------------------------


def _normalize_column(col, field):
    """(representative with first nonzero entry 1, scalar c) or None for zero."""
    for x in col:
        if x != field.zero:
            inv = field.inv(x)
            return tuple(field.mul(y, inv) for y in col), x
    return None


def classify(T: PlaneMatrix) -> MembershipVerdict:
    field = T.field
    zero_cols = [j for j in range(T.m) if all(x == field.zero for x in T.column(j))]
    if len(zero_cols) >= 2:
        return MembershipVerdict(True, ZeroPair(zero_cols[0], zero_cols[1]))
    if len(zero_cols) == 1:
        # the single surviving product of the m-1 nonzero forms cannot vanish
        return MembershipVerdict(False, witness=_witness(T))
    classes = {}
    scalars = [None] * T.m
    for j in range(T.m):
        rep, c = _normalize_column(T.column(j), field)
        classes.setdefault(rep, []).append(j)
        scalars[j] = c
    class_list = sorted((tuple(v) for v in classes.values()), key=lambda t: t[0])
    ok = True
    for cls in class_list:
        if len(cls) < 2:
            ok = False
            break
        total = field.zero
        for j in cls:
            total = field.add(total, field.inv(scalars[j]))
        if total != field.zero:
            ok = False
            break
    if not ok:
        return MembershipVerdict(False, witness=_witness(T))
    rep_by_first = {}
    for rep, cols in classes.items():
        rep_by_first[tuple(sorted(cols))[0]] = rep
    reps = tuple(rep_by_first[cls[0]] for cls in class_list)
    cert = PartitionCertificate(tuple(class_list), reps, tuple(scalars))
    return MembershipVerdict(
        True, cert, spans_full_span_space=(cert.num_classes == T.d)
    )


def _witness(T: PlaneMatrix):
    g = membership_expansion(T)
    if g.is_zero():
        raise AssertionError("structural non-member but expansion vanishes")
    return min(g.terms, key=grlex_key)


def verify_certificate(T: PlaneMatrix, cert) -> bool:
    """Re-check a membership certificate against T without re-deriving it."""
    field = T.field
    try:
        if isinstance(cert, ZeroPair):
            if cert.i == cert.j:
                return False
            for j in (cert.i, cert.j):
                if not 0 <= j < T.m:
                    return False
                if any(x != field.zero for x in T.column(j)):
                    return False
            return True
        if isinstance(cert, PartitionCertificate):
            covered = [j for cls in cert.classes for j in cls]
            if sorted(covered) != list(range(T.m)):
                return False
            if len(cert.representatives) != len(cert.classes):
                return False
            if len(cert.scalars) != T.m:
                return False
            if any(c == field.zero for c in cert.scalars):
                return False
            for cls, rep in zip(cert.classes, cert.representatives):
                if len(cls) < 2:
                    return False
                total = field.zero
                for j in cls:
                    col = T.column(j)
                    expected = tuple(field.mul(cert.scalars[j], x) for x in rep)
                    if col != expected:
                        return False
                    total = field.add(total, field.inv(cert.scalars[j]))
                if total != field.zero:
                    return False
            # distinct classes must not be proportional to one another
            for r1, r2 in itertools.combinations(cert.representatives, 2):
                if rank([r1, r2], field) < 2:
                    return False
            return True
    except (ZeroDivisionError, FieldError, TypeError, IndexError):
        return False
    return False


# -- charts and defining equations ----------------------------------------


def charts_covering(d: int, m: int):
    """All C(m, m-d) coordinate charts; every rank-d matrix fits in one."""
    if not 1 <= d <= m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    charts = []
    for avoided in itertools.combinations(range(m), m - d):
        pivots = tuple(j for j in range(m) if j not in avoided)
        charts.append(Chart(avoided, pivots))
    return charts


def chart_fits(T: PlaneMatrix, chart: Chart) -> bool:
    sub = [[T.rows[i][j] for j in chart.pivots] for i in range(T.d)]
    return is_invertible(sub, T.field)


def fano_chart_equations(d: int, m: int, chart: Chart, field=QQ):
    """Defining equations of the Fano scheme on one chart.

    The chart matrix has identity columns at the pivot positions and unknown
    columns a_{i,j} at the avoided positions.  Returns one polynomial in the
    d*(m-d) unknowns per degree-(m-1) monomial in the s variables (graded-lex
    monomial order), C(m-2+d, d-1) equations in all.
    """
    if not 1 <= d < m:
        raise ValueError(f"need 1 <= d < m, got d={d}, m={m}")
    if chart.d != d or chart.m != m:
        raise ValueError("chart incompatible with (d, m)")
    na = d * (m - d)
    ntot = na + d  # unknowns first, then the s variables
    avoided_pos = {j: k for k, j in enumerate(chart.avoided)}
    pivot_pos = {j: k for k, j in enumerate(chart.pivots)}

    def a_var(i, k):
        return Polynomial.variable(field, ntot, i * (m - d) + k)

    def s_var(i):
        return Polynomial.variable(field, ntot, na + i)

    column_polys = []
    for j in range(m):
        if j in pivot_pos:
            column_polys.append(s_var(pivot_pos[j]))
        else:
            k = avoided_pos[j]
            g = Polynomial.zero(field, ntot)
            for i in range(d):
                g = g + a_var(i, k) * s_var(i)
            column_polys.append(g)
    expansion = esym_almost_top(column_polys)

    by_s_monomial = {}
    for exps, coeff in expansion.terms.items():
        a_part = exps[:na]
        s_part = exps[na:]
        bucket = by_s_monomial.setdefault(s_part, {})
        bucket[a_part] = coeff
    equations = []
    for s_mono in _degree_monomials(d, m - 1):
        terms = by_s_monomial.get(s_mono, {})
        equations.append((s_mono, Polynomial(field, na, terms)))
    return equations


def _degree_monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, graded-lex order."""
    monos = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            monos.append(tuple(prefix) + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, nvars)
    monos.sort(key=grlex_key)
    return monos


def expected_dimension(d: int, m: int) -> int:
    """Naive dimension count d(m-d) - C(d+m-2, d-1); may well be negative."""
    if not 1 <= d < m:
        raise ValueError(f"need 1 <= d < m, got d={d}, m={m}")
    return d * (m - d) - comb(d + m - 2, d - 1)


def stratum_dimension(classes) -> int:
    """Moduli per class: |class| - 2 scalar choices after the reciprocal
    relation and one overall scaling.  Zero exactly when all classes are pairs."""
    total = 0
    for cls in classes:
        if len(cls) < 2:
            raise ValueError(f"singleton class {tuple(cls)} admits no certificate")
        total += len(cls) - 2
    return total


# -- matchings and isolated points ----------------------------------------


def matchings(two_d: int):
    """All pairings of {0..two_d-1} into two_d/2 pairs, lex by sorted pair lists."""
    if two_d < 2 or two_d % 2:
        raise ValueError(f"need a positive even count, got {two_d}")
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(tuple(acc))
            return
        a = remaining[0]
        for idx in range(1, len(remaining)):
            b = remaining[idx]
            rec(remaining[1:idx] + remaining[idx + 1 :], acc + [(a, b)])

    rec(tuple(range(two_d)), [])
    return out


def enumerate_isolated(d: int, field=QQ):
    """The isolated Fano points for m = 2d: one plane per pairing of the
    coordinates, cut out by x_j + x_j' = 0 over the pairs."""
    if d < 1:
        raise ValueError("d must be positive")
    m = 2 * d
    results = []
    for match in matchings(m):
        rows = []
        for a, b in match:
            row = [field.zero] * m
            row[a] = field.one
            row[b] = field.neg(field.one)
            rows.append(tuple(row))
        results.append((match, PlaneMatrix(field, tuple(rows))))
    return results


# -- member sampling -------------------------------------------------------


def sample_member(classes, scalars, d: int, field=QQ, seed: int = 0) -> PlaneMatrix:
    """A random full-rank d x m matrix whose row span lies in the subspace
    spanned by the class vectors w_i = sum_{j in class i} c_j e_j."""
    classes = [tuple(sorted(cls)) for cls in classes]
    m = sum(len(cls) for cls in classes)
    if sorted(j for cls in classes for j in cls) != list(range(m)):
        raise ValueError("classes do not partition the column index set")
    if len(scalars) != m:
        raise ValueError("need one scalar per column")
    if any(c == field.zero for c in scalars):
        raise ValueError("scalars must be nonzero")
    for cls in classes:
        total = field.zero
        for j in cls:
            total = field.add(total, field.inv(scalars[j]))
        if total != field.zero:
            raise ValueError(f"reciprocal sum over class {cls} is nonzero")
    k = len(classes)
    if not 1 <= d <= k:
        raise ValueError(f"need 1 <= d <= {k} classes, got d={d}")
    w = []
    for cls in classes:
        vec = [field.zero] * m
        for j in cls:
            vec[j] = scalars[j]
        w.append(vec)
    rng = random.Random(seed)
    while True:
        mix = [[field.from_int(rng.randint(-9, 9)) for _ in range(k)] for _ in range(d)]
        if rank(mix, field) == d:
            break
    rows = []
    for alpha in range(d):
        row = [field.zero] * m
        for i in range(k):
            c = mix[alpha][i]
            if c == field.zero:
                continue
            for j in range(m):
                row[j] = field.add(row[j], field.mul(c, w[i][j]))
        rows.append(tuple(row))
    return PlaneMatrix(field, tuple(rows))


def random_partition_certificate(class_sizes, rng, field=QQ):
    """Random (classes, scalars) with each class reciprocal sum exactly zero.

    class_sizes is a sequence of sizes >= 2; columns are assigned to classes
    in a random order.
    """
    m = sum(class_sizes)
    cols = list(range(m))
    rng.shuffle(cols)
    classes = []
    pos = 0
    for size in class_sizes:
        classes.append(tuple(sorted(cols[pos : pos + size])))
        pos += size
    scalars = [None] * m
    for cls in classes:
        # pick nonzero reciprocals summing to zero: free choices then balance
        while True:
            recips = [Fraction(rng.randint(-9, 9)) for _ in range(len(cls) - 1)]
            last = -sum(recips)
            if all(r != 0 for r in recips) and last != 0:
                recips.append(last)
                break
        for j, r in zip(cls, recips):
            scalars[j] = 1 / r
    return classes, tuple(scalars)


# -- exhaustive finite-field oracle ----------------------------------------


def gaussian_binomial(m: int, d: int, p: int) -> int:
    num = 1
    den = 1
    for i in range(d):
        num *= p ** (m - i) - 1
        den *= p ** (d - i) - 1
    return num // den


def enumerate_subspaces(d: int, m: int, field, budget: int = 10**6):
    """Every d-subspace of F_p^m exactly once as its RREF matrix, ordered
    lexicographically by pivot set then by the free entries."""
    p = field.characteristic
    total = gaussian_binomial(m, d, p)
    if total > budget:
        raise BudgetExceeded(
            f"{total} subspaces exceed the budget of {budget}; raise --budget"
        )
    elements = [field.from_int(i) for i in range(p)]
    for pivots in itertools.combinations(range(m), d):
        free_positions = []
        for i in range(d):
            for j in range(m):
                if j > pivots[i] and j not in pivots:
                    free_positions.append((i, j))
        for values in itertools.product(elements, repeat=len(free_positions)):
            rows = [[field.zero] * m for _ in range(d)]
            for i in range(d):
                rows[i][pivots[i]] = field.one
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            yield PlaneMatrix(field, tuple(tuple(r) for r in rows))


def brute_force_members(d: int, m: int, field, budget: int = 10**6):
    """Exhaustive membership filter over a prime field."""
    return [
        T for T in enumerate_subspaces(d, m, field, budget) if is_member_direct(T)
    ]


def cross_check(d: int, m: int, field, budget: int = 10**6):
    """Assert classify == direct expansion on every subspace; report stats."""
    total = 0
    members = 0
    mismatches = []
    cert_hist = {"zero_pair": 0, "partition": 0}
    class_count_hist = {}
    for T in enumerate_subspaces(d, m, field, budget):
        total += 1
        direct = is_member_direct(T)
        verdict = classify(T)
        if verdict.member != direct:
            mismatches.append(T)
        if verdict.member:
            members += 1
            if isinstance(verdict.certificate, ZeroPair):
                cert_hist["zero_pair"] += 1
            else:
                cert_hist["partition"] += 1
                k = verdict.certificate.num_classes
                class_count_hist[k] = class_count_hist.get(k, 0) + 1
    return {
        "d": d,
        "m": m,
        "p": field.characteristic,
        "total": total,
        "members": members,
        "mismatches": len(mismatches),
        "mismatch_examples": [T.rows for T in mismatches[:5]],
        "certificate_histogram": cert_hist,
        "class_count_histogram": class_count_hist,
    }


# -- reciprocal relation space ---------------------------------------------


def reciprocal_relation_space(forms):
    """Basis of {lambda : sum_j lambda_j / f_j = 0} for nonzero linear forms,
    computed by clearing denominators to sum_j lambda_j prod_{k!=j} f_k = 0."""
    forms = list(forms)
    if not forms:
        raise ValueError("empty form list")
    field = forms[0].field
    if any(g.is_zero() for g in forms):
        raise ValueError("zero form present")
    polys = [g.to_polynomial() for g in forms]
    nvars = polys[0].nvars
    one = Polynomial.one(field, nvars)
    prefix = [one]
    for g in polys:
        prefix.append(prefix[-1] * g)
    suffix = [one]
    for g in reversed(polys):
        suffix.append(suffix[-1] * g)
    suffix.reverse()
    products = [prefix[j] * suffix[j + 1] for j in range(len(polys))]
    monomials = sorted({e for g in products for e in g.terms}, key=grlex_key)
    # one row per monomial, one column per form
    rows = [
        tuple(g.coefficient(e) for g in products) for e in monomials
    ]
    if not rows:
        rows = [tuple(field.zero for _ in products)]
    return nullspace(rows, field)


def proportionality_class_count(forms) -> int:
    field = forms[0].field
    reps = set()
    for g in forms:
        norm = _normalize_column(g.coeffs, field)
        if norm is None:
            raise ValueError("zero form present")
        reps.add(norm[0])
    return len(reps)
