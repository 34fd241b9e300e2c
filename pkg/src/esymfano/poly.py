"""Sparse exact multivariate polynomials.

A polynomial is a map from exponent tuples to nonzero scalars over a fixed
field.  All operations are pure; instances are immutable after construction.
Term iteration is deterministic (graded lexicographic).
"""

from __future__ import annotations

from .fields import FieldError


def grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            zero = field.zero
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if coeff != zero:
                    clean[exps] = coeff
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, field, nvars):
        return cls.constant(field, nvars, field.one)

    @classmethod
    def variable(cls, field, nvars, index):
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, {exps: field.one})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms in graded-lex order, the canonical iteration order."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=grlex_key)]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def _check_compatible(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise FieldError(
                f"incompatible polynomials: {self.field}/{self.nvars} vars "
                f"vs {other.field}/{other.nvars} vars"
            )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        f = self.field
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(acc.get(e, f.zero), c)
            if s == f.zero:
                acc.pop(e, None)
            else:
                acc[e] = s
        out = Polynomial(f, self.nvars)
        out.terms = acc
        return out

    def __neg__(self):
        f = self.field
        out = Polynomial(f, self.nvars)
        out.terms = {e: f.neg(c) for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        f = self.field
        zero = f.zero
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(acc.get(e, zero), f.mul(c1, c2))
                if s == zero:
                    acc.pop(e, None)
                else:
                    acc[e] = s
        out = Polynomial(f, self.nvars)
        out.terms = acc
        return out

    def scale(self, scalar):
        f = self.field
        if scalar == f.zero:
            return Polynomial.zero(f, self.nvars)
        out = Polynomial(f, self.nvars)
        out.terms = {e: f.mul(c, scalar) for e, c in self.terms.items()}
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def eval_at(self, point):
        """Evaluate at a tuple of scalars."""
        if len(point) != self.nvars:
            raise ValueError("point length mismatch")
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def __repr__(self):
        return f"Polynomial({self.field}, {self.nvars}, {format_polynomial(self)})"


class LinearForm:
    """A degree-1 homogeneous polynomial, stored as its coefficient row."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def nvars(self):
        return len(self.coeffs)

    def is_zero(self):
        return all(c == self.field.zero for c in self.coeffs)

    def to_polynomial(self) -> Polynomial:
        n = len(self.coeffs)
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return Polynomial(self.field, n, terms)

    def compose_matrix(self, matrix) -> "LinearForm":
        """The form x -> self(M x); coefficients are the row self.coeffs @ M."""
        f = self.field
        n = len(matrix[0])
        out = [f.zero] * n
        for i, c in enumerate(self.coeffs):
            if c == f.zero:
                continue
            for j in range(n):
                out[j] = f.add(out[j], f.mul(c, matrix[i][j]))
        return LinearForm(f, out)

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"LinearForm({self.field}, {self.coeffs})"


# -- core operations ------------------------------------------------------


def elem_sym(r: int, m: int, field) -> Polynomial:
    """The r-th elementary symmetric polynomial in m variables.

    Built by expanding prod_j (1 + x_j t) one variable at a time, keeping
    only t-degrees up to r.
    """
    if not 0 <= r <= m:
        raise ValueError(f"elem_sym order {r} outside [0, {m}]")
    # e[k] holds E_k of the variables processed so far
    e = [Polynomial.one(field, m)] + [Polynomial.zero(field, m) for _ in range(r)]
    for j in range(m):
        xj = Polynomial.variable(field, m, j)
        for k in range(min(j + 1, r), 0, -1):
            e[k] = e[k] + e[k - 1] * xj
    return e[r]


def poly_eval(f: Polynomial, args) -> Polynomial:
    """Evaluate f by substituting a polynomial for each of its variables."""
    args = list(args)
    if len(args) != f.nvars:
        raise ValueError(f"expected {f.nvars} substitution polynomials, got {len(args)}")
    if not args:
        # zero-variable polynomial is a constant
        raise ValueError("cannot substitute into a polynomial with no variables")
    field = args[0].field
    nvars = args[0].nvars
    for g in args:
        if g.field != field or g.nvars != nvars:
            raise FieldError("substitution polynomials over mismatched rings")
    powers = [{0: Polynomial.one(field, nvars)} for _ in args]

    def power(j, k):
        cache = powers[j]
        if k not in cache:
            cache[k] = power(j, k - 1) * args[j]
        return cache[k]

    total = Polynomial.zero(field, nvars)
    for exps, coeff in f.sorted_terms():
        term = Polynomial.constant(field, nvars, coeff)
        for j, k in enumerate(exps):
            if k:
                term = term * power(j, k)
        total = total + term
    return total


def substitute_linear_forms(f: Polynomial, matrix) -> Polynomial:
    """Evaluate f at the linear forms L_j(s) = sum_i matrix[i][j] s_i.

    matrix is d x m with m = f.nvars; the result lives in d variables.
    """
    d = len(matrix)
    if d == 0:
        raise ValueError("matrix must have at least one row")
    m = len(matrix[0])
    if m != f.nvars:
        raise ValueError(f"matrix has {m} columns, polynomial has {f.nvars} variables")
    field = f.field
    forms = []
    for j in range(m):
        coeffs = [matrix[i][j] for i in range(d)]
        forms.append(LinearForm(field, coeffs).to_polynomial())
    return poly_eval(f, forms)


def esym_almost_top(polys) -> Polynomial:
    """sum_j prod_{k != j} g_k via prefix/suffix products (m-1 multiplications each way)."""
    polys = list(polys)
    m = len(polys)
    if m == 0:
        raise ValueError("empty factor list")
    field = polys[0].field
    nvars = polys[0].nvars
    one = Polynomial.one(field, nvars)
    prefix = [one]
    for g in polys:
        prefix.append(prefix[-1] * g)
    suffix = [one]
    for g in reversed(polys):
        suffix.append(suffix[-1] * g)
    suffix.reverse()
    total = Polynomial.zero(field, nvars)
    for j in range(m):
        total = total + prefix[j] * suffix[j + 1]
    return total


def esym_top_at_forms(forms) -> Polynomial:
    """E_{m-1} evaluated at m linear forms, computed in O(m) polynomial products."""
    forms = list(forms)
    if not forms:
        raise ValueError("empty form list")
    return esym_almost_top([g.to_polynomial() for g in forms])


def coefficient_extraction(g: Polynomial):
    """The full term map of g as a list of (exponent tuple, scalar) in canonical order."""
    return g.sorted_terms()


# -- formatting (I/O boundary only) ---------------------------------------


def default_names(nvars, prefix="x"):
    return [f"{prefix}{i+1}" for i in range(nvars)]


def format_polynomial(p: Polynomial, names=None) -> str:
    if p.is_zero():
        return "0"
    if names is None:
        names = default_names(p.nvars)
    field = p.field
    parts = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        cs = field.fmt(coeff)
        if not factors:
            parts.append(cs)
        elif cs == "1":
            parts.append("*".join(factors))
        elif cs == "-1":
            parts.append("-" + "*".join(factors))
        else:
            parts.append(cs + "*" + "*".join(factors))
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out


def format_monomial(exps, names=None) -> str:
    if names is None:
        names = default_names(len(exps))
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"
