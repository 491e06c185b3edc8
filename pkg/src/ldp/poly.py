"""Sparse multivariate polynomials with exact coefficients.

Terms map exponent tuples to nonzero field elements.  Enough machinery for
the curve computations here: arithmetic, substitution, derivatives,
resultants by Sylvester determinant, univariate gcd and squarefree parts
(with the Frobenius splitting needed in characteristic p), and an optional
weighting of the variables for weighted-homogeneity checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import QQ, FpElement, PrimeField


@dataclass(frozen=True)
class ExactPolynomial:
    field: object
    vars: tuple
    terms: tuple  # sorted tuple of (exponent tuple, coefficient)
    weights: tuple = None

    @staticmethod
    def make(field, vars, termmap, weights=None):
        vars = tuple(vars)
        clean = {}
        for exp, c in termmap.items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != len(vars):
                raise ValueError("exponent arity mismatch")
            if any(x < 0 for x in exp):
                raise ValueError("negative exponent")
            c = field.coerce(c)
            if exp in clean:
                c = clean[exp] + c
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        return ExactPolynomial(
            field, vars, tuple(sorted(clean.items(), reverse=True)),
            tuple(weights) if weights else None,
        )

    @staticmethod
    def zero(field, vars, weights=None):
        return ExactPolynomial.make(field, vars, {}, weights)

    @staticmethod
    def constant(field, vars, c, weights=None):
        return ExactPolynomial.make(field, vars, {(0,) * len(vars): c}, weights)

    @staticmethod
    def variable(field, vars, name, weights=None):
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if sum(exp) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return ExactPolynomial.make(field, vars, {exp: 1}, weights)

    @staticmethod
    def gens(field, names, weights=None):
        return [ExactPolynomial.variable(field, names, n, weights) for n in names]

    # -- ring structure ------------------------------------------------------

    def _coeffs(self):
        return dict(self.terms)

    def _same_ring(self, other):
        if isinstance(other, ExactPolynomial):
            if other.vars != self.vars or other.field != self.field:
                raise ValueError("polynomials from different rings")
            return other
        return ExactPolynomial.constant(self.field, self.vars, other, self.weights)

    def __add__(self, other):
        other = self._same_ring(other)
        out = self._coeffs()
        for exp, c in other.terms:
            s = out.get(exp, self.field.zero) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return ExactPolynomial.make(self.field, self.vars, out, self.weights)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial.make(
            self.field, self.vars, {e: -c for e, c in self.terms}, self.weights
        )

    def __sub__(self, other):
        return self + (-self._same_ring(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, ExactPolynomial):
            c = self.field.coerce(other)
            return ExactPolynomial.make(
                self.field, self.vars, {e: k * c for e, k in self.terms}, self.weights
            )
        other = self._same_ring(other)
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, self.field.zero) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return ExactPolynomial.make(self.field, self.vars, out, self.weights)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ExactPolynomial.constant(self.field, self.vars, 1, self.weights)
        for _ in range(int(n)):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- inspection ------------------------------------------------------------

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e, _ in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e, _ in self.terms)

    def weighted_degree(self):
        if self.weights is None:
            raise ValueError("no weights attached")
        if not self.terms:
            return -1
        return max(sum(x * w for x, w in zip(e, self.weights)) for e, _ in self.terms)

    def is_weighted_homogeneous(self, d=None):
        if self.weights is None:
            raise ValueError("no weights attached")
        degs = {sum(x * w for x, w in zip(e, self.weights)) for e, _ in self.terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def coefficient(self, var, k):
        """Coefficient of var^k, a polynomial in the remaining variables kept
        in the same ring."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms:
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return ExactPolynomial.make(self.field, self.vars, out, self.weights)

    def derivative(self, var):
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms:
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c * e[i]
        return ExactPolynomial.make(self.field, self.vars, out, self.weights)

    def substitute(self, assignment):
        """Replace variables by field elements or polynomials of this ring."""
        out = ExactPolynomial.zero(self.field, self.vars, self.weights)
        gens = {
            v: ExactPolynomial.variable(self.field, self.vars, v, self.weights)
            for v in self.vars
        }
        values = {}
        for v in self.vars:
            x = assignment.get(v, gens[v])
            values[v] = x if isinstance(x, ExactPolynomial) else (
                ExactPolynomial.constant(self.field, self.vars, x, self.weights)
            )
        for e, c in self.terms:
            term = ExactPolynomial.constant(self.field, self.vars, c, self.weights)
            for v, k in zip(self.vars, e):
                if k:
                    term = term * values[v] ** k
            out = out + term
        return out

    def evaluate(self, assignment):
        """Full evaluation to a field element."""
        r = self.substitute(assignment)
        if r.degree() > 0:
            raise ValueError("not all variables assigned")
        return r.terms[0][1] if r.terms else self.field.zero

    def leading_coefficient(self):
        """Coefficient of the lex-largest monomial (variable order as given)."""
        if not self.terms:
            raise ValueError("zero polynomial")
        return self.terms[0][1]

    def monic(self):
        lc = self.leading_coefficient()
        one = self.field.one
        if lc == one:
            return self
        inv = one / lc
        return self * inv

    def map_field(self, field):
        """Recoerce all coefficients into another field (e.g. QQ -> F_p)."""
        return ExactPolynomial.make(
            field, self.vars, {e: field.coerce(_to_fraction(c)) for e, c in self.terms},
            self.weights,
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            mon = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            bits.append(f"({c}){'*' + mon if mon else ''}")
        return " + ".join(bits)


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, FpElement):
        return Fraction(c.val)
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"cannot lift {c!r}")


# -- determinants over a commutative ring (for Sylvester matrices) -------------


def _ring_det(rows):
    """Determinant by memoized Laplace expansion along the first column;
    entries live in any commutative ring."""
    n = len(rows)
    cols = tuple(range(n))
    memo = {}

    def minor(r, cs):
        if not cs:
            return None  # stands for the ring's 1
        key = (r, cs)
        if key in memo:
            return memo[key]
        total = None
        for k, c in enumerate(cs):
            a = rows[r][c]
            if not a:
                continue
            sub = minor(r + 1, cs[:k] + cs[k + 1 :])
            contrib = a if sub is None else a * sub
            if k % 2:
                contrib = -contrib
            total = contrib if total is None else total + contrib
        if total is None:
            total = rows[r][cs[0]] * 0  # ring zero
        memo[key] = total
        return total

    return minor(0, cols)


def resultant(f, g, var):
    """Res_var(f, g) as a polynomial in the remaining variables (same ring)."""
    f._same_ring(g)
    m, n = f.degree(var), g.degree(var)
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    zero = ExactPolynomial.zero(f.field, f.vars, f.weights)
    if m == 0 and n == 0:
        return ExactPolynomial.constant(f.field, f.vars, 1, f.weights)
    fc = [f.coefficient(var, k) for k in range(m, -1, -1)]
    gc = [g.coefficient(var, k) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - n - 1))
    return _ring_det(rows)


# -- univariate helpers ---------------------------------------------------------


def _dense(f, var):
    d = f.degree(var)
    return [f.coefficient(var, k) for k in range(d + 1)]  # entries are constants


def _univar_check(f, var):
    i = f.vars.index(var)
    for e, _ in f.terms:
        if any(k and j != i for j, k in enumerate(e)):
            raise ValueError(f"{f!r} is not univariate in {var}")


def poly_divmod(f, g, var):
    """Division with remainder in field[var]; f, g univariate in var."""
    _univar_check(f, var)
    _univar_check(g, var)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = ExactPolynomial.zero(f.field, f.vars, f.weights)
    r = f
    x = ExactPolynomial.variable(f.field, f.vars, var, f.weights)
    dg = g.degree(var)
    lc = g.coefficient(var, dg).evaluate({})
    while not r.is_zero() and r.degree(var) >= dg:
        dr = r.degree(var)
        c = r.coefficient(var, dr).evaluate({}) / lc
        t = x ** (dr - dg) * c
        q = q + t
        r = r - t * g
    return q, r


def poly_gcd(f, g, var):
    """Monic gcd in field[var]."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_divmod(a, b, var)[1]
    if a.is_zero():
        return a
    return a.monic()


def _pth_root(f, var):
    """Inverse Frobenius of f = h(var^p) over F_p (coefficients are fixed by
    Frobenius there)."""
    p = f.field.characteristic
    i = f.vars.index(var)
    out = {}
    for e, c in f.terms:
        assert e[i] % p == 0
        out[e[:i] + (e[i] // p,) + e[i + 1 :]] = c
    return ExactPolynomial.make(f.field, f.vars, out, f.weights)


def squarefree_part(f, var):
    """Monic product of the distinct irreducible factors of f in field[var]."""
    _univar_check(f, var)
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    if f.degree(var) == 0:
        return ExactPolynomial.constant(f.field, f.vars, 1, f.weights)
    df = f.derivative(var)
    p = f.field.characteristic
    if df.is_zero():
        # f = h(var^p); its radical equals the radical of h
        assert p > 0
        return squarefree_part(_pth_root(f, var), var)
    g = poly_gcd(f, df, var)
    red = poly_divmod(f, g, var)[0]
    if p > 0 and not g.degree(var) == 0:
        # factors with multiplicity divisible by p vanish from f/gcd(f, f');
        # fold the radical of the gcd back in
        extra = squarefree_part(g, var)
        red = poly_divmod(red * extra, poly_gcd(red, extra, var), var)[0]
    return red.monic()


# -- binary forms ----------------------------------------------------------------


def content_free_over_q(f):
    """Scale a rational-coefficient polynomial to coprime integers, leading
    (lex) coefficient positive."""
    if f.field != QQ or not f.terms:
        raise ValueError("expects a nonzero polynomial over QQ")
    from math import gcd, lcm

    den = 1
    for _, c in f.terms:
        den = lcm(den, c.denominator)
    nums = [int(c * den) for _, c in f.terms]
    g = 0
    for x in nums:
        g = gcd(g, x)
    scale = Fraction(den, g)
    if f.leading_coefficient() < 0:
        scale = -scale
    return f * scale


def binary_squarefree(f, u, v):
    """Squarefree part of a binary form in variables (u, v): strips repeated
    v-power, dehomogenizes, takes the univariate radical, rehomogenizes."""
    if f.is_zero():
        raise ValueError("zero form")
    iu, iv = f.vars.index(u), f.vars.index(v)
    deg = f.degree()
    assert all(e[iu] + e[iv] == deg and sum(e) == deg for e, _ in f.terms)
    vmin = min(e[iv] for e, _ in f.terms)
    umin = min(e[iu] for e, _ in f.terms)
    core = {}
    for e, c in f.terms:
        ee = list(e)
        ee[iu] -= umin
        ee[iv] = 0
        core[tuple(ee)] = c
    dehom = ExactPolynomial.make(f.field, f.vars, core, f.weights)
    rad = squarefree_part(dehom, u)
    d = rad.degree(u)
    out = {}
    for e, c in rad.terms:
        ee = list(e)
        ee[iv] = d - e[iu]
        out[tuple(ee)] = c
    rehom = ExactPolynomial.make(f.field, f.vars, out, f.weights)
    xu = ExactPolynomial.variable(f.field, f.vars, u, f.weights)
    xv = ExactPolynomial.variable(f.field, f.vars, v, f.weights)
    if umin:
        rehom = rehom * xu
    if vmin:
        rehom = rehom * xv
    return rehom.monic()


# -- JSON --------------------------------------------------------------------


def poly_to_json(f):
    def show(c):
        if isinstance(c, Fraction):
            return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
        if isinstance(c, FpElement):
            return str(c.val)
        raise TypeError(f"cannot serialize {c!r}")

    out = {
        "vars": list(f.vars),
        "terms": [{"exp": list(e), "coeff": show(c)} for e, c in f.terms],
    }
    if f.weights is not None:
        out["weights"] = list(f.weights)
    return out


def poly_from_json(data, field):
    terms = {tuple(t["exp"]): field.coerce(str(t["coeff"])) for t in data["terms"]}
    return ExactPolynomial.make(field, data["vars"], terms, data.get("weights"))
