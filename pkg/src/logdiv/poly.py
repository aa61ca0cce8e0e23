"""Sparse multivariate polynomials over Q.

A monomial is a plain exponent tuple whose length equals the number of ring
variables; a ring is identified by its ordered tuple of variable names.
Polynomials store a dict mapping exponent tuples to nonzero Fraction
coefficients, so structural equality is dict equality.

Canonical term order for storage-independent printing is degrevlex with the
ring's variable order.
"""

from fractions import Fraction
import re

from .errors import NotHomogeneous, ParseError, ZeroOrConstantInput
from . import linalg

Monomial = tuple  # exponent vector; length == number of ring variables


def m_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def m_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def m_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def m_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def m_degree(a):
    return sum(a)


def m_weighted_degree(a, weights):
    return sum(e * w for e, w in zip(a, weights))


def degrevlex_key(e):
    """Sort key: max() under this key is the degrevlex-largest monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None, prune=True):
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif prune:
            self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        else:
            self.terms = terms

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, False)

    @classmethod
    def constant(cls, ring, c):
        c = Fraction(c)
        if c == 0:
            return cls(ring, {}, False)
        return cls(ring, {(0,) * len(ring): c}, False)

    @classmethod
    def one(cls, ring):
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring, i):
        e = [0] * len(ring)
        e[i] = 1
        return cls(ring, {tuple(e): Fraction(1)}, False)

    @classmethod
    def monomial(cls, ring, expo, c=1):
        c = Fraction(c)
        if c == 0:
            return cls(ring, {}, False)
        return cls(ring, {tuple(expo): c}, False)

    # ---- structure ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        """Coefficient of the constant monomial (the value at the origin)."""
        return self.terms.get((0,) * len(self.ring), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def sorted_terms(self):
        """Terms in descending degrevlex order."""
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({poly_to_text(self)!r})"

    # ---- arithmetic ---------------------------------------------------
    def __add__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res, False)

    def __sub__(self, other):
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.ring, res, False)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Polynomial(self.ring, res, False)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()}, False)

    def mul_term(self, expo, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m_mul(m, expo): c * v for m, v in self.terms.items()}, False)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result


def partial_derivative(p, i):
    """d p / d x_i."""
    if not 0 <= i < len(p.ring):
        raise IndexError(f"variable index {i} out of range for ring {p.ring}")
    res = {}
    for m, c in p.terms.items():
        if m[i]:
            e = list(m)
            e[i] -= 1
            res[tuple(e)] = c * m[i]
    return Polynomial(p.ring, res, False)


def weighted_degree(p, weights):
    """Weighted degree of p, or None for the zero polynomial.

    Raises NotHomogeneous (carrying the occurring degree set) when terms
    disagree.
    """
    if not p.terms:
        return None
    degs = {m_weighted_degree(m, weights) for m in p.terms}
    if len(degs) > 1:
        raise NotHomogeneous(degs)
    return next(iter(degs))


def is_weighted_homogeneous(p, weights):
    try:
        weighted_degree(p, weights)
        return True
    except NotHomogeneous:
        return False


class WeightSystem:
    """Positive integer weights for the ring variables plus the degree of f."""

    __slots__ = ("weights", "degree")

    def __init__(self, weights, degree):
        self.weights = tuple(int(w) for w in weights)
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        self.degree = int(degree)

    def is_standard(self):
        return all(w == 1 for w in self.weights)

    def __eq__(self, other):
        return (
            isinstance(other, WeightSystem)
            and self.weights == other.weights
            and self.degree == other.degree
        )

    def __repr__(self):
        return f"WeightSystem({self.weights}, degree={self.degree})"


def _primitive_positive(vec):
    """Scale a rational vector to coprime positive integers, or None if it
    has a zero entry or mixed signs."""
    if any(x == 0 for x in vec):
        return None
    neg = all(x < 0 for x in vec)
    if not neg and not all(x > 0 for x in vec):
        return None
    lcm = 1
    for x in vec:
        d = x.denominator
        lcm = lcm * d // _igcd(lcm, d)
    ints = [int(x * lcm) for x in vec]
    if neg:
        ints = [-v for v in ints]
    g = 0
    for v in ints:
        g = _igcd(g, v)
    return tuple(v // g for v in ints)


def detect_weight_system(f, sum_cap=64):
    """Minimal positive integer weights making f weighted homogeneous.

    Weight vectors lie in the nullspace of the exponent-difference matrix.
    Minimality is by (sum of weights, lexicographic); the result is
    normalized coprime. Returns None when no positive weight vector exists
    (or none with weight sum <= sum_cap when the solution space has
    dimension above one).
    """
    if f.is_zero() or f.is_constant():
        return None
    n = len(f.ring)
    expos = sorted(f.terms)
    base = expos[0]
    rows = [[Fraction(e[i] - base[i]) for i in range(n)] for e in expos[1:]]
    if not rows:
        w = (1,) * n
        return WeightSystem(w, m_weighted_degree(base, w))
    null = linalg.nullspace(rows, n)
    if not null:
        return None
    if len(null) == 1:
        w = _primitive_positive(null[0])
        if w is None:
            return None
        return WeightSystem(w, m_weighted_degree(base, w))
    ech, _ = linalg.rref(rows, n)

    def satisfied(w):
        return all(sum(r[i] * w[i] for i in range(n)) == 0 for r in ech)

    for total in range(n, sum_cap + 1):
        for w in _compositions(total, n):
            if satisfied(w):
                return WeightSystem(w, m_weighted_degree(base, w))
    return None


def _compositions(total, n):
    """Ordered positive integer n-tuples summing to total, lex ascending."""
    if n == 1:
        yield (total,)
        return
    for first in range(1, total - n + 2):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        width = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            for p in r:
                if p.ring != ring:
                    raise ValueError("mixed rings in matrix")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def column(self, j):
        return [r[j] for r in self.rows]

    def det(self):
        return poly_det(self.rows)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows


def poly_det(rows):
    """Determinant of a square matrix of polynomials.

    Fraction-free: constant matrices go through integer Bareiss elimination,
    anything symbolic is expanded by minors (division-free), so the result is
    always an exact polynomial.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    ring = rows[0][0].ring
    if all(p.is_constant() for r in rows for p in r):
        val = linalg.det_bareiss([[p.constant_value() for p in r] for r in rows])
        return Polynomial.constant(ring, val)
    memo = {}
    all_rows = tuple(range(n))

    def minor(row_set, col):
        if len(row_set) == 1:
            return rows[row_set[0]][col]
        key = (row_set, col)
        if key in memo:
            return memo[key]
        acc = Polynomial.zero(ring)
        sign = 1
        for k, i in enumerate(row_set):
            entry = rows[i][col]
            if entry:
                rest = row_set[:k] + row_set[k + 1:]
                sub = minor(rest, col + 1)
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return minor(all_rows, 0)


# ---- gcd and squarefreeness ------------------------------------------


def _int_content_normalize(p):
    """Primitive integer form of p with positive degrevlex-leading coefficient."""
    if not p.terms:
        return p
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = _igcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
    factor = Fraction(den_lcm, num_gcd)
    lead = max(p.terms, key=degrevlex_key)
    if p.terms[lead] < 0:
        factor = -factor
    return p.scale(factor)


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _univariate_view(p, v):
    """p as a map degree-in-x_v -> coefficient polynomial (x_v cleared)."""
    out = {}
    for m, c in p.terms.items():
        d = m[v]
        e = list(m)
        e[v] = 0
        coeff = out.setdefault(d, {})
        coeff[tuple(e)] = coeff.get(tuple(e), Fraction(0)) + c
    return {
        d: Polynomial(p.ring, t)
        for d, t in out.items()
        if any(c != 0 for c in t.values())
    }


def _from_univariate(ring, v, coeffs):
    acc = Polynomial.zero(ring)
    for d, cp in coeffs.items():
        e = [0] * len(ring)
        e[v] = d
        acc = acc + cp.mul_term(tuple(e), 1)
    return acc


def _deg_in(p, v):
    return max((m[v] for m in p.terms), default=-1)


def _pseudo_rem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    db = _deg_in(b, v)
    bu = _univariate_view(b, v)
    lb = bu[db]
    r = a
    while r and _deg_in(r, v) >= db:
        dr = _deg_in(r, v)
        ru = _univariate_view(r, v)
        lr = ru[dr]
        shift = [0] * len(a.ring)
        shift[v] = dr - db
        r = r * lb - b * lr.mul_term(tuple(shift), 1)
    return r


def poly_gcd(p, q):
    """Multivariate gcd over Q by primitive pseudo-remainder sequences.

    The result is integer-primitive with positive leading coefficient;
    gcd of anything with a nonzero constant is 1.
    """
    if p.is_zero():
        return _int_content_normalize(q)
    if q.is_zero():
        return _int_content_normalize(p)
    if p.is_constant() or q.is_constant():
        return Polynomial.one(p.ring)
    v = None
    for i in range(len(p.ring)):
        if _deg_in(p, i) > 0 and _deg_in(q, i) > 0:
            v = i
            break
    if v is None:
        # no shared variable: gcd divides both contents
        for i in range(len(p.ring)):
            if _deg_in(p, i) > 0:
                return poly_gcd(_content(p, i), q)
        raise AssertionError("unreachable: nonconstant polynomial without variables")
    cp, ap = _content_and_primitive(p, v)
    cq, aq = _content_and_primitive(q, v)
    cont = poly_gcd(cp, cq)
    a, b = ap, aq
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, v)
        a = b
        b = _primitive_part(r, v) if not r.is_zero() else r
    return _int_content_normalize(cont * _primitive_part(a, v))


def _content(p, v):
    coeffs = list(_univariate_view(p, v).values())
    g = Polynomial.zero(p.ring)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return Polynomial.one(p.ring)
    return g


def _content_and_primitive(p, v):
    c = _content(p, v)
    return c, exact_div(p, c)


def _primitive_part(p, v):
    if p.is_zero():
        return p
    return exact_div(p, _content(p, v))


def exact_div(p, d):
    """Exact quotient p / d; raises ValueError if d does not divide p."""
    q = try_exact_div(p, d)
    if q is None:
        raise ValueError("not an exact polynomial division")
    return q


def try_exact_div(p, d):
    """Exact quotient p / d, or None when d does not divide p."""
    if d.is_zero():
        return None
    lead_d = max(d.terms, key=degrevlex_key)
    cd = d.terms[lead_d]
    q = {}
    r = p
    while r.terms:
        lead_r = max(r.terms, key=degrevlex_key)
        if not m_divides(lead_d, lead_r):
            return None
        e = m_div(lead_r, lead_d)
        c = r.terms[lead_r] / cd
        q[e] = c
        r = r - d.mul_term(e, c)
    return Polynomial(p.ring, q)


def is_squarefree(f):
    """True iff f has no repeated irreducible factor (char 0 ground field).

    Decided by gcd of f with all of its partial derivatives.
    Raises ZeroOrConstantInput for zero or constant input.
    """
    if f.is_constant():
        raise ZeroOrConstantInput("squarefreeness needs a nonconstant polynomial")
    g = f
    for i in range(len(f.ring)):
        di = partial_derivative(f, i)
        if di.is_zero():
            continue
        g = poly_gcd(g, di)
        if g.is_constant():
            return True
    return g.is_constant()


# ---- text form --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            break
        if m.lastgroup is None:
            break
        out.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected character at {text[pos:].strip()[:10]!r}")
    return out


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.i = 0
        self.ring = ring
        self.index = {n: k for k, n in enumerate(ring)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            num = int(val)
            if self.peek() == ("op", "/"):
                self.take()
                k2, v2 = self.take()
                if k2 != "int" or int(v2) == 0:
                    raise ParseError("denominator must be a nonzero integer")
                return Polynomial.constant(self.ring, Fraction(num, int(v2)))
            return Polynomial.constant(self.ring, num)
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}")
            return Polynomial.variable(self.ring, self.index[val])
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def poly_from_text(text, ring):
    """Parse polynomial text: +, -, *, ^, parentheses, integer or p/q
    coefficients, and the ring's variable names. No implicit multiplication.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    parser = _Parser(tokens, tuple(ring))
    p = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input near {parser.peek()[1]!r}")
    return p


def poly_to_text(p):
    """Canonical text form; parse(poly_to_text(p)) reproduces p exactly."""
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        factors = []
        for name, e in zip(p.ring, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        body = str(mag) if not factors else (
            "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        )
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
