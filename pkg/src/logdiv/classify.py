"""Classification predicates for free divisors.

Decides: weighted homogeneity (with detected weights), linearity, Koszul
freeness, reductivity of the weight-zero Lie algebra, and the two
connection-existence conditions on structure constants.
"""

from fractions import Fraction

from . import linalg
from .errors import InternalInconsistency, NotLinear
from .groebner import krull_dimension
from .logder import (
    VectorField,
    annihilator_fields,
    lie_bracket,
    structure_constants,
    weight_zero_part,
)
from .poly import (
    Polynomial,
    WeightSystem,
    detect_weight_system,
    partial_derivative,
    weighted_degree,
)


def detect_weights(f):
    """Minimal positive coprime integer weights making f weighted
    homogeneous, with the resulting degree; None when no positive weight
    vector exists."""
    return detect_weight_system(f)


def _standard_system(ring, degree):
    return WeightSystem((1,) * len(ring), degree)


def is_linear(saito):
    """True iff the module admits a basis of fields with linear
    coefficients: f must be homogeneous of degree n and the weight-zero
    part of the basis must generate the whole module."""
    f = saito.divisor
    n = len(f.ring)
    deg = f.total_degree()
    if deg != n or not all(sum(m) == deg for m in f.terms):
        return False
    w = _standard_system(f.ring, deg)
    wz = weight_zero_part(saito.fields, w)
    if len(wz) < n:
        return False
    from .groebner import buchberger

    gb = buchberger([list(d.components) for d in wz.fields])
    return all(gb.reduces_to_zero(list(d.components)) for d in saito.fields)


def _fresh_symbol_names(ring):
    names = []
    for v in ring:
        cand = f"s_{v}"
        while cand in ring or cand in names:
            cand = cand + "_"
        names.append(cand)
    return tuple(names)


def _lift(p, big_ring, extra):
    terms = {}
    for m, c in p.terms.items():
        terms[m + (0,) * extra] = c
    return Polynomial(big_ring, terms, False)


def principal_symbols(saito):
    """sigma(delta_j) = sum_i (d/dx_i coefficient of delta_j) * s_i in the
    ring Q[x_1..x_n, s_1..s_n]."""
    ring = saito.ring
    n = len(ring)
    big = ring + _fresh_symbol_names(ring)
    out = []
    for delta in saito.fields:
        acc = Polynomial.zero(big)
        for i, a in enumerate(delta.components):
            if a.is_zero():
                continue
            si = Polynomial.variable(big, n + i)
            acc = acc + _lift(a, big, n) * si
        out.append(acc)
    return out


def is_koszul(saito, budget=None):
    """Koszul freeness: the n principal symbols form a regular sequence in
    the 2n-variable polynomial ring, i.e. the symbol ideal has Krull
    dimension n."""
    symbols = principal_symbols(saito)
    return krull_dimension(symbols, budget=budget) == len(saito.ring)


class LieAlgebraMatrices:
    """Finite-dimensional matrix Lie algebra spanned by the weight-zero
    fields of a linear free divisor; A[j][i] is the x_i coefficient of the
    d/dx_j component, so the field is (A x) . d.

    The commutator of field matrices reverses order relative to the field
    bracket; the Killing form and all dimension counts are unaffected.
    """

    __slots__ = ("matrices", "dim", "n", "bracket_table")

    def __init__(self, matrices):
        self.matrices = [tuple(tuple(Fraction(e) for e in row) for row in a)
                         for a in matrices]
        self.dim = len(self.matrices)
        self.n = len(self.matrices[0]) if self.matrices else 0
        self.bracket_table = self._close()

    @staticmethod
    def _commutator(a, b):
        n = len(a)
        ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]

    def _flat(self, a):
        return [a[i][j] for i in range(self.n) for j in range(self.n)]

    def coords(self, a):
        """Coordinates of a matrix in the span of the basis, or None."""
        cols = [self._flat(m) for m in self.matrices]
        rows = [[cols[k][pos] for k in range(self.dim)]
                for pos in range(self.n * self.n)]
        return linalg.solve(rows, self.dim, self._flat(a))

    def _close(self):
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                c = self._commutator(self.matrices[i], self.matrices[j])
                sol = self.coords(c)
                if sol is None:
                    raise InternalInconsistency(
                        "weight-zero matrices are not closed under commutator")
                table[(i, j)] = sol
        return table

    def ad(self, i):
        """Matrix of ad(basis_i) in the basis, columns = bracket coords."""
        cols = []
        for j in range(self.dim):
            if i == j:
                cols.append([Fraction(0)] * self.dim)
            elif i < j:
                cols.append(list(self.bracket_table[(i, j)]))
            else:
                cols.append([-c for c in self.bracket_table[(j, i)]])
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def killing_form(self):
        ads = [self.ad(i) for i in range(self.dim)]
        d = self.dim
        k = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                tr = sum(
                    ads[i][p][q] * ads[j][q][p] for p in range(d) for q in range(d)
                )
                k[i][j] = tr
                k[j][i] = tr
        return k

    def derived_coords(self):
        rows = [list(v) for v in self.bracket_table.values()]
        if not rows:
            return []
        ech, _ = linalg.rref(rows, self.dim)
        return ech

    def center_dimension(self):
        rows = []
        for i in range(self.dim):
            rows.extend(self.ad(i))
        if not rows:
            return self.dim
        return self.dim - linalg.rank(rows, self.dim)

    def radical_dimension(self):
        """Cartan: rad = {x : K(x, [g, g]) = 0}."""
        k = self.killing_form()
        derived = self.derived_coords()
        rows = []
        for z in derived:
            rows.append([
                sum(k[e][t] * z[t] for t in range(self.dim))
                for e in range(self.dim)
            ])
        if not rows:
            return self.dim
        return self.dim - linalg.rank(rows, self.dim)

    def center_coords(self):
        rows = []
        for i in range(self.dim):
            rows.extend(self.ad(i))
        if not rows:
            return [[Fraction(1) if a == b else Fraction(0)
                     for b in range(self.dim)] for a in range(self.dim)]
        return linalg.nullspace(rows, self.dim)

    def combine(self, coords):
        n = self.n
        out = [[Fraction(0)] * n for _ in range(n)]
        for c, m in zip(coords, self.matrices):
            if c:
                for i in range(n):
                    for j in range(n):
                        out[i][j] += c * m[i][j]
        return out


def lie_algebra_matrices(saito):
    """Weight-zero algebra of a linear free divisor as constant matrices."""
    if not is_linear(saito):
        raise NotLinear("divisor is not a linear free divisor")
    f = saito.divisor
    w = _standard_system(f.ring, f.total_degree())
    wz = weight_zero_part(saito.fields, w)
    return LieAlgebraMatrices(wz.matrices)


def is_reductive(g):
    """Reductive iff the Killing-form radical equals the center (both are
    rank computations over Q, so the answer agrees with the one over any
    extension field)."""
    if g.dim == 0:
        raise NotLinear("empty weight-zero algebra")
    return g.radical_dimension() == g.center_dimension()


class TraceTestResult:
    __slots__ = ("ok", "witnesses")

    def __init__(self, ok, witnesses):
        self.ok = ok
        self.witnesses = witnesses

    def __bool__(self):
        return self.ok


def _primitive_field(delta):
    """Scale to coprime integer coefficients, first nonzero coefficient
    positive."""
    coeffs = []
    for p in delta.components:
        coeffs.extend(p.terms.values())
    if not coeffs:
        return delta
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    g = 0
    for c in coeffs:
        g = _gcd_int(g, int(c * lcm))
    scale = Fraction(lcm, g)
    first = next(c for p in delta.components for _, c in sorted(p.terms.items()) if c)
    if first * scale < 0:
        scale = -scale
    return delta.scale(scale)


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def field_trace(delta):
    """Sum over i of the x_i coefficient of the d/dx_i component."""
    tr = Fraction(0)
    n = len(delta.ring)
    for i, p in enumerate(delta.components):
        e = tuple(1 if k == i else 0 for k in range(n))
        tr += p.terms.get(e, 0)
    return tr


def diagonal_annihilators(f):
    """Primitive integer vectors c with (sum c_i x_i d/dx_i)(f) = 0,
    i.e. c orthogonal to every exponent vector of f."""
    n = len(f.ring)
    rows = [[Fraction(e) for e in m] for m in sorted(f.terms)]
    out = []
    for v in linalg.nullspace(rows, n):
        lcm = 1
        for x in v:
            lcm = lcm * x.denominator // _gcd_int(lcm, x.denominator)
        ints = [int(x * lcm) for x in v]
        g = 0
        for x in ints:
            g = _gcd_int(g, x)
        ints = [x // g for x in ints]
        if sum(ints) < 0 or (sum(ints) == 0 and next((x for x in ints if x), 1) < 0):
            ints = [-x for x in ints]
        comps = [Polynomial.variable(f.ring, i).scale(ints[i]) for i in range(n)]
        out.append(VectorField(f.ring, comps))
    return out


def trace_test(f, ann=None):
    """Necessary condition for reductivity of a linear free divisor: every
    weight-zero annihilator field must be traceless. On failure the first
    witness is canonical: a diagonal annihilator field with positive trace
    when one exists."""
    if ann is None:
        ann = annihilator_fields(f)
    w = _standard_system(f.ring, len(f.ring))
    wz = weight_zero_part(ann, w)
    witnesses = []
    for diag in diagonal_annihilators(f):
        tr = field_trace(diag)
        if tr != 0:
            witnesses.append((diag, tr))
    for delta in wz.fields:
        tr = field_trace(delta)
        if tr != 0:
            prim = _primitive_field(delta)
            witnesses.append((prim, field_trace(prim)))
    return TraceTestResult(not witnesses, witnesses)


def connection_conditions(saito, sc):
    """Two exact polynomial identities on the structure constants.

    With a[i][j] the d/dx_j coefficient of field i and b[i][j][k] the
    basis coefficients of [delta_i, delta_j]:
      first:  sum_k a[k][r] * d b[i][j][k] / d x_l = 0  for all i, j, l, r
      second: sum_k a[l][k] * d b[i][j][r] / d x_k = 0  for all i, j, l, r
    (the second says every basis field kills every structure constant).
    Both hold trivially when all structure constants are constant.
    """
    n = sc.n
    fields = saito.fields
    a = [[fields[i].components[j] for j in range(n)] for i in range(n)]
    first = True
    second = True
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for r in range(n):
                    s1 = Polynomial.zero(saito.ring)
                    for k in range(n):
                        s1 = s1 + a[k][r] * partial_derivative(sc.b[i][j][k], l)
                    if not s1.is_zero():
                        first = False
                    s2 = Polynomial.zero(saito.ring)
                    for k in range(n):
                        s2 = s2 + a[l][k] * partial_derivative(sc.b[i][j][r], k)
                    if not s2.is_zero():
                        second = False
            if not first and not second:
                return (False, False)
    return (first, second)


def minimal_polynomial(a):
    """Minimal polynomial of a square rational matrix, monic, as a
    univariate Polynomial in the ring ('t',)."""
    n = len(a)
    ring = ("t",)
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)]
    flats = [[power[i][j] for i in range(n) for j in range(n)]]
    while True:
        power = [[sum(power[i][k] * a[k][j] for k in range(n)) for j in range(n)]
                 for i in range(n)]
        flat = [power[i][j] for i in range(n) for j in range(n)]
        rows = [[flats[k][pos] for k in range(len(flats))]
                for pos in range(n * n)]
        sol = linalg.solve(rows, len(flats), flat)
        if sol is not None:
            terms = {(len(flats),): Fraction(1)}
            for d, c in enumerate(sol):
                if c:
                    terms[(d,)] = -c
            return Polynomial(ring, terms)
        flats.append(flat)


def is_diagonalizable(a):
    """Squarefree minimal polynomial criterion; valid over any extension
    of Q since squarefreeness is preserved by field extension."""
    from .poly import poly_gcd

    m = minimal_polynomial(a)
    dm = partial_derivative(m, 0)
    return poly_gcd(m, dm).is_constant()


class DivisorProfile:
    """Aggregated classification flags for one divisor."""

    __slots__ = ("f", "free", "saito", "linear", "weights", "koszul",
                 "reductive", "connection_ok", "notes")

    def __init__(self, f, free=False, saito=None, linear=False, weights=None,
                 koszul=None, reductive=None, connection_ok=None, notes=None):
        if linear and not free:
            raise ValueError("linear implies free")
        if reductive is not None and not linear:
            raise ValueError("reductive is decided only for linear divisors")
        self.f = f
        self.free = free
        self.saito = saito
        self.linear = linear
        self.weights = weights
        self.koszul = koszul
        self.reductive = reductive
        self.connection_ok = connection_ok
        self.notes = notes or []
