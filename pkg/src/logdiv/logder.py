"""Logarithmic derivation modules of divisors in affine n-space.

A vector field delta = sum_i a_i d/dx_i is logarithmic for the divisor
f = 0 when delta(f) lies in the ideal (f). The whole module Der(-log f)
is obtained from the syzygies of (f, df/dx_1, ..., df/dx_n): the relation
g_0 f + sum_i g_i df/dx_i = 0 yields the field sum_i g_i d/dx_i.

Fields are kept as coefficient vectors over a shared ring. Saito matrices
are written with fields as columns: entry (i, j) is the d/dx_i coefficient
of the j-th field.
"""

from fractions import Fraction
import itertools

from .errors import (
    InternalInconsistency,
    NonReduced,
    NotFree,
    NotHomogeneous,
    NotWeightedHomogeneous,
)
from .groebner import (
    DEGREVLEX,
    TrackedBasis,
    buchberger,
    syzygies,
    weighted_monomials,
)
from .poly import (
    Polynomial,
    is_squarefree,
    m_weighted_degree,
    partial_derivative,
    poly_det,
    poly_to_text,
)


class VectorField:
    """delta = sum_i components[i] * d/dx_i over a fixed ring."""

    __slots__ = ("ring", "components")

    def __init__(self, ring, components):
        ring = tuple(ring)
        components = list(components)
        if len(components) != len(ring):
            raise ValueError("need one coefficient per variable")
        for p in components:
            if p.ring != ring:
                raise ValueError("component ring mismatch")
        self.ring = ring
        self.components = components

    def __eq__(self, other):
        return (isinstance(other, VectorField)
                and self.ring == other.ring
                and self.components == other.components)

    def __repr__(self):
        return f"VectorField({format_field(self)})"

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def apply(self, f):
        out = Polynomial.zero(self.ring)
        for i, a in enumerate(self.components):
            if not a.is_zero():
                out = out + a * partial_derivative(f, i)
        return out

    def scale(self, c):
        return VectorField(self.ring, [p.scale(c) for p in self.components])

    def __add__(self, other):
        return VectorField(self.ring,
                           [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorField(self.ring,
                           [a - b for a, b in zip(self.components, other.components)])

    def weight(self, w):
        """Weight tag of a weight-homogeneous field, None if zero.

        The coefficient of d/dx_i must be homogeneous of weight
        tag + w_i; raises NotHomogeneous otherwise.
        """
        tags = set()
        for i, a in enumerate(self.components):
            if a.is_zero():
                continue
            degs = {m_weighted_degree(m, w.weights) for m in a.terms}
            tags.update(d - w.weights[i] for d in degs)
        if not tags:
            return None
        if len(tags) > 1:
            raise NotHomogeneous(tags)
        return tags.pop()

    def weight_parts(self, w):
        """Decompose into weight-homogeneous fields, ascending by tag."""
        buckets = {}
        for i, a in enumerate(self.components):
            for m, c in a.terms.items():
                tag = m_weighted_degree(m, w.weights) - w.weights[i]
                comp = buckets.setdefault(tag, [dict() for _ in self.ring])
                comp[i][m] = c
        out = []
        for tag in sorted(buckets):
            comps = [Polynomial(self.ring, t, False) for t in buckets[tag]]
            out.append(VectorField(self.ring, comps))
        return out


def format_field(delta):
    parts = []
    for i, a in enumerate(delta.components):
        if a.is_zero():
            continue
        text = poly_to_text(a)
        if len(a.terms) > 1 or text.startswith("-"):
            text = f"({text})"
        if text == "1":
            parts.append(f"d_{delta.ring[i]}")
        else:
            parts.append(f"{text}*d_{delta.ring[i]}")
    return " + ".join(parts) if parts else "0"


def lie_bracket(delta, nu):
    """[delta, nu], component i = delta(nu_i) - nu(delta_i)."""
    if delta.ring != nu.ring:
        raise ValueError("fields live over different rings")
    comps = [delta.apply(nu.components[i]) - nu.apply(delta.components[i])
             for i in range(len(delta.ring))]
    return VectorField(delta.ring, comps)


def _check_divisor(f):
    if f.is_zero() or f.is_constant():
        from .errors import ZeroOrConstantInput
        raise ZeroOrConstantInput("divisor polynomial must be nonconstant")
    if f.terms.get((0,) * len(f.ring)) is not None:
        raise ValueError("divisor must pass through the origin")
    if not is_squarefree(f):
        raise NonReduced("divisor polynomial is not squarefree")


def _fields_from_syzygies(gens, ring, drop_first):
    rows = syzygies(gens)
    out = []
    seen = []
    for row in rows.elements:
        comps = row[1:] if drop_first else row
        delta = VectorField(ring, comps)
        if delta.is_zero():
            continue
        key = tuple(tuple(sorted(p.terms.items())) for p in delta.components)
        if key in seen:
            continue
        seen.append(key)
        out.append(delta)
    return out


def compute_der_log(f, budget=None):
    """Generators of Der(-log f) from syzygies of (f, gradient of f)."""
    _check_divisor(f)
    gens = [f] + [partial_derivative(f, i) for i in range(len(f.ring))]
    return _fields_from_syzygies(gens, f.ring, drop_first=True)


def annihilator_fields(f, budget=None):
    """Generators of {delta : delta(f) = 0}, syzygies of the gradient."""
    if f.is_zero() or f.is_constant():
        from .errors import ZeroOrConstantInput
        raise ZeroOrConstantInput("divisor polynomial must be nonconstant")
    gens = [partial_derivative(f, i) for i in range(len(f.ring))]
    return _fields_from_syzygies(gens, f.ring, drop_first=False)


class VerifyResult:
    __slots__ = ("ok", "unit", "reason")

    def __init__(self, ok, unit=None, reason=None):
        self.ok = ok
        self.unit = unit
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"VerifyResult(ok, u = {poly_to_text(self.unit)})"
        return f"VerifyResult(failed: {self.reason})"


class SaitoBasis:
    """Verified free basis of Der(-log f); fields are matrix columns."""

    __slots__ = ("ring", "fields", "divisor", "unit")

    def __init__(self, fields, divisor, unit):
        self.fields = list(fields)
        self.divisor = divisor
        self.ring = divisor.ring
        self.unit = unit

    def __len__(self):
        return len(self.fields)

    def matrix(self):
        """Coefficient matrix, entry (i, j) = d/dx_i coefficient of field j."""
        n = len(self.ring)
        return [[self.fields[j].components[i] for j in range(n)] for i in range(n)]

    def field_weights(self, w):
        return [delta.weight(w) for delta in self.fields]


def verify_saito(fields, f):
    """Saito's criterion: the fields form a basis of Der(-log f) exactly
    when the determinant of their coefficient matrix is u*f with u(0) != 0
    (and f is squarefree). Returns a VerifyResult carrying u or a reason."""
    n = len(f.ring)
    if len(fields) != n:
        return VerifyResult(False, reason=f"need {n} fields, got {len(fields)}")
    from .errors import ZeroOrConstantInput

    try:
        _check_divisor(f)
    except NonReduced:
        return VerifyResult(False, reason="divisor is not squarefree")
    except (ValueError, ZeroOrConstantInput) as e:
        return VerifyResult(False, reason=str(e))
    mat = [[fields[j].components[i] for j in range(n)] for i in range(n)]
    det = poly_det(mat)
    if det.is_zero():
        return VerifyResult(False, reason="determinant vanishes")
    from .poly import try_exact_div

    u = try_exact_div(det, f)
    if u is None:
        return VerifyResult(False, reason="determinant is not a multiple of f")
    if u.terms.get((0,) * n, 0) == 0:
        return VerifyResult(False, reason="cofactor of f vanishes at the origin")
    return VerifyResult(True, unit=u)


def _field_sort_key(delta, w):
    tag = delta.weight(w)
    return (tag, [tuple(sorted(p.terms.items())) for p in delta.components])


def _as_module_elements(fields):
    return [list(delta.components) for delta in fields]


def find_saito_basis(gens, f, w=None, subset_budget=300):
    """Select a free basis among generators of Der(-log f).

    Weighted homogeneous f: generators are split into weight-homogeneous
    parts and greedily minimalized in ascending weight order (a graded
    minimal generating set); exactly n survivors means free. Otherwise
    n-subsets are tried in order of total degree, up to subset_budget.
    """
    _check_divisor(f)
    n = len(f.ring)
    gens = [g for g in gens if not g.is_zero()]
    if w is None:
        from .poly import detect_weight_system
        w = detect_weight_system(f)
    if w is not None:
        parts = []
        for g in gens:
            parts.extend(g.weight_parts(w))
        parts.sort(key=lambda d: _field_sort_key(d, w))
        kept = []
        for delta in parts:
            if not kept:
                kept.append(delta)
                continue
            gb = buchberger(_as_module_elements(kept))
            if not gb.reduces_to_zero(list(delta.components)):
                kept.append(delta)
        if len(kept) != n:
            raise NotFree(
                f"graded minimal generating set has {len(kept)} elements, need {n}")
        res = verify_saito(kept, f)
        if not res:
            raise NotFree(f"minimal generating set fails the determinant test: {res.reason}")
        return SaitoBasis(kept, f, res.unit)
    # non-homogeneous fallback: degree-ordered subset search
    def total_deg(delta):
        return sum(p.total_degree() or 0 for p in delta.components)

    order = sorted(range(len(gens)), key=lambda i: (total_deg(gens[i]), i))
    tried = 0
    for combo in itertools.combinations(order, n):
        if tried >= subset_budget:
            raise NotFree(f"no free basis found within {subset_budget} subsets")
        tried += 1
        fields = [gens[i] for i in combo]
        res = verify_saito(fields, f)
        if res:
            return SaitoBasis(fields, f, res.unit)
    raise NotFree("no n-subset of the generators satisfies the determinant test")


class StructureConstants:
    """Coefficients b[i][j][k] with [delta_i, delta_j] = sum_k b[i][j][k] delta_k."""

    __slots__ = ("ring", "n", "b")

    def __init__(self, ring, n, b):
        self.ring = ring
        self.n = n
        self.b = b

    def coeffs(self, i, j):
        return self.b[i][j]

    def is_constant(self):
        return all(p.is_constant() for row in self.b for col in row for p in col)


def structure_constants(basis):
    """Expand the brackets of a verified basis in the basis itself.

    Freeness makes the coefficients unique; a nonzero division remainder
    would mean the fields are not actually a basis and raises
    InternalInconsistency.
    """
    n = len(basis.ring)
    tracked = TrackedBasis(_as_module_elements(basis.fields))
    zero = Polynomial.zero(basis.ring)
    b = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = lie_bracket(basis.fields[i], basis.fields[j])
            qs = tracked.membership_quotients(list(br.components))
            b[i][j] = list(qs)
            b[j][i] = [q.scale(-1) for q in qs]
    return StructureConstants(basis.ring, n, b)


def reconstruct_bracket(sc, basis, i, j):
    acc = VectorField(basis.ring, [Polynomial.zero(basis.ring)] * sc.n)
    for k in range(sc.n):
        q = sc.b[i][j][k]
        if not q.is_zero():
            acc = acc + VectorField(basis.ring,
                                    [q * p for p in basis.fields[k].components])
    return acc


class WeightZeroPart:
    """Q-basis of the weight-zero graded piece of the module the input
    generates; matrices[j] is the constant matrix A with field = (A x) . d
    when the grading is standard (None otherwise)."""

    __slots__ = ("fields", "matrices")

    def __init__(self, fields, matrices):
        self.fields = fields
        self.matrices = matrices

    def __len__(self):
        return len(self.fields)


def weight_zero_part(gens, w):
    """Weight-zero piece of the graded module generated by gens.

    Spanning set: m * (weight-homogeneous part g of a generator) over
    monomials m with wt(m) = -wt(g); a deterministic greedy scan keeps a
    linearly independent subset.
    """
    from . import linalg

    ring = gens[0].ring
    n = len(ring)
    candidates = []
    for g in gens:
        for part in g.weight_parts(w):
            tag = part.weight(w)
            if tag is None or tag > 0:
                continue
            for m in weighted_monomials(w.weights, -tag):
                mono = Polynomial.monomial(ring, m)
                candidates.append(VectorField(ring, [mono * p for p in part.components]))
    coords = {}
    rows = []
    fields = []
    for delta in candidates:
        flat = {}
        for i, p in enumerate(delta.components):
            for mm, c in p.terms.items():
                flat[(i, mm)] = c
        for t in flat:
            if t not in coords:
                coords[t] = len(coords)
        width = len(coords)
        vec = [Fraction(0)] * width
        for t, c in flat.items():
            vec[coords[t]] = c
        padded = [r + [Fraction(0)] * (width - len(r)) for r in rows]
        if linalg.rank(padded + [vec], width) > len(rows):
            rows = padded + [vec]
            fields.append(delta)
    matrices = None
    if w.is_standard():
        matrices = []
        for delta in fields:
            a = [[Fraction(0)] * n for _ in range(n)]
            for jcomp, p in enumerate(delta.components):
                for m, c in p.terms.items():
                    i = next(k for k, e in enumerate(m) if e)
                    a[jcomp][i] = c
            matrices.append(a)
    return WeightZeroPart(fields, matrices)


def euler_field(f, w):
    """chi = sum (w_i / k) x_i d/dx_i, normalized so that chi(f) = f."""
    from .poly import weighted_degree

    k = weighted_degree(f, w.weights)
    if k is None or k == 0:
        raise NotWeightedHomogeneous("need nonzero weighted degree")
    comps = []
    for i, name in enumerate(f.ring):
        xi = Polynomial.variable(f.ring, i)
        comps.append(xi.scale(Fraction(w.weights[i], k)))
    chi = VectorField(f.ring, comps)
    if chi.apply(f) != f:
        raise InternalInconsistency("Euler identity failed")
    return chi
