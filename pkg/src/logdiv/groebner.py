"""Groebner bases, syzygies, and graded quotient bases over Q.

Elements of free modules are plain lists of Polynomial (all of one ring, one
fixed rank); ideals are handled as the rank-1 case and plain Polynomials are
accepted anywhere a module element is. Internally an element is flattened to
a dict mapping (component, exponent-tuple) terms to coefficients.

The module term order is position-over-term: component 0 dominates, ties are
broken by the chosen monomial order. Reduced bases are interreduced, monic,
and sorted, so a Groebner basis is a canonical object here.
"""

from fractions import Fraction
import heapq
import itertools

from .errors import BudgetExceeded, InternalInconsistency, NotHomogeneous
from .poly import (
    Polynomial,
    degrevlex_key,
    m_degree,
    m_div,
    m_divides,
    m_lcm,
    m_mul,
    m_weighted_degree,
)

DEFAULT_STEP_BUDGET = 2_000_000


class DegRevLex:
    name = "degrevlex"

    def key(self, e):
        return degrevlex_key(e)


class Lex:
    name = "lex"

    def key(self, e):
        return e


class WeightedDegRevLex:
    """Degree by positive weights first, degrevlex tie-break."""

    def __init__(self, weights):
        self.weights = tuple(weights)
        self.name = f"wdegrevlex{self.weights}"

    def key(self, e):
        return (m_weighted_degree(e, self.weights), tuple(-x for x in reversed(e)))


DEGREVLEX = DegRevLex()
LEX = Lex()


def _term_key(order):
    okey = order.key

    def key(t):
        return (-t[0], okey(t[1]))

    return key


# ---- flattened module elements -----------------------------------------


def _as_vector(elem, rank):
    if isinstance(elem, Polynomial):
        elem = [elem]
    if rank is not None and len(elem) != rank:
        raise ValueError(f"module element has length {len(elem)}, expected {rank}")
    return list(elem)


def _flatten(vec):
    out = {}
    for c, p in enumerate(vec):
        for m, co in p.terms.items():
            out[(c, m)] = co
    return out


def _unflatten(v, ring, rank):
    polys = [{} for _ in range(rank)]
    for (c, m), co in v.items():
        polys[c][m] = co
    return [Polynomial(ring, t, False) for t in polys]


def _v_iadd_scaled(target, src, expo, coeff):
    """target += coeff * x^expo * src, in place."""
    for (c, m), co in src.items():
        t = (c, m_mul(m, expo))
        s = target.get(t, 0) + coeff * co
        if s:
            target[t] = s
        elif t in target:
            del target[t]


def _v_scale(v, coeff):
    return {t: coeff * co for t, co in v.items()}


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit):
        self.left = limit if limit is not None else DEFAULT_STEP_BUDGET

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("step budget exhausted in Groebner engine")


def _reduce_full(v, basis, leads, tkey, budget, track=False, sugar=None, sugars=None):
    """Fully reduce flattened element v against monic basis elements.

    Returns (remainder, quotients) where quotients[j] is a dict
    {expo: coeff} with v = sum_j quotients[j] * basis[j] + remainder.
    """
    p = dict(v)
    rem = {}
    quots = [dict() for _ in basis] if track else None
    while p:
        t = max(p, key=tkey)
        c = p[t]
        comp, expo = t
        hit = None
        for j, (lc_comp, lc_expo) in enumerate(leads):
            if lc_comp == comp and m_divides(lc_expo, expo):
                hit = j
                break
        if hit is None:
            rem[t] = c
            del p[t]
            continue
        budget.spend()
        shift = m_div(expo, leads[hit][1])
        _v_iadd_scaled(p, basis[hit], shift, -c)
        if track:
            q = quots[hit]
            q[shift] = q.get(shift, 0) + c
        if sugar is not None:
            sugar[0] = max(sugar[0], sugars[hit] + m_degree(shift))
    return rem, quots


def _sugar_of(v):
    return max((m_degree(m) for (_, m) in v), default=0)


def _run_buchberger(gen_vecs, order, budget, track):
    """Core loop. gen_vecs: list of flattened nonzero elements.

    Returns (basis, sugars, reps, zero_syzygies) where reps[j] expresses
    basis[j] over the input generators and zero_syzygies are input-space
    relations found from S-pairs reducing to zero. reps/zero_syzygies are
    None unless track is set. Criteria pruning is disabled in track mode so
    the collected relations generate the full first syzygy module.
    """
    tkey = _term_key(order)
    rank1 = all(c == 0 for v in gen_vecs for (c, _) in v)
    basis = []
    sugars = []
    reps = [] if track else None
    zsyz = [] if track else None
    pending = set()
    heap = []
    counter = itertools.count()

    def lead(v):
        return max(v, key=tkey)

    def push_pairs(j):
        cj, ej = lead(basis[j])
        for i in range(j):
            ci, ei = lead(basis[i])
            if ci != cj:
                continue
            l = m_lcm(ei, ej)
            sug = max(
                sugars[i] + m_degree(m_div(l, ei)),
                sugars[j] + m_degree(m_div(l, ej)),
            )
            heapq.heappush(heap, (sug, m_degree(l), i, j, next(counter)))
            pending.add((i, j))

    def append(v, sug, rep):
        lc = v[lead(v)]
        v = _v_scale(v, Fraction(1) / lc)
        basis.append(v)
        sugars.append(sug)
        if track:
            reps.append(_v_scale(rep, Fraction(1) / lc))
        push_pairs(len(basis) - 1)

    for idx, v in enumerate(gen_vecs):
        rep = {(idx, (0,) * _nvars(v)): Fraction(1)} if track else None
        append(v, _sugar_of(v), rep)

    while heap:
        sug, _, i, j, _ = heapq.heappop(heap)
        pending.discard((i, j))
        ci, ei = lead(basis[i])
        cj, ej = lead(basis[j])
        l = m_lcm(ei, ej)
        if not track:
            if rank1 and m_mul(ei, ej) == l:
                continue  # coprime leads reduce to zero
            if _chain_skip(i, j, l, ci, basis, lead, pending):
                continue
        budget.spend()
        si = m_div(l, ei)
        sj = m_div(l, ej)
        s = {}
        _v_iadd_scaled(s, basis[i], si, Fraction(1))
        _v_iadd_scaled(s, basis[j], sj, Fraction(-1))
        if track:
            rep = {}
            _v_iadd_scaled(rep, reps[i], si, Fraction(1))
            _v_iadd_scaled(rep, reps[j], sj, Fraction(-1))
        sug_box = [sug]
        rem, quots = _reduce_full(
            s, basis, [lead(b) for b in basis], tkey, budget,
            track=track, sugar=sug_box, sugars=sugars,
        )
        if track:
            for k, q in enumerate(quots):
                for shift, coeff in q.items():
                    _v_iadd_scaled(rep, reps[k], shift, -coeff)
        if rem:
            append(rem, sug_box[0], rep if track else None)
        elif track and rep:
            zsyz.append(rep)
    return basis, sugars, reps, zsyz


def _chain_skip(i, j, l, comp, basis, lead, pending):
    for k in range(len(basis)):
        if k == i or k == j:
            continue
        ck, ek = lead(basis[k])
        if ck != comp or not m_divides(ek, l):
            continue
        a, b = min(i, k), max(i, k)
        c, d = min(j, k), max(j, k)
        if (a, b) not in pending and (c, d) not in pending:
            return True
    return False


def _nvars(v):
    for (_, m) in v:
        return len(m)
    raise ValueError("cannot infer variable count from zero element")


def _interreduce(basis, order, budget):
    tkey = _term_key(order)
    work = [dict(b) for b in basis]
    # drop elements whose lead is divisible by another lead
    keep = []
    leads = [max(b, key=tkey) for b in work]
    for i, b in enumerate(work):
        ci, ei = leads[i]
        redundant = False
        for j in range(len(work)):
            if i == j:
                continue
            cj, ej = leads[j]
            if ci == cj and m_divides(ej, ei):
                if m_divides(ei, ej) and j > i:
                    continue  # equal leads: keep the earlier one
                redundant = True
                break
        if not redundant:
            keep.append(b)
    # tail-reduce every survivor against the others
    out = []
    for i, b in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lds = [max(o, key=tkey) for o in others]
        rem, _ = _reduce_full(b, others, lds, tkey, budget)
        if rem:
            lc = rem[max(rem, key=tkey)]
            out.append(_v_scale(rem, Fraction(1) / lc))
    out.sort(key=lambda v: tkey(max(v, key=tkey)), reverse=True)
    return out


class GroebnerBasis:
    """Reduced, monic, deterministically sorted basis."""

    __slots__ = ("ring", "rank", "order", "elements", "_flat", "_leads")

    def __init__(self, ring, rank, order, flat_elements):
        self.ring = ring
        self.rank = rank
        self.order = order
        self._flat = flat_elements
        tkey = _term_key(order)
        self._leads = [max(v, key=tkey) for v in flat_elements]
        vecs = [_unflatten(v, ring, rank) for v in flat_elements]
        self.elements = [v[0] for v in vecs] if rank == 1 else vecs

    def __len__(self):
        return len(self._flat)

    def normal_form(self, elem, budget=None):
        vec = _as_vector(elem, self.rank)
        v = _flatten(vec)
        rem, _ = _reduce_full(
            v, self._flat, self._leads, _term_key(self.order), _Budget(budget)
        )
        out = _unflatten(rem, self.ring, self.rank)
        return out[0] if self.rank == 1 else out

    def reduces_to_zero(self, elem, budget=None):
        nf = self.normal_form(elem, budget)
        if isinstance(nf, Polynomial):
            return nf.is_zero()
        return all(p.is_zero() for p in nf)


class SyzygyBasis:
    """Generators of the first syzygy module of the input generators."""

    __slots__ = ("ring", "rank", "elements")

    def __init__(self, ring, rank, elements):
        self.ring = ring
        self.rank = rank
        self.elements = elements

    def __len__(self):
        return len(self.elements)


def _prepare(gens, rank=None):
    if not gens:
        raise ValueError("need at least one generator")
    first = gens[0]
    if isinstance(first, Polynomial):
        ring = first.ring
        r = 1
    else:
        ring = first[0].ring
        r = len(first)
    if rank is not None:
        r = rank
    vecs = [_as_vector(g, r) for g in gens]
    for v in vecs:
        for p in v:
            if p.ring != ring:
                raise ValueError("mixed rings among generators")
    return ring, r, vecs


def buchberger(gens, order=DEGREVLEX, budget=None):
    """Reduced Groebner basis of the ideal/submodule generated by gens."""
    ring, rank, vecs = _prepare(gens)
    flat = [f for f in map(_flatten, vecs) if f]
    b = _Budget(budget)
    if not flat:
        return GroebnerBasis(ring, rank, order, [])
    basis, _, _, _ = _run_buchberger(flat, order, b, track=False)
    return GroebnerBasis(ring, rank, order, _interreduce(basis, order, b))


def normal_form(elem, gb, order=DEGREVLEX, budget=None):
    """Fully reduced remainder of elem against a GroebnerBasis or a plain
    list of generators (a basis is computed first in the latter case)."""
    if not isinstance(gb, GroebnerBasis):
        gb = buchberger(gb, order, budget)
    return gb.normal_form(elem, budget)


class TrackedBasis:
    """Working (non-reduced) basis with expressions over the original
    generators; used for syzygies and for division with quotients."""

    __slots__ = ("ring", "rank", "ngens", "order", "_flat", "_reps", "_zsyz", "_budget")

    def __init__(self, gens, order=DEGREVLEX, budget=None):
        ring, rank, vecs = _prepare(gens)
        self.ring = ring
        self.rank = rank
        self.ngens = len(vecs)
        self.order = order
        self._budget = _Budget(budget)
        flat = []
        keep_idx = []
        for i, v in enumerate(map(_flatten, vecs)):
            if v:
                flat.append(v)
                keep_idx.append(i)
        if not flat:
            raise ValueError("all generators are zero")
        basis, _, reps, zsyz = _run_buchberger(flat, order, self._budget, track=True)
        remap = {j: keep_idx[j] for j in range(len(keep_idx))}
        self._flat = basis
        self._reps = [self._remap(r, remap) for r in reps]
        self._zsyz = [self._remap(z, remap) for z in zsyz]

    @staticmethod
    def _remap(rep, remap):
        return {(remap[c], m): co for (c, m), co in rep.items()}

    def divide(self, elem):
        """elem = sum_i q_i * gens[i] + remainder; returns (q list, remainder)."""
        vec = _as_vector(elem, self.rank)
        v = _flatten(vec)
        tkey = _term_key(self.order)
        leads = [max(b, key=tkey) for b in self._flat]
        rem, quots = _reduce_full(v, self._flat, leads, tkey, self._budget, track=True)
        acc = {}
        for j, q in enumerate(quots):
            for shift, coeff in q.items():
                _v_iadd_scaled(acc, self._reps[j], shift, coeff)
        qs = _unflatten(acc, self.ring, self.ngens)
        r = _unflatten(rem, self.ring, self.rank)
        return qs, (r[0] if self.rank == 1 else r)

    def membership_quotients(self, elem):
        """Quotients when elem lies in the module; InternalInconsistency otherwise."""
        qs, r = self.divide(elem)
        rzero = r.is_zero() if isinstance(r, Polynomial) else all(p.is_zero() for p in r)
        if not rzero:
            raise InternalInconsistency("claimed member has nonzero remainder")
        return qs


def syzygies(gens, order=DEGREVLEX, budget=None):
    """Generating set of the first syzygy module of gens."""
    ring, rank, vecs = _prepare(gens)
    m = len(vecs)
    flats = [_flatten(v) for v in vecs]
    nonzero = [i for i, f in enumerate(flats) if f]
    out = []
    # a zero generator is annihilated by the corresponding unit vector
    for i, f in enumerate(flats):
        if not f:
            row = [Polynomial.zero(ring) for _ in range(m)]
            row[i] = Polynomial.one(ring)
            out.append(row)
    if nonzero:
        tracked = TrackedBasis([vecs[i] for i in nonzero], order, budget)
        remap = {j: nonzero[j] for j in range(len(nonzero))}
        # syzygies discovered from S-pairs that reduced to zero
        for z in tracked._zsyz:
            out.append(_unflatten(TrackedBasis._remap(z, remap), ring, m))
        # rows of (identity - U T): divide each generator by the basis
        for pos, i in enumerate(nonzero):
            qs, r = tracked.divide(vecs[i])
            rzero = r.is_zero() if isinstance(r, Polynomial) else all(p.is_zero() for p in r)
            if not rzero:
                raise InternalInconsistency("generator does not reduce to zero")
            row = [Polynomial.zero(ring) for _ in range(m)]
            row[i] = Polynomial.one(ring)
            for j, q in enumerate(qs):
                row[nonzero[j]] = row[nonzero[j]] - q
            if any(not p.is_zero() for p in row):
                out.append(row)
    # light dedupe, deterministic order
    seen = []
    dedup = []
    for row in out:
        keyrep = tuple(tuple(sorted(p.terms.items())) for p in row)
        if keyrep not in seen:
            seen.append(keyrep)
            dedup.append(row)
    return SyzygyBasis(ring, m, dedup)


# ---- graded pieces ------------------------------------------------------


def weighted_monomials(weights, target):
    """All exponent tuples e with sum(w_i e_i) = target, degrevlex descending."""
    n = len(weights)
    out = []

    def rec(i, rest, acc):
        if i == n:
            if rest == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        top = rest // w
        for e in range(top + 1):
            acc.append(e)
            rec(i + 1, rest - e * w, acc)
            acc.pop()

    if target >= 0:
        rec(0, target, [])
    out.sort(key=degrevlex_key, reverse=True)
    return out


def _spread(e):
    return (max(e) - min(e)) if e else 0


def graded_quotient_basis(sub, target_weight, w, component_weights=None, order=DEGREVLEX, budget=None):
    """Monomial representatives of a Q-basis of the target_weight graded
    piece of (free module) / (submodule generated by sub).

    Every generator must be homogeneous for the weight system (component i
    carries the shift component_weights[i]). Representatives are chosen from
    the weight's monomials scanned by ascending exponent spread (degrevlex
    descending within a spread class), keeping those whose normal forms are
    linearly independent; this favours balanced monomials like x^2*y^2 over
    pure powers.
    """
    ring, rank, vecs = _prepare(sub)
    if component_weights is None:
        component_weights = [0] * rank
    weights = w.weights
    for v in vecs:
        degs = set()
        for c, p in enumerate(v):
            for m in p.terms:
                degs.add(m_weighted_degree(m, weights) + component_weights[c])
        if len(degs) > 1:
            raise NotHomogeneous(degs)
    gb = buchberger(sub, order, budget)
    candidates = []
    for c in range(rank):
        for e in weighted_monomials(weights, target_weight - component_weights[c]):
            candidates.append((c, e))
    # stable passes: component ascending, then degrevlex descending,
    # then exponent spread ascending (the dominant criterion)
    candidates.sort(key=lambda t: t[0])
    candidates.sort(key=lambda t: degrevlex_key(t[1]), reverse=True)
    candidates.sort(key=lambda t: _spread(t[1]))
    selected = []
    rows = []
    coords = {}
    from . import linalg

    def coord_vector(flat):
        vec = [Fraction(0)] * len(coords)
        grew = False
        for t, co in flat.items():
            if t not in coords:
                coords[t] = len(coords)
                grew = True
            if coords[t] < len(vec):
                vec[coords[t]] = co
        if grew:
            vec = [Fraction(0)] * len(coords)
            for t, co in flat.items():
                vec[coords[t]] = co
        return vec

    for c, e in candidates:
        elem = [Polynomial.zero(ring) for _ in range(rank)]
        elem[c] = Polynomial.monomial(ring, e)
        nf = gb.normal_form(elem[0] if rank == 1 else elem)
        flat = _flatten(_as_vector(nf, rank))
        if not flat:
            continue
        vec = coord_vector(flat)
        width = len(coords)
        padded = [r + [Fraction(0)] * (width - len(r)) for r in rows]
        if linalg.rank(padded + [vec], width) > len(rows):
            rows = padded + [vec]
            selected.append(elem[0] if rank == 1 else elem)
    return selected


def krull_dimension(gens, order=DEGREVLEX, budget=None):
    """Krull dimension of (polynomial ring)/(ideal gens), by the maximal
    size of a variable subset meeting no initial-ideal support.

    Returns -1 for the unit ideal; the number of variables for the zero
    ideal.
    """
    ring, rank, vecs = _prepare(gens)
    if rank != 1:
        raise ValueError("krull_dimension expects ideal generators")
    n = len(ring)
    gb = buchberger(gens, order, budget)
    supports = []
    for v in gb._flat:
        (_, e) = max(v, key=_term_key(order))
        if not any(e):
            return -1
        supports.append(frozenset(i for i, x in enumerate(e) if x))
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            s = set(combo)
            if all(not sup <= s for sup in supports):
                return size
    raise InternalInconsistency("dimension search fell through")
