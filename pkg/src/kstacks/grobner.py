"""Strong Groebner bases over the integers for group-ring quotients.

The group ring of Z^r x Z/m1 x ... x Z/mk is presented as an ordinary
polynomial ring on variables y1, y1', ..., yr, yr', s1, ..., sk modulo the
structural relations yi*yi' - 1 and sj^mj - 1, which makes a monomial order
available.  Over the integers a Groebner basis must be closed under both
S-polynomials and GCD-polynomials; reduction then leaves coefficient
remainders in [0, lc), and ``normal_form(f) == 0`` decides ideal membership.

Z-module invariants of a quotient are computed two independent ways: from
the standard monomials of the basis together with their leading-coefficient
relations (exact when the standard monomial set is finite), and from a
truncated Macaulay lattice built from raw shifts of the input generators,
with a stabilization check at two bounds.  The reported status only claims
exactness when the two routes agree.
"""

from __future__ import annotations

import heapq
import itertools
from math import gcd, prod

from .abelian import group_from_relations, xgcd
from .groupring import GroupRingElement

#: soft cap on the size of an enumerated standard-monomial box
BOX_LIMIT = 20000


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _divides(B, E):
    return all(b <= e for b, e in zip(B, E))


class IntPolynomial:
    """Sparse polynomial with integer coefficients and nonnegative exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = {}
        for exp, coeff in terms.items():
            coeff = int(coeff)
            if coeff:
                if any(e < 0 for e in exp):
                    raise ValueError("exponents must be nonnegative")
                clean[tuple(exp)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({tuple(exp): coeff})

    def is_zero(self):
        return not self.terms

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grevlex_key)
        return exp, self.terms[exp]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return IntPolynomial(terms)

    def __neg__(self):
        return IntPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial({e: other * c for e, c in self.terms.items()})
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return IntPolynomial(terms)

    __rmul__ = __mul__

    def shift(self, exp, coeff=1):
        """coeff * X^exp * self."""
        return IntPolynomial(
            {tuple(a + b for a, b in zip(e, exp)): coeff * c for e, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grevlex_key(kv[0]), reverse=True)

    def __repr__(self):
        return f"IntPolynomial({self.terms!r})"


class PolyPresentation:
    """Polynomial model of a group ring, or a plain polynomial ring.

    For a group, the variable order is y1, y1', ..., yr, yr', s1, ..., sk
    and the structural relations are always part of every ideal built over
    the presentation.  ``free_variables`` gives an ordinary polynomial ring
    with no structural relations (used for raw polynomial ideals).
    """

    __slots__ = ("group", "names", "num_vars", "structural")

    def __init__(self, group, names, structural):
        self.group = group
        self.names = tuple(names)
        self.num_vars = len(self.names)
        self.structural = tuple(structural)

    @classmethod
    def for_group(cls, group):
        r = group.free_rank
        names = []
        for i in range(r):
            names.extend((f"y{i + 1}", f"y{i + 1}'"))
        names.extend(f"s{j + 1}" for j in range(len(group.torsion)))
        nvars = len(names)
        structural = []
        for i in range(r):
            exp = [0] * nvars
            exp[2 * i] = 1
            exp[2 * i + 1] = 1
            structural.append(
                IntPolynomial({tuple(exp): 1, (0,) * nvars: -1})
            )
        for j, m in enumerate(group.torsion):
            exp = [0] * nvars
            exp[2 * r + j] = m
            structural.append(
                IntPolynomial({tuple(exp): 1, (0,) * nvars: -1})
            )
        return cls(group, names, structural)

    @classmethod
    def free_variables(cls, names):
        return cls(None, tuple(names), ())

    def exponent_element(self, exp):
        """Group element of a presentation monomial (yi exponents minus yi'
        exponents on the free part, sj exponents as torsion residues)."""
        if self.group is None:
            raise ValueError("presentation has no underlying group")
        r = self.group.free_rank
        free = [exp[2 * i] - exp[2 * i + 1] for i in range(r)]
        residues = [exp[2 * r + j] for j in range(len(self.group.torsion))]
        return self.group.element_canonical(free, residues)

    def __repr__(self):
        return f"PolyPresentation({', '.join(self.names)})"


def present(e, presentation):
    """Clear negative free exponents of a group-ring element.

    Returns (polynomial, clearing) where ``clearing`` is the exponent vector
    of the minimal monomial in the primed variables such that
    e = t^(exponent_element(clearing)) * unpresent(polynomial).  The clearing
    monomial is a unit of the group ring, so classes are tracked up to unit.
    """
    p = presentation
    if p.group is None:
        raise ValueError("present() needs a group presentation")
    p.group.require_same(e.group)
    r = p.group.free_rank
    nvars = p.num_vars
    if e.is_zero():
        return IntPolynomial.zero(), (0,) * nvars
    delta = [0] * r
    for elem in e.terms:
        for i in range(r):
            if -elem.free[i] > delta[i]:
                delta[i] = -elem.free[i]
    terms = {}
    for elem, coeff in e.terms.items():
        exp = [0] * nvars
        for i in range(r):
            exp[2 * i] = elem.free[i] + delta[i]
        for j, res in enumerate(elem.residues):
            exp[2 * r + j] = res
        terms[tuple(exp)] = coeff
    clearing = [0] * nvars
    for i in range(r):
        clearing[2 * i + 1] = delta[i]
    return IntPolynomial(terms), tuple(clearing)


def unpresent(f, presentation, clearing=None):
    """Map a presentation polynomial back to the group ring, optionally
    multiplying by the recorded clearing unit."""
    p = presentation
    group = p.group
    if group is None:
        raise ValueError("unpresent() needs a group presentation")
    out = GroupRingElement.zero(group)
    for exp, coeff in f.terms.items():
        out = out + GroupRingElement.monomial(p.exponent_element(exp), coeff)
    if clearing is not None and any(clearing):
        out = out * GroupRingElement.monomial(p.exponent_element(clearing))
    return out


def _normalize_sign(f):
    _, lc = f.leading_term()
    return f if lc > 0 else -f


def _reduce_terms(terms, basis):
    """Full reduction of a term dict by a list of sign-normalized polynomials.

    Every output term has its coefficient in [0, lc(g)) for every basis
    element g whose leading monomial divides it.
    """
    lts = [g.leading_term() for g in basis]
    work = dict(terms)
    out = {}
    while work:
        E = max(work, key=_grevlex_key)
        c = work.pop(E)
        changed = True
        while changed and c:
            changed = False
            for g, (B, a) in zip(basis, lts):
                if _divides(B, E):
                    q = c // a
                    if q:
                        c -= q * a
                        for F, cf in g.terms.items():
                            if F == B:
                                continue
                            key = tuple(e - b + f2 for e, b, f2 in zip(E, B, F))
                            val = work.get(key, 0) - q * cf
                            if val:
                                work[key] = val
                            else:
                                work.pop(key, None)
                        changed = True
        if c:
            out[E] = c
    return out


class StrongGroebnerBasis:
    """Reduced strong Groebner basis, deterministic for a fixed input."""

    __slots__ = ("presentation", "elements", "input_generators")

    def __init__(self, presentation, elements, input_generators):
        self.presentation = presentation
        self.elements = tuple(elements)
        self.input_generators = tuple(input_generators)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"StrongGroebnerBasis({len(self.elements)} elements)"


def _spoly(f, g):
    (A, a), (B, b) = f.leading_term(), g.leading_term()
    L = tuple(max(x, y) for x, y in zip(A, B))
    l = a // gcd(a, b) * b
    return f.shift(tuple(x - y for x, y in zip(L, A)), l // a) - g.shift(
        tuple(x - y for x, y in zip(L, B)), l // b
    )


def _gpoly(f, g):
    (A, a), (B, b) = f.leading_term(), g.leading_term()
    if a % b == 0 or b % a == 0:
        return None
    d, x, y = xgcd(a, b)
    L = tuple(max(p, q) for p, q in zip(A, B))
    return f.shift(tuple(p - q for p, q in zip(L, A)), x) + g.shift(
        tuple(p - q for p, q in zip(L, B)), y
    )


def strong_groebner(gens, presentation):
    """Complete ``gens`` plus the structural relations to a reduced strong
    Groebner basis (S-polynomials and GCD-polynomials both enter the loop)."""
    gens = list(gens)
    seeds = []
    seen = set()
    for f in itertools.chain(gens, presentation.structural):
        if f.is_zero():
            continue
        f = _normalize_sign(f)
        if f not in seen:
            seen.add(f)
            seeds.append(f)

    basis = []
    pairs = []

    def push_pairs(j):
        B, _ = basis[j].leading_term()
        for i in range(j):
            A, _ = basis[i].leading_term()
            L = tuple(max(x, y) for x, y in zip(A, B))
            heapq.heappush(pairs, (_grevlex_key(L), i, j))

    for f in seeds:
        reduced = IntPolynomial(_reduce_terms(f.terms, basis)) if basis else f
        if not reduced.is_zero():
            basis.append(_normalize_sign(reduced))
            push_pairs(len(basis) - 1)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        f, g = basis[i], basis[j]
        for combo in (_spoly(f, g), _gpoly(f, g)):
            if combo is None or combo.is_zero():
                continue
            r = IntPolynomial(_reduce_terms(combo.terms, basis))
            if not r.is_zero():
                basis.append(_normalize_sign(r))
                push_pairs(len(basis) - 1)

    basis = _interreduce(basis)
    return StrongGroebnerBasis(presentation, basis, gens)


def _interreduce(basis):
    basis = sorted(basis, key=lambda f: (_grevlex_key(f.leading_term()[0]), f.leading_term()[1]))
    # drop elements whose leading term is term-divisible by another's
    kept = []
    lts = [f.leading_term() for f in basis]
    for i, f in enumerate(basis):
        B, a = lts[i]
        redundant = False
        for j, (C, c) in enumerate(lts):
            if i == j:
                continue
            if _divides(C, B) and a % c == 0:
                if (C, c) == (B, a) and j > i:
                    continue
                redundant = True
                break
        if not redundant:
            kept.append(f)
    # tail-reduce each element; leading terms are untouched, so one pass
    # leaves every non-leading term irreducible
    reduced = []
    for f in kept:
        B, a = f.leading_term()
        tail = {E: c for E, c in f.terms.items() if E != B}
        nf_tail = _reduce_terms(tail, kept)
        nf_tail[B] = a
        reduced.append(IntPolynomial(nf_tail))
    reduced.sort(key=lambda f: (_grevlex_key(f.leading_term()[0]), f.leading_term()[1]))
    return reduced


def normal_form(f, gb):
    """Canonical remainder of f modulo the ideal of the basis."""
    return IntPolynomial(_reduce_terms(f.terms, list(gb.elements)))


def in_ideal(f, gb):
    return normal_form(f, gb).is_zero()


# ---------------------------------------------------------------------------
# Z-module invariants


class AbGroupInvariants:
    """Abelian-group structure of a quotient ring, with an honesty status.

    status is "exact" (standard-monomial method and the Macaulay oracle
    agree), "not_finitely_generated" (the standard monomial set is provably
    infinite), or "unknown" (the routes disagree at the searched bound).
    """

    EXACT = "exact"
    NOT_FG = "not_finitely_generated"
    UNKNOWN = "unknown"

    __slots__ = ("free_rank", "torsion", "status", "bound")

    def __init__(self, free_rank, torsion, status, bound=None):
        self.free_rank = free_rank
        self.torsion = tuple(torsion)
        self.status = status
        self.bound = bound

    def invariants(self):
        return (self.free_rank, self.torsion)

    def __eq__(self, other):
        if not isinstance(other, AbGroupInvariants):
            return NotImplemented
        return (self.free_rank, self.torsion, self.status, self.bound) == (
            other.free_rank,
            other.torsion,
            other.status,
            other.bound,
        )

    def __repr__(self):
        return (
            f"AbGroupInvariants(rank={self.free_rank}, torsion={list(self.torsion)}, "
            f"status={self.status})"
        )

    def to_json(self):
        return {
            "rank": self.free_rank,
            "torsion": list(self.torsion),
            "status": self.status,
            "bound": self.bound,
        }


def _standard_monomials(gb):
    """Finite standard-monomial set of the quotient, or None if infinite.

    A monomial is standard when it is not divisible by the leading monomial
    of any unit-leading-coefficient basis element; the set is finite exactly
    when each variable has such a pure power.
    """
    nvars = gb.presentation.num_vars
    lts = [f.leading_term() for f in gb.elements]
    unit_lms = [B for B, a in lts if a == 1]
    if any(not any(B) for B in unit_lms):
        # a unit constant: the quotient is trivial
        return []
    caps = []
    for v in range(nvars):
        powers = [
            B[v]
            for B in unit_lms
            if B[v] and all(B[w] == 0 for w in range(nvars) if w != v)
        ]
        if not powers:
            return None
        caps.append(min(powers))
    if prod(caps, start=1) > BOX_LIMIT:
        raise _BoxTooLarge()
    box = itertools.product(*(range(c) for c in caps)) if caps else iter([()])
    standard = [
        E for E in box if not any(_divides(B, E) for B in unit_lms)
    ]
    standard.sort(key=_grevlex_key)
    return standard


class _BoxTooLarge(Exception):
    pass


def _primary_invariants(gb, standard):
    lts = [f.leading_term() for f in gb.elements]
    index = {E: i for i, E in enumerate(standard)}
    rows = []
    for E in standard:
        divisors = [a for B, a in lts if _divides(B, E)]
        if not divisors:
            continue
        mu = min(divisors)
        nf = _reduce_terms({E: mu}, list(gb.elements))
        row = [0] * len(standard)
        row[index[E]] = mu
        for F, c in nf.items():
            row[index[F]] -= c
        rows.append(row)
    return group_from_relations(len(standard), rows).invariants()


def _echelon_insert(pivots, row, colkey):
    row = dict(row)
    while row:
        c = min(row, key=colkey)
        piv = pivots.get(c)
        if piv is None:
            if row[c] < 0:
                row = {k: -v for k, v in row.items()}
            pivots[c] = row
            return
        a, b = piv[c], row[c]
        if b % a == 0:
            q = b // a
            for k, v in piv.items():
                nv = row.get(k, 0) - q * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        else:
            g, x, y = xgcd(a, b)
            new_piv = {}
            for k in set(piv) | set(row):
                v = x * piv.get(k, 0) + y * row.get(k, 0)
                if v:
                    new_piv[k] = v
            new_row = {}
            for k in set(piv) | set(row):
                v = (a // g) * row.get(k, 0) - (b // g) * piv.get(k, 0)
                if v:
                    new_row[k] = v
            pivots[c] = new_piv
            row = new_row


def _echelon_reduce(pivots, row, colkey):
    """Reduce a row against an echelon; returns the (possibly nonzero) rest."""
    row = dict(row)
    while row:
        c = min(row, key=colkey)
        piv = pivots.get(c)
        if piv is None or row[c] % piv[c]:
            return row
        q = row[c] // piv[c]
        for k, v in piv.items():
            nv = row.get(k, 0) - q * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def _group_shift_rows(zgens, bound):
    """All shifts t^beta * q with beta in the centered box of the bound."""
    group = zgens[0].group
    r = group.free_rank
    free_ranges = [range(-bound, bound + 1)] * r
    torsion_ranges = [range(m) for m in group.torsion]
    for q in zgens:
        for free in itertools.product(*free_ranges):
            for res in itertools.product(*torsion_ranges):
                beta = group.element_canonical(free, res)
                yield {(elem + beta).key(): c for elem, c in q.terms.items()}


def _macaulay_invariants_group(zgens, inside_keys, bound):
    inside = set(inside_keys)

    def colkey(k):
        return (1, k) if k in inside else (0, k)

    pivots = {}
    for row in _group_shift_rows(zgens, bound):
        _echelon_insert(pivots, row, colkey)
    index = {k: i for i, k in enumerate(sorted(inside_keys))}
    rows = []
    for c, piv in pivots.items():
        if c in inside:
            row = [0] * len(index)
            for k, v in piv.items():
                row[index[k]] = v
            rows.append(row)
    return group_from_relations(len(index), rows).invariants()


def _poly_shift_rows(gens, nvars, bound):
    for g in gens:
        deg = g.total_degree()
        if deg > bound:
            continue
        for total in range(bound - deg + 1):
            for F in _compositions(total, nvars):
                yield {tuple(a + b for a, b in zip(E, F)): c for E, c in g.terms.items()}


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _macaulay_invariants_poly(gens, inside_keys, bound, nvars):
    inside = set(inside_keys)

    def colkey(k):
        return (1, _grevlex_key(k)) if k in inside else (0, _grevlex_key(k))

    pivots = {}
    for row in _poly_shift_rows(gens, nvars, bound):
        _echelon_insert(pivots, row, colkey)
    index = {k: i for i, k in enumerate(sorted(inside_keys, key=_grevlex_key))}
    rows = []
    for c, piv in pivots.items():
        if c in inside:
            row = [0] * len(index)
            for k, v in piv.items():
                row[index[k]] = v
            rows.append(row)
    return group_from_relations(len(index), rows).invariants()


def _nonzero_input_elements(gb):
    p = gb.presentation
    if p.group is None:
        return [g for g in gb.input_generators if not g.is_zero()]
    out = []
    for g in gb.input_generators:
        e = unpresent(g, p)
        if not e.is_zero():
            out.append(e)
    return out


def default_macaulay_bound(gb):
    """Heuristic truncation: twice the largest generator degree plus four.

    Degree means the largest free-coordinate magnitude of the support for
    group-ring generators, total degree for plain polynomial generators.
    """
    p = gb.presentation
    sizes = [1]
    if p.group is None:
        sizes += [g.total_degree() for g in gb.input_generators]
    else:
        for g in gb.input_generators:
            e = unpresent(g, p)
            for elem in e.terms:
                sizes.append(max((abs(x) for x in elem.free), default=0))
    return 2 * max(sizes) + 4


def macaulay_member(e, zgens, bound):
    """Truncated-lattice membership of a group-ring element in the ideal
    generated by ``zgens``: conservative (may say False for members whose
    certificates need shifts beyond the bound), never falsely True."""
    zgens = [q for q in zgens if not q.is_zero()]
    if e.is_zero():
        return True
    if not zgens:
        return False

    def colkey(k):
        return k

    pivots = {}
    for row in _group_shift_rows(zgens, bound):
        _echelon_insert(pivots, row, colkey)
    rest = _echelon_reduce(pivots, {elem.key(): c for elem, c in e.terms.items()}, colkey)
    return not rest


def zmodule_invariants(gb, bound=None):
    """Abelian-group invariants of (polynomial ring)/(basis ideal) as a
    Z-module, with the dual-route status described in the module docstring."""
    try:
        standard = _standard_monomials(gb)
    except _BoxTooLarge:
        return AbGroupInvariants(None, (), AbGroupInvariants.UNKNOWN, bound)
    if standard is None:
        return AbGroupInvariants(None, (), AbGroupInvariants.NOT_FG)

    rank, torsion = _primary_invariants(gb, standard)

    p = gb.presentation
    gens = _nonzero_input_elements(gb)
    if bound is None:
        bound = default_macaulay_bound(gb)
    if p.group is None:
        inside = list(standard)
        oracle = [
            _macaulay_invariants_poly(gens, inside, b, p.num_vars)
            for b in (bound, bound + 1)
        ]
    else:
        inside = [p.exponent_element(E).key() for E in standard]
        if len(set(inside)) != len(inside):
            raise AssertionError("standard monomials do not embed in the group")
        if gens:
            oracle = [
                _macaulay_invariants_group(gens, inside, b) for b in (bound, bound + 1)
            ]
        else:
            free = (len(inside), ())
            oracle = [free, free]

    if oracle[0] == oracle[1] == (rank, torsion):
        return AbGroupInvariants(rank, torsion, AbGroupInvariants.EXACT, bound)
    return AbGroupInvariants(rank, torsion, AbGroupInvariants.UNKNOWN, bound)
