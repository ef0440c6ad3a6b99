"""Shared independent oracles for the test suite."""

from kstacks.groupring import GroupRingElement


def determinant(M):
    """Cofactor-expansion determinant; independent of the SNF machinery."""
    n = M.rows
    assert n == M.cols
    rows = [list(r) for r in M.entries]

    def rec(rs):
        if len(rs) == 1:
            return rs[0][0]
        total = 0
        sign = 1
        for j in range(len(rs)):
            if rs[0][j]:
                minor = [r[:j] + r[j + 1:] for r in rs[1:]]
                total += sign * rs[0][j] * rec(minor)
            sign = -sign
        return total

    return rec(rows)


def equal_up_to_unit(a, b):
    """Whether two group-ring elements differ by a monomial factor."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    ka = min(e.key() for e in a.terms)
    kb = min(e.key() for e in b.terms)
    elem_a = next(e for e in a.terms if e.key() == ka)
    elem_b = next(e for e in b.terms if e.key() == kb)
    shift = GroupRingElement.monomial(elem_a - elem_b)
    return a == shift * b


def brute_force_numerator(degrees, components, functional, window):
    """Monomial-counting Hilbert numerator over a rank-one grading.

    Counts the monomials outside the intersection of the coordinate ideals
    given by ``components`` (index lists), weighted by ``functional`` (a sign
    making every weighted degree positive), up to weighted degree ``window``;
    multiplies the count series by the product of (1 - t^deg) over all
    variables; returns {degree: coefficient} restricted to the zone where the
    truncated computation is complete.
    """
    n = len(degrees)
    weights = [functional * d for d in degrees]
    assert all(w > 0 for w in weights)
    counts = {}

    def enumerate_exponents(i, remaining, exp):
        if i == n:
            in_all = all(any(exp[j] for j in comp) for comp in components)
            if not in_all:
                deg = sum(e * d for e, d in zip(exp, degrees))
                counts[deg] = counts.get(deg, 0) + 1
            return
        k = 0
        while k * weights[i] <= remaining:
            enumerate_exponents(i + 1, remaining - k * weights[i], exp + [k])
            k += 1

    enumerate_exponents(0, window, [])
    full = {}
    for mask in range(1 << n):
        sign = 1
        deg = 0
        for i in range(n):
            if mask & (1 << i):
                sign = -sign
                deg += degrees[i]
        for d, c in counts.items():
            key = d + deg
            full[key] = full.get(key, 0) + sign * c
    return {d: c for d, c in full.items() if functional * d <= window and c}
