"""The sign-reversing involution machinery behind the triangularity proof:
quadruples with a dividing line, the reverse-frame pairwise statistic, the
move map and its involution, the row diagram, and the dominance/fixed-point
verification against the plethystically substituted Macdonald side.

Quadruple convention: entries are (a_i, m_i, b_i) columns with a dividing
line after position l; positions 1..l are sorted in reverse order, l+1..n
forward, under the key (a ascending, m descending on ties, b ascending).
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalar import ONE, Q, QtScalar, SeriesBuilder
from .labels import mu_partition
from .symfunc import conjugate, dominance_leq, partitions, plethysm_p_scale


@dataclass(frozen=True)
class VanQuadruple:
    """(l, a, m, b) with the dividing line after position l."""

    l: int
    a: tuple
    m: tuple
    b: tuple

    @property
    def n(self):
        return len(self.a)

    def columns(self):
        return list(zip(self.a, self.m, self.b))


def _key(col):
    a, m, b = col
    return (a, -m, b)


def attacks_rev(mi, mj, k):
    """Position i attacks position j (i < j) when m_i lies in
    {m_j - k + 1, ..., m_j + k}."""
    return mj - k + 1 <= mi <= mj + k


def d_k_table(m, b, k):
    """The full pairwise table of the reverse-frame statistic."""
    n = len(m)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if m[i] > m[j]:
                table[i][j] = k + m[j] - m[i] + (1 if b[i] > b[j] else 0)
            else:
                table[i][j] = k - 1 + m[i] - m[j] + (1 if b[i] < b[j] else 0)
    return table


def d_k_rev(m, b, k):
    """Sum of the positive above-diagonal entries of the pairwise table."""
    n = len(m)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            if m[i] > m[j]:
                v = k + m[j] - m[i] + (1 if b[i] > b[j] else 0)
            else:
                v = k - 1 + m[i] - m[j] + (1 if b[i] < b[j] else 0)
            if v > 0:
                total += v
    return total


def in_vanset(quad, k):
    """Membership test for the quadruple summation set."""
    l, a, m, b = quad.l, quad.a, quad.m, quad.b
    n = quad.n
    if not 0 <= l <= n:
        return False
    if any(m[i] <= 0 for i in range(l)):
        return False
    cols = quad.columns()
    left = [_key(c) for c in cols[:l]]
    if any(left[i] < left[i + 1] for i in range(l - 1)):
        return False
    right = [_key(c) for c in cols[l:]]
    if any(right[i] > right[i + 1] for i in range(len(right) - 1)):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if attacks_rev(m[i], m[j], k) and b[i] == b[j]:
                return False
    return True


def enumerate_van(n, k, degree, N, l_values=None, exact_degree=None):
    """All quadruples with |m| <= degree and labels bounded by N.

    Columns are appended in the sorted order of each side, and the attack
    constraint (equal b with nearby m) is enforced incrementally, which
    prunes the search long before full sequences exist.  The stream splits
    by dividing line (l_values) and by |m| (exact_degree) for slicing.
    """
    left_pool = sorted(((a, m, b) for a in range(1, N + 1)
                        for m in range(1, degree + 1)
                        for b in range(1, N + 1)), key=_key, reverse=True)
    right_pool = sorted(((a, m, b) for a in range(1, N + 1)
                         for m in range(degree + 1)
                         for b in range(1, N + 1)), key=_key)

    def compatible(acc, col):
        mj, bj = col[1], col[2]
        return not any(b == bj and attacks_rev(m, mj, k) for _, m, b in acc)

    def rec(l, acc, budget, start):
        pos = len(acc)
        if pos == n:
            if exact_degree is not None and degree - budget != exact_degree:
                return
            yield VanQuadruple(l,
                               tuple(c[0] for c in acc),
                               tuple(c[1] for c in acc),
                               tuple(c[2] for c in acc))
            return
        on_left = pos < l
        pool = left_pool if on_left else right_pool
        if on_left:
            reserve = l - pos - 1  # each remaining left slot needs m >= 1
        else:
            reserve = 0
        if pos == l:
            start = 0
        for idx in range(start, len(pool)):
            col = pool[idx]
            if col[1] + reserve > budget:
                continue
            if not compatible(acc, col):
                continue
            acc.append(col)
            yield from rec(l, acc, budget - col[1], idx)
            acc.pop()

    for l in (range(n + 1) if l_values is None else l_values):
        yield from rec(l, [], degree, 0)


def sigma_ranks(quad):
    """The global sorting permutation: rank of each position under the key."""
    order = sorted(range(quad.n), key=lambda i: _key((quad.a[i], quad.m[i], quad.b[i])))
    ranks = [0] * quad.n
    for rank, i in enumerate(order, start=1):
        ranks[i] = rank
    return tuple(ranks)


def _move_unchecked(quad, i):
    """Move column i (1-based) across the dividing line, re-sorting its side."""
    cols = quad.columns()
    col = cols.pop(i - 1)
    l = quad.l
    if i <= l:
        newl = l - 1
        right = cols[newl:]
        pos = newl + _insert_position([_key(c) for c in right], _key(col))
        cols.insert(pos, col)
    else:
        newl = l + 1
        keys = [_key(c) for c in cols[:l]]
        # descending side: insert keeping keys weakly decreasing
        p = 0
        while p < len(keys) and keys[p] >= _key(col):
            p += 1
        cols.insert(p, col)
    return VanQuadruple(newl,
                        tuple(c[0] for c in cols),
                        tuple(c[1] for c in cols),
                        tuple(c[2] for c in cols))


def _insert_position(sorted_keys, key):
    p = 0
    while p < len(sorted_keys) and sorted_keys[p] <= key:
        p += 1
    return p


def move(quad, i, k=None):
    """The crossing move; with k given, an invalid landing set is an error."""
    out = _move_unchecked(quad, i)
    if k is not None and not in_vanset(out, k):
        raise ValueError(f"move({i}) leaves the summation set: {out}")
    return out


def movable(quad, i, k):
    """Movability: the move stays in the set and every sigma-earlier partner
    has both pairwise entries nonpositive."""
    if not in_vanset(_move_unchecked(quad, i), k):
        return False
    ranks = sigma_ranks(quad)
    table = d_k_table(quad.m, quad.b, k)
    me = i - 1
    for j in range(quad.n):
        if ranks[j] < ranks[me]:
            if table[me][j] > 0 or table[j][me] > 0:
                return False
    return True


def iota(quad, k):
    """The involution: move the movable column of smallest sigma rank."""
    ranks = sigma_ranks(quad)
    for i in sorted(range(1, quad.n + 1), key=lambda i: ranks[i - 1]):
        if movable(quad, i, k):
            return _move_unchecked(quad, i)
    return quad


def t_diagram(quad):
    """Rows indexed by the distinct a-values ascending; each row lists the
    (m, b) pairs with that a-value, ordered by m descending then b."""
    rows = {}
    for a, m, b in quad.columns():
        rows.setdefault(a, []).append((m, b))
    out = []
    for a in sorted(rows):
        out.append(tuple(sorted(rows[a], key=lambda mb: (-mb[0], mb[1]))))
    return tuple(out)


def canonical_fixed_point(lam, k):
    """The unique fixed point with row shape lam and column shape lam'."""
    a, m, b = [], [], []
    for row, part in enumerate(lam, start=1):
        for col in range(1, part + 1):
            a.append(row)
            m.append((row - 1) * k)
            b.append(col)
    return VanQuadruple(0, tuple(a), tuple(m), tuple(b))


# ---------------------------------------------------------------------------
# verification


def macdonald_substituted_series(n, k, N, D, cache=None):
    """The Macdonald side with X -> X(t-1), Y -> Y(q-1), t-expanded."""
    from .macdonald import eigenvalue, modified_macdonald, w_denominator
    from .scalar import MonomialSeries, TSeries
    table = {}
    sign = QtScalar.from_int((-1) ** n)
    for lam in partitions(n):
        h = modified_macdonald(lam, cache)
        hx = plethysm_p_scale(h, lambda r: QtScalar.monomial(t=r) - ONE).expand(N, "x")
        hy = plethysm_p_scale(h, lambda r: Q ** r - ONE).expand(N, "y")
        scale = sign * eigenvalue(lam, k) / w_denominator(lam)
        for (xe, _), cx in hx.terms.items():
            for (_, ye), cy in hy.terms.items():
                series = (cx * cy * scale).t_expand(D)
                key = (xe, ye)
                prev = table.get(key)
                table[key] = series if prev is None else prev + series
    return MonomialSeries(N, N, D, table)


def signed_quadruple_series(n, k, N, D):
    """sum over the quadruple set of (-1)^l t^{|m|} q^{d_k} X_a Y_b."""
    builder = SeriesBuilder(N, N, D)
    for quad in enumerate_van(n, k, D, N):
        xe = tuple(quad.a.count(v) for v in range(1, N + 1))
        ye = tuple(quad.b.count(v) for v in range(1, N + 1))
        weight = QtScalar.monomial(c=(-1) ** quad.l, q=d_k_rev(quad.m, quad.b, k))
        builder.add((xe, ye), sum(quad.m), weight)
    return builder.build()


def verify_vanishing(n, k, degree, N, cache=None):
    """The full fixed-point and cancellation report.

    Checks: iota is an involution; non-fixed orbits preserve the statistic
    and |m| and flip the sign; fixed points satisfy the dominance property
    and the diagram bounds; the conjugate-shape fixed point is unique with
    the predicted weight; and the signed sum matches the substituted
    Macdonald side up to t-degree (degree - 1).
    """
    report = {"n": n, "k": k, "D": degree, "N": N, "ok": True,
              "failures": [], "fixed_points": []}

    def fail(kind, data):
        report["ok"] = False
        report["failures"].append({"kind": kind, **data})

    census = {}
    by_composition = {}
    for quad in enumerate_van(n, k, degree, N):
        image = iota(quad, k)
        if image == quad:
            lam = mu_partition(quad.a)
            mu = mu_partition(quad.b)
            census.setdefault((lam, mu), []).append(quad)
            from .labels import alpha_composition
            alab = alpha_composition(quad.a)
            blab = alpha_composition(quad.b)
            by_composition.setdefault((alab, blab), []).append(quad)
            if not dominance_leq(lam, conjugate(mu)):
                fail("dominance", {"quad": quad})
            diagram = t_diagram(quad)
            for r, row in enumerate(diagram, start=1):
                if any(mval > (r - 1) * k for mval, _ in row):
                    fail("m-bound", {"quad": quad, "row": r})
            # b-value occurrences per row, tracked on the quadruple itself so
            # the dividing-line side of each occurrence is visible
            values = sorted(set(quad.a))
            row_of = {v: r for r, v in enumerate(values, start=1)}
            occ = {}
            for pos, (av, mv, bv) in enumerate(quad.columns(), start=1):
                occ.setdefault(bv, []).append((row_of[av], pos))
            for bval, hits in occ.items():
                for r in range(1, len(diagram) + 1):
                    inside = [(row, pos) for row, pos in hits if row <= r]
                    if len(inside) > r:
                        fail("b-count", {"quad": quad, "b": bval, "row": r})
                    elif len(inside) == r and r > 0:
                        rows_hit = [row for row, _ in inside]
                        if len(set(rows_hit)) != r:
                            fail("b-rows", {"quad": quad, "b": bval, "row": r})
                        if any(pos <= quad.l for _, pos in inside):
                            fail("b-side", {"quad": quad, "b": bval, "row": r})
        else:
            if iota(image, k) != quad:
                fail("involution", {"quad": quad, "image": image})
            if sum(image.m) != sum(quad.m):
                fail("t-weight", {"quad": quad, "image": image})
            if d_k_rev(image.m, image.b, k) != d_k_rev(quad.m, quad.b, k):
                fail("q-weight", {"quad": quad, "image": image})
            if (-1) ** image.l != -((-1) ** quad.l):
                fail("sign", {"quad": quad, "image": image})
        if report["failures"]:
            return report

    for (lam, mu), quads in sorted(census.items()):
        report["fixed_points"].append(
            {"lambda": list(lam), "mu": list(mu), "count": len(quads)})

    # uniqueness is graded by the exact compositions alpha(a) = lam,
    # alpha(b) = lam', at the normalized labels {1..len(lam)} x {1..lam_1}
    for lam in partitions(n):
        if k * sum(i * part for i, part in enumerate(lam)) > degree \
                or len(lam) > N or (lam and lam[0] > N):
            continue  # the fixed point falls outside the truncation
        cell = by_composition.get((lam, conjugate(lam)), [])
        normalized = [q for q in cell
                      if set(q.a) == set(range(1, len(lam) + 1))
                      and set(q.b) == set(range(1, lam[0] + 1))]
        if len(normalized) != 1:
            fail("uniqueness", {"lambda": lam, "count": len(normalized)})
            return report
        quad = normalized[0]
        if quad != canonical_fixed_point(lam, k):
            fail("canonical-form", {"lambda": lam, "quad": quad})
            return report
        weight = QtScalar.monomial(q=d_k_rev(quad.m, quad.b, k),
                                   t=sum(quad.m))
        from .macdonald import nstat
        expected = QtScalar.monomial(q=k * nstat(conjugate(lam)),
                                     t=k * nstat(lam))
        if weight != expected or quad.l != 0:
            fail("weight", {"lambda": lam, "weight": str(weight)})
            return report

    lhs = signed_quadruple_series(n, k, N, degree)
    rhs = macdonald_substituted_series(n, k, N, degree, cache)
    if degree >= 1:
        cut_lhs = lhs.truncate(degree - 1)
        cut_rhs = rhs.truncate(degree - 1)
        report["lhs"] = cut_lhs.to_json()
        report["rhs"] = cut_rhs.to_json()
        disc = cut_lhs.first_discrepancy(cut_rhs)
        if disc is not None:
            key, tdeg, a, b = disc
            fail("signed-sum", {"x_exp": list(key[0]), "y_exp": list(key[1]),
                                "t_deg": tdeg, "lhs": str(a), "rhs": str(b)})
    report["equal"] = report["ok"]
    return report
