"""Parabolic line bundles with two marked points: Hom/Ext dimensions, the
total order, automorphism and nilpotent-endomorphism counts, a brute-force
prime-field oracle, and the bundle-side generating series.

A rank-n object is a sorted triple (m, a, b) read as the direct sum of the
line bundles O(m_i; a_i, b_i); sortedness agrees with the total order
(m, -a, -b) read lexicographically.  Maps L_j -> L_i are polynomials in z
supported on the window delta(a_j < a_i) <= e <= m_i - m_j - delta(b_j < b_i);
the a-side condition removes the constant term (vanishing at 0), the b-side
removes the top term (vanishing at infinity).
"""

from __future__ import annotations

from itertools import product
from math import comb

from .scalar import ONE, Q, QtScalar, SeriesBuilder, aut_q
from .labels import is_sorted_triple, iter_sorted_triples, mu_partition


def hom_dim(src, dst):
    """dim Hom(O(m'; a', b') -> O(m; a, b))."""
    mp, ap, bp = src
    m, a, b = dst
    return max(1 + m - mp - (1 if ap < a else 0) - (1 if bp < b else 0), 0)


def ext_dim(src, dst):
    mp, ap, bp = src
    m, a, b = dst
    return max(mp - m - 1 + (1 if ap < a else 0) + (1 if bp < b else 0), 0)


def bundle_le(L, Lp):
    """The total order: (m, -a, -b) lexicographically."""
    m, a, b = L
    mp, ap, bp = Lp
    return (m, -a, -b) <= (mp, -ap, -bp)


def _pair_exponent(c, shift):
    return max(shift + c, 0)


def _c_matrix(m, a, b):
    n = len(m)
    return [[m[i] - m[j] - (1 if a[j] < a[i] else 0) - (1 if b[j] < b[i] else 0)
             for j in range(n)] for i in range(n)]


def aut_exponent(m, a, b):
    """sum over i < j of max(1 + c_ij, 0) = off-diagonal Hom dimensions."""
    c = _c_matrix(m, a, b)
    n = len(m)
    return sum(max(1 + c[i][j], 0) for i in range(n) for j in range(i + 1, n))


def nilp_exponent(m, a, b, k):
    c = _c_matrix(m, a, b)
    n = len(m)
    return sum(max(1 - k + c[i][j], 0) for i in range(n) for j in range(i + 1, n))


def aut_count(m, a, b, q=None):
    """|Aut|: (q-1)^n aut_q q^{aut_exponent}; symbolic, or an integer at a
    prime q."""
    if not is_sorted_triple(m, a, b):
        raise ValueError("triple is not sorted")
    n = len(m)
    mult = mu_partition(list(zip(m, a, b)))
    if q is None:
        return ((Q - ONE) ** n * aut_q(mult)
                * QtScalar.monomial(q=aut_exponent(m, a, b)))
    out = (q - 1) ** n * q ** aut_exponent(m, a, b)
    for r in mult:
        for j in range(2, r + 1):
            out *= (q ** j - 1) // (q - 1)
    return out


def nilp_count(m, a, b, k, q=None):
    """|Nilp_k|: q^{nilp_exponent}, with the diagonal-block factor at k = 0."""
    if not is_sorted_triple(m, a, b):
        raise ValueError("triple is not sorted")
    extra = 0
    if k == 0:
        extra = sum(comb(r, 2) for r in mu_partition(list(zip(m, a, b))))
    e = nilp_exponent(m, a, b, k) + extra
    if q is None:
        return QtScalar.monomial(q=e)
    return q ** e


# ---------------------------------------------------------------------------
# brute-force prime-field oracle


_DIM_CAPS = {2: 14, 3: 9, 5: 6}


def _hom_window(src, dst):
    mp, ap, bp = src
    m, a, b = dst
    lo = 1 if ap < a else 0
    hi = m - mp - (1 if bp < b else 0)
    return range(lo, hi + 1)


def _poly_mul_mod(f, g, p):
    if not f or not g:
        return {}
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def _mat_mul_mod(A, B, p, n):
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = {}
            for l in range(n):
                for e, c in _poly_mul_mod(A[i][l], B[l][j], p).items():
                    acc[e] = (acc.get(e, 0) + c) % p
            out[i][j] = {e: c for e, c in acc.items() if c}
    return out


def _det_mod(A, p, n):
    """Determinant of the polynomial matrix; a bundle endomorphism always
    has constant determinant, asserted here."""
    from itertools import permutations
    total = {}
    for sigma in permutations(range(n)):
        invs = sum(1 for i in range(n) for j in range(i + 1, n)
                   if sigma[i] > sigma[j])
        term = {0: 1 if invs % 2 == 0 else p - 1}
        for i in range(n):
            term = _poly_mul_mod(term, A[i][sigma[i]], p)
            if not term:
                break
        for e, c in term.items():
            total[e] = (total.get(e, 0) + c) % p
    total = {e: c for e, c in total.items() if c}
    if any(e != 0 for e in total):
        raise AssertionError("endomorphism determinant is not constant")
    return total.get(0, 0)


def brute_force_counts(m, a, b, p, k, points):
    """Exhaustive (|Aut|, |Nilp_k|) over F_p.

    Endomorphisms are matrices of window polynomials; automorphisms are
    those with nonzero (constant) determinant, and Nilp_k members satisfy
    theta^n = 0 and vanish at the given points.
    """
    if not is_sorted_triple(m, a, b):
        raise ValueError("triple is not sorted")
    if len(points) != k:
        raise ValueError("need exactly k vanishing points")
    if any(s % p == 0 for s in points):
        raise ValueError("vanishing points must avoid 0 and infinity")
    n = len(m)
    bundles = list(zip(m, a, b))
    slots = []
    for i in range(n):
        for j in range(n):
            for e in _hom_window(bundles[j], bundles[i]):
                slots.append((i, j, e))
    dim = len(slots)
    cap = _DIM_CAPS.get(p)
    if cap is None or dim > cap:
        raise ValueError(f"endomorphism dimension {dim} over F_{p} exceeds the cap")
    auts = 0
    nilps = 0
    for values in product(range(p), repeat=dim):
        mat = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j, e), v in zip(slots, values):
            if v:
                mat[i][j][e] = v
        if _det_mod(mat, p, n):
            auts += 1
            continue
        if any(sum(c * pow(s, e, p) for e, c in mat[i][j].items()) % p
               for s in points for i in range(n) for j in range(n)):
            continue
        power = mat
        for _ in range(n - 1):
            power = _mat_mul_mod(power, mat, p, n)
        if all(not power[i][j] for i in range(n) for j in range(n)):
            nilps += 1
    return auts, nilps


# ---------------------------------------------------------------------------
# series


def bundle_side_series(n, k, N, degree):
    """q^{k binom(n,2)} sum over sorted triples of t^{|m|} X_a Y_b
    |Nilp_k| / |Aut| with symbolic q."""
    builder = SeriesBuilder(N, N, degree)
    pref = QtScalar.monomial(q=k * comb(n, 2))
    for d in range(degree + 1):
        for m, a, b in iter_sorted_triples(n, N, d):
            num = nilp_count(m, a, b, k) * pref
            den = aut_count(m, a, b)
            xe = tuple(a.count(v) for v in range(1, N + 1))
            ye = tuple(b.count(v) for v in range(1, N + 1))
            builder.add((xe, ye), d, num, den)
    return builder.build()


def product_side_expansion(max_total, N, t_degree, q_degree):
    """The k = 0 product over (m, a, b, r) of (1 - x_a y_b t^m q^r), truncated
    to xy-degree <= max_total, t-degree and q-degree as given.

    Keys are (x_exponents, y_exponents, t_deg, q_deg) -> integer.
    """
    out = {((0,) * N, (0,) * N, 0, 0): 1}
    for mm in range(t_degree + 1):
        for av in range(1, N + 1):
            for bv in range(1, N + 1):
                for r in range(q_degree + 1):
                    new = dict(out)
                    for (xe, ye, td, qd), c in out.items():
                        if sum(xe) + 1 > max_total or td + mm > t_degree \
                                or qd + r > q_degree:
                            continue
                        nxe = list(xe)
                        nxe[av - 1] += 1
                        nye = list(ye)
                        nye[bv - 1] += 1
                        key = (tuple(nxe), tuple(nye), td + mm, qd + r)
                        new[key] = new.get(key, 0) - c
                        if not new[key]:
                            del new[key]
                    out = new
    return out


def verify_bundle_counts(nmax, mmax, lmax, primes, ks):
    """Formula-versus-oracle sweep; returns a report with any mismatch."""
    report = {"ok": True, "cases": 0, "failures": []}
    for n in range(1, nmax + 1):
        seen = set()
        for mvec in product(range(mmax + 1), repeat=n):
            for avec in product(range(1, lmax + 1), repeat=n):
                for bvec in product(range(1, lmax + 1), repeat=n):
                    from .labels import sort_triple
                    m, a, b = sort_triple(mvec, avec, bvec)
                    if (m, a, b) in seen:
                        continue
                    seen.add((m, a, b))
                    for p in primes:
                        for k in ks:
                            points = list(range(1, k + 1))
                            if any(s % p == 0 for s in points):
                                continue
                            auts, nilps = brute_force_counts(m, a, b, p, k, points)
                            fa = aut_count(m, a, b, q=p)
                            fn = nilp_count(m, a, b, k, q=p)
                            report["cases"] += 1
                            if (auts, nilps) != (fa, fn):
                                report["ok"] = False
                                report["failures"].append({
                                    "triple": (m, a, b), "p": p, "k": k,
                                    "oracle": (auts, nilps),
                                    "formula": (fa, fn)})
                                return report
    return report


def verify_bundle_series(n, k, N, degree):
    """The bundle series equals (-1)^n times the combinatorial enumerator."""
    from .omega import OmegaQuery, omega_series
    lhs = bundle_side_series(n, k, N, degree)
    rhs = omega_series(OmegaQuery(n, k, N, degree)).scale(
        QtScalar.from_int((-1) ** n))
    disc = lhs.first_discrepancy(rhs)
    report = {"n": n, "k": k, "N": N, "D": degree, "equal": disc is None,
              "first_discrepancy": None}
    if disc is not None:
        key, tdeg, x, y = disc
        report["first_discrepancy"] = {"x_exp": list(key[0]),
                                       "y_exp": list(key[1]), "t_deg": tdeg,
                                       "lhs": str(x), "rhs": str(y)}
    return report


def verify_product_identity(max_total, N, t_degree, q_degree):
    """Sum over ranks of the k = 0 bundle series, q,t-expanded, against the
    direct truncated product expansion."""
    combined = {}
    for n in range(1, max_total + 1):
        series = bundle_side_series(n, 0, N, t_degree)
        for (xe, ye), ts in series.table.items():
            for td in range(t_degree + 1):
                c = ts[td]
                if c.is_zero():
                    continue
                for (qd, _), frac in c.qt_expand(q_degree, 0).items():
                    key = (xe, ye, td, qd)
                    val = combined.get(key, 0) + frac
                    if val:
                        combined[key] = val
                    else:
                        combined.pop(key, None)
    product_side = product_side_expansion(max_total, N, t_degree, q_degree)
    product_side = {key: c for key, c in product_side.items() if any(key[0])}
    mismatch = None
    for key in sorted(set(combined) | set(product_side)):
        if combined.get(key, 0) != product_side.get(key, 0):
            mismatch = {"key": [list(key[0]), list(key[1]), key[2], key[3]],
                        "series": str(combined.get(key, 0)),
                        "product": str(product_side.get(key, 0))}
            break
    return {"max_total": max_total, "N": N, "t_degree": t_degree,
            "q_degree": q_degree, "equal": mismatch is None,
            "first_discrepancy": mismatch}
