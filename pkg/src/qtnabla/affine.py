"""Positive extended affine permutations in window notation: length and
reflection comparisons, m-stability, edge sets and the dimension statistic,
standardization, the triple-to-permutation map, coset extremes, and the
affine-permutation power series.

Windows are tuples (w_1..w_n) of integers with pairwise distinct residues
mod n; composition acts as functions, (uv)(i) = u(v(i)).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import gcd

from .scalar import ONE, Q, QtScalar, TSeries
from .labels import dinv_k, is_sorted_triple, iter_sorted_triples


class AffinePermutation:
    """An extended affine permutation given by its window."""

    __slots__ = ("window", "_length")

    def __init__(self, window):
        window = tuple(int(v) for v in window)
        n = len(window)
        if n == 0:
            raise ValueError("empty window")
        if len({v % n for v in window}) != n:
            raise ValueError(f"residues not distinct mod {n}: {window}")
        self.window = window
        self._length = None

    @property
    def n(self):
        return len(self.window)

    def __call__(self, i):
        n = self.n
        r = (i - 1) % n
        return self.window[r] + (i - 1 - r)

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("sizes differ")
        return AffinePermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self):
        n = self.n
        window = [0] * n
        for i, w in enumerate(self.window, start=1):
            r = (w - 1) % n
            window[r] = i + (r + 1 - w)
        return AffinePermutation(window)

    def is_identity(self):
        return self.window == tuple(range(1, self.n + 1))

    def is_positive(self):
        """Membership in W+: all window values at least 1."""
        return all(v >= 1 for v in self.window)

    def d_grade(self):
        n = self.n
        total = sum(self.window) - n * (n + 1) // 2
        if total % n:
            raise AssertionError("window sum incompatible with the lattice")
        return total // n

    def length(self):
        """Number of inversions (i, j), 1 <= i <= n, i < j, w(i) > w(j)."""
        if self._length is not None:
            return self._length
        n = self.n
        total = 0
        for p in range(1, n + 1):
            for pp in range(1, n + 1):
                if pp == p:
                    continue
                diff = self(p) - self(pp)
                r0 = 0 if pp > p else 1
                if diff > r0 * n:
                    total += (diff + n - 1) // n - r0
        self._length = total
        return total

    def __eq__(self, other):
        return isinstance(other, AffinePermutation) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"AffinePermutation{self.window}"


def identity(n):
    return AffinePermutation(range(1, n + 1))


def from_finite(perm):
    """Embed a finite permutation (1-based one-line tuple) as affine."""
    return AffinePermutation(perm)


def transposition(n, a, b):
    """The affine transposition swapping a and b (and all their translates)."""
    if (a - b) % n == 0:
        raise ValueError("entries congruent mod n")
    window = []
    for i in range(1, n + 1):
        if (i - a) % n == 0:
            window.append(b + (i - a))
        elif (i - b) % n == 0:
            window.append(a + (i - b))
        else:
            window.append(i)
    return AffinePermutation(window)


def canonical_transposition(n, a, b):
    """Shift (a, b) so that a lies in 1..n and a < b."""
    if a > b:
        a, b = b, a
    shift = ((a - 1) % n) - (a - 1)
    return (a + shift, b + shift)


def height(pair):
    return abs(pair[0] - pair[1])


def is_m_stable(w, m):
    """w(i + m) > w(i) for all i; checked on one period."""
    return all(w(i + m) > w(i) for i in range(1, w.n + 1))


def is_m_restricted(w, m):
    return is_m_stable(w.inverse(), m)


def edges(w, m):
    """Canonical (a, b) pairs of height < m whose reflection shortens w."""
    n = w.n
    lw = w.length()
    out = []
    for a in range(1, n + 1):
        for h in range(1, m):
            b = a + h
            if (b - a) % n == 0:
                continue
            t = transposition(n, a, b)
            if (t * w).length() < lw:
                out.append((a, b))
    return out


def edges_refined(w, m):
    """Edge counts grouped by the residue-class pair {i, j}, 1 <= i < j <= n."""
    n = w.n
    out = {}
    for a, b in edges(w, m):
        i, j = sorted(((a - 1) % n + 1, (b - 1) % n + 1))
        out[(i, j)] = out.get((i, j), 0) + 1
    return out


@lru_cache(maxsize=None)
def max_area(n, m):
    """Cells between the maximal (n, m)-path and the diagonal."""
    count = sum(1 for i in range(m) for j in range(n) if j * m >= (i + 1) * n)
    closed = ((n - 1) * (m - 1) + gcd(n, m) - 1) // 2
    if count != closed:
        raise AssertionError("closed form for the maximal area is wrong")
    return count


def dimv(w, m):
    return max_area(w.n, m) - len(edges(w, m))


def wvec(w, m):
    """Edge counts by conjugated class: entry j counts edges with
    w^{-1} t w = t_{i,j}, i < j, j normalized into 1..n."""
    n = w.n
    winv = w.inverse()
    out = [0] * n
    for a, b in edges(w, m):
        u, v = winv(a), winv(b)
        if u > v:
            u, v = v, u
        r = (v - 1) % n + 1
        out[r - 1] += 1
    return tuple(out)


def coarea_path(w, m):
    """The rational (n, m)-Dyck path data: its sorted coarea sequence."""
    return tuple(sorted(wvec(w, m)))


def rational_area_sequence(w, m):
    """Area sequence of the rational (n, m)-path with coarea sort(wvec).

    Row j of the (n, m) grid holds floor((j-1) m / n) cells under the
    diagonal; subtracting the sorted coarea row by row gives the areas.
    """
    n = w.n
    coarea = coarea_path(w, m)
    out = []
    for j in range(1, n + 1):
        cap = (j - 1) * m // n
        if coarea[j - 1] > cap:
            raise AssertionError("coarea exceeds the row capacity")
        out.append(cap - coarea[j - 1])
    return tuple(out)


def standardize(a, order="<"):
    """The permutation sorting a by the chosen order, ties left to right."""
    n = len(a)
    if order == "<":
        ranking = sorted(range(n), key=lambda i: (a[i], i))
    elif order == ">":
        ranking = sorted(range(n), key=lambda i: (-a[i], i))
    else:
        raise ValueError("order must be '<' or '>'")
    out = [0] * n
    for rank, i in enumerate(ranking, start=1):
        out[i] = rank
    return tuple(out)


def tau(mvec):
    """The window (n + m_1 n, n-1 + m_2 n, ..., 1 + m_n n)."""
    n = len(mvec)
    return AffinePermutation(tuple((n - i) + mvec[i] * n for i in range(n)))


def paff(m, a, b):
    """shuff_>(reversed b) . tau_m . shuff_<(a)^{-1} for a sorted triple."""
    if not is_sorted_triple(m, a, b):
        raise ValueError("triple is not sorted")
    left = from_finite(standardize(tuple(reversed(b)), ">"))
    right = from_finite(standardize(a, "<")).inverse()
    return left * tau(m) * right


def young_subgroup(alpha):
    """All elements of S_alpha inside S_n, as one-line tuples."""
    n = sum(alpha)
    blocks = []
    start = 1
    for size in alpha:
        blocks.append(list(range(start, start + size)))
        start += size
    out = []
    for pieces in product(*(permutations(b) for b in blocks)):
        perm = tuple(v for piece in pieces for v in piece)
        out.append(perm)
    return out


def double_coset(w, alpha_left, alpha_right):
    """All elements of S_alpha_left . w . S_alpha_right."""
    out = set()
    for pl in young_subgroup(alpha_left):
        u = from_finite(pl) * w
        for pr in young_subgroup(alpha_right):
            out.add(u * from_finite(pr))
    return out


def left_coset_min_max(w):
    """Bruhat-minimal and maximal representatives of S_n . w.

    The coset is determined by the translation vector q_i = (w_i - r_i)/n;
    assigning residues 1..n along increasing (i - n q_i) gives the minimum,
    along decreasing gives the maximum.
    """
    n = w.n
    qs = []
    for i in range(1, n + 1):
        wi = w.window[i - 1]
        r = (wi - 1) % n + 1
        qs.append((wi - r) // n)
    order = sorted(range(n), key=lambda i: (i + 1) - n * qs[i])
    wmin = [0] * n
    for rank, i in enumerate(order, start=1):
        wmin[i] = rank + n * qs[i]
    wmax = [0] * n
    for rank, i in enumerate(order, start=1):
        wmax[i] = (n + 1 - rank) + n * qs[i]
    return AffinePermutation(wmin), AffinePermutation(wmax)


def coset_min_max(w, alpha=None, beta=None):
    """Bruhat-extreme representatives of S_alpha w S_beta, or of the full
    left coset S_n w when no subgroups are given."""
    if alpha is None and beta is None:
        return left_coset_min_max(w)
    alpha = alpha or (1,) * w.n
    beta = beta or (1,) * w.n
    coset = double_coset(w, alpha, beta)
    return (min(coset, key=lambda v: (v.length(), v.window)),
            max(coset, key=lambda v: (v.length(), v.window)))


def iter_wplus(n, max_grade):
    """All of W+_n with d-grade up to max_grade."""
    for d in range(max_grade + 1):
        yield from iter_wplus_graded(n, d)


def iter_wplus_graded(n, d):
    for qs in _compositions(d, n):
        for perm in permutations(range(1, n + 1)):
            yield AffinePermutation(tuple(perm[i] + n * qs[i] for i in range(n)))


def _compositions(total, slots):
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def raths_series(n, m, degree):
    """(1/(1-q)^gcd(n,m)) sum over m-restricted w in W+_n of t^area q^dimv,
    truncated at t-degree `degree`; area(w) is the d-grade."""
    if m < 1:
        raise ValueError("m must be positive")
    pref = (ONE / (ONE - Q)) ** gcd(n, m)
    coeffs = []
    for d in range(degree + 1):
        acc = QtScalar.from_int(0)
        for w in iter_wplus_graded(n, d):
            if is_m_restricted(w, m):
                acc = acc + QtScalar.monomial(q=dimv(w, m))
        coeffs.append(acc * pref)
    return TSeries(degree, coeffs)


def b_poly_degree(w, k):
    """Degree of the GKM leading form: sum over residue pairs of
    (k - refined edge count) for the kn-edge set."""
    n = w.n
    refined = edges_refined(w, k * n)
    total = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            total += k - refined.get((i, j), 0)
    return total


def verify_paff(n, k, degree, N):
    """Finite verification of the triple-to-permutation bijection claims.

    Checks, over sorted triples with |m| <= degree and labels <= N:
      (i)   paff lands on the strict maximum of its double coset, injectively
            within each label-multiset class;
      (ii)  dinv_k(m, a, b) = dimv_{kn}(paff(m, a, b));
      (iii) the attack path's area sequence is the coordinatewise difference
            of the edge-class vectors of the left-coset extremes;
      (iv)  the GKM leading-form degree equals dimv_{kn}.
    Returns a report dict; "ok" is False on the first counterexample.
    """
    from .labels import alpha_composition, attack_path, dinv_k_pair

    report = {"n": n, "k": k, "D": degree, "N": N, "ok": True,
              "triples": 0, "failures": []}

    def fail(kind, data):
        report["ok"] = False
        report["failures"].append({"kind": kind, **data})

    seen = {}
    for d in range(degree + 1):
        for m, a, b in iter_sorted_triples(n, N, d):
            report["triples"] += 1
            w = paff(m, a, b)
            if w.d_grade() != d:
                fail("grade", {"triple": (m, a, b), "w": w.window})
                return report
            val_dinv = dinv_k(m, a, b, k)
            val_dimv = dimv(w, k * n)
            if val_dinv != val_dimv:
                fail("dinv-dimv", {"triple": (m, a, b), "w": w.window,
                                   "dinv": val_dinv, "dimv": val_dimv})
                return report
            klass = (tuple(sorted(a)), tuple(sorted(b)))
            if (klass, w.window) in seen and seen[(klass, w.window)] != (m, a, b):
                fail("injectivity", {"triple": (m, a, b),
                                     "other": seen[(klass, w.window)]})
                return report
            seen[(klass, w.window)] = (m, a, b)
            alpha_a = alpha_composition(a)
            beta = tuple(reversed(alpha_composition(b)))
            lw = w.length()
            for v in double_coset(w, beta, alpha_a):
                if v != w and v.length() >= lw:
                    fail("coset-max", {"triple": (m, a, b), "w": w.window,
                                       "v": v.window})
                    return report
            wmin, wmax = left_coset_min_max(w)
            diff = tuple(x - y for x, y in zip(rational_area_sequence(wmin, k * n),
                                              rational_area_sequence(wmax, k * n)))
            if diff != attack_path(m, a, k).area_sequence:
                fail("area-difference", {"triple": (m, a, b), "diff": diff})
                return report
            if b_poly_degree(w, k) != val_dimv:
                fail("b-degree", {"triple": (m, a, b), "w": w.window})
                return report
    return report
