"""Rational rank, affine hulls, Dirichlet approximants, corner-cube search,
and exact rational cone membership for positive weight vectors.

Everything here decides with exact arithmetic.  Scalars live in quadratic
fields; linear algebra happens on their rational coordinates over the basis
{1, sqrt(d_1), sqrt(d_2), ...}, and signs of mixed-radical quantities are
resolved by eliminating one prime at a time via squaring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import (
    ArityError,
    ContainmentError,
    OutsideConeError,
    SearchExhaustedError,
)
from .exactnum import ExactScalar

# -- exact sums of rational multiples of square roots ----------------------------

Combo = dict[int, Fraction]  # squarefree radicand -> coefficient; key 1 = rational part


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = g^2 * m with m squarefree; returns (g, m)."""
    g, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        g *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1
    return g, m * n


def combo_of(x: ExactScalar | Fraction | int) -> Combo:
    x = ExactScalar.of(x)
    out: Combo = {}
    if x.a:
        out[1] = x.a
    if x.b:
        out[x.d] = x.b
    return out


def combo_add(p: Combo, q: Combo) -> Combo:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if c}


def combo_neg(p: Combo) -> Combo:
    return {k: -c for k, c in p.items()}

def combo_sub(p: Combo, q: Combo) -> Combo:
    return combo_add(p, combo_neg(q))


def combo_scale(p: Combo, c: Fraction) -> Combo:
    if c == 0:
        return {}
    return {k: v * c for k, v in p.items()}


def combo_mul(p: Combo, q: Combo) -> Combo:
    out: Combo = {}
    for j, cj in p.items():
        for k, ck in q.items():
            g, m = _squarefree_split(j * k)
            out[m] = out.get(m, Fraction(0)) + cj * ck * g
    return {k: c for k, c in out.items() if c}


def combo_sign(p: Combo) -> int:
    """Exact sign of sum(c_k * sqrt(k)); eliminates one prime per squaring."""
    terms = {k: c for k, c in p.items() if c}
    if not terms:
        return 0
    signs = {(c > 0) - (c < 0) for c in terms.values()}
    if len(signs) == 1:
        return signs.pop()
    # pick a prime dividing some radicand and split off its sqrt
    prime = None
    for k in terms:
        if k > 1:
            q = 2
            while k % q:
                q += 1
            prime = q
            break
    assert prime is not None  # mixed signs with all-rational keys is impossible
    a_part: Combo = {}
    c_part: Combo = {}
    for k, c in terms.items():
        if k % prime == 0:
            c_part[k // prime] = c
        else:
            a_part[k] = c
    sa = combo_sign(a_part)
    sc = combo_sign(c_part)
    if sc == 0:
        return sa
    if sa == 0:
        return sc
    if sa == sc:
        return sa
    # sign(A + sqrt(p) C) = sign(A) * sign(A^2 - p C^2) when signs oppose
    diff = combo_sub(combo_mul(a_part, a_part),
                     combo_scale(combo_mul(c_part, c_part), Fraction(prime)))
    return sa * combo_sign(diff)


def combo_str(p: Combo) -> str:
    if not p:
        return "0"
    parts = []
    for k in sorted(p):
        c = p[k]
        mag = abs(c)
        if k == 1:
            body = str(mag)
        elif mag == 1:
            body = f"sqrt({k})"
        else:
            body = f"{mag}*sqrt({k})"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# -- rational linear algebra -------------------------------------------------------

def rational_matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def solve_rational(columns: Sequence[Sequence[Fraction]],
                   rhs_list: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Solve sum(x_j * columns[j]) = rhs for each rhs; None if any is inconsistent.

    Free variables are set to zero; when the columns are independent the
    solution is unique.
    """
    k = len(columns)
    dim = len(columns[0]) if k else (len(rhs_list[0]) if rhs_list else 0)
    nrhs = len(rhs_list)
    aug = [[Fraction(columns[j][i]) for j in range(k)] +
           [Fraction(rhs[i]) for rhs in rhs_list] for i in range(dim)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(k):
        pivot = next((r for r in range(row, dim) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(dim):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
    for r in range(row, dim):
        if any(aug[r][k + t] != 0 for t in range(nrhs)):
            return None
    solutions = []
    for t in range(nrhs):
        x = [Fraction(0)] * k
        for prow, pcol in pivots:
            x[pcol] = aug[prow][k + t]
        solutions.append(x)
    return solutions


# -- weight vectors ------------------------------------------------------------------

@dataclass(frozen=True)
class ReebVector:
    """A positive weight vector with its rational-rank data.

    `n` is the complex dimension of the ambient singularity; it only feeds
    the default approximation threshold.
    """

    entries: tuple[ExactScalar, ...]
    n: int | None = None

    def __post_init__(self):
        entries = tuple(ExactScalar.of(e) for e in self.entries)
        if not entries:
            raise ValueError("weight vector must be nonempty")
        if any(e.sign() <= 0 for e in entries):
            raise ValueError("all weights must be positive")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def radicands(self) -> list[int]:
        rads = sorted({e.d for e in self.entries if e.b != 0})
        return [1] + rads

    def coordinate_rows(self) -> list[list[Fraction]]:
        """Coordinates of each entry over the basis {1} + {sqrt(d)}."""
        basis = self.radicands()
        rows = []
        for e in self.entries:
            row = [Fraction(0)] * len(basis)
            row[0] = e.a
            if e.b != 0:
                row[basis.index(e.d)] = e.b
            rows.append(row)
        return rows

    def min_entry(self) -> ExactScalar:
        return min(self.entries)

    def is_rational(self) -> bool:
        return all(e.is_rational() for e in self.entries)


def rational_rank(v: ReebVector) -> int:
    """Dimension of the Q-span of the entries."""
    return rational_matrix_rank(v.coordinate_rows())


def one_in_span(v: ReebVector) -> bool:
    """Whether 1 is a rational combination of the entries."""
    rows = v.coordinate_rows()
    one = [Fraction(0)] * len(rows[0])
    one[0] = Fraction(1)
    return rational_matrix_rank(rows) == rational_matrix_rank(rows + [one])


@dataclass(frozen=True)
class AffineHull:
    """Exact description of the minimal affine Q-subspace containing the vector.

    After the reorder permutation, 1 and the first s entries are linearly
    independent over Q, and every later entry satisfies
    m * w_{s+j} = sum_i a[i][j] * w_i + a0[j].
    """

    reorder: tuple[int, ...]
    s: int
    m: int
    a: tuple[tuple[int, ...], ...]   # s rows, one per leading weight
    a0: tuple[int, ...]              # constant row

    def max_abs_coeff(self) -> int:
        best = 0
        for row in self.a:
            for x in row:
                best = max(best, abs(x))
        return best


def affine_hull(v: ReebVector) -> AffineHull:
    rows = v.coordinate_rows()
    dim = len(rows[0])
    one = [Fraction(0)] * dim
    one[0] = Fraction(1)
    picked: list[int] = []
    span: list[list[Fraction]] = [one]
    for i, row in enumerate(rows):
        if rational_matrix_rank(span + [row]) > len(span):
            span.append(row)
            picked.append(i)
    s = len(picked)
    rest = [i for i in range(len(rows)) if i not in picked]
    reorder = tuple(picked + rest)
    columns = [one] + [rows[i] for i in picked]
    rhs = [rows[j] for j in rest]
    coeffs = solve_rational(columns, rhs) if rhs else []
    if coeffs is None:
        raise ArithmeticError("affine hull solve failed")  # unreachable by construction
    m = 1
    for x in coeffs or []:
        for c in x:
            m = m * c.denominator // _gcd(m, c.denominator)
    a_rows = tuple(tuple(int(coeffs[j][1 + i] * m) for j in range(len(rest)))
                   for i in range(s))
    a0 = tuple(int(coeffs[j][0] * m) for j in range(len(rest)))
    hull = AffineHull(reorder, s, m, a_rows, a0)
    _verify_hull(v, hull)
    return hull


def _verify_hull(v: ReebVector, hull: AffineHull):
    rows = v.coordinate_rows()
    dim = len(rows[0])
    for j in range(len(v) - hull.s):
        target = [hull.m * x for x in rows[hull.reorder[hull.s + j]]]
        acc = [Fraction(0)] * dim
        acc[0] = Fraction(hull.a0[j])
        for i in range(hull.s):
            acc = [u + hull.a[i][j] * w for u, w in zip(acc, rows[hull.reorder[i]])]
        if acc != target:
            raise ArithmeticError("affine hull relation failed verification")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- approximants ---------------------------------------------------------------------

@dataclass(frozen=True)
class ApproximantReport:
    """A rational approximation w_tilde / D of a weight vector with its bounds."""

    D: int
    w_tilde: tuple[int, ...]
    N: int
    errors: tuple[ExactScalar, ...]
    nice: bool
    xi: ReebVector | None = field(default=None, compare=False)

    def approximation(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(w, self.D) for w in self.w_tilde)

    def to_json_dict(self) -> dict:
        return {
            "D": self.D,
            "w_tilde": list(self.w_tilde),
            "N": self.N,
            "errors_as_strings": [str(e) for e in self.errors],
            "nice": self.nice,
        }


def default_N(v: ReebVector) -> int:
    """ceil(4n / min w_i), the baseline approximation threshold."""
    if v.n is None:
        raise ValueError("ambient dimension n is not set on the weight vector")
    return (ExactScalar.of(4 * v.n) / v.min_entry()).ceil()


def _candidate(v: ReebVector, D: int, N: int) -> ApproximantReport | None:
    bound = Fraction(1, N)
    w_tilde = []
    errors = []
    for w in v.entries:
        scaled = w * D
        nearest = scaled.nearest_int()
        if nearest < 1:
            return None
        err = abs(scaled - nearest)
        if not err < bound:
            return None
        w_tilde.append(nearest)
        errors.append(err)
    return ApproximantReport(D, tuple(w_tilde), N, tuple(errors), nice=False, xi=v)


def dirichlet_approximant(v: ReebVector, N: int, cap: int) -> ApproximantReport:
    """Smallest D <= cap with every |D w_i - nearest integer| < 1/N."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if cap < N:
        raise ValueError("cap must be at least N")
    for D in range(1, cap + 1):
        report = _candidate(v, D, N)
        if report is not None:
            return report
    raise SearchExhaustedError(f"no approximant with denominator <= {cap} at threshold 1/{N}")


def nice_approximant(v: ReebVector, sigma=None, N: int | None = None,
                     cap: int = 10**6) -> ApproximantReport:
    """Dirichlet approximant whose rational vector lies in the reference cone."""
    if N is None:
        N = default_N(v)
    if v.n is not None and N < default_N(v):
        raise ValueError(f"N={N} is below the default threshold {default_N(v)}")
    if N < 2:
        raise ValueError("N must be at least 2")
    if sigma is None:
        sigma = default_box_cone(v)
    contained, _ = sigma.contains(v.entries)
    if not contained:
        raise ValueError("reference cone does not contain the weight vector")
    found_candidate = False
    for D in range(1, cap + 1):
        report = _candidate(v, D, N)
        if report is None:
            continue
        found_candidate = True
        inside, _ = sigma.contains(report.approximation())
        if inside:
            return ApproximantReport(report.D, report.w_tilde, N, report.errors,
                                     nice=True, xi=v)
    if found_candidate:
        raise OutsideConeError(f"all approximants with denominator <= {cap} fall outside the cone")
    raise SearchExhaustedError(f"no approximant with denominator <= {cap} at threshold 1/{N}")


def verify_perturbation_bound(report: ApproximantReport, p: int, eps_prime) -> bool:
    """Exact check that the scaled perturbation stays below eps_prime.

    Requires the approximation errors to respect 1/N, the threshold bound
    p/(N * min w_i) < eps_prime/2, and the actual relative error bound
    p * D * max_i |w_i - w'_i| / w_i < eps_prime/2.  Any sufficiently small
    tau-exponent slack then fits in the remaining half.
    """
    v = report.xi
    if v is None:
        raise ValueError("report does not retain its weight vector")
    eps_prime = Fraction(eps_prime)
    half = ExactScalar.of(eps_prime / 2)
    bound = Fraction(1, report.N)
    if not all(e < bound for e in report.errors):
        return False
    threshold = ExactScalar.of(p) / (report.N * v.min_entry())
    if not threshold < half:
        return False
    relative = max((e / w for e, w in zip(report.errors, v.entries)), default=ExactScalar.of(0))
    return ExactScalar.of(p) * relative < half


# -- cones ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeDescription:
    """A cone spanned by rational generators with exact membership.

    With homogenized=True the generators are read as points: membership of v
    asks for nonnegative lambda with sum(lambda_k (1, g_k)) = (1, v), i.e. a
    convex combination of the generators equal to v.
    """

    generators: tuple[tuple[Fraction, ...], ...]
    simplicial: bool
    homogenized: bool = False

    def _matrix(self) -> list[list[Fraction]]:
        cols = []
        for g in self.generators:
            col = list(map(Fraction, g))
            if self.homogenized:
                col = [Fraction(1)] + col
            cols.append(col)
        return cols

    def contains(self, v: Sequence) -> tuple[bool, list[tuple[int, str]] | None]:
        """Exact membership with a nonnegative-coefficient certificate."""
        target = [combo_of(x) for x in v]
        if self.homogenized:
            target = [combo_of(1)] + target
        columns = self._matrix()
        if columns and len(columns[0]) != len(target):
            raise ArityError("dimension mismatch in cone membership")
        radicands = sorted({k for combo in target for k in combo})
        if not radicands:
            radicands = [1]
        rhs_list = [[combo.get(rad, Fraction(0)) for combo in target] for rad in radicands]
        indices = range(len(columns))
        for size in range(1, len(columns) + 1):
            for subset in combinations(indices, size):
                cols = [columns[i] for i in subset]
                if rational_matrix_rank([list(x) for x in zip(*cols)]) < size:
                    continue
                sols = solve_rational(cols, rhs_list)
                if sols is None:
                    continue
                lambdas: list[Combo] = []
                ok = True
                for j in range(size):
                    combo: Combo = {}
                    for rad, sol in zip(radicands, sols):
                        if sol[j]:
                            combo[rad] = sol[j]
                    if combo_sign(combo) < 0:
                        ok = False
                        break
                    lambdas.append(combo)
                if ok:
                    certificate = [(subset[j], combo_str(lambdas[j])) for j in range(size)]
                    return True, certificate
        return False, None

    def to_json_dict(self) -> dict:
        return {
            "generators": [[str(x) for x in g] for g in self.generators],
            "simplicial": self.simplicial,
        }


@dataclass(frozen=True)
class BoxCone:
    """The cone over an axis-aligned rational box; membership is exact."""

    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]

    def contains(self, v: Sequence) -> tuple[bool, list[tuple[int, str]] | None]:
        u = [combo_of(x) for x in v]
        if len(u) != len(self.lower):
            raise ArityError("dimension mismatch in box-cone membership")
        if any(combo_sign(x) <= 0 for x in u):
            return False, None
        # exists lam > 0 with lower <= lam*u <= upper, iff for all i, j:
        # lower_i * u_j <= upper_j * u_i
        for i in range(len(u)):
            for j in range(len(u)):
                lhs = combo_scale(u[j], Fraction(self.lower[i]))
                rhs = combo_scale(u[i], Fraction(self.upper[j]))
                if combo_sign(combo_sub(rhs, lhs)) < 0:
                    return False, None
        return True, None

    def to_json_dict(self) -> dict:
        return {
            "box_lower": [str(x) for x in self.lower],
            "box_upper": [str(x) for x in self.upper],
        }


def default_box_cone(v: ReebVector) -> BoxCone:
    """The cone over the box [3r/4, 5r/4] around a rational approximation of v."""
    lower = []
    upper = []
    for w in v.entries:
        k = 1
        # need 1/k <= w/8 so the dyadic floor stays within 12.5 percent
        while ExactScalar.of(Fraction(8, k)) > w:
            k *= 2
        r = Fraction((w * k).floor(), k)
        lower.append(Fraction(3, 4) * r)
        upper.append(Fraction(5, 4) * r)
    return BoxCone(tuple(lower), tuple(upper))


def cone_contains(sigma, v: ReebVector | Sequence) -> tuple[bool, list | None]:
    """Exact membership of a weight vector in a cone, with certificate."""
    entries = v.entries if isinstance(v, ReebVector) else v
    return sigma.contains(entries)


# -- corner-cube search ----------------------------------------------------------------

@dataclass(frozen=True)
class CornerHit:
    """Least multiplier steering the fractional parts into one corner cube."""

    corner: tuple[int, ...]      # 0 = near 0, 1 = near 1, per leading coordinate
    C: int
    v_tilde: tuple[int, ...]


@dataclass(frozen=True)
class CornerSearchResult:
    hits: tuple[CornerHit, ...]
    resolution: int              # the corner cubes have side 1/resolution
    hull: AffineHull


def default_corner_resolution(hull: AffineHull, N: int) -> int:
    """Smallest cube resolution compatible with the approximation threshold."""
    scale = max(1, hull.max_abs_coeff()) * hull.m * max(1, hull.s)
    return scale * N + 1


def kronecker_corner_search(v: ReebVector, resolution: int, cap: int = 10**6,
                            hull: AffineHull | None = None) -> CornerSearchResult:
    """For each corner of the unit cube, the least C with {C w} in the cube.

    Works on the leading (irrational) coordinates singled out by the affine
    hull; density of the fractional parts guarantees hits eventually, and cap
    bounds the search.
    """
    hull = hull or affine_hull(v)
    if hull.s == 0:
        raise ValueError("all weights are rational; corner search is undefined")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    leading = [v.entries[i] for i in hull.reorder[:hull.s]]
    side = Fraction(1, resolution)
    corners = list(product((0, 1), repeat=hull.s))
    found: dict[tuple[int, ...], CornerHit] = {}
    for C in range(1, cap + 1):
        floors = [(w * C).floor() for w in leading]
        fracs = [w * C - f for w, f in zip(leading, floors)]
        for corner in corners:
            if corner in found:
                continue
            ok = True
            for frac, bit in zip(fracs, corner):
                if bit == 0:
                    if not (frac < side or frac == side):
                        ok = False
                        break
                else:
                    if not (ExactScalar.of(1) - frac < side or ExactScalar.of(1) - frac == side):
                        ok = False
                        break
            if ok:
                v_tilde = tuple(f + bit for f, bit in zip(floors, corner))
                found[corner] = CornerHit(corner, C, v_tilde)
        if len(found) == len(corners):
            break
    missing = [c for c in corners if c not in found]
    if missing:
        raise SearchExhaustedError(f"corners {missing} not reached within cap {cap}")
    hits = tuple(found[c] for c in corners)
    return CornerSearchResult(hits, resolution, hull)


# -- assembling the approximant cone ------------------------------------------------------

def approximant_cone(v: ReebVector, corners: CornerSearchResult | None = None,
                     N: int | None = None) -> ConeDescription:
    """A simplicial cone of close rational approximants containing the vector.

    For rational v this is the ray through v itself.  Otherwise each corner
    hit is lifted through the affine-hull relations to a full-length rational
    vector; the returned cone is spanned by a minimal subset of those whose
    convex hull provably contains v, and every generator is verified against
    the 1/N approximation bound.
    """
    if v.is_rational():
        generators = (tuple(e.as_fraction() for e in v.entries),)
        return ConeDescription(generators, simplicial=True, homogenized=True)
    if corners is None:
        hull = affine_hull(v)
        if N is None:
            N = default_N(v)
        corners = kronecker_corner_search(v, default_corner_resolution(hull, N))
    hull = corners.hull
    if N is None:
        if v.n is not None:
            N = default_N(v)
        else:
            scale = max(1, hull.max_abs_coeff()) * hull.m * max(1, hull.s)
            N = max(2, (corners.resolution - 1) // scale)
    l = len(v)
    generators = []
    for hit in corners.hits:
        D = hull.m * hit.C
        full = [0] * l
        for i in range(hull.s):
            full[hull.reorder[i]] = hull.m * hit.v_tilde[i]
        for j in range(l - hull.s):
            value = sum(hull.a[i][j] * hit.v_tilde[i] for i in range(hull.s))
            value += hit.C * hull.a0[j]
            full[hull.reorder[hull.s + j]] = value
        if any(x < 1 for x in full):
            raise ContainmentError(
                "corner approximant has a nonpositive entry; raise the resolution")
        bound = Fraction(1, N)
        for w, wt in zip(v.entries, full):
            if not abs(w * D - wt) < bound:
                raise ContainmentError(
                    f"corner approximant misses the 1/{N} bound; raise the resolution")
        generators.append(tuple(Fraction(x, D) for x in full))
    indices = range(len(generators))
    for size in range(1, len(generators) + 1):
        for subset in combinations(indices, size):
            gens = tuple(generators[i] for i in subset)
            homog = [[Fraction(1)] + list(g) for g in gens]
            simplicial = rational_matrix_rank(homog) == len(gens)
            cone = ConeDescription(gens, simplicial=simplicial, homogenized=True)
            inside, _ = cone.contains(v.entries)
            if inside:
                return cone
    raise ContainmentError("no subset of corner approximants contains the vector; "
                           "raise the resolution or the cap")
