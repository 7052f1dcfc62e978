"""Exact polyhedral geometry over the scalar field.

Inequality systems carry weak and strict rows; Fourier-Motzkin elimination
decides feasibility exactly and back-substitutes a sample point.  On top of
that sit Γ-rational polyhedra (integer normals, rational right-hand sides),
finite unions of them, rational sets of tropical polynomials, and the
simplicial flags read off defining matrices, with the neighborhood test
that drives filter membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError, DomainError
from .prime import DefiningMatrix, EqualityVerdict, Prime, canonicalize, classify, decide_equal, CONT
from .linalg import field_rank
from .scalars import Scalar, ScalarLike, ZERO, dot, simplest_between
from .tropical import TropPolynomial

Row = tuple[tuple[Scalar, ...], Scalar, bool]


class IneqSystem:
    """Rows ⟨x, normal⟩ ≤ rhs (weak) or < rhs (strict) in d variables."""

    __slots__ = ("d", "rows")

    def __init__(self, d: int, rows: Sequence[Row] = ()):
        self.d = d
        self.rows: list[Row] = []
        for normal, rhs, strict in rows:
            self.add(normal, rhs, strict)

    def add(
        self,
        normal: Sequence[ScalarLike],
        rhs: ScalarLike,
        strict: bool = False,
    ) -> None:
        coeffs = tuple(Scalar.coerce(x) for x in normal)
        if len(coeffs) != self.d:
            raise DimensionError(
                f"row of length {len(coeffs)} in a {self.d}-variable system"
            )
        self.rows.append((coeffs, Scalar.coerce(rhs), strict))


def _normalize_row(row: Row) -> Row:
    coeffs, rhs, strict = row
    lead = next((x for x in coeffs if x), None)
    if lead is None:
        return row
    scale = lead if lead.sign() > 0 else -lead
    return (
        tuple(x / scale for x in coeffs),
        rhs / scale,
        strict,
    )


def _dedup(rows: list[Row]) -> list[Row]:
    best: dict[tuple[Scalar, ...], tuple[Scalar, bool]] = {}
    order: list[tuple[Scalar, ...]] = []
    for row in rows:
        coeffs, rhs, strict = _normalize_row(row)
        seen = best.get(coeffs)
        if seen is None:
            best[coeffs] = (rhs, strict)
            order.append(coeffs)
            continue
        old_rhs, old_strict = seen
        diff = (rhs - old_rhs).sign()
        if diff < 0 or (diff == 0 and strict and not old_strict):
            best[coeffs] = (rhs, strict)
    return [(c, best[c][0], best[c][1]) for c in order]


def fm_feasible(
    system: IneqSystem,
) -> tuple[bool, Optional[tuple[Scalar, ...]]]:
    """Fourier-Motzkin feasibility with an exact sample point.

    Variables are eliminated from the last to the first; a combination of
    two rows is strict when either parent is.  On success the bounds
    collected at each level are back-substituted, preferring simple
    rational values inside open intervals.
    """
    work = _dedup(list(system.rows))
    levels: list[tuple[list[Row], list[Row]]] = [([], [])] * system.d
    for k in range(system.d - 1, -1, -1):
        zero: list[Row] = []
        pos: list[Row] = []
        neg: list[Row] = []
        for coeffs, rhs, strict in work:
            s = coeffs[k].sign()
            if s == 0:
                zero.append((coeffs, rhs, strict))
            elif s > 0:
                pos.append((coeffs, rhs, strict))
            else:
                neg.append((coeffs, rhs, strict))
        levels[k] = (pos, neg)
        combined = zero
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                a, b = pc[k], nc[k]
                coeffs = tuple(
                    x * (-b) + y * a for x, y in zip(pc, nc)
                )
                combined = combined + [
                    (coeffs, pr * (-b) + nr * a, ps or ns)
                ]
        work = _dedup(combined)
    for _, rhs, strict in work:
        s = rhs.sign()
        if s < 0 or (strict and s == 0):
            return False, None
    point: list[Scalar] = []
    for k in range(system.d):
        pos, neg = levels[k]
        upper: Optional[tuple[Scalar, bool]] = None
        lower: Optional[tuple[Scalar, bool]] = None
        for coeffs, rhs, strict in pos:
            bound = (rhs - dot(point, coeffs[:k])) / coeffs[k]
            if upper is None or (bound - upper[0]).sign() < 0 or (
                bound == upper[0] and strict and not upper[1]
            ):
                upper = (bound, strict)
        for coeffs, rhs, strict in neg:
            bound = (rhs - dot(point, coeffs[:k])) / coeffs[k]
            if lower is None or (bound - lower[0]).sign() > 0 or (
                bound == lower[0] and strict and not lower[1]
            ):
                lower = (bound, strict)
        point.append(_pick_value(lower, upper))
    return True, tuple(point)


def _pick_value(
    lower: Optional[tuple[Scalar, bool]], upper: Optional[tuple[Scalar, bool]]
) -> Scalar:
    if lower is None and upper is None:
        return ZERO
    if lower is None:
        hi, strict = upper
        if not strict:
            return hi
        f = hi.floor()
        if Scalar.rational(f) < hi:
            return Scalar.rational(f)
        return Scalar.rational(f - 1)
    if upper is None:
        lo, strict = lower
        if not strict:
            return lo
        return Scalar.rational(lo.floor() + 1)
    lo, hi = lower[0], upper[0]
    if lo == hi:
        return lo
    return Scalar.rational(simplest_between(lo, hi))


# -- Γ-rational polyhedra -----------------------------------------------------


class GammaPolyhedron:
    """{x : ⟨x, u_i⟩ ≤ γ_i} with integral normals and rational bounds."""

    __slots__ = ("n", "rows")

    def __init__(
        self,
        n: int,
        rows: Sequence[tuple[Sequence[int], Fraction | int]] = (),
    ):
        self.n = n
        clean = []
        for u, gamma in rows:
            u = tuple(u)
            if len(u) != n:
                raise DimensionError(
                    f"normal of length {len(u)} in dimension {n}"
                )
            if not all(isinstance(x, int) for x in u):
                raise DomainError("normals must be integral")
            clean.append((u, Fraction(gamma)))
        self.rows: tuple[tuple[tuple[int, ...], Fraction], ...] = tuple(clean)

    def system(self) -> IneqSystem:
        s = IneqSystem(self.n)
        for u, gamma in self.rows:
            s.add(u, Fraction(gamma))
        return s

    def contains(self, point: Sequence[ScalarLike]) -> bool:
        p = [Scalar.coerce(x) for x in point]
        if len(p) != self.n:
            raise DimensionError("point dimension mismatch")
        for u, gamma in self.rows:
            if (dot(p, u) - Scalar.rational(gamma)).sign() > 0:
                return False
        return True

    def is_empty(self) -> bool:
        feasible, _ = fm_feasible(self.system())
        return not feasible

    def sample(self) -> Optional[tuple[Scalar, ...]]:
        return fm_feasible(self.system())[1]

    def intersection(self, other: "GammaPolyhedron") -> "GammaPolyhedron":
        if self.n != other.n:
            raise DimensionError("intersecting polyhedra of different dimension")
        return GammaPolyhedron(self.n, list(self.rows) + list(other.rows))

    def dim(self) -> int:
        """Dimension of the polyhedron; -1 when empty.

        A row is an implicit equality when making it strict empties the
        polyhedron; the dimension is n minus the rank of those normals.
        """
        if self.is_empty():
            return -1
        eq_normals: list[list[Fraction]] = []
        for i in range(len(self.rows)):
            s = IneqSystem(self.n)
            for j, (u, gamma) in enumerate(self.rows):
                s.add(u, Fraction(gamma), strict=(i == j))
            feasible, _ = fm_feasible(s)
            if not feasible:
                eq_normals.append([Fraction(x) for x in self.rows[i][0]])
        return self.n - field_rank(eq_normals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GammaPolyhedron):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __repr__(self) -> str:
        return f"GammaPolyhedron(n={self.n}, rows={list(self.rows)!r})"


class GammaPolyhedralSet:
    """Finite union of Γ-rational polyhedra in a common ambient space."""

    __slots__ = ("n", "pieces")

    def __init__(self, pieces: Sequence[GammaPolyhedron]):
        pieces = tuple(pieces)
        if not pieces:
            raise DomainError("a polyhedral set needs at least one piece")
        n = pieces[0].n
        if any(p.n != n for p in pieces):
            raise DimensionError("pieces live in different dimensions")
        self.n = n
        self.pieces = pieces

    def contains(self, point: Sequence[ScalarLike]) -> bool:
        return any(p.contains(point) for p in self.pieces)

    def __repr__(self) -> str:
        return f"GammaPolyhedralSet({list(self.pieces)!r})"


# -- rational sets ------------------------------------------------------------


def rational_set(
    f0: TropPolynomial,
    others: Sequence[TropPolynomial] = (),
    homog: bool = False,
) -> GammaPolyhedralSet:
    """The region {x : f0(x) ≥ f_i(x) for all i} as a union of polyhedra.

    One piece per term u of f0, requiring that term to dominate every term
    of every f_i; a point of the region lies in the piece of any term of
    f0 maximal there, so the union is exact.  With homog=True the region
    lives in (r, x) ∈ ℝ≥0 x N_ℝ and the coefficient exponents are scaled
    by r; rows are cleared to integer normals with zero right-hand side.
    """
    n = f0.n
    for g in others:
        if g.n != n:
            raise DimensionError("polynomials in different variable counts")
    ambient = n + 1 if homog else n
    if f0.is_zero():
        if all(g.is_zero() for g in others):
            return GammaPolyhedralSet([GammaPolyhedron(ambient)])
        empty = GammaPolyhedron(ambient, [((0,) * ambient, Fraction(-1))])
        return GammaPolyhedralSet([empty])
    pieces = []
    for ev0 in f0.exponents():
        rows: list[tuple[tuple[int, ...], Fraction]] = []
        for g in others:
            for ev in g.exponents():
                du = tuple(a - b for a, b in zip(ev.u, ev0.u))
                dgamma = ev.gamma - ev0.gamma
                if homog:
                    den = dgamma.denominator
                    rows.append(
                        ((dgamma.numerator,) + tuple(x * den for x in du),
                         Fraction(0))
                    )
                else:
                    rows.append((du, -dgamma))
        if homog:
            rows.append(((-1,) + (0,) * n, Fraction(0)))
        pieces.append(GammaPolyhedron(ambient, rows))
    return GammaPolyhedralSet(pieces)


# -- flags --------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """Simplicial flag: member i is base + cone(dirs[:i]) (polyhedra kind)
    or cone(base, dirs[:i]) (cones kind, living in ℝ≥0 x N_ℝ)."""

    kind: str
    base: tuple[Scalar, ...]
    dirs: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if self.kind not in ("polyhedra", "cones"):
            raise DomainError(f"bad flag kind {self.kind!r}")
        d = len(self.base)
        if any(len(v) != d for v in self.dirs):
            raise DimensionError("flag vectors of mixed dimension")
        vectors = [list(v) for v in self.dirs]
        if self.kind == "cones":
            vectors = [list(self.base)] + vectors
            if self.base[0].sign() < 0 or any(
                v[0].sign() < 0 for v in self.dirs
            ):
                raise DomainError(
                    "cone generators must have nonnegative first coordinate"
                )
        if field_rank(vectors) != len(vectors):
            raise DomainError("flag vectors are dependent; not simplicial")

    @property
    def d(self) -> int:
        return len(self.base)

    @property
    def length(self) -> int:
        return len(self.dirs)


def flag_from_matrix(P: Prime, kind: Optional[str] = None) -> Flag:
    """The simplicial flag of a canonical matrix.

    cones kind: generators are the rows themselves.  polyhedra kind (cont
    primes only): the leading coefficient column is stripped, giving the
    vertex from row 0 and one direction per further row.
    """
    if kind is None:
        kind = "polyhedra" if classify(P) == CONT else "cones"
    rows = P.matrix.rows
    if kind == "cones":
        if not rows:
            raise DomainError("empty matrix has no cone flag")
        return Flag("cones", rows[0], tuple(rows[1:]))
    if kind != "polyhedra":
        raise DomainError(f"bad flag kind {kind!r}")
    if classify(P) != CONT:
        raise DomainError("polyhedra flag needs a cont prime")
    c0 = rows[0][0]
    base = tuple(x / c0 for x in rows[0][1:])
    return Flag("polyhedra", base, tuple(r[1:] for r in rows[1:]))


def matrix_from_flag(F: Flag) -> DefiningMatrix:
    """Defining matrix whose flag is F (not canonicalized here)."""
    if F.kind == "cones":
        return DefiningMatrix([list(F.base)] + [list(v) for v in F.dirs])
    one = Scalar.rational(1)
    rows = [[one] + list(F.base)]
    rows.extend([ZERO] + list(v) for v in F.dirs)
    return DefiningMatrix(rows)


def is_neighborhood(U: GammaPolyhedron, F: Flag) -> bool:
    """Does U meet the relative interior of every member of the flag?

    Member i is parametrized as base + Σ_{j<i} λ_j dirs_j with all λ_j > 0;
    U's rows become weak constraints on the λ and feasibility is checked
    per member.
    """
    if F.kind != "polyhedra":
        raise DomainError("neighborhood test is for polyhedra flags")
    if U.n != F.d:
        raise DimensionError("polyhedron and flag dimensions differ")
    for i in range(F.length + 1):
        s = IneqSystem(i)
        for u, gamma in U.rows:
            coeffs = [dot(F.dirs[j], u) for j in range(i)]
            rhs = Scalar.rational(gamma) - dot(F.base, u)
            s.add(coeffs, rhs)
        for j in range(i):
            s.add([ZERO] * j + [Scalar.rational(-1)] + [ZERO] * (i - j - 1),
                  ZERO, strict=True)
        feasible, _ = fm_feasible(s)
        if not feasible:
            return False
    return True


def locally_equivalent(F: Flag, G: Flag) -> EqualityVerdict:
    """Do two flags have the same Γ-rational neighborhoods?

    Reduces to decide_equal on the canonical matrices built from the
    flags.
    """
    if F.kind != G.kind:
        raise DomainError("flags of different kinds")
    if F.d != G.d:
        raise DimensionError("flags in different ambient dimensions")
    A = canonicalize(matrix_from_flag(F))
    B = canonicalize(matrix_from_flag(G))
    return decide_equal(A, B)


# -- simplicialization --------------------------------------------------------


def in_cone(v: Sequence[ScalarLike], generators: Sequence[Sequence[ScalarLike]]) -> bool:
    """Is v a nonnegative combination of the generators?"""
    gens = [[Scalar.coerce(x) for x in g] for g in generators]
    vec = [Scalar.coerce(x) for x in v]
    m = len(gens)
    s = IneqSystem(m)
    for t in range(len(vec)):
        coeffs = [g[t] for g in gens]
        s.add(coeffs, vec[t])
        s.add([-c for c in coeffs], -vec[t])
    for j in range(m):
        s.add([ZERO] * j + [Scalar.rational(-1)] + [ZERO] * (m - j - 1), ZERO)
    feasible, _ = fm_feasible(s)
    return feasible


def relative_interior_matrix(
    cones: Sequence[Sequence[Sequence[ScalarLike]]],
) -> DefiningMatrix:
    """Matrix with one relative-interior point per cone: the sum of its
    generators (a positive combination of all of them)."""
    rows = []
    for gens in cones:
        acc = [Scalar.coerce(x) for x in gens[0]]
        for g in gens[1:]:
            acc = [a + Scalar.coerce(x) for a, x in zip(acc, g)]
        rows.append(acc)
    return DefiningMatrix(rows)


def simplicialize(
    cones: Sequence[Sequence[Sequence[ScalarLike]]],
) -> Flag:
    """Select one ray per cone to form a simplicial flag.

    The input must be a flag of cones: dim C_i = i+1 and each cone
    contains the previous one (validated by rank and cone-membership
    tests).  Ray i is the first listed generator of C_i outside C_{i-1}
    that is independent of the earlier choices.
    """
    if not cones:
        raise DomainError("empty cone list")
    gens_list = [
        [[Scalar.coerce(x) for x in g] for g in cone] for cone in cones
    ]
    d = len(gens_list[0][0])
    for gens in gens_list:
        if not gens:
            raise DomainError("cone without generators")
        if any(len(g) != d for g in gens):
            raise DimensionError("generators of mixed dimension")
    for i, gens in enumerate(gens_list):
        if field_rank([list(g) for g in gens]) != i + 1:
            raise DomainError(f"cone {i} does not have dimension {i + 1}")
        if i > 0:
            for g in gens_list[i - 1]:
                if not in_cone(g, gens):
                    raise DomainError(
                        f"cone {i} does not contain cone {i - 1}"
                    )
    chosen = [gens_list[0][0]]
    for i in range(1, len(gens_list)):
        pick = None
        for g in gens_list[i]:
            if in_cone(g, gens_list[i - 1]):
                continue
            if field_rank([list(c) for c in chosen] + [list(g)]) == i + 1:
                pick = g
                break
        if pick is None:
            raise DomainError(f"cone {i} adds no independent ray")
        chosen.append(pick)
    return Flag(
        "cones", tuple(chosen[0]), tuple(tuple(g) for g in chosen[1:])
    )
