"""Integer lattice arithmetic for the even unimodular hyperbolic lattice E10.

Everything runs on exact Python integers.  The standard model is
U + E8(-1) in the basis order (e, f, c1..c7, b), where e, f are the
hyperbolic pair with e.f = 1 and c1..c7 is the E8 chain with the branch
vertex b attached at c3 (negative definite, diagonal -2, adjacent +1).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmat import (
    det_bareiss,
    matmul,
    mat_vec,
    rank as mat_rank,
    smith_normal_form,
    solve_rational,
    transpose,
)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GramForm:
    entries: tuple
    dim: int

    def __post_init__(self):
        if len(self.entries) != self.dim:
            raise DimensionMismatch("entry count does not match dim")
        for i, row in enumerate(self.entries):
            if len(row) != self.dim:
                raise DimensionMismatch("non-square Gram matrix")
            for j in range(self.dim):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @staticmethod
    def from_rows(rows):
        return GramForm(tuple(tuple(r) for r in rows), len(rows))

    def to_json(self):
        return {
            "dim": self.dim,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @staticmethod
    def from_json(data):
        rows = [[int(x) for x in row] for row in data["entries"]]
        g = GramForm.from_rows(rows)
        if g.dim != int(data["dim"]):
            raise DimensionMismatch("dim field disagrees with entries")
        return g


def vec_to_json(v):
    return {"coords": [str(x) for x in v]}


def vec_from_json(data):
    return [int(x) for x in data["coords"]]


def gram_product(a, b, g):
    """The bilinear pairing a.b with respect to the Gram form g."""
    if len(a) != g.dim or len(b) != g.dim:
        raise DimensionMismatch("vector length does not match form dimension")
    return sum(
        a[i] * g.entries[i][j] * b[j] for i in range(g.dim) for j in range(g.dim)
    )


def rank_and_discriminant(g):
    """Rank over Q, and |det| of the form induced on the quotient by the radical.

    The integer kernel of the Gram matrix is saturated, so a basis of a
    complement can be read off from the column transform of the Smith
    normal form; restricting the form to that complement gives the
    induced nondegenerate form.
    """
    m = [list(row) for row in g.entries]
    if not m:
        return 0, 1
    full = det_bareiss([list(row) for row in m])
    if full != 0:
        return g.dim, abs(full)
    d, _, v = smith_normal_form(m)
    r = sum(1 for i in range(g.dim) if d[i][i] != 0)
    if r == 0:
        return 0, 1
    # columns of v beyond index r span ker(M); the first r columns span a
    # complement since v is unimodular
    p = [[v[row][col] for col in range(r)] for row in range(g.dim)]
    q = matmul(matmul(transpose(p), m), p)
    return r, abs(det_bareiss(q))


def sublattice_index(sub, g):
    """Index [ambient : span(sub)], or "infinite" when span is not full rank."""
    if len(sub) != g.dim or mat_rank([list(v) for v in sub]) < g.dim:
        return "infinite"
    return abs(det_bareiss([list(v) for v in sub]))


def e10_gram():
    rows = [[0] * 10 for _ in range(10)]
    rows[0][1] = rows[1][0] = 1
    # E8 part in basis c1..c7, b occupying indices 2..9
    for i in range(2, 10):
        rows[i][i] = -2
    for i in range(2, 8):  # chain c1-c2-...-c7
        rows[i][i + 1] = rows[i + 1][i] = 1
    rows[4][9] = rows[9][4] = 1  # branch b at c3
    return GramForm.from_rows(rows)


# highest root of E8 in the (c1..c7, b) basis above
_E8_THETA = (2, 4, 6, 5, 4, 3, 2, 3)


def e10_isotropic_basis():
    """A 10-tuple of isotropic vectors with pairwise product 1.

    f_1 = e, f_2 = f, and f_{i+2} = e + f + u_i where u_1, ..., u_8 are
    the partial sums of an A8 chain of roots inside E8 (the chain
    c1, ..., c7 closed up by minus the highest root).  Each u_i is a
    root, and distinct partial sums pair to -1, which gives all the
    required products against e + f.
    """
    chain = [[0] * 8 for _ in range(8)]
    for i in range(7):
        chain[i][i] = 1
    chain[7] = [-x for x in _E8_THETA]
    vectors = [
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    ]
    acc = [0] * 8
    for i in range(8):
        acc = [a + b for a, b in zip(acc, chain[i])]
        vectors.append([1, 1] + list(acc))
    return [tuple(v) for v in vectors]


class CossecSolveError(RuntimeError):
    pass


def solve_cossec_vector(tup, i, j):
    """An isotropic vector pairing 2 with f_i, f_j and 1 with the other f_k.

    The ten linear constraints determine the vector uniquely over Q
    because the tuple spans a finite-index sublattice, so the solve is
    exact; integrality and isotropy are verified afterwards.
    """
    if i == j:
        raise ValueError("indices must differ")
    if len(tup) != 10:
        raise ValueError("need a full 10-tuple")
    g = e10_gram()
    a = [mat_vec([list(g.entries[r]) for r in range(10)], list(f)) for f in tup]
    rhs = [2 if k in (i, j) else 1 for k in range(10)]
    sol = solve_rational(a, rhs)
    if sol is None:
        raise CossecSolveError("constraint system is singular")
    if any(x.denominator != 1 for x in sol):
        raise CossecSolveError("no integral solution")
    v = [int(x) for x in sol]
    if gram_product(v, v, g) != 0:
        raise CossecSolveError("solution is not isotropic")
    return tuple(v)


@lru_cache(maxsize=8)
def _span_inverse(tup):
    """Inverse of the matrix with the tuple as rows, or None if singular."""
    a = transpose([list(f) for f in tup])
    n = len(tup)
    cols = []
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        sol = solve_rational(a, e)
        if sol is None:
            return None
        cols.append(sol)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def in_span(v, tup, g):
    """Whether v lies in the Z-span of the tuple."""
    if len(tup) != g.dim:
        raise DimensionMismatch("span test needs a square generating set")
    inv = _span_inverse(tuple(tuple(f) for f in tup))
    if inv is None:
        sol = solve_rational(transpose([list(f) for f in tup]), list(v))
        if sol is None:
            return False
        return all(x.denominator == 1 for x in sol)
    n = g.dim
    for row in inv:
        if sum(row[k] * v[k] for k in range(n)).denominator != 1:
            return False
    return True


def divisibility_check(v, tup, g=None):
    """(3 | v.Sf, v in Z-span(f), 9 | v.Sf) for the isotropic tuple f."""
    if g is None:
        g = e10_gram()
    total = [sum(f[k] for f in tup) for k in range(g.dim)]
    prod = gram_product(list(v), total, g)
    span = in_span(v, tup, g)
    return prod % 3 == 0, span, prod % 9 == 0
