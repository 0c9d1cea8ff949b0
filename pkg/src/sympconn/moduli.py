"""Moduli of flat invariant curves under the integral symplectic group.

Valid structure-map curves (symmetric, A^t(X) A^t(Y) = 0, A^t(X)Y = A^t(Y)X)
classify flat invariant connection curves on the torus; two are identified
exactly when an element of Sp(2n, Z) carries one cube ladder to the other by
pullback.  The group is infinite, so equivalence is only semi-decided: a
bounded word search over a fixed generator set, with an explicit
"no witness within bound" verdict when the search is exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .curvature import ConnectionCurve, curvature_curve, require_ricci_type
from .errors import InternalInconsistency, PreconditionError
from .fourier import SymplecticData
from .invariant import StructureMapCurve, embed_invariant
from .linalg import identity as mat_identity
from .linalg import inverse, mat_mul, rank
from .rationals import Fraction


def validity_check(b_curve: StructureMapCurve):
    """(flag, witness) for the two defining identities, order by order:
    sum_{p+q=k} A^(p)(X) A^(q)(Y) = 0 and A^(k)(X) Y = A^(k)(Y) X."""
    dim = b_curve.dim
    for k in range(b_curve.cap + 1):
        mats = b_curve.matrices(k)
        for a in range(dim):
            for b in range(dim):
                for p in range(dim):
                    if mats[a][p][b] != mats[b][p][a]:
                        return False, {
                            "identity": "A(X)Y = A(Y)X",
                            "order": k,
                            "pair": (a, b),
                        }
        for a in range(dim):
            for b in range(dim):
                acc = [[Fraction(0)] * dim for _ in range(dim)]
                for p in range(k + 1):
                    m = mat_mul(b_curve.matrices(p)[a], b_curve.matrices(k - p)[b])
                    for i in range(dim):
                        for j in range(dim):
                            acc[i][j] += m[i][j]
                if any(any(row) for row in acc):
                    return False, {
                        "identity": "A(X)A(Y) = 0",
                        "order": k,
                        "pair": (a, b),
                    }
    return True, None


def require_valid(b_curve: StructureMapCurve):
    ok, witness = validity_check(b_curve)
    if not ok:
        raise PreconditionError(f"invalid structure-map curve: {witness}")


def sp_action(c_mat, b_curve: StructureMapCurve) -> StructureMapCurve:
    """(C . B)(X) Y = C B(C^{-1} X) C^{-1} Y; on lowered cubes this is the
    pullback of every slot by C^{-1} (C preserves omega)."""
    sdata = b_curve.sdata
    dim = sdata.dim
    c_mat = tuple(tuple(int(x) for x in row) for row in c_mat)
    cf = tuple(tuple(Fraction(x) for x in row) for row in c_mat)
    if not sdata.is_symplectic_matrix(cf):
        raise PreconditionError("matrix is not in the lattice symplectic group")
    c_inv = inverse(cf)
    cubes = []
    for cube in b_curve.cubes:
        new = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for a, b, c in product(range(dim), repeat=3):
            v = cube[a][b][c]
            if not v:
                continue
            # pullback: S'(e_p, e_q, e_r) = S(C^{-1} e_p, C^{-1} e_q, C^{-1} e_r)
            for p in range(dim):
                ca = c_inv[a][p]
                if not ca:
                    continue
                for q in range(dim):
                    cb = c_inv[b][q]
                    if not cb:
                        continue
                    vv = v * ca * cb
                    for r in range(dim):
                        if c_inv[c][r]:
                            new[p][q][r] += vv * c_inv[c][r]
        cubes.append(new)
    return StructureMapCurve(sdata, b_curve.cap, cubes)


def cheap_invariants(b_curve: StructureMapCurve):
    """Per-order Sp-invariants: rank of the flattened cube, dimension of
    span{A(e_a) e_b}, and the dimension of the common kernel of the A(e_a)."""
    dim = b_curve.dim
    out = []
    for k in range(b_curve.cap + 1):
        cube = b_curve.cubes[k]
        flat = tuple(
            tuple(cube[a][b][c] for b in range(dim) for c in range(dim))
            for a in range(dim)
        )
        mats = b_curve.matrices(k)
        span_cols = tuple(
            tuple(mats[a][p][b] for a in range(dim) for b in range(dim))
            for p in range(dim)
        )
        stacked = tuple(
            tuple(mats[a][p][b] for b in range(dim))
            for a in range(dim)
            for p in range(dim)
        )
        out.append(
            {
                "cube_rank": rank(flat),
                "span_dim": rank(span_cols),
                "common_kernel_dim": dim - rank(stacked),
            }
        )
    return out


def sp_generators(sdata: SymplecticData):
    """A fixed generating set of Sp(2n, Z) for the standard block omega:
    the omega rotation S, the symmetric transvections T_B = [[I, B], [0, I]],
    and GL(n, Z) block embeddings diag(A, (A^T)^{-1}); inverses included."""
    if not sdata.is_standard():
        raise PreconditionError(
            "the documented generator set applies to the standard omega only"
        )
    n = sdata.n
    dim = sdata.dim

    def blocks(a, b, c, d):
        m = [[0] * dim for _ in range(dim)]
        for i in range(n):
            for j in range(n):
                m[i][j] = a[i][j]
                m[i][n + j] = b[i][j]
                m[n + i][j] = c[i][j]
                m[n + i][n + j] = d[i][j]
        return tuple(tuple(row) for row in m)

    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    zero = [[0] * n for _ in range(n)]
    gens = [blocks(zero, eye, [[-x for x in row] for row in eye], zero)]
    for i in range(n):
        for j in range(i, n):
            b = [[0] * n for _ in range(n)]
            b[i][j] = 1
            b[j][i] = 1
            gens.append(blocks(eye, b, zero, eye))
    gl = []
    if n >= 2:
        t = [row[:] for row in eye]
        t[0][1] = 1
        gl.append(t)
        perm = [row[:] for row in eye]
        perm[0][0] = perm[1][1] = 0
        perm[0][1] = perm[1][0] = 1
        gl.append(perm)
    flip = [row[:] for row in eye]
    flip[0][0] = -1
    gl.append(flip)
    for a in gl:
        af = tuple(tuple(Fraction(x) for x in row) for row in a)
        a_inv_t = tuple(zip(*inverse(af)))
        d = [[int(a_inv_t[i][j]) for j in range(n)] for i in range(n)]
        gens.append(blocks(a, zero, zero, d))
    out = []
    seen = set()
    for g in gens:
        gf = tuple(tuple(Fraction(x) for x in row) for row in g)
        if not sdata.is_symplectic_matrix(gf):
            raise InternalInconsistency("generator is not symplectic")
        g_inv = tuple(tuple(int(x) for x in row) for row in inverse(gf))
        for m in (g, g_inv):
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out


def _words_up_to(gens, dim, bound):
    """Distinct matrices expressible as generator words of length <= L,
    mapped to the length of the shortest word reaching them."""
    ident = tuple(tuple(int(x) for x in row) for row in mat_identity(dim))
    seen = {ident: 0}
    frontier = [ident]
    for depth in range(1, bound + 1):
        new_frontier = []
        for m in frontier:
            for g in gens:
                prod = tuple(
                    tuple(sum(g[i][k] * m[k][j] for k in range(dim)) for j in range(dim))
                    for i in range(dim)
                )
                if prod not in seen:
                    seen[prod] = depth
                    new_frontier.append(prod)
        frontier = new_frontier
    return seen


@dataclass
class ModuliClassQuery:
    a: StructureMapCurve
    b: StructureMapCurve
    search_bound: int


@dataclass
class EquivalenceVerdict:
    kind: str  # "equivalent" | "distinct" | "no_witness_within_bound"
    witness: tuple | None = None
    separating: dict | None = None
    bound: int | None = None


def equivalence_semidecide(query: ModuliClassQuery) -> EquivalenceVerdict:
    """Cheap invariants first, then a bounded Sp(2n, Z) word search.

    A bound exhaustion is an honest third verdict: the curves may still be
    equivalent through a longer word.
    """
    a, b = query.a, query.b
    if a.sdata != b.sdata or a.cap != b.cap:
        raise PreconditionError("queries need matching omega and caps")
    require_valid(a)
    require_valid(b)
    inv_a = cheap_invariants(a)
    inv_b = cheap_invariants(b)
    if inv_a != inv_b:
        order = next(k for k in range(a.cap + 1) if inv_a[k] != inv_b[k])
        return EquivalenceVerdict(
            "distinct",
            separating={"order": order, "a": inv_a[order], "b": inv_b[order]},
        )
    gens = sp_generators(a.sdata)
    words = _words_up_to(gens, a.dim, query.search_bound)
    witnesses = [(depth, m) for m, depth in words.items() if sp_action(m, a) == b]
    if witnesses:
        # shortest word first, then lexicographically least, for determinism
        return EquivalenceVerdict("equivalent", witness=min(witnesses)[1])
    return EquivalenceVerdict("no_witness_within_bound", bound=query.search_bound)


def descend_check(b_curve: StructureMapCurve) -> ConnectionCurve:
    """Embed as a torus-invariant connection curve and verify, on the torus
    side, that a valid structure map really is flat and Ricci type."""
    require_valid(b_curve)
    conn = embed_invariant(b_curve)
    require_ricci_type(conn)
    if not all(t.is_zero() for t in curvature_curve(conn).orders):
        raise InternalInconsistency("valid structure map embeds to a curved curve")
    return conn
