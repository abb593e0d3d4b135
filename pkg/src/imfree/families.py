"""Named graph families, concatenations, closed-form extremal values, and the
edge-preserving extremal mutations.

Conventions: in ``concat(G, Gp)`` the right operand Gp precedes G in both
linear orders (they overlap in one row and one column); in ``concat2(G, Gp)``
G comes first and the operands overlap in a 2x2 all-ones block.  Chains fold
left-to-right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import OrderedBipartiteGraph


class DomainError(ValueError):
    """Parameters outside the valid range of a formula or constructor."""


class ConstructionError(ValueError):
    """A concatenation precondition (required corner edges) is violated."""


class MutationError(ValueError):
    """An extremal mutation was applied to an ineligible vertex."""


@dataclass(frozen=True)
class Decomposition:
    """The arithmetic splitting p = block*r + e used by the closed forms.

    mode "K2": p = (ell-2)r + e with 1 <= e <= ell-2 (needs ell >= 3).
    mode "K3": p = (ell-3)r + e with 2 <= e <= ell-2 (needs ell >= 4, p >= 2).
    """

    ell: int
    mode: str
    r: int
    e: int


def decompose(p: int, ell: int, mode: str = "K2") -> Decomposition:
    if mode == "K2":
        if ell < 3:
            raise DomainError("K2 decomposition needs ell >= 3")
        if p < 1:
            raise DomainError("K2 decomposition needs p >= 1")
        r = (p - 1) // (ell - 2)
        e = p - (ell - 2) * r
    elif mode == "K3":
        if ell < 4:
            raise DomainError("K3 decomposition needs ell >= 4")
        if p < 2:
            raise DomainError("K3 decomposition needs p >= 2")
        r = (p - 2) // (ell - 3)
        e = p - (ell - 3) * r
    else:
        raise DomainError(f"unknown decomposition mode {mode!r}")
    return Decomposition(ell, mode, r, e)


def complete(a: int, b: int) -> OrderedBipartiteGraph:
    """The all-ones a x b graph K_{a,b}."""
    if a < 1 or b < 1:
        raise DomainError("complete graph sides must be positive")
    return OrderedBipartiteGraph(a, b, ((1 << b) - 1,) * a)


def concat(
    G: OrderedBipartiteGraph, Gp: OrderedBipartiteGraph
) -> OrderedBipartiteGraph:
    """Concatenation: Gp precedes G; their bottom/top corner vertices merge."""
    if not G.has_edge(0, 0):
        raise ConstructionError(
            "left operand: bottom vertices must be adjacent (missing edge a1 b1)"
        )
    if not Gp.has_edge(Gp.p - 1, Gp.q - 1):
        raise ConstructionError(
            "right operand: top vertices must be adjacent "
            f"(missing edge a{Gp.p} b{Gp.q})"
        )
    p = G.p + Gp.p - 1
    q = G.q + Gp.q - 1
    rows = []
    for i in range(p):
        m = Gp.rows[i] if i < Gp.p else 0
        if i >= Gp.p - 1:
            m |= G.rows[i - (Gp.p - 1)] << (Gp.q - 1)
        rows.append(m)
    return OrderedBipartiteGraph(p, q, tuple(rows))


def _has_corner_k22(g: OrderedBipartiteGraph, top: bool) -> bool:
    if g.p < 2 or g.q < 2:
        return False
    if top:
        pair = ((1 << g.q) - 1) & ~((1 << (g.q - 2)) - 1)
        return g.rows[-1] & pair == pair and g.rows[-2] & pair == pair
    return g.rows[0] & 3 == 3 and g.rows[1] & 3 == 3


def concat2(
    G: OrderedBipartiteGraph, Gp: OrderedBipartiteGraph
) -> OrderedBipartiteGraph:
    """2-concatenation: G comes first; the operands share a K_{2,2} corner."""
    if not _has_corner_k22(G, top=True):
        raise ConstructionError(
            "left operand: last two rows x last two columns must form K_{2,2}"
        )
    if not _has_corner_k22(Gp, top=False):
        raise ConstructionError(
            "right operand: first two rows x first two columns must form K_{2,2}"
        )
    p = G.p + Gp.p - 2
    q = G.q + Gp.q - 2
    rows = []
    for i in range(p):
        m = G.rows[i] if i < G.p else 0
        if i >= G.p - 2:
            m |= Gp.rows[i - (G.p - 2)] << (G.q - 2)
        rows.append(m)
    return OrderedBipartiteGraph(p, q, tuple(rows))


def family_H(p: int, q: int, ell: int) -> OrderedBipartiteGraph:
    """Extremal K_{2,ell}-free family for the unbalanced case r < s.

    K_{1,q-q'+1} + (K_{e,ell-1} + r copies of K_{ell-1,ell-1}), all glued by
    concatenation; p x q with (ell-1)(p-1)+q edges.
    """
    dp = decompose(p, ell)
    dq = decompose(q, ell)
    if dp.r >= dq.r:
        raise DomainError(
            "family_H needs the row split strictly below the column split "
            "(use family_G when they are equal, or transpose the parameters)"
        )
    h = complete(dp.e, ell - 1)
    for _ in range(dp.r):
        h = concat(h, complete(ell - 1, ell - 1))
    qprime = (ell - 2) * (dp.r + 1) + 1
    return concat(complete(1, q - qprime + 1), h)


def family_G(p: int, q: int, ell: int) -> OrderedBipartiteGraph:
    """Extremal K_{2,ell}-free family for the balanced case r = s.

    K_{e,f} + r copies of K_{ell-1,ell-1}; p x q with r*ell*(ell-2)+e*f edges.
    """
    dp = decompose(p, ell)
    dq = decompose(q, ell)
    if dp.r != dq.r:
        raise DomainError(
            "family_G needs equal row and column splits (use family_H)"
        )
    g = complete(dp.e, dq.e)
    for _ in range(dp.r):
        g = concat(g, complete(ell - 1, ell - 1))
    return g


def family_K3(p: int, q: int, ell: int) -> OrderedBipartiteGraph:
    """K_{3,ell}-free family built from 2-concatenations.

    Unbalanced (r < s): K_{e,ell-1}, r copies of K_{ell-1,ell-1}, then
    K_{2,q-(ell-3)(r+1)}, with (ell-1)(p-2)+2q edges.  Balanced (r = s):
    K_{e,f} and r copies of K_{ell-1,ell-1}, with r(ell-3)(ell+1)+ef edges.
    Parameters with r > s are built transposed and flipped back.
    """
    dp = decompose(p, ell, "K3")
    dq = decompose(q, ell, "K3")
    if dp.r > dq.r:
        return family_K3(q, p, ell).transposed()
    if dp.r < dq.r:
        k = complete(dp.e, ell - 1)
        for _ in range(dp.r):
            k = concat2(k, complete(ell - 1, ell - 1))
        return concat2(k, complete(2, q - (ell - 3) * (dp.r + 1)))
    k = complete(dp.e, dq.e)
    for _ in range(dp.r):
        k = concat2(k, complete(ell - 1, ell - 1))
    return k


def graph_R(n: int) -> OrderedBipartiteGraph:
    """Near-matching host on parts of sizes n+1 and n+4.

    Rows: x, a_1..a_{n-1}, z.  Columns: b_1, y, b_2', b_2..b_{n-1}, b_{n-1}',
    t, b_n.  Edges a_i b_i and a_i b_{i+1}, plus xy, a_1 b_2', a_{n-1} b_{n-1}'
    and zt.
    """
    if n < 3:
        raise DomainError("graph_R is defined for n >= 3")
    p, q = n + 1, n + 4

    def col_b(j: int) -> int:
        if j == 1:
            return 0
        if j == n:
            return n + 3
        return j + 1

    col_y, col_b2p, col_bprime, col_t = 1, 2, n + 1, n + 2
    rows = [0] * p
    rows[0] |= 1 << col_y
    rows[n] |= 1 << col_t
    for i in range(1, n):
        rows[i] |= 1 << col_b(i)
        rows[i] |= 1 << col_b(i + 1)
    rows[1] |= 1 << col_b2p
    rows[n - 1] |= 1 << col_bprime
    return OrderedBipartiteGraph(p, q, tuple(rows))


def graph_S(n: int) -> OrderedBipartiteGraph:
    """Near-matching host on parts of sizes n+3 and n+3.

    Rows: x, a_1..a_{n-1}, a_{n-1}', z, a_n.  Columns: b_1, y, b_2',
    b_2..b_n, t.  Edges a_i b_i and a_i b_{i+1}, plus xy, a_1 b_2',
    a_{n-1}' b_n, zt and a_n b_n.
    """
    if n < 2:
        raise DomainError("graph_S is defined for n >= 2")
    p = q = n + 3

    def col_b(j: int) -> int:
        return 0 if j == 1 else j + 1

    col_y, col_b2p, col_t = 1, 2, n + 2
    rows = [0] * p
    rows[0] |= 1 << col_y
    for i in range(1, n):
        rows[i] |= 1 << col_b(i)
        rows[i] |= 1 << col_b(i + 1)
    rows[1] |= 1 << col_b2p
    rows[n] |= 1 << col_b(n)      # a_{n-1}' b_n
    rows[n + 1] |= 1 << col_t     # z t
    rows[n + 2] |= 1 << col_b(n)  # a_n b_n
    return OrderedBipartiteGraph(p, q, tuple(rows))


def m_formula(p: int, q: int, ell: int) -> int:
    """Closed-form maximum edge count of a K_{2,ell}-free p x q graph."""
    if p < 1 or q < 1:
        raise DomainError("m_formula needs p, q >= 1")
    if ell < 2:
        raise DomainError("m_formula needs ell >= 2")
    if ell == 2:
        return p + q - 1
    dp = decompose(p, ell)
    dq = decompose(q, ell)
    if dp.r < dq.r:
        return (ell - 1) * (p - 1) + q
    if dp.r > dq.r:
        return (ell - 1) * (q - 1) + p
    return dp.r * ell * (ell - 2) + dp.e * dq.e


def ex3_value(p: int, q: int, ell: int) -> tuple[int, str]:
    """Best known value for the K_{3,ell}-free maximum.

    Returns (value, "exact") in the unbalanced case and
    (value, "conjectured") in the balanced case.
    """
    if p < 2 or q < 2:
        raise DomainError("ex3_value needs p, q >= 2")
    if ell < 4:
        raise DomainError("ex3_value needs ell >= 4")
    dp = decompose(p, ell, "K3")
    dq = decompose(q, ell, "K3")
    if dp.r > dq.r:
        p, q = q, p
        dp, dq = dq, dp
    if dp.r < dq.r:
        return (ell - 1) * (p - 2) + 2 * q, "exact"
    return dp.r * (ell - 3) * (ell + 1) + dp.e * dq.e, "conjectured"


def bound_k2(p: int, q: int, ell: int) -> int:
    """Upper bound (ell-1)(p-1)+q, oriented to the smaller value."""
    if p < 1 or q < 1:
        raise DomainError("bound_k2 needs p, q >= 1")
    if ell < 2:
        raise DomainError("bound_k2 needs ell >= 2")
    return min((ell - 1) * (p - 1) + q, (ell - 1) * (q - 1) + p)


def bound_k3(p: int, q: int, ell: int) -> int:
    """Upper bound (ell-1)(p-2)+2q, oriented to the smaller value."""
    if p < 2 or q < 2:
        raise DomainError("bound_k3 needs p, q >= 2")
    if ell < 4:
        raise DomainError("bound_k3 needs ell >= 4")
    return min((ell - 1) * (p - 2) + 2 * q, (ell - 1) * (q - 2) + 2 * p)


def _delete_col(g: OrderedBipartiteGraph, j: int) -> OrderedBipartiteGraph:
    low = (1 << j) - 1
    rows = tuple(((m >> (j + 1)) << j) | (m & low) for m in g.rows)
    return OrderedBipartiteGraph(g.p, g.q - 1, rows)


def _delete_row(g: OrderedBipartiteGraph, i: int) -> OrderedBipartiteGraph:
    return OrderedBipartiteGraph(g.p - 1, g.q, g.rows[:i] + g.rows[i + 1 :])


def _insert_col(g: OrderedBipartiteGraph, j: int, edge_row: int) -> OrderedBipartiteGraph:
    low = (1 << j) - 1
    rows = [((m >> j) << (j + 1)) | (m & low) for m in g.rows]
    rows[edge_row] |= 1 << j
    return OrderedBipartiteGraph(g.p, g.q + 1, tuple(rows))


def relocate_pendant(
    G: OrderedBipartiteGraph, j_from: int, i: int
) -> OrderedBipartiteGraph:
    """Move a degree-1 column next to a doubly-covered position of row i.

    Deletes column j_from (which must have exactly one edge) and inserts a
    new column with a single edge in row i between the first pair of
    consecutive columns both adjacent to row i.  Sizes and edge count are
    preserved.
    """
    if not 0 <= j_from < G.q:
        raise MutationError(f"column index {j_from} out of range")
    if not 0 <= i < G.p:
        raise MutationError(f"row index {i} out of range")
    if G.col_degree(j_from) != 1:
        raise MutationError(
            f"column b{j_from + 1} has degree {G.col_degree(j_from)}, expected 1"
        )
    if G.q < 2:
        raise MutationError("graph has no other column to anchor the move")
    trimmed = _delete_col(G, j_from)
    row = trimmed.rows[i]
    pair = row & (row >> 1)
    if not pair:
        raise MutationError(
            f"row a{i + 1} has no two consecutive neighbours after the deletion"
        )
    j = (pair & -pair).bit_length() - 1
    return _insert_col(trimmed, j + 1, i)


def delete_saturated_row(
    G: OrderedBipartiteGraph, i: int, ell: int
) -> OrderedBipartiteGraph:
    """Delete a row of degree exactly ell-1 (extremality-preserving step)."""
    if not 0 <= i < G.p:
        raise MutationError(f"row index {i} out of range")
    if G.p < 2:
        raise MutationError("cannot delete the only row")
    deg = G.row_degree(i)
    if deg != ell - 1:
        raise MutationError(f"row a{i + 1} has degree {deg}, expected {ell - 1}")
    return _delete_row(G, i)
