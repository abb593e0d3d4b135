"""Interval-minor containment: greedy decision procedure, brute-force oracle,
and witness verification.

A pattern H is an interval minor of G iff the rows of G split into rows(H)
nonempty consecutive intervals and the columns into cols(H) intervals such
that every 1-entry of H finds at least one edge of G inside its block.  With
``allow_transpose`` both H and its transpose are tested, matching the
convention that a matrix and its transpose are the same pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graphs import OrderedBipartiteGraph


@dataclass(frozen=True)
class Witness:
    """Row/column interval partitions certifying a containment.

    Blocks are half-open [start, end) index intervals on G.  ``transposed``
    means the pattern was matched as its transpose.
    """

    transposed: bool
    row_blocks: tuple[tuple[int, int], ...]
    col_blocks: tuple[tuple[int, int], ...]


def parse_pattern(text: str) -> OrderedBipartiteGraph:
    """Expand the "Kr,s" shorthand to the all-ones r x s graph."""
    if not text.startswith("K"):
        raise ValueError(f"not a pattern shorthand: {text!r}")
    try:
        r_txt, s_txt = text[1:].split(",")
        r, s = int(r_txt), int(s_txt)
    except ValueError as exc:
        raise ValueError(f"not a pattern shorthand: {text!r}") from exc
    if r < 1 or s < 1:
        raise ValueError("pattern sides must be positive")
    full = (1 << s) - 1
    return OrderedBipartiteGraph(r, s, (full,) * r)


@lru_cache(maxsize=None)
def _compositions(n: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All splittings of range(n) into k nonempty consecutive intervals."""
    out = []
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        out.append(tuple((bounds[i], bounds[i + 1]) for i in range(k)))
    return tuple(out)


@lru_cache(maxsize=None)
def _orientations(H: OrderedBipartiteGraph, allow_transpose: bool):
    """Per orientation: (transposed, r, s, needs) where needs[c] is the bitmask
    of row-block indices that must see an edge in column block c."""
    orients = [(False, H)]
    if allow_transpose:
        ht = H.transposed()
        if ht != H:
            orients.append((True, ht))
    data = []
    for flag, pat in orients:
        needs = tuple(
            sum(1 << i for i in range(pat.p) if pat.rows[i] >> c & 1)
            for c in range(pat.q)
        )
        data.append((flag, pat.p, pat.q, needs))
    return tuple(data)


def _greedy_find(rows, p, q, r, s, needs):
    """Search over row compositions with greedy minimal column blocks.

    Greedy is exchange-optimal: block requirements are monotone under
    interval growth, so ending each column block as early as possible leaves
    a superset of columns for the rest.
    """
    if r > p or s > q:
        return None
    for row_blocks in _compositions(p, r):
        block_or = []
        for a, b in row_blocks:
            m = 0
            for i in range(a, b):
                m |= rows[i]
            block_or.append(m)
        col_blocks = []
        start = 0
        feasible = True
        for c in range(s - 1):
            need = needs[c]
            limit = q - (s - 1 - c)  # leave room for the remaining blocks
            sat = 0
            closed = False
            for j in range(start, limit):
                if need & ~sat:
                    for i in range(r):
                        if need >> i & 1 and block_or[i] >> j & 1:
                            sat |= 1 << i
                if not (need & ~sat):
                    col_blocks.append((start, j + 1))
                    start = j + 1
                    closed = True
                    break
            if not closed:
                feasible = False
                break
        if not feasible:
            continue
        need = needs[s - 1]
        sat = 0
        for j in range(start, q):
            if not (need & ~sat):
                break
            for i in range(r):
                if need >> i & 1 and block_or[i] >> j & 1:
                    sat |= 1 << i
        if not (need & ~sat):
            col_blocks.append((start, q))
            return tuple(row_blocks), tuple(col_blocks)
    return None


def _contains_rows(rows, p: int, q: int, odata) -> bool:
    """Boolean fast path over precomputed orientation data (search hot loop)."""
    for _flag, r, s, needs in odata:
        if _greedy_find(rows, p, q, r, s, needs) is not None:
            return True
    return False


def contains(
    G: OrderedBipartiteGraph,
    H: OrderedBipartiteGraph,
    allow_transpose: bool = True,
) -> Witness | None:
    """Decide interval-minor containment; return a verifying witness or None."""
    for flag, r, s, needs in _orientations(H, allow_transpose):
        hit = _greedy_find(G.rows, G.p, G.q, r, s, needs)
        if hit is not None:
            return Witness(flag, hit[0], hit[1])
    return None


def contains_bruteforce(
    G: OrderedBipartiteGraph,
    H: OrderedBipartiteGraph,
    allow_transpose: bool = True,
) -> Witness | None:
    """Oracle enumerating ALL row compositions x ALL column compositions.

    Agrees with :func:`contains` as a predicate; intended for small sizes.
    """
    rows = G.rows
    for flag, r, s, needs in _orientations(H, allow_transpose):
        if r > G.p or s > G.q:
            continue
        for row_blocks in _compositions(G.p, r):
            block_or = []
            for a, b in row_blocks:
                m = 0
                for x in range(a, b):
                    m |= rows[x]
                block_or.append(m)
            for col_blocks in _compositions(G.q, s):
                ok = True
                for c, (ca, cb) in enumerate(col_blocks):
                    need = needs[c]
                    if not need:
                        continue
                    colmask = (1 << cb) - (1 << ca)
                    for i in range(r):
                        if need >> i & 1 and not block_or[i] & colmask:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return Witness(flag, row_blocks, col_blocks)
    return None


def _blocks_error(blocks, n: int, what: str) -> str | None:
    if not blocks:
        return f"{what}:empty-partition"
    pos = 0
    for a, b in blocks:
        if a != pos:
            return f"{what}:gap-or-overlap"
        if b <= a:
            return f"{what}:empty-block"
        pos = b
    if pos != n:
        return f"{what}:incomplete-cover"
    return None


def witness_error(
    G: OrderedBipartiteGraph, H: OrderedBipartiteGraph, w: Witness
) -> str | None:
    """Reason the witness fails to certify contains(G, H), or None if valid."""
    pat = H.transposed() if w.transposed else H
    if len(w.row_blocks) != pat.p:
        return "row-blocks:count"
    if len(w.col_blocks) != pat.q:
        return "col-blocks:count"
    err = _blocks_error(w.row_blocks, G.p, "row-blocks")
    if err:
        return err
    err = _blocks_error(w.col_blocks, G.q, "col-blocks")
    if err:
        return err
    for i in range(pat.p):
        ra, rb = w.row_blocks[i]
        for c in range(pat.q):
            if not pat.rows[i] >> c & 1:
                continue
            ca, cb = w.col_blocks[c]
            colmask = (1 << cb) - (1 << ca)
            if not any(G.rows[x] & colmask for x in range(ra, rb)):
                return f"block({i + 1},{c + 1}):no-edge"
    return None


def verify_witness(
    G: OrderedBipartiteGraph, H: OrderedBipartiteGraph, w: Witness
) -> bool:
    try:
        return witness_error(G, H, w) is None
    except (IndexError, TypeError, ValueError):
        return False
