"""Ordered bipartite graphs stored as row bitmasks, plus the order-8 symmetry group.

A graph with parts of sizes p and q is a p x q 0-1 matrix: bit j of
``rows[i]`` is set iff vertex a_{i+1} is adjacent to b_{j+1}.  Both linear
orders are implicit in the row/column indices.  All values are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class GridParseError(ValueError):
    """Raised when a grid or JSON serialization cannot be parsed."""


@dataclass(frozen=True)
class Transform:
    """One element of the order-8 symmetry group.

    Application order is fixed: reverse rows, then reverse columns, then
    transpose.  This makes the 8-element enumeration unambiguous.
    """

    reverse_rows: bool = False
    reverse_cols: bool = False
    transpose: bool = False


IDENTITY = Transform()

# Identity first; index order is the deterministic tie-break everywhere.
ALL_TRANSFORMS: tuple[Transform, ...] = tuple(
    Transform(rr, rc, tp)
    for tp in (False, True)
    for rr in (False, True)
    for rc in (False, True)
)


def _reverse_bits(mask: int, width: int) -> int:
    out = 0
    for j in range(width):
        if mask >> j & 1:
            out |= 1 << (width - 1 - j)
    return out


def _row_string(mask: int, width: int) -> str:
    return "".join("1" if mask >> j & 1 else "0" for j in range(width))


@dataclass(frozen=True)
class OrderedBipartiteGraph:
    p: int
    q: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise GridParseError("both parts must be nonempty (p >= 1 and q >= 1)")
        if len(self.rows) != self.p:
            raise GridParseError(f"expected {self.p} rows, got {len(self.rows)}")
        limit = 1 << self.q
        for i, mask in enumerate(self.rows):
            if not 0 <= mask < limit:
                raise GridParseError(f"row {i + 1} mask out of range for q={self.q}")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_adj(cls, adj) -> "OrderedBipartiteGraph":
        """Build from any nested sequence of truthy/falsy entries."""
        rows = tuple(
            sum(1 << j for j, cell in enumerate(row) if cell) for row in adj
        )
        if not rows:
            raise GridParseError("adjacency matrix has no rows")
        return cls(len(rows), len(adj[0]), rows)

    @classmethod
    def from_grid(cls, text: str) -> "OrderedBipartiteGraph":
        """Parse the grid format: a "p q" header, then p lines over {0,1}."""
        lines = text.splitlines()
        if not lines:
            raise GridParseError("empty input")
        header = lines[0].split()
        if len(header) != 2:
            raise GridParseError("line 1: expected header 'p q'")
        try:
            p, q = int(header[0]), int(header[1])
        except ValueError as exc:
            raise GridParseError(f"line 1: non-integer header: {lines[0]!r}") from exc
        if p < 1 or q < 1:
            raise GridParseError("line 1: p and q must be positive")
        if len(lines) - 1 < p:
            raise GridParseError(f"expected {p} rows, got {len(lines) - 1}")
        rows = []
        for i in range(p):
            line = lines[1 + i].strip()
            if len(line) != q:
                raise GridParseError(
                    f"line {i + 2}: expected {q} characters, got {len(line)}"
                )
            mask = 0
            for j, ch in enumerate(line):
                if ch == "1":
                    mask |= 1 << j
                elif ch != "0":
                    raise GridParseError(
                        f"line {i + 2}, column {j + 1}: illegal character {ch!r}"
                    )
            rows.append(mask)
        return cls(p, q, tuple(rows))

    @classmethod
    def from_json(cls, text: str) -> "OrderedBipartiteGraph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GridParseError(f"invalid JSON: {exc}") from exc
        try:
            p, q, rows = obj["p"], obj["q"], obj["rows"]
        except (TypeError, KeyError) as exc:
            raise GridParseError("JSON graph needs keys 'p', 'q', 'rows'") from exc
        body = "\n".join(rows)
        return cls.from_grid(f"{p} {q}\n{body}")

    # -- serialization -----------------------------------------------------

    def to_grid(self) -> str:
        lines = [f"{self.p} {self.q}"]
        lines.extend(_row_string(mask, self.q) for mask in self.rows)
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "q": self.q,
                "rows": [_row_string(mask, self.q) for mask in self.rows],
            }
        )

    # -- queries -----------------------------------------------------------

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(mask.bit_count() for mask in self.rows)

    def row_degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def col_mask(self, j: int) -> int:
        """Bitmask over rows of column j."""
        return sum((self.rows[i] >> j & 1) << i for i in range(self.p))

    def col_degree(self, j: int) -> int:
        return sum(self.rows[i] >> j & 1 for i in range(self.p))

    @property
    def adj(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(bool(mask >> j & 1) for j in range(self.q)) for mask in self.rows
        )

    def transposed(self) -> "OrderedBipartiteGraph":
        return OrderedBipartiteGraph(
            self.q, self.p, tuple(self.col_mask(j) for j in range(self.q))
        )

    def _key(self) -> tuple[int, int, str]:
        return (self.p, self.q, "".join(_row_string(m, self.q) for m in self.rows))


def apply_transform(g: OrderedBipartiteGraph, t: Transform) -> OrderedBipartiteGraph:
    """Apply reverse-rows, reverse-cols, then transpose, in that order."""
    rows = list(g.rows)
    if t.reverse_rows:
        rows.reverse()
    if t.reverse_cols:
        rows = [_reverse_bits(m, g.q) for m in rows]
    out = OrderedBipartiteGraph(g.p, g.q, tuple(rows))
    if t.transpose:
        out = out.transposed()
    return out


def canonical_form(
    g: OrderedBipartiteGraph,
) -> tuple[OrderedBipartiteGraph, Transform]:
    """Representative of the equivalence class with the lexicographically
    smallest (p, q, row-major bit string) key, plus one transform reaching it."""
    best = None
    best_t = None
    best_key = None
    for t in ALL_TRANSFORMS:
        cand = apply_transform(g, t)
        key = cand._key()
        if best_key is None or key < best_key:
            best, best_t, best_key = cand, t, key
    return best, best_t
