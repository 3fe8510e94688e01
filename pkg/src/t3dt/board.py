"""3x3 board state, win detection, and the cell geometry the move rules are phrased in.

Cells are indexed 0..8 row-major.  The 1-based (row, col) form only appears at
display boundaries (``cell_label``).  Boards are immutable values; every
function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import dist

X = "X"
O = "O"
EMPTY = "."

XWIN = "XWin"
OWIN = "OWin"
DRAW = "Draw"
ONGOING = "Ongoing"

CORNER = "corner"
EDGE = "edge"
CENTRE = "centre"

CORNERS = (0, 2, 6, 8)
EDGES = (1, 3, 5, 7)
CENTRE_CELL = 4

LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),   # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),   # columns
    (0, 4, 8), (2, 4, 6),              # diagonals
)

LINE_MASKS = tuple(sum(1 << c for c in line) for line in LINES)
FULL_MASK = 0x1FF

# mask -> True if the mask contains a completed line
WIN_TABLE = tuple(
    any(m & lm == lm for lm in LINE_MASKS) for m in range(512)
)

_DIAG_OPPOSITE = {0: 8, 8: 0, 2: 6, 6: 2}
_OPPOSITE_EDGE = {1: 7, 7: 1, 3: 5, 5: 3}


class BoardError(ValueError):
    """Raised for malformed or unreachable board states."""


def opponent(mark: str) -> str:
    if mark == X:
        return O
    if mark == O:
        return X
    raise BoardError(f"not a mark: {mark!r}")


def rc(cell: int) -> tuple[int, int]:
    """0-based (row, col) of a cell index."""
    if not 0 <= cell <= 8:
        raise BoardError(f"cell index out of range: {cell}")
    return divmod(cell, 3)


def cell_label(cell: int) -> str:
    """1-based (row,col) display form, e.g. 6 -> '(3,1)'."""
    r, c = rc(cell)
    return f"({r + 1},{c + 1})"


def classify(cell: int) -> str:
    """Partition a cell into corner / edge / centre."""
    if not 0 <= cell <= 8:
        raise BoardError(f"cell index out of range: {cell}")
    if cell == CENTRE_CELL:
        return CENTRE
    if cell in CORNERS:
        return CORNER
    return EDGE


def chebyshev(a: int, b: int) -> int:
    ra, ca = rc(a)
    rb, cb = rc(b)
    return max(abs(ra - rb), abs(ca - cb))


def adjacent(a: int, b: int) -> bool:
    """King-move adjacency between two cells."""
    return chebyshev(a, b) == 1


def diag_opposite(corner: int) -> int:
    try:
        return _DIAG_OPPOSITE[corner]
    except KeyError:
        raise BoardError(f"not a corner: {corner}") from None


def corners_adjacent_to(edge: int) -> frozenset[int]:
    if classify(edge) != EDGE:
        raise BoardError(f"not an edge: {edge}")
    return frozenset(c for c in CORNERS if adjacent(c, edge))


def nearer_edges(edge: int) -> frozenset[int]:
    """The two edges at king-move distance 1 from the given edge."""
    if classify(edge) != EDGE:
        raise BoardError(f"not an edge: {edge}")
    return frozenset(e for e in EDGES if adjacent(e, edge))


def opposite_edge(edge: int) -> int:
    try:
        return _OPPOSITE_EDGE[edge]
    except KeyError:
        raise BoardError(f"not an edge: {edge}") from None


def shared_corner(edge_a: int, edge_b: int) -> int:
    """The unique corner adjacent to both edges (the centre is never returned)."""
    if classify(edge_a) != EDGE or classify(edge_b) != EDGE:
        raise BoardError(f"not edges: {edge_a}, {edge_b}")
    common = corners_adjacent_to(edge_a) & corners_adjacent_to(edge_b)
    if len(common) != 1:
        raise BoardError(f"edges {edge_a}, {edge_b} share no corner")
    return next(iter(common))


def min_distance_corners(anchors, candidates) -> frozenset[int]:
    """Candidates minimising the summed Euclidean distance to all anchors.

    Ties are kept: the full argmin set is returned.
    """
    candidates = frozenset(candidates)
    if not candidates:
        return candidates
    anchor_pts = [rc(a) for a in anchors]

    def total(c: int) -> float:
        p = rc(c)
        return sum(dist(p, q) for q in anchor_pts)

    best = min(total(c) for c in candidates)
    return frozenset(c for c in candidates if total(c) - best < 1e-9)


@dataclass(frozen=True)
class Board:
    """Immutable 9-cell board with the side to move and the first mover."""

    cells: tuple[str, ...]
    to_move: str = X
    first_mover: str = X

    @classmethod
    def empty(cls, first_mover: str = X) -> "Board":
        return cls(cells=(EMPTY,) * 9, to_move=first_mover, first_mover=first_mover)

    @classmethod
    def from_string(cls, text: str, to_move: str | None = None,
                    first_mover: str | None = None) -> "Board":
        """Parse the 9-character row-major wire form, e.g. 'OOX.X..O.'."""
        if len(text) != 9 or any(ch not in (X, O, EMPTY) for ch in text):
            raise BoardError(f"bad board string: {text!r}")
        cells = tuple(text)
        nx = cells.count(X)
        no = cells.count(O)
        if first_mover is None:
            # More marks means that side moved first; equal counts default to X.
            first_mover = X if nx >= no else O
        if to_move is None:
            to_move = first_mover if nx == no else opponent(first_mover)
        board = cls(cells=cells, to_move=to_move, first_mover=first_mover)
        validate(board)
        return board

    def to_string(self) -> str:
        return "".join(self.cells)

    def mask(self, mark: str) -> int:
        m = 0
        for i, ch in enumerate(self.cells):
            if ch == mark:
                m |= 1 << i
        return m

    def empties(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.cells) if ch == EMPTY)

    def move(self, cell: int) -> "Board":
        """Place the side to move at ``cell`` and flip the turn."""
        if not 0 <= cell <= 8:
            raise BoardError(f"cell index out of range: {cell}")
        if self.cells[cell] != EMPTY:
            raise BoardError(f"cell {cell} is occupied")
        cells = self.cells[:cell] + (self.to_move,) + self.cells[cell + 1:]
        return Board(cells=cells, to_move=opponent(self.to_move),
                     first_mover=self.first_mover)

    def render(self) -> str:
        rows = []
        for r in range(3):
            rows.append(" " + " | ".join(self.cells[3 * r + c] for c in range(3)) + " ")
            if r < 2:
                rows.append("---+---+---")
        return "\n".join(rows)


def validate(board: Board) -> None:
    """Reject boards that no legal game can reach."""
    nx = board.cells.count(X)
    no = board.cells.count(O)
    first, second = board.first_mover, opponent(board.first_mover)
    counts = {X: nx, O: no}
    diff = counts[first] - counts[second]
    if diff not in (0, 1):
        raise BoardError(
            f"mark counts X={nx} O={no} unreachable with {first} moving first")
    expected_to_move = first if diff == 0 else second
    if board.to_move != expected_to_move:
        raise BoardError(f"to_move={board.to_move} inconsistent with counts")
    if WIN_TABLE[board.mask(X)] and WIN_TABLE[board.mask(O)]:
        raise BoardError("both players have completed lines")


def outcome(board: Board) -> str:
    """XWin / OWin / Draw / Ongoing for a reachable board."""
    validate(board)
    if WIN_TABLE[board.mask(X)]:
        return XWIN
    if WIN_TABLE[board.mask(O)]:
        return OWIN
    if EMPTY not in board.cells:
        return DRAW
    return ONGOING


def winning_cells_masks(own: int, other: int) -> tuple[int, ...]:
    """Empty cells completing a line for the ``own`` bitmask. Ascending order."""
    out = []
    occ = own | other
    for lm in LINE_MASKS:
        if other & lm:
            continue
        missing = lm & ~own
        if missing and missing & (missing - 1) == 0 and not occ & missing:
            cell = missing.bit_length() - 1
            if cell not in out:
                out.append(cell)
    out.sort()
    return tuple(out)


def winning_moves(board: Board, mark: str) -> frozenset[int]:
    """Empty cells where ``mark`` completes a triplet."""
    return frozenset(winning_cells_masks(board.mask(mark), board.mask(opponent(mark))))


def fork_moves(board: Board, mark: str) -> frozenset[int]:
    """Empty cells where placing ``mark`` opens two or more winning moves."""
    own = board.mask(mark)
    other = board.mask(opponent(mark))
    out = []
    avail = FULL_MASK & ~(own | other)
    while avail:
        bit = avail & -avail
        avail ^= bit
        if len(winning_cells_masks(own | bit, other)) >= 2:
            out.append(bit.bit_length() - 1)
    return frozenset(out)


def _build_d4_perms() -> tuple[tuple[int, ...], ...]:
    def rot(c):
        r, k = divmod(c, 3)
        return k * 3 + (2 - r)

    def mirror(c):
        r, k = divmod(c, 3)
        return r * 3 + (2 - k)

    perms = []
    f = tuple(range(9))
    for _ in range(4):
        perms.append(f)
        f = tuple(rot(c) for c in f)
    for p in list(perms):
        perms.append(tuple(mirror(c) for c in p))
    return tuple(perms)


# Each entry maps a cell index to its image; identity is element 0.
D4_PERMS = _build_d4_perms()


def transform_cell(perm: tuple[int, ...], cell: int) -> int:
    return perm[cell]


def transform_board(board: Board, perm: tuple[int, ...]) -> Board:
    cells = [EMPTY] * 9
    for i, ch in enumerate(board.cells):
        cells[perm[i]] = ch
    return Board(cells=tuple(cells), to_move=board.to_move,
                 first_mover=board.first_mover)


def d4_transforms(board: Board) -> list[Board]:
    """The 8 images of a board under the symmetries of the square."""
    return [transform_board(board, p) for p in D4_PERMS]
