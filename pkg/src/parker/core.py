"""3x3 grids, line-sum validation, and the dihedral symmetry group.

Grid cells are stored row-major as (a, b, c, d, e, f, g, h, i).  A magic
square of squares requires the 3 rows, 3 columns, and both diagonals to share
one total, all 9 entries distinct, and every entry a square in the carrier.
The 7-cell hourglass variant keeps the top and bottom rows plus the three
lines through the center and has 5 sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Carrier

SQUARE_LINE_LABELS = ("row0", "row1", "row2", "col0", "col1", "col2",
                      "diag", "anti")
_SQUARE_LINES = ((0, 1, 2), (3, 4, 5), (6, 7, 8),
                 (0, 3, 6), (1, 4, 7), (2, 5, 8),
                 (0, 4, 8), (2, 4, 6))

# Hourglass cells in order (a, b, c, e, g, h, i); lines are the top row,
# bottom row, and the three center lines a-e-i, b-e-h, c-e-g.
HOURGLASS_LINE_LABELS = ("top", "bottom", "center-diag", "center-col",
                         "center-anti")
_HOURGLASS_LINES = ((0, 1, 2), (4, 5, 6), (0, 3, 6), (1, 3, 5), (2, 3, 4))


def _build_dihedral_perms():
    def rot(perm):  # rotate 90 degrees clockwise
        return tuple(perm[3 * (2 - c) + r] for r in range(3) for c in range(3))

    def flip(perm):  # transpose
        return tuple(perm[3 * c + r] for r in range(3) for c in range(3))

    perms = []
    p = tuple(range(9))
    for _ in range(4):
        perms.append(p)
        perms.append(flip(p))
        p = rot(p)
    return tuple(perms)


DIHEDRAL_PERMS = _build_dihedral_perms()


@dataclass(frozen=True)
class Grid3:
    """A full 3x3 grid of carrier elements, row-major."""

    cells: tuple[int, ...]

    def __post_init__(self):
        if len(self.cells) != 9:
            raise ValueError(f"grid needs 9 cells, got {len(self.cells)}")

    @classmethod
    def from_rows(cls, rows) -> "Grid3":
        cells = tuple(x for row in rows for x in row)
        return cls(cells)

    def rows(self):
        c = self.cells
        return (c[0:3], c[3:6], c[6:9])


@dataclass(frozen=True)
class SquareTuple:
    """The nine squared entries of a magic-square candidate, row-major."""

    entries: tuple[int, ...]
    carrier: Carrier

    def __post_init__(self):
        if len(self.entries) != 9:
            raise ValueError(f"need 9 entries, got {len(self.entries)}")


@dataclass(frozen=True)
class ParamTriple:
    """The three parameters of the classical magic-square construction."""

    A: int
    B: int
    C: int


@dataclass(frozen=True)
class ValidationReport:
    """Line sums and the derived verdict for a square or hourglass candidate."""

    line_sums: tuple[int, ...]
    line_labels: tuple[str, ...]
    common_total: int | None
    sums_equal_count: int
    distinct_entries: int
    all_entries_square: bool
    is_magic: bool

    def modal_total(self) -> int:
        """The most frequent line sum (smallest such value on ties)."""
        counts = {v: self.line_sums.count(v) for v in set(self.line_sums)}
        top = max(counts.values())
        return min(v for v, c in counts.items() if c == top)

    def mismatched_lines(self) -> list[tuple[str, int]]:
        """Labels and sums of the lines disagreeing with the modal total."""
        mode = self.modal_total()
        return [(lbl, s) for lbl, s in zip(self.line_labels, self.line_sums)
                if s != mode]


def _validate(cells, carrier, lines, labels, need_distinct):
    cells = tuple(carrier.check_element(x) for x in cells)
    add = carrier.add
    sums = tuple(add(add(cells[i], cells[j]), cells[k]) for i, j, k in lines)
    counts = {}
    for s in sums:
        counts[s] = counts.get(s, 0) + 1
    equal = max(counts.values())
    distinct = len(set(cells))
    all_square = all(carrier.is_square(x) for x in cells)
    magic = equal == len(lines) and distinct == need_distinct and all_square
    total = sums[0] if equal == len(lines) else None
    return ValidationReport(sums, labels, total, equal, distinct, all_square, magic)


def validate_square(grid, carrier: Carrier) -> ValidationReport:
    """Check the 8 line sums, distinctness, and squareness of a 3x3 grid.

    Pure function; accepts a Grid3, SquareTuple, or a plain 9-sequence of
    carrier encodings (the squared values, not their roots).
    """
    cells = _cells_of(grid, 9)
    return _validate(cells, carrier, _SQUARE_LINES, SQUARE_LINE_LABELS, 9)


def validate_hourglass(cells, carrier: Carrier) -> ValidationReport:
    """Check the 5 hourglass sums over cells given as (a, b, c, e, g, h, i)."""
    cells = _cells_of(cells, 7)
    return _validate(cells, carrier, _HOURGLASS_LINES, HOURGLASS_LINE_LABELS, 7)


def _cells_of(obj, n):
    if isinstance(obj, Grid3):
        cells = obj.cells
    elif isinstance(obj, SquareTuple):
        cells = obj.entries
    else:
        cells = tuple(obj)
    if len(cells) != n:
        raise ValueError(f"expected {n} cells, got {len(cells)}")
    return cells


def magic_from_params(params, carrier: Carrier) -> Grid3:
    """The magic (not necessarily square-entried) grid for parameters A, B, C.

    Every row, column, and diagonal of the result sums to 3*C.  Accepts a
    ParamTriple or any 3-sequence of encodings.
    """
    if isinstance(params, ParamTriple):
        A, B, C = params.A, params.B, params.C
    else:
        A, B, C = params
    add, sub = carrier.add, carrier.sub
    cells = (
        add(C, A), sub(sub(C, A), B), add(C, B),
        add(sub(C, A), B), C, sub(add(C, A), B),
        sub(C, B), add(add(C, A), B), sub(C, A),
    )
    return Grid3(cells)


def dihedral_orbit(t):
    """The orbit of a 9-tuple under the 8 symmetries of the square grid."""
    if isinstance(t, SquareTuple):
        entries = t.entries
        return {SquareTuple(tuple(entries[i] for i in perm), t.carrier)
                for perm in DIHEDRAL_PERMS}
    entries = tuple(t)
    return {tuple(entries[i] for i in perm) for perm in DIHEDRAL_PERMS}


def dihedral_canonical(entries: tuple[int, ...]) -> tuple[int, ...]:
    """The lexicographically smallest dihedral image, for orbit counting."""
    return min(tuple(entries[i] for i in perm) for perm in DIHEDRAL_PERMS)
