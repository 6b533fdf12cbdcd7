"""Graded algebra of 3x3 matrices over Q(j).

The grade of a matrix is read off its support pattern:

* grade 0: diagonal entries only;
* grade 1: entries only at (1,2), (2,3), (3,1)  (1-based);
* grade 2: entries only at (1,3), (2,1), (3,2).

The three patterns partition the nine cells, so every matrix decomposes
uniquely into graded parts.  The cyclic step matrix ``eta`` (ones at the
grade-1 pattern) satisfies ``eta**3 == identity`` and induces the
differential ``d(B) = eta B - j^b B eta`` on a part of grade b, which is
nilpotent of order three: d(d(d(B))) == 0 for every B.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, Scalar, ZERO, jpow, scalar

Cell = tuple[int, int]

_PATTERNS: dict[int, tuple[Cell, ...]] = {
    0: ((0, 0), (1, 1), (2, 2)),
    1: ((0, 1), (1, 2), (2, 0)),
    2: ((0, 2), (1, 0), (2, 1)),
}

_CELL_GRADE = {cell: g for g, cells in _PATTERNS.items() for cell in cells}


class GradedMatrix:
    """An immutable 3x3 matrix of Scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Scalar]]) -> None:
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a graded matrix has exactly 3 rows of 3 entries")
        self.rows: tuple[tuple[Scalar, ...], ...] = tuple(tuple(r) for r in rows)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[object]]) -> GradedMatrix:
        conv = []
        for row in rows:
            conv.append(
                [e if isinstance(e, Scalar) else scalar(e) for e in row]  # type: ignore[arg-type]
            )
        return GradedMatrix(conv)

    @staticmethod
    def zero() -> GradedMatrix:
        return GradedMatrix([[ZERO] * 3 for _ in range(3)])

    @staticmethod
    def identity() -> GradedMatrix:
        return GradedMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        return GradedMatrix(
            [
                [self.rows[i][k] + other.rows[i][k] for k in range(3)]
                for i in range(3)
            ]
        )

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + other.scale(-ONE)

    def __neg__(self) -> GradedMatrix:
        return self.scale(-ONE)

    def scale(self, s: Scalar) -> GradedMatrix:
        return GradedMatrix([[e * s for e in row] for row in self.rows])

    def __mul__(self, other: GradedMatrix) -> GradedMatrix:
        rows = []
        for i in range(3):
            row = []
            for k in range(3):
                acc = ZERO
                for l in range(3):
                    acc = acc + self.rows[i][l] * other.rows[l][k]
                row.append(acc)
            rows.append(row)
        return GradedMatrix(rows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def grade_of(self) -> int | str:
        """Grade by support pattern; the zero matrix reports grade 0."""
        support = {
            (i, k)
            for i in range(3)
            for k in range(3)
            if not self.rows[i][k].is_zero()
        }
        if not support:
            return 0
        grades = {_CELL_GRADE[cell] for cell in support}
        return grades.pop() if len(grades) == 1 else "mixed"

    def graded_parts(self) -> dict[int, GradedMatrix]:
        """The unique decomposition into (up to three) homogeneous parts."""
        parts: dict[int, GradedMatrix] = {}
        for g, cells in _PATTERNS.items():
            if any(not self.rows[i][k].is_zero() for i, k in cells):
                rows = [[ZERO] * 3 for _ in range(3)]
                for i, k in cells:
                    rows[i][k] = self.rows[i][k]
                parts[g] = GradedMatrix(rows)
        return parts

    def __str__(self) -> str:
        from .render import render_matrix

        return render_matrix(self)

    def __repr__(self) -> str:
        return f"GradedMatrix({self.rows!r})"


ETA = GradedMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def grade_of(m: GradedMatrix) -> int | str:
    return m.grade_of()


def graded_commutator(b: GradedMatrix, c: GradedMatrix) -> GradedMatrix:
    """BC - j^(bc) CB for homogeneous B, C; mixed inputs are rejected."""
    gb, gc = b.grade_of(), c.grade_of()
    if gb == "mixed" or gc == "mixed":
        raise ValueError("graded commutator requires homogeneous matrices")
    return b * c - (c * b).scale(jpow(gb * gc))  # type: ignore[operator]


def eta_differential(b: GradedMatrix) -> GradedMatrix:
    """d(B) = eta B - j^g B eta, extended linearly over graded parts."""
    out = GradedMatrix.zero()
    for g, part in b.graded_parts().items():
        out = out + (ETA * part - (part * ETA).scale(jpow(g)))
    return out
