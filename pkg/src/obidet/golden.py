"""Embedded golden straightening identities.

Four classical worked cases, one per rewrite family: a two-column row
violation, and one violation of each orthogonal standardness condition.
Every certificate was generated by this library and verified exactly:
the first as a polynomial identity, the others by evaluation at ten
rational group points per case (both determinant components).
"""

from __future__ import annotations

from dataclasses import dataclass

from .tableaux import Tableau
from .gl_straighten import Combination, two_column_straighten
from .on_straighten import fix_os1, fix_os2, fix_os3


@dataclass(frozen=True)
class GoldenCase:
    name: str
    kind: str          # GL | OS1 | OS2 | OS3
    n: int
    left: str
    right: str
    witness: int
    certificate: str

    def inputs(self) -> tuple[Tableau, Tableau]:
        return Tableau.parse(self.left), Tableau.parse(self.right)

    def expected(self) -> Combination:
        return Combination.parse_certificate(self.certificate)

    def compute(self) -> Combination:
        s, t = self.inputs()
        if self.kind == "GL":
            _, head, drop = two_column_straighten(s, t)
            return head + drop
        fixer = {"OS1": fix_os1, "OS2": fix_os2, "OS3": fix_os3}[self.kind]
        return fixer(s, t, self.witness, "ON", self.n)


GOLDEN_CASES = (
    GoldenCase(
        name="two-column row violation",
        kind="GL",
        n=6,
        left="1 1; 2 2b; 3",
        right="1b 1; 2b 2; 3",
        witness=2,
        certificate=(
            "-1\t0\t1 1; 2b; 2; 3\t1 1b; 2b; 2; 3\n"
            "-1\t0\t1 1; 2b; 2; 3\t1b 2b; 1; 2; 3\n"
            "-1\t0\t1 1; 2b; 2; 3\t1b 3; 1; 2b; 2\n"
            "1\t0\t1 1; 2b 2; 3\t1b 1; 2b 2; 3\n"
            "-1\t0\t1 1; 2b 3; 2\t1b 1; 2b 2; 3"
        ),
    ),
    GoldenCase(
        name="count violation on O(6)",
        kind="OS1",
        n=6,
        left="1b 2b; 2b 2; 2",
        right="1 2; 2b 3; 3b",
        witness=2,
        certificate=(
            "-1\t0\t1b\t1\n"
            "1\t0\t1b 1b; 1\t1 2; 2b\n"
            "1\t0\t1b 1b; 1\t1 3; 3b\n"
            "1\t0\t1b 2b; 2 3b; 3\t1 2; 2b 3; 3b\n"
            "1\t0\t1b 2b; 2 3; 3b\t1 2; 2b 3; 3b\n"
            "1\t0\t1b 2; 2b 3b; 3\t1 2; 2b 3; 3b\n"
            "1\t0\t1b 2; 2b 3; 3b\t1 2; 2b 3; 3b\n"
            "-1\t0\t1b 3b; 3b 3; 3\t1 2; 2b 3; 3b"
        ),
    ),
    GoldenCase(
        name="unprotected first-column entry on O(7)",
        kind="OS2",
        n=7,
        left="1b 2b; 1; 2",
        right="1 2; 2b; 2",
        witness=2,
        certificate=(
            "-1\t0\t1b; 1\t1; 2\n"
            "-1\t0\t1b 2; 1; 2b\t1 2; 2b; 2\n"
            "-1\t0\t1b 3b; 1; 3\t1 2; 2b; 2\n"
            "-1\t0\t1b 3; 1; 3b\t1 2; 2b; 2\n"
            "-1\t0\t1b 0; 1; 0\t1 2; 2b; 2"
        ),
    ),
    GoldenCase(
        name="unprotected pair row on O(6)",
        kind="OS3",
        n=6,
        left="1 1; 2b 2; 3",
        right="1b 1; 2b 2; 2",
        witness=2,
        certificate=(
            "1/2\t0\t1 1; 3\t1b 1; 2\n"
            "1/2\t0\t1 1; 3\t2b 2; 2\n"
            "1/2\t0\t1 1; 2b; 2; 3\t1b 2; 1; 2b; 2\n"
            "1/2\t0\t1 1; 2b 3; 2\t1b 1; 2b 2; 2\n"
            "-1/2\t0\t1 1; 3b 3; 3\t1b 1; 2b 2; 2"
        ),
    ),
)
