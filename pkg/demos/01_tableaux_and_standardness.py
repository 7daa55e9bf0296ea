"""Tour of the combinatorial layer: letters, tableaux, standardness.

Run with:  python3 demos/01_tableaux_and_standardness.py
"""

from obidet import (
    Tableau,
    alphabet,
    basic_tableau,
    conjugate,
    dominance_lt,
    enumerate_on_standard,
    on_standard_report,
)

# The alphabet interleaves barred and unbarred letters; odd sizes get a
# trailing zero letter.
print("alphabet(6):", " < ".join(str(x) for x in alphabet(6)))
print("alphabet(7):", " < ".join(str(x) for x in alphabet(7)))

# Tableaux parse from a compact row-based text form: rows split on ';',
# entries on spaces, and 'kb' denotes the barred letter k.
t = Tableau.parse("1b 2b; 1 2; 2")
print("\ntableau:", t.format())
print("shape:", t.shape, "columns:", [[str(x) for x in c] for c in t.columns()])
print("conjugate shape:", conjugate(t.shape))

# Orthogonal standardness layers extra counting conditions on top of the
# usual row/column monotonicity.  The report records every violation with
# its witness index.
bad = Tableau.parse("1b 2b; 2b 2; 2")
report = on_standard_report(bad, 6)
print("\ncandidate:", bad.format())
print("standard on O(6)?", report.standard)
for v in report.violations:
    print("  violation:", v.kind, "at index", v.witness)
print("entry counts: alpha =", report.alpha, "beta =", report.beta)

# A protected entry saves an otherwise identical configuration: here the
# final 2 in the first column sits below its barred partner.
good = Tableau.parse("1 2; 2b 3; 2")
print("\ncandidate:", good.format())
print("standard on O(7)?", on_standard_report(good, 7).standard)

# Enumerate every standard tableau of a shape, in the straightening order.
print("\nstandard tableaux of shape (2, 1) on O(4):")
for t in enumerate_on_standard((2, 1), 4):
    print("  ", t.format())

# The basic tableau fills row k with the k-th smallest letter; it is the
# reference right-hand tableau of the straightening theory.
print("\nbasic tableau of shape (3, 2, 1), n = 6:", basic_tableau((3, 2, 1), 6).format())

# Dominance compares prefix sums of equal-size partitions.
print("\n(2,2,1) dominated by (4,1)?", dominance_lt((2, 2, 1), (4, 1)))
