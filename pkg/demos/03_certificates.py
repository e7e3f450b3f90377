"""Proving comparisons of the 1/k-weight profile for every large n at once.

Each comparison sum alpha_i g(a_i) is an integral of (1+t)^(n-a_k) r(t) over
[0, 1].  When r is nonnegative, or crosses zero once upward and some shifted
integral is already positive, the sign is settled for all n past a bound.
"""

from roughbound.certificates import (
    ComparisonSpec,
    InconclusiveError,
    inequality_table,
    verify_comparison,
    verify_second_difference,
)

for row in inequality_table():
    c = row.certificate
    tail = f"  shift l={c.l}, integral {c.shifted_integral}" if c.l is not None else ""
    print(f"{row.label:<22} r(t) = {row.r}")
    print(f"{'':<22} {c.kind}, holds for n >= {c.min_n}{tail}")

print()
for a in range(2, 9):
    sign, verdict = verify_second_difference(a, 13)
    print(f"second difference at a={a}: {'convex' if sign > 0 else 'concave'} (certified for n >= {verdict.certificate.min_n})")

# a certificate says nothing below its bound
spec = ComparisonSpec((1, 4, 7), (1, -2, 1))
try:
    verify_comparison(spec, 9)
except InconclusiveError as exc:
    print("\nn=9:", exc, "| direct value:", spec.direct_value(9))
