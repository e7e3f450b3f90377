"""Which block sizes make the boundary smallest or largest?

For each weight, prints the closed-form answer next to what a full scan of
the integer partitions finds, then the set-level value it implies.
"""

from roughbound import WeightSpec, brute_force_optima, closed_form_optimal, set_level_optimum

CASES = [(13, 4), (18, 5), (16, 7), (14, 3)]

for j in (1, 2, 3):
    print(f"weight j={j}")
    for n, m in CASES:
        spec = WeightSpec(j, n)
        for sense in ("min", "max"):
            closed = closed_form_optimal(n, m, spec, sense)
            scan = brute_force_optima(n, m, spec, sense)
            ties = ", ".join(p.multiplicity_form() for p in scan.argopt)
            print(f"  n={n:2d} m={m} {sense}: closed form {closed.multiplicity_form():<14} scan finds {ties}")
        low, witness = set_level_optimum(n, m, spec, "min")
        print(f"    smallest boundary sum over set partitions: {low} with block sizes {witness}")
