"""Show where the Aeppli upper bound is attained on the Inoue-pattern complex."""

from bottchern.diagnostics import check_upper_bound_aeppli, degree_report
from bottchern.synthetic import inoue_pattern


def main():
    c = inoue_pattern()
    for k in c.degree_range():
        r = degree_report(c, k)
        b = check_upper_bound_aeppli(c, k)
        mark = "  <- sharp" if b.slack == 0 else ""
        print(f"k={k}: h_A={b.lhs} bound={b.rhs} S={r.s} N={r.n} Delta={r.delta}{mark}")


if __name__ == "__main__":
    main()
