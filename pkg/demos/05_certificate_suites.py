"""Running the verification suites programmatically.

Each suite evaluates both sides of its inequalities on seeded instances and
returns raw certificates; the tolerance policy lives in one table.  The
same machinery backs `resourcekit verify --suite <name> --seed <n>`.

Run:  python demos/05_certificate_suites.py
"""

from resourcekit.affinity import certificates_to_csv
from resourcekit.verify import SUITE_NAMES, run_suite, summarize

SEED = 7

for name in SUITE_NAMES:
    n = 4 if name in ("theorem2", "theorem3") else 40
    certs = run_suite(name, SEED, n)
    summary = summarize(certs)
    print(f"--- {name}: {len(certs)} certificates")
    for label in sorted(summary):
        entry = summary[label]
        status = "pass" if entry["passed"] else "FAIL"
        print(f"  {label:36s} n={entry['count']:4d} "
              f"worst={entry['min_slack']: .2e} tol={entry['tol']:.0e} {status}")

print("\nfirst lines of the CSV export:")
print("\n".join(certificates_to_csv(run_suite("appendix-b", SEED, 2)).splitlines()[:5]))
