"""Compare the three solution routes as the number of functions grows.

Each additional function costs two quadrature nodes, so the pencil grows by
four rows per step.  All three routes (block updating, polynomial-first with
pole installation, rational Krylov) solve the same inverse problem; the CSV
below tracks their recurrence, pole, orthonormality and moment-matrix error
metrics for N = 2..8.
"""

from sorf import run_sweep

csv = run_sweep(
    {
        "mu": 2.0,
        "lambda": 1.0,
        "omega": 1.1,
        "N_range": [2, 8],
        "method": "all",
    }
)
print(csv)

rows = [line.split(",") for line in csv.strip().splitlines()[1:]]
worst = {}
for row in rows:
    method = row[2]
    for name, value in zip(("E_r", "E_p", "E_Q", "E_S_discrete", "E_S_cont_leading"), row[3:8]):
        key = (method, name)
        worst[key] = max(worst.get(key, 0.0), float(value))

print("worst metric over the sweep, per method:")
for method in ("updating", "sop", "krylov"):
    line = "  ".join(f"{name}={worst[(method, name)]:.2e}" for name in
                     ("E_r", "E_p", "E_Q", "E_S_discrete", "E_S_cont_leading"))
    print(f"  {method:9s} {line}")
