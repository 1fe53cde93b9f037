"""Field-free guiding-center orbits: rigid rotation plus a steady fall.

Without an electric field a particle's velocity turns at the rate set by
x1(0) - v2(0) while x2 + v1 falls at |v(0)|^2 / 2, independent of position.
The script integrates two contrasting orbits, checks the three conserved
combinations, and writes a trace CSV (columns t,x1,x2,v1,v2) for plotting.
"""

import numpy as np

import plasmalab as pl
from plasmalab.drifts import fall_rate


def describe(label, p0, dt=1e-3, n=60_000):
    traj = pl.integrate_orbit(p0, dt, n)
    d_c1, d_c2, d_fall = pl.orbit_invariants(traj)
    print(f"{label}: start (x=({p0.x1}, {p0.x2}), v=({p0.v1}, {p0.v2}))")
    print(f"  conserved drifts: |d(x1-v2)| {d_c1:.2e}, |d(v1^2+v2^2)| {d_c2:.2e}")
    print(f"  fitted fall rate of x2+v1: {fall_rate(traj):+.8f} "
          f"(theory {-0.5 * (p0.v1**2 + p0.v2**2):+.8f})")
    end = pl.closed_form_orbit(p0, n * dt)
    err = np.abs(traj.states[-1] - [end.x1, end.x2, end.v1, end.v2]).max()
    print(f"  endpoint vs closed form: {err:.2e}")
    return traj


def main():
    circling = describe("circling fall", pl.ParticleState(0.0, 0.0, 0.0, 1.0))
    describe("straight fall ", pl.ParticleState(0.0, 0.0, 1.0, 0.0))

    out = "orbit_trace.csv"
    keep = range(0, len(circling.times), 200)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("t,x1,x2,v1,v2\n")
        for i in keep:
            row = circling.states[i]
            fh.write(f"{circling.times[i]:.6f}," +
                     ",".join(f"{v:.9f}" for v in row) + "\n")
    print(f"wrote {out} ({len(list(keep))} samples of the circling orbit)")


if __name__ == "__main__":
    main()
