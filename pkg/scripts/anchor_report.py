"""Print the headline numbers behind the acceptance anchors.

Useful when tuning presets: everything here is computed from the library,
nothing is compared against targets.
"""
import numpy as np

from magnonics import measures
from magnonics.model import PhysicalEnv, SystemParams, thermal_occupation
from magnonics.sweep import SweepAxis, run_sweep, steady_state


def base(temperature_k=0.020, **kw):
    env = PhysicalEnv(temperature_k=temperature_k)
    n = thermal_occupation(env, env.omega_d_hz)
    return env, SystemParams(n_o1=n, n_o2=n, **kw)


def magnon_pair(**kw):
    _, p = base(**kw)
    return measures.reduce(steady_state(p), 1, 2)


def main():
    print("resonant magnon-pair E_N (delta = 0, T = 20 mK)")
    for r in (1.0, 1.5, 2.0):
        row = [measures.log_negativity(magnon_pair(lam=lam, r=r)) for lam in (0.0, 0.2, 0.5)]
        print(f"  r={r:<4} lambda 0 / 0.2 / 0.5: " + " / ".join(f"{x:.4f}" for x in row))

    env, p = base(lam=0.5, r=2.0)
    recs = run_sweep(p, env, [SweepAxis("temperature_mk", 0, 1200, 241)])
    alive = [rec.axis1 for rec in recs if rec.E_N > 1e-3]
    print(f"last T with E_N > 1e-3 at lambda=0.5, r=2: {max(alive):.0f} mK")

    print("GIP / E_N / S at lambda = 0")
    for r in (1.0, 2.0):
        m = magnon_pair(r=r)
        print(f"  r={r}: {measures.gip(m):.4f} / {measures.log_negativity(m):.4f} / {measures.steering(m):.4f}")

    _, p = base(lam=0.2, r=2.0)
    v = steady_state(p)
    # symmetric magnons: only (x1 + x2)/sqrt2 couples, the other combination stays at vacuum
    bright = 0.5 * (v[2, 2] + v[4, 4] + 2 * v[2, 4])
    print(f"magnon-1 x squeezing: {measures.squeezing_db(v[2, 2]):.3f} dB, "
          f"collective mode: {measures.squeezing_db(bright):.3f} dB, "
          f"single-magnon ceiling {measures.squeezing_db(0.25):.3f} dB")

    print("R_min over lambda (g = 1, r = 0.4)")
    for t_mk in (10.0, 50.0, 100.0):
        env, p = base(temperature_k=t_mk / 1000, g1=1.0, g2=1.0, r=0.4)
        recs = run_sweep(p, env, [SweepAxis("lambda", 0.0, 0.5, 101)])
        rm = np.array([rec.R_min for rec in recs])
        lams = np.array([rec.axis1 for rec in recs])
        k = int(np.argmax(rm))
        cut = lams[rm > 0].max() if np.any(rm > 0) else float("nan")
        print(f"  {t_mk:5.0f} mK: max {rm[k]:.5f} at lambda {lams[k]:.3f}, last positive lambda {cut:.3f}")


if __name__ == "__main__":
    main()
