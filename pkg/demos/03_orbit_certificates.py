"""Produce concrete certificates instead of verdicts.

Verdicts say "an odd-period cycle exists"; this demo actually finds one,
plus a turbulence witness for the second iterate, and runs the exploratory
three-cycle search.  Certificates carry residuals so they can be rechecked
by hand: every printed point satisfies its defining equation to 1e-10 or
better.  The quiet economy (lambda = 2.0) comes back empty-handed, as it
must.

Run:  python demos/03_orbit_certificates.py
"""

from chaoslab import (
    EconomyParams,
    find_odd_cycle,
    find_periodic_orbits,
    find_turbulence_witness,
    search_period3,
    trapping_interval,
)

CHAOTIC = EconomyParams(alpha=0.75, beta=0.5, lam=3.61)
QUIET = EconomyParams(alpha=0.75, beta=0.5, lam=2.0)
MAX_PERIOD = 9


def show(params):
    interval = trapping_interval(params)
    print(f"lambda = {params.lam}: searching E = [{interval.a:.6g}, {interval.b:.6g}]"
          f" up to period {MAX_PERIOD}")

    orbits = find_periodic_orbits(params, interval, MAX_PERIOD)
    counts = {}
    for orbit in orbits:
        counts[orbit.period] = counts.get(orbit.period, 0) + 1
    print(f"  orbits found by period: {counts or 'none'}")

    odd = find_odd_cycle(params, interval, MAX_PERIOD)
    if odd is None:
        print(f"  odd cycle: none up to period {MAX_PERIOD} (not a proof of absence)")
    else:
        pts = ", ".join(f"{x:.8f}" for x in odd.points)
        print(f"  odd cycle: period {odd.period}, points [{pts}], residual {odd.residual:.2e}")

    witness = find_turbulence_witness(params, interval)
    if witness is None:
        print("  turbulence witness for f^2: none")
    else:
        print(f"  turbulence witness for f^2: x1={witness.x1:.8f} x2={witness.x2:.8f}"
              f" x3={witness.x3:.8f} (max residual {max(witness.residuals):.2e})")

    three = search_period3(params, interval)
    if three is None:
        print("  exploratory three-cycle scan: none found")
    else:
        pts = ", ".join(f"{x:.8f}" for x in three.points)
        print(f"  exploratory three-cycle scan: [{pts}], residual {three.residual:.2e}")
    print()


def main():
    show(CHAOTIC)
    show(QUIET)


if __name__ == "__main__":
    main()
