"""Watch the price process itself.

Records trajectories at four adjustment speeds: convergent (below the
window the interval degenerates, so we start just above), periodic-ish,
chaotic, and explosive (beyond the window the price can go negative, which
the recorder flags as escape).  If matplotlib is importable the
trajectories are drawn to price_trajectories.png.

Run:  python demos/04_trajectories.py
"""

from chaoslab import EconomyParams, iterate

CASES = [
    ("slow, settles", 1.2),
    ("two-cycle territory", 2.1),
    ("chaotic", 3.61),
    ("too fast, escapes", 5.0),
]
P0 = 1.9
STEPS = 60


def main():
    recorded = []
    for label, lam in CASES:
        params = EconomyParams(alpha=0.75, beta=0.5, lam=lam)
        orbit = iterate(params, P0, STEPS)
        recorded.append((label, lam, orbit))
        head = ", ".join(f"{p:.4f}" for p in orbit.points[:6])
        print(f"lambda={lam:4.2f} ({label}): p = {head}, ...")
        if orbit.escaped:
            print(f"  escaped after {len(orbit.points) - 1} steps"
                  f" (last recorded price {orbit.points[-1]:.4f})")
        else:
            tail = orbit.points[-5:]
            spread = max(tail) - min(tail)
            print(f"  last five prices span {spread:.6f}")
        print()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; skipping the PNG")
        return

    fig, axes = plt.subplots(len(recorded), 1, figsize=(7, 8), sharex=True)
    for ax, (label, lam, orbit) in zip(axes, recorded):
        ax.plot(range(len(orbit.points)), orbit.points, marker=".", linewidth=0.8)
        ax.set_ylabel("price")
        ax.set_title(f"lambda = {lam} ({label})", fontsize=9)
    axes[-1].set_xlabel("step")
    fig.tight_layout()
    fig.savefig("price_trajectories.png", dpi=150)
    print("wrote price_trajectories.png")


if __name__ == "__main__":
    main()
