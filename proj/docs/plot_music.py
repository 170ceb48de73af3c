#!/usr/bin/env python3
"""Quick-look plots for an experiment result bundle.

Usage: plot_music.py <result-dir> [output.png]

Reads music_spectrum.csv, eigenvalues.csv and doa_estimates.json from the
given directory and renders the MUSIC map with true/estimated directions
plus the eigenvalue distribution.
"""

import json
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    result_dir = Path(sys.argv[1])

    theta, phi, value_db = np.loadtxt(
        result_dir / "music_spectrum.csv", delimiter=",", skiprows=1, unpack=True
    )
    n_phi = len(np.unique(phi))
    grid = value_db.reshape(-1, n_phi)

    fig, (ax_map, ax_eig) = plt.subplots(
        1, 2, figsize=(12, 4.5), gridspec_kw={"width_ratios": [2, 1]}
    )

    im = ax_map.imshow(
        grid,
        extent=(phi.min(), phi.max(), theta.max(), theta.min()),
        aspect="auto",
        cmap="viridis",
        vmin=-30.0,
        vmax=0.0,
    )
    fig.colorbar(im, ax=ax_map, label="dB re peak")

    doas = json.loads((result_dir / "doa_estimates.json").read_text())
    for d in doas.get("directions", []):
        ax_map.plot(d["truth_phi_deg"], d["truth_theta_deg"], "wx", markersize=9)
        ax_map.plot(d["phi_deg"], d["theta_deg"], "o", mfc="none", mec="r", markersize=9)
    ax_map.set_xlabel("azimuth [deg]")
    ax_map.set_ylabel("elevation [deg]")
    ax_map.set_title(f"MUSIC spectrum ({doas.get('method', '?')} smoothing)")

    idx, eigval, db = np.loadtxt(
        result_dir / "eigenvalues.csv", delimiter=",", skiprows=1, unpack=True
    )
    ax_eig.stem(idx + 1, db)
    ax_eig.set_xlabel("eigenvalue index")
    ax_eig.set_ylabel("dB re largest")
    ax_eig.set_ylim(max(-80.0, db.min() - 5.0), 5.0)
    ax_eig.set_title("eigenvalue distribution")
    ax_eig.grid(True, alpha=0.3)

    fig.tight_layout()
    if len(sys.argv) > 2:
        fig.savefig(sys.argv[2], dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
