#!/usr/bin/env python3
"""Plot fsopoint outputs.

    plot.py trajectory out/trajectory.csv
    plot.py pointing out/pointing.csv
    plot.py curve out/curve.csv

Writes a PNG next to the input unless -o is given.
"""

import argparse
import csv
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


def trajectory(d, ax):
    fig = ax.figure
    ax.remove()
    lin, ang = fig.subplots(2, 1, sharex=True)
    for k in ("x_m", "y_m", "z_m"):
        lin.plot(d["t_s"], d[k], label=k)
    for k in ("roll_rad", "pitch_rad", "yaw_rad"):
        ang.plot(d["t_s"], d[k], label=k)
    lin.set_ylabel("displacement (m)")
    ang.set_ylabel("rotation (rad)")
    ang.set_xlabel("t (s)")
    lin.legend()
    ang.legend()


def pointing(d, ax):
    ax.scatter(d["theta_x_mrad"], d["theta_y_mrad"], s=4)
    ax.set_xlabel("theta_x (mrad)")
    ax.set_ylabel("theta_y (mrad)")
    ax.set_aspect("equal", adjustable="datalim")


def curve(d, ax):
    for k in ("geometric_db", "expected_pointing_db", "total_db"):
        ax.semilogx(d["L_m"], d[k], marker="o", label=k)
    ax.set_xlabel("L (m)")
    ax.set_ylabel("dB")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()


def main():
    p = argparse.ArgumentParser()
    p.add_argument("kind", choices=["trajectory", "pointing", "curve"])
    p.add_argument("csv", type=pathlib.Path)
    p.add_argument("-o", "--output", type=pathlib.Path)
    a = p.parse_args()

    fig, ax = plt.subplots(figsize=(8, 6))
    globals()[a.kind](read(a.csv), ax)
    fig.tight_layout()
    out = a.output or a.csv.with_suffix(".png")
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
