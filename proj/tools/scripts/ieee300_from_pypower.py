#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Convert the public IEEE 300-bus case (MATPOWER/PYPOWER format) into the
plcgrid edge-list and bus files.

The case carries per-unit impedances and no line lengths. Every branch is
written with length 1000 m, so r/x "per km" equal the per-unit values and the
assembled admittance matrix is directly in per-unit (base impedance 1).

Usage: ieee300_from_pypower.py OUT_DIR   (requires `pip install pypower`)
"""
import os
import sys

from pypower.case300 import case300


def role_of(bus_row):
    bus_type = int(bus_row[1])
    if bus_type in (2, 3):
        return "generator"
    if bus_row[2] != 0.0 or bus_row[3] != 0.0:
        return "load"
    return "intermediate"


def main(out_dir):
    case = case300()
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "branches.csv"), "w", newline="\n") as f:
        f.write("bus_a,bus_b,length_m,r_ohm_per_km,x_ohm_per_km,kind,status\n")
        for br in case["branch"]:
            kind = "transformer" if br[8] != 0.0 else "line"
            status = "in_service" if br[10] != 0.0 else "open"
            f.write(f"{int(br[0])},{int(br[1])},1000,{float(br[2])!r},{float(br[3])!r},{kind},{status}\n")
    with open(os.path.join(out_dir, "buses.csv"), "w", newline="\n") as f:
        f.write("bus_id,kv,role\n")
        for bus in case["bus"]:
            f.write(f"{int(bus[0])},{float(bus[9])!r},{role_of(bus)}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/ieee300")
