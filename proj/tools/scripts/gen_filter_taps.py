#!/usr/bin/env python3
# Copyright 2026 The wavefprint Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates core/src/filter_taps.cc.

Starting points come from PyWavelets. Daubechies and symlet taps are then
polished with Gauss-Newton in 50-digit arithmetic against the orthonormality
and vanishing-moment equations, so the emitted doubles are correctly rounded
solutions rather than copies of a published table. Coiflets are emitted as is.

usage: gen_filter_taps.py > core/src/filter_taps.cc
"""

import sys

import mpmath as mp
import pywt

mp.mp.dps = 50


def residuals(h, moments):
    n = len(h)
    res = [mp.fsum(h) - mp.sqrt(2)]
    for m in range(n // 2):
        res.append(mp.fsum(h[k] * h[k + 2 * m] for k in range(n - 2 * m))
                   - (1 if m == 0 else 0))
    for p in range(1, moments):
        res.append(mp.fsum((-1) ** k * mp.mpf(k) ** p * h[k] for k in range(n)))
    return res


def polish(taps, moments):
    h = [mp.mpf(t) for t in taps]
    for _ in range(30):
        r = residuals(h, moments)
        if max(abs(x) for x in r) < mp.mpf(10) ** -45:
            break
        eps = mp.mpf(10) ** -25
        cols = []
        for j in range(len(h)):
            hp = list(h)
            hp[j] += eps
            rp = residuals(hp, moments)
            cols.append([(a - b) / eps for a, b in zip(rp, r)])
        jac = mp.matrix(len(r), len(h))
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                jac[i, j] = v
        step, _ = mp.qr_solve(jac, mp.matrix([-x for x in r]))
        h = [h[i] + step[i] for i in range(len(h))]
    worst = max(abs(x) for x in residuals(h, moments))
    if worst > mp.mpf(10) ** -30:
        raise RuntimeError("polish did not converge")
    return h


def main():
    names = ["haar"] + [f"db{i}" for i in range(2, 11)] \
        + [f"sym{i}" for i in range(2, 11)] + [f"coif{i}" for i in range(2, 11)]
    out = sys.stdout
    header = open(__file__).read().split('"""')[0].splitlines()[1:]
    out.write("\n".join(line.replace("#", "//", 1) for line in header).rstrip() + "\n")
    out.write("// Generated by tools/scripts/gen_filter_taps.py. Do not edit.\n\n")
    out.write('#include "filter_taps.h"\n\nnamespace wavefprint::detail {\n\n')
    for name in names:
        taps = pywt.Wavelet(name).rec_lo
        if name.startswith(("db", "sym")):
            order = int(name[3:] if name.startswith("sym") else name[2:])
            taps = [float(x) for x in polish(taps, order)]
        out.write(f"constexpr double k_{name}[] = {{\n")
        for t in taps:
            out.write(f"    {t!r},\n")
        out.write("};\n")
    out.write("\nconst std::array<TapTable, %d> kTapTables = {{\n" % len(names))
    for name in names:
        out.write(f'    {{"{name}", k_{name}}},\n')
    out.write("}};\n\n}  // namespace wavefprint::detail\n")


if __name__ == "__main__":
    main()
