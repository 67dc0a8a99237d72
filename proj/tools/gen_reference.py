#!/usr/bin/env python3
# Copyright 2026 The specexp Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Arbitrary-precision reference values that the C++ tests freeze.

Writes data/zeta_zeros.txt and prints the constants pasted into tests/.
"""
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    lines = ["# imaginary parts of the first 25 nontrivial zeros of zeta(s)"]
    for k in range(1, 26):
        lines.append(mp.nstr(mp.im(mp.zetazero(k)), 40, strip_zeros=False))
    (out / "zeta_zeros.txt").write_text("\n".join(lines) + "\n")

    print("// zeta reference values")
    for s in [2, 3, 4, 7, 8, mp.mpc(0.5, 14.134725), mp.mpc(-7.5, 3), mp.mpc(3, 40), mp.mpc(-15.2, -20)]:
        z = mp.zeta(s)
        print(s, mp.nstr(mp.re(z), 40), mp.nstr(mp.im(z), 40))
    print("// zeta'(-2k) for k = 1..4")
    for k in range(1, 5):
        print(k, mp.nstr(mp.zeta(-2 * k, derivative=1), 30))
    print("// Ford trivial-pole residues 2^k zeta(-2k-1) / (2 zeta'(-2k))")
    for k in range(1, 5):
        print(-k, mp.nstr(2**k * mp.zeta(-2 * k - 1) / (2 * mp.zeta(-2 * k, derivative=1)), 30))
    print("// dawson")
    for x in [0.1, 0.5, 1, 2.5, 5.9, 6.1, 10, 20]:
        d = mp.sqrt(mp.pi) / 2 * mp.exp(-x * x) * mp.erfi(x)
        print(x, mp.nstr(d, 25))
    print("// 1F1")
    for a, b, x in [(0.5, 0.5, 2.3), (1.5, 0.5, -7.0), (mp.mpc(0.3, 1), mp.mpc(1.2, -0.4), mp.mpc(10, 5)),
                    (2.5, 0.5, 30.0), (0.25, 1.5, -40.0)]:
        v = mp.hyp1f1(a, b, x)
        print(a, b, x, mp.nstr(mp.re(v), 25), mp.nstr(mp.im(v), 25))
    print("// lgamma")
    for z in [mp.mpc(0.5, 0), mp.mpc(3.7, 2.1), mp.mpc(-2.3, 0.7), mp.mpc(0.25, 30)]:
        v = mp.loggamma(z)
        print(z, mp.nstr(mp.re(v), 25), mp.nstr(mp.im(v), 25))


if __name__ == "__main__":
    main()
