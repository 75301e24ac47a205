# Copyright 2026 The mgqmc Authors
#
# SPDX-License-Identifier: Apache-2.0

"""Independent FCIDUMP full-CI checker.

Parses a Molpro-convention FCIDUMP, expands the spatial integrals to spin
orbitals (spatial k -> spin orbitals 2k up, 2k+1 down), builds the dense
Hamiltonian in the fixed-particle-number sector, and prints the lowest
eigenvalue. Used to cross-check the golden FCI energies committed next to
the fixtures; it shares no code with the C++ solver.
"""

import re
import sys

import numpy as np


def parse_fcidump(path):
    with open(path) as f:
        text = f.read()
    header_match = re.search(r"&FCI(.*?)(?:&END|/)", text, re.S | re.I)
    if not header_match:
        raise ValueError("no &FCI header")
    header = header_match.group(1)

    def field(name):
        m = re.search(name + r"\s*=\s*(-?\d+)", header, re.I)
        if not m:
            raise ValueError("missing " + name)
        return int(m.group(1))

    norb, nelec = field("NORB"), field("NELEC")
    body = text[header_match.end():]

    h_spat = np.zeros((norb, norb))
    g_spat = np.zeros((norb, norb, norb, norb))
    core = 0.0
    for line in body.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.replace("D", "E").replace("d", "E").split()
        value = float(parts[0])
        i, j, k, l = (int(x) for x in parts[1:5])
        if i == j == k == l == 0:
            core = value
        elif k == l == 0 and i > 0 and j > 0:
            h_spat[i - 1, j - 1] = value
            h_spat[j - 1, i - 1] = value
        elif j == k == l == 0:
            pass  # orbital-energy record
        else:
            i, j, k, l = i - 1, j - 1, k - 1, l - 1
            for a, b, c, d in [(i, j, k, l), (j, i, k, l), (i, j, l, k),
                               (j, i, l, k), (k, l, i, j), (l, k, i, j),
                               (k, l, j, i), (l, k, j, i)]:
                g_spat[a, b, c, d] = value
    return norb, nelec, core, h_spat, g_spat


def spin_expand(norb, h_spat, g_spat):
    n = 2 * norb
    h = np.zeros((n, n))
    v = np.zeros((n, n, n, n))
    for p in range(n):
        for q in range(n):
            if p % 2 == q % 2:
                h[p, q] = h_spat[p // 2, q // 2]
    # Physicist convention <pq|rs> = (pr|qs) with spin deltas p~r, q~s.
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if p % 2 == r % 2 and q % 2 == s % 2:
                        v[p, q, r, s] = g_spat[p // 2, r // 2, q // 2, s // 2]
    return h, v


def sector_basis(n, zeta):
    return [m for m in range(1 << n) if bin(m).count("1") == zeta]


def apply_ops(mask, ops):
    """Applies annihilation/creation ops right-to-left; ops = [(p, dagger)]."""
    sign = 1
    for p, dagger in reversed(ops):
        bit = 1 << p
        occupied = mask & bit
        if dagger == bool(occupied):
            return 0, 0
        parity = bin(mask & (bit - 1)).count("1")
        sign *= -1 if parity % 2 else 1
        mask ^= bit
    return sign, mask


def sector_hamiltonian(n, zeta, core, h, v):
    basis = sector_basis(n, zeta)
    index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)
    ham = np.zeros((dim, dim))
    for col, mask in enumerate(basis):
        ham[col, col] += core
        for p in range(n):
            for q in range(n):
                if h[p, q] == 0.0:
                    continue
                sign, out = apply_ops(mask, [(p, True), (q, False)])
                if sign:
                    ham[index[out], col] += sign * h[p, q]
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        if v[p, q, r, s] == 0.0:
                            continue
                        sign, out = apply_ops(
                            mask, [(p, True), (q, True), (s, False), (r, False)])
                        if sign:
                            ham[index[out], col] += 0.5 * sign * v[p, q, r, s]
    return basis, ham


def lowest_energy(path):
    norb, nelec, core, h_spat, g_spat = parse_fcidump(path)
    h, v = spin_expand(norb, h_spat, g_spat)
    basis, ham = sector_hamiltonian(2 * norb, nelec, core, h, v)
    evals, evecs = np.linalg.eigh(ham)
    return evals[0], basis, evecs[:, 0]


def main():
    if len(sys.argv) != 2:
        print("usage: fci_check.py FILE.fcidump", file=sys.stderr)
        return 2
    energy, basis, ground = lowest_energy(sys.argv[1])
    print("E_FCI = %.12f" % energy)
    for mask, amp in zip(basis, ground):
        if abs(amp) > 1e-8:
            print("  |%s>  % .8f" % (format(mask, "04b")[::-1], amp))
    return 0


if __name__ == "__main__":
    sys.exit(main())
