# Copyright 2026 The mgqmc Authors
#
# SPDX-License-Identifier: Apache-2.0

"""Generates a 4-spin-orbital effective-Hamiltonian FCIDUMP fixture.

Two degenerate spatial orbitals with on-site repulsion, inter-orbital
Coulomb and a small exchange coupling, plus a hopping term. The closed-shell
determinants sit well above the open-shell pair, and hopping depresses the
open-shell singlet below the triplet, giving a ground state dominated by the
(|ud> - |du>) configuration. This mimics a defect-center active space: small
energy scales (~0.1 Ha spread, stable at large imaginary timesteps) and a
ground state orthogonal to the closed-shell reference determinant.

The exchange and on-site blocks keep the two-electron supermatrix positive
semidefinite, so the Cholesky factorization used by the propagator exists.
"""

import sys

import numpy as np

import fci_check

EPS = [0.0, 0.0]        # orbital energies
HOP = -0.028            # hopping between the two spatial orbitals
U_ONSITE = [0.08, 0.08]  # (00|00), (11|11)
J_COULOMB = 0.03        # (00|11)
K_EXCHANGE = 0.002      # (01|01)


def build_integrals():
    h = np.diag(EPS).astype(float)
    h[0, 1] = h[1, 0] = HOP
    g = np.zeros((2, 2, 2, 2))
    g[0, 0, 0, 0] = U_ONSITE[0]
    g[1, 1, 1, 1] = U_ONSITE[1]
    for a, b, c, d in [(0, 0, 1, 1), (1, 1, 0, 0)]:
        g[a, b, c, d] = J_COULOMB
    for a, b, c, d in [(0, 1, 0, 1), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1)]:
        g[a, b, c, d] = K_EXCHANGE
    return h, g


def supermatrix_psd_check(g):
    m = np.zeros((4, 4))
    for p in range(2):
        for r in range(2):
            for q in range(2):
                for s in range(2):
                    m[p * 2 + r, q * 2 + s] = g[p, r, q, s]
    evals = np.linalg.eigvalsh(m)
    if evals.min() < -1e-12:
        raise ValueError("two-electron supermatrix is not PSD: %s" % evals)
    return evals


def fcidump_lines(h, g, core):
    lines = ["&FCI NORB=2,NELEC=2,MS2=0,", " ORBSYM=1,1,", " ISYM=1,", "&END"]

    def rec(value, i, j, k, l):
        lines.append(" %22.16E %3d %3d %3d %3d" % (value, i, j, k, l))

    rec(g[0, 0, 0, 0], 1, 1, 1, 1)
    rec(g[1, 1, 0, 0], 2, 2, 1, 1)
    rec(g[1, 0, 1, 0], 2, 1, 2, 1)
    rec(g[1, 1, 1, 1], 2, 2, 2, 2)
    rec(h[0, 0], 1, 1, 0, 0)
    rec(h[1, 0], 2, 1, 0, 0)
    rec(h[1, 1], 2, 2, 0, 0)
    rec(core, 0, 0, 0, 0)
    return "\n".join(lines) + "\n"


def main():
    h, g = build_integrals()
    print("supermatrix eigenvalues:", supermatrix_psd_check(g))

    out = "nv_effective_4q.fcidump"
    with open(out, "w") as f:
        f.write(fcidump_lines(h, g, 0.0))

    energy, basis, ground = fci_check.lowest_energy(out)
    print("E_FCI = %.12f" % energy)
    for mask, amp in zip(basis, ground):
        if abs(amp) > 1e-8:
            print("  |%s>  % .8f" % (format(mask, "04b")[::-1], amp))

    # Best open-shell-pair trial: (|1001> - |0110>)/sqrt(2), theta = pi/2.
    hs, vs = fci_check.spin_expand(2, h, g)
    _, ham = fci_check.sector_hamiltonian(4, 2, 0.0, hs, vs)
    basis_list = fci_check.sector_basis(4, 2)
    i_ud = basis_list.index(0b1001)
    i_du = basis_list.index(0b0110)
    singlet = np.zeros(len(basis_list))
    singlet[i_ud] = 1.0 / np.sqrt(2.0)
    singlet[i_du] = -1.0 / np.sqrt(2.0)
    e_trial = singlet @ ham @ singlet
    print("E_trial(theta=pi/2) = %.12f  (%.3f mHa above FCI)" %
          (e_trial, (e_trial - energy) * 1000))
    return 0


if __name__ == "__main__":
    sys.exit(main())
