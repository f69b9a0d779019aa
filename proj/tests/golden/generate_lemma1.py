#!/usr/bin/env python3
# Copyright 2026 The bornverifier Authors
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

"""Writes the four-spin Lemma-1 experiments into corpus/.

psi0, psi1 are two-spin states with first-spin polarizations p0, p1.
Psi_lambda = sqrt(1-l) psi0|uu> + sqrt(l) psi1|dd> on spins (s, e1, e2, e3),
and V maps psi0|u> -> |uuu>, psi1|d> -> |uud> on (s, e1, e2).
Expected values are computed here with numpy and stored as '# expect' lines.
"""

import pathlib

import numpy as np

rng = np.random.default_rng(20260311)
LAM = 0.3
M = np.array([[0.8, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]])


def random_two_spin():
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


def reduced(psi):
    m = psi.reshape(2, 2)
    return m @ m.conj().T


def complete_unitary(rows):
    """Unitary whose first rows are the conjugates of the given orthonormal vectors."""
    n = rows[0].size
    basis = list(rows)
    for k in range(n):
        v = np.zeros(n, dtype=complex)
        v[k] = 1
        for b in basis:
            v = v - np.vdot(b, v) * b
        if np.linalg.norm(v) > 1e-6:
            basis.append(v / np.linalg.norm(v))
        if len(basis) == n:
            break
    return np.array([b.conj() for b in basis])


def num(z):
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"({z.real!r}{sign}{abs(z.imag)!r}i)"


def vec(v):
    return "[" + ", ".join(num(z) for z in v) + "]"


def mat(m, indent):
    pad = " " * indent
    rows = [vec(r) for r in m]
    return "[" + (",\n" + pad + " ").join(rows) + "]"


up = np.array([1, 0], dtype=complex)
dn = np.array([0, 1], dtype=complex)
psi0 = random_two_spin()
psi1 = random_two_spin()
Psi = np.sqrt(1 - LAM) * np.kron(psi0, np.kron(up, up)) + np.sqrt(LAM) * np.kron(psi1, np.kron(dn, dn))
V = complete_unitary([np.kron(psi0, up), np.kron(psi1, dn)])
Vinv = V.conj().T

rho0, rho1 = reduced(psi0), reduced(psi1)
rho_mix = (1 - LAM) * rho0 + LAM * rho1
f0 = np.trace(M @ rho0).real
f1 = np.trace(M @ rho1).real
f_mix = np.trace(M @ rho_mix).real

HEADER = f"""# Generated by generate_lemma1.py; do not edit.
# Four-spin construction with lambda = {LAM!r}.
wire s
wire e1
wire e2
wire e3
detector D = effect {mat(M, 19)}
state Psi = {vec(Psi)}
"""

out = pathlib.Path(__file__).resolve().parent / "corpus"

(out / "31_lemma1_direct.qexp").write_text(
    HEADER
    + f"""prepare Psi
measure s D as c
query click: c = click
# expect click {float(f_mix)!r}
""")

(out / "39_lemma1_v_circuit.qexp").write_text(
    HEADER
    + f"""unitary V = {mat(V, 12)}
prepare Psi
gate V on s e1 e2
measure s SG as a
measure e1 SG as b
measure e3 SG as m4
query anchored: a = up, b = up
query lambda: m4 = down
# expect anchored 1
# expect lambda {LAM!r}
""")

(out / "40_lemma1_convex.qexp").write_text(
    HEADER
    + f"""unitary V = {mat(V, 12)}
unitary Vinv = {mat(Vinv, 15)}
prepare Psi
measure e3 SG as m4
gate V on s e1 e2
gate Vinv on s e1 e2
measure s D as c
query click: c = click
query click_up: c = click, m4 = up
query click_down: c = click, m4 = down
# expect click {float(f_mix)!r}
# expect click_up {float((1 - LAM) * f0)!r}
# expect click_down {float(LAM * f1)!r}
""")
