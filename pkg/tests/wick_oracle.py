"""Independent Wick-expansion oracle for post-quench two-point functions.

Expands <GS| (a_m + a_m^dag) X (a_m + a_m^dag) |GS> / (4 N) for a
two-operator X by enumerating the three pairings of each four-operator
product, using only the ground-state contraction table.  It never forms
the rank-two update used by the engine, so agreement is a genuine
cross-check rather than a reimplementation.
"""

import numpy as np


def contraction(op_a, op_b, f, g):
    """Ground-state expectation of one ordered operator pair.

    Operators are ("a", site) or ("ad", site); the table is
        <a_i a_j>        = conj(G_ij)
        <a_i a_j^dag>    = conj(F_ji) + delta_ij / 2
        <a_i^dag a_j>    = F_ij - delta_ij / 2
        <a_i^dag a_j^dag> = G_ij
    """
    kind_a, i = op_a
    kind_b, j = op_b
    delta = 0.5 if i == j else 0.0
    if kind_a == "a" and kind_b == "a":
        return np.conj(g[i, j])
    if kind_a == "a" and kind_b == "ad":
        return np.conj(f[j, i]) + delta
    if kind_a == "ad" and kind_b == "a":
        return f[i, j] - delta
    return g[i, j]


def four_point(ops, f, g):
    """Expectation of an ordered four-operator product on a Gaussian state.

    Zero-mean Wick factorization: (01)(23) + (02)(13) + (03)(12).
    """
    def c(a, b):
        return contraction(ops[a], ops[b], f, g)

    return c(0, 1) * c(2, 3) + c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2)


def norm_oracle(m, f, g):
    """Normalization <GS| S_m^x' S_m^x' |GS> of the flipped state."""
    aa = contraction(("a", m), ("a", m), f, g)
    ada = contraction(("ad", m), ("a", m), f, g)
    return (np.real(aa) + np.real(ada) + 0.5) / 2.0


def quenched_pair(kind, i, j, m, f, g):
    """Post-quench <a_i^dag a_j> (kind "fd") or <a_i^dag a_j^dag> ("gd")."""
    if kind == "fd":
        middle = (("ad", i), ("a", j))
    elif kind == "gd":
        middle = (("ad", i), ("ad", j))
    else:
        raise ValueError(f"unknown pair kind: {kind}")
    total = 0.0 + 0.0j
    for left in ("a", "ad"):
        for right in ("a", "ad"):
            ops = ((left, m), middle[0], middle[1], (right, m))
            total = total + four_point(ops, f, g)
    return total / (4.0 * norm_oracle(m, f, g))


def quenched_state_oracle(m, f, g):
    """Full post-quench (F, G) matrices from the four-point expansion."""
    length = f.shape[0]
    f_new = np.zeros((length, length), dtype=complex)
    g_new = np.zeros((length, length), dtype=complex)
    for i in range(length):
        for j in range(length):
            f_new[i, j] = quenched_pair("fd", i, j, m, f, g)
            g_new[i, j] = quenched_pair("gd", i, j, m, f, g)
            if i == j:
                f_new[i, j] += 0.5
    return f_new, g_new
