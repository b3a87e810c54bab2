"""Regenerate src/doeforge/data/sobol_params.txt from SciPy's Joe-Kuo table.

Run once at development time; the package reads only the text file.
"""

import os

import numpy as np
import scipy.stats

OUT = os.path.join(
    os.path.dirname(__file__), "..", "src", "doeforge", "data", "sobol_params.txt"
)
MAX_DIM = 50

HEADER = """\
# Direction-number parameters for the binary-fraction sequence generator.
# One line per dimension:  dim q a m1 ... mk   (k = max(q, 1))
#   q  - degree of the primitive polynomial over F2
#   a  - interior coefficient bits b1..b_{q-1} packed as an integer
#        (full polynomial = x^q + b1 x^{q-1} + ... + b_{q-1} x + 1)
#   mi - odd initial direction integers, v_i = m_i / 2^i
# Dimension 1 is the plain van der Corput recursion (q = 0, all m_i = 1).
# Source: Joe & Kuo (2008) new-joe-kuo-6.21201 table, as shipped with SciPy.
"""


def main():
    npz = os.path.join(
        os.path.dirname(scipy.stats.__file__), "_sobol_direction_numbers.npz"
    )
    data = np.load(npz)
    poly, vinit = data["poly"], data["vinit"]
    lines = [HEADER]
    lines.append("1 0 0 1\n")
    for dim in range(2, MAX_DIM + 1):
        p = int(poly[dim - 1])
        q = p.bit_length() - 1
        a = (p - (1 << q) - 1) >> 1
        ms = [int(v) for v in vinit[dim - 1, :q]]
        assert all(m % 2 == 1 and m < (1 << (i + 1)) for i, m in enumerate(ms)), dim
        lines.append(f"{dim} {q} {a} {' '.join(str(m) for m in ms)}\n")
    with open(OUT, "w") as fh:
        fh.writelines(lines)
    print(f"wrote {OUT}: dims 1..{MAX_DIM}")


if __name__ == "__main__":
    main()
