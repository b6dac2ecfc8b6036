"""Exact sparse angular-momentum matrices for a single top.

The quantum number j is carried everywhere as the integer 2j, so the
integer/half-integer distinction (which the symmetry classification
branches on) never touches floating point.  All stored matrices are
real: L_y is kept factored as i*Y with Y real antisymmetric, so any
Hamiltonian built from L_x, L_z and tensor products stays in real
arithmetic and real-symmetric eigensolvers apply throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True, order=True)
class TwoJ:
    """Total angular momentum quantum number, stored as the integer 2j."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, (int, np.integer)) or isinstance(self.value, bool):
            raise TypeError(f"2j must be an integer, got {self.value!r}")
        if self.value < 0:
            raise ValueError(f"2j must be >= 0, got {self.value}")
        object.__setattr__(self, "value", int(self.value))

    @property
    def j(self) -> float:
        return self.value / 2.0

    @property
    def dim(self) -> int:
        """Dimension 2j+1 of the single-top Hilbert space."""
        return self.value + 1

    @property
    def is_integer(self) -> bool:
        """True when j is integer (2j even)."""
        return self.value % 2 == 0

    @property
    def hbar(self) -> float:
        """Effective Planck constant 1/(j+1/2) of the classical limit."""
        return 2.0 / (self.value + 1)

    @property
    def casimir(self) -> float:
        """j(j+1)."""
        return self.value * (self.value + 2) / 4.0

    def two_m_values(self) -> np.ndarray:
        """All 2m for m = -j..j ascending."""
        return np.arange(-self.value, self.value + 1, 2)

    @classmethod
    def from_j(cls, j: float) -> "TwoJ":
        two_j = round(2 * j)
        if abs(2 * j - two_j) > 1e-12:
            raise ValueError(f"j must be integer or half-integer, got {j}")
        return cls(two_j)

    def __str__(self) -> str:
        return str(self.value // 2) if self.is_integer else f"{self.value}/2"


def as_two_j(value) -> TwoJ:
    return value if isinstance(value, TwoJ) else TwoJ(int(value))


def canonical(matrix) -> sp.csr_matrix:
    """Return CSR in canonical form: duplicates summed, no stored zeros, sorted indices."""
    out = sp.csr_matrix(matrix)
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


def identity(dim: int) -> sp.csr_matrix:
    return sp.identity(dim, dtype=float, format="csr")


def kron(a, b) -> sp.csr_matrix:
    """Kronecker product with the row-major convention row = r_a*dim_b + r_b."""
    return canonical(sp.kron(a, b, format="csr"))


@dataclass(frozen=True)
class SpinOperatorSet:
    """L_x, L_z and the real factor of L_y = i*ly_imag, dimension 2j+1 each."""

    two_j: TwoJ
    lx: sp.csr_matrix
    lz: sp.csr_matrix
    ly_imag: sp.csr_matrix

    @property
    def dim(self) -> int:
        return self.two_j.dim

    @property
    def ly(self) -> sp.csr_matrix:
        """The complex matrix L_y itself (rarely needed; breaks the real pipeline)."""
        return canonical(1j * self.ly_imag)


def build_spin_operators(two_j) -> SpinOperatorSet:
    """Angular momentum matrices in the L_z eigenbasis |m>, m = -j..j ascending.

    L_z is diagonal with entries m.  The off-diagonal elements of L_x and
    Y = -i L_y come from the closed-form ladder amplitude
    sqrt(j(j+1) - m(m+1))/2 evaluated directly in double precision for
    each m, with no recursion, so there is no error accumulation at
    large j.
    """
    two_j = as_two_j(two_j)
    j = two_j.j
    m = two_j.two_m_values() / 2.0
    lz = canonical(sp.diags(m))

    # amp[i] = <m_i + 1 | L_+ | m_i> / 2 for i = 0 .. dim-2
    amp = 0.5 * np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    lx = canonical(sp.diags([amp, amp], [1, -1]))
    ly_imag = canonical(sp.diags([amp, -amp], [1, -1]))
    return SpinOperatorSet(two_j=two_j, lx=lx, lz=lz, ly_imag=ly_imag)
