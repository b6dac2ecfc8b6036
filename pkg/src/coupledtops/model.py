"""Two coupled tops: Hamiltonian, unitary symmetries, block reduction, classification.

The Hamiltonian on the product space of two spin-j tops is

    H = (1+lam)/(j+1/2) * (L_z + M_z)  +  4(1-lam)/(j+1/2)^2 * L_x M_x

with lam in [0, 1].  It commutes with the top-exchange operator U1 and
with the signed pi-rotation U2 about z, so the Hilbert space splits into
four invariant subspaces labelled by the (U1, U2) eigenvalue pairs
(PP, PM, MP, MM).  A chirality operator C anticommutes with H and maps
PP and MP into themselves (chiral blocks) while exchanging PM and MM,
which pins the tenfold-way class of each block:

    PP, MP:  BDI(nu)  for integer j   (C^2 = +1, nu zero modes)
             CI       for half-integer j  (C^2 = -1)
    PM, MM:  AI       for all j

The topological index nu of a chiral block is computed as |trace| of the
reduced chirality matrix: paired +-1 eigenvalues cancel and only
unpaired ones survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from .spinops import SpinOperatorSet, TwoJ, as_two_j, build_spin_operators, canonical, identity, kron

SYMMETRY_TOL = 1e-12        # max-entry residual for exact-symmetry checks
SPECTRUM_TOL = 1e-10        # tolerance for spectral multiset comparisons
INVOLUTION_TOL = 1e-10      # tolerance on C_b^2 = 1 before taking the trace


class NonInvolutionError(ValueError):
    """The candidate chirality block does not square to the identity."""


class BlockLabel(Enum):
    """(U1, U2) eigenvalue pair of an invariant subspace."""

    PP = "pp"
    PM = "pm"
    MP = "mp"
    MM = "mm"

    @property
    def u1_sign(self) -> int:
        return +1 if self in (BlockLabel.PP, BlockLabel.PM) else -1

    @property
    def u2_sign(self) -> int:
        return +1 if self in (BlockLabel.PP, BlockLabel.MP) else -1

    @property
    def is_chiral(self) -> bool:
        """Whether the global chirality operator closes on this block."""
        return self.u2_sign == +1

    @classmethod
    def parse(cls, name: str) -> "BlockLabel":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown block {name!r}; expected one of pp, pm, mp, mm") from None


@dataclass(frozen=True)
class ModelParams:
    two_j: TwoJ
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "two_j", as_two_j(self.two_j))
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")

    @property
    def dim(self) -> int:
        return self.two_j.dim ** 2


class SubspaceDims(NamedTuple):
    pp: int
    pm: int
    mp: int
    mm: int

    def __getitem__(self, key):  # type: ignore[override]
        if isinstance(key, BlockLabel):
            return getattr(self, key.value)
        return tuple.__getitem__(self, key)


def subspace_dimensions(two_j) -> SubspaceDims:
    """Closed-form dimensions of the four invariant subspaces.

    Integer j:      N_pp = (j+1)^2
    Half-integer j: N_pp = (j+1)^2 - 1/4
    and  N_pm = (2j+1)(j+1) - N_pp,  N_mp = N_pp - (2j+1),  N_mm = N_pm.
    """
    two_j = as_two_j(two_j)
    v = two_j.value
    if two_j.is_integer:
        n_pp = (v + 2) ** 2 // 4
    else:
        n_pp = ((v + 2) ** 2 - 1) // 4
    n_sym = (v + 1) * (v + 2) // 2
    n_pm = n_sym - n_pp
    n_mp = n_pp - (v + 1)
    return SubspaceDims(pp=n_pp, pm=n_pm, mp=n_mp, mm=n_pm)


def flat_index(two_j: TwoJ, two_m1: int, two_m2: int) -> int:
    """Standard-basis index of |m1, m2>, row-major with m1 slow, both ascending."""
    d = two_j.dim
    i1 = (two_m1 + two_j.value) // 2
    i2 = (two_m2 + two_j.value) // 2
    return i1 * d + i2


def _exchange_parity(two_j: TwoJ, two_m1: int, two_m2: int) -> int:
    """Parity of the integer 2j - m1 - m2, which selects the U2 eigenvalue."""
    return (two_j.value - (two_m1 + two_m2) // 2) % 2


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of one invariant subspace over the standard basis.

    ``matrix`` has shape ((2j+1)^2, dim) with the basis vectors as columns;
    entries are 1 on diagonal states |m,m> and +-1/sqrt(2) on symmetric or
    antisymmetric pairs, so the change of basis is real orthogonal.
    ``pairs`` lists the defining (2m1, 2m2) per column, lexicographic.
    """

    label: BlockLabel
    two_j: TwoJ
    matrix: sp.csr_matrix
    pairs: tuple

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def build_subspace_bases(two_j) -> dict:
    """The four invariant-subspace bases keyed by BlockLabel.

    PP holds the diagonal states |m,m> and symmetric pair combinations with
    2j-m1-m2 even; PM the symmetric combinations with odd parity; MP the
    antisymmetric ones with even parity; MM antisymmetric with odd parity.
    Columns are ordered lexicographically in (m1, m2).
    """
    two_j = as_two_j(two_j)
    n_full = two_j.dim ** 2
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    bases = {}
    for label in BlockLabel:
        want_parity = 0 if label.u2_sign == +1 else 1
        symmetric = label.u1_sign == +1
        rows, cols, vals, pairs = [], [], [], []
        col = 0
        for tm1 in two_j.two_m_values():
            for tm2 in range(int(tm1), two_j.value + 1, 2):
                if _exchange_parity(two_j, tm1, int(tm2)) != want_parity:
                    continue
                if tm2 == tm1:
                    if not symmetric:
                        continue
                    rows.append(flat_index(two_j, tm1, tm1))
                    cols.append(col)
                    vals.append(1.0)
                else:
                    rows.append(flat_index(two_j, tm1, tm2))
                    cols.append(col)
                    vals.append(inv_sqrt2)
                    rows.append(flat_index(two_j, tm2, tm1))
                    cols.append(col)
                    vals.append(inv_sqrt2 if symmetric else -inv_sqrt2)
                pairs.append((int(tm1), int(tm2)))
                col += 1
        matrix = sp.csr_matrix(
            (np.asarray(vals), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=(n_full, col),
        )
        bases[label] = SubspaceBasis(label=label, two_j=two_j, matrix=canonical(matrix), pairs=tuple(pairs))

    dims = subspace_dimensions(two_j)
    for label, basis in bases.items():
        if basis.dim != dims[label]:
            raise AssertionError(f"basis dimension mismatch for {label}: {basis.dim} != {dims[label]}")
    return bases


def build_hamiltonian(params: ModelParams, ops: Optional[SpinOperatorSet] = None) -> sp.csr_matrix:
    """Sparse real symmetric H of dimension (2j+1)^2, at most 5 nonzeros per row."""
    two_j = params.two_j
    if ops is None:
        ops = build_spin_operators(two_j)
    d = two_j.dim
    eye = identity(d)
    j_half = (two_j.value + 1) / 2.0  # j + 1/2
    diag_part = kron(ops.lz, eye) + kron(eye, ops.lz)
    coupling = kron(ops.lx, ops.lx)
    h = (1.0 + params.lam) / j_half * diag_part + 4.0 * (1.0 - params.lam) / j_half**2 * coupling
    return canonical(h)


def build_u1(two_j) -> sp.csr_matrix:
    """Top exchange U1|m1,m2> = |m2,m1>; a 0/1 permutation matrix."""
    two_j = as_two_j(two_j)
    d = two_j.dim
    i1, i2 = np.divmod(np.arange(d * d), d)
    rows = i2 * d + i1
    return canonical(sp.csr_matrix((np.ones(d * d), (rows, np.arange(d * d))), shape=(d * d, d * d)))


def build_u2(two_j) -> sp.csr_matrix:
    """Signed pi-rotation about z: U2|m1,m2> = (-1)^(2j-m1-m2)|m1,m2>, diagonal +-1."""
    two_j = as_two_j(two_j)
    tm = two_j.two_m_values()
    q = two_j.value - (tm[:, None] + tm[None, :]) // 2
    signs = np.where(q % 2 == 0, 1.0, -1.0).ravel()
    return canonical(sp.diags(signs))


def build_chirality(two_j) -> sp.csr_matrix:
    """Chirality C|m1,m2> = (-1)^(j-m2) |-m1,-m2>, a real signed permutation.

    C^2 = +1 for integer j and -1 for half-integer j (the complex scalar
    that would make the operator itself real-phase-free at half-integer j
    is dropped; only the sign of C^2 matters for classification, see
    ``chirality_square_sign``).
    """
    two_j = as_two_j(two_j)
    d = two_j.dim
    v = two_j.value
    cols = []
    rows = []
    vals = []
    for tm1 in two_j.two_m_values():
        for tm2 in two_j.two_m_values():
            cols.append(flat_index(two_j, int(tm1), int(tm2)))
            rows.append(flat_index(two_j, -int(tm1), -int(tm2)))
            vals.append(1.0 if ((v - int(tm2)) // 2) % 2 == 0 else -1.0)
    return canonical(sp.csr_matrix((vals, (rows, cols)), shape=(d * d, d * d)))


def chirality_square_sign(two_j) -> int:
    """Sign of C^2: +1 for integer j, -1 for half-integer j."""
    return +1 if as_two_j(two_j).is_integer else -1


def topological_index(c_block) -> int:
    """Topological index nu = |trace C_b| of a chiral block with C_b^2 = 1.

    Paired +-1 eigenvalues cancel in the trace; unpaired ones survive, so
    the trace counts the symmetry-protected zero modes of the block.
    """
    c = sp.csr_matrix(c_block)
    n = c.shape[0]
    if n == 0:
        return 0
    residual = abs(c @ c - identity(n)).max()
    if residual > INVOLUTION_TOL:
        raise NonInvolutionError(f"C_b^2 deviates from identity by {residual:.2e}")
    trace = c.diagonal().sum()
    nu = int(round(abs(trace)))
    if abs(abs(trace) - nu) > 1e-9:
        raise NonInvolutionError(f"trace of C_b is not near-integer: {trace!r}")
    return nu


@dataclass(frozen=True)
class BlockClass:
    """Tenfold-way class of a reduced block: AI, BDI(nu), or CI."""

    kind: str            # "AI" | "BDI" | "CI"
    nu: Optional[int]    # topological index for BDI; 0 for CI; None for AI

    def __post_init__(self):
        if self.kind not in ("AI", "BDI", "CI"):
            raise ValueError(f"unknown class kind {self.kind!r}")

    @property
    def zero_modes(self) -> int:
        return self.nu or 0

    def __str__(self) -> str:
        return f"BDI({self.nu})" if self.kind == "BDI" else self.kind


def classify(label: BlockLabel, two_j) -> BlockClass:
    """Class of one block: PM/MM -> AI; PP/MP -> BDI(nu) or CI by parity of 2j.

    For integer j the index nu is computed from the trace of the reduced
    chirality matrix rather than from a closed-form parity rule.
    """
    two_j = as_two_j(two_j)
    if not label.is_chiral:
        return BlockClass(kind="AI", nu=None)
    if not two_j.is_integer:
        return BlockClass(kind="CI", nu=0)
    basis = build_subspace_bases(two_j)[label]
    c_block = reduce_chirality_block(two_j, basis)
    return BlockClass(kind="BDI", nu=topological_index(c_block))


def reduce_chirality_block(two_j, basis: SubspaceBasis, chirality: Optional[sp.csr_matrix] = None) -> sp.csr_matrix:
    """C_b = B^T C B for a chiral-block basis B."""
    if chirality is None:
        chirality = build_chirality(two_j)
    return canonical(basis.matrix.T @ chirality @ basis.matrix)


def reduce_block(params: ModelParams, label: BlockLabel, basis: Optional[SubspaceBasis] = None,
                 hamiltonian: Optional[sp.csr_matrix] = None) -> sp.csr_matrix:
    """Reduced Hamiltonian H_b = B^T H B of a single block (the ensemble hot path)."""
    if basis is None:
        basis = build_subspace_bases(params.two_j)[label]
    if hamiltonian is None:
        hamiltonian = build_hamiltonian(params)
    return canonical(basis.matrix.T @ hamiltonian @ basis.matrix)


@dataclass(frozen=True)
class Block:
    """One reduced block: matrix, basis, class, and (for chiral blocks) C_b."""

    label: BlockLabel
    basis: SubspaceBasis
    matrix: sp.csr_matrix
    block_class: BlockClass
    chirality: Optional[sp.csr_matrix]
    anticommutator_residual: Optional[float]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BlockDecomposition:
    params: ModelParams
    blocks: dict
    cross_block_residual: float
    offblock_chirality_residual: float

    def __getitem__(self, label: BlockLabel) -> Block:
        return self.blocks[label]


def _max_abs(matrix) -> float:
    m = sp.csr_matrix(matrix)
    return float(abs(m).max()) if m.nnz else 0.0


def reduce(params: ModelParams, verify: bool = True) -> BlockDecomposition:
    """Full block decomposition of H with symmetry verification.

    Checks performed when ``verify`` (residuals must stay below
    ``SYMMETRY_TOL``): vanishing cross-block matrix elements of H,
    anticommutation of each chiral block with its reduced chirality
    matrix, and that C maps the PM basis into the span of the MM basis
    and vice versa.  A dimension-0 block (MP at j=1/2) is legal and
    carries an empty matrix.
    """
    two_j = params.two_j
    h = build_hamiltonian(params)
    bases = build_subspace_bases(two_j)
    chirality = build_chirality(two_j)

    blocks = {}
    cross_residual = 0.0
    for label, basis in bases.items():
        h_b = canonical(basis.matrix.T @ h @ basis.matrix)
        block_class = BlockClass(kind="AI", nu=None)
        c_b = None
        anti_res = None
        if label.is_chiral:
            c_b = reduce_chirality_block(two_j, basis, chirality)
            anti_res = _max_abs(h_b @ c_b + c_b @ h_b)
            if two_j.is_integer:
                block_class = BlockClass(kind="BDI", nu=topological_index(c_b))
            else:
                block_class = BlockClass(kind="CI", nu=0)
                if c_b.shape[0] and abs(c_b.diagonal().sum()) > INVOLUTION_TOL:
                    raise NonInvolutionError("CI chirality block has unbalanced +-i eigenvalues")
            if verify and anti_res > SYMMETRY_TOL:
                raise AssertionError(f"{label} anticommutator residual {anti_res:.2e} exceeds {SYMMETRY_TOL}")
        blocks[label] = Block(label=label, basis=basis, matrix=h_b, block_class=block_class,
                              chirality=c_b, anticommutator_residual=anti_res)

    if verify:
        labels = list(BlockLabel)
        for i, la in enumerate(labels):
            for lb in labels[i + 1:]:
                r = _max_abs(bases[la].matrix.T @ h @ bases[lb].matrix)
                cross_residual = max(cross_residual, r)
        if cross_residual > SYMMETRY_TOL:
            raise AssertionError(f"cross-block residual {cross_residual:.2e} exceeds {SYMMETRY_TOL}")

    # C exchanges the two AI subspaces; check the image lands in the partner span.
    offblock_residual = 0.0
    if verify:
        for src, dst in ((BlockLabel.PM, BlockLabel.MM), (BlockLabel.MM, BlockLabel.PM)):
            image = chirality @ bases[src].matrix
            projected = bases[dst].matrix @ (bases[dst].matrix.T @ image)
            offblock_residual = max(offblock_residual, _max_abs(image - projected))
        if offblock_residual > SYMMETRY_TOL:
            raise AssertionError(f"off-block chirality residual {offblock_residual:.2e} exceeds {SYMMETRY_TOL}")

    return BlockDecomposition(params=params, blocks=blocks, cross_block_residual=cross_residual,
                              offblock_chirality_residual=offblock_residual)


def build_time_reversal_check(params: ModelParams) -> float:
    """Max imaginary part of H and all reduced blocks in their bases.

    Time reversal acts as complex conjugation in both the standard basis and
    the real-orthogonally related block bases, so T-invariance is exactly the
    reality of the matrices.  The whole pipeline is built in real dtype, so
    the residual is structurally zero; this check asserts the dtypes.
    """
    h = build_hamiltonian(params)
    if np.iscomplexobj(h.data):
        return float(abs(h.data.imag).max())
    for basis in build_subspace_bases(params.two_j).values():
        h_b = basis.matrix.T @ h @ basis.matrix
        if np.iscomplexobj(h_b.data):
            return float(abs(h_b.data.imag).max())
    return 0.0
