import numpy as np

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-12
# relative eigenvalue threshold separating support from kernel
KERNEL_REL_TOL = 1e-10
KERNEL_MASS_TOL = 1e-10
DEGENERATE_NORM = 1e-12
TORIC_REL_TOL = 1e-9
SEPARABLE_TOL = 1e-12
CLASSICAL_T_TOL = 1e-10

EXIT_OK = 0
# a verification command ran but one of its checks failed
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NOT_CONVERGED = 3

LOG2 = float(np.log(2.0))

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = (KET_0 + KET_1) / np.sqrt(2)
KET_MINUS = (KET_0 - KET_1) / np.sqrt(2)
KET_0_PRIME = (KET_0 + 1j * KET_1) / np.sqrt(2)
KET_1_PRIME = (KET_0 - 1j * KET_1) / np.sqrt(2)

# psi_1 .. psi_4, in this order everywhere
BELL_VECTORS = (
    (np.kron(KET_0, KET_0) + np.kron(KET_1, KET_1)) / np.sqrt(2),
    (np.kron(KET_0, KET_0) - np.kron(KET_1, KET_1)) / np.sqrt(2),
    (np.kron(KET_0, KET_1) + np.kron(KET_1, KET_0)) / np.sqrt(2),
    (np.kron(KET_0, KET_1) - np.kron(KET_1, KET_0)) / np.sqrt(2),
)

# Classically correlated product forms of the six separable vertices
# 1/2(|psi_i><psi_i| + |psi_j><psi_j|), keyed by the 0-based pair (i, j).
# Each entry lists the two product terms |a><a| (x) |b><b| as (a, b).
PRODUCT_FORMS = {
    (0, 1): ((KET_0, KET_0), (KET_1, KET_1)),
    (0, 2): ((KET_PLUS, KET_PLUS), (KET_MINUS, KET_MINUS)),
    (0, 3): ((KET_0_PRIME, KET_1_PRIME), (KET_1_PRIME, KET_0_PRIME)),
    (1, 2): ((KET_1_PRIME, KET_1_PRIME), (KET_0_PRIME, KET_0_PRIME)),
    (1, 3): ((KET_MINUS, KET_PLUS), (KET_PLUS, KET_MINUS)),
    (2, 3): ((KET_0, KET_1), (KET_1, KET_0)),
}
