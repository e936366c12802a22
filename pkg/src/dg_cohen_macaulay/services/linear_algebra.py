"""
Row reduction over a prime field on numpy integer arrays.
"""
from typing import List, Tuple

import numpy as np


def _dtype_for(p: int):
    # products of two residues must fit in int64
    return np.int64 if p < 2 ** 31 else object


def rref_mod_p(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form modulo p.

    Args:
        matrix: 2-D integer array.
        p: Prime modulus.

    Returns:
        The reduced matrix and the list of pivot columns.
    """
    m = np.array(matrix, dtype=_dtype_for(p)) % p
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if len(nonzero) == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_mod_p(matrix: np.ndarray, p: int) -> List[np.ndarray]:
    """
    Basis of the right null space {v : matrix·v = 0} modulo p.

    Args:
        matrix: 2-D integer array with one column per unknown.
        p: Prime modulus.

    Returns:
        Basis vectors, one per free column.
    """
    matrix = np.atleast_2d(np.array(matrix, dtype=_dtype_for(p)))
    cols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return [np.eye(cols, dtype=_dtype_for(p))[i] for i in range(cols)]
    reduced, pivots = rref_mod_p(matrix, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=_dtype_for(p))
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = (-reduced[row, f]) % p
        basis.append(v)
    return basis


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    matrix = np.atleast_2d(np.array(matrix, dtype=_dtype_for(p)))
    if matrix.size == 0:
        return 0
    return len(rref_mod_p(matrix, p)[1])
