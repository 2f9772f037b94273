"""Qubit states and entanglement measures computed straight from the state.

The state ``|Psi_k(r1, r0, rm1)>`` lives on occupation triples
``(k1, k0, km1)`` with ``k1 + k0 + km1 = k``; its squared amplitudes are the
multinomial probabilities.  Amplitudes are kept as exact squares, and square
roots are only taken of products that are perfect squares.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .exactmath import ScaleError, exact_sqrt, multinomial
from .ratios import RegionRatios, as_ratios

Triple = tuple[int, int, int]

DIRECT_SUM_GUARD = 1_000_000
TWIST_DIM_GUARD = 4096
ZERO_EIG_TOL = 1e-12


@dataclass(frozen=True)
class QubitAmplitudes:
    k: int
    amp2: dict[Triple, Fraction | float]

    def __getitem__(self, t: Triple):
        return self.amp2.get(t, 0)

    def norm2(self):
        vals = list(self.amp2.values())
        return sum(vals) if all(isinstance(v, Fraction) for v in vals) else math.fsum(vals)

    def amplitude(self, t: Triple) -> float:
        return math.sqrt(float(self.amp2.get(t, 0)))


def occupation_triples(k: int) -> Iterator[Triple]:
    """Triples summing to ``k`` in lexicographic order."""
    for k1 in range(k + 1):
        for k0 in range(k - k1 + 1):
            yield (k1, k0, k - k1 - k0)


def build_qubit_state(k: int, r) -> QubitAmplitudes:
    if k < 1:
        raise ValueError("k must be >= 1")
    r = as_ratios(r)
    r1, r0, rm1 = r.as_tuple()
    amp2 = {}
    for t in occupation_triples(k):
        a, b, c = t
        v = multinomial(k, t) * r1**a * r0**b * rm1**c
        if v:
            amp2[t] = v
    return QubitAmplitudes(k, amp2)


def direct_sum_admits(k: int, n: int) -> bool:
    return (k + 1) ** (n + 1) <= DIRECT_SUM_GUARD


def negativity_direct_sum(k: int, n: int, r) -> Fraction:
    """``exp[E_n]`` from the cyclic product of state coefficients.

    Sums over all ``k_l^(j)`` of
    ``prod_j c(k1^(j+1), k0^(j), km1^(j)) c*(k1^(j), k0^(j), km1^(j+1))``.
    Both factors vanish off the support ``k1 + k0 + km1 = k``.  The first
    factor fixes ``km1^(j) = k - k1^(j+1) - k0^(j)``; substituting that into
    the second gives ``k0^(j+1) = k1^(j) + k0^(j) - k1^(j+2)``, so the ``k1``
    tuple and ``k0^(1)`` determine everything and ``(k+1)^(n+1)`` assignments
    are visited.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if not direct_sum_admits(k, n):
        raise ScaleError(f"direct sum over (k+1)^(n+1) = {(k + 1) ** (n + 1)} assignments exceeds guard")
    state = build_qubit_state(k, r)
    amp2 = state.amp2
    exact = as_ratios(r).exact
    total = Fraction(0) if exact else 0.0
    rng = range(k + 1)
    for k1 in itertools.product(rng, repeat=n):
        for start in rng:
            k0 = [start]
            for j in range(n - 1):
                k0.append(k1[j] + k0[j] - k1[(j + 2) % n])
            if min(k0) < 0 or max(k0) > k:
                continue
            km1 = [k - k1[(j + 1) % n] - k0[j] for j in range(n)]
            if min(km1) < 0:
                continue
            prod = 1
            for j in range(n):
                a = amp2.get((k1[(j + 1) % n], k0[j], km1[j]))
                b = amp2.get((k1[j], k0[j], km1[(j + 1) % n]))
                if not a or not b:
                    prod = 0
                    break
                prod *= a * b
            if prod:
                total += exact_sqrt(prod) if exact else math.sqrt(prod)
    return total


def _state_tensor(state: QubitAmplitudes, dim: int | None = None) -> np.ndarray:
    """Amplitudes as a ``(d, d, d)`` array indexed by ``(k1, k0, km1)``."""
    d = state.k + 1 if dim is None else dim
    psi = np.zeros((d, d, d), dtype=complex)
    for (a, b, c), v in state.amp2.items():
        psi[a, b, c] = math.sqrt(float(v))
    return psi


def partial_transposed_matrix(psi: np.ndarray) -> np.ndarray:
    """``(Tr_0 |psi><psi|)^{T_-1}`` on the ``(k1, km1)`` basis, row-major."""
    d1, _, dm = psi.shape
    # rho[a, c, a', c'] = sum_b psi[a, b, c] conj(psi[a', b, c'])
    rho = np.einsum("abc,xby->acxy", psi, psi.conj())
    # transpose the km1 index: <a, c|rho^T|a', c'> = <a, c'|rho|a', c>
    rho_pt = rho.transpose(0, 3, 2, 1)
    return rho_pt.reshape(d1 * dm, d1 * dm)


def negativity_from_tensor(psi: np.ndarray, n: int) -> float:
    mat = partial_transposed_matrix(psi)
    return float(np.trace(np.linalg.matrix_power(mat, n)).real)


def density_matrix_negativity(k: int, n: int, r) -> float:
    """``exp[E_n]`` by explicit partial trace, partial transpose and matrix power."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return negativity_from_tensor(_state_tensor(build_qubit_state(k, r)), n)


def negativity_spectrum(k: int, r) -> list[float]:
    """Eigenvalues of the partially transposed reduced matrix, descending."""
    mat = partial_transposed_matrix(_state_tensor(build_qubit_state(k, r)))
    eig = np.linalg.eigvalsh(mat)
    return sorted((float(x) for x in eig), reverse=True)


def nonzero_spectrum(k: int, r) -> list[float]:
    return [x for x in negativity_spectrum(k, r) if abs(x) >= ZERO_EIG_TOL]


def log_negativity_from_spectrum(k: int, r) -> float:
    return math.log(math.fsum(abs(x) for x in negativity_spectrum(k, r)))


def reduced_matrix_two_region(k: int, r1, r0) -> list[list]:
    """``Tr_0 |Psi'><Psi'|`` on the ``k1 = 0..k`` basis.

    Entry ``(a, a')`` pairs ``c(a, k0)`` with ``c(a', k0)``; both are
    non-zero only when ``a = a' = k - k0``, so the matrix is diagonal and exact.
    """
    state = build_qubit_state(k, RegionRatios(r1, r0, 0 * r1))
    mat = [[0 * r1 for _ in range(k + 1)] for _ in range(k + 1)]
    for a in range(k + 1):
        for a2 in range(k + 1):
            acc = 0 * r1
            for k0 in range(k + 1):
                x = state[(a, k0, 0)]
                y = state[(a2, k0, 0)]
                if x and y:
                    acc += x if a == a2 else _sqrt_product(x, y)
            mat[a][a2] = acc
    return mat


def _sqrt_product(x, y):
    return exact_sqrt(x * y) if isinstance(x, Fraction) else math.sqrt(x * y)


def _matmul(a: list[list], b: list[list]) -> list[list]:
    size = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(size)) for j in range(size)] for i in range(size)]


def renyi_direct(k: int, n: int, r1, r0):
    """``Tr[(Tr_0 |Psi'><Psi'|)^n]`` by exact matrix powers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mat = reduced_matrix_two_region(k, r1, r0)
    power = mat
    for _ in range(n - 1):
        power = _matmul(power, mat)
    return sum(power[i][i] for i in range(k + 1))


def twist_operator_permutation(d: int, n: int) -> np.ndarray:
    """Index map of ``P_1^+ P_-1^-`` on the ``n``-fold product of ``d^3``-dim factors.

    Basis state ``(k^(1), ..., k^(n))`` goes to the state whose copy ``j``
    is ``(k1^(j-1), k0^(j), km1^(j+1))``.  Entry ``i`` of the result is the
    image index of basis vector ``i``.
    """
    size = d ** (3 * n)
    if size > TWIST_DIM_GUARD:
        raise ScaleError(f"twist operator dimension {size} exceeds {TWIST_DIM_GUARD}")
    # axes are ordered (copy 1: k1, k0, km1, copy 2: ...)
    perm_axes = []
    for j in range(n):
        perm_axes += [3 * ((j - 1) % n), 3 * j + 1, 3 * ((j + 1) % n) + 2]
    image = np.empty(size, dtype=np.int64)
    for flat in range(size):
        digits = np.unravel_index(flat, (d,) * (3 * n))
        new = [digits[ax] for ax in perm_axes]
        image[flat] = np.ravel_multi_index(new, (d,) * (3 * n))
    return image


def twist_operator_matrix(d: int, n: int) -> np.ndarray:
    image = twist_operator_permutation(d, n)
    size = len(image)
    mat = np.zeros((size, size), dtype=np.int8)
    mat[image, np.arange(size)] = 1
    return mat


def twist_operator_check(k: int, n: int, r) -> Fraction:
    """``<psi|^{(x)n} P_1^+ P_-1^- |psi>^{(x)n}`` evaluated exactly.

    Each basis pair contributes a product of ``2n`` amplitudes whose square
    is a product of exact squared amplitudes.
    """
    d = k + 1
    image = twist_operator_permutation(d, n)
    state = build_qubit_state(k, r)
    amp2 = state.amp2
    exact = as_ratios(r).exact
    shape = (d,) * (3 * n)
    total = Fraction(0) if exact else 0.0
    for flat in range(len(image)):
        src = np.unravel_index(flat, shape)
        dst = np.unravel_index(int(image[flat]), shape)
        prod = 1
        for digits in (src, dst):
            for j in range(n):
                t = (int(digits[3 * j]), int(digits[3 * j + 1]), int(digits[3 * j + 2]))
                v = amp2.get(t)
                if not v:
                    prod = 0
                    break
                prod *= v
            if not prod:
                break
        if prod:
            total += exact_sqrt(prod) if exact else math.sqrt(prod)
    return total


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, rr = np.linalg.qr(z)
    ph = np.diag(rr) / np.abs(np.diag(rr))
    return q * ph


def apply_factor_unitary(psi: np.ndarray, u: np.ndarray, factor: int) -> np.ndarray:
    axis = {1: 0, 0: 1, -1: 2}[factor]
    return np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)


def unitary_invariance_check(
    k: int,
    r,
    seed: int,
    n: int = 2,
    factors: tuple[int, ...] = (1, 0, -1),
    dim: int | None = None,
    tol: float = 1e-9,
    identity: bool = False,
) -> bool:
    """Rotate the chosen tensor factors by random unitaries and compare ``exp[E_n]``.

    ``dim`` truncates each factor (default ``k + 2`` so the rotation mixes in
    a level the state does not occupy).
    """
    d = k + 2 if dim is None else dim
    state = build_qubit_state(k, r)
    psi = _state_tensor(state, d)
    before = negativity_from_tensor(psi, n)
    rng = np.random.default_rng(seed)
    rotated = psi
    for f in factors:
        u = np.eye(d) if identity else random_unitary(d, rng)
        rotated = apply_factor_unitary(rotated, u, f)
    after = negativity_from_tensor(rotated, n)
    if identity:
        return before == after
    return abs(before - after) <= tol
