"""
The five-dimensional representation of the double of E_q(2).

The double is generated by J, b_+, b_- and the coordinates π, π_+, π_-, with
⟨J, π⟩ = ⟨b_+, π_+⟩ = ⟨b_-, π_-⟩ = 1. The representation extends a
four-dimensional one by the functionals χ_1..χ_4 in row 0:

    ρ(J)   = −e22 + e33
    ρ(b_+) = e^{−3z/4} e12 + e^{z/4} e34
    ρ(b_-) = e^{z/4} e13 + e^{5z/4} e24
    ρ(π)   = (−z/κ) e04 + z(e11 − e44)
    ρ(π_+) = e^{z/2} e03 + e^{z/2} κ (e21 + e43)
    ρ(π_-) = −e^{−z/2} e02 − e^{−z/2} κ (e31 + e42)

with κ = 2e^{−z/4} sinh(z/2) = e^{z/4} − e^{−3z/4}.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from scipy.linalg import expm

from core.exceptions import ParameterError

logger = logging.getLogger(__name__)

DIM = 5

GENERATORS = ('J', 'b+', 'b-', 'pi', 'pi+', 'pi-')
EXPONENTIALS = ('exp(zJ)', 'exp(-zJ)', 'exp(-pi)')
CHI_NAMES = ('chi1', 'chi2', 'chi3', 'chi4')


def unit_matrix(i: int, j: int) -> np.ndarray:
    """e_ij"""
    m = np.zeros((DIM, DIM))
    m[i, j] = 1.0
    return m


def kappa(z: float) -> float:
    """
    κ = 2e^{−z/4} sinh(z/2)

    Raises:
        ParameterError: z = 0
    """
    if z == 0:
        raise ParameterError("κ vanishes at z = 0", z)
    return 2.0 * np.exp(-z / 4) * np.sinh(z / 2)


@dataclass(frozen=True)
class Eq2Rep:
    """
    Attributes:
        z: Deformation parameter
        kappa: κ(z)
        matrices: Generator name -> 5×5 matrix
        exponentials: e^{zJ}, e^{−zJ} and e^{−π} in closed form
        chi: Matrices of χ_1..χ_4 as elements of the enveloping algebra
    """
    z: float
    kappa: float
    matrices: Dict[str, np.ndarray] = field(repr=False, compare=False)
    exponentials: Dict[str, np.ndarray] = field(repr=False, compare=False)
    chi: Tuple[np.ndarray, ...] = field(repr=False, compare=False)

    def __getitem__(self, name: str) -> np.ndarray:
        if name in self.matrices:
            return self.matrices[name]
        if name in self.exponentials:
            return self.exponentials[name]
        if name in CHI_NAMES:
            return self.chi[CHI_NAMES.index(name)]
        raise KeyError(name)


def generator_matrices(z: float, k: float) -> Dict[str, np.ndarray]:
    e = unit_matrix
    return {
        'J': -e(2, 2) + e(3, 3),
        'b+': np.exp(-3 * z / 4) * e(1, 2) + np.exp(z / 4) * e(3, 4),
        'b-': np.exp(z / 4) * e(1, 3) + np.exp(5 * z / 4) * e(2, 4),
        'pi': (-z / k) * e(0, 4) + z * (e(1, 1) - e(4, 4)),
        'pi+': np.exp(z / 2) * e(0, 3) + np.exp(z / 2) * k * (e(2, 1) + e(4, 3)),
        'pi-': -np.exp(-z / 2) * e(0, 2) - np.exp(-z / 2) * k * (e(3, 1) + e(4, 2)),
    }


def exponential_matrices(z: float) -> Dict[str, np.ndarray]:
    """
    ρ(J) is diagonal; ρ(−π) is diagonal plus the single off-diagonal entry
    (z/κ) e04 whose exponential contributes (z/κ)(e^z − 1)/z = e^{3z/4}.
    """
    exp_minus_pi = np.diag([1.0, np.exp(-z), 1.0, 1.0, np.exp(z)])
    exp_minus_pi[0, 4] = np.exp(3 * z / 4)
    return {
        'exp(zJ)': np.diag([1.0, 1.0, np.exp(-z), np.exp(z), 1.0]),
        'exp(-zJ)': np.diag([1.0, 1.0, np.exp(z), np.exp(-z), 1.0]),
        'exp(-pi)': exp_minus_pi,
    }


def chi_matrices(z: float, k: float, m: Dict[str, np.ndarray], x: Dict[str, np.ndarray]) -> Tuple[np.ndarray, ...]:
    """χ_1 = −κ b_-b_+,  χ_2 = −e^{−z/2} b_-,  χ_3 = e^{z/2} e^{−zJ} b_+,  χ_4 = κ^{-1}(e^{−zJ} − 1)"""
    return (
        -k * m['b-'] @ m['b+'],
        -np.exp(-z / 2) * m['b-'],
        np.exp(z / 2) * x['exp(-zJ)'] @ m['b+'],
        (x['exp(-zJ)'] - np.eye(DIM)) / k,
    )


def eq2_matrices(z: float) -> Eq2Rep:
    """
    Raises:
        ParameterError: z = 0
    """
    z = float(z)
    k = kappa(z)
    matrices = generator_matrices(z, k)
    exponentials = exponential_matrices(z)
    chi = chi_matrices(z, k, matrices, exponentials)
    logger.debug("E_q(2) representation at z = %g, κ = %g", z, k)
    return Eq2Rep(z=z, kappa=k, matrices=matrices, exponentials=exponentials, chi=chi)


def exponential_residuals(rep: Eq2Rep) -> Dict[str, float]:
    """Max-norm distance of the closed forms from scipy's matrix exponential."""
    z = rep.z
    series = {
        'exp(zJ)': expm(z * rep['J']),
        'exp(-zJ)': expm(-z * rep['J']),
        'exp(-pi)': expm(-rep['pi']),
    }
    return {name: float(np.max(np.abs(rep[name] - series[name]))) for name in EXPONENTIALS}
