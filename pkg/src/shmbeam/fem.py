"""Finite-element cantilever beam with delamination damage.

The beam is a clamped-free Euler-Bernoulli mesh of 2-node Hermite
elements with a consistent mass matrix (default 36 elements / 37 nodes,
2 DOF per node, root clamped, so 72 free DOFs). The laminate is
homogenized into a single bending stiffness EI, calibrated so the
pristine fundamental frequency hits a target; only EI / (rho*A) enters
the frequencies. Delamination damage is a multiplicative EI knockdown
over a contiguous span of elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, NumericalError

# (beta*L)^2 for the first four clamped-free modes of a uniform beam
# (roots of cosh(bL)*cos(bL) = -1); omega_i = (bL)_i^2 * sqrt(EI/(rhoA L^4)).
CANTILEVER_BL2 = (3.51602, 22.0345, 61.6972, 120.902)

# Damage catalog: 3 severities (EI knockdown factors), 2 span lengths
# (elements are 1 inch on the default mesh), 10 start locations.
KNOCKDOWN_FACTORS = (1.0, 0.9, 0.75, 0.5)
DAMAGE_LENGTHS = (1, 2)
DAMAGE_START_ELEMENTS = tuple(range(3, 31, 3))  # 3, 6, ..., 30
N_DAMAGE_CASES = 1 + (len(KNOCKDOWN_FACTORS) - 1) * len(DAMAGE_LENGTHS) * len(DAMAGE_START_ELEMENTS)

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class BeamConfig:
    """Geometry, inertia and modal-truncation settings for the beam.

    Units only need to be mutually consistent; with the defaults
    (length 36, unit mass per length) the calibrated EI reproduces the
    target fundamental of 10 rad/s.
    """

    length: float = 36.0
    n_elements: int = 36
    plies: int = 18  # laminate metadata only; mechanics are homogenized
    omega1_target: float = 10.0
    mass_per_length: float = 1.0
    n_modes: int = 4
    damping_ratio: float = 0.005

    def __post_init__(self):
        if self.n_elements < 4:
            raise InvalidInputError(f"n_elements must be >= 4, got {self.n_elements}")
        if self.length <= 0:
            raise InvalidInputError(f"length must be positive, got {self.length}")
        if self.omega1_target <= 0:
            raise InvalidInputError(
                f"omega1_target must be positive, got {self.omega1_target}"
            )
        if self.mass_per_length <= 0:
            raise InvalidInputError(
                f"mass_per_length must be positive, got {self.mass_per_length}"
            )
        if not 0.0 <= self.damping_ratio < 1.0:
            raise InvalidInputError(
                f"damping_ratio must lie in [0, 1), got {self.damping_ratio}"
            )
        if not 1 <= self.n_modes <= self.n_free_dofs:
            raise InvalidInputError(
                f"n_modes must lie in [1, {self.n_free_dofs}], got {self.n_modes}"
            )

    @property
    def n_nodes(self) -> int:
        return self.n_elements + 1

    @property
    def n_free_dofs(self) -> int:
        # 2 DOF per node, root node's (w, theta) clamped
        return 2 * self.n_elements

    @property
    def element_length(self) -> float:
        return self.length / self.n_elements


@dataclass(frozen=True)
class DamageSpec:
    """One of the 61 delamination cases (case 0 is the pristine beam).

    The canonical ordering is
    ``case_id = 1 + (severity-1)*20 + (length_elements-1)*10 + location_index``
    with ``start_element = DAMAGE_START_ELEMENTS[location_index]``.
    """

    case_id: int
    severity: int
    knockdown_factor: float
    length_elements: int
    start_element: int

    def __post_init__(self):
        if not 0 <= self.case_id < N_DAMAGE_CASES:
            raise InvalidInputError(f"case_id must lie in [0, 60], got {self.case_id}")
        if (self.case_id == 0) != (self.severity == 0):
            raise InvalidInputError("case_id 0 and severity 0 must coincide")
        if self.severity == 0:
            if (self.knockdown_factor, self.length_elements, self.start_element) != (1.0, 0, 0):
                raise InvalidInputError("pristine spec must carry no damage span")
            return
        if not 1 <= self.severity <= 3:
            raise InvalidInputError(f"severity must lie in [0, 3], got {self.severity}")
        if self.knockdown_factor != KNOCKDOWN_FACTORS[self.severity]:
            raise InvalidInputError(
                f"severity {self.severity} requires knockdown "
                f"{KNOCKDOWN_FACTORS[self.severity]}, got {self.knockdown_factor}"
            )
        if self.length_elements not in DAMAGE_LENGTHS:
            raise InvalidInputError(
                f"length_elements must be one of {DAMAGE_LENGTHS}, got {self.length_elements}"
            )
        if self.start_element not in DAMAGE_START_ELEMENTS:
            raise InvalidInputError(
                f"start_element must be one of {DAMAGE_START_ELEMENTS}, "
                f"got {self.start_element}"
            )
        expected = 1 + (self.severity - 1) * 20 + (self.length_elements - 1) * 10 \
            + DAMAGE_START_ELEMENTS.index(self.start_element)
        if self.case_id != expected:
            raise InvalidInputError(
                f"case_id {self.case_id} inconsistent with "
                f"(severity, length, start) -> {expected}"
            )

    @property
    def location_index(self) -> int:
        if self.severity == 0:
            return -1
        return DAMAGE_START_ELEMENTS.index(self.start_element)

    @classmethod
    def pristine(cls) -> "DamageSpec":
        return cls(case_id=0, severity=0, knockdown_factor=1.0,
                   length_elements=0, start_element=0)

    @classmethod
    def from_case_id(cls, case_id: int) -> "DamageSpec":
        """Decode the canonical case ordering."""
        if not 0 <= case_id < N_DAMAGE_CASES:
            raise InvalidInputError(f"case_id must lie in [0, 60], got {case_id}")
        if case_id == 0:
            return cls.pristine()
        k = case_id - 1
        severity = k // 20 + 1
        length = (k % 20) // 10 + 1
        location = k % 10
        return cls(
            case_id=case_id,
            severity=severity,
            knockdown_factor=KNOCKDOWN_FACTORS[severity],
            length_elements=length,
            start_element=DAMAGE_START_ELEMENTS[location],
        )


@dataclass(frozen=True)
class FemModel:
    """Assembled free-DOF system for the clamped beam.

    ``stiffness_matrix`` and ``mass_matrix`` cover the free DOFs only
    (root node eliminated); DOF ordering is (w, theta) per node from
    node 2 outward. Immutable: damage produces a new model.
    """

    stiffness_matrix: np.ndarray
    mass_matrix: np.ndarray
    element_ei: np.ndarray
    element_length: float

    def __post_init__(self):
        for arr in (self.stiffness_matrix, self.mass_matrix, self.element_ei):
            arr.setflags(write=False)

    @property
    def n_elements(self) -> int:
        return len(self.element_ei)

    @property
    def n_nodes(self) -> int:
        return self.n_elements + 1

    @property
    def n_free_dofs(self) -> int:
        return self.stiffness_matrix.shape[0]


@dataclass(frozen=True)
class ModalData:
    """Natural frequencies, damping ratios and mass-normalized shapes.

    ``shapes`` columns satisfy phi^T M phi = I and phi^T K phi =
    diag(omega^2). ``element_length`` is carried along so strain sensors
    can evaluate curvature without the originating model.
    """

    omegas: np.ndarray
    freqs_hz: np.ndarray
    zetas: np.ndarray
    shapes: np.ndarray
    element_length: float

    def __post_init__(self):
        if np.any(self.omegas <= 0) or np.any(np.diff(self.omegas) <= 0):
            raise NumericalError("natural frequencies must be positive and ascending")
        for arr in (self.omegas, self.freqs_hz, self.zetas, self.shapes):
            arr.setflags(write=False)

    @property
    def n_modes(self) -> int:
        return len(self.omegas)

    @property
    def n_nodes(self) -> int:
        return self.shapes.shape[0] // 2 + 1


def free_dof_indices(node: int, n_nodes: int) -> tuple[int, int]:
    """Free-DOF indices (w, theta) of a 1-based node; (-1, -1) at the clamp."""
    if not 1 <= node <= n_nodes:
        raise InvalidInputError(f"node must lie in [1, {n_nodes}], got {node}")
    if node == 1:
        return -1, -1
    return 2 * (node - 2), 2 * (node - 2) + 1


def _element_stiffness(ei: float, h: float) -> np.ndarray:
    return (ei / h**3) * np.array([
        [12.0, 6.0 * h, -12.0, 6.0 * h],
        [6.0 * h, 4.0 * h**2, -6.0 * h, 2.0 * h**2],
        [-12.0, -6.0 * h, 12.0, -6.0 * h],
        [6.0 * h, 2.0 * h**2, -6.0 * h, 4.0 * h**2],
    ])


def _element_mass(rho_a: float, h: float) -> np.ndarray:
    return (rho_a * h / 420.0) * np.array([
        [156.0, 22.0 * h, 54.0, -13.0 * h],
        [22.0 * h, 4.0 * h**2, 13.0 * h, -3.0 * h**2],
        [54.0, 13.0 * h, 156.0, -22.0 * h],
        [-13.0 * h, -3.0 * h**2, -22.0 * h, 4.0 * h**2],
    ])


def _assemble_free(element_matrices: list[np.ndarray], n_nodes: int) -> np.ndarray:
    """Assemble 4x4 element matrices into the free-DOF system matrix."""
    n_dof = 2 * n_nodes
    full = np.zeros((n_dof, n_dof))
    for e, mat in enumerate(element_matrices):
        sl = slice(2 * e, 2 * e + 4)
        full[sl, sl] += mat
    return full[2:, 2:]  # root node (w, theta) clamped


def _check_spd(matrix: np.ndarray, name: str) -> None:
    asym = np.max(np.abs(matrix - matrix.T))
    if asym > _SYM_TOL * max(np.max(np.abs(matrix)), 1e-300):
        raise NumericalError(f"{name} matrix is not symmetric (max asym {asym:.3e})")
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"{name} matrix is not positive definite") from exc


def calibrate_bending_stiffness(cfg: BeamConfig) -> float:
    """Bending stiffness EI that puts the analytic uniform-cantilever
    fundamental at ``cfg.omega1_target``.

    Closed form from omega1 = (bL)_1^2 * sqrt(EI / (rhoA * L^4)).
    """
    return cfg.mass_per_length * cfg.length**4 * (cfg.omega1_target / CANTILEVER_BL2[0]) ** 2


def analytic_cantilever_omegas(cfg: BeamConfig, ei: float, n_modes: int = 4) -> np.ndarray:
    """First analytic clamped-free frequencies (rad/s) for a uniform EI."""
    if n_modes > len(CANTILEVER_BL2):
        raise InvalidInputError(
            f"analytic table covers {len(CANTILEVER_BL2)} modes, asked for {n_modes}"
        )
    bl2 = np.array(CANTILEVER_BL2[:n_modes])
    return bl2 * np.sqrt(ei / (cfg.mass_per_length * cfg.length**4))


def assemble_system(cfg: BeamConfig, ei_per_element) -> FemModel:
    """Assemble stiffness and mass matrices over the free DOFs.

    Parameters
    ----------
    cfg : BeamConfig
        Mesh and inertia settings.
    ei_per_element : array_like
        Bending stiffness per element, length ``cfg.n_elements``, all > 0.

    Returns
    -------
    FemModel
        Symmetric positive-definite K and M of size ``2*n_elements``.
    """
    ei = np.asarray(ei_per_element, dtype=float)
    if ei.shape != (cfg.n_elements,):
        raise InvalidInputError(
            f"ei_per_element must have {cfg.n_elements} entries, got shape {ei.shape}"
        )
    if np.any(~np.isfinite(ei)) or np.any(ei <= 0):
        raise InvalidInputError("every element EI must be finite and positive")

    h = cfg.element_length
    stiffness = _assemble_free([_element_stiffness(e, h) for e in ei], cfg.n_nodes)
    mass_el = _element_mass(cfg.mass_per_length, h)
    mass = _assemble_free([mass_el] * cfg.n_elements, cfg.n_nodes)
    _check_spd(stiffness, "stiffness")
    _check_spd(mass, "mass")
    return FemModel(stiffness_matrix=stiffness, mass_matrix=mass,
                    element_ei=ei, element_length=h)


def apply_damage(model: FemModel, spec: DamageSpec) -> FemModel:
    """Knock down element EI over the delamination span and re-assemble K.

    The mass matrix is untouched (delamination separates plies, it does
    not remove material), so the damaged model shares M with the input.
    """
    if spec.severity == 0:
        return model
    first = spec.start_element
    last = spec.start_element + spec.length_elements - 1
    if first < 1 or last > model.n_elements:
        raise InvalidInputError(
            f"damage span [{first}, {last}] exceeds mesh of {model.n_elements} elements"
        )
    ei = model.element_ei.copy()
    ei[first - 1:last] *= spec.knockdown_factor
    stiffness = _assemble_free(
        [_element_stiffness(e, model.element_length) for e in ei], model.n_nodes
    )
    _check_spd(stiffness, "stiffness")
    return FemModel(stiffness_matrix=stiffness, mass_matrix=model.mass_matrix,
                    element_ei=ei, element_length=model.element_length)


def solve_modes(model: FemModel, n_modes: int = 4, zeta: float = 0.005) -> ModalData:
    """Solve K phi = omega^2 M phi for the lowest modes.

    Parameters
    ----------
    model : FemModel
        Assembled system.
    n_modes : int
        Number of retained modes (lowest frequencies).
    zeta : float
        Modal damping ratio copied uniformly into the result.

    Returns
    -------
    ModalData
        Ascending frequencies and mass-normalized shapes; each retained
        mode satisfies ||K phi - omega^2 M phi|| <= 1e-8 ||K phi||.
    """
    if not 1 <= n_modes <= model.n_free_dofs:
        raise InvalidInputError(
            f"n_modes must lie in [1, {model.n_free_dofs}], got {n_modes}"
        )
    if not 0.0 <= zeta < 1.0:
        raise InvalidInputError(f"zeta must lie in [0, 1), got {zeta}")
    try:
        eigvals, eigvecs = scipy.linalg.eigh(model.stiffness_matrix, model.mass_matrix)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise NumericalError(f"generalized eigensolve failed: {exc}") from exc

    eigvals = eigvals[:n_modes]
    shapes = eigvecs[:, :n_modes]
    if np.any(eigvals <= 0):
        raise NumericalError("non-positive eigenvalue on a clamped cantilever")
    omegas = np.sqrt(eigvals)

    for i in range(n_modes):
        k_phi = model.stiffness_matrix @ shapes[:, i]
        resid = k_phi - eigvals[i] * (model.mass_matrix @ shapes[:, i])
        if np.linalg.norm(resid) > 1e-8 * np.linalg.norm(k_phi):
            raise NumericalError(f"eigen residual too large for mode {i + 1}")

    return ModalData(
        omegas=omegas,
        freqs_hz=omegas / (2.0 * np.pi),
        zetas=np.full(n_modes, float(zeta)),
        shapes=shapes,
        element_length=model.element_length,
    )


def enumerate_damage_cases() -> list[DamageSpec]:
    """All 61 damage cases in canonical order (case 0 pristine)."""
    return [DamageSpec.from_case_id(i) for i in range(N_DAMAGE_CASES)]


def build_case_model(cfg: BeamConfig, spec: DamageSpec) -> FemModel:
    """Calibrate, assemble the pristine beam, then apply one damage case."""
    ei = calibrate_bending_stiffness(cfg)
    pristine = assemble_system(cfg, np.full(cfg.n_elements, ei))
    return apply_damage(pristine, spec)
