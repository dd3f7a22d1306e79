"""
Cohomology of a square-zero operator, and a contraction onto it.

Each degree d of the space is split as B_d ⊕ H_d ⊕ C_d where B_d = im Δ,
H_d is spanned by the chosen class representatives and C_d is a complement
of ker Δ made of standard basis vectors. B_d is taken as Δ(C_{d−|Δ|}) so
that the homotopy h(Δc) = −c lands in the complement.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from core.errors import SquareZeroError
from core.graded import Element, GradedBasis, LinearOperator, compose
from core.algebra import GradedAlgebra
from core.linalg import SpanSolver, Vector, independent_columns, kernel_basis

logger = logging.getLogger(__name__)


@dataclass
class DegreeFrame:
    """
    Decomposition of one homogeneous component.

    Attributes:
        degree: Degree of the component
        indices: Global basis indices of the component, in basis order
        boundaries: Local coordinates of a basis of im Δ
        preimages: For each boundary, the complement vector (one degree
            lower in the direction of Δ) it is the image of
        representatives: Local coordinates of the class representatives
        complement: Local coordinates of a complement of ker Δ
    """
    degree: int
    indices: List[int]
    boundaries: List[Vector] = field(default_factory=list)
    preimages: List[Vector] = field(default_factory=list)
    representatives: List[Vector] = field(default_factory=list)
    complement: List[Vector] = field(default_factory=list)
    kernel_dim: int = 0
    solver: SpanSolver = None

    def local(self, x: Element) -> Vector:
        position = {g: k for k, g in enumerate(self.indices)}
        return {position[i]: c for i, c in x.coeffs.items()}


def _local_image(delta: LinearOperator, i: int, target: Dict[int, int]) -> Vector:
    image = delta.image(i)
    return {target[j]: c for j, c in image.coeffs.items()}


def _build_frames(alg: GradedAlgebra) -> Dict[int, DegreeFrame]:
    if alg.delta is None:
        raise ValueError(f"Algebra {alg.name} has no delta")
    delta = alg.delta
    delta.require_degree(delta.degree, 'delta')
    if not compose(delta, delta).is_zero():
        raise SquareZeroError(f"Δ² ≠ 0 on {alg.name}; cohomology is undefined")

    basis = alg.basis
    step = delta.degree
    frames = {d: DegreeFrame(d, basis.indices_of_degree(d)) for d in basis.distinct_degrees()}
    positions = {d: {g: k for k, g in enumerate(f.indices)} for d, f in frames.items()}

    # Kernel and complement of ker, degree by degree.
    kernels: Dict[int, List[Vector]] = {}
    for d, frame in frames.items():
        target = positions.get(d + step, {})
        columns = [_local_image(delta, i, target) for i in frame.indices]
        kernel = kernel_basis(columns, len(target)) if target else [{k: Fraction(1)} for k in range(len(frame.indices))]
        kernels[d] = kernel
        frame.kernel_dim = len(kernel)

        standard = [{k: Fraction(1)} for k in range(len(frame.indices))]
        pivots = independent_columns(kernel + standard, len(frame.indices))
        frame.complement = [standard[p - len(kernel)] for p in pivots if p >= len(kernel)]

    # Boundaries from the complement one step back, then representatives.
    for d, frame in frames.items():
        source = frames.get(d - step)
        if source is not None:
            target = positions[d]
            for c in source.complement:
                image: Vector = {}
                for k, coeff in c.items():
                    for j, value in _local_image(delta, source.indices[k], target).items():
                        image[j] = image.get(j, 0) + coeff * value
                frame.boundaries.append({j: v for j, v in image.items() if v})
                frame.preimages.append(c)

        kernel = kernels[d]
        pivots = independent_columns(frame.boundaries + kernel, len(frame.indices))
        offset = len(frame.boundaries)
        frame.representatives = [kernel[p - offset] for p in pivots if p >= offset]

        frame.solver = SpanSolver(frame.boundaries + frame.representatives + frame.complement, len(frame.indices))

    return frames


def _globalize(frame: DegreeFrame, basis: GradedBasis, vector: Vector) -> Element:
    return Element(basis, {frame.indices[k]: c for k, c in vector.items()})


# =============================================================================
# Cohomology basis
# =============================================================================

@dataclass
class CohomologyBasis:
    """
    Basis of ker Δ / im Δ with representatives and a projector.

    Attributes:
        space: Basis of the underlying space
        classes: Graded basis of cohomology, names ``[representative]``
        representatives: Representative Element for each class
        frames: Per-degree decomposition used by the projector
    """
    space: GradedBasis
    classes: GradedBasis
    representatives: List[Element]
    frames: Dict[int, DegreeFrame]
    _class_offset: Dict[int, int] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def dimensions(self) -> Dict[int, int]:
        return {d: len(f.representatives) for d, f in self.frames.items()}

    def _coordinates(self, x: Element) -> Dict[int, Vector]:
        coords = {}
        for d, part in x.homogeneous_parts().items():
            frame = self.frames[d]
            coords[d] = frame.solver.coordinates(frame.local(part))
        return coords

    def project(self, x: Element) -> Element:
        """
        Class coordinates of a Δ-cocycle.

        Raises:
            ValueError: If x is not in ker Δ
        """
        acc: Dict[int, Fraction] = {}
        for d, coords in self._coordinates(x).items():
            frame = self.frames[d]
            lo = len(frame.boundaries)
            hi = lo + len(frame.representatives)
            if any(k >= hi for k in coords):
                raise ValueError(f"{x.format()} is not a Δ-cocycle")
            for k, c in coords.items():
                if lo <= k < hi:
                    acc[self._class_offset[d] + k - lo] = c
        return Element(self.classes, acc)

    def include(self, c: Element) -> Element:
        """Representative of a class combination."""
        total = Element.zero(self.space)
        for k, coeff in c.coeffs.items():
            total = total + self.representatives[k].scale(coeff)
        return total


def delta_cohomology(alg: GradedAlgebra) -> CohomologyBasis:
    """
    Cohomology of the algebra's square-zero Δ by exact elimination per degree.

    Raises:
        SquareZeroError: If Δ² ≠ 0
    """
    frames = _build_frames(alg)
    names, degrees, representatives = [], [], []
    offsets = {}
    for d, frame in frames.items():
        offsets[d] = len(representatives)
        for vector in frame.representatives:
            rep = _globalize(frame, alg.basis, vector)
            representatives.append(rep)
            names.append('[' + rep.format().replace(' ', '') + ']')
            degrees.append(d)

    classes = GradedBasis(tuple(names), tuple(degrees))
    logger.debug("cohomology of %s: %s", alg.name, {d: len(f.representatives) for d, f in frames.items()})
    return CohomologyBasis(alg.basis, classes, representatives, frames, offsets)


# =============================================================================
# Contraction
# =============================================================================

@dataclass
class Contraction:
    """
    Deformation retract of (A, Δ) onto its cohomology.

    ``include∘project − id = Δh + hΔ`` with h² = 0, h∘include = 0 and
    project∘h = 0.
    """
    cohomology: CohomologyBasis
    delta: LinearOperator

    @property
    def space(self) -> GradedBasis:
        return self.cohomology.space

    def project(self, x: Element) -> Element:
        """Class coordinates of any element (kills im Δ and the complement)."""
        acc: Dict[int, Fraction] = {}
        for d, coords in self.cohomology._coordinates(x).items():
            frame = self.cohomology.frames[d]
            lo = len(frame.boundaries)
            for k, c in coords.items():
                if lo <= k < lo + len(frame.representatives):
                    acc[self.cohomology._class_offset[d] + k - lo] = c
        return Element(self.cohomology.classes, acc)

    def include(self, c: Element) -> Element:
        return self.cohomology.include(c)

    def retract(self, x: Element) -> Element:
        return self.include(self.project(x))

    def homotopy(self, x: Element) -> Element:
        """h: sends Δc to −c for c in the complement, zero elsewhere."""
        frames = self.cohomology.frames
        total = Element.zero(self.space)
        for d, coords in self.cohomology._coordinates(x).items():
            frame = frames[d]
            source = frames[d - self.delta.degree]
            for k, c in coords.items():
                if k < len(frame.boundaries):
                    total = total - _globalize(source, self.space, frame.preimages[k]).scale(c)
        return total

    def homotopy_operator(self) -> LinearOperator:
        images = {i: self.homotopy(Element.basis_vector(self.space, i)) for i in range(len(self.space))}
        return LinearOperator(self.space, -self.delta.degree, images)


def delta_contraction(alg: GradedAlgebra) -> Contraction:
    """Contraction built on the same decomposition as delta_cohomology."""
    return Contraction(delta_cohomology(alg), alg.delta)
