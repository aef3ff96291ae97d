"""
Cube service: the labeled cube model of G, orbits of vertex sequences,
Galois-equivariant (rational) forms and the rationality test.
"""

import logging
from itertools import combinations, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import IncompatibleSeed, NoConsistentLabeling, NotInF
from ..models.cube import CubeModel, Orbit, Vertex, stabilizer_generators
from ..models.form import Form
from ..models.galois import GaloisElem
from ..models.splitting import ContextConstants, SplitElem, SplittingAlgebra
from ..utils.helpers import sort_sign

logger = logging.getLogger(__name__)

Point = Tuple[int, int, int]

# One representative vertex of {-1, 1}^3 per long diagonal.
_DIAGONALS: Tuple[Point, ...] = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1))


def _rotations() -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """The 24 signed permutation matrices of determinant +1, as (perm, signs)"""
    found = []
    for perm in permutations(range(3)):
        perm_sign = GaloisElem(tuple(p + 1 for p in perm) + (4,)).sign
        for signs in product((1, -1), repeat=3):
            if perm_sign * signs[0] * signs[1] * signs[2] == 1:
                found.append((perm, signs))
    return found


def _rotate(rotation, point: Point) -> Point:
    perm, signs = rotation
    return tuple(signs[i] * point[perm[i]] for i in range(3))


def expected_sign(vertex: int) -> int:
    """Sign of phi_v(iD)/iD: -(-1)^j on top vertex j, (-1)^j on bottom vertex j"""
    j = vertex % 4 + 1
    parity = -1 if j % 2 else 1
    return parity if vertex >= 4 else -parity


class CubeService:
    """Cube labeling, orbits and equivariant forms"""

    @staticmethod
    def _action_for_labeling(
        order: Sequence[int], faces: Sequence[int], rotations
    ) -> Optional[Dict[GaloisElem, Tuple[int, ...]]]:
        positions: List[Point] = []
        for j in range(4):
            positions.append(tuple(faces[j] * c for c in _DIAGONALS[order[j]]))
        positions += [tuple(-c for c in p) for p in positions[:4]]
        where = {p: v for v, p in enumerate(positions)}

        action: Dict[GaloisElem, Tuple[int, ...]] = {}
        for rotation in rotations:
            images = tuple(where[_rotate(rotation, p)] for p in positions)
            sigma = tuple(images[j] % 4 + 1 for j in range(4))
            g = GaloisElem(sigma, 0)
            if g in action:
                return None
            action[g] = images
            action[GaloisElem(sigma, 1)] = tuple((v + 4) % 8 for v in images)
        return action

    @staticmethod
    def _consistent(action: Dict[GaloisElem, Tuple[int, ...]]) -> bool:
        elements = GaloisElem.all_elements()
        if {action[g][0] for g in elements} != set(range(8)):
            return False
        if action[GaloisElem.rho()] != tuple((v + 4) % 8 for v in range(8)):
            return False
        stabilizer = [g for g in elements if action[g][0] == 0]
        if len(stabilizer) != 6 or any(h.character != 1 for h in stabilizer):
            return False
        for v in range(8):
            rep = next(g for g in elements if action[g][0] == v)
            if rep.character != expected_sign(v):
                return False
        for g in elements:
            for h in elements:
                if action[g * h] != tuple(action[g][action[h][v]] for v in range(8)):
                    return False
        return True

    @staticmethod
    def build_cube_model(algebra: SplittingAlgebra, constants: ContextConstants) -> CubeModel:
        """
        Search labelings of the cube diagonals and faces for one matching the
        conjugation signs of iD, then confirm those signs in L.

        Raises:
            NoConsistentLabeling: no labeling reproduces the sign pattern
        """
        rotations = _rotations()
        elements = GaloisElem.all_elements()
        for order in permutations(range(4)):
            for faces in product((1, -1), repeat=4):
                action = CubeService._action_for_labeling(order, faces, rotations)
                if action is None or not CubeService._consistent(action):
                    continue

                reps = tuple(
                    next(g for g in elements if action[g][0] == v) for v in range(8)
                )
                stabilizer = tuple(g for g in elements if action[g][0] == 0)
                i_d = constants.i_vandermonde
                for v, rep in enumerate(reps):
                    if i_d.apply(rep) != expected_sign(v) * i_d:
                        raise NoConsistentLabeling(
                            f"Labeling {order}/{faces} passes the character test but "
                            f"iD maps wrongly at vertex {Vertex.from_index(v)}"
                        )
                logger.info(f"Cube model found: diagonals {order}, faces {faces}")
                return CubeModel(
                    elements=tuple(elements),
                    action=action,
                    coset_reps=reps,
                    stabilizer=stabilizer,
                    diagonal_order=tuple(order),
                    face_signs=tuple(faces),
                )
        raise NoConsistentLabeling("No cube labeling reproduces the conjugation signs of iD")

    @staticmethod
    def embedding_of(model: CubeModel, u: SplitElem, vertex) -> SplitElem:
        """
        Image of u in F under the embedding labeled by ``vertex``.

        Raises:
            NotInF: u is moved by the stabilizer of vertex 0
        """
        index = vertex.index if isinstance(vertex, Vertex) else vertex
        for h in model.stabilizer:
            if u.apply(h) != u:
                raise NotInF(f"{u} is moved by {h}")
        return u.apply(model.coset_reps[index])

    @staticmethod
    def orbit_of(model: CubeModel, seq: Sequence[int]) -> Orbit:
        base = tuple(seq)
        if len(set(base)) != len(base):
            raise ValueError(f"Sequence {base} repeats a vertex")
        base_sign, base_set = sort_sign(base)
        transporters: Dict[Tuple[int, ...], GaloisElem] = {}
        stabilizer: List[Tuple[GaloisElem, int]] = []
        for g in model.elements:
            image = model.move_seq(g, base)
            sign, key = sort_sign(image)
            transporters.setdefault(key, g)
            if key == base_set:
                stabilizer.append((g, sign * base_sign))
        return Orbit(
            base=base,
            members=tuple(sorted(transporters)),
            transporters=transporters,
            stabilizer=tuple(stabilizer),
        )

    @staticmethod
    def set_orbits(model: CubeModel, r: int) -> List[Orbit]:
        """Every orbit of r-element vertex sets, in order of their first member"""
        seen = set()
        orbits = []
        for subset in combinations(range(8), r):
            if subset in seen:
                continue
            orbit = CubeService.orbit_of(model, subset)
            seen.update(orbit.members)
            orbits.append(orbit)
        return orbits

    @staticmethod
    def balanced_orbits(model: CubeModel, r: int) -> List[Orbit]:
        """Orbits whose sets all split evenly between top and bottom faces"""
        if r % 2:
            return []
        return [o for o in CubeService.set_orbits(model, r) if o.is_balanced]

    @staticmethod
    def expand_seed(model: CubeModel, orbit: Orbit, seed: SplitElem) -> Form:
        """
        The equivariant antisymmetric form whose coefficient on the base
        sequence is ``seed``.

        Raises:
            IncompatibleSeed: h(seed) differs from sign(h) * seed for some h
                fixing the base set
        """
        for h, sign in orbit.stabilizer:
            if seed.apply(h) != sign * seed:
                raise IncompatibleSeed(
                    f"Seed is not compatible with stabilizer element {h} (sign {sign})"
                )
        terms = {}
        for key in orbit.members:
            g = orbit.transporters[key]
            sign, _ = sort_sign(model.move_seq(g, orbit.base))
            terms[key] = sign * seed.apply(g)
        return Form(terms)

    @staticmethod
    def equivariant_basis(
        model: CubeModel, algebra: SplittingAlgebra, orbit: Orbit
    ) -> List[Form]:
        """Q-basis of the rational forms supported on ``orbit``"""
        rows = []
        for h, sign in stabilizer_generators(list(orbit.stabilizer)):
            matrix = algebra.action_matrix(h)
            for i in range(48):
                row = list(matrix[i])
                row[i] = row[i] - QQ(sign)
                rows.append(row)
        if not rows:
            rows = [[QQ.zero] * 48]
        system = DomainMatrix(rows, (len(rows), 48), QQ)
        seeds = system.nullspace().to_list()
        basis = [
            CubeService.expand_seed(model, orbit, algebra.from_vector(vector))
            for vector in seeds
        ]
        logger.debug(f"Orbit of {orbit.base}: {len(basis)} equivariant forms")
        return basis

    @staticmethod
    def act_on_form(model: CubeModel, g: GaloisElem, form: Form) -> Form:
        """Move indices by g and apply g to coefficients"""
        acc = {}
        for key, value in form.items():
            sign, image = sort_sign(model.move_seq(g, key))
            acc[image] = sign * value.apply(g)
        return Form(acc, form.generators)

    @staticmethod
    def is_rational_form(model: CubeModel, form: Form, exhaustive: bool = False) -> bool:
        """
        Rationality criterion: coefficients transform covariantly under G.

        The generators of G suffice; ``exhaustive`` checks all 48 elements.
        """
        elements = model.elements if exhaustive else GaloisElem.generators()
        return all(CubeService.act_on_form(model, g, form) == form for g in elements)
