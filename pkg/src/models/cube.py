"""
The cube model of the eight embeddings of F.

Vertex index v is the generator index of the form dz_v: top vertices j
are 0..3 (dz1..dz4), bottom vertices jb are 4..7 (dzb1..dzb4).
"""

from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Tuple

from .galois import GaloisElem


@dataclass(frozen=True, order=True)
class Vertex:
    diag: int
    bottom: bool = False

    @property
    def index(self) -> int:
        return self.diag - 1 + (4 if self.bottom else 0)

    @classmethod
    def from_index(cls, index: int) -> "Vertex":
        if not 0 <= index < 8:
            raise ValueError(f"Vertex index must lie in 0..7, got {index}")
        return cls(index % 4 + 1, index >= 4)

    def bar(self) -> "Vertex":
        return Vertex(self.diag, not self.bottom)

    def __str__(self) -> str:
        return f"{self.diag}{'b' if self.bottom else ''}"


@dataclass(frozen=True, eq=False)
class CubeModel:
    """
    Permutation action of G on the vertices.

    ``action[g][v]`` is the image of vertex v; ``coset_reps[v]`` is the first
    group element (in GaloisElem.all_elements order) taking vertex 0 to v.
    """

    elements: Tuple[GaloisElem, ...]
    action: Dict[GaloisElem, Tuple[int, ...]]
    coset_reps: Tuple[GaloisElem, ...]
    stabilizer: Tuple[GaloisElem, ...]
    diagonal_order: Tuple[int, ...]
    face_signs: Tuple[int, ...]

    def move(self, g: GaloisElem, vertex: int) -> int:
        return self.action[g][vertex]

    def move_seq(self, g: GaloisElem, seq: Tuple[int, ...]) -> Tuple[int, ...]:
        images = self.action[g]
        return tuple(images[v] for v in seq)

    def tetrahedron(self, vertex: int) -> int:
        """0 for the tetrahedron through vertex 0, 1 for the other"""
        return 0 if self.coset_reps[vertex].character == 1 else 1

    def to_json(self) -> Dict:
        return {
            "diagonal_order": list(self.diagonal_order),
            "face_signs": list(self.face_signs),
            "stabilizer": [h.to_json() for h in self.stabilizer],
            "coset_reps": [g.to_json() for g in self.coset_reps],
        }


@dataclass(frozen=True, eq=False)
class Orbit:
    """
    A G-orbit of vertex sets, closed under reordering.

    ``members`` holds the sorted sets. ``transporters[S]`` maps the base
    sequence onto S. ``stabilizer`` pairs every h fixing the base set with
    the sign of the reordering h induces on the base sequence.
    """

    base: Tuple[int, ...]
    members: Tuple[Tuple[int, ...], ...]
    transporters: Dict[Tuple[int, ...], GaloisElem]
    stabilizer: Tuple[Tuple[GaloisElem, int], ...]

    @property
    def length(self) -> int:
        return len(self.base)

    @property
    def size(self) -> int:
        """|R|: the number of sequences"""
        return len(self.members) * factorial(self.length)

    @property
    def dimension(self) -> int:
        """|R| / r!"""
        return self.size // factorial(self.length)

    def bidegrees(self) -> set:
        return {
            (sum(1 for v in s if v < 4), sum(1 for v in s if v >= 4)) for s in self.members
        }

    @property
    def is_balanced(self) -> bool:
        return self.bidegrees() == {(self.length // 2, self.length // 2)}

    def to_json(self) -> Dict:
        return {
            "base": list(self.base),
            "sets": len(self.members),
            "size": self.size,
            "stabilizer_order": len(self.stabilizer),
        }


def stabilizer_generators(pairs: List[Tuple[GaloisElem, int]]) -> List[Tuple[GaloisElem, int]]:
    """A subset of the stabilizer that generates it"""
    chosen: List[Tuple[GaloisElem, int]] = []
    generated = {GaloisElem.identity()}
    for h, sign in pairs:
        if h in generated:
            continue
        chosen.append((h, sign))
        frontier = list(generated)
        while frontier:
            g = frontier.pop()
            for c, _ in chosen:
                product = c * g
                if product not in generated:
                    generated.add(product)
                    frontier.append(product)
    return chosen
