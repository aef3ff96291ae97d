"""
Elements of the Galois group S4 x {e, rho} of the splitting field.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Tuple


@dataclass(frozen=True, order=True)
class GaloisElem:
    """
    A pair (sigma, eps): sigma permutes the roots x1..x4, eps conjugates i.

    ``sigma`` stores the images of 1, 2, 3, 4 in that order.
    """

    sigma: Tuple[int, int, int, int]
    eps: int = 0

    def __post_init__(self):
        if sorted(self.sigma) != [1, 2, 3, 4]:
            raise ValueError(f"sigma must permute 1..4, got {self.sigma}")
        if self.eps not in (0, 1):
            raise ValueError(f"eps must be 0 or 1, got {self.eps}")

    def __call__(self, j: int) -> int:
        return self.sigma[j - 1]

    def __mul__(self, other: "GaloisElem") -> "GaloisElem":
        composed = tuple(self.sigma[other.sigma[j] - 1] for j in range(4))
        return GaloisElem(composed, self.eps ^ other.eps)

    def inverse(self) -> "GaloisElem":
        inv = [0, 0, 0, 0]
        for j, image in enumerate(self.sigma):
            inv[image - 1] = j + 1
        return GaloisElem(tuple(inv), self.eps)

    @property
    def sign(self) -> int:
        """Sign of sigma"""
        inversions = sum(
            1
            for i in range(4)
            for j in range(i + 1, 4)
            if self.sigma[i] > self.sigma[j]
        )
        return -1 if inversions % 2 else 1

    @property
    def character(self) -> int:
        """(-1)^eps * sign(sigma): the factor by which the element scales i*D"""
        return self.sign * (-1 if self.eps else 1)

    @property
    def is_identity(self) -> bool:
        return self.sigma == (1, 2, 3, 4) and self.eps == 0

    @classmethod
    def identity(cls) -> "GaloisElem":
        return cls((1, 2, 3, 4), 0)

    @classmethod
    def rho(cls) -> "GaloisElem":
        return cls((1, 2, 3, 4), 1)

    @classmethod
    def transposition(cls, j: int, k: int) -> "GaloisElem":
        images = [1, 2, 3, 4]
        images[j - 1], images[k - 1] = k, j
        return cls(tuple(images), 0)

    @classmethod
    def all_elements(cls) -> List["GaloisElem"]:
        """All 48 elements in a fixed order (sigma lexicographic, eps 0 before 1)"""
        return [
            cls(tuple(perm), eps)
            for perm in permutations((1, 2, 3, 4))
            for eps in (0, 1)
        ]

    @classmethod
    def generators(cls) -> List["GaloisElem"]:
        """A generating set: a transposition, a 4-cycle and rho"""
        return [cls((2, 1, 3, 4), 0), cls((2, 3, 4, 1), 0), cls.rho()]

    def to_json(self) -> Dict:
        return {"sigma": list(self.sigma), "eps": self.eps}

    def __str__(self) -> str:
        cycle = "".join(str(s) for s in self.sigma)
        return f"({cycle},{'rho' if self.eps else 'e'})"
