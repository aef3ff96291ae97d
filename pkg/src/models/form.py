"""
Translation-invariant differential forms on the complex torus.

A Form maps sorted tuples of generator indices to coefficients. With eight
generators the indices are dz1..dz4 (0..3) followed by dzb1..dzb4 (4..7);
forms on the real locus use four generators dt1..dt4. Coefficients are
SplitElem or ParamPoly values; anything with ring operators, ``conjugate``
and truthiness for zero works.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple

from ..utils.helpers import monomial_name, sort_sign

Key = Tuple[int, ...]


def _conjugate_index(index: int) -> int:
    return index + 4 if index < 4 else index - 4


class Form:
    """Sparse element of the exterior algebra; zero coefficients are never stored"""

    __slots__ = ("terms", "generators")

    def __init__(self, terms: Optional[Dict[Key, Any]] = None, generators: int = 8):
        self.generators = generators
        self.terms: Dict[Key, Any] = {
            tuple(k): v for k, v in (terms or {}).items() if v
        }

    @classmethod
    def monomial(cls, indices: Iterable[int], coefficient, generators: int = 8) -> "Form":
        """coefficient * d(indices[0]) ^ d(indices[1]) ^ ... in the given order"""
        sign, key = sort_sign(tuple(indices))
        if sign == 0:
            return cls({}, generators)
        return cls({key: coefficient if sign > 0 else -coefficient}, generators)

    @classmethod
    def constant(cls, value, generators: int = 8) -> "Form":
        return cls({(): value}, generators)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def items(self) -> Iterator[Tuple[Key, Any]]:
        return iter(self.terms.items())

    def coefficient(self, indices: Iterable[int]) -> Optional[Any]:
        """Coefficient of the monomial written in the given order, None when zero"""
        sign, key = sort_sign(tuple(indices))
        value = self.terms.get(key)
        if value is None or sign == 0:
            return None
        return value if sign > 0 else -value

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def degree_part(self, degree: int) -> "Form":
        return Form({k: v for k, v in self.terms.items() if len(k) == degree}, self.generators)

    def bidegree_of(self, key: Key) -> Tuple[int, int]:
        holomorphic = sum(1 for i in key if i < 4)
        return holomorphic, len(key) - holomorphic

    def bidegrees(self) -> set:
        return {self.bidegree_of(k) for k in self.terms}

    def bidegree_part(self, p: int, q: int) -> "Form":
        return Form(
            {k: v for k, v in self.terms.items() if self.bidegree_of(k) == (p, q)},
            self.generators,
        )

    def is_pure(self, p: int, q: int) -> bool:
        return all(self.bidegree_of(k) == (p, q) for k in self.terms)

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check(self, other: "Form"):
        if self.generators != other.generators:
            raise ValueError(
                f"Forms on {self.generators} and {other.generators} generators do not mix"
            )

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc[k] + v if k in acc else v
        return Form(acc, self.generators)

    def __neg__(self) -> "Form":
        return Form({k: -v for k, v in self.terms.items()}, self.generators)

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        return Form({k: v * scalar for k, v in self.terms.items()}, self.generators)

    def __rmul__(self, scalar) -> "Form":
        return Form({k: scalar * v for k, v in self.terms.items()}, self.generators)

    def __truediv__(self, scalar) -> "Form":
        return Form({k: v / scalar for k, v in self.terms.items()}, self.generators)

    def map_coefficients(self, fn) -> "Form":
        return Form({k: fn(v) for k, v in self.terms.items()}, self.generators)

    # ------------------------------------------------------------------
    # Exterior product
    # ------------------------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        """Exterior product; the sign counts pairs (s, t) with s > t"""
        self._check(other)
        acc: Dict[Key, Any] = {}
        for s, a in self.terms.items():
            used = set(s)
            for t, b in other.terms.items():
                if used.intersection(t):
                    continue
                inversions = sum(1 for x in s for y in t if x > y)
                term = a * b
                if inversions % 2:
                    term = -term
                key = tuple(sorted(s + t))
                acc[key] = acc[key] + term if key in acc else term
        return Form(acc, self.generators)

    def power(self, n: int, unit) -> "Form":
        """n-fold exterior power; ``unit`` is the coefficient 1"""
        result = Form.constant(unit, self.generators)
        for _ in range(n):
            result = result.wedge(self)
        return result

    def conjugate(self) -> "Form":
        """Complex conjugate: coefficients conjugated, dz_j and dzb_j exchanged"""
        if self.generators != 8:
            return self.map_coefficients(lambda v: v.conjugate())
        acc: Dict[Key, Any] = {}
        for key, value in self.terms.items():
            sign, image = sort_sign(tuple(_conjugate_index(i) for i in key))
            value = value.conjugate()
            acc[image] = value if sign > 0 else -value
        return Form(acc, self.generators)

    # ------------------------------------------------------------------
    # Comparison and output
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    def __hash__(self):
        return hash((self.generators, frozenset(self.terms)))

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> Dict[str, Any]:
        return {
            monomial_name(k, self.generators): v.to_json()
            for k, v in sorted(self.terms.items())
        }

    def __repr__(self) -> str:
        names = ", ".join(monomial_name(k, self.generators) for k in sorted(self.terms))
        return f"Form({names})"


class LinMap:
    """
    Linear substitution of generators: source generator s becomes the
    one-form ``rows[s]`` in the target generators.
    """

    __slots__ = ("rows", "source_generators", "target_generators")

    def __init__(
        self,
        rows: Dict[int, Dict[int, Any]],
        source_generators: int = 8,
        target_generators: int = 8,
    ):
        self.rows = {s: {t: c for t, c in row.items() if c} for s, row in rows.items()}
        self.source_generators = source_generators
        self.target_generators = target_generators

    @classmethod
    def holomorphic(cls, rows: Dict[int, Dict[int, Any]]) -> "LinMap":
        """
        Build from the dz rows only; the dzb rows are their conjugates, with
        target dw_k and dwb_k exchanged.
        """
        full = {s: dict(row) for s, row in rows.items()}
        for s, row in rows.items():
            full[s + 4] = {_conjugate_index(t): c.conjugate() for t, c in row.items()}
        return cls(full)

    def image(self, source: int) -> Form:
        return Form({(t,): c for t, c in self.rows.get(source, {}).items()}, self.target_generators)

    def pullback(self, form: Form) -> Form:
        """Substitute every generator and expand"""
        if form.generators != self.source_generators:
            raise ValueError("Form does not live on the source of this map")
        images = {s: self.image(s) for s in range(self.source_generators)}
        total = Form({}, self.target_generators)
        for key, coefficient in form.items():
            partial = Form.constant(coefficient, self.target_generators)
            for s in key:
                partial = partial.wedge(images[s])
                if partial.is_zero:
                    break
            total = total + partial
        return total

    def compose(self, then: "LinMap") -> "LinMap":
        """The map whose pullback is ``then.pullback(self.pullback(f))``"""
        rows = {}
        for s in range(self.source_generators):
            image = then.pullback(self.image(s))
            rows[s] = {key[0]: c for key, c in image.items()}
        return LinMap(rows, self.source_generators, then.target_generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (
            self.source_generators == other.source_generators
            and self.target_generators == other.target_generators
            and {s: r for s, r in self.rows.items() if r}
            == {s: r for s, r in other.rows.items() if r}
        )

    def __hash__(self):
        return hash((self.source_generators, self.target_generators))


@dataclass
class StandardForms:
    """The named forms attached to one quartic"""

    omega: Form
    theta: Form
    theta_bar: Form
    M: Form
    M_prime: Form
    A1: Form
    A2: Form
    cayley: Form
    charge_c: int
    metric: Dict[int, Any] = field(default_factory=dict)
    star_weights: Dict[Key, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "omega": self.omega.to_json(),
            "theta": self.theta.to_json(),
            "M": self.M.to_json(),
            "M_prime": self.M_prime.to_json(),
            "charge_c": self.charge_c,
        }
