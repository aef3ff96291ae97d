from fractions import Fraction
from typing import Any, Iterable, Sequence, Tuple

from sympy.polys.domains import QQ


def to_fraction(value: Any) -> Fraction:
    """Convert an int, string, Fraction or ground-domain rational to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise ValueError(f"Cannot interpret {value!r} as a rational number")


def to_qq(value: Any):
    """Convert any rational-like value to an element of sympy's QQ"""
    f = to_fraction(value)
    return QQ(f.numerator, f.denominator)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_rational_list(text: str) -> list:
    return [parse_rational(part) for part in text.split(",")]


def format_rational(value: Any) -> str:
    f = to_fraction(value)
    return f"{f.numerator}/{f.denominator}"


def sort_sign(seq: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """
    Sort a sequence of distinct generator indices.

    Returns:
        (sign of the sorting permutation, sorted tuple); sign is 0 when an
        index repeats
    """
    if len(set(seq)) != len(seq):
        return 0, tuple(sorted(seq))
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def generator_name(index: int, generators: int = 8) -> str:
    if generators == 4:
        return f"dt{index + 1}"
    if index < 4:
        return f"dz{index + 1}"
    return f"dzb{index - 3}"


def monomial_name(indices: Iterable[int], generators: int = 8) -> str:
    names = [generator_name(i, generators) for i in indices]
    return "^".join(names) if names else "1"


def jsonable(value: Any) -> Any:
    """
    Turn a witness value into plain JSON data.

    Tuples become lists, rationals become "n/d" strings, and objects with a
    ``to_json`` method serialize themselves.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return format_rational(value)
