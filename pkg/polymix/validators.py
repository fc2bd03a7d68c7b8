"""
Validation should primarily be done at the model level, but this module is for checks and small
arithmetic that do not belong on any one model: primality of the torus parameter m, parsing of
`b,c` pairs typed on the command line, and the lcm helpers used by the chirality criteria.
"""

import math
import re
from collections.abc import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def validate_torus_pair(text: str) -> tuple[int, int]:
    """
    Parse a `b,c` pair. Both entries must be nonnegative integers and not both zero.
    """
    match = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if match is None:
        raise ValueError(f"Expected a pair like '1,2', got {text!r}")
    b, c = int(match.group(1)), int(match.group(2))
    if b == 0 and c == 0:
        raise ValueError("(b, c) must not be (0, 0)")
    return b, c


def lcm_all(values: Iterable[int]) -> int:
    result = 1
    for v in values:
        result = math.lcm(result, v)
    return result


def pairwise_coprime_entries(left: Iterable[int], right: Iterable[int]) -> bool:
    return all(math.gcd(p, q) == 1 for p, q in zip(left, right, strict=True))
