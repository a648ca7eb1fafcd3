"""The named algebras, with tables in the element order (inf, a, 1[, 0])."""

from __future__ import annotations

from .algebra import FiniteAiSemiring, validate

INF, A, ONE, ZERO = 0, 1, 2, 3

_ABSORB3 = [INF, INF, INF]

_TABLES = {
    "S7": (("∞", "a", "1"),
           [_ABSORB3, [INF, A, INF], [INF, INF, ONE]],
           [_ABSORB3, [INF, INF, A], [INF, A, ONE]]),
    "S53": (("∞", "a", "1"),
            [_ABSORB3, [INF, A, A], [INF, A, ONE]],
            [_ABSORB3, [INF, INF, A], [INF, A, ONE]]),
    "S43": (("∞", "a", "1"),
            [_ABSORB3, [INF, A, A], [INF, A, ONE]],
            [_ABSORB3, [INF, A, ONE], [INF, ONE, ONE]]),
    "S4_545": (("∞", "a", "1", "0"),
               [[INF] * 4, [INF, A, A, A], [INF, A, ONE, ONE], [INF, A, ONE, ZERO]],
               [[INF] * 4, [INF, INF, A, A], [INF, A, ONE, ZERO], [INF, A, ZERO, ZERO]]),
    "S4_634": (("∞", "a", "1", "0"),
               [[INF] * 4, [INF, A, A, A], [INF, A, ONE, ONE], [INF, A, ONE, ZERO]],
               [[INF, INF, INF, ZERO], [INF, INF, A, ZERO], [INF, A, ONE, ZERO], [ZERO] * 4]),
    # Table order (0, 1); multiplication coincides with addition.
    "M2": (("0", "1"), [[0, 1], [1, 1]], [[0, 1], [1, 1]]),
    # The 2-element lattice: join is +, meet is *.
    "D2": (("1", "0"), [[0, 0], [0, 1]], [[0, 1], [1, 1]]),
    "trivial": (("∞",), [[0]], [[0]]),
}

NAMES = tuple(_TABLES)


def catalog(name: str) -> FiniteAiSemiring:
    try:
        elements, add, mul = _TABLES[name]
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; known: {', '.join(NAMES)}") from None
    return validate(add, mul, elements, name)
