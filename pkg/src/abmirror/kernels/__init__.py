"""Search-kernel dispatch: compiled extension when safe, pure Python always.

The compiled twin (``_fast``) works in C ``long long``; calls are routed to
it only when rank, bound and entry sizes guarantee no intermediate value can
overflow a machine word.  Everything else — and every call when the extension
was not built — goes to the arbitrary-precision reference twin (``pure``).
Both implement the identical canonical enumeration order, so results never
depend on which backend answered.

Set ``FORCE_PURE = True`` (tests, benchmarks) to bypass the extension.
"""

from __future__ import annotations

from typing import Optional, Sequence

from . import pure

try:
    from . import _fast  # type: ignore[attr-defined]
except ImportError:  # extension not built; pure twin serves everything
    _fast = None  # type: ignore[assignment]

FORCE_PURE = False

_WORD_LIMIT = 2**62


def compiled_available() -> bool:
    return _fast is not None


def backend_name() -> str:
    return "compiled" if (_fast is not None and not FORCE_PURE) else "pure"


def _fits_word(gram: Sequence[Sequence[int]], target: int, bound: int) -> bool:
    n = len(gram)
    if _fast is None or FORCE_PURE or not (1 <= n <= 8) or not (0 < bound <= 100):
        return False
    gmax = max((abs(x) for row in gram for x in row), default=0)
    return (
        n * n * max(gmax, 1) * bound * bound < _WORD_LIMIT
        and abs(target) < _WORD_LIMIT
    )


def find_vector_with_norm(
    gram: Sequence[Sequence[int]], target: int, bound: int
) -> Optional[tuple[int, ...]]:
    if _fits_word(gram, target, bound):
        return _fast.find_vector_with_norm(gram, target, bound)
    return pure.find_vector_with_norm(gram, target, bound)


def vectors_with_norm(
    gram: Sequence[Sequence[int]], target: int, bound: int
) -> list[tuple[int, ...]]:
    if _fits_word(gram, target, bound):
        return _fast.vectors_with_norm(gram, target, bound)
    return pure.vectors_with_norm(gram, target, bound)


def find_primitive_embedding(
    target: Sequence[Sequence[int]], bound: int
) -> Optional[tuple[tuple[int, ...], ...]]:
    r = len(target)
    tmax = max((abs(x) for row in target for x in row), default=0)
    if (
        _fast is not None
        and not FORCE_PURE
        and 1 <= r <= 3
        and 0 < bound <= 100
        and tmax < 2**40
    ):
        return _fast.find_primitive_embedding(target, bound)
    return pure.find_primitive_embedding(target, bound)
