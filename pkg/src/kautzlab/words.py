"""Words over Z_{d+1} and the vertex rules of the Kautz-like families.

A word is a plain tuple of ints. Every family labels its vertices with words
of a fixed length ``l`` over the alphabet ``0..d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

Word = tuple[int, ...]


class Family(str, Enum):
    K = "K"
    SK = "sK"
    CK = "CK"
    MCK = "MCK"

    @classmethod
    def parse(cls, text: str) -> "Family":
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        raise ValueError(f"unknown family {text!r}; expected one of K, sK, CK, MCK")


class InvalidInput(ValueError):
    """Raised for malformed words or parameters."""


@dataclass(frozen=True, order=True)
class FamilySpec:
    family: Family
    d: int
    l: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(str(self.family)))
        if self.d < 2 or self.l < 2:
            raise InvalidInput(f"need d >= 2 and l >= 2, got d={self.d}, l={self.l}")

    @property
    def cyclic(self) -> bool:
        return self.family in (Family.CK, Family.MCK)

    @property
    def known_disconnected(self) -> bool:
        """CK(2, l) and MCK(2, l) are disconnected except for l in {2, 4}."""
        return self.cyclic and self.d == 2 and self.l not in (2, 4)

    def __str__(self) -> str:
        return f"{self.family.value}({self.d},{self.l})"

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"CK,3,4"`` (or ``"CK(3,4)"``)."""
        cleaned = text.replace("(", ",").replace(")", "").replace(" ", "")
        parts = [p for p in cleaned.split(",") if p]
        if len(parts) != 3:
            raise InvalidInput(f"cannot parse family spec {text!r}")
        try:
            return cls(Family.parse(parts[0]), int(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None


def is_kautz(w: Word) -> bool:
    return all(a != b for a, b in zip(w, w[1:]))


def is_valid_vertex(w: Word, spec: FamilySpec) -> bool:
    if len(w) != spec.l:
        raise InvalidInput(f"word {format_word(w)} has length {len(w)}, expected {spec.l}")
    if any(not 0 <= s <= spec.d for s in w):
        raise InvalidInput(f"word {format_word(w)} has symbols outside 0..{spec.d}")
    if not is_kautz(w):
        return False
    if spec.cyclic:
        return w[0] != w[-1]
    return True


def enumerate_vertices(spec: FamilySpec) -> list[Word]:
    """All vertices of ``spec`` in lexicographic order.

    Built by extending prefixes so that only Kautz words are generated; the
    result is already sorted because extensions are taken in symbol order.
    """
    words: list[Word] = [(a,) for a in range(spec.d + 1)]
    for _ in range(spec.l - 1):
        words = [w + (a,) for w in words for a in range(spec.d + 1) if a != w[-1]]
    if spec.cyclic:
        words = [w for w in words if w[0] != w[-1]]
    return words


def enumerate_brute_force(spec: FamilySpec) -> list[Word]:
    """Filter all of Z_{d+1}^l through :func:`is_valid_vertex`; slow but obvious."""
    return [w for w in product(range(spec.d + 1), repeat=spec.l) if is_valid_vertex(w, spec)]


def word_period(w: Word) -> int:
    n = len(w)
    for p in range(1, n):
        if all(w[i] == w[i + p] for i in range(n - p)):
            return p
    return n


def reverse(w: Word) -> Word:
    return tuple(reversed(w))


def format_word(w: Word, d: int | None = None) -> str:
    """Concatenated digits for d <= 9, comma separated otherwise."""
    if d is None:
        d = max(w, default=0)
    if d <= 9:
        return "".join(str(s) for s in w)
    return ",".join(str(s) for s in w)


def parse_word(text: str, d: int) -> Word:
    text = text.strip()
    if not text:
        raise InvalidInput("empty word")
    if d > 9:
        if "," not in text and len(text) > 1:
            raise InvalidInput(f"words over an alphabet with d={d} must be comma separated")
        parts = text.split(",")
    else:
        parts = text.split(",") if "," in text else list(text)
    try:
        w = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidInput(f"cannot parse word {text!r}") from None
    if any(not 0 <= s <= d for s in w):
        raise InvalidInput(f"word {text!r} has symbols outside 0..{d}")
    return w
