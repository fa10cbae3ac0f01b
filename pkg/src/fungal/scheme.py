"""Update-scheme words over {H, V}: parsing, normal form, roots and rotations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyWord, IllegalSymbol, MonotoneWord, NotPrimitive

ALPHABET = ("H", "V")


@dataclass(frozen=True)
class UpdateScheme:
    """A cyclic word of local rules; ``word[s - 1]`` is the rule used at step s."""

    word: str
    h: int = field(init=False)
    v: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.word:
            raise EmptyWord("update scheme must contain at least one symbol")
        for pos, sym in enumerate(self.word):
            if sym not in ALPHABET:
                raise IllegalSymbol(pos, sym)
        object.__setattr__(self, "h", self.word.count("H"))
        object.__setattr__(self, "v", self.word.count("V"))

    @property
    def k(self) -> int:
        return len(self.word)

    def rule(self, s: int) -> str:
        """Rule applied at step ``s`` (1-based, taken cyclically)."""
        return self.word[(s - 1) % len(self.word)]

    def __str__(self) -> str:
        return self.word

    def __len__(self) -> int:
        return len(self.word)


def parse_scheme(text: str) -> UpdateScheme:
    word = text.strip().upper()
    if not word:
        raise EmptyWord("update scheme must contain at least one symbol")
    return UpdateScheme(word)


def as_scheme(z: UpdateScheme | str) -> UpdateScheme:
    return z if isinstance(z, UpdateScheme) else parse_scheme(z)


@dataclass(frozen=True)
class Normalization:
    rotated: bool
    wait_steps: int
    normalized: UpdateScheme


def _swap(word: str) -> str:
    return word.translate(str.maketrans("HV", "VH"))


def normalize(z: UpdateScheme | str) -> Normalization:
    """Bring a scheme into the form H...V.

    A word that starts with V and ends with H is rotated by 90 degrees (H and V
    exchanged).  A leading run V^i in front of H...V^j is absorbed as i waiting
    steps and the run is appended to the tail.  Words starting and ending with
    H are rotated first so that the leading-V rule applies.
    """
    z = as_scheme(z)
    if z.h == 0 or z.v == 0:
        raise MonotoneWord(z.word)
    word = z.word
    rotated = False
    if word[0] == "V" and word[-1] == "H":
        return Normalization(True, 0, UpdateScheme(_swap(word)))
    if word[0] == "H" and word[-1] == "H":
        word = _swap(word)
        rotated = True
    if word[0] == "H":
        return Normalization(rotated, 0, UpdateScheme(word))
    # word = V^i H W V^j with j >= 1
    i = len(word) - len(word.lstrip("V"))
    return Normalization(rotated, i, UpdateScheme(word[i:] + "V" * i))


def primitive_root(z: UpdateScheme | str) -> UpdateScheme:
    word = as_scheme(z).word
    k = len(word)
    for p in range(1, k + 1):
        if k % p == 0 and word[:p] * (k // p) == word:
            return UpdateScheme(word[:p])
    raise AssertionError("unreachable")


def is_primitive(z: UpdateScheme | str) -> bool:
    z = as_scheme(z)
    return primitive_root(z).k == z.k


def shifted_cycles(z: UpdateScheme | str) -> list[UpdateScheme]:
    """All rotations Y+X of Z = X+Y with X, Y nonempty, ordered by split point."""
    z = as_scheme(z)
    if not is_primitive(z):
        raise NotPrimitive(z.word)
    w = z.word
    return [UpdateScheme(w[i:] + w[:i]) for i in range(1, z.k)]
