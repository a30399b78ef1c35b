"""Bipartitions of the output modes and their text labels (``a1b2|a2b1``)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from src.utils.errors import ConfigError


@dataclass(frozen=True)
class Bipartition:
    """
    Split of ``modes`` into ``side_a | side_b``.

    Canonical form: the smaller side is ``side_a``; for equal halves it is
    the side holding the first mode. Both sides keep the global mode order.
    """

    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise ConfigError("both sides of a bipartition must be nonempty")
        if set(self.side_a) & set(self.side_b):
            raise ConfigError(f"bipartition sides overlap: {self.side_a} | {self.side_b}")

    @classmethod
    def from_sides(cls, side: tuple, modes: tuple) -> "Bipartition":
        side = set(side)
        unknown = side - set(modes)
        if unknown:
            raise ConfigError(f"bipartition names unknown mode(s) {sorted(unknown)} (modes: {modes})")
        a = tuple(m for m in modes if m in side)
        b = tuple(m for m in modes if m not in side)
        if len(b) < len(a) or (len(a) == len(b) and b and b[0] == modes[0]):
            a, b = b, a
        return cls(a, b)

    @classmethod
    def from_label(cls, label: str, modes: tuple) -> "Bipartition":
        if label.count("|") != 1:
            raise ConfigError(f"bipartition label {label!r} must contain exactly one '|'")
        left, right = label.split("|")
        side_a, side_b = _tokenize(left, modes), _tokenize(right, modes)
        if set(side_a) | set(side_b) != set(modes) or set(side_a) & set(side_b):
            raise ConfigError(f"bipartition {label!r} does not split the modes {modes} exactly")
        return cls.from_sides(side_a, modes)

    @property
    def modes(self) -> frozenset:
        return frozenset(self.side_a) | frozenset(self.side_b)

    @property
    def label(self) -> str:
        return "".join(self.side_a) + "|" + "".join(self.side_b)

    def side_of(self, support) -> str | None:
        """``"A"``/``"B"`` when ``support`` lies inside one side, else ``None``."""
        support = set(support)
        if support <= set(self.side_a):
            return "A"
        if support <= set(self.side_b):
            return "B"
        return None

    def __str__(self) -> str:
        return self.label


def _tokenize(text: str, modes: tuple) -> tuple:
    names = sorted(modes, key=len, reverse=True)
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        if text[pos] in " ,":
            pos += 1
            continue
        for name in names:
            if text.startswith(name, pos):
                out.append(name)
                pos += len(name)
                break
        else:
            raise ConfigError(f"cannot read mode names from {text!r} (modes: {modes})")
    return tuple(out)


def all_bipartitions(modes: tuple) -> tuple:
    """
    The ``2^{M−1} − 1`` bipartitions of ``M`` modes.

    Singletons come first in mode order, then larger sides by size and
    lexicographic mode index; equal halves are listed once, containing the
    first mode. For ``(a1, a2, b1, b2)`` this gives a1|…, a2|…, b1|…, b2|…,
    a1a2|…, a1b1|…, a1b2|….
    """
    modes = tuple(modes)
    if len(modes) < 2:
        raise ConfigError(f"need at least two modes to form a bipartition, got {modes}")
    out = []
    for size in range(1, len(modes) // 2 + 1):
        for side in itertools.combinations(modes, size):
            if 2 * size == len(modes) and side[0] != modes[0]:
                continue
            out.append(Bipartition.from_sides(side, modes))
    return tuple(out)


def resolve_bipartitions(selection, modes: tuple) -> tuple:
    """``"all"`` or an explicit list of labels → canonical bipartitions."""
    if selection in (None, "all"):
        return all_bipartitions(modes)
    if isinstance(selection, str):
        selection = [selection]
    resolved = tuple(Bipartition.from_label(label, modes) for label in selection)
    if len({b.label for b in resolved}) != len(resolved):
        raise ConfigError(f"duplicate bipartitions in {list(selection)}")
    return resolved
