from __future__ import annotations

import itertools

import pytest

from sctrees import Preference, Profile


def pref(letters: str) -> Preference:
    """Preference from a letter string, e.g. 'bac' = b > a > c."""
    m = len(letters)
    alphabet = sorted(letters)
    assert alphabet == sorted("abcdefghij"[:m]), f"bad letters {letters!r}"
    return Preference(tuple(ord(ch) - ord("a") for ch in letters))


def profile(*orders: str) -> Profile:
    return Profile.from_preferences([pref(o) for o in orders])


def all_orders(m: int) -> list[Preference]:
    return [Preference(p) for p in itertools.permutations(range(m))]


@pytest.fixture
def abc_condorcet() -> Profile:
    return profile("abc", "bca", "cab")


@pytest.fixture
def star_leaves() -> Profile:
    """The worked m=4 instance whose closure adds abcd."""
    return profile("bacd", "acbd", "abdc")
