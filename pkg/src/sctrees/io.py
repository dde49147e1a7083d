"""Profile and tree file formats.

Profile JSON: {"candidates": ["a", "b"], "voters": [{"id": 0, "order": ["a", "b"]}]}
Profile text: first line = candidate names, one voter order per following line.
Tree JSON: {"nodes": [{"voter": 0, "order": ["a", "b"]}], "edges": [[0, 1]]}
Order lists are most-preferred first.
"""

from __future__ import annotations

import json
from pathlib import Path

from .prefs import Preference, Profile
from .sctree import VoterTree


class FormatError(ValueError):
    pass


def _candidate_index(names: list[str]) -> dict[str, int]:
    if len(set(names)) != len(names) or not names or any(not n for n in names):
        raise FormatError("candidate names must be nonempty and distinct")
    return {name: i for i, name in enumerate(names)}


def _parse_order(tokens: list[str], index: dict[str, int]) -> Preference:
    try:
        order = tuple(index[t] for t in tokens)
    except KeyError as e:
        raise FormatError(f"unknown candidate {e.args[0]!r}") from None
    if len(order) != len(index):
        raise FormatError("each order must rank every candidate exactly once")
    return Preference(order)


def profile_from_json(data: dict) -> tuple[Profile, list[str]]:
    try:
        names = list(data["candidates"])
        voters = data["voters"]
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed profile object: {e}") from None
    index = _candidate_index(names)
    entries = []
    for v in voters:
        entries.append((int(v["id"]), _parse_order(list(v["order"]), index)))
    if not entries:
        raise FormatError("profile must contain at least one voter")
    return Profile(tuple(entries), len(names)), names


def profile_from_text(text: str) -> tuple[Profile, list[str]]:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) < 2:
        raise FormatError("text profile needs a candidate line and at least one voter")
    names = lines[0].split()
    index = _candidate_index(names)
    prefs = [_parse_order(line.split(), index) for line in lines[1:]]
    return Profile.from_preferences(prefs), names


def load_profile(path: str | Path) -> tuple[Profile, list[str]]:
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return profile_from_json(json.loads(text))
    return profile_from_text(text)


def profile_to_json(p: Profile, names: list[str]) -> dict:
    return {
        "candidates": list(names),
        "voters": [
            {"id": v, "order": [names[c] for c in q.order]} for v, q in p.voters
        ],
    }


def tree_to_json(t: VoterTree, names: list[str]) -> dict:
    return {
        "nodes": [
            {"voter": v, "order": [names[c] for c in q.order]} for v, q in t.nodes
        ],
        "edges": [[a, b] for a, b in t.edges],
    }


def tree_from_json(data: dict, names: list[str] | None = None) -> tuple[VoterTree, list[str]]:
    """Parse a tree object; pass `names` to align candidate indices with an
    already-loaded profile."""
    try:
        nodes = data["nodes"]
        edges = data["edges"]
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed tree object: {e}") from None
    if not nodes:
        raise FormatError("tree must have at least one node")
    if names is None:
        names = list(nodes[0]["order"])
    index = _candidate_index(names)
    parsed = tuple(
        (int(node["voter"]), _parse_order(list(node["order"]), index))
        for node in nodes
    )
    try:
        tree = VoterTree(parsed, tuple((int(a), int(b)) for a, b in edges))
    except ValueError as e:
        raise FormatError(str(e)) from None
    return tree, names


def load_tree(path: str | Path, names: list[str] | None = None) -> tuple[VoterTree, list[str]]:
    return tree_from_json(json.loads(Path(path).read_text()), names)
