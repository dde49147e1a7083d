"""Triad majority property and the triad majority closure of a profile.

The closure of a profile is the inclusion-minimal superset of its distinct
preferences in which the majority order of every three members (repeats
allowed) is linear and itself a member. One pass over triples of the input
suffices to build it; the result is re-checked and an inconsistency error
is raised if the single pass ever falls short.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .prefs import Preference, Profile, dedupe, signature_to_preference


class CyclicMajorityError(Exception):
    """A triple of preferences has a non-linear majority relation.

    Certifies that the profile is not weakly single crossing on any tree.
    """

    def __init__(self, indices: tuple[int, int, int], prefs: tuple[Preference, ...]):
        self.indices = indices
        self.prefs = prefs
        orders = ", ".join(str(p.order) for p in prefs)
        super().__init__(f"non-linear majority for triple {indices}: ({orders})")


class ClosureInconsistencyError(Exception):
    """The single-pass closure failed its own triad-majority post-check."""


@dataclass(frozen=True)
class ClosureResult:
    """Closure profile plus, for each added preference, a witness input triple."""

    closure: Profile
    added: tuple[tuple[Preference, tuple[int, int, int]], ...]


def _majority_sig(s1: int, s2: int, s3: int) -> int:
    # per-pair majority of three orders, as a bitwise vote on pair signatures
    return (s1 & s2) | (s2 & s3) | (s3 & s1)


def satisfies_triad_majority(p: Profile) -> bool:
    """True iff every 3-multiset of p's distinct preferences has a linear
    majority order that is itself in p."""
    if p.n == 0:
        raise ValueError("profile must be nonempty")
    distinct, _ = dedupe(p)
    prefs = distinct.preferences()
    sigs = [q.pair_signature() for q in prefs]
    known = set(sigs)
    for i, j, k in itertools.combinations_with_replacement(range(len(prefs)), 3):
        maj = _majority_sig(sigs[i], sigs[j], sigs[k])
        if maj not in known:
            # non-linear majorities can never match a member signature,
            # so one membership test covers both failure modes
            return False
    return True


def triad_closure(p: Profile) -> ClosureResult:
    """Add the majority order of every triple of distinct input preferences.

    Raises CyclicMajorityError with the offending triple (indices into the
    deduplicated input) if any majority relation is not a linear order.
    The closure profile is sorted lexicographically by order array; added
    preferences receive fresh voter ids above the input's maximum.
    """
    if p.n == 0:
        raise ValueError("profile must be nonempty")
    distinct, _ = dedupe(p)
    prefs = distinct.preferences()
    sigs = [q.pair_signature() for q in prefs]
    by_sig: dict[int, Preference] = dict(zip(sigs, prefs))
    added: list[tuple[Preference, tuple[int, int, int]]] = []
    # triples with repeats reduce to Maj(x, x, y) = x, so distinct triples suffice
    for i, j, k in itertools.combinations(range(len(prefs)), 3):
        maj = _majority_sig(sigs[i], sigs[j], sigs[k])
        if maj in by_sig:
            continue
        pref = signature_to_preference(maj, p.m)
        if pref is None:
            raise CyclicMajorityError((i, j, k), (prefs[i], prefs[j], prefs[k]))
        by_sig[maj] = pref
        added.append((pref, (i, j, k)))

    input_set = {q.order for q in prefs}
    id_of = {q.order: v for v, q in distinct.voters}
    next_id = max(p.voter_ids()) + 1
    ordered = sorted(by_sig.values(), key=lambda q: q.order)
    voters = []
    for q in ordered:
        if q.order in input_set:
            voters.append((id_of[q.order], q))
        else:
            voters.append((next_id, q))
            next_id += 1
    closure = Profile(tuple(voters), p.m)
    result = ClosureResult(closure, tuple(added))
    if not satisfies_triad_majority(closure):
        raise ClosureInconsistencyError(
            "single-pass closure does not satisfy the triad majority property"
        )
    return result


def verify_minimality(p: Profile, c: ClosureResult) -> bool:
    """True iff every closure preference outside p is the linear majority
    order of some three of p's distinct preferences."""
    distinct, _ = dedupe(p)
    prefs = distinct.preferences()
    sigs = [q.pair_signature() for q in prefs]
    input_set = {q.order for q in prefs}
    m = p.m
    for q in c.closure.preferences():
        if q.order in input_set:
            continue
        target = q.pair_signature()
        found = any(
            _majority_sig(sigs[i], sigs[j], sigs[k]) == target
            and signature_to_preference(target, m) is not None
            for i, j, k in itertools.combinations(range(len(prefs)), 3)
        )
        if not found:
            return False
    return True
