"""End-to-end recognition of weakly single crossing profiles on trees."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .closure import ClosureResult, CyclicMajorityError, triad_closure
from .prefs import Preference, Profile, dedupe
from .sctree import NoTreeError, VoterTree, build_sc_tree, bruteforce_sc_tree


@dataclass(frozen=True)
class Certificate:
    """Machine-readable negative certificate."""

    kind: str  # "cyclic-majority" | "no-tree"
    witness_indices: Optional[tuple[int, int, int]] = None
    witness_prefs: Optional[tuple[Preference, ...]] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class RecognitionOutcome:
    verdict: bool
    closure: Optional[Profile] = None
    closure_result: Optional[ClosureResult] = None
    tree: Optional[VoterTree] = None
    certificate: Optional[Certificate] = None


def recognize_weakly_sc(p: Profile) -> RecognitionOutcome:
    """Dedupe, take the triad majority closure, build its tree.

    Yes iff both steps succeed; the closure and its single crossing tree
    are the witness. Negative outcomes carry a certificate, never raise.
    """
    if p.n == 0:
        raise ValueError("profile must be nonempty")
    distinct, _ = dedupe(p)
    try:
        cres = triad_closure(distinct)
    except CyclicMajorityError as e:
        return RecognitionOutcome(
            False,
            certificate=Certificate(
                "cyclic-majority", witness_indices=e.indices, witness_prefs=e.prefs
            ),
        )
    try:
        tree = build_sc_tree(cres.closure)
    except NoTreeError as e:
        return RecognitionOutcome(
            False, certificate=Certificate("no-tree", reason=e.reason)
        )
    return RecognitionOutcome(True, closure=cres.closure, closure_result=cres, tree=tree)


def bruteforce_weakly_sc(p: Profile) -> bool:
    """Exhaustive test oracle: does some bounded superset admit a tree?

    For m <= 3 the search covers every superset of the distinct preferences
    within all m! orders, capped at m(m-1)/2 + 1 members. For m == 4 at most
    3 extra preferences are tried (documented cap). Larger m is refused.
    """
    if p.n == 0:
        raise ValueError("profile must be nonempty")
    m = p.m
    if m > 4:
        raise ValueError("brute force limited to m <= 4")
    distinct, _ = dedupe(p)
    base = [q.order for q in distinct.preferences()]
    cap = m * (m - 1) // 2 + 1
    if len(base) > cap:
        return False
    base_set = set(base)
    others = [
        perm for perm in itertools.permutations(range(m)) if perm not in base_set
    ]
    max_extra = cap - len(base) if m <= 3 else min(3, cap - len(base))
    for extra_size in range(0, max_extra + 1):
        for extra in itertools.combinations(others, extra_size):
            orders = base + list(extra)
            if len(orders) > 8:
                continue  # beyond the Prüfer enumeration guard
            candidate = Profile.from_preferences([Preference(o) for o in orders])
            try:
                bruteforce_sc_tree(candidate)
                return True
            except NoTreeError:
                continue
    return False
