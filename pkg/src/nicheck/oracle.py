"""Independent brute-force and pair-automaton checkers.

These cross-validate the union-find deciders and serve as bounded
semi-decision procedures for the two notions that no algorithm can decide.
A bounded check that finds no violation proves nothing beyond the explored
depth; its verdict says exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Optional

from .errors import BudgetError, InputError
from . import semantics
from .semantics import TraceProfile
from .system import System, run
from .verify import Verdict

NOTIONS = ("p", "ip", "ta", "to", "ito")

#: Enumeration guard: refuse bounded checks beyond this many traces.
DEFAULT_TRACE_BUDGET = 5_000_000


@dataclass(frozen=True)
class BoundedVerdict:
    """Three-valued outcome of a bounded trace enumeration.

    `insecure` comes with a concrete violating pair and is conclusive.  The
    alternative is only "no violation among traces of length <= depth"; for
    the undecidable notions it must never be read as a proof of security.
    """

    insecure: bool
    depth: Optional[int] = None
    domain: Optional[str] = None
    alpha: Optional[tuple[str, ...]] = None
    beta: Optional[tuple[str, ...]] = None


_PROFILE_NEEDS = {
    "p": ("purge",),
    "ip": (),
    "ta": ("ta",),
    "to": ("purge", "views", "tview"),
    "ito": ("purge", "views", "ftview"),
    # tree-valued keys for the partition comparisons
    "to-tree": ("views", "to"),
    "ito-tree": ("views", "ito"),
}


def _interfering(system: System, ui: int) -> list[int]:
    """Domains other than ui that may interfere with ui, declaration order."""
    may = system._may
    return [v for v in range(len(system.policy.domains)) if v != ui and may[v][ui]]


def _profile_key(profile: TraceProfile, notion: str, ui: int, senders: list[int]):
    if notion == "p":
        return profile.purges[ui]
    if notion == "ip":
        sys = profile.system
        return semantics.ipurge(sys, sys.policy.domains[ui], profile.trace)
    if notion == "ta":
        return profile.ta_vec[ui]
    if notion == "to":
        return (profile.purges[ui], tuple(profile.tviews[v] for v in senders))
    if notion == "ito":
        return (profile.purges[ui], tuple(profile.ftviews[v] for v in senders))
    if notion == "to-tree":
        return profile.to_vec[ui]
    if notion == "ito-tree":
        return profile.ito_vec[ui]
    raise InputError(f"unknown security notion {notion!r}")


def trace_key(system: System, notion: str, u: str, alpha) -> object:
    """An opaque key whose equality captures what `u` may know after `alpha`
    under the given notion.

    For the purge notions the key is the purged trace itself; for the
    tree-valued notion it is the hash-consed tree; for the observation-based
    notions it is the purged trace paired with the transmitted views of every
    other domain permitted to interfere with `u`.
    """
    if notion not in NOTIONS:
        raise InputError(f"unknown security notion {notion!r}")
    ui = system.policy.index(u)
    profile = TraceProfile.start(system, needs=_PROFILE_NEEDS[notion])
    for a in alpha:
        profile = profile.extend(a)
    return _profile_key(profile, notion, ui, _interfering(system, ui))


def _count_traces(n_actions: int, depth: int) -> int:
    total, layer = 1, 1
    for _ in range(depth):
        layer *= n_actions
        total += layer
        if total > 10 * DEFAULT_TRACE_BUDGET:
            break
    return total


def bounded_check(
    system: System,
    notion: str,
    depth: int,
    budget: int = DEFAULT_TRACE_BUDGET,
    key_notion: str | None = None,
) -> BoundedVerdict:
    """Group every trace of length <= depth by its security key, per domain,
    and report the first key class containing two different final
    observations.

    Traces are scanned in shortlex order (length first, then action
    declaration order), so the reported pair is the lexicographically first
    violating one and verdicts are reproducible.  `key_notion` is an internal
    hook that lets the partition tests key the same enumeration by the
    tree-valued semantics.
    """
    system.require_valid()
    if notion not in NOTIONS:
        raise InputError(f"unknown security notion {notion!r}")
    key_notion = key_notion or notion
    n_actions = len(system.actions)
    total = _count_traces(n_actions, depth) if n_actions else 1
    if total > budget:
        raise BudgetError(
            f"bounded check would enumerate {total} traces (budget {budget})", total
        )

    domains = system.policy.domains
    nd = len(domains)
    senders = [_interfering(system, ui) for ui in range(nd)]
    obs = system._obs
    # key -> (observation, representative trace); one table per domain
    seen: list[dict] = [dict() for _ in range(nd)]
    needs = _PROFILE_NEEDS[key_notion]

    def check(profile: TraceProfile) -> Optional[BoundedVerdict]:
        for ui in range(nd):
            key = _profile_key(profile, key_notion, ui, senders[ui])
            token = obs[profile.state][ui]
            prior = seen[ui].get(key)
            if prior is None:
                seen[ui][key] = (token, profile.trace)
            elif prior[0] != token:
                return BoundedVerdict(
                    True, None, domains[ui], prior[1], profile.trace
                )
        return None

    def scan(profile: TraceProfile, remaining: int) -> Optional[BoundedVerdict]:
        if remaining == 0:
            return check(profile)
        for a in system.actions:
            hit = scan(profile.extend(a), remaining - 1)
            if hit is not None:
                return hit
        return None

    # Iterative deepening keeps memory linear in depth while preserving the
    # shortlex scan order; key tables persist so pairs may differ in length.
    for length in range(depth + 1):
        hit = scan(TraceProfile.start(system, needs=needs), length)
        if hit is not None:
            return hit
    return BoundedVerdict(False, depth)


def _pair_witness(system: System, parents, pair) -> tuple:
    alpha: list[str] = []
    beta: list[str] = []
    names = system.actions
    while True:
        prev = parents[pair]
        if prev is None:
            break
        pair, xa, ya = prev
        if xa is not None:
            alpha.append(names[xa])
        if ya is not None:
            beta.append(names[ya])
    return tuple(reversed(alpha)), tuple(reversed(beta))


def exact_pair_check_p(system: System) -> Verdict:
    """Decide purge security by searching the product of the system with
    itself: synchronized moves on every action, one-sided moves on actions
    invisible to the observer.  Exact, and independent of the union-find
    decider."""
    system.require_valid()
    step, obs, may, dom = system._step, system._obs, system._may, system._dom
    s0 = system.state_index(system.initial)
    all_actions = list(range(len(system.actions)))
    for u, uname in enumerate(system.policy.domains):
        invisible = [a for a in all_actions if not may[dom[a]][u]]
        start = (s0, s0)
        parents: dict = {start: None}
        queue = deque([start])
        while queue:
            pair = queue.popleft()
            s, t = pair
            moves = [(step[s][a], step[t][a], a, a) for a in all_actions]
            moves += [(step[s][a], t, a, None) for a in invisible]
            moves += [(s, step[t][a], None, a) for a in invisible]
            for ns, nt, xa, ya in moves:
                child = (ns, nt)
                if child not in parents:
                    parents[child] = (pair, xa, ya)
                    if obs[ns][u] != obs[nt][u]:
                        alpha, beta = _pair_witness(system, parents, child)
                        return Verdict(False, uname, alpha, beta)
                    queue.append(child)
    return Verdict(True)


def exact_pair_check_ip(system: System) -> Verdict:
    """Decide intransitive-purge security from its one-insertion
    characterization: an invisible action is inserted before a suffix whose
    actors its domain cannot reach, and the two runs are stepped in lockstep.
    Exact, and independent of the union-find decider."""
    system.require_valid()
    step, obs, may, dom = system._step, system._obs, system._may, system._dom
    nd = len(system.policy.domains)
    all_actions = list(range(len(system.actions)))
    reach = system._reachable_idx()
    for u, uname in enumerate(system.policy.domains):
        for v in range(nd):
            if may[v][u]:
                continue
            sync = [a for a in all_actions if not may[v][dom[a]]]
            parents: dict = {}
            queue = deque()
            for q in reach:
                for a in system._domain_actions[v]:
                    child = (step[q][a], q)
                    if child not in parents:
                        parents[child] = ((q, a), None)  # seed marker
                        queue.append(child)
            hit = None
            while queue and hit is None:
                pair = queue.popleft()
                s, t = pair
                if obs[s][u] != obs[t][u]:
                    hit = pair
                    break
                for a in sync:
                    child = (step[s][a], step[t][a])
                    if child not in parents:
                        parents[child] = (pair, a, a)
                        queue.append(child)
            if hit is not None:
                suffix_a: list[str] = []
                suffix_b: list[str] = []
                names = system.actions
                pair = hit
                while True:
                    entry = parents[pair]
                    if entry[1] is None:  # seed
                        (q, a0), _ = entry
                        break
                    pair, xa, ya = entry
                    suffix_a.append(names[xa])
                    suffix_b.append(names[ya])
                prefix = tuple(
                    names[a] for a in _bfs_actions(system, q)
                )
                alpha = prefix + (names[a0],) + tuple(reversed(suffix_a))
                beta = prefix + tuple(reversed(suffix_b))
                return Verdict(False, uname, alpha, beta)
    return Verdict(True)


def _bfs_actions(system: System, target: int) -> tuple[int, ...]:
    start = system.state_index(system.initial)
    if target == start:
        return ()
    step = system._step
    back = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a, t in enumerate(step[s]):
            if t not in back:
                back[t] = (s, a)
                if t == target:
                    path = []
                    while t != start:
                        s, a = back[t]
                        path.append(a)
                        t = s
                    return tuple(reversed(path))
                queue.append(t)
    raise InputError("state is unreachable")


def check_witness_pair(system: System, notion: str, u: str, alpha, beta) -> bool:
    """True when (alpha, beta) genuinely violates the notion for observer u:
    equal security keys but different final observations."""
    if trace_key(system, notion, u, alpha) != trace_key(system, notion, u, beta):
        return False
    end_a = run(system, system.initial, alpha)
    end_b = run(system, system.initial, beta)
    return system.obs(end_a, u) != system.obs(end_b, u)
