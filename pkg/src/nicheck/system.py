"""Interference policies and finite deterministic state-observed machines.

A machine has a set of named states with one initial state, a set of named
actions each owned by a security domain, a total deterministic transition
function, and a per-domain observation of every state.  The policy is a
reflexive relation over the domains saying who may pass information to whom.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Mapping

from .errors import InputError

#: Distinguished "nothing to see" observation token, also the default.
NULL_OBS = "_"


def _bad_name(name) -> bool:
    return (
        not isinstance(name, str)
        or not name
        or "#" in name
        or any(ch.isspace() for ch in name)
    )


class Policy:
    """Reflexive interference relation over an ordered set of domains.

    An edge (u, v) grants domain u the right to interfere with domain v, that
    is, to pass information to it.  Reflexive edges are implicit: they are
    added for every declared domain, and explicit self-edges are deduplicated.
    """

    __slots__ = ("domains", "edges", "_index")

    def __init__(self, domains: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        self.domains = tuple(domains)
        self._index = {d: i for i, d in enumerate(self.domains)}
        if len(self._index) != len(self.domains):
            raise InputError("duplicate domain declaration")
        for name in self.domains:
            if _bad_name(name):
                raise InputError(f"bad domain name {name!r}")
        edges = tuple(edges)
        for u, v in edges:
            if u not in self._index or v not in self._index:
                raise InputError(f"interference edge ({u}, {v}) names an undeclared domain")
        self.edges = frozenset(edges) | frozenset((d, d) for d in self.domains)

    def interferes(self, u: str, v: str) -> bool:
        """True when domain u may interfere with domain v."""
        return (u, v) in self.edges

    def index(self, u: str) -> int:
        try:
            return self._index[u]
        except KeyError:
            raise InputError(f"unknown domain {u!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Policy):
            return NotImplemented
        return self.domains == other.domains and self.edges == other.edges

    def __hash__(self):
        return hash((self.domains, self.edges))

    def __repr__(self):
        return f"Policy({list(self.domains)!r}, {sorted(self.edges)!r})"


def policy_image(policy: Policy, sources: Iterable[str]) -> set[str]:
    """All domains some member of `sources` may interfere with."""
    srcs = set(sources)
    for u in srcs:
        if u not in policy._index:
            raise InputError(f"unknown domain {u!r}")
    return {v for v in policy.domains for u in srcs if policy.interferes(u, v)}


def is_transitive(policy: Policy) -> bool:
    """True when u~>v and v~>w always imply u~>w."""
    succ: dict[str, set[str]] = {d: set() for d in policy.domains}
    for u, v in policy.edges:
        succ[u].add(v)
    for u, v in policy.edges:
        if not succ[v] <= succ[u]:
            return False
    return True


class System:
    """A finite deterministic machine observed per security domain.

    Construction is lenient: any inconsistency in the declarations is recorded
    in `diagnostics` instead of raising, so callers such as the file parser
    can report every problem at once.  All other operations require an empty
    diagnostics list.  Transitions not mentioned default to self-loops and
    observations not mentioned default to the null token.

    Valid systems are immutable and may be shared freely across threads, with
    one caveat: the internal structural-sharing table for information trees is
    not locked, so tree-building semantics should be driven from one thread
    per system at a time.
    """

    def __init__(
        self,
        policy: Policy,
        states: Iterable[str],
        initial: str,
        actions: Mapping[str, str],
        transitions: Mapping[tuple[str, str], str] | None = None,
        observations: Mapping[tuple[str, str], str] | None = None,
    ):
        self.policy = policy
        self.states = tuple(states)
        self.initial = initial
        self.actions = tuple(actions)
        self.action_domain = dict(actions)
        self.transitions = dict(transitions or {})
        self.observations = dict(observations or {})
        # Populated by the final-action augmentation; maps each added closing
        # action back onto the action it closes over.
        self.final_action_base: dict[str, str] = {}
        self.diagnostics: tuple[str, ...] = tuple(self._check())
        self._trees: dict = {}
        self._reach: list[int] | None = None
        if not self.diagnostics:
            self._build()

    # -- validation ------------------------------------------------------

    def _check(self) -> list[str]:
        out: list[str] = []
        for s in self.states:
            if _bad_name(s):
                out.append(f"bad state name {s!r}")
        if len(set(self.states)) != len(self.states):
            out.append("duplicate state declaration")
        if not self.states:
            out.append("no states declared")
        elif self.initial not in self.states:
            out.append(f"initial state {self.initial!r} is not declared")
        for a in self.actions:
            if _bad_name(a):
                out.append(f"bad action name {a!r}")
        if len(set(self.actions)) != len(self.actions):
            out.append("duplicate action declaration")
        for a, d in self.action_domain.items():
            if d not in self.policy._index:
                out.append(f"action {a}: unknown domain {d!r}")
        states = set(self.states)
        for (s, a), t in self.transitions.items():
            for q, what in ((s, "source"), (t, "target")):
                if q not in states:
                    out.append(f"transition {s} --{a}--> {t}: unknown {what} state")
            if a not in self.action_domain:
                out.append(f"transition {s} --{a}--> {t}: unknown action")
        for (s, d), token in self.observations.items():
            if s not in states:
                out.append(f"observation for ({s}, {d}): unknown state")
            if d not in self.policy._index:
                out.append(f"observation for ({s}, {d}): unknown domain")
            if _bad_name(token):
                out.append(f"observation for ({s}, {d}): bad token {token!r}")
        return out

    def _build(self) -> None:
        self._sidx = {s: i for i, s in enumerate(self.states)}
        self._aidx = {a: i for i, a in enumerate(self.actions)}
        didx = self.policy._index
        self._dom = [didx[self.action_domain[a]] for a in self.actions]
        nd = len(self.policy.domains)
        self._may = [
            [self.policy.interferes(u, v) for v in self.policy.domains]
            for u in self.policy.domains
        ]
        self._domain_actions: list[list[int]] = [[] for _ in range(nd)]
        for ai, di in enumerate(self._dom):
            self._domain_actions[di].append(ai)
        self._step = [
            [self._sidx[self.transitions.get((s, a), s)] for a in self.actions]
            for s in self.states
        ]
        self._obs = [
            tuple(self.observations.get((s, d), NULL_OBS) for d in self.policy.domains)
            for s in self.states
        ]

    def require_valid(self) -> None:
        if self.diagnostics:
            raise InputError(
                f"invalid system: {self.diagnostics[0]}", self.diagnostics
            )

    # -- helpers used across the package ---------------------------------

    def state_index(self, s: str) -> int:
        try:
            return self._sidx[s]
        except KeyError:
            raise InputError(f"unknown state {s!r}") from None

    def action_index(self, a: str) -> int:
        try:
            return self._aidx[a]
        except KeyError:
            raise InputError(f"unknown action {a!r}") from None

    def obs(self, state: str, domain: str) -> str:
        self.require_valid()
        return self._obs[self.state_index(state)][self.policy.index(domain)]

    def _reachable_idx(self) -> list[int]:
        """Reachable state indices, BFS layer by layer, declaration order inside a layer."""
        if self._reach is None:
            seen = {self.state_index(self.initial)}
            order = [self.state_index(self.initial)]
            layer = [order[0]]
            while layer:
                nxt = set()
                for s in layer:
                    for t in self._step[s]:
                        if t not in seen:
                            seen.add(t)
                            nxt.add(t)
                layer = sorted(nxt)
                order.extend(layer)
            self._reach = order
        return self._reach

    @classmethod
    def from_functions(
        cls,
        policy: Policy,
        actions: Mapping[str, str],
        initial,
        step_fn: Callable,
        obs_fn: Callable,
        name_fn: Callable = str,
        max_states: int = 1_000_000,
    ) -> "System":
        """Build the reachable part of a machine given behaviourally.

        `step_fn(state, action_name)` and `obs_fn(state, domain_name)` work on
        opaque hashable state values; `name_fn` renders them as state names.
        Exploration is breadth-first with actions in declaration order, so the
        state numbering (and hence everything downstream) is deterministic.
        """
        action_names = tuple(actions)
        index = {initial: 0}
        order = [initial]
        queue = deque([initial])
        transitions: dict[tuple[str, str], str] = {}
        edges = []
        while queue:
            s = queue.popleft()
            for a in action_names:
                t = step_fn(s, a)
                if t not in index:
                    if len(order) >= max_states:
                        raise InputError(f"state space exceeds {max_states} states")
                    index[t] = len(order)
                    order.append(t)
                    queue.append(t)
                edges.append((s, a, t))
        names = [name_fn(s) for s in order]
        if len(set(names)) != len(names):
            raise InputError("state naming function produced duplicate names")
        named = {s: names[i] for s, i in index.items()}
        for s, a, t in edges:
            if s is not t and s != t:
                transitions[(named[s], a)] = named[t]
        observations = {}
        for s in order:
            for d in policy.domains:
                token = obs_fn(s, d)
                if token != NULL_OBS:
                    observations[(named[s], d)] = token
        sys = cls(policy, names, names[0], actions, transitions, observations)
        sys.require_valid()
        return sys

    def _canonical(self):
        if self.diagnostics:
            return (self.policy, self.states, self.initial, self.actions,
                    tuple(sorted(self.action_domain.items())),
                    tuple(sorted(self.transitions.items())),
                    tuple(sorted(self.observations.items())))
        return (
            self.policy,
            self.states,
            self.initial,
            self.actions,
            tuple(self.action_domain[a] for a in self.actions),
            tuple(tuple(row) for row in self._step),
            tuple(self._obs),
        )

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self.policy, self.states, self.actions))

    def __repr__(self):
        return (
            f"<System |S|={len(self.states)} |A|={len(self.actions)}"
            f" |D|={len(self.policy.domains)}>"
        )


def validate(system: System) -> list[str]:
    """All invariant violations in the system's declarations; empty means ok."""
    return list(system.diagnostics)


def run(system: System, start: str, alpha: Iterable[str]) -> str:
    """The state reached from `start` by performing the actions of `alpha` in order."""
    system.require_valid()
    s = system.state_index(start)
    step = system._step
    for a in alpha:
        s = step[s][system.action_index(a)]
    return system.states[s]


def reachable_states(system: System) -> tuple[str, ...]:
    """States reachable from the initial state, BFS layer then declaration order."""
    system.require_valid()
    return tuple(system.states[i] for i in system._reachable_idx())
