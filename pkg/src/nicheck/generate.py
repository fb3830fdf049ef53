"""Seeded random machines and the standard separating fixtures.

The fixtures are small machines realizing the classic separations between
the security notions under downgrader-style policies.  Each ships with its
expected classification; `FIXTURE_CLASSIFICATION` records the exact verdicts
for the three decidable notions and, for the two undecidable ones, the
enumeration depth at which a bounded check first finds a violation (None when
no violation exists within `clear_depth`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .reduction import DEMO_INSTANCE, build_pcp_system
from .system import Policy, System


@dataclass(frozen=True)
class GenParams:
    """Shape of a random machine; the same params and seed always yield the
    identical system."""

    num_states: int
    num_actions: int
    num_domains: int
    obs_alphabet_size: int
    policy_density: float
    seed: int

    def __post_init__(self):
        for field in ("num_states", "num_actions", "num_domains", "obs_alphabet_size"):
            if getattr(self, field) < 1:
                raise InputError(f"{field} must be at least 1")
        if not 0.0 <= self.policy_density <= 1.0:
            raise InputError("policy_density must lie in [0, 1]")


def gen_random_system(params: GenParams) -> System:
    """Uniform random transition and observation tables over a random
    reflexive policy of the requested density."""
    rng = random.Random(params.seed)
    domains = [f"d{i}" for i in range(params.num_domains)]
    edges = [
        (u, v)
        for u in domains
        for v in domains
        if u != v and rng.random() < params.policy_density
    ]
    policy = Policy(domains, edges)
    actions = {f"a{i}": domains[rng.randrange(params.num_domains)]
               for i in range(params.num_actions)}
    states = [f"s{i}" for i in range(params.num_states)]
    transitions = {}
    for s in range(params.num_states):
        for a in range(params.num_actions):
            t = rng.randrange(params.num_states)
            if t != s:
                transitions[(states[s], f"a{a}")] = states[t]
    tokens = [f"o{i}" for i in range(params.obs_alphabet_size)]
    observations = {}
    if params.obs_alphabet_size > 1:
        for s in states:
            for d in domains:
                observations[(s, d)] = rng.choice(tokens)
    else:
        # A single token certainly stutters everywhere; keep the default.
        pass
    sys = System(policy, states, states[0], actions, transitions, observations)
    sys.require_valid()
    return sys


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def _downgrader_policy() -> Policy:
    return Policy(("H", "D", "L"), (("H", "D"), ("D", "L")))


def _fig5() -> System:
    # One bit: "has h ever happened?".  H and D see it at once, L only after
    # the downgrade d.
    return System(
        _downgrader_policy(),
        ("s0", "s1", "s2"),
        "s0",
        {"h": "H", "d": "D", "l": "L"},
        {("s0", "h"): "s1", ("s1", "d"): "s2"},
        {
            ("s0", "H"): "0", ("s1", "H"): "1", ("s2", "H"): "1",
            ("s0", "D"): "0", ("s1", "D"): "1", ("s2", "D"): "1",
            ("s0", "L"): "0", ("s1", "L"): "0", ("s2", "L"): "1",
        },
    )


def _fig6() -> System:
    # Two independent downgrading lanes; L's observation reveals which high
    # action came first, but only once both lanes have downgraded.
    policy = Policy(
        ("H1", "H2", "D1", "D2", "L"),
        (("H1", "D1"), ("D1", "L"), ("H2", "D2"), ("D2", "L")),
    )
    actions = {"h1": "H1", "h2": "H2", "d1": "D1", "d2": "D2"}

    # state: (which high action came first, h1 seen, d1-after-h1, h2 seen,
    # d2-after-h2); only first occurrences matter for L's observation.
    initial = (0, False, False, False, False)

    def step(s, a):
        first, h1s, h1d, h2s, h2d = s
        if a == "h1" and not h1s:
            return (first or 1, True, h1d, h2s, h2d)
        if a == "h2" and not h2s:
            return (first or 2, h1s, h1d, True, h2d)
        if a == "d1" and h1s and not h1d:
            return (first, h1s, True, h2s, h2d)
        if a == "d2" and h2s and not h2d:
            return (first, h1s, h1d, h2s, True)
        return s

    def obs(s, domain):
        first, _, h1d, _, h2d = s
        if domain == "L" and h1d and h2d and first:
            return str(first)
        return "0"

    def name(s):
        return "q" + "".join(str(int(x)) for x in s)

    return System.from_functions(policy, actions, initial, step, obs, name)


def _fig7() -> System:
    # As fig5, but the downgrader itself observes nothing: it passes on a bit
    # it never held.
    return System(
        _downgrader_policy(),
        ("s0", "s1", "s2"),
        "s0",
        {"h": "H", "d": "D", "l": "L"},
        {("s0", "h"): "s1", ("s1", "d"): "s2"},
        {
            ("s0", "H"): "0", ("s1", "H"): "1", ("s2", "H"): "1",
            ("s0", "D"): "0", ("s1", "D"): "0", ("s2", "D"): "0",
            ("s0", "L"): "0", ("s1", "L"): "0", ("s2", "L"): "1",
        },
    )


def _fig8() -> System:
    # The downgrader learns the bit through the observation it makes right
    # after downgrading, and L learns it at the same moment.
    return System(
        _downgrader_policy(),
        ("t0", "t1", "t2"),
        "t0",
        {"h": "H", "d": "D", "l": "L"},
        {("t0", "h"): "t1", ("t1", "d"): "t2"},
        {
            ("t0", "H"): "0", ("t1", "H"): "1", ("t2", "H"): "1",
            ("t0", "D"): "0", ("t1", "D"): "0", ("t2", "D"): "1",
            ("t0", "L"): "0", ("t1", "L"): "0", ("t2", "L"): "1",
        },
    )


_FIXTURES = {
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "fig8": _fig8,
    "pcp_demo": lambda: build_pcp_system(DEMO_INSTANCE),
}

FIXTURE_NAMES = tuple(_FIXTURES)

#: Expected classification of every fixture.  "p"/"ip"/"ta" are the exact
#: decider verdicts.  "*_violation_depth" is the smallest enumeration depth at
#: which the bounded checker exhibits a violation of the undecidable notion,
#: or None if none exists up to `clear_depth` (which, for the notions marked
#: None, is NOT a proof of security).
FIXTURE_CLASSIFICATION = {
    "fig5": {"p": False, "ip": True, "ta": True,
             "to_violation_depth": None, "ito_violation_depth": None, "clear_depth": 6},
    "fig6": {"p": False, "ip": True, "ta": False,
             "to_violation_depth": 4, "ito_violation_depth": 4, "clear_depth": 6},
    "fig7": {"p": False, "ip": True, "ta": True,
             "to_violation_depth": 2, "ito_violation_depth": 2, "clear_depth": 6},
    "fig8": {"p": False, "ip": True, "ta": True,
             "to_violation_depth": 2, "ito_violation_depth": None, "clear_depth": 6},
    "pcp_demo": {"p": False, "ip": True, "ta": True,
                 "to_violation_depth": None, "ito_violation_depth": None, "clear_depth": 4},
}


def fixture(name: str) -> System:
    """One of the named separating machines."""
    try:
        build = _FIXTURES[name]
    except KeyError:
        raise InputError(
            f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}"
        ) from None
    return build()
