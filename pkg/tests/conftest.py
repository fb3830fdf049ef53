import random

import pytest

import nicheck as nc


@pytest.fixture(scope="session")
def fig5():
    return nc.fixture("fig5")


@pytest.fixture(scope="session")
def fig6():
    return nc.fixture("fig6")


@pytest.fixture(scope="session")
def fig7():
    return nc.fixture("fig7")


@pytest.fixture(scope="session")
def fig8():
    return nc.fixture("fig8")


@pytest.fixture(scope="session")
def pcp_demo():
    return nc.fixture("pcp_demo")


@pytest.fixture(scope="session")
def direct_leak():
    """Two states, no permitted flow from H to L, yet L's observation flips
    after H's action."""
    return nc.System(
        nc.Policy(("H", "L")),
        ("s0", "s1"),
        "s0",
        {"h": "H"},
        {("s0", "h"): "s1"},
        {("s0", "L"): "0", ("s1", "L"): "1"},
    )


@pytest.fixture(scope="session")
def counting_machine():
    """Transitive two-level policy; every observation is a parity of counts of
    the actions visible to the observer, hence secure under every notion."""
    states = [f"c{i}{j}" for i in (0, 1) for j in (0, 1)]
    trans = {}
    obs = {}
    for i in (0, 1):
        for j in (0, 1):
            trans[(f"c{i}{j}", "l")] = f"c{1 - i}{j}"
            trans[(f"c{i}{j}", "h")] = f"c{i}{1 - j}"
            obs[(f"c{i}{j}", "L")] = str(i)
            obs[(f"c{i}{j}", "H")] = str((i + j) % 2)
    return nc.System(
        nc.Policy(("L", "H"), (("L", "H"),)),
        states, "c00", {"l": "L", "h": "H"}, trans, obs,
    )


def corpus_params(count, seed, max_states=6, max_actions=4, max_domains=3, obs_tokens=3):
    """Deterministic parameter list for a random-system corpus."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        out.append(
            nc.GenParams(
                rng.randint(1, max_states),
                rng.randint(1, max_actions),
                rng.randint(1, max_domains),
                obs_tokens,
                rng.choice([0.0, 0.2, 0.35, 0.5, 1.0]),
                seed * 1_000_003 + i,
            )
        )
    return out


def transitive_closure(policy):
    """Smallest transitive policy containing the given one."""
    edges = set(policy.edges)
    changed = True
    while changed:
        changed = False
        for u, v in list(edges):
            for v2, w in list(edges):
                if v2 == v and (u, w) not in edges:
                    edges.add((u, w))
                    changed = True
    return nc.Policy(policy.domains, edges)


def random_trace(rng, system, max_len=8):
    return tuple(rng.choice(system.actions) for _ in range(rng.randint(0, max_len)))
