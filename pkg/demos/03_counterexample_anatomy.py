#!/usr/bin/env python3
"""What a counterexample is made of, and how to re-check one from scratch.

An insecure verdict is a pair of runs: equal security key for some observer,
different final observations.  Everything needed to audit it is in the pair
itself, so a witness can be validated with none of the decider's machinery.
"""

import json

import nicheck as nc

# The two-lane system: two high domains with separate downgraders to L.
# L may learn THAT both secrets were downgraded, but never in which order
# the high actions happened: the downgraders cannot know that themselves.
system = nc.fixture("fig6")
print("policy edges:", sorted(e for e in system.policy.edges if e[0] != e[1]))

# Intransitive purge security holds: order is invisible to that notion.
print("intransitive purge notion:", "secure" if nc.decide_ip(system).secure else "insecure")

# The transmitted-information notion catches the ordering leak:
verdict = nc.decide_ta(system)
print("transmitted-info notion:  ", "secure" if verdict.secure else "insecure")
print()

alpha, beta = verdict.alpha, verdict.beta
print("witness runs for", verdict.domain)
print("  alpha:", " ".join(alpha))
print("  beta: ", " ".join(beta))

# The two runs differ by exactly one adjacent swap of actions that no
# permitted observer can order:
k = next(i for i, (x, y) in enumerate(zip(alpha, beta)) if x != y)
print(f"  they differ by swapping positions {k},{k+1}:",
      alpha[k], "<->", alpha[k + 1])
print("  swappable there:", nc.swappable(system, verdict.domain, alpha, k))

# Audit trail, step one: the maximal-information trees coincide...
print("  equal info trees:", nc.ta(system, verdict.domain, alpha)
      is nc.ta(system, verdict.domain, beta))

# ...step two: the final observations do not.
end_a = nc.run(system, system.initial, alpha)
end_b = nc.run(system, system.initial, beta)
print("  observations:", system.obs(end_a, verdict.domain),
      "vs", system.obs(end_b, verdict.domain))

# The independent checker agrees, and the witness serializes to JSON that
# can be re-verified later against just the system file.
print("  independent check:", nc.check_witness_pair(
    system, "ta", verdict.domain, alpha, beta))
print()
print(json.dumps({
    "notion": "ta",
    "domain": verdict.domain,
    "alpha": list(alpha),
    "beta": list(beta),
    "obs_alpha": system.obs(end_a, verdict.domain),
    "obs_beta": system.obs(end_b, verdict.domain),
}, indent=2))
