#!/usr/bin/env python3
"""Why two of the five notions have no decider, made concrete.

A word-correspondence puzzle (two lists of words; find one index sequence
whose top and bottom concatenations agree) embeds into a fixed four-domain
machine so that puzzle solutions and observation-transmission violations are
the same thing.  Solving puzzles like these is famously impossible in
general, so no algorithm can decide that notion; all we can honestly run is
bounded search, plus the constructions below that turn known solutions into
certified counterexamples.
"""

import nicheck as nc
from nicheck.reduction import WATCHER

instance = nc.DEMO_INSTANCE
print("alphabet:", instance.alphabet)
print("tops:   ", instance.tops)
print("bottoms:", instance.bottoms)

solution = nc.DEMO_SOLUTION
top = "".join(instance.tops[j - 1] for j in solution)
bottom = "".join(instance.bottoms[j - 1] for j in solution)
print(f"solution {solution}: {top} == {bottom}")
print()

machine = nc.build_pcp_system(instance)
print("encoded machine:", len(machine.states), "states,",
      len(machine.actions), "actions, domains", machine.policy.domains)

# The solution becomes a pair of runs: same spelled letters, same picks,
# but one run compares against the bottom list.
alpha, beta = nc.pcp_witness(instance, solution)
print("run A:", " ".join(alpha))
print("run B:", " ".join(beta))
print("watcher sees:",
      machine.obs(nc.run(machine, machine.initial, alpha), WATCHER), "vs",
      machine.obs(nc.run(machine, machine.initial, beta), WATCHER))
print("certified violation:",
      nc.check_witness_pair(machine, "to", WATCHER, alpha, beta))
print()

# Bounded search cannot see that far (the witness needs 14 steps), which is
# exactly the point of its three-valued verdict:
out = nc.bounded_check(machine, "to", 4)
print("bounded search to depth 4:", "insecure" if out.insecure
      else f"no violation up to {out.depth}")
print()

# The immediate-transmission notion inherits undecidability by translation:
# give every domain a final action that freezes its observation, and the two
# notions swap roles.
aug = nc.augment_final(nc.fixture("fig8"))
hit = nc.bounded_check(aug, "ito", 4)
print("fig8 is transmission-insecure; after augmentation the immediate")
print("notion sees it too:", " ".join(hit.alpha), "/", " ".join(hit.beta))
