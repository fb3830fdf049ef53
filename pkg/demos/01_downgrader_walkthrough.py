#!/usr/bin/env python3
"""A first tour: one secret bit, one downgrader, three verdicts.

We build a three-domain machine in the text format, look at how the two purge
functions disagree about it, and run the exact deciders.
"""

import nicheck as nc

# H is a high-security domain, D a trusted downgrader, L a low observer.
# Information may flow H -> D and D -> L, but never H -> L directly.
SYSTEM = """
domain H
domain D
domain L
interferes H D
interferes D L
action h H
action d D
action l L
state s0 init
state s1
state s2
trans s0 h s1          # the secret event happens
trans s1 d s2          # the downgrader releases it
obs s0 H 0
obs s1 H 1
obs s2 H 1
obs s0 D 0
obs s1 D 1
obs s2 D 1
obs s0 L 0
obs s1 L 0
obs s2 L 1             # L sees the bit only after the downgrade
"""

system = nc.parse_system(SYSTEM)
print("states:", nc.reachable_states(system))
print()

# The trace "h d l": the secret happens, gets downgraded, L acts.
trace = ("h", "d", "l")
print("trace:", " ".join(trace))
print("final L observation:", system.obs(nc.run(system, "s0", trace), "L"))
print()

# The classical purge removes every action L is not allowed to see directly,
# including the h even though a downgrade followed it:
print("purge for L:  ", nc.purge(system, "L", trace))

# The intransitive purge keeps h, because h -> d -> L is a permitted chain:
print("ipurge for L: ", nc.ipurge(system, "L", trace))
print()

# Under the purge-based notion the system is insecure: the runs "h d" and
# "d" purge to the same thing but L observes differently.
verdict = nc.decide_p(system)
print("purge-based notion:       insecure =", not verdict.secure)
print("  witness runs:", verdict.alpha, "vs", verdict.beta)
print("  purged equally:", nc.purge(system, "L", verdict.alpha)
      == nc.purge(system, "L", verdict.beta))

# The intransitive notions accept it: the downgrader really did act.
print("intransitive purge notion: secure =", nc.decide_ip(system).secure)
print("transmitted info notion:   secure =", nc.decide_ta(system).secure)

# Bounded enumeration finds no observation-transmission violation either
# (for the undecidable notions this is evidence, not proof):
out = nc.bounded_check(system, "to", 6)
print("observation transmission:  no violation up to depth", out.depth)
