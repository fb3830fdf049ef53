"""Trace semantics: purge functions, per-domain views, and information trees.

Everything here is a pure function of a system and an action sequence.  The
functions fall into three families:

* subsequence semantics: which actions an observer is permitted to know about
  at all (`purge`, `sources`, `ipurge`);
* view semantics: the stutter-free record of one domain's own actions and
  observations (`view`, `tview`, `lpre`, `ftview`);
* tree semantics: the maximal information a domain may hold, represented as
  hash-consed trees whose interior nodes are labelled with actions (`ta`,
  `to`, `ito`).

Views are sequences of tagged elements so that an action can never be
confused with an observation token of the same spelling: ("a", name) marks an
action of the viewing domain, ("o", token) an observation.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InputError
from .system import System

ACT = "a"
OBS = "o"

#: Leaf payload of the empty-history information tree.
EPSILON = ("eps",)


def _indices(system: System, u: str, alpha: Iterable[str]) -> tuple[int, list[int]]:
    system.require_valid()
    return system.policy.index(u), [system.action_index(a) for a in alpha]


# ---------------------------------------------------------------------------
# Subsequence semantics
# ---------------------------------------------------------------------------


def purge(system: System, u: str, alpha: Iterable[str]) -> tuple[str, ...]:
    """The subsequence of `alpha` whose actions belong to domains that may
    interfere with `u`."""
    ui, idxs = _indices(system, u, alpha)
    may, dom = system._may, system._dom
    return tuple(system.actions[a] for a in idxs if may[dom[a]][ui])


def sources(system: System, alpha: Iterable[str], u: str) -> frozenset[str]:
    """Domains from which a policy-permitted chain of interferences inside
    `alpha` can reach `u`.

    Defined from the right: a domain joins the set when one of its actions can
    influence a domain already in the set at a later position.
    """
    ui, idxs = _indices(system, u, alpha)
    may, dom = system._may, system._dom
    cur = {ui}
    for a in reversed(idxs):
        d = dom[a]
        if any(may[d][v] for v in cur):
            cur.add(d)
    return frozenset(system.policy.domains[d] for d in cur)


def _ipurge_idx(system: System, ui: int, idxs: list[int]) -> list[int]:
    may, dom = system._may, system._dom
    cur = {ui}
    keep = [False] * len(idxs)
    for pos in range(len(idxs) - 1, -1, -1):
        d = dom[idxs[pos]]
        if any(may[d][v] for v in cur):
            cur.add(d)
            keep[pos] = True
    return [a for a, k in zip(idxs, keep) if k]


def ipurge(system: System, u: str, alpha: Iterable[str]) -> tuple[str, ...]:
    """The intransitive purge: the subsequence of `alpha` that could form part
    of a permitted causal chain ending at `u`.

    Idempotent, and equal to `purge` whenever the policy is transitive.
    """
    ui, idxs = _indices(system, u, alpha)
    return tuple(system.actions[a] for a in _ipurge_idx(system, ui, idxs))


# ---------------------------------------------------------------------------
# View semantics
# ---------------------------------------------------------------------------


def _absorb(seq: tuple, elem: tuple) -> tuple:
    # Stuttering observations collapse; an action element never absorbs.
    if seq and seq[-1] == elem:
        return seq
    return seq + (elem,)


def view(system: System, u: str, alpha: Iterable[str]) -> tuple:
    """Domain `u`'s complete record of the run driven by `alpha`: its own
    actions plus the observation after every step, stutter-free."""
    ui, idxs = _indices(system, u, alpha)
    step, obs, dom = system._step, system._obs, system._dom
    s = system.state_index(system.initial)
    out = ((OBS, obs[s][ui]),)
    for a in idxs:
        s = step[s][a]
        if dom[a] == ui:
            out = out + ((ACT, system.actions[a]),)
        out = _absorb(out, (OBS, obs[s][ui]))
    return out


def tview(system: System, u: str, alpha: Iterable[str]) -> tuple:
    """Largest prefix of `view` ending in one of `u`'s own actions; empty when
    `u` performs no action in `alpha`."""
    v = view(system, u, alpha)
    for i in range(len(v) - 1, -1, -1):
        if v[i][0] == ACT:
            return v[: i + 1]
    return ()


def lpre(system: System, u: str, alpha: Iterable[str]) -> tuple[str, ...]:
    """Largest prefix of `alpha` ending in an action of `u`; empty if none."""
    ui, idxs = _indices(system, u, alpha)
    dom = system._dom
    alpha = tuple(system.actions[a] for a in idxs)
    for i in range(len(idxs) - 1, -1, -1):
        if dom[idxs[i]] == ui:
            return alpha[: i + 1]
    return ()


def ftview(system: System, u: str, alpha: Iterable[str]) -> tuple:
    """`u`'s view of the trace truncated at `u`'s last action, observation
    after that action included."""
    return view(system, u, lpre(system, u, alpha))


# ---------------------------------------------------------------------------
# Information trees
# ---------------------------------------------------------------------------


class InfoTree:
    """A hash-consed information term.

    A leaf carries a payload: EPSILON, ("o", token) for an initial
    observation, or ("v", view) for a transmitted view.  An interior node
    carries the observer's previous tree, the transmitted tree, and the action
    that did the transmitting.

    Trees built against the same system share structure: structurally equal
    trees are the same object, so `is` (or `==`, which is identity) decides
    equality in constant time.
    """

    __slots__ = ("left", "mid", "action", "payload")

    def __init__(self, left, mid, action, payload):
        self.left = left
        self.mid = mid
        self.action = action
        self.payload = payload

    @property
    def is_leaf(self) -> bool:
        return self.action is None

    def __repr__(self):
        if self.is_leaf:
            return f"Leaf({self.payload!r})"
        return f"Node({self.left!r}, {self.mid!r}, {self.action})"


def _leaf(system: System, payload) -> InfoTree:
    key = ("L", payload)
    table = system._trees
    node = table.get(key)
    if node is None:
        node = table[key] = InfoTree(None, None, None, payload)
    return node


def _node(system: System, left: InfoTree, mid: InfoTree, action: str) -> InfoTree:
    # Children are already consed, so identity keys give exact structural
    # sharing without deep comparisons.
    key = ("N", id(left), id(mid), action)
    table = system._trees
    node = table.get(key)
    if node is None:
        node = table[key] = InfoTree(left, mid, action, None)
    return node


def _eps_vector(system: System) -> tuple[InfoTree, ...]:
    e = _leaf(system, EPSILON)
    return (e,) * len(system.policy.domains)


def _obs_leaf_vector(system: System) -> tuple[InfoTree, ...]:
    s0 = system.state_index(system.initial)
    return tuple(_leaf(system, (OBS, t)) for t in system._obs[s0])


def ta(system: System, u: str, alpha: Iterable[str]) -> InfoTree:
    """Maximal information `u` may hold about past actions: every action of an
    interfering domain adds that domain's own maximal information at the time,
    plus the fact that the action happened."""
    ui, idxs = _indices(system, u, alpha)
    may, dom, names = system._may, system._dom, system.actions
    vec = list(_eps_vector(system))
    for a in idxs:
        d = dom[a]
        transmitted = vec[d]
        row = may[d]
        for v in range(len(vec)):
            if row[v]:
                vec[v] = _node(system, vec[v], transmitted, names[a])
    return vec[ui]


def to(system: System, u: str, alpha: Iterable[str]) -> InfoTree:
    """Like `ta`, but an action transmits only what its domain has actually
    observed so far: its view before the action."""
    profile = TraceProfile.start(system, needs=("views", "to"))
    for a in alpha:
        profile = profile.extend(a)
    return profile.to_vec[system.policy.index(u)]


def ito(system: System, u: str, alpha: Iterable[str]) -> InfoTree:
    """Like `to`, except an action of another domain also transmits the
    observation that domain makes immediately after the action."""
    profile = TraceProfile.start(system, needs=("views", "ito"))
    for a in alpha:
        profile = profile.extend(a)
    return profile.ito_vec[system.policy.index(u)]


# ---------------------------------------------------------------------------
# Order sensitivity
# ---------------------------------------------------------------------------


def swappable(system: System, u: str, alpha, i: int) -> bool:
    """Whether the adjacent actions at positions i, i+1 of `alpha` can be
    swapped without any domain that may observe both of them (directly or via
    `u` or via any later actor) being able to notice.

    Concretely: no domain in the image of both actors occurs among `u` and
    the domains acting from position i onward.
    """
    ui, idxs = _indices(system, u, alpha)
    if not 0 <= i < len(idxs) - 1:
        raise InputError(f"position {i} out of range for a trace of length {len(idxs)}")
    may, dom = system._may, system._dom
    da, db = dom[idxs[i]], dom[idxs[i + 1]]
    witnesses = {ui} | {dom[a] for a in idxs[i:]}
    return not any(may[da][w] and may[db][w] for w in witnesses)


# ---------------------------------------------------------------------------
# Incremental per-prefix profile (drives the enumeration oracles)
# ---------------------------------------------------------------------------

_NEED_KEYS = ("purge", "views", "tview", "ftview", "ta", "to", "ito")


class TraceProfile:
    """All per-domain trace semantics of one action prefix, extendable by one
    action in O(|D|).

    `needs` selects the tracked components; untracked ones stay None.  The
    incremental recurrences here mirror the definitional functions above and
    the two are cross-checked in the test suite.
    """

    __slots__ = (
        "system", "state", "trace",
        "purges", "views", "tviews", "ftviews",
        "ta_vec", "to_vec", "ito_vec",
    )

    def __init__(self, system, state, trace, purges, views, tviews, ftviews,
                 ta_vec, to_vec, ito_vec):
        self.system = system
        self.state = state
        self.trace = trace
        self.purges = purges
        self.views = views
        self.tviews = tviews
        self.ftviews = ftviews
        self.ta_vec = ta_vec
        self.to_vec = to_vec
        self.ito_vec = ito_vec

    @classmethod
    def start(cls, system: System, needs: Iterable[str] = _NEED_KEYS) -> "TraceProfile":
        system.require_valid()
        needs = frozenset(needs)
        unknown = needs - frozenset(_NEED_KEYS)
        if unknown:
            raise InputError(f"unknown profile components {sorted(unknown)}")
        if needs & {"views", "tview", "ftview", "to", "ito"}:
            needs = needs | {"views"}
        nd = len(system.policy.domains)
        s0 = system.state_index(system.initial)
        obs0 = system._obs[s0]
        return cls(
            system,
            s0,
            (),
            ((),) * nd if "purge" in needs else None,
            tuple(((OBS, t),) for t in obs0) if "views" in needs else None,
            ((),) * nd if "tview" in needs else None,
            tuple(((OBS, t),) for t in obs0) if "ftview" in needs else None,
            _eps_vector(system) if "ta" in needs else None,
            _obs_leaf_vector(system) if "to" in needs else None,
            _obs_leaf_vector(system) if "ito" in needs else None,
        )

    def extend(self, action: str) -> "TraceProfile":
        sys = self.system
        ai = sys.action_index(action)
        d = sys._dom[ai]
        row = sys._may[d]
        state = sys._step[self.state][ai]
        obs = sys._obs[state]
        nd = len(row)

        purges = self.purges
        if purges is not None:
            purges = tuple(
                purges[v] + (action,) if row[v] else purges[v] for v in range(nd)
            )

        old_views = self.views
        views = old_views
        if old_views is not None:
            new = []
            for v in range(nd):
                w = old_views[v]
                if v == d:
                    w = w + ((ACT, action),)
                new.append(_absorb(w, (OBS, obs[v])))
            views = tuple(new)

        tviews = self.tviews
        if tviews is not None:
            tviews = tuple(
                old_views[v] + ((ACT, action),) if v == d else tviews[v]
                for v in range(nd)
            )

        ftviews = self.ftviews
        if ftviews is not None:
            ftviews = tuple(
                views[v] if v == d else ftviews[v] for v in range(nd)
            )

        ta_vec = self.ta_vec
        if ta_vec is not None:
            transmitted = ta_vec[d]
            ta_vec = tuple(
                _node(sys, ta_vec[v], transmitted, action) if row[v] else ta_vec[v]
                for v in range(nd)
            )

        to_vec = self.to_vec
        if to_vec is not None:
            sent = _leaf(sys, ("v", old_views[d]))
            to_vec = tuple(
                _node(sys, to_vec[v], sent, action) if row[v] else to_vec[v]
                for v in range(nd)
            )

        ito_vec = self.ito_vec
        if ito_vec is not None:
            # The actor itself transmits its pre-action view; every other
            # permitted observer additionally receives the actor's fresh
            # post-action observation, i.e. the post-action view.
            sent_old = _leaf(sys, ("v", old_views[d]))
            sent_new = _leaf(sys, ("v", views[d]))
            ito_vec = tuple(
                _node(sys, ito_vec[v], sent_old if v == d else sent_new, action)
                if row[v]
                else ito_vec[v]
                for v in range(nd)
            )

        return TraceProfile(
            sys, state, self.trace + (action,),
            purges, views, tviews, ftviews, ta_vec, to_vec, ito_vec,
        )
