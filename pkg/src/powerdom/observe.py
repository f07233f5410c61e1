"""Observation engine: domination step plus propagation, with replayable traces.

Two models are provided.

``vertex``
    Observe ``S`` and its neighbors, then repeatedly let an observed vertex with
    exactly one unobserved neighbor observe it. Simple graphs only.
``edge``
    Rules over vertices *and* edges: ``S`` and every edge at ``S``
    start observed; a vertex on an observed edge is observed; an edge joining two
    observed vertices is observed; a vertex with ``k > 1`` incident edges of which
    ``k - 1`` are observed gets all ``k`` observed. Parallel edges count
    separately, so a doubled edge can block propagation.

Edge ids in the edge model index ``g.edge_list()``.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, Multigraph

MODELS = ("vertex", "edge")
CERT_FORMAT = "powerdom-certificate"
CERT_VERSION = 1


class TraceError(ValueError):
    """A trace or certificate does not replay on the given graph."""


@dataclass(frozen=True)
class Event:
    target: int
    rule: str
    witness: int | tuple[int, int]


@dataclass(frozen=True)
class Round:
    index: int
    vertices: tuple[Event, ...]
    edges: tuple[Event, ...] = ()


@dataclass(frozen=True)
class ObservationTrace:
    seed: tuple[int, ...]
    model: str
    propagation_only: bool
    rounds: tuple[Round, ...]
    observed: frozenset[int]
    observed_edges: frozenset[int] = frozenset()

    def covers(self, n: int) -> bool:
        return len(self.observed) == n

    def round_of(self) -> dict[int, int]:
        """Vertex -> round in which it became observed."""
        return {e.target: r.index for r in self.rounds for e in r.vertices}


def _check_seed(g: Multigraph, s: Iterable[int]) -> tuple[int, ...]:
    seed = tuple(sorted(set(s)))
    for v in seed:
        if not 0 <= v < g.n:
            raise GraphError(f"seed vertex {v} not in graph")
    return seed


def _check_model(g: Multigraph, model: str) -> None:
    if model not in MODELS:
        raise GraphError(f"unknown model {model!r}")
    if model == "vertex" and not g.is_simple:
        raise GraphError("vertex model refused on a multigraph; use model='edge'")


def default_model(g: Multigraph) -> str:
    return "vertex" if g.is_simple else "edge"


# ---------------------------------------------------------------------------
# vertex model


def _vertex_round0(g: Multigraph, seed: tuple[int, ...], propagation_only: bool) -> list[Event]:
    events = [Event(v, "seed", v) for v in seed]
    if not propagation_only:
        seen = set(seed)
        for v in g.vertices():
            if v in seen:
                continue
            dominators = [x for x in g.neighbors(v) if x in seen and x in seed]
            if dominators:
                events.append(Event(v, "dominate", dominators[0]))
        events.sort(key=lambda e: e.target)
    return events


def _vertex_forces(g: Multigraph, obs: set[int]) -> dict[int, int]:
    """All currently fireable forces: target -> lowest forcing vertex."""
    out: dict[int, int] = {}
    for x in sorted(obs):
        un = [y for y in g.neighbors(x) if y not in obs]
        if len(un) == 1 and un[0] not in out:
            out[un[0]] = x
    return out


def _vertex_closure(g, seed, propagation_only, rng) -> ObservationTrace:
    round0 = _vertex_round0(g, seed, propagation_only)
    obs = {e.target for e in round0}
    rounds = [Round(0, tuple(round0))]
    while True:
        forces = _vertex_forces(g, obs)
        if not forces:
            break
        if rng is None:
            batch = [Event(t, "force", w) for t, w in sorted(forces.items())]
        else:
            # asynchronous schedule: one random fireable event per round
            t = rng.choice(sorted(forces))
            cands = [x for x in sorted(obs) if [y for y in g.neighbors(x) if y not in obs] == [t]]
            batch = [Event(t, "force", rng.choice(cands))]
        obs.update(e.target for e in batch)
        rounds.append(Round(len(rounds), tuple(batch)))
    model = "vertex"
    return ObservationTrace(seed, model, propagation_only, tuple(rounds), frozenset(obs))


# ---------------------------------------------------------------------------
# edge model


@dataclass
class _EdgeState:
    ends: list[tuple[int, int]]
    incident: list[list[int]]
    obs_v: set[int] = field(default_factory=set)
    obs_e: set[int] = field(default_factory=set)

    @classmethod
    def of(cls, g: Multigraph) -> _EdgeState:
        ends = g.edge_list()
        incident: list[list[int]] = [[] for _ in g.vertices()]
        for i, (u, v) in enumerate(ends):
            incident[u].append(i)
            incident[v].append(i)
        return cls(ends, incident)

    def fireable(self) -> tuple[dict[int, int], dict[int, tuple[str, int | tuple[int, int]]]]:
        """Currently fireable vertex and edge events (lowest witness each)."""
        vert: dict[int, int] = {}
        for e in sorted(self.obs_e):
            for x in self.ends[e]:
                if x not in self.obs_v and x not in vert:
                    vert[x] = e
        edge: dict[int, tuple[str, int | tuple[int, int]]] = {}
        for e, (a, b) in enumerate(self.ends):
            if e not in self.obs_e and a in self.obs_v and b in self.obs_v:
                edge[e] = ("join", (a, b))
        for x, inc in enumerate(self.incident):
            if len(inc) > 1:
                missing = [e for e in inc if e not in self.obs_e]
                if len(missing) == 1 and missing[0] not in edge:
                    edge[missing[0]] = ("count", x)
        return vert, edge


def _edge_round0(g: Multigraph, st: _EdgeState, seed: tuple[int, ...]) -> Round:
    seedset = set(seed)
    e_events = []
    for e, (a, b) in enumerate(st.ends):
        if a in seedset or b in seedset:
            e_events.append(Event(e, "seed", a if a in seedset else b))
    v_events = [Event(v, "seed", v) for v in seed]
    for v in g.vertices():
        if v not in seedset:
            dom = [x for x in g.neighbors(v) if x in seedset]
            if dom:
                v_events.append(Event(v, "dominate", dom[0]))
    v_events.sort(key=lambda e: e.target)
    return Round(0, tuple(v_events), tuple(e_events))


def _edge_closure(g, seed, rng) -> ObservationTrace:
    st = _EdgeState.of(g)
    r0 = _edge_round0(g, st, seed)
    st.obs_v = {e.target for e in r0.vertices}
    st.obs_e = {e.target for e in r0.edges}
    rounds = [r0]
    while True:
        vert, edge = st.fireable()
        if not vert and not edge:
            break
        if rng is None:
            v_batch = [Event(v, "incident", w) for v, w in sorted(vert.items())]
            e_batch = [Event(e, rule, w) for e, (rule, w) in sorted(edge.items())]
        else:
            options = [("v", k) for k in sorted(vert)] + [("e", k) for k in sorted(edge)]
            kind, k = rng.choice(options)
            v_batch = [Event(k, "incident", vert[k])] if kind == "v" else []
            e_batch = [Event(k, *edge[k])] if kind == "e" else []
        st.obs_v.update(e.target for e in v_batch)
        st.obs_e.update(e.target for e in e_batch)
        rounds.append(Round(len(rounds), tuple(v_batch), tuple(e_batch)))
    return ObservationTrace(seed, "edge", False, tuple(rounds), frozenset(st.obs_v), frozenset(st.obs_e))


# ---------------------------------------------------------------------------
# public closures


def power_dominating_closure(g: Multigraph, s: Iterable[int], model: str = "vertex",
                             rng: random.Random | None = None) -> ObservationTrace:
    """Domination step followed by propagation to the fixed point.

    Without ``rng`` every fireable event fires in synchronized rounds; with ``rng``
    one randomly chosen event fires per round (the fixed point is the same).
    """
    _check_model(g, model)
    seed = _check_seed(g, s)
    if model == "vertex":
        return _vertex_closure(g, seed, False, rng)
    return _edge_closure(g, seed, rng)


def zero_forcing_closure(g: Multigraph, s: Iterable[int],
                         rng: random.Random | None = None) -> ObservationTrace:
    """Propagation only, starting from exactly ``s``."""
    if not g.is_simple:
        raise GraphError("zero forcing is defined here for simple graphs only")
    return _vertex_closure(g, _check_seed(g, s), True, rng)


# ---------------------------------------------------------------------------
# replay


def replay(g: Multigraph, trace: ObservationTrace) -> frozenset[int]:
    """Re-check every recorded event against the rules; return the observed vertices.

    Raises :class:`TraceError` on the first event whose rule did not hold at fire time.
    """
    _check_model(g, trace.model)
    seed = _check_seed(g, trace.seed)
    if not trace.rounds or trace.rounds[0].index != 0:
        raise TraceError("trace has no round 0")
    if trace.model == "vertex":
        expected = _vertex_round0(g, seed, trace.propagation_only)
        if {e.target for e in trace.rounds[0].vertices} != {e.target for e in expected}:
            raise TraceError("round 0 is not the domination step of the seed set")
        obs = {e.target for e in expected}
        for r in trace.rounds[1:]:
            if r.edges:
                raise TraceError("vertex-model trace carries edge events")
            for ev in r.vertices:
                x, t = ev.witness, ev.target
                if ev.rule != "force" or not isinstance(x, int) or x not in obs or t in obs:
                    raise TraceError(f"round {r.index}: invalid event {ev}")
                if [y for y in g.neighbors(x) if y not in obs] != [t]:
                    raise TraceError(f"round {r.index}: {x} does not force {t}")
            obs.update(ev.target for ev in r.vertices)
        return frozenset(obs)

    st = _EdgeState.of(g)
    expected0 = _edge_round0(g, st, seed)
    r0 = trace.rounds[0]
    if ({e.target for e in r0.vertices} != {e.target for e in expected0.vertices}
            or {e.target for e in r0.edges} != {e.target for e in expected0.edges}):
        raise TraceError("round 0 is not the domination step of the seed set")
    st.obs_v = {e.target for e in expected0.vertices}
    st.obs_e = {e.target for e in expected0.edges}
    for r in trace.rounds[1:]:
        for ev in r.vertices:
            e = ev.witness
            if (ev.rule != "incident" or not isinstance(e, int) or not 0 <= e < len(st.ends)
                    or e not in st.obs_e or ev.target not in st.ends[e] or ev.target in st.obs_v):
                raise TraceError(f"round {r.index}: invalid vertex event {ev}")
        for ev in r.edges:
            e = ev.target
            if not 0 <= e < len(st.ends) or e in st.obs_e:
                raise TraceError(f"round {r.index}: invalid edge event {ev}")
            a, b = st.ends[e]
            if ev.rule == "join":
                ok = a in st.obs_v and b in st.obs_v
            elif ev.rule == "count":
                x = ev.witness
                ok = (isinstance(x, int) and x in (a, b) and len(st.incident[x]) > 1
                      and [f for f in st.incident[x] if f not in st.obs_e] == [e])
            else:
                ok = False
            if not ok:
                raise TraceError(f"round {r.index}: invalid edge event {ev}")
        st.obs_v.update(ev.target for ev in r.vertices)
        st.obs_e.update(ev.target for ev in r.edges)
    return frozenset(st.obs_v)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class PdsCertificate:
    seed: tuple[int, ...]
    bound: Fraction
    trace: ObservationTrace
    fingerprint: dict
    log: object = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.seed)

    def to_json(self) -> dict:
        t = self.trace
        return {
            "format": CERT_FORMAT,
            "version": CERT_VERSION,
            "graph": dict(self.fingerprint),
            "model": t.model,
            "S": list(self.seed),
            "bound": str(self.bound),
            "rounds": [
                {
                    "round": r.index,
                    "vertices": [[e.target, e.rule, _wit(e.witness)] for e in r.vertices],
                    "edges": [[e.target, e.rule, _wit(e.witness)] for e in r.edges],
                }
                for r in t.rounds
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> PdsCertificate:
        try:
            if doc.get("format") != CERT_FORMAT or doc.get("version") != CERT_VERSION:
                raise TraceError("not a version-1 powerdom certificate")
            seed = tuple(int(v) for v in doc["S"])
            rounds = tuple(
                Round(
                    int(r["round"]),
                    tuple(Event(int(t), str(rule), _unwit(w)) for t, rule, w in r["vertices"]),
                    tuple(Event(int(t), str(rule), _unwit(w)) for t, rule, w in r.get("edges", [])),
                )
                for r in doc["rounds"]
            )
            observed = frozenset(e.target for r in rounds for e in r.vertices)
            observed_e = frozenset(e.target for r in rounds for e in r.edges)
            trace = ObservationTrace(seed, str(doc["model"]), False, rounds, observed, observed_e)
            return cls(seed, Fraction(doc["bound"]), trace, dict(doc["graph"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TraceError):
                raise
            raise TraceError(f"malformed certificate: {exc}") from None


def _wit(w):
    return list(w) if isinstance(w, tuple) else w


def _unwit(w):
    return tuple(int(x) for x in w) if isinstance(w, list) else int(w)


def make_certificate(g: Multigraph, s: Iterable[int], model: str | None = None,
                     bound: Fraction | int | None = None) -> PdsCertificate:
    model = model or default_model(g)
    trace = power_dominating_closure(g, s, model)
    b = Fraction(len(trace.seed)) if bound is None else Fraction(bound)
    return PdsCertificate(trace.seed, b, trace, g.fingerprint())


def is_power_dominating(g: Multigraph, s: Iterable[int],
                        model: str | None = None) -> tuple[bool, PdsCertificate | None]:
    cert = make_certificate(g, s, model)
    if cert.trace.covers(g.n):
        return True, cert
    return False, None


def verify_certificate(cert: PdsCertificate, g: Multigraph) -> tuple[bool, str]:
    """Replay ``cert`` on ``g``; returns ``(ok, reason)``."""
    if cert.fingerprint != g.fingerprint():
        return False, "graph fingerprint mismatch"
    if len(cert.seed) > cert.bound:
        return False, f"|S| = {len(cert.seed)} exceeds claimed bound {cert.bound}"
    if cert.trace.seed != tuple(sorted(set(cert.seed))):
        return False, "trace seed differs from S"
    try:
        observed = replay(g, cert.trace)
    except (TraceError, GraphError) as exc:
        return False, str(exc)
    if len(observed) != g.n:
        return False, f"trace observes {len(observed)} of {g.n} vertices"
    return True, "ok"


# ---------------------------------------------------------------------------
# fast bit-mask closures for exhaustive search


def propagate_mask(g: Multigraph, obs: int) -> int:
    """Vertex-model propagation from the observed mask ``obs``; returns the final mask."""
    nbr = g.neighbor_masks
    cand = obs
    while cand:
        new = 0
        x = cand
        while x:
            low = x & -x
            x ^= low
            un = nbr[low.bit_length() - 1] & ~obs
            if un and not un & (un - 1):
                new |= un
        if not new:
            break
        obs |= new
        spread = new
        y = new
        while y:
            low = y & -y
            y ^= low
            spread |= nbr[low.bit_length() - 1]
        cand = spread & obs
    return obs


def dominated_mask(g: Multigraph, seed_mask: int) -> int:
    closed = g.closed_masks
    out = 0
    x = seed_mask
    while x:
        low = x & -x
        x ^= low
        out |= closed[low.bit_length() - 1]
    return out


def edge_model_mask(g: Multigraph, seed: Iterable[int]) -> int:
    """Edge-model closure; returns the observed-vertex mask."""
    st = _EdgeState.of(g)
    seedset = set(seed)
    st.obs_e = {e for e, (a, b) in enumerate(st.ends) if a in seedset or b in seedset}
    st.obs_v = set(seedset) | {x for e in st.obs_e for x in st.ends[e]}
    changed = True
    while changed:
        changed = False
        for e, (a, b) in enumerate(st.ends):
            if e not in st.obs_e and a in st.obs_v and b in st.obs_v:
                st.obs_e.add(e)
                changed = True
        for x, inc in enumerate(st.incident):
            if len(inc) > 1:
                missing = [e for e in inc if e not in st.obs_e]
                if len(missing) == 1:
                    e = missing[0]
                    st.obs_e.add(e)
                    st.obs_v.update(st.ends[e])
                    changed = True
    return sum(1 << v for v in st.obs_v)


def observed_mask(g: Multigraph, seed: Iterable[int], model: str = "vertex") -> int:
    seed = list(seed)
    if model == "edge":
        return edge_model_mask(g, seed)
    _check_model(g, model)
    return propagate_mask(g, dominated_mask(g, sum(1 << v for v in seed)))
