"""Maximum induced density over n-vertex hosts: exact for small n, local
search for larger n.

Exact mode enumerates one host per isomorphism class (vertex augmentation
deduplicated by canonical code, which is exact) and takes the maximum
density, breaking ties by smallest canonical code so outputs are stable.

The local search is simulated annealing over single edge flips with
geometric cooling.  Density is maintained incrementally (a flip only
affects subsets containing both endpoints) and every run is resumable
bit-exactly from a versioned JSON checkpoint; a checkpoint whose stored
density disagrees with a recount is rejected rather than silently
restarted.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .density import induced_density
from .errors import CheckpointError, InputError, UnsupportedSizeError
from .graphs import Graph, _induced_rows, canonical_key, parse_graph6, to_graph6

ENUM_LIMIT = 9

LOCAL_SEARCH_LIMIT = 40

CHECKPOINT_VERSION = 1

T0 = 0.05
COOLING = 0.995
RESTART_AFTER = 100_000


@dataclass(frozen=True)
class IndResult:
    value: Fraction
    witness: Graph
    mode: str  # "exact" or "lower_bound"


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph.empty(0),)
    seen: dict[bytes, Graph] = {}
    for g in _classes(n - 1):
        for mask in range(1 << (n - 1)):
            rows = [row | (((mask >> v) & 1) << (n - 1)) for v, row in enumerate(g.adj)]
            rows.append(mask)
            child = Graph(n, tuple(rows))
            key = canonical_key(child)
            if key not in seen:
                seen[key] = child
    return tuple(seen[k] for k in sorted(seen))


def enumerate_graphs(n: int):
    """One representative per isomorphism class, in canonical-code order."""
    if n > ENUM_LIMIT:
        raise UnsupportedSizeError(f"enumerate_graphs supports n <= {ENUM_LIMIT}, got {n}")
    if n < 0:
        raise InputError("n must be nonnegative")
    yield from _classes(n)


def ind_exact(h: Graph, n: int) -> IndResult:
    """Maximum induced density of h over all n-vertex hosts, with witness."""
    if h.n > n:
        raise InputError(f"pattern has {h.n} vertices but n = {n}")
    if n > ENUM_LIMIT:
        raise UnsupportedSizeError(f"ind_exact supports n <= {ENUM_LIMIT}, got {n}")
    k = h.n
    total = math.comb(n, k)
    target_key = canonical_key(h)
    target_degs = sorted(h.degrees())
    best_copies = -1
    best_key: bytes | None = None
    best_graph: Graph | None = None
    for g in _classes(n):
        adj = g.adj
        copies = 0
        for verts in combinations(range(n), k):
            rows = _induced_rows(adj, verts)
            if sorted(r.bit_count() for r in rows) != target_degs:
                continue
            if canonical_key(Graph(k, rows)) == target_key:
                copies += 1
        if copies > best_copies:
            best_copies, best_key, best_graph = copies, canonical_key(g), g
        elif copies == best_copies:
            key = canonical_key(g)
            if best_key is None or key < best_key:
                best_key, best_graph = key, g
    assert best_graph is not None
    return IndResult(value=Fraction(best_copies, total), witness=best_graph, mode="exact")


# -- local search ----------------------------------------------------------


def _count_exact(h: Graph, g: Graph) -> int:
    target_key = canonical_key(h)
    copies = 0
    for verts in combinations(range(g.n), h.n):
        if canonical_key(Graph(h.n, _induced_rows(g.adj, verts))) == target_key:
            copies += 1
    return copies


def _flip_delta(adj: list[int], n: int, k: int, u: int, v: int, target_key: bytes) -> int:
    """Change in copy count caused by flipping edge (u, v).

    Only subsets containing both endpoints are affected; each is classified
    before and after the flip.
    """
    others = [w for w in range(n) if w != u and w != v]
    delta = 0
    for rest in combinations(others, k - 2):
        verts = tuple(sorted(rest + (u, v)))
        rows = list(_induced_rows(adj, verts))
        iu = verts.index(u)
        iv = verts.index(v)
        was = canonical_key(Graph(k, tuple(rows))) == target_key
        rows[iu] ^= 1 << iv
        rows[iv] ^= 1 << iu
        now = canonical_key(Graph(k, tuple(rows))) == target_key
        delta += int(now) - int(was)
    return delta


def _rng_state_to_json(state) -> list:
    version, internal, gauss = state
    return [version, list(internal), None if gauss is None else float.hex(gauss)]


def _rng_state_from_json(blob) -> tuple:
    version, internal, gauss = blob
    return (version, tuple(internal), None if gauss is None else float.fromhex(gauss))


@dataclass
class _SearchState:
    h: Graph
    n: int
    iteration: int
    temperature: float
    rng: random.Random
    current: list[int]
    current_copies: int
    best_adj: tuple[int, ...]
    best_copies: int
    since_improve: int


def _seed_graph(rng: random.Random, n: int) -> list[int]:
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.getrandbits(1):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return rows


def save_checkpoint(path: str | Path, state: _SearchState) -> None:
    total = math.comb(state.n, state.h.n)
    doc = {
        "version": CHECKPOINT_VERSION,
        "h_code": to_graph6(state.h),
        "n": state.n,
        "iteration": state.iteration,
        "temperature": float.hex(state.temperature),
        "rng_state": _rng_state_to_json(state.rng.getstate()),
        "current_graph": to_graph6(Graph(state.n, tuple(state.current))),
        "best_graph": to_graph6(Graph(state.n, state.best_adj)),
        "best_density": f"{state.best_copies}/{total}",
        "since_improve": state.since_improve,
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="ascii")


def load_checkpoint(path: str | Path, h: Graph, n: int) -> _SearchState:
    try:
        doc = json.loads(Path(path).read_text(encoding="ascii"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from None
    if doc.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {doc.get('version')!r}")
    try:
        stored_h = parse_graph6(doc["h_code"])
        current = parse_graph6(doc["current_graph"])
        best = parse_graph6(doc["best_graph"])
        iteration = int(doc["iteration"])
        temperature = float.fromhex(doc["temperature"])
        rng_blob = doc["rng_state"]
        density_str = doc["best_density"]
        since_improve = int(doc["since_improve"])
        stored_n = int(doc["n"])
    except KeyError as exc:
        raise CheckpointError(f"checkpoint missing field {exc}") from None
    if stored_h != h or stored_n != n:
        raise CheckpointError("checkpoint was produced for different inputs")
    num, den = density_str.split("/")
    stored = Fraction(int(num), int(den))
    recount = induced_density(h, best).density
    if recount != stored:
        raise CheckpointError(
            f"stored best density {stored} disagrees with recount {recount};"
            " refusing to resume from a stale witness"
        )
    rng = random.Random()
    rng.setstate(_rng_state_from_json(rng_blob))
    return _SearchState(
        h=h,
        n=n,
        iteration=iteration,
        temperature=temperature,
        rng=rng,
        current=list(current.adj),
        current_copies=_count_exact(h, current),
        best_adj=best.adj,
        best_copies=int(recount * math.comb(n, h.n)),
        since_improve=since_improve,
    )


def ind_local_search(
    h: Graph,
    n: int,
    iters: int,
    seed: int,
    checkpoint: str | Path | None = None,
    checkpoint_every: int = 0,
) -> IndResult:
    """Simulated-annealing lower bound on the maximum induced density.

    Deterministic per seed; if `checkpoint` names an existing file the run
    resumes from it bit-exactly, otherwise the file is written at the end
    (and every `checkpoint_every` iterations when that is positive).
    """
    if h.n > n:
        raise InputError(f"pattern has {h.n} vertices but n = {n}")
    if n > LOCAL_SEARCH_LIMIT:
        raise UnsupportedSizeError(
            f"ind_local_search supports n <= {LOCAL_SEARCH_LIMIT}, got {n}"
        )
    k = h.n
    target_key = canonical_key(h)

    if checkpoint is not None and Path(checkpoint).exists():
        st = load_checkpoint(checkpoint, h, n)
    else:
        rng = random.Random(seed)
        current = _seed_graph(rng, n)
        copies = _count_exact(h, Graph(n, tuple(current)))
        st = _SearchState(
            h=h,
            n=n,
            iteration=0,
            temperature=T0,
            rng=rng,
            current=current,
            current_copies=copies,
            best_adj=tuple(current),
            best_copies=copies,
            since_improve=0,
        )

    total = math.comb(n, k)
    while st.iteration < iters:
        u = st.rng.randrange(n)
        v = st.rng.randrange(n)
        while v == u:
            v = st.rng.randrange(n)
        if u > v:
            u, v = v, u
        delta = _flip_delta(st.current, n, k, u, v, target_key)
        accept = delta >= 0
        if not accept:
            prob = math.exp((delta / total) / st.temperature)
            accept = st.rng.random() < prob
        if accept:
            st.current[u] ^= 1 << v
            st.current[v] ^= 1 << u
            st.current_copies += delta
        if st.current_copies > st.best_copies:
            st.best_copies = st.current_copies
            st.best_adj = tuple(st.current)
            st.since_improve = 0
        else:
            st.since_improve += 1
        if st.since_improve >= RESTART_AFTER:
            st.temperature = T0
            st.current = list(st.best_adj)
            st.current_copies = st.best_copies
            st.since_improve = 0
        else:
            st.temperature *= COOLING
        st.iteration += 1
        if checkpoint is not None and checkpoint_every and st.iteration % checkpoint_every == 0:
            save_checkpoint(checkpoint, st)

    if checkpoint is not None:
        save_checkpoint(checkpoint, st)
    witness = Graph(n, st.best_adj)
    value = induced_density(h, witness).density
    if value != Fraction(st.best_copies, total):
        raise AssertionError("incremental copy count drifted; implementation bug")
    return IndResult(value=value, witness=witness, mode="lower_bound")
