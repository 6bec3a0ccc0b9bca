"""Instance generators: exhaustive catalogs and seeded random families.

A seed fully determines every random instance.  Posets are enumerated up to
isomorphism by orienting each unordered point pair three ways and filtering
transitivity; random posets keep each forward edge of a shuffled linear
order with a seed-driven coin and close transitively.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .caps import Caps, DEFAULT_CAPS
from .errors import SchemaError
from .frith import FrithFrame
from .lattice import (
    FiniteFrame,
    Poset,
    Sublattice,
    frame_from_poset,
    poset_canonical_key,
)
from .pervin import PervinSpace
from .entourage import filter_from_sublattice


@lru_cache(maxsize=None)
def posets_upto_iso(n: int):
    """All posets on n points, one per isomorphism class."""
    if n == 0:
        return (Poset(0, ()),)
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for orientation in itertools.product((0, 1, 2), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), o in zip(pairs, orientation):
            if o == 1:
                up[i] |= 1 << j
            elif o == 2:
                up[j] |= 1 << i
        ok = True
        for i in range(n):
            probe = up[i]
            acc = probe
            while probe:
                low = probe & -probe
                acc |= up[low.bit_length() - 1]
                probe ^= low
            if acc != up[i]:
                ok = False
                break
        if not ok:
            continue
        p = Poset(n, up)
        key = poset_canonical_key(p)
        if key not in seen:
            seen[key] = p
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def frame_catalog(max_ji: int = 3) -> tuple[FiniteFrame, ...]:
    """Frames of every poset with at most max_ji points, up to iso."""
    out = []
    for n in range(max_ji + 1):
        for p in posets_upto_iso(n):
            out.append(frame_from_poset(p))
    return tuple(out)


@lru_cache(maxsize=None)
def small_frame_catalog(max_elements: int = 6, max_ji: int = 5) -> tuple[FiniteFrame, ...]:
    """Frames with at most max_elements elements (needs posets up to max_ji)."""
    out = []
    for n in range(max_ji + 1):
        for p in posets_upto_iso(n):
            frame = frame_from_poset(p)
            if frame.n <= max_elements:
                out.append(frame)
    return tuple(out)


@lru_cache(maxsize=None)
def frith_catalog(max_elements: int = 6) -> tuple[FrithFrame, ...]:
    return tuple(FrithFrame.whole(f) for f in small_frame_catalog(max_elements))


@lru_cache(maxsize=None)
def pervin_catalog(max_points: int = 3) -> tuple[PervinSpace, ...]:
    """Every Pervin space on universes of at most max_points points."""
    out = []
    for n in range(max_points + 1):
        points = tuple(f"x{i}" for i in range(n))
        full = (1 << n) - 1
        mids = [m for m in range(full + 1) if m not in (0, full)]
        for k in range(len(mids) + 1):
            for combo in itertools.combinations(mids, k):
                family = set(combo) | {0, full}
                if all((a | b) in family and (a & b) in family for a in family for b in family):
                    out.append(PervinSpace(points, family))
    return tuple(out)


def sublattices_of(frame: FiniteFrame) -> tuple[Sublattice, ...]:
    """Every bounded sublattice (subsets of the middle closed under both ops)."""
    middle = [a for a in range(frame.n) if a not in (frame.zero, frame.one)]
    out = []
    for k in range(len(middle) + 1):
        for combo in itertools.combinations(middle, k):
            members = set(combo) | {frame.zero, frame.one}
            if all(
                frame.meet(a, b) in members and frame.join(a, b) in members
                for a in members
                for b in members
            ):
                out.append(Sublattice(frame, members))
    return tuple(out)


def rand_poset(rng: random.Random, n: int, edge_bias: float = 0.4) -> Poset:
    """Random order: shuffled linear order, coin-kept forward edges, closure."""
    order = list(range(n))
    rng.shuffle(order)
    up = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_bias:
                up[order[i]] |= 1 << order[j]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            probe = up[i]
            while probe:
                low = probe & -probe
                acc |= up[low.bit_length() - 1]
                probe ^= low
            if acc != up[i]:
                up[i] = acc
                changed = True
    return Poset(n, up)


def rand_components_poset(rng: random.Random, parts: int, max_part: int = 3) -> Poset:
    """Disjoint union of small random components; the component unions are
    exactly the complemented down-sets, so these frames are complement-rich."""
    blocks = [rand_poset(rng, rng.randint(1, max_part)) for _ in range(parts)]
    total = sum(b.n for b in blocks)
    up = []
    shift = 0
    names = []
    for b in blocks:
        up.extend(m << shift for m in b.up)
        names.extend(f"j{shift + i}" for i in range(b.n))
        shift += b.n
    return Poset(total, up, names)


def rand_frame(rng: random.Random, max_ji: int = 5, caps: Caps = DEFAULT_CAPS) -> FiniteFrame:
    return frame_from_poset(rand_poset(rng, rng.randint(1, max_ji)), caps)


def rand_pervin(rng: random.Random, n: int, seeds: int = 3) -> PervinSpace:
    full = (1 << n) - 1
    family = {0, full}
    for _ in range(seeds):
        family.add(rng.randrange(full + 1))
    frontier = list(family)
    while frontier:
        a = frontier.pop()
        for b in list(family):
            for c in (a | b, a & b):
                if c not in family:
                    family.add(c)
                    frontier.append(c)
    return PervinSpace(tuple(f"x{i}" for i in range(n)), family)


def rand_complemented_sublattice(rng: random.Random, frame: FiniteFrame, picks: int = 3) -> Sublattice:
    pool = list(frame.complemented_elements())
    chosen = {frame.zero, frame.one}
    for _ in range(min(picks, len(pool))):
        chosen.add(rng.choice(pool))
    members = set(chosen)
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            for c in (frame.meet(a, b), frame.join(a, b)):
                if c not in members:
                    members.add(c)
                    frontier.append(c)
    return Sublattice(frame, members)


def rand_quni(rng: random.Random, caps: Caps = DEFAULT_CAPS):
    """A transitive totally bounded filter on a complement-rich frame.

    Returns (frame, generating sublattice, quasi-uniformity); the frame is
    regenerated until the filter generates it (the QU generation condition),
    which holds when the picks cover every component.
    """
    for _ in range(64):
        poset = rand_components_poset(rng, rng.randint(2, 3), 2)
        if poset.n > 5:
            continue
        frame = frame_from_poset(poset, caps)
        sub = rand_complemented_sublattice(rng, frame, picks=rng.randint(1, 3))
        try:
            q = filter_from_sublattice(frame, sub.members)
        except Exception:
            continue
        return frame, sub, q
    raise SchemaError("rand_quni", "could not generate a valid filter")


def generate(kind: str, seed: int, count: int = 1, params: dict | None = None,
             caps: Caps = DEFAULT_CAPS):
    """Deterministic seeded instances of the given kind, or exhaustive
    catalogs when params says so."""
    params = params or {}
    rng = random.Random(seed)
    if params.get("exhaustive"):
        if kind == "frame":
            return list(frame_catalog(int(params.get("max_ji", 3))))
        if kind == "pervin":
            return list(pervin_catalog(int(params.get("max_universe", 3))))
        if kind == "frith":
            return list(frith_catalog(int(params.get("max_elements", 6))))
        raise SchemaError("gen", f"no exhaustive enumerator for kind {kind!r}")
    out = []
    for _ in range(count):
        if kind == "poset":
            p = rand_poset(rng, int(params.get("max_ji", 4)))
            out.append(frame_from_poset(p, caps))
        elif kind == "frame":
            out.append(rand_frame(rng, int(params.get("max_ji", 5)), caps))
        elif kind == "pervin":
            out.append(rand_pervin(rng, int(params.get("max_universe", 4))))
        elif kind == "frith":
            out.append(FrithFrame.whole(rand_frame(rng, int(params.get("max_ji", 4)), caps)))
        elif kind == "quni":
            out.append(rand_quni(rng, caps)[2])
        else:
            raise SchemaError("gen", f"unknown kind {kind!r}")
    return out
