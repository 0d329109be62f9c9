"""Separator-edge testing and separability recognition for rotation
systems of complete graphs.

An edge is a separator edge when it can be closed to a simple curve
meeting every other edge at most once.  On the rotation-system level
this is equivalent to: the edge is uncrossed, or it can be flipped
(repositioned across a common swept vertex set in the two endpoint
rotations, staying realizable) so that old and new edge cross disjoint
edge sets.  Candidate repositionings come from a linear parity scan of
the two endpoint rotations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .rotation import (
    RealizabilityTables,
    RotationSystem,
    crossings_of_edge,
    edge_key,
    is_realizable_touching,
)


@dataclass(frozen=True)
class FlipCandidate:
    """A repositioning emitted by the parity scan (realizability not yet
    checked).  ``swept`` is the vertex set the edge moves across, as seen
    from the scan direction that produced it."""

    edge: tuple[int, int]
    swept: frozenset[int]
    new_rs: RotationSystem


@dataclass(frozen=True)
class Flip:
    """A validated flip: ``new_rs`` is realizable and the flipped edge
    crosses an edge set disjoint from the original's."""

    edge: tuple[int, int]
    swept: frozenset[int]
    new_rs: RotationSystem


@dataclass(frozen=True)
class SeparatorEvidence:
    """Why one edge is a separator edge: uncrossed, or via a flip."""

    edge: tuple[int, int]
    uncrossed: bool
    flip: Flip | None


@dataclass(frozen=True)
class SeparatorCertificate:
    """Per-edge evidence for all certified edges."""

    entries: tuple[SeparatorEvidence, ...]

    def evidence_for(self, e):
        e = edge_key(*e)
        for ev in self.entries:
            if ev.edge == e:
                return ev
        return None


@dataclass(frozen=True)
class SeparabilityResult:
    separable: bool
    certificate: SeparatorCertificate
    failed_edge: tuple[int, int] | None


def _reposition(rs: RotationSystem, v: int, w: int, t: int) -> RotationSystem:
    """Move w forward by t slots in the ccw rotation of v, and v forward
    by t slots in the cw rotation of w."""
    n = rs.n
    ccw_v = list(reversed(rs.rows[v - 1]))
    j = ccw_v.index(w)
    del ccw_v[j]
    ccw_v.insert((j + t) % (n - 2), w)
    cw_w = list(rs.rows[w - 1])
    j = cw_w.index(v)
    del cw_w[j]
    cw_w.insert((j + t) % (n - 2), v)
    rows = list(rs.rows)
    rows[v - 1] = tuple(reversed(ccw_v))
    rows[w - 1] = tuple(cw_w)
    return RotationSystem(n, rows)


def _scan(rs: RotationSystem, v: int, w: int):
    """Parity scan along the ccw rotation of v and the cw rotation of w,
    both starting right after the other endpoint.  Emits (t, swept) at
    every return of the odd-parity counter to zero."""
    n = rs.n
    row_v = rs.rows[v - 1]
    row_w = rs.rows[w - 1]
    iv = row_v.index(w)
    iw = row_w.index(v)
    # ccw successor of position i in a cw-stored row is position i-1
    a_seq = [row_v[(iv - 1 - k) % (n - 1)] for k in range(n - 2)]
    b_seq = [row_w[(iw + 1 + k) % (n - 1)] for k in range(n - 2)]
    odd: set[int] = set()
    out = []
    for t in range(1, n - 1):
        for x in (a_seq[t - 1], b_seq[t - 1]):
            if x in odd:
                odd.discard(x)
            else:
                odd.add(x)
        if not odd:
            out.append((t, frozenset(a_seq[:t])))
    return out


def flip_candidates(rs: RotationSystem, e) -> list[FlipCandidate]:
    """All candidate repositionings of ``e`` found by the parity scan run
    from both endpoints, ordered nearest-first.

    The full sweep across all other vertices leaves the rotation system
    unchanged (the edge is redrawn around the back); it is reported only
    when no proper repositioning exists, where it is the candidate that
    certifies uncrossed edges.
    """
    v, w = edge_key(*e)
    if rs.n < 3:
        return []
    found = []
    for t, swept in _scan(rs, v, w):
        found.append((t, 0, swept, v, w))
    for t, swept in _scan(rs, w, v):
        found.append((t, 1, swept, w, v))
    found.sort(key=lambda c: (c[0], c[1]))
    full = frozenset(x for x in range(1, rs.n + 1) if x not in (v, w))
    proper = [c for c in found if c[2] != full]
    chosen = proper if proper else found[:1]
    out = []
    for t, _, swept, a, b in chosen:
        out.append(
            FlipCandidate(
                edge=(v, w), swept=swept, new_rs=_reposition(rs, a, b, t)
            )
        )
    return out


def valid_flips(
    tables: RealizabilityTables, rs: RotationSystem, e
) -> list[Flip]:
    """Candidates filtered by realizability of the flipped system and by
    disjointness of the old and new crossing sets of ``e``.  Descriptions
    of the same repositioning are merged (smallest swept set reported)."""
    e = edge_key(*e)
    old_cross = crossings_of_edge(tables, rs, e)
    out: list[Flip] = []
    seen_systems = []
    for cand in flip_candidates(rs, e):
        if any(cand.new_rs == s for s in seen_systems):
            continue
        if not is_realizable_touching(tables, cand.new_rs, e):
            continue
        new_cross = crossings_of_edge(tables, cand.new_rs, e)
        if old_cross & new_cross:
            continue
        seen_systems.append(cand.new_rs)
        out.append(Flip(edge=e, swept=cand.swept, new_rs=cand.new_rs))
    return out


def is_separator_edge(
    tables: RealizabilityTables, rs: RotationSystem, e
) -> SeparatorEvidence | None:
    """Evidence that ``e`` is a separator edge, or None.

    Uncrossed edges short-circuit; otherwise the first valid flip in scan
    order wins.
    """
    e = edge_key(*e)
    if not crossings_of_edge(tables, rs, e):
        return SeparatorEvidence(edge=e, uncrossed=True, flip=None)
    old_cross = crossings_of_edge(tables, rs, e)
    for cand in flip_candidates(rs, e):
        if not is_realizable_touching(tables, cand.new_rs, e):
            continue
        new_cross = crossings_of_edge(tables, cand.new_rs, e)
        if old_cross & new_cross:
            continue
        return SeparatorEvidence(
            edge=e,
            uncrossed=False,
            flip=Flip(edge=e, swept=cand.swept, new_rs=cand.new_rs),
        )
    return None


def is_separable(
    tables: RealizabilityTables, rs: RotationSystem
) -> SeparabilityResult:
    """Whether every edge is a separator edge (with a certificate).

    Stops at the first failing edge; the certificate covers the edges
    examined so far.
    """
    entries = []
    for e in rs.edges():
        ev = is_separator_edge(tables, rs, e)
        if ev is None:
            return SeparabilityResult(
                separable=False,
                certificate=SeparatorCertificate(tuple(entries)),
                failed_edge=e,
            )
        entries.append(ev)
    return SeparabilityResult(
        separable=True,
        certificate=SeparatorCertificate(tuple(entries)),
        failed_edge=None,
    )


def side_partition(rs: RotationSystem, flip: Flip):
    """The two vertex sides induced by a flip: the swept side plus both
    endpoints, and the rest plus both endpoints."""
    v, w = flip.edge
    v1 = frozenset(flip.swept | {v, w})
    v2 = frozenset(
        x for x in range(1, rs.n + 1) if x not in flip.swept
    ) | {v, w}
    return v1, frozenset(v2)


def uncrossed_partition(rs: RotationSystem, e):
    """Degenerate partition for an uncrossed edge: one side holds only
    the edge itself."""
    v, w = edge_key(*e)
    return frozenset((v, w)), frozenset(range(1, rs.n + 1))


def evidence_partition(rs: RotationSystem, ev: SeparatorEvidence):
    if ev.uncrossed:
        return uncrossed_partition(rs, ev.edge)
    return side_partition(rs, ev.flip)


def separator_edges_at(
    tables: RealizabilityTables, rs: RotationSystem, v: int
) -> list[tuple[int, int]]:
    """All separator edges incident to ``v`` (degree query mode)."""
    out = []
    for w in range(1, rs.n + 1):
        if w == v:
            continue
        if is_separator_edge(tables, rs, (v, w)) is not None:
            out.append(edge_key(v, w))
    return out


def find_any_separator_edge(
    tables: RealizabilityTables, rs: RotationSystem
):
    """First separator edge in deterministic edge order, or None."""
    for e in rs.edges():
        ev = is_separator_edge(tables, rs, e)
        if ev is not None:
            return ev
    return None


def certificate_json(cert: SeparatorCertificate) -> dict:
    """JSON payload: per edge either "uncrossed" or the flip data."""
    out = {}
    for ev in cert.entries:
        key = f"{ev.edge[0]},{ev.edge[1]}"
        if ev.uncrossed:
            out[key] = "uncrossed"
        else:
            v, w = ev.edge
            out[key] = {
                "swept": sorted(ev.flip.swept),
                "new_rotations": {
                    str(v): list(ev.flip.new_rs.rotation(v)),
                    str(w): list(ev.flip.new_rs.rotation(w)),
                },
            }
    return out
