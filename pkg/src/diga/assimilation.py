"""Masked trim-and-paste merging of parameter sets.

Every ParamSet here lives at max size. An architecture addresses the
top-left block of each layer; pasting copies that block from a donor into a
target, skipping cells an earlier paste already wrote (first writer wins).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arch_search import ArchSearchConfig, draw_distinct, sort_order, unique_solutions, update_and_sort
from .errors import DimensionError
from .model import Arch, ArchSolution, Dataset, ParamSet, check_within

LEAD, FOLL, OFF = "lead", "foll", "off"


@dataclass(frozen=True)
class TaggedSolution:
    solution: ArchSolution
    source: str

    @property
    def arch(self) -> Arch:
        return self.solution.arch

    @property
    def cost(self) -> float:
        return self.solution.cost


def new_mask(like: ParamSet) -> ParamSet:
    return like.zeros_like(dtype=bool)


def _paste(target: ParamSet, donor: ParamSet, arch: Arch, mask: ParamSet) -> None:
    check_within(arch, target.dims)
    for l in range(target.n_layers):
        rows, cols = arch[l + 1], arch[l]
        for t, d, m, region in (
            (target.weights[l], donor.weights[l], mask.weights[l], np.s_[:rows, :cols]),
            (target.biases[l], donor.biases[l], mask.biases[l], np.s_[:rows, :]),
        ):
            free = ~m[region]
            # basic slices are views, so this writes through to t
            t[region][free] = d[region][free]
            m[region] = True


def masked_paste(target: ParamSet, donor: ParamSet, arch: Sequence[int], mask: ParamSet):
    """Paste ``donor``'s ``arch`` block into ``target`` where ``mask`` is unset.

    Returns new ``(target, mask)``; the inputs are left untouched.
    """
    if not (target.same_shape(donor) and target.same_shape(mask)):
        raise DimensionError("target, donor and mask must share shapes")
    target, mask = target.copy(), mask.copy()
    _paste(target, donor, tuple(arch), mask)
    return target, mask


def join_tagged(*tagged_lists: tuple[Sequence[ArchSolution], str]) -> list[TaggedSolution]:
    return [TaggedSolution(s, tag) for sols, tag in tagged_lists for s in sols]


def sort_tagged(entries: Sequence[TaggedSolution]) -> list[TaggedSolution]:
    return [entries[i] for i in sort_order([e.solution for e in entries])]


def merge_two_offs(off1_p: ParamSet, off2_p: ParamSet, off1_l: Sequence[ArchSolution],
                   off2_l: Sequence[ArchSolution], data: Dataset):
    """Combine two evaluated offspring into one ParamSet and solution list."""
    if len(off1_l) != len(off2_l):
        raise ValueError(f"offspring lists differ in length: {len(off1_l)} vs {len(off2_l)}")
    if not off1_p.same_shape(off2_p):
        raise DimensionError("offspring ParamSets differ in shape")
    size = len(off1_l)
    donors = {"1": off1_p, "2": off2_p}
    ranked = sort_tagged(join_tagged((off1_l, "1"), (off2_l, "2")))

    off_p = off1_p.zeros_like()
    mask = new_mask(off_p)
    chosen: list[Arch] = []
    for entry in ranked:
        if len(chosen) == size:
            break
        if entry.arch in chosen:
            continue
        chosen.append(entry.arch)
        _paste(off_p, donors[entry.source], entry.arch, mask)
    return off_p, update_and_sort(chosen, off_p, data)


def allocate(ranked: Sequence[TaggedSolution]) -> list[str | None]:
    """Decide, for each ranked entry, which agent takes it.

    Even positions try the leader first, odd positions the follower; an
    architecture already held by the preferred agent falls through to the
    other one, and is skipped if both hold it.
    """
    held = {LEAD: set(), FOLL: set()}
    decisions: list[str | None] = []
    for idx, entry in enumerate(ranked):
        first, second = (LEAD, FOLL) if idx % 2 == 0 else (FOLL, LEAD)
        if entry.arch not in held[first]:
            target = first
        elif entry.arch not in held[second]:
            target = second
        else:
            target = None
        if target is not None:
            held[target].add(entry.arch)
        decisions.append(target)
    return decisions


def anabolism(lead_p: ParamSet, foll_p: ParamSet, off_p: ParamSet,
              lead_l: Sequence[ArchSolution], foll_l: Sequence[ArchSolution], off_l: Sequence[ArchSolution],
              config: ArchSearchConfig, rng: np.random.Generator, data: Dataset):
    """Redistribute leader, follower and offspring solutions between the two agents.

    Returns ``(lead_p, foll_p, lead_l, foll_l)``. The updated ParamSets start
    as copies of the current agents; every accepted entry pastes its block
    from the ParamSet it came from.
    """
    size = len(lead_l)
    if not (len(foll_l) == size == len(off_l)):
        raise ValueError(f"solution lists differ in length: {len(lead_l)}, {len(foll_l)}, {len(off_l)}")
    if not (lead_p.same_shape(foll_p) and lead_p.same_shape(off_p)):
        raise DimensionError("leader, follower and offspring ParamSets differ in shape")

    donors = {LEAD: lead_p, FOLL: foll_p, OFF: off_p}
    joined = join_tagged((lead_l, LEAD), (foll_l, FOLL), (off_l, OFF))
    ranked = sort_tagged(joined)

    new_p = {LEAD: lead_p.copy(), FOLL: foll_p.copy()}
    masks = {LEAD: new_mask(lead_p), FOLL: new_mask(foll_p)}
    chosen: dict[str, list[Arch]] = {LEAD: [], FOLL: []}
    for entry, target in zip(ranked, allocate(ranked)):
        if target is None:
            continue
        chosen[target].append(entry.arch)
        _paste(new_p[target], donors[entry.source], entry.arch, masks[target])

    pool = unique_solutions([e.solution for e in joined])
    out_l = {}
    for agent in (LEAD, FOLL):
        archs = chosen[agent][:size]
        if len(archs) < size:
            archs += draw_distinct(pool, config, size - len(archs), rng, exclude=archs)
        out_l[agent] = update_and_sort(archs, new_p[agent], data)
    return new_p[LEAD], new_p[FOLL], out_l[LEAD], out_l[FOLL]


def update_lead_foll(lead_p: ParamSet, foll_p: ParamSet, lead_l: Sequence[ArchSolution],
                     foll_l: Sequence[ArchSolution], data: Dataset):
    """Re-evaluate both agents and swap them wholesale if the follower is now better.

    Returns ``(lead_p, foll_p, lead_l, foll_l, swapped)``.
    """
    if not lead_l or not foll_l:
        raise ValueError("agents must hold at least one solution each")
    lead_l = update_and_sort([s.arch for s in lead_l], lead_p, data)
    foll_l = update_and_sort([s.arch for s in foll_l], foll_p, data)
    lead_best = min(s.cost for s in lead_l)
    foll_best = min(s.cost for s in foll_l)
    if foll_best < lead_best:
        return foll_p, lead_p, foll_l, lead_l, True
    return lead_p, foll_p, lead_l, foll_l, False
