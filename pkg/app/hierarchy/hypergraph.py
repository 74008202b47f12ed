from itertools import chain, combinations

from pydantic import BaseModel, ConfigDict

from app.errors import HypergraphError


def _subset_key(v: frozenset[int]) -> tuple:
    return len(v), tuple(sorted(v))


def _all_subsets(v) -> list[frozenset[int]]:
    items = sorted(v)
    return [
        frozenset(c)
        for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))
    ]


class Hypergraph(BaseModel):
    """
    Downward-closed family of subsets of {0, ..., N-1} covering every unit.
    Build it through validate_hypergraph or hypergraph_k.
    """

    model_config = ConfigDict(frozen=True)

    N: int
    sets: tuple[frozenset[int], ...]

    def __contains__(self, v) -> bool:
        return frozenset(v) in self.sets

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def maximal_sets(self) -> list[frozenset[int]]:
        return [v for v in self.sets if not any(v < w for w in self.sets)]

    def is_subhypergraph_of(self, other: "Hypergraph") -> bool:
        return self.N == other.N and set(self.sets) <= set(other.sets)

    def as_lists(self) -> list[list[int]]:
        return [sorted(v) for v in self.sets]


def validate_hypergraph(N: int, sets, generators: bool = False) -> Hypergraph:
    """
    Check a family of subsets of [N].

    Args:
        N: number of units
        sets: iterable of iterables of 0-based unit indices
        generators: treat sets as maximal sets and take their downward closure

    Raises:
        HypergraphError: out-of-range unit, missing subset or a unit not covered
    """
    if N < 1:
        raise HypergraphError(f"Hypergraph needs N >= 1, got {N}")
    family = {frozenset(int(i) for i in v) for v in sets}
    for v in family:
        bad = sorted(i for i in v if i < 0 or i >= N)
        if bad:
            raise HypergraphError(f"Set {sorted(v)} has units {bad} outside 0..{N - 1}")

    if generators:
        family = set(chain.from_iterable(_all_subsets(v) for v in family))
        family.add(frozenset())
    else:
        for v in family:
            missing = [sorted(w) for w in _all_subsets(v) if w not in family]
            if missing:
                raise HypergraphError(
                    f"Family is not downward closed: {sorted(v)} is present but {missing[0]} is not"
                )
        if not family:
            raise HypergraphError("Family is empty")

    covered = set().union(*family)
    uncovered = sorted(set(range(N)) - covered)
    if uncovered:
        raise HypergraphError(f"Units {uncovered} are not covered")
    return Hypergraph(N=N, sets=tuple(sorted(family, key=_subset_key)))


def hypergraph_k(N: int, k: int) -> Hypergraph:
    """All subsets of [N] with at most k elements."""
    if not 1 <= k <= N:
        raise HypergraphError(f"k must lie in 1..{N}, got {k}")
    family = [frozenset(c) for r in range(k + 1) for c in combinations(range(N), r)]
    return Hypergraph(N=N, sets=tuple(family))


def enumerate_hypergraphs(N: int) -> list[Hypergraph]:
    """Every hypergraph on N units, one per antichain of generators covering all units."""
    if not 1 <= N <= 5:
        raise HypergraphError(f"Enumeration is limited to 1 <= N <= 5, got {N}")
    candidates = [v for v in _all_subsets(range(N)) if v]
    found: list[Hypergraph] = []

    def extend(start: int, chosen: list[frozenset[int]]):
        if chosen and set().union(*chosen) == set(range(N)):
            found.append(validate_hypergraph(N, chosen, generators=True))
        for i in range(start, len(candidates)):
            v = candidates[i]
            if all(not (v <= w or w <= v) for w in chosen):
                extend(i + 1, chosen + [v])

    extend(0, [])
    return sorted(found, key=lambda U: (len(U), [_subset_key(v) for v in U.sets]))
