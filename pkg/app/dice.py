from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from loguru import logger

from app.errors import DimensionError, SizeLimitError, UnsupportedSymmetryError
from app.words import StatVector, Word, beats_count

Step = tuple[int, int]  # (axis 1..k, length >= 1)

DEFAULT_CAP_NODES = 5 * 10**7


@dataclass(frozen=True)
class StepPath:
    """Axis-parallel lattice walk from the origin; step t of length L on axis j puts L faces
    of denomination t on die j. One step per denomination, so consecutive steps may share an axis."""

    k: int
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple((int(a), int(n)) for a, n in self.steps))
        for axis, length in self.steps:
            if not 1 <= axis <= self.k:
                raise DimensionError(f"axis {axis} outside 1..{self.k}")
            if length < 1:
                raise DimensionError(f"step length must be >= 1, got {length}")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]]) -> StepPath:
        """Build from the visited lattice points, starting at the origin."""
        if not points:
            raise DimensionError("a path needs at least its starting point")
        k = len(points[0])
        steps = []
        for p, q in zip(points, points[1:]):
            moved = [(t, y - x) for t, (x, y) in enumerate(zip(p, q)) if y != x]
            if len(moved) != 1 or moved[0][1] < 1:
                raise DimensionError(f"{tuple(p)} -> {tuple(q)} is not a positive axis-parallel step")
            steps.append((moved[0][0] + 1, moved[0][1]))
        return cls(k, tuple(steps))

    def endpoint(self) -> tuple[int, ...]:
        out = [0] * self.k
        for axis, length in self.steps:
            out[axis - 1] += length
        return tuple(out)

    def points(self) -> list[tuple[int, ...]]:
        cur = [0] * self.k
        out = [tuple(cur)]
        for axis, length in self.steps:
            cur[axis - 1] += length
            out.append(tuple(cur))
        return out

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class DiceSet:
    dice: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dice", tuple(tuple(sorted(d)) for d in self.dice))

    @property
    def k(self) -> int:
        return len(self.dice)

    @property
    def m(self) -> int:
        return len({x for d in self.dice for x in d})

    def is_tieless(self) -> bool:
        owner: dict[int, int] = {}
        for i, die in enumerate(self.dice):
            for x in die:
                if owner.setdefault(x, i) != i:
                    return False
        return True

    def as_lists(self) -> list[list[int]]:
        return [list(d) for d in self.dice]


def word_to_path(w: Word) -> StepPath:
    return StepPath(w.k, tuple((x, 1) for x in w.letters))


def path_to_dice(p: StepPath) -> DiceSet:
    dice: list[list[int]] = [[] for _ in range(p.k)]
    for denom, (axis, length) in enumerate(p.steps, 1):
        dice[axis - 1].extend([denom] * length)
    return DiceSet(tuple(tuple(d) for d in dice))


def generalized_stats(p: StepPath) -> StatVector:
    """s_i = wins of die i - wins of die i+1 (cyclic), accumulated step by step."""
    k = p.k
    s = [0] * k
    c = [0] * k
    for axis, length in p.steps:
        j = axis - 1
        s[j] += length * c[(j + 1) % k]
        s[(j - 1) % k] -= length * c[(j - 1) % k]
        c[j] += length
    return tuple(s)


def rotate(p: StepPath, shift: int = 1) -> StepPath:
    """Relabel axis j -> j + shift (mod k)."""
    k = p.k
    return StepPath(k, tuple(((a - 1 + shift) % k + 1, n) for a, n in p.steps))


def canonical_rotation(p: StepPath) -> StepPath:
    return min((rotate(p, t) for t in range(p.k)), key=lambda q: q.steps)


@dataclass(frozen=True)
class CycleReport:
    pairs: tuple[tuple[int, int, int], ...]  # (wins, losses, ties) of die i against die i+1

    @property
    def ok(self) -> bool:
        return all(w > l for w, l, _ in self.pairs)

    @property
    def margins(self) -> tuple[int, ...]:
        return tuple(w - l for w, l, _ in self.pairs)


def verify_dice_cycle(d: DiceSet | Sequence[Sequence[int]]) -> CycleReport:
    dice = d.dice if isinstance(d, DiceSet) else tuple(tuple(x) for x in d)
    k = len(dice)
    return CycleReport(tuple(beats_count(dice[i], dice[(i + 1) % k]) for i in range(k)))


# ======================= tie-less enumeration =======================


def iter_tieless_paths(
    faces: Sequence[int],
    m: int,
    cap_nodes: int = DEFAULT_CAP_NODES,
) -> Iterator[StepPath]:
    """Paths with exactly m steps (one per denomination) ending at `faces` whose k cyclic stats are all >= 1."""
    faces = tuple(faces)
    k = len(faces)
    c = [0] * k
    s = [0] * k
    steps: list[Step] = []
    nodes = 0

    def hopeless() -> bool:
        # future faces of die i beat at most faces[i+1] faces of die i+1 each
        for i in range(k):
            if s[i] + (faces[i] - c[i]) * faces[(i + 1) % k] < 1:
                return True
        return False

    def rec() -> Iterator[StepPath]:
        nonlocal nodes
        nodes += 1
        if nodes > cap_nodes:
            raise SizeLimitError(f"dice search for faces={faces}, m={m} visited more than {cap_nodes} nodes")
        left_steps = m - len(steps)
        missing = [j for j in range(k) if c[j] < faces[j]]
        if left_steps == 0:
            if not missing and all(x >= 1 for x in s):
                yield StepPath(k, tuple(steps))
            return
        left_faces = sum(faces) - sum(c)
        # every remaining denomination needs at least one face
        if left_faces < left_steps or len(missing) > left_steps or hopeless():
            return
        for j in missing:
            room = min(faces[j] - c[j], left_faces - (left_steps - 1))
            for length in range(1, room + 1):
                up = length * c[(j + 1) % k]
                down = length * c[(j - 1) % k]
                s[j] += up
                s[(j - 1) % k] -= down
                c[j] += length
                steps.append((j + 1, length))
                yield from rec()
                steps.pop()
                c[j] -= length
                s[(j - 1) % k] += down
                s[j] -= up

    yield from rec()


def enumerate_tieless(
    k: int,
    faces: Sequence[int],
    m: int,
    reduce: bool = False,
    cap_nodes: int = DEFAULT_CAP_NODES,
) -> list[DiceSet]:
    faces = tuple(int(x) for x in faces)
    if k < 3:
        raise DimensionError(f"a sucker's bet needs at least 3 dice, got k={k}")
    if len(faces) != k:
        raise DimensionError(f"faces vector has {len(faces)} entries, expected {k}")
    if any(f < 1 for f in faces):
        raise DimensionError(f"every die needs at least one face, got {faces}")
    if reduce and len(set(faces)) != 1:
        raise UnsupportedSymmetryError(f"rotation reduction needs equal face counts, got {faces}")
    if m < k:
        return []
    out = []
    for p in iter_tieless_paths(faces, m, cap_nodes):
        if reduce and canonical_rotation(p) != p:
            continue
        out.append(path_to_dice(p))
    logger.info(f"tie-less dice k={k} faces={faces} m={m} reduce={reduce}: {len(out)} sets")
    return out
