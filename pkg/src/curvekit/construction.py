"""The twisted rotation sequence on the five-punctured sphere.

With ``D`` the positive twist about ``g2`` and ``rho`` the rotation sending
puncture ``P_j`` to ``P_{j+2}``, set ``f_i = D^{e_i} o rho`` and
``g_i = f_1 o ... o f_i (g_0)``.

Seed encoding on the doubled pentagon: write ``c_k`` for the boundary of a
neighbourhood of pentagon side ``P_k P_{k+1}``.  Then ``g_0 = c_1``, and the
first terms come out as ``g_1 = c_3``, ``g_2 = c_0``, ``g_3 = c_2`` and
``g_4 = D^{e_1}(c_4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ScheduleInvalid
from .mapping_classes import MappingClassWord, Rho, Twist, apply
from .surface import Marking, NormalCurve, base_chart, intersection_number

SIDE_CURVES = {
    0: (0, 1, 0, 0, 1, 1, 1, 1, 1),
    1: (1, 0, 1, 0, 0, 1, 0, 1, 0),
    2: (0, 1, 0, 1, 0, 1, 1, 1, 1),
    3: (0, 0, 1, 0, 1, 0, 1, 0, 1),
    4: (1, 0, 0, 1, 0, 1, 1, 1, 1),
}


def side_curve(k: int) -> NormalCurve:
    """Boundary of a neighbourhood of the pentagon side ``P_k P_{k+1}``."""
    return NormalCurve(base_chart(), SIDE_CURVES[k % 5])


@dataclass(frozen=True)
class Constants:
    B0: int = 3
    G: int = 100
    E: Optional[int] = None

    @property
    def C(self) -> int:
        return 2 * self.B0 + 7

    @property
    def floor(self) -> int:
        if self.E is not None:
            return self.E
        return self.C + self.B0 + self.G + 2

    def to_json(self) -> dict:
        return {"B0": self.B0, "C": self.C, "G": self.G, "E": self.floor}


@dataclass(frozen=True)
class TwistSchedule:
    """Either an explicit list of powers or a geometric rule ``e_{i+1} = ceil(a e_i)``."""

    explicit: Optional[Tuple[int, ...]] = None
    a: Optional[Fraction] = None
    e1: Optional[int] = None
    floor: int = 118

    @classmethod
    def geometric(cls, a, e1: int, floor: int = 118) -> "TwistSchedule":
        return cls(a=Fraction(a), e1=int(e1), floor=floor)

    @classmethod
    def from_list(cls, powers: Sequence[int], floor: int = 118) -> "TwistSchedule":
        return cls(explicit=tuple(int(x) for x in powers), floor=floor)

    def powers(self, n: int) -> List[int]:
        """``[e_1, ..., e_n]``."""
        if self.explicit is not None:
            if len(self.explicit) < n:
                raise ScheduleInvalid(f"schedule lists {len(self.explicit)} powers, need {n}")
            return list(self.explicit[:n])
        out = [self.e1]
        while len(out) < n:
            out.append(math.ceil(self.a * out[-1]))
        return out

    def validate(self, n: int) -> List[int]:
        es = self.powers(n)
        for i, e in enumerate(es, 1):
            if e <= self.floor:
                raise ScheduleInvalid(f"e_{i} = {e} does not exceed the floor {self.floor}")
        if self.explicit is None:
            if self.a <= 2:
                raise ScheduleInvalid(f"growth factor {self.a} must exceed 2")
            for x, y in zip(es, es[1:]):
                if y < self.a * x:
                    raise ScheduleInvalid("growth condition violated")
        return es

    def to_json(self) -> dict:
        if self.explicit is not None:
            return {"rule": "explicit", "powers": [str(e) for e in self.explicit], "floor": self.floor}
        return {"rule": "geometric", "a": str(self.a), "e1": self.e1, "floor": self.floor}


def f_word(e: int) -> MappingClassWord:
    return MappingClassWord([Twist(side_curve(0), e), Rho(1)])


def prefix_word(powers: Sequence[int]) -> MappingClassWord:
    """``f_1 o ... o f_k`` for ``powers = [e_1, ..., e_k]``."""
    letters = []
    for e in powers:
        letters.extend(f_word(e).letters)
    return MappingClassWord(letters, base_chart())


def seed_curves(e1: int, e2: Optional[int] = None):
    """``(g_0, ..., g_5)`` and the rotation word.

    The first five depend on ``e_1`` only; ``g_5`` also needs ``e_2``
    (defaulting to ``e_1``).
    """
    e2 = e1 if e2 is None else e2
    rho = MappingClassWord([Rho(1)])
    c = [side_curve(k) for k in range(5)]
    g4 = apply(MappingClassWord([Twist(c[0], e1)]), c[4])
    g5 = apply(prefix_word([e1]), apply(MappingClassWord([Twist(c[0], e2)]), c[4]))
    return (c[1], c[3], c[0], c[2], g4, g5), rho


@dataclass
class SequenceBundle:
    schedule: TwistSchedule
    powers: List[int]
    curves: List[NormalCurve]
    words: List[MappingClassWord]
    marking: Marking
    constants: Constants

    @property
    def n(self) -> int:
        return len(self.curves) - 1

    def e(self, i: int) -> int:
        """``e_i`` (1-based, as in the construction)."""
        return self.powers[i - 1]


def mu_hat() -> Marking:
    """Base ``{g_0, g_1}`` with transversals ``c_0`` for ``g_0`` and ``c_4`` for ``g_1``."""
    c = [side_curve(k) for k in range(5)]
    return Marking([c[1], c[3]], {c[1]: c[0], c[3]: c[4]})


def generate(n: int, schedule: TwistSchedule, constants: Constants = Constants()) -> SequenceBundle:
    if n < 5:
        raise ScheduleInvalid(f"sequence length n={n} must be at least 5")
    es = schedule.validate(n)
    g0 = side_curve(1)
    curves = [g0]
    for i in range(1, n + 1):
        curves.append(apply(prefix_word(es[:i]), g0))
    for i in range(n):
        if intersection_number(curves[i], curves[i + 1]):
            raise AssertionError(f"consecutive curves {i}, {i + 1} intersect")
    words = [f_word(e) for e in es]
    return SequenceBundle(schedule, es, curves, words, mu_hat(), constants)


def default_schedule(constants: Constants = Constants(), a=3) -> TwistSchedule:
    return TwistSchedule.geometric(a, constants.floor + 1, constants.floor)
