import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class VanishingTime:
    """
    Time at which the radius reaches zero: `Finite(t)` when `time` is set, `Never` when it is None.
    """

    time: Optional[float] = None

    @classmethod
    def finite(cls, time: float) -> "VanishingTime":
        return cls(time=time)

    @classmethod
    def never(cls) -> "VanishingTime":
        return cls(time=None)

    @property
    def is_finite(self) -> bool:
        return self.time is not None

    def as_float(self) -> float:
        """The vanishing time, with `math.inf` standing for Never."""

        return math.inf if self.time is None else self.time

    def __str__(self) -> str:
        return "inf" if self.time is None else repr(self.time)
