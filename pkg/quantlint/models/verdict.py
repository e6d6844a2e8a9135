from __future__ import annotations
from dataclasses import dataclass, field
from typing import List, Optional, Union

from quantlint.models.diagnostic import Diagnostic
from quantlint.models.env import DimEnv, QuantEnv


@dataclass
class DimValid:
    env: DimEnv
    notes: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return True

    @property
    def diagnostics(self) -> List[Diagnostic]:
        return []


@dataclass
class DimFail:
    diagnostics: List[Diagnostic]
    env: DimEnv
    notes: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return False


DimVerdict = Union[DimValid, DimFail]


@dataclass
class QuantSucceed:
    env: QuantEnv
    initial: QuantEnv
    notes: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return True

    @property
    def diagnostics(self) -> List[Diagnostic]:
        return []

    @property
    def promotions(self):
        return self.env.promotions(self.initial)


@dataclass
class QuantFail:
    diagnostics: List[Diagnostic]
    env: Optional[QuantEnv] = None
    initial: Optional[QuantEnv] = None
    notes: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return False


QuantVerdict = Union[QuantSucceed, QuantFail]
