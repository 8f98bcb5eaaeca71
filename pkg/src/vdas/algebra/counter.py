"""Operation counting for the cost model.

Counting is opt-in and scoped: ``with recording() as ops:`` installs a fresh
:class:`OpCounter` in the current context only, so threads and nested
sessions never see each other's counts.
"""
from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, asdict
from typing import Iterator, Optional

_active: contextvars.ContextVar[Optional["OpCounter"]] = contextvars.ContextVar(
    "vdas_op_counter", default=None
)


@dataclass
class OpCounter:
    scalar_mults: int = 0
    pairings: int = 0
    map_hashes: int = 0
    scalar_hashes: int = 0
    point_adds: int = 0

    def snapshot(self) -> dict:
        return asdict(self)

    def __sub__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(**{k: v - getattr(other, k) for k, v in asdict(self).items()})

    def copy(self) -> "OpCounter":
        return OpCounter(**asdict(self))


@contextmanager
def recording(counter: Optional[OpCounter] = None) -> Iterator[OpCounter]:
    """Record operations performed inside the block into ``counter``."""
    ctr = counter if counter is not None else OpCounter()
    token = _active.set(ctr)
    try:
        yield ctr
    finally:
        _active.reset(token)


@contextmanager
def paused() -> Iterator[None]:
    """Suspend recording, e.g. for validation work that is not protocol cost."""
    token = _active.set(None)
    try:
        yield
    finally:
        _active.reset(token)


def tick(field: str) -> None:
    ctr = _active.get()
    if ctr is not None:
        setattr(ctr, field, getattr(ctr, field) + 1)
