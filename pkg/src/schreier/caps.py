"""Shared error types and resource caps."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields


class DomainError(ValueError):
    """An operation was called outside its precondition."""


class ResourceCapError(RuntimeError):
    """A configured size cap would be exceeded."""


class CheckFailure(AssertionError):
    """A certified construction failed its own check."""


@dataclass(frozen=True)
class Caps:
    support: int = 24        # vector support for norm engines
    horizon: int = 64        # stream/horizon length
    brute_force: int = 12    # exhaustive oracles over subsets
    modified_family: int = 14
    block: int = 1 << 16     # elements materialized per average block
    cnf_depth: int = 4

    def asdict(self):
        return asdict(self)

    @classmethod
    def from_mapping(cls, data):
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise DomainError(f"unknown cap(s): {sorted(extra)}")
        return cls(**{k: int(v) for k, v in data.items()})


DEFAULT_CAPS = Caps()


def require(cond, what, cap):
    if not cond:
        raise ResourceCapError(f"{what} exceeds cap {cap}")
