from typing import Optional, TypedDict


class OutputRecord(TypedDict):
    s: str
    n: int
    digits: list[int]
    perm: list[int]
    delta: Optional[list[int]]


class ViolationRecord(TypedDict):
    seeds: list[str]
    observed: int
    relation: str
    bound: int


class ReportRecord(TypedDict, total=False):
    property: str
    n: int
    seeds_checked: int
    passed: bool
    exhaustive: bool
    rng_seed: Optional[int]
    violations: list[ViolationRecord]
    elapsed: float
