"""Presentation-week planning.

Unit-length items (one presentation each) are placed into weeks
``1..num_weeks`` subject to per-item windows and pre-placed fixed items.
The objective is min-max weekly load: make the busiest week as light as
possible.

Two layers:

* ``feasible(instance, capacity)`` — can everything fit with every week's
  load at most ``capacity``?  Greedy sweep, earliest-deadline-first. For
  unit items this greedy is exact, so it doubles as the decision procedure.
* ``plan_schedule(instance)`` — binary search on capacity between the
  pigeonhole lower bound and the item count, returning the placement found
  at the smallest feasible capacity.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import Infeasible, WeekOutOfRange


@dataclass(frozen=True)
class ScheduleItem:
    """One unplaced presentation. ``deadline_week=None`` means the end of
    the planning horizon."""

    item_id: int
    earliest_week: int = 1
    deadline_week: int | None = None


@dataclass(frozen=True)
class ScheduleInstance:
    num_weeks: int
    fixed: tuple[tuple[int, int], ...] = ()   # (item_id, week) pre-placements
    free_items: tuple[ScheduleItem, ...] = ()

    def __post_init__(self):
        ids = [item_id for item_id, _ in self.fixed]
        ids += [item.item_id for item in self.free_items]
        if len(ids) != len(set(ids)):
            raise ValueError("item ids must be unique across fixed and free items")

    @property
    def total_items(self) -> int:
        return len(self.fixed) + len(self.free_items)

    def resolved_window(self, item: ScheduleItem) -> tuple[int, int]:
        deadline = item.deadline_week if item.deadline_week is not None else self.num_weeks
        return item.earliest_week, deadline

    def invalid_item_ids(self) -> tuple[int, ...]:
        """Items that can never be placed: empty or out-of-horizon windows,
        or fixed weeks outside [1, num_weeks]."""
        bad = []
        for item in self.free_items:
            earliest, deadline = self.resolved_window(item)
            if earliest < 1 or deadline > self.num_weeks or earliest > deadline:
                bad.append(item.item_id)
        for item_id, week in self.fixed:
            if not 1 <= week <= self.num_weeks:
                bad.append(item_id)
        return tuple(sorted(bad))


@dataclass(frozen=True)
class ScheduleResult:
    placement: dict[int, int]          # free item -> chosen week
    max_weekly_load: int
    loads: dict[int, int] = field(default_factory=dict)  # week -> count, fixed included


def weekly_load(placement: dict[int, int], fixed: tuple[tuple[int, int], ...],
                num_weeks: int) -> dict[int, int]:
    """Count items per week over placement plus fixed pre-placements."""
    loads = {week: 0 for week in range(1, num_weeks + 1)}
    for week in placement.values():
        if week not in loads:
            raise WeekOutOfRange(f"placed week {week} outside [1, {num_weeks}]")
        loads[week] += 1
    for _, week in fixed:
        if week not in loads:
            raise WeekOutOfRange(f"fixed week {week} outside [1, {num_weeks}]")
        loads[week] += 1
    return loads


def feasible(instance: ScheduleInstance, capacity: int) -> tuple[bool, dict[int, int] | None]:
    """Decide whether every free item fits under the weekly capacity.

    Sweeps weeks in order; each week fills the slots left over by fixed
    items with released items in earliest-deadline-first order (ties to the
    smaller item id). Returns the witness placement when feasible. Exact
    for unit-length items.
    """
    fixed_per_week = {week: 0 for week in range(1, instance.num_weeks + 1)}
    for _, week in instance.fixed:
        if week in fixed_per_week:
            fixed_per_week[week] += 1
    if any(count > capacity for count in fixed_per_week.values()):
        return False, None

    by_release: dict[int, list[ScheduleItem]] = {}
    for item in instance.free_items:
        earliest, deadline = instance.resolved_window(item)
        if earliest > deadline or deadline < 1 or earliest > instance.num_weeks:
            return False, None
        by_release.setdefault(max(earliest, 1), []).append(item)

    placement: dict[int, int] = {}
    released: list[tuple[int, int]] = []  # (deadline, item_id) heap
    for week in range(1, instance.num_weeks + 1):
        for item in by_release.get(week, ()):
            _, deadline = instance.resolved_window(item)
            heapq.heappush(released, (deadline, item.item_id))
        slots = capacity - fixed_per_week[week]
        while slots > 0 and released:
            _, item_id = heapq.heappop(released)
            placement[item_id] = week
            slots -= 1
        if released and released[0][0] <= week:
            return False, None  # an unplaced item's deadline has passed
    if released:
        return False, None
    return True, placement


def plan_schedule(instance: ScheduleInstance) -> ScheduleResult:
    """Minimize the maximum weekly load.

    Binary search on capacity between ``max(ceil(total/num_weeks), largest
    fixed week)`` and the total item count; the smallest feasible capacity
    is the optimum because feasibility is monotone in capacity.
    """
    bad = instance.invalid_item_ids()
    if bad:
        raise Infeasible("items cannot be placed inside the planning horizon", item_ids=bad)

    total = instance.total_items
    fixed_counts = weekly_load({}, instance.fixed, instance.num_weeks)
    max_fixed = max(fixed_counts.values(), default=0)
    low = max(math.ceil(total / instance.num_weeks), max_fixed)
    high = total
    while low < high:
        mid = (low + high) // 2
        ok, _ = feasible(instance, mid)
        if ok:
            high = mid
        else:
            low = mid + 1
    ok, placement = feasible(instance, low)
    if not ok or placement is None:
        raise Infeasible("no placement exists even at one slot per item")
    loads = weekly_load(placement, instance.fixed, instance.num_weeks)
    max_load = max(loads.values(), default=0)
    return ScheduleResult(placement=placement, max_weekly_load=max_load, loads=loads)
