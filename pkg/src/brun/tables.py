"""Twin pair census tables: parsing, validation, rigorous extension.

A census table is a text file of lines

    <k>d<n>  <pi2>  [<prediction>]

where ``<k>d<n>`` names the threshold k * 10^n, ``<pi2>`` is the exact
number of twin pairs up to that threshold, and the optional third column
is a heuristic prediction carried along for display only.

Counts at two thresholds brace the partial sum growth between them: every
pair (p, p+2) with t1 < p <= t2 contributes between 2/(t2+2) and 2/t1.
Chaining that bracket along consecutive table rows extends a certified
partial sum enclosure from a sieved base up to the table's end without
sieving anything beyond the base.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .interval import Interval
from .sieve import TwinCensus

__all__ = [
    "CensusTableEntry",
    "DEFAULT_BASE_THRESHOLD",
    "DEFAULT_BASE_ENCLOSURE",
    "bracket_contribution",
    "emit_table",
    "extend_partial_sum",
    "load_table_dir",
    "parse_entry",
    "parse_table",
]

#: Base used by the command line when no sieved starting point is given:
#: the reciprocal sum over twin pairs up to 1e12, as independently
#: published and widely reproduced census work reports it.
DEFAULT_BASE_THRESHOLD = 10**12
DEFAULT_BASE_ENCLOSURE = Interval(1.8065924, 1.8065925)

_LINE = re.compile(
    r"^(?P<k>\d+)d(?P<n>\d+)\s+(?P<pi2>\d+)(?:\s+(?P<pred>[0-9.eE+-]+))?\s*$"
)


@dataclass(frozen=True)
class CensusTableEntry:
    """One table row: pair count at threshold mantissa * 10**exponent."""

    mantissa: int
    exponent: int
    pi2: int
    prediction: Optional[float] = None

    @property
    def threshold(self) -> int:
        return self.mantissa * 10**self.exponent

    @property
    def label(self) -> str:
        return f"{self.mantissa}d{self.exponent}"


def parse_entry(line: str) -> CensusTableEntry:
    m = _LINE.match(line.strip())
    if m is None:
        raise ValueError(f"malformed census table line: {line!r}")
    pred = m.group("pred")
    return CensusTableEntry(
        mantissa=int(m.group("k")),
        exponent=int(m.group("n")),
        pi2=int(m.group("pi2")),
        prediction=None if pred is None else float(pred),
    )


def parse_table(text: str) -> list:
    """Parse one table; blank lines and # comments are skipped."""
    entries = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(parse_entry(line))
    return entries


def _merge(entries: Iterable[CensusTableEntry]) -> list:
    by_threshold = {}
    for e in entries:
        t = e.threshold
        prev = by_threshold.get(t)
        if prev is not None and prev.pi2 != e.pi2:
            raise ValueError(
                f"conflicting counts at {e.label}: {prev.pi2} vs {e.pi2}"
            )
        if prev is None or (prev.prediction is None and e.prediction is not None):
            by_threshold[t] = e
    merged = [by_threshold[t] for t in sorted(by_threshold)]
    for a, b in zip(merged, merged[1:]):
        if b.pi2 < a.pi2:
            raise ValueError(
                f"pair count decreases from {a.label} to {b.label}"
            )
    return merged


def load_table_dir(path) -> list:
    """All *.txt tables under ``path``, merged, deduplicated, ascending."""
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"census table directory not found: {root}")
    entries = []
    for file in sorted(root.glob("*.txt")):
        entries.extend(parse_table(file.read_text()))
    if not entries:
        raise ValueError(f"no census table rows under {root}")
    return _merge(entries)


def bracket_contribution(lower: CensusTableEntry, upper: CensusTableEntry) -> Interval:
    """Enclosure of the partial sum mass between two table rows.

    Each of the upper.pi2 - lower.pi2 pairs in (t1, t2] contributes
    1/p + 1/(p+2), which is at least 2/(t2+2) and at most 2/t1.
    """
    t1 = lower.threshold
    t2 = upper.threshold
    if t2 <= t1:
        raise ValueError(f"rows out of order: {lower.label} !< {upper.label}")
    delta = upper.pi2 - lower.pi2
    if delta < 0:
        raise ValueError(f"pair count decreases between {lower.label} and {upper.label}")
    two_delta = Interval.from_int(2 * delta)
    lo = (two_delta / Interval.from_int(t2 + 2)).lo
    hi = (two_delta / Interval.from_int(t1)).hi
    return Interval(lo, hi)


def extend_partial_sum(
    base_threshold: int,
    base: Interval,
    entries: Sequence[CensusTableEntry],
) -> TwinCensus:
    """Extend a certified partial sum from a base threshold along a table.

    ``entries`` must contain a row at exactly ``base_threshold`` (the
    chain needs its count to difference against).  Rows below the base
    are ignored.  Returns the count and enclosure at the last row.
    """
    chain = [e for e in _merge(entries) if e.threshold >= base_threshold]
    if not chain or chain[0].threshold != base_threshold:
        raise ValueError(
            f"no table row at base threshold {base_threshold}"
        )
    total = base
    for a, b in zip(chain, chain[1:]):
        total = total + bracket_contribution(a, b)
    last = chain[-1]
    return TwinCensus(limit=last.threshold, pi2=last.pi2, brun_partial=total)


def emit_table(entries: Sequence[CensusTableEntry]) -> str:
    """Render rows in the canonical on-disk format."""
    lines = []
    for e in entries:
        if e.prediction is None:
            lines.append(f"{e.label}  {e.pi2}")
        else:
            lines.append(f"{e.label}  {e.pi2}  {e.prediction:.3f}")
    return "\n".join(lines) + "\n"
