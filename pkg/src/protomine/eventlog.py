"""Event logs as variant-compressed multisets of activity traces.

A trace is a tuple of activity labels (non-empty strings). An event log
stores one entry per distinct trace ("variant") together with its
occurrence count; downstream distance, clustering and conformance work is
per-variant and frequency-weighted, so the expanded multiset is never
materialised. Logs are immutable after construction and safe to share.

Supported file formats: an XES subset (``<trace>``/``<event>`` elements
whose events carry a ``<string key="concept:name" value=.../>``
attribute) and RFC-4180 CSV with a mandatory header row.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Mapping, Sequence

Trace = tuple[str, ...]

XES_NAMESPACE = "http://www.xes-standard.org/"


class LogFormatError(ValueError):
    """Raised when an input document cannot be read as an event log."""


def _check_trace(trace: Sequence[str]) -> Trace:
    t = tuple(trace)
    for label in t:
        if not isinstance(label, str) or not label:
            raise ValueError(f"activity labels must be non-empty strings, got {label!r}")
    return t


class EventLog:
    """A multiset of traces, stored as variant -> count."""

    def __init__(self, variants: Mapping[Trace, int] | Iterable[tuple[Trace, int]]):
        items = variants.items() if isinstance(variants, Mapping) else variants
        table: dict[Trace, int] = {}
        for trace, count in items:
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"variant count must be a positive integer, got {count!r}")
            t = _check_trace(trace)
            table[t] = table.get(t, 0) + count
        self._variants = table

    @classmethod
    def from_traces(cls, traces: Iterable[Sequence[str]]) -> "EventLog":
        """Collapse an iterable of raw traces into a variant table."""
        table: dict[Trace, int] = {}
        for trace in traces:
            t = tuple(trace)
            table[t] = table.get(t, 0) + 1
        return cls(table)

    @property
    def variants(self) -> dict[Trace, int]:
        return dict(self._variants)

    @property
    def total_traces(self) -> int:
        return sum(self._variants.values())

    @property
    def activities(self) -> frozenset[str]:
        """The activity universe: every label occurring in the log."""
        return frozenset(a for trace in self._variants for a in trace)

    def count(self, trace: Sequence[str]) -> int:
        return self._variants.get(tuple(trace), 0)

    def __contains__(self, trace: object) -> bool:
        return trace in self._variants

    def __len__(self) -> int:
        """Number of distinct variants."""
        return len(self._variants)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventLog):
            return NotImplemented
        return self._variants == other._variants

    def __hash__(self) -> int:
        return hash(frozenset(self._variants.items()))

    def __repr__(self) -> str:
        return f"EventLog({len(self)} variants, {self.total_traces} traces)"


class Sublog(EventLog):
    """An event log whose variants are drawn from a parent log.

    Every variant must occur in the parent with at least the sublog's
    count; the parent is kept by reference for provenance.
    """

    def __init__(
        self,
        variants: Mapping[Trace, int] | Iterable[tuple[Trace, int]],
        parent: EventLog,
    ):
        super().__init__(variants)
        for trace, count in self._variants.items():
            if parent.count(trace) < count:
                raise ValueError(
                    f"sublog variant {trace!r} exceeds its parent count "
                    f"({count} > {parent.count(trace)})"
                )
        self.parent = parent


def variants(log: EventLog) -> list[tuple[Trace, int]]:
    """Variant table sorted by descending count, ties lexicographic."""
    return sorted(log.variants.items(), key=lambda item: (-item[1], item[0]))


def _local(tag: str) -> str:
    """Tag name with any XML namespace stripped."""
    return tag.rsplit("}", 1)[-1]


def parse_xes(document: bytes) -> EventLog:
    """Parse an XES document into an event log.

    One trace per ``<trace>`` element, activities taken from each event's
    ``concept:name`` string attribute in document order. All other event
    attributes are dropped.
    """
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise LogFormatError(f"malformed XES XML: {exc}") from exc
    if _local(root.tag) != "log":
        raise LogFormatError(f"expected <log> root element, got <{_local(root.tag)}>")

    traces: list[Trace] = []
    trace_index = 0
    for trace_el in root:
        if _local(trace_el.tag) != "trace":
            continue
        activities: list[str] = []
        for event_el in trace_el:
            if _local(event_el.tag) != "event":
                continue
            name = None
            for attr in event_el:
                if _local(attr.tag) == "string" and attr.get("key") == "concept:name":
                    name = attr.get("value")
                    break
            if not name:
                raise LogFormatError(
                    f"trace {trace_index}: event without a concept:name attribute"
                )
            activities.append(name)
        traces.append(tuple(activities))
        trace_index += 1
    return EventLog.from_traces(traces)


def export_xes(log: EventLog) -> bytes:
    """Serialise a log to XES; parse_xes(export_xes(log)) == log."""
    root = ET.Element("log", {"xes.version": "1.0", "xmlns": XES_NAMESPACE})
    for trace, count in variants(log):
        for _ in range(count):
            trace_el = ET.SubElement(root, "trace")
            for activity in trace:
                event_el = ET.SubElement(trace_el, "event")
                ET.SubElement(event_el, "string", {"key": "concept:name", "value": activity})
    tree = ET.ElementTree(root)
    ET.indent(tree)
    buf = io.BytesIO()
    tree.write(buf, encoding="UTF-8", xml_declaration=True)
    return buf.getvalue()


@dataclass(frozen=True)
class CsvColumns:
    """Column mapping for CSV ingestion; timestamp is optional."""

    case_id: str
    activity: str
    timestamp: str | None = None


def _parse_timestamp(text: str) -> object:
    """Accept ISO-8601 (with trailing Z) or a plain number of seconds."""
    normalized = text.strip()
    try:
        return datetime.fromisoformat(normalized.replace("Z", "+00:00"))
    except ValueError:
        pass
    try:
        return float(normalized)
    except ValueError:
        raise LogFormatError(f"unparsable timestamp {text!r}") from None


def parse_csv(document: bytes, columns: CsvColumns) -> EventLog:
    """Parse CSV event rows into an event log.

    Events are grouped by the case id column. Within a case they are
    ordered by the timestamp column when one is mapped, otherwise by file
    order; timestamp ties keep file order (stable sort).
    """
    text = document.decode("utf-8")
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise LogFormatError("CSV document has no header row") from None

    index: dict[str, int] = {name: i for i, name in enumerate(header)}
    wanted = [columns.case_id, columns.activity]
    if columns.timestamp is not None:
        wanted.append(columns.timestamp)
    for name in wanted:
        if name not in index:
            raise LogFormatError(f"mapped column {name!r} not present in CSV header {header}")
    case_col = index[columns.case_id]
    act_col = index[columns.activity]
    time_col = index[columns.timestamp] if columns.timestamp is not None else None

    # case id -> list of (sort key, activity); cases keep first-appearance order
    cases: dict[str, list[tuple[object, str]]] = {}
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) <= max(case_col, act_col, time_col or 0):
            raise LogFormatError(f"row {rownum}: expected {len(header)} fields, got {len(row)}")
        case = row[case_col]
        activity = row[act_col]
        if time_col is not None:
            try:
                key: object = _parse_timestamp(row[time_col])
            except LogFormatError as exc:
                raise LogFormatError(f"row {rownum}: {exc}") from None
        else:
            key = 0
        cases.setdefault(case, []).append((key, activity))

    traces = []
    for events in cases.values():
        events.sort(key=lambda e: e[0])  # stable: file order breaks ties
        traces.append([activity for _, activity in events])
    return EventLog.from_traces(traces)
