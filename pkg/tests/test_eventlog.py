import pytest

from protomine import CsvColumns, EventLog, LogFormatError, Sublog, export_xes, parse_csv, parse_xes, variants


def xes_doc(traces):
    parts = ['<?xml version="1.0" encoding="UTF-8"?>', '<log xes.version="1.0">']
    for trace in traces:
        parts.append("<trace>")
        for activity in trace:
            parts.append(f'<event><string key="concept:name" value="{activity}"/></event>')
        parts.append("</trace>")
    parts.append("</log>")
    return "\n".join(parts).encode()


class TestParseXes:
    def test_variant_collapse(self):
        log = parse_xes(xes_doc([["a", "b"], ["a", "b"], ["a", "c"]]))
        assert log.variants == {("a", "b"): 2, ("a", "c"): 1}
        assert log.total_traces == 3

    def test_empty_log(self):
        log = parse_xes(xes_doc([]))
        assert log.variants == {}
        assert log.total_traces == 0

    def test_empty_trace(self):
        log = parse_xes(xes_doc([[]]))
        assert log.variants == {(): 1}

    def test_namespaced_document(self):
        doc = (
            b'<log xmlns="http://www.xes-standard.org/">'
            b'<trace><event><string key="concept:name" value="a"/></event></trace></log>'
        )
        assert parse_xes(doc).variants == {("a",): 1}

    def test_trace_attributes_and_extra_event_attributes_ignored(self):
        doc = (
            b"<log>"
            b'<extension name="Concept" prefix="concept" uri="u"/>'
            b"<trace>"
            b'<string key="concept:name" value="case-17"/>'
            b"<event>"
            b'<string key="org:resource" value="alice"/>'
            b'<string key="concept:name" value="a"/>'
            b'<date key="time:timestamp" value="2024-01-01T00:00:00"/>'
            b"</event>"
            b"</trace>"
            b"</log>"
        )
        assert parse_xes(doc).variants == {("a",): 1}

    def test_malformed_xml_reports_position(self):
        with pytest.raises(LogFormatError, match=r"line"):
            parse_xes(b"<log><trace></log>")

    def test_event_without_activity_names_trace(self):
        doc = xes_doc([["a"]]).replace(b"concept:name", b"other:key")
        with pytest.raises(LogFormatError, match=r"trace 0"):
            parse_xes(doc)


class TestXesRoundTrip:
    @pytest.mark.parametrize(
        "table",
        [
            {("a", "b"): 2, ("a", "c"): 1},
            {(): 3, ("a",): 1},
            {},
        ],
    )
    def test_round_trip(self, table):
        log = EventLog(table)
        assert parse_xes(export_xes(log)) == log

    def test_trace_order_is_irrelevant(self):
        forward = xes_doc([["a", "b"], ["c"], ["a", "b"]])
        backward = xes_doc([["c"], ["a", "b"], ["a", "b"]])
        assert parse_xes(forward) == parse_xes(backward)


CSV_HEADER = "case,act,ts\n"


class TestParseCsv:
    def test_file_order(self):
        doc = (CSV_HEADER + "c1,a,\nc1,b,\nc2,a,\n").encode()
        log = parse_csv(doc, CsvColumns(case_id="case", activity="act"))
        assert log.variants == {("a", "b"): 1, ("a",): 1}

    def test_timestamp_order(self):
        doc = (
            CSV_HEADER
            + "c1,a,2024-01-02T00:00:00\n"
            + "c1,b,2024-01-01T00:00:00\n"
            + "c2,a,2024-01-01T00:00:00\n"
        ).encode()
        log = parse_csv(doc, CsvColumns(case_id="case", activity="act", timestamp="ts"))
        assert log.variants == {("b", "a"): 1, ("a",): 1}

    def test_empty_body(self):
        log = parse_csv(CSV_HEADER.encode(), CsvColumns(case_id="case", activity="act"))
        assert log.total_traces == 0

    def test_missing_column(self):
        with pytest.raises(LogFormatError, match="nope"):
            parse_csv(CSV_HEADER.encode(), CsvColumns(case_id="nope", activity="act"))

    def test_bad_timestamp_reports_row(self):
        doc = (CSV_HEADER + "c1,a,2024-01-01T00:00:00\nc1,b,not-a-time\n").encode()
        with pytest.raises(LogFormatError, match="row 3"):
            parse_csv(doc, CsvColumns(case_id="case", activity="act", timestamp="ts"))

    def test_timestamp_ties_keep_file_order(self):
        doc = (CSV_HEADER + "c1,a,5\nc1,b,5\nc1,c,1\n").encode()
        log = parse_csv(doc, CsvColumns(case_id="case", activity="act", timestamp="ts"))
        assert log.variants == {("c", "a", "b"): 1}


class TestVariants:
    def test_sorted_by_count(self):
        log = EventLog({("a", "b"): 2, ("a", "c"): 1})
        assert variants(log) == [(("a", "b"), 2), (("a", "c"), 1)]

    def test_empty(self):
        assert variants(EventLog({})) == []

    def test_lexicographic_ties(self):
        log = EventLog({("b",): 1, ("a",): 1})
        assert variants(log) == [(("a",), 1), (("b",), 1)]


class TestEventLog:
    def test_counts_must_be_positive(self):
        with pytest.raises(ValueError):
            EventLog({("a",): 0})

    def test_labels_must_be_nonempty(self):
        with pytest.raises(ValueError):
            EventLog({("a", ""): 1})

    def test_counting_invariant(self):
        log = EventLog({("a",): 3, ("b", "c"): 1})
        assert log.total_traces >= len(log) >= 0
        assert log.total_traces == 4
        assert log.activities == {"a", "b", "c"}

    def test_from_traces_collapses(self):
        log = EventLog.from_traces([["a"], ["a"], ["b"]])
        assert log.variants == {("a",): 2, ("b",): 1}


class TestSublog:
    def test_containment_enforced(self):
        parent = EventLog({("a",): 2})
        sub = Sublog({("a",): 1}, parent=parent)
        assert sub.parent is parent
        with pytest.raises(ValueError):
            Sublog({("a",): 3}, parent=parent)
        with pytest.raises(ValueError):
            Sublog({("b",): 1}, parent=parent)
