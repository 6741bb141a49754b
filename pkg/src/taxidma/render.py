"""Human-readable reports: record summaries, corpus tables, taxonomy reference.

All renderers are deterministic byte-for-byte for identical inputs and
format flag. Markdown output sticks to headings, nested lists, tables,
and code spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, corpus_stage_census
from .errors import InvalidRecordError
from .model import BACKGROUND_ID, KIND_FREE_TEXT, Facet, TaxonomyDefinition, TaxonomySet, ValueNode
from .query import CoverageReport, Histogram
from .records import AttackRecord, ClassificationBlock, Selection, validate_record

FORMAT_MARKDOWN = "markdown"
FORMAT_PLAIN = "plain"

COVERAGE_FOOTNOTE = (
    "Coverage fractions are a tool-side metric over leaf values; "
    "they are not part of the classification scheme."
)


@dataclass(frozen=True)
class RenderedReport:
    format: str
    body: str
    generated_from: str

    def to_dict(self) -> dict:
        return {"format": self.format, "generated_from": self.generated_from, "body": self.body}


class _Writer:
    """Emits either markdown or a plain-text approximation of it."""

    def __init__(self, format: str):
        if format not in (FORMAT_MARKDOWN, FORMAT_PLAIN):
            raise ValueError(f"unknown report format {format!r}")
        self.format = format
        self.lines: list[str] = []

    @property
    def markdown(self) -> bool:
        return self.format == FORMAT_MARKDOWN

    def blank(self) -> None:
        if self.lines and self.lines[-1] != "":
            self.lines.append("")

    def heading(self, level: int, text: str) -> None:
        self.blank()
        if self.markdown:
            self.lines.append("#" * level + " " + text)
        elif level == 1:
            self.lines.append(text)
            self.lines.append("=" * len(text))
        elif level == 2:
            self.lines.append(text)
            self.lines.append("-" * len(text))
        else:
            self.lines.append(text + ":")
        self.blank()

    def bullet(self, text: str, indent: int = 0) -> None:
        self.lines.append("  " * indent + "- " + text)

    def line(self, text: str) -> None:
        self.lines.append(text)

    def table(self, header: list[str], rows: list[list[str]]) -> None:
        self.blank()
        self.lines.append("| " + " | ".join(header) + " |")
        if self.markdown:
            self.lines.append("|" + "|".join(" --- " for _ in header) + "|")
        for row in rows:
            self.lines.append("| " + " | ".join(row) + " |")
        self.blank()

    def code(self, text: str) -> str:
        return f"`{text}`" if self.markdown else text

    def body(self) -> str:
        while self.lines and self.lines[-1] == "":
            self.lines.pop()
        return "\n".join(self.lines) + "\n"


def _value_title(facet: Facet, value_path: str) -> str:
    titles = []
    nodes: tuple[ValueNode, ...] = facet.values
    for slug in value_path.split("/"):
        node = next((n for n in nodes if n.slug == slug), None)
        if node is None:
            return value_path
        titles.append(node.title)
        nodes = node.children
    return " / ".join(titles)


def _selection_text(facet: Facet, selection: Selection) -> str:
    if facet.kind == KIND_FREE_TEXT:
        shown = f"“{selection.text}”"
    else:
        shown = ", ".join(_value_title(facet, v) for v in selection.values)
    if selection.note:
        shown += f" (note: {selection.note})"
    return shown


def _render_block(w: _Writer, block: ClassificationBlock, definition: TaxonomyDefinition) -> None:
    by_facet = {s.facet: s for s in block.selections}
    unspecified: list[str] = []
    for category in definition.categories:
        specified = [f for f in category.facets if f"{category.slug}/{f.slug}" in by_facet]
        missing = [f for f in category.facets if f"{category.slug}/{f.slug}" not in by_facet]
        unspecified.extend(f"{category.title}: {f.title}" for f in missing)
        if not specified:
            continue
        w.heading(3, category.title)
        for facet in specified:
            selection = by_facet[f"{category.slug}/{facet.slug}"]
            w.bullet(f"{facet.title}: {_selection_text(facet, selection)}")
    if unspecified:
        w.heading(3, "Not determinable")
        for entry in unspecified:
            w.bullet(entry)


def render_record_report(
    record: AttackRecord, tset: TaxonomySet, format: str = FORMAT_MARKDOWN
) -> RenderedReport:
    """Narrative summary of one record: background first, then each stage.

    Facet lines show the facet title, the selected value titles, and the
    note; facets absent from a block are listed as not determinable.
    """
    report = validate_record(record, tset)
    if not report.ok:
        raise InvalidRecordError(f"record {record.record_id!r} has validation errors", report.errors)

    w = _Writer(format)
    w.heading(1, record.title)
    w.bullet(f"Record: {w.code(record.record_id)}")
    w.bullet(f"Year: {record.year}")
    if record.sources:
        w.bullet("Sources:")
        for source in record.sources:
            w.bullet(source, indent=1)
    if record.notes:
        w.bullet(f"Notes: {record.notes}")

    w.heading(2, f"Background ({tset.get(BACKGROUND_ID).title})")
    _render_block(w, record.background, tset.get(BACKGROUND_ID))

    for index, stage in enumerate(record.stages):
        definition = tset.get(stage.taxonomy)
        label = f": {stage.label}" if stage.label else ""
        w.heading(2, f"Stage {index + 1} ({definition.title}){label}")
        _render_block(w, stage.block, definition)

    return RenderedReport(format, w.body(), f"{record.record_id}@{tset.set_version}")


def _year_cell(years: list[int]) -> str:
    distinct = sorted(set(years))
    if not distinct:
        return "-"
    if len(distinct) > 3:
        return f"{distinct[0]}-{distinct[-1]}"
    return ", ".join(str(y) for y in distinct)


def render_corpus_table(
    corpus: Corpus, tset: TaxonomySet, format: str = FORMAT_MARKDOWN
) -> RenderedReport:
    """Census table over the corpus: per-record rows, year row, amount row."""
    census = corpus_stage_census(corpus, tset)
    columns = [BACKGROUND_ID, *tset.detail_ids]
    titles = {t.id: t.title for t in tset.taxonomies}

    w = _Writer(format)
    w.heading(1, f"Corpus overview ({corpus.set_version})")
    header = ["Record", *[titles.get(c, c) for c in columns]]
    rows = []
    for record in corpus.records:
        used = {stage.taxonomy for stage in record.stages}
        marks = ["x"] + ["x" if c in used else "" for c in columns[1:]]
        rows.append([record.record_id, *marks])
    years: dict[str, list[int]] = {c: [] for c in columns}
    for record in corpus.records:
        years[BACKGROUND_ID].append(record.year)
        for taxonomy_id in {stage.taxonomy for stage in record.stages}:
            if taxonomy_id in years:
                years[taxonomy_id].append(record.year)
    rows.append(["Year", *[_year_cell(years[c]) for c in columns]])
    rows.append(["Amount", *[str(census[c]) for c in columns]])
    w.table(header, rows)
    w.line(f"Total records: {len(corpus.records)}")
    return RenderedReport(format, w.body(), f"corpus@{corpus.set_version}")


def _render_values(w: _Writer, values: tuple[ValueNode, ...], indent: int) -> None:
    for node in values:
        text = f"{node.title} ({w.code(node.slug)})"
        if node.citation:
            text += f" [{node.citation}]"
        w.bullet(text, indent=indent)
        _render_values(w, node.children, indent + 1)


def render_taxonomy_reference(tset: TaxonomySet, format: str = FORMAT_MARKDOWN) -> RenderedReport:
    """Reference documentation for every taxonomy in the set."""
    w = _Writer(format)
    for definition in tset.taxonomies:
        w.heading(1, f"{definition.title} ({w.code(definition.id)}, version {definition.version})")
        for category in definition.categories:
            w.heading(2, category.title)
            for facet in category.facets:
                w.heading(3, f"{facet.title} ({w.code(f'{category.slug}/{facet.slug}')})")
                w.line(f"Kind: {facet.kind}; cardinality: {facet.cardinality}.")
                if facet.values:
                    w.blank()
                    _render_values(w, facet.values, 0)
                else:
                    w.blank()
                    w.line("Free text; no fixed value list.")
    return RenderedReport(format, w.body(), f"taxonomy-set@{tset.set_version}")


def render_histogram(histogram: Histogram, format: str = FORMAT_PLAIN) -> RenderedReport:
    """One line per bucket in tree order, then unspecified and the total."""
    w = _Writer(format)
    scope = histogram.taxonomy or histogram.scope
    w.heading(2, f"{histogram.facet} ({scope})")
    for path, count in histogram.buckets:
        w.bullet(f"{path}: {count}")
    w.bullet(f"(unspecified): {histogram.unspecified}")
    w.line(f"Total records: {histogram.total}")
    return RenderedReport(format, w.body(), f"histogram:{scope}:{histogram.facet}")


def render_coverage(report: CoverageReport, format: str = FORMAT_PLAIN) -> RenderedReport:
    """Coverage fractions per taxonomy plus the never-used leaf paths."""
    w = _Writer(format)
    w.heading(2, "Taxonomy coverage")
    for entry in report.entries:
        pct = float(entry.fraction) * 100.0
        w.bullet(f"{entry.taxonomy}: {entry.used_leaves}/{entry.total_leaves} leaves ({pct:.1f}%)")
        for path in entry.unused:
            w.bullet(path, indent=1)
    w.blank()
    w.line(COVERAGE_FOOTNOTE)
    return RenderedReport(format, w.body(), "coverage")
