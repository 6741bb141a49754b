"""Interactive classification wizard: background first, then stage loops.

Choice lists are generated from the loaded taxonomy set, so extension
taxonomies show up automatically. The wizard never invents values and the
resulting record validates without errors by construction.
"""

from __future__ import annotations

import sys
from typing import TextIO

from .errors import TaxidmaError
from .model import (
    CARD_ONE,
    KIND_FREE_TEXT,
    SLUG_RE,
    Facet,
    TaxonomyDefinition,
    TaxonomySet,
    ValueNode,
)
from .records import AttackRecord, ClassificationBlock, Selection, Stage

STAGE_CHOICES = {
    "system": "system-identities",
    "idms": "idms",
    "end-user": "end-user-identities",
}


class WizardAborted(TaxidmaError):
    """Session ended early (EOF); nothing should be written."""


class _Session:
    def __init__(self, reader: TextIO, writer: TextIO):
        self.reader = reader
        self.writer = writer

    def say(self, text: str = "") -> None:
        self.writer.write(text + "\n")

    def ask(self, prompt: str) -> str:
        self.writer.write(prompt)
        self.writer.flush()
        line = self.reader.readline()
        if line == "":
            raise WizardAborted("session aborted before completion")
        return line.strip()

    def ask_nonempty(self, prompt: str) -> str:
        while True:
            answer = self.ask(prompt)
            if answer:
                return answer
            self.say("A value is required.")

    def ask_slug(self, prompt: str) -> str:
        while True:
            answer = self.ask(prompt).lower()
            if SLUG_RE.match(answer):
                return answer
            self.say("Use lowercase letters, digits, and dashes only.")

    def ask_int(self, prompt: str) -> int:
        while True:
            answer = self.ask(prompt)
            try:
                return int(answer)
            except ValueError:
                self.say("Enter a whole number.")


def _flatten_values(values: tuple[ValueNode, ...], depth: int = 0, prefix: str = ""):
    for node in values:
        path = f"{prefix}/{node.slug}" if prefix else node.slug
        yield path, node, depth
        yield from _flatten_values(node.children, depth + 1, path)


def _prompt_facet(session: _Session, facet: Facet, facet_path: str) -> Selection | None:
    session.say()
    session.say(f"{facet.title} ({facet_path})")

    if facet.kind == KIND_FREE_TEXT:
        text = session.ask("  Free text (empty to skip): ")
        if not text:
            return None
        return Selection(facet=facet_path, text=text)

    entries = list(_flatten_values(facet.values))
    for number, (path, node, depth) in enumerate(entries, start=1):
        marker = "" if node.is_leaf else " >"
        session.say(f"  {number:>3}. {'  ' * depth}{node.title}{marker}")
    if facet.cardinality == CARD_ONE:
        hint = "choose one number, or s to skip"
    else:
        hint = "choose numbers separated by commas, or s to skip"

    while True:
        answer = session.ask(f"  Selection ({hint}): ").lower()
        if answer in ("", "s", "skip"):
            return None
        try:
            picks = [int(p) for p in answer.replace(" ", "").split(",") if p]
        except ValueError:
            session.say("  Enter numbers from the list.")
            continue
        if not picks or any(p < 1 or p > len(entries) for p in picks):
            session.say(f"  Choose numbers between 1 and {len(entries)}.")
            continue
        if facet.cardinality == CARD_ONE and len(set(picks)) > 1:
            session.say("  This facet takes a single value.")
            continue
        values = tuple(dict.fromkeys(entries[p - 1][0] for p in picks))
        note = session.ask("  Note (optional): ")
        return Selection(facet=facet_path, values=values, note=note or None)


def _classify_block(session: _Session, definition: TaxonomyDefinition) -> tuple[Selection, ...]:
    selections = []
    for category in definition.categories:
        session.say()
        session.say(f"== {category.title} ==")
        for facet in category.facets:
            selection = _prompt_facet(session, facet, f"{category.slug}/{facet.slug}")
            if selection is not None:
                selections.append(selection)
    return tuple(selections)


def run_wizard(
    tset: TaxonomySet,
    reader: TextIO | None = None,
    writer: TextIO | None = None,
) -> AttackRecord:
    """Walks an analyst through one record and returns it.

    Raises WizardAborted on EOF; invalid manual entry re-prompts instead
    of producing a defective record.
    """
    session = _Session(reader or sys.stdin, writer or sys.stdout)
    session.say(f"Classifying a new attack record (set {tset.set_version}).")

    record_id = session.ask_slug("Record id (slug): ")
    title = session.ask_nonempty("Title: ")
    year = session.ask_int("Year: ")
    sources_raw = session.ask("Sources (comma-separated, optional): ")
    sources = tuple(s.strip() for s in sources_raw.split(",") if s.strip())
    notes = session.ask("Notes (optional): ")

    session.say()
    session.say(f"-- {tset.background.title} --")
    background = ClassificationBlock(
        taxonomy=tset.background.id,
        selections=_classify_block(session, tset.background),
    )

    stages: list[Stage] = []
    choice_names = [k for k, v in STAGE_CHOICES.items() if v in tset.detail_ids]
    choice_names += [d for d in tset.detail_ids if d not in STAGE_CHOICES.values()]
    menu = "/".join(choice_names + ["done"])
    while True:
        answer = session.ask(f"\nAdd stage? ({menu}): ").lower()
        if answer == "done":
            break
        taxonomy_id = STAGE_CHOICES.get(answer, answer)
        definition = tset.get(taxonomy_id)
        if definition is None or taxonomy_id not in tset.detail_ids:
            session.say(f"Choose one of: {menu}.")
            continue
        label = session.ask("Stage label (optional): ")
        session.say()
        session.say(f"-- Stage {len(stages) + 1}: {definition.title} --")
        block = ClassificationBlock(
            taxonomy=taxonomy_id,
            selections=_classify_block(session, definition),
        )
        stages.append(Stage(block=block, label=label))

    return AttackRecord(
        record_id=record_id,
        title=title,
        year=year,
        sources=sources,
        background=background,
        stages=tuple(stages),
        notes=notes,
    )
