"""Exception types shared across the taxidma package."""

from __future__ import annotations


class TaxidmaError(Exception):
    """Base class for all taxidma errors."""


class UnknownVersionError(TaxidmaError):
    """Requested built-in taxonomy set version is not embedded."""

    def __init__(self, version: str, known: tuple[str, ...]):
        self.version = version
        self.known = known
        super().__init__(f"unknown set version {version!r}; known: {', '.join(known)}")


class DocumentSyntaxError(TaxidmaError):
    """Input document is not well-formed (bad JSON)."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"syntax error at line {line}, column {column}: {message}")


class SchemaError(TaxidmaError):
    """Document is well-formed JSON but violates the file schema."""

    def __init__(self, message: str, path: str = "", rule_id: str = "schema"):
        self.path = path
        self.rule_id = rule_id
        super().__init__(f"{message}" + (f" (at {path})" if path else ""))


class PathNotFoundError(TaxidmaError):
    """A taxonomy, facet, or value path did not resolve.

    ``kind`` names the first missing component: "taxonomy", "category",
    "facet", or "value".
    """

    def __init__(self, kind: str, path: str, taxonomy_id: str | None = None):
        self.kind = kind
        self.path = path
        self.taxonomy_id = taxonomy_id
        where = f" in taxonomy {taxonomy_id!r}" if taxonomy_id else ""
        super().__init__(f"unknown {kind}: {path!r}{where}")


class ExtensionError(TaxidmaError):
    """Extension taxonomy violates the namespacing rules."""


class InvalidRecordError(TaxidmaError):
    """Operation requires a record that validates without errors."""

    def __init__(self, message: str, defects=None):
        self.defects = tuple(defects or ())
        super().__init__(message)


class SetMismatchError(TaxidmaError):
    """Records handed to a comparison do not share a valid taxonomy set."""


class PredicateError(TaxidmaError):
    """Query predicate text could not be parsed or resolved."""
