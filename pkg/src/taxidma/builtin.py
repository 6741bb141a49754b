"""Access to the embedded TaxIdMA taxonomy set and its data files."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import UnknownVersionError
from .model import TaxonomySet, parse_taxonomy

DEFAULT_SET_VERSION = "taxidma-2022.1"
DETAIL_IDS = ("system-identities", "idms", "end-user-identities")
TAXONOMY_IDS = ("background",) + DETAIL_IDS

KNOWN_SET_VERSIONS = (DEFAULT_SET_VERSION,)


def data_dir():
    return resources.files("taxidma") / "data"


def read_data_text(relative: str) -> str:
    return (data_dir() / relative).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_builtin(set_version: str = DEFAULT_SET_VERSION) -> TaxonomySet:
    """Loads an embedded taxonomy set version.

    Raises UnknownVersionError for versions that are not shipped with the
    package. The returned set is immutable and shared across callers.
    """
    if set_version not in KNOWN_SET_VERSIONS:
        raise UnknownVersionError(set_version, KNOWN_SET_VERSIONS)
    taxonomies = tuple(
        parse_taxonomy(read_data_text(f"taxonomies/{taxonomy_id}.json"))
        for taxonomy_id in TAXONOMY_IDS
    )
    return TaxonomySet(set_version=set_version, taxonomies=taxonomies, detail_ids=DETAIL_IDS)
