"""
Group files.

One group per UTF-8 file, ``.grp`` extension::

    # comment lines allowed
    degree 7
    name PSL(3,2)
    tags primitive, quasiprimitive, transitive
    gen (1 2 3 4 5 6 7)
    gen (2 3)(4 7)

``tags`` is optional. When a file is loaded the tags are recomputed from the
group itself; disagreements with the stated tags are kept as diagnostics on
the entry rather than raised.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from derangement_lab.analysis.blocks import is_primitive, is_quasiprimitive
from derangement_lab.core.group import DEFAULT_MAX_ORDER, PermGroup, enumerate_group
from derangement_lab.core.permutation import Permutation, parse_cycles
from derangement_lab.errors import (
    DerangementLabError,
    MalformedCycles,
    MalformedGroupFile,
    PointOutOfRange,
    UnknownGroup,
)

logger = logging.getLogger(__name__)

GROUP_FILE_SUFFIX = ".grp"

TAGS = frozenset({
    "transitive",
    "intransitive",
    "regular",
    "primitive",
    "imprimitive",
    "quasiprimitive",
})


class CatalogEntry(BaseModel):
    """A named group given by cycle-notation generators."""

    model_config = {"frozen": True}

    name: str
    degree: int = Field(gt=0)
    generators: tuple[str, ...] = ()
    tags: frozenset[str] = frozenset()
    source: str = "builtin"
    diagnostics: tuple[str, ...] = ()

    @field_validator("tags")
    @classmethod
    def _known_tags(cls, tags: frozenset[str]) -> frozenset[str]:
        unknown = tags - TAGS
        if unknown:
            raise ValueError(f"unknown tags: {', '.join(sorted(unknown))}")
        return tags

    def permutations(self) -> list[Permutation]:
        return [parse_cycles(g, self.degree) for g in self.generators]

    def to_group(self, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
        """Enumerate the group; ``OrderCapExceeded`` past ``max_order``."""
        return enumerate_group(self.permutations(), self.degree, max_order, name=self.name)


def compute_tags(G: PermGroup) -> frozenset[str]:
    if not G.is_transitive():
        return frozenset({"intransitive"})
    tags = {"transitive"}
    if G.order == G.degree:
        tags.add("regular")
    tags.add("primitive" if is_primitive(G) else "imprimitive")
    if is_quasiprimitive(G):
        tags.add("quasiprimitive")
    return frozenset(tags)


def tag_mismatches(entry: CatalogEntry, G: PermGroup) -> list[str]:
    """Stated tags that do not hold and holding tags that were not stated."""
    actual = compute_tags(G)
    out = [f"{entry.name}: tagged {t} but is not" for t in sorted(entry.tags - actual)]
    if entry.tags:
        out += [f"{entry.name}: is {t} but not tagged" for t in sorted(actual - entry.tags)]
    return out


# ----------------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------------

def parse_group_text(text: str, *, path: str | None = None, default_name: str = "") -> CatalogEntry:
    """
    Parse the text of a group file (tags are taken as written).

    Raises:
        MalformedGroupFile: unknown keyword, missing or repeated ``degree``.
        PointOutOfRange, MalformedCycles: a ``gen`` line is bad; ``line`` is set.
    """
    degree: int | None = None
    name = ""
    tags: frozenset[str] = frozenset()
    gens: list[tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "degree":
            if degree is not None:
                raise MalformedGroupFile("degree given twice", path=path, line=lineno)
            try:
                degree = int(rest)
            except ValueError:
                raise MalformedGroupFile(f"degree {rest!r} is not an integer", path=path, line=lineno) from None
            if degree < 1:
                raise MalformedGroupFile("degree must be positive", path=path, line=lineno)
        elif keyword == "name":
            name = rest
        elif keyword == "tags":
            tags = frozenset(t.strip() for t in rest.replace(",", " ").split() if t.strip())
            unknown = tags - TAGS
            if unknown:
                raise MalformedGroupFile(
                    f"unknown tags: {', '.join(sorted(unknown))}", path=path, line=lineno,
                )
        elif keyword == "gen":
            gens.append((lineno, rest))
        else:
            raise MalformedGroupFile(f"unknown keyword {keyword!r}", path=path, line=lineno)

    if degree is None:
        raise MalformedGroupFile("missing 'degree' line", path=path)
    for lineno, gen in gens:
        try:
            parse_cycles(gen, degree)
        except (PointOutOfRange, MalformedCycles) as exc:
            exc.path, exc.line = path, lineno
            raise
    return CatalogEntry(
        name=name or default_name or "unnamed",
        degree=degree,
        generators=tuple(g for _, g in gens),
        tags=tags,
        source=path or "text",
    )


def load_group_file(path: Path | str, max_order: int = DEFAULT_MAX_ORDER) -> CatalogEntry:
    """
    Read, parse and tag-check one group file.

    The returned entry carries the recomputed tags; mismatches against the
    file's stated tags become ``diagnostics``.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UnknownGroup(f"cannot read {path}: {exc.strerror}") from None
    entry = parse_group_text(text, path=str(path), default_name=path.stem)
    G = entry.to_group(max_order)
    issues = tag_mismatches(entry, G)
    for issue in issues:
        logger.warning("%s", issue)
    return entry.model_copy(update={"tags": compute_tags(G), "diagnostics": tuple(issues)})


@dataclass
class DirectoryLoad:
    entries: list[CatalogEntry] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def load_directory(path: Path | str, max_order: int = DEFAULT_MAX_ORDER) -> DirectoryLoad:
    """
    Load every ``.grp`` file directly inside ``path``, in name order.

    A file that fails to load becomes one diagnostic; the others still load.
    """
    root = Path(path)
    if not root.is_dir():
        raise UnknownGroup(f"{root} is not a directory")
    result = DirectoryLoad()
    for file in sorted(p for p in root.iterdir() if p.suffix == GROUP_FILE_SUFFIX and p.is_file()):
        try:
            entry = load_group_file(file, max_order)
        except DerangementLabError as exc:
            if exc.path is None:
                exc.path = str(file)
            result.diagnostics.append(exc.located())
            continue
        result.entries.append(entry)
        result.diagnostics.extend(entry.diagnostics)
    logger.debug("loaded %d group files from %s", len(result.entries), root)
    return result


def serialize_entry(entry: CatalogEntry) -> str:
    """Group-file text for ``entry``; ``parse_group_text`` inverts it."""
    lines = [f"degree {entry.degree}", f"name {entry.name}"]
    if entry.tags:
        lines.append("tags " + ", ".join(sorted(entry.tags)))
    lines += [f"gen {g}" for g in entry.generators]
    return "\n".join(lines) + "\n"
