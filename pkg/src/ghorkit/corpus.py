"""Bundled quivers and modules."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

CORPUS_DIR = Path(__file__).parent / "corpus"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: Path
    provenance: str


def _provenance(text: str) -> str:
    """The ``# provenance:`` comment and the comment lines continuing it."""
    lines = text.splitlines()
    for k, line in enumerate(lines):
        if line.startswith("# provenance:"):
            parts = [line[len("# provenance:"):].strip()]
            for more in lines[k + 1:]:
                if not more.startswith("#") or more.startswith("# provenance:"):
                    break
                parts.append(more.lstrip("#").strip())
            return " ".join(p for p in parts if p)
    return ""


def corpus_manifest(directory: Path | str | None = None) -> list[CorpusEntry]:
    root = Path(directory) if directory is not None else CORPUS_DIR
    if not root.is_dir():
        return []
    return [CorpusEntry(f.stem, f, _provenance(f.read_text(encoding="utf-8")))
            for f in sorted(root.glob("*.dqif"))]


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / name
