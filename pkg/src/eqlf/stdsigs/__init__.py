"""The bundled example signatures.

Each corpus entry is a list of ``.eqlf`` files concatenated in order, so
the later signatures reuse the dependent prelude without a module system.
Constant names are ASCII: ``nat-beta-z`` is spelled ``nat_beta_z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from eqlf.core import Telescope
from eqlf.sigparse import parse_signature


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    files: tuple[str, ...]
    reductions: int
    expansions: int
    description: str

    @property
    def expected_rule_count(self) -> int:
        return self.reductions + self.expansions

    @property
    def file_paths(self) -> list[Path]:
        return [data_path(f) for f in self.files]


_ENTRIES = (
    CorpusEntry("godel_t", ("godel_t",), 3, 1, "Goedel's T"),
    CorpusEntry("dependent_t", ("dependent_t",), 3, 1, "dependent Goedel's T"),
    CorpusEntry("eq_type", ("dependent_t", "eq_type"), 3, 1, "extensional equality type"),
    CorpusEntry("id_type", ("dependent_t", "id_type"), 4, 1, "intensional identity type"),
    CorpusEntry(
        "universes", ("dependent_t", "eq_type", "universes"), 8, 1, "Tarskian universes over levels"
    ),
    CorpusEntry("sigma_neg", ("dependent_t", "sigma_neg"), 5, 2, "dependent sums with projections"),
    CorpusEntry("sigma_pos", ("dependent_t", "sigma_pos"), 4, 1, "dependent sums with splitting"),
)

# demo programs: not part of the checked corpus proper
_DEMOS = {
    "arith": ("godel_t", "arith"),
    "arith_dep": ("dependent_t", "arith_dep"),
}


def corpus() -> list[CorpusEntry]:
    return list(_ENTRIES)


def ids() -> list[str]:
    return [e.id for e in _ENTRIES]


def entry(id: str) -> CorpusEntry:
    for e in _ENTRIES:
        if e.id == id:
            return e
    raise KeyError(f"unknown corpus signature {id!r}; known: {', '.join(ids())}")


def data_path(stem: str) -> Path:
    return Path(str(resources.files(__name__).joinpath("data", f"{stem}.eqlf")))


def bundled_files() -> list[str]:
    return sorted(p.stem for p in data_path("godel_t").parent.glob("*.eqlf"))


def source(id: str) -> str:
    """Concatenated text of a corpus entry or demo."""
    files = _DEMOS[id] if id in _DEMOS else entry(id).files
    return "\n".join(data_path(f).read_text(encoding="utf-8") for f in files)


@lru_cache(maxsize=None)
def load(id: str) -> Telescope:
    """Parsed signature of a corpus entry (or demo), declarations in order."""
    decls = parse_signature(source(id), file=f"{id}.eqlf")
    return Telescope.of((d.name, d.cls) for d in decls)
