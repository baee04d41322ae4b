"""Command-line session state and its JSON file format.

File layout (version 1)::

    {
      "version": 1,
      "atoms": ["t1", "t2", ...] | null,
      "propositions": {"loses_1": "0x3fe", ...},
      "credal": {"atoms": [...], "points": [["1/2", ...], ...]} | null,
      "acceptance_level": "99/100" | null,
      "history": [["lottery", "--tickets", "1000", ...], ...]
    }

Propositions are stored as hexadecimal atom bitmasks (bit i = atom i) so a
1000-ticket lottery registry stays small.  Rationals are ``"num/den"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .algebra import Proposition, WorldSpace
from .corpus import Corpus
from .credal import CredalSet
from .errors import InvariantError, ProbinfError
from .rational import format_fraction, to_fraction

SESSION_VERSION = 1


class SessionFormatError(ProbinfError):
    pass


@dataclass(frozen=True)
class Session:
    space: WorldSpace | None = None
    names: Mapping[str, Proposition] = field(default_factory=dict)
    credal: CredalSet | None = None
    level: Fraction | None = None
    history: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.credal is not None and self.credal.space != self.space:
            raise InvariantError("session credal set is over a different space")
        for name, prop in self.names.items():
            if prop.space != self.space:
                raise InvariantError(f"proposition {name!r} is over a different space")

    @property
    def corpus(self) -> Corpus | None:
        if self.credal is None or self.level is None:
            return None
        return Corpus(self.credal, self.level)

    def bindings(self) -> dict[str, Proposition]:
        """Atom labels bound to singletons, overridden by named propositions."""
        out = self.space.atom_bindings() if self.space is not None else {}
        out.update(self.names)
        return out

    def evolve(self, command, **changes) -> Session:
        return replace(self, history=self.history + (tuple(command),), **changes)

    def to_json(self) -> dict:
        return {
            "version": SESSION_VERSION,
            "atoms": list(self.space.atoms) if self.space is not None else None,
            "propositions": {name: hex(p.mask) for name, p in self.names.items()},
            "credal": self.credal.to_json() if self.credal is not None else None,
            "acceptance_level": format_fraction(self.level) if self.level is not None else None,
            "history": [list(cmd) for cmd in self.history],
        }

    @classmethod
    def from_json(cls, data) -> Session:
        if not isinstance(data, dict):
            raise SessionFormatError("session file must hold a JSON object")
        version = data.get("version")
        if version != SESSION_VERSION:
            raise SessionFormatError(
                f"unsupported session version {version!r} (expected {SESSION_VERSION})"
            )
        atoms = data.get("atoms")
        space = WorldSpace(tuple(atoms)) if atoms is not None else None
        names = {}
        for name, mask in (data.get("propositions") or {}).items():
            if space is None:
                raise SessionFormatError("propositions present without a world space")
            try:
                value = int(mask, 16)
            except (TypeError, ValueError):
                raise SessionFormatError(f"proposition {name!r}: bad mask {mask!r}") from None
            names[name] = Proposition(space, value, name=name)
        credal = CredalSet.from_json(data["credal"]) if data.get("credal") is not None else None
        level = data.get("acceptance_level")
        level = to_fraction(level) if level is not None else None
        history = tuple(tuple(str(tok) for tok in cmd) for cmd in data.get("history") or ())
        session = cls(space, names, credal, level, history)
        if session.level is not None and session.credal is not None:
            session.corpus  # validates the acceptance level
        return session


def save(session: Session, path) -> None:
    Path(path).write_text(json.dumps(session.to_json(), indent=1) + "\n")


def load(path) -> Session:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionFormatError(
            f"malformed session file {path}: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None
    return Session.from_json(data)
