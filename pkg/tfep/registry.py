"""
Scenario lookup for the reproduce, list and info commands.

Importing every module under tfep.scenarios defines the preset classes;
the registry then collects the Scenario subclasses that live there, in the
order they were declared. A scenario's collection is the subpackage that
holds it (one_sample, two_sample).
"""

import importlib
import logging
import pkgutil

import tfep.scenarios
from tfep.base import Scenario
from tfep.errors import UsageError

logger = logging.getLogger(__name__)

_PREFIX = tfep.scenarios.__name__ + "."


def _subclasses(cls: type[Scenario]) -> list[type[Scenario]]:
    found = []
    for sub in cls.__subclasses__():
        found.append(sub)
        found.extend(_subclasses(sub))
    return found


def _collection_of(cls: type[Scenario]) -> str:
    # tfep.scenarios.two_sample.skewed -> two_sample
    return cls.__module__.removeprefix(_PREFIX).split(".")[0]


class Registry:
    """Published scenarios by key and by collection."""

    def __init__(self):
        self._by_key: dict[str, type[Scenario]] | None = None

    def _scenarios(self) -> dict[str, type[Scenario]]:
        if self._by_key is None:
            for info in pkgutil.walk_packages(tfep.scenarios.__path__, prefix=_PREFIX):
                importlib.import_module(info.name)
            self._by_key = {}
            for cls in _subclasses(Scenario):
                if cls.key and cls.__module__.startswith(_PREFIX):
                    self.add(cls)
            logger.debug("Found %d scenarios", len(self._by_key))
        return self._by_key

    def add(self, cls: type[Scenario]) -> None:
        """Register a scenario; a second class under the same key is an error."""
        by_key = self._by_key if self._by_key is not None else self._scenarios()
        existing = by_key.get(cls.key)
        if existing is not None and existing is not cls:
            raise ValueError(
                f"Duplicate scenario key {cls.key!r}: {existing.__qualname__} "
                f"and {cls.__qualname__}"
            )
        by_key[cls.key] = cls

    def get(self, key: str) -> type[Scenario]:
        """
        The scenario registered under key.

        Raises:
            UsageError: If no scenario has that key.
        """
        try:
            return self._scenarios()[key]
        except KeyError:
            raise UsageError(f"No scenario found for key: {key}") from None

    def collections(self) -> dict[str, list[type[Scenario]]]:
        """Scenarios grouped by collection, sorted by collection name."""
        grouped: dict[str, list[type[Scenario]]] = {}
        for cls in self._scenarios().values():
            grouped.setdefault(_collection_of(cls), []).append(cls)
        return dict(sorted(grouped.items()))

    def keys(self) -> list[str]:
        return list(self._scenarios())

    def __iter__(self):
        return iter(self._scenarios().values())

    def __len__(self) -> int:
        return len(self._scenarios())

    def __repr__(self) -> str:
        return f"Registry({len(self)} scenarios in {len(self.collections())} collections)"


registry = Registry()
