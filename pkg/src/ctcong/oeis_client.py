"""OEIS lookups, offline against bundled terms or online via the JSON search endpoint."""

from __future__ import annotations

import json
import re
import urllib.parse
import urllib.request
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

MIN_TERMS = 6
SEARCH_URL = "https://oeis.org/search"
_ID = re.compile(r"A\d{6}")


@dataclass(frozen=True)
class OeisMatch:
    terms: tuple
    ids: tuple
    source: str  # "fixture", "network" or "fixture-fallback"
    error: str | None = None

    def to_dict(self) -> dict:
        d = {"terms": list(self.terms), "ids": list(self.ids), "source": self.source}
        if self.error:
            d["error"] = self.error
        return d


def parse_fixtures(text: str) -> dict:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        if not _ID.fullmatch(key):
            raise ValueError(f"line {n}: bad OEIS id {key!r}")
        out[key] = tuple(int(t) for t in rest.split(","))
    return out


@lru_cache(maxsize=1)
def fixtures() -> dict:
    text = resources.files("ctcong").joinpath("data/oeis_fixtures.txt").read_text()
    return parse_fixtures(text)


def _contains(seq, query) -> bool:
    n = len(query)
    return any(seq[i : i + n] == query for i in range(len(seq) - n + 1))


def lookup_offline(terms) -> OeisMatch:
    q = tuple(int(t) for t in terms)
    ids = tuple(sorted(k for k, seq in fixtures().items() if _contains(seq, q)))
    return OeisMatch(q, ids, "fixture")


def _ids_in(obj) -> list:
    # take only the "number" fields so layout changes elsewhere do not matter
    found = []
    if isinstance(obj, dict):
        num = obj.get("number")
        if isinstance(num, int):
            found.append(f"A{num:06d}")
        for v in obj.values():
            if isinstance(v, (dict, list)):
                found.extend(_ids_in(v))
    elif isinstance(obj, list):
        for v in obj:
            found.extend(_ids_in(v))
    return found


def lookup_online(terms, timeout: float = 10.0) -> OeisMatch:
    q = tuple(int(t) for t in terms)
    query = urllib.parse.urlencode({"q": ",".join(map(str, q)), "fmt": "json"})
    try:
        with urllib.request.urlopen(f"{SEARCH_URL}?{query}", timeout=timeout) as resp:
            payload = json.loads(resp.read().decode("utf-8"))
    except (OSError, ValueError) as exc:
        offline = lookup_offline(q)
        return OeisMatch(q, offline.ids, "fixture-fallback", f"{type(exc).__name__}: {exc}")
    ids = tuple(dict.fromkeys(_ids_in(payload)))
    return OeisMatch(q, ids, "network")


def lookup(terms, mode: str = "offline") -> OeisMatch:
    terms = list(terms)
    if len(terms) < MIN_TERMS:
        raise ValueError(f"need at least {MIN_TERMS} terms, got {len(terms)}")
    if mode == "offline":
        return lookup_offline(terms)
    if mode == "online":
        return lookup_online(terms)
    raise ValueError(f"mode must be 'offline' or 'online', got {mode!r}")
