"""Run verifiers over a list of elements and collect a report."""

from __future__ import annotations

import datetime as _dt
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import inequalities as ineq
from . import parallelism as par
from .algebra import AlgebraElement, as_element
from .ensembles import rng_stream
from .errors import InapplicableInput, UnknownTag
from .numrange import DEFAULT_GRID

__all__ = ["SINGLE_TAGS", "PAIR_TAGS", "ALL_TAGS", "RunReport", "run_suite", "worker_count"]

SINGLE_TAGS = {
    "eq11": ineq.check_basic_bounds,
    "thm23": ineq.check_thm23,
    "thm28": ineq.check_thm28,
    "thm29": ineq.check_thm29,
    "cor24": ineq.check_cor24,
    "cor25": ineq.check_cor25,
}
PAIR_TAGS = {
    "lem210": lambda x, y, grid: ineq.check_lemma210(x, y),
    "thm211": ineq.check_thm211,
    "thm213": par.check_thm213_equivalence,
    "cor212": par.check_cor212,
    "central": None,  # needs a central unitary, built per pair below
}
ALL_TAGS = frozenset(SINGLE_TAGS) | frozenset(PAIR_TAGS)


def worker_count() -> int:
    """Worker threads, capped by ``NUMRAD_THREADS`` when set."""
    n = os.cpu_count() or 1
    cap = os.environ.get("NUMRAD_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


@dataclass
class RunReport:
    version: str
    config: dict
    entries: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    timestamp: str = ""

    @property
    def ok(self) -> bool:
        return self.summary.get("fail", 0) == 0

    def to_dict(self) -> dict:
        return {"version": self.version, "timestamp": self.timestamp, "config": self.config,
                "summary": self.summary, "entries": self.entries}


def _central_unitary(x: AlgebraElement, seed: int, index: int) -> AlgebraElement:
    rng = rng_stream(seed, index + 1)[index]
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, x.nblocks))
    return AlgebraElement.scalar_blocks(phases, [b.shape[0] for b in x.blocks])


def _job(tag: str, index: int, args: tuple, grid: int, seed: int, tol):
    entry = {"index": index, "tag": tag}
    try:
        if tag in SINGLE_TAGS:
            rep = SINGLE_TAGS[tag](args[0], grid)
        elif tag == "central":
            c = _central_unitary(args[0], seed, index)
            rep = par.check_central_invariance(args[0], args[1], c, grid)
        else:
            rep = PAIR_TAGS[tag](args[0], args[1], grid)
    except InapplicableInput as exc:
        entry.update(status="inapplicable", marginal=False, reason=str(exc), report=None)
        return entry
    override = tol.get(tag) if isinstance(tol, dict) else tol
    if override is not None:
        rep.tol = float(override)
        rep.finalize()
    entry.update(status="pass" if rep.passed else "fail",
                 marginal=bool(rep.flags.get("marginal", False)), report=rep.to_dict())
    return entry


def run_suite(elements, which=None, grid: int = DEFAULT_GRID, tol=None, seed: int = 0,
              pairs=None, version: str | None = None) -> RunReport:
    """Run the verifiers named in ``which`` over ``elements``.

    Single-element tags run on every element.  Pair tags run on
    ``pairs`` (index pairs into ``elements``) or, by default, on the
    disjoint consecutive pairs ``(0, 1), (2, 3), ...``; a pair entry carries
    the index of its first element.  ``tol`` is a float or a per-tag dict
    that replaces the reports' own tolerance.  Entries are sorted by index,
    then tag, whatever order the workers finish in.
    """
    from . import __version__

    which = set(ALL_TAGS if which is None else which)
    unknown = which - ALL_TAGS
    if unknown:
        raise UnknownTag(", ".join(sorted(unknown)))
    elements = [as_element(e) for e in elements]
    if pairs is None:
        pairs = [(i, i + 1) for i in range(0, len(elements) - 1, 2)]
    jobs = []
    for tag in sorted(which):
        if tag in SINGLE_TAGS:
            jobs += [(tag, i, (e,)) for i, e in enumerate(elements)]
        else:
            jobs += [(tag, i, (elements[i], elements[j])) for i, j in pairs]
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        entries = list(pool.map(lambda j: _job(*j, grid, seed, tol), jobs))
    entries.sort(key=lambda e: (e["index"], e["tag"]))
    summary = {"total": len(entries), "pass": 0, "fail": 0, "inapplicable": 0, "marginal": 0}
    for e in entries:
        summary[e["status"]] += 1
        summary["marginal"] += e["marginal"]
    config = {"grid": grid, "tol": tol, "seed": seed, "tags": sorted(which),
              "elements": len(elements), "pairs": [list(p) for p in pairs]}
    return RunReport(version=version or __version__, config=config, entries=entries,
                     summary=summary,
                     timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
