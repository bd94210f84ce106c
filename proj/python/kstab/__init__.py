"""K-stability of spherical varieties from root data and moment polytopes.

Each command takes a problem file path, a catalog name, or a problem
document given as a dict, and returns a :class:`Result` holding the JSON
report as a dict, the text summary and the exit code the command line tool
would use.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

from . import _kstab
from ._kstab import KstabError

__all__ = [
    "KstabError",
    "Result",
    "catalog_dir",
    "check_convexity",
    "degenerate",
    "envelope",
    "extremal",
    "futaki",
    "integrate_polygon",
    "run",
    "soliton",
    "stability",
]

Problem = Union[str, os.PathLike, Mapping[str, Any]]


@dataclass
class Result:
    report: dict
    text: str
    code: int


def catalog_dir() -> Path:
    """The bundled catalog, or $KSTAB_CATALOG_DIR when set."""
    env = os.environ.get("KSTAB_CATALOG_DIR")
    if env:
        return Path(env)
    here = Path(__file__).resolve().parent
    for candidate in (here / "catalog", here.parents[1] / "catalog", here.parents[2] / "catalog"):
        if candidate.is_dir():
            return candidate
    return here / "catalog"


def run(command: str, problem: Problem, **options: Any) -> Result:
    """Runs one command. Options: net_denominator, tolerance, svg, no_shift,
    permissive_colours."""
    if isinstance(problem, Mapping):
        file, document = "", json.dumps(problem)
    else:
        file, document = os.fspath(problem), ""
    svg = options.pop("svg", "")
    report, text, code = _kstab.run(
        command,
        file=file,
        problem_json=document,
        catalog_dir=str(catalog_dir()),
        svg=os.fspath(svg) if svg else "",
        **options,
    )
    return Result(json.loads(report), text, code)


def check_convexity(problem: Problem, **options: Any) -> Result:
    return run("check-convexity", problem, **options)


def futaki(problem: Problem, **options: Any) -> Result:
    return run("futaki", problem, **options)


def extremal(problem: Problem, **options: Any) -> Result:
    return run("extremal", problem, **options)


def stability(problem: Problem, **options: Any) -> Result:
    return run("stability", problem, **options)


def degenerate(problem: Problem, **options: Any) -> Result:
    return run("degenerate", problem, **options)


def envelope(problem: Problem, **options: Any) -> Result:
    return run("envelope", problem, **options)


def soliton(problem: Problem, **options: Any) -> Result:
    return run("soliton", problem, **options)


def integrate_polygon(
    points: Iterable[Sequence[Union[int, str, Fraction]]],
    terms: Mapping[tuple, Union[int, str, Fraction]],
) -> Fraction:
    """Exact integral of sum c x^i y^j, terms given as {(i, j): c}, over the
    convex hull of the points."""
    pts = [(str(x), str(y)) for x, y in points]
    ts = [(int(i), int(j), str(c)) for (i, j), c in terms.items()]
    return Fraction(_kstab.integrate_polygon(pts, ts))
