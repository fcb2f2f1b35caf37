"""JSON descriptions of window modules.

Two shapes are accepted::

    {"name": "std", "window": [3, 7], "recipe": "standard"}

    {"name": "m", "window": [3, 4],
     "levels": {"3": <IntegralRep JSON>, "4": <IntegralRep JSON>},
     "maps": {"3": [[...], ...]}}

Recipes are "trivial", "standard", {"projective": q}, {"tensor": [r, s]},
{"sum": [r, s]}, {"sum_zero": r}, {"twist": r} and {"shift": r}.
Integral levels are representations of SL_n(Z) given by E_ij images;
structure maps are rational matrices (entries as ints or "p/q" strings).
"""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import PreconditionError
from ..linalg import ExactMatrix
from .module import (VicWindowModule, direct_sum, inverse_transpose_twist, projective_module, shift,
                     standard_module, sum_zero_module, tensor, trivial_module)


def build_recipe(recipe, n_min: int, n_max: int) -> VicWindowModule:
    if recipe == "trivial":
        return trivial_module(n_min, n_max)
    if recipe == "standard":
        return standard_module(n_min, n_max)
    if not isinstance(recipe, dict) or len(recipe) != 1:
        raise PreconditionError(f"unknown module recipe {recipe!r}")
    (kind, arg), = recipe.items()
    if kind == "projective":
        return projective_module(int(arg), n_min, n_max)
    if kind == "tensor":
        a, b = arg
        return tensor(build_recipe(a, n_min, n_max), build_recipe(b, n_min, n_max))
    if kind == "sum":
        a, b = arg
        return direct_sum(build_recipe(a, n_min, n_max), build_recipe(b, n_min, n_max))
    if kind == "sum_zero":
        return sum_zero_module(build_recipe(arg, n_min, n_max))
    if kind == "twist":
        return inverse_transpose_twist(build_recipe(arg, n_min, n_max))
    if kind == "shift":
        return shift(build_recipe(arg, n_min, n_max + 1))
    raise PreconditionError(f"unknown module recipe {kind!r}")


def module_from_json(data) -> VicWindowModule:
    from ..depth import IntegralRep

    try:
        n_min, n_max = (int(x) for x in data["window"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError("module JSON needs a window [n_min, n_max]") from exc
    name = data.get("name")
    if "recipe" in data:
        mod = build_recipe(data["recipe"], n_min, n_max)
        if name:
            mod.name = name
        return mod
    if "levels" not in data:
        raise PreconditionError("module JSON needs either a recipe or explicit levels")
    levels = {}
    for n in range(n_min, n_max + 1):
        if str(n) not in data["levels"]:
            raise PreconditionError(f"level {n} is missing")
        levels[n] = IntegralRep.from_json(data["levels"][str(n)])
    maps = {n: ExactMatrix.from_json(data.get("maps", {}).get(str(n), [])) for n in range(n_min, n_max)}
    return VicWindowModule(n_min, n_max, levels, maps, name or "module", signed=False)


def load_module(path) -> VicWindowModule:
    return module_from_json(json.loads(Path(path).read_text()))
