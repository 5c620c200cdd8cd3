"""Registry of models and law suites used by the command line and the tests."""
from __future__ import annotations

from dataclasses import dataclass

from . import laws as LW
from .biproduct import BiproductModel
from .closed import ClosedEq, ClosedModel
from .closed_laws import closed_laws
from .laws import GenConfig
from .mutants import apply_mutant
from .poly import PolyModel
from .smooth import SampledEq, SmoothModel
from .tower import TowerModel

MODELS = ("poly", "biproduct", "tower", "smooth", "closed")
SUITES = LW.SUITES
EXACT_BUDGET = 500
SAMPLED_BUDGET = 100


class UsageError(ValueError):
    """A model, suite or mutant name that does not exist or does not fit."""


def make_model(model_id: str, tol: float | None = None, points: int | None = None,
               sample_seed: int = 0):
    """A fresh model instance; ``tol``/``points`` only affect the sampled models."""
    if model_id == "poly":
        return PolyModel()
    if model_id == "biproduct":
        return BiproductModel()
    if model_id == "tower":
        return TowerModel()
    opts = {"seed": sample_seed}
    if tol is not None:
        opts["tol"] = tol
    if points is not None:
        opts["points"] = points
    if model_id == "smooth":
        return SmoothModel(SampledEq(**opts))
    if model_id == "closed":
        return ClosedModel(ClosedEq(**opts))
    raise UsageError(f"unknown model {model_id!r}; choose from {', '.join(MODELS)}")


def native(model):
    """The model's own ``(D, L, Lc)``."""
    return model.differential, model.linearize, model.partial_linearize


def default_budget(model) -> int:
    return EXACT_BUDGET if model.exact else SAMPLED_BUDGET


@dataclass
class Selection:
    model_id: str
    model: object
    laws: list

    @property
    def contract(self) -> str:
        return self.model.contract()


def build_laws(model_id: str, model, suite: str = "all", mutant: str | None = None,
               cfg: GenConfig = GenConfig()) -> list:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "closed" and model_id != "closed":
        raise UsageError("the closed suite needs --model closed")
    D, L, Lc = native(model)
    if mutant is not None:
        try:
            D, L, Lc = apply_mutant(mutant, model_id, model, D, L, Lc)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc.args[0])) from None
    m = model
    parts = {
        "cd": lambda: LW.cd_laws(m, D, cfg) + LW.context_d_laws(m, D, cfg),
        "l": lambda: LW.l_laws(m, L, cfg) + LW.linearity_laws(m, D, L, Lc, cfg),
        "system": lambda: LW.system_laws(m, Lc, cfg) + LW.interchange_equivalence(m, Lc, cfg),
        "roundtrip": lambda: LW.roundtrip_laws(m, D, Lc, L, cfg),
        "closed": lambda: closed_laws(m, D, L, Lc, cfg),
    }
    if suite != "all":
        return parts[suite]()
    out = LW.structure_laws(m, cfg)
    for name in ("cd", "l", "system", "roundtrip"):
        out += parts[name]()
    if model_id == "closed":
        out += parts["closed"]()
    return out


def select(model_id: str, suite: str = "all", mutant: str | None = None,
           tol: float | None = None, points: int | None = None, seed: int = 0) -> Selection:
    model = make_model(model_id, tol, points, seed)
    return Selection(model_id, model, build_laws(model_id, model, suite, mutant))
