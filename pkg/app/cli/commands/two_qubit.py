from pathlib import Path
from typing import ClassVar

from pydantic import Field, model_validator

from app.io import write_csv
from app.two_qubit import (
    GeometryPoint,
    bell_from_lambda,
    bell_from_t,
    fig1_geometry_export,
    is_classically_correlated_bd,
    is_separable,
    mutual_information_bd,
    product_state_distance,
    verify_theorem1,
)

from ..types import CommandName, CommandResult, LogUnit
from .base import BaseCommand, FloatList


class BellCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.BELL
    help: ClassVar[str] = "classify a Bell-diagonal state given by t or by its eigenvalues"
    flags: ClassVar[dict[str, str]] = {"lam": "--lambda"}

    t: FloatList | None = Field(None, description="correlation vector t1,t2,t3")
    lam: FloatList | None = Field(None, description="Bell-basis eigenvalues l1,l2,l3,l4")
    product_check: bool = Field(False, description="also search the closest product state")

    @model_validator(mode="after")
    def _one_parametrization(self) -> "BellCommand":
        if (self.t is None) == (self.lam is None):
            raise ValueError("Give exactly one of --t and --lambda")
        return self

    def __call__(self, units: LogUnit, seed: int) -> CommandResult:
        b = bell_from_t(self.t) if self.t is not None else bell_from_lambda(self.lam)
        separable = is_separable(b)
        results = {
            "t": list(b.t),
            "lambda": list(b.lam),
            "separable": separable,
            "entangled": not separable,
            "mutual_information": units.convert(mutual_information_bd(b)),
            "classical": is_classically_correlated_bd(b).model_dump(mode="json"),
        }
        if self.product_check:
            results["product_state_distance"] = units.convert(product_state_distance(b.state(), seed))
        return CommandResult(results=results)


class Theorem1Command(BaseCommand):
    name: ClassVar[CommandName] = CommandName.THEOREM1
    help: ClassVar[str] = "check the log 2 bound on separable Bell-diagonal states and its six maximizers"

    samples: int = Field(10_000, description="uniform samples of the separable octahedron")

    def __call__(self, seed: int, units: LogUnit) -> CommandResult:
        report = verify_theorem1(self.samples, seed)
        results = report.model_dump(mode="json")
        results["max_sampled_information"] = units.convert(report.max_sampled_information)
        results["formula_deviation"] = units.convert(report.formula_deviation)
        for item, vertex in zip(results["vertices"], report.vertices):
            item["mutual_information"] = units.convert(vertex.mutual_information)
        diagnostics = [] if report.holds else [f"bound violated at {report.counterexample}"]
        return CommandResult(results=results, diagnostics=diagnostics, passed=report.holds)


class Fig1Command(BaseCommand):
    name: ClassVar[CommandName] = CommandName.FIG1
    help: ClassVar[str] = "tetrahedron, separable octahedron and a classified grid of Bell-diagonal states"
    exports_csv: ClassVar[bool] = True

    grid: int = Field(21, description="grid points per axis")

    def __call__(self, out: Path | None, units: LogUnit) -> CommandResult:
        points = [
            point.model_copy(update={"mutual_information": units.convert(point.mutual_information)})
            for point in fig1_geometry_export(self.grid)
        ]
        counts = {
            "points": len(points),
            "physical": sum(p.physical for p in points),
            "separable": sum(bool(p.separable) for p in points),
            "entangled": sum(bool(p.entangled) for p in points),
        }
        results: dict = {"grid": self.grid, "counts": counts}
        if out is not None:
            header = list(GeometryPoint.model_fields)
            write_csv(out, header, ([getattr(p, key) for key in header] for p in points))
            results["csv"] = str(out)
        else:
            results["points"] = [p.model_dump(mode="json") for p in points]
        return CommandResult(results=results)
