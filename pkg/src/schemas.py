from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.conf.config import settings


class SearchParams(BaseModel):
    t: int = Field(..., ge=1)
    min_bucket: int = Field(default_factory=lambda: settings.MIN_BUCKET, ge=1)
    min_edges: int = Field(default_factory=lambda: settings.MIN_EDGES, ge=1)
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)

    model_config = ConfigDict(frozen=True)


class VerificationReport(BaseModel):
    nu: int
    spanned: int
    required: int
    nu_bounds_ok: bool
    layer_bounds_ok: bool
    layers_disjoint: bool
    y_disjoint: bool
    quadruples_ok: bool
    triples_ok: bool
    elements_ok: bool
    passed: bool
    reasons: list[str] = Field(default_factory=list)

    def summary(self) -> str:
        return (
            f"nu={self.nu}, spanned={self.spanned}, required={self.required}, "
            f"pass={str(self.passed).lower()}"
        )


class QuadrupleSummary(BaseModel):
    total: int
    buckets: int
    qmax: int
    vector: Optional[tuple[int, int, int]] = None

    def summary(self) -> str:
        vector = "-" if self.vector is None else " ".join(map(str, self.vector))
        return f"total={self.total} buckets={self.buckets} qmax={self.qmax} vector={vector}"


class SpanResult(BaseModel):
    k_max: int
    witness: tuple[int, ...]

    def summary(self) -> str:
        return f"k_max={self.k_max} witness={' '.join(map(str, self.witness))}"


class RunManifest(BaseModel):
    """
    Everything needed to repeat one command line run.

    ``source`` is "full", "random(c, seed)" or the input file path.
    """

    command: str
    group: Optional[str | list[int]] = None
    source: Optional[str] = None
    params: dict[str, str | int | float | bool] = Field(default_factory=dict)
    output: Optional[str] = None

    def to_argv(self) -> list[str]:
        argv = [self.command]
        for name, value in self.params.items():
            flag = "--" + name.replace("_", "-")
            if value is True:
                argv.append(flag)
            elif value is not False:
                argv.extend([flag, str(value)])
        if self.output is not None:
            argv.extend(["--output", self.output])
        return argv
