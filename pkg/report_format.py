"""
Input and output models
JobSpec validation, the canonical JSON report schema and table / CSV rendering
"""

import json
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from blockcalc import BlockReport, totals
from rootsys import Weight


OutputFormat = Literal['table', 'json', 'csv']
OrderVariant = Literal['root', 'dominant']


def parse_rational(text: str) -> Fraction:
    """'p/q' or integer string -> Fraction"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"'{text}' is not a rational number")


def parse_coords(text: str) -> List[str]:
    """'1/2,0,-1' -> normalized coordinate strings"""
    return [str(parse_rational(part)) for part in text.split(',') if part.strip()]


# Pydantic models
class JobSpec(BaseModel):
    type_letter: str
    rank: int = Field(ge=1)
    lambda_coords: List[str]
    v_highest_weights: List[List[int]] = []
    output_format: OutputFormat = 'table'
    order_variant: OrderVariant = 'root'
    fast_path: bool = False
    kl_dump: Optional[str] = None
    ext: Optional[Tuple[str, str]] = None

    @field_validator('type_letter')
    @classmethod
    def _letter(cls, value: str) -> str:
        value = value.strip().upper()
        if value not in ('A', 'B', 'C', 'D', 'E', 'F', 'G'):
            raise ValueError(f"unknown type letter '{value}'")
        return value

    @field_validator('lambda_coords')
    @classmethod
    def _rationals(cls, value: List[str]) -> List[str]:
        return [str(parse_rational(c)) for c in value]

    @model_validator(mode='after')
    def _shapes(self) -> 'JobSpec':
        if len(self.lambda_coords) != self.rank:
            raise ValueError(f"lambda has {len(self.lambda_coords)} coordinates, rank is {self.rank}")
        if self.ext is None and not self.v_highest_weights:
            raise ValueError("at least one --v highest weight is required")
        for nu in self.v_highest_weights:
            if len(nu) != self.rank:
                raise ValueError(f"V highest weight {nu} has {len(nu)} coordinates, rank is {self.rank}")
            if any(c < 0 for c in nu):
                raise ValueError(f"V highest weight {nu} is not dominant")
        return self

    @property
    def lam(self) -> Weight:
        return Weight.of(*self.lambda_coords)

    @property
    def v_weights(self) -> List[Weight]:
        return [Weight.of(*nu) for nu in self.v_highest_weights]


class EntryModel(BaseModel):
    mu: List[str]
    dim_S: int
    dim_N: int
    dim_Q: int
    minimal: bool
    minimal_other_order: bool
    v_mult: int


class ChecksModel(BaseModel):
    dimension_identity: bool
    necessary_condition: bool
    order_agreement: bool


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    type: str
    rank: int
    lambda_: List[str] = Field(alias='lambda')
    v: List[str]
    order_variant: str
    entries: List[EntryModel]
    end_v_zero: int
    sum_check: int
    checks: ChecksModel
    order_disagreement_flags: List[List[str]] = []

    @classmethod
    def from_report(cls, report: BlockReport) -> 'ReportModel':
        return cls(
            type=report.type_letter,
            rank=report.rank,
            lambda_=report.lam.to_strings(),
            v=report.v_highest_weight.to_strings(),
            order_variant=report.order_variant,
            entries=[
                EntryModel(
                    mu=e.mu.to_strings(), dim_S=e.dim_S, dim_N=e.dim_N, dim_Q=e.dim_Q,
                    minimal=e.minimal, minimal_other_order=e.minimal_other_order, v_mult=e.v_weight_mult,
                )
                for e in report.entries
            ],
            end_v_zero=report.end_v_zero,
            sum_check=report.sum_check,
            checks=ChecksModel(**report.checks),
            order_disagreement_flags=[mu.to_strings() for mu in report.order_disagreement_flags],
        )


class DirectSumModel(BaseModel):
    reports: List[ReportModel]
    total_end_v_zero: int
    total_sum_check: int


class ExtModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    type: str
    rank: int
    lambda_: List[str] = Field(alias='lambda')
    x: str
    y: str
    mu: List[str]
    nu: List[str]
    dims: List[int]


def canonical_json(model: BaseModel) -> str:
    """Sorted keys, two-space indent; parsing and re-dumping gives the same bytes"""
    return json.dumps(model.model_dump(by_alias=True), sort_keys=True, indent=2, ensure_ascii=False)


def load_report(text: str) -> BaseModel:
    data = json.loads(text)
    if 'reports' in data:
        return DirectSumModel.model_validate(data)
    return ReportModel.model_validate(data)


def _coords(values: Sequence[str]) -> str:
    return '(' + ', '.join(values) + ')'


def report_frame(report: BlockReport) -> pd.DataFrame:
    rows = [
        {
            'mu': _coords(e.mu.to_strings()),
            'v_mult': e.v_weight_mult,
            'dim_N': e.dim_N,
            'dim_S': e.dim_S,
            'dim_Q': e.dim_Q,
            'minimal': e.minimal,
            'minimal_other_order': e.minimal_other_order,
        }
        for e in report.entries
    ]
    return pd.DataFrame(rows, columns=['mu', 'v_mult', 'dim_N', 'dim_S', 'dim_Q', 'minimal', 'minimal_other_order'])


def render_table(reports: Sequence[BlockReport]) -> str:
    blocks = []
    for report in reports:
        checks = report.checks
        lines = [
            "=" * 60,
            f"{report.type_letter}{report.rank}  lambda = {report.lam}  V = V{report.v_highest_weight}"
            f"  (order: {report.order_variant})",
            "=" * 60,
            report_frame(report).to_string(index=False),
            "-" * 60,
            f"dim (End V)_0 = {report.end_v_zero}   sum dim S * dim Q = {report.sum_check}",
            "simple modules: " + (', '.join(str(mu) for mu in report.simple_modules) or 'none'),
        ]
        for name, ok in checks.items():
            lines.append(f"{'✓' if ok else '❌'} {name}")
        if report.order_disagreement_flags:
            lines.append("⚠️  minimality orders disagree at: "
                         + ', '.join(str(mu) for mu in report.order_disagreement_flags))
        blocks.append('\n'.join(lines))
    if len(reports) > 1:
        end_zero, sum_check = totals(reports)
        blocks.append(f"TOTAL  dim (End V)_0 = {end_zero}   sum dim S * dim Q = {sum_check}")
    return '\n\n'.join(blocks)


def render_csv(reports: Sequence[BlockReport]) -> str:
    frames = []
    for report in reports:
        frame = report_frame(report)
        frame.insert(0, 'v', _coords(report.v_highest_weight.to_strings()))
        frame.insert(0, 'lambda', _coords(report.lam.to_strings()))
        frame['end_v_zero'] = report.end_v_zero
        frame['sum_check'] = report.sum_check
        frames.append(frame)
    return pd.concat(frames, ignore_index=True).to_csv(index=False)


def render_json(reports: Sequence[BlockReport]) -> str:
    models = [ReportModel.from_report(r) for r in reports]
    if len(models) == 1:
        return canonical_json(models[0])
    end_zero, sum_check = totals(reports)
    return canonical_json(DirectSumModel(reports=models, total_end_v_zero=end_zero, total_sum_check=sum_check))


def render(reports: Sequence[BlockReport], output_format: str) -> str:
    if output_format == 'json':
        return render_json(reports)
    if output_format == 'csv':
        return render_csv(reports)
    return render_table(reports)


def render_ext(model: ExtModel, output_format: str) -> str:
    if output_format == 'json':
        return canonical_json(model)
    if output_format == 'csv':
        frame = pd.DataFrame({'k': list(range(len(model.dims))), 'dim': model.dims})
        return frame.to_csv(index=False)
    lines = [f"x = {model.x}, y = {model.y}: Ext^k(M{_coords(model.mu)}, L{_coords(model.nu)})"]
    lines += [f"  k = {k}: {d}" for k, d in enumerate(model.dims)]
    return '\n'.join(lines)
