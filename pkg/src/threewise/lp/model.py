"""Parametric LPs: max c.x subject to A x <= b, x >= 0, entries are ParamExprs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactnum import AlgNum, ParamExpr


@dataclass(frozen=True)
class Row:
    label: str
    coeffs: dict  # variable name -> ParamExpr (or number)
    rhs: ParamExpr
    min_over: tuple[str, ...] = ()  # min{x_a, x_b} <= rhs, as stated in a claim

    def coeff(self, var: str) -> ParamExpr:
        return ParamExpr.lift(self.coeffs.get(var, 0))

    def resolved(self, var: str, label: str | None = None) -> "Row":
        """Turn a min-row into the linear row for the chosen variable."""
        if var not in self.min_over:
            raise ValueError(f"{var} is not one of {self.min_over}")
        return Row(label or self.label, {var: 1}, self.rhs)

    def describe(self) -> str:
        if self.min_over:
            lhs = "min{" + ", ".join(self.min_over) + "}"
        else:
            parts = []
            for v, c in self.coeffs.items():
                c = ParamExpr.lift(c)
                if c.is_const_value(1):
                    parts.append(v)
                elif c.is_const_value(-1):
                    parts.append(f"-{v}")
                else:
                    parts.append(f"{c}*{v}")
            lhs = " + ".join(parts).replace("+ -", "- ")
        return f"{self.label}: {lhs} <= {self.rhs}"


@dataclass(frozen=True)
class ParamLP:
    variables: tuple[str, ...]
    objective: dict  # variable name -> ParamExpr
    rows: tuple[Row, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.min_over:
                raise ValueError(f"row {row.label} is a min-row; resolve it first")
            unknown = set(row.coeffs) - set(self.variables)
            if unknown:
                raise ValueError(f"row {row.label} uses unknown variables {sorted(unknown)}")
        labels = [r.label for r in self.rows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate row labels")

    def row(self, label: str) -> Row:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rows)

    def instantiate(self, p) -> tuple[list[list], list, list]:
        """Exact (A, b, c) at rational p; entries are Fractions or AlgNums."""
        p = Fraction(p)
        cache: dict = {}

        def val(e):
            e = ParamExpr.lift(e)
            if e not in cache:
                v = e.exact(p)
                cache[e] = v.to_fraction() if v.is_rational() else v
            return cache[e]

        A = [[val(r.coeff(v)) for v in self.variables] for r in self.rows]
        b = [val(r.rhs) for r in self.rows]
        c = [val(self.objective.get(v, 0)) for v in self.variables]
        return A, b, c

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "objective": {v: ParamExpr.lift(self.objective.get(v, 0)).to_json() for v in self.variables},
            "rows": [
                {"label": r.label,
                 "coeffs": {v: ParamExpr.lift(c).to_json() for v, c in r.coeffs.items()},
                 "rhs": r.rhs.to_json()}
                for r in self.rows
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "ParamLP":
        rows = tuple(
            Row(r["label"], {v: ParamExpr.from_json(c) for v, c in r["coeffs"].items()},
                ParamExpr.from_json(r["rhs"]))
            for r in obj["rows"]
        )
        return ParamLP(tuple(obj["variables"]),
                       {v: ParamExpr.from_json(c) for v, c in obj["objective"].items()}, rows)


def is_number(x) -> bool:
    return isinstance(x, (int, Fraction, AlgNum))
