"""Command-line front-end: solve built-in examples, print error tables, dump matrices.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 numerically
singular collocation system. Error messages go to standard error; standard
output stays machine-parseable (key=value lines, CSV, or a fixed-width
table).

Evaluation grids are uniform interior points i/(n+1), i = 1..n, per axis.
This makes `--grid-nt 9` hit t = 0.1..0.9 (the error-table times) and
`--grid-nx 1` pin x at 0.5; grid files therefore never sample t = 0 or the
spatial endpoints, where the conditions are enforced rather than solved for.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .basis import WaveletBasis
from .model import ProblemSpec, builtin_example
from .opmat import (
    DenseMatrix,
    OrderFunction,
    derivative_matrix,
    monomial_change_matrix,
    vo_monomial_matrix,
    vo_wavelet_matrix,
)
from .solver import SingularSystemError, Solution, error_report, eval_solution, solve

__all__ = ["RunConfig", "cmd_solve", "cmd_table", "cmd_matrices", "main"]

_SIZE_GUARD = 64
_TABLE_TIMES = tuple(i / 10 for i in range(1, 10))


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Validated parameters of a `solve` run.

    Grid sizes of 1 are accepted as the degenerate pinned-axis case (the
    single interior point is 0.5).
    """

    example_id: int
    k: int
    M: int
    grid_nx: int = 21
    grid_nt: int = 21
    output_path: str = "solution.csv"
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.example_id not in (1, 2, 3, 4):
            raise ValueError(f"example must be 1..4, got {self.example_id}")
        _check_basis_size(self.k, self.M)
        if self.grid_nx < 1 or self.grid_nt < 1:
            raise ValueError(
                f"grid sizes must be >= 1, got nx={self.grid_nx}, nt={self.grid_nt}"
            )
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")


def _check_basis_size(k: int, M: int) -> None:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    if 2**k * M > _SIZE_GUARD:
        raise ValueError(f"2^k * M = {2**k * M} exceeds the size guard {_SIZE_GUARD}")


def _interior_axis(n: int) -> list[float]:
    return [i / (n + 1) for i in range(1, n + 1)]


def _grid_rows(
    sol: Solution, spec: ProblemSpec, xs: list[float], ts: list[float]
) -> list[tuple[float, float, float, float | None, float | None]]:
    if spec.exact is not None:
        return error_report(sol, spec, xs, ts)
    return [
        (x, t, eval_solution(sol, x, t), None, None) for x in xs for t in ts
    ]


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.17g}"


def _write_grid_csv(path: Path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,t,u_approx,u_exact,abs_err\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_grid_json(
    path: Path, config: RunConfig, sol: Solution, max_err: float | None, rows
) -> None:
    meta = asdict(config)
    meta["condition_estimate"] = sol.diagnostics["condition_estimate"]
    meta["max_abs_err"] = max_err
    grid = [
        {"x": x, "t": t, "u_approx": ua, "u_exact": ue, "abs_err": ae}
        for x, t, ua, ue, ae in rows
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump({"meta": meta, "grid": grid}, fh, indent=2)
        fh.write("\n")


def cmd_solve(config: RunConfig) -> int:
    """Solve one example, write the evaluation grid, report summary lines."""
    spec = builtin_example(config.example_id)
    basis = WaveletBasis(k=config.k, M=config.M)
    sol = solve(spec, basis)
    xs = _interior_axis(config.grid_nx)
    ts = _interior_axis(config.grid_nt)
    rows = _grid_rows(sol, spec, xs, ts)
    errs = [r[4] for r in rows if r[4] is not None]
    max_err = max(errs) if errs else None
    path = Path(config.output_path)
    if config.format == "csv":
        _write_grid_csv(path, rows)
    else:
        _write_grid_json(path, config, sol, max_err, rows)
    print(f"max_abs_err={_fmt(max_err) or 'nan'}")
    print(f"condition_estimate={sol.diagnostics['condition_estimate']:.17g}")
    print(f"grid_file={path}")
    return 0


def cmd_table(example_id: int, k: int, M_list: list[int]) -> int:
    """Print absolute errors at x = 0.5, t = 0.1..0.9, one column per M."""
    if not M_list:
        raise ValueError("M list must not be empty")
    for M in M_list:
        _check_basis_size(k, M)
    spec = builtin_example(example_id)
    if spec.exact is None:
        raise ValueError("error table requires an exact solution")
    columns = []
    for M in M_list:
        sol = solve(spec, WaveletBasis(k=k, M=M))
        rows = error_report(sol, spec, [0.5], list(_TABLE_TIMES))
        columns.append([r[4] for r in rows])
    print("t    " + "".join(f"{f'M={M}':>12}" for M in M_list))
    for idx, t in enumerate(_TABLE_TIMES):
        print(f"{t:.1f}  " + "".join(f"{col[idx]:>12.3E}" for col in columns))
    return 0


def _write_matrix_csv(path: Path, matrix: DenseMatrix) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in np.atleast_2d(matrix):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def cmd_matrices(k: int, M: int, vartheta: float, t: float, out_dir: str = ".") -> int:
    """Dump D, P, T, Q for a constant order vartheta at time t.

    M = 1 is allowed as the degenerate single-constant basis (all four
    matrices are 1x1 and the derivative ones are zero).
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if 2**k * M > _SIZE_GUARD:
        raise ValueError(f"2^k * M = {2**k * M} exceeds the size guard {_SIZE_GUARD}")
    limit = M - 1 if M > 1 else 1
    if not 0.0 < vartheta <= limit:
        raise ValueError(f"vartheta must lie in (0, {limit}], got {vartheta}")
    if not 0.0 < t <= 1.0:
        raise ValueError(f"t must lie in (0, 1], got {t}")
    basis = WaveletBasis(k=k, M=M)
    order = OrderFunction(q=max(1, math.ceil(vartheta)), value=lambda _x, _t: vartheta)
    dumps = {
        "D": derivative_matrix(basis),
        "P": monomial_change_matrix(basis),
        "T": vo_monomial_matrix(basis, order, 0.0, t),
        "Q": vo_wavelet_matrix(basis, order, 0.0, t),
    }
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    for name, matrix in dumps.items():
        path = target / f"{name}.csv"
        _write_matrix_csv(path, matrix)
        print(f"{name}={path}")
    return 0


_CONFIG_FIELDS = ("example_id", "k", "M", "grid_nx", "grid_nt", "output_path", "format")
_INT_FIELDS = {"example_id", "k", "M", "grid_nx", "grid_nt"}


def _load_config_file(path: str) -> dict[str, object]:
    """Flat key/value config: a JSON object or `key = value` lines."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                key, sep, value = line.partition(":")
            if not sep:
                raise ValueError(f"unparseable config line: {line!r}")
            data[key.strip()] = value.strip()
    if not isinstance(data, dict):
        raise ValueError("config file must hold a flat key/value mapping")
    for key in data:
        if key not in _CONFIG_FIELDS:
            raise ValueError(f"unknown config key {key!r}")
    return data


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    file_values = _load_config_file(args.config) if args.config else {}
    merged: dict[str, object] = {}
    flag_values = {
        "example_id": args.example,
        "k": args.k,
        "M": args.M,
        "grid_nx": args.grid_nx,
        "grid_nt": args.grid_nt,
        "output_path": args.out,
        "format": args.format,
    }
    for field in _CONFIG_FIELDS:
        value = flag_values[field]
        if value is None:
            value = file_values.get(field)
        if value is not None:
            merged[field] = int(value) if field in _INT_FIELDS else str(value)
    for required in ("example_id", "k", "M"):
        if required not in merged:
            raise ValueError(f"missing required parameter {required!r}")
    merged.setdefault("format", "csv")
    merged.setdefault("output_path", f"solution.{merged['format']}")
    return RunConfig(**merged)  # type: ignore[arg-type]


def _parse_m_list(raw: str) -> list[int]:
    return [int(part) for part in raw.split(",") if part.strip()]


def _run_solve(args: argparse.Namespace) -> int:
    return cmd_solve(_build_run_config(args))


def _run_table(args: argparse.Namespace) -> int:
    if args.example is None:
        raise ValueError("missing required parameter 'example_id'")
    return cmd_table(args.example, args.k, _parse_m_list(args.M_list))


def _run_matrices(args: argparse.Namespace) -> int:
    return cmd_matrices(args.k, args.M, args.vartheta, args.t, args.out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwvo",
        description="Chebyshev-wavelet collocation for the variable-order "
        "fractional mobile-immobile transport equation on the unit square.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a built-in example, write a grid file")
    p_solve.add_argument("--example", type=int, help="built-in example id (1..4)")
    p_solve.add_argument("--k", type=int, help="dilation level")
    p_solve.add_argument("--M", type=int, help="polynomials per subinterval")
    p_solve.add_argument("--grid-nx", type=int, dest="grid_nx", help="x grid size")
    p_solve.add_argument("--grid-nt", type=int, dest="grid_nt", help="t grid size")
    p_solve.add_argument("--out", help="output file path")
    p_solve.add_argument("--format", choices=("csv", "json"), help="output format")
    p_solve.add_argument("--config", help="flat key/value config file; flags override")
    p_solve.set_defaults(func=_run_solve)

    p_table = sub.add_parser("table", help="print an error table at x = 0.5")
    p_table.add_argument("--example", type=int, help="built-in example id (1..4)")
    p_table.add_argument("--k", type=int, default=0, help="dilation level")
    p_table.add_argument(
        "--M-list", dest="M_list", default="", help="comma-separated M values"
    )
    p_table.set_defaults(func=_run_table)

    p_mat = sub.add_parser("matrices", help="dump D, P, T, Q as CSV files")
    p_mat.add_argument("--k", type=int, default=0, help="dilation level")
    p_mat.add_argument("--M", type=int, required=True, help="polynomials per subinterval")
    p_mat.add_argument("--vartheta", type=float, required=True, help="constant order")
    p_mat.add_argument("--t", type=float, required=True, help="evaluation time in (0, 1]")
    p_mat.add_argument("--out", default=".", help="output directory")
    p_mat.set_defaults(func=_run_matrices)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SingularSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
