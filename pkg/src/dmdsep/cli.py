"""Command-line entry point: experiment suites, CSV unmixing, and plots.

Exit codes: 0 on success, 1 on a validation/usage error, 2 on a numerical
failure inside a factorization.
"""

import argparse
import sys
import warnings

import numpy as np

from . import dmd, linalg
from .experiments import SUITES, default_config, run_experiment, summarize
from .plots import emit_plots


def _parse_cell(raw, line_no, col, fill_missing):
    raw = raw.strip()
    if raw == "":
        if not fill_missing:
            raise ValueError(
                f"line {line_no}: empty cell in column {col + 1} "
                "(rerun with --fill-missing to treat it as missing data)"
            )
        return np.nan
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            f"line {line_no}: non-numeric cell {raw!r} in column {col + 1}"
        ) from None


def read_timeseries_csv(path, fill_missing=False):
    """Parse a time-major numeric CSV (rows = samples, columns = channels).

    Returns ``(data, missing_mask)`` with shape (n, p).  Empty cells are
    allowed only when ``fill_missing`` is set; structural problems are
    reported with the offending line number.
    """
    rows = []
    width = None
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if line.strip() == "":
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise ValueError(
                    f"line {line_no}: expected {width} cells, found {len(cells)}"
                )
            rows.append(
                [
                    _parse_cell(raw, line_no, col, fill_missing)
                    for col, raw in enumerate(cells)
                ]
            )
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=float)
    return data, np.isnan(data)


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def unmix_csv(in_path, out_prefix, tau=1, k=2, fill_missing=False):
    """Unmix a time-major CSV via the mean-aware factorization.

    With ``fill_missing`` the pipeline is zero-fill, rank-``k`` truncated
    SVD, then the factorization; otherwise the data is factorized as-is.
    Writes ``<prefix>_sources.csv`` (n x k coordinates),
    ``<prefix>_mixing.csv`` (p x k unit-norm modes) and
    ``<prefix>_eigvals.csv`` (k rows of real,imag).  Returns the three
    paths.
    """
    data, missing = read_timeseries_csv(in_path, fill_missing=fill_missing)
    n, p = data.shape
    if k > p:
        raise ValueError(f"rank k={k} exceeds the {p} channels in {in_path}")
    if not 1 <= tau <= n - 2:
        raise ValueError(f"lag tau={tau} outside [1, {n - 2}] for {n} samples")
    X = data.T.copy()  # internal orientation: channels x time
    if fill_missing and missing.any():
        X[np.isnan(X)] = 0.0
        ts = linalg.truncated_svd(X, k)
        X = (ts.U * ts.sigma) @ ts.V.T
    fac = dmd.dmf(X, tau, k)
    C = fac.C_hat
    if np.iscomplexobj(C):
        residue = np.abs(C.imag).max()
        if residue > 1e-8 * (1.0 + np.abs(C.real).max()):
            warnings.warn(
                f"complex mode pairs present (max imaginary part {residue:.3e}); "
                "writing real parts",
                stacklevel=2,
            )
        C = C.real
    Q = fac.Q_hat.real if np.iscomplexobj(fac.Q_hat) else fac.Q_hat
    sources_path = f"{out_prefix}_sources.csv"
    mixing_path = f"{out_prefix}_mixing.csv"
    eig_path = f"{out_prefix}_eigvals.csv"
    _write_csv(sources_path, [f"source_{j + 1}" for j in range(k)], C)
    _write_csv(mixing_path, [f"mode_{j + 1}" for j in range(k)], Q)
    _write_csv(
        eig_path,
        ["real", "imag"],
        [(v.real, v.imag) for v in fac.eigvals],
    )
    return sources_path, mixing_path, eig_path


_CONFIG_KEYS = {
    "suite": str,
    "p": int,
    "k": int,
    "trials": int,
    "seed": int,
    "out": str,
    "n_grid": "int_list",
    "tau_list": "int_list",
    "q_grid": "float_list",
}


def load_config_file(path):
    """Parse a declarative ``key = value`` config file into a dict."""
    values = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path} line {line_no}: expected 'key = value'")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path} line {line_no}: unknown key {key!r}")
            kind = _CONFIG_KEYS[key]
            try:
                if kind is str:
                    values[key] = raw
                elif kind is int:
                    values[key] = int(raw)
                elif kind == "int_list":
                    values[key] = tuple(int(v) for v in raw.split(",") if v.strip())
                elif kind == "float_list":
                    values[key] = tuple(float(v) for v in raw.split(",") if v.strip())
            except ValueError:
                raise ValueError(
                    f"{path} line {line_no}: cannot parse {raw!r} for key {key!r}"
                ) from None
    return values


def _int_list(raw):
    return tuple(int(v) for v in raw.split(","))


def _float_list(raw):
    return tuple(float(v) for v in raw.split(","))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dmdsep",
        description="Time-series source separation via dynamic-mode estimators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    exp = sub.add_parser("experiment", help="run a simulation suite")
    exp.add_argument("suite", nargs="?", choices=SUITES)
    exp.add_argument("--config", help="key = value config file")
    exp.add_argument("--n-grid", type=_int_list)
    exp.add_argument("--q-grid", type=_float_list)
    exp.add_argument("--tau", type=_int_list, help="comma-separated lag list")
    exp.add_argument("--trials", type=int)
    exp.add_argument("--seed", type=int)
    exp.add_argument("--p", type=int)
    exp.add_argument("--k", type=int)
    exp.add_argument("--out", help="records CSV path")

    unm = sub.add_parser("unmix", help="unmix a time-major CSV")
    unm.add_argument("input")
    unm.add_argument("--lag", type=int, default=1)
    unm.add_argument("--rank", type=int, default=2)
    unm.add_argument("--fill-missing", action="store_true")
    unm.add_argument("--out-prefix", default="unmixed")

    plt = sub.add_parser("plots", help="render SVG plots from a records CSV")
    plt.add_argument("records")
    plt.add_argument("--out-dir", default="plots")
    return parser


def _experiment_config(args):
    file_values = load_config_file(args.config) if args.config else {}
    suite = args.suite or file_values.get("suite")
    if not suite:
        raise ValueError("suite is required (positional argument or config file)")
    cfg = default_config(suite)
    overrides = {
        "n_grid": args.n_grid if args.n_grid else file_values.get("n_grid"),
        "q_grid": args.q_grid if args.q_grid else file_values.get("q_grid"),
        "tau_list": args.tau if args.tau else file_values.get("tau_list"),
        "trials": args.trials if args.trials is not None else file_values.get("trials"),
        "seed": args.seed if args.seed is not None else file_values.get("seed"),
        "p": args.p if args.p is not None else file_values.get("p"),
        "k": args.k if args.k is not None else file_values.get("k"),
        "out_path": args.out if args.out else file_values.get("out"),
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "experiment":
            cfg = _experiment_config(args)
            records = run_experiment(cfg)
            print(summarize(records))
            if cfg.out_path:
                print(f"wrote {len(records)} records to {cfg.out_path}")
        elif args.command == "unmix":
            paths = unmix_csv(
                args.input,
                args.out_prefix,
                tau=args.lag,
                k=args.rank,
                fill_missing=args.fill_missing,
            )
            for path in paths:
                print(f"wrote {path}")
        elif args.command == "plots":
            for path in emit_plots(args.records, args.out_dir):
                print(f"wrote {path}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (linalg.NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
