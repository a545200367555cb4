"""Command line interface.

    wilson-daha compute --lambda "-1,0"
    wilson-daha compute-symmetric --lambda "1,1"
    wilson-daha spectrum --range 2
    wilson-daha verify --suite relations --n 2 --degree 6
    wilson-daha quadrature --suite norms

Parameters come from ``--config FILE`` (flat ``key = value`` lines) and are
overridden by flags.  Output is JSON with sorted keys; rationals are strings.
Exit status: 0 when every selected check passes, 1 on a verification
failure, 2 on a configuration or parameter error.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass, field

from .operators import PoleError
from .params import NAMES, P_STAR, ParameterError, Params
from . import suites as S
from . import wilson as W
from .weyl import is_dominant, u_lambda_word, dot_length, weights_up_to

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

CONFIG_KEYS = set(NAMES) | {
    "n",
    "degree",
    "lambda_sum",
    "lambda",
    "range",
    "suite",
    "output",
    "truncation",
    "panels",
    "nodes_per_panel",
    "grading",
    "tol",
}


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


@dataclass
class RunConfig:
    n: int | None = None
    params: Params = P_STAR
    degree: int | None = None
    lambda_sum: int | None = None
    lambdas: list = field(default_factory=list)
    range: int | None = None
    suites: list = field(default_factory=list)
    output: str | None = None
    quadrature: dict = field(default_factory=dict)
    tol: float | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "params": self.params.as_strings()}


# -- config parsing -----------------------------------------------------------
def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[run]\n" + fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    values = dict(parser["run"])
    for key in values:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}", key)
    if any(k in values for k in NAMES):
        for k in NAMES:
            if k not in values:
                raise ConfigError(f"config file is missing parameter {k!r}", k)
    return values


def _int(values: dict, key: str, minimum: int = 0):
    if key not in values or values[key] is None:
        return None
    try:
        v = int(str(values[key]).strip())
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {values[key]!r}", key) from exc
    if v < minimum:
        raise ConfigError(f"{key} must be at least {minimum}", key)
    return v


def _float(values: dict, key: str):
    if key not in values or values[key] is None:
        return None
    try:
        return float(values[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be a number, got {values[key]!r}", key) from exc


def parse_weight(text: str) -> tuple:
    try:
        lam = tuple(int(part) for part in str(text).replace(" ", "").split(","))
    except ValueError as exc:
        raise ConfigError(f"malformed weight {text!r}; expected integers like -1,0", "lambda") from exc
    return lam


def parse_weights(text: str) -> list:
    """``"1,0;1,1"`` -> [(1, 0), (1, 1)]."""
    return [parse_weight(part) for part in str(text).split(";") if part.strip()]


def build_config(args: argparse.Namespace) -> RunConfig:
    values = read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    cfg = RunConfig()
    given = {k: values[k] for k in NAMES if k in values}
    if given:
        merged = dict(P_STAR.as_strings()) if not getattr(args, "config", None) else {}
        merged.update(given)
        try:
            cfg.params = Params.from_strings(merged)
        except ParameterError as exc:
            key = next((k for k in NAMES if repr(k) in str(exc)), None)
            raise ConfigError(str(exc), key) from exc
    cfg.n = _int(values, "n", minimum=2)
    cfg.degree = _int(values, "degree")
    cfg.lambda_sum = _int(values, "lambda_sum")
    cfg.range = _int(values, "range")
    cfg.tol = _float(values, "tol")
    if values.get("lambda"):
        cfg.lambdas = parse_weights(values["lambda"])
        lengths = {len(l) for l in cfg.lambdas}
        if len(lengths) != 1:
            raise ConfigError("all weights must have the same length", "lambda")
        (m,) = lengths
        if cfg.n is not None and cfg.n != m:
            raise ConfigError(f"weight length {m} does not match n={cfg.n}", "lambda")
        if m < 2:
            raise ConfigError("weights need at least two entries (n >= 2)", "lambda")
        cfg.n = m
    if values.get("suite"):
        cfg.suites = [s.strip() for s in str(values["suite"]).split(",") if s.strip()]
    cfg.output = values.get("output")
    for key in ("truncation", "panels", "nodes_per_panel", "grading"):
        v = _float(values, key) if key in ("truncation", "grading") else _int(values, key, 1)
        if v is not None:
            cfg.quadrature[key] = v
    return cfg


# -- commands -------------------------------------------------------------------
def cmd_compute(cfg: RunConfig) -> tuple:
    if not cfg.lambdas:
        raise ConfigError("compute needs --lambda", "lambda")
    records = []
    for lam in cfg.lambdas:
        rec = W.nonsymmetric_p(lam, cfg.params)
        out = rec.to_json()
        out["eval_product"] = str(W.evaluation_value(lam, cfg.params))
        out["x_point"] = [str(v) for v in W.x_point(lam, cfg.params)]
        out["length"] = dot_length(lam)
        records.append(out)
    ok = all(r["eval"] == r["eval_product"] for r in records)
    return {"n": cfg.n, "params": cfg.params.as_strings(), "records": records}, ok


def cmd_compute_symmetric(cfg: RunConfig) -> tuple:
    if not cfg.lambdas:
        raise ConfigError("compute-symmetric needs --lambda", "lambda")
    records = []
    for lam in cfg.lambdas:
        if not is_dominant(lam):
            raise ConfigError(f"{lam} is not dominant", "lambda")
        Ep = W.symmetric_Eplus(lam, cfg.params)
        records.append(
            {
                "lambda": list(lam),
                "gamma": [str(v) for v in W.gamma_point(lam, cfg.params)],
                "E_plus": Ep.to_json(),
                "rel_norm_plus": str(W.relative_norm_plus(lam, cfg.params)),
                "L_eigenvalue": str(W.L_eigenvalue(lam, cfg.params)),
            }
        )
    return {"n": cfg.n, "params": cfg.params.as_strings(), "records": records}, True


def cmd_spectrum(cfg: RunConfig) -> tuple:
    n = cfg.n or 2
    size = cfg.range if cfg.range is not None else 2
    rows = []
    for lam in weights_up_to(n, size):
        rows.append(
            {
                "lambda": list(lam),
                "word": list(u_lambda_word(lam)),
                "length": dot_length(lam),
                "gamma": [str(v) for v in W.gamma_point(lam, cfg.params)],
                "x_point": [str(v) for v in W.x_point(lam, cfg.params)],
                "eval": str(W.evaluation_value(lam, cfg.params)),
                "rel_norm": str(W.relative_norm(lam, cfg.params)),
            }
        )
    return {"n": n, "params": cfg.params.as_strings(), "range": size, "spectrum": rows}, True


def _suite_list(cfg: RunConfig, allowed: tuple) -> list:
    names = cfg.suites or []
    if not names:
        raise ConfigError("no suite selected (use --suite)", "suite")
    if names == ["all"]:
        return list(allowed)
    for name in names:
        if name not in allowed:
            raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(allowed)}", "suite")
    return names


def default_size(suite: str, n: int) -> int:
    if n >= 3:
        return 2
    return 2 if suite == "duality" else 3


def cmd_verify(cfg: RunConfig) -> tuple:
    n = cfg.n or 2
    names = _suite_list(cfg, S.EXACT_SUITES)
    degree = cfg.degree if cfg.degree is not None else (6 if n == 2 else 4)
    reports = {}
    for name in names:
        size = cfg.lambda_sum if cfg.lambda_sum is not None else default_size(name, n)
        lams = cfg.lambdas or None
        if name == "symmetric" and lams and not all(is_dominant(l) for l in lams):
            raise ConfigError("symmetric suite needs dominant weights", "lambda")
        reports[name] = S.run_exact_suite(name, n, cfg.params, degree=degree, size=size, lams=lams)
    ok = all(r["pass"] for r in reports.values())
    return {"n": n, "params": cfg.params.as_strings(), "pass": ok, "suites": reports}, ok


def cmd_quadrature(cfg: RunConfig) -> tuple:
    from .numeric import QuadratureSpec

    if cfg.n not in (None, 2):
        raise ConfigError("numeric integration supports n = 2 only", "n")
    if not cfg.params.is_positive():
        raise ConfigError("numeric suites need a, b, c, d > 0 and t > 0", "t")
    try:
        spec = QuadratureSpec(**cfg.quadrature)
    except ValueError as exc:
        raise ConfigError(str(exc), "truncation") from exc
    names = _suite_list(cfg, S.NUMERIC_SUITES)
    size = cfg.lambda_sum if cfg.lambda_sum is not None else 2
    reports = {name: S.run_numeric_suite(name, cfg.params, size, spec, cfg.tol) for name in names}
    ok = all(r["pass"] for r in reports.values())
    return {"n": 2, "params": cfg.params.as_strings(), "pass": ok, "suites": reports}, ok


COMMANDS = {
    "compute": cmd_compute,
    "compute-symmetric": cmd_compute_symmetric,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "quadrature": cmd_quadrature,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file")
    common.add_argument("--n", help="rank (>= 2)")
    for name in NAMES:
        common.add_argument(f"--{name}", help=f"parameter {name} as p/q")
    common.add_argument("--output", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="wilson-daha", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="nonsymmetric p_lambda and E_lambda")
    p.add_argument("--lambda", dest="lambda", help='weight(s), e.g. "-1,0" or "1,0;0,-1"')

    p = sub.add_parser("compute-symmetric", parents=[common], help="symmetric E^+ for dominant weights")
    p.add_argument("--lambda", dest="lambda", help='dominant weight(s), e.g. "1,1"')

    p = sub.add_parser("spectrum", parents=[common], help="spectral data for all weights up to a size")
    p.add_argument("--range", help="maximal sum |lambda_i|")

    p = sub.add_parser("verify", parents=[common], help="exact verification suites")
    p.add_argument("--suite", help=f"comma list from {{{','.join(S.EXACT_SUITES)}}} or 'all'")
    p.add_argument("--degree", help="monomial degree bound for operator identities")
    p.add_argument("--lambda-sum", dest="lambda_sum", help="maximal sum |lambda_i|")
    p.add_argument("--lambda", dest="lambda", help="weights for the symmetric suite")

    p = sub.add_parser("quadrature", parents=[common], help="numeric cross-checks (n = 2)")
    p.add_argument("--suite", help=f"comma list from {{{','.join(S.NUMERIC_SUITES)}}} or 'all'")
    p.add_argument("--lambda-sum", dest="lambda_sum", help="maximal sum |lambda_i| (default 2)")
    p.add_argument("--truncation")
    p.add_argument("--panels")
    p.add_argument("--nodes-per-panel", dest="nodes_per_panel")
    p.add_argument("--grading")
    p.add_argument("--tol", help="override every relative tolerance")
    return parser


def dumps(obj) -> str:
    return json.dumps(S.jsonable(obj), sort_keys=True, indent=2) + "\n"


def _emit(payload: dict, output: str | None, stream) -> None:
    text = dumps(payload)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _glue_weight_args(argv: list) -> list:
    """Turn ``--lambda -1,0`` into ``--lambda=-1,0`` so argparse accepts it."""
    out = []
    k = 0
    while k < len(argv):
        if argv[k] == "--lambda" and k + 1 < len(argv):
            out.append(f"--lambda={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def run_command(argv=None, stdout=None) -> int:
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    argv = _glue_weight_args(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
        payload, ok = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        _emit({"error": str(exc), "key": exc.key, "exit_code": EXIT_CONFIG}, None, stdout)
        return EXIT_CONFIG
    except (ParameterError, PoleError, W.DegenerateParameterError) as exc:
        _emit({"error": f"degenerate or invalid parameters: {exc}", "key": None, "exit_code": EXIT_CONFIG}, None, stdout)
        return EXIT_CONFIG
    except W.ConsistencyError as exc:
        _emit({"error": str(exc), "exit_code": EXIT_FAIL}, None, stdout)
        return EXIT_FAIL
    _emit(payload, cfg.output, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:  # pragma: no cover
    sys.exit(run_command())
