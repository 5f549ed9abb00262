"""Command line entry point: configuration, dispatch and report emission."""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .lie import lie_relations
from .relations.engine import (
    CheckReport, SuiteConfig, SuiteReport, kac_identity_check, kac_samples, kac_vectors,
    run_suite, sample_weights,
)
from .superdata import b_coeff, cartan_affine, format_matrix
from .verma import HighestWeight, TensorModule, VermaModule

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

DEFAULTS = {"seed": 1, "depth": 2, "zero_mode_len": 2, "samples": 3, "sign": "auto"}

# per-command defaults used when neither the config file nor a flag sets them
COMMAND_DEFAULTS = {
    "verify-ev": {"mode": "ev", "groups": ("minimalistic", "evaluation", "yangian")},
    "verify-coproduct": {"mode": "coproduct", "depth": 1, "zero_mode_len": 0, "max_vectors": None, "samples": 1},
    "verify-j": {"mode": "j", "zero_mode_len": 1},
}

_FIELDS = {f.name: f for f in dataclasses.fields(SuiteConfig)}
_TUPLE_FIELDS = {"relations", "groups", "mutations", "weights", "weights2"}


class ConfigError(ValueError):
    pass


def _rat(x, where: str) -> Fraction:
    try:
        if isinstance(x, float):
            raise TypeError("floats are not exact")
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: expected an exact rational, got {x!r}") from exc


def _coerce_field(name: str, value, where: str):
    if name not in _FIELDS:
        raise ConfigError(f"{where}: unknown field")
    if name in ("m", "n", "seed", "samples", "depth", "zero_mode_len", "max_vectors", "yangian_max_factors"):
        if value is None and name in ("max_vectors", "yangian_max_factors"):
            return None
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}: expected an integer, got {value!r}")
        return value
    if name in ("symbolic", "enforce_level"):
        if not isinstance(value, bool):
            raise ConfigError(f"{where}: expected true/false, got {value!r}")
        return value
    if name in ("sign", "mode"):
        if not isinstance(value, str):
            raise ConfigError(f"{where}: expected a string, got {value!r}")
        return value
    if name == "level_shift":
        return _rat(value, where)
    if name in _TUPLE_FIELDS:
        if value is None and name.startswith("weights"):
            return None
        if isinstance(value, str):
            value = [v for v in value.replace(",", " ").split()]
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{where}: expected a list, got {value!r}")
        if name.startswith("weights"):
            return tuple(_rat(v, f"{where}[{k}]") for k, v in enumerate(value))
        return tuple(str(v) for v in value)
    return value


def build_config(values: dict, where: str = "config") -> SuiteConfig:
    fields = {k: _coerce_field(k, v, f"{where}.{k}") for k, v in values.items()}
    try:
        cfg = SuiteConfig(**fields)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    if cfg.m == cfg.n:
        raise ConfigError(f"{where}.m: m == n is not supported")
    for key in ("weights", "weights2"):
        w = getattr(cfg, key)
        if w is not None and len(w) != cfg.m + cfg.n:
            raise ConfigError(f"{where}.{key}: need {cfg.m + cfg.n} entries, got {len(w)}")
    return cfg


def read_config_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    for k in data:
        if k not in _FIELDS:
            raise ConfigError(f"config.{k}: unknown field")
    return data


def load_config(path, overrides: dict | None = None, command: str | None = None) -> SuiteConfig:
    """Config file values, then command defaults, with ``overrides`` (CLI flags) on top."""
    values = dict(DEFAULTS)
    if "YF_SEED" in os.environ:
        try:
            values["seed"] = int(os.environ["YF_SEED"])
        except ValueError as exc:
            raise ConfigError("YF_SEED: expected an integer") from exc
    values.update(COMMAND_DEFAULTS.get(command, {}))
    if path is not None:
        values.update(read_config_file(path))
    values.update(overrides or {})
    return build_config(values)


# --- report emission --------------------------------------------------------------

def report_json(report) -> str:
    obj = report.to_json() if hasattr(report, "to_json") else report
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def emit_report(report, path) -> None:
    Path(path).write_text(report_json(report))


def render(obj: dict, out=None) -> None:
    out = out or sys.stdout
    recs = obj.get("records", [])
    for r in recs:
        if r["status"] != "pass":
            inst = ", ".join(f"{k}={v}" for k, v in sorted(r["instance"].items()))
            print(f"FAIL {r['rid']} ({inst}) sample {r.get('sample', 0)} on {r['carrier']}", file=out)
            if r.get("witness"):
                print(f"  witness: {r['witness']}", file=out)
            for k, v in sorted((r.get("residual") or {}).items())[:4]:
                print(f"  residual {k}: {v}", file=out)
    if obj.get("resolved_sign"):
        print(f"level sign: {obj['resolved_sign']}", file=out)
    s = obj["summary"]
    print(f"pass {s['pass']}  fail {s['fail']}  total {s['total']}", file=out)


# --- subcommands ------------------------------------------------------------------

def cmd_cartan(cfg: SuiteConfig) -> int:
    size = cfg.size
    print("affine Cartan matrix a_{i,j}:")
    print(format_matrix([[cartan_affine(size, i, j) for j in size.nodes] for i in size.nodes]))
    print("b_{i,j}:")
    print(format_matrix([[b_coeff(size, i, j) for j in size.nodes] for i in size.nodes]))
    return EXIT_OK


def _lie_report(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport(cfg.echo())
    for chk in lie_relations(cfg.size):
        inst = {f"i{k}": v for k, v in enumerate(chk.nodes)}
        rep.records.append(CheckReport(chk.name, "lie", inst, "loop algebra", "pass" if chk.passed else "fail", 0,
                                       residual=None if chk.passed else {"element": str(chk.residual)}))
    return rep


def _kac_report(cfg: SuiteConfig) -> SuiteReport:
    size = cfg.size
    rep = SuiteReport(cfg.echo())
    level = Fraction(0)
    modules = [VermaModule(size, HighestWeight(list(w) if w is not None else sample_weights(f"{cfg.seed}/kac", size, tag), level))
               for w, tag in ((cfg.weights, "hw"), (cfg.weights2, "hw2"))]
    tensor = TensorModule(*modules)
    vectors = kac_vectors(size)
    rep.config["vector_count"] = len(vectors)
    for alpha, beta, z in kac_samples(size, 20, cfg.seed):
        rep.records.append(kac_identity_check(size, alpha, beta, z, tensor, vectors))
    return rep


def _finish(report: SuiteReport, out_path) -> int:
    obj = report.to_json()
    if out_path:
        emit_report(obj, out_path)
    render(obj)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_report(path) -> int:
    try:
        obj = json.loads(Path(path).read_text())
        render(obj)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: cannot read report {path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK if obj["summary"]["fail"] == 0 else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--zero-mode-len", type=int, dest="zero_mode_len")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--symbolic", action="store_const", const=True)
    common.add_argument("--no-enforce-level", action="store_const", const=False, dest="enforce_level")
    common.add_argument("--sign", choices=("theorem", "proof", "auto"))
    common.add_argument("--relations", help="comma separated relation ids or families")
    common.add_argument("--groups", help="comma separated catalog groups")
    common.add_argument("--max-vectors", type=int, dest="max_vectors", help="0 means the whole basis")
    common.add_argument("--yangian-max-factors", dest="yangian_max_factors",
                        help="PBW factors allowed in yangian-group test vectors (an integer, or 'all')")
    common.add_argument("--out", help="write the JSON report here")

    p = argparse.ArgumentParser(prog="superyangian", description="Exact checks for the affine super Yangian of sl(m|n).")
    sub = p.add_subparsers(dest="command", required=True)
    for name, text in (
        ("cartan", "print the affine Cartan matrix and b_{i,j}"),
        ("verify-lie", "defining relations of the affine Lie superalgebra on Chevalley images"),
        ("verify-ev", "relations under the evaluation map"),
        ("verify-coproduct", "minimalistic relations under the coproduct"),
        ("verify-j", "identities for the J elements"),
        ("verify-kac", "duality identity for the invariant form"),
    ):
        sub.add_parser(name, parents=[common], help=text)
    rp = sub.add_parser("report", help="re-render a stored JSON report")
    rp.add_argument("path")
    return p


def _overrides(ns) -> dict:
    out = {}
    for key in ("m", "n", "depth", "zero_mode_len", "seed", "samples", "symbolic", "enforce_level", "sign", "max_vectors"):
        val = getattr(ns, key, None)
        if val is not None:
            out[key] = val
    if out.get("max_vectors") == 0:
        out["max_vectors"] = None
    ymf = getattr(ns, "yangian_max_factors", None)
    if ymf is not None:
        try:
            out["yangian_max_factors"] = None if ymf == "all" else int(ymf)
        except ValueError:
            out["yangian_max_factors"] = ymf  # rejected with a config error
    for key in ("relations", "groups"):
        val = getattr(ns, key, None)
        if val:
            out[key] = [x.strip() for x in val.split(",") if x.strip()]
    return out


def main(argv=None) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if ns.command == "report":
        return cmd_report(ns.path)
    try:
        cfg = load_config(ns.config, _overrides(ns), ns.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if ns.command == "cartan":
        return cmd_cartan(cfg)
    if ns.command == "verify-lie":
        return _finish(_lie_report(cfg), ns.out)
    if ns.command == "verify-kac":
        return _finish(_kac_report(cfg), ns.out)
    try:
        report = run_suite(cfg)
    except KeyError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return _finish(report, ns.out)


if __name__ == "__main__":
    sys.exit(main())
