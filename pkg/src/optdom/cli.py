"""
optdom command line.

    optdom analyze --matrix m.json --codomain e.json --p 2 --schedule 2,4,8,16 --seed 7 --out report.json --md report.md
    optdom norm --selector l1m --matrix m.json --codomain e.json --vector f.json
    optdom verify --scale quick
    optdom generate hilbert

Exit codes: 0 success, 1 failed invariants (verify), 2 invalid input or
unmet precondition, 3 oracle disagreement, 4 internal error.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, Optional, Sequence

from optdom.norm_engine.analysis.report import build_payload, render_markdown, render_verify_summary
from optdom.norm_engine.entities.verify_summary import SCALES
from optdom.norm_engine.errors import ConfigError, OptdomError, OracleDisagreementError
from optdom.norm_engine.matop.generators import BUILTIN_KINDS, builtin_spec
from optdom.runners.analyze_runner import run_analyze
from optdom.runners.norm_runner import SELECTORS, run_norm
from optdom.runners.verify_runner import run_verify
from optdom.storage.exporter import ReportExporter
from optdom.storage.loader import (
    FileSpecProvider,
    load_json,
    parse_config,
    parse_matrix,
    parse_schedule,
    parse_space,
    parse_vector,
)

SEED_ENV = "OPTDOM_SEED"
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_ORACLE = 3
EXIT_INTERNAL = 4

logger = logging.getLogger(__name__)


def env_seed() -> int:
    """Seed from OPTDOM_SEED, 0 when unset."""
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV}='{raw}' is not an integer.", f"${SEED_ENV}")


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


# --- subcommands ---

def cmd_analyze(args: argparse.Namespace) -> int:
    overrides: Dict[str, Any] = {
        "matrix": _json_node(args.matrix),
        "codomain": _json_node(args.codomain),
        "p": args.p,
        "schedule": parse_schedule(args.schedule) if args.schedule else None,
        "n_E": args.n_E,
        "n_enum": args.n_enum,
        "seed": args.seed,
        "restarts": args.restarts,
        "use_tail": False if args.no_tail else None,
        "domination_n": args.domination_n,
    }
    if args.probe:
        overrides["probes"] = [load_json(path) for path in args.probe]
    outputs = {"json": args.out, "md": args.md}

    if args.config:
        config_dir = os.path.dirname(os.path.abspath(args.config))
        data = load_json(args.config)
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object.", "$")
        merged = dict(data)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        # flags are relative to the working directory, the config file to its own folder
        for key in ("matrix", "codomain"):
            if overrides[key] is not None and isinstance(overrides[key], str):
                merged[key] = os.path.abspath(overrides[key])
        merged_outputs = dict(data.get("outputs") or {})
        merged_outputs.update({k: v for k, v in outputs.items() if v is not None})
        merged["outputs"] = merged_outputs
        merged.setdefault("seed", env_seed())
        config = parse_config(merged, base_dir=config_dir)
    else:
        data = {k: v for k, v in overrides.items() if v is not None}
        for key in ("matrix", "codomain", "p"):
            if key not in data:
                raise ConfigError(f"missing required field '{key}' (give --{key} or --config).", f"$.{key}")
        data["outputs"] = outputs
        data.setdefault("seed", env_seed())
        config = parse_config(data, base_dir=os.getcwd())

    result = run_analyze(config, verbose=args.verbose > 0)
    report = result["report"]
    if not (config.json_path or config.md_path):
        sys.stdout.write(render_markdown(report))
    else:
        print(f"{report.config['matrix']['name']}: {report.factorability.verdict.value}")
    return EXIT_OK


def cmd_norm(args: argparse.Namespace) -> int:
    provider = FileSpecProvider(os.getcwd())
    vector_node = _require(_json_node(args.vector), "vector")
    f = provider.get_vector(vector_node) if isinstance(vector_node, str) else parse_vector(vector_node, "$.vector")
    seed = args.seed if args.seed is not None else env_seed()
    space = matrix = codomain = None
    if args.selector == "space":
        space = _space(_require(_json_node(args.space), "space"), provider)
    else:
        node = _require(_json_node(args.matrix), "matrix")
        matrix = provider.get_matrix(node) if isinstance(node, str) else parse_matrix(node, "$.matrix")
        codomain = _space(_require(_json_node(args.codomain), "codomain"), provider)

    estimate = run_norm(args.selector, f, space=space, matrix=matrix, codomain=codomain, p=args.p,
                        n_E=args.n_E, n_enum=args.n_enum, seed=seed)
    exporter = ReportExporter()
    payload = build_payload(estimate, "norm")
    if args.out:
        exporter.export_json(payload, args.out)
    sys.stdout.write(exporter.to_json(estimate))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else env_seed()
    summary = run_verify(seed=seed, scale=args.scale, verbose=args.verbose > 0, json_path=args.out)
    sys.stdout.write(render_verify_summary(summary))
    return EXIT_OK if summary.passed else EXIT_FAILED


def cmd_generate(args: argparse.Namespace) -> int:
    spec = builtin_spec(args.kind)
    text = json.dumps(spec, indent=2, sort_keys=True) + "\n"
    if args.out:
        ReportExporter().export_text(text, args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")

    ap = argparse.ArgumentParser(prog="optdom", description="Optimal domains of matrix operators on sequence spaces.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", parents=[common], help="continuity, factorization constants and verdict")
    a.add_argument("--config", help="JSON config; flags given on the command line win over it")
    a.add_argument("--matrix", help="matrix JSON/CSV path or inline JSON")
    a.add_argument("--codomain", help="codomain SpaceSpec JSON path or inline JSON")
    a.add_argument("--p", type=float)
    a.add_argument("--schedule", help="comma-separated strictly increasing sizes, e.g. 2,4,8,16")
    a.add_argument("--n-E", dest="n_E", type=int, help="codomain rows kept (default 4 x max schedule)")
    a.add_argument("--n-enum", dest="n_enum", type=int)
    a.add_argument("--seed", type=int, help=f"global seed (default ${SEED_ENV}, then 0)")
    a.add_argument("--restarts", type=int)
    a.add_argument("--domination-n", dest="domination_n", type=int)
    a.add_argument("--no-tail", action="store_true", help="ignore declared tail models")
    a.add_argument("--probe", action="append", help="FiniteVector JSON path (repeatable)")
    a.add_argument("--out", help="JSON report path")
    a.add_argument("--md", help="markdown report path")
    a.set_defaults(func=cmd_analyze)

    n = sub.add_parser("norm", parents=[common], help="norm of one vector")
    n.add_argument("--selector", choices=SELECTORS, default="space")
    n.add_argument("--vector", help="FiniteVector JSON path or inline JSON")
    n.add_argument("--space", help="SpaceSpec JSON path or inline JSON (selector 'space')")
    n.add_argument("--matrix", help="matrix JSON/CSV path or inline JSON (selectors 'l1m', 'lpm')")
    n.add_argument("--codomain", help="codomain SpaceSpec JSON path or inline JSON")
    n.add_argument("--p", type=float, help="exponent for selector 'lpm'")
    n.add_argument("--n-E", dest="n_E", type=int, default=64, help="codomain rows kept")
    n.add_argument("--n-enum", dest="n_enum", type=int, default=20)
    n.add_argument("--seed", type=int)
    n.add_argument("--out", help="JSON output path")
    n.set_defaults(func=cmd_norm)

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--scale", choices=SCALES, default="quick")
    v.add_argument("--seed", type=int)
    v.add_argument("--out", help="JSON summary path")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", parents=[common], help="emit a built-in matrix spec")
    g.add_argument("kind", choices=BUILTIN_KINDS)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except OracleDisagreementError as exc:
        print(f"error: oracle disagreement: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OptdomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:
        logger.exception("Unexpected failure in '%s'", args.cmd)
        print(f"error: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


# --- helpers ---

def _json_node(value: Optional[str]) -> Any:
    """Inline JSON when the flag starts with '{', otherwise a path kept as a string."""
    if value is None:
        return None
    text = value.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"inline JSON is invalid ({exc.msg}).", "$")
    return value


def _require(node: Any, name: str) -> Any:
    if node is None:
        raise ConfigError(f"missing --{name}.", f"$.{name}")
    return node


def _space(node: Any, provider: FileSpecProvider):
    return provider.get_space(node) if isinstance(node, str) else parse_space(node, "$.space")
