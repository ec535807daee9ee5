"""Command-line front end: invariant queries, L-shape export, family sweeps.

Exit codes: 0 success, 1 verification/certificate failure, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .core import GcdNotOne, NoGaps, apery_set, frobenius, genus, mk_semigroup
from .factorization import betti_elements
from .families import (
    OutOfValidity,
    carve_schema,
    family_schema,
    schema_arrangement,
    verify_family,
    _GENERATORS,
)
from .lshape import (
    CardinalityMismatch,
    arranged_generators,
    export_voxels,
    is_unique_lshape,
    lshape_via_propnottrick,
    lshape_via_proptrick,
    lshape_stats,
)
from .relations import ArrangementMode, NotEmbeddingDim4, select_arrangement


@dataclass
class CommandConfig:
    gens: tuple[int, ...] | None = None
    family: str | None = None
    n_range: tuple[int, int] | None = None
    format: str = "human"
    output: str | None = None
    check: bool = False
    fallback_oracle: bool = False
    betti_strategy: str = "auto"
    jobs: int = 1
    timing: bool = False

    def __post_init__(self):
        if (self.gens is None) == (self.family is None):
            raise ValueError("exactly one of --gens and --family is required")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")


def _parse_gens(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise ValueError(f"cannot parse generator list {text!r}")


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
    else:
        a = b = int(text)
    if a > b:
        raise ValueError(f"empty range {text!r}")
    return a, b


def _default_jobs() -> int:
    env = os.environ.get("SEMIGROUP_LAB_JOBS")
    return max(1, int(env)) if env else 1


def _emit(payload: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def cmd_invariants(cfg: CommandConfig) -> int:
    S = mk_semigroup(cfg.gens)
    try:
        f_val, g_val = frobenius(S), genus(S)
    except NoGaps:
        f_val, g_val = -1, 0
    report = betti_elements(S, cfg.betti_strategy)
    catenary = max(report.catenary_by_element.values(), default=0)
    presentation = sum(len(report.partitions[b].classes) - 1 for b in report.betti)
    doc = {
        "generators": list(cfg.gens),
        "minimal_generators": list(S.minimal_generators),
        "embedding_dimension": S.embedding_dimension,
        "frobenius": f_val,
        "genus": g_val,
        "apery_size": S.multiplicity,
        "betti": list(report.betti),
        "catenary": catenary,
        "presentation_size": presentation,
    }
    if cfg.format == "json":
        _emit(json.dumps(doc, separators=(",", ":")) + "\n", cfg.output)
    elif cfg.format == "csv":
        lines = ["key,value"]
        for key, value in doc.items():
            text = ";".join(str(v) for v in value) if isinstance(value, list) else str(value)
            lines.append(f"{key},{text}")
        _emit("\n".join(lines) + "\n", cfg.output)
    else:
        lines = [f"{key}: {value}" for key, value in doc.items()]
        _emit("\n".join(lines) + "\n", cfg.output)
    return 0


def _build_lshape(cfg: CommandConfig):
    """Returns (semigroup, shape, arrangement); shape construction may raise."""
    if cfg.family:
        n = cfg.n_range[0]
        schema = family_schema(cfg.family, n)
        S = mk_semigroup(schema.generators)
        if S.embedding_dimension != 4:
            raise NotEmbeddingDim4(f"{cfg.family} n={n} has e(S) != 4")
        arrangement = schema_arrangement(schema)
        shape = carve_schema(schema)
        if shape.figure.cube_count != schema.apex_modulus:
            raise CardinalityMismatch(shape.figure.cube_count, schema.apex_modulus)
        return S, shape, arrangement
    S = mk_semigroup(cfg.gens)
    arrangement = select_arrangement(S)
    if arrangement.mode is ArrangementMode.PROP_TRICK:
        shape = lshape_via_proptrick(S, arrangement)
    else:
        shape = lshape_via_propnottrick(S, arrangement)
    return S, shape, arrangement


def cmd_lshape(cfg: CommandConfig) -> int:
    summary_to_stdout = cfg.output is not None
    info = sys.stdout if summary_to_stdout else sys.stderr

    try:
        S, shape, arrangement = _build_lshape(cfg)
    except CardinalityMismatch as exc:
        if not cfg.fallback_oracle:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        gens = cfg.gens if cfg.gens else _GENERATORS[cfg.family](cfg.n_range[0])
        S = mk_semigroup(gens)
        print(f"WARN: {exc}; falling back to the Apery oracle", file=info)
        ap = apery_set(S, S.multiplicity)
        print(f"frobenius={ap.max() - ap.modulus}", file=info)
        return 0

    if cfg.check:
        oracle = frozenset(apery_set(S, shape.apex_modulus).elements)
        if shape.label_set() != oracle:
            print("error: carved labels disagree with the Apery oracle", file=sys.stderr)
            return 1

    stats = lshape_stats(shape)
    fmt = {"human": "text", "text": "text", "json": "json", "obj": "obj"}[cfg.format]
    payload = export_voxels(shape, fmt)
    if cfg.output:
        with open(cfg.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)

    d = arranged_generators(S, arrangement)
    print(f"arrangement={','.join(str(v) for v in d)} mode={arrangement.mode.value}", file=info)
    print(f"cubes={len(shape.cubes)}", file=info)
    print(f"frobenius={stats.frobenius}", file=info)
    print(f"genus={stats.genus}", file=info)
    print(f"unique={'true' if is_unique_lshape(S, arrangement) else 'false'}", file=info)
    return 0


def cmd_verify(cfg: CommandConfig) -> int:
    lo, hi = cfg.n_range
    report = verify_family(cfg.family, range(lo, hi + 1), jobs=cfg.jobs)
    if cfg.format == "json":
        _emit(report.to_json(timing=cfg.timing), cfg.output)
    else:
        _emit(report.to_csv(timing=cfg.timing), cfg.output)
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semigroup-lab",
        description="Numerical semigroup invariants and staircase carving",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="invariants of one semigroup")
    p_inv.add_argument("--gens", type=str, help="comma-separated generators")
    p_inv.add_argument("--family", choices=("squares", "triangular"))
    p_inv.add_argument("--n", type=str, help="family parameter")
    p_inv.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p_inv.add_argument("--betti-strategy", choices=("auto", "remark", "u"), default="auto")
    p_inv.add_argument("-o", "--output")

    p_lsh = sub.add_parser("lshape", help="carve and export an L-shape")
    p_lsh.add_argument("--gens", type=str)
    p_lsh.add_argument("--family", choices=("squares", "triangular"))
    p_lsh.add_argument("--n", type=str)
    p_lsh.add_argument("--format", choices=("text", "json", "obj"), default="text")
    p_lsh.add_argument("-o", "--output")
    p_lsh.add_argument("--check", action="store_true", help="compare labels to the oracle")
    p_lsh.add_argument("--fallback-oracle", action="store_true")

    p_ver = sub.add_parser("verify", help="family verification sweep")
    p_ver.add_argument("--family", required=True, choices=("squares", "triangular"))
    p_ver.add_argument("--n", type=str, required=True, help="range a..b (inclusive)")
    p_ver.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ver.add_argument("--jobs", type=int, default=None)
    p_ver.add_argument("--timing", action="store_true")
    p_ver.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CommandConfig(
            gens=_parse_gens(args.gens) if getattr(args, "gens", None) else None,
            family=getattr(args, "family", None),
            n_range=_parse_range(args.n) if getattr(args, "n", None) else None,
            format=args.format,
            output=args.output,
            check=getattr(args, "check", False),
            fallback_oracle=getattr(args, "fallback_oracle", False),
            betti_strategy=getattr(args, "betti_strategy", "auto"),
            jobs=args.jobs if getattr(args, "jobs", None) else _default_jobs(),
            timing=getattr(args, "timing", False),
        )
        if args.command == "verify" and cfg.family is None:
            raise ValueError("verify needs --family")
        if args.command in ("invariants", "lshape") and cfg.family and cfg.n_range is None:
            raise ValueError("--family needs --n")
        if cfg.family is None and cfg.gens is None:
            raise ValueError("either --gens or --family/--n is required")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "invariants":
            if cfg.gens is None:
                cfg.gens = _GENERATORS[cfg.family](cfg.n_range[0])
                cfg.family = None
            return cmd_invariants(cfg)
        if args.command == "lshape":
            return cmd_lshape(cfg)
        return cmd_verify(cfg)
    except (GcdNotOne, NotEmbeddingDim4, OutOfValidity, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
