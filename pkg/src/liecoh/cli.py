"""Command line driver.

Subcommands:

* ``liecoh verify [--group G ...] [--config PATH] [--seed N] [--json] [--jobs N]``
  runs the claim suite; exit code 0 when every claim passes, 1 on any
  failure, 2 on a configuration error.
* ``liecoh catalog [--json]`` lists the model spaces with their fingerprints.
* ``liecoh export SPACE_ID [--out PATH]`` writes one space in the sparse
  JSON algebra schema with block annotations.

``LIECOH_CONFIG`` names a default configuration file.  The configuration is
an INI-style text file::

    [run]
    seed = 24301
    groups = tables, jacobi, heisenberg, curvature, splitting, catalog

    [tolerances]
    algebraic = 1e-9
    finite_difference = 1e-5

Unknown sections or keys are rejected (exit code 2).
"""

from __future__ import annotations

import argparse
import configparser
import datetime
import json
import os
import sys

from . import algebra as la
from . import spaces as sps
from .claims import RunConfig, all_groups, run_suite

CONFIG_ENV = "LIECOH_CONFIG"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def load_config(path: str | None) -> RunConfig:
    """Parse the INI configuration; None falls back to env, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    cfg = RunConfig()
    if path is None:
        return cfg
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config: {err}")
    except configparser.Error as err:
        raise ConfigError(f"malformed config: {err}")
    known = {"run": {"seed", "groups"},
             "tolerances": {"algebraic", "finite_difference"}}
    for section in parser.sections():
        if section not in known:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in known[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
    try:
        seed = parser.getint("run", "seed", fallback=cfg.seed)
        groups_raw = parser.get("run", "groups", fallback=None)
        groups = (tuple(g.strip() for g in groups_raw.split(",") if g.strip())
                  if groups_raw and groups_raw.strip() != "all" else cfg.groups)
        tol_a = parser.getfloat("tolerances", "algebraic", fallback=cfg.tol_algebraic)
        tol_fd = parser.getfloat("tolerances", "finite_difference", fallback=cfg.tol_fd)
        return RunConfig(seed=seed, groups=groups, tol_algebraic=tol_a, tol_fd=tol_fd)
    except ValueError as err:
        raise ConfigError(f"bad config value: {err}")


def _space_fingerprint(space: sps.ReductiveSpace) -> dict:
    alg = space.algebra
    return {
        "dim": alg.dim,
        "isotropy_dim": space.isotropy.dim,
        "block_dims": [b.dim for b in space.blocks],
        "m_dim": space.m_dim,
        "killing_signature": list(la.signature(la.killing_form(alg))),
        "center_dim": la.center_dimension(alg),
        "jacobi_residual": la.jacobi_residual(alg),
    }


def export_space(space_id: str) -> dict:
    space = sps.catalog_entry(space_id)
    return {
        "schema_version": 1,
        "id": space_id,
        "label": space.label,
        "algebra": la.to_json_dict(space.algebra),
        "isotropy_basis": space.isotropy.basis.tolist(),
        "block_bases": [b.basis.tolist() for b in space.blocks],
        "notes": list(space.notes),
        "fingerprint": _space_fingerprint(space),
    }


def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = RunConfig(seed=args.seed, groups=cfg.groups,
                            tol_algebraic=cfg.tol_algebraic, tol_fd=cfg.tol_fd)
        if args.group:
            cfg = RunConfig(seed=cfg.seed, groups=tuple(args.group),
                            tol_algebraic=cfg.tol_algebraic, tol_fd=cfg.tol_fd)
    except (ConfigError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    result = run_suite(cfg, jobs=args.jobs)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.json:
            for rep in result.reports:
                print(json.dumps(rep.to_json_dict(), sort_keys=True), file=out)
            summary = dict(result.summary)
            summary["timestamp"] = datetime.datetime.now(
                datetime.timezone.utc).isoformat()
            print(json.dumps(summary, sort_keys=True), file=out)
        else:
            for rep in result.reports:
                mark = rep.status.upper()
                print(f"{mark:5s} {rep.claim_id}  (residual={rep.residual:.3g}, "
                      f"tol={rep.tolerance:g}, {rep.runtime_ms} ms)", file=out)
            s = result.summary
            print(f"{s['passed']}/{s['total']} passed, {s['failed']} failed, "
                  f"{s['skipped']} skipped (seed {s['seed']})", file=out)
    finally:
        if args.out:
            out.close()
    return result.exit_code


def cmd_catalog(args) -> int:
    rows = []
    for sid in sps.catalog_ids():
        space = sps.catalog_entry(sid)
        rows.append({"id": sid, **_space_fingerprint(space)})
    if args.json:
        print(json.dumps({"schema_version": 1, "spaces": rows}, sort_keys=True))
        return EXIT_OK
    head = f"{'id':44s} {'dim':>4s} {'k':>3s} {'blocks':12s} {'killing':14s} {'z(g)':>4s}"
    print(head)
    print("-" * len(head))
    for r in rows:
        sig = ",".join(str(v) for v in r["killing_signature"])
        blocks = "+".join(str(v) for v in r["block_dims"])
        print(f"{r['id']:44s} {r['dim']:4d} {r['isotropy_dim']:3d} {blocks:12s} "
              f"({sig:12s}) {r['center_dim']:4d}")
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        payload = export_space(args.space_id)
    except KeyError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liecoh",
        description="structure-constant engine and claim verifier for "
                    "low-cohomogeneity homogeneous geometry")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the claim suite")
    p_verify.add_argument("--group", action="append", choices=all_groups(),
                          help="restrict to a claim group (repeatable)")
    p_verify.add_argument("--config", default=None, help="INI config path")
    p_verify.add_argument("--seed", type=int, default=None, help="sampling seed")
    p_verify.add_argument("--json", action="store_true",
                          help="JSON-lines reports plus a summary object")
    p_verify.add_argument("--jobs", type=int, default=4, help="worker threads")
    p_verify.add_argument("--out", default=None, help="write output to a file")
    p_verify.set_defaults(fn=cmd_verify)

    p_cat = sub.add_parser("catalog", help="list the model spaces")
    p_cat.add_argument("--json", action="store_true")
    p_cat.set_defaults(fn=cmd_catalog)

    p_exp = sub.add_parser("export", help="export one space as JSON")
    p_exp.add_argument("space_id")
    p_exp.add_argument("--out", default=None)
    p_exp.set_defaults(fn=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
