"""Command-line driver: ``table``, ``verify`` and ``limit``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .braiding import HeckeSymmetry, drinfeld_jimbo, load_r_matrix
from .heckerep import partitions
from .scalar import NonGenericError, ScalarBackend, check_generic
from .spectral import character_table, classical_limit
from .verify import DEFAULT_CAP, SuiteConfig, exit_code, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: int
    k_max: int
    n_max: int
    backend: str
    samples: int
    seed: int
    r_matrix_file: str | None
    output: str
    out: str | None
    cap: int
    lam: tuple[int, ...] = ()

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        if ns.N < 1:
            raise UsageError("--N must be >= 1")
        if ns.k_max < 0 or ns.n_max < 0:
            raise UsageError("--k-max and --n-max must be >= 0")
        if ns.samples < 1:
            raise UsageError("--samples must be >= 1")
        cap = ns.cap if ns.cap is not None else DEFAULT_CAP[ns.backend]
        lam = _parse_lambda(getattr(ns, "lam", "") or "")
        return cls(
            command=ns.command,
            N=ns.N,
            k_max=ns.k_max,
            n_max=ns.n_max,
            backend=ns.backend,
            samples=ns.samples,
            seed=ns.seed,
            r_matrix_file=ns.r_matrix,
            output=ns.output,
            out=ns.out,
            cap=cap,
            lam=lam,
        )


def _parse_lambda(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        lam = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse partition {text!r}") from None
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise UsageError(f"{lam} is not a partition")
    return tuple(x for x in lam if x)


def sample_points(count: int, seed: int) -> list[Fraction]:
    """Seeded generic rationals ``a/b`` with ``2 <= a, b <= 97`` and ``a != b``."""
    rng = random.Random(seed)
    out: list[Fraction] = []
    while len(out) < count:
        a, b = rng.randint(2, 97), rng.randint(2, 97)
        if a == b:
            continue
        q0 = Fraction(a, b)
        try:
            check_generic(q0)
        except NonGenericError:
            continue
        if q0 not in out:
            out.append(q0)
    return out


def backends(cfg: RunConfig) -> list[ScalarBackend]:
    if cfg.backend == "symbolic":
        return [ScalarBackend.symbolic()]
    return [ScalarBackend.sampled(q0) for q0 in sample_points(cfg.samples, cfg.seed)]


def build_symmetry(cfg: RunConfig, backend: ScalarBackend, check: bool) -> HeckeSymmetry:
    if cfg.r_matrix_file:
        try:
            text = Path(cfg.r_matrix_file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.r_matrix_file}: {exc}") from None
        try:
            return load_r_matrix(text, backend, check=check)
        except (ValueError, KeyError) as exc:
            if check:
                raise UsageError(f"invalid R-matrix file: {exc}") from None
            raise
    return drinfeld_jimbo(cfg.N, backend, check=check)


# -- commands ---------------------------------------------------------------------

def cmd_table(cfg: RunConfig) -> tuple[int, object]:
    backend = backends(cfg)[0]
    H = build_symmetry(cfg, backend, check=True)
    m = H.m
    entries = []
    for k in range(cfg.k_max + 1):
        for lam in partitions(k, m):
            entry = {"lambda": list(lam)}
            for side in ("V", "V*"):
                entry[side] = character_table(lam, m, cfg.n_max, side, H.q).to_dict()
            entries.append(entry)
    return EXIT_OK, {"N": H.N, "m": m, "backend": backend.describe(), "entries": entries}


def cmd_verify(cfg: RunConfig) -> tuple[int, object]:
    report: list[dict] = []
    for backend in backends(cfg):
        label = None if backend.is_symbolic else {"q": str(backend.q0)}
        try:
            H = build_symmetry(cfg, backend, check=False)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"invalid R-matrix file: {exc}") from None
        suite = SuiteConfig(k_max=cfg.k_max, n_max=cfg.n_max, cap=cfg.cap, label=label)
        report.extend(run_suite(H, suite))
    return exit_code(report), report


def cmd_limit(cfg: RunConfig) -> tuple[int, object]:
    if len(cfg.lam) > cfg.N:
        raise UsageError(f"partition {cfg.lam} has more than N={cfg.N} rows")
    res = classical_limit(cfg.lam, cfg.N, max(cfg.n_max, 1))
    return EXIT_OK, res


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "limit": cmd_limit}


# -- rendering ----------------------------------------------------------------------

def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render_json(payload) -> str:
    return json.dumps(payload, indent=1, default=_json_default) + "\n"


def render_csv(command: str, payload) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "table":
        w.writerow(["lambda", "side", "quantity", "n", "value"])
        for entry in payload["entries"]:
            lam = ",".join(map(str, entry["lambda"]))
            for side in ("V", "V*"):
                t = entry[side]
                for i, v in enumerate(t["mu"], start=1):
                    w.writerow([lam, side, "mu", i, v])
                for quantity in ("p", "t", "a"):
                    for n, v in t[quantity].items():
                        w.writerow([lam, side, quantity, n, v])
    elif command == "verify":
        w.writerow(["check", "params", "status", "witness"])
        for e in payload:
            status = "skipped" if e.get("skipped") else ("pass" if e["pass"] else "fail")
            w.writerow([e["check"], json.dumps(e["params"], default=_json_default), status, e["witness"] or ""])
    else:
        w.writerow(["i", "mu_hat", "mu_hat_limit", "d_hat"])
        for i, row in enumerate(zip(payload["mu_hat"], payload["mu_hat_limits"], payload["d_hat"]), start=1):
            w.writerow([i, *map(str, row)])
        w.writerow([])
        w.writerow(["n", "pp_power_sum"])
        for n, v in enumerate(payload["pp_power_sums"], start=1):
            w.writerow([n, str(v)])
    return buf.getvalue()


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=2, help="dimension of V (default 2)")
    common.add_argument("--k-max", type=int, default=3, help="largest tensor power")
    common.add_argument("--n-max", type=int, default=3, help="largest power-sum order")
    common.add_argument("--backend", choices=["symbolic", "sampled"], default="symbolic")
    common.add_argument("--samples", type=int, default=3, help="number of sampled q values")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled q values")
    common.add_argument("--r-matrix", metavar="FILE", help="JSON file {N, R} replacing the standard R")
    common.add_argument("--output", choices=["json", "csv"], default="json")
    common.add_argument("--out", metavar="DIR", help="write <command>.<ext> into DIR instead of stdout")
    common.add_argument("--cap", type=int, default=None, help="largest N^legs computed (default 81 symbolic, 729 sampled)")

    parser = argparse.ArgumentParser(
        prog="qmatspec",
        description="Characters of reflection equation algebras: tables, verification and classical limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="character tables for all partitions up to k-max")
    sub.add_parser("verify", parents=[common], help="run every identity check")
    lim = sub.add_parser("limit", parents=[common], help="classical q -> 1 limit for one partition")
    lim.add_argument("--lambda", dest="lam", default="", help="partition as comma list, e.g. 2,1,0")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        cfg = RunConfig.from_args(ns)
        code, payload = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"qmatspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_json(payload) if cfg.output == "json" else render_csv(cfg.command, payload)
    if cfg.out:
        path = Path(cfg.out)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{cfg.command}.{cfg.output}").write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
