"""Command-line front end.

Exit codes: 0 success (and, for ``verify``, a complete channel), 1 failed
verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .channels import apply, decrypt, encrypt, epsilon_of, pqc_report, trace_distance
from .ensembles import UnknownEnsembleError, ensemble_labels, get_ensemble, random_subensemble
from .linalg import (
    EXACT_TOL,
    DensityMatrix,
    PreconditionError,
    ShapeError,
    matrix_to_json,
    random_density,
    schatten_norm,
)
from .polytopes import POLYTOPE_NAMES, UnknownPolytopeError, edge_graph, polytope, verify_isotropy
from .qft import TABLE_I, correspondence_report, extended_qft_map, hypervector_partition

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

COMMANDS = ("verify", "ensemble-list", "ensemble-dump", "polytope-gen", "table-reproduce",
            "epsilon-curve", "qft-map", "protocol-demo")
_CSV_COMMANDS = ("epsilon-curve", "polytope-gen")

# trial t of an epsilon curve draws its members from seed + t * stride
TRIAL_SEED_STRIDE = 1_000_003


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    tolerance: float = EXACT_TOL
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.output_format == "csv" and self.command not in _CSV_COMMANDS:
            raise UsageError(f"csv output is only available for {', '.join(_CSV_COMMANDS)}")


def _float_text(x: float) -> str:
    return repr(float(x))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def parse_state(spec: str, d: int) -> DensityMatrix:
    """``basis:<k>``, ``diag:<p0,p1,...>`` or ``random:<seed>``."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise UsageError(f"state spec {spec!r} must look like basis:<k>, diag:<p,...> or random:<seed>")
    try:
        if kind == "basis":
            return DensityMatrix.basis(d, int(arg))
        if kind == "diag":
            probs = [float(x) for x in arg.split(",")]
            if len(probs) != d:
                raise UsageError(f"diag state needs {d} entries, got {len(probs)}")
            return DensityMatrix.diagonal(probs)
        if kind == "random":
            return random_density(d, int(arg))
    except (ValueError, PreconditionError) as exc:
        raise UsageError(f"bad state spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown state kind {kind!r}")


def _ensemble_from(opts, seed):
    try:
        return get_ensemble(opts["ensemble"], d=opts.get("d"), n=opts.get("n"), seed=seed)
    except (UnknownEnsembleError, PreconditionError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None


# -- commands ---------------------------------------------------------------

def _cmd_verify(cfg: RunConfig):
    e = _ensemble_from(cfg.options, cfg.seed)
    report = pqc_report(e, cfg.tolerance)
    if cfg.output_format == "text":
        lines = [f"ensemble     {report.label}", f"d            {report.dim}",
                 f"|K|          {report.cardinality}", f"complete     {report.complete}",
                 f"residual     {report.completeness_residual:.3e}"]
        for p, v in report.epsilon_by_p.items():
            key = "inf" if math.isinf(p) else format(p, "g")
            lines.append(f"eps(p={key:<3})   {v:.3e}")
        lines.append(f"entropy      {report.entropy_nats:.12f} nats / {report.entropy_bits:.12f} bits")
        text = "\n".join(lines) + "\n"
    else:
        text = _dump_json(report.to_json())
    return text, (EXIT_OK if report.complete else EXIT_FAILED)


def _cmd_ensemble_list(cfg: RunConfig):
    labels = ensemble_labels()
    if cfg.output_format == "text":
        return "\n".join(labels) + "\n", EXIT_OK
    return _dump_json({"ensembles": labels}), EXIT_OK


def _cmd_ensemble_dump(cfg: RunConfig):
    e = _ensemble_from(cfg.options, cfg.seed)
    doc = {
        "label": e.label,
        "d": e.dim,
        "cardinality": len(e),
        "members": [matrix_to_json(u) for u in e.members],
    }
    return _dump_json(doc), EXIT_OK


def _polytope_doc(name):
    p = polytope(name)
    iso = verify_isotropy(p.vertices, p.dim)
    counts = p.expected_counts
    return p, {
        "name": p.name,
        "label": p.label,
        "dim": p.dim,
        "schlaefli": list(p.schlaefli),
        "coxeter_group": p.coxeter_group or None,
        "expected_counts": {"vertices": counts.vertices, "edges": counts.edges,
                            "faces": counts.faces, "cells": counts.cells},
        "edge_count": len(edge_graph(p)),
        "isotropy": {"n": iso.n, "centroid_norm": iso.centroid_norm,
                     "frame_deviation": iso.frame_deviation},
        "vertices": [[float(x) for x in row] for row in p.vertices],
    }


def _cmd_polytope_gen(cfg: RunConfig):
    name = cfg.options["name"]
    try:
        p, doc = _polytope_doc(name)
    except UnknownPolytopeError as exc:
        raise UsageError(exc.args[0]) from None
    if cfg.output_format == "csv":
        header = [f"x{i}" for i in range(p.dim)]
        rows = [[format(float(x), ".17g") for x in row] for row in p.vertices]
        return _csv_text(header, rows), EXIT_OK
    return _dump_json(doc), EXIT_OK


def _table_text(rows) -> str:
    cols = ["label", "schlaefli", "cells", "t", "basis", "|K|", "optimal", "secure"]
    body = []
    for r in rows:
        body.append([
            r.label,
            "[" + ",".join(map(str, r.schlaefli)) + "]" if r.schlaefli else "-",
            str(r.cells) if r.cells is not None else "-",
            str(r.hypervector_t) if r.hypervector_t is not None else "-",
            str(r.basis_vectors),
            str(r.cardinality),
            "yes" if r.optimal else "no",
            "yes" if r.secure else "no",
        ])
    widths = [max(len(c), *(len(b[i]) for b in body)) for i, c in enumerate(cols)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*cols), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*b) for b in body]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _cmd_table_reproduce(cfg: RunConfig):
    rows = correspondence_report()
    if cfg.output_format == "text":
        return _table_text(rows), EXIT_OK
    return _dump_json({"rows": [r.to_json() for r in rows]}), EXIT_OK


def epsilon_curve(d, p, sizes, trials, seed, state_spec="basis:0", workers=1):
    """Rows ``(n, trial, epsilon)`` for Haar sub-ensembles of each size.

    Trial ``t`` uses base seed ``seed + t * TRIAL_SEED_STRIDE`` for every
    size, so results do not depend on the worker count.
    """
    rho = parse_state(state_spec, d)
    jobs = [(n, t) for n in sizes for t in range(trials)]

    def run(job):
        n, t = job
        e = random_subensemble(d, n, seed + t * TRIAL_SEED_STRIDE)
        return n, t, epsilon_of(e, rho, p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def _parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    p = float(text)
    if not p >= 1.0:
        raise UsageError("--p must be >= 1 or inf")
    return p


def _cmd_epsilon_curve(cfg: RunConfig):
    o = cfg.options
    try:
        sizes = [int(x) for x in o["n"].split(",")]
    except ValueError:
        raise UsageError(f"--n must be a comma-separated list of integers, got {o['n']!r}") from None
    if any(n < 1 for n in sizes) or o["trials"] < 1 or o["d"] < 2:
        raise UsageError("need d >= 2, every n >= 1 and trials >= 1")
    p = _parse_p(o["p"])
    rows = epsilon_curve(o["d"], p, sizes, o["trials"], cfg.seed, o["state"], o["workers"])
    if cfg.output_format == "csv":
        return _csv_text(["n", "trial", "epsilon"], [[n, t, _float_text(eps)] for n, t, eps in rows]), EXIT_OK
    medians = {str(n): float(np.median([eps for m, _, eps in rows if m == n])) for n in sizes}
    doc = {
        "d": o["d"], "p": "inf" if math.isinf(p) else p, "trials": o["trials"], "seed": cfg.seed,
        "state": o["state"],
        "rows": [{"n": n, "trial": t, "epsilon": eps} for n, t, eps in rows],
        "median_by_n": medians,
    }
    return _dump_json(doc), EXIT_OK


def _cmd_qft_map(cfg: RunConfig):
    o = cfg.options
    try:
        part = hypervector_partition(o["polytope"])
        state = extended_qft_map(o["j"], o["d"], part.D)
    except UnknownPolytopeError as exc:
        raise UsageError(exc.args[0]) from None
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    hv = part.assigned_hypervector
    doc = {
        "polytope": o["polytope"],
        "j": o["j"],
        "d": o["d"],
        "D": part.D,
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
        "partition": {
            "s": part.s,
            "t": part.t,
            "cells": [list(c) for c in part.cells],
            "hypervector": {"t": hv.t, "solid": hv.solid,
                            "vectors": [[float(x) for x in v] for v in hv.vectors]},
        },
    }
    return _dump_json(doc), EXIT_OK


def protocol_demo(ensemble_label, state_spec, key_index, seed, d=None):
    """Alice encrypts with key ``k``, Eve sees the channel average, Bob decrypts."""
    e = get_ensemble(ensemble_label, d=d, seed=seed)
    rho = parse_state(state_spec, e.dim)
    if key_index == "random":
        key = int(np.random.default_rng(seed).integers(len(e)))
    else:
        key = int(key_index)
        if not 0 <= key < len(e):
            raise UsageError(f"key {key} out of range for |K|={len(e)}")
    sigma = encrypt(rho, e, key)
    eve = apply(e, rho)
    back = decrypt(sigma, e, key)
    mms = np.eye(e.dim) / e.dim
    return {
        "ensemble": e.label,
        "d": e.dim,
        "cardinality": len(e),
        "key_index": key,
        "state": matrix_to_json(rho.matrix),
        "unitary": matrix_to_json(e.members[key]),
        "encrypted": matrix_to_json(sigma.matrix),
        "eavesdropper_view": matrix_to_json(eve.matrix),
        "eavesdropper_distance_to_mms": 0.5 * schatten_norm(eve.matrix - mms, 1),
        "decrypted": matrix_to_json(back.matrix),
        "roundtrip_trace_distance": trace_distance(rho, back),
    }


def _format_matrix(rows) -> str:
    m = np.array([[complex(re, im) for re, im in row] for row in rows])
    return np.array2string(np.round(m, 12) + 0.0, precision=6, suppress_small=True)


def _cmd_protocol_demo(cfg: RunConfig):
    o = cfg.options
    try:
        doc = protocol_demo(o["ensemble"], o["state"], o["key"], cfg.seed, d=o.get("d"))
    except (UnknownEnsembleError, PreconditionError, ShapeError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if cfg.output_format == "text":
        parts = [f"ensemble {doc['ensemble']} (d={doc['d']}, |K|={doc['cardinality']}), key {doc['key_index']}"]
        for key, title in (("state", "input rho"), ("unitary", "U_k"), ("encrypted", "encrypted"),
                           ("eavesdropper_view", "eavesdropper view"), ("decrypted", "decrypted")):
            parts.append(f"{title}:\n{_format_matrix(doc[key])}")
        parts.append(f"eavesdropper distance to 1/d: {doc['eavesdropper_distance_to_mms']:.3e}")
        parts.append(f"roundtrip trace distance: {doc['roundtrip_trace_distance']:.3e}")
        return "\n".join(parts) + "\n", EXIT_OK
    return _dump_json(doc), EXIT_OK


_HANDLERS = {
    "verify": _cmd_verify,
    "ensemble-list": _cmd_ensemble_list,
    "ensemble-dump": _cmd_ensemble_dump,
    "polytope-gen": _cmd_polytope_gen,
    "table-reproduce": _cmd_table_reproduce,
    "epsilon-curve": _cmd_epsilon_curve,
    "qft-map": _cmd_qft_map,
    "protocol-demo": _cmd_protocol_demo,
}


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n\n{self.format_usage()}")


def _add_common(p, formats, default="json", seed=True, tol=False):
    p.add_argument("--format", choices=formats, default=default, dest="format")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if tol:
        p.add_argument("--tol", type=float, default=EXACT_TOL)


def _ensemble_args(p):
    p.add_argument("--ensemble", "--name", dest="ensemble", required=True,
                   help="ensemble label, see `pqc ensemble list`")
    p.add_argument("--d", type=int, default=None, help="dimension for weyl / singleton-identity / haar")
    p.add_argument("--n", type=int, default=None, help="size for haar")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pqc", description="Private quantum channels and regular polytopes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="certify an ensemble as a complete PQC")
    _ensemble_args(p)
    _add_common(p, ("json", "text"), tol=True)
    p.set_defaults(command_key="verify")

    ens = sub.add_parser("ensemble", help="list or dump key sets")
    ens_sub = ens.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ens_sub.add_parser("list", help="known ensemble labels")
    _add_common(p, ("json", "text"), seed=False)
    p.set_defaults(command_key="ensemble-list")
    p = ens_sub.add_parser("dump", help="members of one ensemble")
    _ensemble_args(p)
    _add_common(p, ("json",))
    p.set_defaults(command_key="ensemble-dump")

    poly = sub.add_parser("polytope", help="regular polytope vertex sets")
    poly_sub = poly.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = poly_sub.add_parser("gen", help="vertices, counts and isotropy of one polytope")
    p.add_argument("--name", required=True, help=", ".join(POLYTOPE_NAMES))
    _add_common(p, ("json", "csv"), seed=False)
    p.set_defaults(command_key="polytope-gen")

    table = sub.add_parser("table", help="4-polytope correspondence table")
    table_sub = table.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = table_sub.add_parser("reproduce", help="emit the correspondence rows")
    _add_common(p, ("json", "text"), seed=False)
    p.set_defaults(command_key="table-reproduce")

    p = sub.add_parser("epsilon-curve", help="epsilon of Haar sub-ensembles versus size")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--p", default="2", help="Schatten index, a number >= 1 or 'inf'")
    p.add_argument("--n", default="2,4,8,16,32,64", help="comma-separated ensemble sizes")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--state", default="basis:0", help="input state spec")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", "--out", choices=("csv", "json"), default="csv", dest="format")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(command_key="epsilon-curve")

    p = sub.add_parser("qft-map", help="extended QFT of |j> and its hypervector partition")
    p.add_argument("--polytope", required=True, help=", ".join(TABLE_I))
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--d", type=int, default=3)
    _add_common(p, ("json",), seed=False)
    p.set_defaults(command_key="qft-map")

    p = sub.add_parser("protocol-demo", help="encrypt / eavesdrop / decrypt walk-through")
    p.add_argument("--ensemble", default="pauli")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--state", default="basis:0", help="basis:<k>, diag:<p0,p1,...> or random:<seed>")
    p.add_argument("--key", default="random", help="key index or 'random'")
    _add_common(p, ("json", "text"))
    p.set_defaults(command_key="protocol-demo")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "command_key", "action", "format", "output", "seed", "tol")}
    if "key" in opts and opts["key"] != "random":
        try:
            opts["key"] = int(opts["key"])
        except ValueError:
            raise UsageError(f"--key must be an integer or 'random', got {opts['key']!r}") from None
    return RunConfig(
        command=ns.command_key,
        tolerance=getattr(ns, "tol", EXACT_TOL),
        seed=getattr(ns, "seed", 0),
        output_format=ns.format,
        output_path=ns.output,
        options=opts,
    )


def run(config: RunConfig, stdout=None) -> int:
    text, code = _HANDLERS[config.command](config)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        return run(config_from_args(ns), stdout)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
