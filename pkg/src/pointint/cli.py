"""Command-line front end.

Usage::

    pointint <command> --config JOB.json [--output PATH] [--format json|csv]
             [--grid SPEC] [--tol X] [--seed N] [--tmax X]

Exit status: 0 success, 2 malformed input, 3 numeric domain error,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import radialpd, spectral, weyl
from .config import Relation
from .exceptions import DomainError, InvariantError, PreconditionError, SingularityError
from .jobspec import ConfigError, JobSpec, dumps, load_job, parse_grid

COMMANDS = ("spectrum", "weyl", "imw-sweep", "pd-check", "classify", "eigenfunction", "schoenberg")

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_INVARIANT = 0, 2, 3, 4


class Table:
    """Command result: a JSON document plus an optional CSV view."""

    def __init__(self, document, header=None, rows=None):
        self.document = document
        self.header = header
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return dumps(self.document) + "\n"
        if self.header is None:
            raise ConfigError("--format", "this command has no CSV output")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for row in self.rows:
            w.writerow([format(float(v), ".17g") if isinstance(v, (float, np.floating)) else v for v in row])
        return buf.getvalue()


def _cmatrix(a):
    a = np.asarray(a, dtype=complex)
    return {"real": a.real.tolist(), "imag": a.imag.tolist()}


def _default_grid(args, fallback: str, lo: float = None):
    if args.grid:
        return parse_grid(args.grid)
    if args.tmax is not None:
        start = lo if lo is not None else args.tmax / 40
        return np.linspace(start, args.tmax, 40)
    return parse_grid(fallback)


def _option(job, key, default=None, required=False):
    if key in job.options:
        return job.options[key]
    if required:
        raise ConfigError(f"options.{key}", "missing")
    return default


def cmd_spectrum(job: JobSpec, args) -> Table:
    cfg, theta = job.configuration(), job.extension()
    grid = None
    if not isinstance(theta, Relation):
        grid = _default_grid(args, "-2:2:40:log")
    rep = spectral.spectrum(cfg, theta, tol_root=args.tol, x_grid=grid)
    eig_docs = [
        {
            "z": e.z,
            "multiplicity": e.multiplicity,
            "residual": e.residual,
            "coefficient_vectors": _cmatrix(e.coefficient_vectors.T),
        }
        for e in rep.eigenvalues
    ]
    doc = {
        "command": "spectrum",
        "dimension": cfg.dimension,
        "m": cfg.m,
        "eigenvalues": eig_docs,
        "total_multiplicity": rep.total_multiplicity,
        "kappa_minus": rep.kappa_minus,
    }
    if rep.ac is not None:
        doc["ac_certification"] = {
            "band": [0.0, "inf"],
            "grid_points": len(rep.ac.points),
            "min_eig_imM": min(p.min_eig_imM for p in rep.ac.points),
            "min_eig_imMB": min(p.min_eig_imMB for p in rep.ac.points),
            "all_invertible": all(p.invertible_B_minus_M for p in rep.ac.points),
            "certified": rep.ac.certified,
        }
    doc["notes"] = rep.notes
    rows = [(e.z, e.multiplicity, e.residual) for e in rep.eigenvalues]
    return Table(doc, ["z", "multiplicity", "residual"], rows)


def _z_list(job):
    raw = _option(job, "z", required=True)
    out = []
    if not isinstance(raw, list):
        raise ConfigError("options.z", "expected a list of [re, im] pairs")
    for i, item in enumerate(raw):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out.append(complex(item))
        elif isinstance(item, list) and len(item) == 2 and all(isinstance(v, (int, float)) for v in item):
            out.append(complex(item[0], item[1]))
        else:
            raise ConfigError(f"options.z[{i}]", "expected a number or [re, im]")
    return out


def cmd_weyl(job, args) -> Table:
    cfg = job.configuration()
    samples, rows = [], []
    for z in _z_list(job):
        M = weyl.weyl_matrix(cfg, z).matrix
        samples.append({"z": {"re": z.real, "im": z.imag}, "matrix": _cmatrix(M)})
        for j in range(cfg.m):
            for k in range(cfg.m):
                rows.append((z.real, z.imag, j, k, M[j, k].real, M[j, k].imag))
    doc = {"command": "weyl", "dimension": cfg.dimension, "m": cfg.m, "samples": samples}
    return Table(doc, ["z_re", "z_im", "j", "k", "re", "im"], rows)


def cmd_imw_sweep(job, args) -> Table:
    cfg = job.configuration()
    grid = _default_grid(args, "-2:2:40:log")
    rows = [(float(x), float(np.linalg.eigvalsh(weyl.weyl_imag_boundary(cfg, float(x)))[0])) for x in grid]
    doc = {
        "command": "imw-sweep",
        "dimension": cfg.dimension,
        "m": cfg.m,
        "x": [r[0] for r in rows],
        "min_eig_imM": [r[1] for r in rows],
        "all_positive": all(r[1] > 0 for r in rows),
    }
    return Table(doc, ["x", "min_eig_imM"], rows)


def _radial_function(job):
    spec = _option(job, "function", required=True)
    if not isinstance(spec, dict) or "id" not in spec:
        raise ConfigError("options.function", 'expected {"id": ..., "params": {...}}')
    params = spec.get("params", {})
    if "z" in params and isinstance(params["z"], list):
        params = {**params, "z": complex(*params["z"])}
    try:
        return radialpd.catalog_function(spec["id"], **params)
    except LookupError as exc:
        raise ConfigError("options.function.id", str(exc)) from None
    except (TypeError, PreconditionError) as exc:
        raise ConfigError("options.function.params", str(exc)) from None


def _point_sets(job, args):
    if "point_sets" in job.options:
        sets = job.options["point_sets"]
        if not isinstance(sets, list) or not sets:
            raise ConfigError("options.point_sets", "expected a non-empty list of point lists")
        out = []
        for i, s in enumerate(sets):
            try:
                out.append(radialpd.PointSet(np.array(s, dtype=float)))
            except (ValueError, PreconditionError) as exc:
                raise ConfigError(f"options.point_sets[{i}]", str(exc)) from None
        return out
    rnd = _option(job, "random", required=True)
    try:
        count, m, n = int(rnd["count"]), int(rnd["m"]), int(rnd["n"])
        box = float(rnd.get("box", 5.0))
    except (KeyError, TypeError, ValueError):
        raise ConfigError("options.random", 'expected {"count", "m", "n"[, "box"]}') from None
    seed = args.seed if args.seed is not None else int(rnd.get("seed", 0))
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        pts = rng.uniform(-box, box, size=(m, n))
        try:
            out.append(radialpd.PointSet(pts))
        except PreconditionError:
            continue
    return out


def cmd_pd_check(job, args) -> Table:
    f = _radial_function(job)
    rows = []
    for i, X in enumerate(_point_sets(job, args)):
        chk = radialpd.strict_pd_check(radialpd.gram_matrix(f, X))
        rows.append((i, len(X), X.ambient_dimension, chk.min_eigenvalue, chk.is_strictly_pd))
    doc = {
        "command": "pd-check",
        "function": f.id,
        "sets": [
            {"index": r[0], "m": r[1], "n": r[2], "min_eigenvalue": r[3], "strictly_pd": r[4]} for r in rows
        ],
        "all_strictly_pd": all(r[4] for r in rows),
    }
    return Table(doc, ["index", "m", "n", "min_eigenvalue", "strictly_pd"], rows)


def cmd_classify(job, args) -> Table:
    cfg, theta = job.configuration(), job.extension()
    kappa = spectral.count_negative(cfg, theta)
    nonneg = spectral.is_nonnegative(cfg, theta, audit=True)
    doc = {"command": "classify", "dimension": cfg.dimension, "m": cfg.m, "kappa_minus": kappa, "nonnegative": nonneg}
    return Table(doc, ["kappa_minus", "nonnegative"], [(kappa, nonneg)])


def _eval_points(job, args, d):
    if "grid_points" in job.options:
        pts = job.options["grid_points"]
        try:
            arr = np.array(pts, dtype=float)
        except (ValueError, TypeError):
            raise ConfigError("options.grid_points", "expected a list of coordinate lists") from None
        if arr.ndim != 2 or arr.shape[1] != d:
            raise ConfigError("options.grid_points", f"expected {d}-dimensional points")
        return arr
    ray = _option(job, "ray", {})
    direction = np.array(ray.get("direction", [1.0] + [0.0] * (d - 1)), dtype=float)
    origin = np.array(ray.get("origin", [0.0] * d), dtype=float)
    if direction.shape != (d,) or origin.shape != (d,) or not np.linalg.norm(direction) > 0:
        raise ConfigError("options.ray", f"direction and origin must be non-zero {d}-vectors")
    radii = _default_grid(args, "0.1:5:50")
    return origin + radii[:, None] * direction / np.linalg.norm(direction)


def cmd_eigenfunction(job, args) -> Table:
    cfg, theta = job.configuration(), job.extension()
    eigs = spectral.negative_eigenvalues(cfg, theta, tol_root=args.tol)
    pts = _eval_points(job, args, cfg.dimension)
    coord_names = ["x", "y", "z"][: cfg.dimension]
    rows, docs = [], []
    for i, rec in enumerate(eigs):
        for j, vals in enumerate(spectral.eigenfunction_eval(cfg, rec, pts)):
            docs.append({"eigen_index": i, "z": rec.z, "vector_index": j, "re": vals.real.tolist(), "im": vals.imag.tolist()})
            for p, v in zip(pts, vals):
                rows.append((i, j, *map(float, p), v.real, v.imag))
    doc = {"command": "eigenfunction", "points": pts.tolist(), "functions": docs}
    return Table(doc, ["eigen_index", "vector_index", *coord_names, "re", "im"], rows)


def cmd_schoenberg(job, args) -> Table:
    spec = _option(job, "measure", required=True)
    try:
        n = int(spec["n"])
        atoms = tuple((float(s), float(w)) for s, w in spec["atoms"])
    except (KeyError, TypeError, ValueError):
        raise ConfigError("options.measure", 'expected {"n": int, "atoms": [[s, w], ...]}') from None
    try:
        f = radialpd.schoenberg_synthesize(n, radialpd.DiscreteMeasure(atoms))
    except PreconditionError as exc:
        raise ConfigError("options.measure", str(exc)) from None
    grid = _default_grid(args, "0:10:101", lo=0.0)
    if np.any(grid < 0):
        raise DomainError("schoenberg: t-grid must be non-negative")
    vals = f(grid)
    rows = list(zip(grid.tolist(), np.atleast_1d(vals).tolist()))
    doc = {"command": "schoenberg", "n": n, "non_constant": f.non_constant, "t": grid.tolist(), "f": np.atleast_1d(vals).tolist()}
    return Table(doc, ["t", "f"], rows)


HANDLERS = {
    "spectrum": cmd_spectrum,
    "weyl": cmd_weyl,
    "imw-sweep": cmd_imw_sweep,
    "pd-check": cmd_pd_check,
    "classify": cmd_classify,
    "eigenfunction": cmd_eigenfunction,
    "schoenberg": cmd_schoenberg,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pointint", description="Spectra of point-interaction Hamiltonians.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="JSON job file")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--grid", help='"start:stop:count" or "logstart:logstop:count:log"')
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL_ROOT, help="root tolerance (default 1e-12)")
    p.add_argument("--seed", type=int, help="seed for random point sets")
    p.add_argument("--tmax", type=float, help="upper end of the default 40-point grid")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        job = load_job(args.config)
        text = HANDLERS[args.command](job, args).render(args.format)
    except ConfigError as exc:
        print(f"error: malformed input: {exc}", file=stderr)
        return EXIT_INPUT
    except (DomainError, SingularityError, PreconditionError) as exc:
        print(f"error: {args.command}: {exc}", file=stderr)
        return EXIT_DOMAIN
    except InvariantError as exc:
        print(f"error: internal invariant violated in {args.command}: {exc}", file=stderr)
        return EXIT_INVARIANT
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
