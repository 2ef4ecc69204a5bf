"""Command-line front end.

Every subcommand writes a single CSV or JSON document whose header records
the full configuration, basis size, solver tolerance and residuals, so that
identical invocations give byte-identical files.
"""

from __future__ import annotations

import functools
import math
import sys
from fractions import Fraction

import click
import numpy as np

from darkbox import __version__, acceptance
from darkbox._backend import BACKEND
from darkbox.bethe import sector_levels
from darkbox.dark import RationalC, dark_distribution, enumerate_dark_states, tower, verify_dark
from darkbox.eigen import DEFAULT_TOL, lowest_eigenpairs
from darkbox.elements import assemble_hamiltonian
from darkbox.errors import InvalidArgument, NumericFailure
from darkbox.model import SECTORS, ModelParams, Sector, enumerate_basis, eval_wavefunction
from darkbox.output import render_csv, render_json
from darkbox.strong import classify_levels, crossing_displacement

PI2 = math.pi**2


class NumericError(click.ClickException):
    exit_code = 3


def _guard(fn):
    """Map library errors onto CLI exit codes (2 bad input, 3 numeric failure)."""

    @functools.wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvalidArgument as exc:
            raise click.UsageError(str(exc)) from exc
        except NumericFailure as exc:
            diag = ", ".join(f"{k}={v}" for k, v in exc.diagnostics.items())
            raise NumericError(f"{exc} ({diag})") from exc

    return run


def parse_sign(value) -> int:
    text = str(value).strip()
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise InvalidArgument(f"expected +1 or -1, got {value!r}")


def parse_c(text) -> float:
    """Decimal or 'p/q' displacement as a float in [0, 1]."""
    try:
        val = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument(f"cannot read displacement {text!r}") from None
    if not 0.0 <= val <= 1.0:
        raise InvalidArgument(f"c must lie in [0, 1], got {text}")
    return val


def read_config(path) -> dict:
    """key=value lines; '#' starts a comment, dashes in keys become underscores."""
    out = {}
    with open(path) as fh:
        for num, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.BadParameter(f"line {num}: expected key=value, got {raw.strip()!r}", param_hint="--config")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _load_config(ctx, param, path):
    if path is None:
        return {}
    values = read_config(path)
    default_map = dict(ctx.default_map or {})
    default_map.update(values)
    for name in ctx.command.commands:
        default_map[name] = dict(values)
    ctx.default_map = default_map
    return values


def _settings(ctx) -> dict:
    return ctx.find_root().obj


def _emit(ctx, provenance, columns, rows, payload):
    st = _settings(ctx)
    prov = {"tool": f"darkbox {__version__}", "command": ctx.info_name, "backend": BACKEND}
    prov.update(provenance)
    if st["format"] == "json":
        text = render_json(prov, payload)
    else:
        text = render_csv(prov, columns, rows)
    with click.open_file(st["out"], "w") as fh:
        fh.write(text)


def _config_record(ctx, **extra):
    st = _settings(ctx)
    rec = {"nmax": st["nmax"], "tol": st["tol"], "format": st["format"]}
    rec.update({k: v for k, v in ctx.params.items()})
    rec.update(extra)
    return rec


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), callback=_load_config, is_eager=True,
              expose_value=False, help="key=value file of defaults; explicit flags win.")
@click.option("--nmax", type=click.IntRange(min=1), default=120, show_default=True, help="Basis cutoff n^2+m^2 <= nmax^2.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=DEFAULT_TOL, show_default=True,
              help="Eigen-residual tolerance.")
@click.option("--out", default="-", show_default=True, help="Output file ('-' for stdout).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.version_option(__version__, prog_name="darkbox")
@click.pass_context
def cli(ctx, nmax, tol, out, fmt):
    """Two particles in a box with a decentered contact interaction."""
    ctx.obj = {"nmax": nmax, "tol": tol, "out": out, "format": fmt}


def _sector_options(fn):
    fn = click.option("--pi", "pi_", default="+1", show_default=True, help="Parity label (+1/-1).")(fn)
    fn = click.option("--sigma", default="+1", show_default=True, help="Exchange label (+1 boson, -1 fermion).")(fn)
    return fn


@cli.command()
@_sector_options
@click.option("--g", type=float, default=1.0, show_default=True, help="Coupling strength (>= 0).")
@click.option("--c", "c_text", default="0", show_default=True, help="Displacement, decimal or p/q.")
@click.option("--k", type=click.IntRange(min=1), default=5, show_default=True, help="Number of levels.")
@click.option("--vectors", is_flag=True, help="Also output eigenvector coefficients.")
@click.option("--dump-matrix", type=click.Path(dir_okay=False, writable=True), help="Write the Hamiltonian as text.")
@click.option("--method", type=click.Choice(["auto", "full", "dense", "lanczos"]), default="auto", show_default=True)
@click.pass_context
@_guard
def spectrum(ctx, sigma, pi_, g, c_text, k, vectors, dump_matrix, method):
    """Lowest eigenvalues of one symmetry sector."""
    st = _settings(ctx)
    sector = Sector(parse_sign(sigma), parse_sign(pi_))
    if g < 0:
        raise InvalidArgument(f"g must be non-negative, got {g}")
    params = ModelParams(g, parse_c(c_text))
    basis = enumerate_basis(sector, st["nmax"])
    H = assemble_hamiltonian(basis, params)
    if dump_matrix:
        with open(dump_matrix, "w") as fh:
            H.dump(fh)
    sol = lowest_eigenpairs(H, k=min(k, len(basis)), tol=st["tol"], method=method)
    prov = {
        "config": _config_record(ctx, sector=sector.label, c=params.c),
        "basis_size": len(basis),
        "solver": sol.method,
        "residuals": [float(r) for r in sol.residuals],
    }
    levels = []
    for i, (e, r) in enumerate(zip(sol.eigenvalues, sol.residuals)):
        entry = {"index": i, "energy": float(e), "energy_over_pi2": float(e) / PI2, "residual": float(r)}
        if vectors:
            entry["vector"] = sol.eigenvectors[i]
        levels.append(entry)
    payload = {"levels": levels}
    if vectors:
        payload["basis"] = [[int(n), int(m)] for n, m in zip(basis.ns, basis.ms)]
        columns = ["level", "energy", "n", "m", "coefficient"]
        rows = [(i, float(e), int(n), int(m), float(v))
                for i, e in enumerate(sol.eigenvalues)
                for n, m, v in zip(basis.ns, basis.ms, sol.eigenvectors[i])]
    else:
        columns = ["level", "energy", "energy_over_pi2", "residual"]
        rows = [(lv["index"], lv["energy"], lv["energy_over_pi2"], lv["residual"]) for lv in levels]
    _emit(ctx, prov, columns, rows, payload)


@cli.command()
@click.option("--g", "gs", type=float, multiple=True, default=(1.0, 20.0, 100.0), show_default=True,
              help="Couplings (repeatable).")
@click.option("--levels", type=click.IntRange(min=1), default=1, show_default=True, help="Levels per sector.")
@click.option("--ed/--no-ed", default=False, help="Add exact-diagonalization and relative-error columns.")
@click.pass_context
@_guard
def bethe(ctx, gs, levels, ed):
    """Exact c = 0 levels per sector, optionally against diagonalization."""
    st = _settings(ctx)
    rows, residuals = [], {}
    for g in gs:
        if g < 0:
            raise InvalidArgument(f"g must be non-negative, got {g}")
        for sector in SECTORS:
            exact = sector_levels(sector, g, levels)
            ed_vals = [None] * levels
            if ed:
                basis = enumerate_basis(sector, st["nmax"])
                sol = lowest_eigenpairs(assemble_hamiltonian(basis, ModelParams(g, 0.0)), k=levels, tol=st["tol"])
                ed_vals = [float(v) for v in sol.eigenvalues]
                residuals[f"g={g:g} {sector}"] = [float(r) for r in sol.residuals]
            for i, (n, m, e) in enumerate(exact):
                row = [g, sector.sigma, sector.pi, sector.label, i, n, m, e]
                if ed:
                    row += [ed_vals[i], abs(ed_vals[i] - e) / e]
                rows.append(row)
    columns = ["g", "sigma", "pi", "sector", "level", "n", "m", "bethe"]
    if ed:
        columns += ["ed", "rel_error"]
    prov = {"config": _config_record(ctx), "c": 0.0}
    if ed:
        prov["basis_size"] = {str(s): len(enumerate_basis(s, st["nmax"])) for s in SECTORS}
        prov["residuals"] = residuals
    _emit(ctx, prov, columns, rows, {"rows": [dict(zip(columns, r)) for r in rows]})


def cluster_sizes(energies, rel_tol):
    """Size of each level's cluster, chaining neighbours closer than rel_tol * energy."""
    e = np.asarray(energies, dtype=float)
    order = np.argsort(e, kind="stable")
    label = np.zeros(len(e), dtype=int)
    for prev, cur in zip(order, order[1:]):
        label[cur] = label[prev] + (e[cur] - e[prev] > rel_tol * abs(e[cur]))
    counts = np.bincount(label)
    return [int(counts[lb]) for lb in label]


@cli.command("sweep-c")
@click.option("--g", type=float, default=1e4, show_default=True)
@click.option("--c-min", type=float, default=0.01, show_default=True)
@click.option("--c-max", type=float, default=0.9, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=30, show_default=True)
@click.option("--k", type=click.IntRange(min=1), default=6, show_default=True, help="Levels per sector and c.")
@click.option("--sector", "sectors", multiple=True, help="Restrict to sectors given as sigma,pi (repeatable).")
@click.option("--degeneracy-tol", type=float, default=5e-3, show_default=True,
              help="Relative window for counting coincident levels across sectors.")
@click.option("--crossing/--no-crossing", default=False, help="Bisect for the outside/inside ground-state crossing.")
@click.pass_context
@_guard
def sweep_c(ctx, g, c_min, c_max, steps, k, sectors, degeneracy_tol, crossing):
    """Large-g spectrum against displacement, each level labelled out/in."""
    st = _settings(ctx)
    if not 0.0 <= c_min <= c_max <= 1.0:
        raise InvalidArgument(f"need 0 <= c-min <= c-max <= 1, got {c_min}, {c_max}")
    chosen = [Sector(*(parse_sign(s) for s in text.split(","))) for text in sectors] or list(SECTORS)
    grid = np.linspace(c_min, c_max, steps)
    rows = []
    for c in grid:
        block = []
        for sector in chosen:
            for i, lv in enumerate(classify_levels(sector, float(c), g, st["nmax"], k=k, tol=st["tol"])):
                block.append([float(c), i, lv.energy, lv.origin, sector.sigma, sector.pi])
        for r, size in zip(block, cluster_sizes([r[2] for r in block], degeneracy_tol)):
            r.append(size)
        rows.extend(block)
    columns = ["c", "level_index", "energy", "origin", "sigma", "pi", "degeneracy"]
    prov = {
        "config": _config_record(ctx),
        "basis_size": {str(s): len(enumerate_basis(s, st["nmax"])) for s in chosen},
    }
    if crossing:
        found = {}
        for sector in chosen:
            try:
                found[str(sector)] = crossing_displacement(sector, g, st["nmax"], c_min, c_max)
            except InvalidArgument:
                found[str(sector)] = None
        prov["crossings"] = found
    _emit(ctx, prov, columns, rows, {"rows": [dict(zip(columns, r)) for r in rows]})


@cli.command()
@click.option("--c", "c_text", help="Single displacement p/q; default is every p/q with q <= q-max.")
@click.option("--q-max", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--e-max", type=float, default=50.0, show_default=True, help="Energy cutoff in units of pi^2.")
@click.option("--tower", "tower_j", type=click.IntRange(min=1), help="List j = 1..J of the lowest dark state's tower.")
@click.option("--verify", is_flag=True, help="Append the interaction residual of each state.")
@click.pass_context
@_guard
def dark(ctx, c_text, q_max, e_max, tower_j, verify):
    """Catalog of interaction-blind free states at rational displacement."""
    st = _settings(ctx)
    if c_text is not None:
        cs = [RationalC.parse(c_text)]
    else:
        cs = list(dark_distribution(q_max, e_max * PI2))
    states = []
    for c in cs:
        found = enumerate_dark_states(c, e_max * PI2)
        if tower_j is not None:
            if c_text is None:
                raise InvalidArgument("--tower needs a single --c")
            if not found:
                raise InvalidArgument(f"no dark state below e-max at c = {c}")
            found = tower(found[0], tower_j)
        states.extend(found)
    columns = ["p", "q", "n", "m", "j", "N", "M", "energy_over_pi2", "sigma", "pi"]
    rows = []
    for d in states:
        row = [d.c.p, d.c.q, d.n, d.m, d.tower_index, d.N, d.M, d.energy_over_pi2, d.sector.sigma, d.sector.pi]
        if verify:
            n_max = max(st["nmax"], math.isqrt(d.N * d.N + d.M * d.M) + 1)
            row.append(verify_dark(d.c, d.N, d.M, d.sector, n_max))
        rows.append(row)
    if verify:
        columns.append("residual")
    prov = {"config": _config_record(ctx), "displacements": [str(c) for c in cs]}
    _emit(ctx, prov, columns, rows, {"states": [dict(zip(columns, r)) for r in rows]})


@cli.command()
@_sector_options
@click.option("--g", type=float, default=0.0, show_default=True)
@click.option("--c", "c_text", default="0", show_default=True)
@click.option("--state", type=click.IntRange(min=0), default=0, show_default=True, help="Level index (0 = ground).")
@click.option("--resolution", type=click.IntRange(min=2), default=101, show_default=True, help="Grid points per axis.")
@click.pass_context
@_guard
def wavefunction(ctx, sigma, pi_, g, c_text, state, resolution):
    """One eigenstate sampled on a uniform grid of the unit box."""
    st = _settings(ctx)
    sector = Sector(parse_sign(sigma), parse_sign(pi_))
    if g < 0:
        raise InvalidArgument(f"g must be non-negative, got {g}")
    params = ModelParams(g, parse_c(c_text))
    basis = enumerate_basis(sector, st["nmax"])
    if state >= len(basis):
        raise InvalidArgument(f"state {state} out of range for basis of size {len(basis)}")
    sol = lowest_eigenpairs(assemble_hamiltonian(basis, params), k=state + 1, tol=st["tol"])
    grid = eval_wavefunction(sol.eigenvectors[state], basis, resolution)
    prov = {
        "config": _config_record(ctx, sector=sector.label, c=params.c),
        "basis_size": len(basis),
        "energy": float(sol.eigenvalues[state]),
        "residual": float(sol.residuals[state]),
        "grid_norm": grid.norm_squared(),
    }
    x = grid.x
    rows = [(x[i], x[j], grid.values[i, j]) for i in range(resolution) for j in range(resolution)]
    _emit(ctx, prov, ["x1", "x2", "value"], rows, {"resolution": resolution, "values": grid.values})


@cli.command()
@click.option("--quick", is_flag=True, help="Skip the two long diagonalization checks.")
@click.pass_context
def verify(ctx, quick):
    """Run the acceptance checks; exit status 1 if any fails."""
    results = acceptance.run_all(include_slow=not quick, echo=click.echo)
    failed = [r.number for r in results if not r.passed]
    click.echo(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    if failed:
        ctx.exit(1)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="darkbox", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
