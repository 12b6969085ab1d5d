"""Command-line front end.

Subcommands: spectrum, constants, fit, compare.  Exit codes: 0 success,
2 argument error, 3 system/mass-table resolution failure, 4 fit bracket
failure.  Machine formats (csv, json) are byte-deterministic and carry
floats at full round-trip precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .constants import ANGSTROM, EV
from .energy import excitation
from .fit import (
    BracketError,
    fit_bond_length_first_line,
    fit_bond_length_multi_line,
)
from .lines import (
    rotational_constant_B,
    rotational_constant_textbook,
    rotational_constants,
    spectrum,
)
from .massdb import (
    MassTableError,
    ResolutionError,
    default_mass_table_path,
    default_presets_path,
    load_mass_table,
    load_presets,
    resolve_system,
)
from .rotor import ModelKind, RotorSystem, derived_quantities

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_RESOLVE = 3
EXIT_FIT = 4

_SPECTRUM_MODELS = {
    "kg-exact": (ModelKind.HETERONUCLEAR_KG_EXACT, False),
    "kg-quartic": (ModelKind.HETERONUCLEAR_KG_QUARTIC, False),
    "taylor1": (ModelKind.KG_TAYLOR1, False),
    "taylor2": (ModelKind.KG_TAYLOR2, False),
    "nr": (ModelKind.NON_RELATIVISTIC, False),
    "nr-textbook": (ModelKind.NON_RELATIVISTIC, True),
}

_FIT_MODELS = {
    "kg-exact": ModelKind.HETERONUCLEAR_KG_EXACT,
    "approx": ModelKind.KG_TAYLOR1,
    "nr": ModelKind.NON_RELATIVISTIC,
}


def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(columns: list[str], rows: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row[c]) for c in columns])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps({"columns": columns, "rows": rows}, indent=2) + "\n"
    else:  # human
        widths = {
            c: max(len(c), *(len(_human_cell(r[c])) for r in rows)) if rows else len(c)
            for c in columns
        }
        header = "  ".join(c.ljust(widths[c]) for c in columns)
        body = [
            "  ".join(_human_cell(r[c]).ljust(widths[c]) for c in columns) for r in rows
        ]
        text = "\n".join([header] + body) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _human_cell(v) -> str:
    if isinstance(v, float):
        return format(v, ".8g")
    return str(v)


def _load_db(args):
    table = load_mass_table(default_mass_table_path(getattr(args, "mass_db", None)))
    presets = load_presets(default_presets_path())
    return table, presets


def _resolve(args) -> RotorSystem:
    table, presets = _load_db(args)
    return resolve_system(args.system, table, presets)


def cmd_spectrum(args) -> int:
    sys_ = _resolve(args)
    model, textbook_nr = _SPECTRUM_MODELS[args.model]
    spec = spectrum(sys_, args.lmax, model, textbook_nr=textbook_nr)
    columns = [
        "l", "nu_bar_cm1", "T1_cm1", "T2_cm1", "T3_cm1", "T4_cm1", "T5_cm1",
        "spacing_cm1", "deviation_cm1",
    ]
    rows = []
    for line, spacing, dev in zip(spec.lines, spec.spacings, spec.deviations):
        rows.append({
            "l": line.l_lower,
            "nu_bar_cm1": line.nu_bar,
            "T1_cm1": line.T1,
            "T2_cm1": line.T2,
            "T3_cm1": line.T3,
            "T4_cm1": line.T4,
            "T5_cm1": line.T5,
            "spacing_cm1": spacing,
            "deviation_cm1": dev,
        })
    _emit(columns, rows, args.format, args.out)
    return EXIT_OK


def cmd_constants(args) -> int:
    sys_ = _resolve(args)
    d = derived_quantities(sys_)
    B_tb = rotational_constant_textbook(sys_)
    columns = [
        "l", "B_cm1", "B_l_cm1", "B_Rel_cm1", "B_textbook_cm1",
        "epsilon_J", "epsilon_eV", "mu_kg", "M_kg", "I_kgm2", "chi",
    ]
    rows = []
    for l in range(args.l + 1):
        rc = rotational_constants(sys_, l)
        rows.append({
            "l": l,
            "B_cm1": rc.B,
            "B_l_cm1": rc.B_l,
            "B_Rel_cm1": rc.B_Rel,
            "B_textbook_cm1": B_tb,
            "epsilon_J": d.epsilon,
            "epsilon_eV": d.epsilon / EV,
            "mu_kg": d.mu,
            "M_kg": d.M,
            "I_kgm2": d.I,
            "chi": d.chi,
        })
    _emit(columns, rows, args.format, args.out)
    return EXIT_OK


def _read_lines_file(path) -> list[tuple[int, float]]:
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if fields == ["l", "nu_bar_cm1"]:
            continue
        if len(fields) != 2:
            raise MassTableError(f"{path}:{lineno}: expected 'l,nu_bar_cm1'")
        out.append((int(fields[0]), float(fields[1])))
    return out


def cmd_fit(args) -> int:
    if args.system:
        table, presets = _load_db(args)
        parts = [p.strip() for p in args.system.split(":")]
        if len(parts) != 2:
            raise ResolutionError("fit expects a system spec 'iso1:iso2' (no bond length)")
        for iso in parts:
            if iso not in table:
                raise ResolutionError(f"unknown isotope symbol {iso!r}")
        from .constants import AMU

        m1 = table[parts[0]].mass_amu * AMU
        m2 = table[parts[1]].mass_amu * AMU
    else:
        from .constants import AMU

        m1 = args.m1_amu * AMU
        m2 = args.m2_amu * AMU

    model = _FIT_MODELS[args.model]
    if args.lines_file:
        observed = _read_lines_file(args.lines_file)
        result = fit_bond_length_multi_line(m1, m2, observed, model=model)
    else:
        result = fit_bond_length_first_line(m1, m2, args.nu0, model=model)

    columns = ["a_angstrom", "a_m", "I_kgm2", "residual_cm1", "iterations", "model"]
    rows = [{
        "a_angstrom": result.a / ANGSTROM,
        "a_m": result.a,
        "I_kgm2": result.I,
        "residual_cm1": result.residual,
        "iterations": result.iterations,
        "model": result.model.value,
    }]
    _emit(columns, rows, args.format, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    sys_ = _resolve(args)
    flavors = [
        ("nr_paper", ModelKind.NON_RELATIVISTIC, False),
        ("nr_textbook", ModelKind.NON_RELATIVISTIC, True),
        ("taylor1", ModelKind.KG_TAYLOR1, False),
        ("taylor2", ModelKind.KG_TAYLOR2, False),
        ("kg_exact", ModelKind.HETERONUCLEAR_KG_EXACT, False),
    ]
    eps = sys_.rest_energy
    columns = ["l"]
    for name, _, _ in flavors:
        suffix = "W_J" if args.absolute else "excitation_J"
        columns.append(f"{name}_{suffix}")
    for name, _, _ in flavors[:-1]:
        columns.append(f"{name}_reldiff_vs_kg_exact")
    rows = []
    for l in range(args.lmax + 1):
        excs = {
            name: excitation(sys_, l, kind, textbook_nr=tb) for name, kind, tb in flavors
        }
        row: dict = {"l": l}
        for name, _, _ in flavors:
            if args.absolute:
                row[f"{name}_W_J"] = eps + excs[name]
            else:
                row[f"{name}_excitation_J"] = excs[name]
        ref = excs["kg_exact"]
        for name, _, _ in flavors[:-1]:
            row[f"{name}_reldiff_vs_kg_exact"] = (
                (excs[name] - ref) / ref if ref != 0.0 else 0.0
            )
        rows.append(row)
    _emit(columns, rows, args.format, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgrotor",
        description="Relativistic rotational spectra of spin-zero diatomic rotors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["csv", "json", "human"], default="human")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--mass-db", default=None, help="mass-table CSV path")

    p = sub.add_parser("spectrum", help="rotational lines with term breakdown")
    p.add_argument("system", help="'iso1:iso2:a_angstrom' or preset name")
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--model", choices=sorted(_SPECTRUM_MODELS), default="kg-exact")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("constants", help="rotational constants and derived quantities")
    p.add_argument("system", help="'iso1:iso2:a_angstrom' or preset name")
    p.add_argument("--l", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("fit", help="invert observed lines to bond length")
    p.add_argument("system", nargs="?", default=None, help="'iso1:iso2' (no bond length)")
    p.add_argument("--m1-amu", type=float, default=None)
    p.add_argument("--m2-amu", type=float, default=None)
    p.add_argument("--nu0", type=float, default=None, help="first-line wavenumber [cm^-1]")
    p.add_argument("--lines-file", default=None, help="CSV 'l,nu_bar_cm1'")
    p.add_argument("--model", choices=sorted(_FIT_MODELS), default="kg-exact")
    add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="levels under every model, side by side")
    p.add_argument("system", help="'iso1:iso2:a_angstrom' or preset name")
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--absolute", action="store_true", help="total W instead of W - epsilon")
    add_common(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "fit":
        have_masses = args.system is not None or (
            args.m1_amu is not None and args.m2_amu is not None
        )
        if not have_masses:
            parser.error("fit requires a system spec or both --m1-amu and --m2-amu")
        if (args.nu0 is None) == (args.lines_file is None):
            parser.error("fit requires exactly one of --nu0 or --lines-file")
    if getattr(args, "lmax", 0) < 0 or getattr(args, "l", 0) < 0:
        parser.error("l / lmax must be non-negative")

    try:
        return args.func(args)
    except (ResolutionError, MassTableError, FileNotFoundError) as exc:
        print(f"kgrotor: {exc}", file=sys.stderr)
        return EXIT_RESOLVE
    except BracketError as exc:
        print(f"kgrotor: {exc}", file=sys.stderr)
        return EXIT_FIT
    except ValueError as exc:
        print(f"kgrotor: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    raise SystemExit(main())
