"""Isotope mass table and molecule presets, loaded from small CSV files.

Formats (UTF-8, LF or CRLF, '#' comment lines skipped):

    masses:  symbol,mass_amu
    presets: name,iso1,iso2,bond_length_angstrom

The bundled defaults carry AME-2020 atomic masses for the isotopes of
H, C, N, O, F, Cl and Br, and equilibrium bond lengths for the canonical
diatomics built from them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .rotor import RotorSystem

ENV_MASS_DB = "KGROTOR_MASS_DB"


@dataclass(frozen=True)
class IsotopeRecord:
    symbol: str
    mass_amu: float


@dataclass(frozen=True)
class MoleculePreset:
    name: str
    isotope1: str
    isotope2: str
    bond_length_angstrom: float


class MassTableError(ValueError):
    """Malformed mass-table or preset file."""


class ResolutionError(ValueError):
    """System spec references an unknown isotope or preset."""


def _data_lines(path) -> list[tuple[int, list[str]]]:
    text = Path(path).read_text(encoding="utf-8")
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, [field.strip() for field in line.split(",")]))
    return rows


def load_mass_table(path) -> dict[str, IsotopeRecord]:
    """Parse a mass-table CSV into {symbol: IsotopeRecord}."""
    table: dict[str, IsotopeRecord] = {}
    for lineno, fields in _data_lines(path):
        if fields == ["symbol", "mass_amu"]:
            continue
        if len(fields) != 2:
            raise MassTableError(f"{path}:{lineno}: expected 'symbol,mass_amu'")
        symbol, mass_text = fields
        try:
            mass = float(mass_text)
        except ValueError:
            raise MassTableError(f"{path}:{lineno}: bad mass {mass_text!r}") from None
        if mass <= 0:
            raise MassTableError(f"{path}:{lineno}: mass must be positive")
        if symbol in table:
            raise MassTableError(f"{path}:{lineno}: duplicate symbol {symbol!r}")
        table[symbol] = IsotopeRecord(symbol=symbol, mass_amu=mass)
    return table


def load_presets(path) -> dict[str, MoleculePreset]:
    """Parse a presets CSV into {name: MoleculePreset}."""
    presets: dict[str, MoleculePreset] = {}
    for lineno, fields in _data_lines(path):
        if fields == ["name", "iso1", "iso2", "bond_length_angstrom"]:
            continue
        if len(fields) != 4:
            raise MassTableError(
                f"{path}:{lineno}: expected 'name,iso1,iso2,bond_length_angstrom'"
            )
        name, iso1, iso2, a_text = fields
        try:
            a = float(a_text)
        except ValueError:
            raise MassTableError(f"{path}:{lineno}: bad bond length {a_text!r}") from None
        if a <= 0:
            raise MassTableError(f"{path}:{lineno}: bond length must be positive")
        if name in presets:
            raise MassTableError(f"{path}:{lineno}: duplicate preset {name!r}")
        presets[name] = MoleculePreset(name, iso1, iso2, a)
    return presets


def _bundled(filename: str):
    return resources.files("kgrotor").joinpath("data", filename)


def default_mass_table_path(cli_path: str | None = None):
    """Flag > environment variable > bundled default."""
    if cli_path:
        return cli_path
    env = os.environ.get(ENV_MASS_DB)
    if env:
        return env
    return _bundled("masses.csv")


def default_presets_path():
    return _bundled("presets.csv")


def resolve_system(
    spec: str,
    table: dict[str, IsotopeRecord],
    presets: dict[str, MoleculePreset] | None = None,
) -> RotorSystem:
    """Build a RotorSystem from 'iso1:iso2:a_angstrom', a preset name, or
    a preset name with a bond-length override 'name:a_angstrom'."""
    presets = presets or {}
    parts = [p.strip() for p in spec.strip().split(":")]

    if len(parts) == 3:
        iso1, iso2, a_text = parts
        masses = []
        for iso in (iso1, iso2):
            if iso not in table:
                raise ResolutionError(f"unknown isotope symbol {iso!r}")
            masses.append(table[iso].mass_amu)
        try:
            a = float(a_text)
        except ValueError:
            raise ResolutionError(f"bad bond length {a_text!r}") from None
        if a <= 0:
            raise ResolutionError("bond length must be positive")
        return RotorSystem.from_amu_angstrom(masses[0], masses[1], a)

    if len(parts) in (1, 2):
        name = parts[0]
        if name not in presets:
            raise ResolutionError(f"unknown preset {name!r}")
        preset = presets[name]
        a = preset.bond_length_angstrom
        if len(parts) == 2:
            try:
                a = float(parts[1])
            except ValueError:
                raise ResolutionError(f"bad bond length {parts[1]!r}") from None
            if a <= 0:
                raise ResolutionError("bond length must be positive")
        for iso in (preset.isotope1, preset.isotope2):
            if iso not in table:
                raise ResolutionError(
                    f"preset {name!r} references unknown isotope {iso!r}"
                )
        return RotorSystem.from_amu_angstrom(
            table[preset.isotope1].mass_amu, table[preset.isotope2].mass_amu, a
        )

    raise ResolutionError(f"cannot parse system spec {spec!r}")


def serialize_mass_table(table: dict[str, IsotopeRecord]) -> str:
    lines = ["symbol,mass_amu"]
    for rec in table.values():
        lines.append(f"{rec.symbol},{rec.mass_amu!r}")
    return "\n".join(lines) + "\n"
