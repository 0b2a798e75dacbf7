"""Config files, circuit export/import, verification reports.

The config is a single JSON document; every complex number is an explicit
[re, im] pair, never a string expression.  The circuit export is a
versioned header line followed by a JSON body whose floats are written in
shortest round-trip form, so import reproduces every gate entry bit for
bit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .model import DEFAULT_TOL, ChainSpec
from .synthesis import Circuit, CircuitUnitary

CIRCUIT_HEADER = "bethecirc-circuit v1"
TOOL_VERSION = "bethecirc 0.1.0"


class ConfigError(ValueError):
    """Malformed configuration file."""


@dataclass(frozen=True)
class RunConfig:
    spec: ChainSpec
    seed: int
    tol: float


def _as_complex(value, where: str) -> complex:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ConfigError(f"{where}: complex values must be [re, im] pairs, got {value!r}")
    re, im = value
    if not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in (re, im)):
        raise ConfigError(f"{where}: [re, im] entries must be numbers, got {value!r}")
    return complex(re, im)


def parse_config(text: str, seed_override=None, tol_override=None, homogeneous=False) -> RunConfig:
    """Parse a config document into a validated RunConfig."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    try:
        n = int(doc["n_sites"])
        m = int(doc["n_magnons"])
        gamma = _as_complex(doc["gamma"], "gamma")
        rapidities = [
            _as_complex(z, f"rapidities[{i}]") for i, z in enumerate(doc.get("rapidities", []))
        ]
    except KeyError as exc:
        raise ConfigError(f"config missing required key {exc}") from exc
    raw_v = doc.get("inhomogeneities")
    if raw_v is None or homogeneous:
        inhomogeneities = [0j] * n
    else:
        inhomogeneities = [
            _as_complex(z, f"inhomogeneities[{i}]") for i, z in enumerate(raw_v)
        ]
    tol = float(tol_override if tol_override is not None else doc.get("tolerance", DEFAULT_TOL))
    seed = int(seed_override if seed_override is not None else doc.get("seed", 0))
    try:
        spec = ChainSpec(
            n_sites=n,
            n_magnons=m,
            gamma=gamma,
            inhomogeneities=inhomogeneities,
            rapidities=rapidities,
            tol=tol,
        )
    except Exception as exc:
        raise ConfigError(f"invalid chain specification: {exc}") from exc
    return RunConfig(spec=spec, seed=seed, tol=tol)


def load_config(path, **kwargs) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), **kwargs)


def _matrix_to_pairs(matrix: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def _pairs_to_matrix(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def export_circuit(circuit: Circuit, spec: ChainSpec) -> str:
    """Serialize a circuit to the versioned text format."""
    body = {
        "metadata": {
            "tool": TOOL_VERSION,
            "n_sites": spec.n_sites,
            "n_magnons": spec.n_magnons,
            "gamma": [spec.gamma.real, spec.gamma.imag],
            "inhomogeneities": [[z.real, z.imag] for z in spec.inhomogeneities],
            "rapidities": [[z.real, z.imag] for z in spec.rapidities],
            "conventions": {
                "qubit_order": "first qubit is the most significant bit",
                "windows": "0-based contiguous qubit indices",
                "sector_index": "ascending chi within fixed total spin",
            },
        },
        "initial": circuit.initial,
        "gates": [
            {
                "kind": gate.kind,
                "window": list(gate.window),
                "matrix": _matrix_to_pairs(gate.matrix),
            }
            for gate in circuit.gates
        ],
    }
    return CIRCUIT_HEADER + "\n" + json.dumps(body, indent=1) + "\n"


def import_circuit(text: str) -> tuple[Circuit, dict]:
    """Parse an exported circuit; returns (circuit, metadata)."""
    header, _, rest = text.partition("\n")
    if header.strip() != CIRCUIT_HEADER:
        raise ConfigError(f"unrecognized circuit header {header!r}")
    body = json.loads(rest)
    gates = tuple(
        CircuitUnitary(
            window=tuple(g["window"]),
            matrix=_pairs_to_matrix(g["matrix"]),
            kind=g["kind"],
        )
        for g in body["gates"]
    )
    meta = body["metadata"]
    circuit = Circuit(n_qubits=meta["n_sites"], initial=body["initial"], gates=gates)
    return circuit, meta


def write_text(path, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def format_report(checks: list[dict], seed: int, tol: float) -> tuple[str, str]:
    """(human-readable text, machine-readable JSON) for a verification run."""
    lines = [f"verification report (seed = {seed}, base tolerance = {tol:g})"]
    width = max((len(c["name"]) for c in checks), default=10)
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        lines.append(
            f"  {c['name']:<{width}}  residual = {c['residual']:.3e}  "
            f"tol = {c['tolerance']:.1e}  {status}"
        )
    ok = all(c["pass"] for c in checks)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'} ({sum(c['pass'] for c in checks)}/{len(checks)})")
    doc = {"seed": seed, "tolerance": tol, "checks": checks, "all_pass": ok}
    return "\n".join(lines) + "\n", json.dumps(doc, indent=1) + "\n"


def format_state_dump(k: int, selection, amplitudes: np.ndarray) -> str:
    """Amplitude dump: one `bitstring re im` line per sector basis state, chi order."""
    from .sectors import chi_of, sector_basis

    r = len(selection)
    lines = [f"# bethe state amplitudes: support k = {k}, momenta {list(selection)}"]
    lines.append("# columns: bitstring  Re(amplitude)  Im(amplitude)")
    for amp, string in zip(amplitudes, sector_basis(k, r)):
        bits = ["0"] * k
        for pos in string:
            bits[pos - 1] = "1"
        lines.append(f"{''.join(bits)} {float(amp.real)!r} {float(amp.imag)!r}")
    return "\n".join(lines) + "\n"


def parse_state_dump(text: str) -> np.ndarray:
    """Re-read a state dump into the sector amplitude vector (chi order)."""
    amps = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        _, re_s, im_s = line.split()
        amps.append(complex(float(re_s), float(im_s)))
    return np.array(amps, dtype=complex)
